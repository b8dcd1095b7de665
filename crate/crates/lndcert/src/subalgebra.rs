//! Finitely generated subalgebras: membership by tag-variable elimination,
//! localized membership `f^N·p ∈ A`, the two-sided localized-equality
//! certificates `A_f = (ker D)_f`, and membership in `subring ⊕ (variables)`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::derivation::Derivation;
use crate::ideals::{groebner, normal_form, EngineError, GbConfig, GroebnerBasis, Ideal};
use crate::order::MonomialOrder;
use crate::ring::{same_ring, Poly, RingRef};
use crate::slices::{essen_step1, EssenSource, LocalSliceData};

/// A subalgebra `k[g_1, …, g_m]` given by named generators.
#[derive(Debug, Clone)]
pub struct SubalgebraPresentation {
    name: String,
    gen_names: Vec<String>,
    gens: Vec<Poly>,
    ring: RingRef,
}

impl SubalgebraPresentation {
    pub fn new(
        name: impl Into<String>,
        ring: &RingRef,
        named_gens: Vec<(String, Poly)>,
    ) -> SubalgebraPresentation {
        let mut gen_names = Vec::new();
        let mut gens = Vec::new();
        for (n, g) in named_gens {
            assert!(same_ring(g.ring(), ring), "generator outside the ring");
            assert!(!gen_names.contains(&n), "duplicate generator name `{n}`");
            gen_names.push(n);
            gens.push(g);
        }
        SubalgebraPresentation {
            name: name.into(),
            gen_names,
            gens,
            ring: ring.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn tester(&self) -> SubalgebraTester<'_> {
        SubalgebraTester {
            sub: self,
            gb: OnceLock::new(),
        }
    }
}

/// Membership oracle for one subalgebra. The elimination Gröbner basis of
/// the tag ideal `(w_j - g_j)` is built once, on the first query the cheap
/// syntactic pre-pass cannot settle.
pub struct SubalgebraTester<'a> {
    sub: &'a SubalgebraPresentation,
    gb: OnceLock<Result<(RingRef, GroebnerBasis), EngineError>>,
}

impl<'a> SubalgebraTester<'a> {
    fn tag_basis(&self, config: &GbConfig) -> Result<&(RingRef, GroebnerBasis), EngineError> {
        self.gb
            .get_or_init(|| {
                let ring = &self.sub.ring;
                let n = ring.arity();
                let tags: Vec<String> = (0..self.sub.gens.len())
                    .map(|j| format!("@{}", j + 1))
                    .collect();
                let ext = ring.extend(&tags, MonomialOrder::Elim { block: n });
                let id_map: Vec<usize> = (0..n).collect();
                let gens: Vec<Poly> = self
                    .sub
                    .gens
                    .iter()
                    .enumerate()
                    .map(|(j, g)| &Poly::var(&ext, n + j) - &g.embed(&ext, &id_map))
                    .collect();
                let gb = groebner(&Ideal::new(&ext, gens), config)?;
                Ok((ext, gb))
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    // Syntactic fast path: constants, a scalar multiple of a generator, or a
    // scalar multiple of a power of a single-variable generator.
    fn shortcut(&self, p: &Poly) -> Option<bool> {
        if p.is_constant() {
            return Some(true);
        }
        for g in &self.sub.gens {
            if let (Some((pm, pc)), Some((gm, gc))) = (p.leading_term(), g.leading_term()) {
                if pm == gm {
                    let c = pc / gc;
                    if &g.scale(&c) == p {
                        return Some(true);
                    }
                }
            }
        }
        if p.terms().len() == 1 {
            let (m, _) = &p.terms()[0];
            let support = m.support();
            if support.len() == 1 {
                let v = support[0];
                if self.sub.gens.contains(&Poly::var(&self.sub.ring, v)) {
                    return Some(true);
                }
            }
        }
        None
    }

    /// Decide `p ∈ k[g_1, …, g_m]` by reducing against the tag basis: the
    /// normal form must involve only tag variables.
    pub fn member(&self, p: &Poly, config: &GbConfig) -> Result<bool, EngineError> {
        assert!(same_ring(p.ring(), &self.sub.ring), "ring mismatch");
        if let Some(ans) = self.shortcut(p) {
            return Ok(ans);
        }
        let (ext, gb) = self.tag_basis(config)?;
        let n = self.sub.ring.arity();
        let id_map: Vec<usize> = (0..n).collect();
        let nf = normal_form(&p.embed(ext, &id_map), gb);
        Ok(nf.support().iter().all(|&v| v >= n))
    }

    /// Like [`member`](Self::member), also returning the witness expression
    /// of `p` in the generators (a polynomial in the tag variables).
    pub fn member_witness(
        &self,
        p: &Poly,
        config: &GbConfig,
    ) -> Result<Option<String>, EngineError> {
        assert!(same_ring(p.ring(), &self.sub.ring), "ring mismatch");
        let (ext, gb) = self.tag_basis(config)?;
        let n = self.sub.ring.arity();
        let id_map: Vec<usize> = (0..n).collect();
        let nf = normal_form(&p.embed(ext, &id_map), gb);
        if !nf.support().iter().all(|&v| v >= n) {
            return Ok(None);
        }
        let named = self.rename_tags(&nf);
        Ok(Some(named))
    }

    fn rename_tags(&self, expr: &Poly) -> String {
        let mut s = expr.to_string();
        // longest tags first so `@12` is not clobbered by `@1`
        for j in (0..self.sub.gens.len()).rev() {
            s = s.replace(&format!("@{}", j + 1), &self.sub.gen_names[j]);
        }
        s
    }
}

/// Result of a bounded search for the minimal `N` with `f^N · p ∈ A`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum LocalizedMembership {
    Found {
        n: u32,
    },
    /// Exhausted the bound; inconclusive, not a negative.
    NotFound {
        n_max: u32,
    },
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum LocalizedError {
    #[error("localizing element is not in the subalgebra")]
    LocusOutsideAlgebra,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Minimal `N ≤ n_max` with `f^N·p ∈ A`, searched upward from 0.
pub fn localized_member(
    tester: &SubalgebraTester<'_>,
    p: &Poly,
    f: &Poly,
    n_max: u32,
    config: &GbConfig,
) -> Result<LocalizedMembership, LocalizedError> {
    if !tester.member(f, config)? {
        return Err(LocalizedError::LocusOutsideAlgebra);
    }
    let mut scaled = p.clone();
    for n in 0..=n_max {
        if tester.member(&scaled, config)? {
            return Ok(LocalizedMembership::Found { n });
        }
        scaled = &scaled * f;
    }
    Ok(LocalizedMembership::NotFound { n_max })
}

/// One generator-side check of a localized-equality certificate.
#[derive(Debug, Clone, Serialize)]
pub struct KernelCheck {
    pub generator: String,
    pub in_kernel: bool,
}

/// One slice-side check: an essen numerator and its localized membership.
#[derive(Debug, Clone, Serialize)]
pub struct EssenMembership {
    pub source: String,
    pub numerator: String,
    pub denominator: String,
    pub degenerate: bool,
    pub membership: Option<LocalizedMembership>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertStatus {
    Valid,
    Invalid,
    Inconclusive,
}

/// Certificate that `A_f = (ker D)_f` for the plinth `f` of a local slice:
/// every generator of `A` is a derivation constant (so `A_f ⊆ (ker D)_f`),
/// and every step-1 generator of `(ker D)_f` multiplies into `A` by a power
/// of `f` (so `(ker D)_f ⊆ A_f`).
#[derive(Debug, Clone, Serialize)]
pub struct LocalizedEqualityCert {
    pub algebra: String,
    pub f: String,
    pub slice_used: String,
    pub inclusion_a_sub_kernel: Vec<KernelCheck>,
    pub plinth_in_algebra: Option<bool>,
    pub inclusion_kernel_sub_a: Vec<EssenMembership>,
    pub status: CertStatus,
}

pub fn localized_equality(
    a: &SubalgebraPresentation,
    sd: &LocalSliceData,
    d: &Derivation,
    n_max: u32,
    config: &GbConfig,
) -> LocalizedEqualityCert {
    let tester = a.tester();
    let mut status = CertStatus::Valid;

    let mut kernel_checks = Vec::new();
    for (name, g) in a.gen_names().iter().zip(a.gens()) {
        let ok = d.in_kernel(g);
        if !ok {
            status = CertStatus::Invalid;
        }
        kernel_checks.push(KernelCheck {
            generator: name.clone(),
            in_kernel: ok,
        });
    }

    let mut plinth_in_algebra = None;
    let mut essen_checks = Vec::new();
    if sd.valid {
        match tester.member(&sd.plinth, config) {
            Ok(ok) => {
                plinth_in_algebra = Some(ok);
                if !ok {
                    status = CertStatus::Invalid;
                }
            }
            Err(_) => status = downgrade(status),
        }
        match essen_step1(d, sd) {
            Ok(entries) => {
                for entry in entries {
                    let source = match entry.source {
                        EssenSource::Plinth => "plinth".to_string(),
                        EssenSource::Var(v) => d.ring().var_name(v).to_string(),
                    };
                    let membership = if entry.degenerate {
                        None
                    } else {
                        match localized_member(
                            &tester,
                            &entry.elem.numerator,
                            &sd.plinth,
                            n_max,
                            config,
                        ) {
                            Ok(m) => {
                                match &m {
                                    LocalizedMembership::Found { .. } => {}
                                    LocalizedMembership::NotFound { .. } => {
                                        status = downgrade(status);
                                    }
                                }
                                Some(m)
                            }
                            Err(LocalizedError::LocusOutsideAlgebra) => {
                                status = CertStatus::Invalid;
                                None
                            }
                            Err(LocalizedError::Engine(_)) => {
                                status = downgrade(status);
                                None
                            }
                        }
                    };
                    essen_checks.push(EssenMembership {
                        source,
                        numerator: entry.elem.numerator.to_string(),
                        denominator: entry.elem.denominator().to_string(),
                        degenerate: entry.degenerate,
                        membership,
                    });
                }
            }
            Err(_) => status = CertStatus::Invalid,
        }
    } else {
        status = CertStatus::Invalid;
    }

    LocalizedEqualityCert {
        algebra: a.name().to_string(),
        f: sd.plinth.to_string(),
        slice_used: sd.slice.to_string(),
        inclusion_a_sub_kernel: kernel_checks,
        plinth_in_algebra,
        inclusion_kernel_sub_a: essen_checks,
        status,
    }
}

// Inconclusive never overrides a definite failure.
fn downgrade(status: CertStatus) -> CertStatus {
    match status {
        CertStatus::Invalid => CertStatus::Invalid,
        _ => CertStatus::Inconclusive,
    }
}

/// Decide `p ∈ C ⊕ (vars)` for a variable-generated ideal: set the variables
/// to zero and test the image against the subalgebra `C`. Returns the
/// `C`-component on success.
pub fn subring_plus_ideal_member(
    p: &Poly,
    c: &SubalgebraPresentation,
    ideal_vars: &[usize],
    config: &GbConfig,
) -> Result<Option<Poly>, EngineError> {
    assert!(same_ring(p.ring(), c.ring()), "ring mismatch");
    for g in c.gens() {
        for &v in ideal_vars {
            assert_eq!(
                g.degree_in(v),
                0,
                "subring generator meets the ideal variables"
            );
        }
    }
    let image = p.set_vars_zero(ideal_vars);
    let tester = c.tester();
    if tester.member(&image, config)? {
        Ok(Some(image))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_poly;
    use crate::ring::RingCtx;
    use crate::slices::local_slice_data;

    fn cfg() -> GbConfig {
        GbConfig::default()
    }

    fn df5() -> (RingRef, Derivation, SubalgebraPresentation) {
        let r = RingCtx::grevlex(&["x", "s", "t", "u", "v"]);
        let d = Derivation::parse(&r, &[("s", "x^3"), ("t", "s"), ("u", "t"), ("v", "x^2")]);
        let texts = [
            "x",
            "2*x^3*t - s^2",
            "3*x^6*u - 3*x^3*t*s + s^3",
            "x*v - s",
            "x^2*t*s - s^2*v + 2*x^3*t*v - 3*x^5*u",
            "-18*x^3*t*s*u + 9*x^6*u^2 + 8*x^3*t^3 + 6*s^3*u - 3*t^2*s^2",
        ];
        let gens = texts
            .iter()
            .enumerate()
            .map(|(i, t)| (format!("f{}", i + 1), parse_poly(&r, t).unwrap()))
            .collect();
        (r.clone(), d, SubalgebraPresentation::new("A", &r, gens))
    }

    #[test]
    fn footnote_membership() {
        // f3 lies in k[f1, f2, f4, f5]
        let (r, _, a) = df5();
        let four = SubalgebraPresentation::new(
            "A4",
            &r,
            a.gen_names()
                .iter()
                .zip(a.gens())
                .filter(|(n, _)| *n != "f3" && *n != "f6")
                .map(|(n, g)| (n.clone(), g.clone()))
                .collect(),
        );
        let f3 = parse_poly(&r, "3*x^6*u - 3*x^3*t*s + s^3").unwrap();
        let tester = four.tester();
        assert!(tester.member(&f3, &cfg()).unwrap());
        let witness = tester.member_witness(&f3, &cfg()).unwrap().unwrap();
        assert_eq!(witness, "f2*f4 - f1*f5");
        // constants always belong
        assert!(tester
            .member(&parse_poly(&r, "22/7").unwrap(), &cfg())
            .unwrap());
    }

    #[test]
    fn s_is_not_in_k_x_f2() {
        let (r, _, _) = df5();
        let small = SubalgebraPresentation::new(
            "C",
            &r,
            vec![
                ("x".into(), parse_poly(&r, "x").unwrap()),
                ("f2".into(), parse_poly(&r, "2*x^3*t - s^2").unwrap()),
            ],
        );
        let tester = small.tester();
        assert!(!tester
            .member(&parse_poly(&r, "s").unwrap(), &cfg())
            .unwrap());
    }

    #[test]
    fn localized_membership_for_essen_numerators() {
        let (r, _, a) = df5();
        let tester = a.tester();
        let x = parse_poly(&r, "x").unwrap();
        // f2/2 is already in A
        let p = parse_poly(&r, "x^3*t - s^2/2").unwrap();
        assert_eq!(
            localized_member(&tester, &p, &x, 8, &cfg()).unwrap(),
            LocalizedMembership::Found { n: 0 }
        );
        // s never makes it in: not an invariant
        let s = parse_poly(&r, "s").unwrap();
        assert_eq!(
            localized_member(&tester, &s, &x, 8, &cfg()).unwrap(),
            LocalizedMembership::NotFound { n_max: 8 }
        );
        // localizing element must itself belong
        let k_x =
            SubalgebraPresentation::new("Kx", &r, vec![("x".into(), parse_poly(&r, "x").unwrap())]);
        let kx_tester = k_x.tester();
        assert_eq!(
            localized_member(&kx_tester, &s, &parse_poly(&r, "t").unwrap(), 2, &cfg()),
            Err(LocalizedError::LocusOutsideAlgebra)
        );
    }

    #[test]
    fn df5_certificates_are_valid() {
        let (r, d, a) = df5();
        for slice in ["s", "3*x^3*u - s*t"] {
            let sd = local_slice_data(&d, &parse_poly(&r, slice).unwrap());
            let cert = localized_equality(&a, &sd, &d, 8, &cfg());
            assert_eq!(cert.status, CertStatus::Valid, "slice {slice}");
            for m in &cert.inclusion_kernel_sub_a {
                if !m.degenerate {
                    assert!(matches!(
                        m.membership,
                        Some(LocalizedMembership::Found { .. })
                    ));
                }
            }
        }
    }

    #[test]
    fn bad_algebra_fails_certificate() {
        // k[x] misses the essen numerator f4
        let (r, d, _) = df5();
        let k_x =
            SubalgebraPresentation::new("Kx", &r, vec![("x".into(), parse_poly(&r, "x").unwrap())]);
        let sd = local_slice_data(&d, &parse_poly(&r, "s").unwrap());
        let cert = localized_equality(&k_x, &sd, &d, 4, &cfg());
        assert_eq!(cert.status, CertStatus::Inconclusive);
        let f4_row = cert
            .inclusion_kernel_sub_a
            .iter()
            .find(|m| m.source == "v")
            .unwrap();
        assert_eq!(
            f4_row.membership,
            Some(LocalizedMembership::NotFound { n_max: 4 })
        );
    }

    #[test]
    fn subring_plus_ideal_examples() {
        let (r, _, _) = df5();
        // f6 against constants modulo (x, s): component 0
        let f6 = parse_poly(
            &r,
            "-18*x^3*t*s*u + 9*x^6*u^2 + 8*x^3*t^3 + 6*s^3*u - 3*t^2*s^2",
        )
        .unwrap();
        let constants = SubalgebraPresentation::new("k", &r, vec![]);
        let comp = subring_plus_ideal_member(&f6, &constants, &[0, 1], &cfg()).unwrap();
        assert_eq!(comp, Some(Poly::zero(&r)));
        // t + x*t is not in k + (x, s) ... t survives
        let t = parse_poly(&r, "t + x*t").unwrap();
        assert_eq!(
            subring_plus_ideal_member(&t, &constants, &[0, 1], &cfg()).unwrap(),
            None
        );
        // u + x*t against k[u] modulo (x, s): component u
        let k_u =
            SubalgebraPresentation::new("Ku", &r, vec![("u".into(), parse_poly(&r, "u").unwrap())]);
        let p = parse_poly(&r, "u + x*t").unwrap();
        assert_eq!(
            subring_plus_ideal_member(&p, &k_u, &[0, 1], &cfg()).unwrap(),
            Some(parse_poly(&r, "u").unwrap())
        );
    }
}
