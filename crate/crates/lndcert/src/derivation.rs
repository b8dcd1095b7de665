//! Locally nilpotent derivations: application via the Leibniz rule,
//! nilpotency certification, the exponential map into `k[V][T]`, kernel
//! membership, induced derivations on coordinate quotients, and graded
//! degree with respect to a weight system.

use std::collections::BTreeMap;
use std::fmt;

use crate::ring::{factorial, same_ring, Poly, Rat, RingRef, TPoly};
use crate::symmetry::WeightSystem;

/// A k-linear derivation on a polynomial ring, given by its images on the
/// variables and extended by the Leibniz rule. Unlisted variables map to 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    ring: RingRef,
    images: BTreeMap<usize, Poly>,
}

impl Derivation {
    pub fn new(ring: &RingRef, images: Vec<(usize, Poly)>) -> Derivation {
        let mut map = BTreeMap::new();
        for (v, p) in images {
            assert!(v < ring.arity(), "image for a variable outside the ring");
            assert!(same_ring(p.ring(), ring), "image lives in another ring");
            if !p.is_zero() {
                assert!(map.insert(v, p).is_none(), "duplicate image");
            }
        }
        Derivation {
            ring: ring.clone(),
            images: map,
        }
    }

    /// Parse images from name/text pairs, e.g. `[("s", "x^3"), ("t", "s")]`.
    pub fn parse(ring: &RingRef, images: &[(&str, &str)]) -> Derivation {
        let images = images
            .iter()
            .map(|(v, p)| {
                let i = ring
                    .var_index(v)
                    .unwrap_or_else(|| panic!("unknown variable `{v}`"));
                (i, crate::dsl::parse_poly(ring, p).unwrap())
            })
            .collect();
        Self::new(ring, images)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    /// Image of the variable `v` (zero when unlisted).
    pub fn image(&self, v: usize) -> Poly {
        self.images
            .get(&v)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.ring))
    }

    /// Variables with a nonzero image.
    pub fn moved_vars(&self) -> Vec<usize> {
        self.images.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    /// Apply the derivation: `D(p) = Σ_v D(v) · ∂p/∂v`.
    pub fn apply(&self, p: &Poly) -> Poly {
        assert!(same_ring(p.ring(), &self.ring), "ring mismatch");
        let mut acc = Poly::zero(&self.ring);
        for (&v, image) in &self.images {
            let d = p.derivative(v);
            if !d.is_zero() {
                acc = &acc + &(image * &d);
            }
        }
        acc
    }

    pub fn in_kernel(&self, p: &Poly) -> bool {
        self.apply(p).is_zero()
    }

    /// Iterate until each variable dies; since the locally nilpotent elements
    /// form a subalgebra, per-variable nilpotency certifies the derivation.
    pub fn certify_lnd(&self, bound: u32) -> Result<NilpotencyCert, NotNilpotentWithin> {
        assert!(bound >= 1);
        let mut indices = BTreeMap::new();
        for v in 0..self.ring.arity() {
            let mut cur = self.image(v);
            let mut k = 1;
            while !cur.is_zero() {
                if k >= bound {
                    return Err(NotNilpotentWithin {
                        bound,
                        variable: self.ring.var_name(v).to_string(),
                    });
                }
                cur = self.apply(&cur);
                k += 1;
            }
            indices.insert(self.ring.var_name(v).to_string(), k);
        }
        Ok(NilpotencyCert {
            indices,
            bound_used: bound,
        })
    }

    /// The exponential map: `θ(p) = Σ_k D^k(p)/k! · T^k`. The iteration guard
    /// protects against a non-nilpotent derivation; for a locally nilpotent
    /// one the loop stops at the first zero iterate.
    pub fn theta(&self, p: &Poly) -> Result<TPoly, ThetaDiverged> {
        const GUARD: u32 = 4096;
        let mut coeffs = Vec::new();
        let mut cur = p.clone();
        let mut k: u32 = 0;
        while !cur.is_zero() {
            if k > GUARD {
                return Err(ThetaDiverged { guard: GUARD });
            }
            coeffs.push(cur.scale(&factorial(k).recip()));
            cur = self.apply(&cur);
            k += 1;
        }
        Ok(TPoly::new(&self.ring, coeffs))
    }

    /// Induced derivation on the quotient by the listed variables, which
    /// exists iff the ideal they generate is stable under the derivation.
    pub fn induced_on_quotient(&self, kill: &[usize]) -> Result<Derivation, NotPreserved> {
        for &v in kill {
            let image = self.image(v);
            // membership in a variable-generated ideal is a support check
            let ok = image
                .terms()
                .iter()
                .all(|(m, _)| kill.iter().any(|&k| m.degree_of(k) > 0));
            if !ok {
                return Err(NotPreserved {
                    variable: self.ring.var_name(v).to_string(),
                    image: image.to_string(),
                });
            }
        }
        let small = self.ring.without(kill);
        let var_map: Vec<Option<usize>> = (0..self.ring.arity())
            .map(|i| {
                if kill.contains(&i) {
                    None
                } else {
                    small.var_index(self.ring.var_name(i))
                }
            })
            .collect();
        let mut images = Vec::new();
        for (&v, image) in &self.images {
            if kill.contains(&v) {
                continue;
            }
            let reduced = image.set_vars_zero(kill);
            if !reduced.is_zero() {
                images.push((
                    var_map[v].expect("surviving variable"),
                    reduced.project(&small, &var_map),
                ));
            }
        }
        Ok(Derivation::new(&small, images))
    }

    /// For an elementary derivation (exactly one moved variable, absent from
    /// its own image) the kernel is the polynomial ring on the remaining
    /// variables.
    pub fn elementary_kernel(&self) -> ElementaryKernel {
        let moved = self.moved_vars();
        match moved.as_slice() {
            [] => ElementaryKernel::ZeroDerivation,
            [v] => {
                let image = self.image(*v);
                if image.degree_in(*v) > 0 {
                    ElementaryKernel::NotElementary
                } else {
                    ElementaryKernel::Kernel((0..self.ring.arity()).filter(|i| i != v).collect())
                }
            }
            _ => ElementaryKernel::NotElementary,
        }
    }

    /// The common weight shift `δ` with `weight(D(v)) = weight(v) + δ` for
    /// every moved variable, or `None` when the images are inhomogeneous or
    /// the shifts disagree.
    pub fn graded_degree(&self, w: &WeightSystem) -> Option<Vec<i64>> {
        let mut shift: Option<Vec<i64>> = None;
        for (&v, image) in &self.images {
            let iw = w.weight(image)?;
            let vw = w.var_weight(v);
            let d: Vec<i64> = iw.iter().zip(vw).map(|(a, b)| a - b).collect();
            match &shift {
                None => shift = Some(d),
                Some(s) if *s == d => {}
                Some(_) => return None,
            }
        }
        shift.or_else(|| Some(vec![0; w.dim()]))
    }
}

impl fmt::Display for Derivation {
    /// Shared derivation syntax: `{ s -> x^3, t -> s }`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{ ")?;
        let mut first = true;
        for (&v, image) in &self.images {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{} -> {}", self.ring.var_name(v), image)?;
        }
        write!(f, " }}")
    }
}

/// Witness that `D^index(v) = 0` and `D^(index-1)(v) ≠ 0` per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct NilpotencyCert {
    pub indices: BTreeMap<String, u32>,
    pub bound_used: u32,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
#[error("derivation not nilpotent on `{variable}` within {bound} iterations")]
pub struct NotNilpotentWithin {
    pub bound: u32,
    pub variable: String,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
#[error("exponential map did not terminate within {guard} iterations")]
pub struct ThetaDiverged {
    pub guard: u32,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
#[error("ideal not stable: image of `{variable}` is {image}")]
pub struct NotPreserved {
    pub variable: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElementaryKernel {
    /// Kernel generated by these variables.
    Kernel(Vec<usize>),
    /// Every variable is constant; the kernel is the whole ring.
    ZeroDerivation,
    NotElementary,
}

/// Convenience: evaluate `θ(p)` at `T = c`, the group element `(-c)` acting.
pub fn flow(d: &Derivation, p: &Poly, c: &Rat) -> Result<Poly, ThetaDiverged> {
    Ok(d.theta(p)?.eval_at(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_poly;
    use crate::ring::{rat, RingCtx};

    fn df5() -> (RingRef, Derivation) {
        let r = RingCtx::grevlex(&["x", "s", "t", "u", "v"]);
        let d = Derivation::parse(&r, &[("s", "x^3"), ("t", "s"), ("u", "t"), ("v", "x^2")]);
        (r, d)
    }

    #[test]
    fn apply_matches_slice_plinths() {
        let (r, d) = df5();
        // Delta(3x^3u - st) = 2x^3t - s^2
        let p = parse_poly(&r, "3*x^3*u - s*t").unwrap();
        assert_eq!(d.apply(&p), parse_poly(&r, "2*x^3*t - s^2").unwrap());
        // constants die
        assert!(d.apply(&parse_poly(&r, "7/5").unwrap()).is_zero());
    }

    #[test]
    fn apply_matches_f6_plinth() {
        let r = RingCtx::grevlex(&["x", "y", "s", "t", "u", "v"]);
        let d = Derivation::parse(
            &r,
            &[
                ("s", "x^3"),
                ("t", "y^3*s"),
                ("u", "y^3*t"),
                ("v", "x^2*y^2"),
            ],
        );
        let p = parse_poly(&r, "3*x^3*u - y^3*s*t").unwrap();
        assert_eq!(
            d.apply(&p),
            parse_poly(&r, "2*x^3*y^3*t - y^6*s^2").unwrap()
        );
    }

    #[test]
    fn nilpotency_indices() {
        let (_, d) = df5();
        let cert = d.certify_lnd(16).unwrap();
        let got: Vec<u32> = ["x", "s", "t", "u", "v"]
            .iter()
            .map(|v| cert.indices[*v])
            .collect();
        assert_eq!(got, vec![1, 2, 3, 4, 2]);
    }

    #[test]
    fn non_nilpotent_is_reported() {
        let r = RingCtx::grevlex(&["y"]);
        let d = Derivation::parse(&r, &[("y", "y")]);
        assert!(d.certify_lnd(32).is_err());
    }

    #[test]
    fn zero_derivation_certifies_trivially() {
        let r = RingCtx::grevlex(&["x", "y"]);
        let d = Derivation::new(&r, vec![]);
        let cert = d.certify_lnd(4).unwrap();
        assert!(cert.indices.values().all(|&i| i == 1));
    }

    #[test]
    fn theta_on_df5() {
        let (r, d) = df5();
        let s = parse_poly(&r, "s").unwrap();
        let th = d.theta(&s).unwrap();
        assert_eq!(th.coeff(0), s);
        assert_eq!(th.coeff(1), parse_poly(&r, "x^3").unwrap());
        assert_eq!(th.degree(), Some(1));
        // theta(u) = u + tT + (s/2)T^2 + (x^3/6)T^3
        let u = parse_poly(&r, "u").unwrap();
        let th = d.theta(&u).unwrap();
        assert_eq!(th.coeff(1), parse_poly(&r, "t").unwrap());
        assert_eq!(th.coeff(2), parse_poly(&r, "s/2").unwrap());
        assert_eq!(th.coeff(3), parse_poly(&r, "x^3/6").unwrap());
        assert_eq!(th.degree(), Some(3));
    }

    #[test]
    fn kernel_checks() {
        let (r, d) = df5();
        for f in [
            "x",
            "2*x^3*t - s^2",
            "3*x^6*u - 3*x^3*t*s + s^3",
            "x*v - s",
            "x^2*t*s - s^2*v + 2*x^3*t*v - 3*x^5*u",
            "-18*x^3*t*s*u + 9*x^6*u^2 + 8*x^3*t^3 + 6*s^3*u - 3*t^2*s^2",
        ] {
            assert!(d.in_kernel(&parse_poly(&r, f).unwrap()), "{f}");
        }
        assert!(!d.in_kernel(&parse_poly(&r, "s").unwrap()));
    }

    #[test]
    fn induced_quotients() {
        // Maubach's derivation induces y∂z + z∂u + u^b∂w after killing x
        let r = RingCtx::grevlex(&["x", "y", "z", "u", "w"]);
        let d = Derivation::parse(&r, &[("y", "x^2"), ("z", "y"), ("u", "z"), ("w", "u^3")]);
        let dq = d.induced_on_quotient(&[0]).unwrap();
        let rq = dq.ring().clone();
        assert_eq!(rq.vars(), &["y", "z", "u", "w"]);
        assert_eq!(dq.image(rq.var_index("z").unwrap()), Poly::var(&rq, 0));
        assert!(dq.image(rq.var_index("y").unwrap()).is_zero());
        assert_eq!(
            dq.image(rq.var_index("w").unwrap()),
            parse_poly(&rq, "u^3").unwrap()
        );
        // DF5: killing s is not allowed since Delta(s) = x^3
        let (_, d5) = df5();
        assert!(d5.induced_on_quotient(&[1]).is_err());
    }

    #[test]
    fn elementary_kernels() {
        let r = RingCtx::grevlex(&["y1", "y2", "y3", "v"]);
        let d = Derivation::parse(&r, &[("v", "y1*y2*y3")]);
        assert_eq!(
            d.elementary_kernel(),
            ElementaryKernel::Kernel(vec![0, 1, 2])
        );
        let zero = Derivation::new(&r, vec![]);
        assert_eq!(zero.elementary_kernel(), ElementaryKernel::ZeroDerivation);
        let two = Derivation::parse(&r, &[("y2", "y1"), ("v", "y3")]);
        assert_eq!(two.elementary_kernel(), ElementaryKernel::NotElementary);
        let self_ref = Derivation::parse(&r, &[("v", "v*y1")]);
        assert_eq!(
            self_ref.elementary_kernel(),
            ElementaryKernel::NotElementary
        );
    }

    #[test]
    fn graded_degree_on_df5() {
        let (r, d) = df5();
        let w = WeightSystem::new(&r, vec![vec![1], vec![3], vec![3], vec![3], vec![2]], false);
        assert_eq!(d.graded_degree(&w), Some(vec![0]));
        let all_one = WeightSystem::new(&r, vec![vec![1]; 5], false);
        assert_eq!(d.graded_degree(&all_one), None);
    }

    #[test]
    fn flow_evaluates_the_action() {
        let (r, d) = df5();
        let u = parse_poly(&r, "u").unwrap();
        let moved = flow(&d, &u, &rat(1, 2)).unwrap();
        assert_eq!(moved, parse_poly(&r, "u + t/2 + s/8 + x^3/48").unwrap());
    }
}
