//! Built-in constructions: the five-variable Daigle–Freudenburg action, the
//! seven-variable Roberts action, the six-variable Freudenburg action, the
//! seven-variable two-parameter family with its torus and symmetric-group
//! structure, and the four-variable triangular model it maps onto.
//!
//! Generator formulas are written out explicitly; derived data (plinths,
//! the `h_i`) is computed from the definitions rather than copied, so the
//! slice machinery is exercised against an independent construction path.

use crate::derivation::Derivation;
use crate::dsl::parse_poly;
use crate::ring::{Poly, Rat, RingCtx, RingRef};
use crate::slices::{local_slice_data, LocalSliceData};
use crate::subalgebra::SubalgebraPresentation;
use crate::symmetry::{PermAction, WeightSystem};

fn p(ring: &RingRef, text: &str) -> Poly {
    parse_poly(ring, text).unwrap_or_else(|e| panic!("catalog polynomial `{text}`: {e}"))
}

/// The five-variable triangular action with its six standard invariants.
pub struct Df5 {
    pub ring: RingRef,
    pub delta: Derivation,
    /// f1, …, f6 in the usual order.
    pub f: Vec<Poly>,
    pub a: SubalgebraPresentation,
    pub slice_s: LocalSliceData,
    pub slice_su: LocalSliceData,
    /// Grading with degrees (1, 3, 3, 3, 2) making the derivation homogeneous.
    pub weights: WeightSystem,
}

pub fn df5() -> Df5 {
    let ring = RingCtx::grevlex(&["x", "s", "t", "u", "v"]);
    let delta = Derivation::parse(&ring, &[("s", "x^3"), ("t", "s"), ("u", "t"), ("v", "x^2")]);
    let f_texts = [
        "x",
        "2*x^3*t - s^2",
        "3*x^6*u - 3*x^3*t*s + s^3",
        "x*v - s",
        "x^2*t*s - s^2*v + 2*x^3*t*v - 3*x^5*u",
        "-18*x^3*t*s*u + 9*x^6*u^2 + 8*x^3*t^3 + 6*s^3*u - 3*t^2*s^2",
    ];
    let f: Vec<Poly> = f_texts.iter().map(|t| p(&ring, t)).collect();
    let a = SubalgebraPresentation::new(
        "A",
        &ring,
        f.iter()
            .enumerate()
            .map(|(i, g)| (format!("f{}", i + 1), g.clone()))
            .collect(),
    );
    let slice_s = local_slice_data(&delta, &p(&ring, "s"));
    let slice_su = local_slice_data(&delta, &p(&ring, "3*x^3*u - s*t"));
    let weights = WeightSystem::new(
        &ring,
        vec![vec![1], vec![3], vec![3], vec![3], vec![2]],
        false,
    );
    Df5 {
        ring,
        delta,
        f,
        a,
        slice_s,
        slice_su,
        weights,
    }
}

/// The seven-variable monomial action with parameter `m ≥ 2`.
pub struct Roberts {
    pub m: u32,
    pub ring: RingRef,
    pub d: Derivation,
    /// φ1, …, φ6.
    pub phi: Vec<Poly>,
    /// `k[x1, x2, x3, φ1, …, φ6]`.
    pub a: SubalgebraPresentation,
    /// The same algebra with φ4 removed.
    pub a_prime: SubalgebraPresentation,
    /// Local slices y1, y2, y3 with plinths `x_i^{m+1}`.
    pub slices: Vec<LocalSliceData>,
    /// A pair the reduced algebra cannot separate although φ4 does: both
    /// points sit over x = (0, 0, 1), differing only in the last coordinate.
    pub pair: (Vec<Rat>, Vec<Rat>),
}

pub fn roberts(m: u32) -> Roberts {
    assert!(m >= 2, "the construction needs m >= 2");
    let ring = RingCtx::grevlex(&["x1", "x2", "x3", "y1", "y2", "y3", "v"]);
    let e = m + 1;
    let d = Derivation::parse(
        &ring,
        &[
            ("y1", &format!("x1^{e}")),
            ("y2", &format!("x2^{e}")),
            ("y3", &format!("x3^{e}")),
            ("v", &format!("(x1*x2*x3)^{m}")),
        ],
    );
    let phi_texts = [
        format!("x1^{e}*y2 - x2^{e}*y1"),
        format!("x1^{e}*y3 - x3^{e}*y1"),
        format!("x2^{e}*y3 - x3^{e}*y2"),
        format!("(x1*x2)^{m}*y3 - x3*v"),
        format!("(x1*x3)^{m}*y2 - x2*v"),
        format!("(x2*x3)^{m}*y1 - x1*v"),
    ];
    let phi: Vec<Poly> = phi_texts.iter().map(|t| p(&ring, t)).collect();
    let mut gens: Vec<(String, Poly)> = vec![
        ("x1".into(), p(&ring, "x1")),
        ("x2".into(), p(&ring, "x2")),
        ("x3".into(), p(&ring, "x3")),
    ];
    for (i, g) in phi.iter().enumerate() {
        gens.push((format!("phi{}", i + 1), g.clone()));
    }
    let a = SubalgebraPresentation::new("A", &ring, gens.clone());
    let a_prime = SubalgebraPresentation::new(
        "Aprime",
        &ring,
        gens.into_iter().filter(|(n, _)| n != "phi4").collect(),
    );
    let slices = (0..3)
        .map(|i| local_slice_data(&d, &Poly::var(&ring, 3 + i)))
        .collect();
    let zero = Rat::from_integer(0.into());
    let one = Rat::from_integer(1.into());
    let u = vec![
        zero.clone(),
        zero.clone(),
        one.clone(),
        zero.clone(),
        zero.clone(),
        zero.clone(),
        one.clone(),
    ];
    let mut w = u.clone();
    w[6] = zero;
    Roberts {
        m,
        ring,
        d,
        phi,
        a,
        a_prime,
        slices,
        pair: (u, w),
    }
}

/// The six-variable action with the two-piece variety decomposition.
pub struct F6 {
    pub ring: RingRef,
    pub d: Derivation,
    pub a: SubalgebraPresentation,
    /// `2x^3y^3t - y^6s^2`, the plinth of the second slice.
    pub f2: Poly,
    pub slice_s: LocalSliceData,
    pub slice_su: LocalSliceData,
    /// Variable sets of the two decomposition pieces V(x, y) and V(x, s).
    pub piece_xy: Vec<usize>,
    pub piece_xs: Vec<usize>,
}

pub fn f6() -> F6 {
    let ring = RingCtx::grevlex(&["x", "y", "s", "t", "u", "v"]);
    let d = Derivation::parse(
        &ring,
        &[
            ("s", "x^3"),
            ("t", "y^3*s"),
            ("u", "y^3*t"),
            ("v", "x^2*y^2"),
        ],
    );
    let gen_texts = [
        ("g1", "x"),
        ("g2", "y"),
        ("g3", "-y^2*s + x*v"),
        ("g4", "-1/2*y^3*s^2 + x^3*t"),
        ("g5", "-x^2*y^3*s*t + 3*x^5*u + y^4*s^2*v - 2*x^3*y*t*v"),
        (
            "g6",
            "-3/2*y^6*s^2*t^2 + 4*x^3*y^3*t^3 + 3*y^6*s^3*u - 9*x^3*y^3*s*t*u + 9/2*x^6*u^2",
        ),
    ];
    let a = SubalgebraPresentation::new(
        "A",
        &ring,
        gen_texts
            .iter()
            .map(|(n, t)| (n.to_string(), p(&ring, t)))
            .collect(),
    );
    let f2 = p(&ring, "2*x^3*y^3*t - y^6*s^2");
    let slice_s = local_slice_data(&d, &p(&ring, "s"));
    let slice_su = local_slice_data(&d, &p(&ring, "3*x^3*u - y^3*s*t"));
    F6 {
        piece_xy: vec![0, 1],
        piece_xs: vec![0, 2],
        ring,
        d,
        a,
        f2,
        slice_s,
        slice_su,
    }
}

/// The seven-variable two-parameter family with its symmetry data.
pub struct New7 {
    pub a_param: u32,
    pub b_param: u32,
    pub ring: RingRef,
    pub d: Derivation,
    /// h1, h2, h3: the degree-(2b+1)a slice projections of v.
    pub h: Vec<Poly>,
    /// Nine generators: x1, x2, x3, three binomials, h1, h2, h3.
    pub a: SubalgebraPresentation,
    /// Local slices y1, y2, y3, plinths `x_i^a`.
    pub slices: Vec<LocalSliceData>,
    /// Full torus grading; v carries weight (ab, ab, ab), the unique choice
    /// commuting with the derivation.
    pub omega: WeightSystem,
    /// The same weights read modulo the diagonal: the subtorus with product 1.
    pub h_grading: WeightSystem,
    pub s3: PermAction,
    /// Nine monomial generators of the subtorus invariants.
    pub bh_gens: Vec<(String, Poly)>,
    /// Images of (x, y, z, u, w) identifying the symmetric invariants with
    /// the four-variable model.
    pub dict: Vec<Poly>,
    pub small_ring: RingRef,
    pub small_d: Derivation,
}

pub fn new7(a_param: u32, b_param: u32) -> New7 {
    assert!(a_param >= 1 && b_param >= 1);
    let (a, b) = (a_param, b_param);
    let ring = RingCtx::grevlex(&["x1", "x2", "x3", "y1", "y2", "y3", "v"]);
    let d = Derivation::parse(
        &ring,
        &[
            ("y1", &format!("x1^{a}")),
            ("y2", &format!("x2^{a}")),
            ("y3", &format!("x3^{a}")),
            ("v", &format!("(y1*y2*y3)^{b}")),
        ],
    );

    // h_i = x_i^{(2b+1)a} * theta(v)|_{T = -y_i/x_i^a}, assembled directly
    // from the theta coefficients with exact division for the tail terms.
    let theta_v = d.theta(&Poly::var(&ring, 6)).expect("v is nilpotent");
    let h: Vec<Poly> = (0..3)
        .map(|i| {
            let xi = Poly::var(&ring, i);
            let yi = Poly::var(&ring, 3 + i);
            let mut acc = Poly::zero(&ring);
            for (k, c) in theta_v.coeffs().iter().enumerate() {
                let k32 = k as u32;
                let signed_y = (-&yi).pow(k32);
                let term = if k32 <= 2 * b + 1 {
                    &(c * &signed_y) * &xi.pow(a * (2 * b + 1 - k32))
                } else {
                    let reduced = c
                        .exact_div(&xi.pow(a * (k32 - 2 * b - 1)))
                        .expect("theta tail coefficients carry the x-power");
                    &reduced * &signed_y
                };
                acc = &acc + &term;
            }
            acc
        })
        .collect();

    let mut gens: Vec<(String, Poly)> = vec![
        ("x1".into(), p(&ring, "x1")),
        ("x2".into(), p(&ring, "x2")),
        ("x3".into(), p(&ring, "x3")),
        ("p12".into(), p(&ring, &format!("x1^{a}*y2 - x2^{a}*y1"))),
        ("p13".into(), p(&ring, &format!("x1^{a}*y3 - x3^{a}*y1"))),
        ("p23".into(), p(&ring, &format!("x2^{a}*y3 - x3^{a}*y2"))),
    ];
    for (i, hi) in h.iter().enumerate() {
        gens.push((format!("h{}", i + 1), hi.clone()));
    }
    let a_pres = SubalgebraPresentation::new("A", &ring, gens);

    let slices = (0..3)
        .map(|i| local_slice_data(&d, &Poly::var(&ring, 3 + i)))
        .collect();

    let ai = a as i64;
    let abi = (a * b) as i64;
    let weight_rows = vec![
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
        vec![ai, 0, 0],
        vec![0, ai, 0],
        vec![0, 0, ai],
        vec![abi, abi, abi],
    ];
    let omega = WeightSystem::new(&ring, weight_rows.clone(), false);
    let h_grading = WeightSystem::new(&ring, weight_rows, true);
    let s3 = PermAction::new(&ring, vec![vec![0, 1, 2], vec![3, 4, 5]]);

    let bh_texts = [
        ("m0", "x1*x2*x3".to_string()),
        ("m1", format!("x1^{a}*y2*y3")),
        ("m2", format!("x2^{a}*y1*y3")),
        ("m3", format!("x3^{a}*y1*y2")),
        ("m4", format!("x1^{a}*x2^{a}*y3")),
        ("m5", format!("x1^{a}*x3^{a}*y2")),
        ("m6", format!("x2^{a}*x3^{a}*y1")),
        ("m7", "y1*y2*y3".to_string()),
        ("m8", "v".to_string()),
    ];
    let bh_gens = bh_texts
        .iter()
        .map(|(n, t)| (n.to_string(), p(&ring, t)))
        .collect();

    let small_ring = RingCtx::grevlex(&["x", "y", "z", "u", "w"]);
    let small_d = Derivation::parse(
        &small_ring,
        &[
            ("y", &format!("x^{a}")),
            ("z", "y"),
            ("u", "z"),
            ("w", &format!("u^{b}")),
        ],
    );
    let six_pow_b = 6i64.pow(b);
    let dict = vec![
        p(&ring, "x1*x2*x3"),
        p(
            &ring,
            &format!("(x1^{a}*x2^{a}*y3 + x1^{a}*x3^{a}*y2 + x2^{a}*x3^{a}*y1)/3"),
        ),
        p(
            &ring,
            &format!("(x1^{a}*y2*y3 + x2^{a}*y1*y3 + x3^{a}*y1*y2)/6"),
        ),
        p(&ring, "y1*y2*y3/6"),
        p(&ring, &format!("v/{six_pow_b}")),
    ];

    New7 {
        a_param,
        b_param,
        ring,
        d,
        h,
        a: a_pres,
        slices,
        omega,
        h_grading,
        s3,
        bh_gens,
        dict,
        small_ring,
        small_d,
    }
}

/// The four-variable triangular model `y∂z + z∂u + u^b∂w` on `k[y, z, u, w]`.
pub fn maubach_ring(b: u32) -> (RingRef, Derivation) {
    assert!(b >= 1);
    let ring = RingCtx::grevlex(&["y", "z", "u", "w"]);
    let d = Derivation::parse(&ring, &[("z", "y"), ("u", "z"), ("w", &format!("u^{b}"))]);
    (ring, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slices::slice_substitute;

    #[test]
    fn df5_generators_are_invariants() {
        let e = df5();
        for f in &e.f {
            assert!(e.delta.in_kernel(f));
        }
        assert!(e.slice_s.valid && e.slice_su.valid);
        assert_eq!(e.delta.graded_degree(&e.weights), Some(vec![0]));
    }

    #[test]
    fn roberts_generators_are_invariants() {
        for m in [2, 3] {
            let e = roberts(m);
            for g in &e.phi {
                assert!(e.d.in_kernel(g), "m={m}");
            }
            for sd in &e.slices {
                assert!(sd.valid);
            }
        }
    }

    #[test]
    fn f6_generators_are_invariants() {
        let e = f6();
        for g in e.a.gens() {
            assert!(e.d.in_kernel(g));
        }
        assert_eq!(e.d.apply(&e.slice_su.slice), e.f2);
    }

    #[test]
    fn new7_structure() {
        for (a, b) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let e = new7(a, b);
            for g in e.a.gens() {
                assert!(e.d.in_kernel(g), "(a,b)=({a},{b})");
            }
            // the direct h_i construction agrees with the slice machinery
            for i in 0..3 {
                let elem = slice_substitute(&e.d, &e.slices[i], &Poly::var(&e.ring, 6)).unwrap();
                assert_eq!(elem.numerator, e.h[i], "(a,b)=({a},{b}) i={i}");
                let expected_denom = Poly::var(&e.ring, i).pow((2 * b + 1) * a);
                assert_eq!(elem.denominator(), expected_denom);
            }
            // derivation is homogeneous of degree zero for the corrected weights
            assert_eq!(e.d.graded_degree(&e.omega), Some(vec![0, 0, 0]));
            // subtorus invariance of the nine monomial generators
            for (n, g) in &e.bh_gens {
                assert!(e.h_grading.is_invariant(g), "{n}");
            }
        }
    }

    #[test]
    fn new7_dictionary_hits_the_small_model() {
        for (a, b) in [(1, 1), (2, 2)] {
            let e = new7(a, b);
            assert!(crate::symmetry::pullback_check(&e.d, &e.dict, &e.small_d));
        }
    }

    #[test]
    fn corrupted_dictionary_fails_pullback() {
        let e = new7(1, 1);
        let mut bad = e.dict.clone();
        bad[1] = bad[1].scale(&Rat::new(3.into(), 1.into())); // drop the 1/3
        assert!(!crate::symmetry::pullback_check(&e.d, &bad, &e.small_d));
    }
}
