//! Module-level invariants: ring axioms on random triples, division round
//! trips, substitution as a homomorphism, kernel closure, localized-membership
//! minimality, the homogeneous-component machinery on symmetrized invariants,
//! and a concrete replay of the separation argument along orbit pairs.

use lndcert::catalog::{df5, new7, roberts};
use lndcert::ideals::GbConfig;
use lndcert::oracle::monomials_up_to;
use lndcert::ring::{rat, Monomial, Poly, Rat, RingCtx, RingRef};
use lndcert::subalgebra::{localized_member, LocalizedMembership};
use lndcert::theorem::separate_points;

use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_poly(rng: &mut StdRng, ring: &RingRef, max_terms: usize, max_deg: u32) -> Poly {
    let monos = monomials_up_to(ring.arity(), max_deg);
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(Monomial, Rat)> = (0..n)
        .map(|_| {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            (m, rat(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4)))
        })
        .collect();
    Poly::from_terms(ring, terms)
}

#[test]
fn core_values_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<lndcert::ring::Poly>();
    assert_send_sync::<lndcert::ring::TPoly>();
    assert_send_sync::<lndcert::derivation::Derivation>();
    assert_send_sync::<lndcert::ideals::GroebnerBasis>();
    assert_send_sync::<lndcert::slices::LocalSliceData>();
    assert_send_sync::<lndcert::subalgebra::SubalgebraPresentation>();
    assert_send_sync::<lndcert::symmetry::WeightSystem>();
    assert_send_sync::<lndcert::symmetry::PermAction>();
}

#[test]
fn ring_axioms_on_random_triples() {
    let ring = RingCtx::grevlex(&["x", "s", "t"]);
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..10_000 {
        let a = random_poly(&mut rng, &ring, 3, 3);
        let b = random_poly(&mut rng, &ring, 3, 3);
        let c = random_poly(&mut rng, &ring, 3, 3);
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }
}

// proptest strategy: a sparse polynomial in three variables
fn poly_strategy(ring: RingRef) -> impl Strategy<Value = Poly> {
    let arity = ring.arity();
    proptest::collection::vec(
        (
            proptest::collection::vec(0u32..3, arity),
            -6i64..=6,
            1i64..=4,
        ),
        0..4,
    )
    .prop_map(move |raw| {
        let terms = raw
            .into_iter()
            .map(|(exps, num, den)| (Monomial(exps), rat(num, den)))
            .collect();
        Poly::from_terms(&ring, terms)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn exact_div_inverts_multiplication(
        p in poly_strategy(RingCtx::grevlex(&["x", "s", "t"])),
        q in poly_strategy(RingCtx::grevlex(&["x", "s", "t"])),
    ) {
        prop_assume!(!q.is_zero());
        let product = &p * &q;
        prop_assert_eq!(product.exact_div(&q), Some(p));
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        p in poly_strategy(RingCtx::grevlex(&["x", "s", "t"])),
        q in poly_strategy(RingCtx::grevlex(&["x", "s", "t"])),
        im0 in poly_strategy(RingCtx::grevlex(&["x", "s", "t"])),
        im1 in poly_strategy(RingCtx::grevlex(&["x", "s", "t"])),
    ) {
        let ring = p.ring().clone();
        let images = vec![im0, im1, Poly::var(&ring, 2)];
        let lhs = (&p * &q).substitute(&images);
        let rhs = &p.substitute(&images) * &q.substitute(&images);
        prop_assert_eq!(lhs, rhs);
        let sum_lhs = (&p + &q).substitute(&images);
        let sum_rhs = &p.substitute(&images) + &q.substitute(&images);
        prop_assert_eq!(sum_lhs, sum_rhs);
    }

    #[test]
    fn constant_substitution_agrees_with_evaluation(
        p in poly_strategy(RingCtx::grevlex(&["x", "s", "t"])),
        c0 in -4i64..=4, c1 in -4i64..=4, c2 in -4i64..=4,
    ) {
        let ring = p.ring().clone();
        let point = vec![rat(c0, 1), rat(c1, 1), rat(c2, 1)];
        let images: Vec<Poly> = point
            .iter()
            .map(|c| Poly::constant(&ring, c.clone()))
            .collect();
        let substituted = p.substitute(&images);
        prop_assert_eq!(substituted.as_constant(), Some(p.evaluate(&point)));
    }
}

#[test]
fn saturation_contains_the_ideal_and_reduces_back() {
    use lndcert::ideals::{groebner, ideal_member, normal_form, saturation, Ideal};
    let ring = RingCtx::grevlex(&["x", "s", "t"]);
    let mut rng = StdRng::seed_from_u64(21);
    let cfg = GbConfig::default();
    let mut tested = 0;
    for _ in 0..40 {
        let gens: Vec<Poly> = (0..rng.gen_range(1..=2))
            .map(|_| random_poly(&mut rng, &ring, 2, 2))
            .filter(|g| !g.is_zero())
            .collect();
        let f = random_poly(&mut rng, &ring, 2, 2);
        if gens.is_empty() || f.is_zero() {
            continue;
        }
        let ideal = Ideal::new(&ring, gens);
        let sat = saturation(&ideal, &f, &cfg).unwrap();
        let sat_gb = groebner(&sat, &cfg).unwrap();
        // saturation contains the ideal
        for g in ideal.gens() {
            assert!(normal_form(g, &sat_gb).is_zero());
        }
        // every saturation generator multiplies back into the ideal by a
        // bounded power of f
        for g in sat.gens() {
            let mut scaled = g.clone();
            let absorbed = (0..=12).any(|_| {
                let hit = ideal_member(&scaled, &ideal, &cfg).unwrap();
                scaled = &scaled * &f;
                hit
            });
            assert!(absorbed, "saturation generator {g} never reduced back");
        }
        tested += 1;
    }
    assert!(tested >= 20);
}

#[test]
fn registry_derivations_certify_within_bound_eight() {
    let e5 = df5();
    let cert = e5.delta.certify_lnd(8).unwrap();
    let got: Vec<u32> = ["x", "s", "t", "u", "v"]
        .iter()
        .map(|v| cert.indices[*v])
        .collect();
    assert_eq!(got, vec![1, 2, 3, 4, 2]);
    for m in [2, 3] {
        assert!(roberts(m).d.certify_lnd(8).is_ok());
    }
    assert!(lndcert::catalog::f6().d.certify_lnd(8).is_ok());
    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let e = new7(a, b);
        let cert = e.d.certify_lnd(8).unwrap();
        // the last variable carries the longest chain: index 3b + 2
        assert_eq!(cert.indices["v"], 3 * b + 2);
        assert!(e.small_d.certify_lnd(8).is_ok());
    }
}

#[test]
fn graded_derivation_preserves_weights() {
    // the derivation has graded degree zero, so applying it never moves a
    // homogeneous element to another weight
    let e = new7(2, 1);
    let mut rng = StdRng::seed_from_u64(31);
    assert_eq!(e.d.graded_degree(&e.omega), Some(vec![0, 0, 0]));
    let monos = monomials_up_to(e.ring.arity(), 4);
    for _ in 0..300 {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        let p = Poly::monomial(&e.ring, m, rat(1, 1));
        let image = e.d.apply(&p);
        if image.is_zero() {
            continue;
        }
        assert_eq!(e.omega.weight(&image), e.omega.weight(&p));
    }
}

#[test]
fn kernel_closure_under_sum_and_product() {
    let e = df5();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let i = rng.gen_range(0..e.f.len());
        let j = rng.gen_range(0..e.f.len());
        let sum = &e.f[i] + &e.f[j];
        let prod = &e.f[i] * &e.f[j];
        assert!(e.delta.in_kernel(&sum));
        assert!(e.delta.in_kernel(&prod));
    }
}

#[test]
fn localized_membership_returns_the_minimal_power() {
    let e = roberts(2);
    let tester = e.a_prime.tester();
    let cfg = GbConfig::default();
    let x1 = Poly::var(&e.ring, 0);
    // one power of x1 suffices: x1*phi4 = x2^2*phi2 + x3*phi6
    let found = localized_member(&tester, &e.phi[3], &x1, 8, &cfg).unwrap();
    assert_eq!(found, LocalizedMembership::Found { n: 1 });
    let relation =
        &(&Poly::var(&e.ring, 1).pow(2) * &e.phi[1]) + &(&Poly::var(&e.ring, 2) * &e.phi[5]);
    assert_eq!(&x1 * &e.phi[3], relation);
    // minimality: phi4 itself is outside the reduced algebra
    assert!(!tester.member(&e.phi[3], &cfg).unwrap());
}

#[test]
fn h_component_of_symmetric_invariants_stays_symmetric() {
    // the machinery behind the final containment argument: for an
    // S3-invariant, the subtorus-degree-zero component is S3-invariant again
    let e = new7(2, 1);
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..20 {
        let i = rng.gen_range(0..e.h.len());
        let seed = &e.h[i] + &random_poly(&mut rng, &e.ring, 2, 3);
        let orbit = e.s3.orbit_product(&seed);
        assert!(e.s3.is_invariant(&orbit));
        let zero_component = e.h_grading.homogeneous_component(&orbit, &[0, 0, 0]);
        assert!(e.s3.is_invariant(&zero_component));
        // components partition the polynomial
        let mut sum = Poly::zero(&e.ring);
        for d in e.h_grading.occurring_weights(&orbit) {
            sum = &sum + &e.h_grading.homogeneous_component(&orbit, &d);
        }
        assert_eq!(sum, orbit);
    }
}

#[test]
fn separation_replay_along_orbit_pairs() {
    // points on one orbit have equal invariants; with the localized witness
    // x1^3*phi4 inside the reduced algebra, agreement of the reduced algebra
    // off V(x1, x2) forces agreement of phi4 as well
    let e = roberts(2);
    let r = &e.ring;
    let cfg = GbConfig::default();
    let aprime_gens: Vec<(String, Poly)> = e
        .a_prime
        .gen_names()
        .iter()
        .zip(e.a_prime.gens())
        .map(|(n, g)| (n.clone(), g.clone()))
        .collect();
    let tester = e.a_prime.tester();
    let x1 = Poly::var(r, 0);
    let witness_pow = 1u32;
    assert!(tester
        .member(&(&x1.pow(witness_pow) * &e.phi[3]), &cfg)
        .unwrap());

    let base_points: [[i64; 7]; 2] = [[1, 2, 1, 0, 1, 1, 1], [2, 1, 3, 1, 0, 2, 5]];
    let times = [rat(1, 1), rat(-1, 2), rat(2, 3)];
    for base in base_points {
        let u: Vec<Rat> = base.iter().map(|&n| rat(n, 1)).collect();
        for t in &times {
            // the orbit point: every coordinate moved by the flow
            let v: Vec<Rat> = (0..r.arity())
                .map(|i| e.d.theta(&Poly::var(r, i)).unwrap().eval_at(t).evaluate(&u))
                .collect();
            // neither point lies on V(x1, x2)
            assert!(!u[0].is_zero() && !u[1].is_zero());
            assert!(!v[0].is_zero() && !v[1].is_zero());
            // invariants agree along the orbit, so no generator separates
            assert!(separate_points(&aprime_gens, &u, &v).is_none());
            // the witness identity: (x1*phi4)(u) = x1(u) * phi4(u)
            let lifted = &x1.pow(witness_pow) * &e.phi[3];
            assert_eq!(lifted.evaluate(&u), u[0].clone() * e.phi[3].evaluate(&u));
            // and phi4 cannot separate the pair either
            assert_eq!(e.phi[3].evaluate(&u), e.phi[3].evaluate(&v));
        }
    }
}
