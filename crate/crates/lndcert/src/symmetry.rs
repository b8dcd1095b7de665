//! Torus gradings via integer weight systems, symmetric-group actions on
//! indexed variables, orbit products, homogeneous components, and the
//! dictionary pullback check between a derivation and its quotient model.

use crate::derivation::Derivation;
use crate::ring::{same_ring, Monomial, Poly, RingRef};

/// Integer weight vectors per variable. With `mod_diagonal` set, weights are
/// read modulo the diagonal `Z·(1,…,1)`; that models the torus subgroup
/// where the coordinates multiply to 1 without choosing a basis for the
/// quotient lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSystem {
    ring: RingRef,
    weights: Vec<Vec<i64>>,
    dim: usize,
    mod_diagonal: bool,
}

impl WeightSystem {
    pub fn new(ring: &RingRef, weights: Vec<Vec<i64>>, mod_diagonal: bool) -> WeightSystem {
        assert_eq!(
            weights.len(),
            ring.arity(),
            "one weight vector per variable"
        );
        let dim = weights.first().map(|w| w.len()).unwrap_or(0);
        assert!(
            weights.iter().all(|w| w.len() == dim),
            "mixed weight arities"
        );
        WeightSystem {
            ring: ring.clone(),
            weights,
            dim,
            mod_diagonal,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mod_diagonal(&self) -> bool {
        self.mod_diagonal
    }

    pub fn var_weight(&self, v: usize) -> &[i64] {
        &self.weights[v]
    }

    pub fn monomial_weight(&self, m: &Monomial) -> Vec<i64> {
        let mut acc = vec![0i64; self.dim];
        for (i, &e) in m.0.iter().enumerate() {
            for (a, w) in acc.iter_mut().zip(&self.weights[i]) {
                *a += e as i64 * w;
            }
        }
        self.normalize(acc)
    }

    // Canonical representative modulo the diagonal: last component zero.
    fn normalize(&self, mut w: Vec<i64>) -> Vec<i64> {
        if self.mod_diagonal && self.dim > 0 {
            let last = w[self.dim - 1];
            for a in w.iter_mut() {
                *a -= last;
            }
        }
        w
    }

    /// Common weight of all monomials, or `None` if inhomogeneous.
    pub fn weight(&self, p: &Poly) -> Option<Vec<i64>> {
        assert!(same_ring(p.ring(), &self.ring), "ring mismatch");
        let mut it = p.terms().iter();
        let first = self.monomial_weight(&it.next()?.0);
        for (m, _) in it {
            if self.monomial_weight(m) != first {
                return None;
            }
        }
        Some(first)
    }

    /// Sum of the terms of weight exactly `d` (normalized the same way).
    pub fn homogeneous_component(&self, p: &Poly, d: &[i64]) -> Poly {
        assert!(same_ring(p.ring(), &self.ring), "ring mismatch");
        let d = self.normalize(d.to_vec());
        let terms = p
            .terms()
            .iter()
            .filter(|(m, _)| self.monomial_weight(m) == d)
            .cloned()
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// All weights occurring in `p`, each once, in the term order.
    pub fn occurring_weights(&self, p: &Poly) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = Vec::new();
        for (m, _) in p.terms() {
            let w = self.monomial_weight(m);
            if !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }

    /// Zero weight on every monomial (for `mod_diagonal`, weight on the
    /// diagonal), i.e. invariance under the torus.
    pub fn is_invariant(&self, p: &Poly) -> bool {
        p.terms()
            .iter()
            .all(|(m, _)| self.monomial_weight(m).iter().all(|&a| a == 0))
    }
}

/// A symmetric group `S_n` permuting indexed variable families in parallel
/// and fixing the rest. Convention: σ sends the i-th member of every orbit
/// tuple to the σ(i)-th, a left action.
#[derive(Debug, Clone, PartialEq)]
pub struct PermAction {
    ring: RingRef,
    orbits: Vec<Vec<usize>>,
    degree: usize,
}

impl PermAction {
    pub fn new(ring: &RingRef, orbits: Vec<Vec<usize>>) -> PermAction {
        let degree = orbits.first().map(|o| o.len()).unwrap_or(0);
        assert!(degree >= 1, "need at least one orbit");
        let mut seen = vec![false; ring.arity()];
        for orbit in &orbits {
            assert_eq!(orbit.len(), degree, "orbit tuples must share a length");
            for &v in orbit {
                assert!(v < ring.arity());
                assert!(!seen[v], "variable occurs in two orbits");
                seen[v] = true;
            }
        }
        PermAction {
            ring: ring.clone(),
            orbits,
            degree,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Variables fixed by the action.
    pub fn fixed(&self) -> Vec<usize> {
        (0..self.ring.arity())
            .filter(|v| !self.orbits.iter().any(|o| o.contains(v)))
            .collect()
    }

    /// Image of `p` under the permutation `sigma` (one-line notation:
    /// position `i` maps to `sigma[i]`).
    pub fn image(&self, p: &Poly, sigma: &[usize]) -> Poly {
        assert_eq!(sigma.len(), self.degree, "permutation degree mismatch");
        let mut var_map: Vec<usize> = (0..self.ring.arity()).collect();
        for orbit in &self.orbits {
            for (i, &v) in orbit.iter().enumerate() {
                var_map[v] = orbit[sigma[i]];
            }
        }
        p.embed(&self.ring, &var_map)
    }

    /// All `n!` permutations in one-line notation, lexicographic order.
    pub fn group_elements(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..self.degree).collect();
        loop {
            out.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (0..cur.len().saturating_sub(1))
                .rev()
                .find(|&i| cur[i] < cur[i + 1])
            else {
                break;
            };
            let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    /// Product of the images of `p` over all group elements (with
    /// multiplicity), which is invariant by construction.
    pub fn orbit_product(&self, p: &Poly) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for sigma in self.group_elements() {
            acc = &acc * &self.image(p, &sigma);
        }
        acc
    }

    pub fn is_invariant(&self, p: &Poly) -> bool {
        self.group_elements()
            .iter()
            .all(|sigma| &self.image(p, sigma) == p)
    }
}

/// Check that a derivation on the big ring restricts, through the dictionary
/// `small variable -> big polynomial`, to the given derivation on the small
/// ring: `D(dict(w)) = dict(Δ(w))` for every small-ring variable `w`.
pub fn pullback_check(big: &Derivation, dict: &[Poly], small: &Derivation) -> bool {
    let small_ring = small.ring();
    assert_eq!(
        dict.len(),
        small_ring.arity(),
        "dictionary must cover the small ring"
    );
    for im in dict {
        assert!(
            same_ring(im.ring(), big.ring()),
            "dictionary image off-ring"
        );
    }
    for w in 0..small_ring.arity() {
        let lhs = big.apply(&dict[w]);
        let rhs = small.image(w).substitute(dict);
        if lhs != rhs {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_poly;
    use crate::ring::RingCtx;

    fn r7() -> RingRef {
        RingCtx::grevlex(&["x1", "x2", "x3", "y1", "y2", "y3", "v"])
    }

    /// ω for the 7-variable torus action with parameters (a, b): x_i of
    /// weight e_i, y_i of weight a·e_i, v of weight (ab, ab, ab).
    fn omega(ring: &RingRef, a: i64, b: i64, mod_diag: bool) -> WeightSystem {
        let w = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![a, 0, 0],
            vec![0, a, 0],
            vec![0, 0, a],
            vec![a * b, a * b, a * b],
        ];
        WeightSystem::new(ring, w, mod_diag)
    }

    #[test]
    fn weights_of_named_monomials() {
        let r = r7();
        let w = omega(&r, 2, 1, false);
        let p = parse_poly(&r, "x1^2*y2*y3").unwrap();
        assert_eq!(w.weight(&p), Some(vec![2, 2, 2]));
        let x = parse_poly(&r, "x1*x2*x3").unwrap();
        assert_eq!(w.weight(&x), Some(vec![1, 1, 1]));
        let mixed = parse_poly(&r, "x1 + y1").unwrap();
        assert_eq!(w.weight(&mixed), None);
    }

    #[test]
    fn h_component_mod_diagonal() {
        let r = r7();
        let w = omega(&r, 1, 1, true);
        let p = parse_poly(&r, "x1*y2*y3 + x1^2*y1").unwrap();
        // (1,1,1) is diagonal; (3,0,0) normalized is (3,0,0)
        assert_eq!(
            w.homogeneous_component(&p, &[0, 0, 0]),
            parse_poly(&r, "x1*y2*y3").unwrap()
        );
        // components partition the polynomial
        let mut sum = Poly::zero(&r);
        for d in w.occurring_weights(&p) {
            sum = &sum + &w.homogeneous_component(&p, &d);
        }
        assert_eq!(sum, p);
    }

    #[test]
    fn nine_bh_generators_are_h_invariant() {
        let r = r7();
        for (a, b) in [(1i64, 1i64), (2, 1), (1, 2), (2, 2)] {
            let w = omega(&r, a, b, true);
            let gens = [
                "x1*x2*x3".to_string(),
                format!("x1^{a}*y2*y3"),
                format!("x2^{a}*y1*y3"),
                format!("x3^{a}*y1*y2"),
                format!("x1^{a}*x2^{a}*y3"),
                format!("x1^{a}*x3^{a}*y2"),
                format!("x2^{a}*x3^{a}*y1"),
                "y1*y2*y3".to_string(),
                "v".to_string(),
            ];
            for g in &gens {
                assert!(
                    w.is_invariant(&parse_poly(&r, g).unwrap()),
                    "({a},{b}): {g}"
                );
            }
            assert!(!w.is_invariant(&parse_poly(&r, "x1").unwrap()));
        }
    }

    fn s3(r: &RingRef) -> PermAction {
        PermAction::new(r, vec![vec![0, 1, 2], vec![3, 4, 5]])
    }

    #[test]
    fn perm_image_convention() {
        let r = r7();
        let act = s3(&r);
        // sigma = (1 2) swaps the first two indices
        let phi1 = parse_poly(&r, "x1^3*y2 - x2^3*y1").unwrap();
        let swapped = act.image(&phi1, &[1, 0, 2]);
        assert_eq!(swapped, -&phi1);
        // identity
        assert_eq!(act.image(&phi1, &[0, 1, 2]), phi1);
        // x1 -> x2 under the cycle sending index 1 to 2
        let x1 = parse_poly(&r, "x1").unwrap();
        assert_eq!(act.image(&x1, &[1, 2, 0]), parse_poly(&r, "x2").unwrap());
        // v is fixed
        assert_eq!(act.fixed(), vec![6]);
    }

    #[test]
    fn orbit_products() {
        let r = r7();
        let act = s3(&r);
        let y1 = parse_poly(&r, "y1").unwrap();
        assert_eq!(
            act.orbit_product(&y1),
            parse_poly(&r, "y1^2*y2^2*y3^2").unwrap()
        );
        let inv = parse_poly(&r, "x1*x2*x3").unwrap();
        assert_eq!(act.orbit_product(&inv), inv.pow(6));
        // the orbit product is invariant under all six elements
        let h = parse_poly(&r, "x1*y2 - x2*y1 + v").unwrap();
        let prod = act.orbit_product(&h);
        assert!(act.is_invariant(&prod));
        assert!(!act.is_invariant(&parse_poly(&r, "x1").unwrap()));
    }

    #[test]
    fn symmetric_sum_is_invariant() {
        let r = r7();
        let act = s3(&r);
        for a in [1, 2, 3] {
            let p = parse_poly(&r, &format!("x1^{a}*y2*y3 + x2^{a}*y1*y3 + x3^{a}*y1*y2")).unwrap();
            assert!(act.is_invariant(&p));
        }
    }

    #[test]
    fn weight_additivity() {
        let r = r7();
        let w = omega(&r, 2, 3, false);
        let p = parse_poly(&r, "x1^2*y2*y3").unwrap();
        let q = parse_poly(&r, "y1*y2*y3").unwrap();
        let wp = w.weight(&p).unwrap();
        let wq = w.weight(&q).unwrap();
        let wpq = w.weight(&(&p * &q)).unwrap();
        let sum: Vec<i64> = wp.iter().zip(&wq).map(|(a, b)| a + b).collect();
        assert_eq!(wpq, sum);
    }
}
