//! Independent brute-force oracles: degree-bounded ideal membership,
//! subalgebra membership by exhaustive generator products, and kernel
//! sampling, all via exact rational linear algebra. Intentionally naive and
//! kept free of the Gröbner and elimination machinery they cross-check.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::derivation::Derivation;
use crate::ideals::Ideal;
use crate::ring::{Monomial, Poly, Rat};
use crate::symmetry::WeightSystem;

/// All monomials of total degree at most `bound`, in a fixed deterministic
/// order.
pub fn monomials_up_to(arity: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; arity];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
        if pos == cur.len() {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(cur, pos + 1, left - e, out);
            cur[pos] = 0;
        }
    }
    rec(&mut cur, 0, bound, &mut out);
    out
}

/// Solve `A·x = rhs` exactly; `None` when inconsistent. Free variables are
/// set to zero.
pub fn solve_exact(matrix: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let rows = matrix.len();
    if rows == 0 {
        return if rhs.iter().all(|c| c.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let cols = matrix[0].len();
    let mut a: Vec<Vec<Rat>> = matrix.to_vec();
    let mut b: Vec<Rat> = rhs.to_vec();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        b[row] *= &inv;
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c2 in 0..cols {
                    let delta = &factor * &a[row][c2];
                    a[r][c2] -= delta;
                }
                let delta = &factor * &b[row];
                b[r] -= delta;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    for r in row..rows {
        if !b[r].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (col, pivot) in pivot_of_col.iter().enumerate() {
        if let Some(r) = pivot {
            x[col] = b[*r].clone();
        }
    }
    Some(x)
}

/// Basis of the nullspace of `A`, reduced row echelon based, deterministic.
pub fn kernel_exact(matrix: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let rows = matrix.len();
    let mut a: Vec<Vec<Rat>> = matrix.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c2 in 0..cols {
                    let delta = &factor * &a[row][c2];
                    a[r][c2] -= delta;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for &(r, c) in &pivots {
            v[c] = -a[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Search for `q_i` with `Σ q_i·g_i = p` and `deg(q_i·g_i) ≤ bound`.
/// `true` is conclusive membership; `false` only says no witness exists at
/// this bound.
pub fn brute_ideal_member(p: &Poly, ideal: &Ideal, bound: u32) -> bool {
    let ring = ideal.ring().clone();
    let target_monos = monomials_up_to(ring.arity(), bound);
    let index: BTreeMap<&Monomial, usize> = target_monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    if p.total_degree() > bound {
        return false;
    }

    // columns: (generator, multiplier monomial)
    let mut columns: Vec<Poly> = Vec::new();
    for g in ideal.gens() {
        let gdeg = g.total_degree();
        if gdeg > bound {
            continue;
        }
        for m in monomials_up_to(ring.arity(), bound - gdeg) {
            columns.push(g.mul_term(&m, &Rat::one()));
        }
    }
    let mut matrix = vec![vec![Rat::zero(); columns.len()]; target_monos.len()];
    for (j, col) in columns.iter().enumerate() {
        for (m, c) in col.terms() {
            matrix[index[m]][j] = c.clone();
        }
    }
    let mut rhs = vec![Rat::zero(); target_monos.len()];
    for (m, c) in p.terms() {
        rhs[index[m]] = c.clone();
    }
    solve_exact(&matrix, &rhs).is_some()
}

/// Search for a linear combination of generator products `Π g_j^{a_j}` with
/// `Σ a_j ≤ bound` equal to `p`. Conclusive only on success.
pub fn brute_subalgebra_member(p: &Poly, gens: &[Poly], bound: u32) -> bool {
    let ring = p.ring().clone();
    // all products of at most `bound` generators
    let mut products: Vec<Poly> = vec![Poly::one(&ring)];
    let mut frontier: Vec<(usize, Poly)> = vec![(0, Poly::one(&ring))];
    for _ in 0..bound {
        let mut next = Vec::new();
        for (start, q) in &frontier {
            for (j, g) in gens.iter().enumerate().skip(*start) {
                let prod = q * g;
                next.push((j, prod.clone()));
                products.push(prod);
            }
        }
        frontier = next;
    }
    // collect monomials
    let mut monos: BTreeMap<Monomial, usize> = BTreeMap::new();
    for q in products.iter().chain(std::iter::once(p)) {
        for (m, _) in q.terms() {
            let next = monos.len();
            monos.entry(m.clone()).or_insert(next);
        }
    }
    let mut matrix = vec![vec![Rat::zero(); products.len()]; monos.len()];
    for (j, q) in products.iter().enumerate() {
        for (m, c) in q.terms() {
            matrix[monos[m]][j] = c.clone();
        }
    }
    let mut rhs = vec![Rat::zero(); monos.len()];
    for (m, c) in p.terms() {
        rhs[monos[m]] = c.clone();
    }
    solve_exact(&matrix, &rhs).is_some()
}

/// Exact basis of `{p : deg p ≤ bound, D(p) = 0}`.
///
/// With a weight system making the derivation homogeneous of degree zero,
/// the computation splits into one small block per occurring weight; the
/// result is the same basis the dense computation would give, reordered.
pub fn brute_kernel_sample(
    d: &Derivation,
    bound: u32,
    grading: Option<&WeightSystem>,
) -> Vec<Poly> {
    let ring = d.ring().clone();
    let source = monomials_up_to(ring.arity(), bound);
    let blocks: Vec<Vec<Monomial>> = match grading {
        Some(w) => {
            debug_assert_eq!(d.graded_degree(w), Some(vec![0; w.dim()]));
            let mut by_weight: BTreeMap<Vec<i64>, Vec<Monomial>> = BTreeMap::new();
            for m in source {
                by_weight.entry(w.monomial_weight(&m)).or_default().push(m);
            }
            by_weight.into_values().collect()
        }
        None => vec![source],
    };

    let mut out = Vec::new();
    for block in blocks {
        let images: Vec<Poly> = block
            .iter()
            .map(|m| d.apply(&Poly::monomial(&ring, m.clone(), Rat::one())))
            .collect();
        let mut monos: BTreeMap<Monomial, usize> = BTreeMap::new();
        for im in &images {
            for (m, _) in im.terms() {
                let next = monos.len();
                monos.entry(m.clone()).or_insert(next);
            }
        }
        let mut matrix = vec![vec![Rat::zero(); block.len()]; monos.len()];
        for (j, im) in images.iter().enumerate() {
            for (m, c) in im.terms() {
                matrix[monos[m]][j] = c.clone();
            }
        }
        for v in kernel_exact(&matrix, block.len()) {
            let terms: Vec<(Monomial, Rat)> = block
                .iter()
                .cloned()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .collect();
            out.push(Poly::from_terms(&ring, terms));
        }
    }
    out
}

/// Is `p` a linear combination of `basis`? Exact span membership.
pub fn in_span(p: &Poly, basis: &[Poly]) -> bool {
    let mut monos: BTreeMap<Monomial, usize> = BTreeMap::new();
    for q in basis.iter().chain(std::iter::once(p)) {
        for (m, _) in q.terms() {
            let next = monos.len();
            monos.entry(m.clone()).or_insert(next);
        }
    }
    let mut matrix = vec![vec![Rat::zero(); basis.len()]; monos.len()];
    for (j, q) in basis.iter().enumerate() {
        for (m, c) in q.terms() {
            matrix[monos[m]][j] = c.clone();
        }
    }
    let mut rhs = vec![Rat::zero(); monos.len()];
    for (m, c) in p.terms() {
        rhs[monos[m]] = c.clone();
    }
    solve_exact(&matrix, &rhs).is_some()
}
