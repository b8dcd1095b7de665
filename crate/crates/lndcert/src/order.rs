//! Monomial orders: lex, grevlex, weighted grevlex, and block elimination orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::ring::Monomial;

/// A total order on monomials of a fixed arity.
///
/// `Elim { block }` is the product order that compares the first `block`
/// exponents by grevlex and breaks ties by grevlex on the remaining ones.
/// Any monomial involving a block variable is then larger than every
/// block-free monomial, which is what elimination needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Grevlex refined by strictly positive weights.
    WeightedGrevLex(Vec<u32>),
    Elim {
        block: usize,
    },
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        match self {
            MonomialOrder::Lex => lex(&a.0, &b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::WeightedGrevLex(w) => {
                debug_assert_eq!(w.len(), a.0.len());
                let wa: u64 = a.0.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
                let wb: u64 = b.0.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
                wa.cmp(&wb).then_with(|| grevlex_tie(&a.0, &b.0))
            }
            MonomialOrder::Elim { block } => grevlex(&a.0[..*block], &b.0[..*block])
                .then_with(|| grevlex(&a.0[*block..], &b.0[*block..])),
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| grevlex_tie(a, b))
}

// Grevlex tie-break: at the rightmost differing exponent, the *smaller*
// exponent wins.
fn grevlex_tie(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn lex_order() {
        let o = MonomialOrder::Lex;
        // x > y^5 in lex on (x, y)
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 2])), Ordering::Equal);
    }

    #[test]
    fn grevlex_order() {
        let o = MonomialOrder::GrevLex;
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 3]), &m(&[2, 0])), Ordering::Greater);
        // x^2*y*z > x*y^2*z in grevlex (rightmost difference: exponent of y, smaller wins)
        assert_eq!(o.cmp(&m(&[2, 1, 1]), &m(&[1, 2, 1])), Ordering::Greater);
        // x*z < y^2 since deg equal... x*z vs y^2: rightmost diff at z: x*z has 1 > 0, so x*z smaller
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn elim_block_dominates() {
        let o = MonomialOrder::Elim { block: 1 };
        // any power of the first variable beats anything free of it
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 9, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 2])), Ordering::Less);
    }

    #[test]
    fn weighted_grevlex() {
        let o = MonomialOrder::WeightedGrevLex(vec![1, 3]);
        // x^4 (weight 4) > y (weight 3)
        assert_eq!(o.cmp(&m(&[4, 0]), &m(&[0, 1])), Ordering::Greater);
        // x^3 and y tie on weight, grevlex tie-break: rightmost diff at y, smaller wins
        assert_eq!(o.cmp(&m(&[3, 0]), &m(&[0, 1])), Ordering::Greater);
    }
}
