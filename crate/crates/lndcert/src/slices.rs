//! Local slices and the first step of van den Essen's kernel algorithm:
//! for a local slice `s` with plinth `f = D(s)`, the localized invariant
//! ring is generated by `f`, `1/f`, and the projections
//! `f^e · θ(b)|_{T = -s/f}` of the ring variables, with `e` minimal.

use std::fmt;

use num_traits::One;

use crate::derivation::{Derivation, ThetaDiverged};
use crate::ring::{same_ring, Poly, Rat};

/// A local-slice candidate: `slice` with `plinth = D(slice)`; valid when the
/// plinth is a nonzero derivation constant (`D²(slice) = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSliceData {
    pub slice: Poly,
    pub plinth: Poly,
    pub valid: bool,
    /// `(g, k, c)` with `plinth = c·g^k` for a single-variable plinth; lets
    /// minimality work against the irreducible base instead of its power.
    pub factored_base: Option<(Poly, u32, Rat)>,
}

/// Build the slice data for `s`, computing `f = D(s)` and the validity flag.
pub fn local_slice_data(d: &Derivation, s: &Poly) -> LocalSliceData {
    let plinth = d.apply(s);
    let valid = !plinth.is_zero() && d.apply(&plinth).is_zero();
    let factored_base = single_variable_power(&plinth);
    LocalSliceData {
        slice: s.clone(),
        plinth,
        valid,
        factored_base,
    }
}

// Recognize `c·v^k` with `k >= 2`; for such plinths the worked tables divide
// by `v`, not by the full power.
fn single_variable_power(f: &Poly) -> Option<(Poly, u32, Rat)> {
    if f.terms().len() != 1 {
        return None;
    }
    let (m, c) = &f.terms()[0];
    let support = m.support();
    if support.len() != 1 {
        return None;
    }
    let v = support[0];
    let k = m.degree_of(v);
    if k < 2 {
        return None;
    }
    Some((Poly::var(f.ring(), v), k, c.clone()))
}

/// An element `numerator / base^exponent` of the localized ring, with the
/// exponent minimal: `base` does not divide the numerator when it is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalElem {
    pub numerator: Poly,
    pub base: Poly,
    pub exponent: u32,
}

impl LocalElem {
    pub fn polynomial(numerator: Poly) -> LocalElem {
        let base = Poly::one(numerator.ring());
        LocalElem {
            numerator,
            base,
            exponent: 0,
        }
    }

    /// The denominator `base^exponent` as a polynomial.
    pub fn denominator(&self) -> Poly {
        self.base.pow(self.exponent)
    }

    /// Exact evaluation; `None` when the denominator vanishes at the point.
    pub fn evaluate(&self, point: &[Rat]) -> Option<Rat> {
        let den = self.denominator().evaluate(point);
        if den == Rat::from_integer(0.into()) {
            return None;
        }
        Some(self.numerator.evaluate(point) / den)
    }
}

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / ({})", self.numerator, self.base)?;
        if self.exponent > 1 {
            write!(f, "^{}", self.exponent)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum SliceError {
    #[error("slice data invalid: plinth is zero or not a derivation constant")]
    InvalidSlice,
    #[error(transparent)]
    Theta(#[from] ThetaDiverged),
}

/// `θ(b)|_{T = -s/f}` written over a power of `f` by homogenizing, with the
/// maximal `f`-power divided out; when the plinth is a recognized power
/// `c·g^k`, the result is further reduced against the base `g`.
pub fn slice_substitute(
    d: &Derivation,
    sd: &LocalSliceData,
    b: &Poly,
) -> Result<LocalElem, SliceError> {
    if !sd.valid {
        return Err(SliceError::InvalidSlice);
    }
    let ring = d.ring().clone();
    assert!(same_ring(b.ring(), &ring), "ring mismatch");
    let th = d.theta(b)?;
    let coeffs = th.coeffs();
    if coeffs.is_empty() {
        return Ok(LocalElem::polynomial(Poly::zero(&ring)));
    }
    let top = coeffs.len() - 1; // degree in T
    let f = &sd.plinth;
    let minus_s = -&sd.slice;

    // numerator of theta(b)| over f^top
    let mut numerator = Poly::zero(&ring);
    for (k, c) in coeffs.iter().enumerate() {
        numerator = &numerator + &(&(c * &minus_s.pow(k as u32)) * &f.pow((top - k) as u32));
    }
    let mut exponent = top as u32;

    // minimality against the plinth itself
    while exponent > 0 {
        match numerator.exact_div(f) {
            Some(q) => {
                numerator = q;
                exponent -= 1;
            }
            None => break,
        }
    }

    if numerator.is_zero() {
        return Ok(LocalElem::polynomial(numerator));
    }

    // refinement against the irreducible base of a power plinth
    if exponent > 0 {
        if let Some((g, k, c)) = &sd.factored_base {
            if !c.is_one() {
                let scale = c.pow(exponent as i32).recip();
                numerator = numerator.scale(&scale);
            }
            let mut base_exponent = exponent * k;
            while base_exponent > 0 {
                match numerator.exact_div(g) {
                    Some(q) => {
                        numerator = q;
                        base_exponent -= 1;
                    }
                    None => break,
                }
            }
            if base_exponent == 0 {
                return Ok(LocalElem::polynomial(numerator));
            }
            // keep the plinth as the displayed base when nothing cancelled
            if base_exponent == exponent * k {
                return Ok(LocalElem {
                    numerator: numerator.scale(&c.pow(exponent as i32)),
                    base: f.clone(),
                    exponent,
                });
            }
            return Ok(LocalElem {
                numerator,
                base: g.clone(),
                exponent: base_exponent,
            });
        }
    }

    if exponent == 0 {
        return Ok(LocalElem::polynomial(numerator));
    }
    Ok(LocalElem {
        numerator,
        base: f.clone(),
        exponent,
    })
}

/// Where an entry of the step-1 generator list comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EssenSource {
    /// The plinth `f` itself (invertible in the localization).
    Plinth,
    /// Projection of the ring variable with this index.
    Var(usize),
}

#[derive(Debug, Clone)]
pub struct EssenEntry {
    pub source: EssenSource,
    pub elem: LocalElem,
    /// Zero or constant numerators are retained but marked, so reports can
    /// mirror the zero rows of the worked tables.
    pub degenerate: bool,
}

/// Van den Essen step 1: the plinth followed by one projected generator per
/// ring variable.
pub fn essen_step1(d: &Derivation, sd: &LocalSliceData) -> Result<Vec<EssenEntry>, SliceError> {
    if !sd.valid {
        return Err(SliceError::InvalidSlice);
    }
    let ring = d.ring().clone();
    let mut out = Vec::with_capacity(ring.arity() + 1);
    out.push(EssenEntry {
        source: EssenSource::Plinth,
        elem: LocalElem::polynomial(sd.plinth.clone()),
        degenerate: false,
    });
    for v in 0..ring.arity() {
        let elem = slice_substitute(d, sd, &Poly::var(&ring, v))?;
        let degenerate = elem.numerator.is_constant();
        out.push(EssenEntry {
            source: EssenSource::Var(v),
            elem,
            degenerate,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_poly;
    use crate::ring::{rat, RingCtx, RingRef};

    fn df5() -> (RingRef, Derivation) {
        let r = RingCtx::grevlex(&["x", "s", "t", "u", "v"]);
        let d = Derivation::parse(&r, &[("s", "x^3"), ("t", "s"), ("u", "t"), ("v", "x^2")]);
        (r, d)
    }

    #[test]
    fn slice_data_for_s() {
        let (r, d) = df5();
        let sd = local_slice_data(&d, &parse_poly(&r, "s").unwrap());
        assert!(sd.valid);
        assert_eq!(sd.plinth, parse_poly(&r, "x^3").unwrap());
        let (g, k, c) = sd.factored_base.clone().unwrap();
        assert_eq!((g, k, c), (parse_poly(&r, "x").unwrap(), 3, rat(1, 1)));
    }

    #[test]
    fn slice_data_for_second_column() {
        let (r, d) = df5();
        let sd = local_slice_data(&d, &parse_poly(&r, "3*x^3*u - s*t").unwrap());
        assert!(sd.valid);
        assert_eq!(sd.plinth, parse_poly(&r, "2*x^3*t - s^2").unwrap());
        assert!(sd.factored_base.is_none());
    }

    #[test]
    fn invalid_slice_u() {
        let (r, d) = df5();
        let sd = local_slice_data(&d, &parse_poly(&r, "u").unwrap());
        assert!(!sd.valid);
        assert_eq!(sd.plinth, parse_poly(&r, "t").unwrap());
    }

    #[test]
    fn first_column_of_the_slice_table() {
        let (r, d) = df5();
        let sd = local_slice_data(&d, &parse_poly(&r, "s").unwrap());
        let x = parse_poly(&r, "x").unwrap();

        // theta(s)| = 0
        let e = slice_substitute(&d, &sd, &parse_poly(&r, "s").unwrap()).unwrap();
        assert!(e.numerator.is_zero());
        assert_eq!(e.exponent, 0);

        // x^3 * theta(t)| = f2/2
        let e = slice_substitute(&d, &sd, &parse_poly(&r, "t").unwrap()).unwrap();
        assert_eq!(e.numerator, parse_poly(&r, "x^3*t - s^2/2").unwrap());
        assert_eq!(e.denominator(), parse_poly(&r, "x^3").unwrap());

        // x^6 * theta(u)| = f3/3
        let e = slice_substitute(&d, &sd, &parse_poly(&r, "u").unwrap()).unwrap();
        assert_eq!(
            e.numerator,
            parse_poly(&r, "x^6*u - x^3*t*s + s^3/3").unwrap()
        );
        assert_eq!(e.denominator(), parse_poly(&r, "x^6").unwrap());

        // x * theta(v)| = f4, reduced from base x^3 to base x
        let e = slice_substitute(&d, &sd, &parse_poly(&r, "v").unwrap()).unwrap();
        assert_eq!(e.numerator, parse_poly(&r, "x*v - s").unwrap());
        assert_eq!(e.base, x);
        assert_eq!(e.exponent, 1);
    }

    #[test]
    fn second_column_of_the_slice_table() {
        let (r, d) = df5();
        let sd = local_slice_data(&d, &parse_poly(&r, "3*x^3*u - s*t").unwrap());
        let f2 = parse_poly(&r, "2*x^3*t - s^2").unwrap();

        // f2 * theta(s)| = -f3
        let e = slice_substitute(&d, &sd, &parse_poly(&r, "s").unwrap()).unwrap();
        let f3 = parse_poly(&r, "3*x^6*u - 3*x^3*t*s + s^3").unwrap();
        assert_eq!(e.numerator, -&f3);
        assert_eq!(e.base, f2);
        assert_eq!(e.exponent, 1);

        // f2 * theta(v)| = f5
        let e = slice_substitute(&d, &sd, &parse_poly(&r, "v").unwrap()).unwrap();
        assert_eq!(
            e.numerator,
            parse_poly(&r, "x^2*t*s - s^2*v + 2*x^3*t*v - 3*x^5*u").unwrap()
        );
        assert_eq!(e.exponent, 1);
    }

    #[test]
    fn essen_step1_lists_every_variable() {
        let (r, d) = df5();
        let sd = local_slice_data(&d, &parse_poly(&r, "s").unwrap());
        let entries = essen_step1(&d, &sd).unwrap();
        assert_eq!(entries.len(), 6);
        assert_eq!(entries[0].source, EssenSource::Plinth);
        // the s-row is the degenerate zero
        assert!(entries[2].degenerate);
        assert!(entries[2].elem.numerator.is_zero());
        // every numerator is a derivation constant
        for e in &entries {
            assert!(d.in_kernel(&e.elem.numerator));
        }
        // minimality: positive exponents do not divide further
        for e in &entries {
            if e.elem.exponent > 0 {
                assert!(e.elem.numerator.exact_div(&e.elem.base).is_none());
            }
        }
    }

    #[test]
    fn essen_rejects_invalid_slices() {
        let (r, d) = df5();
        let sd = local_slice_data(&d, &parse_poly(&r, "u").unwrap());
        assert_eq!(essen_step1(&d, &sd).unwrap_err(), SliceError::InvalidSlice);
    }

    #[test]
    fn resubstitution_at_rational_points() {
        // numerator/base^e agrees with theta(b) at T = -s(p)/f(p) wherever f(p) != 0
        let (r, d) = df5();
        let sd = local_slice_data(&d, &parse_poly(&r, "s").unwrap());
        let b = parse_poly(&r, "u").unwrap();
        let elem = slice_substitute(&d, &sd, &b).unwrap();
        let th = d.theta(&b).unwrap();
        for point in [
            [rat(1, 1), rat(2, 1), rat(3, 1), rat(-1, 2), rat(0, 1)],
            [rat(2, 3), rat(-1, 1), rat(5, 1), rat(7, 2), rat(1, 4)],
        ] {
            let f_val = sd.plinth.evaluate(&point);
            let t_val = -sd.slice.evaluate(&point) / f_val;
            assert_eq!(
                elem.evaluate(&point).unwrap(),
                th.eval_at(&t_val).evaluate(&point)
            );
        }
    }
}
