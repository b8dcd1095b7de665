//! Sparse multivariate polynomials over exact rationals.
//!
//! Every value in the crate lives in a [`RingCtx`]: a named, ordered variable
//! set together with a monomial order. Polynomials keep their terms sorted in
//! decreasing monomial order, so the leading term is `terms[0]` and printing
//! is deterministic.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::order::MonomialOrder;

/// Exact rational coefficient. Always reduced, denominator positive.
pub type Rat = num_rational::BigRational;

/// `n/d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as an exact rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient `n choose k`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// A polynomial ring context: variable names plus a monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCtx {
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<RingCtx>;

impl RingCtx {
    /// Build a ring; panics on duplicate variable names or a bad order arity.
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> RingRef {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            assert!(
                !vars[..i].contains(v),
                "duplicate variable name `{v}` in ring"
            );
        }
        if let MonomialOrder::WeightedGrevLex(w) = &order {
            assert_eq!(w.len(), vars.len(), "weight vector arity mismatch");
            assert!(w.iter().all(|&x| x > 0), "weights must be positive");
        }
        if let MonomialOrder::Elim { block } = &order {
            assert!(*block <= vars.len());
        }
        Arc::new(RingCtx { vars, order })
    }

    pub fn grevlex<S: AsRef<str>>(vars: &[S]) -> RingRef {
        Self::new(vars, MonomialOrder::GrevLex)
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Same variables under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        RingCtx::new(&self.vars, order)
    }

    /// New ring with extra variables appended after the current ones.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S], order: MonomialOrder) -> RingRef {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|v| v.as_ref().to_string()));
        RingCtx::new(&vars, order)
    }

    /// New ring with extra variables prepended before the current ones.
    pub fn prepend<S: AsRef<str>>(&self, extra: &[S], order: MonomialOrder) -> RingRef {
        let mut vars: Vec<String> = extra.iter().map(|v| v.as_ref().to_string()).collect();
        vars.extend(self.vars.iter().cloned());
        RingCtx::new(&vars, order)
    }

    /// New ring keeping only the variables not listed in `drop` (grevlex).
    pub fn without(&self, drop: &[usize]) -> RingRef {
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, v)| v.clone())
            .collect();
        RingCtx::new(&vars, MonomialOrder::GrevLex)
    }
}

pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[track_caller]
fn assert_same_ring(a: &RingRef, b: &RingRef) {
    assert!(
        same_ring(a, b),
        "ring mismatch: [{}] vs [{}]",
        a.vars().join(","),
        b.vars().join(",")
    );
}

/// Exponent vector; length always matches the ring arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn degree_of(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exponent-wise difference, `None` if not divisible.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            e.push(a.checked_sub(*b)?);
        }
        Some(Monomial(e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted in strictly decreasing monomial order with no zero
/// coefficients, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: RingRef,
    terms: Vec<(Monomial, Rat)>,
}

impl Poly {
    fn normalized(ring: RingRef, mut terms: Vec<(Monomial, Rat)>) -> Poly {
        terms.sort_by(|a, b| ring.order().cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Rat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { ring, terms: out }
    }

    pub fn from_terms(ring: &RingRef, terms: Vec<(Monomial, Rat)>) -> Poly {
        for (m, _) in &terms {
            assert_eq!(m.0.len(), ring.arity(), "monomial arity mismatch");
        }
        Self::normalized(ring.clone(), terms)
    }

    pub fn zero(ring: &RingRef) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Poly {
        Self::constant(ring, Rat::one())
    }

    pub fn constant(ring: &RingRef, c: Rat) -> Poly {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.arity()), c)],
        }
    }

    pub fn var(ring: &RingRef, i: usize) -> Poly {
        assert!(i < ring.arity());
        Poly {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.arity(), i), Rat::one())],
        }
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Rat) -> Poly {
        Self::from_terms(ring, vec![(m, c)])
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            Some(Rat::zero())
        } else if self.terms.len() == 1 && self.terms[0].0.is_one() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_of(var))
            .max()
            .unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.arity()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact polynomial division: `Some(q)` with `q * d == self`, else `None`.
    /// Panics when `d` is zero.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert_same_ring(&self.ring, &d.ring);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut q: Vec<(Monomial, Rat)> = Vec::new();
        let (dm, dc) = d
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.try_div(&dm)?;
            let c = rc / &dc;
            rem = &rem - &d.mul_term(&m, &c);
            q.push((m, c));
        }
        Some(Poly::normalized(self.ring.clone(), q))
    }

    /// Largest `t` with `f^t` exactly dividing `self`. Requires a nonzero
    /// polynomial and a non-constant `f`.
    pub fn max_power_dividing(&self, f: &Poly) -> u32 {
        assert!(!self.is_zero(), "max_power_dividing is undefined at 0");
        assert!(
            !f.is_constant(),
            "max_power_dividing requires a non-constant divisor"
        );
        let mut t = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(f) {
            t += 1;
            cur = q;
        }
        t
    }

    /// Total substitution: variable `i` maps to `images[i]`. All images must
    /// live in one common ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.arity(), "assignment not total");
        let target = images
            .first()
            .map(|p| p.ring().clone())
            .unwrap_or_else(|| self.ring.clone());
        for im in images {
            assert_same_ring(&target, im.ring());
        }
        let mut acc = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitution that sends the listed variables to zero, inside the same ring.
    pub fn set_vars_zero(&self, vars: &[usize]) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| vars.iter().all(|&v| m.degree_of(v) == 0))
            .cloned()
            .collect();
        Poly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.ring.arity(), "point arity mismatch");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.degree_of(var);
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[var] -= 1;
                terms.push((m2, c * rat_int(e as i64)));
            }
        }
        Poly::normalized(self.ring.clone(), terms)
    }

    /// Reinterpret in a ring with the same variables but another order.
    pub fn cast(&self, target: &RingRef) -> Poly {
        assert_eq!(self.ring.vars(), target.vars(), "cast changes variables");
        Poly::normalized(target.clone(), self.terms.clone())
    }

    /// Map into a larger ring: variable `i` here becomes `var_map[i]` there.
    pub fn embed(&self, target: &RingRef, var_map: &[usize]) -> Poly {
        assert_eq!(var_map.len(), self.ring.arity());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.arity()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Poly::normalized(target.clone(), terms)
    }

    /// Extract to a smaller ring; panics if a dropped variable occurs.
    pub fn project(&self, target: &RingRef, var_map: &[Option<usize>]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.arity()];
                for (i, &x) in m.0.iter().enumerate() {
                    if x > 0 {
                        let j = var_map[i].unwrap_or_else(|| {
                            panic!("variable `{}` has no image", self.ring.var_name(i))
                        });
                        e[j] += x;
                    }
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Poly::normalized(target.clone(), terms)
    }

    /// Divide by the rational content and make the leading coefficient
    /// positive: integer coefficients with gcd 1.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for (_, c) in &self.terms {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut numer_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let scaled = c.numer() * (&denom_lcm / c.denom());
            numer_gcd = num_integer::gcd(numer_gcd, scaled);
        }
        let mut factor = Rat::new(denom_lcm, numer_gcd);
        if self.terms[0].1.clone() * &factor < Rat::zero() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_same_ring(&self.ring, &rhs.ring);
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &rhs.terms[j];
            match order.cmp(ma, mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(rhs.terms[j..].iter().cloned());
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_same_ring(&self.ring, &rhs.ring);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut acc: HashMap<Monomial, Rat> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly::normalized(self.ring.clone(), acc.into_iter().collect())
    }
}

fn write_rat(f: &mut fmt::Formatter<'_>, c: &Rat) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    /// Canonical text: decreasing monomial order, explicit `*`, `^` for
    /// powers, rationals as `a/b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if m.is_one() {
                write_rat(f, &a)?;
            } else {
                if !a.is_one() {
                    write_rat(f, &a)?;
                    write!(f, "*")?;
                }
                let mut first = true;
                for (i, &e) in m.0.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "{}", self.ring.var_name(i))?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Polynomial in a formal variable `T` with [`Poly`] coefficients; the image
/// type of the exponential map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TPoly {
    ring: RingRef,
    coeffs: Vec<Poly>,
}

impl TPoly {
    pub fn new(ring: &RingRef, mut coeffs: Vec<Poly>) -> TPoly {
        for c in &coeffs {
            assert_same_ring(ring, c.ring());
        }
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        TPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `T^k` (zero when past the end).
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.ring))
    }

    /// Degree in `T`, or `None` for the zero element.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn add(&self, rhs: &TPoly) -> TPoly {
        assert_same_ring(&self.ring, &rhs.ring);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect();
        TPoly::new(&self.ring, coeffs)
    }

    pub fn mul(&self, rhs: &TPoly) -> TPoly {
        assert_same_ring(&self.ring, &rhs.ring);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return TPoly::new(&self.ring, vec![]);
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut coeffs = vec![Poly::zero(&self.ring); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TPoly::new(&self.ring, coeffs)
    }

    /// Substitute a rational constant for `T`.
    pub fn eval_at(&self, t: &Rat) -> Poly {
        let mut acc = Poly::zero(&self.ring);
        let mut power = Rat::one();
        for c in &self.coeffs {
            acc = &acc + &c.scale(&power);
            power *= t;
        }
        acc
    }

    /// Substitute a polynomial for `T`.
    pub fn eval_at_poly(&self, t: &Poly) -> Poly {
        assert_same_ring(&self.ring, t.ring());
        let mut acc = Poly::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*T")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_poly;

    fn df5_ring() -> RingRef {
        RingCtx::grevlex(&["x", "s", "t", "u", "v"])
    }

    #[test]
    fn addition_cancels() {
        let r = df5_ring();
        let a = parse_poly(&r, "x + s").unwrap();
        let b = parse_poly(&r, "x - s").unwrap();
        assert_eq!(&a + &b, parse_poly(&r, "2*x").unwrap());
    }

    #[test]
    fn footnote_relation_for_f3() {
        // f3 = -f1*f5 + f2*f4 in the five-variable ring
        let r = df5_ring();
        let f1 = parse_poly(&r, "x").unwrap();
        let f2 = parse_poly(&r, "2*x^3*t - s^2").unwrap();
        let f3 = parse_poly(&r, "3*x^6*u - 3*x^3*t*s + s^3").unwrap();
        let f4 = parse_poly(&r, "x*v - s").unwrap();
        let f5 = parse_poly(&r, "x^2*t*s - s^2*v + 2*x^3*t*v - 3*x^5*u").unwrap();
        let lhs = &(-&(&f1 * &f5)) + &(&f2 * &f4);
        assert_eq!(lhs, f3);
    }

    #[test]
    fn mul_by_zero_absorbs() {
        let r = df5_ring();
        let p = parse_poly(&r, "3*x^2*v - 7*s + 1/2").unwrap();
        assert!((&p * &Poly::zero(&r)).is_zero());
    }

    #[test]
    fn exact_div_monomial_factor() {
        let r = df5_ring();
        let p = parse_poly(&r, "x^2*s - x*s^2").unwrap();
        let x = parse_poly(&r, "x").unwrap();
        assert_eq!(p.exact_div(&x), Some(parse_poly(&r, "x*s - s^2").unwrap()));
    }

    #[test]
    fn exact_div_not_divisible() {
        let r = df5_ring();
        let f2 = parse_poly(&r, "2*x^3*t - s^2").unwrap();
        let x = parse_poly(&r, "x").unwrap();
        assert_eq!(f2.exact_div(&x), None);
    }

    #[test]
    fn exact_div_self() {
        let r = df5_ring();
        let p = parse_poly(&r, "2*x^3*t - s^2 + 5").unwrap();
        assert_eq!(p.exact_div(&p), Some(Poly::one(&r)));
    }

    #[test]
    fn max_power_examples() {
        let r = df5_ring();
        let p = parse_poly(&r, "x^3*s^2").unwrap();
        let x = parse_poly(&r, "x").unwrap();
        assert_eq!(p.max_power_dividing(&x), 3);
        let f2 = parse_poly(&r, "2*x^3*t - s^2").unwrap();
        assert_eq!(f2.max_power_dividing(&x), 0);
        let ys = parse_poly(&r, "x*s").unwrap(); // stand-in product of two variables
        assert_eq!(ys.pow(6).max_power_dividing(&ys), 6);
    }

    #[test]
    fn substitute_is_homomorphic_on_example() {
        // u^2 under u -> s*t/6 (all other variables fixed)
        let r = df5_ring();
        let u = parse_poly(&r, "u").unwrap();
        let images: Vec<Poly> = (0..r.arity())
            .map(|i| {
                if r.var_name(i) == "u" {
                    parse_poly(&r, "s*t/6").unwrap()
                } else {
                    Poly::var(&r, i)
                }
            })
            .collect();
        assert_eq!(
            u.pow(2).substitute(&images),
            parse_poly(&r, "s^2*t^2/36").unwrap()
        );
        // identity assignment keeps the polynomial
        let id: Vec<Poly> = (0..r.arity()).map(|i| Poly::var(&r, i)).collect();
        let p = parse_poly(&r, "x^2*t*s - s^2*v + 2*x^3*t*v - 3*x^5*u").unwrap();
        assert_eq!(p.substitute(&id), p);
    }

    #[test]
    fn evaluate_f4() {
        // f4 = x*v - s at (1,2,0,0,3) -> 1*3 - 2 = 1
        let r = df5_ring();
        let f4 = parse_poly(&r, "x*v - s").unwrap();
        let point: Vec<Rat> = [1, 2, 0, 0, 3].iter().map(|&n| rat_int(n)).collect();
        assert_eq!(f4.evaluate(&point), rat_int(1));
        // any p at the origin gives its constant term
        let p = parse_poly(&r, "x*v - s + 7/3").unwrap();
        let origin: Vec<Rat> = (0..5).map(|_| Rat::zero()).collect();
        assert_eq!(p.evaluate(&origin), rat(7, 3));
    }

    #[test]
    fn display_is_canonical() {
        let r = df5_ring();
        let p = parse_poly(&r, "- s^2 + 2*x^3*t").unwrap();
        assert_eq!(p.to_string(), "2*x^3*t - s^2");
        let q = parse_poly(&r, "x*v/2 - 1/3").unwrap();
        assert_eq!(q.to_string(), "1/2*x*v - 1/3");
        assert_eq!(Poly::zero(&r).to_string(), "0");
    }

    #[test]
    fn primitive_part_strips_content() {
        let r = df5_ring();
        let p = parse_poly(&r, "4/3*x^2 - 2/3*s").unwrap();
        assert_eq!(p.primitive_part(), parse_poly(&r, "2*x^2 - s").unwrap());
        let q = parse_poly(&r, "-4*x^2 + 2*s").unwrap();
        assert_eq!(q.primitive_part(), parse_poly(&r, "2*x^2 - s").unwrap());
    }

    #[test]
    fn tpoly_eval_and_mul() {
        let r = df5_ring();
        let s = parse_poly(&r, "s").unwrap();
        let x3 = parse_poly(&r, "x^3").unwrap();
        // s + x^3*T
        let t = TPoly::new(&r, vec![s.clone(), x3.clone()]);
        assert_eq!(t.eval_at(&Rat::zero()), s);
        let sq = t.mul(&t);
        assert_eq!(sq.coeff(0), &s * &s);
        assert_eq!(sq.coeff(1), (&s * &x3).scale(&rat_int(2)));
        assert_eq!(sq.coeff(2), &x3 * &x3);
    }
}
