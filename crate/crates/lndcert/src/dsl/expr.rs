//! Polynomial expression parsing shared by the DSL and the CLI.
//!
//! Grammar (explicit `*`, `^` for powers, `/` only by a nonzero integer):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' unary) | ('/' int))*
//! unary := '-' unary | power
//! power := atom ('^' int)?
//! atom  := ident | int | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::lexer::{DslError, Pos, SpannedTok, Tok};
use crate::ring::{Poly, Rat, RingRef};

/// Resolves a bare identifier to a polynomial (ring variable or named value).
pub trait Resolver {
    fn resolve(&self, name: &str) -> Option<Poly>;
    fn ring(&self) -> &RingRef;
}

/// Resolver over the ring variables only.
pub struct VarResolver<'a>(pub &'a RingRef);

impl Resolver for VarResolver<'_> {
    fn resolve(&self, name: &str) -> Option<Poly> {
        self.0.var_index(name).map(|i| Poly::var(self.0, i))
    }
    fn ring(&self) -> &RingRef {
        self.0
    }
}

// Size guards: expressions from untrusted input must not be able to build
// polynomials whose exponents overflow, whose term counts explode, or whose
// coefficients blow up to arbitrary bignum sizes (e.g. `9^999999999`).
// Multi-term powers pay quadratically in rational arithmetic, so they get a
// much lower degree ceiling than monomial powers.
const MAX_DEGREE: u64 = 10_000;
const MAX_SUM_POW_DEGREE: u64 = 256;
const MAX_TERM_PRODUCT: u64 = 4_000_000;
const MAX_COEFF_BITS: u64 = 100_000;

// Largest coefficient size in bits across the terms of a polynomial.
fn coeff_bits(p: &Poly) -> u64 {
    p.terms()
        .iter()
        .map(|(_, c)| c.numer().bits().max(c.denom().bits()))
        .max()
        .unwrap_or(1)
        .max(1)
}

// Upper bound C(e + k - 1, k - 1) on the term count of a k-term polynomial
// raised to the e-th power, saturating.
fn pow_term_bound(k: u64, e: u64) -> u64 {
    if k <= 1 {
        return 1;
    }
    let mut acc: u64 = 1;
    for i in 0..(k - 1) {
        acc = acc.saturating_mul(e + i + 1) / (i + 1);
        if acc > MAX_TERM_PRODUCT {
            return u64::MAX;
        }
    }
    acc
}

pub struct ExprParser<'a, R: Resolver> {
    toks: &'a [SpannedTok],
    pub pos: usize,
    resolver: &'a R,
}

impl<'a, R: Resolver> ExprParser<'a, R> {
    pub fn new(toks: &'a [SpannedTok], pos: usize, resolver: &'a R) -> Self {
        ExprParser {
            toks,
            pos,
            resolver,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> Pos {
        self.toks[self.pos].pos
    }

    fn bump(&mut self) -> &SpannedTok {
        let t = &self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn expr(&mut self) -> Result<Poly, DslError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, DslError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let pos = self.here();
                    let rhs = self.unary()?;
                    let deg = acc.total_degree() as u64 + rhs.total_degree() as u64;
                    let terms = acc.terms().len() as u64 * rhs.terms().len().max(1) as u64;
                    if deg > MAX_DEGREE || terms > MAX_TERM_PRODUCT {
                        return Err(DslError::new(pos, "expression too large"));
                    }
                    acc = &acc * &rhs;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.here();
                    let n = self.int()?;
                    if n.is_zero() {
                        return Err(DslError::new(pos, "division by zero"));
                    }
                    acc = acc.scale(&Rat::new(BigInt::from(1), n));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, DslError> {
        if matches!(self.peek(), Tok::Minus) {
            self.bump();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, DslError> {
        let base = self.atom()?;
        if matches!(self.peek(), Tok::Caret) {
            self.bump();
            let pos = self.here();
            let e = self.int()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| DslError::new(pos, "exponent out of range"))?;
            let deg = base.total_degree() as u64 * e as u64;
            if deg > MAX_DEGREE
                || pow_term_bound(base.terms().len() as u64, e as u64) > MAX_TERM_PRODUCT
                || coeff_bits(&base).saturating_mul(e as u64) > MAX_COEFF_BITS
            {
                return Err(DslError::new(pos, "expression too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, DslError> {
        let pos = self.here();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                self.resolver.resolve(&name).ok_or_else(|| {
                    DslError::new(pos, format!("unknown variable or polynomial `{name}`"))
                })
            }
            Tok::Int(_) => {
                let n = self.int()?;
                Ok(Poly::constant(self.resolver.ring(), Rat::from_integer(n)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if !matches!(self.peek(), Tok::RParen) {
                    return Err(DslError::new(self.here(), "expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(DslError::new(
                pos,
                format!("expected a polynomial expression, found {other}"),
            )),
        }
    }

    fn int(&mut self) -> Result<BigInt, DslError> {
        let pos = self.here();
        match self.peek().clone() {
            Tok::Int(digits) => {
                self.bump();
                Ok(digits.parse().expect("lexer produced valid digits"))
            }
            other => Err(DslError::new(
                pos,
                format!("expected an integer, found {other}"),
            )),
        }
    }
}

/// Parse a complete expression over the ring variables.
pub fn parse_poly(ring: &RingRef, text: &str) -> Result<Poly, DslError> {
    let toks = super::lexer::lex(text)?;
    let resolver = VarResolver(ring);
    let mut p = ExprParser::new(&toks, 0, &resolver);
    let poly = p.expr()?;
    if !matches!(p.peek(), Tok::Eof) {
        return Err(DslError::new(
            p.here(),
            format!("unexpected {} after expression", p.peek()),
        ));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, RingCtx};

    #[test]
    fn parses_signs_and_rationals() {
        let r = RingCtx::grevlex(&["x", "s"]);
        let p = parse_poly(&r, "-3/2*x^2*s + s - 1/3").unwrap();
        let q = parse_poly(&r, "s - 3*x^2*s/2 - 1/3").unwrap();
        assert_eq!(p, q);
        assert_eq!(
            parse_poly(&r, "(x + s)^2").unwrap(),
            parse_poly(&r, "x^2 + 2*x*s + s^2").unwrap()
        );
        assert_eq!(
            parse_poly(&r, "7/2").unwrap().as_constant(),
            Some(rat(7, 2))
        );
    }

    #[test]
    fn rejects_unknown_variable() {
        let r = RingCtx::grevlex(&["x", "s"]);
        let err = parse_poly(&r, "x + q").unwrap_err();
        assert!(err.message.contains("unknown variable"));
        assert_eq!(err.pos.col, 5);
    }

    #[test]
    fn rejects_trailing_garbage() {
        let r = RingCtx::grevlex(&["x", "s"]);
        assert!(parse_poly(&r, "x + s )").is_err());
        assert!(parse_poly(&r, "x / 0").is_err());
    }
}
