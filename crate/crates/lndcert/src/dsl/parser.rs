//! Recursive-descent parser for check files. Keywords are contextual, so
//! variable names like `order` or `check` inside expressions stay legal.
//! Every declaration and directive is resolved against its ring on the spot;
//! unknown directives and unknown names are hard errors with positions.

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::*;
use super::expr::{ExprParser, Resolver};
use super::lexer::{lex, DslError, Pos, SpannedTok, Tok};
use crate::derivation::Derivation;
use crate::order::MonomialOrder;
use crate::ring::{Poly, Rat, RingCtx, RingRef};
use crate::slices::local_slice_data;
use crate::subalgebra::SubalgebraPresentation;
use crate::symmetry::{PermAction, WeightSystem};

/// Canonical one-line rendering of a token slice.
pub fn render_tokens(toks: &[SpannedTok]) -> String {
    fn text(t: &Tok) -> String {
        match t {
            Tok::Ident(s) => s.clone(),
            Tok::Int(s) => s.clone(),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Arrow => "->".into(),
            Tok::EqEq => "==".into(),
            Tok::NotEq => "!=".into(),
            Tok::Ge => ">=".into(),
            Tok::Le => "<=".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::LBracket => "[".into(),
            Tok::RBracket => "]".into(),
            Tok::LBrace => "{".into(),
            Tok::RBrace => "}".into(),
            Tok::Comma => ",".into(),
            Tok::Eq => "=".into(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::Eof => String::new(),
        }
    }
    let mut out = String::new();
    let mut prev: Option<&Tok> = None;
    let mut prev_unary = false;
    for st in toks {
        let t = &st.tok;
        let unary_minus = matches!(t, Tok::Minus)
            && !matches!(
                prev,
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::RParen) | Some(Tok::RBracket)
            );
        if let Some(p) = prev {
            let no_space_after_prev = matches!(
                p,
                Tok::LParen | Tok::LBracket | Tok::Caret | Tok::Star | Tok::Slash
            ) || prev_unary;
            let no_space_before = matches!(
                t,
                Tok::Comma | Tok::RParen | Tok::RBracket | Tok::Caret | Tok::Star | Tok::Slash
            );
            if !no_space_after_prev && !no_space_before {
                out.push(' ');
            }
        }
        out.push_str(&text(t));
        prev_unary = unary_minus;
        prev = Some(t);
    }
    out
}

struct RingScope<'a> {
    ring: &'a RingRef,
    polys: &'a std::collections::BTreeMap<String, Poly>,
}

impl Resolver for RingScope<'_> {
    fn resolve(&self, name: &str) -> Option<Poly> {
        if let Some(i) = self.ring.var_index(name) {
            return Some(Poly::var(self.ring, i));
        }
        let p = self.polys.get(name)?;
        if p.ring() == self.ring {
            Some(p.clone())
        } else {
            None
        }
    }
    fn ring(&self) -> &RingRef {
        self.ring
    }
}

pub struct Parser {
    toks: Vec<SpannedTok>,
    pos: usize,
    file: CheckFile,
    current_ring: Option<String>,
}

/// Parse a complete check file.
pub fn parse(input: &str) -> Result<CheckFile, DslError> {
    let toks = lex(input)?;
    let mut p = Parser {
        toks,
        pos: 0,
        file: CheckFile::default(),
        current_ring: None,
    };
    p.run()?;
    Ok(p.file)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> Pos {
        self.toks[self.pos].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, DslError> {
        Err(DslError::new(self.here(), msg.into()))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), DslError> {
        if self.peek() == &tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {tok}, found {}", self.peek()))
        }
    }

    fn expect_ident(&mut self) -> Result<String, DslError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            other => self.err(format!("expected an identifier, found {other}")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), DslError> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            other => self.err(format!("expected `{kw}`, found {other}")),
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    /// Matches a possibly hyphenated keyword like `radical-equal`.
    fn eat_hyphen_keyword(&mut self, first: &str, second: &str) -> Result<(), DslError> {
        self.expect_keyword(first)?;
        self.expect(Tok::Minus)?;
        self.expect_keyword(second)
    }

    fn expect_u32(&mut self) -> Result<u32, DslError> {
        match self.peek().clone() {
            Tok::Int(digits) => {
                self.bump();
                digits
                    .parse()
                    .map_err(|_| DslError::new(self.here(), "integer out of range"))
            }
            other => self.err(format!("expected an integer, found {other}")),
        }
    }

    fn expect_i64(&mut self) -> Result<i64, DslError> {
        let neg = if matches!(self.peek(), Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let n = self.expect_u32()? as i64;
        Ok(if neg { -n } else { n })
    }

    fn expect_rat(&mut self) -> Result<Rat, DslError> {
        let neg = if matches!(self.peek(), Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let n = self.expect_u32()? as i64;
        let mut value = Rat::new(BigInt::from(n), BigInt::from(1));
        if matches!(self.peek(), Tok::Slash) {
            self.bump();
            let d = self.expect_u32()? as i64;
            if d == 0 {
                return self.err("zero denominator");
            }
            value = Rat::new(BigInt::from(n), BigInt::from(d));
        }
        Ok(if neg { -value } else { value })
    }

    fn ring_by_name(&self, name: &str, pos: Pos) -> Result<RingRef, DslError> {
        self.file
            .rings
            .get(name)
            .cloned()
            .ok_or_else(|| DslError::new(pos, format!("unknown ring `{name}`")))
    }

    fn current_ring(&self) -> Result<RingRef, DslError> {
        let name = self
            .current_ring
            .as_ref()
            .ok_or_else(|| DslError::new(self.here(), "no ring declared yet".to_string()))?;
        Ok(self.file.rings[name].clone())
    }

    fn derivation_ring(&self, name: &str, pos: Pos) -> Result<RingRef, DslError> {
        self.file
            .derivations
            .get(name)
            .map(|d| d.ring().clone())
            .ok_or_else(|| DslError::new(pos, format!("unknown derivation `{name}`")))
    }

    /// Parse one expression in the given ring, returning the resolved
    /// polynomial with its canonical source text.
    fn expr_in(&mut self, ring: &RingRef) -> Result<NamedPoly, DslError> {
        let scope = RingScope {
            ring,
            polys: &self.file.polys,
        };
        let start = self.pos;
        let mut ep = ExprParser::new(&self.toks, self.pos, &scope);
        let poly = ep.expr()?;
        let end = ep.pos;
        self.pos = end;
        Ok(NamedPoly {
            src: render_tokens(&self.toks[start..end]),
            poly,
        })
    }

    fn expr_list(&mut self, ring: &RingRef) -> Result<Vec<NamedPoly>, DslError> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if !matches!(self.peek(), Tok::RBracket) {
            loop {
                out.push(self.expr_in(ring)?);
                if matches!(self.peek(), Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn ident_list_bracketed(&mut self) -> Result<Vec<String>, DslError> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if !matches!(self.peek(), Tok::RBracket) {
            loop {
                out.push(self.expect_ident()?);
                if matches!(self.peek(), Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn point(&mut self) -> Result<Vec<Rat>, DslError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        if !matches!(self.peek(), Tok::RParen) {
            loop {
                out.push(self.expect_rat()?);
                if matches!(self.peek(), Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn int_vector(&mut self) -> Result<Vec<i64>, DslError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        if !matches!(self.peek(), Tok::RParen) {
            loop {
                out.push(self.expect_i64()?);
                if matches!(self.peek(), Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn run(&mut self) -> Result<(), DslError> {
        loop {
            match self.peek().clone() {
                Tok::Eof => return Ok(()),
                Tok::Ident(kw) => match kw.as_str() {
                    "ring" => self.ring_decl()?,
                    "derivation" => self.derivation_decl()?,
                    "poly" => self.poly_def()?,
                    "algebra" => self.algebra_decl()?,
                    "slice" => self.slice_decl()?,
                    "weights" => self.weights_decl()?,
                    "symmetry" => self.symmetry_decl()?,
                    "check" => self.check_directive()?,
                    other => {
                        return self.err(format!(
                            "expected a declaration or `check`, found `{other}`"
                        ))
                    }
                },
                other => {
                    return self.err(format!("expected a declaration or `check`, found {other}"))
                }
            }
        }
    }

    fn ring_decl(&mut self) -> Result<(), DslError> {
        let pos = self.here();
        self.expect_keyword("ring")?;
        let name = self.expect_ident()?;
        if self.file.rings.contains_key(&name) {
            return Err(DslError::new(pos, format!("duplicate ring `{name}`")));
        }
        self.expect_keyword("vars")?;
        let mut vars = vec![self.expect_ident()?];
        while matches!(self.peek(), Tok::Comma) {
            self.bump();
            vars.push(self.expect_ident()?);
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(DslError::new(pos, format!("duplicate variable `{v}`")));
            }
        }
        let (order, order_src) = if self.at_keyword("order") {
            self.bump();
            let kind = self.expect_ident()?;
            match kind.as_str() {
                "grevlex" => (MonomialOrder::GrevLex, " order grevlex".to_string()),
                "lex" => (MonomialOrder::Lex, " order lex".to_string()),
                "wgrevlex" => {
                    let ws = self.int_vector()?;
                    if ws.len() != vars.len() || ws.iter().any(|&w| w <= 0) {
                        return Err(DslError::new(
                            pos,
                            "wgrevlex needs one positive weight per variable",
                        ));
                    }
                    let w32: Vec<u32> = ws.iter().map(|&w| w as u32).collect();
                    let src = format!(
                        " order wgrevlex ({})",
                        ws.iter()
                            .map(|w| w.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    (MonomialOrder::WeightedGrevLex(w32), src)
                }
                other => return Err(DslError::new(pos, format!("unknown order `{other}`"))),
            }
        } else {
            (MonomialOrder::GrevLex, " order grevlex".to_string())
        };
        let ring = RingCtx::new(&vars, order);
        self.file
            .lines
            .push(format!("ring {name} vars {}{order_src}", vars.join(", ")));
        self.file.rings.insert(name.clone(), ring);
        self.current_ring = Some(name);
        Ok(())
    }

    fn derivation_decl(&mut self) -> Result<(), DslError> {
        let pos = self.here();
        self.expect_keyword("derivation")?;
        let name = self.expect_ident()?;
        if self.file.derivations.contains_key(&name) {
            return Err(DslError::new(pos, format!("duplicate derivation `{name}`")));
        }
        self.expect_keyword("on")?;
        let ring_name = self.expect_ident()?;
        let ring = self.ring_by_name(&ring_name, pos)?;
        self.expect(Tok::LBrace)?;
        let mut images: Vec<(usize, Poly)> = Vec::new();
        let mut image_srcs: Vec<String> = Vec::new();
        if !matches!(self.peek(), Tok::RBrace) {
            loop {
                let vpos = self.here();
                let var = self.expect_ident()?;
                let Some(vi) = ring.var_index(&var) else {
                    return Err(DslError::new(
                        vpos,
                        format!("`{var}` is not a variable of ring `{ring_name}`"),
                    ));
                };
                if images.iter().any(|(i, _)| *i == vi) {
                    return Err(DslError::new(vpos, format!("duplicate image for `{var}`")));
                }
                self.expect(Tok::Arrow)?;
                let image = self.expr_in(&ring)?;
                image_srcs.push(format!("{var} -> {}", image.src));
                images.push((vi, image.poly));
                if matches!(self.peek(), Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        let d = Derivation::new(&ring, images);
        self.file.lines.push(format!(
            "derivation {name} on {ring_name} {{ {} }}",
            image_srcs.join(", ")
        ));
        self.file.derivations.insert(name, d);
        Ok(())
    }

    fn poly_def(&mut self) -> Result<(), DslError> {
        let pos = self.here();
        self.expect_keyword("poly")?;
        let name = self.expect_ident()?;
        if self.file.polys.contains_key(&name) {
            return Err(DslError::new(pos, format!("duplicate polynomial `{name}`")));
        }
        let ring = self.current_ring()?;
        if ring.var_index(&name).is_some() {
            return Err(DslError::new(
                pos,
                format!("`{name}` shadows a ring variable"),
            ));
        }
        self.expect(Tok::Eq)?;
        let value = self.expr_in(&ring)?;
        self.file.lines.push(format!("poly {name} = {}", value.src));
        self.file.polys.insert(name, value.poly);
        Ok(())
    }

    fn algebra_decl(&mut self) -> Result<(), DslError> {
        let pos = self.here();
        self.expect_keyword("algebra")?;
        let name = self.expect_ident()?;
        if self.file.algebras.contains_key(&name) {
            return Err(DslError::new(pos, format!("duplicate algebra `{name}`")));
        }
        let ring = self.current_ring()?;
        self.expect(Tok::Eq)?;
        let gens = self.expr_list(&ring)?;
        let mut named: Vec<(String, Poly)> = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            let gen_name = if g.src.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                g.src.clone()
            } else {
                format!("g{}", k + 1)
            };
            if named.iter().any(|(n, _)| *n == gen_name) {
                return Err(DslError::new(
                    pos,
                    format!("duplicate generator name `{gen_name}` in algebra `{name}`"),
                ));
            }
            named.push((gen_name, g.poly.clone()));
        }
        let srcs: Vec<&str> = gens.iter().map(|g| g.src.as_str()).collect();
        self.file
            .lines
            .push(format!("algebra {name} = [{}]", srcs.join(", ")));
        self.file.algebras.insert(
            name.clone(),
            SubalgebraPresentation::new(name, &ring, named),
        );
        Ok(())
    }

    fn slice_decl(&mut self) -> Result<(), DslError> {
        let pos = self.here();
        self.expect_keyword("slice")?;
        let name = self.expect_ident()?;
        if self.file.slices.contains_key(&name) {
            return Err(DslError::new(pos, format!("duplicate slice `{name}`")));
        }
        self.expect_keyword("for")?;
        let dpos = self.here();
        let der = self.expect_ident()?;
        let ring = self.derivation_ring(&der, dpos)?;
        self.expect(Tok::Eq)?;
        let slice = self.expr_in(&ring)?;
        let sd = local_slice_data(&self.file.derivations[&der], &slice.poly);
        self.file
            .lines
            .push(format!("slice {name} for {der} = {}", slice.src));
        self.file.slices.insert(name, (der, sd));
        Ok(())
    }

    fn weights_decl(&mut self) -> Result<(), DslError> {
        let pos = self.here();
        self.expect_keyword("weights")?;
        let name = self.expect_ident()?;
        if self.file.weights.contains_key(&name) {
            return Err(DslError::new(pos, format!("duplicate weights `{name}`")));
        }
        self.expect_keyword("on")?;
        let ring_name = self.expect_ident()?;
        let ring = self.ring_by_name(&ring_name, pos)?;
        let mod_diagonal = if self.at_keyword("mod") {
            self.bump();
            self.expect_keyword("diagonal")?;
            true
        } else {
            false
        };
        self.expect(Tok::LBrace)?;
        let mut rows: Vec<Option<Vec<i64>>> = vec![None; ring.arity()];
        let mut row_srcs = Vec::new();
        if !matches!(self.peek(), Tok::RBrace) {
            loop {
                let vpos = self.here();
                let var = self.expect_ident()?;
                let Some(vi) = ring.var_index(&var) else {
                    return Err(DslError::new(
                        vpos,
                        format!("`{var}` is not a variable of ring `{ring_name}`"),
                    ));
                };
                if rows[vi].is_some() {
                    return Err(DslError::new(vpos, format!("duplicate weight for `{var}`")));
                }
                self.expect(Tok::Arrow)?;
                let v = self.int_vector()?;
                row_srcs.push(format!(
                    "{var} -> ({})",
                    v.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
                rows[vi] = Some(v);
                if matches!(self.peek(), Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        let dim = rows.iter().flatten().map(|v| v.len()).next().unwrap_or(1);
        if rows.iter().flatten().any(|v| v.len() != dim) {
            return Err(DslError::new(pos, "weight vectors differ in length"));
        }
        let full: Vec<Vec<i64>> = rows
            .into_iter()
            .map(|r| r.unwrap_or_else(|| vec![0; dim]))
            .collect();
        let marker = if mod_diagonal { " mod diagonal" } else { "" };
        self.file.lines.push(format!(
            "weights {name} on {ring_name}{marker} {{ {} }}",
            row_srcs.join(", ")
        ));
        self.file
            .weights
            .insert(name, WeightSystem::new(&ring, full, mod_diagonal));
        Ok(())
    }

    fn symmetry_decl(&mut self) -> Result<(), DslError> {
        let pos = self.here();
        self.expect_keyword("symmetry")?;
        let name = self.expect_ident()?;
        if self.file.symmetries.contains_key(&name) {
            return Err(DslError::new(pos, format!("duplicate symmetry `{name}`")));
        }
        self.expect_keyword("on")?;
        let ring_name = self.expect_ident()?;
        let ring = self.ring_by_name(&ring_name, pos)?;
        self.expect(Tok::LBrace)?;
        let mut orbits = Vec::new();
        let mut orbit_srcs = Vec::new();
        while self.at_keyword("orbit") {
            self.bump();
            self.expect(Tok::LParen)?;
            let mut orbit = Vec::new();
            let mut names = Vec::new();
            loop {
                let vpos = self.here();
                let var = self.expect_ident()?;
                let Some(vi) = ring.var_index(&var) else {
                    return Err(DslError::new(
                        vpos,
                        format!("`{var}` is not a variable of ring `{ring_name}`"),
                    ));
                };
                names.push(var);
                orbit.push(vi);
                if matches!(self.peek(), Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
            self.expect(Tok::RParen)?;
            orbit_srcs.push(format!("orbit ({})", names.join(", ")));
            orbits.push(orbit);
        }
        self.expect(Tok::RBrace)?;
        if orbits.is_empty() {
            return Err(DslError::new(pos, "symmetry needs at least one orbit"));
        }
        let degree = orbits[0].len();
        if orbits.iter().any(|o| o.len() != degree) {
            return Err(DslError::new(pos, "orbit tuples must share a length"));
        }
        let mut seen = Vec::new();
        for orbit in &orbits {
            for v in orbit {
                if seen.contains(v) {
                    return Err(DslError::new(pos, "variable occurs in two orbits"));
                }
                seen.push(*v);
            }
        }
        if degree > 8 {
            return Err(DslError::new(
                pos,
                "symmetric groups beyond degree 8 are not supported",
            ));
        }
        self.file.lines.push(format!(
            "symmetry {name} on {ring_name} {{ {} }}",
            orbit_srcs.join(" ")
        ));
        self.file
            .symmetries
            .insert(name, PermAction::new(&ring, orbits));
        Ok(())
    }

    fn check_directive(&mut self) -> Result<(), DslError> {
        self.expect_keyword("check")?;
        let pos = self.here();
        let kw = self.expect_ident()?;
        let (line, check) = match kw.as_str() {
            "kernel" => self.check_kernel()?,
            "derives" => self.check_derives()?,
            "identity" => self.check_identity()?,
            "height" => self.check_height()?,
            "radical" => {
                self.expect(Tok::Minus)?;
                self.expect_keyword("equal")?;
                self.check_radical_equal()?
            }
            "essen" => self.check_essen()?,
            "quasiaffine" => self.check_quasiaffine()?,
            "separating" => self.check_separating()?,
            "maubach" => self.check_maubach()?,
            "lemma51" => self.check_lemma51()?,
            "pullback" => self.check_pullback()?,
            "graded" => self.check_graded()?,
            "invariant" => self.check_invariant()?,
            "evaluate" => self.check_evaluate()?,
            "separates" => self.check_separates()?,
            "theta" => self.check_theta()?,
            "member" => self.check_member(true)?,
            "not" => {
                self.expect(Tok::Minus)?;
                self.expect_keyword("member")?;
                self.check_member(false)?
            }
            "localized" => {
                self.expect(Tok::Minus)?;
                self.expect_keyword("member")?;
                self.check_localized_member()?
            }
            other => return Err(DslError::new(pos, format!("unknown directive `{other}`"))),
        };
        self.file.lines.push(line.clone());
        self.file.checks.push((line, check));
        Ok(())
    }

    fn named_derivation(&mut self) -> Result<(String, RingRef), DslError> {
        let pos = self.here();
        let name = self.expect_ident()?;
        let ring = self.derivation_ring(&name, pos)?;
        Ok((name, ring))
    }

    fn named_algebra(&mut self) -> Result<(String, RingRef), DslError> {
        let pos = self.here();
        let name = self.expect_ident()?;
        let ring = self
            .file
            .algebras
            .get(&name)
            .map(|a| a.ring().clone())
            .ok_or_else(|| DslError::new(pos, format!("unknown algebra `{name}`")))?;
        Ok((name, ring))
    }

    fn check_kernel(&mut self) -> Result<(String, Check), DslError> {
        let (der, ring) = self.named_derivation()?;
        let elements = self.expr_list(&ring)?;
        let srcs: Vec<&str> = elements.iter().map(|e| e.src.as_str()).collect();
        Ok((
            format!("check kernel {der} [{}]", srcs.join(", ")),
            Check::Kernel {
                derivation: der,
                elements,
            },
        ))
    }

    fn check_derives(&mut self) -> Result<(String, Check), DslError> {
        let (der, ring) = self.named_derivation()?;
        let of = self.expr_in(&ring)?;
        self.expect(Tok::EqEq)?;
        let expected = self.expr_in(&ring)?;
        Ok((
            format!("check derives {der} {} == {}", of.src, expected.src),
            Check::Derives {
                derivation: der,
                of,
                expected,
            },
        ))
    }

    fn check_identity(&mut self) -> Result<(String, Check), DslError> {
        let ring = self.current_ring()?;
        let lhs = self.expr_in(&ring)?;
        self.expect(Tok::EqEq)?;
        let rhs = self.expr_in(&ring)?;
        Ok((
            format!("check identity {} == {}", lhs.src, rhs.src),
            Check::Identity { lhs, rhs },
        ))
    }

    fn check_height(&mut self) -> Result<(String, Check), DslError> {
        let ring = self.current_ring()?;
        let gens = self.expr_list(&ring)?;
        let op = match self.peek() {
            Tok::EqEq => {
                self.bump();
                CmpOp::Eq
            }
            Tok::Ge => {
                self.bump();
                CmpOp::Ge
            }
            other => return self.err(format!("expected `==` or `>=`, found {other}")),
        };
        let value = self.expect_u32()?;
        let srcs: Vec<&str> = gens.iter().map(|e| e.src.as_str()).collect();
        let op_src = match op {
            CmpOp::Eq => "==",
            CmpOp::Ge => ">=",
        };
        Ok((
            format!("check height [{}] {op_src} {value}", srcs.join(", ")),
            Check::Height {
                ring,
                gens,
                op,
                value,
            },
        ))
    }

    fn check_radical_equal(&mut self) -> Result<(String, Check), DslError> {
        let ring = self.current_ring()?;
        let lhs = self.expr_list(&ring)?;
        let rhs = self.expr_list(&ring)?;
        let ls: Vec<&str> = lhs.iter().map(|e| e.src.as_str()).collect();
        let rs: Vec<&str> = rhs.iter().map(|e| e.src.as_str()).collect();
        Ok((
            format!(
                "check radical-equal [{}] [{}]",
                ls.join(", "),
                rs.join(", ")
            ),
            Check::RadicalEqual { ring, lhs, rhs },
        ))
    }

    fn check_essen(&mut self) -> Result<(String, Check), DslError> {
        let (der, ring) = self.named_derivation()?;
        self.expect_keyword("slice")?;
        let spos = self.here();
        let slice = self.expect_ident()?;
        if !self.file.slices.contains_key(&slice) {
            return Err(DslError::new(spos, format!("unknown slice `{slice}`")));
        }
        let mut expect = Vec::new();
        let mut expect_src = String::new();
        if self.at_keyword("expect") {
            self.bump();
            self.expect(Tok::LBrace)?;
            let mut rows = Vec::new();
            loop {
                let vpos = self.here();
                let var = self.expect_ident()?;
                if ring.var_index(&var).is_none() {
                    return Err(DslError::new(
                        vpos,
                        format!("`{var}` is not a variable of the derivation's ring"),
                    ));
                }
                self.expect(Tok::Arrow)?;
                let numerator = self.expr_in(&ring)?;
                let denominator = if self.at_keyword("over") {
                    self.bump();
                    Some(self.expr_in(&ring)?)
                } else {
                    None
                };
                rows.push(match &denominator {
                    Some(d) => format!("{var} -> {} over {}", numerator.src, d.src),
                    None => format!("{var} -> {}", numerator.src),
                });
                expect.push(EssenExpect {
                    var,
                    numerator,
                    denominator,
                });
                if matches!(self.peek(), Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
            self.expect(Tok::RBrace)?;
            expect_src = format!(" expect {{ {} }}", rows.join(", "));
        }
        Ok((
            format!("check essen {der} slice {slice}{expect_src}"),
            Check::Essen {
                derivation: der,
                slice,
                expect,
            },
        ))
    }

    fn check_quasiaffine(&mut self) -> Result<(String, Check), DslError> {
        let (algebra, ring) = self.named_algebra()?;
        self.expect_keyword("derivation")?;
        let (der, dring) = self.named_derivation()?;
        if ring != dring {
            return self.err("algebra and derivation live in different rings");
        }
        self.expect_keyword("loci")?;
        let loci = self.expr_list(&ring)?;
        self.expect_keyword("slices")?;
        let slices = self.ident_list_bracketed()?;
        for s in &slices {
            if !self.file.slices.contains_key(s) {
                return self.err(format!("unknown slice `{s}`"));
            }
        }
        if loci.len() != slices.len() {
            return self.err("loci and slices must pair up");
        }
        let ls: Vec<&str> = loci.iter().map(|e| e.src.as_str()).collect();
        Ok((
            format!(
                "check quasiaffine {algebra} derivation {der} loci [{}] slices [{}]",
                ls.join(", "),
                slices.join(", ")
            ),
            Check::QuasiAffine {
                algebra,
                derivation: der,
                loci,
                slices,
            },
        ))
    }

    fn check_separating(&mut self) -> Result<(String, Check), DslError> {
        if self.at_keyword("corollary") {
            self.bump();
            let (algebra, ring) = self.named_algebra()?;
            self.expect_keyword("derivation")?;
            let (der, _) = self.named_derivation()?;
            self.expect_keyword("ideal")?;
            let ideal = self.expr_list(&ring)?;
            self.expect_keyword("testset")?;
            let testset = self.expr_list(&ring)?;
            let cite = if self.at_keyword("cite") {
                self.bump();
                match self.peek().clone() {
                    Tok::Str(s) => {
                        self.bump();
                        Some(s)
                    }
                    other => return self.err(format!("expected a string, found {other}")),
                }
            } else {
                None
            };
            let is_: Vec<&str> = ideal.iter().map(|e| e.src.as_str()).collect();
            let ts: Vec<&str> = testset.iter().map(|e| e.src.as_str()).collect();
            let cite_src = cite
                .as_ref()
                .map(|c| format!(" cite \"{c}\""))
                .unwrap_or_default();
            Ok((
                format!(
                    "check separating corollary {algebra} derivation {der} ideal [{}] testset [{}]{cite_src}",
                    is_.join(", "),
                    ts.join(", ")
                ),
                Check::SeparatingCorollary {
                    algebra,
                    derivation: der,
                    ideal,
                    testset,
                    cite,
                },
            ))
        } else {
            self.eat_hyphen_keyword("on", "variety")?;
            let (algebra, ring) = self.named_algebra()?;
            self.expect_keyword("derivation")?;
            let (der, _) = self.named_derivation()?;
            self.expect_keyword("loci")?;
            let loci = self.expr_list(&ring)?;
            self.expect_keyword("pieces")?;
            self.expect(Tok::LBracket)?;
            let mut pieces = Vec::new();
            let mut piece_srcs = Vec::new();
            loop {
                self.expect(Tok::LParen)?;
                let mut vars = Vec::new();
                loop {
                    let vpos = self.here();
                    let v = self.expect_ident()?;
                    if ring.var_index(&v).is_none() {
                        return Err(DslError::new(vpos, format!("unknown variable `{v}`")));
                    }
                    vars.push(v);
                    if matches!(self.peek(), Tok::Comma) {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::RParen)?;
                self.expect(Tok::Arrow)?;
                let subring = self.expr_list(&ring)?;
                let ss: Vec<&str> = subring.iter().map(|e| e.src.as_str()).collect();
                piece_srcs.push(format!("({}) -> [{}]", vars.join(", "), ss.join(", ")));
                pieces.push((vars, subring));
                if matches!(self.peek(), Tok::Comma) {
                    self.bump();
                } else {
                    break;
                }
            }
            self.expect(Tok::RBracket)?;
            self.expect_keyword("testset")?;
            let testset = self.expr_list(&ring)?;
            let ls: Vec<&str> = loci.iter().map(|e| e.src.as_str()).collect();
            let ts: Vec<&str> = testset.iter().map(|e| e.src.as_str()).collect();
            Ok((
                format!(
                    "check separating on-variety {algebra} derivation {der} loci [{}] pieces [{}] testset [{}]",
                    ls.join(", "),
                    piece_srcs.join(", "),
                    ts.join(", ")
                ),
                Check::SeparatingOnVariety {
                    algebra,
                    derivation: der,
                    loci,
                    pieces,
                    testset,
                },
            ))
        }
    }

    fn check_maubach(&mut self) -> Result<(String, Check), DslError> {
        self.expect_keyword("b")?;
        self.expect(Tok::Eq)?;
        let b = self.expect_u32()?;
        if !(1..=16).contains(&b) {
            return self.err("maubach needs 1 <= b <= 16");
        }
        Ok((format!("check maubach b = {b}"), Check::Maubach { b }))
    }

    fn check_lemma51(&mut self) -> Result<(String, Check), DslError> {
        self.expect_keyword("a")?;
        self.expect(Tok::Eq)?;
        let a = self.expect_u32()?;
        self.expect_keyword("b")?;
        self.expect(Tok::Eq)?;
        let b = self.expect_u32()?;
        if !(1..=16).contains(&a) || !(1..=16).contains(&b) {
            return self.err("lemma51 needs parameters between 1 and 16");
        }
        Ok((
            format!("check lemma51 a = {a} b = {b}"),
            Check::Lemma51 { a, b },
        ))
    }

    fn check_pullback(&mut self) -> Result<(String, Check), DslError> {
        let (big, big_ring) = self.named_derivation()?;
        self.expect_keyword("via")?;
        self.expect(Tok::LBrace)?;
        let mut entries: Vec<(String, NamedPoly)> = Vec::new();
        loop {
            let var = self.expect_ident()?;
            if entries.iter().any(|(v, _)| *v == var) {
                return self.err(format!("duplicate dictionary key `{var}`"));
            }
            self.expect(Tok::Arrow)?;
            let image = self.expr_in(&big_ring)?;
            entries.push((var, image));
            if matches!(self.peek(), Tok::Comma) {
                self.bump();
            } else {
                break;
            }
        }
        self.expect(Tok::RBrace)?;
        self.expect_keyword("matches")?;
        let (small, small_ring) = self.named_derivation()?;
        let mut dict: Vec<Option<NamedPoly>> = vec![None; small_ring.arity()];
        for (var, image) in &entries {
            let Some(vi) = small_ring.var_index(var) else {
                return self.err(format!(
                    "`{var}` is not a variable of the small derivation's ring"
                ));
            };
            dict[vi] = Some(image.clone());
        }
        let Some(dict): Option<Vec<NamedPoly>> = dict.into_iter().collect() else {
            return self.err("dictionary must cover every small-ring variable");
        };
        let rows: Vec<String> = entries
            .iter()
            .map(|(v, e)| format!("{v} -> {}", e.src))
            .collect();
        Ok((
            format!(
                "check pullback {big} via {{ {} }} matches {small}",
                rows.join(", ")
            ),
            Check::Pullback { big, dict, small },
        ))
    }

    fn check_graded(&mut self) -> Result<(String, Check), DslError> {
        let (der, _) = self.named_derivation()?;
        self.expect_keyword("weights")?;
        let wpos = self.here();
        let weights = self.expect_ident()?;
        if !self.file.weights.contains_key(&weights) {
            return Err(DslError::new(wpos, format!("unknown weights `{weights}`")));
        }
        self.expect(Tok::EqEq)?;
        let expected = self.int_vector()?;
        let vec_src = expected
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        Ok((
            format!("check graded {der} weights {weights} == ({vec_src})"),
            Check::Graded {
                derivation: der,
                weights,
                expected,
            },
        ))
    }

    fn check_invariant(&mut self) -> Result<(String, Check), DslError> {
        let pos = self.here();
        let name = self.expect_ident()?;
        let (action, ring) = if let Some(w) = self.file.weights.get(&name) {
            (ActionRef::Weights(name.clone()), w.ring().clone())
        } else if let Some(s) = self.file.symmetries.get(&name) {
            (ActionRef::Symmetry(name.clone()), s.ring().clone())
        } else {
            return Err(DslError::new(
                pos,
                format!("unknown weights or symmetry `{name}`"),
            ));
        };
        let elements = self.expr_list(&ring)?;
        let srcs: Vec<&str> = elements.iter().map(|e| e.src.as_str()).collect();
        Ok((
            format!("check invariant {name} [{}]", srcs.join(", ")),
            Check::Invariant { action, elements },
        ))
    }

    fn check_evaluate(&mut self) -> Result<(String, Check), DslError> {
        let ring = self.current_ring()?;
        let poly = self.expr_in(&ring)?;
        self.expect_keyword("at")?;
        let point = self.point()?;
        if point.len() != ring.arity() {
            return self.err("point arity does not match the ring");
        }
        let (expect, expect_src) = match self.peek() {
            Tok::EqEq => {
                self.bump();
                let v = self.expect_rat()?;
                let s = format!(" == {}", rat_src(&v));
                (EvalExpect::Equals(v), s)
            }
            Tok::NotEq => {
                self.bump();
                let zpos = self.here();
                let v = self.expect_rat()?;
                if !v.is_zero() {
                    return Err(DslError::new(zpos, "only `!= 0` is supported"));
                }
                (EvalExpect::NonZero, " != 0".to_string())
            }
            other => return self.err(format!("expected `==` or `!=`, found {other}")),
        };
        Ok((
            format!(
                "check evaluate {} at ({}){expect_src}",
                poly.src,
                point_src(&point)
            ),
            Check::Evaluate {
                poly,
                point,
                expect,
            },
        ))
    }

    fn check_separates(&mut self) -> Result<(String, Check), DslError> {
        let ring = self.current_ring()?;
        let gens = self.expr_list(&ring)?;
        self.expect_keyword("between")?;
        let u = self.point()?;
        self.expect_keyword("and")?;
        let v = self.point()?;
        if u.len() != ring.arity() || v.len() != ring.arity() {
            return self.err("point arity does not match the ring");
        }
        self.expect_keyword("expect")?;
        let expect_some = if self.at_keyword("some") {
            self.bump();
            true
        } else {
            self.expect_keyword("none")?;
            false
        };
        let srcs: Vec<&str> = gens.iter().map(|e| e.src.as_str()).collect();
        Ok((
            format!(
                "check separates [{}] between ({}) and ({}) expect {}",
                srcs.join(", "),
                point_src(&u),
                point_src(&v),
                if expect_some { "some" } else { "none" }
            ),
            Check::Separates {
                gens,
                u,
                v,
                expect_some,
            },
        ))
    }

    fn check_theta(&mut self) -> Result<(String, Check), DslError> {
        let (der, ring) = self.named_derivation()?;
        self.expect_keyword("of")?;
        let of = self.expr_in(&ring)?;
        self.expect(Tok::EqEq)?;
        let expected = self.expr_list(&ring)?;
        let srcs: Vec<&str> = expected.iter().map(|e| e.src.as_str()).collect();
        Ok((
            format!("check theta {der} of {} == [{}]", of.src, srcs.join(", ")),
            Check::Theta {
                derivation: der,
                of,
                expected,
            },
        ))
    }

    fn check_member(&mut self, expect: bool) -> Result<(String, Check), DslError> {
        let ring = self.current_ring()?;
        let poly = self.expr_in(&ring)?;
        self.expect_keyword("in")?;
        let (algebra, aring) = self.named_algebra()?;
        if aring != ring {
            return self.err("algebra lives in a different ring");
        }
        let kw = if expect { "member" } else { "not-member" };
        Ok((
            format!("check {kw} {} in {algebra}", poly.src),
            Check::Member {
                poly,
                algebra,
                expect,
            },
        ))
    }

    fn check_localized_member(&mut self) -> Result<(String, Check), DslError> {
        let ring = self.current_ring()?;
        let poly = self.expr_in(&ring)?;
        self.expect_keyword("in")?;
        let (algebra, aring) = self.named_algebra()?;
        if aring != ring {
            return self.err("algebra lives in a different ring");
        }
        self.expect_keyword("via")?;
        let locus = self.expr_in(&ring)?;
        self.expect_keyword("within")?;
        let n_max = self.expect_u32()?;
        Ok((
            format!(
                "check localized-member {} in {algebra} via {} within {n_max}",
                poly.src, locus.src
            ),
            Check::LocalizedMember {
                poly,
                algebra,
                locus,
                n_max,
            },
        ))
    }
}

fn rat_src(v: &Rat) -> String {
    if num_traits::One::is_one(v.denom()) {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn point_src(p: &[Rat]) -> String {
    p.iter().map(rat_src).collect::<Vec<_>>().join(", ")
}
