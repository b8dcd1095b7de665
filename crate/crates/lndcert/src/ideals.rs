//! Gröbner bases (Buchberger with the product and chain criteria) and the
//! ideal predicates built on them: membership, radical membership via the
//! Rabinowitsch trick, saturation by elimination, height from the leading
//! term ideal, and constant-plus-ideal membership.
//!
//! Every computation runs under an explicit step ceiling. Exceeding it is an
//! [`EngineError::StepLimit`], which callers surface as an inconclusive
//! verdict, never as a mathematical answer.

use num_traits::Zero;
use serde::Serialize;

use crate::order::MonomialOrder;
use crate::ring::{same_ring, Monomial, Poly, Rat, RingRef};

/// Resource ceilings for the engine.
#[derive(Debug, Clone)]
pub struct GbConfig {
    /// Upper bound on single-term reduction steps across one basis computation.
    pub max_steps: u64,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            max_steps: 20_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EngineError {
    #[error("step ceiling exceeded after {steps} reduction steps in {context}")]
    StepLimit { steps: u64, context: String },
    #[error("operation requires a proper ideal, got the unit ideal")]
    UnitIdeal,
}

/// A finitely generated ideal, given by its generators.
#[derive(Debug, Clone)]
pub struct Ideal {
    gens: Vec<Poly>,
    ring: RingRef,
}

impl Ideal {
    /// Zero generators are dropped; the generator order is irrelevant.
    pub fn new(ring: &RingRef, gens: Vec<Poly>) -> Ideal {
        for g in &gens {
            assert!(same_ring(g.ring(), ring), "generator outside the ring");
        }
        Ideal {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            ring: ring.clone(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }
}

/// A reduced Gröbner basis: monic, no leading monomial divides another, and
/// every element is fully reduced against the rest. Unique for (ideal, order).
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    basis: Vec<Poly>,
    ring: RingRef,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn contains_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }
}

struct StepBudget {
    used: u64,
    max: u64,
    context: &'static str,
}

impl StepBudget {
    fn new(max: u64, context: &'static str) -> Self {
        StepBudget {
            used: 0,
            max,
            context,
        }
    }

    fn spend(&mut self, n: u64) -> Result<(), EngineError> {
        self.used += n;
        if self.used > self.max {
            Err(EngineError::StepLimit {
                steps: self.used,
                context: self.context.to_string(),
            })
        } else {
            Ok(())
        }
    }
}

/// Full reduction of `p` modulo `basis`: the remainder has no term divisible
/// by any leading monomial of the basis. Deterministic: the reducer is the
/// first basis element whose leading monomial divides the current lead.
fn reduce_full(p: &Poly, basis: &[Poly], budget: &mut StepBudget) -> Result<Poly, EngineError> {
    let ring = p.ring().clone();
    let mut work = p.clone();
    let mut rem: Vec<(Monomial, Rat)> = Vec::new();
    'outer: while let Some((lm, lc)) = work.leading_term() {
        for g in basis {
            let (gm, gc) = g.leading_term().expect("basis elements are nonzero");
            if let Some(q) = lm.try_div(gm) {
                let c = lc / gc;
                budget.spend(g.terms().len() as u64)?;
                work = &work - &g.mul_term(&q, &c);
                continue 'outer;
            }
        }
        rem.push((lm.clone(), lc.clone()));
        work = &work - &Poly::monomial(&ring, lm.clone(), lc.clone());
    }
    // rem was collected in decreasing order already
    Ok(Poly::from_terms(&ring, rem))
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.try_div(fm).unwrap(), &fc.recip());
    let b = g.mul_term(&l.try_div(gm).unwrap(), &gc.recip());
    (&a - &b).primitive_part()
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

fn make_pair(i: usize, j: usize, basis: &[Poly]) -> Pair {
    let lm_i = basis[i].leading_monomial().unwrap();
    let lm_j = basis[j].leading_monomial().unwrap();
    let lcm = lm_i.lcm(lm_j);
    Pair {
        i,
        j,
        degree: lcm.total_degree(),
        lcm,
    }
}

/// Gebauer–Möller installation of the pairs for a new basis element
/// `basis[t]`, pruning with the M, F, and B criteria plus the product
/// criterion.
fn update_pairs(pairs: &mut Vec<Pair>, basis: &[Poly], t: usize) {
    let lm_t = basis[t].leading_monomial().unwrap().clone();

    // B criterion: drop old pairs strictly refined by the newcomer.
    pairs.retain(|p| {
        let lm_i = basis[p.i].leading_monomial().unwrap();
        let lm_j = basis[p.j].leading_monomial().unwrap();
        !(lm_t.divides(&p.lcm) && lm_i.lcm(&lm_t) != p.lcm && lm_j.lcm(&lm_t) != p.lcm)
    });

    // Candidate pairs (i, t), pruned by the M criterion.
    let mut cands: Vec<Pair> = (0..t).map(|i| make_pair(i, t, basis)).collect();
    cands.sort_by(|a, b| {
        a.degree
            .cmp(&b.degree)
            .then_with(|| a.lcm.cmp(&b.lcm))
            .then_with(|| a.i.cmp(&b.i))
    });
    let mut kept: Vec<Pair> = Vec::new();
    'cand: for (k, c) in cands.iter().enumerate() {
        let coprime = basis[c.i].leading_monomial().unwrap().coprime(&lm_t);
        if !coprime {
            for other in cands[..k].iter().chain(&cands[k + 1..]) {
                if other.lcm != c.lcm && other.lcm.divides(&c.lcm) {
                    continue 'cand;
                }
            }
        }
        kept.push(c.clone());
    }

    // F criterion: one pair per lcm class; the whole class dies if any member
    // has coprime leading monomials (product criterion).
    let mut out: Vec<Pair> = Vec::new();
    let mut k = 0;
    while k < kept.len() {
        let mut end = k + 1;
        while end < kept.len() && kept[end].lcm == kept[k].lcm {
            end += 1;
        }
        let class = &kept[k..end];
        let any_coprime = class
            .iter()
            .any(|p| basis[p.i].leading_monomial().unwrap().coprime(&lm_t));
        if !any_coprime {
            out.push(class[0].clone());
        }
        k = end;
    }
    pairs.extend(out);
}

/// Reduced Gröbner basis of the ideal under the order carried by its ring.
///
/// Deterministic: normal selection strategy (minimal lcm degree, ties broken
/// lexicographically on the lcm, then by indices).
pub fn groebner(ideal: &Ideal, config: &GbConfig) -> Result<GroebnerBasis, EngineError> {
    let ring = ideal.ring().clone();
    let mut budget = StepBudget::new(config.max_steps, "groebner");

    let mut basis: Vec<Poly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut seed: Vec<Poly> = ideal.gens().iter().map(|g| g.primitive_part()).collect();
    seed.sort_by(|a, b| {
        ring.order()
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    seed.dedup();
    for g in seed {
        let r = reduce_full(&g, &basis, &mut budget)?;
        if !r.is_zero() {
            basis.push(r.primitive_part());
            update_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    while !pairs.is_empty() {
        // normal strategy: minimal lcm degree, ties by lex on the lcm
        let mut best = 0;
        for k in 1..pairs.len() {
            let a = &pairs[k];
            let b = &pairs[best];
            let key_a = (a.degree, &a.lcm, a.i, a.j);
            let key_b = (b.degree, &b.lcm, b.i, b.j);
            if key_a < key_b {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        let s = s_poly(&basis[pair.i], &basis[pair.j]);
        let r = reduce_full(&s, &basis, &mut budget)?;
        if !r.is_zero() {
            basis.push(r.primitive_part());
            update_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    // Minimalize: drop elements whose leading monomial another one divides.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && basis[j]
                    .leading_monomial()
                    .unwrap()
                    .divides(basis[i].leading_monomial().unwrap())
                && (basis[j].leading_monomial() != basis[i].leading_monomial() || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Poly> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();

    // Inter-reduce to the unique reduced basis.
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let rest: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let r = reduce_full(&minimal[i], &rest, &mut budget)?;
            if r != minimal[i] {
                changed = true;
                minimal[i] = r.primitive_part();
            }
        }
        if !changed {
            break;
        }
    }
    let mut reduced: Vec<Poly> = minimal.iter().map(|g| g.monic()).collect();
    reduced.sort_by(|a, b| {
        ring.order()
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    Ok(GroebnerBasis {
        basis: reduced,
        ring,
    })
}

/// Remainder of full reduction modulo the basis; zero iff `p` is a member.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    assert!(same_ring(p.ring(), &gb.ring), "ring mismatch");
    let mut budget = StepBudget::new(u64::MAX, "normal_form");
    reduce_full(p, &gb.basis, &mut budget).expect("unbounded budget")
}

pub fn ideal_member(p: &Poly, ideal: &Ideal, config: &GbConfig) -> Result<bool, EngineError> {
    let gb = groebner(ideal, config)?;
    Ok(normal_form(p, &gb).is_zero())
}

/// Radical membership via the Rabinowitsch trick: `p` vanishes on `V(I)` iff
/// `1 ∈ I + (1 - z·p)` with a fresh variable `z`.
pub fn radical_member(p: &Poly, ideal: &Ideal, config: &GbConfig) -> Result<bool, EngineError> {
    let ring = ideal.ring();
    let ext = ring.extend(&["@z"], MonomialOrder::GrevLex);
    let id_map: Vec<usize> = (0..ring.arity()).collect();
    let z = Poly::var(&ext, ring.arity());
    let mut gens: Vec<Poly> = ideal
        .gens()
        .iter()
        .map(|g| g.embed(&ext, &id_map))
        .collect();
    gens.push(&Poly::one(&ext) - &(&z * &p.embed(&ext, &id_map)));
    let gb = groebner(&Ideal::new(&ext, gens), config)?;
    Ok(gb.contains_unit())
}

/// Saturation `(I : f^∞)` by tag-variable elimination: compute
/// `I + (1 - z·f)` with `z` in the elimination block and keep the `z`-free
/// part of the reduced basis.
pub fn saturation(ideal: &Ideal, f: &Poly, config: &GbConfig) -> Result<Ideal, EngineError> {
    assert!(!f.is_zero(), "saturation by the zero polynomial");
    let ring = ideal.ring();
    let n = ring.arity();
    let ext = ring.prepend(&["@z"], MonomialOrder::Elim { block: 1 });
    let shift: Vec<usize> = (1..=n).collect();
    let z = Poly::var(&ext, 0);
    let mut gens: Vec<Poly> = ideal.gens().iter().map(|g| g.embed(&ext, &shift)).collect();
    gens.push(&Poly::one(&ext) - &(&z * &f.embed(&ext, &shift)));
    let gb = groebner(&Ideal::new(&ext, gens), config)?;
    let back: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    let kept: Vec<Poly> = gb
        .basis()
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| g.project(ring, &back))
        .collect();
    Ok(Ideal::new(ring, kept))
}

/// Krull dimension of `R/I`, computed combinatorially from the leading term
/// ideal: the largest set of variables meeting no leading-monomial support.
pub fn dimension(ideal: &Ideal, config: &GbConfig) -> Result<u32, EngineError> {
    let gb = groebner(ideal, config)?;
    if gb.contains_unit() {
        return Err(EngineError::UnitIdeal);
    }
    let n = ideal.ring().arity();
    if n > 24 {
        return Err(EngineError::StepLimit {
            steps: 1 << 24,
            context: "independent-set search over more than 24 variables".into(),
        });
    }
    let supports: Vec<u32> = gb
        .basis()
        .iter()
        .map(|g| {
            g.leading_monomial()
                .unwrap()
                .support()
                .iter()
                .fold(0u32, |acc, &i| acc | (1 << i))
        })
        .collect();
    let mut best = 0u32;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones();
        if size <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !mask != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Height (codimension) of a proper ideal: arity minus dim `R/I`.
pub fn height(ideal: &Ideal, config: &GbConfig) -> Result<u32, EngineError> {
    let dim = dimension(ideal, config)?;
    Ok(ideal.ring().arity() as u32 - dim)
}

/// True iff `√I = √J`: every generator of each ideal lies in the radical of
/// the other.
pub fn radical_equal(a: &Ideal, b: &Ideal, config: &GbConfig) -> Result<bool, EngineError> {
    for g in a.gens() {
        if !radical_member(g, b, config)? {
            return Ok(false);
        }
    }
    for g in b.gens() {
        if !radical_member(g, a, config)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of a constant-plus-ideal membership test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ConstPlusIdeal {
    /// `p - c ∈ I` for this constant.
    Constant(String),
    NotMember,
}

/// The constant `c` with `p - c ∈ I`, if one exists; decided by whether the
/// normal form of `p` is a constant.
pub fn const_plus_ideal_member(
    p: &Poly,
    ideal: &Ideal,
    config: &GbConfig,
) -> Result<Option<Rat>, EngineError> {
    let gb = groebner(ideal, config)?;
    if gb.contains_unit() {
        // everything is congruent to 0 modulo the unit ideal
        return Ok(Some(Rat::zero()));
    }
    Ok(normal_form(p, &gb).as_constant())
}

/// Convenience: the ideal generated by a set of variables.
pub fn variable_ideal(ring: &RingRef, vars: &[usize]) -> Ideal {
    Ideal::new(ring, vars.iter().map(|&i| Poly::var(ring, i)).collect())
}
