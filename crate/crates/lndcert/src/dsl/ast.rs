//! Resolved check-file representation. Parsing resolves every expression
//! against its ring immediately, so a `CheckFile` carries semantic values;
//! each item also keeps its canonical one-line rendering, which makes
//! printing trivial and the print/parse round trip exact.

use std::collections::BTreeMap;

use crate::derivation::Derivation;
use crate::ring::{Poly, Rat, RingRef};
use crate::slices::LocalSliceData;
use crate::subalgebra::SubalgebraPresentation;
use crate::symmetry::{PermAction, WeightSystem};

/// A polynomial with the source text it was written as (a name, or an
/// expression); the text is display metadata only.
#[derive(Debug, Clone)]
pub struct NamedPoly {
    pub src: String,
    pub poly: Poly,
}

impl PartialEq for NamedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.src == other.src && self.poly == other.poly
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalExpect {
    Equals(Rat),
    NonZero,
}

/// Expected essen-table row: variable, numerator, optional denominator
/// (matched against `base^exponent` as polynomials).
#[derive(Debug, Clone, PartialEq)]
pub struct EssenExpect {
    pub var: String,
    pub numerator: NamedPoly,
    pub denominator: Option<NamedPoly>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ActionRef {
    Weights(String),
    Symmetry(String),
}

/// One executable directive, fully resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    Kernel {
        derivation: String,
        elements: Vec<NamedPoly>,
    },
    /// `D(of) == expected`.
    Derives {
        derivation: String,
        of: NamedPoly,
        expected: NamedPoly,
    },
    Identity {
        lhs: NamedPoly,
        rhs: NamedPoly,
    },
    Height {
        ring: RingRef,
        gens: Vec<NamedPoly>,
        op: CmpOp,
        value: u32,
    },
    RadicalEqual {
        ring: RingRef,
        lhs: Vec<NamedPoly>,
        rhs: Vec<NamedPoly>,
    },
    Essen {
        derivation: String,
        slice: String,
        expect: Vec<EssenExpect>,
    },
    QuasiAffine {
        algebra: String,
        derivation: String,
        loci: Vec<NamedPoly>,
        slices: Vec<String>,
    },
    SeparatingCorollary {
        algebra: String,
        derivation: String,
        ideal: Vec<NamedPoly>,
        testset: Vec<NamedPoly>,
        cite: Option<String>,
    },
    SeparatingOnVariety {
        algebra: String,
        derivation: String,
        loci: Vec<NamedPoly>,
        pieces: Vec<(Vec<String>, Vec<NamedPoly>)>,
        testset: Vec<NamedPoly>,
    },
    Maubach {
        b: u32,
    },
    Lemma51 {
        a: u32,
        b: u32,
    },
    Pullback {
        big: String,
        /// Images of the small-ring variables, in variable order.
        dict: Vec<NamedPoly>,
        small: String,
    },
    Graded {
        derivation: String,
        weights: String,
        expected: Vec<i64>,
    },
    Invariant {
        action: ActionRef,
        elements: Vec<NamedPoly>,
    },
    Evaluate {
        poly: NamedPoly,
        point: Vec<Rat>,
        expect: EvalExpect,
    },
    Separates {
        gens: Vec<NamedPoly>,
        u: Vec<Rat>,
        v: Vec<Rat>,
        expect_some: bool,
    },
    Theta {
        derivation: String,
        of: NamedPoly,
        expected: Vec<NamedPoly>,
    },
    Member {
        poly: NamedPoly,
        algebra: String,
        expect: bool,
    },
    LocalizedMember {
        poly: NamedPoly,
        algebra: String,
        locus: NamedPoly,
        n_max: u32,
    },
}

/// Parsed and resolved check file.
#[derive(Debug, Clone, Default)]
pub struct CheckFile {
    /// Canonical one-line rendering of each item, in file order.
    pub lines: Vec<String>,
    pub rings: BTreeMap<String, RingRef>,
    pub polys: BTreeMap<String, Poly>,
    pub derivations: BTreeMap<String, Derivation>,
    pub algebras: BTreeMap<String, SubalgebraPresentation>,
    /// Slice name -> (derivation name, slice data).
    pub slices: BTreeMap<String, (String, LocalSliceData)>,
    pub weights: BTreeMap<String, WeightSystem>,
    pub symmetries: BTreeMap<String, PermAction>,
    /// Directives in file order, with their canonical renderings.
    pub checks: Vec<(String, Check)>,
}

impl PartialEq for CheckFile {
    fn eq(&self, other: &Self) -> bool {
        fn algebras_eq(
            a: &BTreeMap<String, SubalgebraPresentation>,
            b: &BTreeMap<String, SubalgebraPresentation>,
        ) -> bool {
            a.len() == b.len()
                && a.iter().zip(b).all(|((an, av), (bn, bv))| {
                    an == bn
                        && av.gen_names() == bv.gen_names()
                        && av.gens() == bv.gens()
                        && av.ring() == bv.ring()
                })
        }
        self.lines == other.lines
            && self.rings == other.rings
            && self.polys == other.polys
            && self.derivations == other.derivations
            && algebras_eq(&self.algebras, &other.algebras)
            && self.slices == other.slices
            && self.weights == other.weights
            && self.symmetries == other.symmetries
            && self.checks == other.checks
    }
}

impl CheckFile {
    /// Canonical text: one line per item. Parsing the output reproduces the
    /// file (comments and whitespace are not retained).
    pub fn print(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}
