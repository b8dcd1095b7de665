//! Directive execution. Mathematical failures become `fail` results with
//! witnesses and resource exhaustion becomes `inconclusive`; the runner
//! itself never panics on a well-formed check file.

use std::time::Instant;

use serde_json::{json, Value};

use crate::dsl::ast::{ActionRef, Check, CheckFile, CmpOp, EssenExpect, EvalExpect};
use crate::ideals::{height, radical_equal, EngineError, GbConfig, Ideal};
use crate::maubach::{verify_lemma51, verify_lemma52};
use crate::report::{CheckResult, CheckStatus, Report};
use crate::ring::Poly;
use crate::slices::{essen_step1, EssenSource};
use crate::subalgebra::{localized_member, LocalizedError, LocalizedMembership};
use crate::theorem::{
    separate_points, verify_quasi_affine, verify_separating_corollary,
    verify_separating_on_variety, DecompositionPiece, SeparatingStatus, VerdictStatus,
};

/// Tunable resource ceilings, exposed on the command line.
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Bound for the minimal-power search in localized membership.
    pub n_max: u32,
    pub gb: GbConfig,
    /// Per-variable iteration bound for nilpotency certification.
    pub nilpotency_bound: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            n_max: 8,
            gb: GbConfig::default(),
            nilpotency_bound: 16,
        }
    }
}

/// Execute every directive in file order and assemble the report.
pub fn run(cf: &CheckFile, input_text: &str, opts: &RunOptions) -> Report {
    let mut results = Vec::new();
    for (src, check) in &cf.checks {
        let started = Instant::now();
        let (status, witnesses) = run_check(cf, check, opts);
        results.push(CheckResult {
            directive: src.clone(),
            status,
            witnesses,
            elapsed_ms: started.elapsed().as_millis() as u64,
        });
    }
    Report::new(input_text, results)
}

fn engine_status(err: &EngineError) -> (CheckStatus, Value) {
    match err {
        EngineError::StepLimit { .. } => (
            CheckStatus::Inconclusive,
            json!({ "reason": err.to_string() }),
        ),
        EngineError::UnitIdeal => (CheckStatus::Fail, json!({ "reason": err.to_string() })),
    }
}

fn from_bool(ok: bool, witnesses: Value) -> (CheckStatus, Value) {
    (
        if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witnesses,
    )
}

fn run_check(cf: &CheckFile, check: &Check, opts: &RunOptions) -> (CheckStatus, Value) {
    match check {
        Check::Kernel {
            derivation,
            elements,
        } => {
            let d = &cf.derivations[derivation];
            let mut rows = Vec::new();
            let mut ok = true;
            for e in elements {
                let image = d.apply(&e.poly);
                if !image.is_zero() {
                    ok = false;
                    rows.push(json!({ "element": e.src, "image": image.to_string() }));
                } else {
                    rows.push(json!({ "element": e.src, "image": "0" }));
                }
            }
            from_bool(ok, json!({ "images": rows }))
        }
        Check::Derives {
            derivation,
            of,
            expected,
        } => {
            let d = &cf.derivations[derivation];
            let got = d.apply(&of.poly);
            from_bool(
                got == expected.poly,
                json!({ "computed": got.to_string(), "expected": expected.src }),
            )
        }
        Check::Identity { lhs, rhs } => from_bool(
            lhs.poly == rhs.poly,
            json!({ "lhs": lhs.poly.to_string(), "rhs": rhs.poly.to_string() }),
        ),
        Check::Height {
            ring,
            gens,
            op,
            value,
        } => {
            let ideal = Ideal::new(ring, gens.iter().map(|g| g.poly.clone()).collect());
            match height(&ideal, &opts.gb) {
                Ok(h) => {
                    let ok = match op {
                        CmpOp::Eq => h == *value,
                        CmpOp::Ge => h >= *value,
                    };
                    from_bool(ok, json!({ "height": h }))
                }
                Err(e) => engine_status(&e),
            }
        }
        Check::RadicalEqual { ring, lhs, rhs } => {
            let a = Ideal::new(ring, lhs.iter().map(|g| g.poly.clone()).collect());
            let b = Ideal::new(ring, rhs.iter().map(|g| g.poly.clone()).collect());
            match radical_equal(&a, &b, &opts.gb) {
                Ok(eq) => from_bool(eq, json!({ "radical_equal": eq })),
                Err(e) => engine_status(&e),
            }
        }
        Check::Essen {
            derivation,
            slice,
            expect,
        } => run_essen(cf, derivation, slice, expect),
        Check::QuasiAffine {
            algebra,
            derivation,
            loci,
            slices,
        } => {
            let a = &cf.algebras[algebra];
            let d = &cf.derivations[derivation];
            let pairs: Vec<(Poly, crate::slices::LocalSliceData)> = loci
                .iter()
                .zip(slices)
                .map(|(l, s)| (l.poly.clone(), cf.slices[s].1.clone()))
                .collect();
            let verdict = verify_quasi_affine(a, d, &pairs, opts.n_max, &opts.gb);
            let status = match verdict.status {
                VerdictStatus::Proven => CheckStatus::Pass,
                VerdictStatus::Failed => CheckStatus::Fail,
                VerdictStatus::Inconclusive => CheckStatus::Inconclusive,
            };
            (
                status,
                serde_json::to_value(&verdict).unwrap_or(Value::Null),
            )
        }
        Check::SeparatingCorollary {
            algebra,
            derivation,
            ideal,
            testset,
            cite,
        } => {
            let a = &cf.algebras[algebra];
            let d = &cf.derivations[derivation];
            let gens: Vec<Poly> = ideal.iter().map(|g| g.poly.clone()).collect();
            let named: Vec<(String, Poly)> = testset
                .iter()
                .map(|t| (t.src.clone(), t.poly.clone()))
                .collect();
            match verify_separating_corollary(a, d, &gens, &named, cite.clone(), &opts.gb) {
                Ok(verdict) => {
                    let status = match verdict.status {
                        SeparatingStatus::ProvenForTestset => CheckStatus::Pass,
                        SeparatingStatus::Failed => CheckStatus::Fail,
                        SeparatingStatus::Inconclusive => CheckStatus::Inconclusive,
                    };
                    (
                        status,
                        serde_json::to_value(&verdict).unwrap_or(Value::Null),
                    )
                }
                Err(e) => (CheckStatus::Fail, json!({ "error": e.to_string() })),
            }
        }
        Check::SeparatingOnVariety {
            algebra,
            derivation,
            loci,
            pieces,
            testset,
        } => {
            let a = &cf.algebras[algebra];
            let d = &cf.derivations[derivation];
            let ring = a.ring().clone();
            let loci_polys: Vec<Poly> = loci.iter().map(|g| g.poly.clone()).collect();
            let built: Vec<DecompositionPiece> = pieces
                .iter()
                .map(|(vars, subring)| DecompositionPiece {
                    vars: vars
                        .iter()
                        .map(|v| ring.var_index(v).expect("validated at parse"))
                        .collect(),
                    subring: crate::subalgebra::SubalgebraPresentation::new(
                        format!("subring on ({})", vars.join(", ")),
                        &ring,
                        subring
                            .iter()
                            .map(|g| (g.src.clone(), g.poly.clone()))
                            .collect(),
                    ),
                })
                .collect();
            let named: Vec<(String, Poly)> = testset
                .iter()
                .map(|t| (t.src.clone(), t.poly.clone()))
                .collect();
            match verify_separating_on_variety(a, d, &loci_polys, &built, &named, &opts.gb) {
                Ok(verdict) => {
                    let status = match verdict.status {
                        SeparatingStatus::ProvenForTestset => CheckStatus::Pass,
                        SeparatingStatus::Failed => CheckStatus::Fail,
                        SeparatingStatus::Inconclusive => CheckStatus::Inconclusive,
                    };
                    (
                        status,
                        serde_json::to_value(&verdict).unwrap_or(Value::Null),
                    )
                }
                Err(e) => (CheckStatus::Fail, json!({ "error": e.to_string() })),
            }
        }
        Check::Maubach { b } => match verify_lemma52(*b, &opts.gb) {
            Ok(report) => {
                let status = if report.pass {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                };
                (status, serde_json::to_value(&report).unwrap_or(Value::Null))
            }
            Err(e) => (CheckStatus::Fail, json!({ "error": e.to_string() })),
        },
        Check::Lemma51 { a, b } => {
            let report = verify_lemma51(*a, *b, &opts.gb);
            let status = if report.pass {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            (status, serde_json::to_value(&report).unwrap_or(Value::Null))
        }
        Check::Pullback { big, dict, small } => {
            let big_d = &cf.derivations[big];
            let small_d = &cf.derivations[small];
            let images: Vec<Poly> = dict.iter().map(|e| e.poly.clone()).collect();
            let ok = crate::symmetry::pullback_check(big_d, &images, small_d);
            from_bool(ok, json!({ "matches": ok }))
        }
        Check::Graded {
            derivation,
            weights,
            expected,
        } => {
            let d = &cf.derivations[derivation];
            let w = &cf.weights[weights];
            let got = d.graded_degree(w);
            from_bool(
                got.as_deref() == Some(expected.as_slice()),
                json!({ "degree": got }),
            )
        }
        Check::Invariant { action, elements } => {
            let mut rows = Vec::new();
            let mut ok = true;
            for e in elements {
                let inv = match action {
                    ActionRef::Weights(w) => cf.weights[w].is_invariant(&e.poly),
                    ActionRef::Symmetry(s) => cf.symmetries[s].is_invariant(&e.poly),
                };
                ok &= inv;
                rows.push(json!({ "element": e.src, "invariant": inv }));
            }
            from_bool(ok, json!({ "elements": rows }))
        }
        Check::Evaluate {
            poly,
            point,
            expect,
        } => {
            let value = poly.poly.evaluate(point);
            let text = rat_text(&value);
            let ok = match expect {
                EvalExpect::Equals(v) => &value == v,
                EvalExpect::NonZero => !num_traits::Zero::is_zero(&value),
            };
            from_bool(ok, json!({ "value": text }))
        }
        Check::Separates {
            gens,
            u,
            v,
            expect_some,
        } => {
            let named: Vec<(String, Poly)> = gens
                .iter()
                .map(|g| (g.src.clone(), g.poly.clone()))
                .collect();
            let sep = separate_points(&named, u, v);
            let ok = sep.is_some() == *expect_some;
            let witness = match sep {
                Some((name, _)) => json!({ "separator": name }),
                None => json!({ "separator": Value::Null }),
            };
            from_bool(ok, witness)
        }
        Check::Theta {
            derivation,
            of,
            expected,
        } => {
            let d = &cf.derivations[derivation];
            match d.theta(&of.poly) {
                Ok(th) => {
                    let got: Vec<String> = th.coeffs().iter().map(|c| c.to_string()).collect();
                    let ok = th.coeffs().len() == expected.len()
                        && th.coeffs().iter().zip(expected).all(|(c, e)| c == &e.poly);
                    from_bool(ok, json!({ "coefficients": got }))
                }
                Err(e) => (CheckStatus::Fail, json!({ "error": e.to_string() })),
            }
        }
        Check::Member {
            poly,
            algebra,
            expect,
        } => {
            let tester = cf.algebras[algebra].tester();
            match tester.member(&poly.poly, &opts.gb) {
                Ok(got) => from_bool(got == *expect, json!({ "member": got })),
                Err(e) => engine_status(&e),
            }
        }
        Check::LocalizedMember {
            poly,
            algebra,
            locus,
            n_max,
        } => {
            let tester = cf.algebras[algebra].tester();
            match localized_member(&tester, &poly.poly, &locus.poly, *n_max, &opts.gb) {
                Ok(LocalizedMembership::Found { n }) => (CheckStatus::Pass, json!({ "n": n })),
                Ok(LocalizedMembership::NotFound { n_max }) => (
                    CheckStatus::Inconclusive,
                    json!({ "reason": format!("no power up to {n_max} works") }),
                ),
                Err(LocalizedError::LocusOutsideAlgebra) => (
                    CheckStatus::Fail,
                    json!({ "reason": "locus is not in the algebra" }),
                ),
                Err(LocalizedError::Engine(e)) => engine_status(&e),
            }
        }
    }
}

fn run_essen(
    cf: &CheckFile,
    derivation: &str,
    slice: &str,
    expect: &[EssenExpect],
) -> (CheckStatus, Value) {
    let d = &cf.derivations[derivation];
    let (_, sd) = &cf.slices[slice];
    let entries = match essen_step1(d, sd) {
        Ok(entries) => entries,
        Err(e) => return (CheckStatus::Fail, json!({ "error": e.to_string() })),
    };
    let mut rows = Vec::new();
    let mut ok = true;
    for entry in &entries {
        let source = match entry.source {
            EssenSource::Plinth => "plinth".to_string(),
            EssenSource::Var(v) => d.ring().var_name(v).to_string(),
        };
        // every numerator must be an invariant, and minimal
        let invariant = d.in_kernel(&entry.elem.numerator);
        let minimal =
            entry.elem.exponent == 0 || entry.elem.numerator.exact_div(&entry.elem.base).is_none();
        ok &= invariant && minimal;
        rows.push(json!({
            "source": source,
            "numerator": entry.elem.numerator.to_string(),
            "denominator": entry.elem.denominator().to_string(),
            "degenerate": entry.degenerate,
            "invariant": invariant,
        }));
    }
    let mut mismatches = Vec::new();
    for exp in expect {
        let vi = d.ring().var_index(&exp.var).expect("validated at parse");
        let Some(entry) = entries.iter().find(|e| e.source == EssenSource::Var(vi)) else {
            continue;
        };
        let mut row_ok = entry.elem.numerator == exp.numerator.poly;
        if let Some(denom) = &exp.denominator {
            row_ok &= entry.elem.denominator() == denom.poly;
        } else {
            row_ok &= entry.elem.exponent == 0;
        }
        if !row_ok {
            ok = false;
            mismatches.push(json!({
                "variable": exp.var,
                "expected_numerator": exp.numerator.src,
                "computed_numerator": entry.elem.numerator.to_string(),
                "computed_denominator": entry.elem.denominator().to_string(),
            }));
        }
    }
    let witness = json!({ "entries": rows, "mismatches": mismatches });
    from_bool(ok, witness)
}

fn rat_text(value: &crate::ring::Rat) -> String {
    if num_traits::One::is_one(value.denom()) {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::report::CheckStatus;

    #[test]
    fn kernel_failure_carries_a_witness() {
        let text = "\
ring R vars x, s, t, u, v
derivation Delta on R { s -> x^3, t -> s, u -> t, v -> x^2 }
check kernel Delta [s]
";
        let cf = parse(text).unwrap();
        let report = run(&cf, text, &RunOptions::default());
        assert_eq!(report.checks.len(), 1);
        assert_eq!(report.checks[0].status, CheckStatus::Fail);
        let w = report.checks[0].witnesses["images"][0]["image"]
            .as_str()
            .unwrap();
        assert_eq!(w, "x^3");
        assert_eq!(report.exit_code(), 1);
    }

    #[test]
    fn small_df5_file_passes() {
        let text = "\
ring R vars x, s, t, u, v
derivation Delta on R { s -> x^3, t -> s, u -> t, v -> x^2 }
poly f2 = 2*x^3*t - s^2
check kernel Delta [x, f2]
check derives Delta 3*x^3*u - s*t == f2
check height [x, f2] == 2
check theta Delta of u == [u, t, s/2, x^3/6]
check evaluate x*v - s at (1, 2, 0, 0, 3) == 1
";
        let cf = parse(text).unwrap();
        let report = run(&cf, text, &RunOptions::default());
        assert!(
            report.checks.iter().all(|c| c.status == CheckStatus::Pass),
            "{}",
            report.to_json()
        );
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn reports_are_deterministic_modulo_timing() {
        let text = "\
ring R vars x, s, t, u, v
derivation Delta on R { s -> x^3, t -> s, u -> t, v -> x^2 }
check maubach b = 1
";
        let cf = parse(text).unwrap();
        let mut a = run(&cf, text, &RunOptions::default());
        let mut b = run(&cf, text, &RunOptions::default());
        for r in a.checks.iter_mut().chain(b.checks.iter_mut()) {
            r.elapsed_ms = 0;
        }
        assert_eq!(a.to_json(), b.to_json());
    }
}
