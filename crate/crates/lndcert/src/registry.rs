//! Built-in check files. Every entry is generated from the catalog
//! constructions, so the emitted text, the shipped corpus files, and the
//! in-process builders cannot drift apart.

use std::collections::BTreeMap;

use crate::catalog;
use crate::dsl::{parse, CheckFile};

fn pow(base: &str, e: u32) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

/// Names and parameter ranges of the built-in examples.
pub const BUILTIN_NAMES: [&str; 5] = ["df5", "roberts", "f6", "new7", "maubach"];

/// Canonical text of a built-in check file.
///
/// Parameters: `roberts` takes `m >= 2`, `new7` takes `a, b >= 1`,
/// `maubach` takes `b >= 1`; `df5` and `f6` take none.
pub fn builtin_text(name: &str, params: &BTreeMap<String, u32>) -> Result<String, String> {
    let get = |key: &str, default: Option<u32>| -> Result<u32, String> {
        match (params.get(key), default) {
            (Some(&v), _) => Ok(v),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(format!("missing parameter `{key}`")),
        }
    };
    let reject_params = |allowed: &[&str]| -> Result<(), String> {
        for k in params.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(format!("unknown parameter `{k}` for `{name}`"));
            }
        }
        Ok(())
    };
    match name {
        "df5" => {
            reject_params(&[])?;
            Ok(df5_text())
        }
        "roberts" => {
            reject_params(&["m"])?;
            let m = get("m", Some(2))?;
            if m < 2 {
                return Err("roberts needs m >= 2".into());
            }
            Ok(roberts_text(m))
        }
        "f6" => {
            reject_params(&[])?;
            Ok(f6_text())
        }
        "new7" => {
            reject_params(&["a", "b"])?;
            let a = get("a", Some(1))?;
            let b = get("b", Some(1))?;
            if a < 1 || b < 1 {
                return Err("new7 needs a, b >= 1".into());
            }
            Ok(new7_text(a, b))
        }
        "maubach" => {
            reject_params(&["b"])?;
            let b = get("b", Some(1))?;
            if b < 1 {
                return Err("maubach needs b >= 1".into());
            }
            Ok(maubach_text(b))
        }
        other => Err(format!(
            "unknown example `{other}` (available: {})",
            BUILTIN_NAMES.join(", ")
        )),
    }
}

/// Parsed form of a built-in check file.
pub fn builtin(name: &str, params: &BTreeMap<String, u32>) -> Result<CheckFile, String> {
    let text = builtin_text(name, params)?;
    parse(&text).map_err(|e| format!("internal: builtin `{name}` fails to parse: {e}"))
}

/// Filename/content pairs for the whole shipped corpus.
pub fn corpus_entries() -> Vec<(String, String)> {
    let mut out = Vec::new();
    out.push(("df5.lnd".to_string(), df5_text()));
    for m in [2, 3] {
        out.push((format!("roberts_m{m}.lnd"), roberts_text(m)));
    }
    out.push(("f6.lnd".to_string(), f6_text()));
    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        out.push((format!("new7_a{a}_b{b}.lnd"), new7_text(a, b)));
    }
    for b in [1, 2, 3] {
        out.push((format!("maubach_b{b}.lnd"), maubach_text(b)));
    }
    out
}

fn df5_text() -> String {
    let mut s = String::new();
    s.push_str("# Five-variable triangular action: kernel generators, both slice-table\n");
    s.push_str("# columns, the quasi-affine presentation, and the separating criterion.\n");
    s.push_str("ring R vars x, s, t, u, v order grevlex\n");
    s.push_str("derivation Delta on R { s -> x^3, t -> s, u -> t, v -> x^2 }\n");
    s.push_str("poly f1 = x\n");
    s.push_str("poly f2 = 2*x^3*t - s^2\n");
    s.push_str("poly f3 = 3*x^6*u - 3*x^3*t*s + s^3\n");
    s.push_str("poly f4 = x*v - s\n");
    s.push_str("poly f5 = x^2*t*s - s^2*v + 2*x^3*t*v - 3*x^5*u\n");
    s.push_str("poly f6 = -18*x^3*t*s*u + 9*x^6*u^2 + 8*x^3*t^3 + 6*s^3*u - 3*t^2*s^2\n");
    s.push_str("algebra A = [f1, f2, f3, f4, f5, f6]\n");
    s.push_str("slice S1 for Delta = s\n");
    s.push_str("slice S2 for Delta = 3*x^3*u - s*t\n");
    s.push_str("weights W on R { x -> (1), s -> (3), t -> (3), u -> (3), v -> (2) }\n");
    s.push_str("check kernel Delta [f1, f2, f3, f4, f5, f6]\n");
    s.push_str("check identity f3 == -f1*f5 + f2*f4\n");
    s.push_str("check derives Delta 3*x^3*u - s*t == f2\n");
    s.push_str("check graded Delta weights W == (0)\n");
    s.push_str("check theta Delta of u == [u, t, s/2, x^3/6]\n");
    s.push_str("check essen Delta slice S1 expect { x -> f1, s -> 0, t -> f2/2 over x^3, u -> f3/3 over x^6, v -> f4 over x }\n");
    s.push_str("check essen Delta slice S2 expect { x -> f1, s -> -f3 over f2, t -> x^3*f6/2 over f2^2, u -> -f6*f3/6 over f2^3, v -> f5 over f2 }\n");
    s.push_str("check radical-equal [x^3, f2] [x, s]\n");
    s.push_str("check height [x, f2] == 2\n");
    s.push_str("check quasiaffine A derivation Delta loci [f1, f2] slices [S1, S2]\n");
    s.push_str("check separating corollary A derivation Delta ideal [x, s] testset [f1, f2, f3, f4, f5, f6] cite \"every invariant is constant plus an element of (x, s): the derivation is graded and commutes with d/du and d/dv\"\n");
    s
}

fn roberts_text(m: u32) -> String {
    let e = m + 1;
    let xe = |i: u32| pow(&format!("x{i}"), e);
    let mut s = String::new();
    s.push_str(&format!(
        "# Seven-variable monomial action with m = {m}: slice generators, the\n"
    ));
    s.push_str("# quasi-affine presentations for the full and reduced algebras, and the\n");
    s.push_str("# failure of the reduced algebra to separate a fiber pair.\n");
    s.push_str("ring B vars x1, x2, x3, y1, y2, y3, v order grevlex\n");
    s.push_str(&format!(
        "derivation D on B {{ y1 -> {}, y2 -> {}, y3 -> {}, v -> (x1*x2*x3)^{m} }}\n",
        xe(1),
        xe(2),
        xe(3)
    ));
    s.push_str(&format!("poly phi1 = {}*y2 - {}*y1\n", xe(1), xe(2)));
    s.push_str(&format!("poly phi2 = {}*y3 - {}*y1\n", xe(1), xe(3)));
    s.push_str(&format!("poly phi3 = {}*y3 - {}*y2\n", xe(2), xe(3)));
    s.push_str(&format!("poly phi4 = (x1*x2)^{m}*y3 - x3*v\n"));
    s.push_str(&format!("poly phi5 = (x1*x3)^{m}*y2 - x2*v\n"));
    s.push_str(&format!("poly phi6 = (x2*x3)^{m}*y1 - x1*v\n"));
    s.push_str("algebra A = [x1, x2, x3, phi1, phi2, phi3, phi4, phi5, phi6]\n");
    s.push_str("algebra Aprime = [x1, x2, x3, phi1, phi2, phi3, phi5, phi6]\n");
    s.push_str("slice T1 for D = y1\n");
    s.push_str("slice T2 for D = y2\n");
    s.push_str("slice T3 for D = y3\n");
    s.push_str("check kernel D [phi1, phi2, phi3, phi4, phi5, phi6]\n");
    s.push_str(&format!(
        "check essen D slice T1 expect {{ x1 -> x1, x2 -> x2, x3 -> x3, y1 -> 0, y2 -> phi1 over {}, y3 -> phi2 over {}, v -> -phi6 over x1 }}\n",
        xe(1), xe(1)
    ));
    s.push_str(&format!(
        "check essen D slice T2 expect {{ y1 -> -phi1 over {}, y3 -> phi3 over {}, v -> -phi5 over x2 }}\n",
        xe(2), xe(2)
    ));
    s.push_str(&format!(
        "check essen D slice T3 expect {{ y1 -> -phi2 over {}, y2 -> -phi3 over {}, v -> -phi4 over x3 }}\n",
        xe(3), xe(3)
    ));
    s.push_str("check height [x1, x2, x3] == 3\n");
    s.push_str("check quasiaffine A derivation D loci [x1, x2, x3] slices [T1, T2, T3]\n");
    s.push_str("check height [x1, x2] == 2\n");
    s.push_str("check quasiaffine Aprime derivation D loci [x1, x2] slices [T1, T2]\n");
    s.push_str("check separating corollary A derivation D ideal [x1, x2, x3] testset [x1, x2, x3, phi1, phi2, phi3, phi4, phi5, phi6] cite \"every invariant is constant plus an element of (x1, x2, x3)\"\n");
    s.push_str("check evaluate phi4 at (0, 0, 1, 0, 0, 0, 1) != 0\n");
    s.push_str("check separates [x1, x2, x3, phi1, phi2, phi3, phi5, phi6] between (0, 0, 1, 0, 0, 0, 1) and (0, 0, 1, 0, 0, 0, 0) expect none\n");
    s.push_str("check separates [phi4] between (0, 0, 1, 0, 0, 0, 1) and (0, 0, 1, 0, 0, 0, 0) expect some\n");
    s
}

fn f6_text() -> String {
    let mut s = String::new();
    s.push_str("# Six-variable action: the two-slice localization data, the radical\n");
    s.push_str("# identity for the loci, and the two-piece separating decomposition.\n");
    s.push_str("ring B vars x, y, s, t, u, v order grevlex\n");
    s.push_str("derivation D on B { s -> x^3, t -> y^3*s, u -> y^3*t, v -> x^2*y^2 }\n");
    s.push_str("poly f2 = 2*x^3*y^3*t - y^6*s^2\n");
    s.push_str("poly g1 = x\n");
    s.push_str("poly g2 = y\n");
    s.push_str("poly g3 = -y^2*s + x*v\n");
    s.push_str("poly g4 = -1/2*y^3*s^2 + x^3*t\n");
    s.push_str("poly g5 = -x^2*y^3*s*t + 3*x^5*u + y^4*s^2*v - 2*x^3*y*t*v\n");
    s.push_str("poly g6 = -3/2*y^6*s^2*t^2 + 4*x^3*y^3*t^3 + 3*y^6*s^3*u - 9*x^3*y^3*s*t*u + 9/2*x^6*u^2\n");
    s.push_str("algebra A = [g1, g2, g3, g4, g5, g6]\n");
    s.push_str("slice S1 for D = s\n");
    s.push_str("slice S2 for D = 3*x^3*u - y^3*s*t\n");
    s.push_str("check kernel D [g1, g2, g3, g4, g5, g6]\n");
    s.push_str("check derives D 3*x^3*u - y^3*s*t == f2\n");
    s.push_str("check essen D slice S1 expect { x -> g1, y -> g2, s -> 0, t -> g4 over x^3, u -> x^6*u - x^3*y^3*t*s + y^6*s^3/3 over x^6, v -> g3 over x }\n");
    s.push_str("check essen D slice S2\n");
    s.push_str("check radical-equal [x, f2] [x, y*s]\n");
    s.push_str("check height [x, f2] == 2\n");
    s.push_str("check quasiaffine A derivation D loci [g1, f2] slices [S1, S2]\n");
    s.push_str("check separating on-variety A derivation D loci [x, f2] pieces [(x, y) -> [], (x, s) -> [g2]] testset [g1, g2, g3, g4, g5, g6]\n");
    s
}

fn new7_text(a: u32, b: u32) -> String {
    let e = catalog::new7(a, b);
    let xa = |i: u32| pow(&format!("x{i}"), a);
    let ab = (a * b) as i64;
    let mut s = String::new();
    s.push_str(&format!(
        "# Seven-variable family with a = {a}, b = {b}: slice projections of v, the\n"
    ));
    s.push_str("# quasi-affine presentation, the torus and permutation symmetries, and\n");
    s.push_str("# the identification of the symmetric invariants with the triangular model.\n");
    s.push_str("ring B vars x1, x2, x3, y1, y2, y3, v order grevlex\n");
    s.push_str(&format!(
        "derivation D on B {{ y1 -> {}, y2 -> {}, y3 -> {}, v -> {} }}\n",
        xa(1),
        xa(2),
        xa(3),
        pow("(y1*y2*y3)", b)
    ));
    s.push_str(&format!("poly p12 = {}*y2 - {}*y1\n", xa(1), xa(2)));
    s.push_str(&format!("poly p13 = {}*y3 - {}*y1\n", xa(1), xa(3)));
    s.push_str(&format!("poly p23 = {}*y3 - {}*y2\n", xa(2), xa(3)));
    for (i, hi) in e.h.iter().enumerate() {
        s.push_str(&format!("poly h{} = {}\n", i + 1, hi));
    }
    s.push_str("algebra A = [x1, x2, x3, p12, p13, p23, h1, h2, h3]\n");
    s.push_str("slice T1 for D = y1\n");
    s.push_str("slice T2 for D = y2\n");
    s.push_str("slice T3 for D = y3\n");
    let rows = format!(
        "x1 -> (1, 0, 0), x2 -> (0, 1, 0), x3 -> (0, 0, 1), y1 -> ({a}, 0, 0), y2 -> (0, {a}, 0), y3 -> (0, 0, {a}), v -> ({ab}, {ab}, {ab})"
    );
    s.push_str(&format!("weights omega on B {{ {rows} }}\n"));
    s.push_str(&format!("weights hgr on B mod diagonal {{ {rows} }}\n"));
    s.push_str("symmetry S3 on B { orbit (x1, x2, x3) orbit (y1, y2, y3) }\n");
    s.push_str("check kernel D [x1, x2, x3, p12, p13, p23, h1, h2, h3]\n");
    let hpow = pow("x1", (2 * b + 1) * a);
    s.push_str(&format!(
        "check essen D slice T1 expect {{ x1 -> x1, x2 -> x2, x3 -> x3, y1 -> 0, y2 -> p12 over {}, y3 -> p13 over {}, v -> h1 over {hpow} }}\n",
        xa(1), xa(1)
    ));
    s.push_str(&format!(
        "check essen D slice T2 expect {{ y1 -> -p12 over {}, y3 -> p23 over {}, v -> h2 over {} }}\n",
        xa(2),
        xa(2),
        pow("x2", (2 * b + 1) * a)
    ));
    s.push_str(&format!(
        "check essen D slice T3 expect {{ y1 -> -p13 over {}, y2 -> -p23 over {}, v -> h3 over {} }}\n",
        xa(3),
        xa(3),
        pow("x3", (2 * b + 1) * a)
    ));
    s.push_str("check height [x1, x2, x3] == 3\n");
    s.push_str("check quasiaffine A derivation D loci [x1, x2, x3] slices [T1, T2, T3]\n");
    s.push_str("check graded D weights omega == (0, 0, 0)\n");
    s.push_str(&format!(
        "check invariant hgr [x1*x2*x3, {}*y2*y3, {}*y1*y3, {}*y1*y2, {}*{}*y3, {}*{}*y2, {}*{}*y1, y1*y2*y3, v]\n",
        xa(1), xa(2), xa(3), xa(1), xa(2), xa(1), xa(3), xa(2), xa(3)
    ));
    s.push_str(&format!(
        "check invariant S3 [x1*x2*x3, {}*y2*y3 + {}*y1*y3 + {}*y1*y2, {}*{}*y3 + {}*{}*y2 + {}*{}*y1, y1*y2*y3, v]\n",
        xa(1), xa(2), xa(3), xa(1), xa(2), xa(1), xa(3), xa(2), xa(3)
    ));
    s.push_str("check separating corollary A derivation D ideal [x1, x2, x3] testset [x1, x2, x3, p12, p13, p23, h1, h2, h3] cite \"every invariant is constant plus an element of (x1, x2, x3): quotient and symmetry argument\"\n");
    s.push_str("ring M vars x, y, z, u, w order grevlex\n");
    s.push_str(&format!(
        "derivation DM on M {{ y -> {}, z -> y, u -> z, w -> {} }}\n",
        pow("x", a),
        pow("u", b)
    ));
    let six_pow_b = 6u64.pow(b);
    let pair = |i: u32, j: u32| format!("{}*{}", xa(i), xa(j));
    s.push_str(&format!(
        "check pullback D via {{ x -> x1*x2*x3, y -> ({}*y3 + {}*y2 + {}*y1)/3, z -> ({}*y2*y3 + {}*y1*y3 + {}*y1*y2)/6, u -> y1*y2*y3/6, w -> v/{six_pow_b} }} matches DM\n",
        pair(1, 2),
        pair(1, 3),
        pair(2, 3),
        xa(1),
        xa(2),
        xa(3),
    ));
    s.push_str(&format!("check lemma51 a = {a} b = {b}\n"));
    s
}

fn maubach_text(b: u32) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "# Four-variable triangular model with b = {b}: kernel generators y, h, h', h'',\n"
    ));
    s.push_str("# the alpha constant, the y-divisibility exponent, and the containments.\n");
    s.push_str(&format!("check maubach b = {b}\n"));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_parse() {
        for (name, text) in corpus_entries() {
            let parsed = parse(&text);
            assert!(parsed.is_ok(), "{name}: {:?}", parsed.err());
        }
    }

    #[test]
    fn builtin_lookup_and_validation() {
        let mut params = BTreeMap::new();
        assert!(builtin("df5", &params).is_ok());
        params.insert("m".into(), 1);
        assert!(builtin("roberts", &params).is_err());
        params.insert("m".into(), 3);
        assert!(builtin("roberts", &params).is_ok());
        assert!(builtin("unknown", &BTreeMap::new()).is_err());
        let mut bad = BTreeMap::new();
        bad.insert("q".into(), 1);
        assert!(builtin("df5", &bad).is_err());
    }
}
