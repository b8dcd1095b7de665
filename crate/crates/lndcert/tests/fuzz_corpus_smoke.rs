//! Runs the checked-in fuzz corpus seeds through the same properties the
//! fuzz targets assert, so `cargo test` exercises them without libFuzzer.

use std::fs;
use std::path::Path;

use lndcert::dsl::{parse, parse_poly};
use lndcert::ring::RingCtx;

fn corpus_dir(target: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target)
}

#[test]
fn checkfile_seeds_never_panic_and_round_trip() {
    let dir = corpus_dir("parse_checkfile");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).expect("fuzz corpus directory exists") {
        let path = entry.unwrap().path();
        let Ok(text) = fs::read_to_string(&path) else {
            continue;
        };
        seen += 1;
        if let Ok(cf) = parse(&text) {
            let printed = cf.print();
            let again = parse(&printed).expect("canonical output re-parses");
            assert_eq!(cf, again, "{}", path.display());
        }
    }
    assert!(seen >= 10, "corpus seeds missing");
}

#[test]
fn poly_expr_seeds_never_panic_and_round_trip() {
    let ring = RingCtx::grevlex(&["x", "s", "t", "u", "v"]);
    let dir = corpus_dir("parse_poly_expr");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).expect("fuzz corpus directory exists") {
        let path = entry.unwrap().path();
        let Ok(text) = fs::read_to_string(&path) else {
            continue;
        };
        seen += 1;
        if let Ok(poly) = parse_poly(&ring, &text) {
            let printed = poly.to_string();
            let again = parse_poly(&ring, &printed).expect("canonical rendering re-parses");
            assert_eq!(poly, again, "{}", path.display());
        }
    }
    assert!(seen >= 4, "corpus seeds missing");
}
