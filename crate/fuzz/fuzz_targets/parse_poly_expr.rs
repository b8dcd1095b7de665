//! The expression parser must never panic; accepted expressions must
//! re-parse from their canonical rendering to the same polynomial.

#![no_main]

use libfuzzer_sys::fuzz_target;
use lndcert::ring::RingCtx;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let ring = RingCtx::grevlex(&["x", "s", "t", "u", "v"]);
    if let Ok(poly) = lndcert::dsl::parse_poly(&ring, text) {
        let printed = poly.to_string();
        let again =
            lndcert::dsl::parse_poly(&ring, &printed).expect("canonical rendering re-parses");
        assert_eq!(poly, again, "round trip changed the polynomial");
    }
});
