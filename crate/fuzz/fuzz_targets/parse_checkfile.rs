//! The check-file parser must never panic, and anything it accepts must
//! survive the print/parse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cf) = lndcert::dsl::parse(text) {
        let printed = cf.print();
        let again = lndcert::dsl::parse(&printed).expect("canonical output re-parses");
        assert_eq!(cf, again, "round trip changed the parsed file");
    }
});
