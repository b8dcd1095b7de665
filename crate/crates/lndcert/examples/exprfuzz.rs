use lndcert::ring::RingCtx;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() {
    let rounds: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(50_000);
    let mut rng = StdRng::seed_from_u64(4242);
    let ring = RingCtx::grevlex(&["x", "s", "t", "u", "v"]);
    let seeds = [
        "2*x^3*t - s^2",
        "(x + s)^12/7 - u*v",
        "-18*x^3*t*s*u + 9*x^6*u^2 + 8*x^3*t^3 + 6*s^3*u - 3*t^2*s^2",
        "x^9999999999",
        "1/2",
    ];
    let charset: Vec<u8> = b"xstuv0123456789 ()^*/+-".to_vec();
    let mut ok = 0u64;
    let started = std::time::Instant::now();
    for _ in 0..rounds {
        let mut text = seeds[rng.gen_range(0..seeds.len())].as_bytes().to_vec();
        for _ in 0..rng.gen_range(1..=6) {
            if text.is_empty() {
                break;
            }
            let pos = rng.gen_range(0..text.len());
            match rng.gen_range(0..3) {
                0 => text[pos] = charset[rng.gen_range(0..charset.len())],
                1 => {
                    text.remove(pos);
                }
                _ => text.insert(pos, charset[rng.gen_range(0..charset.len())]),
            }
        }
        if let Ok(s) = String::from_utf8(text) {
            let t0 = std::time::Instant::now();
            let parsed = lndcert::dsl::parse_poly(&ring, &s);
            let dt = t0.elapsed();
            if dt.as_millis() > 100 {
                eprintln!("SLOW {dt:?}: {s}");
            }
            if let Ok(p) = parsed {
                ok += 1;
                let printed = p.to_string();
                let again = lndcert::dsl::parse_poly(&ring, &printed).expect("re-parse");
                assert_eq!(p, again);
            }
        }
    }
    println!(
        "expr fuzz done; {ok} of {rounds} mutants parsed in {:.2?}",
        started.elapsed()
    );
}
