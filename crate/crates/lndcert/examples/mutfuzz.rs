use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = StdRng::seed_from_u64(777);
    let seeds: Vec<String> = std::fs::read_dir("fuzz/corpus/parse_checkfile")
        .unwrap()
        .filter_map(|e| std::fs::read_to_string(e.unwrap().path()).ok())
        .collect();
    let charset: Vec<u8> = b"abcxyzstuv0123456789 \n#(){}[]^*/+-=,<>!\"@_".to_vec();
    let mut parsed_ok = 0u64;
    for round in 0..20_000u64 {
        let mut text = seeds[rng.gen_range(0..seeds.len())].clone().into_bytes();
        let mutations = rng.gen_range(1..=8);
        for _ in 0..mutations {
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
            if let Ok(cf) = lndcert::dsl::parse(&s) {
                parsed_ok += 1;
                let printed = cf.print();
                let again = lndcert::dsl::parse(&printed).expect("re-parse");
                assert_eq!(cf, again, "round trip at round {round}");
            }
        }
    }
    println!("done; {} mutants parsed successfully", parsed_ok);
}
