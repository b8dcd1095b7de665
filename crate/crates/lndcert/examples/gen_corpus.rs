//! Regenerate the shipped corpus files from the registry.

use std::path::Path;

fn main() {
    let dir = Path::new("corpus");
    std::fs::create_dir_all(dir).unwrap();
    for (name, text) in lndcert::registry::corpus_entries() {
        let path = dir.join(&name);
        std::fs::write(&path, &text).unwrap();
        println!("wrote {}", path.display());
    }
}
