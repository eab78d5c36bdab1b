//! Regenerates `tests/golden/*.csv` from the CLI golden cases.
//!
//! ```bash
//! cargo run --example make_goldens
//! ```

use std::path::PathBuf;

use fingauss::cli;

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    std::fs::create_dir_all(&dir).expect("create golden dir");
    for (name, args) in cli::golden_cases() {
        let body = cli::render_golden(&args).unwrap_or_else(|e| panic!("{name}: {e}"));
        let path = dir.join(format!("{name}.csv"));
        std::fs::write(&path, body).expect("write golden");
        println!("wrote {}", path.display());
    }
}
