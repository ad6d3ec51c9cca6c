//! Thin binary wrapper; all behavior lives in the library for testability.

use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out_path = args
        .windows(2)
        .find(|w| w[0] == "--out")
        .map(|w| w[1].clone());
    let outcome = breuil_cli::run(args);
    match out_path {
        Some(path) if outcome.code != 2 => {
            if let Err(e) = std::fs::write(&path, &outcome.output) {
                eprintln!("error: cannot write {path}: {e}");
                std::process::exit(2);
            }
        }
        _ => {
            let mut stdout = std::io::stdout();
            let _ = stdout.write_all(outcome.output.as_bytes());
        }
    }
    std::process::exit(outcome.code);
}
