//! Produces the same JSON report as `torelli report` and judges it against
//! the bundled expectations.
//!
//! ```text
//! TORELLI_LOG=info cargo run --release --example json_report -- out.json
//! ```

use torelli::report::{cmd_report, Expectations, RunConfig};

fn main() -> torelli::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TORELLI_LOG", "info")).init();
    let config = RunConfig::default();
    let r = cmd_report(&config, false)?;
    let text = serde_json::to_string_pretty(&r).expect("report serializes");
    match std::env::args().nth(1) {
        Some(path) => std::fs::write(&path, text).expect("writable path"),
        None => println!("{text}"),
    }
    eprintln!(
        "{} verdicts, {} judged, {} mismatches in {} ms",
        r.verdicts.len(),
        r.judged_count(&Expectations::bundled()),
        r.mismatches.len(),
        r.timing_ms
    );
    std::process::exit(if r.passed() { 0 } else { 1 });
}
