//! Acceptance suite: runs every criterion of the corpus matrix and prints one
//! pass/fail line per criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use ramlift::config::Config;
use ramlift::corpus;

#[test]
fn acceptance_criteria() {
    let cfg = Config::default();
    let results = corpus::run_all(None, &cfg);
    let mut all_pass = true;
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("{} {} ({} ms): {}", r.id, status, r.millis, r.detail);
        all_pass &= r.pass;
    }
    assert!(all_pass, "at least one acceptance criterion failed");
}
