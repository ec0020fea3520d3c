//! Acceptance run: each criterion maps to one or more verification suites and
//! passes only if every row passes with nothing skipped.

use std::process::ExitCode;
use std::time::Instant;

use sqpow_core::verify::{run_suite, VerifyOptions};

const CRITERIA: &[(u32, &str, &[&str])] = &[
    (1, "matching numbers of path complexes", &["path-invariants"]),
    (2, "regularity of cube powers of 3-path ideals, extended range", &["path-regularity"]),
    (3, "first syzygy degrees of path powers", &["first-syzygies"]),
    (4, "trees with the intersection property", &["intersection-property"]),
    (5, "linear quotients for broom path ideals", &["broom"]),
    (6, "linear relatedness below nu0 and monotonicity on trees", &["linear-relatedness"]),
    (7, "worked examples", &["examples"]),
    (8, "colon and sum identities along good leaf orders", &["colon-identities"]),
    (9, "induced-matching lower bound for regularity", &["regularity-lower-bound"]),
    (10, "Betti oracles, homology sanity, field agreement", &["oracle", "homology-sanity"]),
    (11, "regularity of the second highest path power", &["second-highest-power"]),
];

fn main() -> ExitCode {
    let opts = VerifyOptions { extended: true, ..VerifyOptions::default() };
    let mut failed = 0;
    for &(n, what, suites) in CRITERIA {
        let start = Instant::now();
        let mut ok = true;
        let mut checks = 0;
        let mut detail = vec![];
        for s in suites {
            match run_suite(s, &opts) {
                Ok(r) => {
                    checks += r.rows.len();
                    if !r.passed_strict() {
                        ok = false;
                        detail.push(r.to_string());
                    }
                }
                Err(e) => {
                    ok = false;
                    detail.push(format!("{s}: {e}"));
                }
            }
        }
        let status = if ok { "PASS" } else { "FAIL" };
        println!("{status} criterion {n:>2}: {what} ({checks} checks, {:.1} s)", start.elapsed().as_secs_f64());
        for d in detail {
            print!("{d}");
        }
        failed += !ok as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
