//! Acceptance criteria AC1-AC12: one PASS/FAIL line per criterion with the
//! measured values. Run with `--nocapture` to see the report.

use fracrd_cli::suites::SUITES;

const SEED: u64 = 20240601;

#[test]
fn acceptance() {
    // starts the report on its own line under the harness output
    println!();
    let mut failed = Vec::new();
    for suite in SUITES {
        let rep = suite.run(SEED);
        let status = if rep.pass() { "PASS" } else { "FAIL" };
        println!("{status} {} {} ({:.2} s, budget {:.0} s)", rep.id, rep.title, rep.elapsed.as_secs_f64(), rep.budget.as_secs_f64());
        for r in &rep.rows {
            println!("    [{}] {}: value {:e}, bound {:e} ({})", if r.pass { "ok" } else { "x" }, r.check, r.value, r.bound, r.regime);
        }
        for n in &rep.notes {
            println!("    note: {n}");
        }
        if !rep.pass() {
            failed.push(rep.id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
