//! Acceptance suite: one pass/fail line per criterion.

#[test]
fn acceptance() {
    let results = torext::suite::run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<&torext::suite::CriterionResult> =
        results.iter().filter(|r| !r.pass).collect();
    assert!(
        failed.is_empty(),
        "{}",
        failed.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n")
    );
}
