//! Acceptance suite: runs every top-level criterion and prints one
//! pass/fail line per criterion (visible with `--nocapture`).

use sl3mm::verify::acceptance_criteria;

#[test]
fn acceptance() {
    let results = acceptance_criteria();
    let mut all = true;
    for (i, r) in results.iter().enumerate() {
        println!(
            "criterion {}: {} - {} ({})",
            i + 1,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
        all &= r.passed;
    }
    assert!(all, "acceptance criteria failed");
}
