//! Runs every acceptance criterion at full scale and prints one line each.

use schurkit::verify::{run_criterion, Suite, CRITERIA};

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        match run_criterion(id, Suite::Full) {
            Ok(r) => {
                println!("{r}");
                if !r.passed {
                    failed.push(id);
                }
            }
            Err(e) => {
                println!("criterion {id:>2} FAIL: {e}");
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
