use std::io::Write;

use qline::verify::{verify_paper, Status};

#[test]
fn acceptance_criteria() {
    let rows = verify_paper(10007, 0).expect("valid prime");
    let mut err = std::io::stderr().lock();
    writeln!(err).unwrap();
    for r in &rows {
        writeln!(err, "{r}").unwrap();
    }
    assert_eq!(rows.len(), 10);
    let failed: Vec<u32> = rows.iter().filter(|r| r.status == Status::Fail).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria {failed:?}");
    assert!(rows.iter().take(9).all(|r| r.status == Status::Pass));
}
