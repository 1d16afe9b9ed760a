//! Runs one acceptance criterion, e.g. `cargo run --example verify_criterion -- 3`.

use qline::verify::verify_criterion;

fn main() -> qline::Result<()> {
    let id = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    println!("{}", verify_criterion(10007, 0, id)?);
    Ok(())
}
