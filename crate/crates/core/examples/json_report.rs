//! A full report for a quartic given in other coordinates, as JSON.

use qline::analysis::{analyze, AnalysisOptions};
use qline::galois::mk_prime_field;
use qline::mpoly::{parse_poly, PolyRing};

fn main() -> qline::Result<()> {
    let ctx = mk_prime_field(10007)?;
    let ring = PolyRing::space(&ctx);
    let f = parse_poly("x1*x3^3 + x2*x4^3 + x1^4 + x2^4", &ring)?;
    let a = analyze(
        &f,
        &parse_poly("x1", &ring)?,
        &parse_poly("x2", &ring)?,
        &AnalysisOptions::default(),
    )?;
    let json = serde_json::to_string_pretty(&a.report()).expect("serializable");
    println!("{json}");
    Ok(())
}
