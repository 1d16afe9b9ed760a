//! Randomized search for a smooth second-kind quartic with four simple ramification points.

use qline::analysis::{analyze, AnalysisOptions};
use qline::families::search_type_1111;
use qline::galois::mk_prime_field;
use qline::mpoly::{parse_poly, PolyRing};

fn main() -> qline::Result<()> {
    let ctx = mk_prime_field(10007)?;
    let Some(x) = search_type_1111(&ctx, 2000) else {
        println!("nothing found");
        return Ok(());
    };
    println!("X = {}", x.f());
    let ring = PolyRing::space(&ctx);
    let a = analyze(
        x.f(),
        &parse_poly("x3", &ring)?,
        &parse_poly("x4", &ring)?,
        &AnalysisOptions::default(),
    )?;
    println!(
        "ramification {}",
        a.ramification
            .as_ref()
            .map(|p| p.rtype.to_string())
            .unwrap_or_default()
    );
    println!("fibration {}", a.fiber_types());
    println!(
        "flex reduced degree {:?}",
        a.flex.as_ref().map(|f| f.reduced_degree)
    );
    println!("class {:?}", a.segre.as_ref().map(|d| d.class));
    Ok(())
}
