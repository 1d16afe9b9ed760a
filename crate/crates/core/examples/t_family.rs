//! Random members of the family with one double ramification point.

use qline::analysis::{analyze, AnalysisOptions};
use qline::families::{make_t, random_binary_form, TParams};
use qline::galois::{mk_prime_field, seeded_rng, Fq};
use qline::mpoly::{parse_poly, PolyRing};

fn main() -> qline::Result<()> {
    let ctx = mk_prime_field(10007)?;
    let ring = PolyRing::space(&ctx);
    let (l1, l2) = (parse_poly("x3", &ring)?, parse_poly("x4", &ring)?);
    let mut rng = seeded_rng(0, 1);
    for a_zero in [false, true] {
        let p = TParams {
            a: if a_zero {
                Fq::zero(&ctx)
            } else {
                Fq::random_nonzero(&ctx, &mut rng)
            },
            b: Fq::random(&ctx, &mut rng),
            c: Fq::random_nonzero(&ctx, &mut rng),
            g: random_binary_form(&ctx, 4, &mut rng),
        };
        let x = make_t(&p)?;
        let a = analyze(x.f(), &l1, &l2, &AnalysisOptions::default())?;
        println!(
            "a = {:<5} smooth {} {} lines {} detect {:?} class {:?}",
            p.a.to_string(),
            a.smooth.smooth,
            a.fiber_types(),
            a.lines.as_ref().map(|l| l.count).unwrap_or(0),
            a.segre_detect,
            a.segre.as_ref().map(|d| d.class)
        );
    }
    Ok(())
}
