//! Compose `S + L1·L2·L3·L4`, then detect and recover the decomposition.

use qline::families::make_s4_gamma;
use qline::flexline::{segre_compose, segre_detect, segre_recover};
use qline::galois::{mk_prime_field, Fq};
use qline::mpoly::{parse_poly, PolyRing};

fn main() -> qline::Result<()> {
    let ctx = mk_prime_field(10007)?;
    let ring = PolyRing::space(&ctx);
    let s = make_s4_gamma(&Fq::from_u64(&ctx, 3));
    let planes = ["x3+x4", "x3-x4", "x3+2*x4", "x3-5*x4"]
        .iter()
        .map(|t| parse_poly(t, &ring))
        .collect::<qline::Result<Vec<_>>>()?;

    let x = segre_compose(&s, &planes)?;
    println!("X = {}", x.f());
    println!("detect: {}", segre_detect(&x)?);

    let d = segre_recover(&x)?;
    println!("lambda = {}", d.lambda);
    println!("S4 = {}", d.s4);
    for l in d.plane_forms() {
        println!("plane {l}");
    }
    println!("class {:?}, identity holds: {}", d.class, d.verify(x.f()));
    Ok(())
}
