//! Parsing, substitution and resultants of sparse polynomials.

use qline::galois::mk_prime_field;
use qline::mpoly::{parse_poly, resultant, PolyRing};

fn main() -> qline::Result<()> {
    let ctx = mk_prime_field(10007)?;
    let ring = PolyRing::space(&ctx);
    let f = parse_poly("x3*x1^3 + x4*x2^3 + 4*(20*x3^4 - 9*x3*x4^3)/3", &ring)?;
    println!("f = {f}");
    println!("df/dx1 = {}", f.derivative(0));

    let g = parse_poly("x1^2 - x3*x4", &ring)?;
    let h = parse_poly("x1^2 + x1*x2 - x4^2", &ring)?;
    println!("Res_x1(g, h) = {}", resultant(&g, &h, 0)?);

    match parse_poly("x1^^2", &ring) {
        Err(e) => println!("rejected: {e}"),
        Ok(p) => println!("unexpected parse {p}"),
    }
    Ok(())
}
