//! Lines from the fiber table against a brute-force search over a small field.

use qline::families::{make_z, ZParams};
use qline::galois::FieldCtx;
use qline::mpoly::{parse_poly, PolyRing};
use qline::pencil::oracle::{exhaustive_lines, normalize_line_set, tangent_oracle_lines};
use qline::pencil::{is_smooth, lines_meeting_line};

fn main() -> qline::Result<()> {
    let ctx = FieldCtx::prime(31)?;
    let ring = PolyRing::space(&ctx);
    let x = make_z(&ZParams {
        q: parse_poly("x3*x4", &ring)?,
        g: parse_poly("x3^4 + x4^4", &ring)?,
    })?;
    println!("smooth: {}", is_smooth(&x).smooth);
    let lines = lines_meeting_line(&x)?;
    for k in 1..=2 {
        let field = ctx.extension(k);
        let ours = normalize_line_set(
            lines
                .groups
                .iter()
                .flat_map(|g| g.2.iter())
                .filter(|l| k % l.field_degree() == 0),
            &field,
        );
        let oracle = tangent_oracle_lines(&x, &field);
        println!(
            "F_31^{k}: table {} lines, tangent-plane oracle {}",
            ours.len(),
            oracle.len()
        );
        if k == 1 {
            println!(
                "exhaustive search agrees: {}",
                exhaustive_lines(&x, &field) == oracle
            );
        }
    }
    Ok(())
}
