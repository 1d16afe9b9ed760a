use qline::families::{make_t, make_z, TParams, ZParams};
use qline::galois::{FieldCtx, Fq};
use qline::mpoly::{parse_poly, PolyRing};
use qline::pencil::oracle::{exhaustive_lines, normalize_line_set, tangent_oracle_lines};
use qline::pencil::{is_smooth, lines_meeting_line, QuarticWithLine};

fn compare(x: &QuarticWithLine, k: usize, exhaustive: bool) -> usize {
    assert!(is_smooth(x).smooth);
    let field = x.ctx().extension(k);
    let lines = lines_meeting_line(x).unwrap();
    let ours = normalize_line_set(
        lines
            .groups
            .iter()
            .flat_map(|g| g.2.iter())
            .filter(|l| k % l.field_degree() == 0),
        &field,
    );
    let oracle = tangent_oracle_lines(x, &field);
    assert_eq!(ours, oracle);
    if exhaustive {
        assert_eq!(exhaustive_lines(x, &field), oracle);
    }
    ours.len()
}

#[test]
fn z_member_over_f31() {
    let ctx = FieldCtx::prime(31).unwrap();
    let r = PolyRing::space(&ctx);
    let x = make_z(&ZParams {
        q: parse_poly("x3*x4", &r).unwrap(),
        g: parse_poly("x3^4 + x4^4", &r).unwrap(),
    })
    .unwrap();
    assert_eq!(compare(&x, 1, true), 6);
    assert_eq!(compare(&x, 2, false), 18);
}

#[test]
fn t_member_over_f37() {
    let ctx = FieldCtx::prime(37).unwrap();
    let r = PolyRing::space(&ctx);
    let x = make_t(&TParams {
        a: Fq::from_u64(&ctx, 2),
        b: Fq::from_u64(&ctx, 5),
        c: Fq::from_u64(&ctx, 1),
        g: parse_poly("x3^4 + 3*x3*x4^3 + 7*x4^4", &r).unwrap(),
    })
    .unwrap();
    compare(&x, 1, true);
}
