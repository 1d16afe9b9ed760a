//! Singular fibers and lines of the pencil of planes through the line.

use qline::families::make_z_paper_instance;
use qline::galois::mk_prime_field;
use qline::pencil::{
    fiber_type_summary, is_smooth, lines_meeting_line, ramification_profile, singular_fiber_table,
};

fn main() -> qline::Result<()> {
    let ctx = mk_prime_field(10007)?;
    let x = make_z_paper_instance(&ctx)?;
    println!("X = {}", x.f());
    println!("smooth: {}", is_smooth(&x).smooth);
    println!("ramification type: {}", ramification_profile(&x)?.rtype);

    let table = singular_fiber_table(&x)?;
    for r in &table {
        println!(
            "fiber {:<28} v = {} {:<3} contact {:?} lines {}",
            r.param.to_string(),
            r.v_delta,
            r.kodaira.to_string(),
            r.contact,
            r.components.len()
        );
    }
    println!("fibration {}", fiber_type_summary(&table));

    let lines = lines_meeting_line(&x)?;
    println!("{} lines meet the line", lines.count);
    for l in lines.groups.iter().flat_map(|g| g.2.iter()).take(3) {
        println!("  {l}");
    }
    Ok(())
}
