//! The surface of flexes along the line and the certificate for its residual component.

use qline::families::make_z_paper_instance;
use qline::flexline::{flex_surface, is_second_kind, triple_contact_fibers};
use qline::galois::mk_prime_field;
use qline::pencil::ramification_profile;

fn main() -> qline::Result<()> {
    let ctx = mk_prime_field(10007)?;
    let x = make_z_paper_instance(&ctx)?;
    println!("second kind: {}", is_second_kind(&x));
    let triple: Vec<String> = triple_contact_fibers(&x)?
        .iter()
        .map(|p| p.to_string())
        .collect();
    println!("fibers with triple contact: {triple:?}");

    let fs = flex_surface(&x, &ramification_profile(&x)?)?;
    println!("reduced degree {}", fs.reduced_degree);
    for c in &fs.components {
        println!(
            "  {:?} degree {} multiplicity {}: {}",
            c.role, c.degree, c.multiplicity, c.poly
        );
    }
    if let Some(r) = fs.residual() {
        println!(
            "residual: {}",
            qline::flexline::residual_irreducibility(&r.poly).label()
        );
    }
    Ok(())
}
