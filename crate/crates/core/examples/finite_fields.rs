//! Prime fields, extensions, embeddings and the Frobenius.

use qline::galois::{descend, embed_root, mk_extension, mk_prime_field, Fq};

fn main() -> qline::Result<()> {
    let fp = mk_prime_field(10007)?;
    let f2 = mk_extension(&fp, 2);
    let f6 = mk_extension(&fp, 6);
    println!(
        "F_p^2 modulus {:?}, F_p^6 modulus {:?}",
        f2.modulus(),
        f6.modulus()
    );

    let a = Fq::generator(&f2);
    let b = embed_root(&a, &f6)?;
    println!("a = {a}, image in F_p^6 = {b}");
    println!("a^(p^2) == a: {}", a.frobenius().frobenius() == a);

    let n = &a * &a.frobenius();
    println!(
        "a * frob(a) = {n}, descends to F_p as {:?}",
        descend(&n, &fp)
    );
    println!("a / a = {}", a.checked_div(&a)?);
    Ok(())
}
