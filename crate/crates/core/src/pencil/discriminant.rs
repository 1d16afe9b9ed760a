use crate::error::{Error, Result};
use crate::galois::{descend, Fq};
use crate::mpoly::upoly::interpolate;
use crate::mpoly::{MPoly, Mono, ProjPoint};

use super::cubic::cubic_discriminant;
use super::{base_ring, fiber_cubic, QuarticWithLine};

/// Discriminant `Δ(s, t)` of the fiber cubics, a binary form of degree 24.
///
/// Evaluated at 25 affine parameters `(s:1)` and interpolated; over tiny
/// prime fields the nodes are taken in an extension. `Δ` is defined up to a
/// nonzero scalar.
pub fn pencil_discriminant(x: &QuarticWithLine) -> Result<MPoly> {
    let base = x.ctx().clone();
    let mut k = 1;
    while (base.p() as u128).pow((base.degree() * k) as u32) < 25 {
        k += 1;
    }
    let field = base.extension(base.degree() * k);
    let nodes: Vec<Fq> = (0..25u64)
        .map(|i| {
            let mut digits = Vec::new();
            let mut r = i;
            for _ in 0..field.degree() {
                digits.push(r % base.p());
                r /= base.p();
            }
            Fq::from_coeffs(&field, &digits)
        })
        .collect();
    let values: Vec<Fq> = nodes
        .iter()
        .map(|s| {
            let c = fiber_cubic(x, &ProjPoint::finite(s.clone()));
            cubic_discriminant(&c).unwrap_or_else(|_| Fq::zero(&field))
        })
        .collect();
    let d = interpolate(&nodes, &values);
    if d.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let ring = base_ring(&base);
    let terms = d.coeffs().iter().enumerate().map(|(i, c)| {
        let c = descend(c, &base).expect("discriminant is defined over the base field");
        (Mono::from_exps(&[i as u16, (24 - i) as u16]), c)
    });
    Ok(MPoly::from_terms(&ring, terms))
}
