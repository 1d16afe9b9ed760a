//! Lines of the second kind: the flex test, the flex surface and Segre
//! decompositions `X = λ·S₄ + L₁·L₂·L₃·L₄`.

mod segre;
mod surface;

use crate::error::{Error, Result};
use crate::galois::Fq;
use crate::linalg;
use crate::mpoly::binary::binary_roots_coeffs;
use crate::mpoly::{MPoly, Mono, ProjPoint};
use crate::pencil::{
    cubic_discriminant, fiber_cubic, pencil_discriminant, pi_of_point, ramification_profile,
    QuarticWithLine,
};

pub(crate) use segre::segre_detect_with;
pub use segre::{
    segre_compose, segre_detect, segre_recover, segre_recover_with, SegreDecomposition,
    SingularLocusClass,
};
pub use surface::{
    flex_surface, residual_irreducibility, strip_tangent_planes, Certificate, FlexComponent,
    FlexRole, FlexSurface,
};

/// Hessian of the fiber cubic along `ℓ`, as a 3×3 matrix of binary forms in
/// `z = (x1, x2)`: the fiber through `z` is taken at `(s:t) = π(z)`.
fn hessian_along_line(x: &QuarticWithLine) -> [[MPoly; 3]; 3] {
    let a = |i, j| x.alpha(i, j);
    let s = a(0, 1);
    let t = -&a(1, 0);
    let d2 = |f: &MPoly, i: usize, j: usize| f.derivative(i).derivative(j);
    let xx = |i, j| &(&s * &d2(&a(1, 0), i, j)) + &(&t * &d2(&a(0, 1), i, j));
    let quad = [(2, 0), (1, 1), (0, 2)];
    let xu = |i: usize| {
        quad.iter().fold(MPoly::zero(s.ring()), |acc, &(p, q)| {
            &acc + &(&(&s.pow(p) * &t.pow(q)) * &a(p as u16, q as u16).derivative(i))
        })
    };
    let cubic = [(3, 0), (2, 1), (1, 2), (0, 3)];
    let uu = cubic
        .iter()
        .fold(MPoly::zero(s.ring()), |acc, &(p, q)| {
            &acc + &(&(&s.pow(p) * &t.pow(q)) * &a(p as u16, q as u16))
        })
        .scale(&Fq::from_u64(x.ctx(), 2));
    [
        [xx(0, 0), xx(0, 1), xu(0)],
        [xx(1, 0), xx(1, 1), xu(1)],
        [xu(0), xu(1), uu],
    ]
}

/// The line is of the second kind iff the point where `ℓ` meets each fiber
/// tangentially is a flex of that fiber, i.e. the fiber Hessian vanishes
/// identically along `ℓ`.
pub fn is_second_kind(x: &QuarticWithLine) -> bool {
    let h = hessian_along_line(x);
    let m =
        |a: usize, b: usize, c: usize, d: usize| &(&h[a][c] * &h[b][d]) - &(&h[a][d] * &h[b][c]);
    let det = &(&(&h[0][0] * &m(1, 2, 1, 2)) - &(&h[0][1] * &m(1, 2, 0, 2)))
        + &(&h[0][2] * &m(1, 2, 0, 1));
    det.is_zero()
}

/// Samples `n` smooth fibers and tests directly whether the points of `ℓ` on
/// them are flexes; returns whether the outcome agrees with [`is_second_kind`].
pub fn flex_cross_check(x: &QuarticWithLine, n: usize) -> Result<bool> {
    let base = x.ctx().clone();
    let delta = pencil_discriminant(x).ok();
    let mut found = 0;
    let mut all_flex = true;
    for v in 1..base.p().min(4096) {
        if found == n {
            break;
        }
        let s = Fq::from_u64(&base, v);
        if let Some(d) = &delta {
            if d.eval(&[s.clone(), Fq::one(&base)]).is_zero() {
                continue;
            }
        }
        let param = ProjPoint::finite(s);
        let c = fiber_cubic(x, &param);
        if cubic_discriminant(&c).map(|d| d.is_zero()).unwrap_or(true) {
            continue;
        }
        found += 1;
        let on_line: Vec<Fq> = (0..=3u16)
            .map(|i| c.coeff(&Mono::from_exps(&[i, 3 - i, 0])))
            .collect();
        let Ok((field, pts)) = binary_roots_coeffs(&on_line, 3) else {
            continue;
        };
        let hess: Vec<Vec<MPoly>> = (0..3)
            .map(|i| (0..3).map(|j| c.derivative(i).derivative(j)).collect())
            .collect();
        for (p, _) in pts {
            let pt = [p.a.clone(), p.b.clone(), Fq::zero(&field)];
            let hm: linalg::Mat = hess
                .iter()
                .map(|r| r.iter().map(|e| e.eval(&pt)).collect())
                .collect();
            if !linalg::det(&hm).is_zero() {
                all_flex = false;
            }
        }
    }
    if found < n {
        return Err(Error::TooFewSmoothFibers { found, wanted: n });
    }
    Ok(all_flex == is_second_kind(x))
}

/// Parameters of the fibers meeting `ℓ` in a single point, i.e. the images
/// of the doubled ramification points, sorted.
pub fn triple_contact_fibers(x: &QuarticWithLine) -> Result<Vec<ProjPoint>> {
    let prof = ramification_profile(x)?;
    let mut out: Vec<ProjPoint> = prof
        .doubled()
        .map(|p| pi_of_point(x, p).map(|q| q.minimal()))
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::{parse_poly, PolyRing};

    const Z_REFERENCE: &str = "x3*x1^3 + x4*x2^3 + 3*(2*x3^2 - x3*x4 + x4^2)*x1*x2 \
        + 4*(20*x3^4 + 5*x4^4 - 18*x3^3*x4 - 4*x3^2*x4^2 - 9*x3*x4^3)/3";

    fn quartic(s: &str) -> QuarticWithLine {
        let ctx = mk_prime_field(10007).unwrap();
        QuarticWithLine::new(parse_poly(s, &PolyRing::space(&ctx)).unwrap()).unwrap()
    }

    #[test]
    fn second_kind_verdicts() {
        assert!(is_second_kind(&quartic(Z_REFERENCE)));
        let perturbed = quartic(&format!("{Z_REFERENCE} + x1^2*x3^2"));
        assert!(!is_second_kind(&perturbed));
        assert!(flex_cross_check(&quartic(Z_REFERENCE), 5).unwrap());
        assert!(flex_cross_check(&perturbed, 5).unwrap());
    }

    #[test]
    fn z_has_two_triple_contact_fibers() {
        let t = triple_contact_fibers(&quartic(Z_REFERENCE)).unwrap();
        let s: Vec<String> = t.iter().map(|p| p.to_string()).collect();
        assert_eq!(s, ["(0:1)", "(1:0)"]);
    }
}
