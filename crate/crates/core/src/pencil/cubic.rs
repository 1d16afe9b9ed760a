//! Plane cubics: discriminant and Kodaira type of a singular fiber.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{embed_root, lcm, seeded_rng, FieldCtx, Fq};
use crate::linalg::{self, Mat};
use crate::mpoly::binary::{binary_roots_coeffs, root_multiplicities};
use crate::mpoly::upoly::{factor_univariate, roots, roots_in_splitting_field, UPoly};
use crate::mpoly::{resultant_formal, MPoly, Mono};

/// Fiber types that occur for plane cubics, plus a tag for non-reduced curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kodaira {
    #[serde(rename = "smooth")]
    Smooth,
    I1,
    I2,
    I3,
    II,
    III,
    IV,
    #[serde(rename = "nonreduced")]
    NonReduced,
}

impl Kodaira {
    /// Vanishing order of the discriminant at a fiber of this type.
    pub fn v_delta(self) -> Option<usize> {
        match self {
            Kodaira::Smooth => Some(0),
            Kodaira::I1 => Some(1),
            Kodaira::I2 | Kodaira::II => Some(2),
            Kodaira::I3 | Kodaira::III => Some(3),
            Kodaira::IV => Some(4),
            Kodaira::NonReduced => None,
        }
    }

    pub fn line_count(self) -> usize {
        match self {
            Kodaira::I3 | Kodaira::IV => 3,
            Kodaira::I2 | Kodaira::III => 1,
            _ => 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Kodaira::Smooth => "smooth",
            Kodaira::I1 => "I1",
            Kodaira::I2 => "I2",
            Kodaira::I3 => "I3",
            Kodaira::II => "II",
            Kodaira::III => "III",
            Kodaira::IV => "IV",
            Kodaira::NonReduced => "nonreduced",
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Result of [`classify_plane_cubic`]. Points and line forms live in `ctx`.
#[derive(Clone, Debug)]
pub struct CubicClass {
    pub kodaira: Kodaira,
    pub ctx: Arc<FieldCtx>,
    pub singular_points: Vec<Vec<Fq>>,
    pub lines: Vec<Vec<Fq>>,
}

fn check_cubic(c: &MPoly) -> Result<()> {
    if c.ring().nvars() != 3 || c.is_zero() || !c.is_homogeneous() || c.total_degree() != 3 {
        return Err(Error::NotCubic);
    }
    Ok(())
}

const QUAD: [[u16; 3]; 6] = [
    [2, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
];

fn hessian_det(c: &MPoly) -> MPoly {
    let h: Vec<Vec<MPoly>> = (0..3)
        .map(|i| (0..3).map(|j| c.derivative(i).derivative(j)).collect())
        .collect();
    let minor =
        |a: usize, b: usize, x: usize, y: usize| &(&h[a][x] * &h[b][y]) - &(&h[a][y] * &h[b][x]);
    &(&(&h[0][0] * &minor(1, 2, 1, 2)) - &(&h[0][1] * &minor(1, 2, 0, 2)))
        + &(&h[0][2] * &minor(1, 2, 0, 1))
}

/// Discriminant of a ternary cubic up to a nonzero constant (for `p > 3`):
/// the determinant of the coefficient matrix of the six quadrics
/// `∂C/∂xᵢ` and `∂H/∂xᵢ`, where `H` is the Hessian determinant.
pub fn cubic_discriminant(c: &MPoly) -> Result<Fq> {
    check_cubic(c)?;
    let h = hessian_det(c);
    let rows: Mat = (0..3)
        .map(|i| c.derivative(i))
        .chain((0..3).map(|i| h.derivative(i)))
        .map(|q| QUAD.iter().map(|e| q.coeff(&Mono::from_exps(e))).collect())
        .collect();
    Ok(linalg::det(&rows))
}

fn ext_for(a: &Arc<FieldCtx>, b: &Arc<FieldCtx>) -> Arc<FieldCtx> {
    a.extension(lcm(a.degree(), b.degree()))
}

fn embed_vec(v: &[Fq], target: &Arc<FieldCtx>) -> Vec<Fq> {
    v.iter()
        .map(|x| embed_root(x, target).expect("extension"))
        .collect()
}

/// `C(x, y, 1)` as a polynomial in `y` with `x := x0`.
fn specialize_x(c: &MPoly, x0: &Fq) -> UPoly {
    let ctx = x0.ctx().clone();
    let coeffs = c.coefficients_in(1);
    let vals = coeffs
        .iter()
        .map(|k| {
            let mut acc = Fq::zero(&ctx);
            for (m, v) in k.terms() {
                acc += &(&embed_root(v, &ctx).unwrap() * &x0.pow(m.0[0] as u64));
            }
            acc
        })
        .collect();
    UPoly::from_coeffs(&ctx, vals)
}

/// Singular points over a splitting field, or `None` when the singular locus
/// is not finite (a repeated component).
pub fn singular_points(c: &MPoly) -> Option<(Arc<FieldCtx>, Vec<Vec<Fq>>)> {
    let base = c.ctx().clone();
    let pf = base.prime_field();
    let ring = c.ring().clone();
    let mut rng = seeded_rng(base.seed(), 0x5349_4e47);
    for _ in 0..24 {
        let m: Mat = (0..3)
            .map(|_| {
                (0..3)
                    .map(|_| Fq::from_u64(&base, rng.gen_range(0..pf.p())))
                    .collect()
            })
            .collect();
        if linalg::det(&m).is_zero() {
            continue;
        }
        let images: Vec<MPoly> = m.iter().map(|row| MPoly::linear(&ring, row)).collect();
        let c2 = c.compose(&images);
        if c2.coeff(&Mono::var(1, 3)).is_zero() {
            continue;
        }
        let at_infinity: Vec<Fq> = (0..=3u16)
            .map(|i| c2.coeff(&Mono::from_exps(&[i, 3 - i, 0])))
            .collect();
        if root_multiplicities(&at_infinity, 3).ok().as_deref() != Some(&[1, 1, 1][..]) {
            continue;
        }
        let one = MPoly::one(&ring);
        let affine = [MPoly::var(&ring, 0), MPoly::var(&ring, 1), one];
        let g = c2.compose(&affine);
        let gx = c2.derivative(0).compose(&affine);
        let gy = c2.derivative(1).compose(&affine);
        let r = resultant_formal(&gy, &gx, 1, 2, 2).expect("nonzero partials");
        if r.is_zero() {
            continue;
        }
        let r = r.to_upoly(0);
        if r.deg() == 0 {
            return Some((base, Vec::new()));
        }
        let (mut field, xs) = roots_in_splitting_field(&r).ok()?;
        let mut xs: Vec<Fq> = xs.into_iter().map(|(x, _)| x).collect();
        'grow: loop {
            let mut pts = Vec::new();
            for x0 in &xs {
                let common = specialize_x(&g, x0)
                    .gcd(&specialize_x(&gx, x0))
                    .gcd(&specialize_x(&gy, x0));
                if common.deg() == 0 {
                    continue;
                }
                let fac = factor_univariate(&common).ok()?;
                let e = fac.factors.iter().fold(1, |acc, (f, _)| lcm(acc, f.deg()));
                if e > 1 {
                    field = field.extension(field.degree() * e);
                    xs = xs.iter().map(|x| embed_root(x, &field).unwrap()).collect();
                    continue 'grow;
                }
                for (y0, _) in roots(&common) {
                    let local = [x0.clone(), y0, Fq::one(&field)];
                    let mm = linalg::embed_mat(&m, &field).unwrap();
                    pts.push(linalg::normalize_first(&linalg::mat_vec(&mm, &local)));
                }
            }
            pts.sort();
            pts.dedup();
            return Some((field, pts));
        }
    }
    None
}

fn eval_hessian(c: &MPoly, pt: &[Fq]) -> Mat {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| c.derivative(i).derivative(j).eval(pt))
                .collect()
        })
        .collect()
}

/// Whether `C` vanishes identically on the line `w·x = 0`.
fn contains_line(c: &MPoly, w: &[Fq]) -> bool {
    let ctx = w[0].ctx().clone();
    let k = linalg::kernel(&vec![w.to_vec()], 3, &ctx);
    (0..4u64).all(|i| {
        let lam = Fq::from_u64(&ctx, i);
        let pt: Vec<Fq> = (0..3).map(|j| &k[0][j] + &(&lam * &k[1][j])).collect();
        c.eval(&pt).is_zero()
    }) && c.eval(&k[1]).is_zero()
}

/// Kodaira type of a plane cubic from its singular points: none → smooth;
/// one node → I1; one cusp → II, or III when the tangent line is a component;
/// two → I2; three → I3; one triple point on three distinct lines → IV;
/// anything with a repeated component → non-reduced.
pub fn classify_plane_cubic(c: &MPoly) -> Result<CubicClass> {
    check_cubic(c)?;
    let base = c.ctx().clone();
    let Some((field, pts)) = singular_points(c) else {
        return Ok(CubicClass {
            kodaira: Kodaira::NonReduced,
            ctx: base,
            singular_points: Vec::new(),
            lines: Vec::new(),
        });
    };
    let class =
        |k: Kodaira, ctx: &Arc<FieldCtx>, pts: Vec<Vec<Fq>>, lines: Vec<Vec<Fq>>| CubicClass {
            kodaira: k,
            ctx: ctx.clone(),
            singular_points: pts,
            lines: lines.iter().map(|l| linalg::normalize_first(l)).collect(),
        };
    match pts.len() {
        0 => Ok(class(Kodaira::Smooth, &field, pts, vec![])),
        1 => {
            let h = eval_hessian(c, &pts[0]);
            match linalg::rank(&h) {
                2 => Ok(class(Kodaira::I1, &field, pts, vec![])),
                1 => {
                    let w = h
                        .iter()
                        .find(|r| r.iter().any(|x| !x.is_zero()))
                        .unwrap()
                        .clone();
                    if contains_line(c, &w) {
                        Ok(class(Kodaira::III, &field, pts, vec![w]))
                    } else {
                        Ok(class(Kodaira::II, &field, pts, vec![]))
                    }
                }
                _ => {
                    let p = &pts[0];
                    let k = (0..3).find(|&i| !p[i].is_zero()).unwrap();
                    let (i, j) = match k {
                        0 => (1, 2),
                        1 => (0, 2),
                        _ => (0, 1),
                    };
                    let coeffs: Vec<Fq> = (0..=3u16)
                        .map(|a| {
                            let mut e = [0u16; 3];
                            e[i] = a;
                            e[j] = 3 - a;
                            c.coeff(&Mono::from_exps(&e))
                        })
                        .collect();
                    let (rf, rts) = binary_roots_coeffs(&coeffs, 3)?;
                    if rts.len() != 3 {
                        return Ok(class(Kodaira::NonReduced, &field, pts, vec![]));
                    }
                    let target = ext_for(&field, &rf);
                    let p = embed_vec(p, &target);
                    let lines = rts
                        .iter()
                        .map(|(r, _)| {
                            let mut q = vec![Fq::zero(&target); 3];
                            q[i] = embed_root(&r.a, &target).unwrap();
                            q[j] = embed_root(&r.b, &target).unwrap();
                            linalg::cross3(&p, &q).to_vec()
                        })
                        .collect();
                    Ok(class(Kodaira::IV, &target, vec![p], lines))
                }
            }
        }
        2 => {
            let l = linalg::cross3(&pts[0], &pts[1]).to_vec();
            Ok(class(Kodaira::I2, &field, pts, vec![l]))
        }
        3 => {
            let ls: Vec<Vec<Fq>> = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .map(|&(a, b)| linalg::cross3(&pts[a], &pts[b]).to_vec())
                .collect();
            if linalg::rank(&pts) < 3 {
                return Ok(class(Kodaira::NonReduced, &field, pts, vec![]));
            }
            Ok(class(Kodaira::I3, &field, pts, ls))
        }
        _ => Ok(class(Kodaira::NonReduced, &field, pts, vec![])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::parse_poly;
    use crate::pencil::plane_ring;

    fn kind(s: &str) -> Kodaira {
        let ctx = mk_prime_field(10007).unwrap();
        let c = parse_poly(s, &plane_ring(&ctx)).unwrap();
        classify_plane_cubic(&c).unwrap().kodaira
    }

    #[test]
    fn normal_forms() {
        assert_eq!(kind("x1*x2*(x1+x2+u)"), Kodaira::I3);
        assert_eq!(kind("x1*x2*(x1+x2)"), Kodaira::IV);
        assert_eq!(kind("x2^2*u - x1^3"), Kodaira::II);
        assert_eq!(kind("x2^2*u - x1^2*(x1+u)"), Kodaira::I1);
        assert_eq!(kind("(x1*u - x2^2)*u"), Kodaira::III);
        assert_eq!(kind("(x1^2+x2^2-u^2)*x1"), Kodaira::I2);
        assert_eq!(kind("x2^2*u - x1^3 - x1*u^2 - u^3"), Kodaira::Smooth);
        assert_eq!(kind("x1^2*x2"), Kodaira::NonReduced);
        assert_eq!(kind("x1^3"), Kodaira::NonReduced);
    }

    #[test]
    fn line_components_are_factors() {
        let ctx = mk_prime_field(10007).unwrap();
        let ring = plane_ring(&ctx);
        for s in [
            "x1*x2*(x1+x2+u)",
            "x1*x2*(x1+x2)",
            "(x1*u - x2^2)*u",
            "(x1^2+x2^2-u^2)*x1",
            "x1^3 + x2^3",
        ] {
            let c = parse_poly(s, &ring).unwrap();
            let cl = classify_plane_cubic(&c).unwrap();
            assert_eq!(cl.lines.len(), cl.kodaira.line_count(), "{s}");
            for l in &cl.lines {
                assert!(contains_line(&c, l), "{s}");
            }
        }
    }

    #[test]
    fn discriminant_of_weierstrass_family() {
        let ctx = mk_prime_field(10007).unwrap();
        let ring = plane_ring(&ctx);
        for a in 0..6i64 {
            let c = parse_poly(&format!("x2^2*u - x1^3 - {a}*x1*u^2 - u^3"), &ring).unwrap();
            let d = cubic_discriminant(&c).unwrap();
            let expect = Fq::from_i64(&ctx, -221184 * (4 * a * a * a + 27));
            assert_eq!(d, expect);
        }
        for s in ["x2^2*u - x1^3", "x2^2*u - x1^2*(x1+u)", "x1*x2*(x1+x2+u)"] {
            let c = parse_poly(s, &ring).unwrap();
            assert!(cubic_discriminant(&c).unwrap().is_zero());
        }
    }
}
