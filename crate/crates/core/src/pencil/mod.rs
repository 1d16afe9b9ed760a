//! A quartic surface together with a line on it, and the elliptic fibration
//! cut out by the planes through that line.
//!
//! Coordinates are always normalized so that the line is `V(x3, x4)`. The
//! plane `H_(s:t) = V(t·x3 − s·x4)` is parametrized by `(x1 : x2 : s·u : t·u)`,
//! so the base coordinate `(s:t)` literally equals `(x3:x4)`.

pub mod cubic;
mod discriminant;
mod fibers;
mod lines;
pub mod oracle;
mod ramification;
mod smooth;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{descend, embed_root, lcm, FieldCtx, Fq};
use crate::linalg::{self, Mat};
use crate::mpoly::{resultant_formal, MPoly, Mono, PolyRing, ProjPoint, Ring};

pub use cubic::{classify_plane_cubic, cubic_discriminant, CubicClass, Kodaira};
pub use discriminant::pencil_discriminant;
pub use fibers::{
    contact_pattern, fiber_record_at, fiber_type_summary, singular_fiber_table, FiberRecord,
};
pub use lines::{lines_meeting_line, LinesMeeting};
pub use ramification::{
    pi_of_point, ramification_profile, wronskian, RamificationProfile, RamificationType,
};
pub use smooth::{is_smooth, SmoothnessVerdict};

pub(crate) use fibers::singular_fiber_table_from;
pub(crate) use lines::lines_from_table;
pub(crate) use smooth::verdict_from_table;

/// A quartic `f` in coordinates where the line is `V(x3, x4)`.
#[derive(Clone)]
pub struct QuarticWithLine {
    f: MPoly,
    alpha: BTreeMap<(u16, u16), MPoly>,
    transform: Mat,
    note: String,
}

impl fmt::Debug for QuarticWithLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuarticWithLine({})", self.f)
    }
}

/// Ring `F[x1, x2]` carrying the coefficient forms `α_ij`.
pub fn line_ring(ctx: &Arc<FieldCtx>) -> Ring {
    PolyRing::new(ctx, &["x1", "x2"])
}

/// Ring `F[x1, x2, u]` of fiber cubics.
pub fn plane_ring(ctx: &Arc<FieldCtx>) -> Ring {
    PolyRing::new(ctx, &["x1", "x2", "u"])
}

/// Ring `F[s, t]` of forms on the base of the pencil.
pub fn base_ring(ctx: &Arc<FieldCtx>) -> Ring {
    PolyRing::new(ctx, &["s", "t"])
}

impl QuarticWithLine {
    /// Wraps a quartic that already contains `V(x3, x4)`.
    pub fn new(f: MPoly) -> Result<QuarticWithLine> {
        let ctx = f.ctx().clone();
        QuarticWithLine::with_transform(f, linalg::identity(&ctx, 4), "identity".into())
    }

    fn with_transform(f: MPoly, transform: Mat, note: String) -> Result<QuarticWithLine> {
        if f.ring().nvars() != 4 || !f.is_homogeneous() || f.total_degree() != 4 || f.is_zero() {
            return Err(Error::Invalid(
                "expected a homogeneous quartic in x1..x4".into(),
            ));
        }
        let lr = line_ring(f.ctx());
        let mut alpha: BTreeMap<(u16, u16), MPoly> = BTreeMap::new();
        for (m, c) in f.terms() {
            let (i, j) = (m.0[2], m.0[3]);
            if i + j == 0 {
                return Err(Error::LineNotOnSurface);
            }
            let entry = alpha.entry((i, j)).or_insert_with(|| MPoly::zero(&lr));
            *entry = &*entry + &MPoly::monomial(&lr, c.clone(), Mono::from_exps(&[m.0[0], m.0[1]]));
        }
        Ok(QuarticWithLine {
            f,
            alpha,
            transform,
            note,
        })
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.f.ctx()
    }

    /// `α_ij(x1, x2)`, the coefficient of `x3^i x4^j`.
    pub fn alpha(&self, i: u16, j: u16) -> MPoly {
        self.alpha
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| MPoly::zero(&line_ring(self.ctx())))
    }

    /// Matrix `N` with normalized coordinates `y = N·x`.
    pub fn transform(&self) -> &Mat {
        &self.transform
    }

    pub fn note(&self) -> &str {
        &self.note
    }

    /// The quartic in the caller's original coordinates.
    pub fn original(&self) -> MPoly {
        self.f
            .substitute_linear(&self.transform)
            .expect("normalizing transform is invertible")
    }

    /// Point in normalized coordinates to original coordinates.
    pub fn point_to_original(&self, y: &[Fq]) -> Vec<Fq> {
        let ninv = linalg::inverse(&self.transform).expect("invertible");
        let ninv = linalg::embed_mat(&ninv, y[0].ctx()).expect("extension");
        linalg::normalize_first(&linalg::mat_vec(&ninv, y))
    }

    /// Linear form (covector) in normalized coordinates to original coordinates.
    pub fn form_to_original(&self, a: &[Fq]) -> Vec<Fq> {
        let n = linalg::embed_mat(&self.transform, a[0].ctx()).expect("extension");
        linalg::normalize_first(&linalg::vec_mat(a, &n))
    }

    /// `gcd(α10, α01) = 1`, i.e. the surface is smooth at every point of the line.
    pub fn smooth_along_line(&self) -> bool {
        let a = self.alpha(1, 0);
        let b = self.alpha(0, 1);
        if a.is_zero() || b.is_zero() {
            return false;
        }
        !resultant_formal(&a, &b, 0, 3, 3)
            .expect("nonzero inputs")
            .is_zero()
    }
}

/// Moves `ℓ = V(l1, l2)` to `V(x3, x4)`.
///
/// Returns the normalized quartic and the matrix `N` whose rows are two
/// complementary coordinate covectors followed by `l1`, `l2`; new coordinates
/// are `y = N·x`.
pub fn normalize_line(f: &MPoly, l1: &MPoly, l2: &MPoly) -> Result<(QuarticWithLine, Mat)> {
    let ctx = f.ctx().clone();
    let row = |l: &MPoly| -> Result<Vec<Fq>> {
        if !l.is_homogeneous() || l.total_degree() != 1 || l.ring().nvars() != 4 {
            return Err(Error::DegenerateLine);
        }
        Ok((0..4).map(|i| l.coeff(&Mono::var(i, 1))).collect())
    };
    let (r1, r2) = (row(l1)?, row(l2)?);
    if linalg::rank(&vec![r1.clone(), r2.clone()]) < 2 {
        return Err(Error::DegenerateLine);
    }
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    for i in 0..4 {
        if rows.len() == 2 {
            break;
        }
        let e: Vec<Fq> = (0..4)
            .map(|j| {
                if i == j {
                    Fq::one(&ctx)
                } else {
                    Fq::zero(&ctx)
                }
            })
            .collect();
        let mut trial = rows.clone();
        trial.push(e.clone());
        trial.push(r1.clone());
        trial.push(r2.clone());
        if linalg::rank(&trial) == trial.len() {
            rows.push(e);
        }
    }
    rows.push(r1);
    rows.push(r2);
    let ninv = linalg::inverse(&rows)?;
    let g = f.substitute_linear(&ninv)?;
    let identity = linalg::identity(&ctx, 4) == rows;
    let note = if identity {
        "identity".to_string()
    } else {
        "y = N x with rows (complement, l1, l2)".to_string()
    };
    let x = QuarticWithLine::with_transform(g, rows.clone(), note)?;
    Ok((x, rows))
}

/// The residual cubic `f(x1, x2, s·u, t·u)/u` of the plane `H_(s:t)`, in
/// `F[x1, x2, u]` over the field of the parameter.
pub fn fiber_cubic(x: &QuarticWithLine, param: &ProjPoint) -> MPoly {
    let ctx = param.ctx().clone();
    let ring = plane_ring(&ctx);
    let mut out = MPoly::zero(&ring);
    let (s, t) = (&param.a, &param.b);
    for (&(i, j), a) in &x.alpha {
        let scale = &s.pow(i as u64) * &t.pow(j as u64);
        if scale.is_zero() {
            continue;
        }
        let ue = i + j - 1;
        for (m, c) in a.terms() {
            let c = embed_root(c, &ctx).expect("parameter field extends base") * &scale;
            out = &out + &MPoly::monomial(&ring, c, Mono::from_exps(&[m.0[0], m.0[1], ue]));
        }
    }
    out
}

/// Point `(x1 : x2 : u)` of the plane `H_(s:t)` as a point of P³.
pub fn plane_point_to_space(param: &ProjPoint, pt: &[Fq]) -> Vec<Fq> {
    let ctx = pt[0].ctx();
    let s = embed_root(&param.a, ctx).unwrap();
    let t = embed_root(&param.b, ctx).unwrap();
    linalg::normalize_first(&[pt[0].clone(), pt[1].clone(), &s * &pt[2], &t * &pt[2]])
}

/// Linear form `a·x1 + b·x2 + c·u` on `H_(s:t)` as a line of P³.
pub fn plane_line_to_space(param: &ProjPoint, form: &[Fq]) -> LineP3 {
    let ctx = form[0].ctx().clone();
    let s = embed_root(&param.a, &ctx).unwrap();
    let t = embed_root(&param.b, &ctx).unwrap();
    let z = Fq::zero(&ctx);
    let plane = vec![z.clone(), z.clone(), t.clone(), -&s];
    let second = if param.is_infinity() {
        vec![form[0].clone(), form[1].clone(), form[2].clone(), z]
    } else {
        vec![form[0].clone(), form[1].clone(), z, form[2].clone()]
    };
    LineP3::from_equations(&plane, &second)
}

/// A line of P³ stored as the reduced row echelon form of two linear equations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LineP3 {
    eqs: [Vec<Fq>; 2],
}

impl LineP3 {
    pub fn from_equations(a: &[Fq], b: &[Fq]) -> LineP3 {
        let (m, piv) = linalg::rref(&vec![a.to_vec(), b.to_vec()]);
        assert_eq!(piv.len(), 2, "dependent equations do not define a line");
        LineP3 {
            eqs: [m[0].clone(), m[1].clone()],
        }
    }

    /// The line spanned by two distinct points.
    pub fn through_points(p: &[Fq], q: &[Fq]) -> LineP3 {
        let ctx = p[0].ctx().clone();
        let k = linalg::kernel(&vec![p.to_vec(), q.to_vec()], 4, &ctx);
        assert_eq!(k.len(), 2, "points must be distinct");
        LineP3::from_equations(&k[0], &k[1])
    }

    pub fn equations(&self) -> &[Vec<Fq>; 2] {
        &self.eqs
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.eqs[0][0].ctx()
    }

    pub fn contains(&self, pt: &[Fq]) -> bool {
        self.eqs.iter().all(|e| {
            let mut acc = Fq::zero(pt[0].ctx());
            for (a, b) in e.iter().zip(pt) {
                acc += &(a * b);
            }
            acc.is_zero()
        })
    }

    pub fn frobenius(&self) -> LineP3 {
        LineP3 {
            eqs: [
                self.eqs[0].iter().map(|c| c.frobenius()).collect(),
                self.eqs[1].iter().map(|c| c.frobenius()).collect(),
            ],
        }
    }

    /// Degree over `F_p` of the field of definition.
    pub fn field_degree(&self) -> usize {
        self.eqs
            .iter()
            .flatten()
            .fold(1, |acc, c| lcm(acc, c.minimal_degree()))
    }

    pub fn embed(&self, target: &Arc<FieldCtx>) -> Result<LineP3> {
        let e = |v: &Vec<Fq>| {
            v.iter()
                .map(|c| embed_root(c, target))
                .collect::<Result<Vec<_>>>()
        };
        Ok(LineP3 {
            eqs: [e(&self.eqs[0])?, e(&self.eqs[1])?],
        })
    }

    /// The same line over its field of definition.
    pub fn minimal(&self) -> LineP3 {
        let d = self.field_degree();
        let sub = self.ctx().extension(d);
        let e = |v: &Vec<Fq>| {
            v.iter()
                .map(|c| descend(c, &sub).expect("field of definition"))
                .collect()
        };
        LineP3 {
            eqs: [e(&self.eqs[0]), e(&self.eqs[1])],
        }
    }

    /// Applies `covector ↦ covector·N` to both equations.
    pub fn transform_forms(&self, n: &Mat) -> LineP3 {
        let n = linalg::embed_mat(n, self.ctx()).expect("extension");
        LineP3::from_equations(
            &linalg::vec_mat(&self.eqs[0], &n),
            &linalg::vec_mat(&self.eqs[1], &n),
        )
    }

    /// Two points spanning the line.
    pub fn points(&self) -> [Vec<Fq>; 2] {
        let k = linalg::kernel(&self.eqs.to_vec(), 4, self.ctx());
        [k[0].clone(), k[1].clone()]
    }

    pub fn to_serial(&self) -> LineSerial {
        let m = self.minimal();
        LineSerial {
            field_degree: m.ctx().degree(),
            modulus: m.ctx().modulus().to_vec(),
            equations: m
                .eqs
                .iter()
                .map(|e| e.iter().map(|c| c.coeffs().to_vec()).collect())
                .collect(),
            text: m.to_string(),
        }
    }
}

impl fmt::Debug for LineP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LineP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = PolyRing::space(self.ctx());
        write!(
            f,
            "{}; {}",
            MPoly::linear(&ring, &self.eqs[0]),
            MPoly::linear(&ring, &self.eqs[1])
        )
    }
}

/// JSON form of a line: equations over its field of definition.
#[derive(Clone, Debug, Serialize)]
pub struct LineSerial {
    pub field_degree: usize,
    pub modulus: Vec<u64>,
    pub equations: Vec<Vec<Vec<u64>>>,
    pub text: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::parse_poly;

    #[test]
    fn normalize_examples() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::space(&ctx);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let f = p("x3*x1^3 + x4*x2^3 + x3^4 + x4^4");
        let (x, n) = normalize_line(&f, &p("x3"), &p("x4")).unwrap();
        assert_eq!(n, linalg::identity(&ctx, 4));
        assert_eq!(x.f(), &f);
        let g = p("x1*x3^3 + x2*x4^3 + x1^4 + x2^4");
        let (y, n) = normalize_line(&g, &p("x1"), &p("x2")).unwrap();
        let swap = linalg::from_u64(
            &ctx,
            &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]],
        );
        assert_eq!(n, swap);
        assert_eq!(y.f(), &f);
        assert_eq!(y.original(), g);
        let fermat = p("x1^4 + x2^4 + x3^4 + x4^4");
        assert_eq!(
            normalize_line(&fermat, &p("x3"), &p("x4")).unwrap_err(),
            Error::LineNotOnSurface
        );
        assert_eq!(
            normalize_line(&f, &p("x3"), &p("2*x3")).unwrap_err(),
            Error::DegenerateLine
        );
    }

    #[test]
    fn fiber_cubic_of_z_family() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::space(&ctx);
        let f = parse_poly("x3*x1^3 + x4*x2^3", &r).unwrap();
        let x = QuarticWithLine::new(f).unwrap();
        let one = ProjPoint::finite(Fq::one(&ctx));
        let c = fiber_cubic(&x, &one);
        assert_eq!(c, parse_poly("x1^3 + x2^3", &plane_ring(&ctx)).unwrap());
        assert!(x.smooth_along_line());
    }
}
