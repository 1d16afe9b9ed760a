//! Segre's construction `X = S + L₁·L₂·L₃·L₄` and its inverse.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{embed_root, lcm, FieldCtx, Fq};
use crate::linalg;
use crate::mpoly::{MPoly, Mono, PolyRing, ProjPoint};
use crate::pencil::ramification_profile;
use crate::pencil::{
    is_smooth, singular_fiber_table, FiberRecord, Kodaira, QuarticWithLine, RamificationProfile,
};

use super::surface::{flex_surface, strip_tangent_planes, FlexSurface};
use super::{is_second_kind, triple_contact_fibers};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularLocusClass {
    #[serde(rename = "line-of-triple-points")]
    LineOfTriplePoints,
    #[serde(rename = "twisted-cubic")]
    TwistedCubic,
}

/// `f = λ·S₄ + L₁·L₂·L₃·L₄` with `S₄` scaled so that its lexicographically
/// first monomial has coefficient one. Plane `j` is `c3·x3 + c4·x4` with
/// `planes[j] = [c3, c4]` over `planes_ctx`.
#[derive(Clone, Debug)]
pub struct SegreDecomposition {
    pub lambda: Fq,
    pub s4: MPoly,
    pub planes: Vec<[Fq; 2]>,
    pub planes_ctx: Arc<FieldCtx>,
    pub class: SingularLocusClass,
}

impl SegreDecomposition {
    pub fn plane_forms(&self) -> Vec<MPoly> {
        let ring = PolyRing::space(&self.planes_ctx);
        let z = Fq::zero(&self.planes_ctx);
        self.planes
            .iter()
            .map(|[a, b]| MPoly::linear(&ring, &[z.clone(), z.clone(), a.clone(), b.clone()]))
            .collect()
    }

    /// Checks `λ·S₄ + ΠLⱼ = f` over the field of the planes.
    pub fn verify(&self, f: &MPoly) -> bool {
        let prod = self
            .plane_forms()
            .iter()
            .fold(MPoly::one(&PolyRing::space(&self.planes_ctx)), |a, b| {
                &a * b
            });
        let lhs = &self.s4.scale(&self.lambda).embed(&self.planes_ctx).unwrap() + &prod;
        f.embed(&self.planes_ctx).map(|g| g == lhs).unwrap_or(false)
    }
}

fn plane_row(l: &MPoly) -> Result<Vec<Fq>> {
    if l.ring().nvars() != 4 || !l.is_homogeneous() || l.total_degree() != 1 {
        return Err(Error::Invalid(
            "planes must be linear forms in x1..x4".into(),
        ));
    }
    Ok((0..4).map(|i| l.coeff(&Mono::var(i, 1))).collect())
}

/// Builds `S + L₁·L₂·L₃·L₄` from a quartic `S` ruled over the directrix
/// `V(x3, x4)` and four distinct planes through it. Planes may be defined
/// over an extension as long as their product is defined over the field of `S`.
pub fn segre_compose(s: &MPoly, planes: &[MPoly]) -> Result<QuarticWithLine> {
    if planes.len() != 4 {
        return Err(Error::Invalid("exactly four planes are required".into()));
    }
    let rows: Vec<Vec<Fq>> = planes.iter().map(plane_row).collect::<Result<_>>()?;
    if rows.iter().any(|r| !r[0].is_zero() || !r[1].is_zero()) {
        return Err(Error::PlaneMissesLine);
    }
    let field = rows.iter().fold(s.ctx().clone(), |acc, r| {
        let k = lcm(acc.degree(), r[2].ctx().degree());
        acc.extension(k)
    });
    let rows: Vec<Vec<Fq>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| embed_root(c, &field))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    for i in 0..4 {
        for j in i + 1..4 {
            if linalg::rank(&vec![rows[i].clone(), rows[j].clone()]) < 2 {
                return Err(Error::CoincidentPlanes);
            }
        }
    }
    let ruled = QuarticWithLine::new(s.clone())?;
    if !ruled.smooth_along_line() {
        return Err(Error::RuledSingularOnLine);
    }
    let ring = PolyRing::space(&field);
    let prod = rows
        .iter()
        .fold(MPoly::one(&ring), |acc, r| &acc * &MPoly::linear(&ring, r));
    let prod = prod.descend(s.ctx()).ok_or_else(|| {
        Error::Invalid("product of planes is not defined over the base field".into())
    })?;
    let x = QuarticWithLine::new(s + &prod)?;
    if !is_second_kind(&x) {
        return Err(Error::NotSecondKind);
    }
    Ok(x)
}

fn kodaira_at(table: &[FiberRecord], param: &ProjPoint) -> Option<Kodaira> {
    table
        .iter()
        .find(|r| r.param.minimal() == *param)
        .map(|r| r.kodaira)
}

/// Whether every fiber meeting `ℓ` in a single point is of type IV.
pub fn segre_detect(x: &QuarticWithLine) -> Result<bool> {
    if !is_smooth(x).smooth {
        return Err(Error::SingularSurface);
    }
    if !is_second_kind(x) {
        return Err(Error::NotSecondKind);
    }
    let table = singular_fiber_table(x)?;
    segre_detect_with(x, &table)
}

pub(crate) fn segre_detect_with(x: &QuarticWithLine, table: &[FiberRecord]) -> Result<bool> {
    Ok(triple_contact_fibers(x)?
        .iter()
        .all(|p| kodaira_at(table, p) == Some(Kodaira::IV)))
}

/// Recovers `λ`, `S₄` and the four planes of a Segre decomposition.
pub fn segre_recover(x: &QuarticWithLine) -> Result<SegreDecomposition> {
    if !segre_detect(x)? {
        return Err(Error::NotDecomposable);
    }
    let table = singular_fiber_table(x)?;
    let prof = ramification_profile(x)?;
    let flex = flex_surface(x, &prof)?;
    segre_recover_with(x, &table, &prof, &flex)
}

/// [`segre_recover`] from precomputed fiber table, ramification and flex surface.
pub fn segre_recover_with(
    x: &QuarticWithLine,
    table: &[FiberRecord],
    prof: &RamificationProfile,
    flex: &FlexSurface,
) -> Result<SegreDecomposition> {
    if !segre_detect_with(x, table)? {
        return Err(Error::NotDecomposable);
    }
    let base = x.ctx().clone();
    let s4 = strip_tangent_planes(flex, prof, x)?;
    if s4.total_degree() != 4 {
        return Err(Error::ResidualNotQuartic(s4.total_degree() as usize));
    }
    let s4 = s4.lex_monic();
    let tangent: Vec<ProjPoint> = prof
        .points
        .iter()
        .map(|(p, _)| crate::pencil::pi_of_point(x, p).map(|q| q.minimal()))
        .collect::<Result<_>>()?;
    let carriers: Vec<&FiberRecord> = table
        .iter()
        .filter(|r| {
            matches!(r.kodaira, Kodaira::I3 | Kodaira::IV) && !tangent.contains(&r.param.minimal())
        })
        .collect();
    if carriers.len() != 4 {
        return Err(Error::NotDecomposable);
    }
    let class = if carriers.iter().all(|r| r.kodaira == Kodaira::IV) {
        SingularLocusClass::LineOfTriplePoints
    } else if carriers.iter().all(|r| r.kodaira == Kodaira::I3) {
        SingularLocusClass::TwistedCubic
    } else {
        return Err(Error::UnexpectedPattern(
            "mixed fiber types on the Segre planes".into(),
        ));
    };
    let field = carriers.iter().fold(base.clone(), |acc, r| {
        acc.extension(lcm(acc.degree(), r.param.field_degree()))
    });
    let mut planes: Vec<[Fq; 2]> = carriers
        .iter()
        .map(|r| {
            let p = r.param.embed(&field).expect("extension");
            [p.b.clone(), -&p.a]
        })
        .collect();

    let f = x.f();
    let (m, c) = s4
        .terms()
        .find(|(m, _)| m.0[0] + m.0[1] > 0)
        .map(|(m, c)| (*m, c.clone()))
        .ok_or(Error::IdentityFailed)?;
    let lambda = f.coeff(&m).checked_div(&c)?;
    let rest = f - &s4.scale(&lambda);
    if rest.terms().any(|(m, _)| m.0[0] + m.0[1] > 0) || rest.is_zero() {
        return Err(Error::IdentityFailed);
    }
    let ring = PolyRing::space(&field);
    let z = Fq::zero(&field);
    let prod = planes.iter().fold(MPoly::one(&ring), |acc, [a, b]| {
        &acc * &MPoly::linear(&ring, &[z.clone(), z.clone(), a.clone(), b.clone()])
    });
    let rest_l = rest.embed(&field)?;
    let (pm, pc) = prod.leading_term().ok_or(Error::IdentityFailed)?;
    let mu = rest_l.coeff(&pm).checked_div(&pc)?;
    if mu.is_zero() {
        return Err(Error::IdentityFailed);
    }
    planes[0] = [&planes[0][0] * &mu, &planes[0][1] * &mu];
    let dec = SegreDecomposition {
        lambda,
        s4,
        planes,
        planes_ctx: field,
        class,
    };
    if !dec.verify(f) {
        return Err(Error::IdentityFailed);
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::parse_poly;

    #[test]
    fn compose_errors() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::space(&ctx);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let s = p("x3*x1^3 + x4*x2^3");
        let coincident = [p("x3"), p("x3"), p("x4"), p("x4")];
        assert_eq!(
            segre_compose(&s, &coincident).unwrap_err(),
            Error::CoincidentPlanes
        );
        let miss = [p("x1"), p("x3"), p("x4"), p("x3+x4")];
        assert_eq!(
            segre_compose(&s, &miss).unwrap_err(),
            Error::PlaneMissesLine
        );
        let planes = [p("x3+x4"), p("x3-x4"), p("x3+2*x4"), p("x3-2*x4")];
        let singular = p("x3*x1^2*x2 + x4*x1*x2^2");
        assert_eq!(
            segre_compose(&singular, &planes).unwrap_err(),
            Error::RuledSingularOnLine
        );
    }

    #[test]
    fn fermat_type_roundtrip() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::space(&ctx);
        let f = parse_poly("x3*x1^3 + x4*x2^3 + x3^4 + x4^4", &r).unwrap();
        let x = QuarticWithLine::new(f.clone()).unwrap();
        assert!(segre_detect(&x).unwrap());
        let dec = segre_recover(&x).unwrap();
        assert!(dec.verify(&f));
        assert_eq!(dec.lambda, Fq::one(&ctx));
        assert_eq!(dec.s4, parse_poly("x3*x1^3 + x4*x2^3", &r).unwrap());
        assert_eq!(dec.class, SingularLocusClass::LineOfTriplePoints);
    }
}
