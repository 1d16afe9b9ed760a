use crate::error::Result;
use crate::galois::{embed_root, Fq};
use crate::mpoly::binary::root_multiplicities;
use crate::mpoly::upoly::{factor_univariate, roots};
use crate::mpoly::{MPoly, ProjPoint};

use super::cubic::{classify_plane_cubic, Kodaira};
use super::discriminant::pencil_discriminant;
use super::{fiber_cubic, plane_line_to_space, plane_point_to_space, LineP3, QuarticWithLine};

/// One singular fiber of the pencil through `ℓ`. Geometry is in normalized
/// coordinates of P³.
#[derive(Clone, Debug)]
pub struct FiberRecord {
    pub param: ProjPoint,
    pub v_delta: usize,
    pub kodaira: Kodaira,
    pub components: Vec<LineP3>,
    /// Multiplicities of the points where the fiber meets `ℓ`, decreasing.
    pub contact: Vec<usize>,
    pub singular_points: Vec<Vec<Fq>>,
}

impl FiberRecord {
    /// `vΔ` agrees with the Kodaira type and the line count with the components.
    pub fn table_consistent(&self) -> bool {
        self.kodaira.v_delta() == Some(self.v_delta)
            && self.components.len() == self.kodaira.line_count()
    }

    fn frobenius(&self) -> FiberRecord {
        FiberRecord {
            param: self.param.frobenius(),
            v_delta: self.v_delta,
            kodaira: self.kodaira,
            components: self.components.iter().map(LineP3::frobenius).collect(),
            contact: self.contact.clone(),
            singular_points: self
                .singular_points
                .iter()
                .map(|p| p.iter().map(Fq::frobenius).collect())
                .collect(),
        }
    }
}

/// Contact multiplicities of `H_(s:t)` with `ℓ`: roots of `s·α10 + t·α01`.
pub fn contact_pattern(x: &QuarticWithLine, param: &ProjPoint) -> Vec<usize> {
    let ctx = param.ctx().clone();
    let c: Vec<Fq> = (0..=3u16)
        .map(|i| {
            let m = crate::mpoly::Mono::from_exps(&[i, 3 - i]);
            let a = embed_root(&x.alpha(1, 0).coeff(&m), &ctx).unwrap();
            let b = embed_root(&x.alpha(0, 1).coeff(&m), &ctx).unwrap();
            &(&param.a * &a) + &(&param.b * &b)
        })
        .collect();
    root_multiplicities(&c, 3).unwrap_or_default()
}

/// Classifies the fiber over `param`, recording `v_delta` as given.
pub fn fiber_record_at(
    x: &QuarticWithLine,
    param: &ProjPoint,
    v_delta: usize,
) -> Result<FiberRecord> {
    let c = fiber_cubic(x, param);
    let cl = classify_plane_cubic(&c)?;
    let param_l = param.embed(&cl.ctx)?;
    let mut components: Vec<LineP3> = cl
        .lines
        .iter()
        .map(|l| plane_line_to_space(&param_l, l))
        .collect();
    components.sort_by_key(|l| l.to_string());
    let singular_points = cl
        .singular_points
        .iter()
        .map(|p| plane_point_to_space(&param_l, p))
        .collect();
    Ok(FiberRecord {
        param: param.clone(),
        v_delta,
        kodaira: cl.kodaira,
        components,
        contact: contact_pattern(x, param),
        singular_points,
    })
}

fn frobenius_n(r: &FiberRecord, n: usize) -> FiberRecord {
    let mut out = r.clone();
    for _ in 0..n {
        out = out.frobenius();
    }
    out
}

/// All singular fibers, one record per root of `Δ` over its splitting field,
/// sorted by parameter. Conjugate fibers are obtained by Frobenius.
pub fn singular_fiber_table(x: &QuarticWithLine) -> Result<Vec<FiberRecord>> {
    let delta = pencil_discriminant(x)?;
    singular_fiber_table_from(x, &delta)
}

pub(crate) fn singular_fiber_table_from(
    x: &QuarticWithLine,
    delta: &MPoly,
) -> Result<Vec<FiberRecord>> {
    let base = x.ctx().clone();
    let affine = delta.to_upoly(0);
    let mut out = Vec::new();
    let at_infinity = 24 - affine.deg();
    if at_infinity > 0 {
        out.push(fiber_record_at(
            x,
            &ProjPoint::infinity(&base),
            at_infinity,
        )?);
    }
    for (g, m) in factor_univariate(&affine)?.factors {
        let d = g.deg();
        let field = base.extension(base.degree() * d);
        let root = roots(&g.embed(&field)?)
            .into_iter()
            .next()
            .expect("irreducible factor splits in its extension")
            .0;
        let first = fiber_record_at(x, &ProjPoint::finite(root), m)?;
        for k in 0..d {
            out.push(frobenius_n(&first, k * base.degree()));
        }
    }
    out.sort_by(|a, b| a.param.cmp(&b.param));
    Ok(out)
}

/// Compact type string such as `6I3+6I1` or `IV+4I3+4I1+2II`.
pub fn fiber_type_summary(table: &[FiberRecord]) -> String {
    let order = [
        Kodaira::IV,
        Kodaira::I3,
        Kodaira::I2,
        Kodaira::I1,
        Kodaira::II,
        Kodaira::III,
        Kodaira::NonReduced,
        Kodaira::Smooth,
    ];
    let parts: Vec<String> = order
        .iter()
        .filter_map(|k| match table.iter().filter(|r| r.kodaira == *k).count() {
            0 => None,
            1 => Some(k.to_string()),
            n => Some(format!("{n}{k}")),
        })
        .collect();
    parts.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::{parse_poly, PolyRing};

    #[test]
    fn z_with_q_zero_has_six_iv() {
        let ctx = mk_prime_field(10007).unwrap();
        let f = parse_poly(
            "x3*x1^3 + x4*x2^3 + x3^4 + 2*x3^3*x4 - 3*x3*x4^3 + 5*x4^4",
            &PolyRing::space(&ctx),
        )
        .unwrap();
        let x = QuarticWithLine::new(f).unwrap();
        let t = singular_fiber_table(&x).unwrap();
        assert_eq!(t.iter().map(|r| r.v_delta).sum::<usize>(), 24);
        assert!(t
            .iter()
            .all(|r| r.kodaira == Kodaira::IV && r.table_consistent()));
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn z_reference_instance() {
        let ctx = mk_prime_field(10007).unwrap();
        let f = parse_poly(
            "x3*x1^3 + x4*x2^3 + 3*(2*x3^2 - x3*x4 + x4^2)*x1*x2 \
             + 4*(20*x3^4 + 5*x4^4 - 18*x3^3*x4 - 4*x3^2*x4^2 - 9*x3*x4^3)/3",
            &PolyRing::space(&ctx),
        )
        .unwrap();
        let x = QuarticWithLine::new(f).unwrap();
        let t = singular_fiber_table(&x).unwrap();
        assert_eq!(fiber_type_summary(&t), "6I3+6I1");
        assert!(t.iter().all(FiberRecord::table_consistent));
        let lines = crate::pencil::lines_meeting_line(&x).unwrap();
        assert_eq!(lines.count, 18);
        assert!(lines.groups.iter().all(|g| g.2.len() == 3));
        for (_, _, ls) in &lines.groups {
            for l in ls {
                let [a, b] = l.points();
                for lam in 0..5u64 {
                    let lam = Fq::from_u64(a[0].ctx(), lam);
                    let pt: Vec<Fq> = a.iter().zip(&b).map(|(u, v)| u + &(&lam * v)).collect();
                    assert!(x.f().eval(&pt).is_zero());
                }
            }
        }
    }
}
