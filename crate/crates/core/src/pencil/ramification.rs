use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{embed_root, FieldCtx, Fq};
use crate::mpoly::{binary_form_roots, MPoly, ProjPoint};

use super::QuarticWithLine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RamificationType {
    #[serde(rename = "1^4")]
    Simple,
    #[serde(rename = "2,1^2")]
    OneDouble,
    #[serde(rename = "2^2")]
    TwoDouble,
}

impl fmt::Display for RamificationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RamificationType::Simple => "1^4",
            RamificationType::OneDouble => "2,1^2",
            RamificationType::TwoDouble => "2^2",
        })
    }
}

/// Ramification divisor of `π|ℓ` as points `(x1:x2)` of `ℓ`, doubled points first.
#[derive(Clone, Debug)]
pub struct RamificationProfile {
    pub ctx: Arc<FieldCtx>,
    pub points: Vec<(ProjPoint, usize)>,
    pub rtype: RamificationType,
}

impl RamificationProfile {
    pub fn doubled(&self) -> impl Iterator<Item = &ProjPoint> {
        self.points.iter().filter(|(_, m)| *m == 2).map(|(p, _)| p)
    }
}

/// `W = ∂₁α10·∂₂α01 − ∂₂α10·∂₁α01`, a quartic binary form on `ℓ`.
pub fn wronskian(x: &QuarticWithLine) -> MPoly {
    let a = x.alpha(1, 0);
    let b = x.alpha(0, 1);
    &(&a.derivative(0) * &b.derivative(1)) - &(&a.derivative(1) * &b.derivative(0))
}

pub fn ramification_profile(x: &QuarticWithLine) -> Result<RamificationProfile> {
    let w = wronskian(x);
    if w.is_zero() {
        return Err(Error::WronskianZero);
    }
    let (ctx, mut points) = binary_form_roots(&w)?;
    if points.iter().any(|(_, m)| *m > 2) {
        let m: Vec<usize> = points.iter().map(|(_, m)| *m).collect();
        return Err(Error::UnexpectedPattern(format!(
            "ramification multiplicities {m:?}"
        )));
    }
    points.sort_by(|(p, m), (q, n)| n.cmp(m).then_with(|| p.minimal().cmp(&q.minimal())));
    let doubles = points.iter().filter(|(_, m)| *m == 2).count();
    let rtype = match doubles {
        0 => RamificationType::Simple,
        1 => RamificationType::OneDouble,
        _ => RamificationType::TwoDouble,
    };
    Ok(RamificationProfile { ctx, points, rtype })
}

/// `π(z) = (α01(z) : −α10(z))`, the parameter of the plane tangent to `X` at `z ∈ ℓ`.
pub fn pi_of_point(x: &QuarticWithLine, z: &ProjPoint) -> Result<ProjPoint> {
    let ctx = z.ctx().clone();
    let ev = |f: &MPoly| -> Fq { f.eval(&[z.a.clone(), z.b.clone()]) };
    let s = ev(&x.alpha(0, 1));
    let t = -&ev(&x.alpha(1, 0));
    let s = embed_root(&s, &ctx)?;
    let t = embed_root(&t, &ctx)?;
    ProjPoint::new(s, t).map_err(|_| Error::SingularSurface)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::{parse_poly, PolyRing};

    fn profile(f: &str) -> RamificationProfile {
        let ctx = mk_prime_field(10007).unwrap();
        let f = parse_poly(f, &PolyRing::space(&ctx)).unwrap();
        ramification_profile(&QuarticWithLine::new(f).unwrap()).unwrap()
    }

    #[test]
    fn z_and_t_types() {
        let z = profile("x3*x1^3 + x4*x2^3 + x3^4 + x4^4");
        assert_eq!(z.rtype, RamificationType::TwoDouble);
        let pts: Vec<String> = z.points.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(pts, ["(0:1)", "(1:0)"]);
        let t = profile("x3*x1^3 + x4*(x2^3 - 21*x1*x2^2) + x3^4 + x4^4");
        assert_eq!(t.rtype, RamificationType::OneDouble);
        let scaled = profile("5*x3*x1^3 + 5*x4*x2^3 + x3^4");
        assert_eq!(scaled.points, z.points);
    }

    #[test]
    fn proportional_alphas() {
        let ctx = mk_prime_field(10007).unwrap();
        let f = parse_poly("x3*x1^3 + 2*x4*x1^3 + x4^4", &PolyRing::space(&ctx)).unwrap();
        let x = QuarticWithLine::new(f).unwrap();
        assert_eq!(ramification_profile(&x).unwrap_err(), Error::WronskianZero);
    }
}
