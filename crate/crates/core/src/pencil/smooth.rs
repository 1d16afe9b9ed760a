use crate::error::Error;
use crate::galois::{mk_extension, Fq};
use crate::mpoly::{binary_form_roots, MPoly, ProjPoint};

use super::cubic::{classify_plane_cubic, Kodaira};
use super::fibers::{singular_fiber_table, FiberRecord};
use super::{fiber_cubic, plane_point_to_space, QuarticWithLine};

#[derive(Clone, Debug)]
pub struct SmoothnessVerdict {
    pub smooth: bool,
    /// A singular point of `X` in normalized coordinates, when one was located.
    pub witness: Option<Vec<Fq>>,
}

fn singular_at(f: &MPoly, pt: &[Fq]) -> bool {
    (0..4).all(|i| f.derivative(i).eval(pt).is_zero())
}

fn on_line_witness(x: &QuarticWithLine) -> Option<Vec<Fq>> {
    let a = x.alpha(1, 0);
    let b = x.alpha(0, 1);
    let (probe, other) = if a.is_zero() { (&b, &a) } else { (&a, &b) };
    if probe.is_zero() {
        let ctx = x.ctx();
        return Some(vec![
            Fq::one(ctx),
            Fq::zero(ctx),
            Fq::zero(ctx),
            Fq::zero(ctx),
        ]);
    }
    let (_, rts) = binary_form_roots(probe).ok()?;
    rts.into_iter().find_map(|(z, _)| {
        let pt = [z.a.clone(), z.b.clone()];
        other.eval(&pt).is_zero().then(|| {
            let zero = Fq::zero(z.ctx());
            crate::linalg::normalize_first(&[z.a, z.b, zero.clone(), zero])
        })
    })
}

/// Decides smoothness from an already computed fiber table.
pub(crate) fn verdict_from_table(x: &QuarticWithLine, table: &[FiberRecord]) -> SmoothnessVerdict {
    for r in table {
        if r.kodaira == Kodaira::NonReduced {
            return SmoothnessVerdict {
                smooth: false,
                witness: None,
            };
        }
        if let Some(p) = r.singular_points.iter().find(|p| singular_at(x.f(), p)) {
            return SmoothnessVerdict {
                smooth: false,
                witness: Some(p.clone()),
            };
        }
    }
    SmoothnessVerdict {
        smooth: true,
        witness: None,
    }
}

/// Every singular point of `X` off `ℓ` is singular on the plane section
/// through it, so it suffices to inspect `ℓ` and the singular fibers.
pub fn is_smooth(x: &QuarticWithLine) -> SmoothnessVerdict {
    if !x.smooth_along_line() {
        return SmoothnessVerdict {
            smooth: false,
            witness: on_line_witness(x),
        };
    }
    match singular_fiber_table(x) {
        Ok(table) => verdict_from_table(x, &table),
        Err(Error::IdenticallyZero) => SmoothnessVerdict {
            smooth: false,
            witness: sample_witness(x),
        },
        Err(_) => SmoothnessVerdict {
            smooth: false,
            witness: None,
        },
    }
}

/// Every fiber is singular, so the singular points of a general fiber sweep
/// out a singular curve of `X`.
fn sample_witness(x: &QuarticWithLine) -> Option<Vec<Fq>> {
    let base = x.ctx().clone();
    let field = if base.p() < 64 {
        mk_extension(&base, 2)
    } else {
        base.clone()
    };
    for i in 1..64u64 {
        let param = ProjPoint::finite(Fq::from_u64(&field, i));
        let c = fiber_cubic(x, &param);
        let Ok(cl) = classify_plane_cubic(&c) else {
            continue;
        };
        let param = param.embed(&cl.ctx).ok()?;
        for p in &cl.singular_points {
            let q = plane_point_to_space(&param, p);
            if singular_at(x.f(), &q) {
                return Some(q);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::{parse_poly, PolyRing};

    fn verdict(s: &str) -> SmoothnessVerdict {
        let ctx = mk_prime_field(10007).unwrap();
        let f = parse_poly(s, &PolyRing::space(&ctx)).unwrap();
        is_smooth(&QuarticWithLine::new(f).unwrap())
    }

    #[test]
    fn cone_over_fermat_cubic_is_singular() {
        let v = verdict("x3*x1^3 + x4*x2^3");
        assert!(!v.smooth);
        let w = v.witness.unwrap();
        assert!(w[0].is_zero() && w[1].is_zero());
    }

    #[test]
    fn square_factor_of_g() {
        let v = verdict("x3*x1^3 + x4*x2^3 + (x3 - 2*x4)^2*(x3^2 + x4^2)");
        assert!(!v.smooth);
        assert!(verdict("x3*x1^3 + x4*x2^3 + x3^4 + 2*x3^3*x4 - 3*x3*x4^3 + 5*x4^4").smooth);
    }

    #[test]
    fn common_root_on_line() {
        let v = verdict("x3*x1^2*x2 + x4*x1*x2^2 + x3^4 + x4^4");
        assert!(!v.smooth);
        let w = v.witness.unwrap();
        assert!(w[2].is_zero() && w[3].is_zero());
    }
}
