//! Projective roots of binary forms.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{embed_root, lcm, FieldCtx, Fq};

use super::upoly::{factor_univariate, roots, UPoly};
use super::MPoly;

/// A point `(a:b)` of P¹, normalized to `b = 1` or exactly `(1:0)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub a: Fq,
    pub b: Fq,
}

impl ProjPoint {
    pub fn new(a: Fq, b: Fq) -> Result<ProjPoint> {
        if b.is_zero() {
            if a.is_zero() {
                return Err(Error::Invalid("(0:0) is not a projective point".into()));
            }
            let ctx = a.ctx().clone();
            return Ok(ProjPoint {
                a: Fq::one(&ctx),
                b: Fq::zero(&ctx),
            });
        }
        let inv = b.inv()?;
        Ok(ProjPoint {
            a: &a * &inv,
            b: Fq::one(b.ctx()),
        })
    }

    pub fn finite(a: Fq) -> ProjPoint {
        let ctx = a.ctx().clone();
        ProjPoint {
            a,
            b: Fq::one(&ctx),
        }
    }

    pub fn infinity(ctx: &Arc<FieldCtx>) -> ProjPoint {
        ProjPoint {
            a: Fq::one(ctx),
            b: Fq::zero(ctx),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.a.ctx()
    }

    /// Degree over `F_p` of the field generated by the point.
    pub fn field_degree(&self) -> usize {
        self.a.minimal_degree()
    }

    pub fn frobenius(&self) -> ProjPoint {
        ProjPoint {
            a: self.a.frobenius(),
            b: self.b.clone(),
        }
    }

    pub fn embed(&self, target: &Arc<FieldCtx>) -> Result<ProjPoint> {
        Ok(ProjPoint {
            a: embed_root(&self.a, target)?,
            b: embed_root(&self.b, target)?,
        })
    }

    /// Moves the point into the smallest field containing it.
    pub fn minimal(&self) -> ProjPoint {
        let a = crate::galois::to_minimal_field(&self.a);
        let ctx = a.ctx().clone();
        ProjPoint {
            a,
            b: if self.b.is_zero() {
                Fq::zero(&ctx)
            } else {
                Fq::one(&ctx)
            },
        }
    }

    fn key(&self) -> (usize, bool, Vec<u64>) {
        (
            self.field_degree(),
            self.is_infinity(),
            self.a.coeffs().iter().rev().copied().collect(),
        )
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Field degree first, then finite before infinite, then coordinates.
impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.a, self.b)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.a, self.b)
    }
}

/// Roots of `Σ c[i]·a^i·b^(d-i)` with multiplicities, in the smallest
/// extension where the form splits.
pub fn binary_roots_coeffs(c: &[Fq], d: usize) -> Result<(Arc<FieldCtx>, Vec<(ProjPoint, usize)>)> {
    let base = c[0].ctx().clone();
    let u = UPoly::from_coeffs(&base, c.to_vec());
    if u.is_zero() {
        return Err(Error::ZeroInput);
    }
    let inf = d - u.deg();
    let fac = factor_univariate(&u)?;
    let e = fac
        .factors
        .iter()
        .fold(1usize, |acc, (g, _)| lcm(acc, g.deg()));
    let target = base.extension(base.degree() * e);
    let mut out = Vec::new();
    for (g, m) in &fac.factors {
        for (r, _) in roots(&g.embed(&target)?) {
            out.push((ProjPoint::finite(r), *m));
        }
    }
    if inf > 0 {
        out.push((ProjPoint::infinity(&target), inf));
    }
    out.sort();
    Ok((target, out))
}

/// Projective roots of a homogeneous form in the two variables of its ring
/// (first variable = `a`, second = `b`).
pub fn binary_form_roots(f: &MPoly) -> Result<(Arc<FieldCtx>, Vec<(ProjPoint, usize)>)> {
    if f.ring().nvars() != 2 {
        return Err(Error::Invalid(
            "binary form must live in a two-variable ring".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !f.is_homogeneous() {
        return Err(Error::Invalid("binary form must be homogeneous".into()));
    }
    let d = f.total_degree() as usize;
    let mut c = vec![Fq::zero(f.ctx()); d + 1];
    for (m, v) in f.terms() {
        c[m.0[0] as usize] = v.clone();
    }
    binary_roots_coeffs(&c, d)
}

/// Multiplicities of the roots of a binary form over the algebraic closure,
/// sorted in decreasing order, without computing the roots themselves.
pub fn root_multiplicities(c: &[Fq], d: usize) -> Result<Vec<usize>> {
    let base = c[0].ctx().clone();
    let u = UPoly::from_coeffs(&base, c.to_vec());
    if u.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = vec![];
    let inf = d - u.deg();
    if inf > 0 {
        out.push(inf);
    }
    for (g, m) in super::upoly::squarefree_decompose(&u)?.factors {
        out.extend(std::iter::repeat_n(m, g.deg()));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::{parse_poly, PolyRing};

    #[test]
    fn examples() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::new(&ctx, &["x1", "x2"]);
        let (_, roots) = binary_form_roots(&parse_poly("x1^2*x2^2", &r).unwrap()).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], (ProjPoint::finite(Fq::zero(&ctx)), 2));
        assert!(roots[1].0.is_infinity() && roots[1].1 == 2);

        let st = PolyRing::new(&ctx, &["s", "t"]);
        let (_, roots) = binary_form_roots(&parse_poly("s*t*(s-t)", &st).unwrap()).unwrap();
        let pts: Vec<String> = roots.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(pts, vec!["(0:1)", "(1:1)", "(1:0)"]);
        assert!(roots.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn multiplicities_without_roots() {
        let ctx = mk_prime_field(31).unwrap();
        let c: Vec<Fq> = [0i64, 0, 1, 0]
            .iter()
            .map(|&v| Fq::from_i64(&ctx, v))
            .collect();
        // a^2 b
        assert_eq!(root_multiplicities(&c, 3).unwrap(), vec![2, 1]);
        let c: Vec<Fq> = [1i64, 0, 0, 1]
            .iter()
            .map(|&v| Fq::from_i64(&ctx, v))
            .collect();
        assert_eq!(root_multiplicities(&c, 3).unwrap(), vec![1, 1, 1]);
    }
}
