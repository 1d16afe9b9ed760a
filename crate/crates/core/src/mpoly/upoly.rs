//! Dense univariate polynomials over `F_{p^k}` with squarefree decomposition,
//! distinct-degree and equal-degree (Cantor–Zassenhaus) factorization.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::galois::{embed_root, lcm, seeded_rng, FieldCtx, Fq};

#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    ctx: Arc<FieldCtx>,
    /// Low-to-high, no trailing zeros.
    c: Vec<Fq>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl UPoly {
    pub fn from_coeffs(ctx: &Arc<FieldCtx>, mut c: Vec<Fq>) -> UPoly {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        UPoly {
            ctx: ctx.clone(),
            c,
        }
    }

    pub fn from_u64s(ctx: &Arc<FieldCtx>, c: &[i64]) -> UPoly {
        UPoly::from_coeffs(ctx, c.iter().map(|&v| Fq::from_i64(ctx, v)).collect())
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> UPoly {
        UPoly {
            ctx: ctx.clone(),
            c: Vec::new(),
        }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> UPoly {
        UPoly::constant(Fq::one(ctx))
    }

    pub fn constant(c: Fq) -> UPoly {
        let ctx = c.ctx().clone();
        UPoly::from_coeffs(&ctx, vec![c])
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> UPoly {
        UPoly::from_coeffs(ctx, vec![Fq::zero(ctx), Fq::one(ctx)])
    }

    /// `x - a`.
    pub fn linear_root(a: &Fq) -> UPoly {
        let ctx = a.ctx().clone();
        UPoly::from_coeffs(&ctx, vec![-a, Fq::one(&ctx)])
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Fq {
        self.c
            .get(i)
            .cloned()
            .unwrap_or_else(|| Fq::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Fq {
        self.c
            .last()
            .cloned()
            .unwrap_or_else(|| Fq::zero(&self.ctx))
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().unwrap();
        self.scale(&inv)
    }

    pub fn scale(&self, a: &Fq) -> UPoly {
        UPoly::from_coeffs(&self.ctx, self.c.iter().map(|x| x * a).collect())
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs(
            &self.ctx,
            (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs(
            &self.ctx,
            (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut out = vec![Fq::zero(&self.ctx); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::from_coeffs(&self.ctx, out)
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        if self.c.len() < d.c.len() {
            return (UPoly::zero(&self.ctx), self.clone());
        }
        let inv = d.lc().inv().unwrap();
        let mut r = self.c.clone();
        let mut q = vec![Fq::zero(&self.ctx); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let f = &r[i] * &inv;
            for j in 0..=dd {
                let t = &f * &d.c[j];
                r[i - dd + j] -= &t;
            }
            q[i - dd] = f;
        }
        r.truncate(dd);
        (
            UPoly::from_coeffs(&self.ctx, q),
            UPoly::from_coeffs(&self.ctx, r),
        )
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Exact quotient (panics in debug builds if there is a remainder).
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(
            &self.ctx,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Fq::from_u64(&self.ctx, i as u64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Fq) -> Fq {
        let lift = **x.ctx() != *self.ctx;
        let mut acc = Fq::zero(x.ctx());
        for c in self.c.iter().rev() {
            let c = if lift {
                embed_root(c, x.ctx()).expect("point lies in an extension")
            } else {
                c.clone()
            };
            acc = &(&acc * x) + &c;
        }
        acc
    }

    pub fn mulmod(&self, o: &UPoly, m: &UPoly) -> UPoly {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &UPoly) -> UPoly {
        let mut acc = UPoly::one(&self.ctx).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    /// Coefficientwise Frobenius.
    pub fn frobenius(&self) -> UPoly {
        UPoly::from_coeffs(&self.ctx, self.c.iter().map(|c| c.frobenius()).collect())
    }

    pub fn embed(&self, target: &Arc<FieldCtx>) -> Result<UPoly> {
        let c = self
            .c
            .iter()
            .map(|x| embed_root(x, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(UPoly::from_coeffs(target, c))
    }

    /// `h^q mod m` with `q` the order of the coefficient field.
    fn pow_q_mod(&self, m: &UPoly) -> UPoly {
        let p = self.ctx.p();
        let mut h = self.rem(m);
        for _ in 0..self.ctx.degree() {
            h = h.powmod(p, m);
        }
        h
    }
}

/// Unit and monic factors with multiplicities.
#[derive(Clone, Debug)]
pub struct UFactorization {
    pub unit: Fq,
    pub factors: Vec<(UPoly, usize)>,
}

impl UFactorization {
    pub fn expand(&self) -> UPoly {
        let mut acc = UPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

/// Yun's algorithm. Requires every multiplicity to be prime to `p`, which holds
/// whenever the degree is below `p`.
pub fn squarefree_decompose(f: &UPoly) -> Result<UFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let unit = f.lc();
    let f = f.monic();
    let mut factors = Vec::new();
    if f.deg() == 0 {
        return Ok(UFactorization { unit, factors });
    }
    let df = f.derivative();
    if df.is_zero() || f.deg() as u64 >= f.ctx().p() {
        return Err(Error::DegreeVsCharacteristic {
            degree: f.deg(),
            p: f.ctx().p(),
        });
    }
    let a = f.gcd(&df);
    let mut b = f.div_exact(&a);
    let mut c = df.div_exact(&a);
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let g = b.gcd(&d);
        b = b.div_exact(&g);
        c = d.div_exact(&g);
        d = c.sub(&b.derivative());
        if g.deg() > 0 {
            factors.push((g, i));
        }
        i += 1;
    }
    Ok(UFactorization { unit, factors })
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &UPoly) -> Vec<(UPoly, usize)> {
    let ctx = f.ctx().clone();
    let x = UPoly::x(&ctx);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.pow_q_mod(&rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let dr = rest.deg();
        out.push((rest, dr));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of degree `d`.
fn equal_degree<R: Rng>(f: &UPoly, d: usize, rng: &mut R, out: &mut Vec<UPoly>) {
    let n = f.deg();
    if n == d {
        out.push(f.clone());
        return;
    }
    let ctx = f.ctx().clone();
    let p = ctx.p();
    // a^((q^d-1)/2) = (a·a^p·…·a^{p^{kd-1}})^((p-1)/2)
    let steps = ctx.degree() * d;
    loop {
        let a = UPoly::from_coeffs(&ctx, (0..n).map(|_| Fq::random(&ctx, rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = a.gcd(f);
        if g.deg() > 0 && g.deg() < n {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div_exact(&g), d, rng, out);
            return;
        }
        let mut conj = a.rem(f);
        let mut prod = conj.clone();
        for _ in 1..steps {
            conj = conj.powmod(p, f);
            prod = prod.mulmod(&conj, f);
        }
        let b = prod.powmod((p - 1) / 2, f);
        let g = f.gcd(&b.sub(&UPoly::one(&ctx)));
        if g.deg() > 0 && g.deg() < n {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div_exact(&g), d, rng, out);
            return;
        }
    }
}

fn coeff_key(f: &UPoly) -> (usize, Vec<Fq>) {
    (f.deg(), f.coeffs().iter().rev().cloned().collect())
}

/// Complete factorization into monic irreducibles, sorted by degree and then
/// coefficient vector.
pub fn factor_univariate(f: &UPoly) -> Result<UFactorization> {
    let sq = squarefree_decompose(f)?;
    let mut rng = seeded_rng(f.ctx().seed(), 0x4544_4600);
    let mut factors = Vec::new();
    for (part, m) in &sq.factors {
        for (g, d) in distinct_degree(part) {
            let mut pieces = Vec::new();
            equal_degree(&g, d, &mut rng, &mut pieces);
            for piece in pieces {
                factors.push((piece, *m));
            }
        }
    }
    factors.sort_by_key(|a| coeff_key(&a.0));
    Ok(UFactorization {
        unit: sq.unit,
        factors,
    })
}

/// Roots lying in the coefficient field, with multiplicities, sorted.
pub fn roots(f: &UPoly) -> Vec<(Fq, usize)> {
    let Ok(sq) = squarefree_decompose(f) else {
        return Vec::new();
    };
    let ctx = f.ctx().clone();
    let x = UPoly::x(&ctx);
    let mut rng = seeded_rng(ctx.seed(), 0x524f_4f54);
    let mut out = Vec::new();
    for (part, m) in &sq.factors {
        let xq = x.pow_q_mod(part);
        let lin = part.gcd(&xq.sub(&x));
        if lin.deg() == 0 {
            continue;
        }
        let mut pieces = Vec::new();
        equal_degree(&lin, 1, &mut rng, &mut pieces);
        for piece in pieces {
            out.push((-&piece.coeff(0), *m));
        }
    }
    out.sort();
    out
}

/// All roots in the smallest extension of the coefficient field where `f` splits.
pub fn roots_in_splitting_field(f: &UPoly) -> Result<(Arc<FieldCtx>, Vec<(Fq, usize)>)> {
    let fac = factor_univariate(f)?;
    let base = f.ctx().clone();
    let e = fac
        .factors
        .iter()
        .fold(1usize, |acc, (g, _)| lcm(acc, g.deg()));
    let target = base.extension(base.degree() * e);
    let mut out = Vec::new();
    for (g, m) in &fac.factors {
        let lifted = g.embed(&target)?;
        for (r, _) in roots(&lifted) {
            out.push((r, *m));
        }
    }
    out.sort();
    Ok((target, out))
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(xs: &[Fq], ys: &[Fq]) -> UPoly {
    let ctx = xs[0].ctx().clone();
    let mut acc = UPoly::zero(&ctx);
    for (i, xi) in xs.iter().enumerate() {
        if ys[i].is_zero() {
            continue;
        }
        let mut num = UPoly::one(&ctx);
        let mut den = Fq::one(&ctx);
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                num = num.mul(&UPoly::linear_root(xj));
                den *= &(xi - xj);
            }
        }
        acc = acc.add(&num.scale(&(&ys[i] * &den.inv().unwrap())));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;

    fn f7() -> Arc<FieldCtx> {
        mk_prime_field(7).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let ctx = f7();
        // (x-1)^2 (x+1)
        let f = UPoly::from_u64s(&ctx, &[1, -1, -1, 1]);
        let sq = squarefree_decompose(&f).unwrap();
        assert_eq!(sq.factors.len(), 2);
        assert_eq!(sq.factors[0], (UPoly::from_u64s(&ctx, &[1, 1]), 1));
        assert_eq!(sq.factors[1], (UPoly::from_u64s(&ctx, &[-1, 1]), 2));
        let g = UPoly::from_u64s(&ctx, &[1, 0, 1]);
        let sq = squarefree_decompose(&g).unwrap();
        assert_eq!(sq.factors, vec![(g.clone(), 1)]);
    }

    #[test]
    fn factor_examples() {
        let ctx = f7();
        let f = UPoly::from_u64s(&ctx, &[-1, 0, 1]);
        let fac = factor_univariate(&f).unwrap();
        let lin: Vec<UPoly> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(
            lin,
            vec![
                UPoly::from_u64s(&ctx, &[1, 1]),
                UPoly::from_u64s(&ctx, &[-1, 1])
            ]
        );
        let cube = UPoly::from_u64s(&ctx, &[-1, 0, 0, 1]);
        let r: Vec<u64> = roots(&cube)
            .iter()
            .map(|(a, _)| a.to_u64().unwrap())
            .collect();
        assert_eq!(r, vec![1, 2, 4]);
        let irr = UPoly::from_u64s(&ctx, &[1, 0, 1]);
        let fac = factor_univariate(&irr).unwrap();
        assert_eq!(fac.factors, vec![(irr.clone(), 1)]);
    }

    #[test]
    fn splitting_field_examples() {
        let ctx = f7();
        let (l, r) = roots_in_splitting_field(&UPoly::from_u64s(&ctx, &[-1, 0, 1])).unwrap();
        assert_eq!(l.degree(), 1);
        assert_eq!(r.len(), 2);
        let irr = UPoly::from_u64s(&ctx, &[1, 0, 1]);
        let (l, r) = roots_in_splitting_field(&irr).unwrap();
        assert_eq!(l.degree(), 2);
        assert_eq!(r.len(), 2);
        for (root, _) in &r {
            assert!(irr.eval(root).is_zero());
        }
        assert_eq!(r[0].0.frobenius(), r[1].0);
    }

    #[test]
    fn rejects_pth_powers() {
        let ctx = f7();
        let mut c = vec![0i64; 8];
        c[0] = 1;
        c[7] = 1;
        let f = UPoly::from_u64s(&ctx, &c);
        assert!(matches!(
            squarefree_decompose(&f),
            Err(Error::DegreeVsCharacteristic { .. })
        ));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let ctx = mk_prime_field(101).unwrap();
        let f = UPoly::from_u64s(&ctx, &[3, 0, -2, 5, 1]);
        let xs: Vec<Fq> = (0..5).map(|i| Fq::from_u64(&ctx, i)).collect();
        let ys: Vec<Fq> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }
}
