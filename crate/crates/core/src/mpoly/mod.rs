//! Sparse multivariate polynomials over a finite field, plus the univariate
//! and binary-form toolkit used for elimination.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under the graded
//! reverse-lexicographic order, so iteration order (and hence printing) is
//! canonical.

pub mod binary;
mod parse;
mod resultant;
pub mod upoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{embed_root, FieldCtx, Fq};
use crate::linalg::Mat;

pub use binary::{binary_form_roots, ProjPoint};
pub use parse::{parse_poly, parse_poly_with};
pub use resultant::{resultant, resultant_formal};
pub use upoly::{factor_univariate, roots_in_splitting_field, squarefree_decompose, UPoly};

pub const MAX_VARS: usize = 8;

/// Exponent vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Debug)]
pub struct Mono(pub [u16; MAX_VARS]);

impl Mono {
    pub fn one() -> Mono {
        Mono([0; MAX_VARS])
    }

    pub fn var(i: usize, e: u16) -> Mono {
        let mut m = Mono::one();
        m.0[i] = e;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Mono {
        let mut m = Mono::one();
        m.0[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        out
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let mut out = *other;
        for (a, b) in out.0.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        out
    }

    /// Lexicographic comparison with the first variable most significant.
    pub fn lex_cmp(&self, other: &Mono) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if self.0[i] != other.0[i] {
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient field plus ordered variable names.
#[derive(Debug)]
pub struct PolyRing {
    ctx: Arc<FieldCtx>,
    vars: Vec<String>,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(ctx: &Arc<FieldCtx>, vars: &[&str]) -> Ring {
        assert!(vars.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        Arc::new(PolyRing {
            ctx: ctx.clone(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
        })
    }

    /// The ring `F[x1, x2, x3, x4]`.
    pub fn space(ctx: &Arc<FieldCtx>) -> Ring {
        PolyRing::new(ctx, &["x1", "x2", "x3", "x4"])
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables over another field.
    pub fn with_ctx(&self, ctx: &Arc<FieldCtx>) -> Ring {
        Arc::new(PolyRing {
            ctx: ctx.clone(),
            vars: self.vars.clone(),
        })
    }

    fn same(a: &Ring, b: &Ring) -> bool {
        Arc::ptr_eq(a, b) || (*a.ctx == *b.ctx && a.vars == b.vars)
    }
}

#[derive(Clone)]
pub struct MPoly {
    ring: Ring,
    terms: BTreeMap<Mono, Fq>,
}

impl MPoly {
    pub fn zero(ring: &Ring) -> MPoly {
        MPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> MPoly {
        MPoly::constant(ring, Fq::one(&ring.ctx))
    }

    pub fn constant(ring: &Ring, c: Fq) -> MPoly {
        MPoly::monomial(ring, c, Mono::one())
    }

    pub fn monomial(ring: &Ring, c: Fq, m: Mono) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, i: usize) -> MPoly {
        assert!(i < ring.nvars());
        MPoly::monomial(ring, Fq::one(&ring.ctx), Mono::var(i, 1))
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Fq)>>(ring: &Ring, it: I) -> MPoly {
        let mut p = MPoly::zero(ring);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    /// Linear form `Σ cᵢ·xᵢ`.
    pub fn linear(ring: &Ring, coeffs: &[Fq]) -> MPoly {
        MPoly::from_terms(
            ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Mono::var(i, 1), c.clone())),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ring.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Fq)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Mono) -> Fq {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| Fq::zero(&self.ring.ctx))
    }

    pub fn leading_term(&self) -> Option<(Mono, Fq)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c.clone()))
    }

    /// The term whose exponent vector is lexicographically largest.
    pub fn lex_leading_term(&self) -> Option<(Mono, Fq)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.lex_cmp(b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0[var] as u32)
            .max()
            .unwrap_or(0)
    }

    /// Largest power of `x_var` dividing the polynomial (0 for zero).
    pub fn order_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0[var] as u32)
            .min()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    fn add_term(&mut self, m: Mono, c: &Fq) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, other: &MPoly) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut out = MPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Fq) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let ctx = &self.ring.ctx;
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[var] -= 1;
            out.add_term(m2, &(c * &Fq::from_u64(ctx, e as u64)));
        }
        out
    }

    /// Evaluates at a point whose coordinates live in the coefficient field
    /// or in an extension of it.
    pub fn eval(&self, point: &[Fq]) -> Fq {
        let ctx = point
            .first()
            .map(|x| x.ctx().clone())
            .unwrap_or_else(|| self.ring.ctx.clone());
        let n = self.ring.nvars();
        let maxdeg: Vec<usize> = (0..n).map(|i| self.degree_in(i) as usize).collect();
        let powers: Vec<Vec<Fq>> = (0..n)
            .map(|i| {
                let mut v = vec![Fq::one(&ctx)];
                for _ in 0..maxdeg[i] {
                    let next = v.last().unwrap() * &point[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let lift = !Arc::ptr_eq(&ctx, &self.ring.ctx) && *ctx != *self.ring.ctx;
        let mut acc = Fq::zero(&ctx);
        for (m, c) in &self.terms {
            let mut t = if lift {
                embed_root(c, &ctx).expect("evaluation point lies in an extension")
            } else {
                c.clone()
            };
            for i in 0..n {
                let e = m.0[i] as usize;
                if e > 0 {
                    t *= &powers[i][e];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes `x_i ↦ images[i]`; the images share a ring, which may differ
    /// from this one.
    pub fn compose(&self, images: &[MPoly]) -> MPoly {
        let target = images[0].ring.clone();
        let n = self.ring.nvars();
        assert_eq!(images.len(), n);
        let lift = *target.ctx != *self.ring.ctx;
        let mut powers: Vec<Vec<MPoly>> = (0..n)
            .map(|i| vec![MPoly::one(&target), images[i].clone()])
            .collect();
        let mut out = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let c = if lift {
                embed_root(c, &target.ctx).expect("target field extends source")
            } else {
                c.clone()
            };
            let mut t = MPoly::constant(&target, c);
            for i in 0..n {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e];
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, &cc);
            }
        }
        out
    }

    /// `f(M·x)` for a square matrix acting on all variables.
    pub fn substitute_linear(&self, m: &Mat) -> Result<MPoly> {
        let n = self.ring.nvars();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!(
                "substitution matrix must be {n}x{n}"
            )));
        }
        if crate::linalg::det(m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        let ring = if **m[0][0].ctx() == *self.ring.ctx {
            self.ring.clone()
        } else {
            self.ring.with_ctx(m[0][0].ctx())
        };
        let images: Vec<MPoly> = m.iter().map(|row| MPoly::linear(&ring, row)).collect();
        Ok(self.compose(&images))
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        let (dm, dc) = d.leading_term().unwrap();
        let dinv = dc.inv().ok()?;
        let mut r = self.clone();
        let mut q = MPoly::zero(&self.ring);
        while let Some((rm, rc)) = r.leading_term() {
            if !dm.divides(&rm) {
                return None;
            }
            let qm = dm.quotient_of(&rm);
            let qc = &rc * &dinv;
            for (m, c) in &d.terms {
                r.add_term(m.mul(&qm), &-(c * &qc));
            }
            q.add_term(qm, &qc);
        }
        Some(q)
    }

    /// Removes the largest power of `x_var` dividing the polynomial; returns it with its exponent.
    pub fn strip_var_power(&self, var: usize) -> (MPoly, u32) {
        let m = self.order_in(var);
        if m == 0 {
            return (self.clone(), 0);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| {
                let mut k2 = *k;
                k2.0[var] -= m as u16;
                (k2, v.clone())
            })
            .collect();
        (
            MPoly {
                ring: self.ring.clone(),
                terms,
            },
            m,
        )
    }

    /// Coefficients as a polynomial in `x_var`, index = power.
    pub fn coefficients_in(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MPoly::zero(&self.ring); d + 1];
        if self.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut m2 = *m;
            m2.0[var] = 0;
            out[e].add_term(m2, c);
        }
        out
    }

    /// Coefficient of `x_a^i x_b^j` viewed as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, pattern: &[(usize, u16)]) -> MPoly {
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            if pattern.iter().all(|&(v, e)| m.0[v] == e) {
                let mut m2 = *m;
                for &(v, _) in pattern {
                    m2.0[v] = 0;
                }
                out.add_term(m2, c);
            }
        }
        out
    }

    /// Moves the polynomial to another ring with the same number of variables.
    pub fn rename(&self, ring: &Ring) -> MPoly {
        assert_eq!(ring.nvars(), self.ring.nvars());
        assert!(*ring.ctx == *self.ring.ctx);
        MPoly {
            ring: ring.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Re-expresses in a ring with more (or renamed) variables: `map[i]` is the
    /// target index of variable `i`.
    pub fn reindex(&self, ring: &Ring, map: &[usize]) -> MPoly {
        let mut out = MPoly::zero(ring);
        let lift = *ring.ctx != *self.ring.ctx;
        for (m, c) in &self.terms {
            let mut m2 = Mono::one();
            for (i, &t) in map.iter().enumerate() {
                m2.0[t] += m.0[i];
            }
            let c = if lift {
                embed_root(c, &ring.ctx).expect("target field extends source")
            } else {
                c.clone()
            };
            out.add_term(m2, &c);
        }
        out
    }

    /// Image in an extension field (same variable names).
    pub fn embed(&self, target: &Arc<FieldCtx>) -> Result<MPoly> {
        let ring = self.ring.with_ctx(target);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(*m, embed_root(c, target)?);
        }
        Ok(MPoly { ring, terms })
    }

    /// Preimage in a subfield, if every coefficient lies there.
    pub fn descend(&self, sub: &Arc<FieldCtx>) -> Option<MPoly> {
        let ring = self.ring.with_ctx(sub);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(*m, crate::galois::descend(c, sub)?);
        }
        Some(MPoly { ring, terms })
    }

    /// Applies the Frobenius to every coefficient.
    pub fn frobenius(&self) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.frobenius()))
                .collect(),
        }
    }

    /// Scales so that the grevlex-leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Scales so that the lexicographically first monomial has coefficient 1.
    pub fn lex_monic(&self) -> MPoly {
        match self.lex_leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Equality after normalizing leading coefficients.
    pub fn eq_up_to_scalar(&self, other: &MPoly) -> bool {
        self.monic() == other.monic()
    }

    /// Dense univariate polynomial in `x_var`; other variables must be absent.
    pub fn to_upoly(&self, var: usize) -> UPoly {
        let d = self.degree_in(var) as usize;
        let mut c = vec![Fq::zero(&self.ring.ctx); d + 1];
        for (m, v) in &self.terms {
            c[m.0[var] as usize] += v;
        }
        UPoly::from_coeffs(&self.ring.ctx, c)
    }

    pub fn from_upoly(ring: &Ring, var: usize, u: &UPoly) -> MPoly {
        MPoly::from_terms(
            ring,
            u.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Mono::var(var, i as u16), c.clone())),
        )
    }
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for MPoly {}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Fq, first: bool, bare: bool) -> fmt::Result {
    let p = c.ctx().p();
    if let Some(v) = c.to_u64() {
        let (neg, mag) = if v > p / 2 { (true, p - v) } else { (false, v) };
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if mag != 1 || bare {
            write!(f, "{mag}")?;
            if !bare {
                write!(f, "*")?;
            }
        }
        Ok(())
    } else {
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "{c}")?;
        if !bare {
            write!(f, "*")?;
        }
        Ok(())
    }
}

/// Canonical text: terms in descending grevlex order, coefficients as signed
/// representatives in `(-p/2, p/2]`, e.g. `x1^2 - 3*x2*x3`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let bare = m.degree() == 0;
            write_coeff(f, c, i == 0, bare)?;
            let mut firstvar = true;
            for (v, &e) in m.0.iter().enumerate().take(self.ring.nvars()) {
                if e == 0 {
                    continue;
                }
                if !firstvar {
                    write!(f, "*")?;
                }
                firstvar = false;
                write!(f, "{}", self.ring.vars[v])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.try_add(rhs).expect("polynomial ring mismatch")
    }
}
impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.try_sub(rhs).expect("polynomial ring mismatch")
    }
}
impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.try_mul(rhs).expect("polynomial ring mismatch")
    }
}
impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Squarefree decomposition of a univariate `MPoly`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: Fq,
    pub factors: Vec<(MPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self, ring: &Ring) -> MPoly {
        let mut acc = MPoly::constant(ring, self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }
}

fn single_var(f: &MPoly) -> Result<usize> {
    let vars = f.support_vars();
    match vars.len() {
        0 => Ok(0),
        1 => Ok(vars[0]),
        _ => Err(Error::Invalid("expected a univariate polynomial".into())),
    }
}

fn lift_factorization(f: &MPoly, var: usize, u: upoly::UFactorization) -> Factorization {
    Factorization {
        unit: u.unit,
        factors: u
            .factors
            .into_iter()
            .map(|(g, m)| (MPoly::from_upoly(f.ring(), var, &g), m))
            .collect(),
    }
}

/// Squarefree parts with multiplicities of a univariate polynomial.
pub fn squarefree_decompose_mpoly(f: &MPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let var = single_var(f)?;
    let u = squarefree_decompose(&f.to_upoly(var))?;
    Ok(lift_factorization(f, var, u))
}

/// Complete factorization of a univariate polynomial over its coefficient field.
pub fn factor_univariate_mpoly(f: &MPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let var = single_var(f)?;
    let u = factor_univariate(&f.to_upoly(var))?;
    Ok(lift_factorization(f, var, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{mk_prime_field, seeded_rng};
    use crate::linalg;

    fn ring() -> Ring {
        PolyRing::space(&mk_prime_field(10007).unwrap())
    }

    #[test]
    fn arithmetic_basics() {
        let r = ring();
        let x1 = MPoly::var(&r, 0);
        let x2 = MPoly::var(&r, 1);
        let prod = &(&x1 + &x2) * &(&x1 - &x2);
        assert_eq!(prod, &x1.pow(2) - &x2.pow(2));
        assert_eq!(format!("{prod}"), "x1^2 - x2^2");
        let f = parse_poly("x3*x1^3 + x4*x2^3 + 5", &r).unwrap();
        assert_eq!(&f + &MPoly::zero(&r), f);
        let termwise = &(&MPoly::var(&r, 2) * &x1.pow(3)) + &(&MPoly::var(&r, 3) * &x2.pow(3));
        let parsed = parse_poly("x3*x1^3+x4*x2^3+x1*x2*(0)+0", &r).unwrap();
        assert_eq!(termwise, parsed);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = ring();
        let other = PolyRing::space(&mk_prime_field(31).unwrap());
        let a = MPoly::var(&r, 0);
        let b = MPoly::var(&other, 0);
        assert_eq!(a.try_add(&b).unwrap_err(), Error::CtxMismatch);
    }

    #[test]
    fn grevlex_order() {
        let r = ring();
        let f = parse_poly("x4^2 + x1*x4 + x2^2 + x1^2 + x3", &r).unwrap();
        assert_eq!(format!("{f}"), "x1^2 + x2^2 + x1*x4 + x4^2 + x3");
    }

    #[test]
    fn substitution_identity_swap_and_line_membership() {
        let r = ring();
        let ctx = r.ctx().clone();
        let f = parse_poly("x3*x1^3 + x4*x2^3 + x1*x2*(x3^2 + x4^2) + x3^4 + x4^4", &r).unwrap();
        assert_eq!(f.substitute_linear(&linalg::identity(&ctx, 4)).unwrap(), f);
        let swap = linalg::from_u64(
            &ctx,
            &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]],
        );
        let g = f.substitute_linear(&swap).unwrap();
        let expect =
            parse_poly("x4*x2^3 + x3*x1^3 + x1*x2*(x3^2 + x4^2) + x3^4 + x4^4", &r).unwrap();
        assert_eq!(g, expect);
        let sing = linalg::from_u64(
            &ctx,
            &[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
        );
        assert_eq!(
            f.substitute_linear(&sing).unwrap_err(),
            Error::SingularMatrix
        );
        // a quartic containing V(x1, x2), moved so that line becomes V(x3, x4)
        let h = parse_poly("x1*x3^3 + x2*x4^3 + x1^2*x2*x4", &r).unwrap();
        let m = linalg::from_u64(
            &ctx,
            &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]],
        );
        let moved = h.substitute_linear(&m).unwrap();
        let z = Fq::zero(&ctx);
        for a in 1..5u64 {
            for b in 1..5u64 {
                let pt = [
                    Fq::from_u64(&ctx, a),
                    Fq::from_u64(&ctx, b),
                    z.clone(),
                    z.clone(),
                ];
                assert!(moved.eval(&pt).is_zero());
            }
        }
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let a = parse_poly("x1^2 + 3*x2*x3 - x4", &r).unwrap();
        let b = parse_poly("x1 - 7*x4^2 + x2", &r).unwrap();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(prod.div_exact(&parse_poly("x1 + 1", &r).unwrap()).is_none());
    }

    #[test]
    fn substitution_round_trip_random() {
        let r = ring();
        let ctx = r.ctx().clone();
        let mut rng = seeded_rng(11, 4);
        let f = parse_poly("x1^4 + 2*x1*x2*x3*x4 - x3^3*x4 + 5*x2^2*x4^2", &r).unwrap();
        for _ in 0..5 {
            let m: Mat = (0..4)
                .map(|_| (0..4).map(|_| Fq::random(&ctx, &mut rng)).collect())
                .collect();
            let minv = linalg::inverse(&m).unwrap();
            let g = f.substitute_linear(&m).unwrap();
            assert_eq!(g.substitute_linear(&minv).unwrap(), f);
        }
    }
}
