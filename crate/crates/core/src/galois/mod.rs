//! Exact arithmetic in prime fields `F_p` and in direct extensions `F_{p^k}`.
//!
//! A [`FieldCtx`] describes one field. Contexts are interned per
//! `(p, k, seed)`, so two calls asking for the same extension get the same
//! `Arc` and their elements can be compared directly. Elements ([`Fq`]) are
//! coefficient vectors over `F_p` in the power basis of the defining modulus.
//!
//! Extensions are never towers: `F_{p^6}` is `F_p[x]/(m(x))` with `deg m = 6`,
//! and elements of `F_{p^2}` reach it through [`embed_root`].

mod fpx;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use fpx::is_irreducible as fp_is_irreducible;

type Coeffs = SmallVec<[u64; 4]>;

/// An immutable description of `F_{p^k}`.
pub struct FieldCtx {
    p: u64,
    k: usize,
    /// Monic defining polynomial, low-to-high, `k + 1` entries. Empty for `k = 1`.
    modulus: Vec<u64>,
    seed: u64,
    /// Image of the generator of a smaller field (keyed by its modulus) in this field.
    embeddings: RwLock<HashMap<Vec<u64>, Coeffs>>,
    /// `frobenius_images[i] = (x^i)^p` in the power basis.
    frobenius_images: OnceLock<Vec<Coeffs>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
        }
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

type RegistryKey = (u64, usize, u64);

fn registry() -> &'static Mutex<HashMap<RegistryKey, Arc<FieldCtx>>> {
    static REGISTRY: OnceLock<Mutex<HashMap<RegistryKey, Arc<FieldCtx>>>> = OnceLock::new();
    REGISTRY.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Deterministic rng for a named purpose under a session seed.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

impl FieldCtx {
    /// `F_p` with the default seed 0.
    pub fn prime(p: u64) -> Result<Arc<FieldCtx>> {
        Self::prime_seeded(p, 0)
    }

    pub fn prime_seeded(p: u64, seed: u64) -> Result<Arc<FieldCtx>> {
        if p == 2 || p == 3 || !is_prime(p) || p >= (1u64 << 32) {
            return Err(Error::BadCharacteristic(p));
        }
        let mut reg = registry().lock().unwrap();
        let ctx = reg
            .entry((p, 1, seed))
            .or_insert_with(|| Arc::new(FieldCtx::build(p, 1, Vec::new(), seed)))
            .clone();
        Ok(ctx)
    }

    fn build(p: u64, k: usize, modulus: Vec<u64>, seed: u64) -> FieldCtx {
        FieldCtx {
            p,
            k,
            modulus,
            seed,
            embeddings: RwLock::new(HashMap::new()),
            frobenius_images: OnceLock::new(),
        }
    }

    /// `F_{p^k}` over the same prime and seed as `self`. Interned.
    pub fn extension(&self, k: usize) -> Arc<FieldCtx> {
        assert!(k >= 1, "extension degree must be positive");
        let key = (self.p, k, self.seed);
        if let Some(ctx) = registry().lock().unwrap().get(&key) {
            return ctx.clone();
        }
        let modulus = if k == 1 {
            Vec::new()
        } else {
            let mut rng = seeded_rng(self.seed, 0x6972_7265_6400_0000 ^ k as u64);
            fpx::find_irreducible(self.p, k, &mut rng)
        };
        let mut reg = registry().lock().unwrap();
        reg.entry(key)
            .or_insert_with(|| Arc::new(FieldCtx::build(self.p, k, modulus, self.seed)))
            .clone()
    }

    pub fn prime_field(&self) -> Arc<FieldCtx> {
        self.extension(1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree `k` over `F_p`.
    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Defining polynomial (monic, low-to-high); empty for the prime field.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn frobenius_images(&self) -> &[Coeffs] {
        self.frobenius_images.get_or_init(|| {
            let mut out = Vec::with_capacity(self.k);
            let gen = self.raw_gen();
            let gp = self.raw_pow(&gen, self.p);
            let mut acc = self.raw_one();
            for _ in 0..self.k {
                out.push(acc.clone());
                acc = self.raw_mul(&acc, &gp);
            }
            out
        })
    }

    fn raw_one(&self) -> Coeffs {
        let mut c: Coeffs = SmallVec::from_elem(0, self.k);
        c[0] = 1;
        c
    }

    fn raw_gen(&self) -> Coeffs {
        let mut c: Coeffs = SmallVec::from_elem(0, self.k);
        if self.k == 1 {
            c[0] = 1;
        } else {
            c[1] = 1;
        }
        c
    }

    fn raw_mul(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let p = self.p;
        let k = self.k;
        if k == 1 {
            return SmallVec::from_elem(a[0] * b[0] % p, 1);
        }
        let mut prod: SmallVec<[u128; 8]> = SmallVec::from_elem(0, 2 * k - 1);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] += (ai * bj) as u128;
            }
        }
        let mut r: SmallVec<[u64; 8]> = prod.iter().map(|&v| (v % p as u128) as u64).collect();
        let m = &self.modulus;
        for i in (k..2 * k - 1).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            r[i] = 0;
            for j in 0..k {
                let sub = c * m[j] % p;
                let idx = i - k + j;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.truncate(k);
        r.into_iter().collect()
    }

    fn raw_pow(&self, a: &[u64], mut e: u64) -> Coeffs {
        let mut base: Coeffs = a.iter().copied().collect();
        let mut acc = self.raw_one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(&acc, &base);
            }
            base = self.raw_mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Element of a finite field, tied to its [`FieldCtx`].
#[derive(Clone)]
pub struct Fq {
    ctx: Arc<FieldCtx>,
    c: Coeffs,
}

impl Fq {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Fq {
        Fq {
            ctx: ctx.clone(),
            c: SmallVec::from_elem(0, ctx.k),
        }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Fq {
        Fq {
            ctx: ctx.clone(),
            c: ctx.raw_one(),
        }
    }

    /// The class of `x` modulo the defining polynomial (1 in the prime field).
    pub fn generator(ctx: &Arc<FieldCtx>) -> Fq {
        Fq {
            ctx: ctx.clone(),
            c: ctx.raw_gen(),
        }
    }

    pub fn from_u64(ctx: &Arc<FieldCtx>, v: u64) -> Fq {
        let mut z = Fq::zero(ctx);
        z.c[0] = v % ctx.p;
        z
    }

    pub fn from_i64(ctx: &Arc<FieldCtx>, v: i64) -> Fq {
        let p = ctx.p as i64;
        Fq::from_u64(ctx, v.rem_euclid(p) as u64)
    }

    /// Builds an element from power-basis coefficients (reduced mod p).
    pub fn from_coeffs(ctx: &Arc<FieldCtx>, coeffs: &[u64]) -> Fq {
        let mut z = Fq::zero(ctx);
        for (i, &v) in coeffs.iter().enumerate().take(ctx.k) {
            z.c[i] = v % ctx.p;
        }
        z
    }

    pub fn random<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Fq {
        let c = (0..ctx.k).map(|_| rng.gen_range(0..ctx.p)).collect();
        Fq {
            ctx: ctx.clone(),
            c,
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Fq {
        loop {
            let a = Fq::random(ctx, rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&v| v == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&v| v == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn in_prime_field(&self) -> bool {
        self.c[1..].iter().all(|&v| v == 0)
    }

    /// The residue, if the element lies in `F_p`.
    pub fn to_u64(&self) -> Option<u64> {
        self.in_prime_field().then(|| self.c[0])
    }

    /// Same value re-tagged to a context with identical `p` and modulus.
    fn same_field(&self, other: &Fq) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx
    }

    fn check(&self, other: &Fq) {
        assert!(
            self.same_field(other),
            "field mismatch: {:?} vs {:?}",
            self.ctx,
            other.ctx
        );
    }

    pub fn inv(&self) -> Result<Fq> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.ctx.p;
        if self.ctx.k == 1 {
            return Ok(Fq::from_u64(&self.ctx, fpx::inv_mod_p(self.c[0], p)));
        }
        let a: Vec<u64> = self.c.to_vec();
        let inv = fpx::inv_mod_poly(&a, &self.ctx.modulus, p).ok_or(Error::DivisionByZero)?;
        Ok(Fq::from_coeffs(&self.ctx, &inv))
    }

    pub fn checked_div(&self, other: &Fq) -> Result<Fq> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u64) -> Fq {
        Fq {
            ctx: self.ctx.clone(),
            c: self.ctx.raw_pow(&self.c, e),
        }
    }

    pub fn square(&self) -> Fq {
        self * self
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self) -> Fq {
        if self.ctx.k == 1 {
            return self.clone();
        }
        let p = self.ctx.p;
        let imgs = self.ctx.frobenius_images();
        let mut acc: SmallVec<[u128; 8]> = SmallVec::from_elem(0, self.ctx.k);
        for (i, &ci) in self.c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (j, &v) in imgs[i].iter().enumerate() {
                acc[j] += (ci * v) as u128;
            }
        }
        Fq {
            ctx: self.ctx.clone(),
            c: acc.iter().map(|&v| (v % p as u128) as u64).collect(),
        }
    }

    /// `x ↦ x^{p^i}`.
    pub fn frobenius_pow(&self, i: usize) -> Fq {
        let k = self.ctx.k;
        let mut out = self.clone();
        for _ in 0..(i % k) {
            out = out.frobenius();
        }
        out
    }

    /// Norm down to `F_p`, returned as a residue.
    pub fn norm(&self) -> u64 {
        let mut acc = self.clone();
        let mut conj = self.clone();
        for _ in 1..self.ctx.k {
            conj = conj.frobenius();
            acc = &acc * &conj;
        }
        acc.c[0]
    }

    /// Quadratic character: true for nonzero squares.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let p = self.ctx.p;
        let n = self.norm();
        fpx::pow_mod_p(n, (p - 1) / 2, p) == 1
    }

    /// Degree over `F_p` of the smallest subfield containing the element.
    pub fn minimal_degree(&self) -> usize {
        let k = self.ctx.k;
        for d in 1..=k {
            if !k.is_multiple_of(d) {
                continue;
            }
            if self.frobenius_pow(d) == *self {
                return d;
            }
        }
        k
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.c == other.c
    }
}
impl Eq for Fq {}

impl Hash for Fq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Fq {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the coefficient vector, highest power first.
impl Ord for Fq {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.c.iter().rev().cmp(other.c.iter().rev())
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.k == 1 {
            return write!(f, "{}", self.c[0]);
        }
        write!(f, "[")?;
        for (i, v) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn add(self, rhs: &Fq) -> Fq {
        self.check(rhs);
        let p = self.ctx.p;
        let c = self
            .c
            .iter()
            .zip(rhs.c.iter())
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        Fq {
            ctx: self.ctx.clone(),
            c,
        }
    }
}

impl<'a> Sub<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn sub(self, rhs: &Fq) -> Fq {
        self.check(rhs);
        let p = self.ctx.p;
        let c = self
            .c
            .iter()
            .zip(rhs.c.iter())
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        Fq {
            ctx: self.ctx.clone(),
            c,
        }
    }
}

impl<'a> Mul<&'a Fq> for &'a Fq {
    type Output = Fq;
    fn mul(self, rhs: &Fq) -> Fq {
        self.check(rhs);
        Fq {
            ctx: self.ctx.clone(),
            c: self.ctx.raw_mul(&self.c, &rhs.c),
        }
    }
}

impl Neg for &Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        let p = self.ctx.p;
        Fq {
            ctx: self.ctx.clone(),
            c: self
                .c
                .iter()
                .map(|&a| if a == 0 { 0 } else { p - a })
                .collect(),
        }
    }
}

impl Neg for Fq {
    type Output = Fq;
    fn neg(self) -> Fq {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Fq> for Fq {
            type Output = Fq;
            fn $m(self, rhs: Fq) -> Fq {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Fq> for Fq {
            type Output = Fq;
            fn $m(self, rhs: &Fq) -> Fq {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Fq> for &'a Fq {
            type Output = Fq;
            fn $m(self, rhs: Fq) -> Fq {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Fq> for Fq {
    fn add_assign(&mut self, rhs: &Fq) {
        *self = &*self + rhs;
    }
}
impl SubAssign<&Fq> for Fq {
    fn sub_assign(&mut self, rhs: &Fq) {
        *self = &*self - rhs;
    }
}
impl MulAssign<&Fq> for Fq {
    fn mul_assign(&mut self, rhs: &Fq) {
        *self = &*self * rhs;
    }
}

/// Context for `F_p`; rejects `p ∈ {2, 3}` and composites.
pub fn mk_prime_field(p: u64) -> Result<Arc<FieldCtx>> {
    FieldCtx::prime(p)
}

/// `F_{p^k}` built over the prime field of `base`.
pub fn mk_extension(base: &Arc<FieldCtx>, k: usize) -> Arc<FieldCtx> {
    base.extension(k)
}

/// A random monic irreducible polynomial of degree `d` over `F_p`,
/// coefficients low-to-high.
pub fn find_irreducible<R: Rng + ?Sized>(ctx: &FieldCtx, d: usize, rng: &mut R) -> Vec<u64> {
    fpx::find_irreducible(ctx.p, d, rng)
}

fn embedding_root(source: &Arc<FieldCtx>, target: &Arc<FieldCtx>) -> Coeffs {
    if let Some(r) = target.embeddings.read().unwrap().get(&source.modulus) {
        return r.clone();
    }
    let coeffs: Vec<Fq> = source
        .modulus
        .iter()
        .map(|&v| Fq::from_u64(target, v))
        .collect();
    let poly = crate::mpoly::UPoly::from_coeffs(target, coeffs);
    let mut roots: Vec<Fq> = crate::mpoly::upoly::roots(&poly)
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    roots.sort();
    let root = roots
        .into_iter()
        .next()
        .expect("defining polynomial splits in any extension of divisible degree")
        .c;
    target
        .embeddings
        .write()
        .unwrap()
        .entry(source.modulus.clone())
        .or_insert(root)
        .clone()
}

/// Image of `elt ∈ F_{p^d}` under the fixed embedding `F_{p^d} → F_{p^L}`.
///
/// The embedding sends the generator of the source field to the smallest
/// root (in [`Fq`] order) of its modulus inside the target; it is computed
/// once per pair and cached on the target context.
pub fn embed_root(elt: &Fq, target: &Arc<FieldCtx>) -> Result<Fq> {
    let src = &elt.ctx;
    if src.p != target.p {
        return Err(Error::CtxMismatch);
    }
    if Arc::ptr_eq(src, target) || **src == **target {
        return Ok(Fq {
            ctx: target.clone(),
            c: elt.c.clone(),
        });
    }
    let (d, l) = (src.k, target.k);
    if l % d != 0 {
        return Err(Error::NoEmbedding { from: d, to: l });
    }
    if d == 1 {
        return Ok(Fq::from_u64(target, elt.c[0]));
    }
    let root = Fq {
        ctx: target.clone(),
        c: embedding_root(src, target),
    };
    let mut acc = Fq::zero(target);
    for &c in elt.c.iter().rev() {
        acc = &(&acc * &root) + &Fq::from_u64(target, c);
    }
    Ok(acc)
}

/// Inverse of [`embed_root`]: the preimage of `elt` in the subfield `sub`, if any.
pub fn descend(elt: &Fq, sub: &Arc<FieldCtx>) -> Option<Fq> {
    let big = &elt.ctx;
    if Arc::ptr_eq(big, sub) || **big == **sub {
        return Some(elt.clone());
    }
    let (d, l) = (sub.k, big.k);
    if l % d != 0 {
        return None;
    }
    if d == 1 {
        return elt.to_u64().map(|v| Fq::from_u64(sub, v));
    }
    // Columns: images of the power basis of `sub`.
    let p = big.p;
    let basis: Vec<Fq> = (0..d)
        .map(|i| {
            let mut e = Fq::zero(sub);
            e.c[i] = 1;
            embed_root(&e, big).expect("degree divides")
        })
        .collect();
    let mut rows: Vec<Vec<u64>> = (0..l)
        .map(|r| {
            let mut row: Vec<u64> = basis.iter().map(|b| b.c[r]).collect();
            row.push(elt.c[r]);
            row
        })
        .collect();
    let sol = fpx::solve_linear(&mut rows, d, p)?;
    Some(Fq::from_coeffs(sub, &sol))
}

/// Moves an element into the smallest field of the registry that contains it.
pub fn to_minimal_field(elt: &Fq) -> Fq {
    let d = elt.minimal_degree();
    let sub = elt.ctx.extension(d);
    descend(elt, &sub).expect("element lies in its minimal subfield")
}

/// Least common multiple.
pub fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_bad_characteristic() {
        assert_eq!(mk_prime_field(3).unwrap_err(), Error::BadCharacteristic(3));
        assert_eq!(mk_prime_field(2).unwrap_err(), Error::BadCharacteristic(2));
        assert_eq!(
            mk_prime_field(10).unwrap_err(),
            Error::BadCharacteristic(10)
        );
        assert_eq!(mk_prime_field(7).unwrap().degree(), 1);
        assert_eq!(mk_prime_field(10007).unwrap().p(), 10007);
    }

    #[test]
    fn inverse_in_f7() {
        let f7 = mk_prime_field(7).unwrap();
        let three = Fq::from_u64(&f7, 3);
        assert_eq!(three.inv().unwrap(), Fq::from_u64(&f7, 5));
        assert!(Fq::one(&f7).inv().unwrap().is_one());
        assert_eq!(Fq::zero(&f7).inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn irreducible_quadratics_have_no_roots() {
        for p in [5u64, 7] {
            let ctx = mk_prime_field(p).unwrap();
            let mut rng = seeded_rng(0, 1);
            let m = find_irreducible(&ctx, 2, &mut rng);
            assert_eq!(m.len(), 3);
            assert_eq!(m[2], 1);
            for x in 0..p {
                assert_ne!((m[0] + m[1] * x + x * x) % p, 0);
            }
        }
        // x^2+1 over F_7 and x^2+2 over F_5 qualify.
        assert!(fp_is_irreducible(&[1, 0, 1], 7));
        assert!(fp_is_irreducible(&[2, 0, 1], 5));
        assert!(!fp_is_irreducible(&[1, 0, 1], 5));
    }

    #[test]
    fn extension_is_interned_and_irreducible() {
        let f7 = mk_prime_field(7).unwrap();
        assert!(Arc::ptr_eq(&mk_extension(&f7, 1), &f7));
        let f49 = mk_extension(&f7, 2);
        assert!(Arc::ptr_eq(&f49, &mk_extension(&f7, 2)));
        assert!(fp_is_irreducible(f49.modulus(), 7));
        let big = mk_extension(&mk_prime_field(10007).unwrap(), 6);
        assert_eq!(big.degree(), 6);
        assert!(fp_is_irreducible(big.modulus(), 10007));
    }

    #[test]
    fn field_axioms_on_samples() {
        let base = mk_prime_field(10007).unwrap();
        let mut rng = seeded_rng(7, 2);
        for k in [1usize, 2, 3, 5] {
            let ctx = base.extension(k);
            for _ in 0..200 {
                let a = Fq::random(&ctx, &mut rng);
                let b = Fq::random(&ctx, &mut rng);
                let c = Fq::random(&ctx, &mut rng);
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                if !a.is_zero() {
                    assert!((&a * &a.inv().unwrap()).is_one());
                }
                assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
                assert_eq!(a.frobenius(), a.pow(10007));
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_field() {
        let f49 = mk_extension(&mk_prime_field(7).unwrap(), 2);
        let mut fixed = 0;
        for a in 0..7 {
            for b in 0..7 {
                let x = Fq::from_coeffs(&f49, &[a, b]);
                if x.frobenius() == x {
                    fixed += 1;
                    assert!(x.in_prime_field());
                }
            }
        }
        assert_eq!(fixed, 7);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let base = mk_prime_field(7).unwrap();
        let f49 = base.extension(2);
        let f74 = base.extension(4);
        let g = Fq::generator(&f49);
        let img = embed_root(&g, &f74).unwrap();
        // image is a root of the F_49 modulus
        let m = f49.modulus();
        let mut acc = Fq::zero(&f74);
        for &c in m.iter().rev() {
            acc = &(&acc * &img) + &Fq::from_u64(&f74, c);
        }
        assert!(acc.is_zero());
        assert_eq!(img.frobenius_pow(2), img);
        let mut rng = seeded_rng(3, 3);
        for _ in 0..100 {
            let a = Fq::random(&f49, &mut rng);
            let b = Fq::random(&f49, &mut rng);
            let ea = embed_root(&a, &f74).unwrap();
            let eb = embed_root(&b, &f74).unwrap();
            assert_eq!(embed_root(&(&a * &b), &f74).unwrap(), &ea * &eb);
            assert_eq!(embed_root(&(&a + &b), &f74).unwrap(), &ea + &eb);
            if a != b {
                assert_ne!(ea, eb);
            }
            assert_eq!(descend(&ea, &f49).unwrap(), a);
        }
        let f73 = base.extension(3);
        assert_eq!(
            embed_root(&g, &f73).unwrap_err(),
            Error::NoEmbedding { from: 2, to: 3 }
        );
    }

    #[test]
    fn minimal_degree_and_descent() {
        let base = mk_prime_field(31).unwrap();
        let f6 = base.extension(6);
        let f2 = base.extension(2);
        let x = embed_root(&Fq::generator(&f2), &f6).unwrap();
        assert_eq!(x.minimal_degree(), 2);
        let back = to_minimal_field(&x);
        assert_eq!(back.ctx().degree(), 2);
        assert_eq!(back, Fq::generator(&f2));
        assert_eq!(Fq::generator(&f6).minimal_degree(), 6);
        assert_eq!(Fq::from_u64(&f6, 5).minimal_degree(), 1);
    }

    #[test]
    fn quadratic_character() {
        let f7 = mk_prime_field(7).unwrap();
        let squares: Vec<u64> = (1..7)
            .filter(|&a| Fq::from_u64(&f7, a).is_square())
            .collect();
        assert_eq!(squares, vec![1, 2, 4]);
        let f49 = f7.extension(2);
        // every element of F_7 is a square in F_49
        for a in 1..7 {
            assert!(Fq::from_u64(&f49, a).is_square());
        }
    }
}
