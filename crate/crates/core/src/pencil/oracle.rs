//! Brute-force search for lines of `X` through points of `ℓ`, independent of
//! the fiber classification.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::galois::{FieldCtx, Fq};
use crate::mpoly::MPoly;

use super::{LineP3, QuarticWithLine};

/// All elements of `field`, enumerated by their coefficient vectors.
pub fn field_elements(field: &Arc<FieldCtx>) -> Vec<Fq> {
    let p = field.p();
    let k = field.degree();
    let q = p.pow(k as u32);
    (0..q)
        .map(|mut i| {
            let mut digits = Vec::with_capacity(k);
            for _ in 0..k {
                digits.push(i % p);
                i /= p;
            }
            Fq::from_coeffs(field, &digits)
        })
        .collect()
}

fn line_points(field: &Arc<FieldCtx>) -> Vec<Vec<Fq>> {
    let (zero, one) = (Fq::zero(field), Fq::one(field));
    let mut out: Vec<Vec<Fq>> = field_elements(field)
        .into_iter()
        .map(|a| vec![a, one.clone(), zero.clone(), zero.clone()])
        .collect();
    out.push(vec![one.clone(), zero.clone(), zero.clone(), zero]);
    out
}

fn lies_on(f: &MPoly, p: &[Fq], d: &[Fq]) -> bool {
    let ctx = p[0].ctx();
    (1..=4u64).all(|l| {
        let lam = Fq::from_u64(ctx, l);
        let q: Vec<Fq> = p.iter().zip(d).map(|(a, b)| a + &(&lam * b)).collect();
        f.eval(&q).is_zero()
    })
}

fn bilinear(h: &[Vec<Fq>], a: &[Fq], b: &[Fq]) -> Fq {
    let mut acc = Fq::zero(a[0].ctx());
    for i in 0..4 {
        for j in 0..4 {
            acc += &(&(&a[i] * &h[i][j]) * &b[j]);
        }
    }
    acc
}

fn companion(p: &[Fq]) -> Vec<Fq> {
    let ctx = p[0].ctx();
    let (zero, one) = (Fq::zero(ctx), Fq::one(ctx));
    if p[1].is_zero() {
        vec![zero.clone(), one, zero.clone(), zero]
    } else {
        vec![one, zero.clone(), zero.clone(), zero]
    }
}

/// Lines `≠ ℓ` on `X` through points of `ℓ(F_q)`, all defined over `field`.
///
/// At `P ∈ ℓ` every such line lies in `T_P X`, which is spanned by `ℓ` and
/// `R = (0, 0, α01, −α10)`. Writing directions as `P' + μR`, the quadratic
/// term of `f` along the line is `μ(2·P'ᵀHR + μ·RᵀHR)`, which leaves at most
/// one candidate unless it vanishes identically.
pub fn tangent_oracle_lines(x: &QuarticWithLine, field: &Arc<FieldCtx>) -> Vec<LineP3> {
    let f = x.f().embed(field).expect("extension");
    let hess: Vec<Vec<MPoly>> = (0..4)
        .map(|i| (0..4).map(|j| f.derivative(i).derivative(j)).collect())
        .collect();
    let (a10, a01) = (x.alpha(1, 0), x.alpha(0, 1));
    let elements = field_elements(field);
    let two = Fq::from_u64(field, 2);
    let mut out = BTreeSet::new();
    for p in line_points(field) {
        let z = [p[0].clone(), p[1].clone()];
        let zero = Fq::zero(field);
        let r = vec![zero.clone(), zero, a01.eval(&z), -&a10.eval(&z)];
        if r.iter().all(Fq::is_zero) {
            continue;
        }
        let h: Vec<Vec<Fq>> = hess
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&p)).collect())
            .collect();
        let pp = companion(&p);
        let c1 = bilinear(&h, &pp, &r);
        let c2 = bilinear(&h, &r, &r);
        let mut dirs: Vec<Vec<Fq>> = Vec::new();
        if c2.is_zero() {
            dirs.push(r.clone());
            if c1.is_zero() {
                for mu in elements.iter().skip(1) {
                    dirs.push(pp.iter().zip(&r).map(|(a, b)| a + &(mu * b)).collect());
                }
            }
        } else if !c1.is_zero() {
            let mu = -&(&(&two * &c1) * &c2.inv().unwrap());
            dirs.push(pp.iter().zip(&r).map(|(a, b)| a + &(&mu * b)).collect());
        }
        for d in dirs {
            if lies_on(&f, &p, &d) {
                out.insert(Key(LineP3::through_points(&p, &d)));
            }
        }
    }
    out.into_iter().map(|k| k.0).collect()
}

/// The same set found by testing every line through every point of
/// `ℓ(F_q)`. Cost is about `q³` line tests.
pub fn exhaustive_lines(x: &QuarticWithLine, field: &Arc<FieldCtx>) -> Vec<LineP3> {
    let f = x.f().embed(field).expect("extension");
    let elements = field_elements(field);
    let (zero, one) = (Fq::zero(field), Fq::one(field));
    let mut out = BTreeSet::new();
    for p in line_points(field) {
        let pp = companion(&p);
        let basis = [
            pp.clone(),
            {
                let mut e = vec![zero.clone(); 4];
                e[2] = one.clone();
                e
            },
            {
                let mut e = vec![zero.clone(); 4];
                e[3] = one.clone();
                e
            },
        ];
        let combo = |c: [&Fq; 3]| -> Vec<Fq> {
            (0..4)
                .map(|i| {
                    let mut acc = Fq::zero(field);
                    for k in 0..3 {
                        acc += &(c[k] * &basis[k][i]);
                    }
                    acc
                })
                .collect()
        };
        let mut dirs = Vec::new();
        for a in &elements {
            for b in &elements {
                dirs.push(combo([a, b, &one]));
            }
            dirs.push(combo([a, &one, &zero]));
        }
        for d in dirs {
            if lies_on(&f, &p, &d) {
                out.insert(Key(LineP3::through_points(&p, &d)));
            }
        }
    }
    out.into_iter().map(|k| k.0).collect()
}

/// Lines from a fiber table, moved into `field`, in the oracle's ordering.
pub fn normalize_line_set<'a>(
    lines: impl IntoIterator<Item = &'a LineP3>,
    field: &Arc<FieldCtx>,
) -> Vec<LineP3> {
    let set: BTreeSet<Key> = lines
        .into_iter()
        .map(|l| Key(l.minimal().embed(field).expect("line field divides target")))
        .collect();
    set.into_iter().map(|k| k.0).collect()
}

#[derive(PartialEq, Eq)]
struct Key(LineP3);

impl Key {
    fn sort_key(&self) -> Vec<Vec<u64>> {
        self.0
            .equations()
            .iter()
            .flat_map(|e| e.iter().map(|c| c.coeffs().to_vec()))
            .collect()
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}
