//! Dense matrices over a finite field.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{FieldCtx, Fq};

/// Row-major dense matrix.
pub type Mat = Vec<Vec<Fq>>;

pub fn identity(ctx: &Arc<FieldCtx>, n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Fq::one(ctx) } else { Fq::zero(ctx) })
                .collect()
        })
        .collect()
}

pub fn from_u64(ctx: &Arc<FieldCtx>, rows: &[&[i64]]) -> Mat {
    rows.iter()
        .map(|r| r.iter().map(|&v| Fq::from_i64(ctx, v)).collect())
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let ctx = a[0][0].ctx().clone();
    let (n, m, k) = (a.len(), b[0].len(), b.len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = Fq::zero(&ctx);
                    for t in 0..k {
                        acc += &(&a[i][t] * &b[t][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Mat, v: &[Fq]) -> Vec<Fq> {
    a.iter()
        .map(|row| {
            let mut acc = Fq::zero(v[0].ctx());
            for (x, y) in row.iter().zip(v) {
                acc += &(x * y);
            }
            acc
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Fq], a: &Mat) -> Vec<Fq> {
    let m = a[0].len();
    (0..m)
        .map(|j| {
            let mut acc = Fq::zero(v[0].ctx());
            for (i, x) in v.iter().enumerate() {
                acc += &(x * &a[i][j]);
            }
            acc
        })
        .collect()
}

pub fn transpose(a: &Mat) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn det(a: &Mat) -> Fq {
    let n = a.len();
    let ctx = a[0][0].ctx().clone();
    let mut m = a.clone();
    let mut acc = Fq::one(&ctx);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Fq::zero(&ctx);
        };
        if piv != c {
            m.swap(piv, c);
            acc = -acc;
        }
        acc *= &m[c][c];
        let inv = m[c][c].inv().expect("nonzero pivot");
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[r][j] -= &t;
            }
        }
    }
    acc
}

/// Reduced row echelon form and pivot columns.
pub fn rref(a: &Mat) -> (Mat, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    if rows == 0 {
        return (m, Vec::new());
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, piv);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(a: &Mat) -> usize {
    rref(a).1.len()
}

/// Basis of the right kernel `{v : a·v = 0}`.
pub fn kernel(a: &Mat, ncols: usize, ctx: &Arc<FieldCtx>) -> Vec<Vec<Fq>> {
    if a.is_empty() {
        return (0..ncols)
            .map(|i| {
                (0..ncols)
                    .map(|j| if i == j { Fq::one(ctx) } else { Fq::zero(ctx) })
                    .collect()
            })
            .collect();
    }
    let (m, pivots) = rref(a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Fq::zero(ctx); ncols];
            v[f] = Fq::one(ctx);
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[i][f];
            }
            v
        })
        .collect()
}

pub fn inverse(a: &Mat) -> Result<Mat> {
    let n = a.len();
    let ctx = a[0][0].ctx().clone();
    let aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j {
                    Fq::one(&ctx)
                } else {
                    Fq::zero(&ctx)
                });
            }
            r
        })
        .collect();
    let (m, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Cross product: the line through two points of P², or the point on two lines.
pub fn cross3(a: &[Fq], b: &[Fq]) -> [Fq; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// Scales a vector so its first nonzero entry is 1.
pub fn normalize_first(v: &[Fq]) -> Vec<Fq> {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
    }
}

/// Moves every entry into `target` through the fixed embedding.
pub fn embed_mat(a: &Mat, target: &Arc<FieldCtx>) -> Result<Mat> {
    a.iter()
        .map(|r| {
            r.iter()
                .map(|x| crate::galois::embed_root(x, target))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;

    #[test]
    fn det_and_inverse() {
        let ctx = mk_prime_field(101).unwrap();
        let a = from_u64(&ctx, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(det(&a), Fq::from_u64(&ctx, 18));
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(&ctx, 3));
        let s = from_u64(&ctx, &[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&s).unwrap_err(), Error::SingularMatrix);
        assert_eq!(rank(&s), 1);
        let k = kernel(&s, 2, &ctx);
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&s, &k[0]).iter().all(|x| x.is_zero()));
    }
}
