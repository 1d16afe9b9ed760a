//! Sylvester resultants by fraction-free (Bareiss) elimination.

use crate::error::{Error, Result};

use super::MPoly;

/// `Res_var(f, g)` with the natural degrees of `f` and `g` in `var`.
pub fn resultant(f: &MPoly, g: &MPoly, var: usize) -> Result<MPoly> {
    let m = f.degree_in(var) as usize;
    let n = g.degree_in(var) as usize;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if m == 0 && n == 0 {
        return Err(Error::ZeroInput);
    }
    resultant_formal(f, g, var, m, n)
}

/// Determinant of the Sylvester matrix built with formal degrees `m ≥ deg f`
/// and `n ≥ deg g`. For homogeneous inputs this is the homogeneous resultant,
/// which keeps common roots at infinity.
pub fn resultant_formal(f: &MPoly, g: &MPoly, var: usize, m: usize, n: usize) -> Result<MPoly> {
    f.check(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if (f.degree_in(var) as usize) > m || (g.degree_in(var) as usize) > n {
        return Err(Error::Invalid("formal degree below actual degree".into()));
    }
    let ring = f.ring().clone();
    let zero = MPoly::zero(&ring);
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let coef = |c: &[MPoly], i: usize| c.get(i).cloned().unwrap_or_else(|| zero.clone());
    let size = m + n;
    if size == 0 {
        return Ok(MPoly::one(&ring));
    }
    // Rows: n shifts of f, m shifts of g; columns by descending power.
    let mut a: Vec<Vec<MPoly>> = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![zero.clone(); size];
        for i in 0..=m {
            row[r + i] = coef(&fc, m - i);
        }
        a.push(row);
    }
    for r in 0..m {
        let mut row = vec![zero.clone(); size];
        for i in 0..=n {
            row[r + i] = coef(&gc, n - i);
        }
        a.push(row);
    }
    Ok(bareiss_det(a))
}

/// Fraction-free determinant over a polynomial ring.
pub(crate) fn bareiss_det(mut a: Vec<Vec<MPoly>>) -> MPoly {
    let n = a.len();
    let ring = a[0][0].ring().clone();
    let mut sign_neg = false;
    let mut prev = MPoly::one(&ring);
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return MPoly::zero(&ring);
            };
            a.swap(k, piv);
            sign_neg = !sign_neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MPoly::zero(&ring);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_neg {
        -&d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::{parse_poly, PolyRing};

    #[test]
    fn linear_and_shared_root() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::new(&ctx, &["x", "a", "b"]);
        let f = parse_poly("x - a", &r).unwrap();
        let g = parse_poly("x - b", &r).unwrap();
        let res = resultant(&f, &g, 0).unwrap();
        assert_eq!(res, parse_poly("a - b", &r).unwrap());
        let f = parse_poly("x^2 - 1", &r).unwrap();
        let g = parse_poly("x - 1", &r).unwrap();
        assert!(resultant(&f, &g, 0).unwrap().is_zero());
        let zero = parse_poly("0", &r).unwrap();
        assert_eq!(resultant(&zero, &g, 0).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn formal_degree_keeps_root_at_infinity() {
        let ctx = mk_prime_field(101).unwrap();
        let r = PolyRing::new(&ctx, &["z", "y"]);
        // both forms vanish at z = infinity when read with formal degree 2
        let f = parse_poly("z - y", &r).unwrap();
        let g = parse_poly("z + 3", &r).unwrap();
        assert!(resultant_formal(&f, &g, 0, 2, 2).unwrap().is_zero());
        assert!(!resultant(&f, &g, 0).unwrap().is_zero());
    }
}
