//! The flex surface: the closure of the lines that are tangent to a fiber at
//! the point where the fiber meets `ℓ`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{descend, seeded_rng, FieldCtx, Fq};
use crate::linalg::{self, Mat};
use crate::mpoly::binary::root_multiplicities;
use crate::mpoly::upoly::{factor_univariate, interpolate, roots, squarefree_decompose, UPoly};
use crate::mpoly::{MPoly, Mono, PolyRing, ProjPoint};
use crate::pencil::{pi_of_point, QuarticWithLine, RamificationProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FlexRole {
    #[serde(rename = "tangent-plane")]
    TangentPlane,
    #[serde(rename = "pencil-plane")]
    PencilPlane,
    #[serde(rename = "residual")]
    Residual,
}

/// A component of the flex surface. Plane components are grouped into
/// `F_p`-irreducible products of conjugate planes through `ℓ`.
#[derive(Clone, Debug)]
pub struct FlexComponent {
    pub poly: MPoly,
    pub degree: usize,
    pub multiplicity: usize,
    pub role: FlexRole,
    /// Pencil parameters of the planes (empty for the residual).
    pub params: Vec<ProjPoint>,
}

#[derive(Clone, Debug)]
pub struct FlexSurface {
    /// Eliminant with the extraneous plane power removed, normalized coordinates.
    pub raw: MPoly,
    /// Exponent of the extraneous plane that was removed.
    pub stripped_power: u32,
    pub components: Vec<FlexComponent>,
    pub reduced_degree: usize,
}

impl FlexSurface {
    pub fn residual(&self) -> Option<&FlexComponent> {
        self.components
            .iter()
            .find(|c| c.role == FlexRole::Residual)
    }

    pub fn planes(&self) -> impl Iterator<Item = &FlexComponent> {
        self.components
            .iter()
            .filter(|c| c.role != FlexRole::Residual)
    }

    /// Number of distinct tangent planes among the components.
    pub fn tangent_plane_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| c.role == FlexRole::TangentPlane)
            .map(|c| c.degree)
            .sum()
    }
}

/// Outcome of [`residual_irreducibility`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A plane through `ℓ` divides the input.
    HasLinearFactor(MPoly),
    /// No plane through `ℓ` divides the input; nothing stronger is claimed.
    LinearFree,
    /// Eisenstein at the prime `x_prime` after clearing the leading
    /// coefficient of the main variable.
    EisensteinIrreducible {
        main_var: usize,
        prime_var: usize,
    },
    Unverified,
}

impl Certificate {
    pub fn label(&self) -> &'static str {
        match self {
            Certificate::HasLinearFactor(_) => "has-linear-factor",
            Certificate::LinearFree => "linear-free",
            Certificate::EisensteinIrreducible { .. } => "eisenstein-irreducible",
            Certificate::Unverified => "unverified",
        }
    }
}

fn nodes(field: &Arc<FieldCtx>, n: u64) -> Vec<Fq> {
    (0..n)
        .map(|i| {
            let mut digits = Vec::new();
            let mut r = i;
            for _ in 0..field.degree() {
                digits.push(r % field.p());
                r /= field.p();
            }
            Fq::from_coeffs(field, &digits)
        })
        .collect()
}

fn dehomogenized(f: &MPoly, deg: u16) -> Vec<Fq> {
    (0..=deg)
        .map(|k| f.coeff(&Mono::from_exps(&[k, deg - k])))
        .collect()
}

fn sylvester_det(f: &[Fq], g: &[Fq]) -> Fq {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let ctx = f[0].ctx();
    let mut a: Mat = Vec::with_capacity(m + n);
    for r in 0..n {
        let mut row = vec![Fq::zero(ctx); m + n];
        for i in 0..=m {
            row[r + i] = f[m - i].clone();
        }
        a.push(row);
    }
    for r in 0..m {
        let mut row = vec![Fq::zero(ctx); m + n];
        for i in 0..=n {
            row[r + i] = g[n - i].clone();
        }
        a.push(row);
    }
    linalg::det(&a)
}

const GRID: [(u16, u16); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

/// `Res_z(H3, H8)` for the family of flex lines, where the tangent plane at
/// `z ∈ ℓ` is `H3 = α10·x3 + α01·x4` and the flex line inside it is cut out by
/// `H8`, a form linear in `x1, x2` and the chosen `side` variable (`2` for
/// `x3`, `3` for `x4`). The result is a degree-11 form, cubic in `(x1, x2)`,
/// recovered from values at a grid of points.
fn eliminant(x: &QuarticWithLine, side: usize) -> MPoly {
    let base = x.ctx().clone();
    let a = x.alpha(0, 1);
    let b = x.alpha(1, 0);
    let h: Vec<MPoly> = (0..2)
        .map(|i| &(&a * &b.derivative(i)) - &(&b * &a.derivative(i)))
        .collect();
    let h3 = &(&(&(&a * &a) * &x.alpha(2, 0)) - &(&(&a * &b) * &x.alpha(1, 1)))
        + &(&(&b * &b) * &x.alpha(0, 2));
    let lead = if side == 2 { a.clone() } else { -&b };
    let p1 = dehomogenized(&(&lead * &h[0]), 8);
    let p2 = dehomogenized(&(&lead * &h[1]), 8);
    let r = dehomogenized(&h3, 8);
    let bz = dehomogenized(&b, 3);
    let az = dehomogenized(&a, 3);

    let mut k = 1;
    while (base.p() as u128).pow((base.degree() * k) as u32) < 16 {
        k += 1;
    }
    let field = base.extension(base.degree() * k);
    let up = |v: &[Fq]| -> Vec<Fq> {
        v.iter()
            .map(|c| crate::galois::embed_root(c, &field).unwrap())
            .collect()
    };
    let (p1, p2, r, bz, az) = (up(&p1), up(&p2), up(&r), up(&bz), up(&az));
    let small = nodes(&field, 4);
    let grid: Vec<(Fq, Fq)> = GRID
        .iter()
        .map(|&(i, j)| (small[i as usize].clone(), small[j as usize].clone()))
        .collect();
    let vander: Mat = grid
        .iter()
        .map(|(u, v)| {
            GRID.iter()
                .map(|&(i, j)| &u.pow(i as u64) * &v.pow(j as u64))
                .collect()
        })
        .collect();
    let vinv = linalg::inverse(&vander).expect("triangular grid is unisolvent");
    let x3_nodes = nodes(&field, 12);
    let one = Fq::one(&field);
    // coefficient of x1^i x2^j as a function of x3 (x4 = 1)
    let mut samples: Vec<Vec<Fq>> = vec![Vec::new(); GRID.len()];
    for x3 in &x3_nodes {
        let (v3, v4) = (x3.clone(), one.clone());
        let h3row: Vec<Fq> = bz
            .iter()
            .zip(&az)
            .map(|(bb, aa)| &(bb * &v3) + &(aa * &v4))
            .collect();
        let side_val = if side == 2 { &v3 } else { &v4 };
        let vals: Vec<Fq> = grid
            .iter()
            .map(|(u, v)| {
                let h8row: Vec<Fq> = (0..=8)
                    .map(|k| &(&(&p1[k] * u) + &(&p2[k] * v)) + &(&r[k] * side_val))
                    .collect();
                sylvester_det(&h3row, &h8row)
            })
            .collect();
        let coeffs = linalg::mat_vec(&vinv, &vals);
        for (slot, c) in samples.iter_mut().zip(coeffs) {
            slot.push(c);
        }
    }
    let ring = PolyRing::space(&base);
    let mut terms = Vec::new();
    for (g, &(i, j)) in GRID.iter().enumerate() {
        let u = interpolate(&x3_nodes, &samples[g]);
        for (e3, c) in u.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e4 = 11 - i as usize - j as usize - e3;
            let c = descend(c, &base).expect("eliminant is defined over the base field");
            terms.push((Mono::from_exps(&[i, j, e3 as u16, e4 as u16]), c));
        }
    }
    MPoly::from_terms(&ring, terms)
}

fn squarefree_cubic(f: &MPoly) -> bool {
    if f.is_zero() {
        return false;
    }
    let c: Vec<Fq> = (0..=3u16)
        .map(|i| f.coeff(&Mono::from_exps(&[i, 3 - i])))
        .collect();
    root_multiplicities(&c, 3)
        .map(|m| m == [1, 1, 1])
        .unwrap_or(false)
}

fn pencil_block(m: &Mat) -> Mat {
    let ctx = m[0][0].ctx();
    let mut b = linalg::identity(ctx, 4);
    for i in 0..2 {
        for j in 0..2 {
            b[2 + i][2 + j] = m[i][j].clone();
        }
    }
    b
}

/// Computes the flex surface of `(X, ℓ)`.
///
/// A random change of the pencil coordinates first makes `α10` and `α01`
/// squarefree. The eliminant is computed on both the `x3` side and the `x4`
/// side, each stripped of its extraneous plane, and the two must agree.
pub fn flex_surface(x: &QuarticWithLine, prof: &RamificationProfile) -> Result<FlexSurface> {
    let base = x.ctx().clone();
    let mut rng = seeded_rng(base.seed(), 0x464c_4558);
    for _ in 0..32 {
        let m: Mat = (0..2)
            .map(|_| {
                (0..2)
                    .map(|_| Fq::from_u64(&base, rng.gen_range(0..base.p())))
                    .collect()
            })
            .collect();
        if linalg::det(&m).is_zero() {
            continue;
        }
        let moved = QuarticWithLine::new(x.f().substitute_linear(&pencil_block(&m))?)?;
        if !squarefree_cubic(&moved.alpha(1, 0)) || !squarefree_cubic(&moved.alpha(0, 1)) {
            continue;
        }
        let (r3, m3) = eliminant(&moved, 2).strip_var_power(2);
        let (r4, _) = eliminant(&moved, 3).strip_var_power(3);
        if r3.is_zero() || !r3.eq_up_to_scalar(&r4) {
            continue;
        }
        let back = pencil_block(&linalg::inverse(&m)?);
        let raw = r3.substitute_linear(&back)?.monic();
        return decompose(x, raw, m3, prof);
    }
    Err(Error::EliminationDegenerate)
}

/// Coefficients of `f` with respect to `(x1, x2)`, dehomogenized at `x4 = 1`,
/// together with the largest power of `x4` dividing all of them.
fn pencil_content(f: &MPoly) -> (UPoly, u32) {
    let ctx = f.ctx().clone();
    let mut groups: BTreeMap<(u16, u16), Vec<(u16, Fq)>> = BTreeMap::new();
    let mut x4_order = u32::MAX;
    for (m, c) in f.terms() {
        groups
            .entry((m.0[0], m.0[1]))
            .or_default()
            .push((m.0[2], c.clone()));
    }
    for &(i, j) in groups.keys() {
        let o = f
            .terms()
            .filter(|(m, _)| m.0[0] == i && m.0[1] == j)
            .map(|(m, _)| m.0[3] as u32)
            .min()
            .unwrap();
        x4_order = x4_order.min(o);
    }
    let mut g = UPoly::zero(&ctx);
    for terms in groups.values() {
        let deg = terms.iter().map(|t| t.0).max().unwrap() as usize;
        let mut c = vec![Fq::zero(&ctx); deg + 1];
        for (e, v) in terms {
            c[*e as usize] = v.clone();
        }
        g = g.gcd(&UPoly::from_coeffs(&ctx, c));
    }
    (g, if x4_order == u32::MAX { 0 } else { x4_order })
}

fn homogenize_x3x4(u: &UPoly, deg: usize) -> MPoly {
    let ring = PolyRing::space(u.ctx());
    MPoly::from_terms(
        &ring,
        u.coeffs().iter().enumerate().map(|(e, c)| {
            (
                Mono::from_exps(&[0, 0, e as u16, (deg - e) as u16]),
                c.clone(),
            )
        }),
    )
}

/// Number of distinct points and the common multiplicity of `w` on random
/// lines; the maximum over a few lines gives the degree of the reduced surface.
fn reduced_degree_of(w: &MPoly) -> (usize, usize) {
    let base = w.ctx().clone();
    let field = if base.p() < 64 {
        base.extension(base.degree() * 3)
    } else {
        base.clone()
    };
    let mut rng = seeded_rng(base.seed(), 0x5244_4547);
    let deg = w.total_degree() as usize;
    let mut best = (0, deg.max(1));
    let mut tries = 0;
    while tries < 4 {
        let p: Vec<Fq> = (0..4).map(|_| Fq::random(&field, &mut rng)).collect();
        let q: Vec<Fq> = (0..4).map(|_| Fq::random(&field, &mut rng)).collect();
        let vals: Vec<Fq> = nodes(&field, deg as u64 + 1)
            .into_iter()
            .map(|l| {
                let pt: Vec<Fq> = p.iter().zip(&q).map(|(a, b)| a + &(&l * b)).collect();
                w.eval(&pt)
            })
            .collect();
        let u = interpolate(&nodes(&field, deg as u64 + 1), &vals);
        if u.is_zero() || u.deg() != deg {
            continue;
        }
        tries += 1;
        let Ok(sq) = squarefree_decompose(&u) else {
            continue;
        };
        let distinct: usize = sq.factors.iter().map(|(g, _)| g.deg()).sum();
        let mult = sq.factors.iter().map(|(_, m)| *m).fold(0, gcd);
        if distinct > best.0 {
            best = (distinct, mult.max(1));
        }
    }
    best
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn decompose(
    x: &QuarticWithLine,
    raw: MPoly,
    m: u32,
    prof: &RamificationProfile,
) -> Result<FlexSurface> {
    let base = x.ctx().clone();
    let tangent: Vec<ProjPoint> = prof
        .points
        .iter()
        .map(|(p, _)| pi_of_point(x, p).map(|q| q.minimal()))
        .collect::<Result<_>>()?;
    let (g, x4_order) = pencil_content(&raw);
    let content = &homogenize_x3x4(&g, g.deg())
        * &MPoly::monomial(raw.ring(), Fq::one(&base), Mono::var(3, x4_order as u16));
    let mut components = Vec::new();
    let role_of = |params: &[ProjPoint]| {
        if params.iter().all(|p| tangent.contains(&p.minimal())) {
            FlexRole::TangentPlane
        } else {
            FlexRole::PencilPlane
        }
    };
    if x4_order > 0 {
        let params = vec![ProjPoint::infinity(&base)];
        components.push(FlexComponent {
            poly: MPoly::var(raw.ring(), 3),
            degree: 1,
            multiplicity: x4_order as usize,
            role: role_of(&params),
            params,
        });
    }
    if g.deg() > 0 {
        for (factor, mult) in factor_univariate(&g)?.factors {
            let d = factor.deg();
            let field = base.extension(base.degree() * d);
            let params: Vec<ProjPoint> = roots(&factor.embed(&field)?)
                .into_iter()
                .map(|(r, _)| ProjPoint::finite(r))
                .collect();
            components.push(FlexComponent {
                poly: homogenize_x3x4(&factor, d),
                degree: d,
                multiplicity: mult,
                role: role_of(&params),
                params,
            });
        }
    }
    let mut reduced_degree: usize = components.iter().map(|c| c.degree).sum();
    let residual = raw
        .div_exact(&content)
        .ok_or(Error::EliminationDegenerate)?;
    if residual.total_degree() > 0 {
        let (distinct, mult) = reduced_degree_of(&residual);
        reduced_degree += distinct;
        components.push(FlexComponent {
            degree: residual.total_degree() as usize,
            poly: residual.lex_monic(),
            multiplicity: mult,
            role: FlexRole::Residual,
            params: Vec::new(),
        });
    }
    Ok(FlexSurface {
        raw,
        stripped_power: m,
        components,
        reduced_degree,
    })
}

/// The reduced flex surface with the tangent planes at the ramification
/// points removed. Every such plane must be a component.
pub fn strip_tangent_planes(
    flex: &FlexSurface,
    prof: &RamificationProfile,
    x: &QuarticWithLine,
) -> Result<MPoly> {
    let planes: Vec<ProjPoint> = flex
        .planes()
        .flat_map(|c| c.params.iter().map(ProjPoint::minimal))
        .collect();
    for (p, _) in &prof.points {
        if !planes.contains(&pi_of_point(x, p)?.minimal()) {
            return Err(Error::PlaneNotComponent);
        }
    }
    let ring = flex.raw.ring().clone();
    let mut out = MPoly::one(&ring);
    for c in &flex.components {
        if c.role != FlexRole::TangentPlane {
            out = &out * &c.poly;
        }
    }
    Ok(out)
}

fn var_order(f: &MPoly, v: usize) -> u32 {
    f.terms()
        .map(|(m, _)| m.0[v] as u32)
        .min()
        .unwrap_or(u32::MAX)
}

/// Certifies what can be certified about the irreducibility of `w`.
///
/// Plane factors through `ℓ` are detected exactly from the content with
/// respect to `(x1, x2)`. Irreducibility is certified by Eisenstein's
/// criterion at `x3` or `x4` after substituting `x_main = y / (x3^i·x4^j)`,
/// when the leading coefficient in the main variable is a monomial in
/// `x3, x4`.
pub fn residual_irreducibility(w: &MPoly) -> Certificate {
    if w.is_zero() || w.total_degree() == 0 || w.ring().nvars() != 4 {
        return Certificate::Unverified;
    }
    let (g, x4_order) = pencil_content(w);
    if x4_order > 0 {
        return Certificate::HasLinearFactor(MPoly::var(w.ring(), 3));
    }
    if g.deg() > 0 {
        let fac = factor_univariate(&g).ok();
        let lin = fac.and_then(|f| f.factors.into_iter().find(|(h, _)| h.deg() == 1));
        let plane = match lin {
            Some((h, _)) => homogenize_x3x4(&h, 1),
            None => homogenize_x3x4(&g, g.deg()),
        };
        return Certificate::HasLinearFactor(plane);
    }
    for main in 0..2 {
        for prime in 2..4 {
            if eisenstein(w, main, prime) {
                return Certificate::EisensteinIrreducible {
                    main_var: main,
                    prime_var: prime,
                };
            }
        }
    }
    Certificate::LinearFree
}

fn eisenstein(w: &MPoly, main: usize, prime: usize) -> bool {
    let other = 5 - prime;
    let c = w.coefficients_in(main);
    let n = c.len() - 1;
    if n == 0 {
        return false;
    }
    let lead = &c[n];
    if lead.len() != 1 {
        return false;
    }
    let (lm, _) = lead.leading_term().unwrap();
    if lm.0[0] != 0 || lm.0[1] != 0 {
        return false;
    }
    let a = lm.0[prime] as i64;
    if c[0].is_zero() {
        return false;
    }
    for v in [prime, other] {
        if c.iter().all(|ck| ck.is_zero() || var_order(ck, v) > 0) {
            return false;
        }
    }
    // the constant term after substitution must have valuation exactly one
    let num = 1 + a - var_order(&c[0], prime) as i64;
    if num < 0 || num % n as i64 != 0 {
        return false;
    }
    let i = num / n as i64;
    (1..n).all(|k| c[k].is_zero() || var_order(&c[k], prime) as i64 + (n - k) as i64 * i - a >= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::parse_poly;
    use crate::pencil::ramification_profile;

    const Z_REFERENCE: &str = "x3*x1^3 + x4*x2^3 + 3*(2*x3^2 - x3*x4 + x4^2)*x1*x2 \
        + 4*(20*x3^4 + 5*x4^4 - 18*x3^3*x4 - 4*x3^2*x4^2 - 9*x3*x4^3)/3";
    const SEXTIC: &str = "27*x1^3*x3^2*x4 + 27*x2^3*x3*x4^2 + 27*x1*x2*x3*x4*q - q^3";

    #[test]
    fn z_reference_flex_surface() {
        let ctx = mk_prime_field(10007).unwrap();
        let ring = PolyRing::space(&ctx);
        let x = QuarticWithLine::new(parse_poly(Z_REFERENCE, &ring).unwrap()).unwrap();
        let prof = ramification_profile(&x).unwrap();
        let flex = flex_surface(&x, &prof).unwrap();
        assert_eq!(flex.reduced_degree, 8);
        assert_eq!(flex.tangent_plane_count(), 2);
        let mut b = std::collections::HashMap::new();
        b.insert(
            "q".to_string(),
            parse_poly("3*(2*x3^2 - x3*x4 + x4^2)", &ring).unwrap(),
        );
        let h = crate::mpoly::parse_poly_with(SEXTIC, &ring, &b).unwrap();
        let res = strip_tangent_planes(&flex, &prof, &x).unwrap();
        assert!(res.eq_up_to_scalar(&h));
        assert!(matches!(
            residual_irreducibility(&res),
            Certificate::EisensteinIrreducible { .. }
        ));
    }

    #[test]
    fn linear_factor_is_reported() {
        let ctx = mk_prime_field(10007).unwrap();
        let ring = PolyRing::space(&ctx);
        let w = parse_poly("x3*(x1^3 + x2^2*x4 + x3^3)", &ring).unwrap();
        assert!(matches!(
            residual_irreducibility(&w),
            Certificate::HasLinearFactor(_)
        ));
    }
}
