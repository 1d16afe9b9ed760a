//! The explicit families `𝒯` and `𝒵`, the ruled quartics `S₄(γ)`, and a
//! randomized search for quartics of ramification type `1⁴`.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flexline::segre_compose;
use crate::galois::{seeded_rng, FieldCtx, Fq};
use crate::mpoly::{parse_poly, parse_poly_with, resultant_formal, MPoly, Mono, PolyRing};
use crate::pencil::{is_smooth, ramification_profile, QuarticWithLine, RamificationType};

const T_DISPLAY: &str = "g - 4*c^3*(b+4*a*c^3)*x1*x2*x4^2 + b*x1*x2*x3*x4 + a*x1*x2*x3^2 \
    + x2^2*(x2-3*c*x1)*x4 + x1^3*x3 + c*(x3-4*c^3*x4)*((b+4*a*c^3)*x4+a*x3)^2*(c*x1+x2)/3";

const Z_DISPLAY: &str = "x3*x1^3 + x4*x2^3 + x1*x2*q + g";

const S4_DISPLAY: &str = "x3*x1^3 + x4*x2^3 + gamma*x1*x2*x3*x4 - gamma^3*x3^2*x4^2/27";

#[derive(Clone, Debug)]
pub struct TParams {
    pub a: Fq,
    pub b: Fq,
    pub c: Fq,
    /// Binary quartic in `x3, x4`.
    pub g: MPoly,
}

#[derive(Clone, Debug)]
pub struct ZParams {
    /// Binary quadratic in `x3, x4`.
    pub q: MPoly,
    /// Binary quartic in `x3, x4`.
    pub g: MPoly,
}

fn check_binary(f: &MPoly, deg: u32, name: &str) -> Result<()> {
    let ok = f.ring().nvars() == 4
        && (f.is_zero() || (f.is_homogeneous() && f.total_degree() == deg))
        && f.terms().all(|(m, _)| m.0[0] == 0 && m.0[1] == 0);
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "{name} must be a form of degree {deg} in x3, x4"
        )))
    }
}

fn constant(ring: &crate::mpoly::Ring, c: &Fq) -> MPoly {
    MPoly::constant(ring, c.clone())
}

pub fn make_t(p: &TParams) -> Result<QuarticWithLine> {
    if p.c.is_zero() {
        return Err(Error::CZero);
    }
    check_binary(&p.g, 4, "g")?;
    let ring = p.g.ring().clone();
    let mut b = HashMap::new();
    b.insert("a".to_string(), constant(&ring, &p.a));
    b.insert("b".to_string(), constant(&ring, &p.b));
    b.insert("c".to_string(), constant(&ring, &p.c));
    b.insert("g".to_string(), p.g.clone());
    QuarticWithLine::new(parse_poly_with(T_DISPLAY, &ring, &b)?)
}

pub fn make_z(p: &ZParams) -> Result<QuarticWithLine> {
    check_binary(&p.q, 2, "q")?;
    check_binary(&p.g, 4, "g")?;
    let ring = p.g.ring().clone();
    let mut b = HashMap::new();
    b.insert("q".to_string(), p.q.clone());
    b.insert("g".to_string(), p.g.clone());
    QuarticWithLine::new(parse_poly_with(Z_DISPLAY, &ring, &b)?)
}

/// Parameters of the smooth `𝒵` member with 18 lines meeting `ℓ`.
pub fn z_reference_params(ctx: &Arc<FieldCtx>) -> Result<ZParams> {
    if [2, 3, 5, 7].contains(&ctx.p()) {
        return Err(Error::BadCharacteristic(ctx.p()));
    }
    let ring = PolyRing::space(ctx);
    Ok(ZParams {
        q: parse_poly("3*(2*x3^2 - x3*x4 + x4^2)", &ring)?,
        g: parse_poly(
            "4*(20*x3^4 + 5*x4^4 - 18*x3^3*x4 - 4*x3^2*x4^2 - 9*x3*x4^3)/3",
            &ring,
        )?,
    })
}

pub fn make_z_paper_instance(ctx: &Arc<FieldCtx>) -> Result<QuarticWithLine> {
    make_z(&z_reference_params(ctx)?)
}

/// `x3·x1³ + x4·x2³ + γ·x1x2x3x4 − γ³·x3²x4²/27`.
pub fn make_s4_gamma(gamma: &Fq) -> MPoly {
    let ring = PolyRing::space(gamma.ctx());
    let mut b = HashMap::new();
    b.insert("gamma".to_string(), constant(&ring, gamma));
    parse_poly_with(S4_DISPLAY, &ring, &b).expect("fixed display parses")
}

/// A random binary form of degree `deg` in `x3, x4`.
pub fn random_binary_form<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, deg: u16, rng: &mut R) -> MPoly {
    let ring = PolyRing::space(ctx);
    MPoly::from_terms(
        &ring,
        (0..=deg).map(|i| (Mono::from_exps(&[0, 0, i, deg - i]), Fq::random(ctx, rng))),
    )
}

/// A random plane `x3 + c·x4` through `ℓ`.
pub fn random_pencil_plane<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, rng: &mut R) -> MPoly {
    let ring = PolyRing::space(ctx);
    let c = Fq::random(ctx, rng);
    let z = Fq::zero(ctx);
    MPoly::linear(&ring, &[z.clone(), z, Fq::one(ctx), c])
}

/// Four pairwise distinct random planes through `ℓ`.
pub fn random_pencil_planes<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Vec<MPoly> {
    let mut out: Vec<MPoly> = Vec::new();
    while out.len() < 4 {
        let l = random_pencil_plane(ctx, rng);
        if !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

/// The ruled quartic swept by the lines joining `(t0 : t1 : 0 : 0) ∈ ℓ` to
/// `c(t)` on a twisted cubic `c = M·(t0³, t0²t1, t0t1², t1³)`.
///
/// A point `x` lies on the joining line iff `x3·c4 − x4·c3 = 0` and
/// `t1·(x1·c3 − x3·c1) − t0·(x2·c3 − x3·c2) = 0`. Eliminating `t` gives the
/// surface times `x3³`.
pub fn join_ruled_quartic<R: Rng + ?Sized>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Option<MPoly> {
    let ring = PolyRing::new(ctx, &["t", "x1", "x2", "x3", "x4"]);
    let t = MPoly::var(&ring, 0);
    let powers: Vec<MPoly> = (0..4).map(|k| t.pow(k)).collect();
    let c: Vec<MPoly> = (0..4)
        .map(|_| {
            powers.iter().fold(MPoly::zero(&ring), |acc, tk| {
                &acc + &tk.scale(&Fq::random(ctx, rng))
            })
        })
        .collect();
    let x = |i: usize| MPoly::var(&ring, i);
    let h1 = &(&x(3) * &c[3]) - &(&x(4) * &c[2]);
    let h2 = &(&(&x(1) * &c[2]) - &(&(&x(2) * &t) * &c[2])) + &(&x(3) * &(&(&t * &c[1]) - &c[0]));
    let res = resultant_formal(&h1, &h2, 0, 3, 4).ok()?;
    let (s, k) = res.strip_var_power(3);
    if k != 3 || s.total_degree() != 4 {
        return None;
    }
    let space = PolyRing::space(ctx);
    Some(s.reindex(&space, &[0, 0, 1, 2, 3]).lex_monic())
}

/// Searches for a smooth Segre quartic whose ramification type is `1⁴`,
/// trying up to `budget` candidates.
pub fn search_type_1111(ctx: &Arc<FieldCtx>, budget: usize) -> Option<QuarticWithLine> {
    const CHUNK: usize = 32;
    let mut start = 0;
    while start < budget {
        let end = (start + CHUNK).min(budget);
        let hit = (start..end).into_par_iter().find_map_first(|i| {
            let mut rng = seeded_rng(ctx.seed(), 0x3131_3131_0000_0000 + i as u64);
            let s = join_ruled_quartic(ctx, &mut rng)?;
            let planes = random_pencil_planes(ctx, &mut rng);
            let x = segre_compose(&s, &planes).ok()?;
            let prof = ramification_profile(&x).ok()?;
            (prof.rtype == RamificationType::Simple && is_smooth(&x).smooth).then_some(x)
        });
        if hit.is_some() {
            return hit;
        }
        start = end;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;

    #[test]
    fn s4_gamma_three() {
        let ctx = mk_prime_field(10007).unwrap();
        let s = make_s4_gamma(&Fq::from_u64(&ctx, 3));
        let r = PolyRing::space(&ctx);
        assert_eq!(
            s,
            parse_poly("x3*x1^3 + x4*x2^3 + 3*x1*x2*x3*x4 - x3^2*x4^2", &r).unwrap()
        );
        assert_eq!(
            make_s4_gamma(&Fq::zero(&ctx)),
            parse_poly("x3*x1^3 + x4*x2^3", &r).unwrap()
        );
    }

    #[test]
    fn bad_characteristic() {
        let ctx = mk_prime_field(7).unwrap();
        assert_eq!(
            make_z_paper_instance(&ctx).unwrap_err(),
            Error::BadCharacteristic(7)
        );
    }

    #[test]
    fn c_zero_rejected() {
        let ctx = mk_prime_field(10007).unwrap();
        let g = parse_poly("x3^4 + x4^4", &PolyRing::space(&ctx)).unwrap();
        let p = TParams {
            a: Fq::one(&ctx),
            b: Fq::one(&ctx),
            c: Fq::zero(&ctx),
            g,
        };
        assert_eq!(make_t(&p).unwrap_err(), Error::CZero);
    }

    #[test]
    fn join_surface_contains_its_rulings() {
        let ctx = mk_prime_field(10007).unwrap();
        let mut rng = seeded_rng(0, 5);
        let s = join_ruled_quartic(&ctx, &mut rng).unwrap();
        let x = QuarticWithLine::new(s).unwrap();
        assert!(x.smooth_along_line());
    }
}
