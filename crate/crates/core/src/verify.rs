//! The acceptance suite behind `qline verify-paper`: ten criteria checked
//! against exact computations, each reported as one row.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analyze, Analysis, AnalysisOptions};
use crate::error::{Error, Result};
use crate::families::{
    join_ruled_quartic, make_s4_gamma, make_t, make_z, make_z_paper_instance, random_binary_form,
    random_pencil_planes, search_type_1111, z_reference_params, TParams, ZParams,
};
use crate::flexline::{
    flex_cross_check, segre_compose, triple_contact_fibers, FlexRole, SingularLocusClass,
};
use crate::galois::{lcm, seeded_rng, FieldCtx, Fq};
use crate::linalg::{self, Mat};
use crate::mpoly::{factor_univariate, parse_poly, MPoly, Mono, PolyRing, ProjPoint};
use crate::pencil::oracle::{exhaustive_lines, normalize_line_set, tangent_oracle_lines};
use crate::pencil::{
    base_ring, pencil_discriminant, pi_of_point, Kodaira, LineP3, QuarticWithLine,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped")]
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub computed: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<8} {} | expected: {} | computed: {}",
            self.id, self.status, self.name, self.expected, self.computed
        )
    }
}

/// Collects the individual checks of one criterion.
#[derive(Default)]
struct Tally {
    failures: Vec<String>,
    computed: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.computed.push(s.into());
    }

    fn finish(self, id: u32, name: &str, expected: &str) -> CriterionResult {
        let mut computed = self.computed.join("; ");
        if !self.failures.is_empty() {
            computed = format!("{computed}; failed: {}", self.failures.join(", "));
        }
        CriterionResult {
            id,
            name: name.to_string(),
            status: if self.failures.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            expected: expected.to_string(),
            computed,
        }
    }
}

struct Outcome {
    row: CriterionResult,
    instances: Vec<Analysis>,
}

fn failed(id: u32, name: &str, expected: &str, e: Error) -> Outcome {
    Outcome {
        row: CriterionResult {
            id,
            name: name.to_string(),
            status: Status::Fail,
            expected: expected.to_string(),
            computed: format!("error: {e}"),
        },
        instances: Vec::new(),
    }
}

fn run(
    id: u32,
    name: &str,
    expected: &str,
    body: impl FnOnce(&mut Tally, &mut Vec<Analysis>) -> Result<()>,
) -> Outcome {
    let mut t = Tally::default();
    let mut inst = Vec::new();
    match body(&mut t, &mut inst) {
        Ok(()) => Outcome {
            row: t.finish(id, name, expected),
            instances: inst,
        },
        Err(e) => failed(id, name, expected, e),
    }
}

fn full(x: &QuarticWithLine) -> Result<Analysis> {
    let r = PolyRing::space(x.ctx());
    let l1 = parse_poly("x3", &r)?;
    let l2 = parse_poly("x4", &r)?;
    analyze(x.f(), &l1, &l2, &AnalysisOptions::default())
}

fn kodaira_at(a: &Analysis, p: &ProjPoint) -> Option<Kodaira> {
    a.fibers
        .iter()
        .find(|r| r.param.minimal() == *p)
        .map(|r| r.kodaira)
}

fn triple_contact_types(a: &Analysis) -> Result<Vec<Kodaira>> {
    Ok(triple_contact_fibers(&a.x)?
        .iter()
        .map(|p| kodaira_at(a, p).unwrap_or(Kodaira::Smooth))
        .collect())
}

fn line_count(a: &Analysis) -> usize {
    a.lines.as_ref().map(|l| l.count).unwrap_or(0)
}

fn triplets(a: &Analysis) -> Vec<usize> {
    a.lines
        .as_ref()
        .map(|l| l.groups.iter().map(|g| g.2.len()).collect())
        .unwrap_or_default()
}

fn lies_on_surface(f: &MPoly, l: &LineP3) -> bool {
    let [p, q] = l.points();
    (0..5u64).all(|k| {
        let lam = Fq::from_u64(p[0].ctx(), k);
        let pt: Vec<Fq> = p.iter().zip(&q).map(|(a, b)| a + &(&lam * b)).collect();
        f.eval(&pt).is_zero()
    })
}

/// `s·t·g·(q³ + 27·s·t·g)³` in the base ring of the pencil.
fn z_discriminant(p: &ZParams) -> MPoly {
    let ring = base_ring(p.g.ctx());
    let q = p.q.reindex(&ring, &[0, 0, 0, 1]);
    let g = p.g.reindex(&ring, &[0, 0, 0, 1]);
    let st = &MPoly::var(&ring, 0) * &MPoly::var(&ring, 1);
    let stg = &st * &g;
    let inner = &q.pow(3) + &stg.scale(&Fq::from_u64(p.g.ctx(), 27));
    &stg * &inner.pow(3)
}

/// `27x1³x3²x4 + 27x2³x3x4² + 27x1x2x3x4·q − q³`.
fn z_flex_sextic(p: &ZParams) -> Result<MPoly> {
    let ring = PolyRing::space(p.q.ctx());
    let base = parse_poly("27*x1^3*x3^2*x4 + 27*x2^3*x3*x4^2", &ring)?;
    let mixed = &parse_poly("27*x1*x2*x3*x4", &ring)? * &p.q;
    Ok(&(&base + &mixed) - &p.q.pow(3))
}

fn random_nonzero<R: Rng>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Fq {
    Fq::random_nonzero(ctx, rng)
}

fn random_t<R: Rng>(ctx: &Arc<FieldCtx>, rng: &mut R, a: Option<Fq>) -> TParams {
    TParams {
        a: a.unwrap_or_else(|| random_nonzero(ctx, rng)),
        b: Fq::random(ctx, rng),
        c: random_nonzero(ctx, rng),
        g: random_binary_form(ctx, 4, rng),
    }
}

/// Draws until a smooth member appears; `None` after `tries` singular draws.
fn smooth_draw<R: Rng>(
    rng: &mut R,
    tries: usize,
    mut make: impl FnMut(&mut R) -> Result<QuarticWithLine>,
) -> Result<Option<Analysis>> {
    for _ in 0..tries {
        let x = make(rng)?;
        let a = full(&x)?;
        if a.smooth.smooth {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

fn set_x3_4(g: &MPoly, value: &Fq) -> MPoly {
    let m = Mono::from_exps(&[0, 0, 4, 0]);
    let rest = MPoly::from_terms(
        g.ring(),
        g.terms()
            .filter(|(k, _)| **k != m)
            .map(|(k, c)| (*k, c.clone())),
    );
    &rest + &MPoly::monomial(g.ring(), value.clone(), m)
}

fn c1(ctx: &Arc<FieldCtx>) -> Outcome {
    let expected = "smooth; 6I3+6I1; 18 lines in six triplets; discriminant = s*t*g*(q^3+27*s*t*g)^3 up to scalar";
    run(
        1,
        "Z instance: fibration, lines, discriminant",
        expected,
        |t, inst| {
            let a = full(&make_z_paper_instance(ctx)?)?;
            let params = z_reference_params(ctx)?;
            t.check(a.smooth.smooth, "smooth");
            t.check(a.fiber_types() == "6I3+6I1", "fibration");
            t.check(line_count(&a) == 18, "line count");
            t.check(triplets(&a) == vec![3; 6], "six triplets");
            let on = a
                .lines
                .iter()
                .flat_map(|l| l.groups.iter().flat_map(|g| g.2.iter()))
                .all(|l| lies_on_surface(a.x.f(), l));
            t.check(on, "lines lie on X");
            let delta_ok = a
                .delta
                .as_ref()
                .is_some_and(|d| d.eq_up_to_scalar(&z_discriminant(&params)));
            t.check(delta_ok, "discriminant");
            t.note(format!(
                "smooth={}, {}, {} lines in groups {:?}, discriminant match={}",
                a.smooth.smooth,
                a.fiber_types(),
                line_count(&a),
                triplets(&a),
                delta_ok
            ));
            inst.push(a);
            Ok(())
        },
    )
}

fn c2(ctx: &Arc<FieldCtx>) -> Outcome {
    let expected =
        "reduced degree 8; two tangent planes + sextic h up to scalar; Eisenstein certificate";
    run(2, "Z instance: flex surface", expected, |t, inst| {
        let a = full(&make_z_paper_instance(ctx)?)?;
        let h = z_flex_sextic(&z_reference_params(ctx)?)?;
        let fs = a
            .flex
            .as_ref()
            .ok_or_else(|| Error::Invalid(a.notes.join("; ")))?;
        let res = fs.residual();
        t.check(fs.reduced_degree == 8, "reduced degree");
        t.check(fs.tangent_plane_count() == 2, "tangent planes");
        t.check(
            fs.planes().all(|c| c.role == FlexRole::TangentPlane),
            "plane roles",
        );
        t.check(res.is_some_and(|r| r.poly.eq_up_to_scalar(&h)), "sextic");
        let cert = a.certificate.as_ref().map(|c| c.label()).unwrap_or("none");
        t.check(cert == "eisenstein-irreducible", "certificate");
        t.note(format!(
            "reduced degree {}, {} tangent planes, residual degree {}, certificate {cert}",
            fs.reduced_degree,
            fs.tangent_plane_count(),
            res.map(|r| r.degree).unwrap_or(0)
        ));
        inst.push(a);
        Ok(())
    })
}

fn c3(ctx: &Arc<FieldCtx>) -> Outcome {
    let expected = "gamma=3: detect, S4 of gamma, 2IV+4I3+4I1, twisted-cubic, 18 lines; \
                    gamma=0: detect, S4 of gamma, 6IV, line-of-triple-points, 18 lines";
    run(
        3,
        "Z with q = gamma*x3*x4: Segre decomposition",
        expected,
        |t, inst| {
            let ring = PolyRing::space(ctx);
            let mut rng = seeded_rng(ctx.seed(), 3);
            for (gamma, fib, class) in [
                (3u64, "2IV+4I3+4I1", SingularLocusClass::TwistedCubic),
                (0, "6IV", SingularLocusClass::LineOfTriplePoints),
            ] {
                let gm = Fq::from_u64(ctx, gamma);
                let q = parse_poly("x3*x4", &ring)?.scale(&gm);
                let a = if gamma == 0 {
                    full(&make_z(&ZParams {
                        q,
                        g: parse_poly("x3^4 + x4^4", &ring)?,
                    })?)?
                } else {
                    smooth_draw(&mut rng, 20, |r| {
                        make_z(&ZParams {
                            q: q.clone(),
                            g: random_binary_form(ctx, 4, r),
                        })
                    })?
                    .ok_or_else(|| Error::Invalid("no smooth draw".into()))?
                };
                let tag = format!("gamma={gamma}");
                t.check(a.smooth.smooth, format!("{tag} smooth"));
                t.check(a.segre_detect == Some(true), format!("{tag} detect"));
                t.check(a.fiber_types() == fib, format!("{tag} fibration"));
                t.check(line_count(&a) == 18, format!("{tag} lines"));
                match &a.segre {
                    Some(d) => {
                        t.check(
                            d.s4.eq_up_to_scalar(&make_s4_gamma(&gm)),
                            format!("{tag} S4"),
                        );
                        t.check(d.class == class, format!("{tag} class"));
                        t.check(d.verify(a.x.f()), format!("{tag} identity"));
                    }
                    None => t.check(false, format!("{tag} recovery: {}", a.notes.join("; "))),
                }
                t.note(format!(
                    "{tag}: detect={:?}, {}, {} lines, class={:?}",
                    a.segre_detect,
                    a.fiber_types(),
                    line_count(&a),
                    a.segre.as_ref().map(|d| d.class)
                ));
                inst.push(a);
            }
            Ok(())
        },
    )
}

fn c4(ctx: &Arc<FieldCtx>) -> Outcome {
    let expected =
        "10 draws: smooth, 5I3+5I1+2II, 15 lines, type 2,1^2, 3 tangent planes + quintic, \
                    reduced degree 8, detect false";
    run(4, "generic T family", expected, |t, inst| {
        let mut rng = seeded_rng(ctx.seed(), 4);
        let mut seen = Vec::new();
        for i in 0..10 {
            let a = smooth_draw(&mut rng, 20, |r| make_t(&random_t(ctx, r, None)))?
                .ok_or_else(|| Error::Invalid("no smooth draw".into()))?;
            let tag = format!("draw {i}");
            let fs = a.flex.as_ref();
            t.check(
                a.fiber_types() == "5I3+5I1+2II",
                format!("{tag} fibration {}", a.fiber_types()),
            );
            t.check(line_count(&a) == 15, format!("{tag} lines"));
            t.check(
                a.ramification
                    .as_ref()
                    .map(|p| p.rtype.to_string())
                    .as_deref()
                    == Some("2,1^2"),
                format!("{tag} ramification"),
            );
            t.check(
                fs.is_some_and(|f| f.tangent_plane_count() == 3),
                format!("{tag} tangent planes"),
            );
            t.check(
                fs.and_then(|f| f.residual()).is_some_and(|r| r.degree == 5),
                format!("{tag} quintic"),
            );
            t.check(
                fs.is_some_and(|f| f.reduced_degree == 8),
                format!("{tag} reduced degree"),
            );
            t.check(a.segre_detect == Some(false), format!("{tag} detect"));
            seen.push(a.fiber_types());
            inst.push(a);
        }
        seen.dedup();
        t.note(format!("fibrations {seen:?}"));
        Ok(())
    })
}

fn c5(ctx: &Arc<FieldCtx>) -> Outcome {
    let expected =
        "5 draws with a=0: triple-contact IV, detect, exact identity, reduced degree 7, \
                    IV+4I3+4I1+2II with twisted-cubic or 5IV+2II with line, 15 lines";
    run(5, "T family with a = 0", expected, |t, inst| {
        let mut rng = seeded_rng(ctx.seed(), 5);
        let mut seen = Vec::new();
        for i in 0..5 {
            let a = smooth_draw(&mut rng, 20, |r| {
                make_t(&random_t(ctx, r, Some(Fq::zero(ctx))))
            })?
            .ok_or_else(|| Error::Invalid("no smooth draw".into()))?;
            let tag = format!("draw {i}");
            let tc = triple_contact_types(&a)?;
            t.check(
                !tc.is_empty() && tc.iter().all(|k| *k == Kodaira::IV),
                format!("{tag} triple contact {tc:?}"),
            );
            t.check(a.segre_detect == Some(true), format!("{tag} detect"));
            t.check(
                a.flex.as_ref().is_some_and(|f| f.reduced_degree == 7),
                format!("{tag} reduced degree"),
            );
            t.check(line_count(&a) == 15, format!("{tag} lines"));
            match &a.segre {
                Some(d) => {
                    t.check(d.verify(a.x.f()), format!("{tag} identity"));
                    let want = match d.class {
                        SingularLocusClass::TwistedCubic => "IV+4I3+4I1+2II",
                        SingularLocusClass::LineOfTriplePoints => "5IV+2II",
                    };
                    t.check(a.fiber_types() == want, format!("{tag} fibration vs class"));
                    seen.push(format!("{} {:?}", a.fiber_types(), d.class));
                }
                None => t.check(false, format!("{tag} recovery: {}", a.notes.join("; "))),
            }
            inst.push(a);
        }
        seen.dedup();
        t.note(format!("{seen:?}"));
        Ok(())
    })
}

fn c6(ctx: &Arc<FieldCtx>) -> Outcome {
    let expected = "5 draws with coeff(g, x3^4) = 4a^3c^3/27: triple-contact I2, 16 lines";
    run(6, "T family on the I2 locus", expected, |t, inst| {
        let mut rng = seeded_rng(ctx.seed(), 6);
        let k = Fq::from_u64(ctx, 4).checked_div(&Fq::from_u64(ctx, 27))?;
        let mut counts = Vec::new();
        for i in 0..5 {
            let a = smooth_draw(&mut rng, 20, |r| {
                let mut p = random_t(ctx, r, None);
                let v = &(&k * &p.a.pow(3)) * &p.c.pow(3);
                p.g = set_x3_4(&p.g, &v);
                make_t(&p)
            })?
            .ok_or_else(|| Error::Invalid("no smooth draw".into()))?;
            let tc = triple_contact_types(&a)?;
            t.check(
                tc == vec![Kodaira::I2],
                format!("draw {i} triple contact {tc:?}"),
            );
            t.check(line_count(&a) == 16, format!("draw {i} lines"));
            counts.push(line_count(&a));
            inst.push(a);
        }
        t.note(format!("line counts {counts:?}"));
        Ok(())
    })
}

/// A random invertible map preserving `V(x3, x4)`: `(x3, x4)` only mix among themselves.
fn line_preserving_map<R: Rng>(ctx: &Arc<FieldCtx>, rng: &mut R) -> Mat {
    loop {
        let mut m: Mat = (0..4)
            .map(|_| (0..4).map(|_| Fq::random(ctx, rng)).collect())
            .collect();
        for row in m.iter_mut().skip(2) {
            row[0] = Fq::zero(ctx);
            row[1] = Fq::zero(ctx);
        }
        if !linalg::det(&m).is_zero() {
            return m;
        }
    }
}

fn plane_params(planes: impl IntoIterator<Item = [Fq; 2]>) -> Result<Vec<ProjPoint>> {
    let mut out: Vec<ProjPoint> = planes
        .into_iter()
        .map(|[a, b]| ProjPoint::new(a, b).map(|p| p.minimal()))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

pub const COMPOSE_COUNT: usize = 500;

fn c7(ctx: &Arc<FieldCtx>) -> Outcome {
    let expected = "500 compositions: all second kind; smooth ones recover S and the planes";
    run(7, "Segre construction soundness", expected, |t, inst| {
        let outcomes: Vec<Result<(bool, Option<Analysis>)>> = (0..COMPOSE_COUNT)
            .into_par_iter()
            .map(|i| {
                let mut rng = seeded_rng(ctx.seed(), 0x0700_0000 + i as u64);
                let s = if i % 2 == 0 {
                    match join_ruled_quartic(ctx, &mut rng) {
                        Some(s) => s,
                        None => make_s4_gamma(&Fq::random(ctx, &mut rng)),
                    }
                } else {
                    let s = make_s4_gamma(&Fq::random(ctx, &mut rng));
                    s.substitute_linear(&line_preserving_map(ctx, &mut rng))?
                };
                let planes = random_pencil_planes(ctx, &mut rng);
                let x = segre_compose(&s, &planes)?;
                let a = full(&x)?;
                if !a.smooth.smooth {
                    return Ok((false, None));
                }
                let want = plane_params(
                    planes
                        .iter()
                        .map(|l| [l.coeff(&Mono::var(2, 1)), l.coeff(&Mono::var(3, 1))]),
                )?;
                let ok = match &a.segre {
                    Some(d) => {
                        d.s4.scale(&d.lambda) == s
                            && d.verify(x.f())
                            && plane_params(d.planes.iter().cloned())? == want
                    }
                    None => false,
                };
                Ok((ok, Some(a)))
            })
            .collect();
        let mut smooth = 0;
        let mut errors = Vec::new();
        let mut mismatches = 0;
        for (i, o) in outcomes.into_iter().enumerate() {
            match o {
                Ok((ok, Some(a))) => {
                    smooth += 1;
                    if !ok {
                        mismatches += 1;
                    }
                    inst.push(a);
                }
                Ok((_, None)) => {}
                Err(e) => errors.push(format!("#{i}: {e}")),
            }
        }
        t.check(
            errors.is_empty(),
            format!(
                "{} compose errors {:?}",
                errors.len(),
                errors.iter().take(3).collect::<Vec<_>>()
            ),
        );
        t.check(
            mismatches == 0,
            format!("{mismatches} roundtrip mismatches"),
        );
        t.check(smooth > 0, "no smooth outputs");
        t.note(format!(
            "{} second kind, {smooth} smooth, {} roundtrips exact",
            COMPOSE_COUNT - errors.len(),
            smooth - mismatches
        ));
        Ok(())
    })
}

/// Degree of the splitting field of `Δ`, or `None` if `ℓ` meets the singular
/// locus or `Δ` vanishes.
fn discriminant_splitting_degree(x: &QuarticWithLine) -> Option<usize> {
    if !x.smooth_along_line() {
        return None;
    }
    let delta = pencil_discriminant(x).ok()?;
    let f = factor_univariate(&delta.to_upoly(0)).ok()?;
    Some(f.factors.iter().fold(1, |acc, (g, _)| lcm(acc, g.deg())))
}

pub const ORACLE_MEMBERS: usize = 10;
pub const ORACLE_MAX_DEGREE: usize = 3;

fn c8(seed: u64) -> Outcome {
    let expected =
        "p in {31, 41}: 10 smooth members each whose discriminant splits over F_{p^L}, L <= 3; \
                    fiber lines over F_{p^L} equal brute-force lines over F_{p^L}";
    run(8, "oracle equivalence", expected, |t, inst| {
        let mut summary = Vec::new();
        for p in [31u64, 41] {
            let ctx = FieldCtx::prime_seeded(p, seed)?;
            let mut rng = seeded_rng(seed, 8_000 + p);
            let mut done = 0;
            let mut tries = 0;
            while done < ORACLE_MEMBERS && tries < 4000 {
                tries += 1;
                let x = if tries % 2 == 0 {
                    make_t(&random_t(&ctx, &mut rng, None))
                } else {
                    make_z(&ZParams {
                        q: random_binary_form(&ctx, 2, &mut rng),
                        g: random_binary_form(&ctx, 4, &mut rng),
                    })
                };
                let Ok(x) = x else { continue };
                let Some(l) = discriminant_splitting_degree(&x).filter(|l| *l <= ORACLE_MAX_DEGREE)
                else {
                    continue;
                };
                let Ok(a) = full(&x) else { continue };
                if !a.smooth.smooth {
                    continue;
                }
                let field = ctx.extension(l);
                let rational = a
                    .lines
                    .iter()
                    .flat_map(|m| m.groups.iter().flat_map(|g| g.2.iter()))
                    .filter(|line| l % line.field_degree() == 0);
                let ours = normalize_line_set(rational, &field);
                let oracle = tangent_oracle_lines(&a.x, &field);
                t.check(
                    ours == oracle,
                    format!(
                        "p={p} member {done}: {} vs {} lines",
                        ours.len(),
                        oracle.len()
                    ),
                );
                if l == 1 {
                    let brute = exhaustive_lines(&a.x, &field);
                    t.check(
                        brute == oracle,
                        format!("p={p} member {done}: exhaustive disagrees"),
                    );
                }
                summary.push(format!("{p}:L{l}:{}", ours.len()));
                done += 1;
                inst.push(a);
            }
            t.check(
                done == ORACLE_MEMBERS,
                format!("p={p}: only {done} members with L <= {ORACLE_MAX_DEGREE}"),
            );
        }
        t.note(summary.join(" "));
        Ok(())
    })
}

fn c9(instances: &[Analysis]) -> Outcome {
    let expected = "every instance: sum v = 24, deg = 24, Kodaira/v table, flex planes tangent, cross-check agrees";
    run(9, "invariant suite", expected, |t, _| {
        let bad: Vec<String> = instances
            .par_iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let mut why = Vec::new();
                if a.fibers.iter().map(|r| r.v_delta).sum::<usize>() != 24 {
                    why.push("sum v");
                }
                if !a
                    .delta
                    .as_ref()
                    .is_some_and(|d| d.total_degree() == 24 && d.is_homogeneous())
                {
                    why.push("deg");
                }
                if !a.fibers.iter().all(|r| r.table_consistent()) {
                    why.push("table");
                }
                if let (Some(fs), Some(prof)) = (&a.flex, &a.ramification) {
                    let tangent: Option<Vec<ProjPoint>> = prof
                        .points
                        .iter()
                        .map(|(z, _)| pi_of_point(&a.x, z).ok().map(|q| q.minimal()))
                        .collect();
                    let planes: Vec<ProjPoint> = fs
                        .planes()
                        .flat_map(|c| c.params.iter().map(|q| q.minimal()))
                        .collect();
                    let ok = tangent.is_some_and(|tp| {
                        planes.iter().all(|q| tp.contains(q))
                            && tp.iter().all(|q| planes.contains(q))
                    });
                    if !ok || fs.planes().any(|c| c.role != FlexRole::TangentPlane) {
                        why.push("flex planes");
                    }
                } else {
                    why.push("flex surface missing");
                }
                if flex_cross_check(&a.x, 6) != Ok(true) {
                    why.push("cross-check");
                }
                (!why.is_empty()).then(|| format!("#{i} {why:?}"))
            })
            .collect();
        t.check(
            bad.is_empty(),
            bad.iter().take(5).cloned().collect::<Vec<_>>().join(" "),
        );
        t.note(format!(
            "{} instances, {} violations",
            instances.len(),
            bad.len()
        ));
        Ok(())
    })
}

pub const SEARCH_BUDGET: usize = 10_000;

fn c10(ctx: &Arc<FieldCtx>) -> Outcome {
    let expected =
        "if found: 12 lines in four triplets, 4I3+4I1+4II or 4IV+4II, reduced degree 8 with \
                    four tangent planes, detect, recovery; otherwise SKIPPED";
    let name = "ramification type 1^4";
    let Some(x) = search_type_1111(ctx, SEARCH_BUDGET) else {
        return Outcome {
            row: CriterionResult {
                id: 10,
                name: name.into(),
                status: Status::Skipped,
                expected: expected.into(),
                computed: format!("no instance within {SEARCH_BUDGET} candidates"),
            },
            instances: Vec::new(),
        };
    };
    run(10, name, expected, |t, _| {
        let a = full(&x)?;
        let fs = a.flex.as_ref();
        t.check(line_count(&a) == 12 && triplets(&a) == vec![3; 4], "lines");
        t.check(
            ["4I3+4I1+4II", "4IV+4II"].contains(&a.fiber_types().as_str()),
            "fibration",
        );
        t.check(fs.is_some_and(|f| f.reduced_degree == 8), "reduced degree");
        t.check(
            fs.is_some_and(|f| f.tangent_plane_count() == 4),
            "tangent planes",
        );
        t.check(a.segre_detect == Some(true), "detect");
        t.check(
            a.segre.as_ref().is_some_and(|d| d.verify(a.x.f())),
            "recovery",
        );
        t.note(format!(
            "{} lines, {}, reduced degree {:?}, detect={:?}, class={:?}",
            line_count(&a),
            a.fiber_types(),
            fs.map(|f| f.reduced_degree),
            a.segre_detect,
            a.segre.as_ref().map(|d| d.class)
        ));
        Ok(())
    })
}

fn check_prime(prime: u64) -> Result<()> {
    if prime <= 24 {
        return Err(Error::Invalid(format!(
            "verify-paper needs a prime above 24 (got {prime}); smaller fields cannot hold the 25 interpolation nodes"
        )));
    }
    Ok(())
}

fn outcome(ctx: &Arc<FieldCtx>, seed: u64, id: u32) -> Outcome {
    match id {
        1 => c1(ctx),
        2 => c2(ctx),
        3 => c3(ctx),
        4 => c4(ctx),
        5 => c5(ctx),
        6 => c6(ctx),
        7 => c7(ctx),
        _ => c8(seed),
    }
}

/// Runs all ten criteria over `F_prime` with the given seed. Rows come back in
/// criterion order.
pub fn verify_paper(prime: u64, seed: u64) -> Result<Vec<CriterionResult>> {
    check_prime(prime)?;
    let ctx = FieldCtx::prime_seeded(prime, seed)?;
    let outcomes: Vec<Outcome> = (1..=8u32)
        .into_par_iter()
        .map(|id| outcome(&ctx, seed, id))
        .collect();
    let instances: Vec<Analysis> = outcomes
        .iter()
        .flat_map(|o| o.instances.iter().cloned())
        .collect();
    let mut rows: Vec<CriterionResult> = outcomes.into_iter().map(|o| o.row).collect();
    rows.push(c9(&instances).row);
    rows.push(c10(&ctx).row);
    Ok(rows)
}

/// Runs a single criterion; criterion 9 runs over the instances of 1 to 8.
pub fn verify_criterion(prime: u64, seed: u64, id: u32) -> Result<CriterionResult> {
    check_prime(prime)?;
    let ctx = FieldCtx::prime_seeded(prime, seed)?;
    Ok(match id {
        1..=8 => outcome(&ctx, seed, id).row,
        9 => {
            let inst: Vec<Analysis> = (1..=8)
                .flat_map(|i| outcome(&ctx, seed, i).instances)
                .collect();
            c9(&inst).row
        }
        10 => c10(&ctx).row,
        _ => return Err(Error::Invalid(format!("no criterion {id}"))),
    })
}
