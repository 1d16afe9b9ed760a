//! End-to-end analysis of a quartic with a line, and its JSON report.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flexline::{
    flex_cross_check, flex_surface, is_second_kind, residual_irreducibility, segre_detect_with,
    segre_recover_with, Certificate, FlexRole, FlexSurface, SegreDecomposition, SingularLocusClass,
};
use crate::galois::{FieldCtx, Fq};
use crate::linalg::{embed_mat, Mat};
use crate::mpoly::{MPoly, ProjPoint};
use crate::pencil::{
    fiber_type_summary, is_smooth, lines_from_table, normalize_line, pencil_discriminant,
    ramification_profile, singular_fiber_table_from, verdict_from_table, FiberRecord, LineP3,
    LineSerial, LinesMeeting, QuarticWithLine, RamificationProfile, SmoothnessVerdict,
};

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    /// Record wall-clock timings per stage. Off by default so that reports
    /// are byte-identical across runs.
    pub timings: bool,
    /// Number of smooth fibers sampled by [`flex_cross_check`]; zero skips it.
    pub cross_check_fibers: usize,
}

/// Everything computed about one input, in normalized coordinates.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub x: QuarticWithLine,
    pub input: MPoly,
    pub line: [MPoly; 2],
    pub smooth: SmoothnessVerdict,
    pub delta: Option<MPoly>,
    pub ramification: Option<RamificationProfile>,
    pub fibers: Vec<FiberRecord>,
    pub lines: Option<LinesMeeting>,
    pub second_kind: bool,
    pub cross_check: Option<bool>,
    pub flex: Option<FlexSurface>,
    pub certificate: Option<Certificate>,
    pub segre_detect: Option<bool>,
    pub segre: Option<SegreDecomposition>,
    pub notes: Vec<String>,
    pub timings: BTreeMap<String, u64>,
}

struct Clock {
    on: bool,
    t: Instant,
}

impl Clock {
    fn lap(&mut self, name: &str, out: &mut BTreeMap<String, u64>) {
        if self.on {
            out.insert(name.to_string(), self.t.elapsed().as_micros() as u64);
            self.t = Instant::now();
        }
    }
}

/// Runs the whole pipeline on `f` and the line `V(l1, l2)`.
///
/// Only a malformed input or a line not on the surface is a hard error.
/// Singular surfaces and stages that cannot run produce a partial analysis
/// with an explanatory note.
pub fn analyze(f: &MPoly, l1: &MPoly, l2: &MPoly, opts: &AnalysisOptions) -> Result<Analysis> {
    let mut timings = BTreeMap::new();
    let mut clock = Clock {
        on: opts.timings,
        t: Instant::now(),
    };
    let (x, _) = normalize_line(f, l1, l2)?;
    clock.lap("normalize", &mut timings);
    let mut a = Analysis {
        x: x.clone(),
        input: f.clone(),
        line: [l1.clone(), l2.clone()],
        smooth: SmoothnessVerdict {
            smooth: false,
            witness: None,
        },
        delta: None,
        ramification: None,
        fibers: Vec::new(),
        lines: None,
        second_kind: false,
        cross_check: None,
        flex: None,
        certificate: None,
        segre_detect: None,
        segre: None,
        notes: Vec::new(),
        timings: BTreeMap::new(),
    };

    let delta = if x.smooth_along_line() {
        match pencil_discriminant(&x) {
            Ok(d) => Some(d),
            Err(e) => {
                a.notes.push(format!("discriminant: {e}"));
                None
            }
        }
    } else {
        a.notes
            .push("surface is singular at a point of the line".into());
        None
    };
    let mut table_ok = false;
    if let Some(d) = &delta {
        match singular_fiber_table_from(&x, d) {
            Ok(t) => {
                a.fibers = t;
                table_ok = true;
            }
            Err(e) => a.notes.push(format!("fiber table: {e}")),
        }
    }
    a.smooth = if table_ok {
        verdict_from_table(&x, &a.fibers)
    } else {
        is_smooth(&x)
    };
    a.delta = delta;
    clock.lap("fibers", &mut timings);

    match ramification_profile(&x) {
        Ok(p) => a.ramification = Some(p),
        Err(e) => a.notes.push(format!("ramification: {e}")),
    }
    a.second_kind = is_second_kind(&x);
    clock.lap("ramification", &mut timings);

    if !a.smooth.smooth {
        a.notes.push(Error::SingularSurface.to_string());
        a.timings = timings;
        return Ok(a);
    }
    a.lines = Some(lines_from_table(&a.fibers));
    if opts.cross_check_fibers > 0 {
        match flex_cross_check(&x, opts.cross_check_fibers) {
            Ok(v) => a.cross_check = Some(v),
            Err(e) => a.notes.push(format!("flex cross-check: {e}")),
        }
    }

    if let Some(prof) = &a.ramification {
        match flex_surface(&x, prof) {
            Ok(fs) => {
                a.certificate = fs.residual().map(|r| residual_irreducibility(&r.poly));
                a.flex = Some(fs);
            }
            Err(e) => a.notes.push(format!("flex surface: {e}")),
        }
    }
    clock.lap("flex_surface", &mut timings);

    if a.second_kind {
        match segre_detect_with(&x, &a.fibers) {
            Ok(d) => a.segre_detect = Some(d),
            Err(e) => a.notes.push(format!("segre detect: {e}")),
        }
    } else {
        a.segre_detect = Some(false);
    }
    if a.segre_detect == Some(true) {
        if let (Some(prof), Some(fs)) = (&a.ramification, &a.flex) {
            match segre_recover_with(&x, &a.fibers, prof, fs) {
                Ok(d) => a.segre = Some(d),
                Err(e) => a.notes.push(format!("segre recover: {e}")),
            }
        }
    }
    clock.lap("segre", &mut timings);
    a.timings = timings;
    Ok(a)
}

impl Analysis {
    pub fn fiber_types(&self) -> String {
        fiber_type_summary(&self.fibers)
    }

    pub fn report(&self) -> AnalysisReport {
        let x = &self.x;
        let base = x.ctx();
        let witness = self
            .smooth
            .witness
            .as_ref()
            .map(|w| point_serial(&x.point_to_original(w)));
        let ramification = self.ramification.as_ref().map(|p| RamificationReport {
            rtype: p.rtype.to_string(),
            field: field_serial(&p.ctx),
            points: p
                .points
                .iter()
                .map(|(z, m)| {
                    let zero = Fq::zero(z.ctx());
                    let y = [z.a.clone(), z.b.clone(), zero.clone(), zero];
                    RamPointReport {
                        point: point_serial(&x.point_to_original(&y)),
                        multiplicity: *m,
                    }
                })
                .collect(),
        });
        let fibers = self.fibers.iter().map(|r| self.fiber_report(r)).collect();
        let lines_meeting = self.lines.as_ref().map(|l| LinesReport {
            count: l.count,
            groups: l
                .groups
                .iter()
                .map(|(param, k, ls)| LineGroupReport {
                    param: proj_serial(param),
                    kodaira: k.label().to_string(),
                    lines: ls.iter().map(|l| self.line_serial(l)).collect(),
                })
                .collect(),
        });
        let flex_surface = self.flex.as_ref().map(|fs| FlexReport {
            stripped_power: fs.stripped_power,
            reduced_degree: fs.reduced_degree,
            components: fs
                .components
                .iter()
                .map(|c| FlexComponentReport {
                    poly: poly_serial(
                        &c.poly
                            .substitute_linear(x.transform())
                            .expect("invertible")
                            .monic(),
                    ),
                    degree: c.degree,
                    multiplicity: c.multiplicity,
                    role: c.role,
                    params: c.params.iter().map(proj_serial).collect(),
                })
                .collect(),
            residual_certificate: self.certificate.as_ref().map(|c| c.label().to_string()),
        });
        let decomposition = self.segre.as_ref().map(|d| {
            let s4 = d.s4.substitute_linear(x.transform()).expect("invertible");
            SegreReport {
                lambda: elem_serial(&d.lambda),
                s4: poly_serial(&s4),
                planes: d
                    .plane_forms()
                    .iter()
                    .map(|l| {
                        poly_serial(
                            &l.substitute_linear(&embed(x, &d.planes_ctx))
                                .expect("invertible"),
                        )
                    })
                    .collect(),
                class: d.class,
            }
        });
        AnalysisReport {
            schema: 1,
            input: InputReport {
                prime: base.p(),
                seed: base.seed(),
                polynomial: self.input.to_string(),
                line: [self.line[0].to_string(), self.line[1].to_string()],
            },
            normalization: NormalizationReport {
                note: x.note().to_string(),
                transform: x
                    .transform()
                    .iter()
                    .map(|r| r.iter().map(|c| c.coeffs()[0]).collect())
                    .collect(),
            },
            smooth: self.smooth.smooth,
            witness,
            second_kind: self.second_kind,
            flex_cross_check: self.cross_check,
            ramification,
            discriminant: self.delta.as_ref().map(|d| d.to_string()),
            fiber_types: self.fiber_types(),
            fibers,
            lines_meeting,
            flex_surface,
            segre: SegreSection {
                detect: self.segre_detect,
                decomposition,
            },
            notes: self.notes.clone(),
            timings_us: (!self.timings.is_empty()).then(|| self.timings.clone()),
        }
    }

    fn line_serial(&self, l: &LineP3) -> LineSerial {
        l.transform_forms(self.x.transform()).to_serial()
    }

    fn fiber_report(&self, r: &FiberRecord) -> FiberReport {
        let zero = Fq::zero(r.param.ctx());
        let plane = self
            .x
            .form_to_original(&[zero.clone(), zero, r.param.b.clone(), -&r.param.a]);
        FiberReport {
            param: proj_serial(&r.param),
            plane: FieldVector {
                modulus: r.param.ctx().modulus().to_vec(),
                coords: plane.iter().map(|c| c.coeffs().to_vec()).collect(),
            },
            v_delta: r.v_delta,
            kodaira: r.kodaira.label().to_string(),
            contact: r.contact.clone(),
            components: r.components.iter().map(|l| self.line_serial(l)).collect(),
            singular_points: r
                .singular_points
                .iter()
                .map(|p| point_serial(&self.x.point_to_original(p)))
                .collect(),
        }
    }
}

fn embed(x: &QuarticWithLine, ctx: &Arc<FieldCtx>) -> Mat {
    embed_mat(x.transform(), ctx).expect("extension of the base field")
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSerial {
    pub degree: usize,
    pub modulus: Vec<u64>,
}

/// Coordinates over `F_p[z]/(modulus)`, each a coefficient vector in `z`.
#[derive(Clone, Debug, Serialize)]
pub struct FieldVector {
    pub modulus: Vec<u64>,
    pub coords: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElemSerial {
    pub modulus: Vec<u64>,
    pub coeffs: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolySerial {
    pub modulus: Vec<u64>,
    pub text: String,
    /// Exponent vector and coefficient vector of every term.
    pub terms: Vec<(Vec<u16>, Vec<u64>)>,
}

fn field_serial(ctx: &FieldCtx) -> FieldSerial {
    FieldSerial {
        degree: ctx.degree(),
        modulus: ctx.modulus().to_vec(),
    }
}

fn elem_serial(e: &Fq) -> ElemSerial {
    ElemSerial {
        modulus: e.ctx().modulus().to_vec(),
        coeffs: e.coeffs().to_vec(),
    }
}

fn point_serial(p: &[Fq]) -> FieldVector {
    FieldVector {
        modulus: p[0].ctx().modulus().to_vec(),
        coords: p.iter().map(|c| c.coeffs().to_vec()).collect(),
    }
}

fn proj_serial(p: &ProjPoint) -> FieldVector {
    let m = p.minimal();
    point_serial(&[m.a.clone(), m.b.clone()])
}

fn poly_serial(f: &MPoly) -> PolySerial {
    let n = f.ring().nvars();
    PolySerial {
        modulus: f.ctx().modulus().to_vec(),
        text: f.to_string(),
        terms: f
            .terms()
            .map(|(m, c)| (m.0[..n].to_vec(), c.coeffs().to_vec()))
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: InputReport,
    pub normalization: NormalizationReport,
    pub smooth: bool,
    pub witness: Option<FieldVector>,
    pub second_kind: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flex_cross_check: Option<bool>,
    pub ramification: Option<RamificationReport>,
    pub discriminant: Option<String>,
    pub fiber_types: String,
    pub fibers: Vec<FiberReport>,
    pub lines_meeting: Option<LinesReport>,
    pub flex_surface: Option<FlexReport>,
    pub segre: SegreSection,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_us: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputReport {
    pub prime: u64,
    pub seed: u64,
    pub polynomial: String,
    pub line: [String; 2],
}

/// `y = N·x`; in `y` the line is `V(y3, y4)`.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizationReport {
    pub note: String,
    pub transform: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationReport {
    #[serde(rename = "type")]
    pub rtype: String,
    pub field: FieldSerial,
    pub points: Vec<RamPointReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamPointReport {
    pub point: FieldVector,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    /// `(s:t)` in normalized coordinates.
    pub param: FieldVector,
    /// The plane of the fiber as a covector in original coordinates.
    pub plane: FieldVector,
    pub v_delta: usize,
    pub kodaira: String,
    pub contact: Vec<usize>,
    pub components: Vec<LineSerial>,
    pub singular_points: Vec<FieldVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinesReport {
    pub count: usize,
    pub groups: Vec<LineGroupReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LineGroupReport {
    pub param: FieldVector,
    pub kodaira: String,
    pub lines: Vec<LineSerial>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlexReport {
    pub stripped_power: u32,
    pub reduced_degree: usize,
    pub components: Vec<FlexComponentReport>,
    pub residual_certificate: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlexComponentReport {
    pub poly: PolySerial,
    pub degree: usize,
    pub multiplicity: usize,
    pub role: FlexRole,
    pub params: Vec<FieldVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SegreSection {
    pub detect: Option<bool>,
    pub decomposition: Option<SegreReport>,
}

/// `λ·S₄ + L₁L₂L₃L₄` in original coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct SegreReport {
    pub lambda: ElemSerial,
    pub s4: PolySerial,
    pub planes: Vec<PolySerial>,
    pub class: SingularLocusClass,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::mk_prime_field;
    use crate::mpoly::{parse_poly, PolyRing};

    #[test]
    fn singular_input_gives_partial_report() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::space(&ctx);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let a = analyze(
            &p("x3*x1^3 + x4*x2^3"),
            &p("x3"),
            &p("x4"),
            &AnalysisOptions::default(),
        )
        .unwrap();
        assert!(!a.smooth.smooth);
        let w = a.smooth.witness.clone().expect("witness");
        assert!((0..4).all(|i| a.input.derivative(i).eval(&w).is_zero()));
        let rep = a.report();
        assert!(rep.lines_meeting.is_none() && rep.flex_surface.is_none());
        assert!(serde_json::to_string(&rep)
            .unwrap()
            .contains("\"schema\":1"));
    }

    #[test]
    fn line_not_on_surface_is_hard_error() {
        let ctx = mk_prime_field(10007).unwrap();
        let r = PolyRing::space(&ctx);
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let e = analyze(
            &p("x1^4 + x2^4 + x3^4 + x4^4"),
            &p("x3"),
            &p("x4"),
            &AnalysisOptions::default(),
        );
        assert_eq!(e.unwrap_err(), Error::LineNotOnSurface);
    }
}
