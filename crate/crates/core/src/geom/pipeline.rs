//! End-to-end runs over a hypersurface example or a standalone germ, producing
//! one record per step.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::{
    dehomogenize, family_smoothing_verify, fixed_points_on, reid_tai_terminal,
    singular_locus_check, AmbientSpace, DiagonalProjectiveAction, GeomError, HypersurfaceScheme,
    Intersection, SmoothingFamily,
};
use crate::equiv::{
    class_character, equivariant_family_check, invariant_good_direction, is_ordinary,
    weight_decomposition, CyclicAction, EquivError,
};
use crate::gb::{GbConfig, GbError, VectorPolynomial};
use crate::poly::{PolyError, Polynomial, Rational};
use crate::t1::{
    const_part, degenerates_locally, good_direction_for_submodule, is_good_direction, minimalize,
    t1_module, verify_good_direction_bertini, Minimalization, ProperSubmodule, T1Class,
    T1Error, T1Presentation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepStatus {
    Pass,
    Fail,
    Skipped,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepRecord {
    pub step: String,
    pub status: StepStatus,
    pub certificate: Value,
    pub wall_ms: u64,
}

/// All records of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub steps: Vec<StepRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.steps
            .iter()
            .all(|s| matches!(s.status, StepStatus::Pass | StepStatus::Skipped))
    }

    pub fn has_errors(&self) -> bool {
        self.steps.iter().any(|s| s.status == StepStatus::Error)
    }

    pub fn step(&self, name: &str) -> Option<&StepRecord> {
        self.steps.iter().find(|s| s.step == name)
    }
}

/// A step that could not finish. Violated claims (a point off the scheme, a
/// non-invariant equation) become `fail` records; everything else is `error`.
#[derive(Debug)]
struct StepError {
    status: StepStatus,
    message: String,
}

fn t1_status(e: &T1Error) -> StepStatus {
    match e {
        T1Error::NotProper
        | T1Error::Inconsistent { .. }
        | T1Error::NotMinimal { .. }
        | T1Error::SmoothGerm => StepStatus::Fail,
        _ => StepStatus::Error,
    }
}

fn equiv_status(e: &EquivError) -> StepStatus {
    match e {
        EquivError::NotSemiInvariant(_)
        | EquivError::NotOrdinary(_)
        | EquivError::MixedGenerator(_)
        | EquivError::NotDivisibleByParameter(_) => StepStatus::Fail,
        EquivError::T1(inner) => t1_status(inner),
        _ => StepStatus::Error,
    }
}

fn geom_status(e: &GeomError) -> StepStatus {
    match e {
        GeomError::NotHomogeneous { .. }
        | GeomError::NotCoordinatePoint(_)
        | GeomError::PointNotOnScheme(_)
        | GeomError::DegreeMismatch { .. }
        | GeomError::PerturbationCharacter { .. }
        | GeomError::NotSemiInvariant => StepStatus::Fail,
        GeomError::T1(inner) => t1_status(inner),
        GeomError::Equiv(inner) => equiv_status(inner),
        _ => StepStatus::Error,
    }
}

macro_rules! step_error_from {
    ($($ty:ty => $classify:expr),* $(,)?) => {
        $(impl From<$ty> for StepError {
            fn from(e: $ty) -> Self {
                let classify: fn(&$ty) -> StepStatus = $classify;
                StepError { status: classify(&e), message: e.to_string() }
            }
        })*
    };
}

step_error_from! {
    GeomError => geom_status,
    EquivError => equiv_status,
    T1Error => t1_status,
    GbError => |_| StepStatus::Error,
    PolyError => |_| StepStatus::Error,
}

type StepResult = Result<(StepStatus, Value), StepError>;

struct Recorder {
    steps: Vec<StepRecord>,
}

impl Recorder {
    fn run(&mut self, step: impl Into<String>, f: impl FnOnce() -> StepResult) -> StepStatus {
        let start = Instant::now();
        let (status, certificate) = match f() {
            Ok(r) => r,
            Err(e) if e.status == StepStatus::Fail => (e.status, json!({ "reason": e.message })),
            Err(e) => (e.status, json!({ "error": e.message })),
        };
        self.steps.push(StepRecord {
            step: step.into(),
            status,
            certificate,
            wall_ms: start.elapsed().as_millis() as u64,
        });
        status
    }

    fn skip(&mut self, step: impl Into<String>, reason: &str) {
        self.steps.push(StepRecord {
            step: step.into(),
            status: StepStatus::Skipped,
            certificate: json!({ "reason": reason }),
            wall_ms: 0,
        });
    }
}

fn verdict(ok: bool) -> StepStatus {
    if ok {
        StepStatus::Pass
    } else {
        StepStatus::Fail
    }
}

fn rationals(v: &[Rational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// A declared cyclic quotient point `1/r (a_1, a_2, a_3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPointClaim {
    pub r: u32,
    pub weights: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct ExampleInput {
    pub name: String,
    pub ambient: AmbientSpace,
    pub vars: Vec<String>,
    pub equation: Polynomial,
    pub action: Option<CyclicAction>,
    pub claimed_singular: Option<Vec<Vec<Rational>>>,
    pub perturbation: Option<Polynomial>,
    pub quotient_points: Vec<QuotientPointClaim>,
    /// Number of cyclic quotient points stated for the example; reported, never asserted.
    pub expected_quotient_count: Option<usize>,
    /// Free-form statements (indices and the like) copied into the report.
    pub claims: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PipelineOptions {
    pub skip_family: bool,
}

/// The germ of the hypersurface at a claimed coordinate point, in its chart.
struct ChartGerm {
    chart: Vec<usize>,
    minimal: Minimalization,
    weights: Option<CyclicAction>,
}

fn chart_germ(
    input: &ExampleInput,
    action: Option<&DiagonalProjectiveAction>,
    support: &[usize],
) -> Result<ChartGerm, StepError> {
    let names: Vec<String> = (0..input.vars.len())
        .filter(|j| !support.contains(j))
        .map(|j| input.vars[j].to_lowercase())
        .collect();
    let f = dehomogenize(&input.equation, support);
    let minimal = minimalize(&names, &[f])?;
    let weights = match action {
        Some(a) => {
            let w = a.chart_weights(&input.ambient, support);
            Some(CyclicAction::new(a.order(), &w)?.restrict(&minimal.kept))
        }
        None => None,
    };
    Ok(ChartGerm {
        chart: support.to_vec(),
        minimal,
        weights,
    })
}

fn t1_certificate(t1: &T1Presentation, m: &Minimalization) -> Value {
    json!({
        "variables": t1.germ().vars(),
        "equations": t1.germ().equations().iter()
            .map(|f| f.display(t1.germ().vars()).to_string()).collect::<Vec<_>>(),
        "e": t1.germ().e(),
        "d": t1.germ().d(),
        "truncation": m.truncation,
        "tjurina": t1.tjurina().to_string(),
        "global_dimension": t1.global_dimension().to_string(),
        "localising_power": t1.localising_power(),
        "basis_size": t1.gb().map_or(0, |g| g.len()),
    })
}

fn class_certificate(
    t1: &T1Presentation,
    c: &T1Class,
    action: Option<&CyclicAction>,
) -> Result<Value, StepError> {
    let ch = match action {
        Some(a) => class_character(t1, c, a)?.map(|c| c.value()),
        None => None,
    };
    Ok(json!({
        "representative": c.representative().display(t1.germ().vars()).to_string(),
        "const_part": rationals(&const_part(c)),
        "character": ch,
    }))
}

fn is_singular_point(scheme: &HypersurfaceScheme, p: &[Rational]) -> bool {
    scheme
        .singular_generators()
        .iter()
        .all(|g| g.evaluate(p).is_ok_and(|v| v == Rational::default()))
}

/// Runs every check on one hypersurface example; failures do not stop later steps.
pub fn example_pipeline(input: &ExampleInput, opts: PipelineOptions, cfg: &GbConfig) -> Report {
    let mut rec = Recorder { steps: Vec::new() };
    let scheme = HypersurfaceScheme::new(input.ambient.clone(), input.equation.clone());
    rec.run("homogeneity", || match &scheme {
        Ok(s) => Ok((StepStatus::Pass, json!({ "degrees": s.degrees() }))),
        Err(e) => Ok((StepStatus::Fail, json!({ "reason": e.to_string() }))),
    });
    let Ok(scheme) = scheme else {
        return Report {
            name: input.name.clone(),
            steps: rec.steps,
        };
    };
    let action = match &input.action {
        Some(a) => match DiagonalProjectiveAction::new(&input.ambient, a.clone()) {
            Ok(d) => Some(d),
            Err(e) => {
                rec.run("action", || Err(e.into()));
                None
            }
        },
        None => None,
    };

    let claimed = input.claimed_singular.clone().unwrap_or_default();
    // claimed points that really are singular coordinate points, with their index
    let supports: Vec<(usize, Vec<usize>)> = claimed
        .iter()
        .enumerate()
        .filter(|(_, p)| is_singular_point(&scheme, p))
        .filter_map(|(i, p)| input.ambient.coordinate_point_support(p).map(|s| (i, s)))
        .collect();
    let support_sets: Vec<Vec<usize>> = supports.iter().map(|(_, s)| s.clone()).collect();

    match &input.claimed_singular {
        Some(points) => {
            rec.run("singular_locus", || {
                let v = singular_locus_check(&scheme, points, cfg)?;
                let charts: Vec<Value> = v
                    .charts
                    .iter()
                    .map(|c| {
                        json!({
                            "chart": c.chart.iter().map(|&j| &input.vars[j]).collect::<Vec<_>>(),
                            "basis_size": c.basis_size,
                            "singular_length": c.singular_length.to_string(),
                            "certified": c.certified,
                        })
                    })
                    .collect();
                Ok((
                    verdict(v.verified()),
                    json!({
                        "claimed": points.iter().map(|p| rationals(p)).collect::<Vec<_>>(),
                        "claimed_singular": v.claimed_singular,
                        "certificate_monomials": v.certificate.len(),
                        "charts": charts,
                    }),
                ))
            });
        }
        None => rec.skip("singular_locus", "no claimed singular points"),
    }

    match &action {
        Some(act) => {
            rec.run("character", || {
                let ch = act.character_of(scheme.equation())?;
                Ok((
                    verdict(ch.is_some()),
                    json!({ "order": act.order(), "character": ch.map(|c| c.value()) }),
                ))
            });
            rec.run("fixed_points", || {
                let rep = fixed_points_on(&scheme, act, &support_sets)?;
                let comps: Vec<Value> = rep
                    .components
                    .iter()
                    .map(|c| {
                        let inter = match c.intersection {
                            Intersection::Empty => json!("empty"),
                            Intersection::Points(n) => json!({ "points": n }),
                            Intersection::PositiveDimensional => json!("positive_dimensional"),
                            Intersection::Unsupported => json!("unsupported"),
                        };
                        json!({
                            "coordinates": c.subspace.coords.iter()
                                .map(|s| s.iter().map(|&j| &input.vars[j]).collect::<Vec<_>>())
                                .collect::<Vec<_>>(),
                            "intersection": inter,
                            "singular_points": c.singular_points,
                            "quotient_points": c.quotient_points(),
                            "local_weights": c.local_weights,
                        })
                    })
                    .collect();
                let finite = rep.total().is_some();
                let quotient = rep.quotient_points();
                Ok((
                    verdict(finite),
                    json!({
                        "components": comps,
                        "total": rep.total(),
                        "singular": rep.singular_points(),
                        "quotient_points": quotient,
                        "stated_quotient_points": input.expected_quotient_count,
                        "matches_stated": input.expected_quotient_count.map(|n| n == quotient),
                    }),
                ))
            });
        }
        None => {
            rec.skip("character", "no action");
            rec.skip("fixed_points", "no action");
        }
    }

    for i in 0..claimed.len() {
        let Some((_, support)) = supports.iter().find(|(j, _)| *j == i) else {
            rec.skip(format!("germ[{i}]"), "claimed point is not a singular coordinate point");
            continue;
        };
        let germ = match chart_germ(input, action.as_ref(), support) {
            Ok(g) => g,
            Err(e) => {
                rec.run(format!("germ[{i}]"), || Err(e));
                continue;
            }
        };
        let mut t1 = None;
        rec.run(format!("germ[{i}]"), || {
            let t = t1_module(&germ.minimal.germ, cfg)?;
            let mut cert = t1_certificate(&t, &germ.minimal);
            cert["chart"] = json!(germ.chart.iter().map(|&j| &input.vars[j]).collect::<Vec<_>>());
            let ok = t.tjurina().finite().is_some_and(|n| n > 0);
            t1 = Some(t);
            Ok((verdict(ok), cert))
        });
        let Some(t1) = t1 else { continue };
        if t1.germ().is_smooth() {
            rec.skip(format!("ordinary[{i}]"), "smooth germ");
            rec.skip(format!("good_direction[{i}]"), "smooth germ");
            continue;
        }
        match &germ.weights {
            Some(w) => {
                rec.run(format!("ordinary[{i}]"), || {
                    let ord = is_ordinary(t1.germ(), w)?;
                    let dec = if ord {
                        Some(weight_decomposition(&t1, w)?)
                    } else {
                        None
                    };
                    Ok((
                        verdict(ord),
                        json!({
                            "order": w.order(),
                            "chart_weights": w.weights(),
                            "t1_characters": dec,
                            "note": "decided for the given presentation",
                        }),
                    ))
                });
            }
            None => rec.skip(format!("ordinary[{i}]"), "no action"),
        }
        rec.run(format!("good_direction[{i}]"), || {
            let m = ProperSubmodule::zero();
            let c = match &germ.weights {
                Some(w) => invariant_good_direction(&t1, w, &m)?,
                None => good_direction_for_submodule(&t1, &m)?,
            };
            let good = is_good_direction(&c);
            let bertini = verify_good_direction_bertini(t1.germ(), &c);
            let local = degenerates_locally(t1.germ(), &c, cfg)?;
            let mut cert = json!({
                "direction": class_certificate(&t1, &c, germ.weights.as_ref())?,
                "good": good,
                "bertini": bertini,
                "degenerates_locally": local,
            });
            let mut ok = good && bertini && local;
            if let Some(p) = &input.perturbation {
                let local_p = dehomogenize(p, &germ.chart)
                    .substitute(&germ.minimal.substitution, t1.germ().e())?;
                let cls = t1.class(VectorPolynomial::from_poly(local_p))?;
                let fam_good = is_good_direction(&cls);
                cert["family_direction"] = class_certificate(&t1, &cls, germ.weights.as_ref())?;
                cert["family_direction_good"] = json!(fam_good);
                ok &= fam_good;
            }
            Ok((verdict(ok), cert))
        });
    }

    match (&input.perturbation, opts.skip_family) {
        (Some(_), true) => rec.skip("family", "disabled by flag"),
        (None, _) => rec.skip("family", "no smoothing term"),
        (Some(p), false) => {
            rec.run("family", || {
                let fam = SmoothingFamily::new(scheme.clone(), p.clone())?;
                let v = family_smoothing_verify(&fam, action.as_ref(), &claimed, cfg)?;
                let samples: Vec<Value> = v
                    .samples
                    .iter()
                    .map(|(s0, ok)| json!({ "s": s0.to_string(), "smooth": ok }))
                    .collect();
                Ok((
                    verdict(v.verified()),
                    json!({
                        "perturbation": p.display(&input.vars).to_string(),
                        "perturbation_zero": v.perturbation_zero,
                        "perturbation_character": v.perturbation_character,
                        "fibres": samples,
                        "witness": v.witness().map(ToString::to_string),
                        "total_space_smooth": v.total_space_smooth,
                    }),
                ))
            });
        }
    }

    let computed: Vec<(QuotientPointClaim, usize)> = match &action {
        Some(act) => fixed_points_on(&scheme, act, &support_sets)
            .map(|rep| {
                rep.components
                    .iter()
                    .filter(|c| c.quotient_points() > 0)
                    .filter_map(|c| {
                        c.local_weights.as_ref().map(|w| {
                            let q = QuotientPointClaim {
                                r: act.order(),
                                weights: w.iter().map(|&x| x as i64).collect(),
                            };
                            (q, c.quotient_points())
                        })
                    })
                    .collect()
            })
            .unwrap_or_default(),
        None => Vec::new(),
    };
    if input.quotient_points.is_empty() && computed.is_empty() {
        rec.skip("terminal_quotients", "no quotient points");
    } else {
        rec.run("terminal_quotients", || {
            let mut all = true;
            let mut rows = Vec::new();
            for (source, q, count) in input
                .quotient_points
                .iter()
                .map(|q| ("declared", q, 1))
                .chain(computed.iter().map(|(q, n)| ("fixed_locus", q, *n)))
            {
                let t = reid_tai_terminal(q.r, &q.weights)?;
                all &= t;
                rows.push(json!({
                    "source": source, "r": q.r, "weights": q.weights, "count": count, "terminal": t,
                }));
            }
            Ok((verdict(all), json!({ "points": rows })))
        });
    }

    if !input.claims.is_empty() {
        rec.steps.push(StepRecord {
            step: "claims".into(),
            status: StepStatus::Skipped,
            certificate: json!({ "recorded_without_proof": input.claims }),
            wall_ms: 0,
        });
    }

    Report {
        name: input.name.clone(),
        steps: rec.steps,
    }
}

/// A standalone germ with optional action, submodule and family.
#[derive(Debug, Clone)]
pub struct GermInput {
    pub name: String,
    pub vars: Vec<String>,
    pub equations: Vec<Polynomial>,
    pub action: Option<CyclicAction>,
    /// Generators of `M`, as vectors over the original variables.
    pub submodule: Vec<Vec<Polynomial>>,
    /// Family terms `h_k` over the original variables followed by `s`.
    pub family: Option<Vec<Polynomial>>,
    pub expected_tjurina: Option<usize>,
}

fn lift_family_term(h: &Polynomial, m: &Minimalization) -> Result<Polynomial, GeomError> {
    let e = m.germ.e();
    let map: Vec<usize> = (0..e).collect();
    let mut assignment: Vec<Polynomial> =
        m.substitution.iter().map(|p| p.relabel(&map, e + 1)).collect();
    assignment.push(Polynomial::var(e + 1, e));
    Ok(h.substitute(&assignment, e + 1)?)
}

pub fn germ_pipeline(input: &GermInput, cfg: &GbConfig) -> Report {
    let mut rec = Recorder { steps: Vec::new() };
    let prefix = format!("germ:{}", input.name);
    let mut minimal = None;
    rec.run(format!("{prefix}:minimalize"), || {
        let m = minimalize(&input.vars, &input.equations)?;
        let cert = json!({
            "kept": m.kept.iter().map(|&i| &input.vars[i]).collect::<Vec<_>>(),
            "e": m.germ.e(),
            "d": m.germ.d(),
            "truncation": m.truncation,
        });
        minimal = Some(m);
        Ok((StepStatus::Pass, cert))
    });
    let Some(m) = minimal else {
        return Report {
            name: input.name.clone(),
            steps: rec.steps,
        };
    };
    if let Some(a) = &input.action {
        if a.nvars() != input.vars.len() {
            let err = EquivError::Arity {
                expected: input.vars.len(),
                got: a.nvars(),
            };
            rec.run(format!("{prefix}:action"), || Err(err.into()));
            return Report {
                name: input.name.clone(),
                steps: rec.steps,
            };
        }
    }
    let action = input.action.as_ref().map(|a| a.restrict(&m.kept));
    let mut t1 = None;
    rec.run(format!("{prefix}:t1"), || {
        let t = t1_module(&m.germ, cfg)?;
        let mut cert = t1_certificate(&t, &m);
        let ok = match input.expected_tjurina {
            Some(n) => t.tjurina().finite() == Some(n),
            None => t.tjurina().is_finite(),
        };
        cert["expected_tjurina"] = json!(input.expected_tjurina);
        t1 = Some(t);
        Ok((verdict(ok), cert))
    });
    let Some(t1) = t1 else {
        return Report {
            name: input.name.clone(),
            steps: rec.steps,
        };
    };
    if t1.germ().is_smooth() {
        rec.skip(format!("{prefix}:good_direction"), "smooth germ");
        return Report {
            name: input.name.clone(),
            steps: rec.steps,
        };
    }
    if let Some(a) = &action {
        rec.run(format!("{prefix}:ordinary"), || {
            let ord = is_ordinary(t1.germ(), a)?;
            let dec = if ord {
                Some(weight_decomposition(&t1, a)?)
            } else {
                None
            };
            Ok((verdict(ord), json!({ "chart_weights": a.weights(), "t1_characters": dec })))
        });
    }
    rec.run(format!("{prefix}:good_direction"), || {
        let e = t1.germ().e();
        let mut gens = Vec::new();
        for v in &input.submodule {
            let comps = v
                .iter()
                .map(|p| p.substitute(&m.substitution, e))
                .collect::<Result<Vec<_>, _>>()?;
            gens.push(t1.class(VectorPolynomial::new(comps)?)?);
        }
        let sub = ProperSubmodule::new(gens);
        let c = match &action {
            Some(a) => invariant_good_direction(&t1, a, &sub)?,
            None => good_direction_for_submodule(&t1, &sub)?,
        };
        let mut ok = true;
        for g in sub.generators() {
            let sum = t1.class(c.representative().add(g.representative()))?;
            ok &= is_good_direction(&sum) && verify_good_direction_bertini(t1.germ(), &sum);
        }
        let good = is_good_direction(&c);
        let bertini = verify_good_direction_bertini(t1.germ(), &c);
        let local = degenerates_locally(t1.germ(), &c, cfg)?;
        ok &= good && bertini && local;
        let unit = (0..t1.germ().d())
            .find(|&i| c.representative() == &VectorPolynomial::unit(t1.germ().d(), i, e))
            .map(|i| format!("e{}", i + 1));
        Ok((
            verdict(ok),
            json!({
                "direction": class_certificate(&t1, &c, action.as_ref())?,
                "unit_vector": unit,
                "submodule_span_dimension": sub.span_dimension(),
                "good": good,
                "bertini": bertini,
                "degenerates_locally": local,
            }),
        ))
    });
    if let Some(h) = &input.family {
        match &action {
            Some(a) => {
                rec.run(format!("{prefix}:equivariant_family"), || {
                    let lifted = h
                        .iter()
                        .map(|p| lift_family_term(p, &m))
                        .collect::<Result<Vec<_>, _>>()?;
                    let v = equivariant_family_check(t1.germ(), a, &lifted, cfg)?;
                    let samples: Vec<Value> = v
                        .samples
                        .iter()
                        .map(|s| {
                            json!({
                                "s": s.s0.to_string(),
                                "invariant_equations": s.invariant_equations,
                                "fixed_singular_length": s.fixed_singular_length.to_string(),
                                "origin_singular": s.origin_singular,
                                "ordinary_at_origin": s.ordinary_at_origin,
                            })
                        })
                        .collect();
                    Ok((
                        verdict(v.passed()),
                        json!({ "family_invariant": v.family_invariant, "samples": samples }),
                    ))
                });
            }
            None => rec.skip(format!("{prefix}:equivariant_family"), "no action"),
        }
    }
    Report {
        name: input.name.clone(),
        steps: rec.steps,
    }
}
