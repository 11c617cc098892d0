//! Acceptance criteria, one line each. Run with `--nocapture` to see the table.

mod common;

use std::time::{Duration, Instant};

use common::{global_quotient_dimension, local_tjurina, manifest, names, polys, CHART_GERMS};
use num_traits::{One, Zero};
use qsmooth::cli::manifest::VerificationManifest;
use qsmooth::equiv::{
    character_of, equivariant_family_check, invariant_good_direction, weight_decomposition,
    CyclicAction,
};
use qsmooth::gb::{
    ideal_basis, ideal_membership, ideal_quotient_saturation, quotient_dimension,
    radical_membership, Dimension, GbConfig, MonomialOrder, VectorPolynomial,
};
use qsmooth::geom::pipeline::{example_pipeline, PipelineOptions, Report, StepStatus};
use qsmooth::geom::reid_tai_terminal;
use qsmooth::poly::{parse, Monomial, Polynomial, Rational};
use qsmooth::t1::{
    good_direction_for_submodule, is_good_direction, minimalize, t1_module,
    verify_good_direction_bertini, GermPresentation, ProperSubmodule, T1Error,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

/// Wall-time budgets.
const EXAMPLE1_BUDGET: Duration = Duration::from_secs(60);
const EXAMPLE_BUDGET: Duration = Duration::from_secs(300);

/// Regression value for the Tjurina number at the singular point of Example 1,
/// first obtained from the dense oracle.
const EXAMPLE1_TJURINA: usize = 16;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_example(file: &str) -> Result<(Report, Duration), String> {
    let m = VerificationManifest::load(&manifest(file)).map_err(|e| e.to_string())?;
    let ex = m.example.ok_or("manifest has no example")?;
    let start = Instant::now();
    let report = example_pipeline(&ex, PipelineOptions::default(), &GbConfig::default());
    Ok((report, start.elapsed()))
}

fn failed_steps(r: &Report) -> Vec<String> {
    r.steps
        .iter()
        .filter(|s| !matches!(s.status, StepStatus::Pass | StepStatus::Skipped))
        .map(|s| format!("{} {:?}", s.step, s.status))
        .collect()
}

fn cert<'a>(r: &'a Report, step: &str) -> Result<&'a Value, String> {
    r.step(step)
        .map(|s| &s.certificate)
        .ok_or_else(|| format!("missing step {step}"))
}

/// The common contract: every step passes, the germ's Tjurina number matches the
/// oracle, e1 is an invariant good direction, the family is verified.
fn check_example(file: &str, fixture: usize, budget: Duration) -> Outcome {
    let (report, took) = run_example(file)?;
    ensure(report.passed(), format!("failed steps: {:?}", failed_steps(&report)))?;
    ensure(took < budget, format!("took {took:?}, budget {budget:?}"))?;
    let fx = &CHART_GERMS[fixture];
    let oracle = local_tjurina(&[fx.polynomial()]);
    ensure(oracle == fx.tjurina, format!("oracle gives {oracle}, fixture {}", fx.tjurina))?;
    let germ = cert(&report, "germ[0]")?;
    ensure(
        germ["tjurina"] == Value::String(oracle.to_string()),
        format!("pipeline tjurina {} vs oracle {oracle}", germ["tjurina"]),
    )?;
    let ch = cert(&report, "character")?;
    ensure(ch["character"] == 0, "equation is not invariant")?;
    let gd = cert(&report, "good_direction[0]")?;
    ensure(gd["direction"]["representative"] == "1", "direction is not e1")?;
    ensure(gd["direction"]["character"] == 0, "direction is not invariant")?;
    ensure(gd["bertini"] == true && gd["good"] == true, "direction not good")?;
    let family = report.step("family").map(|s| s.status);
    ensure(family == Some(StepStatus::Pass), "family not verified")?;
    let fp = cert(&report, "fixed_points")?;
    Ok(format!(
        "tjurina {oracle}, fixed points {}, quotient points {} (stated {}), {took:.2?}",
        fp["total"], fp["quotient_points"], fp["stated_quotient_points"]
    ))
}

fn criterion_example1() -> Outcome {
    let out = check_example("example1.toml", 0, EXAMPLE1_BUDGET)?;
    ensure(CHART_GERMS[0].tjurina == EXAMPLE1_TJURINA, "regression constant moved")?;
    let (report, _) = run_example("example1.toml")?;
    let locus = cert(&report, "singular_locus")?;
    ensure(locus["claimed_singular"] == serde_json::json!([true]), "claimed point not singular")?;
    Ok(out)
}

fn criterion_examples_2_to_4() -> Outcome {
    let mut parts = Vec::new();
    for (i, file) in ["example2.toml", "example3.toml", "example4.toml"].iter().enumerate() {
        let detail = check_example(file, i + 1, EXAMPLE_BUDGET).map_err(|e| format!("{file}: {e}"))?;
        let (report, _) = run_example(file)?;
        let fp = cert(&report, "fixed_points")?;
        let matches = if fp["matches_stated"] == true { "agrees" } else { "DIFFERS" };
        parts.push(format!("{file}: {detail}; count {matches}"));
    }
    Ok(parts.join(" | "))
}

/// All germs used by the oracle and good-direction suites, as (label, vars, equations).
fn test_germs() -> Vec<(String, Vec<String>, Vec<Polynomial>)> {
    let xyzw = ["x", "y", "z", "w"];
    let mut out = Vec::new();
    for k in 1..=5 {
        let f = format!("x^2 + y^2 + z^2 + w^{}", k + 1);
        out.push((format!("A{k}"), names(&xyzw), polys(&[&f], &xyzw)));
    }
    for g in &CHART_GERMS {
        out.push((g.name.to_string(), names(g.vars), vec![g.polynomial()]));
    }
    out.push((
        "icis".into(),
        names(&xyzw),
        polys(&["x^2 + y^2 + z^2 + w^2", "x^2 + 2*y^2 + 3*z^2 + 4*w^2"], &xyzw),
    ));
    out.push(("D4".into(), names(&xyzw), polys(&["x^2*y + y^3 + z^2 + w^2"], &xyzw)));
    out.push((
        "non-quasi-homogeneous".into(),
        names(&["x", "y", "z"]),
        polys(&["x^4 + y^5 + x^2*y^3 + z^2"], &["x", "y", "z"]),
    ));
    out
}

fn criterion_oracle_equivalence() -> Outcome {
    let cfg = GbConfig::default();
    let mut seen = Vec::new();
    for (label, vars, eqs) in test_germs() {
        let m = minimalize(&vars, &eqs).map_err(|e| format!("{label}: {e}"))?;
        let t1 = t1_module(&m.germ, &cfg).map_err(|e| format!("{label}: {e}"))?;
        let oracle = local_tjurina(m.germ.equations());
        ensure(
            t1.tjurina() == Dimension::Finite(oracle),
            format!("{label}: module {:?}, oracle {oracle}", t1.tjurina()),
        )?;
        seen.push(format!("{label}={oracle}"));
    }
    ensure(seen.len() >= 10, "fewer than ten germs")?;
    Ok(seen.join(" "))
}

fn criterion_good_directions() -> Outcome {
    let cfg = GbConfig::default();
    let mut count = 0;
    for (label, vars, eqs) in test_germs() {
        let m = minimalize(&vars, &eqs).map_err(|e| e.to_string())?;
        let t1 = t1_module(&m.germ, &cfg).map_err(|e| e.to_string())?;
        let c = good_direction_for_submodule(&t1, &ProperSubmodule::zero())
            .map_err(|e| format!("{label}: {e}"))?;
        ensure(is_good_direction(&c), format!("{label}: not good"))?;
        ensure(verify_good_direction_bertini(t1.germ(), &c), format!("{label}: bertini fails"))?;
        count += 1;
    }

    let xyzw = ["x", "y", "z", "w"];
    let eqs = polys(&["x^2 + y^2 + z^2 + w^2", "x^2 + 2*y^2 + 3*z^2 + 4*w^2"], &xyzw);
    let germ = GermPresentation::new(names(&xyzw), eqs).map_err(|e| e.to_string())?;
    let t1 = t1_module(&germ, &cfg).map_err(|e| e.to_string())?;
    let x = Polynomial::var(4, 0);
    // const part (1, 0) plus a term without constant part in the second slot
    let g1 = t1
        .class(VectorPolynomial::new(vec![Polynomial::one(4), x.clone()]).unwrap())
        .map_err(|e| e.to_string())?;
    let m = ProperSubmodule::new(vec![g1.clone()]);
    let c = good_direction_for_submodule(&t1, &m).map_err(|e| e.to_string())?;
    ensure(
        c.representative() == &VectorPolynomial::unit(2, 1, 4),
        "expected e2 for M with const span (1, 0)",
    )?;
    let shifted = t1.class(c.representative().add(g1.representative())).unwrap();
    ensure(is_good_direction(&shifted), "e2 + generator is not good")?;
    ensure(verify_good_direction_bertini(&germ, &shifted), "e2 + generator fails bertini")?;

    let g2 = t1
        .class(VectorPolynomial::new(vec![x, Polynomial::one(4)]).unwrap())
        .map_err(|e| e.to_string())?;
    let full = ProperSubmodule::new(vec![g1, g2]);
    ensure(
        matches!(good_direction_for_submodule(&t1, &full), Err(T1Error::NotProper)),
        "full span accepted",
    )?;
    ensure(
        T1Error::NotProper.to_string() == "submodule is not proper (M = T1 by Nakayama)",
        "error text",
    )?;

    let node = GermPresentation::new(names(&xyzw), polys(&["x^2+y^2+z^2+w^2"], &xyzw)).unwrap();
    let t1n = t1_module(&node, &cfg).unwrap();
    let e1 = t1n.unit_class(0).unwrap();
    ensure(
        matches!(
            good_direction_for_submodule(&t1n, &ProperSubmodule::new(vec![e1])),
            Err(T1Error::NotProper)
        ),
        "d = 1 full span accepted",
    )?;
    Ok(format!("{count} germs, proper and full-span submodules behave"))
}

fn random_monomial(rng: &mut StdRng, n: usize) -> Monomial {
    Monomial::from_exponents((0..n).map(|_| rng.gen_range(0..7)).collect())
}

fn criterion_equivariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let n = rng.gen_range(1..6);
        let r = rng.gen_range(1..13);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..20)).collect();
        let act = CyclicAction::new(r, &w).unwrap();
        let (a, b) = (random_monomial(&mut rng, n), random_monomial(&mut rng, n));
        let ab = Monomial::from_exponents(
            a.exponents().iter().zip(b.exponents()).map(|(x, y)| x + y).collect(),
        );
        let lhs = act.monomial_character(&ab);
        let rhs = act.monomial_character(&a) + act.monomial_character(&b);
        ensure(lhs == rhs, format!("additivity fails for {a:?}, {b:?}"))?;
        // independent check straight from the exponents
        let direct: i64 = ab.exponents().iter().zip(&w).map(|(e, wi)| *e as i64 * wi).sum();
        ensure(lhs.value() as i64 == direct.rem_euclid(r as i64), "character value")?;
    }

    let cfg = GbConfig::default();
    for g in &CHART_GERMS {
        let germ = GermPresentation::new(names(g.vars), vec![g.polynomial()]).unwrap();
        let t1 = t1_module(&germ, &cfg).unwrap();
        let act = CyclicAction::new(g.order, g.weights).unwrap();
        let dec = weight_decomposition(&t1, &act).map_err(|e| e.to_string())?;
        let total: usize = dec.values().sum();
        ensure(
            Dimension::Finite(total) == t1.tjurina(),
            format!("{}: characters sum to {total}", g.name),
        )?;
        let c = invariant_good_direction(&t1, &act, &ProperSubmodule::zero())
            .map_err(|e| e.to_string())?;
        ensure(is_good_direction(&c), "invariant direction not good")?;
    }

    let ex1 = &CHART_GERMS[0];
    let germ = GermPresentation::new(names(ex1.vars), vec![ex1.polynomial()]).unwrap();
    let act = CyclicAction::new(ex1.order, ex1.weights).unwrap();
    let with_s = ["x1", "x2", "x3", "x4", "s"];
    let good = equivariant_family_check(&germ, &act, &[parse("s", &with_s).unwrap()], &cfg)
        .map_err(|e| e.to_string())?;
    ensure(good.passed(), "Example 1 family rejected")?;
    let bad = equivariant_family_check(&germ, &act, &[parse("s*x4", &with_s).unwrap()], &cfg)
        .map_err(|e| e.to_string())?;
    ensure(!bad.family_invariant && !bad.passed(), "non-invariant perturbation accepted")?;
    ensure(
        character_of(&parse("s*x4", &with_s).unwrap(), &act.extend(0)).unwrap()
            != Some(act.character(0)),
        "s*x4 should not be invariant",
    )?;
    Ok("1000 additivity pairs; character spaces sum to tjurina on 4 germs; family check both ways".into())
}

fn criterion_gb() -> Outcome {
    let cfg = GbConfig::default();
    let xyz = ["x", "y", "z"];
    let xy = ["x", "y"];
    let ideals: Vec<(&[&str], Vec<&str>)> = vec![
        (&xy, vec!["x^2 - y", "y^2 - x"]),
        (&xy, vec!["x^2 + y^2 - 1", "x - y"]),
        (&xy, vec!["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]),
        (&xyz, vec!["x^2 - y", "y^2 - z", "z^2 - x"]),
        (&xyz, vec!["x^2 + y*z - 1", "y^2 - x*z", "z^3 - x + y"]),
        (&xyz, vec!["x^2", "y^2", "z^2 - x*y"]),
        (&xyz, vec!["x^4 + y - 1", "y^3 + x*z", "z^2 - x*y"]),
        (&xyz, vec!["x*y - 1", "x^2 + y^2 - 4", "z^2 - x - y"]),
    ];
    let orders = [
        MonomialOrder::degrevlex(),
        MonomialOrder::lex(),
        MonomialOrder::block_elimination(1),
        MonomialOrder::degrevlex().with_permutation(vec![2, 0, 1]).unwrap(),
    ];
    let mut dims = Vec::new();
    for (vars, gens) in &ideals {
        let ps = polys(gens, vars);
        let mut seen = None;
        for o in &orders {
            let o = if o.permutation().is_some() && vars.len() != 3 {
                &orders[0]
            } else {
                o
            };
            let gb = ideal_basis(&ps, o, &cfg).map_err(|e| e.to_string())?;
            ensure(gb.satisfies_buchberger_criterion(), format!("{gens:?}: S-pairs do not reduce"))?;
            for p in &ps {
                ensure(ideal_membership(p, &gb).unwrap(), "generator not a member")?;
            }
            let dim = quotient_dimension(&gb).dimension;
            ensure(dim.is_finite(), format!("{gens:?}: not zero-dimensional"))?;
            ensure(seen.is_none_or(|s| s == dim), format!("{gens:?}: order dependence"))?;
            seen = Some(dim);
        }
        let dim = seen.unwrap().finite().unwrap();
        let oracle = global_quotient_dimension(&ps);
        ensure(dim == oracle, format!("{gens:?}: basis gives {dim}, oracle {oracle}"))?;
        dims.push(dim);
    }

    let order = MonomialOrder::degrevlex();
    let gb_of = |gens: &[&str], vs: &[&str]| ideal_basis(&polys(gens, vs), &order, &cfg).unwrap();
    let sat = ideal_quotient_saturation(&gb_of(&["x*y"], &xy), &parse("x", &xy).unwrap(), &cfg)
        .unwrap();
    ensure(sat.polynomials() == polys(&["y"], &xy), "(xy : x^inf) != (y)")?;
    let sat = ideal_quotient_saturation(&gb_of(&["x"], &xy), &parse("y", &xy).unwrap(), &cfg)
        .unwrap();
    ensure(sat.polynomials() == polys(&["x"], &xy), "(x : y^inf) != (x)")?;
    let v3 = ["X0", "X1", "X2"];
    let sat = ideal_quotient_saturation(
        &gb_of(&["X0*X1", "X0*X2"], &v3),
        &parse("X0", &v3).unwrap(),
        &cfg,
    )
    .unwrap();
    let expect = gb_of(&["X1", "X2"], &v3);
    ensure(sat.polynomials() == expect.polynomials(), "(X0X1, X0X2) : X0^inf")?;
    let sq = gb_of(&["x^2"], &xy);
    ensure(radical_membership(&parse("x", &xy).unwrap(), &sq, &cfg).unwrap(), "x in rad(x^2)")?;
    ensure(!radical_membership(&parse("y", &xy).unwrap(), &sq, &cfg).unwrap(), "y in rad(x^2)")?;
    let cube = gb_of(&["(x+y)^3 + (x+y)*x^2*y", "x^5"], &xy);
    ensure(
        radical_membership(&parse("x + y", &xy).unwrap(), &cube, &cfg).unwrap(),
        "x + y in the radical of the cube case",
    )?;
    Ok(format!("{} ideals, quotient dimensions {dims:?}, 4 orders each", ideals.len()))
}

/// Terminality from fractional parts: `sum_i {j a_i / r} > 1` for all `j`.
fn terminal_by_fractions(r: u32, a: [u32; 3]) -> bool {
    (1..r).all(|j| {
        let total: Rational = a
            .iter()
            .map(|&ai| {
                let q = Rational::new(((j * ai) as i64).into(), (r as i64).into());
                &q - q.floor()
            })
            .fold(Rational::zero(), |acc, x| acc + x);
        total > Rational::one()
    })
}

fn criterion_reid_tai() -> Outcome {
    let mut checked = 0;
    for r in 1..=12u32 {
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let got = reid_tai_terminal(r, &[a as i64, b as i64, c as i64]);
                    if a == 0 || b == 0 || c == 0 {
                        ensure(got.is_err(), format!("1/{r}({a},{b},{c}) should be rejected"))?;
                    } else {
                        let want = terminal_by_fractions(r, [a, b, c]);
                        ensure(
                            got.as_ref().ok() == Some(&want),
                            format!("1/{r}({a},{b},{c}): {got:?} vs {want}"),
                        )?;
                        checked += 1;
                    }
                }
            }
        }
    }
    let mut series = 0;
    for r in 2..=12u32 {
        for a in 1..r {
            if num_integer::gcd(a, r) == 1 {
                ensure(
                    reid_tai_terminal(r, &[1, a as i64, (r - a) as i64]).unwrap(),
                    format!("1/{r}(1,{a},{})", r - a),
                )?;
                series += 1;
            }
        }
    }
    Ok(format!("{checked} weight triples, {series} members of the terminal series"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("example 1 end-to-end", criterion_example1),
        ("examples 2-4 end-to-end", criterion_examples_2_to_4),
        ("tjurina oracle equivalence", criterion_oracle_equivalence),
        ("good-direction suite", criterion_good_directions),
        ("equivariance suite", criterion_equivariance),
        ("groebner engine suite", criterion_gb),
        ("reid-tai plumbing", criterion_reid_tai),
    ];
    let mut failures = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        match &outcome {
            Ok(detail) => println!("PASS [{}] {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                println!("FAIL [{}] {name} ({took:.2?}): {why}", i + 1);
                failures.push(*name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
