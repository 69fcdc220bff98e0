//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use humbert::catalog::{check_collapse, collapse_cases, mutate, shifted_function_sides, verify_formula, Catalog};
use humbert::expr::Expression;
use humbert::operator::{apply_delta_op, apply_h, apply_h_bar, apply_nabla, Mode, Vars};
use humbert::profiles::Config;
use humbert::quadrature::{
    beta_fn, cross_check_rep, default_points, default_tolerance, eval_integral, integral_by_id, integral_catalog,
    integral_corrections, integrate, BetaKernel, CrossCheck, QuadratureSpec,
};
use humbert::report::{id_key, Status, TargetKind, VerificationReport};
use humbert::scalar::{ratio, Rational};
use humbert::series::eval::eval_double_series;
use humbert::{Biseries, FunctionRef, Kind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn profile(name: &str) -> humbert::profiles::Profile {
    Config::embedded().profile(name).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q: i64 = rng.gen_range(2..=23);
        let p: i64 = rng.gen_range(1..=4 * q);
        if p % q != 0 {
            return ratio(p, q);
        }
    }
}

fn random_triangle(rng: &mut ChaCha8Rng, degree: usize) -> Biseries<Rational> {
    Biseries::from_fn(degree, |_, _| {
        let p: i64 = rng.gen_range(-50..=50);
        let q: i64 = rng.gen_range(1..=30);
        ratio(p, q)
    })
}

fn ids(range: std::ops::RangeInclusive<u32>, major: u32) -> BTreeSet<String> {
    range.map(|k| format!("{major}.{k}")).collect()
}

fn exact_sweep() -> Outcome {
    let started = Instant::now();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = humbert::cli::run(["humbert", "verify", "all", "--profile", "generic-A", "--n", "8"], &mut out, &mut err);
    let secs = started.elapsed().as_secs_f64();
    let reports: Vec<VerificationReport> =
        String::from_utf8(out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let of = |t: TargetKind| reports.iter().filter(|r| r.target == t).collect::<Vec<_>>();
    let formulas = of(TargetKind::Formula);
    let identities = of(TargetKind::Identity);
    let formula_ids: BTreeSet<String> = formulas.iter().map(|r| r.id.clone()).collect();
    let identity_ids: BTreeSet<String> = identities.iter().map(|r| r.id.clone()).collect();
    let witnessed = reports.iter().all(|r| r.status == Status::Pass || (r.status == Status::Fail && r.mismatch.is_some()));
    let failing: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.id.as_str()).collect();
    let ok = secs < 60.0
        && formula_ids == ids(36..=70, 2)
        && formulas.len() == formula_ids.len()
        && identity_ids == ids(1..=35, 2)
        && identities.len() == 35
        && witnessed;
    outcome(
        ok,
        format!(
            "{} formula reports (ids 2.36..2.70), {} identity reports, exit {code}, {secs:.2}s; not passing: {failing:?}",
            formulas.len(),
            identities.len()
        ),
    )
}

fn collapse_suite() -> Outcome {
    let catalog = Catalog::embedded();
    let cases = collapse_cases();
    let mut failures = Vec::new();
    for name in ["generic-A", "generic-B"] {
        let p = profile(name);
        for case in &cases {
            match check_collapse(&catalog, case, &p.params_for(case.id), 8) {
                Ok(o) if o.passed() => {}
                Ok(o) => failures.push(format!("{name} {} [{}] terms {}", o.id, o.label, o.surviving_terms)),
                Err(e) => failures.push(format!("{name} {}: {e}", case.id)),
            }
        }
    }
    let distinct: BTreeSet<_> = cases.iter().map(|c| (c.id, c.label())).collect();
    outcome(
        failures.is_empty() && distinct.len() >= 20,
        format!("{} distinct collapse cases x 2 profiles at N = 8; failures {failures:?}", distinct.len()),
    )
}

fn operator_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4855_4d42);
    let mut bad = Vec::new();
    for k in 0..20 {
        let a = random_rational(&mut rng);
        let b = random_rational(&mut rng);
        let s12 = random_triangle(&mut rng, 12);
        for vars in [Vars::X, Vars::Y, Vars::XY] {
            let closed = apply_h(&s12, &a, &b, vars, Mode::ClosedForm).unwrap();
            let summed = apply_h(&s12, &a, &b, vars, Mode::DoubleSum).unwrap();
            if closed != summed {
                bad.push(format!("pair {k} H modes {vars:?}"));
            }
        }
        let s8 = random_triangle(&mut rng, 8);
        let there = apply_h(&s8, &a, &b, Vars::XY, Mode::ClosedForm).unwrap();
        if apply_h_bar(&there, &a, &b, Vars::XY, Mode::ClosedForm).unwrap() != s8 {
            bad.push(format!("pair {k} Hbar H"));
        }
        let nd = apply_nabla(&apply_delta_op(&s8, &a).unwrap(), &a).unwrap();
        if nd != s8 {
            bad.push(format!("pair {k} nabla delta"));
        }
    }
    outcome(bad.is_empty(), format!("20 random pairs, H modes to degree 12, inverses on degree-8 triangles; failures {bad:?}"))
}

fn proof_mechanics() -> Outcome {
    let mut bad = Vec::new();
    let mut checks = 0;
    for name in ["generic-A", "generic-B"] {
        let p = profile(name).values().clone();
        for i in 0..=4 {
            for j in 0..=4 - i {
                let (lhs, rhs) = shifted_function_sides(&p, i, j, 8).unwrap();
                checks += 1;
                if lhs != rhs {
                    bad.push(format!("{name} ({i}, {j}) first mismatch {:?}", lhs.first_mismatch(&rhs)));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checks} (i, j) pairs with i + j <= 4 over slots m + n <= 8; failures {bad:?}"))
}

fn transformations() -> Outcome {
    let catalog = Catalog::embedded();
    let p = profile("generic-A");
    let xs: Vec<f64> = (0..4).map(|k| -0.4 + 0.8 * k as f64 / 3.0).collect();
    let ys: Vec<f64> = (0..4).map(|k| -0.5 + k as f64 / 3.0).collect();
    let mut worst = 0.0f64;
    let mut exact = true;
    let mut errors = Vec::new();
    for id in ["2.39", "2.54"] {
        let spec = catalog.get(id).unwrap();
        let params = p.params_for(id);
        exact &= verify_formula(&catalog, id, &params, 8).unwrap().passed();
        let (Expression::Term(lhs), Expression::Term(rhs)) = (&spec.lhs, &spec.rhs) else {
            errors.push(format!("{id} is not a closed transformation"));
            continue;
        };
        for &x in &xs {
            for &y in &ys {
                match (lhs.eval_f64(&params, x, y, 1e-16), rhs.eval_f64(&params, x, y, 1e-16)) {
                    (Ok(a), Ok(b)) => worst = worst.max(((a - b) / a).abs()),
                    (a, b) => errors.push(format!("{id} at ({x}, {y}): {a:?} {b:?}")),
                }
            }
        }
    }
    outcome(
        exact && errors.is_empty() && worst < 1e-10,
        format!("exact at N = 8: {exact}; max rel err {worst:.2e} on 4x4 grid (tol 1e-10); errors {errors:?}"),
    )
}

fn float_exact_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let params = profile("generic-A").values().clone();
    let mut worst = 0.0f64;
    let mut errors = Vec::new();
    for kind in [Kind::Phi1, Kind::Phi2, Kind::Phi3, Kind::Psi1, Kind::Psi2, Kind::Xi1, Kind::Xi2] {
        let f = FunctionRef::from_superset(kind, &params).unwrap();
        let exact = f.truncated_series::<Rational>(24).unwrap();
        for _ in 0..5 {
            let x: f64 = rng.gen_range(-0.25..=0.25);
            let y: f64 = rng.gen_range(-0.25..=0.25);
            let oracle = exact.eval_f64(x, y);
            match eval_double_series(&f, x, y, 1e-16, 4000) {
                Ok((v, _)) => worst = worst.max(((v - oracle) / oracle).abs()),
                Err(e) => errors.push(format!("{kind} at ({x}, {y}): {e}")),
            }
        }
    }
    outcome(
        errors.is_empty() && worst < 1e-12,
        format!("7 kinds x 5 points, max rel err {worst:.2e} against the degree-24 truncation (tol 1e-12); errors {errors:?}"),
    )
}

fn quadrature_suite(errata: &mut Vec<String>) -> Outcome {
    let started = Instant::now();
    let spec = QuadratureSpec::default();

    let vals = [0.25, 0.5, 1.0, 1.5, 2.5];
    let beta_spec = QuadratureSpec { tol: 1e-13, ..spec };
    let mut beta_worst = 0.0f64;
    for a in vals {
        for b in vals {
            let (v, _) = integrate(&BetaKernel { a, b }, &beta_spec).unwrap();
            beta_worst = beta_worst.max(((v - beta_fn(a, b)) / beta_fn(a, b)).abs());
        }
    }

    let prof = profile("integral-A");
    let run = |rep: &humbert::quadrature::IntegralRep| -> Result<CrossCheck, String> {
        cross_check_rep(rep, &prof.params_for(&rep.id), &default_points(&rep.id), default_tolerance(&rep.id), &spec)
            .map_err(|e| format!("{}: {e}", rep.id))
    };
    let mut problems = Vec::new();
    let mut monotone = true;
    let mut printed_fail = Vec::new();
    let corrections = integral_corrections();
    for rep in integral_catalog() {
        let c = match run(rep) {
            Ok(c) => c,
            Err(e) => {
                problems.push(e);
                continue;
            }
        };
        monotone &= c.points.iter().all(|p| p.quadrature.monotone_below(1e-4));
        if c.report.passed() {
            continue;
        }
        printed_fail.push(rep.id.clone());
        errata.push(c.report.summary());
        let base = id_key(&rep.id)[1] <= 5;
        match corrections.iter().find(|r| r.id == rep.id).map(run) {
            Some(Ok(fixed)) if fixed.report.passed() && !base => errata.push(fixed.report.summary()),
            Some(Ok(fixed)) => problems.push(fixed.report.summary()),
            Some(Err(e)) => problems.push(e),
            None => problems.push(format!("{} fails as printed with no corrected variant", rep.id)),
        }
    }

    // Two decompositions of the same function agree at shared points.
    let p6 = prof.params_for("4.6");
    let mut ladder = 0.0f64;
    for &(x, y) in &default_points("4.6") {
        let (a, _) = eval_integral(integral_by_id("4.6").unwrap(), &p6, x, y, &spec).unwrap();
        let (b, _) = eval_integral(integral_by_id("4.7").unwrap(), &p6, x, y, &spec).unwrap();
        ladder = ladder.max(((a - b) / a).abs());
    }

    // Refinement from a coarse start exercises several levels.
    let coarse = QuadratureSpec { start_level: 3, ..spec };
    for rep in integral_catalog().iter().chain(&corrections) {
        match eval_integral(rep, &prof.params_for(&rep.id), 0.2, 0.2, &coarse) {
            Ok((_, d)) => monotone &= d.monotone_below(1e-4),
            Err(e) => problems.push(format!("{} coarse start: {e}", rep.id)),
        }
    }

    let secs = started.elapsed().as_secs_f64();
    let ok = beta_worst < 1e-12 && problems.is_empty() && monotone && ladder < 1e-7 && secs < 300.0;
    outcome(
        ok,
        format!(
            "Beta suite max rel err {beta_worst:.1e}; failing as printed {printed_fail:?} (recorded with corrected variants); \
             ladder {ladder:.1e}; monotone {monotone}; {secs:.1}s; problems {problems:?}"
        ),
    )
}

fn mutation_sensitivity() -> Outcome {
    let catalog = Catalog::embedded();
    let p = profile("generic-A");
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut lines = Vec::new();
    let mut ok = true;
    for _ in 0..10 {
        let spec = &catalog.formulas()[rng.gen_range(0..catalog.len())];
        let m = mutate(spec, &mut rng);
        let r = m.spec.verify(&p.params_for(&m.id), 8).unwrap();
        let degree = r.mismatch.as_ref().map(|w| w.total_degree());
        ok &= r.status == Status::Fail && degree.is_some_and(|d| d <= 3);
        lines.push(format!("{} ({}) -> degree {degree:?}", m.id, m.description));
    }
    outcome(ok, format!("10 mutations: {}", lines.join("; ")))
}

fn main() {
    let mut errata = Vec::new();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 exact catalog sweep", exact_sweep()),
        ("2 collapse suite", collapse_suite()),
        ("3 operator algebra", operator_algebra()),
        ("4 shifted-function identity", proof_mechanics()),
        ("5 transformation formulas", transformations()),
        ("6 float/exact agreement", float_exact_agreement()),
        ("7 quadrature sanity", quadrature_suite(&mut errata)),
        ("8 mutation sensitivity", mutation_sensitivity()),
    ];
    for line in &errata {
        println!("errata: {line}");
    }
    let mut all = true;
    for (name, o) in &results {
        all &= o.ok;
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {}/{} criteria pass", results.iter().filter(|(_, o)| o.ok).count(), results.len());
    if !all {
        std::process::exit(1);
    }
}
