// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use aperiodic::aperiodicity::spectral::{analyze, conjugated_log_column_norm, jordan_log_norm, jordan_log_norm_formula};
use aperiodic::aperiodicity::{classify, escape_time, Budget};
use aperiodic::app::{build_pair, build_phis, build_weight, random_cyclic_weight};
use aperiodic::compact::CompactSet;
use aperiodic::config::RunConfig;
use aperiodic::fhc::{check_ts_identity, decay_profile, fhc_report, periodic_point, series_tail, torsion_obstruction, transitivity_witness, FhcBudget, FhcSetup};
use aperiodic::group::{Group, GroupElement, Matrix};
use aperiodic::metric::WordMetric;
use aperiodic::operator::{Direction, SupportedFunction, WeightedTranslation};
use aperiodic::terminal::{halfline_pullback, validate_pair, word_metric_pair, Homomorphism, DEFAULT_MAX_SCAN, DEFAULT_WINDOW};
use aperiodic::weight::step_weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:?}, limit {limit:?}"))
}

/// The ℤ defaults: half-lines at 100 and the step weight (1/2, 2).
fn z_setup() -> (FhcSetup, Vec<SupportedFunction>) {
    let cfg = RunConfig::from_json(r#"{"group": {"kind": "Z"}, "element": 1}"#).unwrap();
    let group = cfg.build_group().unwrap();
    let a = group.parse_element(&cfg.element).unwrap();
    let pair = build_pair(&cfg, &group, &a).unwrap();
    let weight = build_weight(&cfg, &group, Some(&pair), &mut Vec::new()).unwrap();
    let op = WeightedTranslation::new(&a, weight).unwrap();
    let phis = build_phis(&cfg, &group).unwrap();
    (FhcSetup::new(op, Some(pair), cfg.budgets.horizon), phis)
}

// Independent oracle: the last n with K·aⁿ meeting K, by direct products.
fn brute_escape(group: &Group, k: &[GroupElement], a: &GroupElement, n_max: u64) -> Option<u64> {
    let set: BTreeSet<GroupElement> = k.iter().cloned().collect();
    let mut shifted: Vec<GroupElement> = k.to_vec();
    let mut last = 0;
    for n in 1..=n_max {
        shifted = shifted.iter().map(|x| group.mul(x, a).unwrap()).collect();
        if shifted.iter().any(|x| set.contains(x)) {
            last = n;
        }
    }
    (2 * last <= n_max).then_some(last)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let groups = [Group::integers(), Group::lattice(2).unwrap(), Group::heisenberg()];
    let n_max = 256;
    let mut escaped = 0;
    for case in 0..50 {
        let group = &groups[case % 3];
        let size = rng.gen_range(1..=30);
        let k: Vec<GroupElement> = (0..size).map(|_| group.random_element(&mut rng, 6)).collect();
        let a = loop {
            let a = group.random_element(&mut rng, 3);
            if !group.is_identity(&a) {
                break a;
            }
        };
        let compact = CompactSet::explicit(group, k.clone()).map_err(|e| e.to_string())?;
        let got = escape_time(group, &compact, &a, n_max).map_err(|e| e.to_string())?;
        let want = brute_escape(group, compact.elements(), &a, n_max);
        ensure(got == want, format!("case {case} on {}: a = {a}, got {got:?}, brute force {want:?}", group.name()))?;
        escaped += usize::from(got.is_some_and(|n| n > 0));
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("50 cases agree ({escaped} with positive escape time) in {:?}", start.elapsed()))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let z = Group::integers();
    let z2 = Group::lattice(2).unwrap();
    let cases = [
        (z.clone(), GroupElement::int(1)),
        (z2.clone(), GroupElement::lattice(&[1, 0])),
        (z2.clone(), GroupElement::lattice(&[1, 1])),
    ];
    let mut worst = 0;
    for (group, a) in cases {
        let metric = Arc::new(WordMetric::new(&group).map_err(|e| e.to_string())?);
        let pair = word_metric_pair(metric.clone(), &a, DEFAULT_WINDOW, DEFAULT_MAX_SCAN).map_err(|e| e.to_string())?;
        let balls: Vec<CompactSet> = (0..=10).map(|r| metric.ball(&group.identity(), r)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let report = validate_pair(&pair, &a, &balls, 512);
        for (r, c) in report.compacts.iter().enumerate() {
            ensure(c.validated, format!("{} a = {a}: ball radius {r} not validated ({:?})", group.name(), c.error))?;
            worst = worst.max(c.n.unwrap_or(0));
        }
        for g in metric.ball(&group.identity(), 30).map_err(|e| e.to_string())?.elements() {
            let (in_a, in_b) = pair.membership(g).map_err(|e| e.to_string())?;
            ensure(!(in_a && in_b), format!("{g} lies in both sets for a = {a}"))?;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("all balls r <= 10 validated (largest N = {worst}), ball(e,30) disjoint, {:?}", start.elapsed()))
}

fn criterion_3() -> Check {
    let (setup, _) = z_setup();
    let phi = SupportedFunction::delta(GroupElement::int(0));
    let mut worst: f64 = 0.0;
    for dir in [Direction::T, Direction::S] {
        let profile = decay_profile(&setup, dir, &phi, 300).map_err(|e| e.to_string())?;
        for n in 101..=300 {
            let ratio = profile.sup_norms[n] / profile.sup_norms[n - 1];
            worst = worst.max((ratio - 0.5).abs());
            ensure((ratio - 0.5).abs() < 1e-12, format!("{} ratio at n = {n} is {ratio}", dir.name()))?;
        }
    }
    Ok(format!("T and S ratios equal 0.5 for 100 < n <= 300 (max deviation {worst:e})"))
}

fn criterion_4() -> Check {
    let (setup, _) = z_setup();
    let phi = SupportedFunction::delta(GroupElement::int(0));
    let mut summary = Vec::new();
    for dir in [Direction::T, Direction::S] {
        for p in [1.0, 2.0] {
            let tail = series_tail(&setup, dir, &phi, p, 200).map_err(|e| e.to_string())?;
            let diff = tail.partial_sums[200] - tail.partial_sums[199];
            ensure(diff < 1e-12, format!("{} p = {p}: last difference {diff:e}", dir.name()))?;
            let bound = tail.tail_bound.ok_or_else(|| format!("{} p = {p}: no tail bound", dir.name()))?;
            ensure(bound < 1e-20, format!("{} p = {p}: tail bound {bound:e}", dir.name()))?;
            summary.push(format!("{}/p{p}: {bound:.1e}", dir.name()));
        }
    }
    Ok(format!("differences < 1e-12 by n = 200, tail bounds {}", summary.join(", ")))
}

fn criterion_5() -> Check {
    let cases = [
        (Group::integers(), GroupElement::int(1)),
        (Group::lattice(2).unwrap(), GroupElement::lattice(&[1, 1])),
        (Group::free2(), GroupElement::word("x").unwrap()),
        (Group::heisenberg(), GroupElement::heis(1, 0, 0)),
    ];
    let mut worst: f64 = 0.0;
    for (group, a) in cases {
        let metric = Arc::new(WordMetric::new(&group).map_err(|e| e.to_string())?);
        let pair = word_metric_pair(metric, &a, DEFAULT_WINDOW, DEFAULT_MAX_SCAN).map_err(|e| e.to_string())?;
        let op = WeightedTranslation::new(&a, step_weight(&pair, 0.5, 2.0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let err = check_ts_identity(&op, 1000, 5).map_err(|e| format!("{}: {e}", group.name()))?;
        ensure(err < 1e-10, format!("{}: TS error {err:e}", group.name()))?;
        worst = worst.max(err);
    }
    Ok(format!("1000 functions on each of Z, Z^2, F2, Heisenberg, max error {worst:e}"))
}

fn criterion_6() -> Check {
    let (setup, _) = z_setup();
    let phi = SupportedFunction::delta(GroupElement::int(0));
    let residuals: Vec<f64> = (1..=10)
        .map(|t| periodic_point(&setup, &phi, 150, t, 2.0).map(|pp| pp.relative_residual))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let last = residuals[9];
    ensure(last < 1e-6, format!("relative residual {last:e} at truncation 10"))?;
    for (i, w) in residuals.windows(2).enumerate() {
        let ok = if w[0] > 0.0 { w[1] < w[0] } else { w[1] == 0.0 };
        ensure(ok, format!("residual rises from {:e} to {:e} at truncation {}", w[0], w[1], i + 2))?;
    }
    let shown: Vec<String> = residuals.iter().map(|r| format!("{r:.1e}")).collect();
    Ok(format!("relative residuals by truncation 1..10: {}", shown.join(" ")))
}

fn criterion_7() -> Check {
    let (setup, phis) = z_setup();
    let tw = transitivity_witness(&setup, &phis[0], &phis[1], 300, 2.0).map_err(|e| e.to_string())?;
    ensure(tw.err_near < 1e-20, format!("err_near {:e}", tw.err_near))?;
    ensure(tw.err_hit < 1e-20, format!("err_hit {:e}", tw.err_hit))?;
    Ok(format!("n = 300: err_near {:e}, err_hit {:e}", tw.err_near, tw.err_hit))
}

fn criterion_8() -> Check {
    let z6 = Group::cyclic(6).unwrap();
    let a = GroupElement::Residue(2);
    let classification = classify(&z6, &a, &Budget::default()).map_err(|e| e.to_string())?;
    let everywhere = SupportedFunction::from_real((0..6).map(|r| (GroupElement::Residue(r), 1.0)));
    let phis = [SupportedFunction::delta(GroupElement::Residue(0)), SupportedFunction::delta(GroupElement::Residue(3))];
    let budget = FhcBudget { ts_samples: 50, ..FhcBudget::default() };
    let mut worst: f64 = 0.0;
    for seed in 0..100 {
        let w = random_cyclic_weight(&z6, 6, 0.1, 10.0, seed).map_err(|e| e.to_string())?;
        let op = WeightedTranslation::new(&a, w).map_err(|e| e.to_string())?;
        let obstruction = torsion_obstruction(&op, 1000, &everywhere).map_err(|e| e.to_string())?;
        for e in &obstruction.entries {
            worst = worst.max((e.product - 1.0).abs());
            ensure((e.product - 1.0).abs() <= 1e-10, format!("seed {seed}: c c' = {} at {}", e.product, e.x))?;
        }
        let setup = FhcSetup::new(op, None, 512);
        let report = fhc_report(&setup, &classification, &phis, &[1.0, 2.0], &budget);
        ensure(!report.verdict, format!("seed {seed}: verdict true on a torsion element"))?;
    }
    Ok(format!("100 weights: max |c c' - 1| = {worst:e}, verdict false every time"))
}

fn criterion_9() -> Check {
    let gl = Group::general_linear(2).unwrap();
    let diag = Matrix::real_diag(&[2.0, 1.0]);
    let analysis = analyze(&diag).map_err(|e| e.to_string())?;
    let p = analysis.conjugator.clone().ok_or("no conjugator for diag(2,1)")?;
    let p_inv = p.inverse().map_err(|e| e.to_string())?;
    let col = analysis.escape_column();
    let a = GroupElement::Matrix(diag);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let x = gl.random_element(&mut rng, 1);
        let f = |g: &GroupElement| conjugated_log_column_norm(g.as_matrix().unwrap(), &p, &p_inv, col);
        let fx = f(&x);
        let mut y = x.clone();
        for n in 1..=40 {
            y = gl.mul(&y, &a).map_err(|e| e.to_string())?;
            let err = (f(&y) - fx - n as f64 * 2f64.ln()).abs();
            worst = worst.max(err);
            ensure(err < 1e-9, format!("diag(2,1): error {err:e} at n = {n}"))?;
        }
    }
    let jordan = Matrix::from_real_rows(&[&[-1.0, 1.0], &[0.0, -1.0]]).map_err(|e| e.to_string())?;
    let ja = analyze(&jordan).map_err(|e| e.to_string())?;
    let jp = ja.conjugator.clone().ok_or("no chain basis for the Jordan block")?;
    let mut worst_j: f64 = 0.0;
    for n in 1..=1000u64 {
        let got = jordan_log_norm(&jordan, &jp, n).map_err(|e| e.to_string())?;
        let x = n as f64;
        let want = (x.ln() + 0.5 * (1.0 + 1.0 / (x * x)).ln()).abs();
        let err = (got - want).abs().max((jordan_log_norm_formula(1.0, n) - want).abs());
        worst_j = worst_j.max(err);
        ensure(err < 1e-9, format!("Jordan block: error {err:e} at n = {n}"))?;
    }
    let c = classify(&gl, &GroupElement::Matrix(jordan), &Budget::default()).map_err(|e| e.to_string())?;
    ensure(c.is_aperiodic(), format!("Jordan block classified {}", c.verdict_name()))?;
    Ok(format!("diag(2,1) max error {worst:e}, Jordan max error {worst_j:e}, classified Aperiodic"))
}

fn criterion_10() -> Check {
    let a = GroupElement::cylinder(0.0, 1.0);
    let pair = halfline_pullback(&Homomorphism::CylinderQuotient, &a, 100.0).map_err(|e| e.to_string())?;
    let grids = [(8, 13), (16, 25), (5, 61)];
    let compacts: Vec<CompactSet> =
        grids.iter().map(|&(angles, steps)| CompactSet::cylinder_grid(angles, -3.0, 3.0, steps)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let report = validate_pair(&pair, &a, &compacts, 512);
    for (c, g) in report.compacts.iter().zip(grids) {
        ensure(c.validated, format!("grid {g:?} not validated"))?;
        ensure(c.n == Some(103) && c.estimator == Some(103), format!("grid {g:?}: N = {:?}, estimator = {:?}", c.n, c.estimator))?;
    }
    Ok("three sample grids with |t| <= 3 validate with N = 103 = estimator".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("escape-time oracle equivalence", criterion_1),
        ("word-metric terminal pair", criterion_2),
        ("exponential decay", criterion_3),
        ("series convergence", criterion_4),
        ("inverse identity", criterion_5),
        ("chaos witness", criterion_6),
        ("transitivity witness", criterion_7),
        ("torsion obstruction", criterion_8),
        ("GL analytics", criterion_9),
        ("pullback coherence", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
