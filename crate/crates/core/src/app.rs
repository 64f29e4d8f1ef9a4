//! The `classify`, `pair` and `pipeline` commands: config in, exit code,
//! JSON and CSV out.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::aperiodicity::{classify, spectral, Budget, Classification, Verdict};
use crate::compact::CompactSet;
use crate::config::{CompactSpec, HomSpec, PairKind, PhiSpec, RunConfig, WeightSpec};
use crate::error::{Error, Result};
use crate::fhc::{fhc_report, periodic_point, transitivity_witness, FhcBudget, FhcReport, FhcSetup};
use crate::group::{Group, GroupElement, GroupKind, Matrix};
use crate::metric::WordMetric;
use crate::operator::{SupportedFunction, WeightedTranslation};
use crate::terminal::{
    explicit_pair, gl_pair, halfline_pair, halfline_pullback, validate_pair, word_metric_pair, Homomorphism, TerminalPair,
};
use crate::weight::{gl_weight, step_weight, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_TORSION: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_FAILED: i32 = 4;

pub const DEFAULT_ALPHA: f64 = 0.5;
pub const DEFAULT_BETA: f64 = 2.0;
pub const DEFAULT_HALFLINE_THRESHOLD: f64 = 100.0;
pub const DEFAULT_GL_THRESHOLD: f64 = 1.0;

/// CSV header of every decay curve.
pub const CSV_HEADER: [&str; 4] = ["n", "sup_norm_T", "sup_norm_S", "partial_sum_p"];

#[derive(Clone, Debug)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub json: Value,
    /// `(file name, contents)`; empty unless the command completed.
    pub csv: Vec<(String, String)>,
}

impl CommandOutput {
    fn error(e: &Error) -> Self {
        CommandOutput { exit_code: EXIT_ERROR, json: e.to_json(), csv: Vec::new() }
    }

    /// Writes `<name>.json` and every CSV file into `dir`.
    pub fn write_to(&self, dir: &Path, name: &str) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{name}.json")), render_json(&self.json))?;
        for (file, body) in &self.csv {
            std::fs::write(dir.join(file), body)?;
        }
        Ok(())
    }
}

/// Pretty JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn run_classify(cfg: &RunConfig) -> CommandOutput {
    match classify_stage(cfg) {
        Ok((_, _, c)) => {
            let exit_code = match c.verdict {
                Verdict::Aperiodic(_) => EXIT_OK,
                Verdict::Torsion(_) => EXIT_TORSION,
                Verdict::Inconclusive(_) => EXIT_INCONCLUSIVE,
            };
            CommandOutput { exit_code, json: c.to_json(), csv: Vec::new() }
        }
        Err(e) => CommandOutput::error(&e),
    }
}

pub fn run_pair(cfg: &RunConfig) -> CommandOutput {
    let run = || -> Result<CommandOutput> {
        let group = cfg.build_group()?;
        let a = group.parse_element(&cfg.element)?;
        let pair = build_pair(cfg, &group, &a)?;
        let compacts = build_compacts(cfg, &group, &a)?;
        let report = validate_pair(&pair, &a, &compacts, cfg.budgets.horizon);
        let exit_code = if report.all_validated { EXIT_OK } else { EXIT_FAILED };
        Ok(CommandOutput { exit_code, json: json!(report), csv: Vec::new() })
    };
    run().unwrap_or_else(|e| CommandOutput::error(&e))
}

pub fn run_pipeline(cfg: &RunConfig) -> CommandOutput {
    pipeline(cfg).unwrap_or_else(|e| CommandOutput::error(&e))
}

fn classify_stage(cfg: &RunConfig) -> Result<(Group, GroupElement, Classification)> {
    let group = cfg.build_group()?;
    let a = group.parse_element(&cfg.element)?;
    let b = &cfg.budgets;
    let budget = Budget { max_order: b.max_order, n_max: b.horizon, ball_radius: b.ball_radius, l_max: b.l_max };
    let c = classify(&group, &a, &budget)?;
    Ok((group, a, c))
}

fn pipeline(cfg: &RunConfig) -> Result<CommandOutput> {
    let (group, a, classification) = classify_stage(cfg)?;
    let mut notes: Vec<String> = Vec::new();
    let ps = cfg.p_values();
    let budget = FhcBudget { n_max: cfg.budgets.n_max, ts_samples: cfg.budgets.ts_samples, seed: cfg.seed, max_order: cfg.budgets.max_order };

    match &classification.verdict {
        Verdict::Inconclusive(reason) => {
            notes.push(format!("classification inconclusive: {reason}"));
            let json = json!({
                "classification": classification.to_json(),
                "verdict": false,
                "notes": notes,
            });
            return Ok(CommandOutput { exit_code: EXIT_INCONCLUSIVE, json, csv: Vec::new() });
        }
        Verdict::Torsion(order) => {
            notes.push(format!("a has order {order}, so no terminal pair exists"));
            let weight = match &cfg.weight {
                None | Some(WeightSpec::Step { .. }) => {
                    notes.push("the step weight needs a terminal pair; the obstruction is shown for w = 1".into());
                    Weight::constant(&group, 1.0)?
                }
                Some(_) => build_weight(cfg, &group, None, &mut notes)?,
            };
            let op = WeightedTranslation::new(&a, weight)?;
            let setup = FhcSetup::new(op, None, cfg.budgets.horizon);
            let phis = build_phis(cfg, &group)?;
            let report = fhc_report(&setup, &classification, &phis, &ps, &budget);
            let json = pipeline_json(&classification, None, &report, None, notes);
            return Ok(CommandOutput { exit_code: EXIT_TORSION, json, csv: Vec::new() });
        }
        Verdict::Aperiodic(_) => {}
    }

    if !group.is_discrete() {
        // The operator engine works on counting measure; report the stages
        // that do apply and stop with a structured error.
        let pair = build_pair(cfg, &group, &a)?;
        let compacts = build_compacts(cfg, &group, &a)?;
        let validation = validate_pair(&pair, &a, &compacts, cfg.budgets.horizon);
        let mut out = Error::NotDiscrete(group.name()).to_json();
        out["stages"] = json!({
            "classification": classification.to_json(),
            "pair_validation": validation,
        });
        return Ok(CommandOutput { exit_code: EXIT_ERROR, json: out, csv: Vec::new() });
    }

    let pair = build_pair(cfg, &group, &a)?;
    let compacts = build_compacts(cfg, &group, &a)?;
    let validation = validate_pair(&pair, &a, &compacts, cfg.budgets.horizon);
    if !validation.all_validated {
        notes.push("the terminal pair failed validation on some compact".into());
    }
    let weight = build_weight(cfg, &group, Some(&pair), &mut notes)?;
    let op = WeightedTranslation::new(&a, weight)?;
    let setup = FhcSetup::new(op, Some(pair), cfg.budgets.horizon);
    let phis = build_phis(cfg, &group)?;
    let report = fhc_report(&setup, &classification, &phis, &ps, &budget);

    let witnesses = if report.verdict { Some(chaos_witnesses(cfg, &setup, &phis, &ps)) } else { None };
    let csv = decay_csvs(&report, &ps);
    if csv.is_none() {
        notes.push("some series could not be evaluated; no CSV written".into());
    }
    let exit_code = if report.verdict && validation.all_validated { EXIT_OK } else { EXIT_FAILED };
    let mut json = pipeline_json(&classification, Some(json!(validation)), &report, witnesses, notes);
    json["verdict"] = json!(exit_code == EXIT_OK);
    Ok(CommandOutput { exit_code, json, csv: csv.unwrap_or_default() })
}

fn pipeline_json(classification: &Classification, validation: Option<Value>, report: &FhcReport, witnesses: Option<Value>, notes: Vec<String>) -> Value {
    json!({
        "classification": classification.to_json(),
        "pair_validation": validation,
        "report": report.to_json(),
        "witnesses": witnesses,
        "verdict": report.verdict,
        "notes": notes,
    })
}

/// Periodic point from the first `φ` and a transitivity witness from the
/// first two, in the first requested `p`.
fn chaos_witnesses(cfg: &RunConfig, setup: &FhcSetup, phis: &[SupportedFunction], ps: &[f64]) -> Value {
    let p = ps[0];
    let b = &cfg.budgets;
    let periodic = periodic_point(setup, &phis[0], b.period, b.truncation, p).map(|pp| {
        json!({
            "period": b.period,
            "truncation": b.truncation,
            "p": p,
            "residual": pp.residual,
            "relative_residual": pp.relative_residual,
            "support_size": pp.v.len(),
        })
    });
    let psi = phis.get(1).unwrap_or(&phis[0]);
    let transitivity = transitivity_witness(setup, &phis[0], psi, b.n_max, p).map(|t| {
        json!({
            "n": b.n_max,
            "p": p,
            "err_near": t.err_near,
            "err_hit": t.err_hit,
            "identity_error": t.identity_error,
        })
    });
    let outcome = |r: Result<Value>| r.unwrap_or_else(|e| e.to_json());
    json!({ "periodic_point": outcome(periodic), "transitivity": outcome(transitivity) })
}

/// One CSV per `(φ, p)`: rows `n = 1..=n_max`. `None` if any series is missing.
fn decay_csvs(report: &FhcReport, ps: &[f64]) -> Option<Vec<(String, String)>> {
    let mut files = Vec::new();
    for (i, r) in report.phis.iter().enumerate() {
        for (j, &p) in ps.iter().enumerate() {
            let sums = r.partial_sums_t(j)?;
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(CSV_HEADER).ok()?;
            let rows = r.sup_norms_t.iter().zip(&r.sup_norms_s).zip(sums).enumerate().skip(1);
            for (n, ((t, s), sum)) in rows {
                w.write_record([n.to_string(), fmt_f64(*t), fmt_f64(*s), fmt_f64(*sum)]).ok()?;
            }
            let body = String::from_utf8(w.into_inner().ok()?).ok()?;
            files.push((format!("decay_phi{i}_p{}.csv", fmt_p(p)), body));
        }
    }
    Some(files)
}

/// Shortest round-trip scientific notation, `.` as decimal separator.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:e}")
}

fn fmt_p(p: f64) -> String {
    if p.fract() == 0.0 {
        format!("{}", p as i64)
    } else {
        format!("{p}").replace('.', "_")
    }
}

/// The configured pair, or the default construction for the group.
pub fn build_pair(cfg: &RunConfig, group: &Group, a: &GroupElement) -> Result<TerminalPair> {
    let default_kind = match group.kind() {
        GroupKind::Lattice { dim: 1 } => PairKind::Halfline { threshold: None },
        GroupKind::GeneralLinear { .. } => PairKind::Gl { threshold: None, p: None, lambda_modulus: None },
        GroupKind::Cylinder => PairKind::Pullback { hom: HomSpec::CylinderQuotient {}, threshold: None },
        _ => PairKind::WordMetric { window: None, max_scan: None },
    };
    let (kind, swap) = match &cfg.pair {
        Some(spec) => (&spec.kind, spec.swap),
        None => (&default_kind, false),
    };
    let pair = match kind {
        PairKind::Halfline { threshold } => halfline_pair(group, a, threshold.unwrap_or(DEFAULT_HALFLINE_THRESHOLD))?,
        PairKind::Pullback { hom, threshold } => {
            let hom = build_hom(hom, group)?;
            halfline_pullback(&hom, a, threshold.unwrap_or(DEFAULT_HALFLINE_THRESHOLD))?
        }
        PairKind::Gl { threshold, p, lambda_modulus } => {
            let m = a.as_matrix().ok_or_else(|| Error::Config("the gl pair needs a matrix group".into()))?;
            let analysis = spectral::analyze(m)?;
            let p = match p {
                Some(v) => parse_matrix(group, v)?,
                None => analysis
                    .conjugator
                    .clone()
                    .ok_or_else(|| Error::Config("no conjugator available for this element".into()))?,
            };
            let modulus = match lambda_modulus.or(analysis.lambda_modulus()) {
                Some(m) => m,
                None => return Err(Error::Config("no eigenvalue modulus available for this element".into())),
            };
            gl_pair(group, a, &p, modulus, threshold.unwrap_or(DEFAULT_GL_THRESHOLD))?
        }
        PairKind::WordMetric { window, max_scan } => {
            let metric = WordMetric::new(group)?.with_node_cap(cfg.budgets.node_cap);
            word_metric_pair(
                Arc::new(metric),
                a,
                window.unwrap_or(cfg.budgets.window),
                max_scan.unwrap_or(cfg.budgets.max_scan),
            )?
        }
        PairKind::Explicit { a_set, b_set } => {
            let parse = |xs: &[Value]| xs.iter().map(|x| group.parse_element(x)).collect::<Result<Vec<_>>>();
            explicit_pair(group, a, parse(a_set)?, parse(b_set)?)?
        }
    };
    Ok(if swap { pair.swapped() } else { pair })
}

fn parse_matrix(group: &Group, v: &Value) -> Result<Matrix> {
    let g = group.parse_element(v)?;
    g.as_matrix().cloned().ok_or_else(|| Error::Config("P must be a matrix".into()))
}

fn build_hom(spec: &HomSpec, group: &Group) -> Result<Homomorphism> {
    let dim = || match group.kind() {
        GroupKind::Lattice { dim } => Ok(*dim),
        _ => Err(Error::Config(format!("this homomorphism needs a lattice, not {}", group.name()))),
    };
    match spec {
        HomSpec::Projection { coordinate } => Homomorphism::projection(dim()?, *coordinate),
        HomSpec::Linear { rows } => Homomorphism::linear(dim()?, rows.clone()),
        HomSpec::CylinderQuotient {} => match group.kind() {
            GroupKind::Cylinder => Ok(Homomorphism::CylinderQuotient),
            _ => Err(Error::Config(format!("the cylinder quotient needs S1xR, not {}", group.name()))),
        },
    }
}

/// The configured compacts, or the standard menu for the group.
pub fn build_compacts(cfg: &RunConfig, group: &Group, a: &GroupElement) -> Result<Vec<CompactSet>> {
    match &cfg.compacts {
        Some(specs) if specs.is_empty() => Err(Error::Config("compact list is empty".into())),
        Some(specs) => specs.iter().map(|s| build_compact(s, group, cfg)).collect(),
        None => standard_compacts(group, a, cfg),
    }
}

fn build_compact(spec: &CompactSpec, group: &Group, cfg: &RunConfig) -> Result<CompactSet> {
    match spec {
        CompactSpec::Ball { center, radius } => {
            let c = match center {
                Some(v) => group.parse_element(v)?,
                None => group.identity(),
            };
            WordMetric::new(group)?.with_node_cap(cfg.budgets.node_cap).ball(&c, *radius)
        }
        CompactSpec::Explicit { elements } => {
            let xs = elements.iter().map(|x| group.parse_element(x)).collect::<Result<Vec<_>>>()?;
            CompactSet::explicit(group, xs)
        }
        CompactSpec::Interval { lo, hi } => {
            if group != &Group::integers() {
                return Err(Error::Config("intervals live in Z".into()));
            }
            CompactSet::interval(*lo, *hi)
        }
        CompactSpec::CylinderGrid { angles, t_lo, t_hi, t_steps } => {
            if !matches!(group.kind(), GroupKind::Cylinder) {
                return Err(Error::Config("cylinder grids live in S1xR".into()));
            }
            CompactSet::cylinder_grid(*angles, *t_lo, *t_hi, *t_steps)
        }
    }
}

/// Balls of radius 0..=3 on discrete groups, `{e, a, a⁻¹}` on GL and the
/// sample grid `t ∈ [-3, 3]` on the cylinder.
pub fn standard_compacts(group: &Group, a: &GroupElement, cfg: &RunConfig) -> Result<Vec<CompactSet>> {
    match group.kind() {
        _ if group.is_discrete() => {
            let metric = WordMetric::new(group)?.with_node_cap(cfg.budgets.node_cap);
            (0..=3).map(|r| metric.ball(&group.identity(), r)).collect()
        }
        GroupKind::GeneralLinear { .. } => Ok(vec![
            CompactSet::explicit(group, vec![group.identity()])?,
            CompactSet::explicit(group, vec![group.identity(), a.clone(), group.inv(a)?])?,
        ]),
        GroupKind::Cylinder => Ok(vec![CompactSet::cylinder_grid(8, -3.0, 3.0, 13)?]),
        _ => Err(Error::Config(format!("no standard compacts for {}", group.name()))),
    }
}

/// The configured weight; missing step parameters fall back to `(1/2, 2)`.
pub fn build_weight(cfg: &RunConfig, group: &Group, pair: Option<&TerminalPair>, notes: &mut Vec<String>) -> Result<Weight> {
    match &cfg.weight {
        None | Some(WeightSpec::Step { .. }) => {
            let (alpha, beta) = match &cfg.weight {
                Some(WeightSpec::Step { alpha, beta }) => (*alpha, *beta),
                _ => (None, None),
            };
            if alpha.is_none() || beta.is_none() {
                notes.push(format!(
                    "weight parameters missing: defaults applied where absent (alpha = {DEFAULT_ALPHA}, beta = {DEFAULT_BETA})"
                ));
            }
            let pair = pair.ok_or_else(|| Error::Config("the step weight needs a terminal pair".into()))?;
            step_weight(pair, alpha.unwrap_or(DEFAULT_ALPHA), beta.unwrap_or(DEFAULT_BETA))
        }
        Some(WeightSpec::Constant { value }) => Weight::constant(group, *value),
        Some(WeightSpec::Gl { p }) => {
            let p = match p {
                Some(v) => parse_matrix(group, v)?,
                None => match group.kind() {
                    GroupKind::GeneralLinear { n } => Matrix::identity(*n),
                    _ => return Err(Error::Config(format!("the gl weight lives on GL, not {}", group.name()))),
                },
            };
            gl_weight(group, &p)
        }
        Some(WeightSpec::Table { values, default }) => {
            let mut table = BTreeMap::new();
            for (g, v) in values {
                table.insert(group.parse_element(g)?, *v);
            }
            Weight::table(group, table, *default)
        }
        Some(WeightSpec::Random { lo, hi }) => {
            let GroupKind::Cyclic { modulus } = group.kind() else {
                return Err(Error::Config("random table weights need a finite cyclic group".into()));
            };
            random_cyclic_weight(group, *modulus, *lo, *hi, cfg.seed)
        }
    }
}

/// Uniform values in `[lo, hi]` on every residue, seeded.
pub fn random_cyclic_weight(group: &Group, modulus: u64, lo: f64, hi: f64, seed: u64) -> Result<Weight> {
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
        return Err(Error::BadParameters(format!("random weight range must satisfy 0 < lo <= hi, got [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..modulus).map(|r| (GroupElement::Residue(r), if lo == hi { lo } else { rng.gen_range(lo..=hi) })).collect();
    Weight::table(group, values, 1.0)
}

/// The configured test functions, or `δ_e` plus one seeded random function.
pub fn build_phis(cfg: &RunConfig, group: &Group) -> Result<Vec<SupportedFunction>> {
    let default = [PhiSpec::Delta { at: None }, PhiSpec::Random { count: Some(1), max_support: None, radius: None }];
    let specs: &[PhiSpec] = cfg.phis.as_deref().unwrap_or(&default);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1);
    let mut out = Vec::new();
    for spec in specs {
        match spec {
            PhiSpec::Delta { at } => {
                let g = match at {
                    Some(v) => group.parse_element(v)?,
                    None => group.identity(),
                };
                out.push(SupportedFunction::delta(g));
            }
            PhiSpec::Random { count, max_support, radius } => {
                for _ in 0..count.unwrap_or(1) {
                    let f = SupportedFunction::random(group, &mut rng, max_support.unwrap_or(8), radius.unwrap_or(3));
                    out.push(f);
                }
            }
            PhiSpec::Values { entries } => {
                let mut parsed = Vec::with_capacity(entries.len());
                for e in entries {
                    let bad = || Error::Config(format!("cannot read test-function entry {e:?}"));
                    let (g, re, im) = match e.as_slice() {
                        [g, re] => (g, re.as_f64().ok_or_else(bad)?, 0.0),
                        [g, re, im] => (g, re.as_f64().ok_or_else(bad)?, im.as_f64().ok_or_else(bad)?),
                        _ => return Err(bad()),
                    };
                    parsed.push((group.parse_element(g)?, num_complex::Complex64::new(re, im)));
                }
                out.push(SupportedFunction::from_entries(parsed));
            }
        }
    }
    if out.iter().any(SupportedFunction::is_empty) {
        return Err(Error::Config("test functions must be nonzero".into()));
    }
    if out.is_empty() {
        return Err(Error::Config("no test functions".into()));
    }
    Ok(out)
}
