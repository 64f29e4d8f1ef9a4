//! Torsion and aperiodicity certificates.
//!
//! An element is certified aperiodic by exhibiting a compact `K` and an `N`
//! with `K ∩ K·aⁿ = ∅` for `N < n ≤ horizon`, where the horizon is at least
//! `2N`. On discrete groups the intersection is decided exactly; on `GL`,
//! `S¹×ℝ` and `ℝ` the sample compact is pushed through a real-valued
//! function that separates `K` from `K·aⁿ` once the two image intervals are
//! disjoint.

pub mod spectral;

use std::collections::HashSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::compact::{CompactSet, Provenance};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, GroupKind, Matrix};
use crate::metric::WordMetric;

pub use spectral::{GlAnalysis, SpectralBranch};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Budget {
    pub max_order: u64,
    /// Escape-time horizon.
    pub n_max: u64,
    /// Radius of the ball used as the escape compact on discrete groups.
    pub ball_radius: u64,
    /// Length of the informational divergence profile.
    pub l_max: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_order: 1000, n_max: 512, ball_radius: 2, l_max: 32 }
    }
}

/// Least `k ≤ max_order` with `aᵏ = e`.
pub fn order_bounded(group: &Group, a: &GroupElement, max_order: u64) -> Result<Option<u64>> {
    group.validate(a)?;
    let mut p = a.clone();
    for k in 1..=max_order {
        if group.is_identity(&p) {
            return Ok(Some(k));
        }
        p = group.mul(&p, a)?;
    }
    Ok(None)
}

/// Escape time of `K` under right translation by `a`, exact on discrete
/// groups: the last `n ≤ n_max` with `K ∩ K·aⁿ ≠ ∅` (0 if there is none),
/// reported only when twice that value still fits under `n_max`.
pub fn escape_time(group: &Group, k: &CompactSet, a: &GroupElement, n_max: u64) -> Result<Option<u64>> {
    if !group.is_discrete() {
        return Err(Error::NotDiscrete(group.name()));
    }
    group.validate(a)?;
    // K ∩ K·aⁿ ≠ ∅  iff  aⁿ = k₂⁻¹·k₁ for some k₁, k₂ ∈ K
    let inverses = k.elements().iter().map(|x| group.inv(x)).collect::<Result<Vec<_>>>()?;
    let mut diffs = HashSet::with_capacity(k.len() * k.len());
    for k2i in &inverses {
        for k1 in k.elements() {
            diffs.insert(group.mul(k2i, k1)?);
        }
    }
    let mut p = a.clone();
    let mut last = 0;
    for n in 1..=n_max {
        if diffs.contains(&p) {
            last = n;
        }
        p = group.mul(&p, a)?;
    }
    Ok((2 * last <= n_max).then_some(last))
}

/// Escape certificate for a continuous group: the last `n` at which the
/// image interval of `f` over `K·aⁿ` meets the image of `K`. The scan stops
/// early if `f` leaves the finite reals; the certificate then covers the
/// shorter horizon actually checked.
pub fn separation_escape<F>(group: &Group, k: &CompactSet, a: &GroupElement, n_max: u64, f: F) -> Result<Option<EscapeRecord>>
where
    F: Fn(&GroupElement) -> f64,
{
    let span = |xs: &[GroupElement]| -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for x in xs {
            let v = f(x);
            if !v.is_finite() {
                return None;
            }
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Some((lo, hi))
    };
    let (lo, hi) = span(k.elements()).ok_or_else(|| Error::InvalidElement("separating function is not finite on K".into()))?;
    let slack = 1e-9 * (1.0 + lo.abs().max(hi.abs()));
    let mut cur = k.elements().to_vec();
    let mut last = 0;
    let mut horizon = 0;
    for n in 1..=n_max {
        cur = cur.iter().map(|x| group.mul(x, a)).collect::<Result<Vec<_>>>()?;
        let Some((l, h)) = span(&cur) else { break };
        if l <= hi + slack && lo <= h + slack {
            last = n;
        }
        horizon = n;
    }
    Ok((2 * last <= horizon && horizon > 0).then(|| EscapeRecord { compact: k.clone(), n: last, n_max: horizon }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EscapeRecord {
    pub compact: CompactSet,
    pub n: u64,
    /// Horizon up to which the escape was checked.
    pub n_max: u64,
}

impl EscapeRecord {
    pub fn to_json(&self) -> Value {
        json!({ "K": self.compact.to_json(), "N": self.n, "n_max": self.n_max })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Divergence {
    /// `"word"`, `"log_norm_surrogate"` or `"absolute"`.
    pub metric: &'static str,
    pub distances: Vec<f64>,
    pub monotone_tail: bool,
}

type Distance = dyn Fn(&GroupElement, &GroupElement) -> Result<f64>;

/// `ℓ ↦ min_{k ∈ K, k₂ ∈ K₂} d(k·a^ℓ, k₂)` for `ℓ = 1..=l_max`.
///
/// Word metric on discrete groups, `|x - y|` on `ℝ`, and on `GL` the
/// surrogate `|f(k·a^ℓ) - f(k₂)|` with `f(x) = ln‖x₁‖`.
pub fn metric_divergence(group: &Group, k: &CompactSet, k2: &CompactSet, a: &GroupElement, l_max: u64) -> Result<Divergence> {
    group.validate(a)?;
    let metric_name;
    let dist: Box<Distance> = match group.kind() {
        _ if group.is_discrete() => {
            let m = WordMetric::new(group)?;
            metric_name = "word";
            Box::new(move |x, y| Ok(m.distance(x, y)? as f64))
        }
        GroupKind::GeneralLinear { .. } => {
            metric_name = "log_norm_surrogate";
            let f = |x: &GroupElement| x.as_matrix().map(|m| m.column_norm(0).ln()).unwrap_or(f64::NAN);
            Box::new(move |x, y| Ok((f(x) - f(y)).abs()))
        }
        GroupKind::Reals => {
            metric_name = "absolute";
            Box::new(|x, y| Ok((x.line_value().unwrap_or(f64::NAN) - y.line_value().unwrap_or(f64::NAN)).abs()))
        }
        _ => return Err(Error::NoMetricAvailable(group.name())),
    };
    let mut cur = k.elements().to_vec();
    let mut distances = Vec::with_capacity(l_max as usize);
    for _ in 1..=l_max {
        cur = cur.iter().map(|x| group.mul(x, a)).collect::<Result<Vec<_>>>()?;
        let mut best = f64::INFINITY;
        for x in &cur {
            for y in k2.elements() {
                best = best.min(dist(x, y)?);
            }
        }
        distances.push(best);
    }
    let monotone_tail = monotone_tail(&distances);
    Ok(Divergence { metric: metric_name, distances, monotone_tail })
}

/// Whether the last quarter (at least two values) is strictly increasing.
pub fn monotone_tail(xs: &[f64]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let q = xs.len().div_ceil(4).max(2);
    xs[xs.len() - q..].windows(2).all(|w| w[1] > w[0])
}

#[derive(Clone, Debug)]
pub struct SpectralCertificate {
    pub branch: SpectralBranch,
    pub lambda: num_complex::Complex64,
    pub conjugator: Matrix,
    /// `ln‖(P⁻¹aⁿP)e_c‖` for `n = 1..=l_max`, `c` the escaping column.
    pub log_norm_profile: Vec<f64>,
}

impl SpectralCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "branch": self.branch,
            "lambda": [self.lambda.re, self.lambda.im],
            "modulus": self.lambda.norm(),
            "conjugator": self.conjugator.to_rows(),
            "log_norm_profile": self.log_norm_profile,
        })
    }
}

#[derive(Clone, Debug)]
pub struct AperiodicWitness {
    pub escape: EscapeRecord,
    pub divergence: Option<Divergence>,
    pub spectral: Option<SpectralCertificate>,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Torsion(u64),
    Aperiodic(Box<AperiodicWitness>),
    Inconclusive(String),
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    pub budget: Budget,
}

impl Classification {
    pub fn is_torsion(&self) -> bool {
        matches!(self.verdict, Verdict::Torsion(_))
    }

    pub fn is_aperiodic(&self) -> bool {
        matches!(self.verdict, Verdict::Aperiodic(_))
    }

    pub fn order(&self) -> Option<u64> {
        match self.verdict {
            Verdict::Torsion(k) => Some(k),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&AperiodicWitness> {
        match &self.verdict {
            Verdict::Aperiodic(w) => Some(w),
            _ => None,
        }
    }

    pub fn verdict_name(&self) -> &'static str {
        match self.verdict {
            Verdict::Torsion(_) => "Torsion",
            Verdict::Aperiodic(_) => "Aperiodic",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({ "verdict": self.verdict_name(), "budget": self.budget });
        match &self.verdict {
            Verdict::Torsion(k) => out["order"] = json!(k),
            Verdict::Aperiodic(w) => {
                out["escape"] = w.escape.to_json();
                if let Some(d) = &w.divergence {
                    out["divergence"] = json!(d);
                }
                if let Some(s) = &w.spectral {
                    out["spectral"] = s.to_json();
                }
            }
            Verdict::Inconclusive(reason) => out["reason"] = json!(reason),
        }
        out
    }
}

/// Torsion, aperiodic with a checked escape certificate, or inconclusive.
pub fn classify(group: &Group, a: &GroupElement, budget: &Budget) -> Result<Classification> {
    group.validate(a)?;
    let done = |verdict| Ok(Classification { verdict, budget: *budget });
    if let Some(k) = order_bounded(group, a, budget.max_order)? {
        return done(Verdict::Torsion(k));
    }
    match group.kind() {
        _ if group.is_discrete() => {
            let metric = WordMetric::new(group)?;
            let k = match metric.ball(&group.identity(), budget.ball_radius) {
                Ok(k) => k,
                Err(e @ Error::SearchBudgetExceeded(_)) => return done(Verdict::Inconclusive(e.to_string())),
                Err(e) => return Err(e),
            };
            match escape_time(group, &k, a, budget.n_max)? {
                Some(n) => {
                    let divergence = metric_divergence(group, &k, &k, a, budget.l_max).ok();
                    let escape = EscapeRecord { compact: k, n, n_max: budget.n_max };
                    done(Verdict::Aperiodic(Box::new(AperiodicWitness { escape, divergence, spectral: None })))
                }
                None => done(Verdict::Inconclusive(format!(
                    "no order up to {} and no escape of ball(e, {}) within {} steps",
                    budget.max_order, budget.ball_radius, budget.n_max
                ))),
            }
        }
        GroupKind::GeneralLinear { .. } => classify_gl(group, a, budget),
        GroupKind::Cylinder => {
            let GroupElement::Cylinder { t, .. } = a else { unreachable!("validated") };
            if t.abs() <= crate::group::MATRIX_TOLERANCE {
                return done(Verdict::Inconclusive(
                    "pure rotation without detected finite order generates a compact subgroup".into(),
                ));
            }
            let k = CompactSet::cylinder_grid(8, -1.0, 1.0, 3)?;
            line_escape(group, k, a, budget, |x| match x {
                GroupElement::Cylinder { t, .. } => *t,
                _ => f64::NAN,
            })
        }
        GroupKind::Reals => {
            let k = CompactSet::new(group, vec![GroupElement::Real(-1.0), GroupElement::Real(0.0), GroupElement::Real(1.0)], Provenance::SampleGrid)?;
            line_escape(group, k, a, budget, |x| x.line_value().unwrap_or(f64::NAN))
        }
        _ => unreachable!("all non-discrete kinds handled"),
    }
}

fn line_escape<F>(group: &Group, k: CompactSet, a: &GroupElement, budget: &Budget, f: F) -> Result<Classification>
where
    F: Fn(&GroupElement) -> f64,
{
    let verdict = match separation_escape(group, &k, a, budget.n_max, f)? {
        Some(escape) => Verdict::Aperiodic(Box::new(AperiodicWitness { escape, divergence: None, spectral: None })),
        None => Verdict::Inconclusive(format!("sample compact did not escape within {} steps", budget.n_max)),
    };
    Ok(Classification { verdict, budget: *budget })
}

fn classify_gl(group: &Group, a: &GroupElement, budget: &Budget) -> Result<Classification> {
    let m = a.as_matrix().expect("validated");
    let analysis = spectral::analyze(m)?;
    let done = |verdict| Ok(Classification { verdict, budget: *budget });
    if !analysis.is_aperiodic() {
        return done(Verdict::Inconclusive(format!(
            "diagonalizable with every eigenvalue within {} of the unit circle and no order up to {}",
            spectral::UNIT_MODULUS_TOL, budget.max_order
        )));
    }
    let p = analysis.conjugator.clone().expect("aperiodic branches carry a conjugator");
    let p_inv = p.inverse()?;
    let col = analysis.escape_column();
    let f = |x: &GroupElement| match x {
        GroupElement::Matrix(x) => spectral::conjugated_log_column_norm(x, &p, &p_inv, col),
        _ => f64::NAN,
    };
    let k = CompactSet::new(group, vec![group.identity(), a.clone(), group.inv(a)?], Provenance::SampleGrid)?;
    let Some(escape) = separation_escape(group, &k, a, budget.n_max, f)? else {
        return done(Verdict::Inconclusive(format!(
            "spectral branch {:?} found but the sample compact did not separate within {} steps",
            analysis.branch, budget.n_max
        )));
    };
    let mut profile = Vec::with_capacity(budget.l_max as usize);
    let mut pow = group.identity();
    for _ in 0..budget.l_max {
        pow = group.mul(&pow, a)?;
        profile.push(f(&pow));
    }
    let spectral = SpectralCertificate {
        branch: analysis.branch.clone(),
        lambda: analysis.lambda.expect("aperiodic branches carry an eigenvalue"),
        conjugator: p.clone(),
        log_norm_profile: profile,
    };
    let divergence = metric_divergence(group, &k, &k, a, budget.l_max).ok();
    done(Verdict::Aperiodic(Box::new(AperiodicWitness { escape, divergence, spectral: Some(spectral) })))
}
