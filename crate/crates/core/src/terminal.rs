//! Terminal pairs `(A, B)` with respect to an element `a`: disjoint sets
//! such that every compact `K` satisfies `K·aⁿ ⊆ A` and `K·a⁻ⁿ ⊆ B` for all
//! large `n`.
//!
//! Constructions: half-lines on `ℤ` or `ℝ`, pullback along a homomorphism,
//! log-norm level sets on `GL(n, ℂ)`, and the orbit-minimizer construction
//! on any finitely generated discrete group with its word metric.

use std::collections::HashSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::compact::CompactSet;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, GroupKind, Matrix};
use crate::metric::WordMetric;

pub const DEFAULT_WINDOW: usize = 64;
pub const DEFAULT_MAX_SCAN: u64 = 100_000;

/// Continuous homomorphisms used for pullbacks.
#[derive(Clone, Debug)]
pub enum Homomorphism {
    /// `ℤ^d → ℤ`, `v ↦ v[coordinate]`.
    Projection { dim: usize, coordinate: usize },
    /// `ℤ^d → ℤ^k`, `v ↦ M v` for an integer `k×d` matrix.
    Linear { dim: usize, rows: Vec<Vec<i64>> },
    /// `S¹×ℝ → ℝ`, `(θ, t) ↦ t`.
    CylinderQuotient,
    /// `GL(n) → GL(n)`, `x ↦ P⁻¹xP`.
    Conjugation { p: Matrix, p_inv: Matrix },
}

impl Homomorphism {
    pub fn projection(dim: usize, coordinate: usize) -> Result<Self> {
        if coordinate >= dim {
            return Err(Error::BadParameters(format!("coordinate {coordinate} out of range for Z^{dim}")));
        }
        Ok(Homomorphism::Projection { dim, coordinate })
    }

    pub fn linear(dim: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadParameters(format!("linear map rows must be nonempty with length {dim}")));
        }
        Ok(Homomorphism::Linear { dim, rows })
    }

    pub fn conjugation(p: Matrix) -> Result<Self> {
        let p_inv = p.inverse()?;
        Ok(Homomorphism::Conjugation { p, p_inv })
    }

    pub fn source(&self) -> Group {
        match self {
            Homomorphism::Projection { dim, .. } | Homomorphism::Linear { dim, .. } => Group::lattice(*dim).expect("positive dim"),
            Homomorphism::CylinderQuotient => Group::cylinder(),
            Homomorphism::Conjugation { p, .. } => Group::general_linear(p.dim()).expect("positive dim"),
        }
    }

    pub fn target(&self) -> Group {
        match self {
            Homomorphism::Projection { .. } => Group::integers(),
            Homomorphism::Linear { rows, .. } => Group::lattice(rows.len()).expect("nonempty"),
            Homomorphism::CylinderQuotient => Group::reals(),
            Homomorphism::Conjugation { p, .. } => Group::general_linear(p.dim()).expect("positive dim"),
        }
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        if !self.source().matches(g) {
            return Err(Error::MixedGroups);
        }
        Ok(match (self, g) {
            (Homomorphism::Projection { coordinate, .. }, GroupElement::Lattice(v)) => GroupElement::int(v[*coordinate]),
            (Homomorphism::Linear { rows, .. }, GroupElement::Lattice(v)) => {
                GroupElement::Lattice(rows.iter().map(|r| r.iter().zip(v).map(|(m, x)| m * x).sum()).collect())
            }
            (Homomorphism::CylinderQuotient, GroupElement::Cylinder { t, .. }) => GroupElement::Real(*t),
            (Homomorphism::Conjugation { p, p_inv }, GroupElement::Matrix(x)) => GroupElement::Matrix(p_inv.mul(&x.mul(p))),
            _ => unreachable!("source checked"),
        })
    }

    pub fn image(&self, k: &CompactSet) -> Result<CompactSet> {
        let target = self.target();
        let images = k.elements().iter().map(|x| self.apply(x)).collect::<Result<Vec<_>>>()?;
        CompactSet::new(&target, images, k.provenance().clone())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Homomorphism::Projection { dim, coordinate } => json!({"kind": "projection", "dim": dim, "coordinate": coordinate}),
            Homomorphism::Linear { dim, rows } => json!({"kind": "linear", "dim": dim, "rows": rows}),
            Homomorphism::CylinderQuotient => json!({"kind": "cylinder_quotient"}),
            Homomorphism::Conjugation { p, .. } => json!({"kind": "conjugation", "P": p.to_rows()}),
        }
    }
}

#[derive(Clone, Debug)]
enum Construction {
    /// `A = [threshold, ∞)`, `B = (-∞, -threshold]` on the line; `step` is
    /// the signed value of `a`. A negative step exchanges the two.
    HalfLine { threshold: f64, step: f64 },
    Pullback { hom: Homomorphism, inner: Box<TerminalPair> },
    /// `A = {f ≥ threshold}`, `B = {f ≤ -threshold}` with
    /// `f(x) = ln‖(P⁻¹xP)e₁‖`; exchanged when `|λ| < 1`.
    GlLogNorm { p: Matrix, p_inv: Matrix, lambda_modulus: f64, threshold: f64 },
    WordMetric { metric: Arc<WordMetric>, window: usize, max_scan: u64 },
    /// Finite claimed sets, used to exercise validation failures.
    Explicit { a_set: HashSet<GroupElement>, b_set: HashSet<GroupElement> },
}

#[derive(Clone, Debug)]
pub struct TerminalPair {
    group: Group,
    a: GroupElement,
    construction: Construction,
    swapped: bool,
}

/// Where the orbit of a point under `a` enters `A` and `B`, relative to a
/// minimal-norm representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitProfile {
    /// `min_j |z·aʲ|`.
    pub best: u64,
    /// Every minimizing offset `j*` with its `N_x`, `x = z·a^{j*}`.
    pub minimizers: Vec<(i64, u64)>,
}

impl OrbitProfile {
    /// Whether `z·aⁿ` lies in `A`.
    pub fn shifted_in_a(&self, n: i64) -> bool {
        self.minimizers.iter().any(|&(j, nx)| n - j > nx as i64)
    }

    /// Whether `z·aⁿ` lies in `B`.
    pub fn shifted_in_b(&self, n: i64) -> bool {
        self.minimizers.iter().any(|&(j, nx)| j - n > nx as i64)
    }
}

/// `A = [threshold, ∞)`, `B = (-∞, -threshold]` on `ℤ` or `ℝ`; exchanged when
/// `a` is negative so that the pair is terminal w.r.t. `a`.
pub fn halfline_pair(group: &Group, a: &GroupElement, threshold: f64) -> Result<TerminalPair> {
    if !matches!(group.kind(), GroupKind::Lattice { dim: 1 } | GroupKind::Reals) {
        return Err(Error::BadParameters(format!("half-line pairs live on Z or R, not {}", group.name())));
    }
    group.validate(a)?;
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::BadParameters(format!("threshold must be positive, got {threshold}")));
    }
    let step = a.line_value().expect("validated line element");
    if step == 0.0 {
        return Err(Error::ZeroTranslation);
    }
    Ok(TerminalPair {
        group: group.clone(),
        a: a.clone(),
        construction: Construction::HalfLine { threshold, step },
        swapped: false,
    })
}

/// Pulls `pair` (terminal w.r.t. `φ(a)`) back along `φ`.
pub fn pullback_pair(hom: &Homomorphism, pair: TerminalPair, a: &GroupElement) -> Result<TerminalPair> {
    let source = hom.source();
    source.validate(a)?;
    let image = hom.apply(a)?;
    if !pair.group.approx_eq(&image, &pair.a) {
        return Err(Error::BadParameters(format!("pair is taken w.r.t. {}, but phi(a) = {image}", pair.a)));
    }
    Ok(TerminalPair {
        group: source,
        a: a.clone(),
        construction: Construction::Pullback { hom: hom.clone(), inner: Box::new(pair) },
        swapped: false,
    })
}

/// Half-line pair on the target pulled back along `φ`.
pub fn halfline_pullback(hom: &Homomorphism, a: &GroupElement, threshold: f64) -> Result<TerminalPair> {
    let inner = halfline_pair(&hom.target(), &hom.apply(a)?, threshold)?;
    pullback_pair(hom, inner, a)
}

/// Log-norm level sets in coordinates conjugated by `P`, whose first column
/// is an eigenvector of `a` for an eigenvalue of modulus `lambda_modulus`.
pub fn gl_pair(group: &Group, a: &GroupElement, p: &Matrix, lambda_modulus: f64, threshold: f64) -> Result<TerminalPair> {
    if !matches!(group.kind(), GroupKind::GeneralLinear { .. }) {
        return Err(Error::BadParameters(format!("log-norm pairs live on GL, not {}", group.name())));
    }
    group.validate(a)?;
    group.validate(&GroupElement::Matrix(p.clone()))?;
    if (lambda_modulus - 1.0).abs() < crate::aperiodicity::spectral::UNIT_MODULUS_TOL {
        return Err(Error::UnitModulus(lambda_modulus));
    }
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::BadParameters(format!("threshold must be positive, got {threshold}")));
    }
    Ok(TerminalPair {
        group: group.clone(),
        a: a.clone(),
        construction: Construction::GlLogNorm { p: p.clone(), p_inv: p.inverse()?, lambda_modulus, threshold },
        swapped: false,
    })
}

/// The orbit-minimizer construction: for `x` of minimal norm on its orbit,
/// `N_x = 2·min{N : 2|x| + 2 < |x·aⁿ| for all |n| > N}`,
/// `A = {x·aⁿ : n > N_x}`, `B = {x·a⁻ⁿ : n > N_x}`.
///
/// A side of the orbit scan counts as settled once `window` consecutive
/// values exceed `2·best + 2`; the scan gives up past `|j| = max_scan`.
pub fn word_metric_pair(metric: Arc<WordMetric>, a: &GroupElement, window: usize, max_scan: u64) -> Result<TerminalPair> {
    let group = metric.group().clone();
    group.validate(a)?;
    if window == 0 || max_scan == 0 {
        return Err(Error::BadParameters("window and scan limit must be positive".into()));
    }
    Ok(TerminalPair {
        group,
        a: a.clone(),
        construction: Construction::WordMetric { metric, window, max_scan },
        swapped: false,
    })
}

/// Finite claimed sets; never terminal, useful as a negative control.
pub fn explicit_pair(group: &Group, a: &GroupElement, a_set: Vec<GroupElement>, b_set: Vec<GroupElement>) -> Result<TerminalPair> {
    group.validate(a)?;
    for g in a_set.iter().chain(&b_set) {
        group.validate(g)?;
    }
    Ok(TerminalPair {
        group: group.clone(),
        a: a.clone(),
        construction: Construction::Explicit { a_set: a_set.into_iter().collect(), b_set: b_set.into_iter().collect() },
        swapped: false,
    })
}

impl TerminalPair {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn a(&self) -> &GroupElement {
        &self.a
    }

    pub fn is_swapped(&self) -> bool {
        self.swapped
    }

    /// The same pair with `A` and `B` exchanged.
    pub fn swapped(mut self) -> Self {
        self.swapped = !self.swapped;
        self
    }

    // Shape only: orbits of GL elements legitimately drift below the
    // determinant floor used for parsed input.
    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.group.matches(x) {
            Ok(())
        } else {
            Err(Error::MixedGroups)
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.construction {
            Construction::HalfLine { .. } => "halfline",
            Construction::Pullback { .. } => "pullback",
            Construction::GlLogNorm { .. } => "gl_lognorm",
            Construction::WordMetric { .. } => "word_metric",
            Construction::Explicit { .. } => "explicit",
        }
    }

    pub fn in_a(&self, x: &GroupElement) -> Result<bool> {
        let (a, b) = self.raw_membership(x)?;
        Ok(if self.swapped { b } else { a })
    }

    pub fn in_b(&self, x: &GroupElement) -> Result<bool> {
        let (a, b) = self.raw_membership(x)?;
        Ok(if self.swapped { a } else { b })
    }

    /// `(x ∈ A, x ∈ B)`.
    pub fn membership(&self, x: &GroupElement) -> Result<(bool, bool)> {
        let (a, b) = self.raw_membership(x)?;
        Ok(if self.swapped { (b, a) } else { (a, b) })
    }

    fn raw_membership(&self, x: &GroupElement) -> Result<(bool, bool)> {
        self.check(x)?;
        match &self.construction {
            Construction::HalfLine { threshold, step } => {
                let v = x.line_value().expect("validated line element");
                let (pos, neg) = (v >= *threshold, v <= -*threshold);
                Ok(if *step > 0.0 { (pos, neg) } else { (neg, pos) })
            }
            Construction::Pullback { hom, inner } => inner.membership(&hom.apply(x)?),
            Construction::GlLogNorm { p, p_inv, lambda_modulus, threshold } => {
                let m = x.as_matrix().expect("validated matrix");
                let f = crate::aperiodicity::spectral::conjugated_log_column_norm(m, p, p_inv, 0);
                let (hi, lo) = (f >= *threshold, f <= -*threshold);
                Ok(if *lambda_modulus > 1.0 { (hi, lo) } else { (lo, hi) })
            }
            Construction::WordMetric { .. } => {
                let prof = self.orbit_profile(x)?.expect("word-metric construction");
                Ok((prof.shifted_in_a(0), prof.shifted_in_b(0)))
            }
            Construction::Explicit { a_set, b_set } => Ok((a_set.contains(x), b_set.contains(x))),
        }
    }

    /// Minimal-norm analysis of the orbit of `z` (word-metric pairs only).
    pub fn orbit_profile(&self, z: &GroupElement) -> Result<Option<OrbitProfile>> {
        let Construction::WordMetric { metric, window, max_scan } = &self.construction else {
            return Ok(None);
        };
        let g = &self.group;
        let a_inv = g.inv(&self.a)?;
        // values[side][i] = |z·a^{±i}|, with the shared j = 0 on the positive side
        let mut pos = vec![metric.length(z)?];
        let mut neg: Vec<u64> = Vec::new();
        let (mut cur_pos, mut cur_neg) = (g.mul(z, &self.a)?, g.mul(z, &a_inv)?);
        let mut best = pos[0];
        let settled = |vals: &[u64], best: u64| vals.len() >= *window && vals[vals.len() - window..].iter().all(|&v| v > 2 * best + 2);
        loop {
            let pos_done = settled(&pos, best);
            let neg_done = settled(&neg, best);
            if pos_done && neg_done {
                break;
            }
            if (pos.len() as u64) > *max_scan || (neg.len() as u64) > *max_scan {
                return Err(Error::WindowExhausted(*max_scan as usize));
            }
            if !pos_done {
                let v = metric.length(&cur_pos)?;
                best = best.min(v);
                pos.push(v);
                cur_pos = g.mul(&cur_pos, &self.a)?;
            }
            if !neg_done {
                let v = metric.length(&cur_neg)?;
                best = best.min(v);
                neg.push(v);
                cur_neg = g.mul(&cur_neg, &a_inv)?;
            }
        }
        let scanned = pos
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as i64, v))
            .chain(neg.iter().enumerate().map(|(i, &v)| (-(i as i64) - 1, v)));
        let near: Vec<(i64, u64)> = scanned.filter(|&(_, v)| v <= 2 * best + 2).collect();
        let mut minimizers: Vec<(i64, u64)> = near
            .iter()
            .filter(|&&(_, v)| v == best)
            .map(|&(js, _)| {
                let n = near.iter().map(|&(j, _)| (j - js).unsigned_abs()).max().unwrap_or(0);
                (js, 2 * n)
            })
            .collect();
        minimizers.sort_unstable();
        Ok(Some(OrbitProfile { best, minimizers }))
    }

    /// An `N` after which `K·aⁿ ⊆ A` and `K·a⁻ⁿ ⊆ B` should hold.
    pub fn escape_estimator(&self, k: &CompactSet) -> Result<Option<u64>> {
        match &self.construction {
            Construction::HalfLine { threshold, step } => {
                let mut m: f64 = 0.0;
                for x in k.elements() {
                    self.check(x)?;
                    m = m.max(x.line_value().expect("validated").abs());
                }
                Ok(Some(((threshold + m) / step.abs()).ceil() as u64))
            }
            Construction::Pullback { hom, inner } => inner.escape_estimator(&hom.image(k)?),
            Construction::GlLogNorm { p, p_inv, lambda_modulus, threshold } => {
                let mut m: f64 = 0.0;
                for x in k.elements() {
                    self.check(x)?;
                    let f = crate::aperiodicity::spectral::conjugated_log_column_norm(x.as_matrix().expect("validated"), p, p_inv, 0);
                    m = m.max(f.abs());
                }
                Ok(Some(((threshold + m) / lambda_modulus.ln().abs()).ceil() as u64))
            }
            Construction::WordMetric { .. } => {
                // A needs n > N_x + j*, B needs n > N_x - j*, for some minimizer each
                let mut worst = 0u64;
                for x in k.elements() {
                    let prof = self.orbit_profile(x)?.expect("word-metric construction");
                    let onset_a = prof.minimizers.iter().map(|&(j, nx)| (nx as i64 + j + 1).max(1)).min().unwrap_or(1);
                    let onset_b = prof.minimizers.iter().map(|&(j, nx)| (nx as i64 - j + 1).max(1)).min().unwrap_or(1);
                    worst = worst.max(onset_a.max(onset_b) as u64);
                }
                Ok(Some(worst))
            }
            Construction::Explicit { .. } => Ok(None),
        }
    }

    /// Membership of `k·aⁿ` and `k·a⁻ⁿ` for `n = 1..=n_max`: entry `n-1` is
    /// `[(k·aⁿ ∈ A, k·aⁿ ∈ B), (k·a⁻ⁿ ∈ A, k·a⁻ⁿ ∈ B)]`.
    pub fn orbit_memberships(&self, k: &GroupElement, n_max: u64) -> Result<Vec<[(bool, bool); 2]>> {
        if let Some(prof) = self.orbit_profile(k)? {
            return Ok((1..=n_max as i64)
                .map(|n| {
                    let fwd = (prof.shifted_in_a(n), prof.shifted_in_b(n));
                    let bwd = (prof.shifted_in_a(-n), prof.shifted_in_b(-n));
                    if self.swapped {
                        [(fwd.1, fwd.0), (bwd.1, bwd.0)]
                    } else {
                        [fwd, bwd]
                    }
                })
                .collect());
        }
        let g = &self.group;
        let a_inv = g.inv(&self.a)?;
        let (mut fwd, mut bwd) = (k.clone(), k.clone());
        let mut out = Vec::with_capacity(n_max as usize);
        for _ in 0..n_max {
            fwd = g.mul(&fwd, &self.a)?;
            bwd = g.mul(&bwd, &a_inv)?;
            out.push([self.membership(&fwd)?, self.membership(&bwd)?]);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let mut out = match &self.construction {
            Construction::HalfLine { threshold, step } => json!({"kind": "halfline", "threshold": threshold, "step": step}),
            Construction::Pullback { hom, inner } => json!({"kind": "pullback", "hom": hom.to_json(), "target": inner.to_json()}),
            Construction::GlLogNorm { p, lambda_modulus, threshold, .. } => {
                json!({"kind": "gl_lognorm", "P": p.to_rows(), "lambda_modulus": lambda_modulus, "threshold": threshold})
            }
            Construction::WordMetric { window, max_scan, .. } => json!({"kind": "word_metric", "window": window, "max_scan": max_scan}),
            Construction::Explicit { a_set, b_set } => {
                let mut a: Vec<_> = a_set.iter().cloned().collect();
                let mut b: Vec<_> = b_set.iter().cloned().collect();
                a.sort();
                b.sort();
                json!({"kind": "explicit", "A": a, "B": b})
            }
        };
        out["a"] = self.a.to_json();
        out["group"] = json!(self.group.name());
        out["swapped"] = json!(self.swapped);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub element: GroupElement,
    /// Signed exponent: the element is `k·aⁿ`.
    pub n: i64,
    /// `"A"`, `"B"` or `"disjoint"`.
    pub expected: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompactValidation {
    #[serde(rename = "K")]
    pub compact: Value,
    pub validated: bool,
    /// Least `N ≥ 1` with `K·aᵐ ⊆ A`, `K·a⁻ᵐ ⊆ B` for `N ≤ m ≤ n_max`.
    #[serde(rename = "N")]
    pub n: Option<u64>,
    pub estimator: Option<u64>,
    pub disjointness_checked: usize,
    pub counterexamples: Vec<Counterexample>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub construction: Value,
    pub n_max: u64,
    pub all_validated: bool,
    pub compacts: Vec<CompactValidation>,
}

const MAX_COUNTEREXAMPLES: usize = 16;

/// Checks the terminal-pair property on each compact up to `n_max`.
///
/// A compact is validated when the onset `N` satisfies `2N ≤ n_max` and no
/// element of `K·aⁿ`, `|n| ≤ n_max`, lies in both sets.
pub fn validate_pair(pair: &TerminalPair, a: &GroupElement, compacts: &[CompactSet], n_max: u64) -> ValidationReport {
    let results: Vec<CompactValidation> = compacts.par_iter().map(|k| validate_one(pair, a, k, n_max)).collect();
    ValidationReport {
        construction: pair.to_json(),
        n_max,
        all_validated: !results.is_empty() && results.iter().all(|r| r.validated),
        compacts: results,
    }
}

fn validate_one(pair: &TerminalPair, a: &GroupElement, k: &CompactSet, n_max: u64) -> CompactValidation {
    let mut report = CompactValidation {
        compact: k.to_json(),
        validated: false,
        n: None,
        estimator: None,
        disjointness_checked: 0,
        counterexamples: Vec::new(),
        error: None,
    };
    if !pair.group.approx_eq(a, &pair.a) {
        report.error = Some(format!("pair is taken w.r.t. {}, not {a}", pair.a));
        return report;
    }
    let run = || -> Result<(u64, Vec<Counterexample>, Vec<Counterexample>, usize)> {
        let g = &pair.group;
        let a_inv = g.inv(a)?;
        let mut last_bad = 0u64;
        let mut bad_at: Vec<Vec<Counterexample>> = vec![Vec::new(); n_max as usize + 1];
        let mut overlaps = Vec::new();
        let mut checked = 0usize;
        for x in k.elements() {
            let (in_a, in_b) = pair.membership(x)?;
            checked += 1;
            if in_a && in_b {
                overlaps.push(Counterexample { element: x.clone(), n: 0, expected: "disjoint" });
            }
            let orbit = pair.orbit_memberships(x, n_max)?;
            for (i, [(fa, fb), (ba, bb)]) in orbit.into_iter().enumerate() {
                let n = i as u64 + 1;
                checked += 2;
                let elem = |sign: i64| -> Result<GroupElement> {
                    let step = if sign > 0 { a } else { &a_inv };
                    g.mul(x, &g.pow(step, n as i64)?)
                };
                if fa && fb && overlaps.len() < MAX_COUNTEREXAMPLES {
                    overlaps.push(Counterexample { element: elem(1)?, n: n as i64, expected: "disjoint" });
                }
                if ba && bb && overlaps.len() < MAX_COUNTEREXAMPLES {
                    overlaps.push(Counterexample { element: elem(-1)?, n: -(n as i64), expected: "disjoint" });
                }
                if !fa || !bb {
                    last_bad = last_bad.max(n);
                    let slot = &mut bad_at[n as usize];
                    if slot.len() < MAX_COUNTEREXAMPLES {
                        if !fa {
                            slot.push(Counterexample { element: elem(1)?, n: n as i64, expected: "A" });
                        }
                        if !bb {
                            slot.push(Counterexample { element: elem(-1)?, n: -(n as i64), expected: "B" });
                        }
                    }
                }
            }
        }
        let onset = last_bad + 1;
        let late = if 2 * onset > n_max { std::mem::take(&mut bad_at[last_bad as usize]) } else { Vec::new() };
        Ok((onset, late, overlaps, checked))
    };
    match run() {
        Ok((onset, late, overlaps, checked)) => {
            report.disjointness_checked = checked;
            report.validated = 2 * onset <= n_max && overlaps.is_empty();
            report.n = (2 * onset <= n_max).then_some(onset);
            report.counterexamples = overlaps.into_iter().chain(late).take(MAX_COUNTEREXAMPLES).collect();
            report.estimator = pair.escape_estimator(k).ok().flatten();
        }
        Err(e) => report.error = Some(format!("{}: {e}", e.kind())),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_pair() -> TerminalPair {
        halfline_pair(&Group::integers(), &GroupElement::int(1), 100.0).unwrap()
    }

    #[test]
    fn halfline_membership() {
        let p = z_pair();
        assert_eq!(p.membership(&GroupElement::int(150)).unwrap(), (true, false));
        assert_eq!(p.membership(&GroupElement::int(-150)).unwrap(), (false, true));
        assert_eq!(p.membership(&GroupElement::int(0)).unwrap(), (false, false));
        assert_eq!(
            halfline_pair(&Group::integers(), &GroupElement::int(0), 100.0).unwrap_err(),
            Error::ZeroTranslation
        );
    }

    #[test]
    fn halfline_estimator() {
        let k = CompactSet::interval(-3, 3).unwrap();
        assert_eq!(z_pair().escape_estimator(&k).unwrap(), Some(103));
        let p2 = halfline_pair(&Group::integers(), &GroupElement::int(2), 100.0).unwrap();
        assert_eq!(p2.escape_estimator(&CompactSet::interval(0, 0).unwrap()).unwrap(), Some(50));
    }

    #[test]
    fn halfline_validation() {
        let k = CompactSet::interval(-3, 3).unwrap();
        let r = validate_pair(&z_pair(), &GroupElement::int(1), std::slice::from_ref(&k), 512);
        assert!(r.all_validated);
        assert_eq!(r.compacts[0].n, Some(103));
        let r = validate_pair(&z_pair().swapped(), &GroupElement::int(1), &[k], 512);
        assert!(!r.all_validated);
        assert!(!r.compacts[0].counterexamples.is_empty());
    }

    #[test]
    fn negative_step_swaps() {
        let p = halfline_pair(&Group::integers(), &GroupElement::int(-1), 100.0).unwrap();
        assert!(p.in_a(&GroupElement::int(-150)).unwrap());
        let r = validate_pair(&p, &GroupElement::int(-1), &[CompactSet::interval(-3, 3).unwrap()], 512);
        assert_eq!(r.compacts[0].n, Some(103));
    }

    #[test]
    fn pullback_examples() {
        let hom = Homomorphism::CylinderQuotient;
        let a = GroupElement::cylinder(0.0, 1.0);
        let p = halfline_pullback(&hom, &a, 100.0).unwrap();
        for i in 0..16 {
            assert!(p.in_a(&GroupElement::cylinder(i as f64 * 0.4, 150.0)).unwrap());
        }
        let proj = Homomorphism::projection(2, 0).unwrap();
        let p = halfline_pullback(&proj, &GroupElement::lattice(&[1, 1]), 100.0).unwrap();
        assert!(p.in_a(&GroupElement::lattice(&[150, -9999])).unwrap());
        assert_eq!(
            halfline_pullback(&proj, &GroupElement::lattice(&[0, 1]), 100.0).unwrap_err(),
            Error::ZeroTranslation
        );
    }

    #[test]
    fn gl_examples() {
        let gl = Group::general_linear(2).unwrap();
        let a = Matrix::real_diag(&[2.0, 1.0]);
        let p = gl_pair(&gl, &GroupElement::Matrix(a.clone()), &Matrix::identity(2), 2.0, 1.0).unwrap();
        let a5 = gl.pow(&GroupElement::Matrix(a.clone()), 5).unwrap();
        assert!(p.in_a(&a5).unwrap());
        let am5 = gl.pow(&GroupElement::Matrix(a.clone()), -5).unwrap();
        assert!(p.in_b(&am5).unwrap());
        assert!(matches!(
            gl_pair(&gl, &GroupElement::Matrix(a.clone()), &Matrix::identity(2), 1.0 + 1e-12, 1.0),
            Err(Error::UnitModulus(_))
        ));
        let ga = GroupElement::Matrix(a);
        let k = CompactSet::explicit(&gl, vec![gl.identity(), ga.clone(), gl.inv(&ga).unwrap()]).unwrap();
        let r = validate_pair(&p, &ga, std::slice::from_ref(&k), 64);
        assert!(r.all_validated, "{}", serde_json::to_string(&r).unwrap());
        assert_eq!(r.compacts[0].n, p.escape_estimator(&k).unwrap());
    }

    #[test]
    fn word_metric_pair_on_integers() {
        let z = Group::integers();
        let m = Arc::new(WordMetric::new(&z).unwrap());
        let p = word_metric_pair(m, &GroupElement::int(1), DEFAULT_WINDOW, DEFAULT_MAX_SCAN).unwrap();
        let prof = p.orbit_profile(&GroupElement::int(0)).unwrap().unwrap();
        assert_eq!(prof, OrbitProfile { best: 0, minimizers: vec![(0, 4)] });
        for z0 in -20..=20 {
            let (ina, inb) = p.membership(&GroupElement::int(z0)).unwrap();
            assert_eq!(ina, z0 > 4, "z = {z0}");
            assert_eq!(inb, z0 < -4, "z = {z0}");
        }
    }

    #[test]
    fn word_metric_pair_on_lattice() {
        let z2 = Group::lattice(2).unwrap();
        let m = Arc::new(WordMetric::new(&z2).unwrap());
        let p = word_metric_pair(m, &GroupElement::lattice(&[1, 0]), DEFAULT_WINDOW, DEFAULT_MAX_SCAN).unwrap();
        let prof = p.orbit_profile(&GroupElement::lattice(&[9, 5])).unwrap().unwrap();
        // representative (0, 5): |(j, 5)| <= 12 for |j| <= 7
        assert_eq!(prof, OrbitProfile { best: 5, minimizers: vec![(-9, 14)] });
        assert!(!p.in_a(&GroupElement::lattice(&[9, 5])).unwrap());
        assert!(p.in_a(&GroupElement::lattice(&[15, 5])).unwrap());
    }

    #[test]
    fn torsion_orbit_never_settles() {
        let z6 = Group::cyclic(6).unwrap();
        let m = Arc::new(WordMetric::new(&z6).unwrap());
        let p = word_metric_pair(m, &GroupElement::Residue(2), 8, 1000).unwrap();
        assert_eq!(p.in_a(&GroupElement::Residue(0)).unwrap_err(), Error::WindowExhausted(1000));
        let r = validate_pair(&p, &GroupElement::Residue(2), &[CompactSet::explicit(&z6, vec![GroupElement::Residue(0)]).unwrap()], 64);
        assert!(!r.all_validated);
        let e = explicit_pair(&z6, &GroupElement::Residue(2), vec![GroupElement::Residue(2)], vec![GroupElement::Residue(4)]).unwrap();
        let r = validate_pair(&e, &GroupElement::Residue(2), &[CompactSet::explicit(&z6, vec![GroupElement::Residue(0)]).unwrap()], 64);
        assert!(!r.all_validated);
    }

    #[test]
    fn homomorphism_law() {
        let hom = Homomorphism::linear(2, vec![vec![1, 2], vec![-1, 3], vec![0, 1]]).unwrap();
        let z2 = Group::lattice(2).unwrap();
        let (g, h) = (GroupElement::lattice(&[3, -1]), GroupElement::lattice(&[-2, 5]));
        let lhs = hom.apply(&z2.mul(&g, &h).unwrap()).unwrap();
        let rhs = hom.target().mul(&hom.apply(&g).unwrap(), &hom.apply(&h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
