//! Numerical certificates for the Frequent Hypercyclicity Criterion applied
//! to `T = T_{a,w}` and `S = T⁻¹` on `ℓ^p` of a discrete group:
//!
//! 1. `∑ Tⁿφ` converges unconditionally,
//! 2. `∑ Sⁿφ` converges unconditionally,
//! 3. `TSφ = φ`,
//!
//! for `φ` in a dense proxy set (δ-functions and random sparse functions).
//! Convergence is certified through absolute convergence: past the onset `N`
//! at which `supp φ·aⁿ ⊆ A` and `supp φ·a⁻ⁿ ⊆ B`, the sup norms obey
//! `‖Xⁿφ‖_∞ ≤ C·γ⁻ⁿ` with `γ > 1` read off the weight.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::aperiodicity::{escape_time, order_bounded, Classification};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::operator::{check_p, Direction, SupportedFunction, WeightedTranslation};
use crate::terminal::{validate_pair, TerminalPair};

/// Tolerance for the `TS = id` check.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Tolerance for the cocycle identity `c·c' = 1`.
pub const COCYCLE_TOL: f64 = 1e-10;
/// Relative slack allowed in the geometric bound.
const BOUND_SLACK: f64 = 1e-9;

pub const IMPLIED_PROPERTIES: [&str; 5] = ["frequently hypercyclic", "chaotic", "mixing", "weakly mixing", "hypercyclic"];

/// An operator together with the terminal pair its weight was built from.
#[derive(Clone, Debug)]
pub struct FhcSetup {
    pub op: WeightedTranslation,
    pub pair: Option<TerminalPair>,
    /// Horizon for validation and escape checks.
    pub horizon: u64,
}

impl FhcSetup {
    pub fn new(op: WeightedTranslation, pair: Option<TerminalPair>, horizon: u64) -> Self {
        FhcSetup { op, pair, horizon }
    }

    /// Onset `N` of the pair on `supp φ`.
    pub fn onset(&self, phi: &SupportedFunction) -> Result<u64> {
        let pair = self.pair.as_ref().ok_or(Error::NoEscape)?;
        let k = phi.support(self.op.group())?;
        let report = validate_pair(pair, self.op.a(), &[k], self.horizon);
        let c = &report.compacts[0];
        match (c.validated, c.n) {
            (true, Some(n)) => Ok(n),
            _ => Err(Error::NoEscape),
        }
    }

    /// `‖Xⁿφ‖` data for `n = 0..=n_max`.
    pub fn orbit(&self, dir: Direction, phi: &SupportedFunction, n_max: u64) -> Result<Vec<SupportedFunction>> {
        let mut out = Vec::with_capacity(n_max as usize + 1);
        let mut f = phi.clone();
        out.push(f.clone());
        for _ in 0..n_max {
            f = self.op.apply(dir, &f)?;
            out.push(f.clone());
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    #[serde(rename = "C")]
    pub c: f64,
    pub gamma: f64,
    #[serde(rename = "N")]
    pub onset: u64,
}

impl DecayFit {
    pub fn bound(&self, n: u64) -> f64 {
        self.c * self.gamma.powf(-(n as f64))
    }
}

#[derive(Clone, Debug)]
pub struct DecayProfile {
    pub direction: Direction,
    /// `‖Xⁿφ‖_∞` for `n = 0..=n_max`.
    pub sup_norms: Vec<f64>,
    pub fit: DecayFit,
}

fn fit_decay(setup: &FhcSetup, dir: Direction, phi: &SupportedFunction, sup_norms: &[f64]) -> Result<DecayFit> {
    let onset = setup.onset(phi)?;
    let (gamma_t, gamma_s) = setup.op.weight().decay_rates().ok_or(Error::NoDecay { n: onset as usize + 1 })?;
    let gamma = match dir {
        Direction::T => gamma_t,
        Direction::S => gamma_s,
    };
    if gamma.partial_cmp(&1.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::NoDecay { n: onset as usize + 1 });
    }
    let head = &sup_norms[..=(onset as usize).min(sup_norms.len() - 1)];
    let c = head.iter().copied().fold(0.0, f64::max) * gamma.powf(onset as f64);
    let fit = DecayFit { c, gamma, onset };
    for (n, &s) in sup_norms.iter().enumerate().skip(onset as usize + 1) {
        if s > fit.bound(n as u64) * (1.0 + BOUND_SLACK) {
            return Err(Error::NoDecay { n });
        }
    }
    Ok(fit)
}

/// `n ↦ ‖Xⁿφ‖_∞` with the analytic fit `C·γ⁻ⁿ` checked beyond the onset.
pub fn decay_profile(setup: &FhcSetup, dir: Direction, phi: &SupportedFunction, n_max: u64) -> Result<DecayProfile> {
    if phi.is_empty() {
        return Err(Error::BadParameters("decay of the zero function is vacuous".into()));
    }
    let sup_norms: Vec<f64> = setup.orbit(dir, phi, n_max)?.iter().map(SupportedFunction::norm_sup).collect();
    let fit = fit_decay(setup, dir, phi, &sup_norms)?;
    Ok(DecayProfile { direction: dir, sup_norms, fit })
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesTail {
    pub direction: &'static str,
    pub p: f64,
    /// `∑_{k ≤ n} ‖Xᵏφ‖_p^p` for `n = 0..=n_max`.
    #[serde(skip)]
    pub partial_sums: Vec<f64>,
    pub partial_sum: f64,
    pub last_difference: f64,
    /// `|supp φ|·∑_{n > n_max} (C·γ⁻ⁿ)^p`.
    pub tail_bound: Option<f64>,
    /// Bound on `‖∑_{n ∈ F} Xⁿφ‖_p` over finite `F ⊆ (n_max, ∞)`, splitting
    /// `n` into residue classes mod `N₀` whose translates of `supp φ` are
    /// pairwise disjoint.
    pub unconditional_tail_bound: Option<f64>,
    #[serde(rename = "N0")]
    pub n0: u64,
    pub converged: bool,
    /// `‖Xⁿφ‖_p^p ≤ |supp φ|·‖Xⁿφ‖_∞^p` for every computed `n`.
    pub holder_ok: bool,
}

fn tail_from_orbit(setup: &FhcSetup, dir: Direction, phi: &SupportedFunction, orbit: &[SupportedFunction], p: f64, fit: Option<DecayFit>) -> Result<SeriesTail> {
    check_p(p)?;
    let k = phi.support(setup.op.group())?;
    let n0 = escape_time(setup.op.group(), &k, setup.op.a(), setup.horizon)?.ok_or(Error::NoEscape)? + 1;
    let size = k.len() as f64;
    let mut partial_sums = Vec::with_capacity(orbit.len());
    let mut acc = 0.0;
    let mut holder_ok = true;
    for f in orbit {
        let term = f.norm_p_pow(p)?;
        holder_ok &= term <= size * f.norm_sup().powf(p) * (1.0 + 1e-12);
        acc += term;
        partial_sums.push(acc);
    }
    let n_max = orbit.len() as u64 - 1;
    let last_difference = orbit.last().map(|f| f.norm_p_pow(p)).transpose()?.unwrap_or(0.0);
    let (tail_bound, unconditional_tail_bound) = match fit {
        Some(fit) => {
            let q = fit.gamma.powf(-p);
            let tail = size * fit.c.powf(p) * q.powf((n_max + 1) as f64) / (1.0 - q);
            // class ℓ starts at the least n > n_max with n ≡ ℓ (mod N₀)
            let qn0 = q.powf(n0 as f64);
            let mut unc = 0.0;
            for l in 0..n0 {
                let first = n_max + 1 + (l + n0 - (n_max + 1) % n0) % n0;
                let class = size * fit.c.powf(p) * q.powf(first as f64) / (1.0 - qn0);
                unc += class.powf(1.0 / p);
            }
            (Some(tail), Some(unc))
        }
        None => (None, None),
    };
    Ok(SeriesTail {
        direction: dir.name(),
        p,
        partial_sum: acc,
        partial_sums,
        last_difference,
        converged: tail_bound.is_some_and(f64::is_finite),
        tail_bound,
        unconditional_tail_bound,
        n0,
        holder_ok,
    })
}

/// Partial sums of `∑‖Xⁿφ‖_p^p` up to `n_max` and the analytic tail bound.
/// A failed decay fit yields `converged = false` with no tail bound.
pub fn series_tail(setup: &FhcSetup, dir: Direction, phi: &SupportedFunction, p: f64, n_max: u64) -> Result<SeriesTail> {
    let orbit = setup.orbit(dir, phi, n_max)?;
    let sup: Vec<f64> = orbit.iter().map(SupportedFunction::norm_sup).collect();
    let fit = match fit_decay(setup, dir, phi, &sup) {
        Ok(f) => Some(f),
        Err(Error::NoDecay { .. }) => None,
        Err(e) => return Err(e),
    };
    tail_from_orbit(setup, dir, phi, &orbit, p, fit)
}

/// `max ‖TSf - f‖_∞, ‖STf - f‖_∞` over seeded random sparse `f`.
pub fn check_ts_identity(op: &WeightedTranslation, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<SupportedFunction> = (0..samples).map(|_| SupportedFunction::random(op.group(), &mut rng, 32, 20)).collect();
    let errs = fs
        .par_iter()
        .map(|f| -> Result<f64> {
            let ts = op.apply_t(&op.apply_s(f)?)?.sub(f).norm_sup();
            let st = op.apply_s(&op.apply_t(f)?)?.sub(f).norm_sup();
            Ok(ts.max(st))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

#[derive(Clone, Debug)]
pub struct PeriodicPoint {
    pub v: SupportedFunction,
    pub residual: f64,
    pub relative_residual: f64,
}

/// `v = ∑_{j=1}^{tr} T^{jP}φ + φ + ∑_{j=1}^{tr} S^{jP}φ` and `‖T^P v - v‖_p`.
pub fn periodic_point(setup: &FhcSetup, phi: &SupportedFunction, period: u64, truncation: u64, p: f64) -> Result<PeriodicPoint> {
    check_p(p)?;
    if period == 0 {
        return Err(Error::BadParameters("period must be positive".into()));
    }
    let n_check = period.max(setup.horizon / 2);
    decay_profile(setup, Direction::T, phi, n_check)?;
    decay_profile(setup, Direction::S, phi, n_check)?;
    let mut v = phi.clone();
    let (mut t, mut s) = (phi.clone(), phi.clone());
    for _ in 0..truncation {
        t = setup.op.iterate(Direction::T, period, &t)?;
        s = setup.op.iterate(Direction::S, period, &s)?;
        v = v.add(&t).add(&s);
    }
    let residual = setup.op.iterate(Direction::T, period, &v)?.sub(&v).norm_p(p)?;
    let norm = v.norm_p(p)?;
    Ok(PeriodicPoint { relative_residual: if norm > 0.0 { residual / norm } else { residual }, residual, v })
}

#[derive(Clone, Debug)]
pub struct TransitivityWitness {
    pub x: SupportedFunction,
    /// `‖x - φ‖_p = ‖Sⁿψ‖_p`.
    pub err_near: f64,
    /// `‖Tⁿx - ψ‖_p`.
    pub err_hit: f64,
    /// `‖TⁿSⁿψ - ψ‖_∞`.
    pub identity_error: f64,
}

/// `x = φ + Sⁿψ` lies near `φ` and `Tⁿx` lies near `ψ`.
pub fn transitivity_witness(setup: &FhcSetup, phi: &SupportedFunction, psi: &SupportedFunction, n: u64, p: f64) -> Result<TransitivityWitness> {
    check_p(p)?;
    let op = &setup.op;
    let sn_psi = op.iterate(Direction::S, n, psi)?;
    let x = phi.add(&sn_psi);
    let err_near = sn_psi.norm_p(p)?;
    let err_hit = op.iterate(Direction::T, n, &x)?.sub(psi).norm_p(p)?;
    let identity_error = op.iterate(Direction::T, n, &sn_psi)?.sub(psi).norm_sup();
    Ok(TransitivityWitness { x, err_near, err_hit, identity_error })
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleEntry {
    pub x: GroupElement,
    /// `∏_{i<m} w(x·a⁻ⁱ)`.
    pub c: f64,
    /// `∏_{i<m} w'(x·aⁱ)`.
    pub c_inv: f64,
    pub product: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionObstruction {
    pub order: u64,
    pub entries: Vec<CocycleEntry>,
    /// `|c·c' - 1| ≤ 1e-10` at every point.
    pub identity_holds: bool,
    /// Some point has `c ≥ 1`, so `‖T^{km}φ‖` does not decay.
    pub t_fails: bool,
    /// Some point has `c' ≥ 1`, so `‖S^{km}φ‖` does not decay.
    pub s_fails: bool,
}

/// Period-`m` cocycles on `supp φ` for an element of order `m`.
pub fn torsion_obstruction(op: &WeightedTranslation, max_order: u64, phi: &SupportedFunction) -> Result<TorsionObstruction> {
    let m = order_bounded(op.group(), op.a(), max_order)?.ok_or(Error::NotTorsion)?;
    let mut entries = Vec::with_capacity(phi.len());
    for (x, _) in phi.entries() {
        let c = op.cocycle_product(x, m)?;
        let c_inv = op.inverse_cocycle_product(x, m)?;
        entries.push(CocycleEntry { x: x.clone(), c, c_inv, product: c * c_inv });
    }
    let tol = 1e-12;
    Ok(TorsionObstruction {
        order: m,
        identity_holds: entries.iter().all(|e| (e.product - 1.0).abs() <= COCYCLE_TOL),
        t_fails: entries.iter().any(|e| e.c >= 1.0 - tol),
        s_fails: entries.iter().any(|e| e.c_inv >= 1.0 - tol),
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FhcBudget {
    pub n_max: u64,
    pub ts_samples: usize,
    pub seed: u64,
    pub max_order: u64,
}

impl Default for FhcBudget {
    fn default() -> Self {
        FhcBudget { n_max: 200, ts_samples: 1000, seed: 0, max_order: 1000 }
    }
}

#[derive(Clone, Debug)]
pub struct PhiReport {
    pub phi: SupportedFunction,
    pub sup_norms_t: Vec<f64>,
    pub sup_norms_s: Vec<f64>,
    pub decay_t: std::result::Result<DecayFit, Error>,
    pub decay_s: std::result::Result<DecayFit, Error>,
    pub series: Vec<std::result::Result<SeriesTail, Error>>,
}

impl PhiReport {
    fn converges(&self, dir: Direction) -> bool {
        let decay = match dir {
            Direction::T => &self.decay_t,
            Direction::S => &self.decay_s,
        };
        decay.is_ok()
            && self
                .series
                .iter()
                .filter(|s| s.as_ref().map_or(true, |s| s.direction == dir.name()))
                .all(|s| s.as_ref().is_ok_and(|s| s.converged && s.holder_ok))
    }

    /// Partial sums of the `T`-series for the `i`-th requested `p`.
    pub fn partial_sums_t(&self, p_index: usize) -> Option<&[f64]> {
        self.series
            .iter()
            .filter_map(|s| s.as_ref().ok())
            .filter(|s| s.direction == "T")
            .nth(p_index)
            .map(|s| s.partial_sums.as_slice())
    }

    pub fn to_json(&self) -> Value {
        let outcome = |r: &std::result::Result<DecayFit, Error>| match r {
            Ok(f) => json!(f),
            Err(e) => e.to_json(),
        };
        json!({
            "phi": self.phi.to_json(),
            "decay_T": outcome(&self.decay_t),
            "decay_S": outcome(&self.decay_s),
            "series": self.series.iter().map(|s| match s {
                Ok(s) => json!(s),
                Err(e) => e.to_json(),
            }).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct FhcReport {
    pub group: String,
    pub a: GroupElement,
    pub weight: Value,
    pub pair: Option<Value>,
    pub p_values: Vec<f64>,
    pub budget: FhcBudget,
    pub phis: Vec<PhiReport>,
    pub ts_identity_max_error: std::result::Result<f64, Error>,
    pub condition_t: bool,
    pub condition_s: bool,
    pub condition_ts: bool,
    pub verdict: bool,
    pub implied_properties: Vec<&'static str>,
    pub torsion_obstruction: Option<std::result::Result<TorsionObstruction, Error>>,
    pub notes: Vec<String>,
}

impl FhcReport {
    pub fn to_json(&self) -> Value {
        json!({
            "group": self.group,
            "a": self.a,
            "weight": self.weight,
            "pair": self.pair,
            "p_values": self.p_values,
            "budget": self.budget,
            "phis": self.phis.iter().map(PhiReport::to_json).collect::<Vec<_>>(),
            "ts_identity_max_error": match &self.ts_identity_max_error {
                Ok(e) => json!(e),
                Err(e) => e.to_json(),
            },
            "conditions": {
                "sum_T_converges_unconditionally": self.condition_t,
                "sum_S_converges_unconditionally": self.condition_s,
                "TS_identity": self.condition_ts,
            },
            "verdict": self.verdict,
            "implied_properties": self.implied_properties,
            "torsion_obstruction": self.torsion_obstruction.as_ref().map(|t| match t {
                Ok(t) => json!(t),
                Err(e) => e.to_json(),
            }),
            "notes": self.notes,
        })
    }
}

/// Runs every check for every `(φ, p)` against the same weight.
pub fn fhc_report(setup: &FhcSetup, classification: &Classification, phis: &[SupportedFunction], ps: &[f64], budget: &FhcBudget) -> FhcReport {
    let op = &setup.op;
    let phi_reports: Vec<PhiReport> = phis.par_iter().map(|phi| phi_report(setup, phi, ps, budget.n_max)).collect();
    let ts = check_ts_identity(op, budget.ts_samples, budget.seed);
    let torsion = classification.is_torsion();
    let mut notes = Vec::new();
    let torsion_obstruction = torsion.then(|| {
        let mut support = SupportedFunction::zero();
        for phi in phis {
            support = support.add(&SupportedFunction::from_entries(phi.entries().map(|(g, _)| (g.clone(), 1.0.into()))));
        }
        torsion_obstruction(op, budget.max_order, &support)
    });
    if torsion {
        notes.push("a is torsion: no weighted translation by a is hypercyclic".into());
    }
    if phis.is_empty() {
        notes.push("no test functions supplied".into());
    }
    let condition_t = !torsion && !phi_reports.is_empty() && phi_reports.iter().all(|r| r.converges(Direction::T));
    let condition_s = !torsion && !phi_reports.is_empty() && phi_reports.iter().all(|r| r.converges(Direction::S));
    let condition_ts = ts.as_ref().is_ok_and(|&e| e < IDENTITY_TOL);
    let verdict = condition_t && condition_s && condition_ts;
    FhcReport {
        group: op.group().name(),
        a: op.a().clone(),
        weight: op.weight().to_json(),
        pair: setup.pair.as_ref().map(TerminalPair::to_json),
        p_values: ps.to_vec(),
        budget: *budget,
        phis: phi_reports,
        ts_identity_max_error: ts,
        condition_t,
        condition_s,
        condition_ts,
        verdict,
        implied_properties: if verdict { IMPLIED_PROPERTIES.to_vec() } else { Vec::new() },
        torsion_obstruction,
        notes,
    }
}

fn phi_report(setup: &FhcSetup, phi: &SupportedFunction, ps: &[f64], n_max: u64) -> PhiReport {
    let orbit_t = setup.orbit(Direction::T, phi, n_max);
    let orbit_s = setup.orbit(Direction::S, phi, n_max);
    let sup = |o: &Result<Vec<SupportedFunction>>| o.as_ref().map(|o| o.iter().map(SupportedFunction::norm_sup).collect()).unwrap_or_default();
    let sup_norms_t: Vec<f64> = sup(&orbit_t);
    let sup_norms_s: Vec<f64> = sup(&orbit_s);
    let fit = |dir, o: &Result<Vec<SupportedFunction>>, s: &[f64]| match o {
        Ok(_) => fit_decay(setup, dir, phi, s),
        Err(e) => Err(e.clone()),
    };
    let decay_t = fit(Direction::T, &orbit_t, &sup_norms_t);
    let decay_s = fit(Direction::S, &orbit_s, &sup_norms_s);
    let mut series = Vec::with_capacity(2 * ps.len());
    for (dir, orbit, decay) in [(Direction::T, &orbit_t, &decay_t), (Direction::S, &orbit_s, &decay_s)] {
        for &p in ps {
            series.push(match orbit {
                Ok(o) => tail_from_orbit(setup, dir, phi, o, p, decay.as_ref().ok().copied()),
                Err(e) => Err(e.clone()),
            });
        }
    }
    PhiReport { phi: phi.clone(), sup_norms_t, sup_norms_s, decay_t, decay_s, series }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aperiodicity::{classify, Budget};
    use crate::group::Group;
    use crate::terminal::halfline_pair;
    use crate::weight::{step_weight, Weight};

    fn z_setup() -> FhcSetup {
        let pair = halfline_pair(&Group::integers(), &GroupElement::int(1), 100.0).unwrap();
        let w = step_weight(&pair, 0.5, 2.0).unwrap();
        FhcSetup::new(WeightedTranslation::new(&GroupElement::int(1), w).unwrap(), Some(pair), 512)
    }

    fn d(x: i64) -> SupportedFunction {
        SupportedFunction::delta(GroupElement::int(x))
    }

    #[test]
    fn decay_ratio_is_alpha() {
        let s = z_setup();
        let prof = decay_profile(&s, Direction::T, &d(0), 300).unwrap();
        assert_eq!(prof.fit.onset, 100);
        for n in 101..=300 {
            assert_eq!(prof.sup_norms[n] / prof.sup_norms[n - 1], 0.5);
        }
        let prof = decay_profile(&s, Direction::S, &d(0), 300).unwrap();
        for n in 101..=300 {
            assert_eq!(prof.sup_norms[n] / prof.sup_norms[n - 1], 0.5);
        }
    }

    #[test]
    fn unit_weight_does_not_decay() {
        let pair = halfline_pair(&Group::integers(), &GroupElement::int(1), 100.0).unwrap();
        let w = Weight::constant(&Group::integers(), 1.0).unwrap();
        let s = FhcSetup::new(WeightedTranslation::new(&GroupElement::int(1), w).unwrap(), Some(pair), 512);
        assert!(matches!(decay_profile(&s, Direction::T, &d(0), 200), Err(Error::NoDecay { .. })));
        let tail = series_tail(&s, Direction::T, &d(0), 1.0, 200).unwrap();
        assert!(!tail.converged);
        assert_eq!(tail.partial_sum, 201.0);
    }

    #[test]
    fn tails() {
        let s = z_setup();
        let t1 = series_tail(&s, Direction::T, &d(0), 1.0, 200).unwrap();
        assert!(t1.tail_bound.unwrap() < 2f64.powi(-90));
        let t2 = series_tail(&s, Direction::T, &d(0), 2.0, 200).unwrap();
        assert!(t2.last_difference < 1e-12);
        assert!(t2.converged && t2.holder_ok);
        assert_eq!(t2.n0, 1);
    }

    #[test]
    fn ts_identity() {
        assert!(check_ts_identity(&z_setup().op, 200, 0).unwrap() < 1e-12);
        let w2 = Weight::constant(&Group::integers(), 2.0).unwrap();
        let op = WeightedTranslation::new(&GroupElement::int(1), w2).unwrap();
        assert!(check_ts_identity(&op, 200, 1).unwrap() < 1e-15);
    }

    #[test]
    fn periodic_and_transitive() {
        let s = z_setup();
        let pp = periodic_point(&s, &d(0), 150, 10, 2.0).unwrap();
        assert!(pp.relative_residual < 1e-6);
        let base = periodic_point(&s, &d(0), 150, 0, 2.0).unwrap();
        assert!(base.residual > 0.1);
        let tw = transitivity_witness(&s, &d(0), &d(5), 300, 2.0).unwrap();
        assert!(tw.err_near < 1e-20 && tw.err_hit < 1e-20);
        let tw0 = transitivity_witness(&s, &d(0), &d(5), 0, 2.0).unwrap();
        assert_eq!(tw0.err_near, 1.0);
        let twz = transitivity_witness(&s, &d(0), &SupportedFunction::zero(), 40, 2.0).unwrap();
        assert_eq!(twz.x, d(0));
        assert_eq!(twz.err_hit, s.op.iterate(Direction::T, 40, &d(0)).unwrap().norm_p(2.0).unwrap());
    }

    #[test]
    fn torsion_cycle() {
        let z6 = Group::cyclic(6).unwrap();
        let values = [(0, 0.5), (2, 2.0), (4, 1.0)].into_iter().map(|(g, v)| (GroupElement::Residue(g), v)).collect();
        let w = Weight::table(&z6, values, 1.0).unwrap();
        let op = WeightedTranslation::new(&GroupElement::Residue(2), w).unwrap();
        let ob = torsion_obstruction(&op, 100, &SupportedFunction::delta(GroupElement::Residue(0))).unwrap();
        assert_eq!(ob.order, 3);
        assert_eq!(ob.entries[0].c, 1.0);
        assert!(ob.identity_holds && ob.t_fails && ob.s_fails);
        let z = WeightedTranslation::new(&GroupElement::int(1), Weight::constant(&Group::integers(), 1.0).unwrap()).unwrap();
        assert!(matches!(torsion_obstruction(&z, 100, &d(0)), Err(Error::NotTorsion)));
    }

    #[test]
    fn report_on_integers() {
        let s = z_setup();
        let c = classify(s.op.group(), s.op.a(), &Budget::default()).unwrap();
        let r = fhc_report(&s, &c, &[d(0), d(7)], &[1.0, 2.0], &FhcBudget { ts_samples: 100, ..Default::default() });
        assert!(r.verdict, "{}", r.to_json());
        assert_eq!(r.implied_properties.len(), 5);
    }
}
