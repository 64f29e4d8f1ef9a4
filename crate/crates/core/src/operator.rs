//! Finitely supported functions on discrete groups and the weighted
//! translation `(T f)(x) = w(x)·f(x·a⁻¹)` with its inverse
//! `(S f)(x) = w'(x)·f(x·a)`, `w'(x) = 1 / w(x·a)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde_json::{json, Value};

use crate::compact::CompactSet;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::weight::{inverse_weight, Weight};

/// Entries with modulus below this are dropped.
pub const ZERO_FLOOR: f64 = 1e-300;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SupportedFunction {
    values: BTreeMap<GroupElement, Complex64>,
}

impl SupportedFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn delta(g: GroupElement) -> Self {
        Self::from_entries([(g, Complex64::new(1.0, 0.0))])
    }

    /// Sums repeated keys and drops negligible entries.
    pub fn from_entries<I: IntoIterator<Item = (GroupElement, Complex64)>>(entries: I) -> Self {
        let mut values: BTreeMap<GroupElement, Complex64> = BTreeMap::new();
        for (g, v) in entries {
            *values.entry(g).or_default() += v;
        }
        values.retain(|_, v| v.norm() >= ZERO_FLOOR);
        SupportedFunction { values }
    }

    pub fn from_real<I: IntoIterator<Item = (GroupElement, f64)>>(entries: I) -> Self {
        Self::from_entries(entries.into_iter().map(|(g, v)| (g, Complex64::new(v, 0.0))))
    }

    /// Up to `max_support` points drawn by `group.random_element(rng, radius)`,
    /// real values uniform in `[-1, 1]`.
    pub fn random<R: Rng + ?Sized>(group: &Group, rng: &mut R, max_support: usize, radius: usize) -> Self {
        let size = rng.gen_range(1..=max_support.max(1));
        let entries: Vec<(GroupElement, f64)> =
            (0..size).map(|_| (group.random_element(rng, radius), rng.gen_range(-1.0..=1.0))).collect();
        Self::from_real(entries)
    }

    pub fn get(&self, g: &GroupElement) -> Complex64 {
        self.values.get(g).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&GroupElement, &Complex64)> {
        self.values.iter()
    }

    pub fn support(&self, group: &Group) -> Result<CompactSet> {
        CompactSet::explicit(group, self.values.keys().cloned().collect())
    }

    pub fn add(&self, other: &SupportedFunction) -> SupportedFunction {
        Self::from_entries(self.values.iter().chain(other.values.iter()).map(|(g, v)| (g.clone(), *v)))
    }

    pub fn sub(&self, other: &SupportedFunction) -> SupportedFunction {
        Self::from_entries(
            self.values.iter().map(|(g, v)| (g.clone(), *v)).chain(other.values.iter().map(|(g, v)| (g.clone(), -v))),
        )
    }

    pub fn scale(&self, c: Complex64) -> SupportedFunction {
        Self::from_entries(self.values.iter().map(|(g, v)| (g.clone(), v * c)))
    }

    /// `ℓ^p` norm for counting measure.
    pub fn norm_p(&self, p: f64) -> Result<f64> {
        check_p(p)?;
        let s: f64 = self.values.values().map(|v| v.norm().powf(p)).sum();
        Ok(s.powf(1.0 / p))
    }

    /// `‖f‖_p^p`.
    pub fn norm_p_pow(&self, p: f64) -> Result<f64> {
        check_p(p)?;
        Ok(self.values.values().map(|v| v.norm().powf(p)).sum())
    }

    pub fn norm_sup(&self) -> f64 {
        self.values.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `[[element, re, im], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.values.iter().map(|(g, v)| json!([g, v.re, v.im])).collect())
    }
}

pub fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::BadP(p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    T,
    S,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::T => "T",
            Direction::S => "S",
        }
    }
}

/// `T_{a,w}` on `ℓ^p` of a discrete group.
#[derive(Clone, Debug)]
pub struct WeightedTranslation {
    group: Group,
    a: GroupElement,
    a_inv: GroupElement,
    w: Arc<Weight>,
    w_inv: Arc<Weight>,
}

impl WeightedTranslation {
    pub fn new(a: &GroupElement, w: Weight) -> Result<Self> {
        let group = w.group().clone();
        if !group.is_discrete() {
            return Err(Error::NotDiscrete(group.name()));
        }
        group.validate(a)?;
        let w_inv = inverse_weight(&w, a)?;
        Ok(WeightedTranslation { a_inv: group.inv(a)?, a: a.clone(), group, w: Arc::new(w), w_inv: Arc::new(w_inv) })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn a(&self) -> &GroupElement {
        &self.a
    }

    pub fn weight(&self) -> &Weight {
        &self.w
    }

    /// Weight `w'` of `S = T_{a⁻¹,w'}`.
    pub fn inverse_weight(&self) -> &Weight {
        &self.w_inv
    }

    /// `(Tf)(x) = w(x)·f(x·a⁻¹)`: the value at `y` moves to `y·a`.
    pub fn apply_t(&self, f: &SupportedFunction) -> Result<SupportedFunction> {
        let mut out = Vec::with_capacity(f.len());
        for (y, v) in f.entries() {
            let x = self.group.mul(y, &self.a)?;
            let c = self.w.eval(&x)?;
            out.push((x, v * c));
        }
        Ok(SupportedFunction::from_entries(out))
    }

    /// `(Sf)(x) = f(x·a) / w(x·a)`: the value at `y` moves to `y·a⁻¹`.
    pub fn apply_s(&self, f: &SupportedFunction) -> Result<SupportedFunction> {
        let mut out = Vec::with_capacity(f.len());
        for (y, v) in f.entries() {
            let c = self.w.eval(y)?;
            out.push((self.group.mul(y, &self.a_inv)?, v / c));
        }
        Ok(SupportedFunction::from_entries(out))
    }

    pub fn apply(&self, dir: Direction, f: &SupportedFunction) -> Result<SupportedFunction> {
        match dir {
            Direction::T => self.apply_t(f),
            Direction::S => self.apply_s(f),
        }
    }

    pub fn iterate(&self, dir: Direction, n: u64, f: &SupportedFunction) -> Result<SupportedFunction> {
        let mut g = f.clone();
        for _ in 0..n {
            g = self.apply(dir, &g)?;
        }
        Ok(g)
    }

    /// `∏_{i=0}^{n-1} w(x·a⁻ⁱ)`, so that `(Tⁿf)(x) = c·f(x·a⁻ⁿ)`.
    pub fn cocycle_product(&self, x: &GroupElement, n: u64) -> Result<f64> {
        let mut prod = 1.0;
        let mut y = x.clone();
        for _ in 0..n {
            prod *= self.w.eval(&y)?;
            y = self.group.mul(&y, &self.a_inv)?;
        }
        Ok(prod)
    }

    /// `∏_{i=0}^{n-1} w'(x·aⁱ)`, so that `(Sⁿf)(x) = c'·f(x·aⁿ)`.
    pub fn inverse_cocycle_product(&self, x: &GroupElement, n: u64) -> Result<f64> {
        let mut prod = 1.0;
        let mut y = x.clone();
        for _ in 0..n {
            prod *= self.w_inv.eval(&y)?;
            y = self.group.mul(&y, &self.a)?;
        }
        Ok(prod)
    }
}
