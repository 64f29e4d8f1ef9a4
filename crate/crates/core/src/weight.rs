//! Bounded positive weights `w: G → (0, ∞)` with recorded bounds.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, GroupKind, Matrix};
use crate::terminal::TerminalPair;

#[derive(Clone, Debug)]
enum Rule {
    Constant(f64),
    /// `α` on `A`, `β` on `B`, 1 elsewhere.
    Step { pair: Box<TerminalPair>, alpha: f64, beta: f64 },
    /// `w(PxP⁻¹)` is `1/2` if `‖x₁‖ ≥ 2`, `2` if `‖x₁‖ ≤ 1/2`, `‖x₁‖⁻¹` otherwise.
    GlClamped { p: Matrix, p_inv: Matrix },
    Table { values: BTreeMap<GroupElement, f64>, default: f64 },
    /// `x ↦ 1 / inner(x·a)`.
    Inverse { inner: Arc<Weight>, a: GroupElement },
}

#[derive(Clone, Debug)]
pub struct Weight {
    group: Group,
    rule: Rule,
    lo: f64,
    hi: f64,
}

fn positive(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

impl Weight {
    pub fn constant(group: &Group, c: f64) -> Result<Self> {
        if !positive(c) {
            return Err(Error::BadParameters(format!("constant weight must be positive, got {c}")));
        }
        Ok(Weight { group: group.clone(), rule: Rule::Constant(c), lo: c, hi: c })
    }

    /// Explicit values on finitely many points, `default` elsewhere.
    pub fn table(group: &Group, values: BTreeMap<GroupElement, f64>, default: f64) -> Result<Self> {
        let mut lo = default;
        let mut hi = default;
        if !positive(default) {
            return Err(Error::BadParameters(format!("default weight must be positive, got {default}")));
        }
        for (g, &v) in &values {
            group.validate(g)?;
            if !positive(v) {
                return Err(Error::BadParameters(format!("weight at {g} must be positive, got {v}")));
            }
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Ok(Weight { group: group.clone(), rule: Rule::Table { values, default }, lo, hi })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn tag(&self) -> &'static str {
        match self.rule {
            Rule::Constant(_) => "constant",
            Rule::Step { .. } => "step",
            Rule::GlClamped { .. } => "gl_clamped",
            Rule::Table { .. } => "table",
            Rule::Inverse { .. } => "inverse",
        }
    }

    pub fn eval(&self, x: &GroupElement) -> Result<f64> {
        match &self.rule {
            Rule::Constant(c) => {
                self.check(x)?;
                Ok(*c)
            }
            Rule::Step { pair, alpha, beta } => {
                let (in_a, in_b) = pair.membership(x)?;
                Ok(if in_a {
                    *alpha
                } else if in_b {
                    *beta
                } else {
                    1.0
                })
            }
            Rule::GlClamped { p, p_inv } => {
                self.check(x)?;
                let m = x.as_matrix().expect("checked");
                let r = p_inv.mul(&m.mul(p)).column_norm(0);
                Ok(if r >= 2.0 {
                    0.5
                } else if r <= 0.5 {
                    2.0
                } else {
                    1.0 / r
                })
            }
            Rule::Table { values, default } => {
                self.check(x)?;
                Ok(values.get(x).copied().unwrap_or(*default))
            }
            Rule::Inverse { inner, a } => Ok(1.0 / inner.eval(&self.group.mul(x, a)?)?),
        }
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.group.matches(x) {
            Ok(())
        } else {
            Err(Error::MixedGroups)
        }
    }

    /// Per-step contraction factors `(γ_T, γ_S)` far out along the orbit:
    /// `‖Tⁿφ‖_∞ ~ γ_T⁻ⁿ` and `‖Sⁿφ‖_∞ ~ γ_S⁻ⁿ`, when the rule determines them.
    pub fn decay_rates(&self) -> Option<(f64, f64)> {
        match &self.rule {
            Rule::Constant(c) => Some((1.0 / c, *c)),
            Rule::Step { alpha, beta, .. } => Some((1.0 / alpha, *beta)),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut out = match &self.rule {
            Rule::Constant(c) => json!({"kind": "constant", "value": c}),
            Rule::Step { pair, alpha, beta } => json!({"kind": "step", "alpha": alpha, "beta": beta, "pair": pair.kind()}),
            Rule::GlClamped { p, .. } => json!({"kind": "gl_clamped", "P": p.to_rows()}),
            Rule::Table { values, default } => json!({
                "kind": "table",
                "default": default,
                "values": values.iter().map(|(g, v)| json!([g, v])).collect::<Vec<_>>(),
            }),
            Rule::Inverse { inner, a } => json!({"kind": "inverse", "a": a, "inner": inner.to_json()}),
        };
        out["bounds"] = json!([self.lo, self.hi]);
        out
    }
}

/// `α` on `A`, `β` on `B` and 1 elsewhere; continuous because the group is
/// discrete.
pub fn step_weight(pair: &TerminalPair, alpha: f64, beta: f64) -> Result<Weight> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::BadParameters(format!("alpha must lie in (0,1), got {alpha}")));
    }
    if !(beta > 1.0 && beta.is_finite()) {
        return Err(Error::BadParameters(format!("beta must lie in (1,inf), got {beta}")));
    }
    if !pair.group().is_discrete() {
        return Err(Error::NotDiscrete(pair.group().name()));
    }
    Ok(Weight {
        group: pair.group().clone(),
        rule: Rule::Step { pair: Box::new(pair.clone()), alpha, beta },
        lo: alpha,
        hi: beta,
    })
}

/// The clamped reciprocal first-column norm in coordinates conjugated by `P`.
pub fn gl_weight(group: &Group, p: &Matrix) -> Result<Weight> {
    let GroupKind::GeneralLinear { n } = group.kind() else {
        return Err(Error::BadParameters(format!("the clamped column weight lives on GL, not {}", group.name())));
    };
    if p.dim() != *n {
        return Err(Error::MixedGroups);
    }
    let p_inv = p.inverse()?;
    Ok(Weight { group: group.clone(), rule: Rule::GlClamped { p: p.clone(), p_inv }, lo: 0.5, hi: 2.0 })
}

/// `w'(x) = 1 / w(x·a)`, the weight of `T_{a,w}⁻¹ = T_{a⁻¹,w'}`.
pub fn inverse_weight(w: &Weight, a: &GroupElement) -> Result<Weight> {
    w.group.validate(a)?;
    let rule = match &w.rule {
        Rule::Constant(c) => Rule::Constant(1.0 / c),
        _ => Rule::Inverse { inner: Arc::new(w.clone()), a: a.clone() },
    };
    Ok(Weight { group: w.group.clone(), rule, lo: 1.0 / w.hi, hi: 1.0 / w.lo })
}
