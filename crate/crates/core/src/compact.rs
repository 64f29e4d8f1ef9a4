use std::collections::HashSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};

/// How a compact set came about.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Explicit,
    Ball { center: GroupElement, radius: u64 },
    SampleGrid,
}

/// A finite, nonempty, duplicate-free set of elements standing in for a
/// compact subset. Exact for discrete groups; a sample for `GL` and `S¹×ℝ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompactSet {
    elements: Vec<GroupElement>,
    provenance: Provenance,
}

impl CompactSet {
    pub fn new(group: &Group, elements: Vec<GroupElement>, provenance: Provenance) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyCompact);
        }
        for g in &elements {
            group.validate(g)?;
        }
        let elements = if group.is_discrete() {
            let mut seen = HashSet::with_capacity(elements.len());
            elements.into_iter().filter(|g| seen.insert(g.clone())).collect()
        } else {
            let mut kept: Vec<GroupElement> = Vec::with_capacity(elements.len());
            for g in elements {
                if !kept.iter().any(|k| group.approx_eq(k, &g)) {
                    kept.push(g);
                }
            }
            kept
        };
        Ok(CompactSet { elements, provenance })
    }

    pub fn explicit(group: &Group, elements: Vec<GroupElement>) -> Result<Self> {
        Self::new(group, elements, Provenance::Explicit)
    }

    /// The integer interval `{lo, ..., hi}` in `ℤ`.
    pub fn interval(lo: i64, hi: i64) -> Result<Self> {
        let z = Group::integers();
        Self::explicit(&z, (lo..=hi).map(GroupElement::int).collect())
    }

    /// Grid `{(2πi/angles, t_j)}` on `S¹×ℝ` with `t_j` evenly spaced over
    /// `[t_lo, t_hi]` (`t_steps ≥ 2` points, or just `t_lo` when 1).
    pub fn cylinder_grid(angles: usize, t_lo: f64, t_hi: f64, t_steps: usize) -> Result<Self> {
        let c = Group::cylinder();
        let mut elements = Vec::with_capacity(angles * t_steps);
        for i in 0..angles {
            let theta = std::f64::consts::TAU * i as f64 / angles as f64;
            for j in 0..t_steps {
                let t = if t_steps == 1 { t_lo } else { t_lo + (t_hi - t_lo) * j as f64 / (t_steps - 1) as f64 };
                elements.push(GroupElement::cylinder(theta, t));
            }
        }
        Self::new(&c, elements, Provenance::SampleGrid)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn contains(&self, group: &Group, g: &GroupElement) -> bool {
        self.elements.iter().any(|k| group.approx_eq(k, g))
    }

    /// `K·g`.
    pub fn translate(&self, group: &Group, g: &GroupElement) -> Result<CompactSet> {
        let elements = self.elements.iter().map(|k| group.mul(k, g)).collect::<Result<Vec<_>>>()?;
        Ok(CompactSet { elements, provenance: Provenance::Explicit })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "provenance": self.provenance,
            "size": self.elements.len(),
            "elements": self.elements,
        })
    }
}
