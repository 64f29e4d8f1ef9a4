//! JSON run configuration shared by the command-line front-end and the
//! examples.

use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{Group, GroupKind};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub group: GroupSpec,
    pub element: Value,
    #[serde(default)]
    pub pair: Option<PairSpec>,
    #[serde(default)]
    pub weight: Option<WeightSpec>,
    /// `None` selects the standard menu; an explicit empty list is an error.
    #[serde(default)]
    pub compacts: Option<Vec<CompactSpec>>,
    #[serde(default)]
    pub phis: Option<Vec<PhiSpec>>,
    #[serde(default)]
    pub p: Option<Vec<f64>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub output: Option<OutputSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum GroupSpec {
    Z {
        #[serde(default)]
        generators: Option<Vec<Value>>,
    },
    Zd {
        #[serde(alias = "d")]
        dim: usize,
        #[serde(default)]
        generators: Option<Vec<Value>>,
    },
    Zm {
        #[serde(alias = "m")]
        modulus: u64,
        #[serde(default)]
        generators: Option<Vec<Value>>,
    },
    F2 {
        #[serde(default)]
        generators: Option<Vec<Value>>,
    },
    Heisenberg {
        #[serde(default)]
        generators: Option<Vec<Value>>,
    },
    GL {
        n: usize,
    },
    S1xR {},
}

#[derive(Clone, Debug, Deserialize)]
pub struct PairSpec {
    #[serde(flatten)]
    pub kind: PairKind,
    /// Exchange `A` and `B` (a deliberately wrong pair).
    #[serde(default)]
    pub swap: bool,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairKind {
    Halfline {
        #[serde(default)]
        threshold: Option<f64>,
    },
    Pullback {
        hom: HomSpec,
        #[serde(default)]
        threshold: Option<f64>,
    },
    Gl {
        #[serde(default)]
        threshold: Option<f64>,
        #[serde(default, rename = "P")]
        p: Option<Value>,
        #[serde(default)]
        lambda_modulus: Option<f64>,
    },
    WordMetric {
        #[serde(default)]
        window: Option<usize>,
        #[serde(default)]
        max_scan: Option<u64>,
    },
    Explicit {
        #[serde(rename = "A")]
        a_set: Vec<Value>,
        #[serde(rename = "B")]
        b_set: Vec<Value>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum HomSpec {
    Projection { coordinate: usize },
    Linear { rows: Vec<Vec<i64>> },
    CylinderQuotient {},
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WeightSpec {
    Step {
        #[serde(default)]
        alpha: Option<f64>,
        #[serde(default)]
        beta: Option<f64>,
    },
    Constant {
        value: f64,
    },
    Gl {
        #[serde(default, rename = "P")]
        p: Option<Value>,
    },
    /// Explicit `[element, value]` pairs, `default` elsewhere.
    Table {
        values: Vec<(Value, f64)>,
        default: f64,
    },
    /// Seeded uniform values in `[lo, hi]` on every element of a finite group.
    Random {
        lo: f64,
        hi: f64,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CompactSpec {
    Ball {
        #[serde(default)]
        center: Option<Value>,
        radius: u64,
    },
    Explicit {
        elements: Vec<Value>,
    },
    Interval {
        lo: i64,
        hi: i64,
    },
    CylinderGrid {
        angles: usize,
        t_lo: f64,
        t_hi: f64,
        t_steps: usize,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiSpec {
    Delta {
        #[serde(default)]
        at: Option<Value>,
    },
    Random {
        #[serde(default)]
        count: Option<usize>,
        #[serde(default)]
        max_support: Option<usize>,
        #[serde(default)]
        radius: Option<usize>,
    },
    /// `[element, re]` or `[element, re, im]` entries.
    Values {
        entries: Vec<Vec<Value>>,
    },
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    pub n_max: u64,
    pub horizon: u64,
    pub window: usize,
    pub max_scan: u64,
    pub truncation: u64,
    pub period: u64,
    pub max_order: u64,
    pub ball_radius: u64,
    pub l_max: u64,
    pub ts_samples: usize,
    pub node_cap: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            n_max: 200,
            horizon: 512,
            window: crate::terminal::DEFAULT_WINDOW,
            max_scan: crate::terminal::DEFAULT_MAX_SCAN,
            truncation: 10,
            period: 150,
            max_order: 1000,
            ball_radius: 2,
            l_max: 32,
            ts_samples: 1000,
            node_cap: crate::metric::DEFAULT_NODE_CAP,
        }
    }
}

impl Budgets {
    fn validate(&self) -> Result<()> {
        let fields = [
            ("n_max", self.n_max),
            ("horizon", self.horizon),
            ("window", self.window as u64),
            ("max_scan", self.max_scan),
            ("period", self.period),
            ("max_order", self.max_order),
            ("l_max", self.l_max),
            ("ts_samples", self.ts_samples as u64),
            ("node_cap", self.node_cap as u64),
        ];
        for (name, v) in fields {
            if v == 0 {
                return Err(Error::Config(format!("budget {name} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub dir: Option<String>,
}

/// Command-line overrides applied on top of a parsed config.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub n_max: Option<u64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub p: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.budgets.validate()?;
        if let Some(ps) = &self.p {
            if ps.is_empty() {
                return Err(Error::Config("p list is empty".into()));
            }
            for &p in ps {
                crate::operator::check_p(p).map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        if matches!(&self.compacts, Some(c) if c.is_empty()) {
            return Err(Error::Config("compact list is empty".into()));
        }
        Ok(())
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(n) = o.n_max {
            self.budgets.n_max = n;
        }
        if o.alpha.is_some() || o.beta.is_some() {
            let (mut alpha, mut beta) = match &self.weight {
                Some(WeightSpec::Step { alpha, beta }) => (*alpha, *beta),
                None => (None, None),
                Some(_) => return Err(Error::Config("--alpha/--beta apply to step weights only".into())),
            };
            alpha = o.alpha.or(alpha);
            beta = o.beta.or(beta);
            self.weight = Some(WeightSpec::Step { alpha, beta });
        }
        if let Some(p) = &o.p {
            self.p = Some(p.clone());
        }
        self.validate()
    }

    pub fn p_values(&self) -> Vec<f64> {
        self.p.clone().unwrap_or_else(|| vec![1.0, 2.0])
    }

    pub fn build_group(&self) -> Result<Group> {
        let (kind, gens) = match &self.group {
            GroupSpec::Z { generators } => (GroupKind::Lattice { dim: 1 }, generators),
            GroupSpec::Zd { dim, generators } => (GroupKind::Lattice { dim: *dim }, generators),
            GroupSpec::Zm { modulus, generators } => (GroupKind::Cyclic { modulus: *modulus }, generators),
            GroupSpec::F2 { generators } => (GroupKind::Free2, generators),
            GroupSpec::Heisenberg { generators } => (GroupKind::Heisenberg, generators),
            GroupSpec::GL { n } => (GroupKind::GeneralLinear { n: *n }, &None),
            GroupSpec::S1xR {} => (GroupKind::Cylinder, &None),
        };
        let group = Group::new(kind)?;
        match gens {
            Some(gens) => {
                let parsed = gens.iter().map(|g| group.parse_element(g)).collect::<Result<Vec<_>>>()?;
                group.with_generators(parsed)
            }
            None => Ok(group),
        }
    }
}

/// Parses `"1,2.5"` into p values.
pub fn parse_p_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Config(format!("cannot read p value {t:?}"))))
        .collect()
}
