//! Concrete groups: integer lattices, cyclic groups, the free group on two
//! generators, the discrete Heisenberg group, `GL(n, ℂ)`, the cylinder
//! `S¹ × ℝ` and the additive reals.
//!
//! Elements are plain values; every operation goes through a [`Group`]
//! descriptor, which rejects elements of the wrong shape with
//! [`Error::MixedGroups`].

mod free;
mod matrix;

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use rand::Rng;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub use free::{FreeWord, Letter};
pub use matrix::{Matrix, DET_FLOOR, MATRIX_TOLERANCE};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// `ℤ^dim`; `dim == 1` is the integers.
    Lattice { dim: usize },
    /// `ℤ/mℤ`.
    Cyclic { modulus: u64 },
    /// Free group on `x, y`.
    Free2,
    /// Integer triples with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
    Heisenberg,
    GeneralLinear { n: usize },
    /// `S¹ × ℝ`, angle taken mod 2π.
    Cylinder,
    /// Additive reals; used as a homomorphism target.
    Reals,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Lattice { dim: 1 } => write!(f, "Z"),
            GroupKind::Lattice { dim } => write!(f, "Z^{dim}"),
            GroupKind::Cyclic { modulus } => write!(f, "Z_{modulus}"),
            GroupKind::Free2 => write!(f, "F2"),
            GroupKind::Heisenberg => write!(f, "Heisenberg"),
            GroupKind::GeneralLinear { n } => write!(f, "GL({n},C)"),
            GroupKind::Cylinder => write!(f, "S1xR"),
            GroupKind::Reals => write!(f, "R"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum GroupElement {
    Lattice(Vec<i64>),
    Residue(u64),
    Word(FreeWord),
    Heisenberg([i64; 3]),
    Matrix(Matrix),
    Cylinder { angle: f64, t: f64 },
    Real(f64),
}

impl GroupElement {
    pub fn int(v: i64) -> Self {
        GroupElement::Lattice(vec![v])
    }

    pub fn lattice(v: &[i64]) -> Self {
        GroupElement::Lattice(v.to_vec())
    }

    pub fn heis(a: i64, b: i64, c: i64) -> Self {
        GroupElement::Heisenberg([a, b, c])
    }

    pub fn word(s: &str) -> Result<Self> {
        Ok(GroupElement::Word(FreeWord::parse(s)?))
    }

    pub fn cylinder(angle: f64, t: f64) -> Self {
        GroupElement::Cylinder { angle: angle.rem_euclid(TAU), t }
    }

    /// Value of a one-dimensional element (`ℤ` or `ℝ`) as a real number.
    pub fn line_value(&self) -> Option<f64> {
        match self {
            GroupElement::Lattice(v) if v.len() == 1 => Some(v[0] as f64),
            GroupElement::Real(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            GroupElement::Matrix(m) => Some(m),
            _ => None,
        }
    }

    /// JSON literal in the configuration format.
    pub fn to_json(&self) -> Value {
        match self {
            GroupElement::Lattice(v) if v.len() == 1 => json!(v[0]),
            GroupElement::Lattice(v) => json!(v),
            GroupElement::Residue(r) => json!(r),
            GroupElement::Word(w) => json!(w.to_string()),
            GroupElement::Heisenberg(h) => json!(h),
            GroupElement::Matrix(m) => json!(m.to_rows()),
            GroupElement::Cylinder { angle, t } => json!([angle, t]),
            GroupElement::Real(x) => json!(x),
        }
    }

    fn variant_index(&self) -> u8 {
        match self {
            GroupElement::Lattice(_) => 0,
            GroupElement::Residue(_) => 1,
            GroupElement::Word(_) => 2,
            GroupElement::Heisenberg(_) => 3,
            GroupElement::Matrix(_) => 4,
            GroupElement::Cylinder { .. } => 5,
            GroupElement::Real(_) => 6,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Lattice(v) if v.len() == 1 => write!(f, "{}", v[0]),
            GroupElement::Lattice(v) => write!(f, "{v:?}"),
            GroupElement::Residue(r) => write!(f, "{r}"),
            GroupElement::Word(w) => write!(f, "{w}"),
            GroupElement::Heisenberg([a, b, c]) => write!(f, "({a},{b},{c})"),
            GroupElement::Matrix(m) => write!(f, "{:?}", m.to_rows()),
            GroupElement::Cylinder { angle, t } => write!(f, "({angle},{t})"),
            GroupElement::Real(x) => write!(f, "{x}"),
        }
    }
}

// Exact (bitwise for floats) comparison so elements can key maps.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        use GroupElement::*;
        match (self, other) {
            (Lattice(a), Lattice(b)) => a.cmp(b),
            (Residue(a), Residue(b)) => a.cmp(b),
            (Word(a), Word(b)) => a.cmp(b),
            (Heisenberg(a), Heisenberg(b)) => a.cmp(b),
            (Matrix(a), Matrix(b)) => a.cmp(b),
            (Cylinder { angle: a1, t: t1 }, Cylinder { angle: a2, t: t2 }) => {
                a1.total_cmp(a2).then(t1.total_cmp(t2))
            }
            (Real(a), Real(b)) => a.total_cmp(b),
            _ => self.variant_index().cmp(&other.variant_index()),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.variant_index().hash(state);
        match self {
            GroupElement::Lattice(v) => v.hash(state),
            GroupElement::Residue(r) => r.hash(state),
            GroupElement::Word(w) => w.hash(state),
            GroupElement::Heisenberg(h) => h.hash(state),
            GroupElement::Matrix(m) => m.hash(state),
            GroupElement::Cylinder { angle, t } => {
                angle.to_bits().hash(state);
                t.to_bits().hash(state);
            }
            GroupElement::Real(x) => x.to_bits().hash(state),
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// A group from the supported menu together with its generating set.
#[derive(Clone, Debug, PartialEq)]
pub struct Group {
    kind: GroupKind,
    generators: Vec<GroupElement>,
    custom_generators: bool,
}

impl Group {
    pub fn new(kind: GroupKind) -> Result<Self> {
        match &kind {
            GroupKind::Lattice { dim: 0 } => {
                return Err(Error::Config("lattice dimension must be positive".into()))
            }
            GroupKind::Cyclic { modulus: 0 } => {
                return Err(Error::Config("modulus must be positive".into()))
            }
            GroupKind::GeneralLinear { n: 0 } => {
                return Err(Error::Config("matrix size must be positive".into()))
            }
            _ => {}
        }
        let generators = default_generators(&kind);
        Ok(Group { kind, generators, custom_generators: false })
    }

    pub fn integers() -> Self {
        Self::new(GroupKind::Lattice { dim: 1 }).unwrap()
    }

    pub fn lattice(dim: usize) -> Result<Self> {
        Self::new(GroupKind::Lattice { dim })
    }

    pub fn cyclic(modulus: u64) -> Result<Self> {
        Self::new(GroupKind::Cyclic { modulus })
    }

    pub fn free2() -> Self {
        Self::new(GroupKind::Free2).unwrap()
    }

    pub fn heisenberg() -> Self {
        Self::new(GroupKind::Heisenberg).unwrap()
    }

    pub fn general_linear(n: usize) -> Result<Self> {
        Self::new(GroupKind::GeneralLinear { n })
    }

    pub fn cylinder() -> Self {
        Self::new(GroupKind::Cylinder).unwrap()
    }

    pub fn reals() -> Self {
        Self::new(GroupKind::Reals).unwrap()
    }

    /// Replaces the default generating set. The set must be closed under
    /// inverses and must not contain the identity.
    pub fn with_generators(mut self, generators: Vec<GroupElement>) -> Result<Self> {
        if !self.is_finitely_generated() {
            return Err(Error::NotFinitelyGenerated(self.kind.to_string()));
        }
        let mut gens: Vec<GroupElement> = Vec::new();
        for g in generators {
            self.validate(&g)?;
            if self.is_identity(&g) {
                return Err(Error::Config(format!("generating set contains the identity {g}")));
            }
            if !gens.contains(&g) {
                gens.push(g);
            }
        }
        for g in &gens {
            let gi = self.inv(g)?;
            if !gens.contains(&gi) {
                return Err(Error::Config(format!("generating set is not symmetric: {g} has no inverse in it")));
            }
        }
        self.generators = gens;
        self.custom_generators = true;
        Ok(self)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn has_default_generators(&self) -> bool {
        !self.custom_generators
    }

    pub fn is_discrete(&self) -> bool {
        matches!(
            self.kind,
            GroupKind::Lattice { .. } | GroupKind::Cyclic { .. } | GroupKind::Free2 | GroupKind::Heisenberg
        )
    }

    pub fn is_finitely_generated(&self) -> bool {
        self.is_discrete()
    }

    /// Whether `g` has the shape of an element of this group.
    pub fn matches(&self, g: &GroupElement) -> bool {
        match (&self.kind, g) {
            (GroupKind::Lattice { dim }, GroupElement::Lattice(v)) => v.len() == *dim,
            (GroupKind::Cyclic { modulus }, GroupElement::Residue(r)) => r < modulus,
            (GroupKind::Free2, GroupElement::Word(_)) => true,
            (GroupKind::Heisenberg, GroupElement::Heisenberg(_)) => true,
            (GroupKind::GeneralLinear { n }, GroupElement::Matrix(m)) => m.dim() == *n,
            (GroupKind::Cylinder, GroupElement::Cylinder { .. }) => true,
            (GroupKind::Reals, GroupElement::Real(_)) => true,
            _ => false,
        }
    }

    /// Shape check plus the element invariants (reduced words, determinant floor).
    pub fn validate(&self, g: &GroupElement) -> Result<()> {
        if !self.matches(g) {
            return Err(Error::MixedGroups);
        }
        match g {
            GroupElement::Word(w) if !w.is_reduced() => {
                Err(Error::InvalidElement(format!("word {w} is not freely reduced")))
            }
            GroupElement::Matrix(m) => m.check_invertible(),
            GroupElement::Cylinder { angle, t } if !(angle.is_finite() && t.is_finite()) => {
                Err(Error::InvalidElement("non-finite cylinder coordinate".into()))
            }
            GroupElement::Real(x) if !x.is_finite() => Err(Error::InvalidElement("non-finite real".into())),
            _ => Ok(()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match &self.kind {
            GroupKind::Lattice { dim } => GroupElement::Lattice(vec![0; *dim]),
            GroupKind::Cyclic { .. } => GroupElement::Residue(0),
            GroupKind::Free2 => GroupElement::Word(FreeWord::identity()),
            GroupKind::Heisenberg => GroupElement::Heisenberg([0; 3]),
            GroupKind::GeneralLinear { n } => GroupElement::Matrix(Matrix::identity(*n)),
            GroupKind::Cylinder => GroupElement::Cylinder { angle: 0.0, t: 0.0 },
            GroupKind::Reals => GroupElement::Real(0.0),
        }
    }

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        if !self.matches(g) || !self.matches(h) {
            return Err(Error::MixedGroups);
        }
        use GroupElement::*;
        Ok(match (g, h) {
            (Lattice(a), Lattice(b)) => Lattice(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            (Residue(a), Residue(b)) => {
                let GroupKind::Cyclic { modulus } = self.kind else { unreachable!() };
                Residue(((*a as u128 + *b as u128) % modulus as u128) as u64)
            }
            (Word(a), Word(b)) => Word(a.mul(b)),
            (Heisenberg([a, b, c]), Heisenberg([a2, b2, c2])) => Heisenberg([a + a2, b + b2, c + c2 + a * b2]),
            (Matrix(a), Matrix(b)) => Matrix(a.mul(b)),
            (Cylinder { angle: a1, t: t1 }, Cylinder { angle: a2, t: t2 }) => {
                GroupElement::cylinder(a1 + a2, t1 + t2)
            }
            (Real(a), Real(b)) => Real(a + b),
            _ => unreachable!("shapes checked above"),
        })
    }

    pub fn inv(&self, g: &GroupElement) -> Result<GroupElement> {
        if !self.matches(g) {
            return Err(Error::MixedGroups);
        }
        use GroupElement::*;
        Ok(match g {
            Lattice(a) => Lattice(a.iter().map(|x| -x).collect()),
            Residue(a) => {
                let GroupKind::Cyclic { modulus } = self.kind else { unreachable!() };
                Residue((modulus - a) % modulus)
            }
            Word(w) => Word(w.inverse()),
            Heisenberg([a, b, c]) => Heisenberg([-a, -b, a * b - c]),
            Matrix(m) => Matrix(m.inverse()?),
            Cylinder { angle, t } => GroupElement::cylinder(-angle, -t),
            Real(x) => Real(-x),
        })
    }

    /// `g^n` for any integer `n`, by repeated squaring.
    pub fn pow(&self, g: &GroupElement, n: i64) -> Result<GroupElement> {
        let base = if n < 0 { self.inv(g)? } else { g.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    /// Equality up to the matrix/float tolerance; exact for discrete kinds.
    pub fn approx_eq(&self, g: &GroupElement, h: &GroupElement) -> bool {
        match (g, h) {
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => a.approx_eq(b, MATRIX_TOLERANCE),
            (GroupElement::Cylinder { angle: a1, t: t1 }, GroupElement::Cylinder { angle: a2, t: t2 }) => {
                let d = (a1 - a2).rem_euclid(TAU);
                d.min(TAU - d) <= MATRIX_TOLERANCE && (t1 - t2).abs() <= MATRIX_TOLERANCE
            }
            (GroupElement::Real(a), GroupElement::Real(b)) => (a - b).abs() <= MATRIX_TOLERANCE,
            _ => g == h,
        }
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        self.approx_eq(g, &self.identity())
    }

    /// Random element. Discrete kinds take a random walk of length at most
    /// `radius` over the generators; `GL` draws entries from the unit square
    /// of ℂ; the continuous kinds draw coordinates from `[-radius, radius]`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, radius: usize) -> GroupElement {
        match &self.kind {
            GroupKind::GeneralLinear { n } => loop {
                let rows: Vec<Vec<Complex64>> = (0..*n)
                    .map(|_| (0..*n).map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))).collect())
                    .collect();
                let m = Matrix::from_rows(&rows).expect("square by construction");
                if m.det().norm() > 1e-3 {
                    return GroupElement::Matrix(m);
                }
            },
            GroupKind::Cylinder => {
                let r = radius.max(1) as f64;
                GroupElement::cylinder(rng.gen_range(0.0..TAU), rng.gen_range(-r..=r))
            }
            GroupKind::Reals => {
                let r = radius.max(1) as f64;
                GroupElement::Real(rng.gen_range(-r..=r))
            }
            _ => {
                let mut g = self.identity();
                if self.generators.is_empty() {
                    return g;
                }
                let len = rng.gen_range(0..=radius);
                for _ in 0..len {
                    let s = &self.generators[rng.gen_range(0..self.generators.len())];
                    g = self.mul(&g, s).expect("generators belong to the group");
                }
                g
            }
        }
    }

    /// Parses an element literal: integers / integer arrays for lattices,
    /// an integer for residues, a string over `xXyY` for `F2`, `[a,b,c]` for
    /// Heisenberg, row-major `[re, im]` pairs (or plain reals) for `GL`,
    /// `[angle, t]` for the cylinder and a number for `R`. The string `"e"`
    /// denotes the identity in every group.
    pub fn parse_element(&self, v: &Value) -> Result<GroupElement> {
        if v.as_str() == Some("e") {
            return Ok(self.identity());
        }
        let bad = || Error::InvalidElement(format!("cannot read {v} as an element of {}", self.kind));
        let g = match &self.kind {
            GroupKind::Lattice { dim } => {
                let coords = match v {
                    Value::Number(_) => vec![v.as_i64().ok_or_else(bad)?],
                    Value::Array(items) => items.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<Result<Vec<_>>>()?,
                    _ => return Err(bad()),
                };
                if coords.len() != *dim {
                    return Err(bad());
                }
                GroupElement::Lattice(coords)
            }
            GroupKind::Cyclic { modulus } => {
                let r = v.as_i64().ok_or_else(bad)?;
                GroupElement::Residue(r.rem_euclid(*modulus as i64) as u64)
            }
            GroupKind::Free2 => GroupElement::Word(FreeWord::parse(v.as_str().ok_or_else(bad)?)?),
            GroupKind::Heisenberg => {
                let items = v.as_array().ok_or_else(bad)?;
                if items.len() != 3 {
                    return Err(bad());
                }
                let c: Vec<i64> = items.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<Result<_>>()?;
                GroupElement::Heisenberg([c[0], c[1], c[2]])
            }
            GroupKind::GeneralLinear { n } => {
                let rows = v.as_array().ok_or_else(bad)?;
                if rows.len() != *n {
                    return Err(bad());
                }
                let mut parsed = Vec::with_capacity(*n);
                for row in rows {
                    let row = row.as_array().ok_or_else(bad)?;
                    let entries = row.iter().map(|e| parse_complex(e).ok_or_else(bad)).collect::<Result<Vec<_>>>()?;
                    parsed.push(entries);
                }
                GroupElement::Matrix(Matrix::from_rows(&parsed)?)
            }
            GroupKind::Cylinder => {
                let items = v.as_array().ok_or_else(bad)?;
                if items.len() != 2 {
                    return Err(bad());
                }
                let angle = items[0].as_f64().ok_or_else(bad)?;
                let t = items[1].as_f64().ok_or_else(bad)?;
                GroupElement::cylinder(angle, t)
            }
            GroupKind::Reals => GroupElement::Real(v.as_f64().ok_or_else(bad)?),
        };
        self.validate(&g)?;
        Ok(g)
    }
}

fn parse_complex(v: &Value) -> Option<Complex64> {
    match v {
        Value::Number(x) => Some(Complex64::new(x.as_f64()?, 0.0)),
        Value::Array(p) if p.len() == 2 => Some(Complex64::new(p[0].as_f64()?, p[1].as_f64()?)),
        _ => None,
    }
}

fn default_generators(kind: &GroupKind) -> Vec<GroupElement> {
    match kind {
        GroupKind::Lattice { dim } => {
            let mut gens = Vec::with_capacity(2 * dim);
            for i in 0..*dim {
                for s in [1, -1] {
                    let mut v = vec![0; *dim];
                    v[i] = s;
                    gens.push(GroupElement::Lattice(v));
                }
            }
            gens
        }
        GroupKind::Cyclic { modulus } => match modulus {
            1 => vec![],
            2 => vec![GroupElement::Residue(1)],
            m => vec![GroupElement::Residue(1), GroupElement::Residue(m - 1)],
        },
        GroupKind::Free2 => Letter::ALL.iter().map(|&l| GroupElement::Word(FreeWord::from_letters([l]))).collect(),
        GroupKind::Heisenberg => vec![
            GroupElement::heis(1, 0, 0),
            GroupElement::heis(-1, 0, 0),
            GroupElement::heis(0, 1, 0),
            GroupElement::heis(0, -1, 0),
        ],
        _ => vec![],
    }
}
