//! Right-invariant word metrics on the discrete groups of the menu.
//!
//! `d(x, y) = |x·y⁻¹|`, where `|g|` is the length of a shortest word in the
//! generating set equal to `g`. Lengths come from a breadth-first search of
//! the Cayley graph, cached across queries. For the default generating sets
//! closed forms are used instead:
//!
//! * `ℤ^d` with `±eᵢ`: the L1 norm;
//! * `ℤ_m` with `±1`: `min(r, m - r)`;
//! * `F₂` with `x^{±1}, y^{±1}`: the reduced word length;
//! * Heisenberg with `(±1,0,0), (0,±1,0)`: a lattice-path area count, see
//!   [`heisenberg_word_length`].
//!
//! The BFS route stays available through [`WordMetric::bfs_length`] and is
//! the reference the closed forms are tested against.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::compact::{CompactSet, Provenance};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, GroupKind};

pub const DEFAULT_NODE_CAP: usize = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ClosedForm {
    L1,
    Cyclic(u64),
    FreeLength,
    Heisenberg,
}

#[derive(Debug)]
struct BfsCache {
    dist: HashMap<GroupElement, u64>,
    /// `layers[r]` is the sphere of radius `r` around the identity.
    layers: Vec<Vec<GroupElement>>,
    exhausted: bool,
}

#[derive(Debug)]
pub struct WordMetric {
    group: Group,
    closed_form: Option<ClosedForm>,
    node_cap: usize,
    cache: Mutex<BfsCache>,
}

impl WordMetric {
    pub fn new(group: &Group) -> Result<Self> {
        let mut m = Self::bfs_only(group)?;
        if group.has_default_generators() {
            m.closed_form = match group.kind() {
                GroupKind::Lattice { .. } => Some(ClosedForm::L1),
                GroupKind::Cyclic { modulus } => Some(ClosedForm::Cyclic(*modulus)),
                GroupKind::Free2 => Some(ClosedForm::FreeLength),
                GroupKind::Heisenberg => Some(ClosedForm::Heisenberg),
                _ => None,
            };
        }
        Ok(m)
    }

    /// A metric that answers every query by breadth-first search.
    pub fn bfs_only(group: &Group) -> Result<Self> {
        if !group.is_finitely_generated() {
            return Err(Error::NotFinitelyGenerated(group.name()));
        }
        let e = group.identity();
        let mut dist = HashMap::new();
        dist.insert(e.clone(), 0);
        Ok(WordMetric {
            group: group.clone(),
            closed_form: None,
            node_cap: DEFAULT_NODE_CAP,
            cache: Mutex::new(BfsCache { dist, layers: vec![vec![e]], exhausted: false }),
        })
    }

    pub fn with_node_cap(mut self, cap: usize) -> Self {
        self.node_cap = cap;
        self
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Word length `|g|`.
    pub fn length(&self, g: &GroupElement) -> Result<u64> {
        if !self.group.matches(g) {
            return Err(Error::MixedGroups);
        }
        match (self.closed_form, g) {
            (Some(ClosedForm::L1), GroupElement::Lattice(v)) => Ok(v.iter().map(|x| x.unsigned_abs()).sum()),
            (Some(ClosedForm::Cyclic(m)), GroupElement::Residue(r)) => Ok((*r).min(m - r)),
            (Some(ClosedForm::FreeLength), GroupElement::Word(w)) => Ok(w.len() as u64),
            (Some(ClosedForm::Heisenberg), GroupElement::Heisenberg([a, b, c])) => Ok(heisenberg_word_length(*a, *b, *c)),
            _ => self.bfs_length(g),
        }
    }

    /// `d(x, y) = |x·y⁻¹|`.
    pub fn distance(&self, x: &GroupElement, y: &GroupElement) -> Result<u64> {
        let g = self.group.mul(x, &self.group.inv(y)?)?;
        self.length(&g)
    }

    /// Word length by breadth-first search from the identity.
    pub fn bfs_length(&self, g: &GroupElement) -> Result<u64> {
        if !self.group.matches(g) {
            return Err(Error::MixedGroups);
        }
        let mut cache = self.cache.lock().expect("metric cache poisoned");
        loop {
            if let Some(&d) = cache.dist.get(g) {
                return Ok(d);
            }
            if cache.exhausted {
                return Err(Error::InvalidElement(format!("{g} is not reachable from the generators")));
            }
            self.expand(&mut cache)?;
        }
    }

    /// Closed ball `{y : d(center, y) ≤ radius} = B_e(radius)·center`.
    pub fn ball(&self, center: &GroupElement, radius: u64) -> Result<CompactSet> {
        self.group.validate(center)?;
        let mut cache = self.cache.lock().expect("metric cache poisoned");
        while (cache.layers.len() as u64) <= radius && !cache.exhausted {
            self.expand(&mut cache)?;
        }
        let mut elements = Vec::new();
        for layer in cache.layers.iter().take(radius as usize + 1) {
            for u in layer {
                elements.push(self.group.mul(u, center)?);
            }
        }
        drop(cache);
        CompactSet::new(&self.group, elements, Provenance::Ball { center: center.clone(), radius })
    }

    /// Sphere sizes `|S_e(r)|` for `r = 0..=radius`.
    pub fn sphere_sizes(&self, radius: u64) -> Result<Vec<usize>> {
        let mut cache = self.cache.lock().expect("metric cache poisoned");
        while (cache.layers.len() as u64) <= radius && !cache.exhausted {
            self.expand(&mut cache)?;
        }
        let mut sizes: Vec<usize> = cache.layers.iter().take(radius as usize + 1).map(Vec::len).collect();
        sizes.resize(radius as usize + 1, 0);
        Ok(sizes)
    }

    fn expand(&self, cache: &mut BfsCache) -> Result<()> {
        let r = cache.layers.len() as u64;
        let mut next = Vec::new();
        let mut fresh: HashMap<GroupElement, u64> = HashMap::new();
        for g in cache.layers.last().expect("at least the identity layer") {
            for s in self.group.generators() {
                let h = self.group.mul(s, g)?;
                if !cache.dist.contains_key(&h) && !fresh.contains_key(&h) {
                    fresh.insert(h.clone(), r);
                    next.push(h);
                }
            }
        }
        if cache.dist.len() + fresh.len() > self.node_cap {
            return Err(Error::SearchBudgetExceeded(self.node_cap));
        }
        if next.is_empty() {
            cache.exhausted = true;
        }
        cache.dist.extend(fresh);
        cache.layers.push(next);
        Ok(())
    }
}

/// Word length of `(a, b, c)` in the discrete Heisenberg group with respect
/// to the generators `(±1,0,0), (0,±1,0)`.
///
/// A word traces a lattice path from the origin to `(a, b)` in `ℤ²` and the
/// third coordinate equals `∫ x dy` along that path. Closing the path with
/// the segments `(a,b) → (0,b) → (0,0)` adds nothing to `∫ x dy`, so `c` is
/// the signed area of the closed loop. For `a, b ≥ 0` and path length `L`
/// the achievable values of `c` form the integer interval
/// `[ab - M(L,b,a), M(L,a,b)]`, where `M(L,a,b)` is the largest area of a
/// rectangle `[0,W]×[b-H,b]` with `W ≥ a`, `H ≥ b`, `W + H = (L+a+b)/2`.
/// The other sign patterns follow from the reflections
/// `(a,b,c) ↦ (-a,b,-c)` and `(a,b,c) ↦ (-a,-b,c)`, which preserve lengths.
pub fn heisenberg_word_length(a: i64, b: i64, c: i64) -> u64 {
    let c = if (a < 0) != (b < 0) { -(c as i128) } else { c as i128 };
    let a = a.unsigned_abs() as i128;
    let b = b.unsigned_abs() as i128;
    let max_area = |l: i128, a: i128, b: i128| -> i128 {
        let s = (l + a + b) / 2;
        let w = (s / 2).clamp(a, s - b);
        w * (s - w)
    };
    let mut l = a + b;
    loop {
        let hi = max_area(l, a, b);
        let lo = a * b - max_area(l, b, a);
        if lo <= c && c <= hi {
            return l as u64;
        }
        l += 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances_on_lattices() {
        let z = Group::integers();
        let m = WordMetric::new(&z).unwrap();
        assert_eq!(m.distance(&GroupElement::int(0), &GroupElement::int(5)).unwrap(), 5);
        let z2 = Group::lattice(2).unwrap();
        let m2 = WordMetric::new(&z2).unwrap();
        assert_eq!(m2.distance(&GroupElement::lattice(&[0, 0]), &GroupElement::lattice(&[3, -4])).unwrap(), 7);
    }

    #[test]
    fn heisenberg_commutator_has_length_four() {
        let h = Group::heisenberg();
        let m = WordMetric::new(&h).unwrap();
        let e = h.identity();
        assert_eq!(m.distance(&e, &GroupElement::heis(0, 0, 1)).unwrap(), 4);
        assert_eq!(m.bfs_length(&GroupElement::heis(0, 0, 1)).unwrap(), 4);
    }

    #[test]
    fn balls() {
        let z = Group::integers();
        let m = WordMetric::new(&z).unwrap();
        let b = m.ball(&GroupElement::int(0), 2).unwrap();
        let mut v: Vec<_> = b.elements().to_vec();
        v.sort();
        assert_eq!(v, (-2..=2).map(GroupElement::int).collect::<Vec<_>>());
        let z2 = Group::lattice(2).unwrap();
        assert_eq!(WordMetric::new(&z2).unwrap().ball(&z2.identity(), 1).unwrap().len(), 5);
        let f = Group::free2();
        assert_eq!(WordMetric::new(&f).unwrap().ball(&f.identity(), 2).unwrap().len(), 17);
    }

    #[test]
    fn finite_group_exhausts() {
        let z6 = Group::cyclic(6).unwrap();
        let m = WordMetric::new(&z6).unwrap();
        assert_eq!(m.ball(&z6.identity(), 10).unwrap().len(), 6);
        assert_eq!(m.sphere_sizes(4).unwrap(), vec![1, 2, 2, 1, 0]);
    }

    #[test]
    fn node_cap_enforced() {
        let f = Group::free2();
        let m = WordMetric::new(&f).unwrap().with_node_cap(100);
        assert_eq!(m.ball(&f.identity(), 6).unwrap_err(), Error::SearchBudgetExceeded(100));
    }

    #[test]
    fn not_finitely_generated() {
        assert!(matches!(WordMetric::new(&Group::cylinder()), Err(Error::NotFinitelyGenerated(_))));
        assert!(matches!(WordMetric::new(&Group::general_linear(2).unwrap()), Err(Error::NotFinitelyGenerated(_))));
    }

    #[test]
    fn custom_generators_use_bfs() {
        let z = Group::integers()
            .with_generators(vec![GroupElement::int(2), GroupElement::int(-2), GroupElement::int(3), GroupElement::int(-3)])
            .unwrap();
        let m = WordMetric::new(&z).unwrap();
        assert_eq!(m.length(&GroupElement::int(1)).unwrap(), 2);
        assert_eq!(m.length(&GroupElement::int(7)).unwrap(), 3);
    }
}
