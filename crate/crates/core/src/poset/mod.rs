//! Finite posets stored as Hasse diagrams with a precomputed reachability
//! relation.
//!
//! Face posets, localization posets and critical posets all share this
//! representation. Elements are addressed by dense indices; every element
//! also carries an [`ElementKey`] and an optional grade (cell dimension).

mod iso;
mod localization;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

pub use iso::{are_isomorphic, ISOMORPHISM_SIZE_LIMIT};
pub use localization::{critical_poset, critical_subposet, localization, Localization, QuotientClass};

/// Identity of a poset element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKey {
    /// A single simplex (face-poset element or unmatched class).
    Cell(Simplex),
    /// A matched pair `[σ ∼ τ]` with `σ ≺ τ`.
    Class(Simplex, Simplex),
    Named(String),
}

impl ElementKey {
    pub fn as_cell(&self) -> Option<&Simplex> {
        match self {
            ElementKey::Cell(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Debug for ElementKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementKey::Cell(s) => write!(f, "{s}"),
            ElementKey::Class(a, b) => write!(f, "[{a},{b}]"),
            ElementKey::Named(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for ElementKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone)]
pub struct FinitePoset {
    keys: Vec<ElementKey>,
    grades: Vec<Option<usize>>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    above: Vec<FixedBitSet>,
    position: HashMap<ElementKey, usize>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.keys == other.keys && self.grades == other.grades && self.up == other.up
    }
}

impl Eq for FinitePoset {}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .map(|(x, y)| format!("{:?} < {:?}", self.keys[x], self.keys[y]))
            .collect();
        f.debug_struct("FinitePoset")
            .field("elements", &self.keys)
            .field("covers", &covers)
            .finish()
    }
}

/// Result of [`FinitePoset::is_thin_with_bottom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinnessReport {
    pub thin: bool,
    /// First interval `[x, y]` whose interior does not have exactly two
    /// elements; `None` for `x` stands for the adjoined bottom.
    pub violation: Option<ThinnessViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinnessViolation {
    pub lower: Option<ElementKey>,
    pub upper: ElementKey,
    pub interior: usize,
}

impl FinitePoset {
    /// Builds the poset generated by `relations` (pairs `x < y`), keeping
    /// only the irredundant cover pairs. Fails if the relation has a cycle.
    pub fn from_relations(
        elements: Vec<(ElementKey, Option<usize>)>,
        relations: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = elements.len();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (x, y) in relations {
            assert!(x < n && y < n, "relation refers to a missing element");
            if x == y {
                return Err(Error::CyclicRelation(format!("{:?}", elements[x].0)));
            }
            succ[x].push(y);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }

        let mut indegree = vec![0usize; n];
        for s in &succ {
            for &y in s {
                indegree[y] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = queue.pop_front() {
            topo.push(x);
            for &y in &succ[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&x| indegree[x] > 0).unwrap();
            return Err(Error::CyclicRelation(format!("{:?}", elements[stuck].0)));
        }

        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for &x in topo.iter().rev() {
            let mut reach = FixedBitSet::with_capacity(n);
            for &y in &succ[x] {
                reach.insert(y);
                reach.union_with(&above[y]);
            }
            above[x] = reach;
        }

        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for x in 0..n {
            let mut implied = FixedBitSet::with_capacity(n);
            for &z in &succ[x] {
                implied.union_with(&above[z]);
            }
            for &y in &succ[x] {
                if !implied.contains(y) {
                    up[x].push(y);
                    down[y].push(x);
                }
            }
        }

        let (keys, grades): (Vec<_>, Vec<_>) = elements.into_iter().unzip();
        let position = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Ok(FinitePoset {
            keys,
            grades,
            up,
            down,
            above,
            position,
        })
    }

    /// Elements indexed `0..n` named by their index, with the given order
    /// relations. Handy for chains, antichains and other small examples.
    pub fn from_named(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let elements = (0..n).map(|i| (ElementKey::Named(i.to_string()), None)).collect();
        Self::from_relations(elements, relations.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> &ElementKey {
        &self.keys[i]
    }

    pub fn keys(&self) -> &[ElementKey] {
        &self.keys
    }

    pub fn grade(&self, i: usize) -> Option<usize> {
        self.grades[i]
    }

    pub fn position(&self, key: &ElementKey) -> Option<usize> {
        self.position.get(key).copied()
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// All cover pairs `(x, y)` with `x ⋖ y`, sorted.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    pub fn num_covers(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y)
    }

    /// Strict upset of `x` as a bitset.
    pub fn strictly_above(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.down[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up[x].is_empty()).collect()
    }

    /// Number of elements of each grade; ungraded elements are skipped.
    pub fn grade_counts(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for g in self.grades.iter().flatten() {
            if counts.len() <= *g {
                counts.resize(g + 1, 0);
            }
            counts[*g] += 1;
        }
        counts
    }

    /// Subposet induced on `members` (in the given order), with covers
    /// recomputed from the full order of `self`.
    pub fn induced_subposet(&self, members: &[usize]) -> FinitePoset {
        let n = self.len();
        let mut mask = FixedBitSet::with_capacity(n);
        for &m in members {
            mask.insert(m);
        }
        let local: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut relations = Vec::new();
        for &x in members {
            let mut reach = self.above[x].clone();
            reach.intersect_with(&mask);
            let mut implied = FixedBitSet::with_capacity(n);
            for z in reach.ones() {
                implied.union_with(&self.above[z]);
            }
            for y in reach.ones() {
                if !implied.contains(y) {
                    relations.push((local[&x], local[&y]));
                }
            }
        }
        let elements = members
            .iter()
            .map(|&m| (self.keys[m].clone(), self.grades[m]))
            .collect();
        FinitePoset::from_relations(elements, relations).expect("a subposet of a poset is acyclic")
    }

    /// Checks that every closed interval of grade length two in `P ∪ {0̂}`
    /// has exactly two interior elements.
    pub fn is_thin_with_bottom(&self) -> Result<ThinnessReport> {
        let mut grades = Vec::with_capacity(self.len());
        for x in 0..self.len() {
            let g = self.grades[x]
                .ok_or_else(|| Error::NotGraded(format!("{:?} has no grade", self.keys[x])))?;
            grades.push(g);
        }
        for (x, y) in self.covers() {
            if grades[y] != grades[x] + 1 {
                return Err(Error::NotGraded(format!(
                    "{:?} (grade {}) covers {:?} (grade {})",
                    self.keys[y], grades[y], self.keys[x], grades[x]
                )));
            }
        }
        for x in self.minimal_elements() {
            if grades[x] != 0 {
                return Err(Error::NotGraded(format!(
                    "minimal element {:?} has grade {}",
                    self.keys[x], grades[x]
                )));
            }
        }

        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (grades[x], x));
        for y in order {
            if grades[y] == 1 {
                let interior = self.down[y].len();
                if interior != 2 {
                    return Ok(self.thin_violation(None, y, interior));
                }
            } else if grades[y] >= 2 {
                let mut counts: HashMap<usize, usize> = HashMap::new();
                for &z in &self.down[y] {
                    for &x in &self.down[z] {
                        *counts.entry(x).or_default() += 1;
                    }
                }
                let mut bad: Vec<(usize, usize)> =
                    counts.into_iter().filter(|&(_, c)| c != 2).collect();
                bad.sort_unstable();
                if let Some(&(x, c)) = bad.first() {
                    return Ok(self.thin_violation(Some(x), y, c));
                }
            }
        }
        Ok(ThinnessReport {
            thin: true,
            violation: None,
        })
    }

    fn thin_violation(&self, lower: Option<usize>, upper: usize, interior: usize) -> ThinnessReport {
        ThinnessReport {
            thin: false,
            violation: Some(ThinnessViolation {
                lower: lower.map(|x| self.keys[x].clone()),
                upper: self.keys[upper].clone(),
                interior,
            }),
        }
    }
}

/// The face poset of `k`: every simplex, graded by dimension, ordered by
/// inclusion. Element `i` is the `i`-th simplex in canonical order.
pub fn face_poset(k: &SimplicialComplex) -> FinitePoset {
    let elements = k
        .simplices()
        .map(|s| (ElementKey::Cell(s.clone()), Some(s.dim())))
        .collect();
    let mut relations = Vec::new();
    for (i, s) in k.simplices().enumerate() {
        for face in s.boundary_faces() {
            relations.push((k.index_of(&face).expect("complex is closed"), i));
        }
    }
    FinitePoset::from_relations(elements, relations).expect("face relation is acyclic")
}

/// The order complex: vertices are the elements of `p` (labelled by their
/// index), simplices are the non-empty chains.
pub fn order_complex(p: &FinitePoset) -> SimplicialComplex {
    let labels = Arc::new((0..p.len() as i64).collect::<Vec<_>>());
    let mut chains = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn extend(p: &FinitePoset, x: usize, stack: &mut Vec<u32>, out: &mut Vec<Simplex>) {
        stack.push(x as u32);
        if p.upper_covers(x).is_empty() {
            out.push(Simplex::new(stack.clone()));
        } else {
            for &y in p.upper_covers(x) {
                extend(p, y, stack, out);
            }
        }
        stack.pop();
    }
    for x in p.minimal_elements() {
        extend(p, x, &mut stack, &mut chains);
    }
    SimplicialComplex::from_simplices(labels, chains)
}
