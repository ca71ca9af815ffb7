//! Finite abstract simplicial complexes and the local operations used by the
//! reduction engines: links, stars, domination, retraction and free faces.
//!
//! A complex is stored by its facets together with an eager enumeration of
//! every simplex, grouped by dimension and sorted lexicographically inside
//! each dimension. That enumeration order is the canonical simplex order used
//! everywhere else in the crate (face posets, boundary matrices, reports).
//!
//! Vertex ids are dense indices into an ambient label table. Subcomplexes
//! produced by [`SimplicialComplex::remove_vertex`] and friends share the
//! ambient table, so a vertex keeps its id through a whole reduction.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type VertexId = u32;

/// A simplex as a strictly increasing list of vertex ids.
///
/// Ordered first by dimension, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from arbitrary vertices, sorting and merging repeats.
    ///
    /// Panics on an empty vertex list; the empty simplex is never materialized.
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        assert!(!vertices.is_empty(), "the empty simplex is not a simplex");
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.contains(*v))
    }

    /// `self ∪ {v}`.
    pub fn with_vertex(&self, v: VertexId) -> Simplex {
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(pos) => {
                let mut vs = self.0.clone();
                vs.insert(pos, v);
                Simplex(vs)
            }
        }
    }

    /// `self ∖ {v}`, or `None` when that would be empty.
    pub fn without_vertex(&self, v: VertexId) -> Option<Simplex> {
        let vs: Vec<VertexId> = self.0.iter().copied().filter(|&w| w != v).collect();
        if vs.is_empty() {
            None
        } else {
            Some(Simplex(vs))
        }
    }

    /// Codimension-one faces, in the order of the omitted vertex position.
    pub fn boundary_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| *v)
                    .collect(),
            )
        })
    }

    /// All non-empty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        let mut out = Vec::with_capacity((1usize << n) - 1);
        for mask in 1u64..(1u64 << n) {
            out.push(Simplex(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.0[i])
                    .collect(),
            ));
        }
        out
    }

    pub fn intersection(&self, keep: impl Fn(VertexId) -> bool) -> Option<Simplex> {
        let vs: Vec<VertexId> = self.0.iter().copied().filter(|v| keep(*v)).collect();
        if vs.is_empty() {
            None
        } else {
            Some(Simplex(vs))
        }
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<&[VertexId]> for Simplex {
    fn from(vs: &[VertexId]) -> Self {
        Simplex::new(vs.to_vec())
    }
}

impl<const N: usize> From<[VertexId; N]> for Simplex {
    fn from(vs: [VertexId; N]) -> Self {
        Simplex::new(vs.to_vec())
    }
}

/// Finite abstract simplicial complex.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Arc<Vec<i64>>,
    vertices: Vec<VertexId>,
    facets: Vec<Simplex>,
    by_dim: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.facets == other.facets && self.vertex_labels_eq(other)
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("facets", &self.facets)
            .field("f_vector", &self.f_vector())
            .finish()
    }
}

impl SimplicialComplex {
    /// Builds a complex from facets given by arbitrary integer labels.
    ///
    /// Labels are normalized to dense ids in increasing label order, so
    /// `0..n` labels map to themselves.
    pub fn from_facets<F: AsRef<[i64]>>(facets: &[F]) -> Result<Self> {
        let mut labels = BTreeSet::new();
        for (index, facet) in facets.iter().enumerate() {
            let facet = facet.as_ref();
            if facet.is_empty() {
                return Err(Error::EmptyFacet { index });
            }
            let mut seen = HashSet::new();
            for &label in facet {
                if !seen.insert(label) {
                    return Err(Error::DuplicateVertexInFacet { index, label });
                }
                labels.insert(label);
            }
        }
        let labels: Vec<i64> = labels.into_iter().collect();
        let id_of: HashMap<i64, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (*l, i as VertexId))
            .collect();
        let simplices = facets
            .iter()
            .map(|f| Simplex::new(f.as_ref().iter().map(|l| id_of[l]).collect()))
            .collect();
        Ok(Self::from_simplices(Arc::new(labels), simplices))
    }

    /// Downward closure of `simplices` over an existing label table.
    pub fn from_simplices(labels: Arc<Vec<i64>>, simplices: Vec<Simplex>) -> Self {
        let mut all: HashSet<Simplex> = HashSet::new();
        for s in &simplices {
            if all.contains(s) {
                continue;
            }
            for face in s.faces() {
                all.insert(face);
            }
        }
        let mut not_maximal: HashSet<&Simplex> = HashSet::new();
        for s in &all {
            for face in s.boundary_faces() {
                if let Some(f) = all.get(&face) {
                    not_maximal.insert(f);
                }
            }
        }
        let mut facets: Vec<Simplex> = all
            .iter()
            .filter(|s| !not_maximal.contains(s))
            .cloned()
            .collect();
        facets.sort();
        drop(not_maximal);

        let mut sorted: Vec<Simplex> = all.into_iter().collect();
        sorted.sort();
        let max_len = sorted.last().map_or(0, |s| s.len());
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); max_len];
        let mut index = HashMap::with_capacity(sorted.len());
        for (i, s) in sorted.into_iter().enumerate() {
            index.insert(s.clone(), i);
            by_dim[s.dim()].push(s);
        }
        let vertices: Vec<VertexId> = by_dim
            .first()
            .map(|vs| vs.iter().map(|s| s.vertices()[0]).collect())
            .unwrap_or_default();
        for v in &vertices {
            debug_assert!((*v as usize) < labels.len());
        }
        SimplicialComplex {
            labels,
            vertices,
            facets,
            by_dim,
            index,
        }
    }

    pub fn empty() -> Self {
        Self::from_simplices(Arc::new(Vec::new()), Vec::new())
    }

    /// A complex on the same label table with the given simplices.
    pub fn sibling(&self, simplices: Vec<Simplex>) -> Self {
        Self::from_simplices(self.labels.clone(), simplices)
    }

    pub fn labels(&self) -> &Arc<Vec<i64>> {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> i64 {
        self.labels[v as usize]
    }

    pub fn labeled(&self, s: &Simplex) -> Vec<i64> {
        s.vertices().iter().map(|v| self.label(*v)).collect()
    }

    /// Maps original labels back to ids in the ambient table.
    pub fn id_of_label(&self, label: i64) -> Option<VertexId> {
        self.labels.binary_search(&label).ok().map(|i| i as VertexId)
    }

    pub fn simplex_from_labels(&self, labels: &[i64]) -> Result<Simplex> {
        let ids = labels
            .iter()
            .map(|l| self.id_of_label(*l).ok_or(Error::UnknownLabel(*l)))
            .collect::<Result<Vec<_>>>()?;
        if ids.is_empty() {
            return Err(Error::EmptyFacet { index: 0 });
        }
        Ok(Simplex::new(ids))
    }

    fn vertex_labels_eq(&self, other: &Self) -> bool {
        self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .zip(&other.vertices)
                .all(|(a, b)| self.label(*a) == other.label(*b))
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Dimension of the complex; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    pub fn simplices_of_dim(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map_or(&[], |v| v.as_slice())
    }

    /// Every simplex in canonical order.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn num_simplices(&self) -> usize {
        self.index.len()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    /// Position of `s` in the canonical order.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn facets_containing(&self, v: VertexId) -> impl Iterator<Item = &Simplex> {
        self.facets.iter().filter(move |f| f.contains(v))
    }

    pub fn link(&self, v: VertexId) -> Result<SimplicialComplex> {
        self.check_vertex(v)?;
        let facets = self
            .facets_containing(v)
            .filter_map(|f| f.without_vertex(v))
            .collect();
        Ok(self.sibling(facets))
    }

    /// Simplices containing `v`, in canonical order.
    pub fn open_star(&self, v: VertexId) -> Result<Vec<Simplex>> {
        self.check_vertex(v)?;
        Ok(self.simplices().filter(|s| s.contains(v)).cloned().collect())
    }

    pub fn closed_star(&self, v: VertexId) -> Result<SimplicialComplex> {
        self.check_vertex(v)?;
        Ok(self.sibling(self.facets_containing(v).cloned().collect()))
    }

    /// Vertices lying in every facet. For a non-empty complex these are
    /// exactly the apexes `a` with `K = a * (K ∖ a)`.
    pub fn cone_apexes(&self) -> Vec<VertexId> {
        let mut iter = self.facets.iter();
        let Some(first) = iter.next() else {
            return Vec::new();
        };
        let mut common: Vec<VertexId> = first.vertices().to_vec();
        for f in iter {
            common.retain(|v| f.contains(*v));
            if common.is_empty() {
                break;
            }
        }
        common
    }

    /// Vertices `a ≠ v` contained in every facet that contains `v`, i.e. the
    /// apexes of `lk(v)` as a simplicial cone.
    pub fn dominating_vertices(&self, v: VertexId) -> Result<Vec<VertexId>> {
        self.check_vertex(v)?;
        let mut common: Option<Vec<VertexId>> = None;
        for f in self.facets_containing(v) {
            match &mut common {
                None => common = Some(f.vertices().iter().copied().filter(|&w| w != v).collect()),
                Some(c) => c.retain(|w| f.contains(*w)),
            }
            if common.as_ref().is_some_and(Vec::is_empty) {
                break;
            }
        }
        Ok(common.unwrap_or_default())
    }

    pub fn is_dominated(&self, v: VertexId) -> Result<bool> {
        Ok(!self.dominating_vertices(v)?.is_empty())
    }

    /// `K ∖ v`: the simplices disjoint from `v`.
    pub fn remove_vertex(&self, v: VertexId) -> Result<SimplicialComplex> {
        self.check_vertex(v)?;
        Ok(self.restrict(|w| w != v))
    }

    /// Simplices of `K` with every vertex in `vertices`.
    pub fn full_subcomplex(&self, vertices: &[VertexId]) -> Result<SimplicialComplex> {
        for v in vertices {
            self.check_vertex(*v)?;
        }
        let keep: HashSet<VertexId> = vertices.iter().copied().collect();
        Ok(self.restrict(|w| keep.contains(&w)))
    }

    pub(crate) fn restrict(&self, keep: impl Fn(VertexId) -> bool) -> SimplicialComplex {
        let facets = self
            .facets
            .iter()
            .filter_map(|f| f.intersection(&keep))
            .collect();
        self.sibling(facets)
    }

    /// The unique proper coface of `sigma`, when there is exactly one.
    pub fn free_face(&self, sigma: &Simplex) -> Result<Option<Simplex>> {
        if !self.contains(sigma) {
            return Err(Error::UnknownSimplex(sigma.clone()));
        }
        let mut above = self.facets.iter().filter(|f| sigma.is_face_of(f) && *f != sigma);
        match (above.next(), above.next()) {
            (Some(f), None) if f.len() == sigma.len() + 1 => Ok(Some(f.clone())),
            _ => Ok(None),
        }
    }

    /// Codimension-one cofaces of `sigma` present in the complex.
    pub fn cofaces(&self, sigma: &Simplex) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self
            .vertices
            .iter()
            .filter(|v| !sigma.contains(**v))
            .map(|v| sigma.with_vertex(*v))
            .filter(|t| self.contains(t))
            .collect();
        out.sort();
        out
    }
}

/// The simplicial retraction `r_a` for a vertex `v` dominated by `a`:
/// `σ` when `v ∉ σ`, otherwise `{a} ∪ σ ∖ {v}`.
pub fn retract_simplex(sigma: &Simplex, v: VertexId, a: VertexId) -> Simplex {
    if !sigma.contains(v) {
        return sigma.clone();
    }
    let mut vs: Vec<VertexId> = sigma.vertices().iter().map(|&w| if w == v { a } else { w }).collect();
    vs.sort_unstable();
    vs.dedup();
    Simplex(vs)
}

/// A real-valued function on the vertex table of a complex.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFunction {
    values: Vec<f64>,
}

impl VertexFunction {
    /// Values indexed by vertex id over the ambient table of `k`.
    pub fn new(values: Vec<f64>) -> Self {
        VertexFunction { values }
    }

    pub fn from_fn(k: &SimplicialComplex, f: impl Fn(VertexId) -> f64) -> Self {
        VertexFunction {
            values: (0..k.labels().len() as VertexId).map(f).collect(),
        }
    }

    /// `g(v) = label(v)`.
    pub fn label_values(k: &SimplicialComplex) -> Self {
        Self::from_fn(k, |v| k.label(v) as f64)
    }

    pub fn constant(k: &SimplicialComplex, c: f64) -> Self {
        Self::from_fn(k, |_| c)
    }

    pub fn value(&self, v: VertexId) -> f64 {
        self.values[v as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Strict total order used to break ties: by value, then by id.
    pub fn precedes(&self, a: VertexId, b: VertexId) -> bool {
        (self.value(a), a) < (self.value(b), b)
    }

    /// The vertex of `sigma` that is largest under [`Self::precedes`].
    pub fn top_vertex(&self, sigma: &Simplex) -> VertexId {
        sigma
            .vertices()
            .iter()
            .copied()
            .reduce(|best, w| if self.precedes(best, w) { w } else { best })
            .expect("simplices are non-empty")
    }
}
