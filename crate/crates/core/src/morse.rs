//! Acyclic matchings, discrete Morse functions and the matchings induced by
//! vertex functions through descending domination.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;

use crate::collapse::CollapseState;
use crate::complex::{Simplex, SimplicialComplex, VertexFunction, VertexId};
use crate::error::{Error, Result};
use crate::poset::{face_poset, localization};

/// A set of pairs `(σ, τ)` with `σ ≺ τ`.
///
/// Pairs are kept sorted by their lower simplex. Structural validity is not
/// enforced here; see [`validate_matching`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    pairs: Vec<(Simplex, Simplex)>,
}

impl Matching {
    pub fn new(mut pairs: Vec<(Simplex, Simplex)>) -> Self {
        pairs.sort();
        pairs.dedup();
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(Simplex, Simplex)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, sigma: &Simplex, tau: &Simplex) -> bool {
        self.pairs
            .binary_search(&(sigma.clone(), tau.clone()))
            .is_ok()
    }

    /// Simplices appearing in some pair.
    pub fn matched_simplices(&self) -> BTreeSet<Simplex> {
        self.pairs
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect()
    }

    pub fn union(&self, other: &Matching) -> Matching {
        Matching::new(self.pairs.iter().chain(&other.pairs).cloned().collect())
    }
}

impl FromIterator<(Simplex, Simplex)> for Matching {
    fn from_iter<I: IntoIterator<Item = (Simplex, Simplex)>>(iter: I) -> Self {
        Matching::new(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingViolation {
    NotInComplex(Simplex),
    MatchedTwice(Simplex),
    NotCodimensionOne(Simplex, Simplex),
    /// A closed path in the modified Hasse diagram, listed in path order.
    Cycle(Vec<Simplex>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingReport {
    pub disjoint: bool,
    pub codimension_one: bool,
    pub acyclic: bool,
    pub violation: Option<MatchingViolation>,
}

impl MatchingReport {
    pub fn is_valid(&self) -> bool {
        self.disjoint && self.codimension_one && self.acyclic
    }
}

/// Checks disjointness, the codimension-one condition and acyclicity.
///
/// Acyclicity is tested on the Hasse diagram of `k` with every unmatched
/// cover pointing down and every matched pair pointing up.
pub fn validate_matching(k: &SimplicialComplex, m: &Matching) -> MatchingReport {
    let mut report = MatchingReport {
        disjoint: true,
        codimension_one: true,
        acyclic: false,
        violation: None,
    };
    let mut seen = BTreeSet::new();
    for (sigma, tau) in m.pairs() {
        for s in [sigma, tau] {
            if !k.contains(s) {
                report.codimension_one = false;
                report.violation.get_or_insert(MatchingViolation::NotInComplex(s.clone()));
            } else if !seen.insert(s.clone()) {
                report.disjoint = false;
                report.violation.get_or_insert(MatchingViolation::MatchedTwice(s.clone()));
            }
        }
        if !(tau.len() == sigma.len() + 1 && sigma.is_face_of(tau)) {
            report.codimension_one = false;
            report
                .violation
                .get_or_insert(MatchingViolation::NotCodimensionOne(sigma.clone(), tau.clone()));
        }
    }
    if !(report.disjoint && report.codimension_one) {
        return report;
    }

    let n = k.num_simplices();
    let mut up_partner: Vec<Option<usize>> = vec![None; n];
    for (sigma, tau) in m.pairs() {
        up_partner[k.index_of(sigma).unwrap()] = Some(k.index_of(tau).unwrap());
    }
    let simplices: Vec<&Simplex> = k.simplices().collect();
    let successors = |i: usize| -> Vec<usize> {
        let mut out = Vec::new();
        if let Some(j) = up_partner[i] {
            out.push(j);
        }
        for face in simplices[i].boundary_faces() {
            let f = k.index_of(&face).unwrap();
            if up_partner[f] != Some(i) {
                out.push(f);
            }
        }
        out
    };

    // iterative three-colour DFS
    let mut color = vec![0u8; n];
    for root in 0..n {
        if color[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, successors(root))];
        color[root] = 1;
        while let Some((node, next)) = stack.last_mut() {
            let node = *node;
            match next.pop() {
                Some(child) if color[child] == 0 => {
                    color[child] = 1;
                    let succ = successors(child);
                    stack.push((child, succ));
                }
                Some(child) if color[child] == 1 => {
                    let start = stack.iter().position(|(v, _)| *v == child).unwrap();
                    let cycle = stack[start..].iter().map(|(v, _)| simplices[*v].clone()).collect();
                    report.violation = Some(MatchingViolation::Cycle(cycle));
                    return report;
                }
                Some(_) => {}
                None => {
                    color[node] = 2;
                    stack.pop();
                }
            }
        }
    }
    report.acyclic = true;
    report
}

/// A real-valued function on the simplices of a complex.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMorseFunction {
    values: HashMap<Simplex, f64>,
}

impl DiscreteMorseFunction {
    pub fn new(values: HashMap<Simplex, f64>) -> Self {
        DiscreteMorseFunction { values }
    }

    pub fn from_fn(k: &SimplicialComplex, f: impl Fn(&Simplex) -> f64) -> Self {
        DiscreteMorseFunction {
            values: k.simplices().map(|s| (s.clone(), f(s))).collect(),
        }
    }

    pub fn value(&self, s: &Simplex) -> Option<f64> {
        self.values.get(s).copied()
    }
}

/// For each simplex, the neighbours of consecutive dimension that violate
/// monotonicity.
fn exceptional_neighbours(
    k: &SimplicialComplex,
    f: &DiscreteMorseFunction,
) -> Result<Vec<(Simplex, Vec<Simplex>)>> {
    let value = |s: &Simplex| {
        f.value(s)
            .ok_or_else(|| Error::InvalidMorseFunction(format!("no value on {s}")))
    };
    let mut out = Vec::with_capacity(k.num_simplices());
    for s in k.simplices() {
        let fs = value(s)?;
        let mut bad = Vec::new();
        for face in s.boundary_faces() {
            if value(&face)? >= fs {
                bad.push(face);
            }
        }
        for coface in k.cofaces(s) {
            if value(&coface)? <= fs {
                bad.push(coface);
            }
        }
        out.push((s.clone(), bad));
    }
    Ok(out)
}

pub fn is_discrete_morse(k: &SimplicialComplex, f: &DiscreteMorseFunction) -> bool {
    exceptional_neighbours(k, f).is_ok_and(|ex| ex.iter().all(|(_, bad)| bad.len() <= 1))
}

/// Simplices with no exceptional neighbour.
pub fn critical_simplices(k: &SimplicialComplex, f: &DiscreteMorseFunction) -> Result<Vec<Simplex>> {
    Ok(exceptional_neighbours(k, f)?
        .into_iter()
        .filter(|(_, bad)| bad.is_empty())
        .map(|(s, _)| s)
        .collect())
}

/// The gradient pairing of a discrete Morse function.
pub fn matching_from_morse(k: &SimplicialComplex, f: &DiscreteMorseFunction) -> Result<Matching> {
    let mut pairs = Vec::new();
    for (s, bad) in exceptional_neighbours(k, f)? {
        match bad.as_slice() {
            [] => {}
            [other] => {
                if s.len() < other.len() {
                    pairs.push((s, other.clone()));
                }
            }
            _ => {
                return Err(Error::InvalidMorseFunction(format!(
                    "{s} has {} exceptional neighbours",
                    bad.len()
                )))
            }
        }
    }
    Ok(Matching::new(pairs))
}

/// A discrete Morse function inducing `m`: each class of the localization
/// gets its rank in a linear extension, so matched pairs share a value.
pub fn morse_from_matching(k: &SimplicialComplex, m: &Matching) -> Result<DiscreteMorseFunction> {
    let x = face_poset(k);
    let loc = localization(&x, m)?;
    let p = &loc.poset;
    let mut indegree: Vec<usize> = (0..p.len()).map(|c| p.lower_covers(c).len()).collect();
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..p.len()).filter(|&c| indegree[c] == 0).map(Reverse).collect();
    let mut rank = vec![0usize; p.len()];
    let mut next = 0;
    while let Some(Reverse(c)) = heap.pop() {
        rank[c] = next;
        next += 1;
        for &d in p.upper_covers(c) {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                heap.push(Reverse(d));
            }
        }
    }
    let values = k
        .simplices()
        .enumerate()
        .map(|(i, s)| (s.clone(), rank[loc.class_of(i)] as f64))
        .collect();
    Ok(DiscreteMorseFunction::new(values))
}

/// The open star of `v` inside the sublevel complex `{w : g(w) ≤ g(v)}`.
pub fn descending_star(k: &SimplicialComplex, g: &VertexFunction, v: VertexId) -> Result<Vec<Simplex>> {
    sublevel(k, g, v)?.open_star(v)
}

pub fn descending_link(k: &SimplicialComplex, g: &VertexFunction, v: VertexId) -> Result<SimplicialComplex> {
    sublevel(k, g, v)?.link(v)
}

fn sublevel(k: &SimplicialComplex, g: &VertexFunction, v: VertexId) -> Result<SimplicialComplex> {
    if !k.has_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    let level = g.value(v);
    Ok(k.restrict(|w| g.value(w) <= level))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexTag {
    StrongCritical,
    DescendingDominated { witness: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClassification {
    tags: BTreeMap<VertexId, VertexTag>,
}

impl VertexClassification {
    pub fn tag(&self, v: VertexId) -> Option<VertexTag> {
        self.tags.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, VertexTag)> + '_ {
        self.tags.iter().map(|(v, t)| (*v, *t))
    }

    pub fn strong_critical(&self) -> Vec<VertexId> {
        self.iter()
            .filter(|(_, t)| *t == VertexTag::StrongCritical)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn witness(&self, v: VertexId) -> Option<VertexId> {
        match self.tag(v)? {
            VertexTag::DescendingDominated { witness } => Some(witness),
            VertexTag::StrongCritical => None,
        }
    }
}

/// Tags every vertex as descending dominated (with one fixed witness) or
/// strong critical.
///
/// The witness is the dominating vertex with the largest value strictly
/// below `g(v)`; ties go to the smallest id.
pub fn classify_vertices(k: &SimplicialComplex, g: &VertexFunction) -> VertexClassification {
    let mut tags = BTreeMap::new();
    for &v in k.vertices() {
        let level = sublevel(k, g, v).expect("vertex of k");
        let witness = level
            .dominating_vertices(v)
            .expect("vertex of its sublevel")
            .into_iter()
            .filter(|&a| g.value(a) < g.value(v))
            .reduce(|best, a| if g.value(a) > g.value(best) { a } else { best });
        let tag = match witness {
            Some(witness) => VertexTag::DescendingDominated { witness },
            None => VertexTag::StrongCritical,
        };
        tags.insert(v, tag);
    }
    VertexClassification { tags }
}

/// The acyclic matching induced by a vertex function.
///
/// Each simplex is owned by its top vertex (largest `g`, ties to the larger
/// id). Simplices owned by a strong critical vertex are critical; a simplex
/// owned by a descending dominated vertex `v` with witness `a` is paired
/// with `σ ∪ {a}` or `σ ∖ {a}`.
pub fn matching_from_vertex_function(k: &SimplicialComplex, g: &VertexFunction) -> (Matching, Vec<Simplex>) {
    let classes = classify_vertices(k, g);
    let mut pairs = BTreeSet::new();
    let mut critical = Vec::new();
    for sigma in k.simplices() {
        let top = g.top_vertex(sigma);
        match classes.witness(top) {
            None => critical.push(sigma.clone()),
            Some(a) => {
                if sigma.contains(a) {
                    pairs.insert((sigma.without_vertex(a).expect("σ contains top ≠ a"), sigma.clone()));
                } else {
                    pairs.insert((sigma.clone(), sigma.with_vertex(a)));
                }
            }
        }
    }
    (Matching::new(pairs.into_iter().collect()), critical)
}

/// The matching formed by the pairs of a legal sequence of elementary
/// collapses starting at `k`.
pub fn matching_from_collapse_sequence(k: &SimplicialComplex, steps: &[(Simplex, Simplex)]) -> Result<Matching> {
    let mut state = CollapseState::new(k);
    for (step, (sigma, tau)) in steps.iter().enumerate() {
        let illegal = |reason: String| Error::IllegalCollapseStep { step, reason };
        let s = state
            .index_of(sigma)
            .filter(|&i| state.is_alive(i))
            .ok_or_else(|| illegal(format!("{sigma} is not in the current complex")))?;
        let t = state
            .index_of(tau)
            .filter(|&i| state.is_alive(i))
            .ok_or_else(|| illegal(format!("{tau} is not in the current complex")))?;
        if state.free_coface(s) != Some(t) {
            return Err(illegal(format!("{sigma} is not a free face of {tau}")));
        }
        state.collapse(s, t);
    }
    Ok(Matching::new(steps.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&[i64]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets).unwrap()
    }

    fn s(vs: &[u32]) -> Simplex {
        Simplex::from(vs)
    }

    fn pair(a: &[u32], b: &[u32]) -> (Simplex, Simplex) {
        (s(a), s(b))
    }

    fn boundary_tetra() -> SimplicialComplex {
        cx(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    fn triangle_boundary() -> SimplicialComplex {
        cx(&[&[0, 1], &[1, 2], &[0, 2]])
    }

    #[test]
    fn validate_examples() {
        let m = Matching::new(vec![
            pair(&[0, 2], &[0, 2, 3]),
            pair(&[0, 3], &[0, 1, 3]),
            pair(&[0], &[0, 1]),
            pair(&[1, 3], &[1, 2, 3]),
            pair(&[1], &[1, 2]),
            pair(&[2], &[2, 3]),
        ]);
        assert!(validate_matching(&boundary_tetra(), &m).is_valid());

        let cyclic = Matching::new(vec![pair(&[0], &[0, 1]), pair(&[1], &[1, 2]), pair(&[2], &[0, 2])]);
        let report = validate_matching(&triangle_boundary(), &cyclic);
        assert!(report.disjoint && report.codimension_one && !report.acyclic);
        match report.violation {
            Some(MatchingViolation::Cycle(c)) => assert_eq!(c.len(), 6),
            other => panic!("expected a cycle, got {other:?}"),
        }
        assert!(validate_matching(&triangle_boundary(), &Matching::default()).is_valid());
    }

    #[test]
    fn validate_structural_violations() {
        let k = cx(&[&[0, 1, 2]]);
        let twice = Matching::new(vec![pair(&[0], &[0, 1]), pair(&[0], &[0, 2])]);
        assert!(!validate_matching(&k, &twice).disjoint);
        let far = Matching::new(vec![pair(&[0], &[0, 1, 2])]);
        assert!(!validate_matching(&k, &far).codimension_one);
        let outside = Matching::new(vec![pair(&[3], &[0, 3])]);
        assert!(matches!(
            validate_matching(&k, &outside).violation,
            Some(MatchingViolation::NotInComplex(_))
        ));
    }

    #[test]
    fn morse_functions_on_an_edge() {
        let k = cx(&[&[0, 1]]);
        let dims = DiscreteMorseFunction::from_fn(&k, |s| s.dim() as f64);
        assert!(is_discrete_morse(&k, &dims));
        assert_eq!(critical_simplices(&k, &dims).unwrap().len(), 3);

        let collapse = DiscreteMorseFunction::from_fn(&k, |s| match s.vertices() {
            [0] => 0.0,
            [1] => 2.0,
            _ => 1.0,
        });
        assert!(is_discrete_morse(&k, &collapse));
        assert_eq!(critical_simplices(&k, &collapse).unwrap(), vec![s(&[0])]);
        assert_eq!(
            matching_from_morse(&k, &collapse).unwrap(),
            Matching::new(vec![pair(&[1], &[0, 1])])
        );

        let flat = DiscreteMorseFunction::from_fn(&k, |_| 0.0);
        assert!(!is_discrete_morse(&k, &flat));
        assert!(matches!(matching_from_morse(&k, &flat), Err(Error::InvalidMorseFunction(_))));
    }

    #[test]
    fn morse_from_cyclic_matching_fails() {
        let cyclic = Matching::new(vec![pair(&[0], &[0, 1]), pair(&[1], &[1, 2]), pair(&[2], &[0, 2])]);
        assert!(matches!(
            morse_from_matching(&triangle_boundary(), &cyclic),
            Err(Error::MatchingNotAcyclic(_))
        ));
    }

    #[test]
    fn descending_stars_on_the_sphere() {
        let k = boundary_tetra();
        let g = VertexFunction::label_values(&k);
        assert_eq!(descending_star(&k, &g, 3).unwrap().len(), 7);
        assert_eq!(
            descending_link(&k, &g, 3).unwrap().facets(),
            &[s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]
        );
        assert_eq!(descending_star(&k, &g, 0).unwrap(), vec![s(&[0])]);
        assert!(descending_link(&k, &g, 0).unwrap().is_empty());
        let l1 = descending_link(&k, &g, 1).unwrap();
        assert_eq!(l1.facets(), &[s(&[0])]);
        assert_eq!(l1.cone_apexes(), vec![0]);
        assert!(descending_star(&k, &g, 9).is_err());
    }

    #[test]
    fn classification_examples() {
        let k = boundary_tetra();
        let c = classify_vertices(&k, &VertexFunction::label_values(&k));
        assert_eq!(c.strong_critical(), vec![0, 3]);
        assert_eq!(c.witness(1), Some(0));
        assert_eq!(c.witness(2), Some(1));

        let tri = cx(&[&[0, 1, 2]]);
        let c = classify_vertices(&tri, &VertexFunction::label_values(&tri));
        assert_eq!(c.strong_critical(), vec![0]);

        let cyc = triangle_boundary();
        let c = classify_vertices(&cyc, &VertexFunction::label_values(&cyc));
        assert_eq!(c.strong_critical(), vec![0, 2]);
        assert_eq!(c.witness(1), Some(0));
    }

    #[test]
    fn vertex_function_matchings() {
        let k = boundary_tetra();
        let (m, c) = matching_from_vertex_function(&k, &VertexFunction::label_values(&k));
        assert_eq!(
            m,
            Matching::new(vec![pair(&[1], &[0, 1]), pair(&[2], &[1, 2]), pair(&[0, 2], &[0, 1, 2])])
        );
        let expected: Vec<Simplex> = [
            &[0][..],
            &[3],
            &[0, 3],
            &[1, 3],
            &[2, 3],
            &[0, 1, 3],
            &[0, 2, 3],
            &[1, 2, 3],
        ]
        .iter()
        .map(|v| s(v))
        .collect();
        assert_eq!(c, expected);

        let tri = cx(&[&[0, 1, 2]]);
        let (m, c) = matching_from_vertex_function(&tri, &VertexFunction::label_values(&tri));
        assert_eq!((m.len(), c), (3, vec![s(&[0])]));
        assert!(validate_matching(&tri, &m).is_valid());

        let (m, c) = matching_from_vertex_function(&k, &VertexFunction::constant(&k, 1.0));
        assert!(m.is_empty());
        assert_eq!(c.len(), 14);
    }

    #[test]
    fn collapse_sequences() {
        let tri = cx(&[&[0, 1, 2]]);
        let steps = vec![pair(&[0, 1], &[0, 1, 2]), pair(&[0], &[0, 2]), pair(&[1], &[1, 2])];
        let m = matching_from_collapse_sequence(&tri, &steps).unwrap();
        assert_eq!(m.len(), 3);
        assert!(validate_matching(&tri, &m).is_valid());
        let left: Vec<_> = tri.simplices().filter(|x| !m.matched_simplices().contains(*x)).collect();
        assert_eq!(left, vec![&s(&[2])]);
        assert!(matching_from_collapse_sequence(&tri, &[]).unwrap().is_empty());
        assert!(matches!(
            matching_from_collapse_sequence(&tri, &[pair(&[0], &[0, 1])]),
            Err(Error::IllegalCollapseStep { step: 0, .. })
        ));
    }
}
