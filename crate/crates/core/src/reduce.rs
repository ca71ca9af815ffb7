//! Reduction engines: minimal strong and weak cores, the randomized strong
//! internal core and the combined weak-then-strong strategy.
//!
//! Every engine records a [`ReductionTrace`] that [`replay`] can re-execute
//! without randomness.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::collapse::CollapseState;
use crate::complex::{Simplex, SimplicialComplex, VertexFunction, VertexId};
use crate::error::{Error, Result};
use crate::morse::{validate_matching, Matching};
use crate::poset::{critical_poset, face_poset, FinitePoset};

/// Source of every choice an engine makes.
pub trait ReductionPolicy {
    /// Reorders the current vertices before a scan.
    fn shuffle(&mut self, vertices: &mut [VertexId]);
    /// Picks one of several vertices (sorted by id).
    fn choose_vertex(&mut self, candidates: &[VertexId]) -> VertexId;
    /// Picks a witness among the vertices dominating `v` (sorted by id).
    fn choose_witness(&mut self, v: VertexId, dominators: &[VertexId]) -> VertexId;
    /// Picks an index in `0..n`, `n > 0`.
    fn choose_index(&mut self, n: usize) -> usize;
}

/// Uniform choices from a seeded ChaCha stream.
#[derive(Clone, Debug)]
pub struct RandomPolicy {
    rng: ChaCha8Rng,
}

impl RandomPolicy {
    pub fn new(seed: u64) -> Self {
        RandomPolicy {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The independent stream for iteration `i` of a run with master `seed`.
    pub fn for_iteration(seed: u64, i: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        RandomPolicy { rng }
    }
}

impl ReductionPolicy for RandomPolicy {
    fn shuffle(&mut self, vertices: &mut [VertexId]) {
        vertices.shuffle(&mut self.rng);
    }

    fn choose_vertex(&mut self, candidates: &[VertexId]) -> VertexId {
        candidates[self.rng.gen_range(0..candidates.len())]
    }

    fn choose_witness(&mut self, _v: VertexId, dominators: &[VertexId]) -> VertexId {
        dominators[self.rng.gen_range(0..dominators.len())]
    }

    fn choose_index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

/// Deterministic choices following a prescribed vertex order.
///
/// Vertices are scanned and removed in the given order; a witness is the
/// dominator appearing earliest in it. Vertices missing from the order come
/// last, by id. Free pairs are taken first-come.
#[derive(Clone, Debug)]
pub struct FixedOrder {
    position: HashMap<VertexId, usize>,
}

impl FixedOrder {
    pub fn new(order: &[VertexId]) -> Self {
        FixedOrder {
            position: order.iter().enumerate().map(|(i, &v)| (v, i)).collect(),
        }
    }

    fn rank(&self, v: VertexId) -> (usize, VertexId) {
        (self.position.get(&v).copied().unwrap_or(usize::MAX), v)
    }

    fn earliest(&self, vs: &[VertexId]) -> VertexId {
        *vs.iter().min_by_key(|&&v| self.rank(v)).expect("non-empty candidates")
    }
}

impl ReductionPolicy for FixedOrder {
    fn shuffle(&mut self, vertices: &mut [VertexId]) {
        vertices.sort_by_key(|&v| self.rank(v));
    }

    fn choose_vertex(&mut self, candidates: &[VertexId]) -> VertexId {
        self.earliest(candidates)
    }

    fn choose_witness(&mut self, _v: VertexId, dominators: &[VertexId]) -> VertexId {
        self.earliest(dominators)
    }

    fn choose_index(&mut self, _n: usize) -> usize {
        0
    }
}

/// The four reduction strategies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoreKind {
    StrongCore,
    WeakCore,
    StrongInternalCore,
    Combined,
}

impl CoreKind {
    pub const ALL: [CoreKind; 4] = [
        CoreKind::StrongCore,
        CoreKind::WeakCore,
        CoreKind::StrongInternalCore,
        CoreKind::Combined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoreKind::StrongCore => "strong-core",
            CoreKind::WeakCore => "weak-core",
            CoreKind::StrongInternalCore => "strong-internal",
            CoreKind::Combined => "weak-then-strong",
        }
    }
}

impl fmt::Display for CoreKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoreKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        CoreKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}; expected one of strong-core, weak-core, strong-internal, weak-then-strong"))
    }
}

/// One recorded move of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// `vertex` was removed while dominated by `witness`.
    StrongCollapse { vertex: VertexId, witness: VertexId },
    /// `vertex` was removed undominated; its open star became critical.
    CriticalRemoval { vertex: VertexId, star: Vec<Simplex> },
    /// Elementary collapse of the free face `sigma` into `tau`.
    WeakCollapse { sigma: Simplex, tau: Simplex },
    /// Deletion of a maximal simplex.
    FacetRemoval { sigma: Simplex },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionTrace {
    pub kind: CoreKind,
    pub steps: Vec<Step>,
    pub final_matching: Matching,
    /// Unmatched simplices, in canonical order.
    pub critical_set: Vec<Simplex>,
    /// Removal-order function; absent for traces with collapse steps.
    pub implied_g: Option<VertexFunction>,
}

/// What a reduction produces: a subcomplex or a critical poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoreShape {
    Complex(SimplicialComplex),
    Poset(FinitePoset),
}

#[derive(Clone, Debug)]
pub struct CoreResult {
    pub kind: CoreKind,
    pub shape: CoreShape,
    pub trace: ReductionTrace,
    pub input_size: usize,
    pub output_size: usize,
    pub elapsed: Duration,
}

impl CoreResult {
    pub fn core_complex(&self) -> Option<&SimplicialComplex> {
        match &self.shape {
            CoreShape::Complex(k) => Some(k),
            CoreShape::Poset(_) => None,
        }
    }

    pub fn critical_poset(&self) -> Option<&FinitePoset> {
        match &self.shape {
            CoreShape::Poset(p) => Some(p),
            CoreShape::Complex(_) => None,
        }
    }
}

/// Removes `v` dominated by `a`, pairing each `σ ∋ v` with `σ ∪ {a}`.
fn strong_step(current: &SimplicialComplex, v: VertexId, a: VertexId, pairs: &mut Vec<(Simplex, Simplex)>) -> SimplicialComplex {
    for sigma in current.open_star(v).expect("vertex of the current complex") {
        if !sigma.contains(a) {
            let tau = sigma.with_vertex(a);
            pairs.push((sigma, tau));
        }
    }
    current.remove_vertex(v).expect("vertex of the current complex")
}

fn dominated_vertices(k: &SimplicialComplex) -> Vec<(VertexId, Vec<VertexId>)> {
    k.vertices()
        .iter()
        .filter_map(|&v| {
            let doms = k.dominating_vertices(v).expect("vertex of k");
            (!doms.is_empty()).then_some((v, doms))
        })
        .collect()
}

/// `g(v_i) = n - i + 1` for the `i`-th removed vertex; 0 elsewhere.
fn removal_function(k: &SimplicialComplex, removed: &[VertexId]) -> VertexFunction {
    let n = removed.len();
    let mut values = vec![0.0; k.labels().len()];
    for (i, &v) in removed.iter().enumerate() {
        values[v as usize] = (n - i) as f64;
    }
    VertexFunction::new(values)
}

fn unmatched(k: &SimplicialComplex, m: &Matching) -> Vec<Simplex> {
    let matched = m.matched_simplices();
    k.simplices().filter(|s| !matched.contains(*s)).cloned().collect()
}

/// Repeatedly removes a dominated vertex chosen by the policy.
pub fn minimal_strong_core(k: &SimplicialComplex, policy: &mut impl ReductionPolicy) -> CoreResult {
    let start = Instant::now();
    let mut current = k.clone();
    let mut steps = Vec::new();
    let mut pairs = Vec::new();
    let mut removed = Vec::new();
    loop {
        let dominated = dominated_vertices(&current);
        if dominated.is_empty() {
            break;
        }
        let candidates: Vec<VertexId> = dominated.iter().map(|(v, _)| *v).collect();
        let v = policy.choose_vertex(&candidates);
        let doms = &dominated.iter().find(|(w, _)| *w == v).expect("chosen candidate").1;
        let a = policy.choose_witness(v, doms);
        current = strong_step(&current, v, a, &mut pairs);
        steps.push(Step::StrongCollapse { vertex: v, witness: a });
        removed.push(v);
    }
    let final_matching = Matching::new(pairs);
    let trace = ReductionTrace {
        kind: CoreKind::StrongCore,
        steps,
        critical_set: current.simplices().cloned().collect(),
        final_matching,
        implied_g: Some(removal_function(k, &removed)),
    };
    subcomplex_result(k, current, trace, start)
}

fn subcomplex_result(k: &SimplicialComplex, core: SimplicialComplex, trace: ReductionTrace, start: Instant) -> CoreResult {
    CoreResult {
        kind: trace.kind,
        input_size: k.num_simplices(),
        output_size: core.num_simplices(),
        shape: CoreShape::Complex(core),
        trace,
        elapsed: start.elapsed(),
    }
}

/// Collapses free pairs chosen by the policy until none is left. Returns
/// the steps and the final complex.
fn weak_stage(k: &SimplicialComplex, policy: &mut impl ReductionPolicy) -> (Vec<Step>, Vec<(Simplex, Simplex)>, SimplicialComplex) {
    let mut state = CollapseState::new(k);
    let mut steps = Vec::new();
    let mut pairs = Vec::new();
    while !state.free_faces().is_empty() {
        let s = state.free_faces()[policy.choose_index(state.free_faces().len())];
        let t = state.free_coface(s).expect("free face");
        let (sigma, tau) = (state.simplex(s).clone(), state.simplex(t).clone());
        state.collapse(s, t);
        steps.push(Step::WeakCollapse {
            sigma: sigma.clone(),
            tau: tau.clone(),
        });
        pairs.push((sigma, tau));
    }
    (steps, pairs, state.current_complex())
}

/// Repeatedly performs an elementary collapse on a free pair chosen by the
/// policy.
pub fn minimal_weak_core(k: &SimplicialComplex, policy: &mut impl ReductionPolicy) -> CoreResult {
    let start = Instant::now();
    let (steps, pairs, core) = weak_stage(k, policy);
    let trace = ReductionTrace {
        kind: CoreKind::WeakCore,
        steps,
        final_matching: Matching::new(pairs),
        critical_set: core.simplices().cloned().collect(),
        implied_g: None,
    };
    subcomplex_result(k, core, trace, start)
}

/// Output of the randomized strong Morse reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct StrongReduction {
    pub critical: Vec<Simplex>,
    pub matching: Matching,
    pub steps: Vec<Step>,
    pub implied_g: VertexFunction,
}

/// Scans a shuffled vertex list for a dominated vertex and collapses it;
/// when none is dominated, the first vertex of the list is removed and its
/// open star becomes critical. One shuffle per round serves both purposes.
pub fn strong_morse_reduction(k: &SimplicialComplex, policy: &mut impl ReductionPolicy) -> StrongReduction {
    let mut current = k.clone();
    let mut steps = Vec::new();
    let mut pairs = Vec::new();
    let mut critical = Vec::new();
    let mut removed = Vec::new();
    while !current.is_empty() {
        let mut order = current.vertices().to_vec();
        policy.shuffle(&mut order);
        let hit = order.iter().find_map(|&v| {
            let doms = current.dominating_vertices(v).expect("vertex of the current complex");
            (!doms.is_empty()).then_some((v, doms))
        });
        match hit {
            Some((v, doms)) => {
                let a = policy.choose_witness(v, &doms);
                current = strong_step(&current, v, a, &mut pairs);
                steps.push(Step::StrongCollapse { vertex: v, witness: a });
                removed.push(v);
            }
            None => {
                let v = order[0];
                let star = current.open_star(v).expect("vertex of the current complex");
                critical.extend(star.iter().cloned());
                current = current.remove_vertex(v).expect("vertex of the current complex");
                steps.push(Step::CriticalRemoval { vertex: v, star });
                removed.push(v);
            }
        }
    }
    critical.sort();
    StrongReduction {
        critical,
        matching: Matching::new(pairs),
        steps,
        implied_g: removal_function(k, &removed),
    }
}

fn internal_result(
    k: &SimplicialComplex,
    kind: CoreKind,
    steps: Vec<Step>,
    matching: Matching,
    critical: Vec<Simplex>,
    implied_g: Option<VertexFunction>,
    start: Instant,
) -> Result<CoreResult> {
    let poset = critical_poset(&face_poset(k), &critical, &matching)?;
    let trace = ReductionTrace {
        kind,
        steps,
        final_matching: matching,
        critical_set: critical,
        implied_g,
    };
    Ok(CoreResult {
        kind,
        input_size: k.num_simplices(),
        output_size: poset.len(),
        shape: CoreShape::Poset(poset),
        trace,
        elapsed: start.elapsed(),
    })
}

/// The strong Morse reduction followed by the critical poset on the face
/// poset of `k`.
pub fn strong_internal_core(k: &SimplicialComplex, policy: &mut impl ReductionPolicy) -> Result<CoreResult> {
    let start = Instant::now();
    let r = strong_morse_reduction(k, policy);
    internal_result(k, CoreKind::StrongInternalCore, r.steps, r.matching, r.critical, Some(r.implied_g), start)
}

/// A minimal weak core followed by a strong internal core of it. The union
/// of both matchings is validated on `k` before the critical poset is built.
pub fn combined_reduction(k: &SimplicialComplex, policy: &mut impl ReductionPolicy) -> Result<CoreResult> {
    let start = Instant::now();
    let (mut steps, pairs, weak) = weak_stage(k, policy);
    let strong = strong_morse_reduction(&weak, policy);
    steps.extend(strong.steps);
    let matching = Matching::new(pairs).union(&strong.matching);
    check_acyclic(k, &matching)?;
    internal_result(k, CoreKind::Combined, steps, matching, strong.critical, None, start)
}

fn check_acyclic(k: &SimplicialComplex, m: &Matching) -> Result<()> {
    let report = validate_matching(k, m);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::MatchingNotAcyclic(format!("{:?}", report.violation)))
    }
}

/// Runs the engine for `kind`.
pub fn reduce(k: &SimplicialComplex, kind: CoreKind, policy: &mut impl ReductionPolicy) -> Result<CoreResult> {
    match kind {
        CoreKind::StrongCore => Ok(minimal_strong_core(k, policy)),
        CoreKind::WeakCore => Ok(minimal_weak_core(k, policy)),
        CoreKind::StrongInternalCore => strong_internal_core(k, policy),
        CoreKind::Combined => combined_reduction(k, policy),
    }
}

/// The vertex function of a strong trace: later removals get smaller values
/// and vertices never removed get 0.
pub fn vertex_function_from_trace(k: &SimplicialComplex, trace: &ReductionTrace) -> Result<VertexFunction> {
    let mut removed = Vec::new();
    for step in &trace.steps {
        match step {
            Step::StrongCollapse { vertex, .. } | Step::CriticalRemoval { vertex, .. } => removed.push(*vertex),
            other => {
                return Err(Error::UnsupportedTrace(format!("{other:?} is not a vertex removal")));
            }
        }
    }
    Ok(removal_function(k, &removed))
}

/// Re-executes `trace` on `k`, checking every step and the recorded
/// outcome, and rebuilds the result.
pub fn replay(k: &SimplicialComplex, trace: &ReductionTrace) -> Result<CoreResult> {
    let start = Instant::now();
    let mismatch = |step: usize, reason: String| Error::ReplayMismatch { step, reason };
    let n = trace.steps.len();
    let weak_steps = trace
        .steps
        .iter()
        .take_while(|s| matches!(s, Step::WeakCollapse { .. } | Step::FacetRemoval { .. }))
        .count();
    let allowed_weak = matches!(trace.kind, CoreKind::WeakCore | CoreKind::Combined);
    if weak_steps > 0 && !allowed_weak {
        return Err(mismatch(0, format!("{} trace starts with a collapse step", trace.kind)));
    }
    if trace.kind == CoreKind::WeakCore && weak_steps != n {
        return Err(mismatch(weak_steps, "weak-core trace contains a vertex step".into()));
    }

    let mut state = CollapseState::new(k);
    let mut pairs = Vec::new();
    for (i, step) in trace.steps[..weak_steps].iter().enumerate() {
        match step {
            Step::WeakCollapse { sigma, tau } => {
                let s = state.index_of(sigma).filter(|&s| state.is_alive(s));
                let t = state.index_of(tau).filter(|&t| state.is_alive(t));
                match (s, t) {
                    (Some(s), Some(t)) if state.free_coface(s) == Some(t) => state.collapse(s, t),
                    _ => return Err(mismatch(i, format!("{sigma} is not a free face of {tau}"))),
                }
                pairs.push((sigma.clone(), tau.clone()));
            }
            Step::FacetRemoval { sigma } => {
                let ok = state.index_of(sigma).is_some_and(|s| state.remove_maximal(s));
                if !ok {
                    return Err(mismatch(i, format!("{sigma} is not a maximal simplex")));
                }
            }
            _ => unreachable!(),
        }
    }
    if allowed_weak && !state.free_faces().is_empty() {
        return Err(mismatch(weak_steps, "free faces remain after the collapse steps".into()));
    }
    let mut current = state.current_complex();

    let mut critical = Vec::new();
    for (i, step) in trace.steps.iter().enumerate().skip(weak_steps) {
        match step {
            Step::StrongCollapse { vertex, witness } => {
                let v = *vertex;
                let doms = current
                    .dominating_vertices(v)
                    .map_err(|_| mismatch(i, format!("vertex {v} is not present")))?;
                if !doms.contains(witness) {
                    return Err(mismatch(i, format!("vertex {v} is not dominated by {witness}")));
                }
                current = strong_step(&current, v, *witness, &mut pairs);
            }
            Step::CriticalRemoval { vertex, star } => {
                if trace.kind == CoreKind::StrongCore {
                    return Err(mismatch(i, "strong-core trace removes a critical vertex".into()));
                }
                let v = *vertex;
                let actual = current
                    .open_star(v)
                    .map_err(|_| mismatch(i, format!("vertex {v} is not present")))?;
                if let Some((w, _)) = dominated_vertices(&current).first() {
                    return Err(mismatch(i, format!("vertex {w} is dominated, so no vertex may be removed as critical")));
                }
                if &actual != star {
                    return Err(mismatch(i, format!("recorded star of {v} differs from the current one")));
                }
                critical.extend(actual);
                current = current.remove_vertex(v).expect("checked above");
            }
            _ => return Err(mismatch(i, "collapse step after a vertex step".into())),
        }
    }

    let matching = Matching::new(pairs);
    let result = match trace.kind {
        CoreKind::StrongCore | CoreKind::WeakCore => {
            if trace.kind == CoreKind::StrongCore && !dominated_vertices(&current).is_empty() {
                return Err(mismatch(n, "dominated vertices remain".into()));
            }
            let critical_set = unmatched(k, &matching);
            let implied_g = match trace.kind {
                CoreKind::StrongCore => Some(vertex_function_from_trace(k, trace)?),
                _ => None,
            };
            let rebuilt = ReductionTrace {
                kind: trace.kind,
                steps: trace.steps.clone(),
                final_matching: matching,
                critical_set,
                implied_g,
            };
            subcomplex_result(k, current, rebuilt, start)
        }
        CoreKind::StrongInternalCore | CoreKind::Combined => {
            if !current.is_empty() {
                return Err(mismatch(n, "vertices remain at the end of the trace".into()));
            }
            check_acyclic(k, &matching)?;
            critical.sort();
            let implied_g = match trace.kind {
                CoreKind::StrongInternalCore => Some(vertex_function_from_trace(k, trace)?),
                _ => None,
            };
            internal_result(k, trace.kind, trace.steps.clone(), matching, critical, implied_g, start)?
        }
    };
    if result.trace.final_matching != trace.final_matching {
        return Err(mismatch(n, "recorded matching differs from the replayed one".into()));
    }
    if result.trace.critical_set != trace.critical_set {
        return Err(mismatch(n, "recorded critical set differs from the replayed one".into()));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morse::{classify_vertices, matching_from_vertex_function};
    use crate::poset::ElementKey;

    fn cx(facets: &[&[i64]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets).unwrap()
    }

    fn s(vs: &[u32]) -> Simplex {
        Simplex::from(vs)
    }

    fn sphere() -> SimplicialComplex {
        cx(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    fn simplex(n: i64) -> SimplicialComplex {
        let f: Vec<i64> = (0..=n).collect();
        SimplicialComplex::from_facets(&[f]).unwrap()
    }

    #[test]
    fn method_names_round_trip() {
        for kind in CoreKind::ALL {
            assert_eq!(kind.name().parse::<CoreKind>().unwrap(), kind);
        }
        assert!("strong".parse::<CoreKind>().is_err());
    }

    #[test]
    fn strong_core_examples() {
        for seed in 0..5 {
            let r = minimal_strong_core(&simplex(5), &mut RandomPolicy::new(seed));
            assert_eq!(r.output_size, 1);
            let r = minimal_strong_core(&sphere(), &mut RandomPolicy::new(seed));
            assert_eq!(r.output_size, 14);
            assert!(r.trace.steps.is_empty());
        }
    }

    #[test]
    fn weak_core_examples() {
        for seed in 0..5 {
            assert_eq!(minimal_weak_core(&simplex(2), &mut RandomPolicy::new(seed)).output_size, 1);
            let path = cx(&[&[0, 1], &[1, 2]]);
            assert_eq!(minimal_weak_core(&path, &mut RandomPolicy::new(seed)).output_size, 1);
        }
    }

    #[test]
    fn strong_reduction_counts() {
        for seed in 0..10 {
            let r = strong_morse_reduction(&simplex(2), &mut RandomPolicy::new(seed));
            assert_eq!((r.critical.len(), r.matching.len()), (1, 3));
            let r = strong_morse_reduction(&sphere(), &mut RandomPolicy::new(seed));
            assert_eq!((r.critical.len(), r.matching.len()), (8, 3));
            assert!(matches!(r.steps[0], Step::CriticalRemoval { ref star, .. } if star.len() == 7));
        }
        let r = strong_morse_reduction(&cx(&[&[5]]), &mut RandomPolicy::new(0));
        assert_eq!(r.critical, vec![s(&[0])]);
        assert!(r.matching.is_empty());
    }

    #[test]
    fn forced_order_reproduces_the_sphere_example() {
        let k = sphere();
        let r = strong_internal_core(&k, &mut FixedOrder::new(&[3, 2, 1, 0])).unwrap();
        assert_eq!(
            r.trace.final_matching,
            Matching::new(vec![
                (s(&[1]), s(&[0, 1])),
                (s(&[2]), s(&[1, 2])),
                (s(&[0, 2]), s(&[0, 1, 2])),
            ])
        );
        let p = r.critical_poset().unwrap();
        assert_eq!(p.grade_counts(), vec![2, 3, 3]);
        let pos = |v: &[u32]| p.position(&ElementKey::Cell(s(v))).unwrap();
        assert!(p.upper_covers(pos(&[0])).contains(&pos(&[1, 3])));
        assert!(p.upper_covers(pos(&[3])).contains(&pos(&[1, 3])));
        let g = r.trace.implied_g.unwrap();
        assert_eq!(g.values(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn implied_function_marks_the_critical_removals() {
        for seed in 0..10 {
            for k in [simplex(2), sphere(), cx(&[&[0, 1, 2], &[2, 3], &[3, 4, 5], &[1, 5]])] {
                let r = strong_morse_reduction(&k, &mut RandomPolicy::new(seed));
                let critical_vertices: Vec<VertexId> = {
                    let mut v: Vec<_> = r
                        .steps
                        .iter()
                        .filter_map(|st| match st {
                            Step::CriticalRemoval { vertex, .. } => Some(*vertex),
                            _ => None,
                        })
                        .collect();
                    v.sort_unstable();
                    v
                };
                assert_eq!(classify_vertices(&k, &r.implied_g).strong_critical(), critical_vertices);
                let (_, c) = matching_from_vertex_function(&k, &r.implied_g);
                assert_eq!(c, r.critical);
            }
        }
    }

    #[test]
    fn strong_core_trace_function() {
        let k = cx(&[&[0, 1, 2], &[0, 3], &[3, 4], &[0, 4]]);
        let r = minimal_strong_core(&k, &mut RandomPolicy::new(3));
        let g = vertex_function_from_trace(&k, &r.trace).unwrap();
        let (_, c) = matching_from_vertex_function(&k, &g);
        let core: Vec<Simplex> = r.core_complex().unwrap().simplices().cloned().collect();
        assert_eq!(c, core);
        let empty = ReductionTrace {
            kind: CoreKind::StrongCore,
            steps: vec![],
            final_matching: Matching::default(),
            critical_set: vec![],
            implied_g: None,
        };
        assert!(vertex_function_from_trace(&k, &empty).unwrap().values().iter().all(|x| *x == 0.0));
        let weak = minimal_weak_core(&k, &mut RandomPolicy::new(0));
        assert!(matches!(
            vertex_function_from_trace(&k, &weak.trace),
            Err(Error::UnsupportedTrace(_))
        ));
    }

    #[test]
    fn replay_reproduces_every_engine() {
        let k = cx(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[0, 4], &[4, 5, 6]]);
        for kind in CoreKind::ALL {
            for seed in 0..5 {
                let r = reduce(&k, kind, &mut RandomPolicy::new(seed)).unwrap();
                let again = replay(&k, &r.trace).unwrap();
                assert_eq!(again.shape, r.shape);
                assert_eq!(again.trace, r.trace);
            }
        }
    }

    #[test]
    fn replay_rejects_tampering() {
        let k = sphere();
        let mut r = strong_internal_core(&k, &mut RandomPolicy::new(1)).unwrap();
        r.trace.steps.swap(0, 1);
        assert!(matches!(replay(&k, &r.trace), Err(Error::ReplayMismatch { .. })));
    }

    #[test]
    fn seeds_are_reproducible() {
        let k = cx(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[0, 4]]);
        for kind in CoreKind::ALL {
            let a = reduce(&k, kind, &mut RandomPolicy::for_iteration(9, 2)).unwrap();
            let b = reduce(&k, kind, &mut RandomPolicy::for_iteration(9, 2)).unwrap();
            assert_eq!(a.trace, b.trace);
        }
    }
}
