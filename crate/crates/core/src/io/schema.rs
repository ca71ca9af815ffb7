//! JSON documents for matchings, posets, traces and results. Simplices are
//! written as lists of the original input labels.

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex, VertexFunction, VertexId};
use crate::error::{Error, Result};
use crate::homology::VerificationReport;
use crate::morse::Matching;
use crate::poset::{ElementKey, FinitePoset};
use crate::reduce::{CoreKind, CoreResult, CoreShape, ReductionTrace, Step};

pub type LabeledSimplex = Vec<i64>;

fn vertex_from_label(k: &SimplicialComplex, label: i64) -> Result<VertexId> {
    k.id_of_label(label).ok_or(Error::UnknownLabel(label))
}

fn simplex_from_doc(k: &SimplicialComplex, labels: &[i64]) -> Result<Simplex> {
    let ids = labels
        .iter()
        .map(|&l| vertex_from_label(k, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Simplex::new(ids))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingDoc {
    pub pairs: Vec<(LabeledSimplex, LabeledSimplex)>,
}

impl MatchingDoc {
    pub fn new(k: &SimplicialComplex, m: &Matching) -> Self {
        MatchingDoc {
            pairs: m.pairs().iter().map(|(a, b)| (k.labeled(a), k.labeled(b))).collect(),
        }
    }

    pub fn to_matching(&self, k: &SimplicialComplex) -> Result<Matching> {
        self.pairs
            .iter()
            .map(|(a, b)| Ok((simplex_from_doc(k, a)?, simplex_from_doc(k, b)?)))
            .collect::<Result<Vec<_>>>()
            .map(Matching::new)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetElementDoc {
    /// One simplex for a singleton class, two for a matched pair.
    pub members: Vec<LabeledSimplex>,
    pub grade: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<PosetElementDoc>,
    /// Index pairs `[x, y]` with `x ⋖ y`.
    pub covers: Vec<(usize, usize)>,
}

impl PosetDoc {
    pub fn new(k: &SimplicialComplex, p: &FinitePoset) -> Self {
        let elements = (0..p.len())
            .map(|i| {
                let members = match p.key(i) {
                    ElementKey::Cell(s) => vec![k.labeled(s)],
                    ElementKey::Class(a, b) => vec![k.labeled(a), k.labeled(b)],
                    ElementKey::Named(_) => Vec::new(),
                };
                PosetElementDoc {
                    members,
                    grade: p.grade(i),
                }
            })
            .collect();
        PosetDoc {
            elements,
            covers: p.covers().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum StepDoc {
    StrongCollapse { vertex: i64, witness: i64 },
    CriticalRemoval { vertex: i64, star: Vec<LabeledSimplex> },
    WeakCollapse { sigma: LabeledSimplex, tau: LabeledSimplex },
    FacetRemoval { sigma: LabeledSimplex },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub method: String,
    pub steps: Vec<StepDoc>,
    pub matching: Vec<(LabeledSimplex, LabeledSimplex)>,
    pub critical: Vec<LabeledSimplex>,
    /// `(label, value)` pairs sorted by label.
    pub implied_g: Option<Vec<(i64, f64)>>,
}

impl TraceDoc {
    pub fn new(k: &SimplicialComplex, t: &ReductionTrace) -> Self {
        let steps = t
            .steps
            .iter()
            .map(|s| match s {
                Step::StrongCollapse { vertex, witness } => StepDoc::StrongCollapse {
                    vertex: k.label(*vertex),
                    witness: k.label(*witness),
                },
                Step::CriticalRemoval { vertex, star } => StepDoc::CriticalRemoval {
                    vertex: k.label(*vertex),
                    star: star.iter().map(|s| k.labeled(s)).collect(),
                },
                Step::WeakCollapse { sigma, tau } => StepDoc::WeakCollapse {
                    sigma: k.labeled(sigma),
                    tau: k.labeled(tau),
                },
                Step::FacetRemoval { sigma } => StepDoc::FacetRemoval { sigma: k.labeled(sigma) },
            })
            .collect();
        let implied_g = t.implied_g.as_ref().map(|g| {
            let mut v: Vec<(i64, f64)> = k.vertices().iter().map(|&v| (k.label(v), g.value(v))).collect();
            v.sort_by_key(|(l, _)| *l);
            v
        });
        TraceDoc {
            method: t.kind.name().to_string(),
            steps,
            matching: MatchingDoc::new(k, &t.final_matching).pairs,
            critical: t.critical_set.iter().map(|s| k.labeled(s)).collect(),
            implied_g,
        }
    }

    pub fn to_trace(&self, k: &SimplicialComplex) -> Result<ReductionTrace> {
        let kind: CoreKind = self
            .method
            .parse()
            .map_err(|e: String| Error::UnsupportedTrace(e))?;
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Ok(match s {
                    StepDoc::StrongCollapse { vertex, witness } => Step::StrongCollapse {
                        vertex: vertex_from_label(k, *vertex)?,
                        witness: vertex_from_label(k, *witness)?,
                    },
                    StepDoc::CriticalRemoval { vertex, star } => Step::CriticalRemoval {
                        vertex: vertex_from_label(k, *vertex)?,
                        star: star.iter().map(|s| simplex_from_doc(k, s)).collect::<Result<_>>()?,
                    },
                    StepDoc::WeakCollapse { sigma, tau } => Step::WeakCollapse {
                        sigma: simplex_from_doc(k, sigma)?,
                        tau: simplex_from_doc(k, tau)?,
                    },
                    StepDoc::FacetRemoval { sigma } => Step::FacetRemoval {
                        sigma: simplex_from_doc(k, sigma)?,
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut critical_set = self
            .critical
            .iter()
            .map(|s| simplex_from_doc(k, s))
            .collect::<Result<Vec<_>>>()?;
        critical_set.sort();
        let implied_g = match &self.implied_g {
            None => None,
            Some(values) => {
                let mut g = vec![0.0; k.labels().len()];
                for &(label, value) in values {
                    g[vertex_from_label(k, label)? as usize] = value;
                }
                Some(VertexFunction::new(g))
            }
        };
        Ok(ReductionTrace {
            kind,
            steps,
            final_matching: MatchingDoc { pairs: self.matching.clone() }.to_matching(k)?,
            critical_set,
            implied_g,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub method: String,
    pub input_size: usize,
    pub output_size: usize,
    /// Facets of the core, for subcomplex methods.
    pub core_facets: Option<Vec<LabeledSimplex>>,
    /// The critical poset, for internal-core methods.
    pub critical_poset: Option<PosetDoc>,
    pub trace: TraceDoc,
}

impl ResultDoc {
    pub fn new(k: &SimplicialComplex, r: &CoreResult) -> Self {
        let (core_facets, critical_poset) = match &r.shape {
            CoreShape::Complex(c) => (Some(c.facets().iter().map(|f| c.labeled(f)).collect()), None),
            CoreShape::Poset(p) => (None, Some(PosetDoc::new(k, p))),
        };
        ResultDoc {
            method: r.kind.name().to_string(),
            input_size: r.input_size,
            output_size: r.output_size,
            core_facets,
            critical_poset,
            trace: TraceDoc::new(k, &r.trace),
        }
    }
}

/// The serializable part of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationDoc {
    pub passed: bool,
    pub euler: bool,
    pub homology: bool,
    pub thin: Option<bool>,
    pub cell_counts: bool,
    pub output_homology: crate::homology::HomologyProfile,
    pub failures: Vec<String>,
}

impl From<&VerificationReport> for VerificationDoc {
    fn from(v: &VerificationReport) -> Self {
        VerificationDoc {
            passed: v.passed(),
            euler: v.euler_ok,
            homology: v.homology_ok,
            thin: v.thin,
            cell_counts: v.cell_counts_ok,
            output_homology: v.output_homology.clone(),
            failures: v.failures.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::{reduce, replay, RandomPolicy};

    #[test]
    fn trace_documents_round_trip_with_labels() {
        let k = SimplicialComplex::from_facets(&[[10, 20, 30], [20, 30, 40], [40, 50, 10]]).unwrap();
        for kind in CoreKind::ALL {
            let r = reduce(&k, kind, &mut RandomPolicy::new(4)).unwrap();
            let doc = TraceDoc::new(&k, &r.trace);
            let text = serde_json::to_string(&doc).unwrap();
            let back: TraceDoc = serde_json::from_str(&text).unwrap();
            let trace = back.to_trace(&k).unwrap();
            assert_eq!(trace, r.trace);
            assert_eq!(replay(&k, &trace).unwrap().shape, r.shape);
        }
    }

    #[test]
    fn unknown_labels_are_reported() {
        let k = SimplicialComplex::from_facets(&[[1, 2]]).unwrap();
        let doc = MatchingDoc {
            pairs: vec![(vec![3], vec![1, 3])],
        };
        assert!(matches!(doc.to_matching(&k), Err(Error::UnknownLabel(3))));
    }

    #[test]
    fn step_encoding() {
        let s = StepDoc::StrongCollapse { vertex: 4, witness: 1 };
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"op":"strong_collapse","vertex":4,"witness":1}"#
        );
    }
}
