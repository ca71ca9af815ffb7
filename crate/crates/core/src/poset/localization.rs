//! Quotients of a face poset by a matching and the induced critical poset.

use std::collections::HashMap;

use super::{ElementKey, FinitePoset};
use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::morse::Matching;

/// One element of a localization poset: a critical simplex or a matched pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientClass {
    pub representative: ElementKey,
    /// Positions of the members in the source poset (one or two).
    pub members: Vec<usize>,
}

/// The localization `Loc_M` of a poset together with its class map.
#[derive(Clone, Debug)]
pub struct Localization {
    pub poset: FinitePoset,
    pub classes: Vec<QuotientClass>,
    class_of: Vec<usize>,
    class_of_key: HashMap<ElementKey, usize>,
}

impl Localization {
    /// Class (element of `poset`) of the source element at `position`.
    pub fn class_of(&self, position: usize) -> usize {
        self.class_of[position]
    }

    pub fn class_of_key(&self, key: &ElementKey) -> Option<usize> {
        self.class_of_key.get(key).copied()
    }

    pub fn class_of_simplex(&self, s: &Simplex) -> Option<usize> {
        self.class_of_key(&ElementKey::Cell(s.clone()))
    }
}

/// Identifies matched pairs of `x` and orders the classes by the
/// transitive closure of the projected cover relations.
///
/// Fails with [`Error::MatchingNotAcyclic`] exactly when that closure is
/// not antisymmetric.
pub fn localization(x: &FinitePoset, matching: &Matching) -> Result<Localization> {
    let n = x.len();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    for (sigma, tau) in matching.pairs() {
        let lo = x
            .position(&ElementKey::Cell(sigma.clone()))
            .ok_or_else(|| Error::InvalidMatching(format!("{sigma} is not an element")))?;
        let hi = x
            .position(&ElementKey::Cell(tau.clone()))
            .ok_or_else(|| Error::InvalidMatching(format!("{tau} is not an element")))?;
        if !x.upper_covers(lo).contains(&hi) {
            return Err(Error::InvalidMatching(format!("{tau} does not cover {sigma}")));
        }
        for (a, b) in [(lo, hi), (hi, lo)] {
            if partner[a].is_some() {
                return Err(Error::InvalidMatching(format!(
                    "{:?} is matched twice",
                    x.key(a)
                )));
            }
            partner[a] = Some(b);
        }
    }

    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for e in 0..n {
        if class_of[e] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[e] = id;
        let class = match partner[e] {
            Some(p) => {
                class_of[p] = id;
                let (lo, hi) = if e < p { (e, p) } else { (p, e) };
                let representative = match (x.key(lo), x.key(hi)) {
                    (ElementKey::Cell(a), ElementKey::Cell(b)) => {
                        let (a, b) = if a.len() < b.len() { (a, b) } else { (b, a) };
                        ElementKey::Class(a.clone(), b.clone())
                    }
                    (a, b) => ElementKey::Named(format!("[{a:?},{b:?}]")),
                };
                QuotientClass {
                    representative,
                    members: vec![lo, hi],
                }
            }
            None => QuotientClass {
                representative: x.key(e).clone(),
                members: vec![e],
            },
        };
        classes.push(class);
    }

    let elements = classes
        .iter()
        .map(|c| {
            let grade = if c.members.len() == 1 { x.grade(c.members[0]) } else { None };
            (c.representative.clone(), grade)
        })
        .collect();
    let relations: Vec<(usize, usize)> = x
        .covers()
        .filter(|&(w, z)| class_of[w] != class_of[z])
        .map(|(w, z)| (class_of[w], class_of[z]))
        .collect();
    let poset = FinitePoset::from_relations(elements, relations).map_err(|e| match e {
        Error::CyclicRelation(at) => Error::MatchingNotAcyclic(format!("quotient has a cycle through {at}")),
        other => other,
    })?;

    let mut class_of_key = HashMap::with_capacity(n);
    for e in 0..n {
        class_of_key.insert(x.key(e).clone(), class_of[e]);
    }
    Ok(Localization {
        poset,
        classes,
        class_of,
        class_of_key,
    })
}

/// Subposet of `loc` induced by the critical simplices, with relations taken
/// from the full reachability order of the localization.
pub fn critical_subposet(loc: &Localization, critical: &[Simplex]) -> Result<FinitePoset> {
    let mut members = Vec::with_capacity(critical.len());
    for s in critical {
        let class = loc
            .class_of_simplex(s)
            .ok_or_else(|| Error::UnknownSimplex(s.clone()))?;
        if loc.classes[class].members.len() != 1 {
            return Err(Error::CriticalSimplexWasMatched(s.to_string()));
        }
        members.push(class);
    }
    members.sort_unstable();
    members.dedup();
    Ok(loc.poset.induced_subposet(&members))
}

/// Localization followed by the induced critical subposet.
pub fn critical_poset(x: &FinitePoset, critical: &[Simplex], matching: &Matching) -> Result<FinitePoset> {
    let loc = localization(x, matching)?;
    critical_subposet(&loc, critical)
}
