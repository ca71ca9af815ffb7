//! Order-isomorphism of small posets by colour refinement and
//! individualization with backtracking.

use std::collections::BTreeMap;

use super::FinitePoset;
use crate::error::{Error, Result};

pub const ISOMORPHISM_SIZE_LIMIT: usize = 256;

/// Disjoint union of the two Hasse diagrams; nodes `0..n` come from the
/// first poset and `n..2n` from the second.
struct Union<'a> {
    p: &'a FinitePoset,
    q: &'a FinitePoset,
    n: usize,
}

impl Union<'_> {
    fn down(&self, v: usize) -> Vec<usize> {
        if v < self.n {
            self.p.lower_covers(v).to_vec()
        } else {
            self.q.lower_covers(v - self.n).iter().map(|x| x + self.n).collect()
        }
    }

    fn up(&self, v: usize) -> Vec<usize> {
        if v < self.n {
            self.p.upper_covers(v).to_vec()
        } else {
            self.q.upper_covers(v - self.n).iter().map(|x| x + self.n).collect()
        }
    }

    /// Refines `colors` until the partition is stable. Colours are renamed
    /// canonically from signatures so both halves stay comparable.
    fn refine(&self, colors: &mut Vec<usize>) {
        let mut classes = count_classes(colors);
        loop {
            let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..2 * self.n)
                .map(|v| {
                    let mut d: Vec<usize> = self.down(v).into_iter().map(|x| colors[x]).collect();
                    let mut u: Vec<usize> = self.up(v).into_iter().map(|x| colors[x]).collect();
                    d.sort_unstable();
                    u.sort_unstable();
                    (colors[v], d, u)
                })
                .collect();
            let mut names: BTreeMap<&(usize, Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
            for s in &sigs {
                names.insert(s, 0);
            }
            for (i, v) in names.values_mut().enumerate() {
                *v = i;
            }
            let next: Vec<usize> = sigs.iter().map(|s| names[s]).collect();
            let next_classes = names.len();
            *colors = next;
            if next_classes == classes {
                return;
            }
            classes = next_classes;
        }
    }

    fn search(&self, mut colors: Vec<usize>) -> bool {
        self.refine(&mut colors);
        let mut left: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut right: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.n {
            left.entry(colors[v]).or_default().push(v);
            right.entry(colors[v + self.n]).or_default().push(v + self.n);
        }
        if left.len() != right.len() || left.iter().zip(&right).any(|((a, xs), (b, ys))| a != b || xs.len() != ys.len()) {
            return false;
        }
        let pick = left.iter().filter(|(_, xs)| xs.len() > 1).min_by_key(|(_, xs)| xs.len());
        match pick {
            None => {
                let mut map = vec![0usize; self.n];
                for (c, xs) in &left {
                    map[xs[0]] = right[c][0] - self.n;
                }
                self.is_isomorphism(&map)
            }
            Some((c, xs)) => {
                let x = xs[0];
                let fresh = colors.iter().max().copied().unwrap_or(0) + 1;
                right[c].iter().any(|&y| {
                    let mut next = colors.clone();
                    next[x] = fresh;
                    next[y] = fresh;
                    self.search(next)
                })
            }
        }
    }

    fn is_isomorphism(&self, map: &[usize]) -> bool {
        self.p.covers().all(|(a, b)| self.q.upper_covers(map[a]).contains(&map[b]))
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Longest chain ending at each element.
fn heights(p: &FinitePoset) -> Vec<usize> {
    let mut h = vec![usize::MAX; p.len()];
    fn visit(p: &FinitePoset, x: usize, h: &mut [usize]) -> usize {
        if h[x] != usize::MAX {
            return h[x];
        }
        let v = p
            .lower_covers(x)
            .iter()
            .map(|&y| visit(p, y, h) + 1)
            .max()
            .unwrap_or(0);
        h[x] = v;
        v
    }
    for x in 0..p.len() {
        visit(p, x, &mut h);
    }
    h
}

/// Decides whether `p` and `q` are order-isomorphic.
///
/// Grades and keys are ignored; only the order matters.
pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<bool> {
    for size in [p.len(), q.len()] {
        if size > ISOMORPHISM_SIZE_LIMIT {
            return Err(Error::SizeLimitExceeded {
                size,
                limit: ISOMORPHISM_SIZE_LIMIT,
            });
        }
    }
    if p.len() != q.len() || p.num_covers() != q.num_covers() {
        return Ok(false);
    }
    let n = p.len();
    if n == 0 {
        return Ok(true);
    }
    let union = Union { p, q, n };
    let (hp, hq) = (heights(p), heights(q));
    let initial: Vec<(usize, usize, usize)> = (0..2 * n)
        .map(|v| {
            let h = if v < n { hp[v] } else { hq[v - n] };
            (h, union.down(v).len(), union.up(v).len())
        })
        .collect();
    let mut sorted = initial.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let colors = initial
        .iter()
        .map(|sig| sorted.binary_search(sig).unwrap())
        .collect();
    Ok(union.search(colors))
}
