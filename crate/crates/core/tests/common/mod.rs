//! Random inputs and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strong_morse::{Matching, Simplex, SimplicialComplex};

/// Facet lists on at most 7 vertices: 1 to 8 facets of 1 to 4 vertices.
pub fn random_facets(seed: u64) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=7i64);
    let count = rng.gen_range(1..=8);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=4usize.min(n as usize));
            let mut vs: Vec<i64> = (0..n).collect();
            vs.shuffle(&mut rng);
            vs.truncate(size);
            vs
        })
        .collect()
}

pub fn random_complex(seed: u64) -> SimplicialComplex {
    SimplicialComplex::from_facets(&random_facets(seed)).unwrap()
}

pub fn facets_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::btree_set(0..7i64, 1..=4), 1..=8)
        .prop_map(|fs| fs.into_iter().map(|f| f.into_iter().collect()).collect())
}

pub fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    facets_strategy().prop_map(|fs| SimplicialComplex::from_facets(&fs).unwrap())
}

/// Acyclicity by brute force: the quotient of the face order by the
/// matching, closed transitively, must be antisymmetric.
pub fn acyclic_by_closure(k: &SimplicialComplex, m: &Matching) -> bool {
    let simplices: Vec<&Simplex> = k.simplices().collect();
    let n = simplices.len();
    let idx: HashMap<&Simplex, usize> = simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut class: Vec<usize> = (0..n).collect();
    for (a, b) in m.pairs() {
        class[idx[b]] = idx[a];
    }
    let mut reach = vec![vec![false; n]; n];
    for (i, s) in simplices.iter().enumerate() {
        for (j, t) in simplices.iter().enumerate() {
            if t.len() == s.len() + 1 && s.is_face_of(t) && class[i] != class[j] {
                reach[class[i]][class[j]] = true;
            }
        }
    }
    for via in 0..n {
        for a in 0..n {
            if reach[a][via] {
                for b in 0..n {
                    if reach[via][b] {
                        reach[a][b] = true;
                    }
                }
            }
        }
    }
    (0..n).all(|a| !reach[a][a])
}

/// A random acyclic matching built greedily from shuffled cover pairs.
pub fn random_acyclic_matching(k: &SimplicialComplex, seed: u64) -> Matching {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covers: Vec<(Simplex, Simplex)> = k
        .simplices()
        .flat_map(|t| t.boundary_faces().map(move |s| (s, t.clone())))
        .filter(|(s, _)| !s.is_empty())
        .collect();
    covers.shuffle(&mut rng);
    let mut used = BTreeSet::new();
    let mut pairs = Vec::new();
    for (s, t) in covers {
        if used.contains(&s) || used.contains(&t) || rng.gen_bool(0.3) {
            continue;
        }
        pairs.push((s.clone(), t.clone()));
        if acyclic_by_closure(k, &Matching::new(pairs.clone())) {
            used.insert(s);
            used.insert(t);
        } else {
            pairs.pop();
        }
    }
    Matching::new(pairs)
}

/// Rank over the rationals by fraction-free elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, p);
        for r in 0..m {
            if r != rank && a[r][col] != 0 {
                let (f, g) = (a[rank][col], a[r][col]);
                for c in 0..n {
                    a[r][c] = a[r][c] * f - a[rank][c] * g;
                }
                let gcd = a[r].iter().fold(0i128, |acc, &x| num_gcd(acc, x.abs()));
                if gcd > 1 {
                    for x in &mut a[r] {
                        *x /= gcd;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { num_gcd(b, a % b) }
}

/// Betti numbers over the rationals from dense boundary matrices built
/// directly from the simplex lists.
pub fn rational_betti(k: &SimplicialComplex) -> Vec<usize> {
    let Some(top) = k.dim() else { return Vec::new() };
    let mut ranks = vec![0usize; top + 2];
    for d in 1..=top {
        let lower = k.simplices_of_dim(d - 1);
        let rows: Vec<Vec<i64>> = lower
            .iter()
            .map(|f| {
                k.simplices_of_dim(d)
                    .iter()
                    .map(|s| match s.vertices().iter().position(|v| !f.contains(*v)) {
                        Some(i) if f.is_face_of(s) => if i % 2 == 0 { 1 } else { -1 },
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        ranks[d] = rational_rank(&rows);
    }
    let f = k.f_vector();
    (0..=top).map(|d| f[d] - ranks[d] - ranks[d + 1]).collect()
}

pub fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Whether some vertex bijection maps the facets of `a` onto those of `b`.
pub fn complexes_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    if a.f_vector() != b.f_vector() || a.vertices().len() != b.vertices().len() {
        return false;
    }
    let va = a.vertices().to_vec();
    let vb = b.vertices().to_vec();
    let target: BTreeSet<Vec<u32>> = b.facets().iter().map(|f| f.vertices().to_vec()).collect();
    let mut perm = vb.clone();
    permutations(&mut perm, 0, &mut |p| {
        let map: HashMap<u32, u32> = va.iter().copied().zip(p.iter().copied()).collect();
        a.facets().iter().all(|f| {
            let mut img: Vec<u32> = f.vertices().iter().map(|v| map[v]).collect();
            img.sort_unstable();
            target.contains(&img)
        })
    })
}

fn permutations(p: &mut Vec<u32>, k: usize, check: &mut impl FnMut(&[u32]) -> bool) -> bool {
    if k == p.len() {
        return check(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, check) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}
