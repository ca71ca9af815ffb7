//! Integer simplicial homology through Smith normal form, and the
//! verification of reductions against it.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::poset::{order_complex, FinitePoset};
use crate::reduce::{CoreResult, CoreShape};

/// The boundary map from `dim`-simplices to `(dim - 1)`-simplices.
///
/// Rows and columns follow the canonical order of the complex. Columns are
/// stored sparsely as `(row, entry)` lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub dim: usize,
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl BoundaryMatrix {
    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.columns[col]
            .iter()
            .find(|(r, _)| *r == row)
            .map_or(0, |(_, e)| *e)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, e) in col {
                m.set(r, c, BigInt::from(e));
            }
        }
        m
    }

    /// Whether `self ∘ next` vanishes, where `next` is the boundary map one
    /// dimension up.
    pub fn composes_to_zero(&self, next: &BoundaryMatrix) -> bool {
        next.columns.iter().all(|col| {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(mid, e) in col {
                for &(r, f) in &self.columns[mid] {
                    *acc.entry(r).or_default() += e * f;
                }
            }
            acc.values().all(|v| *v == 0)
        })
    }
}

/// `∂_1, …, ∂_N` for a complex of dimension `N`. The sign of a face is
/// `(-1)^i` where `i` is the position of the omitted vertex.
pub fn boundary_matrices(k: &SimplicialComplex) -> Vec<BoundaryMatrix> {
    let Some(top) = k.dim() else { return Vec::new() };
    (1..=top)
        .map(|d| {
            let lower = k.simplices_of_dim(d - 1);
            let row_of: std::collections::HashMap<_, usize> =
                lower.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let columns = k
                .simplices_of_dim(d)
                .iter()
                .map(|s| {
                    let mut col: Vec<(usize, i64)> = s
                        .boundary_faces()
                        .enumerate()
                        .map(|(i, f)| (row_of[&f], if i % 2 == 0 { 1 } else { -1 }))
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            BoundaryMatrix {
                dim: d,
                rows: lower.len(),
                cols: k.simplices_of_dim(d).len(),
                columns,
            }
        })
        .collect()
}

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, &e) in row.iter().enumerate() {
                m.set(r, c, BigInt::from(e));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[target] -= q * row[source]`
    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for c in 0..self.cols {
            let delta = q * self.get(source, c);
            if !delta.is_zero() {
                self.data[target * self.cols + c] -= delta;
            }
        }
    }

    fn sub_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for r in 0..self.rows {
            let delta = q * self.get(r, source);
            if !delta.is_zero() {
                self.data[r * self.cols + target] -= delta;
            }
        }
    }
}

/// The nonzero invariant factors `d_1 | d_2 | …` of a matrix, all positive.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut columns: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); m.cols];
    for (c, col) in columns.iter_mut().enumerate() {
        for r in 0..m.rows {
            let e = m.get(r, c);
            if !e.is_zero() {
                col.push((r, e.clone()));
            }
        }
    }
    invariant_factors(m.rows, columns)
}

/// Diagonal of the Smith normal form of a dense matrix, computed directly
/// with smallest-absolute-value pivoting.
fn dense_snf(mut a: IntMatrix) -> Vec<BigInt> {
    let mut diag = Vec::new();
    let (rows, cols) = (a.rows, a.cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let e = a.get(r, c);
                if !e.is_zero() && best.is_none_or(|(br, bc)| e.abs() < a.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            let pivot = a.get(t, t).clone();
            let mut dirty = false;
            for r in t + 1..rows {
                if !a.get(r, t).is_zero() {
                    let q = a.get(r, t).div_floor(&pivot);
                    a.sub_row(r, t, &q);
                    dirty |= !a.get(r, t).is_zero();
                }
            }
            for c in t + 1..cols {
                if !a.get(t, c).is_zero() {
                    let q = a.get(t, c).div_floor(&pivot);
                    a.sub_col(c, t, &q);
                    dirty |= !a.get(t, c).is_zero();
                }
            }
            if dirty {
                move_smallest_to_pivot(&mut a, t);
                continue;
            }
            // divisibility of the trailing block
            let offender = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let minus_one = -BigInt::one();
                    a.sub_row(t, r, &minus_one);
                }
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
        t += 1;
    }
    diag
}

/// Moves the smallest nonzero entry of row `t` and column `t` to `(t, t)`.
fn move_smallest_to_pivot(a: &mut IntMatrix, t: usize) {
    let mut best = (t, t);
    for r in t..a.rows {
        let e = a.get(r, t);
        if !e.is_zero() && (a.get(best.0, best.1).is_zero() || e.abs() < a.get(best.0, best.1).abs()) {
            best = (r, t);
        }
    }
    for c in t..a.cols {
        let e = a.get(t, c);
        if !e.is_zero() && (a.get(best.0, best.1).is_zero() || e.abs() < a.get(best.0, best.1).abs()) {
            best = (t, c);
        }
    }
    a.swap_rows(t, best.0);
    a.swap_cols(t, best.1);
}

/// Invariant factors of a sparse column matrix.
///
/// Unit pivots are eliminated sparsely first; each contributes a factor 1.
/// What remains goes through the dense routine.
fn invariant_factors(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Vec<BigInt> {
    let mut cols: Vec<BTreeMap<usize, BigInt>> = columns
        .into_iter()
        .map(|c| c.into_iter().filter(|(_, e)| !e.is_zero()).collect())
        .collect();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    for (c, col) in cols.iter().enumerate() {
        for &r in col.keys() {
            row_cols[r].insert(c);
        }
    }
    let mut units = 0usize;
    loop {
        // unit entry minimizing fill-in
        let mut best: Option<(usize, usize, usize)> = None;
        for (c, col) in cols.iter().enumerate() {
            for (&r, e) in col {
                if e.magnitude().is_one() {
                    let cost = (col.len() - 1) * (row_cols[r].len() - 1);
                    if best.is_none_or(|(_, _, b)| cost < b) {
                        best = Some((r, c, cost));
                    }
                }
            }
            if matches!(best, Some((_, _, 0))) {
                break;
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pivot_col = std::mem::take(&mut cols[pc]);
        let pivot = pivot_col[&pr].clone();
        for &r in pivot_col.keys() {
            row_cols[r].remove(&pc);
        }
        let others: Vec<usize> = row_cols[pr].iter().copied().collect();
        for c in others {
            let q = &cols[c][&pr] * &pivot; // pivot is ±1, so this is the exact quotient
            for (&r, e) in &pivot_col {
                let slot = cols[c].entry(r).or_insert_with(BigInt::zero);
                *slot -= &q * e;
                if slot.is_zero() {
                    cols[c].remove(&r);
                    row_cols[r].remove(&c);
                } else {
                    row_cols[r].insert(c);
                }
            }
        }
        units += 1;
    }

    let live_rows: Vec<usize> = (0..rows).filter(|&r| !row_cols[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| !cols[c].is_empty()).collect();
    let mut factors = vec![BigInt::one(); units];
    if !live_cols.is_empty() {
        let row_pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (j, &c) in live_cols.iter().enumerate() {
            for (r, e) in &cols[c] {
                rest.set(row_pos[r], j, e.clone());
            }
        }
        factors.extend(dense_snf(rest));
    }
    factors
}

/// Betti numbers and torsion coefficients in each dimension.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
}

impl HomologyProfile {
    /// Drops trailing dimensions with vanishing homology.
    pub fn trimmed(&self) -> HomologyProfile {
        let mut out = self.clone();
        while out.betti.last() == Some(&0) && out.torsion.last().is_some_and(Vec::is_empty) {
            out.betti.pop();
            out.torsion.pop();
        }
        out
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }
}

/// Profiles compare equal when they agree after trimming.
impl PartialEq for HomologyProfile {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.trimmed(), other.trimmed());
        a.betti == b.betti && a.torsion == b.torsion
    }
}

impl Eq for HomologyProfile {}

pub fn homology(k: &SimplicialComplex) -> HomologyProfile {
    let Some(top) = k.dim() else {
        return HomologyProfile::default();
    };
    let factors: Vec<Vec<BigInt>> = boundary_matrices(k)
        .into_iter()
        .map(|b| {
            let columns = b
                .columns
                .into_iter()
                .map(|c| c.into_iter().map(|(r, e)| (r, BigInt::from(e))).collect())
                .collect();
            invariant_factors(b.rows, columns)
        })
        .collect();
    // rank[d] = rank ∂_d, with ∂_0 = ∂_{N+1} = 0
    let rank = |d: usize| -> usize {
        if d == 0 || d > top {
            0
        } else {
            factors[d - 1].len()
        }
    };
    let f = k.f_vector();
    let betti = (0..=top).map(|d| f[d] - rank(d) - rank(d + 1)).collect();
    let torsion = (0..=top)
        .map(|d| {
            if d + 1 > top {
                return Vec::new();
            }
            let mut t: Vec<u64> = factors[d]
                .iter()
                .filter(|x| !x.is_one())
                .map(|x| x.to_u64().expect("torsion coefficient exceeds u64"))
                .collect();
            t.sort_unstable();
            t
        })
        .collect();
    HomologyProfile { betti, torsion }
}

/// Outcome of checking a reduction against its input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub input_homology: HomologyProfile,
    pub output_homology: HomologyProfile,
    pub euler_ok: bool,
    pub homology_ok: bool,
    /// `None` when the output is a subcomplex, whose face poset is always thin.
    pub thin: Option<bool>,
    pub cell_counts_ok: bool,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn poset_euler(p: &FinitePoset) -> Option<i64> {
    let mut chi = 0i64;
    for i in 0..p.len() {
        let g = p.grade(i)?;
        chi += if g % 2 == 0 { 1 } else { -1 };
    }
    Some(chi)
}

/// Checks Euler characteristic, homology, thinness and the cell counts of
/// `result` against `k`.
pub fn verify_reduction(k: &SimplicialComplex, result: &CoreResult) -> VerificationReport {
    let input_homology = homology(k);
    let mut failures = Vec::new();
    let (output_homology, euler_ok, thin, cell_counts_ok) = match &result.shape {
        CoreShape::Complex(core) => {
            let h = homology(core);
            let euler_ok = core.euler_characteristic() == k.euler_characteristic();
            let counts = core.num_simplices() == result.trace.critical_set.len();
            (h, euler_ok, None, counts)
        }
        CoreShape::Poset(p) => {
            let h = homology(&order_complex(p));
            let euler_ok = poset_euler(p) == Some(k.euler_characteristic());
            let thin = match p.is_thin_with_bottom() {
                Ok(report) => {
                    if let Some(v) = &report.violation {
                        failures.push(format!("critical poset is not thin: {v:?}"));
                    }
                    report.thin
                }
                Err(e) => {
                    failures.push(format!("critical poset is not graded: {e}"));
                    false
                }
            };
            let mut expected = vec![0usize; k.dim().map_or(0, |d| d + 1)];
            for s in &result.trace.critical_set {
                expected[s.dim()] += 1;
            }
            let mut got = p.grade_counts();
            got.resize(expected.len().max(got.len()), 0);
            expected.resize(got.len(), 0);
            (h, euler_ok, Some(thin), got == expected)
        }
    };
    let homology_ok = output_homology == input_homology;
    if !euler_ok {
        failures.push("Euler characteristic differs".to_string());
    }
    if !homology_ok {
        failures.push(format!(
            "homology differs: input {input_homology:?}, output {output_homology:?}"
        ));
    }
    if !cell_counts_ok {
        failures.push("cell counts do not match the critical set".to_string());
    }
    VerificationReport {
        input_homology,
        output_homology,
        euler_ok,
        homology_ok,
        thin,
        cell_counts_ok,
        failures,
    }
}
