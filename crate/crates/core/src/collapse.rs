//! Incremental bookkeeping for elementary collapses on a shrinking
//! subcomplex of a fixed complex.

use crate::complex::{Simplex, SimplicialComplex};
use crate::poset::{face_poset, FinitePoset};

pub(crate) struct CollapseState<'a> {
    complex: &'a SimplicialComplex,
    hasse: FinitePoset,
    alive: Vec<bool>,
    /// Number of alive codimension-one cofaces.
    updeg: Vec<usize>,
    free: Vec<usize>,
    slot: Vec<Option<usize>>,
}

impl<'a> CollapseState<'a> {
    pub fn new(complex: &'a SimplicialComplex) -> Self {
        let hasse = face_poset(complex);
        let n = hasse.len();
        let updeg = (0..n).map(|i| hasse.upper_covers(i).len()).collect();
        let mut state = CollapseState {
            complex,
            hasse,
            alive: vec![true; n],
            updeg,
            free: Vec::new(),
            slot: vec![None; n],
        };
        for i in 0..n {
            state.refresh(i);
        }
        state
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.complex.index_of(s)
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        self.hasse.key(i).as_cell().expect("face poset keys are cells")
    }

    pub fn is_alive(&self, i: usize) -> bool {
        self.alive[i]
    }

    /// Current free faces, in a deterministic order.
    pub fn free_faces(&self) -> &[usize] {
        &self.free
    }

    /// The unique alive codimension-one coface of `i`, if `i` is free.
    pub fn free_coface(&self, i: usize) -> Option<usize> {
        if !self.alive[i] || self.updeg[i] != 1 {
            return None;
        }
        let tau = self
            .hasse
            .upper_covers(i)
            .iter()
            .copied()
            .find(|&j| self.alive[j])?;
        (self.updeg[tau] == 0).then_some(tau)
    }

    fn refresh(&mut self, i: usize) {
        let free = self.free_coface(i).is_some();
        match (free, self.slot[i]) {
            (true, None) => {
                self.slot[i] = Some(self.free.len());
                self.free.push(i);
            }
            (false, Some(pos)) => {
                self.free.swap_remove(pos);
                if let Some(&moved) = self.free.get(pos) {
                    self.slot[moved] = Some(pos);
                }
                self.slot[i] = None;
            }
            _ => {}
        }
    }

    fn kill(&mut self, i: usize) {
        self.alive[i] = false;
        let faces: Vec<usize> = self.hasse.lower_covers(i).to_vec();
        for f in faces {
            self.updeg[f] -= 1;
        }
    }

    fn refresh_below(&mut self, top: usize) {
        let faces: Vec<usize> = self.hasse.lower_covers(top).to_vec();
        self.refresh(top);
        for f in faces {
            self.refresh(f);
            let second: Vec<usize> = self.hasse.lower_covers(f).to_vec();
            for g in second {
                self.refresh(g);
            }
        }
    }

    /// Removes the pair `(sigma, tau)`; the caller must have checked that
    /// `sigma` is free with coface `tau`.
    pub fn collapse(&mut self, sigma: usize, tau: usize) {
        debug_assert_eq!(self.free_coface(sigma), Some(tau));
        self.kill(tau);
        self.kill(sigma);
        self.refresh_below(tau);
    }

    /// Removes a maximal simplex.
    pub fn remove_maximal(&mut self, i: usize) -> bool {
        if !self.alive[i] || self.updeg[i] != 0 {
            return false;
        }
        self.kill(i);
        self.refresh_below(i);
        true
    }

    #[cfg(test)]
    pub fn alive_simplices(&self) -> Vec<Simplex> {
        (0..self.alive.len())
            .filter(|&i| self.alive[i])
            .map(|i| self.simplex(i).clone())
            .collect()
    }

    pub fn current_complex(&self) -> SimplicialComplex {
        let maximal = (0..self.alive.len())
            .filter(|&i| self.alive[i] && self.updeg[i] == 0)
            .map(|i| self.simplex(i).clone())
            .collect();
        self.complex.sibling(maximal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_collapses_to_a_point() {
        let k = SimplicialComplex::from_facets(&[[0, 1, 2]]).unwrap();
        let mut st = CollapseState::new(&k);
        assert_eq!(st.free_faces().len(), 3);
        while let Some(&s) = st.free_faces().first() {
            let t = st.free_coface(s).unwrap();
            st.collapse(s, t);
        }
        assert_eq!(st.alive_simplices().len(), 1);
        assert_eq!(st.current_complex().num_simplices(), 1);
    }

    #[test]
    fn free_set_matches_brute_force() {
        let k = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![2, 3], vec![1, 2, 4], vec![5]]).unwrap();
        let mut st = CollapseState::new(&k);
        loop {
            let current = st.current_complex();
            let mut brute: Vec<usize> = current
                .simplices()
                .filter(|s| current.free_face(s).unwrap().is_some())
                .map(|s| k.index_of(s).unwrap())
                .collect();
            brute.sort_unstable();
            let mut got = st.free_faces().to_vec();
            got.sort_unstable();
            assert_eq!(got, brute);
            let Some(&s) = st.free_faces().last() else { break };
            let t = st.free_coface(s).unwrap();
            st.collapse(s, t);
        }
    }
}
