mod common;

use common::{acyclic_by_closure, complex_strategy, random_acyclic_matching};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strong_morse::morse::{
    classify_vertices, critical_simplices, descending_star, is_discrete_morse, matching_from_morse,
    matching_from_vertex_function, morse_from_matching, VertexTag,
};
use strong_morse::poset::{critical_subposet, face_poset, localization, order_complex};
use strong_morse::{validate_matching, Error, Matching, Simplex, SimplicialComplex, VertexFunction};

fn injective_g(k: &SimplicialComplex, seed: u64) -> VertexFunction {
    let mut values: Vec<f64> = (0..k.labels().len()).map(|i| i as f64).collect();
    values.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    VertexFunction::new(values)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vertex_function_matchings_are_acyclic(k in complex_strategy(), seed in any::<u64>()) {
        let g = injective_g(&k, seed);
        let (m, c) = matching_from_vertex_function(&k, &g);
        prop_assert!(validate_matching(&k, &m).is_valid());
        prop_assert!(acyclic_by_closure(&k, &m));
        prop_assert_eq!(c.len(), k.num_simplices() - 2 * m.len());
    }

    #[test]
    fn critical_cells_match_descending_stars(k in complex_strategy(), seed in any::<u64>()) {
        let g = injective_g(&k, seed);
        let (m, c) = matching_from_vertex_function(&k, &g);
        let crit = critical_subposet(&localization(&face_poset(&k), &m).unwrap(), &c).unwrap();
        let mut expected = vec![0usize; k.dim().unwrap() + 1];
        for v in classify_vertices(&k, &g).strong_critical() {
            for s in descending_star(&k, &g, v).unwrap() {
                expected[s.dim()] += 1;
            }
        }
        let mut got = crit.grade_counts();
        got.resize(expected.len(), 0);
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn non_critical_levels_strong_collapse(k in complex_strategy(), seed in any::<u64>(), top in 0usize..8, cut in 0usize..8) {
        let g = injective_g(&k, seed);
        let classes = classify_vertices(&k, &g);
        let mut order: Vec<u32> = k.vertices().to_vec();
        order.sort_by(|a, b| g.value(*b).total_cmp(&g.value(*a)));
        // K_β for β the value of order[top]; then a run below β without strong critical vertices
        let top = top % order.len();
        let mut current = k.full_subcomplex(&order[top..]).unwrap();
        let run: Vec<u32> = order[top..]
            .iter()
            .copied()
            .take_while(|&v| classes.tag(v) != Some(VertexTag::StrongCritical))
            .take(cut)
            .collect();
        for v in &run {
            prop_assert!(current.is_dominated(*v).unwrap());
            current = current.remove_vertex(*v).unwrap();
        }
        let rest: Vec<u32> = order[top + run.len()..].to_vec();
        if rest.is_empty() {
            prop_assert!(current.is_empty());
        } else {
            prop_assert_eq!(current, k.full_subcomplex(&rest).unwrap());
        }
    }

    #[test]
    fn classification_depends_only_on_order(k in complex_strategy(), seed in any::<u64>()) {
        let g = injective_g(&k, seed);
        let h = VertexFunction::new(g.values().iter().map(|x| x.powi(3) * 0.5 - 7.0).collect());
        prop_assert_eq!(classify_vertices(&k, &g), classify_vertices(&k, &h));
    }

    #[test]
    fn validation_agrees_with_the_closure_oracle(k in complex_strategy(), seed in any::<u64>()) {
        // any disjoint set of cover pairs, acyclic or not
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut covers: Vec<(Simplex, Simplex)> = k
            .simplices()
            .flat_map(|t| t.boundary_faces().map(move |s| (s, t.clone())))
            .collect();
        covers.shuffle(&mut rng);
        let mut used = std::collections::BTreeSet::new();
        let mut pairs = Vec::new();
        for (s, t) in covers {
            if !used.contains(&s) && !used.contains(&t) {
                used.insert(s.clone());
                used.insert(t.clone());
                pairs.push((s, t));
            }
        }
        let m = Matching::new(pairs);
        let oracle = acyclic_by_closure(&k, &m);
        prop_assert_eq!(validate_matching(&k, &m).acyclic, oracle);
        if k.num_simplices() <= 12 {
            match localization(&face_poset(&k), &m) {
                Ok(loc) => {
                    prop_assert!(oracle);
                    prop_assert_eq!(loc.poset.len(), k.num_simplices() - m.len());
                }
                Err(Error::MatchingNotAcyclic(_)) => prop_assert!(!oracle),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }

    #[test]
    fn morse_round_trip(k in complex_strategy(), seed in any::<u64>()) {
        let m = random_acyclic_matching(&k, seed);
        let f = morse_from_matching(&k, &m).unwrap();
        prop_assert!(is_discrete_morse(&k, &f));
        prop_assert_eq!(matching_from_morse(&k, &f).unwrap(), m.clone());
        let matched = m.matched_simplices();
        let unmatched: Vec<Simplex> = k.simplices().filter(|s| !matched.contains(*s)).cloned().collect();
        prop_assert_eq!(critical_simplices(&k, &f).unwrap(), unmatched);
    }

    #[test]
    fn critical_subposet_is_the_restricted_order(k in complex_strategy(), seed in any::<u64>()) {
        let m = random_acyclic_matching(&k, seed);
        let loc = localization(&face_poset(&k), &m).unwrap();
        prop_assert_eq!(loc.poset.len(), k.num_simplices() - m.len());
        let matched = m.matched_simplices();
        let c: Vec<Simplex> = k.simplices().filter(|s| !matched.contains(*s)).cloned().collect();
        let crit = critical_subposet(&loc, &c).unwrap();
        for i in 0..crit.len() {
            for j in 0..crit.len() {
                let (ci, cj) = (
                    loc.class_of_key(crit.key(i)).unwrap(),
                    loc.class_of_key(crit.key(j)).unwrap(),
                );
                prop_assert_eq!(crit.less(i, j), loc.poset.less(ci, cj));
            }
        }
    }

    #[test]
    fn order_complex_counts_chains(k in complex_strategy()) {
        let x = face_poset(&k);
        let sd = order_complex(&x);
        // chains with d+1 elements, counted directly over the simplex lists
        let simplices: Vec<&Simplex> = k.simplices().collect();
        let mut counts = vec![0usize; k.dim().unwrap() + 1];
        fn extend(ss: &[&Simplex], last: usize, len: usize, counts: &mut [usize]) {
            counts[len - 1] += 1;
            for (j, t) in ss.iter().enumerate() {
                if t.len() > ss[last].len() && ss[last].is_face_of(t) {
                    extend(ss, j, len + 1, counts);
                }
            }
        }
        for i in 0..simplices.len() {
            extend(&simplices, i, 1, &mut counts);
        }
        prop_assert_eq!(sd.f_vector(), counts);
    }
}
