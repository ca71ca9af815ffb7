mod common;

use common::{complex_strategy, facets_strategy, rational_betti, rational_rank, trim};
use proptest::prelude::*;
use strong_morse::homology::{boundary_matrices, smith_normal_form, IntMatrix};
use strong_morse::poset::{face_poset, order_complex};
use strong_morse::{fixtures, homology, strong_internal_core, RandomPolicy, SimplicialComplex};

proptest! {
    #[test]
    fn boundaries_compose_to_zero(k in complex_strategy(), seed in any::<u64>()) {
        for b in boundary_matrices(&k).windows(2) {
            prop_assert!(b[0].composes_to_zero(&b[1]));
        }
        let r = strong_internal_core(&k, &mut RandomPolicy::new(seed)).unwrap();
        let oc = order_complex(r.critical_poset().unwrap());
        for b in boundary_matrices(&oc).windows(2) {
            prop_assert!(b[0].composes_to_zero(&b[1]));
        }
    }

    #[test]
    fn relabeling_keeps_homology(facets in facets_strategy(), shift in -50i64..50, scale in 1i64..5) {
        let k = SimplicialComplex::from_facets(&facets).unwrap();
        let moved: Vec<Vec<i64>> = facets.iter().map(|f| f.iter().map(|v| 6 - v * scale + shift).collect()).collect();
        let l = SimplicialComplex::from_facets(&moved).unwrap();
        prop_assert_eq!(homology(&k), homology(&l));
    }

    #[test]
    fn subdivision_keeps_homology(k in complex_strategy()) {
        let h = homology(&k);
        prop_assert_eq!(homology(&order_complex(&face_poset(&k))), h.clone());
        prop_assert_eq!(trim(h.betti), trim(rational_betti(&k)));
    }

    #[test]
    fn snf_rank_matches_rational_rank(
        rows in 1usize..=30,
        cols in 1usize..=30,
        entries in prop::collection::vec(-1i64..=1, 900),
    ) {
        let m: Vec<Vec<i64>> = (0..rows).map(|r| entries[r * 30..r * 30 + cols].to_vec()).collect();
        let factors = smith_normal_form(&IntMatrix::from_rows(&m));
        prop_assert_eq!(factors.len(), rational_rank(&m));
        for w in factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == 0.into());
        }
    }
}

#[test]
fn fixture_homology() {
    let rp2 = homology(&fixtures::rp2());
    assert_eq!(rp2.betti, vec![1, 0, 0]);
    assert_eq!(rp2.torsion, vec![vec![], vec![2], vec![]]);
    let hat = homology(&fixtures::dunce_hat());
    assert_eq!((hat.is_torsion_free(), hat.betti), (true, vec![1, 0, 0]));
    assert_eq!(homology(&fixtures::boundary_simplex(3)).betti, vec![1, 0, 1]);
    for n in 0..=5 {
        assert_eq!(trim(homology(&fixtures::simplex(n)).betti), vec![1]);
    }
}
