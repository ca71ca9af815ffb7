mod common;

use common::complex_strategy;
use proptest::prelude::*;
use strong_morse::{retract_simplex, Simplex};

proptest! {
    #[test]
    fn downward_closed(k in complex_strategy()) {
        for s in k.simplices() {
            for f in s.faces() {
                prop_assert!(k.contains(&f));
            }
        }
        let total: usize = k.f_vector().iter().sum();
        prop_assert_eq!(total, k.num_simplices());
    }

    #[test]
    fn domination_matches_the_cone_test(k in complex_strategy()) {
        for &v in k.vertices() {
            let doms = k.dominating_vertices(v).unwrap();
            let link = k.link(v).unwrap();
            let apexes = if link.is_empty() { Vec::new() } else { link.cone_apexes() };
            prop_assert_eq!(doms, apexes);
        }
    }

    #[test]
    fn removing_a_vertex_and_restoring_its_star(k in complex_strategy()) {
        for &v in k.vertices() {
            let rest = k.remove_vertex(v).unwrap();
            let star = k.open_star(v).unwrap();
            prop_assert!(rest.simplices().all(|s| !s.contains(v)));
            let mut all: Vec<Simplex> = rest.simplices().cloned().chain(star.iter().cloned()).collect();
            all.sort();
            let expected: Vec<Simplex> = k.simplices().cloned().collect();
            prop_assert_eq!(all, expected);
            let star_chi: i64 = star.iter().map(|s| if s.dim() % 2 == 0 { 1 } else { -1 }).sum();
            prop_assert_eq!(rest.euler_characteristic(), k.euler_characteristic() - star_chi);
        }
    }

    #[test]
    fn retraction_is_idempotent(k in complex_strategy()) {
        let vs = k.vertices();
        if vs.len() >= 2 {
            let (v, a) = (vs[0], vs[vs.len() - 1]);
            for s in k.simplices() {
                let once = retract_simplex(s, v, a);
                prop_assert_eq!(retract_simplex(&once, v, a), once);
            }
        }
    }

    #[test]
    fn free_faces_by_counting_cofaces(k in complex_strategy()) {
        for s in k.simplices() {
            let above: Vec<&Simplex> = k.simplices().filter(|t| t.len() > s.len() && s.is_face_of(t)).collect();
            let expected = if above.len() == 1 { Some(above[0].clone()) } else { None };
            prop_assert_eq!(k.free_face(s).unwrap(), expected);
        }
    }
}
