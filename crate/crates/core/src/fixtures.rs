//! Small complexes used by the examples and tests.

use crate::complex::SimplicialComplex;
use crate::io::parse_facet_file;

const DUNCE_HAT: &str = include_str!("../data/dunce_hat.txt");
const RP2: &str = include_str!("../data/rp2.txt");

fn bundled(text: &str) -> SimplicialComplex {
    parse_facet_file(text)
        .and_then(|f| f.to_complex())
        .expect("bundled fixture is valid")
}

/// The full simplex `Δⁿ` on labels `0..=n`.
pub fn simplex(n: usize) -> SimplicialComplex {
    let facet: Vec<i64> = (0..=n as i64).collect();
    SimplicialComplex::from_facets(&[facet]).expect("valid facet")
}

/// The boundary `∂Δⁿ` on labels `0..=n`, `n ≥ 1`.
pub fn boundary_simplex(n: usize) -> SimplicialComplex {
    let facets: Vec<Vec<i64>> = (0..=n as i64)
        .map(|skip| (0..=n as i64).filter(|&v| v != skip).collect())
        .collect();
    SimplicialComplex::from_facets(&facets).expect("valid facets")
}

/// Six-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
    bundled(RP2)
}

/// Eight-vertex dunce hat: 49 simplices, contractible, without free faces
/// or dominated vertices.
pub fn dunce_hat() -> SimplicialComplex {
    bundled(DUNCE_HAT)
}

/// The dunce hat with an extra triangle `(1,2,9)` glued along an edge; it
/// collapses onto the dunce hat and nothing smaller.
pub fn dunce_hat_with_fin() -> SimplicialComplex {
    let mut facets: Vec<Vec<i64>> = dunce_hat().facets().iter().map(|f| dunce_hat().labeled(f)).collect();
    facets.push(vec![1, 2, 9]);
    SimplicialComplex::from_facets(&facets).expect("valid facets")
}

/// The cone over `k` with a fresh apex label.
pub fn cone(k: &SimplicialComplex) -> SimplicialComplex {
    let apex = k.labels().iter().max().map_or(0, |m| m + 1);
    let facets: Vec<Vec<i64>> = k
        .facets()
        .iter()
        .map(|f| {
            let mut labels = k.labeled(f);
            labels.push(apex);
            labels
        })
        .collect();
    if facets.is_empty() {
        return SimplicialComplex::from_facets(&[[apex]]).expect("valid facet");
    }
    SimplicialComplex::from_facets(&facets).expect("valid facets")
}
