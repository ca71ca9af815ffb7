//! Face posets, order complexes and isomorphism tests.

use strong_morse::poset::{are_isomorphic, face_poset, order_complex};
use strong_morse::{fixtures, homology, SimplicialComplex};

fn main() -> strong_morse::Result<()> {
    let k = fixtures::boundary_simplex(2);
    let x = face_poset(&k);
    println!("face poset: {} elements, {} covers", x.len(), x.num_covers());
    let sd = order_complex(&x);
    println!("barycentric subdivision f-vector {:?}, homology {:?}", sd.f_vector(), homology(&sd).betti);

    let relabeled = SimplicialComplex::from_facets(&[[7, 9], [9, 4], [4, 7]])?;
    println!("isomorphic to a relabeled copy: {}", are_isomorphic(&x, &face_poset(&relabeled))?);
    let path = SimplicialComplex::from_facets(&[vec![0, 1], vec![1, 2]])?;
    println!("isomorphic to a path: {}", are_isomorphic(&x, &face_poset(&path))?);
    Ok(())
}
