//! Minimal strong cores: cones shrink to a point, the dunce hat does not
//! move, and cores from different seeds are isomorphic.

use strong_morse::poset::{are_isomorphic, face_poset};
use strong_morse::{fixtures, minimal_strong_core, RandomPolicy};

fn main() -> strong_morse::Result<()> {
    let cone = fixtures::cone(&fixtures::rp2());
    let r = minimal_strong_core(&cone, &mut RandomPolicy::new(1));
    println!("cone over RP2: {} -> {} simplices in {} steps", r.input_size, r.output_size, r.trace.steps.len());

    let hat = fixtures::dunce_hat();
    let r = minimal_strong_core(&hat, &mut RandomPolicy::new(1));
    println!("dunce hat: {} -> {}", r.input_size, r.output_size);

    let k = strong_morse::SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![1, 2, 3], vec![3, 4], vec![4, 5], vec![5, 3]])?;
    let a = minimal_strong_core(&k, &mut RandomPolicy::new(10));
    let b = minimal_strong_core(&k, &mut RandomPolicy::new(11));
    let (ca, cb) = (a.core_complex().unwrap(), b.core_complex().unwrap());
    println!("core of seed 10: {:?}", ca.facets().iter().map(|f| ca.labeled(f)).collect::<Vec<_>>());
    println!("core of seed 11: {:?}", cb.facets().iter().map(|f| cb.labeled(f)).collect::<Vec<_>>());
    println!("isomorphic: {}", are_isomorphic(&face_poset(ca), &face_poset(cb))?);
    Ok(())
}
