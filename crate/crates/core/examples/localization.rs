//! A matching that is acyclic but not induced by a vertex function: its
//! critical poset has the wrong homotopy type.

use strong_morse::poset::{critical_subposet, face_poset, localization, order_complex};
use strong_morse::{fixtures, homology, Matching, Simplex};

fn s(v: &[u32]) -> Simplex {
    Simplex::from(v)
}

fn main() -> strong_morse::Result<()> {
    let k = fixtures::boundary_simplex(3);
    let m = Matching::new(vec![
        (s(&[0, 2]), s(&[0, 2, 3])),
        (s(&[0, 3]), s(&[0, 1, 3])),
        (s(&[0]), s(&[0, 1])),
        (s(&[1, 3]), s(&[1, 2, 3])),
        (s(&[1]), s(&[1, 2])),
        (s(&[2]), s(&[2, 3])),
    ]);
    let loc = localization(&face_poset(&k), &m)?;
    println!("localization has {} elements:", loc.poset.len());
    for key in loc.poset.keys() {
        println!("  {key}");
    }
    let crit = critical_subposet(&loc, &[s(&[0, 1, 2]), s(&[3])])?;
    println!("critical poset covers: {:?}", crit.covers().collect::<Vec<_>>());
    println!("homology of the critical poset: {:?}", homology(&order_complex(&crit)).betti);
    println!("homology of the sphere:         {:?}", homology(&k).betti);
    Ok(())
}
