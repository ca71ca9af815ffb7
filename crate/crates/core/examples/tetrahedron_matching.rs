//! The vertex function `g = label` on the boundary of the tetrahedron: its
//! strong critical vertices, induced matching and critical poset.

use strong_morse::morse::{classify_vertices, matching_from_vertex_function};
use strong_morse::poset::{critical_poset, face_poset, order_complex};
use strong_morse::{fixtures, homology, VertexFunction};

fn main() -> strong_morse::Result<()> {
    let k = fixtures::boundary_simplex(3);
    let g = VertexFunction::label_values(&k);

    let classes = classify_vertices(&k, &g);
    for (v, tag) in classes.iter() {
        println!("vertex {}: {tag:?}", k.label(v));
    }

    let (m, critical) = matching_from_vertex_function(&k, &g);
    println!("matching: {:?}", m.pairs());
    println!("critical simplices ({}): {critical:?}", critical.len());

    let crit = critical_poset(&face_poset(&k), &critical, &m)?;
    println!("cells per dimension: {:?}", crit.grade_counts());
    for (x, y) in crit.covers() {
        println!("  {} < {}", crit.key(x), crit.key(y));
    }
    println!("thin with bottom: {}", crit.is_thin_with_bottom()?.thin);
    println!("homology of the order complex: {:?}", homology(&order_complex(&crit)).betti);
    Ok(())
}
