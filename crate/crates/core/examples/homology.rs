//! Integer homology from Smith normal forms of boundary matrices.

use strong_morse::homology::{boundary_matrices, smith_normal_form, IntMatrix};
use strong_morse::{fixtures, homology};

fn main() {
    for (name, k) in [
        ("2-sphere", fixtures::boundary_simplex(3)),
        ("RP2", fixtures::rp2()),
        ("dunce hat", fixtures::dunce_hat()),
    ] {
        let h = homology(&k);
        println!("{name}: {}", serde_json::to_string(&h).unwrap());
    }
    let d = boundary_matrices(&fixtures::rp2());
    for b in &d {
        let factors = smith_normal_form(&b.to_dense());
        println!("d{} is {}x{} with rank {}", b.dim, b.rows, b.cols, factors.len());
    }
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    println!("invariant factors: {:?}", smith_normal_form(&m));
}
