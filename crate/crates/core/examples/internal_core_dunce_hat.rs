//! Strong internal cores of the dunce hat over many seeds, each checked
//! against integer homology.

use strong_morse::{fixtures, strong_internal_core, verify_reduction, RandomPolicy};

fn main() -> strong_morse::Result<()> {
    let k = fixtures::dunce_hat();
    let runs = 100;
    let mut sizes = Vec::with_capacity(runs);
    for i in 0..runs as u64 {
        let r = strong_internal_core(&k, &mut RandomPolicy::for_iteration(0, i))?;
        let v = verify_reduction(&k, &r);
        assert!(v.passed(), "seed {i}: {:?}", v.failures);
        sizes.push(r.output_size);
    }
    let mean = sizes.iter().sum::<usize>() as f64 / runs as f64;
    println!("input size {}", k.num_simplices());
    println!("cells: min {}, max {}, mean {mean:.2}", sizes.iter().min().unwrap(), sizes.iter().max().unwrap());
    Ok(())
}
