//! Random elementary collapses down to a minimal weak core.

use strong_morse::morse::{matching_from_collapse_sequence, validate_matching};
use strong_morse::reduce::Step;
use strong_morse::{fixtures, minimal_weak_core, RandomPolicy};

fn main() -> strong_morse::Result<()> {
    let k = fixtures::dunce_hat_with_fin();
    for seed in 0..3 {
        let r = minimal_weak_core(&k, &mut RandomPolicy::new(seed));
        println!("seed {seed}: {} -> {} simplices", r.input_size, r.output_size);
        let pairs: Vec<_> = r
            .trace
            .steps
            .iter()
            .filter_map(|s| match s {
                Step::WeakCollapse { sigma, tau } => Some((sigma.clone(), tau.clone())),
                _ => None,
            })
            .collect();
        let m = matching_from_collapse_sequence(&k, &pairs)?;
        println!("  collapse pairs form an acyclic matching: {}", validate_matching(&k, &m).is_valid());
    }
    let r = minimal_weak_core(&fixtures::simplex(4), &mut RandomPolicy::new(0));
    println!("4-simplex: {} -> {}", r.input_size, r.output_size);
    Ok(())
}
