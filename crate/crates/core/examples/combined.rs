//! Weak collapses first, then the strong internal reduction of what is left.

use strong_morse::{combined_reduction, fixtures, strong_internal_core, verify_reduction, RandomPolicy};

fn main() -> strong_morse::Result<()> {
    let k = fixtures::dunce_hat_with_fin();
    for seed in 0..5 {
        let combined = combined_reduction(&k, &mut RandomPolicy::new(seed))?;
        let direct = strong_internal_core(&k, &mut RandomPolicy::new(seed))?;
        let v = verify_reduction(&k, &combined);
        println!(
            "seed {seed}: combined {} cells (verified {}), strong internal alone {} cells",
            combined.output_size,
            v.passed(),
            direct.output_size
        );
    }
    Ok(())
}
