//! Acyclic matchings and discrete Morse functions determine each other.

use strong_morse::morse::{critical_simplices, is_discrete_morse, matching_from_morse, morse_from_matching};
use strong_morse::{fixtures, strong_morse_reduction, RandomPolicy};

fn main() -> strong_morse::Result<()> {
    let k = fixtures::rp2();
    let r = strong_morse_reduction(&k, &mut RandomPolicy::new(5));
    let f = morse_from_matching(&k, &r.matching)?;
    println!("discrete Morse: {}", is_discrete_morse(&k, &f));
    println!("matching recovered: {}", matching_from_morse(&k, &f)? == r.matching);
    println!("critical simplices: {:?}", critical_simplices(&k, &f)?);
    for s in k.simplices().take(6) {
        println!("  f{s} = {}", f.value(s).unwrap());
    }
    Ok(())
}
