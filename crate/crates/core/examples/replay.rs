//! Traces serialize to JSON with the input labels and replay exactly.

use strong_morse::io::{ResultDoc, TraceDoc};
use strong_morse::{reduce, replay, CoreKind, RandomPolicy, SimplicialComplex};

fn main() -> strong_morse::Result<()> {
    let k = SimplicialComplex::from_facets(&[vec![10, 20, 30], vec![20, 30, 40], vec![30, 40, 50], vec![50, 10]])?;
    let r = reduce(&k, CoreKind::StrongInternalCore, &mut RandomPolicy::new(42))?;
    let json = serde_json::to_string_pretty(&TraceDoc::new(&k, &r.trace))?;
    println!("{json}");

    let doc: TraceDoc = serde_json::from_str(&json)?;
    let again = replay(&k, &doc.to_trace(&k)?)?;
    println!("replay identical: {}", ResultDoc::new(&k, &again) == ResultDoc::new(&k, &r));
    Ok(())
}
