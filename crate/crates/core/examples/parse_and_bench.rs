//! Parsing facet files and summarizing multi-seed runs.

use strong_morse::io::{aggregate_statistics, execute, parse_facet_file, summary_csv, FacetFormat, RunConfig};
use strong_morse::CoreKind;

fn main() -> strong_morse::Result<()> {
    let text = "dunce_hat:=[[1,2,4],[1,2,6],[1,2,7],[1,3,5],[1,3,7],[1,3,8],[1,4,6],[1,5,8],\n\
                [2,3,4],[2,3,6],[2,3,8],[2,7,8],[3,4,7],[3,5,6],[4,6,7],[5,6,8],[6,7,8]];";
    let file = parse_facet_file(text)?;
    println!("{:?} with {} facets", file.name, file.facets.len());
    print!("{}", file.serialize_as(FacetFormat::Lines).lines().take(3).collect::<Vec<_>>().join("\n"));
    println!("\n...");

    if let Err(e) = parse_facet_file("[[1,2],\n [2,x]]") {
        println!("malformed input: {e}");
    }

    let k = file.to_complex()?;
    let mut reports = Vec::new();
    for method in [CoreKind::StrongCore, CoreKind::WeakCore, CoreKind::StrongInternalCore] {
        let mut config = RunConfig::new("inline", method, 0);
        config.iterations = 100;
        config.timing = true;
        reports.push(execute(&config, "dunce_hat", "", &k)?);
    }
    print!("{}", summary_csv(&aggregate_statistics(&reports))?);
    Ok(())
}
