//! Input parsing, JSON documents and run reports.

pub mod parse;
pub mod run;
pub mod schema;

pub use parse::{parse_facet_file, FacetFile, FacetFormat};
pub use run::{
    aggregate_statistics, bench, execute, load_input, run, summary_csv, summary_csv_wide, BenchManifest, OutputFormat,
    RunConfig, RunReport, SummaryRow,
};
pub use schema::{MatchingDoc, PosetDoc, ResultDoc, TraceDoc};
