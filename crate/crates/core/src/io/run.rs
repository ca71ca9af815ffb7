//! Multi-iteration runs, run reports and the benchmark harness.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::parse::parse_facet_file;
use super::schema::{ResultDoc, VerificationDoc};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::verify_reduction;
use crate::reduce::{reduce, CoreKind, RandomPolicy};

/// Environment variable holding the worker-pool size.
pub const WORKERS_ENV: &str = "STRONG_MORSE_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: PathBuf,
    pub method: CoreKind,
    pub seed: u64,
    pub iterations: usize,
    pub format: OutputFormat,
    pub verify: bool,
    /// Whether wall times enter the report; without them equal seeds give
    /// byte-identical reports.
    pub timing: bool,
    pub workers: usize,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, method: CoreKind, seed: u64) -> Self {
        RunConfig {
            input: input.into(),
            method,
            seed,
            iterations: 1,
            format: OutputFormat::Json,
            verify: false,
            timing: false,
            workers: workers_from_env(),
        }
    }
}

/// Worker count from the environment, 1 when unset or invalid.
pub fn workers_from_env() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub output_size: usize,
    pub seconds: Option<f64>,
    pub verification: Option<VerificationDoc>,
    pub result: ResultDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub original_size: usize,
    pub mean_size: f64,
    pub mean_seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub name: String,
    pub input_sha256: String,
    pub method: String,
    pub seed: u64,
    pub iterations: Vec<IterationRecord>,
    pub aggregate: Aggregate,
}

impl RunReport {
    pub fn verified(&self) -> bool {
        self.iterations
            .iter()
            .all(|r| r.verification.as_ref().is_none_or(|v| v.passed))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// One row per iteration.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "method", "seed", "iteration", "output_size", "seconds", "verified"])?;
        for r in &self.iterations {
            w.write_record([
                self.name.clone(),
                self.method.clone(),
                self.seed.to_string(),
                r.iteration.to_string(),
                r.output_size.to_string(),
                r.seconds.map(|s| format!("{s:.6}")).unwrap_or_default(),
                r.verification.as_ref().map(|v| v.passed.to_string()).unwrap_or_default(),
            ])?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads and parses an input file. Returns the file name stem, the raw
/// bytes' hash and the complex.
pub fn load_input(path: &Path) -> Result<(String, String, SimplicialComplex)> {
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::InputNotFound(path.display().to_string()),
        _ => Error::Io(e),
    })?;
    let file = parse_facet_file(&text)?;
    let name = file.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    Ok((name, sha256_hex(text.as_bytes()), file.to_complex()?))
}

/// Runs every iteration on `k` without failing on verification results.
pub fn execute(config: &RunConfig, name: &str, input_sha256: &str, k: &SimplicialComplex) -> Result<RunReport> {
    let n = config.iterations.max(1);
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<IterationRecord>>>> = Mutex::new((0..n).map(|_| None).collect());
    let one = |i: usize| -> Result<IterationRecord> {
        let mut policy = RandomPolicy::for_iteration(config.seed, i as u64);
        let r = reduce(k, config.method, &mut policy)?;
        let verification = config.verify.then(|| VerificationDoc::from(&verify_reduction(k, &r)));
        Ok(IterationRecord {
            iteration: i,
            output_size: r.output_size,
            seconds: config.timing.then(|| r.elapsed.as_secs_f64()),
            verification,
            result: ResultDoc::new(k, &r),
        })
    };
    std::thread::scope(|scope| {
        for _ in 0..config.workers.clamp(1, n) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let record = one(i);
                slots.lock().expect("no worker panicked")[i] = Some(record);
            });
        }
    });
    let iterations = slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every iteration ran"))
        .collect::<Result<Vec<_>>>()?;
    let mean_size = iterations.iter().map(|r| r.output_size as f64).sum::<f64>() / n as f64;
    let mean_seconds = config
        .timing
        .then(|| iterations.iter().filter_map(|r| r.seconds).sum::<f64>() / n as f64);
    Ok(RunReport {
        name: name.to_string(),
        input_sha256: input_sha256.to_string(),
        method: config.method.name().to_string(),
        seed: config.seed,
        iterations,
        aggregate: Aggregate {
            original_size: k.num_simplices(),
            mean_size,
            mean_seconds,
        },
    })
}

/// Loads the input and runs it. With `verify`, any failing iteration turns
/// the run into [`Error::VerificationFailure`].
pub fn run(config: &RunConfig) -> Result<RunReport> {
    let (name, hash, k) = load_input(&config.input)?;
    let report = execute(config, &name, &hash, &k)?;
    if let Some(bad) = report
        .iterations
        .iter()
        .find(|r| r.verification.as_ref().is_some_and(|v| !v.passed))
    {
        let reasons = bad.verification.as_ref().map(|v| v.failures.join("; ")).unwrap_or_default();
        return Err(Error::VerificationFailure(format!("iteration {}: {reasons}", bad.iteration)));
    }
    Ok(report)
}

/// One line of the benchmark summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub name: String,
    pub original_size: usize,
    pub method: String,
    pub mean_size: f64,
    pub mean_time: Option<f64>,
}

/// Mean size and mean per-iteration time of each report.
pub fn aggregate_statistics(reports: &[RunReport]) -> Vec<SummaryRow> {
    reports
        .iter()
        .map(|r| {
            let n = r.iterations.len().max(1) as f64;
            let times: Vec<f64> = r.iterations.iter().filter_map(|i| i.seconds).collect();
            SummaryRow {
                name: r.name.clone(),
                original_size: r.aggregate.original_size,
                method: r.method.clone(),
                mean_size: r.iterations.iter().map(|i| i.output_size as f64).sum::<f64>() / n,
                mean_time: (!times.is_empty()).then(|| times.iter().sum::<f64>() / times.len() as f64),
            }
        })
        .collect()
}

/// Long format: `name, original size, method, mean size, mean time`.
pub fn summary_csv(rows: &[SummaryRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "original_size", "method", "mean_size", "mean_time"])?;
    for r in rows {
        w.write_record([
            r.name.clone(),
            r.original_size.to_string(),
            r.method.clone(),
            format!("{:.2}", r.mean_size),
            r.mean_time.map(|t| format!("{t:.6}")).unwrap_or_default(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
}

/// Wide format with one column of mean sizes per method.
pub fn summary_csv_wide(rows: &[SummaryRow]) -> Result<String> {
    let mut names: Vec<(&str, usize)> = Vec::new();
    for r in rows {
        if !names.iter().any(|(n, _)| *n == r.name) {
            names.push((&r.name, r.original_size));
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["name".to_string(), "original_size".to_string()];
    header.extend(CoreKind::ALL.iter().map(|k| k.name().to_string()));
    w.write_record(&header)?;
    for (name, size) in names {
        let mut record = vec![name.to_string(), size.to_string()];
        for kind in CoreKind::ALL {
            let cell = rows
                .iter()
                .find(|r| r.name == name && r.method == kind.name())
                .map(|r| format!("{:.2}", r.mean_size))
                .unwrap_or_default();
            record.push(cell);
        }
        w.write_record(&record)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is utf-8"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchInput {
    pub name: Option<String>,
    pub path: PathBuf,
}

/// A benchmark plan: every input is run with every method.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchManifest {
    pub inputs: Vec<BenchInput>,
    pub methods: Vec<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_iterations")]
    pub iterations: usize,
    #[serde(default)]
    pub verify: bool,
}

fn default_iterations() -> usize {
    100
}

impl BenchManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::InputNotFound(path.display().to_string()),
            _ => Error::Io(e),
        })?;
        let mut manifest: BenchManifest = serde_json::from_str(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for input in &mut manifest.inputs {
            if input.path.is_relative() {
                input.path = base.join(&input.path);
            }
        }
        Ok(manifest)
    }
}

/// Runs a manifest; reports come in input-major, method-minor order.
pub fn bench(manifest: &BenchManifest) -> Result<Vec<RunReport>> {
    let methods = manifest
        .methods
        .iter()
        .map(|m| m.parse::<CoreKind>().map_err(Error::UnsupportedTrace))
        .collect::<Result<Vec<_>>>()?;
    let mut reports = Vec::new();
    for input in &manifest.inputs {
        let (stem, hash, k) = load_input(&input.path)?;
        let name = input.name.clone().unwrap_or(stem);
        for &method in &methods {
            let mut config = RunConfig::new(&input.path, method, manifest.seed);
            config.iterations = manifest.iterations.max(1);
            config.verify = manifest.verify;
            config.timing = true;
            reports.push(execute(&config, &name, &hash, &k)?);
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn triangle_runs_to_one_cell() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(dir.path(), "tri.txt", "[[0,1,2]]");
        for kind in CoreKind::ALL {
            let mut c = RunConfig::new(&path, kind, 1);
            c.verify = true;
            let r = run(&c).unwrap();
            assert_eq!(r.iterations[0].output_size, 1);
            assert!(r.verified());
        }
    }

    #[test]
    fn sphere_strong_core_is_itself() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(dir.path(), "s.txt", "[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]");
        let mut c = RunConfig::new(&path, CoreKind::StrongCore, 3);
        c.iterations = 5;
        c.workers = 3;
        let r = run(&c).unwrap();
        assert!(r.iterations.iter().all(|i| i.output_size == 14));
        assert_eq!(r.aggregate.mean_size, 14.0);
    }

    #[test]
    fn missing_input() {
        let c = RunConfig::new("/nonexistent/file.txt", CoreKind::StrongCore, 0);
        assert!(matches!(run(&c), Err(Error::InputNotFound(_))));
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let dir = tempfile::tempdir().unwrap();
        let path = write(dir.path(), "k.txt", "[[0,1,2],[1,2,3],[2,3,4],[0,4],[4,5,6]]");
        let mut c = RunConfig::new(&path, CoreKind::StrongInternalCore, 7);
        c.iterations = 6;
        c.verify = true;
        c.workers = 1;
        let a = run(&c).unwrap().to_json().unwrap();
        c.workers = 4;
        let b = run(&c).unwrap().to_json().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn statistics() {
        let row = |sizes: &[usize]| RunReport {
            name: "x".into(),
            input_sha256: String::new(),
            method: "strong-internal".into(),
            seed: 0,
            iterations: sizes
                .iter()
                .enumerate()
                .map(|(i, &s)| IterationRecord {
                    iteration: i,
                    output_size: s,
                    seconds: None,
                    verification: None,
                    result: ResultDoc {
                        method: String::new(),
                        input_size: 0,
                        output_size: s,
                        core_facets: None,
                        critical_poset: None,
                        trace: crate::io::schema::TraceDoc {
                            method: String::new(),
                            steps: vec![],
                            matching: vec![],
                            critical: vec![],
                            implied_g: None,
                        },
                    },
                })
                .collect(),
            aggregate: Aggregate {
                original_size: 49,
                mean_size: 0.0,
                mean_seconds: None,
            },
        };
        assert_eq!(aggregate_statistics(&[row(&[37, 38])])[0].mean_size, 37.5);
        assert_eq!(aggregate_statistics(&[row(&[12])])[0].mean_size, 12.0);
        let csv = summary_csv(&aggregate_statistics(&[row(&[12])])).unwrap();
        assert_eq!(csv, "name,original_size,method,mean_size,mean_time\nx,49,strong-internal,12.00,\n");
    }
}
