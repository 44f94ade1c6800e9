//! Analysis driver behind the `pvsplit` command line: runs the pipeline on
//! one program, renders the result as text or JSON, and runs benchmark
//! tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::{factorize_with, FactorError, Factorization};
use crate::geometry::{Area, Cube};
use crate::oracle;
use crate::pv::{gen_philosophers, gen_sigma, Program, ProgramError};
use crate::semantics::forbidden_area_with;
use crate::Exec;

/// Largest dimension accepted by `--oracle-check`.
pub const ORACLE_MAX_DIMENSION: usize = 5;

/// A benchmark family instance, written `sigma:2,2`, `sigma-prime:3,3` or
/// `philosophers:5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenSpec {
    Sigma(Vec<usize>),
    SigmaPrime(Vec<usize>),
    Philosophers(usize),
}

impl GenSpec {
    pub fn program(&self) -> Result<Program, ProgramError> {
        match self {
            GenSpec::Sigma(sizes) => gen_sigma(sizes, false),
            GenSpec::SigmaPrime(sizes) => gen_sigma(sizes, true),
            GenSpec::Philosophers(n) => gen_philosophers(*n),
        }
    }
}

impl FromStr for GenSpec {
    type Err = ProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ProgramError::Generator(format!("cannot read generator {s:?}"));
        let (family, args) = s.split_once(':').ok_or_else(bad)?;
        let numbers = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        match family.trim() {
            "sigma" => Ok(GenSpec::Sigma(numbers)),
            "sigma-prime" => Ok(GenSpec::SigmaPrime(numbers)),
            "philosophers" => match numbers[..] {
                [n] => Ok(GenSpec::Philosophers(n)),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        match self {
            GenSpec::Sigma(v) => write!(f, "sigma:{}", join(v)),
            GenSpec::SigmaPrime(v) => write!(f, "sigma-prime:{}", join(v)),
            GenSpec::Philosophers(n) => write!(f, "philosophers:{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub model: bool,
    pub decompose: bool,
    pub json: bool,
    pub oracle_check: bool,
    pub timings: bool,
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Options { model: false, decompose: true, json: false, oracle_check: false, timings: false, exec: Exec::default() }
    }
}

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("oracle check is limited to {ORACLE_MAX_DIMENSION} processes, program has {0}")]
    OracleTooLarge(usize),
}

impl AnalyzeError {
    /// 1 for rejected input, 2 for a broken internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalyzeError::OracleTooLarge(_) => 1,
            AnalyzeError::Factor(_) | AnalyzeError::Invariant(_) => 2,
        }
    }
}

/// Wall-clock time of each phase, in milliseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub semantics: f64,
    pub normalization: f64,
    pub factorization: f64,
}

impl Timings {
    pub fn total(&self) -> f64 {
        self.semantics + self.normalization + self.factorization
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub processes: Vec<String>,
    pub semaphores: BTreeMap<String, u32>,
    pub area: Area,
    pub factorization: Option<Factorization>,
    pub timings: Timings,
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs semantics, normalization and (when `options.decompose`)
/// factorization. Reassembly of the factors is always checked; with
/// `options.oracle_check` the model is also compared cell by cell with the
/// grid oracle.
pub fn analyze(program: &Program, options: &Options) -> Result<Report, AnalyzeError> {
    if options.oracle_check && program.len() > ORACLE_MAX_DIMENSION {
        return Err(AnalyzeError::OracleTooLarge(program.len()));
    }
    let mut timings = Timings::default();

    let start = Instant::now();
    let forbidden = forbidden_area_with(program, options.exec);
    timings.semantics = millis(start);

    let start = Instant::now();
    let area = Area::complement_of_with(program.len(), &forbidden, options.exec)
        .map_err(|e| AnalyzeError::Invariant(e.to_string()))?;
    timings.normalization = millis(start);

    let factorization = if options.decompose {
        let start = Instant::now();
        let f = factorize_with(&area, options.exec)?;
        timings.factorization = millis(start);
        if f.reassemble() != area {
            return Err(AnalyzeError::Invariant("factors do not reassemble to the state space".into()));
        }
        Some(f)
    } else {
        None
    };

    if options.oracle_check {
        check_against_oracle(program, &area, factorization.as_ref())?;
    }

    Ok(Report {
        processes: program.processes().iter().map(|p| p.name.clone()).collect(),
        semaphores: program.semaphores().clone(),
        area,
        factorization,
        timings,
    })
}

fn check_against_oracle(
    program: &Program,
    area: &Area,
    factorization: Option<&Factorization>,
) -> Result<(), AnalyzeError> {
    let program_bound = program.processes().iter().map(|p| p.len() as u32).max().unwrap_or(0) + 1;
    let bound = program_bound.max(oracle::default_bound(area));
    let expected = oracle::grid_of_program(program, bound).map_err(|e| AnalyzeError::Invariant(e.to_string()))?;
    let actual = oracle::grid_of_area_with_bound(area, bound).map_err(|e| AnalyzeError::Invariant(e.to_string()))?;
    if expected != actual {
        return Err(AnalyzeError::Invariant("state space differs from the oracle's".into()));
    }
    if oracle::grid_maximal_cubes(&actual) != area.cubes() {
        return Err(AnalyzeError::Invariant("maximal cubes differ from the oracle's".into()));
    }
    if let Some(f) = factorization {
        for factor in f.factors() {
            if factor.indices.len() < area.dimension()
                && !oracle::grid_is_product(&actual, &factor.indices).map_err(|e| AnalyzeError::Invariant(e.to_string()))?
            {
                return Err(AnalyzeError::Invariant(format!("oracle rejects factor {:?}", factor.indices)));
            }
            if !oracle::grid_is_irreducible(&oracle::grid_of_area(&factor.area)) {
                return Err(AnalyzeError::Invariant(format!("oracle splits factor {:?}", factor.indices)));
            }
        }
    }
    Ok(())
}

/// `{1,3}{2,4}`, or `No decomposition` for fewer than two factors.
pub fn decomposition_text(f: &Factorization) -> String {
    if f.is_decomposed() {
        f.to_string()
    } else {
        "No decomposition".to_string()
    }
}

pub fn render_text(report: &Report, options: &Options) -> String {
    let mut out = String::new();
    let sems: Vec<String> = report.semaphores.iter().map(|(s, a)| format!("{s}/{a}")).collect();
    out.push_str(&format!("# processes: {}\n", report.processes.len()));
    out.push_str(&format!("# semaphores: {}\n", sems.join(" ")));
    out.push_str(&format!("# maximal cubes: {}\n", report.area.len()));
    if options.model {
        out.push_str(&report.area.to_string());
    }
    if let Some(f) = &report.factorization {
        out.push_str(&decomposition_text(f));
        out.push('\n');
        if options.model && f.is_decomposed() {
            for factor in f.factors() {
                let indices: Vec<String> = factor.indices.iter().map(ToString::to_string).collect();
                out.push_str(&format!("# factor {{{}}}: {} maximal cubes\n", indices.join(","), factor.area.len()));
                out.push_str(&factor.area.to_string());
            }
        }
    }
    if options.timings {
        let t = report.timings;
        out.push_str(&format!(
            "# timings_ms: semantics={:.3} normalization={:.3} factorization={:.3}\n",
            t.semantics, t.normalization, t.factorization
        ));
    }
    out
}

/// Machine-readable report. Intervals are `[lo, hi]` pairs with `null` for
/// an infinite upper bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub program: JsonProgram,
    pub cubes: Vec<Cube>,
    pub partition: Vec<Vec<usize>>,
    pub factors: Vec<Vec<Cube>>,
    pub timings_ms: Timings,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonProgram {
    pub processes: Vec<String>,
    pub semaphores: BTreeMap<String, u32>,
}

impl From<&Report> for JsonReport {
    fn from(r: &Report) -> Self {
        let factors = r.factorization.as_ref().map(|f| f.factors()).unwrap_or_default();
        JsonReport {
            program: JsonProgram { processes: r.processes.clone(), semaphores: r.semaphores.clone() },
            cubes: r.area.cubes().to_vec(),
            partition: factors.iter().map(|f| f.indices.clone()).collect(),
            factors: factors.iter().map(|f| f.area.cubes().to_vec()).collect(),
            timings_ms: r.timings,
        }
    }
}

pub fn render_json(report: &Report) -> String {
    serde_json::to_string_pretty(&JsonReport::from(report)).expect("report serializes") + "\n"
}

/// The rows of the benchmark table that have a known expected outcome.
pub fn default_bench_specs() -> Vec<GenSpec> {
    let mut specs: Vec<GenSpec> = (3..=6).map(GenSpec::Philosophers).collect();
    for sizes in [vec![2, 2], vec![2, 2, 2], vec![3, 3]] {
        specs.push(GenSpec::Sigma(sizes.clone()));
        specs.push(GenSpec::SigmaPrime(sizes));
    }
    specs.push(GenSpec::Sigma(vec![2, 2, 2, 2]));
    specs
}

#[derive(Clone, Debug)]
pub struct BenchRow {
    pub name: String,
    pub millis: f64,
    pub decomposition: Option<String>,
}

pub fn bench_row(spec: &GenSpec, exec: Exec) -> Result<BenchRow, BenchError> {
    let program = spec.program()?;
    let options = Options { exec, ..Options::default() };
    let report = analyze(&program, &options)?;
    let f = report.factorization.expect("decomposition requested");
    Ok(BenchRow {
        name: spec.to_string(),
        millis: report.timings.total(),
        decomposition: f.is_decomposed().then(|| f.to_string()),
    })
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Program(#[from] ProgramError),
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
}

pub fn render_bench_table(rows: &[BenchRow]) -> String {
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0).max("example".len());
    let mut out = format!("{:<width$}  {:>12}  decomposition\n", "example", "time_ms");
    for r in rows {
        let d = r.decomposition.as_deref().unwrap_or("No");
        out.push_str(&format!("{:<width$}  {:>12.3}  {}\n", r.name, r.millis, d));
    }
    out
}
