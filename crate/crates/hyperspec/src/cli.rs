//! Command-line surface: construct family members, compute spectra, apply
//! the two rewiring moves, enumerate isomorphism classes, and run the
//! extremal-theorem checks. All output is deterministic — identical
//! invocations emit identical bytes (timings go to stderr).

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::families::{FamilyKind, FamilySpec};
use crate::hypercore::Hypergraph;
use crate::spectra::spectral_radius;
use crate::transforms::{
    check_relocation_lemma, edge_swap, relocate_edges, swap_delta, RelocateSpec,
    RelocationVerdict, SwapSpec,
};
use crate::xlab::{rank_table, verify_family_ordering, verify_theorem_1, verify_theorem_2};
use crate::Error;

/// Top-level argument grammar.
#[derive(Debug, Parser)]
#[command(
    name = "hyperspec",
    version,
    about = "Spectral-radius toolkit for k-uniform unicyclic hypergraphs",
    long_about = "Spectral-radius toolkit for k-uniform unicyclic hypergraphs: builds the \
                  extremal families (u_star, f, f1, f2, f3, general pendant placements), \
                  computes principal eigenpairs, applies the block-exchange and relocation \
                  moves, enumerates isomorphism classes, and machine-checks the maximizer, \
                  second-maximizer, and family-ordering claims."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct a named family member and emit it as JSON.
    ///
    /// Families: two_cycle (the two-edge cycle), loose_cycle, loose_path,
    /// u_star (all pendant edges at one cycle vertex — the radius
    /// maximizer), f (one pendant moved to the other cycle vertex — the
    /// runner-up), f1/f2/f3 (pendants at a cycle-edge interior vertex),
    /// and f_rst (arbitrary pendant placement R;S;T over the cycle).
    Gen {
        /// Family kind: two_cycle, loose_cycle, loose_path, u_star, f,
        /// f1, f2, f3, or f_rst.
        #[arg(long)]
        family: String,
        /// Vertex count; (k−1) must divide n for the unicyclic families.
        #[arg(long)]
        n: usize,
        /// Edge size.
        #[arg(long)]
        k: usize,
        /// f_rst only: pendant counts at the two shared cycle vertices,
        /// e.g. --r 3,1.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        r: Option<Vec<usize>>,
        /// f_rst only: k−2 pendant counts over the first cycle edge's
        /// interior vertices.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        s: Option<Vec<usize>>,
        /// f_rst only: k−2 pendant counts over the second cycle edge's
        /// interior vertices.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        t: Option<Vec<usize>>,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the spectral radius and positive principal eigenvector.
    ///
    /// Reads a JSON hypergraph {"n": …, "edges": [[…], …]} and reports
    /// {"rho", "x", "residual", "iterations"}.
    Spectrum {
        /// Input hypergraph JSON path (default: stdin).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a block exchange e′ = (e∖U1)∪V1, f′ = (f∖V1)∪U1 and report
    /// the closed-form Rayleigh delta.
    ///
    /// The report carries both sides of the exchange identity
    /// xᵀA(H′)x − xᵀA(H)x = (2/(k−1))(x_U1 − x_V1)(x_V2 − x_U2) on the
    /// principal eigenvector, plus seeded random-vector trials of the
    /// same identity.
    Swap {
        /// Input hypergraph JSON path (default: stdin).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Exchange spec as inline JSON:
        /// {"e_index": …, "f_index": …, "u1": […], "v1": […]}.
        #[arg(long)]
        spec: String,
        /// Random-vector identity trials to run.
        #[arg(long, default_value_t = 8)]
        trials: usize,
        /// RNG seed for the trials; recorded in the report.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relocate edges onto new vertices and check the strict
    /// radius-increase claim.
    ///
    /// Applies e′ᵢ = (eᵢ∖fromᵢ)∪toᵢ and evaluates the eigenvector gate
    /// (x[from] ≤ x[to] positionwise for the principal x): when the gate
    /// admits the move, the radius must strictly rise. Exits 1 if the
    /// gate passes but the radius does not rise.
    Relocate {
        /// Input hypergraph JSON path (default: stdin).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Relocation spec as inline JSON:
        /// {"moved": […], "from_sets": [[…], …], "to_sets": [[…], …]}.
        #[arg(long)]
        spec: String,
        /// Output path (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all isomorphism classes at (n, k) and rank them by
    /// spectral radius.
    ///
    /// Emits the full report as JSON or CSV (columns: canonical_key,
    /// rho, residual, family_tag). Guarded at n ≤ 12 unless the
    /// HYPERSPEC_MAX_N environment variable raises the limit.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Worker threads for the spectral evaluations.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output path; a .csv extension selects CSV (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Force the output format regardless of the --out extension.
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Machine-check one of the extremal claims at (n, k).
    ///
    /// Claims: 1 = the radius maximizer is u_star (unique up to
    /// isomorphism); 2 = among classes with m ≥ 4 other than the
    /// maximizer, the unique argmax is f; ordering = the chain
    /// ρ(f1), ρ(f2), ρ(f3) < ρ(f) < ρ(u_star) plus ρ < ρ(f) for every
    /// other pendant placement. Exits 1 when a claim fails.
    Verify {
        /// Which claim: 1, 2, or ordering.
        #[arg(long)]
        theorem: TheoremChoice,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Worker threads for the spectral evaluations.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print the ranked spectral-radius table at (n, k) as aligned text.
    Rank {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Worker threads for the spectral evaluations.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TheoremChoice {
    One,
    Two,
    Ordering,
}

impl std::str::FromStr for TheoremChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "1" => Ok(TheoremChoice::One),
            "2" => Ok(TheoremChoice::Two),
            "ordering" => Ok(TheoremChoice::Ordering),
            other => Err(format!("expected 1, 2, or ordering, got {other:?}")),
        }
    }
}

/// Anything a subcommand can fail with, tagged for exit-code mapping.
#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(std::io::Error),
    Json(serde_json::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Json(e) => write!(f, "invalid JSON: {e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

/// Exit-code policy: 2 for anything the caller got wrong (usage, malformed
/// input, violated preconditions, size guards), 1 for computations that
/// started from valid input and failed numerically. Verdict failures also
/// exit 1, at the dispatch layer.
fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Lib(Error::ConvergenceFailure(_)) | CliError::Lib(Error::Inconsistency(_)) => 1,
        _ => 2,
    }
}

fn read_to_string(input: &Option<PathBuf>) -> Result<String, CliError> {
    match input {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn read_graph(input: &Option<PathBuf>) -> Result<Hypergraph, CliError> {
    Ok(serde_json::from_str(&read_to_string(input)?)?)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Everything `swap` reports: the rewired graph, the exchange identity on
/// the principal eigenvector, seeded random-vector trials of the same
/// identity, and the radius movement.
#[derive(Debug, Serialize)]
struct SwapReport {
    seed: u64,
    trials: usize,
    /// Largest |lhs − rhs| over the principal vector and all trials.
    max_identity_error: f64,
    /// Both identity sides on the principal eigenvector of the input.
    lhs: f64,
    rhs: f64,
    rho_before: f64,
    rho_after: f64,
    graph: Hypergraph,
}

#[derive(Debug, Serialize)]
struct RelocateReport {
    #[serde(flatten)]
    verdict: RelocationVerdict,
    graph: Hypergraph,
}

fn run_swap(
    input: &Option<PathBuf>,
    spec_json: &str,
    trials: usize,
    seed: u64,
    out: &Option<PathBuf>,
) -> Result<i32, CliError> {
    let h = read_graph(input)?;
    let spec: SwapSpec = serde_json::from_str(spec_json)?;
    let swapped = edge_swap(&h, &spec)?;
    let before = spectral_radius(&h)?;
    let after = spectral_radius(&swapped)?;
    let (lhs, rhs) = swap_delta(&h, &spec, &before.x)?;
    let mut max_err = (lhs - rhs).abs();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let x: Vec<f64> = (0..h.n()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let (l, r) = swap_delta(&h, &spec, &x)?;
        max_err = max_err.max((l - r).abs());
    }
    let report = SwapReport {
        seed,
        trials,
        max_identity_error: max_err,
        lhs,
        rhs,
        rho_before: before.rho,
        rho_after: after.rho,
        graph: swapped,
    };
    emit(out, &pretty(&report)?)?;
    Ok(0)
}

fn run_relocate(
    input: &Option<PathBuf>,
    spec_json: &str,
    out: &Option<PathBuf>,
) -> Result<i32, CliError> {
    let h = read_graph(input)?;
    let spec: RelocateSpec = serde_json::from_str(spec_json)?;
    let moved = relocate_edges(&h, &spec)?;
    let x = spectral_radius(&h)?.x;
    let verdict = check_relocation_lemma(&h, &spec, &x)?;
    let failed = matches!(verdict, RelocationVerdict::Violated { .. });
    let report = RelocateReport { verdict, graph: moved };
    emit(out, &pretty(&report)?)?;
    Ok(if failed { 1 } else { 0 })
}

fn format_for(out: &Option<PathBuf>, format: Option<OutputFormat>) -> OutputFormat {
    if let Some(f) = format {
        return f;
    }
    match out {
        Some(path) if path.extension().is_some_and(|e| e == "csv") => OutputFormat::Csv,
        _ => OutputFormat::Json,
    }
}

fn run_enumerate(
    n: usize,
    k: usize,
    jobs: usize,
    out: &Option<PathBuf>,
    format: Option<OutputFormat>,
) -> Result<i32, CliError> {
    let report = rank_table(n, k, jobs)?;
    eprintln!(
        "enumerated {} classes at (n, k) = ({n}, {k}) in {:.1} ms",
        report.class_count,
        report.wall_time.as_secs_f64() * 1e3
    );
    let body = match format_for(out, format) {
        OutputFormat::Json => pretty(&report)?,
        OutputFormat::Csv => {
            let mut csv = String::from("canonical_key,rho,residual,family_tag\n");
            for c in &report.classes {
                csv.push_str(&format!(
                    "{},{:.16e},{:.16e},{}\n",
                    c.canonical_key,
                    c.rho,
                    c.residual,
                    c.family_tag.as_deref().unwrap_or("")
                ));
            }
            csv
        }
    };
    emit(out, &body)?;
    Ok(0)
}

fn run_verify(theorem: TheoremChoice, n: usize, k: usize, jobs: usize) -> Result<i32, CliError> {
    // The enumeration-backed checks run their own ranking; worker count
    // only affects speed, never the verdict.
    let _ = jobs;
    let verdict = match theorem {
        TheoremChoice::One => verify_theorem_1(n, k)?,
        TheoremChoice::Two => verify_theorem_2(n, k)?,
        TheoremChoice::Ordering => verify_family_ordering(n, k)?,
    };
    print!("{}", pretty(&verdict)?);
    Ok(if verdict.pass { 0 } else { 1 })
}

fn run_rank(n: usize, k: usize, jobs: usize) -> Result<i32, CliError> {
    let report = rank_table(n, k, jobs)?;
    eprintln!(
        "enumerated {} classes in {:.1} ms",
        report.class_count,
        report.wall_time.as_secs_f64() * 1e3
    );
    let mut body = format!(
        "spectral-radius ranking at n = {}, k = {} ({} classes)\n\
         rank  rho                 residual   family  canonical_key\n",
        report.n, report.k, report.class_count
    );
    for (i, c) in report.classes.iter().enumerate() {
        body.push_str(&format!(
            "{:>4}  {:<18.16}  {:>9.3e}  {:<6}  {}\n",
            i + 1,
            c.rho,
            c.residual,
            c.family_tag.as_deref().unwrap_or("-"),
            c.canonical_key
        ));
    }
    for w in &report.warnings {
        body.push_str(&format!("warning: {w}\n"));
    }
    emit(&None, &body)?;
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Gen { family, n, k, r, s, t, out } => {
            let kind: FamilyKind = family.parse()?;
            let r = match r {
                None => None,
                Some(v) => Some(<[usize; 2]>::try_from(v).map_err(|v: Vec<usize>| {
                    CliError::Usage(format!("--r needs exactly 2 values, got {}", v.len()))
                })?),
            };
            let spec = FamilySpec { kind, n, k, r, s, t };
            let g = spec.build()?;
            emit(&out, &pretty(&g)?)?;
            Ok(0)
        }
        Command::Spectrum { input, out } => {
            let h = read_graph(&input)?;
            let result = spectral_radius(&h)?;
            emit(&out, &pretty(&result)?)?;
            Ok(0)
        }
        Command::Swap { input, spec, trials, seed, out } => {
            run_swap(&input, &spec, trials, seed, &out)
        }
        Command::Relocate { input, spec, out } => run_relocate(&input, &spec, &out),
        Command::Enumerate { n, k, jobs, out, format } => {
            run_enumerate(n, k, jobs, &out, format)
        }
        Command::Verify { theorem, n, k, jobs } => run_verify(theorem, n, k, jobs),
        Command::Rank { n, k, jobs } => run_rank(n, k, jobs),
    }
}

/// Parses `std::env::args`, runs the chosen subcommand, and returns the
/// process exit code: 0 success / verdict pass, 1 verdict or numerical
/// failure, 2 usage or input error.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_split_usage_from_numerical_failure() {
        assert_eq!(exit_code(&CliError::Usage("bad".into())), 2);
        assert_eq!(
            exit_code(&CliError::Lib(Error::InvalidParameter("m < 4".into()))),
            2
        );
        assert_eq!(exit_code(&CliError::Lib(Error::SizeGuard("n".into()))), 2);
        assert_eq!(
            exit_code(&CliError::Lib(Error::ConvergenceFailure(100_000))),
            1
        );
        assert_eq!(
            exit_code(&CliError::Lib(Error::Inconsistency("residual".into()))),
            1
        );
        let io = std::io::Error::new(std::io::ErrorKind::NotFound, "gone");
        assert_eq!(exit_code(&CliError::Io(io)), 2);
    }

    #[test]
    fn argument_grammar_parses() {
        let cli = Cli::try_parse_from([
            "hyperspec", "gen", "--family", "f_rst", "--n", "12", "--k", "3", "--r", "2,1",
            "--s", "1", "--t", "0",
        ])
        .unwrap();
        match cli.command {
            Command::Gen { family, n, k, r, s, t, out } => {
                assert_eq!(family, "f_rst");
                assert_eq!((n, k), (12, 3));
                assert_eq!(r, Some(vec![2, 1]));
                assert_eq!(s, Some(vec![1]));
                assert_eq!(t, Some(vec![0]));
                assert!(out.is_none());
            }
            other => panic!("parsed {other:?}"),
        }

        let cli = Cli::try_parse_from([
            "hyperspec", "verify", "--theorem", "ordering", "--n", "10", "--k", "3",
        ])
        .unwrap();
        match cli.command {
            Command::Verify { theorem, .. } => assert_eq!(theorem, TheoremChoice::Ordering),
            other => panic!("parsed {other:?}"),
        }

        assert!(Cli::try_parse_from(["hyperspec", "verify", "--theorem", "3", "--n", "6", "--k", "3"]).is_err());
        assert!(Cli::try_parse_from(["hyperspec", "nonsense"]).is_err());
    }

    #[test]
    fn csv_is_inferred_from_the_extension() {
        assert_eq!(
            format_for(&Some(PathBuf::from("report.csv")), None),
            OutputFormat::Csv
        );
        assert_eq!(
            format_for(&Some(PathBuf::from("report.json")), None),
            OutputFormat::Json
        );
        assert_eq!(format_for(&None, None), OutputFormat::Json);
        assert_eq!(
            format_for(&Some(PathBuf::from("report.csv")), Some(OutputFormat::Json)),
            OutputFormat::Json
        );
    }
}
