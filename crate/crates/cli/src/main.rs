//! Command-line harness for the disclosure-minimal classification library:
//! dataset generation, critical-point queries, protocol runs, truthfulness
//! audits, pipeline comparison, and safe-region grid sampling.
//!
//! Every command is deterministic given its flags; file outputs are
//! byte-identical across reruns. Failures print a machine-readable
//! `{"kind": ..., "message": ...}` JSON object on standard error. Exit
//! codes: 0 success, 1 audit violations found, 2 usage or runtime error.

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Parser, Subcommand};
use ediscovery::dataset::{DatasetError, IndexSet, LabeledDataset, Point};
use ediscovery::kernel::{KernelError, KernelSpec};
use ediscovery::mlpipeline::{
    compare_pipelines, generate_separable, LearnerSpec, PipelineConfig, PipelineError, Universe,
};
use ediscovery::protocol::{
    audit_protocol, run_cpp_with, AliceStrategy, AliceWins, AuditMode, BobWins, Court,
    ExactBackend, ProtocolError,
};
use ediscovery::rational::{parse_rational, rational_to_string};
use ediscovery::separability::{critical_points, safe_contains, SeparabilityError};
use ediscovery::svm::SvmError;
use num_rational::BigRational;
use num_traits::Signed;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ediscovery",
    version,
    about = "Exact disclosure-minimal multi-party classification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random strictly separable dataset file.
    Gen {
        /// Seed for the deterministic generator.
        #[arg(long)]
        seed: u64,
        /// Number of points (at least 2; both classes always appear).
        #[arg(long)]
        points: usize,
        /// Coordinate dimension.
        #[arg(long)]
        dim: usize,
        /// Minimum signed distance of every point from the hidden plane.
        #[arg(long)]
        margin: f64,
        /// Output dataset path (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Critical points of a dataset's true positives, as JSON on stdout.
    Critical {
        /// Dataset file (JSON).
        #[arg(long)]
        data: PathBuf,
    },
    /// Run the three-party disclosure protocol and write the transcript.
    Protocol {
        /// Dataset file (JSON).
        #[arg(long)]
        data: PathBuf,
        /// Reporting strategy: truthful | hide:K | extra:K | report:FILE
        /// (FILE holds a JSON array of indices).
        #[arg(long, default_value = "truthful")]
        strategy: String,
        /// Dispute resolution: bob (labeler wins) or alice (reporter wins;
        /// deliberately unsound, for negative-control experiments).
        #[arg(long, default_value = "bob")]
        court: String,
        /// Output transcript path (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Audit the protocol's disclosure promises; exits 1 on violations.
    Audit {
        /// Dataset file (JSON).
        #[arg(long)]
        data: PathBuf,
        /// Coverage: exhaustive | sample:SEED:TRIALS.
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Dispute resolution: bob | alice (see `protocol --court`).
        #[arg(long, default_value = "bob")]
        court: String,
    },
    /// Compare the single-party and multi-party pipelines on one universe.
    Ml {
        /// Universe file: a dataset whose labels play ground truth.
        #[arg(long)]
        universe: PathBuf,
        /// Seed for the shared training sample.
        #[arg(long)]
        seed: u64,
        /// Training sample size.
        #[arg(long)]
        m: usize,
        /// Learner: svm | kernel:linear | kernel:poly:DEGREE[:COEF0] |
        /// kernel:rbf:GAMMA | first-vertex (non-robust negative control).
        #[arg(long, default_value = "svm")]
        learner: String,
        /// Producing party's strategy (as in `protocol --strategy`);
        /// report indices refer to positions within the sorted sample.
        #[arg(long, default_value = "truthful")]
        strategy: String,
    },
    /// Evaluate the safe region on a rational grid; CSV columns x,y,safe.
    SafeGrid {
        /// Two-dimensional dataset file (JSON).
        #[arg(long)]
        data: PathBuf,
        /// Grid bounds and step, parsed as exact rationals ("0.5", "1/4").
        #[arg(long)]
        xmin: String,
        #[arg(long)]
        xmax: String,
        #[arg(long)]
        ymin: String,
        #[arg(long)]
        ymax: String,
        #[arg(long)]
        step: String,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
}

struct CliError {
    kind: &'static str,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        CliError {
            kind: "dataset",
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            kind: "io",
            message: e.to_string(),
        }
    }
}

impl From<SeparabilityError> for CliError {
    fn from(e: SeparabilityError) -> Self {
        CliError {
            kind: match e {
                SeparabilityError::NotSeparable => "not_realizable",
                _ => "separability",
            },
            message: e.to_string(),
        }
    }
}

impl From<ProtocolError> for CliError {
    fn from(e: ProtocolError) -> Self {
        CliError {
            kind: match e {
                ProtocolError::NotRealizable => "not_realizable",
                _ => "protocol",
            },
            message: e.to_string(),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        CliError {
            kind: match e {
                PipelineError::NotSeparable => "not_realizable",
                PipelineError::InvalidConfig { .. } | PipelineError::SampleTooLarge { .. } => {
                    "usage"
                }
                PipelineError::Protocol(ProtocolError::NotRealizable) => "not_realizable",
                PipelineError::Svm(SvmError::NotSeparable) => "not_realizable",
                PipelineError::Kernel(KernelError::NotSeparableInFeatureSpace) => "not_realizable",
                _ => "pipeline",
            },
            message: e.to_string(),
        }
    }
}

fn parse_strategy(s: &str) -> Result<AliceStrategy, CliError> {
    if s == "truthful" {
        return Ok(AliceStrategy::Truthful);
    }
    if let Some(k) = s.strip_prefix("hide:") {
        let k = k
            .parse()
            .map_err(|_| CliError::usage(format!("invalid hide count in strategy '{s}'")))?;
        return Ok(AliceStrategy::HidePositives(k));
    }
    if let Some(k) = s.strip_prefix("extra:") {
        let k = k
            .parse()
            .map_err(|_| CliError::usage(format!("invalid extra count in strategy '{s}'")))?;
        return Ok(AliceStrategy::ExtraPositives(k));
    }
    if let Some(path) = s.strip_prefix("report:") {
        let text = std::fs::read_to_string(path)?;
        let indices: Vec<usize> = serde_json::from_str(&text).map_err(|e| {
            CliError::usage(format!("report file must be a JSON array of indices: {e}"))
        })?;
        return Ok(AliceStrategy::FixedReport(IndexSet::from_iter(indices)));
    }
    Err(CliError::usage(format!(
        "unknown strategy '{s}': expected truthful | hide:K | extra:K | report:FILE"
    )))
}

fn parse_learner(s: &str) -> Result<LearnerSpec, CliError> {
    if s == "svm" {
        return Ok(LearnerSpec::HardSvm);
    }
    if s == "first-vertex" {
        return Ok(LearnerSpec::FirstVertex);
    }
    if s == "kernel:linear" {
        return Ok(LearnerSpec::KernelSvm(KernelSpec::Linear));
    }
    if let Some(rest) = s.strip_prefix("kernel:poly:") {
        let mut parts = rest.split(':');
        let degree = parts
            .next()
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| CliError::usage(format!("invalid polynomial degree in '{s}'")))?;
        let coef0 = match parts.next() {
            None => 1.0,
            Some(c) => c
                .parse()
                .map_err(|_| CliError::usage(format!("invalid coef0 in '{s}'")))?,
        };
        if parts.next().is_some() {
            return Err(CliError::usage(format!("too many fields in learner '{s}'")));
        }
        return Ok(LearnerSpec::KernelSvm(KernelSpec::Poly { degree, coef0 }));
    }
    if let Some(g) = s.strip_prefix("kernel:rbf:") {
        let gamma = g
            .parse()
            .map_err(|_| CliError::usage(format!("invalid gamma in '{s}'")))?;
        return Ok(LearnerSpec::KernelSvm(KernelSpec::Rbf { gamma }));
    }
    Err(CliError::usage(format!(
        "unknown learner '{s}': expected svm | kernel:linear | kernel:poly:DEGREE[:COEF0] | kernel:rbf:GAMMA | first-vertex"
    )))
}

fn parse_mode(s: &str) -> Result<AuditMode, CliError> {
    if s == "exhaustive" {
        return Ok(AuditMode::Exhaustive);
    }
    if let Some(rest) = s.strip_prefix("sample:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if let [seed, trials] = parts.as_slice() {
            if let (Ok(seed), Ok(trials)) = (seed.parse(), trials.parse()) {
                return Ok(AuditMode::Sampled { seed, trials });
            }
        }
        return Err(CliError::usage(format!(
            "invalid sample mode '{s}': expected sample:SEED:TRIALS"
        )));
    }
    Err(CliError::usage(format!(
        "unknown mode '{s}': expected exhaustive | sample:SEED:TRIALS"
    )))
}

fn parse_court(s: &str) -> Result<Box<dyn Court>, CliError> {
    match s {
        "bob" => Ok(Box::new(BobWins)),
        "alice" => Ok(Box::new(AliceWins)),
        _ => Err(CliError::usage(format!(
            "unknown court '{s}': expected bob | alice"
        ))),
    }
}

fn parse_grid_value(flag: &str, s: &str) -> Result<BigRational, CliError> {
    parse_rational(s).map_err(|e| CliError::usage(format!("invalid --{flag} '{s}': {e}")))
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Gen {
            seed,
            points,
            dim,
            margin,
            out,
        } => {
            let data = generate_separable(seed, points, dim, margin)?;
            data.save(&out)?;
            Ok(0)
        }
        Command::Critical { data } => {
            let s = LabeledDataset::load(&data)?;
            let positives = s.positives();
            let critical = critical_points(&s, &positives)?;
            let payload = serde_json::json!({
                "critical": critical,
                "disclosed_if_truthful": positives.union(&critical),
            });
            println!("{}", serde_json::to_string_pretty(&payload).expect("serializes"));
            Ok(0)
        }
        Command::Protocol {
            data,
            strategy,
            court,
            out,
        } => {
            let s = LabeledDataset::load(&data)?;
            let strategy = parse_strategy(&strategy)?;
            let court = parse_court(&court)?;
            let transcript = run_cpp_with(&s, &strategy, court.as_ref(), &ExactBackend)?;
            std::fs::write(&out, transcript.to_json())?;
            Ok(0)
        }
        Command::Audit { data, mode, court } => {
            let s = LabeledDataset::load(&data)?;
            let mode = parse_mode(&mode)?;
            let court = parse_court(&court)?;
            let report = audit_protocol(&s, mode, |ds, r| {
                run_cpp_with(
                    ds,
                    &AliceStrategy::FixedReport(r.clone()),
                    court.as_ref(),
                    &ExactBackend,
                )
            })?;
            print!("{}", report.to_json());
            Ok(if report.violations.is_empty() { 0 } else { 1 })
        }
        Command::Ml {
            universe,
            seed,
            m,
            learner,
            strategy,
        } => {
            let u = Universe::new(LabeledDataset::load(&universe)?);
            let config = PipelineConfig::new(m, seed, parse_learner(&learner)?);
            let strategy = parse_strategy(&strategy)?;
            let report = compare_pipelines(&u, &config, &strategy)?;
            print!("{}", report.to_json());
            Ok(0)
        }
        Command::SafeGrid {
            data,
            xmin,
            xmax,
            ymin,
            ymax,
            step,
            out,
        } => {
            let s = LabeledDataset::load(&data)?;
            if s.dim() != 2 {
                return Err(CliError::usage(format!(
                    "safe-grid requires a 2-dimensional dataset, got dimension {}",
                    s.dim()
                )));
            }
            let xmin = parse_grid_value("xmin", &xmin)?;
            let xmax = parse_grid_value("xmax", &xmax)?;
            let ymin = parse_grid_value("ymin", &ymin)?;
            let ymax = parse_grid_value("ymax", &ymax)?;
            let step = parse_grid_value("step", &step)?;
            if !step.is_positive() {
                return Err(CliError::usage("grid step must be positive"));
            }
            let pos = s.select(&s.positives());
            let neg = s.select(&s.negatives());
            let mut csv = String::from("x,y,safe\n");
            let mut x = xmin;
            while x <= xmax {
                let mut y = ymin.clone();
                while y <= ymax {
                    let safe = safe_contains(&pos, &neg, &Point::new(vec![x.clone(), y.clone()]))?;
                    writeln!(
                        csv,
                        "{},{},{}",
                        rational_to_string(&x),
                        rational_to_string(&y),
                        u8::from(safe)
                    )
                    .expect("string write");
                    y += &step;
                }
                x += &step;
            }
            std::fs::write(&out, csv)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(
                e.kind(),
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion
            ) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let payload = serde_json::json!({"kind": "usage", "message": e.to_string()});
            eprintln!("{payload}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let payload = serde_json::json!({"kind": e.kind, "message": e.message});
            eprintln!("{payload}");
            ExitCode::from(2)
        }
    }
}
