//! `slnn` — train shifted Legendre neural networks on singular Lane-Emden
//! initial value problems and report the error against known exact solutions.
//!
//! Exit codes: 0 success, 1 non-convergence or failed check (reports are
//! still written), 2 invalid flags or problem file, 3 numeric divergence.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use slnn_cli::gradcheck::{worst_discrepancy, GradCheckConfig};
use slnn_cli::problem_file::load_problem;
use slnn_cli::report_json::emit_json;
use slnn_core::basis::{eval_basis, orthogonality_defect};
use slnn_core::report::{emit_csv, evaluate, format_value, summarize, test_grid, Precision};
use slnn_core::train::{train, TrainConfig};
use slnn_core::{Activation, BasisOrder, Error, ProblemSpec};

#[derive(Parser)]
#[command(name = "slnn", version, about = "Shifted Legendre neural network solver for Lane-Emden type singular IVPs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train on a problem, evaluate on a test grid, and write a report
    Solve(SolveArgs),
    /// Compare the analytic loss gradient against the finite-difference oracle
    Gradcheck(GradcheckArgs),
    /// Tabulate the shifted Legendre basis or check its orthogonality
    Basis(BasisArgs),
    /// Train and print a fixed-precision error table to stdout
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ActivationArg {
    Tanh,
    Identity,
}

impl From<ActivationArg> for Activation {
    fn from(a: ActivationArg) -> Activation {
        match a {
            ActivationArg::Tanh => Activation::Tanh,
            ActivationArg::Identity => Activation::Identity,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrecisionArg {
    Full,
    Paper,
}

impl From<PrecisionArg> for Precision {
    fn from(p: PrecisionArg) -> Precision {
        match p {
            PrecisionArg::Full => Precision::Full,
            PrecisionArg::Paper => Precision::Paper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct TrainFlags {
    /// Built-in problem name (example1, example2) or path to a problem JSON file
    #[arg(long)]
    problem: String,
    /// Number of shifted Legendre basis functions
    #[arg(long, default_value_t = 5)]
    order: usize,
    /// Number of equidistant collocation points (left endpoint excluded)
    #[arg(long, default_value_t = 10)]
    train_points: usize,
    #[arg(long, value_enum, default_value_t = ActivationArg::Tanh)]
    activation: ActivationArg,
    /// Learning rate
    #[arg(long, default_value_t = 0.01)]
    lr: f64,
    #[arg(long, default_value_t = 50_000)]
    max_iters: usize,
    /// Stop once the loss drops to this value
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Weights start uniform in [-init-range, init-range]
    #[arg(long, default_value_t = 0.5)]
    init_range: f64,
    /// Disable the step-halving safeguard (accept every gradient step)
    #[arg(long)]
    no_backtracking: bool,
}

impl TrainFlags {
    fn resolve(&self) -> Result<(ProblemSpec, TrainConfig), Error> {
        let problem = match ProblemSpec::builtin(&self.problem) {
            Ok(p) => p,
            Err(lookup_err) => {
                // not a built-in; try it as a file path
                let path = PathBuf::from(&self.problem);
                if !path.exists() {
                    return Err(lookup_err);
                }
                let contents = fs::read_to_string(&path).map_err(|e| Error::Schema {
                    field: "document",
                    reason: e.to_string(),
                })?;
                load_problem(&contents)?
            }
        };
        let config = TrainConfig {
            order: BasisOrder::new(self.order)?,
            activation: self.activation.into(),
            train_points: self.train_points,
            learning_rate: self.lr,
            max_iters: self.max_iters,
            loss_tol: self.tol,
            seed: self.seed,
            init_range: self.init_range,
            backtracking: !self.no_backtracking,
        };
        Ok((problem, config))
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    train: TrainFlags,
    /// Number of equidistant test points (19 reproduces the reference layout)
    #[arg(long, default_value_t = 19)]
    test_points: usize,
    /// Report output path
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Also write the loss history as CSV (`iter,loss`) to this path
    #[arg(long)]
    loss_history: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Full)]
    precision: PrecisionArg,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    train: TrainFlags,
    #[arg(long, default_value_t = 19)]
    test_points: usize,
}

#[derive(Args)]
struct GradcheckArgs {
    #[arg(long, default_value = "example1")]
    problem: String,
    #[arg(long, default_value_t = 5)]
    order: usize,
    #[arg(long, value_enum, default_value_t = ActivationArg::Tanh)]
    activation: ActivationArg,
    /// Number of random weight configurations to test
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worst acceptable relative discrepancy
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long, default_value_t = 10)]
    train_points: usize,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long, default_value_t = 5)]
    order: usize,
    /// Number of equidistant sample points on [0, 1], endpoints included
    #[arg(long, default_value_t = 11)]
    points: usize,
    /// Include first and second derivative columns
    #[arg(long)]
    derivatives: bool,
    /// Print the orthogonality defect instead of tabulating
    #[arg(long)]
    check_orthogonality: bool,
    /// Gauss-Legendre nodes for the orthogonality check
    #[arg(long, default_value_t = 64)]
    quad_nodes: usize,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DIVERGED: u8 = 3;

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Divergence { .. } => EXIT_DIVERGED,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Gradcheck(args) => run_gradcheck(args),
        Command::Basis(args) => run_basis(args),
        Command::Table(args) => run_table(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn write_out(path: &PathBuf, contents: &[u8]) -> Result<(), Error> {
    fs::write(path, contents).map_err(|e| Error::InvalidArgument {
        name: "out",
        reason: match e.kind() {
            std::io::ErrorKind::NotFound => "directory does not exist",
            std::io::ErrorKind::PermissionDenied => "permission denied",
            _ => "cannot write file",
        },
    })
}

fn run_solve(args: SolveArgs) -> Result<u8, Error> {
    let (problem, config) = args.train.resolve()?;
    if args.test_points == 0 {
        return Err(Error::InvalidArgument { name: "test_points", reason: "must be >= 1" });
    }

    let report = train(&problem, &config)?;
    let grid = test_grid(&problem, args.test_points)?;
    let table = evaluate(&report.final_params, &problem.conditions, &problem, &grid, &config)?;
    let summary = summarize(&table).ok();

    let bytes = match args.format {
        FormatArg::Csv => emit_csv(&table, args.precision.into()).into_bytes(),
        FormatArg::Json => emit_json(&table, summary.as_ref(), &report).into_bytes(),
    };
    write_out(&args.out, &bytes)?;

    if let Some(history_path) = &args.loss_history {
        let mut csv = String::from("iter,loss\n");
        for (i, loss) in report.loss_history.iter().enumerate() {
            csv.push_str(&format!("{i},{}\n", format_value(*loss, Precision::Full)));
        }
        write_out(history_path, csv.as_bytes())?;
    }

    let final_loss = report.loss_history.last().copied().unwrap_or(f64::NAN);
    let max_err = summary
        .map(|s| format!("{:e}", s.max_abs_error))
        .unwrap_or_else(|| String::from("na"));
    println!(
        "problem={} converged={} iters={} final_loss={:e} max_err={}",
        problem.name, report.converged, report.iterations, final_loss, max_err
    );
    Ok(if report.converged { 0 } else { EXIT_FAIL })
}

fn run_table(args: TableArgs) -> Result<u8, Error> {
    let (problem, config) = args.train.resolve()?;
    if args.test_points == 0 {
        return Err(Error::InvalidArgument { name: "test_points", reason: "must be >= 1" });
    }
    let report = train(&problem, &config)?;
    let grid = test_grid(&problem, args.test_points)?;
    let table = evaluate(&report.final_params, &problem.conditions, &problem, &grid, &config)?;

    println!("{:<10} {:>14} {:>14} {:>12}", "eta", "exact", "slnn", "error");
    for row in &table.rows {
        let exact = row.exact.map(|v| format!("{v:.4}")).unwrap_or_default();
        let err = row.abs_error.map(|v| format!("{v:.4E}")).unwrap_or_default();
        println!("{:<10.4} {exact:>14} {:>14.4} {err:>12}", row.eta, row.approx);
    }
    Ok(if report.converged { 0 } else { EXIT_FAIL })
}

fn run_gradcheck(args: GradcheckArgs) -> Result<u8, Error> {
    if args.trials == 0 {
        return Err(Error::InvalidArgument { name: "trials", reason: "must be >= 1" });
    }
    if !(args.tolerance >= 0.0) {
        return Err(Error::InvalidArgument { name: "tolerance", reason: "must be >= 0" });
    }
    let problem = match ProblemSpec::builtin(&args.problem) {
        Ok(p) => p,
        Err(lookup_err) => {
            let path = PathBuf::from(&args.problem);
            if !path.exists() {
                return Err(lookup_err);
            }
            let contents = fs::read_to_string(&path)
                .map_err(|e| Error::Schema { field: "document", reason: e.to_string() })?;
            load_problem(&contents)?
        }
    };
    let config = GradCheckConfig {
        order: BasisOrder::new(args.order)?,
        activation: args.activation.into(),
        trials: args.trials,
        seed: args.seed,
        train_points: args.train_points,
        fd_step: 1e-6,
    };
    let worst = worst_discrepancy(&problem, &config)?;
    let pass = worst < args.tolerance;
    println!(
        "problem={} trials={} worst={:e} tolerance={:e} result={}",
        problem.name,
        args.trials,
        worst,
        args.tolerance,
        if pass { "pass" } else { "fail" }
    );
    Ok(if pass { 0 } else { EXIT_FAIL })
}

fn run_basis(args: BasisArgs) -> Result<u8, Error> {
    let order = BasisOrder::new(args.order)?;

    if args.check_orthogonality {
        let defect = orthogonality_defect(order, args.quad_nodes)?;
        println!("orthogonality_defect={defect:e}");
        return Ok(if defect <= 1e-12 { 0 } else { EXIT_FAIL });
    }

    if args.points == 0 {
        return Err(Error::InvalidArgument { name: "points", reason: "must be >= 1" });
    }
    let m = order.get();
    let grid: Vec<f64> = if args.points == 1 {
        vec![0.0]
    } else {
        (0..args.points).map(|i| i as f64 / (args.points - 1) as f64).collect()
    };

    let mut csv = String::from("eta");
    for k in 0..m {
        csv.push_str(&format!(",L_{k}"));
    }
    if args.derivatives {
        for k in 0..m {
            csv.push_str(&format!(",dL_{k}"));
        }
        for k in 0..m {
            csv.push_str(&format!(",d2L_{k}"));
        }
    }
    csv.push('\n');
    for &eta in &grid {
        let e = eval_basis(order, eta)?;
        csv.push_str(&format_value(eta, Precision::Full));
        for v in &e.values {
            csv.push(',');
            csv.push_str(&format_value(*v, Precision::Full));
        }
        if args.derivatives {
            for v in e.d1.iter().chain(e.d2.iter()) {
                csv.push(',');
                csv.push_str(&format_value(*v, Precision::Full));
            }
        }
        csv.push('\n');
    }

    match &args.out {
        Some(path) => write_out(path, csv.as_bytes())?,
        None => print!("{csv}"),
    }
    Ok(0)
}
