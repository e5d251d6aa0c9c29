//! Command-line surface: simulations, ω-sweeps, cross-engine verification,
//! and CSV dumps of the series fixtures.

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use qwalk::classical::{self, ClassicalField};
use qwalk::coin::CoinField;
use qwalk::series;
use qwalk::theory;
use qwalk::verify::{self, CheckKind};
use qwalk::evolution;
use rayon::prelude::*;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Inhomogeneous discrete-time quantum walk on the line: simulation, sweeps, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    /// Inhomogeneous walk, origin coin (1/√2)[[1, e^iω], [e^-iω, -1]].
    Eq22,
    /// Companion inhomogeneous walk, origin coin (1/√2)[[e^iω, 1], [1, -e^-iω]].
    Eq21,
    /// Homogeneous Hadamard walk.
    Hadamard,
    /// Classical random walk comparator (uses --p0 and --p).
    Classical,
}

#[derive(Subcommand)]
enum Command {
    /// Return probabilities over time for one walk, as CSV.
    Simulate {
        #[arg(long, value_enum, default_value_t = Model::Eq22)]
        model: Model,
        /// Coin parameter; a float or a multiple of pi like `pi`, `pi/2`, `3pi/2`.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        /// Time horizon (inclusive); rows cover even times up to it.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Left-step probability at the origin (classical model only).
        #[arg(long, default_value_t = 0.5)]
        p0: f64,
        /// Left-step probability away from the origin (classical model only).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Write CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Localization limit c(ω) across an ω-grid, with simulated values.
    Sweep {
        /// Number of grid points over [0, 2π).
        #[arg(long, default_value_t = 257)]
        grid: usize,
        /// Even time horizon for the simulated column.
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the registered cross-engine invariant suite.
    Verify {
        /// Override the tolerance of the floating-point checks.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classical random-walk return probabilities, as CSV.
    Classical {
        #[arg(long, default_value_t = 0.5)]
        p0: f64,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// First-return coefficients r*_n and origin-amplitude coefficients.
    Series {
        /// Coin parameter for the amplitude columns.
        #[arg(long, default_value = "pi", allow_hyphen_values = true)]
        omega: String,
        /// Largest time (inclusive) to dump.
        #[arg(long, default_value_t = 24)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum AppError {
    Usage(String),
    Io(io::Error),
    VerificationFailed,
}

impl From<io::Error> for AppError {
    fn from(e: io::Error) -> Self {
        AppError::Io(e)
    }
}

/// 15 significant digits, '.' decimal separator.
fn fmt15(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // fold -0.0 into 0.0
    format!("{x:.14e}")
}

fn parse_omega(text: &str) -> Result<f64, AppError> {
    let t = text.trim();
    let bad = || AppError::Usage(format!("cannot parse omega value `{text}`"));
    if let Some(idx) = t.find("pi") {
        let coef_str = &t[..idx];
        let rest = &t[idx + 2..];
        let coef: f64 = match coef_str {
            "" | "+" => 1.0,
            "-" => -1.0,
            s => s.parse().map_err(|_| bad())?,
        };
        let den: f64 = match rest.strip_prefix('/') {
            None if rest.is_empty() => 1.0,
            Some(d) => {
                let v: f64 = d.parse().map_err(|_| bad())?;
                if v == 0.0 {
                    return Err(bad());
                }
                v
            }
            _ => return Err(bad()),
        };
        Ok(coef * PI / den)
    } else {
        t.parse().map_err(|_| bad())
    }
}

fn require_even(steps: usize, what: &str) -> Result<(), AppError> {
    if !steps.is_multiple_of(2) {
        Err(AppError::Usage(format!(
            "{what} must be an even time, got {steps}"
        )))
    } else {
        Ok(())
    }
}

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, AppError> {
    Ok(match out {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

fn quantum_field(model: Model, omega: &Option<String>) -> Result<(CoinField, f64), AppError> {
    let omega_val = match omega {
        Some(text) => parse_omega(text)?,
        None => match model {
            Model::Hadamard => 0.0,
            _ => {
                return Err(AppError::Usage(
                    "--omega is required for this model".into(),
                ))
            }
        },
    };
    let field = match model {
        Model::Eq22 => CoinField::eq22(omega_val),
        Model::Eq21 => CoinField::eq21(omega_val),
        Model::Hadamard => CoinField::Hadamard,
        Model::Classical => unreachable!("classical handled separately"),
    };
    Ok((field, omega_val))
}

fn cmd_simulate(
    model: Model,
    omega: &Option<String>,
    steps: usize,
    p0: f64,
    p: f64,
    out: &Option<PathBuf>,
) -> Result<(), AppError> {
    require_even(steps, "--steps")?;
    let (history, limit) = match model {
        Model::Classical => {
            let field = ClassicalField::new(p0, p)
                .map_err(|e| AppError::Usage(e.to_string()))?;
            (classical::classical_return_history(&field, steps), 0.0)
        }
        _ => {
            let (field, omega_val) = quantum_field(model, omega)?;
            let limit = match model {
                // Only the eq22 origin coin traps mass; the others spread out.
                Model::Eq22 => theory::localization_constant(omega_val),
                _ => 0.0,
            };
            let history = evolution::return_history(&field, steps)
                .expect("builtin coin fields are total");
            (history, limit)
        }
    };
    let mut w = open_output(out)?;
    writeln!(w, "n,p_return,c_limit,difference")?;
    for n in (0..=steps).step_by(2) {
        let p_n = history[n];
        writeln!(
            w,
            "{n},{},{},{}",
            fmt15(p_n),
            fmt15(limit),
            fmt15(p_n - limit)
        )?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_sweep(grid: usize, steps: usize, out: &Option<PathBuf>) -> Result<(), AppError> {
    if grid < 2 {
        return Err(AppError::Usage("--grid needs at least 2 points".into()));
    }
    require_even(steps, "--steps")?;
    let omegas: Vec<f64> = (0..grid).map(|k| 2.0 * PI * k as f64 / grid as f64).collect();
    // Grid points are independent; rows come back in grid order.
    let rows: Vec<(f64, f64, f64)> = omegas
        .par_iter()
        .map(|&omega| {
            let p = evolution::run(&CoinField::eq22(omega), steps)
                .expect("builtin coin fields are total")
                .return_probability();
            (omega, theory::localization_constant(omega), p)
        })
        .collect();
    let mut w = open_output(out)?;
    writeln!(w, "omega,c_limit,p_return_at_horizon")?;
    for (omega, c, p) in rows {
        writeln!(w, "{},{},{}", fmt15(omega), fmt15(c), fmt15(p))?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(tolerance: Option<f64>, out: &Option<PathBuf>) -> Result<(), AppError> {
    if let Some(t) = tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(AppError::Usage(format!(
                "--tolerance must be positive, got {t}"
            )));
        }
    }
    let results = verify::run_all(tolerance);
    let mut report = String::new();
    for r in &results {
        let kind = match r.kind {
            CheckKind::Exact => "exact",
            CheckKind::Float => "float",
        };
        writeln!(
            report,
            "{} {:<34} kind={kind} max_error={:e} tolerance={:e}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.max_error,
            r.tolerance,
        )
        .expect("writing to a String");
    }
    let passed = results.iter().filter(|r| r.passed).count();
    writeln!(report, "{passed}/{} checks passed", results.len()).expect("writing to a String");
    let mut w = open_output(out)?;
    w.write_all(report.as_bytes())?;
    w.flush()?;
    if verify::all_passed(&results) {
        Ok(())
    } else {
        Err(AppError::VerificationFailed)
    }
}

fn cmd_series(omega: &str, steps: usize, out: &Option<PathBuf>) -> Result<(), AppError> {
    let omega_val = parse_omega(omega)?;
    let r_star = series::r_star_series::<BigRational>(steps.max(1));
    let amp = series::origin_gf(omega_val, steps);
    let mut w = open_output(out)?;
    writeln!(w, "n,r_star,psi_l_re,psi_l_im,psi_r_re,psi_r_im")?;
    for n in 0..=steps {
        let a = amp.amplitude(n);
        let r = if n >= 1 {
            r_star.coeff(n).to_string()
        } else {
            String::new()
        };
        writeln!(
            w,
            "{n},{r},{},{},{},{}",
            fmt15(a.l.re),
            fmt15(a.l.im),
            fmt15(a.r.re),
            fmt15(a.r.im)
        )?;
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), AppError> {
    match &cli.command {
        Command::Simulate {
            model,
            omega,
            steps,
            p0,
            p,
            out,
        } => cmd_simulate(*model, omega, *steps, *p0, *p, out),
        Command::Sweep { grid, steps, out } => cmd_sweep(*grid, *steps, out),
        Command::Verify { tolerance, out } => cmd_verify(*tolerance, out),
        Command::Classical { p0, p, steps, out } => {
            cmd_simulate(Model::Classical, &None, *steps, *p0, *p, out)
        }
        Command::Series { omega, steps, out } => cmd_series(omega, *steps, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::VerificationFailed) => ExitCode::from(1),
        Err(AppError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
