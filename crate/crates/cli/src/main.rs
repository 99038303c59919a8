mod checks;
mod output;
mod ranges;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use extremal_core::bifurcation::{profile, t_nu, table_points};
use extremal_core::delaunay::{delaunay_profile, mean_curvature_check};
use extremal_core::pdecheck::linear_response;
use extremal_core::spectrum::eigen_data;
use extremal_core::Error;

use output::{emit, Format, Record};

/// Bifurcation periods, spectra and profiles of extremal domains on perturbed cylinders.
#[derive(Parser)]
#[command(name = "extremal", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output path, or `-` for stdout.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Subcommand)]
enum Command {
    /// Bifurcation periods T_nu for a list of 2nu values (e.g. `0..20,40,200`).
    Table {
        #[arg(long = "two-nu")]
        two_nu: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Samples of sigma_1(T), optionally next to the ODE oracle.
    Sigma {
        #[arg(long)]
        n: usize,
        /// A period `T` or an inclusive range `start:end`.
        #[arg(long = "T")]
        t: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long)]
        oracle: bool,
        /// RK4 steps of the oracle.
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// First-order bifurcating boundary R(t) = 1 + s cos(2 pi t / T_nu).
    Profile {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        #[arg(long, default_value_t = 1)]
        periods: usize,
        /// Samples per period.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One period of the Delaunay profile (t, y, z).
    Delaunay {
        #[arg(long)]
        sigma: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Finite-difference estimate of sigma_k(T) on a wavy cylinder.
    VerifyPde {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 96)]
        nr: usize,
        #[arg(long, default_value_t = 96)]
        nt: usize,
        /// Period; defaults to the bifurcation period T_nu of dimension n.
        #[arg(long = "T")]
        t: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Property suites with one pass/fail row per property.
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: checks::Suite,
        #[command(flatten)]
        output: OutputArgs,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Numeric(format!("output: {e}"))
    }
}

fn table_cmd(spec: &str) -> Result<Vec<Record>, Failure> {
    let keys = ranges::parse_int_list(spec).map_err(Failure::Usage)?;
    Ok(table_points(&keys)?
        .into_iter()
        .map(|p| {
            Record::new("table-row")
                .with("two_nu", p.n - 2)
                .with("n", p.n)
                .with("j_nu", p.j_nu)
                .with("rho_nu", p.rho_nu)
                .with("T_nu", p.t_nu)
                .with("T_lower", p.t_lower)
                .with("T_upper", p.t_upper)
        })
        .collect())
}

fn sigma_cmd(n: usize, spec: &str, samples: usize, oracle: bool, steps: usize) -> Result<Vec<Record>, Failure> {
    let ts = ranges::parse_real_range(spec, samples).map_err(Failure::Usage)?;
    let d = eigen_data(n)?;
    let mut rows = Vec::with_capacity(ts.len());
    for t in ts {
        let s = d.sigma1(t)?;
        let mut r = Record::new("sigma-sample").with("T", t).with("sigma1", s);
        if oracle {
            let o = d.sigma1_via_ode(t, steps)?;
            r = r.with("sigma1_ode", o).with("abs_diff", (s - o).abs());
        }
        rows.push(r);
    }
    Ok(rows)
}

fn profile_cmd(n: usize, s: f64, periods: usize, samples: usize) -> Result<Vec<Record>, Failure> {
    let p = profile(n, s, periods, samples)?;
    Ok(p.samples
        .iter()
        .map(|&(t, r)| {
            Record::new("profile-sample").with("t", t).with("R", r).with("T", p.period).with("order", "first-order")
        })
        .collect())
}

fn delaunay_cmd(sigma: f64, samples: usize) -> Result<Vec<Record>, Failure> {
    let p = delaunay_profile(sigma, samples)?;
    if samples >= 64 {
        eprintln!(
            "period {}, y in [{}, {}], max |H - 1| = {:.3e}",
            output::format_real(p.period),
            output::format_real(p.y_min),
            output::format_real(p.y_max),
            mean_curvature_check(&p)?
        );
    }
    Ok(p.samples.iter().map(|&(t, y, z)| Record::new("delaunay-sample").with("t", t).with("y", y).with("z", z)).collect())
}

fn verify_pde_cmd(n: usize, k: usize, eps: f64, nr: usize, nt: usize, t: Option<f64>) -> Result<Vec<Record>, Failure> {
    let period = match t {
        Some(t) => t,
        None => t_nu(n)?.t_nu,
    };
    let d = eigen_data(n)?;
    let closed = d.sigma_k(k, period)?;
    let factor = d.ball_l2_rescale();
    let r = linear_response(n, k, period, eps, nr, nt)?;
    let scaled = closed * factor;
    let rel = if scaled != 0.0 { (r.coefficient - scaled).abs() / scaled.abs() } else { f64::NAN };
    Ok(vec![Record::new("check-result")
        .with("n", n)
        .with("k", k)
        .with("T", period)
        .with("eps", eps)
        .with("nr", nr)
        .with("nt", nt)
        .with("lambda", r.lambda)
        .with("sigma_closed", closed)
        .with("normalization_factor", factor)
        .with("sigma_closed_normalized", scaled)
        .with("sigma_pde", r.coefficient)
        .with("relative_error", rel)])
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let (result, output, failed_checks) = match cli.command {
        Command::Table { two_nu, output } => (table_cmd(&two_nu), output, false),
        Command::Sigma { n, t, samples, oracle, steps, output } => {
            (sigma_cmd(n, &t, samples, oracle, steps), output, false)
        }
        Command::Profile { n, s, periods, samples, output } => (profile_cmd(n, s, periods, samples), output, false),
        Command::Delaunay { sigma, samples, output } => (delaunay_cmd(sigma, samples), output, false),
        Command::VerifyPde { n, k, eps, nr, nt, t, output } => (verify_pde_cmd(n, k, eps, nr, nt, t), output, false),
        Command::Check { suite, output } => {
            let results = checks::run(suite);
            let failed = results.iter().any(|c| !c.pass);
            let rows = results
                .into_iter()
                .map(|c| {
                    Record::new("check-result")
                        .with("suite", c.suite)
                        .with("property", c.property)
                        .with("pass", c.pass)
                        .with("detail", c.detail)
                })
                .collect();
            (Ok(rows), output, failed)
        }
    };
    let outcome = result.and_then(|rows| emit(&rows, output.format, &output.out).map_err(Failure::from));
    match outcome {
        Ok(()) if failed_checks => {
            eprintln!("error: one or more properties failed");
            ExitCode::from(1)
        }
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
