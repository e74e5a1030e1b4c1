//! Command-line front-end: matrix documents in, reports and CSV out.
//!
//! Exit codes: 0 success (including boolean `false` results), 1 usage or
//! I/O error, 2 document parse error, 3 domain error (rank deficiency,
//! non-complementarity, instability, non-parahermitian input, ...),
//! 4 numeric failure in the floating-point pipeline.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use stokern::{
    behaviors_equivalent, complementary, compare_spectrum, density_eval, density_eval_scalar,
    density_from_kernel, has_full_event_algebra, interconnect, scalar_spectral_factor,
    shape_distance, simulate, welch_spectrum, BehaviorError, KernelRepresentation, LaurentMatrix,
    LtiProcessModel, ProcessError, RationalMatrix, SimConfig, SimError, SpectralDensity,
    SpectralError,
};
use stokern_cli::text::{parse_matrix, render_matrix, render_matrix_approx};

#[derive(Parser)]
#[command(name = "stokern", version, about = "Exact kernel calculus for LTI stochastic processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal rank of a matrix document
    Rank { file: PathBuf },
    /// Whether the matrix is unimodular (invertible over Laurent polynomials)
    Unimodular { file: PathBuf },
    /// Whether two kernel documents describe the same behavior
    Equivalent { file1: PathBuf, file2: PathBuf },
    /// Whether two processes can be interconnected (stacked kernel keeps full rank)
    Complementary { file1: PathBuf, file2: PathBuf },
    /// Interconnect two processes and write the stacked kernel document
    Interconnect {
        file1: PathBuf,
        file2: PathBuf,
        /// Output path (stdout when omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether the interconnection generates the full event algebra
    Fullsigma { file1: PathBuf, file2: PathBuf },
    /// Spectral density of a stable kernel on a uniform frequency grid, as CSV
    Spectrum {
        file: PathBuf,
        /// Number of grid points (at least 64)
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Canonical spectral factor of a scalar density
    Factor {
        file: PathBuf,
        /// Treat the file as a density (a parahermitian scalar) rather than a kernel
        #[arg(long)]
        as_density: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shape distance between two scalar densities
    Distance {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// Treat the files as densities rather than kernels
        #[arg(long)]
        as_density: bool,
    },
    /// Simulate the process under white noise and write the trajectory CSV
    Simulate {
        file: PathBuf,
        /// Retained samples
        #[arg(long, default_value_t = 1024)]
        len: usize,
        /// Discarded start-up samples
        #[arg(long, default_value_t = 1000)]
        burn: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulate, estimate the spectrum, and report the error against the model
    Checkspec {
        file: PathBuf,
        #[arg(long, default_value_t = 131072)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Averaging segment length (a power of two)
        #[arg(long, default_value_t = 256)]
        segment: usize,
        /// Segment overlap fraction in [0, 1)
        #[arg(long, default_value_t = 0.5)]
        overlap: f64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

impl From<BehaviorError> for Failure {
    fn from(e: BehaviorError) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

impl From<ProcessError> for Failure {
    fn from(e: ProcessError) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        let code = match e {
            SpectralError::EvaluationSingular { .. }
            | SpectralError::PairingFailed
            | SpectralError::FactorMismatch { .. }
            | SpectralError::SingularFactor => 4,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Spectral(inner) => inner.into(),
            SimError::LeadingCoefficientSingular | SimError::NonFiniteSample { .. } => {
                Failure { code: 4, message: e.to_string() }
            }
            _ => Failure { code: 3, message: e.to_string() },
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_matrix(path: &Path) -> CliResult<LaurentMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn read_kernel(path: &Path) -> CliResult<KernelRepresentation> {
    Ok(KernelRepresentation::new(read_matrix(path)?)?)
}

fn write_out(output: &Option<PathBuf>, content: &str) -> CliResult<()> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Full-precision CSV cell: 17 significant digits.
fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Human-readable report number: 6 significant digits.
fn f6(x: f64) -> String {
    format!("{x:.5e}")
}

fn print_bool(b: bool) {
    println!("{}", if b { "true" } else { "false" });
}

fn density_input(path: &Path, as_density: bool) -> CliResult<SpectralDensity> {
    if as_density {
        let phi = RationalMatrix::from_laurent(read_matrix(path)?);
        let factor = scalar_spectral_factor(&phi)?;
        Ok(SpectralDensity::from_factor(factor))
    } else {
        Ok(density_from_kernel(&read_kernel(path)?)?)
    }
}

fn check_grid(grid: usize) -> CliResult<()> {
    if grid < 64 {
        Err(usage(format!("grid must be at least 64, got {grid}")))
    } else {
        Ok(())
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Rank { file } => {
            println!("{}", read_matrix(&file)?.normal_rank());
            Ok(())
        }
        Command::Unimodular { file } => {
            print_bool(read_matrix(&file)?.is_unimodular());
            Ok(())
        }
        Command::Equivalent { file1, file2 } => {
            let k1 = read_kernel(&file1)?;
            let k2 = read_kernel(&file2)?;
            print_bool(behaviors_equivalent(&k1, &k2)?);
            Ok(())
        }
        Command::Complementary { file1, file2 } => {
            let k1 = read_kernel(&file1)?;
            let k2 = read_kernel(&file2)?;
            print_bool(complementary(&k1, &k2)?);
            Ok(())
        }
        Command::Interconnect { file1, file2, output } => {
            let p1 = LtiProcessModel::from_kernel(read_kernel(&file1)?);
            let p2 = LtiProcessModel::from_kernel(read_kernel(&file2)?);
            let joint = interconnect(&p1, &p2)?;
            let doc = format!("{}\n", render_matrix(joint.kernel().matrix()));
            write_out(&output, &doc)
        }
        Command::Fullsigma { file1, file2 } => {
            let p1 = LtiProcessModel::from_kernel(read_kernel(&file1)?);
            let p2 = LtiProcessModel::from_kernel(read_kernel(&file2)?);
            print_bool(has_full_event_algebra(&p1, &p2)?);
            Ok(())
        }
        Command::Spectrum { file, grid, output } => {
            check_grid(grid)?;
            let density = density_from_kernel(&read_kernel(&file)?)?;
            let csv = spectrum_csv(&density, grid)?;
            write_out(&output, &csv)
        }
        Command::Factor { file, as_density, output } => {
            let phi = if as_density {
                RationalMatrix::from_laurent(read_matrix(&file)?)
            } else {
                let d = density_from_kernel(&read_kernel(&file)?)?;
                let w = d.factor().value();
                w.mul(&w.star())?
            };
            let factor = scalar_spectral_factor(&phi)?;
            let num = factor.value().numerator();
            let den = LaurentMatrix::new(1, 1, vec![factor.value().denominator().clone()])
                .expect("1x1");
            let doc = format!(
                "numerator: {}\ndenominator: {}\n",
                render_matrix_approx(num),
                render_matrix_approx(&den)
            );
            write_out(&output, &doc)
        }
        Command::Distance { file1, file2, grid, as_density } => {
            check_grid(grid)?;
            let d1 = density_input(&file1, as_density)?;
            let d2 = density_input(&file2, as_density)?;
            println!("{}", f6(shape_distance(&d1, &d2, grid)?));
            Ok(())
        }
        Command::Simulate { file, len, burn, seed, output } => {
            if len == 0 {
                return Err(usage("len must be at least 1"));
            }
            let p = LtiProcessModel::from_kernel(read_kernel(&file)?);
            let cfg = SimConfig::new(len, seed).with_burn_in(burn);
            let w = simulate(&p, &cfg)?;
            let mut csv = String::from("t");
            for c in 1..=w.dim() {
                csv.push_str(&format!(",w{c}"));
            }
            csv.push('\n');
            for t in 0..w.len() {
                csv.push_str(&t.to_string());
                for v in w.sample(t) {
                    csv.push(',');
                    csv.push_str(&f17(*v));
                }
                csv.push('\n');
            }
            write_out(&output, &csv)
        }
        Command::Checkspec { file, len, seed, segment, overlap } => {
            if len == 0 {
                return Err(usage("len must be at least 1"));
            }
            if !segment.is_power_of_two() || segment < 2 {
                return Err(usage(format!(
                    "segment must be a power of two of at least 2, got {segment}"
                )));
            }
            if segment > len {
                return Err(usage(format!("segment {segment} exceeds len {len}")));
            }
            if !(0.0..1.0).contains(&overlap) {
                return Err(usage(format!("overlap must lie in [0, 1), got {overlap}")));
            }
            let p = LtiProcessModel::from_kernel(read_kernel(&file)?);
            let density = density_from_kernel(p.kernel())?;
            let w = simulate(&p, &SimConfig::new(len, seed))?;
            let estimate = welch_spectrum(&w, segment, overlap)?;
            let report = compare_spectrum(&estimate, &density)?;
            println!("mean relative error: {}", f6(report.mean_relative_error));
            println!("max relative error: {}", f6(report.max_relative_error));
            Ok(())
        }
    }
}

fn spectrum_csv(density: &SpectralDensity, grid: usize) -> CliResult<String> {
    let n = density.dimension();
    let mut csv = String::new();
    let theta = |k: usize| 2.0 * std::f64::consts::PI * k as f64 / grid as f64;
    if n == 1 {
        csv.push_str("theta,value\n");
        let values = density_eval_scalar(density, grid)?;
        for (k, v) in values.iter().enumerate() {
            csv.push_str(&format!("{},{}\n", f17(theta(k)), f17(*v)));
        }
    } else {
        csv.push_str("theta");
        for i in 1..=n {
            for j in 1..=n {
                csv.push_str(&format!(",re_{i}{j},im_{i}{j}"));
            }
        }
        csv.push('\n');
        let values = density_eval(density, grid)?;
        for (k, m) in values.iter().enumerate() {
            csv.push_str(&f17(theta(k)));
            for i in 0..n {
                for j in 0..n {
                    let v = m[(i, j)];
                    csv.push_str(&format!(",{},{}", f17(v.re), f17(v.im)));
                }
            }
            csv.push('\n');
        }
    }
    Ok(csv)
}
