//! The `saext` command line.

mod commands;
pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::extensions::{ExtensionU2, HalflineExtension};
pub use report::{format_real, Cell, Format, Report};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "saext",
    version,
    about = "Self-adjoint extensions of -iD and -D² and their spectra"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Significant digits of printed reals.
    #[arg(long, global = true, env = "SAEXT_PRECISION", default_value_t = 10,
          value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorArg {
    Momentum,
    Hamiltonian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntervalArg {
    Line,
    Halfline,
    Box,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deficiency indices and the resulting family of extensions.
    Deficiency {
        #[arg(long, value_enum)]
        operator: Option<OperatorArg>,
        #[arg(long, value_enum)]
        interval: Option<IntervalArg>,
    },
    /// Spectrum of -D² on the unit box for a boundary matrix.
    Spectrum(SpectrumArgs),
    /// Symmetries and closed-form family of a boundary matrix.
    Classify {
        #[arg(long, value_parser = parse::extension, allow_hyphen_values = true)]
        u: ExtensionU2,
    },
    /// Eigenvalues of the momentum extension P_θ.
    MomentumSpectrum {
        #[arg(long, value_parser = parse::finite_real, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_parser = parse::index_range, allow_hyphen_values = true)]
        range: (i64, i64),
    },
    /// Expansion of the parabolic state on the P_θ eigenbasis.
    Expand {
        #[arg(long, value_parser = parse::finite_real, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_parser = parse::index_range, allow_hyphen_values = true)]
        range: (i64, i64),
        /// Verify every coefficient against quadrature.
        #[arg(long)]
        checked: bool,
    },
    /// Energy moments of the parabola in the infinite well.
    Paradox {
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..=100_000_000))]
        terms: u64,
    },
    /// Square-well depth of the deuteron for given boundary parameters.
    Deuteron(DeuteronArgs),
    /// Finite well levels approaching the infinite well.
    WellLimit {
        #[arg(long, value_parser = parse::positive_list)]
        v0_list: parse::List<f64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
    },
    /// Reflection amplitude on the half-line.
    Reflect {
        #[arg(long, value_parser = parse::lambda, allow_hyphen_values = true)]
        lambda: HalflineExtension,
        #[arg(long, value_parser = parse::positive_real)]
        k: f64,
    },
    /// Surface bound state on the half-line.
    BoundState {
        #[arg(long, value_parser = parse::lambda, allow_hyphen_values = true)]
        lambda: HalflineExtension,
    },
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_parser = parse::extension, allow_hyphen_values = true)]
    pub u: ExtensionU2,
    /// Positive levels, counted with multiplicity.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    pub count: u64,
    #[arg(long)]
    pub include_negative: bool,
    /// Sample the eigenfunctions instead of listing the levels.
    #[arg(long)]
    pub eigenfunctions: bool,
    #[arg(long, default_value_t = 11, value_parser = clap::value_parser!(u64).range(2..=100_000))]
    pub samples: u64,
}

#[derive(Debug, Args)]
pub struct DeuteronArgs {
    #[arg(long, value_parser = parse::lambda, allow_hyphen_values = true,
          required_unless_present = "sweep", conflicts_with = "sweep")]
    pub lambda_over_a: Option<HalflineExtension>,
    #[arg(long, value_parser = parse::lambda_list, allow_hyphen_values = true)]
    pub sweep: Option<parse::List<HalflineExtension>>,
    /// ħc in MeV fm.
    #[arg(long, value_parser = parse::positive_real)]
    pub hbarc: Option<f64>,
    /// Nucleon rest energy in MeV.
    #[arg(long, value_parser = parse::positive_real)]
    pub mass_c2: Option<f64>,
    /// Binding energy |E| in MeV.
    #[arg(long, value_parser = parse::positive_real)]
    pub binding: Option<f64>,
    /// Well range a in fm.
    #[arg(long, value_parser = parse::positive_real)]
    pub range: Option<f64>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(m) => CliError::Usage(m),
            other => CliError::Numerical(other),
        }
    }
}

/// Parse `args` (including the program name) and run, writing to standard
/// output and standard error. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let report = match commands::dispatch(&cli.command) {
        Ok(r) => r,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
        Err(CliError::Numerical(e)) => {
            let _ = writeln!(err, "numerical failure: {e}");
            return EXIT_NUMERICAL;
        }
    };
    let digits = cli.precision as usize;
    let written = match &cli.output {
        Some(path) => std::fs::File::create(path).and_then(|mut f| report.write(cli.format, digits, &mut f)),
        None => report.write(cli.format, digits, out),
    };
    match written {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("saext").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header = r.headers().unwrap().iter().map(String::from).collect();
        let rows = r
            .records()
            .map(|rec| rec.unwrap().iter().map(String::from).collect())
            .collect();
        (header, rows)
    }

    #[test]
    fn dirichlet_spectrum_csv() {
        let (code, out, _) = run_args(&["spectrum", "--u", "dirichlet", "--count", "3", "--format", "csv"]);
        assert_eq!(code, 0);
        let (header, rows) = csv_rows(&out);
        assert_eq!(header[..5], ["sector", "index", "value", "multiplicity", "residual"]);
        assert_eq!(rows.len(), 3);
        for (n, row) in rows.iter().enumerate() {
            let e: f64 = row[5].parse().unwrap();
            let expect = ((n + 1) as f64 * std::f64::consts::PI).powi(2);
            assert!((e - expect).abs() <= 1e-9 * expect);
        }
    }

    #[test]
    fn deuteron_sweep_json() {
        let (code, out, _) = run_args(&[
            "deuteron",
            "--sweep",
            "0,0.1,0.2,0.5,1,2,5,10,100,inf",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["command"], "deuteron");
        let results = v["results"].as_array().unwrap();
        assert_eq!(results.len(), 10);
        let reference = [36.8, 31.5, 27.5, 20.5, 15.3, 11.5, 8.59, 7.50, 6.47, 6.34];
        for (r, v0) in results.iter().zip(reference) {
            let got = r["V0_MeV"].as_f64().unwrap();
            assert!(((got - v0) / v0).abs() < 0.02);
        }
        assert_eq!(results[9]["lam_over_a"], "inf");
        assert!(v["inputs"]["hbarc"].is_number());
    }

    #[test]
    fn deficiency_headline() {
        let (code, out, _) = run_args(&["deficiency", "--operator", "momentum", "--interval", "halfline"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("(1,0): no self-adjoint extension\n"));
    }

    #[test]
    fn csv_round_trip_to_precision() {
        let (_, out, _) = run_args(&[
            "expand",
            "--theta",
            "1",
            "--range",
            "-3:3",
            "--format",
            "csv",
            "--precision",
            "12",
        ]);
        let (_, rows) = csv_rows(&out);
        for row in rows {
            let n: i64 = row[0].parse().unwrap();
            let c = crate::momentum::expansion_coeff(1.0, n);
            let re: f64 = row[2].parse().unwrap();
            let im: f64 = row[3].parse().unwrap();
            assert!((re - c.re).abs() <= 1e-11 * c.norm().max(1e-300));
            assert!((im - c.im).abs() <= 1e-11 * c.norm().max(1e-300));
        }
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["well-limit", "--v0-list", "100,1000,10000", "--format", "json"];
        assert_eq!(run_args(&args).1, run_args(&args).1);
    }

    #[test]
    fn every_subcommand_runs() {
        for args in [
            &["deficiency"][..],
            &["spectrum", "--u", "periodic", "--count", "4", "--include-negative"],
            &[
                "spectrum",
                "--u",
                "psi=0.4,m=(0.6,0,0.8,0)",
                "--count",
                "2",
                "--eigenfunctions",
                "--samples",
                "5",
            ],
            &["classify", "--u", "quasiperiodic:pi/3"],
            &["momentum-spectrum", "--theta", "0.5", "--range", "-2:2"],
            &["paradox", "--terms", "100"],
            &[
                "deuteron",
                "--lambda-over-a",
                "1",
                "--hbarc",
                "197",
                "--mass-c2",
                "939",
                "--binding",
                "2.2",
                "--range",
                "2",
            ],
            &["reflect", "--lambda", "-1", "--k", "2"],
            &["bound-state", "--lambda", "-1"],
            &["bound-state", "--lambda", "inf"],
        ] {
            let (code, out, err) = run_args(args);
            assert_eq!(code, 0, "{args:?}: {err}");
            assert!(!out.is_empty());
        }
    }

    #[test]
    fn usage_errors_exit_two_and_name_the_flag() {
        for (args, flag) in [
            (&["spectrum", "--u", "robin", "--count", "3"][..], "--u"),
            (&["spectrum", "--u", "psi=0,m=(1,1,0,0)", "--count", "3"], "--u"),
            (&["spectrum", "--u", "dirichlet", "--count", "0"], "--count"),
            (&["reflect", "--lambda", "1", "--k", "-2"], "--k"),
            (&["deuteron", "--lambda-over-a", "-1"], "--lambda-over-a"),
            (&["well-limit", "--v0-list", "100,10"], "--v0-list"),
            (&["paradox", "--bogus"], "--bogus"),
            (&["expand", "--theta", "1", "--range", "3:1"], "--range"),
        ] {
            let (code, _, err) = run_args(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert!(err.contains(flag), "{args:?}: {err}");
        }
    }

    #[test]
    fn numerical_failure_exits_three() {
        let (code, _, err) = run_args(&["well-limit", "--v0-list", "1,2,3", "--level", "3"]);
        assert_eq!(code, EXIT_NUMERICAL);
        assert!(err.contains("bound levels"));
    }

    #[test]
    fn precision_flag() {
        let (_, out, _) = run_args(&[
            "reflect",
            "--lambda",
            "1",
            "--k",
            "1",
            "--format",
            "csv",
            "--precision",
            "3",
        ]);
        assert_eq!(out.lines().nth(1).unwrap(), "1.00,1.00,0,-1.00,1.00");
    }
}
