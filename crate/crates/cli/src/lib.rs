//! Command-line front end for `su2ca`.

pub mod emit;
pub mod error;
pub mod frame_file;
pub mod series_file;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use su2ca::cohomology::{closed_range_certificate, cohomology_report, h11_reconciliation};
use su2ca::fields::BasicField;
use su2ca::fourier::{apply_symbol, l2_norm, solve_lowering};
use su2ca::structures::{ConstantsVariant, Frame, PresetRegistry, Structure};
use su2ca::verify::{first_failure, SuiteRegistry, VerifyConfig};
use su2ca::{AlgebraElement, Error};

use crate::emit::{discrepancy_banner, DimsDocument, EmitterRegistry, GapDocument};
use crate::error::{CliError, CliResult, EXIT_OK};

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "SU2CA_THREADS";

#[derive(Debug, Parser)]
#[command(name = "su2ca", version, about = "Fourier analysis on SU(2) and cohomology of left-invariant involutive structures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the built-in self-check suites.
    Verify {
        #[arg(long, default_value_t = 8)]
        two_l_max: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Per-level kernel, range and quotient dimensions of the d' complex.
    Dims {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "recomputed")]
        constants: ConstantsVariant,
        #[arg(long, default_value_t = 8)]
        two_l_max: u32,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Spectral gaps and a closed-range certificate for one field.
    Gap {
        #[arg(long, default_value = "dminus")]
        field: BasicField,
        #[arg(long, default_value = "1/3")]
        s: Ratio<i64>,
        #[arg(long, default_value_t = 40)]
        two_l_max: u32,
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Print d' in every nontrivial bidegree.
    Dprime {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value = "recomputed")]
        constants: ConstantsVariant,
    },
    /// Solve d- u = f for a series file.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Named preset.
    #[arg(long)]
    preset: Option<String>,
    /// Frame file.
    #[arg(long)]
    frame: Option<PathBuf>,
}

struct Resolved {
    label: String,
    structure: Structure,
    preset: Option<su2ca::structures::PresetInfo>,
}

fn resolve(src: &SourceArgs, constants: ConstantsVariant) -> CliResult<Resolved> {
    if let Some(name) = &src.preset {
        let info = PresetRegistry::builtin().info(name)?;
        return Ok(Resolved { label: format!("preset {name}"), structure: info.structure(constants)?, preset: Some(info) });
    }
    let path = src.frame.as_ref().expect("clap enforces one source");
    let frame: Frame = frame_file::read_frame(path)?;
    if constants == ConstantsVariant::Printed {
        return Err(Error::NoPrintedConstants.into());
    }
    Ok(Resolved { label: format!("frame {}", path.display()), structure: Structure::from_frame(frame)?, preset: None })
}

/// Runs one command, writing normal output to `out`. Returns the exit code
/// for non-error outcomes.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Verify { two_l_max, tol } => cmd_verify(two_l_max, tol, out),
        Command::Dims { source, constants, two_l_max, format } => cmd_dims(&source, constants, two_l_max, &format, out, err),
        Command::Gap { field, s, two_l_max, format } => cmd_gap(field, s, two_l_max, &format, out),
        Command::Dprime { source, constants } => cmd_dprime(&source, constants, out),
        Command::Solve { input, output } => cmd_solve(&input, &output, out),
    }
}

fn cmd_verify(two_l_max: u32, tol: f64, out: &mut dyn Write) -> CliResult<i32> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let cfg = VerifyConfig { two_l_max, tol, ..VerifyConfig::default() };
    let outcomes = SuiteRegistry::builtin().run_all(&cfg);
    for o in &outcomes {
        writeln!(
            out,
            "{}  {:<22} {:<40} residual {:.3e}  tol {:.1e}",
            if o.passed { "PASS" } else { "FAIL" },
            o.suite,
            o.check,
            o.residual,
            o.tolerance
        )?;
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    writeln!(out, "{} checks, {failed} failed (two_l_max = {two_l_max}, tol = {tol:e})", outcomes.len())?;
    match first_failure(&outcomes) {
        Some(f) => Err(CliError::Verification(format!("first failing check: {} / {}", f.suite, f.check))),
        None => Ok(EXIT_OK),
    }
}

fn cmd_dims(
    src: &SourceArgs,
    constants: ConstantsVariant,
    two_l_max: u32,
    format: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    let emitters = EmitterRegistry::builtin();
    let emitter = emitters.get(format)?;
    let r = resolve(src, constants)?;
    let report = cohomology_report(&r.structure, two_l_max)?;
    let discrepancies = r.preset.map(|p| p.discrepancies()).unwrap_or_default();
    let reconciliation = match &r.preset {
        Some(p) if p.frame.corank() == 1 => Some(h11_reconciliation(p, two_l_max)?),
        _ => None,
    };
    if emitter.name() == "csv" {
        for line in discrepancy_banner(&discrepancies) {
            writeln!(err, "{line}")?;
        }
    }
    let doc =
        DimsDocument { source: r.label, constants, classification: r.structure.frame().classify(), discrepancies, report, reconciliation };
    emitter.dims(&doc, out)?;
    Ok(EXIT_OK)
}

fn cmd_gap(field: BasicField, s: Ratio<i64>, two_l_max: u32, format: &str, out: &mut dyn Write) -> CliResult<i32> {
    let emitters = EmitterRegistry::builtin();
    let emitter = emitters.get(format)?;
    if two_l_max < 1 {
        return Err(CliError::Usage("--two-l-max must be at least 1".into()));
    }
    let cert = closed_range_certificate(&field.element(), s, two_l_max);
    let doc = GapDocument::new(field, cert);
    emitter.gap(&doc, out)?;
    if doc.passes {
        Ok(EXIT_OK)
    } else {
        Err(CliError::Verification(format!("closed-range certificate failed for {}", field.name())))
    }
}

fn cmd_dprime(src: &SourceArgs, constants: ConstantsVariant, out: &mut dyn Write) -> CliResult<i32> {
    let r = resolve(src, constants)?;
    let s = &r.structure;
    writeln!(out, "{} (corank {}, {:?})", r.label, s.corank(), s.frame().classify())?;
    if let Some(p) = &r.preset {
        for line in discrepancy_banner(&p.discrepancies()) {
            writeln!(out, "{line}")?;
        }
    }
    let consts: Vec<String> = s
        .constants()
        .entries()
        .iter()
        .map(|(k, v)| if v.im == 0.0 { format!("{k} = {}", v.re) } else { format!("{k} = {}{:+}i", v.re, v.im) })
        .collect();
    writeln!(out, "constants: {}", consts.join(", "))?;
    for b in s.nontrivial_bidegrees() {
        writeln!(out, "{}", s.dprime(b)?.render())?;
    }
    Ok(EXIT_OK)
}

fn cmd_solve(input: &std::path::Path, output: &std::path::Path, out: &mut dyn Write) -> CliResult<i32> {
    let f = series_file::read_series(input)?;
    let u = solve_lowering(&f)?;
    let residual = l2_norm(&apply_symbol(&AlgebraElement::D_MINUS, &u).sub(&f));
    series_file::write_series(output, &u)?;
    writeln!(out, "wrote {}; residual ||d- u - f|| = {residual:e}", output.display())?;
    Ok(EXIT_OK)
}

/// Worker count from `SU2CA_THREADS`, if set.
pub fn thread_cap() -> CliResult<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{v}'"))),
        },
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("{THREADS_ENV}: {e}"))),
    }
}

/// Parses arguments, runs the command in a thread pool honoring
/// `SU2CA_THREADS`, and returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => error::EXIT_INPUT,
            };
        }
    };
    let result = thread_cap().and_then(|cap| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cap {
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| CliError::Usage(e.to_string()))?;
        let (result, stdout_buf, stderr_buf) = pool.install(|| {
            let (mut o, mut e) = (Vec::new(), Vec::new());
            let r = run(cli, &mut o, &mut e);
            (r, o, e)
        });
        out.write_all(&stdout_buf)?;
        err.write_all(&stderr_buf)?;
        result
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
