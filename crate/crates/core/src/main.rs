use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use discalg::duhamel::{classify_duhamel_multiplicative, duhamel, duhamel_residual};
use discalg::error::Error;
use discalg::io::{parse_operator, parse_series_input, series_to_compact_json, series_to_json};
use discalg::operators::{almost_mult_residual, is_self_map, symbol_of, OperatorSpec, SELF_MAP_TOL};
use discalg::spaces::{norm, SpaceSpec};
use discalg::verify::{run_verification, VerifyConfig};
use discalg::MAX_WORKING_DEGREE;

#[derive(Parser)]
#[command(
    name = "discalg",
    version,
    about = "Truncated Taylor series, Duhamel products, and norms on the unit disc"
)]
struct Cli {
    /// Base seed for every randomized instrument.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Working truncation degree for inline series.
    #[arg(long, global = true, default_value_t = discalg::DEFAULT_WORKING_DEGREE)]
    degree: usize,

    /// Verdict tolerance for classifiers and residual tests.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the norm of a series in a chosen space.
    Norm {
        /// Space spec: hardy:p=2, bergman:p=2,a=0, bloch, little-bloch, besov:p=2, sup.
        #[arg(long)]
        space: String,
        /// Series: inline JSON, a JSON file path, or shorthand like "0.5*z + 0.1*z^3".
        #[arg(long)]
        series: String,
    },
    /// Duhamel product of two series.
    Duhamel {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Taylor coefficients of f∘phi.
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        phi: String,
    },
    /// Multiplicativity report for an operator, pointwise or Duhamel.
    CheckMultiplicative {
        /// Operator spec: comp:<series>, mult:<series>, bdry-eval:c=<re,im>,
        /// point-eval:a=<re,im>, matrix:<file>.
        #[arg(long)]
        op: String,
        /// Space for the residual norm (default sup).
        #[arg(long)]
        space: Option<String>,
        /// Test multiplicativity with respect to the Duhamel product.
        #[arg(long)]
        duhamel: bool,
        /// Random trials for the pointwise residual.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Monomial basis degree for the Duhamel residual.
        #[arg(long)]
        basis_degree: Option<usize>,
    },
    /// Run the full verification suite.
    Verify,
}

/// Errors in user-supplied inputs exit with status 2; failures during
/// computation exit 1.
enum Phase {
    Parse,
    Compute,
}

fn fail(phase: Phase, err: Error) -> ExitCode {
    eprintln!("error: {err}");
    match phase {
        Phase::Parse => ExitCode::from(2),
        Phase::Compute => ExitCode::from(1),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.degree == 0 || cli.degree > MAX_WORKING_DEGREE {
        eprintln!("error: --degree must be between 1 and {MAX_WORKING_DEGREE}");
        return ExitCode::from(2);
    }

    let result = match &cli.command {
        Command::Norm { space, series } => cmd_norm(&cli, space, series),
        Command::Duhamel { f, g } => cmd_duhamel(&cli, f, g),
        Command::Compose { f, phi } => cmd_compose(&cli, f, phi),
        Command::CheckMultiplicative {
            op,
            space,
            duhamel,
            trials,
            basis_degree,
        } => cmd_check_multiplicative(&cli, op, space.as_deref(), *duhamel, *trials, *basis_degree),
        Command::Verify => cmd_verify(&cli),
    };
    match result {
        Ok(code) => code,
        Err((phase, err)) => fail(phase, err),
    }
}

type CmdResult = Result<ExitCode, (Phase, Error)>;

fn parse_phase<T>(r: discalg::Result<T>) -> Result<T, (Phase, Error)> {
    r.map_err(|e| (Phase::Parse, e))
}

fn compute_phase<T>(r: discalg::Result<T>) -> Result<T, (Phase, Error)> {
    r.map_err(|e| (Phase::Compute, e))
}

fn io_phase<T>(r: std::io::Result<T>) -> Result<T, (Phase, Error)> {
    r.map_err(|e| (Phase::Compute, Error::Io(e)))
}

fn cmd_norm(cli: &Cli, space: &str, series: &str) -> CmdResult {
    let spec: SpaceSpec = parse_phase(space.parse())?;
    let f = parse_phase(parse_series_input(series, cli.degree))?;
    let result = compute_phase(norm(&f, &spec))?;
    let text = match cli.format {
        Format::Md => format!(
            "{}  method={}  error_estimate={:.3e}",
            result.value,
            result.method.as_str(),
            result.error_estimate
        ),
        Format::Json => json!({
            "value": result.value,
            "method": result.method.as_str(),
            "error_estimate": result.error_estimate,
        })
        .to_string(),
    };
    io_phase(emit(&cli.out, &text))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_duhamel(cli: &Cli, f: &str, g: &str) -> CmdResult {
    let f = parse_phase(parse_series_input(f, cli.degree))?;
    let g = parse_phase(parse_series_input(g, cli.degree))?;
    let product = duhamel(&f, &g);
    let text = match cli.format {
        Format::Md => series_to_compact_json(&product).to_string(),
        Format::Json => series_to_json(&product).to_string(),
    };
    io_phase(emit(&cli.out, &text))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_compose(cli: &Cli, f: &str, phi: &str) -> CmdResult {
    let f = parse_phase(parse_series_input(f, cli.degree))?;
    let phi = parse_phase(parse_series_input(phi, cli.degree))?;
    let composed = f.compose(&phi);
    let text = match cli.format {
        Format::Md => series_to_compact_json(&composed).to_string(),
        Format::Json => series_to_json(&composed).to_string(),
    };
    io_phase(emit(&cli.out, &text))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_multiplicative(
    cli: &Cli,
    op: &str,
    space: Option<&str>,
    duhamel_mode: bool,
    trials: usize,
    basis_degree: Option<usize>,
) -> CmdResult {
    let spec: SpaceSpec = parse_phase(space.unwrap_or("sup").parse())?;
    let operator = parse_phase(parse_operator(op, cli.degree))?;

    if duhamel_mode {
        let phi = match &operator {
            OperatorSpec::Composition(phi) => phi.clone(),
            _ => {
                return Err((
                    Phase::Parse,
                    Error::Parse("--duhamel applies to composition operators (comp:<series>)".into()),
                ))
            }
        };
        let basis = basis_degree.unwrap_or_else(|| 8.min(phi.degree() / 2));
        let residual = compute_phase(duhamel_residual(&phi, &spec, basis, cli.tol))?;
        let classification = classify_duhamel_multiplicative(&phi, cli.tol);
        let verdict = if residual.verdict { "PASS" } else { "FAIL" };
        let text = match cli.format {
            Format::Md => format!(
                "{verdict}: max Duhamel residual {:.3e} in {} (witness pair (z^{}, z^{}), basis degree {})\nclassifier: {}",
                residual.max_residual,
                spec,
                residual.witness_pair.0,
                residual.witness_pair.1,
                residual.basis_degree,
                classification.explanation,
            ),
            Format::Json => json!({
                "product": "duhamel",
                "verdict": residual.verdict,
                "max_residual": residual.max_residual,
                "witness_pair": [residual.witness_pair.0, residual.witness_pair.1],
                "basis_degree": residual.basis_degree,
                "space": spec.to_string(),
                "tolerance": residual.tolerance,
                "classifier": {
                    "multiplicative": classification.multiplicative,
                    "witness_index": classification.witness_index,
                    "explanation": classification.explanation,
                },
            })
            .to_string(),
        };
        io_phase(emit(&cli.out, &text))?;
        return Ok(ExitCode::SUCCESS);
    }

    let budget = (operator.natural_degree() / 2).clamp(1, 24);
    let report = compute_phase(almost_mult_residual(
        &operator, &spec, trials, cli.seed, budget,
    ))?;
    let symbol_class = is_self_map(&compute_phase(symbol_of(&operator))?, SELF_MAP_TOL);
    let verdict = report.max_residual < cli.tol;
    let warning = if verdict && !symbol_class.is_self_map() {
        format!(
            "\nwarning: symbol is {} — multiplicative but not a composition operator",
            symbol_class.describe()
        )
    } else {
        String::new()
    };
    let text = match cli.format {
        Format::Md => format!(
            "{}: max residual {:.3e}, mean {:.3e} over {} trials in {} (budget {}, seed {})\nsymbol: {}{}",
            if verdict { "PASS" } else { "FAIL" },
            report.max_residual,
            report.mean_residual,
            report.trials,
            spec,
            report.degree_budget,
            report.seed,
            symbol_class.describe(),
            warning,
        ),
        Format::Json => json!({
            "product": "pointwise",
            "verdict": verdict,
            "max_residual": report.max_residual,
            "mean_residual": report.mean_residual,
            "trials": report.trials,
            "space": spec.to_string(),
            "seed": report.seed,
            "degree_budget": report.degree_budget,
            "working_degree": report.working_degree,
            "witness_trial": report.witness_trial,
            "witness_f": series_to_json(&report.witness.0),
            "witness_g": series_to_json(&report.witness.1),
            "symbol_class": symbol_class.describe(),
            "symbol_is_self_map": symbol_class.is_self_map(),
        })
        .to_string(),
    };
    io_phase(emit(&cli.out, &text))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cli: &Cli) -> CmdResult {
    let report = run_verification(&VerifyConfig {
        seed: cli.seed,
        working_degree: cli.degree,
        tol: cli.tol,
    });
    let text = match cli.format {
        Format::Md => report.to_markdown(),
        Format::Json => serde_json::to_string_pretty(&report.to_json())
            .expect("report serializes"),
    };
    io_phase(emit(&cli.out, &text))?;
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
