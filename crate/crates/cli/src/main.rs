//! Command-line front end.
//!
//! Exit codes: 0 = pass, 1 = a verified property was violated,
//! 2 = input or resource error. Diagnostics go to stderr; data goes to
//! stdout or to `--out` (written atomically).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nctorus_core::{
    io, morita_certificate, norm_sweep, random_element, run_axiom_suite, semiclassical_sweep,
    semiclassical_window, AlgebraContext, Hbar, LatticeElement, LatticePoint, MoritaCertificate,
    Parity, ScaleMode, SplitMix64, SuiteConfig, DEFAULT_POWER_TOL, DEFAULT_WINDOW_CAP,
};

mod grid;

use grid::{parse_hbar_grid, parse_radius_range};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "nctorus",
    version,
    about = "Workbench for twisted convolution algebras: law suites, Morita certificates, \
             semiclassical sweeps, and operator-norm bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the randomized algebraic-law suite and emit a report.
    Axioms(AxiomsArgs),
    /// Evaluate Morita invertibility certificates for axis pairs.
    Morita(MoritaArgs),
    /// Sweep the commutator-quotient-versus-bracket residual over an hbar grid.
    Semiclassical(SemiclassicalArgs),
    /// Tabulate operator-norm bounds over a window radius range.
    Norm(NormArgs),
    /// Generate element JSON files for pipelines.
    Gen(GenArgs),
}

#[derive(Args)]
struct AxiomsArgs {
    /// Path to a theta JSON file.
    #[arg(long)]
    theta: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Report destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MoritaArgs {
    #[arg(long)]
    theta: PathBuf,
    /// 1-based row axis.
    #[arg(long, conflicts_with = "all_pairs", requires = "k")]
    j: Option<usize>,
    /// 1-based column axis.
    #[arg(long, conflicts_with = "all_pairs", requires = "j")]
    k: Option<usize>,
    /// Evaluate every unordered axis pair.
    #[arg(long)]
    all_pairs: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SemiclassicalArgs {
    #[arg(long)]
    theta: PathBuf,
    /// Element JSON file for the first factor.
    #[arg(long)]
    f: PathBuf,
    /// Element JSON file for the second factor.
    #[arg(long)]
    g: PathBuf,
    /// Grid spec "A:B:logsteps=N" (log-spaced from A to B inclusive).
    #[arg(long)]
    hbar_grid: String,
    #[arg(long, value_enum, default_value_t = ScaleArg::PaperLiteral)]
    scale: ScaleArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NormArgs {
    #[arg(long)]
    theta: PathBuf,
    #[arg(long)]
    element: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Inclusive radius range "A..B".
    #[arg(long)]
    radius_range: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GenKind,
    /// Dimension; inferred from --p when omitted.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Comma-separated mode, e.g. "1,0" (monomial and symmetrized kinds).
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, default_value_t = 5)]
    max_terms: usize,
    #[arg(long, default_value_t = 3)]
    max_modes: i64,
    #[arg(long, value_enum, default_value_t = ParityArg::Any)]
    parity: ParityArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    #[value(name = "paper-literal")]
    PaperLiteral,
    Rescaled,
}

impl From<ScaleArg> for ScaleMode {
    fn from(s: ScaleArg) -> Self {
        match s {
            ScaleArg::PaperLiteral => ScaleMode::PaperLiteral,
            ScaleArg::Rescaled => ScaleMode::Rescaled,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Any,
    Even,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Monomial,
    Random,
    Symmetrized,
}

/// Morita run output: certificate rows plus the summary flags.
#[derive(serde::Serialize, serde::Deserialize)]
struct MoritaRun {
    pass: bool,
    all_degenerate: bool,
    tol: f64,
    certificates: Vec<MoritaCertificate>,
}

fn window_cap() -> usize {
    std::env::var("NCT_WINDOW_CAP")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_WINDOW_CAP)
}

fn emit(out: &Option<PathBuf>, contents: &str) -> nctorus_core::Result<()> {
    match out {
        Some(path) => io::atomic_write(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_axioms(args: &AxiomsArgs) -> nctorus_core::Result<u8> {
    let theta = io::load_theta(&args.theta)?;
    let cfg = SuiteConfig {
        seed: args.seed,
        trials: args.trials,
        n: theta.n(),
        tol: args.tol,
        ..SuiteConfig::default()
    };
    let report = run_axiom_suite(&theta, Hbar::new(args.hbar)?, &cfg)?;
    emit(&args.out, &io::to_json_string(&report)?)?;
    if report.pass {
        Ok(0)
    } else {
        eprintln!("axiom suite failed: see report for residuals");
        Ok(EXIT_VIOLATION)
    }
}

const MORITA_TOL: f64 = 1e-10;

fn cmd_morita(args: &MoritaArgs) -> nctorus_core::Result<u8> {
    let theta = io::load_theta(&args.theta)?;
    let n = theta.n();
    let pairs: Vec<(usize, usize)> = if args.all_pairs {
        (1..=n)
            .flat_map(|j| ((j + 1)..=n).map(move |k| (j, k)))
            .collect()
    } else {
        match (args.j, args.k) {
            (Some(j), Some(k)) => vec![(j, k)],
            _ => {
                return Err(nctorus_core::Error::InvalidInput(
                    "either --all-pairs or both --j and --k are required".into(),
                ))
            }
        }
    };
    let ctx = AlgebraContext::with_unit_hbar(theta);
    let mut certificates = Vec::with_capacity(pairs.len());
    for (j, k) in pairs {
        certificates.push(morita_certificate(&ctx, j, k)?);
    }
    let pass = certificates
        .iter()
        .all(|c| c.degenerate || c.residual <= MORITA_TOL);
    let run = MoritaRun {
        pass,
        all_degenerate: certificates.iter().all(|c| c.degenerate),
        tol: MORITA_TOL,
        certificates,
    };
    emit(&args.out, &io::to_json_string(&run)?)?;
    if run.pass {
        Ok(0)
    } else {
        eprintln!("certificate residual above {MORITA_TOL:e}");
        Ok(EXIT_VIOLATION)
    }
}

fn cmd_semiclassical(args: &SemiclassicalArgs) -> nctorus_core::Result<u8> {
    let theta = io::load_theta(&args.theta)?;
    let f = io::load_element(&args.f)?;
    let g = io::load_element(&args.g)?;
    let hbars = parse_hbar_grid(&args.hbar_grid)?;
    let window = semiclassical_window(&f, &g, window_cap())?;
    let points = semiclassical_sweep(&f, &g, &theta, &hbars, &window, args.scale.into())?;
    emit(&args.out, &io::semiclassical_csv(&points))?;

    // Tail check: residuals must not grow as |ℏ| shrinks.
    let mut ordered = points.clone();
    ordered.sort_by(|a, b| b.hbar.abs().partial_cmp(&a.hbar.abs()).unwrap());
    let tail_start = ordered.len().saturating_sub(5);
    let tail = &ordered[tail_start..];
    for pair in tail.windows(2) {
        let slack = 1e-14 * (1.0 + pair[0].residual);
        if pair[1].residual > pair[0].residual + slack {
            eprintln!(
                "residual grew along the tail: {} -> {} (hbar {} -> {})",
                pair[0].residual, pair[1].residual, pair[0].hbar, pair[1].hbar
            );
            return Ok(EXIT_VIOLATION);
        }
    }
    Ok(0)
}

fn cmd_norm(args: &NormArgs) -> nctorus_core::Result<u8> {
    let theta = io::load_theta(&args.theta)?;
    let element = io::load_element(&args.element)?;
    let radii = parse_radius_range(&args.radius_range)?;
    let rows = norm_sweep(
        &element,
        &theta,
        &[args.hbar],
        &radii,
        DEFAULT_POWER_TOL,
        window_cap(),
    )?;
    emit(&args.out, &io::norm_sweep_csv(&rows))?;

    let mut prev = 0.0f64;
    for row in &rows {
        if row.norm_lower + 1e-12 < prev || row.norm_lower > row.norm_upper + 1e-9 {
            eprintln!(
                "norm bounds inconsistent at radius {}: lower {} upper {}",
                row.radius, row.norm_lower, row.norm_upper
            );
            return Ok(EXIT_VIOLATION);
        }
        prev = row.norm_lower;
    }
    Ok(0)
}

fn parse_mode(raw: &str) -> nctorus_core::Result<LatticePoint> {
    let coords: Vec<i64> = raw
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|e| nctorus_core::Error::InvalidInput(format!("bad mode '{raw}': {e}")))
        })
        .collect::<nctorus_core::Result<_>>()?;
    if coords.is_empty() {
        return Err(nctorus_core::Error::InvalidInput("empty mode".into()));
    }
    Ok(LatticePoint::new(coords))
}

fn cmd_gen(args: &GenArgs) -> nctorus_core::Result<u8> {
    let element = match args.kind {
        GenKind::Monomial | GenKind::Symmetrized => {
            let raw = args.p.as_deref().ok_or_else(|| {
                nctorus_core::Error::InvalidInput("--p is required for this kind".into())
            })?;
            let p = parse_mode(raw)?;
            if let Some(n) = args.n {
                if n != p.dim() {
                    return Err(nctorus_core::Error::DimensionMismatch {
                        expected: n,
                        got: p.dim(),
                    });
                }
            }
            let m = LatticeElement::monomial(p);
            match args.kind {
                GenKind::Monomial => m,
                _ => m.symmetrize(),
            }
        }
        GenKind::Random => {
            let n = args.n.ok_or_else(|| {
                nctorus_core::Error::InvalidInput("--n is required for --kind random".into())
            })?;
            let cfg = SuiteConfig {
                seed: args.seed,
                n,
                max_modes: args.max_modes,
                max_terms: args.max_terms,
                ..SuiteConfig::default()
            };
            let mut rng = SplitMix64::new(args.seed);
            let parity = match args.parity {
                ParityArg::Any => Parity::Any,
                ParityArg::Even => Parity::Even,
            };
            random_element(&cfg, &mut rng, parity)
        }
    };
    emit(&args.out, &io::to_json_string(&element)?)?;
    Ok(0)
}

fn run(cli: &Cli) -> nctorus_core::Result<u8> {
    match &cli.command {
        Command::Axioms(args) => cmd_axioms(args),
        Command::Morita(args) => cmd_morita(args),
        Command::Semiclassical(args) => cmd_semiclassical(args),
        Command::Norm(args) => cmd_norm(args),
        Command::Gen(args) => cmd_gen(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
