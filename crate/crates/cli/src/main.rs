mod literal;
mod render;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use chebdyn_core::dynamics::{OrbitClassifier, Viewport};
use chebdyn_core::fixed::{critical_points_of, fixed_points_of};
use chebdyn_core::maps::{build_chebyshev, series_at_infinity, BuildError, ExpPolyFunction};
use chebdyn_core::poly::ComplexPoly;
use chebdyn_core::tol::DEFAULT_BUDGET;
use chebdyn_core::verify::run_all;
use clap::{ArgGroup, Args, Parser, Subcommand};
use num_complex::Complex64;

use render::View;

#[derive(Parser)]
#[command(
    name = "chebdyn",
    version,
    about = "Chebyshev iteration maps of p(z)e^{q(z)}: analysis, basin images, claim checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print fixed points, critical points, and the series at infinity as JSON
    Analyze(AnalyzeArgs),
    /// Render the basins of the map for z e^{z^n} to a binary PPM file
    Render(RenderArgs),
    /// Run quantitative claim checks and print a JSON report
    Verify(VerifyArgs),
}

#[derive(Clone)]
struct CoeffList(Vec<Complex64>);

fn parse_coeff_arg(s: &str) -> Result<CoeffList, String> {
    literal::parse_coeff_list(s).map(CoeffList)
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").args(["n", "p"]).required(true)))]
struct AnalyzeArgs {
    /// Use the canonical function z e^{z^n}
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), conflicts_with_all = ["p", "q"])]
    n: Option<u32>,
    /// Coefficients of p, ascending, as comma-separated complex literals
    #[arg(long, value_parser = parse_coeff_arg)]
    p: Option<CoeffList>,
    /// Coefficients of q, ascending; defaults to zero (no exponential part)
    #[arg(long, value_parser = parse_coeff_arg, requires = "p")]
    q: Option<CoeffList>,
}

#[derive(Args)]
struct RenderArgs {
    /// Render the basins of the map for z e^{z^n}
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Output path for the PPM image
    #[arg(long)]
    out: PathBuf,
    /// Viewport center as a complex literal
    #[arg(long, value_parser = literal::parse_complex, default_value = "0")]
    center: Complex64,
    /// Half of the viewport width in plane units
    #[arg(long, value_parser = literal::parse_half_width, default_value = "3")]
    half_width: f64,
    /// Image size in pixels
    #[arg(long, value_parser = literal::parse_size, default_value = "512x512")]
    size: (usize, usize),
    /// Iteration budget per pixel
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), default_value_t = DEFAULT_BUDGET)]
    budget: u32,
    /// Coordinate to render: the plane, or w = 1/z around infinity
    #[arg(long, value_enum, default_value = "plane")]
    view: View,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest n to check
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=18), default_value_t = 16)]
    n_max: u32,
    /// Restrict to a single claim id
    #[arg(long)]
    claim: Option<String>,
}

enum Failure {
    /// Some verified claim failed; the JSON report is already on stdout.
    Claims,
    Usage(String),
    Degenerate(String),
    Io(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Render(args) => cmd_render(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claims) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Degenerate(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let f = match args.n {
        Some(n) => ExpPolyFunction::z_exp_zn(n),
        None => {
            let CoeffList(p) = args.p.expect("required by the argument group");
            let q = args.q.map_or_else(Vec::new, |CoeffList(q)| q);
            let p = ComplexPoly::new(p);
            if p.is_zero() {
                return Err(Failure::Usage(String::from("polynomial p is zero")));
            }
            ExpPolyFunction::new(p, ComplexPoly::new(q)).map_err(|e| match e {
                BuildError::ZeroFunction => Failure::Usage(String::from("polynomial p is zero")),
                other => Failure::Degenerate(other.to_string()),
            })?
        }
    };
    let map = build_chebyshev(&f).map_err(|e| Failure::Degenerate(e.to_string()))?;
    let fixed = fixed_points_of(&f).map_err(|e| Failure::Degenerate(e.to_string()))?;
    let critical = critical_points_of(&f).map_err(|e| Failure::Degenerate(e.to_string()))?;
    let order = f.q().degree().unwrap_or(0) + 3;
    let series = series_at_infinity(&map, order).ok();
    let doc = report::analysis_document(
        f.p().coeffs(),
        f.q().coeffs(),
        &map,
        &fixed,
        &critical,
        series.as_ref(),
    );
    println!("{doc}");
    Ok(())
}

fn thread_cap() -> Result<usize, Failure> {
    match std::env::var("CHEBDYN_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(Failure::Usage(format!("CHEBDYN_THREADS: {e}"))),
        Ok(s) => s
            .parse()
            .map_err(|_| Failure::Usage(format!("invalid CHEBDYN_THREADS value '{s}'"))),
    }
}

fn cmd_render(args: RenderArgs) -> Result<(), Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_cap()?)
        .build()
        .map_err(|e| Failure::Io(e.to_string()))?;
    let (px_w, px_h) = args.size;
    let viewport = Viewport::new(args.center, 2.0 * args.half_width, px_w, px_h);
    let classifier = OrbitClassifier::for_cn(args.n);
    let cells =
        pool.install(|| render::render_cells(&classifier, &viewport, args.budget, args.view));
    let bytes = render::ppm_bytes(px_w, px_h, args.budget, &cells);
    std::fs::write(&args.out, bytes)
        .map_err(|e| Failure::Io(format!("{}: {e}", args.out.display())))?;
    Ok(())
}

const CLAIM_IDS: [&str; 6] = [
    "census",
    "extraneous",
    "odd-hypothesis",
    "even-hypothesis",
    "gn-profile",
    "c1-evidence",
];

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if let Some(claim) = &args.claim {
        if !CLAIM_IDS.contains(&claim.as_str()) {
            return Err(Failure::Usage(format!(
                "unknown claim '{claim}', expected one of: {}",
                CLAIM_IDS.join(", ")
            )));
        }
    }
    let mut reports = run_all(args.n_max);
    if let Some(claim) = &args.claim {
        reports.retain(|r| r.name == claim);
    }
    println!("{}", report::verify_document(&reports));
    if reports.iter().any(|r| r.verdict.is_failure()) {
        return Err(Failure::Claims);
    }
    Ok(())
}
