//! Deterministic command-line front end: cover construction and
//! verification, surface distances, distance statistics, lattice counts and
//! packing experiments, all with machine-readable output.
//!
//! Exit codes: 0 success (or verification passed), 1 verification failed,
//! 2 usage, construction or I/O errors.

use clap::{Args, Parser, Subcommand};
use geocover::analytics::{
    cross_stats, distance_stats, equilateral_greedy, generate_points, qp_scaling_experiment,
    PointKind, SurfaceKind, DEFAULT_EPS_EQ,
};
use geocover::cover::{
    build_cover_genus, modular_cover_ten, surface_distance_detailed, verify_cover, GeodesicCover,
};
use geocover::fuchsian::{lattice_count_table, FuchsianGroup};
use geocover::hyp::UhpPoint;
use geocover::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "geocover",
    version,
    about = "Distances on hyperbolic surfaces via geodesic covers",
    max_term_width = 100
)]
struct Cli {
    /// Worker threads (default: GEOCOVER_THREADS or all cores). Output is
    /// independent of the thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or verify geodesic covers.
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Surface distance between two points through a cover.
    Dist(DistArgs),
    /// Distance statistics of a point-set file.
    Analyze(AnalyzeArgs),
    /// Cross-set distance statistics of two point-set files.
    CrossAnalyze(CrossArgs),
    /// Ball counts N(R) on a radius grid.
    Latcount(LatcountArgs),
    /// Greedy packing with pairwise distance at least r on a genus-g surface.
    Equilateral(EquilateralArgs),
    /// Quadruple-count scaling table over seeded point sets.
    QpScaling(QpArgs),
    /// Generate deterministic point-set files.
    #[command(subcommand)]
    Points(PointsCommand),
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Construct a cover and write it as JSON.
    Build(CoverBuildArgs),
    /// Check a cover file against the brute-force oracle on sampled pairs.
    Verify(CoverVerifyArgs),
}

#[derive(Args)]
struct CoverBuildArgs {
    /// modular | genus:G
    #[arg(long)]
    surface: String,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoverVerifyArgs {
    /// Cover file to verify.
    #[arg(long)]
    cover: PathBuf,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest tolerated |cover − oracle| gap.
    #[arg(long, default_value_t = 1e-9)]
    gap_tol: f64,
    /// Report path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DistArgs {
    /// Expected surface of the cover file (validated when given).
    #[arg(long)]
    surface: Option<String>,
    #[arg(long)]
    cover: PathBuf,
    /// First point as "x,y"; reduced automatically.
    #[arg(long)]
    p: String,
    /// Second point as "x,y"; reduced automatically.
    #[arg(long)]
    q: String,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Point-set file.
    #[arg(long)]
    points: PathBuf,
    /// Cover file; required unless the point set lives on the plane.
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Clustering width for equal distances.
    #[arg(long, default_value_t = DEFAULT_EPS_EQ)]
    eps: f64,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CrossArgs {
    #[arg(long)]
    points1: PathBuf,
    #[arg(long)]
    points2: PathBuf,
    #[arg(long)]
    cover: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EPS_EQ)]
    eps: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LatcountArgs {
    /// modular | genus:G
    #[arg(long)]
    surface: String,
    #[arg(long)]
    rmax: f64,
    /// Number of grid radii between sqrt(2) and rmax inclusive.
    #[arg(long, default_value_t = 10)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also export the enumerated ball at rmax as JSON.
    #[arg(long)]
    ball_out: Option<PathBuf>,
}

#[derive(Args)]
struct EquilateralArgs {
    #[arg(long)]
    genus: u32,
    /// Target pairwise distance.
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = 4)]
    attempts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct QpArgs {
    /// Comma-separated ascending list of set sizes.
    #[arg(long, default_value = "100,200,400,800")]
    sizes: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PointsCommand {
    /// Generate a point-set file.
    Gen(PointsGenArgs),
}

#[derive(Args)]
struct PointsGenArgs {
    /// plane | modular | genus:G
    #[arg(long)]
    surface: String,
    /// area-uniform | progression:STEP | orbit:X:Y
    #[arg(long)]
    kind: String,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cover file; required for quotient-surface kinds that need the group.
    #[arg(long)]
    cover: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("GEOCOVER_THREADS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .filter(|&n| n > 0);
    let run = || match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|e| {
                eprintln!("error: cannot build thread pool: {e}");
                ExitCode::from(2)
            }),
        None => run(),
    }
}

type AnyError = Box<dyn std::error::Error>;

fn dispatch(command: Command) -> Result<ExitCode, AnyError> {
    match command {
        Command::Cover(CoverCommand::Build(args)) => cover_build(args),
        Command::Cover(CoverCommand::Verify(args)) => cover_verify(args),
        Command::Dist(args) => dist(args),
        Command::Analyze(args) => analyze(args),
        Command::CrossAnalyze(args) => cross_analyze(args),
        Command::Latcount(args) => latcount(args),
        Command::Equilateral(args) => equilateral(args),
        Command::QpScaling(args) => qp_scaling(args),
        Command::Points(PointsCommand::Gen(args)) => points_gen(args),
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), AnyError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn load_cover(path: &Path) -> Result<GeodesicCover, AnyError> {
    Ok(io::read_cover(&std::fs::read_to_string(path)?)?)
}

fn build_cover_for(surface: &str) -> Result<GeodesicCover, AnyError> {
    match io::parse_surface(surface)? {
        SurfaceKind::Modular => Ok(modular_cover_ten()),
        SurfaceKind::RegularGenus(g) => Ok(build_cover_genus(g)?),
        SurfaceKind::Plane => Err("the plane needs no cover".into()),
    }
}

fn cover_build(args: CoverBuildArgs) -> Result<ExitCode, AnyError> {
    let cover = build_cover_for(&args.surface)?;
    match cover.bound_used() {
        Some(b) => eprintln!(
            "cover: {} elements, normsq_cap = {}",
            cover.len(),
            io::fmt_f64_17(b.normsq_cap)
        ),
        None => eprintln!("cover: {} elements", cover.len()),
    }
    emit(args.out.as_deref(), &io::write_cover(&cover))?;
    Ok(ExitCode::SUCCESS)
}

fn cover_verify(args: CoverVerifyArgs) -> Result<ExitCode, AnyError> {
    let cover = load_cover(&args.cover)?;
    if args.samples == 0 {
        eprintln!("warning: zero samples requested; nothing verified");
    }
    let report = verify_cover(&cover, args.samples, args.seed)?;
    emit(
        args.out.as_deref(),
        &io::write_verify_report(&report, &cover),
    )?;
    if report.max_abs_gap <= args.gap_tol {
        eprintln!(
            "verified: max gap {} over {} pairs",
            io::fmt_f64_17(report.max_abs_gap),
            report.samples
        );
        Ok(ExitCode::SUCCESS)
    } else {
        let (p, q) = report.worst_pair.expect("nonzero gap has a pair");
        eprintln!(
            "verification FAILED: gap {} at p = ({}, {}), q = ({}, {})",
            io::fmt_f64_17(report.max_abs_gap),
            p.x(),
            p.y(),
            q.x(),
            q.y()
        );
        Ok(ExitCode::from(1))
    }
}

fn parse_point(s: &str) -> Result<UhpPoint, AnyError> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("point '{s}' must be 'x,y'"))?;
    Ok(UhpPoint::new(x.trim().parse()?, y.trim().parse()?)?)
}

fn dist(args: DistArgs) -> Result<ExitCode, AnyError> {
    let cover = load_cover(&args.cover)?;
    if let Some(expect) = &args.surface {
        let got = cover.surface().kind().label();
        if *expect != got {
            return Err(format!("cover file is for surface '{got}', not '{expect}'").into());
        }
    }
    let (p, _) = cover.surface().reduce(&parse_point(&args.p)?)?;
    let (q, _) = cover.surface().reduce(&parse_point(&args.q)?)?;
    let (d, argmins) = surface_distance_detailed(&p, &q, &cover)?;
    println!("distance = {}", io::fmt_f64_17(d));
    for &i in &argmins {
        let (a, b, c, dd) = cover.gamma0()[i].entries();
        println!("argmin[{i}] = [[{a}, {b}], [{c}, {dd}]]");
    }
    Ok(ExitCode::SUCCESS)
}

fn analyze(args: AnalyzeArgs) -> Result<ExitCode, AnyError> {
    let set = io::read_points(&std::fs::read_to_string(&args.points)?)?;
    let cover = args.cover.as_deref().map(load_cover).transpose()?;
    let stats = distance_stats(&set, cover.as_ref(), args.eps)?;
    let echo = format!(
        "surface={},label={},n={},eps_eq={} (thm_bound shape-only)",
        set.surface().label(),
        set.label(),
        set.len(),
        io::fmt_f64_17(args.eps)
    );
    let text = match args.format.as_str() {
        "csv" => io::write_stats_csv(&stats, &echo),
        "json" => io::write_stats_json(&stats, &echo),
        other => return Err(format!("unknown format '{other}' (want csv or json)").into()),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cross_analyze(args: CrossArgs) -> Result<ExitCode, AnyError> {
    let p1 = io::read_points(&std::fs::read_to_string(&args.points1)?)?;
    let p2 = io::read_points(&std::fs::read_to_string(&args.points2)?)?;
    let cover = args.cover.as_deref().map(load_cover).transpose()?;
    let stats = cross_stats(&p1, &p2, cover.as_ref(), args.eps)?;
    let echo = format!(
        "surface={},labels={}|{},eps_eq={} (bound shape-only)",
        p1.surface().label(),
        p1.label(),
        p2.label(),
        io::fmt_f64_17(args.eps)
    );
    emit(args.out.as_deref(), &io::write_cross_csv(&stats, &echo))?;
    Ok(ExitCode::SUCCESS)
}

fn latcount(args: LatcountArgs) -> Result<ExitCode, AnyError> {
    let group = match io::parse_surface(&args.surface)? {
        SurfaceKind::Modular => FuchsianGroup::modular(),
        SurfaceKind::RegularGenus(g) => FuchsianGroup::regular_genus(g)?,
        SurfaceKind::Plane => return Err("lattice counts need a group".into()),
    };
    let lo = 2f64.sqrt();
    if !(args.rmax >= lo) || args.steps == 0 {
        return Err(format!(
            "need rmax >= sqrt(2) and steps >= 1, got {}, {}",
            args.rmax, args.steps
        )
        .into());
    }
    let grid: Vec<f64> = if args.steps == 1 {
        vec![args.rmax]
    } else {
        (0..args.steps)
            .map(|i| lo + (args.rmax - lo) * i as f64 / (args.steps - 1) as f64)
            .collect()
    };
    if let Some(path) = &args.ball_out {
        let ball = group.enumerate_ball(args.rmax)?;
        std::fs::write(path, io::write_ball(&ball))?;
    }
    let rows = lattice_count_table(&group, &grid)?;
    let echo = format!(
        "surface={},rmax={},steps={}",
        args.surface,
        io::fmt_f64_17(args.rmax),
        args.steps
    );
    emit(args.out.as_deref(), &io::write_latcount_csv(&rows, &echo))?;
    Ok(ExitCode::SUCCESS)
}

fn equilateral(args: EquilateralArgs) -> Result<ExitCode, AnyError> {
    let report = equilateral_greedy(args.genus, args.r, args.attempts, args.seed)?;
    eprintln!(
        "found {} points (cap on circle: {})",
        report.found, report.circle_cap
    );
    emit(args.out.as_deref(), &io::write_equilateral_json(&report))?;
    Ok(ExitCode::SUCCESS)
}

fn qp_scaling(args: QpArgs) -> Result<ExitCode, AnyError> {
    let sizes: Vec<usize> = args
        .sizes
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()?;
    let rows = qp_scaling_experiment(&sizes, args.seed)?;
    let echo = format!("surface=modular,sizes={},seed={}", args.sizes, args.seed);
    emit(args.out.as_deref(), &io::write_qp_csv(&rows, &echo))?;
    Ok(ExitCode::SUCCESS)
}

fn parse_kind(s: &str) -> Result<PointKind, AnyError> {
    if s == "area-uniform" {
        return Ok(PointKind::AreaUniform);
    }
    if let Some(step) = s.strip_prefix("progression:") {
        return Ok(PointKind::GeodesicProgression {
            step: step.parse()?,
        });
    }
    if let Some(xy) = s.strip_prefix("orbit:") {
        let (x, y) = xy
            .split_once(':')
            .ok_or_else(|| format!("orbit kind '{s}' must be orbit:X:Y"))?;
        return Ok(PointKind::OrbitSample {
            base: UhpPoint::new(x.parse()?, y.parse()?)?,
        });
    }
    Err(format!("unknown kind '{s}' (want area-uniform, progression:STEP or orbit:X:Y)").into())
}

fn points_gen(args: PointsGenArgs) -> Result<ExitCode, AnyError> {
    let surface = io::parse_surface(&args.surface)?;
    let kind = parse_kind(&args.kind)?;
    let cover = args.cover.as_deref().map(load_cover).transpose()?;
    let set = generate_points(kind, surface, cover.as_ref(), args.count, args.seed)?;
    eprintln!("generated {} points", set.len());
    emit(args.out.as_deref(), &io::write_points(&set))?;
    Ok(ExitCode::SUCCESS)
}
