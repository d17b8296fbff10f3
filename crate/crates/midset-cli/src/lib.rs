//! Command-line driver for the midset engine: scene JSON in, CSV/SVG/PGM
//! artifacts out.
//!
//! Exit codes:
//!
//! * `0` — success. Certification hypothesis failures (`inside_hull`,
//!   `no_separation`) are ordinary outcomes: the status row is written and
//!   the run still succeeds.
//! * `1` — invalid input: unreadable or malformed scene files, scenes that
//!   violate their invariants, out-of-range parameters, bad flags.
//! * `2` — a computation does not apply to the given configuration
//!   (overlapping hulls for `rays`, a chain that is not a graph over a ray,
//!   a failed conic verdict) or an output file cannot be written.
//! * `3` — finished and wrote outputs, but extraction leaves are wider than
//!   `tol_x`: results are coarser than requested; rerun with a larger
//!   `--max-depth`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use midset::analysis::{structure_report, PerturbMode};
use midset::asymptotics::{asymptotic_rays, end_deviation_profile};
use midset::certification::{certified_raster, certify_point, RasterClass};
use midset::export::{
    certify_csv, chains_csv, conics_csv, continuity_csv, fmt_f64, profile_csv, raster_csv,
    raster_pgm, rays_csv, report_csv, svg_document, CertifyRow, ConicRow,
};
use midset::extraction::{
    epsilon_boundary, extract_midset, ExtractOptions, Extraction, ExtractionWarning, FocalSide,
};
use midset::geometry::Point2;
use midset::scenefile::load_scene;
use midset::{Error, GeomConfig, Scene};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_DEPTH_EXHAUSTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "midset",
    version,
    about = "Compute, certify, and analyze equidistant sets of two planar focal sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Extract the midset of a scene as polyline chains
    Extract(ExtractArgs),
    /// Extract the level set { dist(., F) = eps } of one focal set
    Eboundary(EboundaryArgs),
    /// Compute the two asymptotic direction rays, optionally with a
    /// deviation profile of the extracted midset against them
    Rays(RaysArgs),
    /// Certify that a true midset point lies within an explicit radius of
    /// one query point
    Certify(CertifyArgs),
    /// Classify a square grid into certified-hit / certified-miss /
    /// unresolved cells
    Raster(RasterArgs),
    /// Perturb focal set B over a schedule of magnitudes and measure how far
    /// the midset moves
    Continuity(ContinuityArgs),
    /// Extract the built-in conic scenes and verify their closed-form
    /// constants
    Conics(ConicsArgs),
    /// Report the component structure of the extracted midset
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct SceneArg {
    /// Scene JSON file
    #[arg(long, value_name = "FILE")]
    pub scene: PathBuf,
}

#[derive(Args, Debug)]
pub struct OutArg {
    /// Output file
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct DepthArgs {
    /// Quadtree subdivision depth; leaf width is 2R * 2^-depth
    #[arg(long, default_value_t = 14)]
    pub max_depth: usize,
    /// Worker threads; any count produces bit-identical output
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

impl DepthArgs {
    fn options(&self) -> ExtractOptions {
        ExtractOptions {
            max_depth: self.max_depth,
            threads: self.threads,
        }
    }
}

/// Output format for chain-producing commands.
#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainFormat {
    Csv,
    Svg,
}

/// Output format for the certified raster.
#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RasterFormat {
    Csv,
    Pgm,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FocalArg {
    A,
    B,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Translate,
    Jitter,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    #[command(flatten)]
    pub out: OutArg,
    /// csv: chain_id,seq,x,y,residual rows; svg: plot of the scene and chains
    #[arg(long, value_enum, default_value_t = ChainFormat::Csv)]
    pub format: ChainFormat,
    #[command(flatten)]
    pub depth: DepthArgs,
}

#[derive(Args, Debug)]
pub struct EboundaryArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    /// Which focal set the boundary belongs to
    #[arg(long, value_enum)]
    pub focal: FocalArg,
    /// Level-set distance (must be positive)
    #[arg(long, allow_negative_numbers = true)]
    pub eps: f64,
    #[command(flatten)]
    pub out: OutArg,
    #[arg(long, value_enum, default_value_t = ChainFormat::Csv)]
    pub format: ChainFormat,
    #[command(flatten)]
    pub depth: DepthArgs,
}

#[derive(Args, Debug)]
pub struct RaysArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    #[command(flatten)]
    pub out: OutArg,
    /// Override the polygonization segment count of curved hulls
    #[arg(long, value_name = "SEGMENTS")]
    pub k: Option<usize>,
    /// Also extract the midset and write ray_id,t,s deviation samples here
    #[arg(long, value_name = "FILE")]
    pub profile_out: Option<PathBuf>,
    /// Keep only profile samples at least this far along each ray
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t_min: f64,
    #[command(flatten)]
    pub depth: DepthArgs,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    /// Query point x coordinate
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    /// Query point y coordinate
    #[arg(long, allow_negative_numbers = true)]
    pub y: f64,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Args, Debug)]
pub struct RasterArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    /// Cells per side of the grid covering [-R, R]^2
    #[arg(long, default_value_t = 64)]
    pub grid: u32,
    #[command(flatten)]
    pub out: OutArg,
    /// csv: one row per cell; pgm: miss 0, unresolved 128, hit 255
    #[arg(long, value_enum, default_value_t = RasterFormat::Csv)]
    pub format: RasterFormat,
    /// Worker threads; any count produces bit-identical output
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct ContinuityArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    /// Nonincreasing perturbation magnitudes, e.g. 0.4,0.2,0.1
    #[arg(long, value_delimiter = ',', required = true, num_args = 1.., allow_negative_numbers = true)]
    pub deltas: Vec<f64>,
    /// translate: rigid shift of B; jitter: independent vertex offsets
    #[arg(long, value_enum, default_value_t = ModeArg::Translate)]
    pub mode: ModeArg,
    /// RNG seed for jitter draws (row i uses seed + i)
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub depth: DepthArgs,
}

#[derive(Args, Debug)]
pub struct ConicsArgs {
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub depth: DepthArgs,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    #[command(flatten)]
    pub out: OutArg,
    #[command(flatten)]
    pub depth: DepthArgs,
}

/// A failed run, already classified into its exit code.
enum Failure {
    Invalid(String),
    Runtime(String),
}

type CmdResult<T> = Result<T, Failure>;

/// Map a library error onto an exit class: construction/validation errors
/// mean bad input, hypothesis errors mean the computation does not apply.
fn classify(err: Error) -> Failure {
    match &err {
        Error::InvalidInput(_)
        | Error::Domain(_)
        | Error::EmptyInput(_)
        | Error::NotDisjoint(_)
        | Error::OutsideBoundingDisk { .. } => Failure::Invalid(err.to_string()),
        Error::HullsIntersect
        | Error::InsideHull(_)
        | Error::NoSeparation(_)
        | Error::SameSign { .. }
        | Error::NotAGraph => Failure::Runtime(err.to_string()),
    }
}

fn load(path: &PathBuf) -> CmdResult<Scene> {
    load_scene(path)
        .map_err(|e| Failure::Invalid(format!("scene `{}`: {e}", path.display())))
}

fn write_out(path: &PathBuf, text: &str) -> CmdResult<()> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Runtime(format!("writing `{}`: {e}", path.display())))
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.cmd {
        Cmd::Extract(a) => cmd_extract(a),
        Cmd::Eboundary(a) => cmd_eboundary(a),
        Cmd::Rays(a) => cmd_rays(a),
        Cmd::Certify(a) => cmd_certify(a),
        Cmd::Raster(a) => cmd_raster(a),
        Cmd::Continuity(a) => cmd_continuity(a),
        Cmd::Conics(a) => cmd_conics(a),
        Cmd::Report(a) => cmd_report(a),
    };
    match outcome {
        Ok(warnings) => {
            if warnings.is_empty() {
                EXIT_OK
            } else {
                for w in &warnings {
                    match w {
                        ExtractionWarning::DepthExhausted {
                            cell_width,
                            straddling_cells,
                        } => eprintln!(
                            "warning: max depth exhausted: {straddling_cells} straddling \
                             cells of width {cell_width:e} exceed tol_x; rerun with a larger \
                             --max-depth"
                        ),
                    }
                }
                EXIT_DEPTH_EXHAUSTED
            }
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INVALID
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            EXIT_RUNTIME
        }
    }
}

/// Parse `std::env::args` and run. Help and version requests exit 0; other
/// parse errors exit 1.
pub fn run_from_args() -> i32 {
    use clap::error::ErrorKind;
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let _ = e.print();
            code
        }
    }
}

fn chain_text(scene: &Scene, extraction: &Extraction, format: ChainFormat) -> String {
    match format {
        ChainFormat::Csv => chains_csv(&extraction.chains),
        ChainFormat::Svg => svg_document(scene, &extraction.chains, &[]),
    }
}

fn cmd_extract(a: ExtractArgs) -> CmdResult<Vec<ExtractionWarning>> {
    let scene = load(&a.scene.scene)?;
    let extraction = extract_midset(&scene, &a.depth.options()).map_err(classify)?;
    write_out(&a.out.out, &chain_text(&scene, &extraction, a.format))?;
    println!(
        "extract: {} chains, {} vertices -> {}",
        extraction.chains.len(),
        extraction.vertex_count(),
        a.out.out.display()
    );
    Ok(extraction.warnings)
}

fn cmd_eboundary(a: EboundaryArgs) -> CmdResult<Vec<ExtractionWarning>> {
    let scene = load(&a.scene.scene)?;
    let side = match a.focal {
        FocalArg::A => FocalSide::A,
        FocalArg::B => FocalSide::B,
    };
    let extraction =
        epsilon_boundary(&scene, side, a.eps, &a.depth.options()).map_err(classify)?;
    write_out(&a.out.out, &chain_text(&scene, &extraction, a.format))?;
    println!(
        "eboundary: {} chains, {} vertices -> {}",
        extraction.chains.len(),
        extraction.vertex_count(),
        a.out.out.display()
    );
    Ok(extraction.warnings)
}

fn cmd_rays(a: RaysArgs) -> CmdResult<Vec<ExtractionWarning>> {
    let mut scene = load(&a.scene.scene)?;
    if let Some(k) = a.k {
        let geom = GeomConfig {
            hull_segments: k,
            ..scene.geom
        };
        scene = scene.with_geom(geom).map_err(classify)?;
    }
    let rays = asymptotic_rays(&scene.a, &scene.b, &scene.geom).map_err(classify)?;
    write_out(&a.out.out, &rays_csv(&rays))?;
    println!("rays: 2 rays -> {}", a.out.out.display());

    let Some(profile_path) = a.profile_out else {
        return Ok(Vec::new());
    };
    let extraction = extract_midset(&scene, &a.depth.options()).map_err(classify)?;
    let mut rows: Vec<(usize, f64, f64)> = Vec::new();
    for (ray_id, ray) in rays.iter().enumerate() {
        let mut samples: Vec<(f64, f64)> = Vec::new();
        for chain in &extraction.chains {
            if chain.is_empty() {
                continue;
            }
            let profile =
                end_deviation_profile(chain, ray, a.t_min, scene.tol_x).map_err(classify)?;
            samples.extend(profile.samples);
        }
        samples.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
        rows.extend(samples.into_iter().map(|(t, s)| (ray_id, t, s)));
    }
    write_out(&profile_path, &profile_csv(&rows))?;
    println!(
        "rays: {} profile samples -> {}",
        rows.len(),
        profile_path.display()
    );
    Ok(extraction.warnings)
}

fn cmd_certify(a: CertifyArgs) -> CmdResult<Vec<ExtractionWarning>> {
    let scene = load(&a.scene.scene)?;
    let row = match certify_point(Point2::new(a.x, a.y), &scene) {
        Ok(bound) => CertifyRow {
            x: a.x,
            y: a.y,
            status: "ok".to_string(),
            eps: bound.eps,
            d: bound.d,
            alpha: bound.alpha,
            radius: bound.radius,
        },
        Err(err @ (Error::InsideHull(_) | Error::NoSeparation(_))) => {
            let status = match err {
                Error::InsideHull(_) => "inside_hull",
                _ => "no_separation",
            };
            CertifyRow {
                x: a.x,
                y: a.y,
                status: status.to_string(),
                eps: f64::NAN,
                d: f64::NAN,
                alpha: f64::NAN,
                radius: f64::NAN,
            }
        }
        Err(other) => return Err(classify(other)),
    };
    write_out(&a.out.out, &certify_csv(std::slice::from_ref(&row)))?;
    if row.status == "ok" {
        println!(
            "certify ({}, {}): ok, radius {}",
            a.x,
            a.y,
            fmt_f64(row.radius)
        );
    } else {
        println!("certify ({}, {}): {}", a.x, a.y, row.status);
    }
    Ok(Vec::new())
}

fn cmd_raster(a: RasterArgs) -> CmdResult<Vec<ExtractionWarning>> {
    let scene = load(&a.scene.scene)?;
    let raster = certified_raster(&scene, a.grid, a.threads).map_err(classify)?;
    let text = match a.format {
        RasterFormat::Csv => raster_csv(&raster),
        RasterFormat::Pgm => raster_pgm(&raster),
    };
    write_out(&a.out.out, &text)?;
    let count = |class: RasterClass| {
        raster
            .cells
            .iter()
            .filter(|c| c.classification == class)
            .count()
    };
    println!(
        "raster {0}x{0}: {1} hit, {2} miss, {3} unresolved -> {4}",
        a.grid,
        count(RasterClass::Hit),
        count(RasterClass::Miss),
        count(RasterClass::Unresolved),
        a.out.out.display()
    );
    Ok(Vec::new())
}

fn cmd_continuity(a: ContinuityArgs) -> CmdResult<Vec<ExtractionWarning>> {
    let scene = load(&a.scene.scene)?;
    let mode = match a.mode {
        ModeArg::Translate => PerturbMode::Translate,
        ModeArg::Jitter => PerturbMode::Jitter,
    };
    let rows =
        midset::analysis::continuity_experiment(&scene, &a.deltas, mode, a.seed, &a.depth.options())
            .map_err(classify)?;
    write_out(&a.out.out, &continuity_csv(&rows))?;
    println!("continuity: {} rows -> {}", rows.len(), a.out.out.display());
    Ok(Vec::new())
}

fn cmd_conics(a: ConicsArgs) -> CmdResult<Vec<ExtractionWarning>> {
    let mut warnings = Vec::new();
    let mut rows = Vec::new();
    let mut failed: Vec<&'static str> = Vec::new();
    for (name, scene, spec) in midset::demo::conic_suite() {
        let extraction = extract_midset(&scene, &a.depth.options()).map_err(classify)?;
        warnings.extend(extraction.warnings.iter().cloned());
        let residual = extraction
            .chains
            .iter()
            .map(|c| midset::analysis::conic_residual(c, &spec))
            .fold(0.0, f64::max);
        let limit = 2.0 * scene.tol_gap;
        let pass = residual <= limit;
        if !pass {
            failed.push(name);
        }
        println!(
            "conics {name}: residual {} (limit {}) {}",
            fmt_f64(residual),
            fmt_f64(limit),
            if pass { "pass" } else { "FAIL" }
        );
        rows.push(ConicRow {
            scene: name.to_string(),
            kind: spec.kind,
            constant: spec.constant,
            residual,
            limit,
            pass,
        });
    }
    write_out(&a.out.out, &conics_csv(&rows))?;
    if !failed.is_empty() {
        return Err(Failure::Runtime(format!(
            "conic residual exceeds limit for: {}",
            failed.join(", ")
        )));
    }
    Ok(warnings)
}

fn cmd_report(a: ReportArgs) -> CmdResult<Vec<ExtractionWarning>> {
    let scene = load(&a.scene.scene)?;
    let extraction = extract_midset(&scene, &a.depth.options()).map_err(classify)?;
    let report = structure_report(&scene, &extraction.chains);
    write_out(&a.out.out, &report_csv(&report))?;
    println!(
        "report: {} components -> {}",
        report.components.len(),
        a.out.out.display()
    );
    Ok(extraction.warnings)
}
