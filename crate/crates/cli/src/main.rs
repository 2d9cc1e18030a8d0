//! `phdim`: persistent-homology and dimension-estimation experiments from
//! the command line. Every subcommand is a pure function of its flags (one
//! 64-bit seed drives all randomness), writes artifacts atomically, and
//! exits 0 on success, 2 on invalid input, 3 on a blown simplex budget.

mod config;
mod output;
mod verify;

use anyhow::Context;
use clap::{Parser, Subcommand};
use phdim_core::dimension::{
    arcs_experiment, estimate_box_dimension, estimate_ph_dimension, tail_exponent_pair,
};
use phdim_core::filtration::{
    alpha_filtration_2d, cech_filtration, rips_filtration, ComplexKind,
};
use phdim_core::generators::{generate, Family, FamilyParams, Generated, GeneratorSpec};
use phdim_core::io::{
    barcode_to_csv, barcode_to_json, cloud_from_csv, cloud_to_csv, metric_to_csv,
    FORMAT_VERSION,
};
use phdim_core::metric::{distance_matrix, FiniteMetricSpace, PointCloud};
use phdim_core::mst::{e_alpha_mst, estimate_mst_dimension, minimum_spanning_tree};
use phdim_core::persistence::persistent_homology;

use config::{DimensionMethod, ExperimentConfig};
use output::{emit, read_to_string};

#[derive(Parser)]
#[command(name = "phdim", version = version_string(), about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn version_string() -> String {
    format!("{} (format version {})", env!("CARGO_PKG_VERSION"), FORMAT_VERSION)
}

#[derive(Subcommand)]
enum Command {
    /// Sample a point family (or abstract metric space) to CSV.
    Generate(GenerateArgs),
    /// Compute a persistence barcode for a generated family or a CSV cloud.
    Barcode(BarcodeArgs),
    /// Estimate a dimension (box counting, PH growth, MST growth, tail).
    Dimension(DimensionArgs),
    /// Minimum spanning tree of a generated family or CSV cloud.
    Mst(MstArgs),
    /// The two-arcs growth experiment.
    Arcs(ArcsArgs),
    /// Exact interval counts of the two-level bipartite metric family.
    Bipartite(BipartiteArgs),
    /// Search a lattice configuration for a stable degree-1 class.
    Stable(StableArgs),
    /// Largest grid subset with no high-persistence triangle.
    Xi(XiArgs),
    /// Check the closed-form corner minima of the TP functions.
    TpVerify(TpVerifyArgs),
    /// Re-run an experiment from a saved JSON config.
    Run(RunArgs),
    /// Run the built-in desk-scale verification suite.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct FamilyArgs {
    /// Point family: sierpinski, cantor_interval, arcs, uniform_cube,
    /// segment, lattice_subset, bipartite, bipartite_union.
    #[arg(long)]
    family: Family,
    /// Number of points to sample (ignored by the bipartite families).
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ambient dimension for uniform_cube / lattice_subset.
    #[arg(long, default_value_t = 2)]
    ambient_dim: usize,
    /// Cantor approximation depth.
    #[arg(long, default_value_t = 10)]
    levels: u32,
    /// Lattice width N for lattice_subset.
    #[arg(long, default_value_t = 10)]
    lattice_width: u64,
    /// Inclusion probability for lattice_subset.
    #[arg(long, default_value_t = 1.0)]
    density: f64,
    /// Level for bipartite, or maximum level for bipartite_union.
    #[arg(long, default_value_t = 1)]
    level: u32,
}

impl FamilyArgs {
    fn spec(&self) -> GeneratorSpec {
        GeneratorSpec {
            family: self.family,
            n: self.n,
            seed: self.seed,
            params: FamilyParams {
                ambient_dim: self.ambient_dim,
                levels: self.levels,
                lattice_width: self.lattice_width,
                density: self.density,
                level: self.level,
            },
        }
    }
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct BarcodeArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Read the point cloud from a CSV file instead of generating one.
    #[arg(long, conflicts_with = "family")]
    input: Option<std::path::PathBuf>,
    /// Complex kind: rips, cech, or alpha.
    #[arg(long, default_value = "cech")]
    complex: ComplexKind,
    /// Highest homology degree to report (simplices up to degree+1).
    #[arg(long, default_value_t = 1)]
    degree: usize,
    /// Filtration scale cutoff (defaults to the diameter).
    #[arg(long)]
    scale: Option<f64>,
    /// Emit CSV rows instead of the JSON document.
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct DimensionArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Estimator: box, ph, mst, or ph-complexity.
    #[arg(long)]
    method: DimensionMethod,
    /// Homology degree for the ph / ph-complexity methods.
    #[arg(long, default_value_t = 1)]
    degree: usize,
    #[arg(long, default_value = "alpha")]
    complex: ComplexKind,
    /// Sample sizes for the growth-based estimators.
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000,4000")]
    sizes: Vec<usize>,
    /// Grid widths for the box estimator.
    #[arg(long, value_delimiter = ',', default_value = "0.125,0.0625,0.03125,0.015625,0.0078125")]
    scales: Vec<f64>,
    /// Exponents for the growth-based estimators.
    #[arg(long, value_delimiter = ',', default_value = "0.4,0.6,0.8,1.0,1.2")]
    alpha_grid: Vec<f64>,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Also write the per-scale fit table as CSV.
    #[arg(long)]
    diagnostics_out: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct MstArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long, conflicts_with = "family")]
    input: Option<std::path::PathBuf>,
    /// Emit the edge list as CSV instead of the JSON summary.
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct ArcsArgs {
    #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
    sizes: Vec<usize>,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct BipartiteArgs {
    #[arg(long)]
    level: u32,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct StableArgs {
    /// CSV of integer lattice points, one point per row.
    #[arg(long)]
    input: std::path::PathBuf,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct XiArgs {
    /// Grid side length N.
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 2)]
    m: u32,
    /// Persistence threshold (defaults to sqrt(m) + 1).
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Also write the witness subset as lattice CSV.
    #[arg(long)]
    witness_out: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct TpVerifyArgs {
    #[arg(long)]
    n: f64,
    #[arg(long, default_value_t = 3.0)]
    c: f64,
    #[arg(long, default_value_t = 64)]
    grid_steps: usize,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON experiment config produced by `--dump-config` or by hand.
    #[arg(long)]
    config: std::path::PathBuf,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Run only the checks whose name contains this substring.
    #[arg(long)]
    filter: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            exit_code_for(&err)
        }
    };
    std::process::exit(code);
}

/// 2 for anything the user can fix in the invocation, 3 for a blown budget,
/// 1 for environmental failures (I/O and the like).
fn exit_code_for(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<phdim_core::Error>() {
        Some(phdim_core::Error::BudgetExceeded { .. }) => 3,
        Some(phdim_core::Error::Io(_)) | None => match err.downcast_ref::<std::io::Error>() {
            Some(_) => 1,
            None => 2,
        },
        Some(_) => 2,
    }
}

fn dispatch(command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Generate(args) => cmd_generate(args),
        Command::Barcode(args) => cmd_barcode(args),
        Command::Dimension(args) => cmd_dimension(args),
        Command::Mst(args) => cmd_mst(args),
        Command::Arcs(args) => cmd_arcs(args),
        Command::Bipartite(args) => cmd_bipartite(args),
        Command::Stable(args) => cmd_stable(args),
        Command::Xi(args) => cmd_xi(args),
        Command::TpVerify(args) => cmd_tp_verify(args),
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => Ok(verify::run(args.filter.as_deref())),
    }
}

fn cmd_generate(args: GenerateArgs) -> anyhow::Result<i32> {
    let text = match generate(&args.family.spec())? {
        Generated::Cloud(pc) => cloud_to_csv(&pc),
        Generated::Metric(m) => metric_to_csv(&m),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

fn load_cloud(path: &std::path::Path) -> anyhow::Result<PointCloud> {
    let text = read_to_string(path)?;
    Ok(cloud_from_csv(&text).with_context(|| format!("reading {}", path.display()))?)
}

enum Space {
    Cloud(PointCloud),
    Metric(FiniteMetricSpace),
}

fn resolve_space(
    input: Option<&std::path::Path>,
    family: &FamilyArgs,
) -> anyhow::Result<Space> {
    Ok(match input {
        Some(path) => Space::Cloud(load_cloud(path)?),
        None => match generate(&family.spec())? {
            Generated::Cloud(pc) => Space::Cloud(pc),
            Generated::Metric(m) => Space::Metric(m),
        },
    })
}

fn cmd_barcode(args: BarcodeArgs) -> anyhow::Result<i32> {
    let max_dim = args.degree + 1;
    let filtration = match resolve_space(args.input.as_deref(), &args.family)? {
        Space::Cloud(pc) => {
            let scale = args.scale.unwrap_or_else(|| pc.diameter());
            match args.complex {
                ComplexKind::Rips => rips_filtration(&distance_matrix(&pc), max_dim, scale)?,
                ComplexKind::Cech => cech_filtration(&pc, max_dim, scale)?,
                ComplexKind::Alpha2d => alpha_filtration_2d(&pc)?,
            }
        }
        Space::Metric(m) => {
            anyhow::ensure!(
                args.complex == ComplexKind::Rips,
                phdim_core::Error::InvalidInput(
                    "abstract metric spaces only support the rips complex".into()
                )
            );
            let scale = args.scale.unwrap_or_else(|| m.diameter());
            rips_filtration(&m, max_dim, scale)?
        }
    };
    let barcode = persistent_homology(&filtration, true, false)?;
    let text =
        if args.csv { barcode_to_csv(&barcode) } else { barcode_to_json(&barcode) };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_dimension(args: DimensionArgs) -> anyhow::Result<i32> {
    let spec = args.family.spec();
    let estimate = match args.method {
        DimensionMethod::Box => {
            let pc = match generate(&spec)? {
                Generated::Cloud(pc) => pc,
                Generated::Metric(_) => anyhow::bail!(phdim_core::Error::InvalidInput(
                    "box counting needs an embedded point cloud".into()
                )),
            };
            estimate_box_dimension(&pc, &args.scales)?
        }
        DimensionMethod::Ph => estimate_ph_dimension(
            &spec,
            args.degree,
            args.complex,
            &args.sizes,
            &args.alpha_grid,
        )?,
        DimensionMethod::Mst => estimate_mst_dimension(&spec, &args.sizes, &args.alpha_grid)?,
        DimensionMethod::PhComplexity => {
            let n = *args.sizes.iter().max().ok_or_else(|| {
                phdim_core::Error::InvalidInput("need at least one size".into())
            })?;
            let mut densest = spec.clone();
            densest.n = n;
            return cmd_ph_complexity(&densest, &args);
        }
    };
    let doc = serde_json::json!({
        "format_version": FORMAT_VERSION,
        "method": args.method.to_string(),
        "degree": estimate.degree,
        "estimate": estimate.estimate,
        "window": estimate.window,
        "degenerate": estimate.degenerate,
    });
    emit(args.out.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
    if let Some(path) = &args.diagnostics_out {
        let mut csv = String::from("x,statistic,derived\n");
        for (x, s, d) in &estimate.diagnostics {
            csv.push_str(&format!("{x},{s},{d}\n"));
        }
        emit(Some(path), &csv)?;
    }
    Ok(0)
}

/// Tail-exponent reading of the densest sample's barcode.
fn cmd_ph_complexity(spec: &GeneratorSpec, args: &DimensionArgs) -> anyhow::Result<i32> {
    let pc = match generate(spec)? {
        Generated::Cloud(pc) => pc,
        Generated::Metric(_) => anyhow::bail!(phdim_core::Error::InvalidInput(
            "ph-complexity needs an embedded point cloud".into()
        )),
    };
    let max_dim = args.degree + 1;
    let scale = pc.diameter();
    let filtration = match args.complex {
        ComplexKind::Rips => rips_filtration(&distance_matrix(&pc), max_dim, scale)?,
        ComplexKind::Cech => cech_filtration(&pc, max_dim, scale)?,
        ComplexKind::Alpha2d => alpha_filtration_2d(&pc)?,
    };
    let barcode = persistent_homology(&filtration, true, false)?;
    let lengths: Vec<f64> = barcode
        .finite_in_degree(args.degree)
        .iter()
        .map(|iv| iv.length())
        .filter(|&l| l > 0.0)
        .collect();
    let tail = tail_exponent_pair(&lengths)?;
    let doc = serde_json::json!({
        "format_version": FORMAT_VERSION,
        "method": "ph-complexity",
        "degree": args.degree,
        "n": spec.n,
        "sum_exponent": tail.sum_exponent,
        "count_exponent": tail.count_exponent,
        "degenerate": tail.degenerate,
    });
    emit(args.out.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
    Ok(0)
}

fn cmd_mst(args: MstArgs) -> anyhow::Result<i32> {
    let fms = match resolve_space(args.input.as_deref(), &args.family)? {
        Space::Cloud(pc) => distance_matrix(&pc),
        Space::Metric(m) => m,
    };
    let tree = minimum_spanning_tree(&fms);
    let text = if args.csv {
        let mut csv = String::from("u,v,length\n");
        for &(u, v, len) in &tree.edges {
            csv.push_str(&format!("{u},{v},{len}\n"));
        }
        csv
    } else {
        serde_json::to_string_pretty(&serde_json::json!({
            "format_version": FORMAT_VERSION,
            "n": tree.n,
            "edges": tree.edges.len(),
            "total_length": tree.total_length(),
            "e_alpha_1": e_alpha_mst(&tree, 1.0),
        }))?
    };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_arcs(args: ArcsArgs) -> anyhow::Result<i32> {
    let report = arcs_experiment(&args.sizes)?;
    let doc = serde_json::json!({
        "format_version": FORMAT_VERSION,
        "per_size": report
            .per_size
            .iter()
            .map(|&(n, count, e11)| serde_json::json!({"n": n, "count": count, "e11": e11}))
            .collect::<Vec<_>>(),
        "count_slope": report.count_slope,
        "e11_ratio": report.e11_ratio,
    });
    emit(args.out.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
    Ok(0)
}

fn cmd_bipartite(args: BipartiteArgs) -> anyhow::Result<i32> {
    let fms = phdim_core::generators::gen_bipartite_space(args.level)?;
    let filtration = rips_filtration(&fms, 2, fms.diameter() + 1.0)?;
    let barcode = persistent_homology(&filtration, true, false)?;
    let intervals = barcode.finite_in_degree(1);
    let interval = intervals.first().map(|iv| (iv.birth, iv.death));
    let doc = serde_json::json!({
        "format_version": FORMAT_VERSION,
        "level": args.level,
        "count": intervals.len(),
        "interval": interval,
    });
    emit(args.out.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
    Ok(0)
}

fn parse_lattice_csv(text: &str) -> anyhow::Result<Vec<Vec<i64>>> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<i64>, _> = line
            .split(',')
            .map(|tok| {
                tok.trim().parse::<i64>().map_err(|e| phdim_core::Error::Parse {
                    line: lineno + 1,
                    message: format!("bad lattice coordinate `{}`: {e}", tok.trim()),
                })
            })
            .collect();
        points.push(row?);
    }
    Ok(points)
}

fn cmd_stable(args: StableArgs) -> anyhow::Result<i32> {
    let points = parse_lattice_csv(&read_to_string(&args.input)?)?;
    let certificate = phdim_core::extremal::stable_class_certificate(&points)?;
    let doc = match &certificate {
        Some(cert) => serde_json::json!({
            "format_version": FORMAT_VERSION,
            "stable": true,
            "size": cert.size,
            "witness": cert.witness,
        }),
        None => serde_json::json!({
            "format_version": FORMAT_VERSION,
            "stable": false,
        }),
    };
    emit(args.out.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
    Ok(0)
}

fn cmd_xi(args: XiArgs) -> anyhow::Result<i32> {
    let result = phdim_core::extremal::xi_search(args.n, args.m, args.threshold)?;
    let doc = serde_json::json!({
        "format_version": FORMAT_VERSION,
        "n": args.n,
        "m": args.m,
        "size": result.size,
        "exact": result.exact,
    });
    emit(args.out.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
    if let Some(path) = &args.witness_out {
        let mut csv = String::new();
        for &(x, y) in &result.witness {
            csv.push_str(&format!("{x},{y}\n"));
        }
        emit(Some(path), &csv)?;
    }
    Ok(0)
}

fn cmd_tp_verify(args: TpVerifyArgs) -> anyhow::Result<i32> {
    let report =
        phdim_core::extremal::verify_tp_minima(args.n, args.c, args.grid_steps)?;
    let doc = serde_json::json!({
        "format_version": FORMAT_VERSION,
        "n": args.n,
        "c": args.c,
        "pass": report.pass,
        "tp1": {
            "sampled_min": report.tp1_sampled_min,
            "corner_value": report.tp1_corner_value,
            "corner": report.tp1_corner,
        },
        "tp2": {
            "sampled_min": report.tp2_sampled_min,
            "corner_value": report.tp2_corner_value,
            "corner": report.tp2_corner,
        },
    });
    emit(args.out.as_deref(), &serde_json::to_string_pretty(&doc)?)?;
    Ok(if report.pass { 0 } else { 2 })
}

fn cmd_run(args: RunArgs) -> anyhow::Result<i32> {
    let text = read_to_string(&args.config)?;
    let config: ExperimentConfig = serde_json::from_str(&text)
        .map_err(|e| phdim_core::Error::Parse { line: e.line(), message: e.to_string() })?;
    dispatch(command_from_config(config))
}

fn family_args(spec: GeneratorSpec) -> FamilyArgs {
    FamilyArgs {
        family: spec.family,
        n: spec.n,
        seed: spec.seed,
        ambient_dim: spec.params.ambient_dim,
        levels: spec.params.levels,
        lattice_width: spec.params.lattice_width,
        density: spec.params.density,
        level: spec.params.level,
    }
}

fn command_from_config(config: ExperimentConfig) -> Command {
    match config {
        ExperimentConfig::Generate { spec, out } => {
            Command::Generate(GenerateArgs { family: family_args(spec), out })
        }
        ExperimentConfig::Barcode { spec, input, complex, degree, scale, csv, out } => {
            Command::Barcode(BarcodeArgs {
                family: family_args(spec),
                input,
                complex,
                degree,
                scale,
                csv,
                out,
            })
        }
        ExperimentConfig::Dimension {
            spec,
            method,
            degree,
            complex,
            sizes,
            scales,
            alpha_grid,
            out,
            diagnostics_out,
        } => Command::Dimension(DimensionArgs {
            family: family_args(spec),
            method,
            degree,
            complex,
            sizes,
            scales,
            alpha_grid,
            out,
            diagnostics_out,
        }),
        ExperimentConfig::Mst { spec, input, csv, out } => {
            Command::Mst(MstArgs { family: family_args(spec), input, csv, out })
        }
        ExperimentConfig::Arcs { sizes, out } => Command::Arcs(ArcsArgs { sizes, out }),
        ExperimentConfig::Bipartite { level, out } => {
            Command::Bipartite(BipartiteArgs { level, out })
        }
        ExperimentConfig::Stable { input, out } => Command::Stable(StableArgs { input, out }),
        ExperimentConfig::Xi { n, m, threshold, out, witness_out } => {
            Command::Xi(XiArgs { n, m, threshold, out, witness_out })
        }
        ExperimentConfig::TpVerify { n, c, grid_steps, out } => {
            Command::TpVerify(TpVerifyArgs { n, c, grid_steps, out })
        }
    }
}
