mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tropfactor::amoeba::{self, AmoebaParams};
use tropfactor::pipeline::{gen_instance, preprocess, Config, GenParams, Status};
use tropfactor::plot::{self, PlotKind};
use tropfactor::polynomial::parse_poly_with_tolerance;
use tropfactor::polygon::{inner_normals, NewtonPolygon};
use tropfactor::SparsePoly;

#[derive(Parser)]
#[command(name = "tropfactor", version, about = "Test two bivariate polynomials for a common factor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the staged test on two polynomial files.
    Analyze(AnalyzeArgs),
    /// Generate a random instance.
    Gen(GenArgs),
    /// Draw Newton polygons and normal fans as SVG.
    Plot(PlotArgs),
    /// Draw the sampled amoeba of x/2 + y/5 - 1 as SVG.
    DemoAmoeba(AmoebaArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Polygon,
    Fan,
    Both,
}

#[derive(Args)]
struct Tolerances {
    #[arg(long = "tolerance-rank")]
    rank: Option<f64>,
    #[arg(long = "tolerance-root")]
    root: Option<f64>,
    #[arg(long = "drop-tol")]
    drop: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Tolerances {
    fn config(&self) -> Config {
        let base = Config::default();
        Config {
            rank_tolerance: self.rank.unwrap_or(base.rank_tolerance),
            root_tolerance: self.root.unwrap_or(base.root_tolerance),
            drop_tolerance: self.drop.unwrap_or(base.drop_tolerance),
            seed: self.seed,
            ..base
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    f: PathBuf,
    g: PathBuf,
    #[command(flatten)]
    tolerances: Tolerances,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include per-stage wall-clock timings.
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 5)]
    deg_factor: u32,
    #[arg(long, default_value_t = 10)]
    deg_cofactor: u32,
    /// Independent random polynomials instead of a planted common factor.
    #[arg(long)]
    unplanted: bool,
    #[arg(long, default_value_t = 1.0)]
    sparsity: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Files `<out>_f.poly`, `<out>_g.poly` and `<out>_truth.json` are written.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct PlotArgs {
    f: PathBuf,
    g: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    what: What,
    #[arg(long = "drop-tol")]
    drop: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AmoebaArgs {
    #[arg(long)]
    out: PathBuf,
}

/// A failure that maps to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn read_poly(path: &Path, drop_tolerance: f64) -> Result<SparsePoly, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    parse_poly_with_tolerance(&text, drop_tolerance).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Writes every file only after all contents were produced.
fn write_all(files: &[(PathBuf, String)]) -> Result<(), InputError> {
    for (path, content) in files {
        fs::write(path, content).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn analyze(args: &AnalyzeArgs) -> Result<ExitCode, InputError> {
    let cfg = Config {
        record_timings: args.timings,
        ..args.tolerances.config()
    };
    cfg.validate()?;
    let f = read_poly(&args.f, cfg.drop_tolerance)?;
    let g = read_poly(&args.g, cfg.drop_tolerance)?;
    let cert = preprocess(&f, &g, &cfg)?;
    let body = match args.format {
        Format::Text => report::text(&cert),
        Format::Structured => serde_json::to_string_pretty(&cert)? + "\n",
    };
    match &args.out {
        Some(path) => write_all(&[(path.clone(), body)])?,
        None => print!("{body}"),
    }
    Ok(if cert.status == Status::FactorLikely {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn generate(args: &GenArgs) -> Result<ExitCode, InputError> {
    let inst = gen_instance(GenParams {
        deg_factor: args.deg_factor,
        deg_cofactor: args.deg_cofactor,
        planted: !args.unplanted,
        sparsity: args.sparsity,
        seed: args.seed,
    })?;
    let truth = serde_json::to_string_pretty(&inst.truth)? + "\n";
    write_all(&[
        (with_suffix(&args.out, "_f.poly"), format!("{}\n", inst.f)),
        (with_suffix(&args.out, "_g.poly"), format!("{}\n", inst.g)),
        (with_suffix(&args.out, "_truth.json"), truth),
    ])?;
    Ok(ExitCode::SUCCESS)
}

fn plot_cmd(args: &PlotArgs) -> Result<ExitCode, InputError> {
    let drop = args.drop.unwrap_or(Config::default().drop_tolerance);
    let mut polys = vec![read_poly(&args.f, drop)?];
    if let Some(g) = &args.g {
        polys.push(read_poly(g, drop)?);
    }
    let kind = match args.what {
        What::Polygon => PlotKind::Polygon,
        What::Fan => PlotKind::Fan,
        What::Both => PlotKind::Both,
    };
    let refs: Vec<&SparsePoly> = polys.iter().collect();
    write_all(&[(args.out.clone(), plot::render(&refs, kind))])?;
    Ok(ExitCode::SUCCESS)
}

fn demo_amoeba(args: &AmoebaArgs) -> Result<ExitCode, InputError> {
    let params = AmoebaParams::default();
    let points = amoeba::sample_linear(&params)?;
    let triangle = SparsePoly::from_terms([
        ((1, 0).into(), params.a.into()),
        ((0, 1).into(), params.b.into()),
        ((0, 0).into(), params.c.into()),
    ])?;
    let directions: Vec<(f64, f64)> = inner_normals(&NewtonPolygon::of(&triangle))
        .normals()
        .iter()
        .filter_map(|t| amoeba::tentacle_direction(&points, (-(t.u() as f64), -(t.v() as f64))))
        .collect();
    write_all(&[(args.out.clone(), plot::render_points(&points, &directions))])?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Gen(args) => generate(args),
        Command::Plot(args) => plot_cmd(args),
        Command::DemoAmoeba(args) => demo_amoeba(args),
    };
    match result {
        Ok(code) => code,
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
