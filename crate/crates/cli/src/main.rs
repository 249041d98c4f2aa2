use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

mod commands;
mod manifest;

use manifest::{Excitation, Manifest};

/// Voronoi diagrams and skeletons from excitation waves on a random
/// Voronoi automaton.
#[derive(Debug, Parser)]
#[command(name = "voronautoma", version, about)]
struct Cli {
    /// JSON file with the same keys as an echoed manifest. Flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads for runs and sweeps.
    #[arg(long, global = true, env = "VORONAUTOMA_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pack points in a disc and write the tessellation plus neighbor histogram.
    Generate(GenerateArgs),
    /// Seed a tessellation from data and run the automaton to its fixpoint.
    Run(RunArgs),
    /// Run once per threshold on a grid and tabulate rho and nu.
    Sweep(SweepArgs),
    /// Draw a saved state, optionally with the exact diagram of a point set.
    Render(RenderArgs),
    /// Neighborhood size distribution of a tessellation.
    Histogram(HistogramArgs),
}

#[derive(Debug, Args)]
struct PackArgs {
    /// Disc radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Minimum distance between generators.
    #[arg(long)]
    spacing: Option<f64>,
    /// Number of generators to place.
    #[arg(long)]
    count: Option<usize>,
    /// Packing seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct SourceArgs {
    /// Tessellation JSON; packed from the packing flags when absent.
    #[arg(long)]
    tess: Option<PathBuf>,
    #[command(flatten)]
    pack: PackArgs,
    /// Data points as CSV (x,y) or planar-set JSON.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Data image as PBM; set pixels excite the cells under them.
    #[arg(long)]
    raster: Option<PathBuf>,
    /// Cells whose generator lies closer than this to a data point start excited.
    #[arg(long)]
    excitation_radius: Option<f64>,
    /// Score and draw only precipitate inside the raster's closed contours.
    #[arg(long)]
    mask_interior: bool,
}

#[derive(Debug, Args)]
struct RuleArgs {
    /// Neighborhood that passes on excitation.
    #[arg(long, value_enum)]
    excitation: Option<Excitation>,
    /// Step budget per run; four times the cell count by default.
    #[arg(long)]
    max_steps: Option<usize>,
    /// Distance from the exact diagram that counts as on it; mean cell
    /// circumdiameter by default.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    pack: PackArgs,
    /// Tessellation JSON to write.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    rule: RuleArgs,
    /// Precipitation threshold.
    #[arg(long)]
    eta: Option<f64>,
    /// Write one PPM per step under frames/.
    #[arg(long)]
    frames: bool,
    /// Write every state as one line of history.txt.
    #[arg(long)]
    history: bool,
    /// Also write SVG renders.
    #[arg(long)]
    svg: bool,
    /// Image side in pixels.
    #[arg(long)]
    size: Option<usize>,
    /// Output directory.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    rule: RuleArgs,
    #[arg(long)]
    eta_from: Option<f64>,
    #[arg(long)]
    eta_to: Option<f64>,
    #[arg(long)]
    eta_step: Option<f64>,
    /// Write one image per threshold.
    #[arg(long)]
    render: bool,
    /// Also write SVG renders.
    #[arg(long)]
    svg: bool,
    /// Image side in pixels.
    #[arg(long)]
    size: Option<usize>,
    /// Output directory.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RenderArgs {
    /// Tessellation JSON.
    #[arg(long)]
    tess: Option<PathBuf>,
    /// State file; the last line is drawn.
    #[arg(long)]
    state: Option<PathBuf>,
    /// Point set whose exact diagram is drawn on top.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Image side in pixels.
    #[arg(long)]
    size: Option<usize>,
    /// Image to write; .ppm, .pgm or .svg.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct HistogramArgs {
    /// Tessellation JSON; packed from the packing flags when absent.
    #[arg(long)]
    tess: Option<PathBuf>,
    #[command(flatten)]
    pack: PackArgs,
    /// CSV to write.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn flag(b: bool) -> Option<bool> {
    b.then_some(true)
}

impl PackArgs {
    fn fill(&self, m: &mut Manifest) {
        m.radius = self.radius;
        m.spacing = self.spacing;
        m.count = self.count;
        m.seed = self.seed;
    }
}

impl SourceArgs {
    fn fill(&self, m: &mut Manifest) {
        self.pack.fill(m);
        m.tess.clone_from(&self.tess);
        m.points.clone_from(&self.points);
        m.raster.clone_from(&self.raster);
        m.excitation_radius = self.excitation_radius;
        m.mask_interior = flag(self.mask_interior);
    }
}

impl RuleArgs {
    fn fill(&self, m: &mut Manifest) {
        m.excitation = self.excitation;
        m.max_steps = self.max_steps;
        m.tolerance = self.tolerance;
    }
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Run(_) => "run",
            Command::Sweep(_) => "sweep",
            Command::Render(_) => "render",
            Command::Histogram(_) => "histogram",
        }
    }

    fn flags(&self) -> Manifest {
        let mut m = Manifest::default();
        match self {
            Command::Generate(a) => {
                a.pack.fill(&mut m);
                m.output.clone_from(&a.output);
            }
            Command::Run(a) => {
                a.source.fill(&mut m);
                a.rule.fill(&mut m);
                m.eta = a.eta;
                m.frames = flag(a.frames);
                m.history = flag(a.history);
                m.svg = flag(a.svg);
                m.size = a.size;
                m.output.clone_from(&a.output);
            }
            Command::Sweep(a) => {
                a.source.fill(&mut m);
                a.rule.fill(&mut m);
                m.eta_from = a.eta_from;
                m.eta_to = a.eta_to;
                m.eta_step = a.eta_step;
                m.render = flag(a.render);
                m.svg = flag(a.svg);
                m.size = a.size;
                m.output.clone_from(&a.output);
            }
            Command::Render(a) => {
                m.tess.clone_from(&a.tess);
                m.state.clone_from(&a.state);
                m.points.clone_from(&a.points);
                m.size = a.size;
                m.output.clone_from(&a.output);
            }
            Command::Histogram(a) => {
                a.pack.fill(&mut m);
                m.tess.clone_from(&a.tess);
                m.output.clone_from(&a.output);
            }
        }
        m
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<()> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("setting up worker threads")?;
    }
    let name = cli.command.name();
    let mut m = manifest::resolve(cli.command.flags(), cli.config.as_deref())?;
    if let Some(other) = m.command.as_deref().filter(|c| *c != name) {
        log::warn!("config was echoed by `{other}`, applying its keys to `{name}`");
    }
    m.command = Some(name.to_string());
    match cli.command {
        Command::Generate(_) => commands::generate(m),
        Command::Run(_) => commands::run(m),
        Command::Sweep(_) => commands::sweep(m),
        Command::Render(_) => commands::render(m),
        Command::Histogram(_) => commands::histogram(m),
    }
}
