use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use voronautoma::io::{load_points, load_state, load_tessellation, save_tessellation};
use voronautoma::metrics::{configs_for, eta_grid, sweep_records, sweep_runs};
use voronautoma::projection::DEFAULT_EXCITATION_RADIUS;
use voronautoma::{
    build_tessellation, cells_in_mask, exact_voronoi, frame_name, history_to_text, interior_mask,
    mean_circumdiameter, neighborhood_histogram, nu, pack_points, render_overlay, render_state,
    render_svg, rho, run_to_fixpoint, seed_from_points, seed_from_raster, Affine, AutomatonConfig,
    AutomatonState, CellState, NeighborhoodHistogram, PlanarSet, Raster, ReferenceDiagram,
    RenderStyle, Seed, SweepRecord, Tessellation,
};

use crate::manifest::*;

const FRAME_BATCH: usize = 32;

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn ensure_dir(dir: &Path) -> Result<()> {
    if dir.as_os_str().is_empty() {
        return Ok(());
    }
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn parent_of(file: &Path) -> PathBuf {
    match file.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    }
}

fn echo(m: &Manifest, dir: &Path) -> Result<()> {
    let name = m.command.as_deref().unwrap_or("voronautoma");
    m.save(&dir.join(format!("{name}.manifest.json")))
}

fn pack(m: &mut Manifest) -> Result<Tessellation> {
    let radius = *m.radius.get_or_insert(DEFAULT_RADIUS);
    let spacing = *m.spacing.get_or_insert(DEFAULT_SPACING);
    let count = *m.count.get_or_insert(DEFAULT_COUNT);
    let seed = *m.seed.get_or_insert(DEFAULT_SEED);
    let set = pack_points(radius, spacing, count, seed)?;
    let mut t = build_tessellation(&set)?;
    t.set_seed(Some(seed));
    Ok(t)
}

fn tessellation(m: &mut Manifest) -> Result<Tessellation> {
    match &m.tess {
        Some(path) => {
            if m.radius.is_some() || m.spacing.is_some() || m.count.is_some() || m.seed.is_some() {
                log::warn!("packing parameters are ignored when a tessellation file is given");
            }
            load_tessellation(path).with_context(|| format!("loading tessellation {}", path.display()))
        }
        None => pack(m),
    }
}

enum Source {
    Points(PlanarSet),
    Raster {
        image: Raster,
        placement: Affine,
        interior: Option<Raster>,
    },
}

fn source(m: &mut Manifest, t: &Tessellation) -> Result<(Source, Seed)> {
    let mask = m.mask_interior.unwrap_or(false);
    match (&m.points, &m.raster) {
        (Some(_), Some(_)) => bail!("give either --points or --raster, not both"),
        (None, None) => bail!("no data to seed from: give --points or --raster"),
        (Some(path), None) => {
            if mask {
                bail!("--mask-interior needs a raster");
            }
            let data = load_points(path, t.domain()).with_context(|| format!("loading points {}", path.display()))?;
            let radius = *m.excitation_radius.get_or_insert(DEFAULT_EXCITATION_RADIUS);
            let seed = seed_from_points(t, &data, radius)?;
            Ok((Source::Points(data), seed))
        }
        (None, Some(path)) => {
            let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            let image = Raster::from_pbm(&bytes).with_context(|| format!("decoding {}", path.display()))?;
            let placement = Affine::fit(image.width(), image.height(), t.domain());
            let seed = seed_from_raster(t, &image, &placement);
            let interior = mask.then(|| interior_mask(&image));
            Ok((Source::Raster { image, placement, interior }, seed))
        }
    }
}

fn rule(m: &mut Manifest, eta: f64) -> Result<AutomatonConfig> {
    let excitation = *m.excitation.get_or_insert(Excitation::First);
    let cfg = AutomatonConfig::new(eta)?.with_excitation(excitation.into());
    Ok(match m.max_steps {
        Some(n) => cfg.with_max_steps(n),
        None => cfg,
    })
}

fn style(m: &mut Manifest) -> RenderStyle {
    RenderStyle {
        size: *m.size.get_or_insert(DEFAULT_SIZE),
        ..RenderStyle::default()
    }
}

fn tolerance(m: &mut Manifest, t: &Tessellation) -> Result<f64> {
    let tol = *m.tolerance.get_or_insert_with(|| mean_circumdiameter(t));
    if !(tol.is_finite() && tol >= 0.0) {
        bail!("tolerance must be a finite non-negative distance, got {tol}");
    }
    Ok(tol)
}

pub fn generate(mut m: Manifest) -> Result<()> {
    if m.tess.is_some() {
        log::warn!("generate always packs fresh points; ignoring the tessellation path");
        m.tess = None;
    }
    let t = pack(&mut m)?;
    let out = m.output.get_or_insert_with(|| "tess.json".into()).clone();
    let dir = parent_of(&out);
    ensure_dir(&dir)?;
    save_tessellation(&t, &out)?;
    let hist = neighborhood_histogram(&t);
    let mut csv = Vec::new();
    hist.write_csv(&mut csv)?;
    write(&out.with_extension("histogram.csv"), csv)?;
    echo(&m, &dir)?;
    println!("{} cells written to {}", t.len(), out.display());
    print_histogram_summary(&hist);
    Ok(())
}

pub fn histogram(mut m: Manifest) -> Result<()> {
    let t = tessellation(&mut m)?;
    let out = m.output.get_or_insert_with(|| "histogram.csv".into()).clone();
    let dir = parent_of(&out);
    ensure_dir(&dir)?;
    let hist = neighborhood_histogram(&t);
    let mut csv = Vec::new();
    hist.write_csv(&mut csv)?;
    write(&out, csv)?;
    echo(&m, &dir)?;
    print_histogram_summary(&hist);
    Ok(())
}

fn print_histogram_summary(hist: &NeighborhoodHistogram) {
    if let Some((mode, fraction)) = NeighborhoodHistogram::mode(&hist.first_order) {
        println!("first-order mode {mode} ({:.1}% of cells)", 100.0 * fraction);
    }
    println!("most frequent |u|: {:?}", NeighborhoodHistogram::top(&hist.u_total, 3));
}

/// Renders and writes frames in batches so memory stays bounded on long runs.
fn write_frames(t: &Tessellation, history: &[Vec<CellState>], style: &RenderStyle, dir: &Path) -> Result<()> {
    ensure_dir(dir)?;
    for (b, batch) in history.chunks(FRAME_BATCH).enumerate() {
        let images: Vec<Vec<u8>> = batch
            .par_iter()
            .enumerate()
            .map(|(k, states)| {
                let s = AutomatonState {
                    states: states.clone(),
                    t: (b * FRAME_BATCH + k) as u64,
                };
                render_state(t, &s, style).to_ppm()
            })
            .collect();
        for (k, bytes) in images.iter().enumerate() {
            write(&dir.join(frame_name(b * FRAME_BATCH + k)), bytes)?;
        }
    }
    Ok(())
}

pub fn run(mut m: Manifest) -> Result<()> {
    let t = tessellation(&mut m)?;
    let (source, seed) = source(&mut m, &t)?;
    let eta = *m.eta.get_or_insert(DEFAULT_ETA);
    let cfg = rule(&mut m, eta)?;
    let style = style(&mut m);
    let frames = m.frames.unwrap_or(false);
    let keep_history = m.history.unwrap_or(false);
    let tol = match source {
        Source::Points(_) => Some(tolerance(&mut m, &t)?),
        Source::Raster { .. } => None,
    };
    let dir = m.output.get_or_insert_with(|| "out".into()).clone();
    ensure_dir(&dir)?;

    let run = run_to_fixpoint(&t, &seed.state, &cfg, frames || keep_history);
    if !run.reached_fixpoint {
        log::warn!("no fixpoint within {} steps", cfg.max_steps_for(t.len()));
    }
    write(&dir.join("final.state"), run.final_state.to_line())?;
    if let Some(history) = &run.history {
        if keep_history {
            write(&dir.join("history.txt"), history_to_text(history))?;
        }
        if frames {
            write_frames(&t, history, &style, &dir.join("frames"))?;
        }
    }
    let precipitate = run.final_state.count(CellState::Precipitate);
    println!(
        "{} steps, fixpoint {}, {precipitate} precipitate cells",
        run.steps,
        if run.reached_fixpoint { "reached" } else { "not reached" }
    );

    match source {
        Source::Points(data) => {
            let tol = tol.unwrap_or_default();
            let reference = exact_voronoi(&data)?;
            let baseline = if eta == NU_BASELINE_ETA {
                run.final_state.clone()
            } else {
                let base_cfg = rule(&mut m, NU_BASELINE_ETA)?;
                run_to_fixpoint(&t, &seed.state, &base_cfg, false).final_state
            };
            let record = SweepRecord {
                eta,
                rho: rho(&run.final_state, &t, &reference, tol),
                nu: nu(&run.final_state, &baseline),
                precipitate_count: precipitate,
                steps: run.steps,
                reached_fixpoint: run.reached_fixpoint,
                seed: t.meta().seed,
            };
            let mut csv = Vec::new();
            SweepRecord::write_csv([&record], &mut csv)?;
            write(&dir.join("metrics.csv"), csv)?;
            let mut edges = Vec::new();
            reference.write_csv(&mut edges)?;
            write(&dir.join("reference.csv"), edges)?;
            write(&dir.join("final.ppm"), render_state(&t, &run.final_state, &style).to_ppm())?;
            write(
                &dir.join("overlay.ppm"),
                render_overlay(&t, &run.final_state, &reference, &style).to_ppm(),
            )?;
            if m.svg.unwrap_or(false) {
                write(&dir.join("final.svg"), render_svg(&t, &run.final_state, Some(&reference), &style))?;
            }
            println!("rho {:.4} at tolerance {tol:.4}", record.rho);
        }
        Source::Raster { image, placement, interior } => {
            let shown = match &interior {
                Some(mask) => {
                    let inside = cells_in_mask(&t, mask, &placement);
                    let masked = mask_state(&run.final_state, &inside);
                    let kept = masked.count(CellState::Precipitate);
                    let cells = inside.iter().filter(|&&b| b).count();
                    write(
                        &dir.join("skeleton.csv"),
                        format!(
                            "interior_cells,interior_precipitate,precipitate_count,steps\n{cells},{kept},{precipitate},{}\n",
                            run.steps
                        ),
                    )?;
                    println!("{kept} precipitate cells inside the contour");
                    masked
                }
                None => run.final_state.clone(),
            };
            write(&dir.join("final.ppm"), render_state(&t, &shown, &style).to_ppm())?;
            if m.svg.unwrap_or(false) {
                write(&dir.join("final.svg"), render_svg(&t, &shown, None, &style))?;
            }
            log::debug!("raster {}x{} seeded {} cells", image.width(), image.height(), seed.state.count(CellState::Excited));
        }
    }
    echo(&m, &dir)
}

/// Cells outside `inside` are shown as resting.
fn mask_state(s: &AutomatonState, inside: &[bool]) -> AutomatonState {
    AutomatonState {
        states: s
            .states
            .iter()
            .zip(inside)
            .map(|(&st, &keep)| if keep { st } else { CellState::Resting })
            .collect(),
        t: s.t,
    }
}

pub fn sweep(mut m: Manifest) -> Result<()> {
    let t = tessellation(&mut m)?;
    let (source, seed) = source(&mut m, &t)?;
    let Source::Points(data) = source else {
        bail!("sweep scores against the exact diagram of a point set and needs --points");
    };
    let from = *m.eta_from.get_or_insert(0.2);
    let to = *m.eta_to.get_or_insert(0.525);
    let step = *m.eta_step.get_or_insert(0.025);
    let etas = eta_grid(from, to, step)?;
    let excitation = *m.excitation.get_or_insert(Excitation::First);
    let mut configs = configs_for(&etas, excitation.into())?;
    if let Some(n) = m.max_steps {
        configs = configs.into_iter().map(|c| c.with_max_steps(n)).collect();
    }
    let tol = tolerance(&mut m, &t)?;
    let render = m.render.unwrap_or(false);
    let svg = m.svg.unwrap_or(false);
    let style = style(&mut m);
    let dir = m.output.get_or_insert_with(|| "sweep".into()).clone();
    ensure_dir(&dir)?;

    let reference = exact_voronoi(&data)?;
    let runs = sweep_runs(&t, &seed.state, &configs)?;
    let records = sweep_records(&t, &runs, &configs, &reference, tol);
    let mut csv = Vec::new();
    SweepRecord::write_csv(&records, &mut csv)?;
    write(&dir.join("sweep.csv"), csv)?;
    if render || svg {
        write_sweep_images(&t, &runs, &etas, &reference, &style, &dir, render, svg)?;
    }
    for r in records.iter().filter(|r| !r.reached_fixpoint) {
        log::warn!("eta {} stopped before a fixpoint", r.eta);
    }
    if let Some(best) = records.iter().max_by(|a, b| a.rho.total_cmp(&b.rho).then(b.eta.total_cmp(&a.eta))) {
        println!("{} thresholds, best rho {:.4} at eta {}", records.len(), best.rho, best.eta);
    }
    echo(&m, &dir)
}

#[allow(clippy::too_many_arguments)]
fn write_sweep_images(
    t: &Tessellation,
    runs: &[voronautoma::RunResult],
    etas: &[f64],
    reference: &ReferenceDiagram,
    style: &RenderStyle,
    dir: &Path,
    ppm: bool,
    svg: bool,
) -> Result<()> {
    let images: Vec<(Option<Vec<u8>>, Option<String>)> = runs
        .par_iter()
        .map(|run| {
            (
                ppm.then(|| render_state(t, &run.final_state, style).to_ppm()),
                svg.then(|| render_svg(t, &run.final_state, Some(reference), style)),
            )
        })
        .collect();
    for ((raster, vector), eta) in images.iter().zip(etas) {
        if let Some(bytes) = raster {
            write(&dir.join(format!("eta_{eta:.3}.ppm")), bytes)?;
        }
        if let Some(text) = vector {
            write(&dir.join(format!("eta_{eta:.3}.svg")), text)?;
        }
    }
    Ok(())
}

pub fn render(mut m: Manifest) -> Result<()> {
    let Some(tess) = m.tess.clone() else {
        bail!("render needs --tess");
    };
    let Some(state_path) = m.state.clone() else {
        bail!("render needs --state");
    };
    let t = load_tessellation(&tess).with_context(|| format!("loading tessellation {}", tess.display()))?;
    let state = load_state(&state_path).with_context(|| format!("loading state {}", state_path.display()))?;
    state.check_against(&t)?;
    let reference = match &m.points {
        Some(path) => Some(exact_voronoi(&load_points(path, t.domain())?)?),
        None => None,
    };
    let style = style(&mut m);
    let out = m.output.get_or_insert_with(|| "render.ppm".into()).clone();
    let dir = parent_of(&out);
    ensure_dir(&dir)?;
    let ext = out
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    if ext == "svg" {
        write(&out, render_svg(&t, &state, reference.as_ref(), &style))?;
    } else {
        let img = match &reference {
            Some(r) => render_overlay(&t, &state, r, &style),
            None => render_state(&t, &state, &style),
        };
        write(&out, if ext == "pgm" { img.to_pgm() } else { img.to_ppm() })?;
    }
    echo(&m, &dir)
}
