//! Scoring precipitate patterns: the on-diagram fraction `rho`, the density
//! `nu` relative to a baseline run, and sweeps over the threshold.

use std::io::Write;

use rayon::prelude::*;

use crate::automaton::{run_to_fixpoint, AutomatonConfig, AutomatonState, CellState, ExcitationNeighborhood, RunResult};
use crate::error::{Error, Result};
use crate::geometry::{polygon, Tessellation};
use crate::reference::ReferenceDiagram;

/// Fraction of precipitate cells whose generator lies within `tolerance`
/// of a reference edge; 0 when nothing precipitated.
pub fn rho(final_state: &AutomatonState, t: &Tessellation, reference: &ReferenceDiagram, tolerance: f64) -> f64 {
    let mut total = 0usize;
    let mut on_diagram = 0usize;
    for cell in final_state.cells_in(CellState::Precipitate) {
        total += 1;
        if reference.distance(t.generator(cell)) <= tolerance {
            on_diagram += 1;
        }
    }
    if total == 0 {
        0.0
    } else {
        on_diagram as f64 / total as f64
    }
}

/// Precipitate count of `current` relative to `baseline`; `None` when the
/// baseline has no precipitate.
pub fn nu(current: &AutomatonState, baseline: &AutomatonState) -> Option<f64> {
    let base = baseline.count(CellState::Precipitate);
    (base > 0).then(|| current.count(CellState::Precipitate) as f64 / base as f64)
}

/// Mean over cells of the diameter of the smallest circle enclosing the
/// cell polygon.
pub fn mean_circumdiameter(t: &Tessellation) -> f64 {
    if t.is_empty() {
        return 0.0;
    }
    let sum: f64 = t.polygons().iter().map(|p| polygon::enclosing_diameter(p)).sum();
    sum / t.len() as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub eta: f64,
    pub rho: f64,
    /// Missing when the baseline run produced no precipitate.
    pub nu: Option<f64>,
    pub precipitate_count: usize,
    pub steps: usize,
    pub reached_fixpoint: bool,
    /// Packing seed of the tessellation, when known.
    pub seed: Option<u64>,
}

impl SweepRecord {
    pub const CSV_HEADER: &'static str = "eta,rho,nu,precipitate_count,steps";

    pub fn csv_row(&self) -> String {
        let nu = self.nu.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{}",
            self.eta, self.rho, nu, self.precipitate_count, self.steps
        )
    }

    pub fn write_csv<'a, W: Write>(records: impl IntoIterator<Item = &'a SweepRecord>, mut out: W) -> Result<()> {
        let io = |e| Error::io("<sweep>", e);
        writeln!(out, "{}", Self::CSV_HEADER).map_err(io)?;
        for r in records {
            writeln!(out, "{}", r.csv_row()).map_err(io)?;
        }
        Ok(())
    }
}

/// Runs the automaton from `seed_state` once per configuration. The first
/// configuration is the `nu` baseline. Runs execute concurrently; records
/// come back in `configs` order.
pub fn sweep_eta(
    t: &Tessellation,
    seed_state: &AutomatonState,
    configs: &[AutomatonConfig],
    reference: &ReferenceDiagram,
    tolerance: f64,
) -> Result<Vec<SweepRecord>> {
    let runs = sweep_runs(t, seed_state, configs)?;
    Ok(sweep_records(t, &runs, configs, reference, tolerance))
}

/// The fixpoint runs behind [`sweep_eta`], in `configs` order.
pub fn sweep_runs(t: &Tessellation, seed_state: &AutomatonState, configs: &[AutomatonConfig]) -> Result<Vec<RunResult>> {
    if configs.is_empty() {
        return Err(Error::InvalidParameter("sweep needs at least one eta".into()));
    }
    seed_state.check_against(t)?;
    Ok(configs
        .par_iter()
        .map(|cfg| run_to_fixpoint(t, seed_state, cfg, false))
        .collect())
}

/// Scores finished runs; `runs[0]` is the `nu` baseline.
pub fn sweep_records(
    t: &Tessellation,
    runs: &[RunResult],
    configs: &[AutomatonConfig],
    reference: &ReferenceDiagram,
    tolerance: f64,
) -> Vec<SweepRecord> {
    let Some(first) = runs.first() else {
        return Vec::new();
    };
    runs.iter()
        .zip(configs)
        .map(|(run, cfg)| SweepRecord {
            eta: cfg.eta(),
            rho: rho(&run.final_state, t, reference, tolerance),
            nu: nu(&run.final_state, &first.final_state),
            precipitate_count: run.final_state.count(CellState::Precipitate),
            steps: run.steps,
            reached_fixpoint: run.reached_fixpoint,
            seed: t.meta().seed,
        })
        .collect()
}

/// One default configuration per threshold.
pub fn configs_for(etas: &[f64], excitation: ExcitationNeighborhood) -> Result<Vec<AutomatonConfig>> {
    etas.iter()
        .map(|&eta| AutomatonConfig::new(eta).map(|c| c.with_excitation(excitation)))
        .collect()
}

/// `from, from + step, …` up to `to` inclusive (with a half-step allowance
/// for round-off), each value rounded to 12 decimals.
pub fn eta_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && to >= from) {
        return Err(Error::InvalidParameter(format!(
            "bad eta grid from {from} to {to} step {step}"
        )));
    }
    let n = ((to - from) / step + 0.5).floor() as usize + 1;
    Ok((0..n)
        .map(|k| ((from + k as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_tessellation, pack_points, PlanarSet};
    use crate::projection::seed_from_points;
    use crate::reference::exact_voronoi;
    use crate::scenario;

    fn setup() -> (Tessellation, ReferenceDiagram, AutomatonState) {
        let t = build_tessellation(&pack_points(200.0, 5.0, 2500, 8).unwrap()).unwrap();
        let data = scenario::two_points(200.0);
        let reference = exact_voronoi(&data).unwrap();
        let seed = seed_from_points(&t, &data, 9.0).unwrap();
        (t, reference, seed.state)
    }

    #[test]
    fn rho_edge_cases() {
        let (t, reference, _) = setup();
        let none = AutomatonState::resting(t.len());
        assert_eq!(rho(&none, &t, &reference, 5.0), 0.0);
        // Precipitate exactly the cells whose generators sit on the bisector band.
        let mut on = AutomatonState::resting(t.len());
        for i in 0..t.len() {
            if t.generator(i).x.abs() < 2.0 {
                on.states[i] = CellState::Precipitate;
            }
        }
        assert_eq!(rho(&on, &t, &reference, 2.0), 1.0);
    }

    #[test]
    fn rho_monotone_in_tolerance() {
        let (t, reference, seed) = setup();
        let run = run_to_fixpoint(&t, &seed, &AutomatonConfig::new(0.3).unwrap(), false);
        let values: Vec<f64> = [1.0, 3.0, 10.0, 30.0, 100.0, 1000.0]
            .iter()
            .map(|&tol| rho(&run.final_state, &t, &reference, tol))
            .collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]));
        assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
        assert_eq!(*values.last().unwrap(), 1.0);
    }

    #[test]
    fn nu_cases() {
        let mut a = AutomatonState::resting(4);
        a.states[1] = CellState::Precipitate;
        a.states[2] = CellState::Precipitate;
        assert_eq!(nu(&a, &a), Some(1.0));
        assert_eq!(nu(&AutomatonState::resting(4), &a), Some(0.0));
        assert_eq!(nu(&a, &AutomatonState::resting(4)), None);
    }

    #[test]
    fn single_eta_sweep_is_self_baseline() {
        let (t, reference, seed) = setup();
        let one = configs_for(&[0.2], ExcitationNeighborhood::default()).unwrap();
        let records = sweep_eta(&t, &seed, &one, &reference, 10.0).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].nu, Some(1.0));
        assert!(sweep_eta(&t, &seed, &[], &reference, 10.0).is_err());
        assert!(configs_for(&[0.2, 1.5], ExcitationNeighborhood::default()).is_err());
    }

    #[test]
    fn sweep_is_deterministic() {
        let (t, reference, seed) = setup();
        let etas = eta_grid(0.2, 0.5, 0.1).unwrap();
        let configs = configs_for(&etas, ExcitationNeighborhood::SecondOrder).unwrap();
        let a = sweep_eta(&t, &seed, &configs, &reference, 10.0).unwrap();
        let b = sweep_eta(&t, &seed, &configs, &reference, 10.0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().map(|r| r.eta).collect::<Vec<_>>(), etas);
        let mut csv = Vec::new();
        SweepRecord::write_csv(&a, &mut csv).unwrap();
        assert_eq!(String::from_utf8(csv).unwrap().lines().count(), 5);
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(eta_grid(0.2, 0.525, 0.025).unwrap().len(), 14);
        assert_eq!(eta_grid(0.2, 0.2, 0.025).unwrap(), vec![0.2]);
        assert_eq!(eta_grid(0.2, 0.525, 0.025).unwrap()[5], 0.325);
        assert!(eta_grid(0.5, 0.2, 0.1).is_err());
    }

    #[test]
    fn circumdiameter_of_single_cell_is_domain() {
        let set = PlanarSet::new(
            vec![crate::Point::new(1.0, 1.0)],
            crate::Disc::new(crate::Point::new(0.0, 0.0), 10.0),
            0.0,
        )
        .unwrap();
        let t = build_tessellation(&set).unwrap();
        let d = mean_circumdiameter(&t);
        assert!((20.0..20.01).contains(&d), "{d}");
    }
}
