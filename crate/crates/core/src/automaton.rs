//! Four-state excitable-precipitating automaton over second-order
//! neighborhoods.
//!
//! A resting cell precipitates when the fraction of excited cells in its
//! second-order neighborhood strictly exceeds `eta`; otherwise it becomes
//! excited when at least one immediate neighbor is excited. Excited cells
//! become refractory unconditionally. Refractory and precipitate are
//! absorbing.

use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::Tessellation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellState {
    Resting,
    Excited,
    Refractory,
    Precipitate,
}

impl CellState {
    pub const ALL: [CellState; 4] = [
        CellState::Resting,
        CellState::Excited,
        CellState::Refractory,
        CellState::Precipitate,
    ];

    pub fn symbol(self) -> char {
        match self {
            CellState::Resting => 'o',
            CellState::Excited => '+',
            CellState::Refractory => '-',
            CellState::Precipitate => '#',
        }
    }

    pub fn from_symbol(c: char) -> Option<Self> {
        match c {
            'o' => Some(CellState::Resting),
            '+' => Some(CellState::Excited),
            '-' => Some(CellState::Refractory),
            '#' => Some(CellState::Precipitate),
            _ => None,
        }
    }

    pub fn is_absorbing(self) -> bool {
        matches!(self, CellState::Refractory | CellState::Precipitate)
    }
}

/// Which neighborhood decides whether a resting cell gets excited.
/// Precipitation always uses the second-order neighborhood.
///
/// With `FirstOrder` a wave advances one cell per step and its front is a
/// single cell thick. `SecondOrder` doubles both, which makes every front
/// dense enough to precipitate on its own at moderate thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExcitationNeighborhood {
    #[default]
    FirstOrder,
    SecondOrder,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutomatonConfig {
    eta: f64,
    /// `None` means four times the cell count.
    pub max_steps: Option<usize>,
    pub excitation: ExcitationNeighborhood,
}

impl AutomatonConfig {
    pub fn new(eta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidParameter(format!("eta must lie in [0, 1], got {eta}")));
        }
        Ok(AutomatonConfig {
            eta,
            max_steps: None,
            excitation: ExcitationNeighborhood::default(),
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = Some(max_steps);
        self
    }

    pub fn with_excitation(mut self, excitation: ExcitationNeighborhood) -> Self {
        self.excitation = excitation;
        self
    }

    pub fn max_steps_for(&self, cells: usize) -> usize {
        self.max_steps.unwrap_or(4 * cells.max(1))
    }
}

/// Per-cell states indexed like the tessellation's cells, plus the time step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomatonState {
    pub states: Vec<CellState>,
    pub t: u64,
}

impl AutomatonState {
    pub fn resting(cells: usize) -> Self {
        AutomatonState {
            states: vec![CellState::Resting; cells],
            t: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn count(&self, state: CellState) -> usize {
        self.states.iter().filter(|&&s| s == state).count()
    }

    pub fn cells_in(&self, state: CellState) -> impl Iterator<Item = usize> + '_ {
        self.states
            .iter()
            .enumerate()
            .filter(move |(_, &s)| s == state)
            .map(|(i, _)| i)
    }

    /// One character per cell from `o + - #`, newline-terminated.
    pub fn to_line(&self) -> String {
        states_to_line(&self.states)
    }

    pub fn from_line(line: &str, t: u64) -> Result<Self> {
        Ok(AutomatonState {
            states: line_to_states(line)?,
            t,
        })
    }

    pub fn check_against(&self, tess: &Tessellation) -> Result<()> {
        if self.len() != tess.len() {
            return Err(Error::StateLength {
                expected: tess.len(),
                actual: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for AutomatonState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.states {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

pub fn states_to_line(states: &[CellState]) -> String {
    let mut line: String = states.iter().map(|s| s.symbol()).collect();
    line.push('\n');
    line
}

pub fn line_to_states(line: &str) -> Result<Vec<CellState>> {
    line.trim_end_matches(['\n', '\r'])
        .chars()
        .enumerate()
        .map(|(i, c)| {
            CellState::from_symbol(c)
                .ok_or_else(|| Error::parse("state line", format!("unexpected {c:?} at column {i}")))
        })
        .collect()
}

/// Serializes a history, one line per step.
pub fn history_to_text(history: &[Vec<CellState>]) -> String {
    history.iter().map(|s| states_to_line(s)).collect()
}

pub fn history_from_text(text: &str) -> Result<Vec<Vec<CellState>>> {
    text.lines().map(line_to_states).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub final_state: AutomatonState,
    /// State vectors from the initial one through the final one.
    pub history: Option<Vec<Vec<CellState>>>,
    pub steps: usize,
    pub reached_fixpoint: bool,
}

/// Excited cells in the second-order neighborhood of `cell`.
pub fn count_excited(t: &Tessellation, s: &AutomatonState, cell: usize) -> usize {
    excited_among(t.u(cell), &s.states)
}

fn excited_among(cells: &[usize], states: &[CellState]) -> usize {
    cells.iter().filter(|&&j| states[j] == CellState::Excited).count()
}

static ISOLATED_WARNED: AtomicBool = AtomicBool::new(false);

fn next_state(t: &Tessellation, states: &[CellState], cfg: &AutomatonConfig, cell: usize) -> CellState {
    match states[cell] {
        CellState::Excited => CellState::Refractory,
        CellState::Refractory => CellState::Refractory,
        CellState::Precipitate => CellState::Precipitate,
        CellState::Resting => {
            let u = t.u(cell);
            if u.is_empty() {
                if !ISOLATED_WARNED.swap(true, Ordering::Relaxed) {
                    log::warn!("cell {cell} has an empty neighborhood and can never change state");
                }
                return CellState::Resting;
            }
            let sigma = excited_among(u, states);
            if sigma as f64 / u.len() as f64 > cfg.eta {
                return CellState::Precipitate;
            }
            let exciting = match cfg.excitation {
                ExcitationNeighborhood::SecondOrder => sigma,
                ExcitationNeighborhood::FirstOrder => excited_among(t.w(cell), states),
            };
            if exciting >= 1 {
                CellState::Excited
            } else {
                CellState::Resting
            }
        }
    }
}

const PARALLEL_THRESHOLD: usize = 4096;

/// Synchronous update of every cell from the prior state vector.
///
/// # Panics
///
/// If `s` does not have one state per tessellation cell.
pub fn step(t: &Tessellation, s: &AutomatonState, cfg: &AutomatonConfig) -> AutomatonState {
    assert_eq!(s.len(), t.len(), "state vector length must match cell count");
    let prior = &s.states;
    let states = if prior.len() >= PARALLEL_THRESHOLD {
        (0..prior.len())
            .into_par_iter()
            .map(|i| next_state(t, prior, cfg, i))
            .collect()
    } else {
        (0..prior.len()).map(|i| next_state(t, prior, cfg, i)).collect()
    };
    AutomatonState { states, t: s.t + 1 }
}

/// Steps until the state vector stops changing or `max_steps` updates have
/// been applied. `steps` counts the updates that changed the state, so a
/// quiescent initial state is a fixpoint at step 0.
pub fn run_to_fixpoint(
    t: &Tessellation,
    initial: &AutomatonState,
    cfg: &AutomatonConfig,
    record_history: bool,
) -> RunResult {
    let max_steps = cfg.max_steps_for(t.len());
    let mut history = record_history.then(|| vec![initial.states.clone()]);
    let mut current = initial.clone();
    let mut steps = 0;
    loop {
        let next = step(t, &current, cfg);
        if next.states == current.states {
            return RunResult {
                final_state: current,
                history,
                steps,
                reached_fixpoint: true,
            };
        }
        if steps == max_steps {
            return RunResult {
                final_state: current,
                history,
                steps,
                reached_fixpoint: false,
            };
        }
        current = next;
        steps += 1;
        if let Some(h) = history.as_mut() {
            h.push(current.states.clone());
        }
    }
}
