//! Excitable-precipitating automata on irregular Voronoi tessellations.
//!
//! A tessellation is grown from a random packing of generator points inside a
//! disc. Every cell runs a four-state automaton (resting, excited, refractory,
//! precipitate): excitation spreads between adjacent cells and precipitation
//! is judged over the second-order neighborhood. Exciting the cells that
//! cover a data set launches waves; where waves collide the cells precipitate,
//! and the precipitate pattern approximates the Voronoi diagram (or skeleton)
//! of the data.
//!
//! ```
//! use voronautoma::{
//!     build_tessellation, exact_voronoi, pack_points, rho, run_to_fixpoint, seed_from_points,
//!     AutomatonConfig, Disc, PlanarSet, Point,
//! };
//!
//! let set = pack_points(120.0, 5.0, 400, 7).unwrap();
//! let tess = build_tessellation(&set).unwrap();
//! let data = PlanarSet::new(
//!     vec![Point::new(-60.0, 0.0), Point::new(60.0, 0.0)],
//!     Disc::new(Point::new(0.0, 0.0), 120.0),
//!     0.0,
//! )
//! .unwrap();
//! let seed = seed_from_points(&tess, &data, 9.0).unwrap();
//! let run = run_to_fixpoint(&tess, &seed.state, &AutomatonConfig::new(0.4).unwrap(), false);
//! assert!(run.reached_fixpoint);
//! let reference = exact_voronoi(&data).unwrap();
//! let score = rho(&run.final_state, &tess, &reference, 10.0);
//! assert!((0.0..=1.0).contains(&score));
//! ```

pub mod automaton;
pub mod error;
pub mod geometry;
pub mod io;
pub mod metrics;
pub mod projection;
pub mod reference;
pub mod render;
pub mod scenario;

pub use automaton::{
    count_excited, history_to_text, run_to_fixpoint, step, AutomatonConfig, AutomatonState, CellState,
    ExcitationNeighborhood, RunResult,
};
pub use error::{Error, Result};
pub use geometry::{
    build_tessellation, neighborhood_histogram, pack_points, second_order_neighborhood, Disc,
    NeighborhoodHistogram, PlanarSet, Point, Tessellation, TessellationMeta, DOMAIN_POLYGON_SIDES,
};
pub use metrics::{
    configs_for, eta_grid, mean_circumdiameter, nu, rho, sweep_eta, sweep_records, sweep_runs, SweepRecord,
};
pub use projection::{
    cells_in_mask, interior_mask, seed_from_points, seed_from_raster, Affine, Raster, Seed,
    SeedSpec, SeedWarning,
};
pub use reference::{distance_to_diagram, exact_voronoi, ReferenceDiagram, ReferenceEdge};
pub use render::{frame_name, render_overlay, render_state, render_svg, Image, RenderStyle, Rgb};
