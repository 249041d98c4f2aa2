//! Fixtures shared by the benchmarks.

use voronautoma::{build_tessellation, pack_points, scenario, seed_from_points, AutomatonState, Tessellation};

pub const RADIUS: f64 = 480.0;
pub const SPACING: f64 = 5.0;
pub const COUNT: usize = 15000;

/// Full-size tessellation and the seven-point initial state on it.
pub fn seven_point_setup(seed: u64) -> (Tessellation, AutomatonState) {
    let set = pack_points(RADIUS, SPACING, COUNT, seed).expect("packing");
    let t = build_tessellation(&set).expect("tessellation");
    let data = scenario::seven_points(RADIUS);
    let state = seed_from_points(&t, &data, 9.0).expect("seeding").state;
    (t, state)
}
