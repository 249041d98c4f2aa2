use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Disc, PlanarSet, Point, SpatialGrid};
use crate::error::{Error, Result};

/// Dart-throwing budget: attempts allowed per requested point.
pub const DEFAULT_ATTEMPTS_PER_POINT: usize = 50;

/// Random sequential packing of up to `target_count` points in the disc of
/// `radius` centered at the origin, no two closer than `min_spacing`.
///
/// Candidates are drawn uniformly in the disc and rejected when they fall
/// within `min_spacing` of an accepted point. After
/// `DEFAULT_ATTEMPTS_PER_POINT * target_count` draws the packing is considered
/// saturated and the points placed so far are returned.
pub fn pack_points(radius: f64, min_spacing: f64, target_count: usize, seed: u64) -> Result<PlanarSet> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    if !(min_spacing.is_finite() && min_spacing > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "min spacing must be positive, got {min_spacing}"
        )));
    }
    if target_count == 0 {
        return Err(Error::InvalidParameter("target count must be at least 1".into()));
    }
    if target_count > 1 && min_spacing >= 2.0 * radius {
        return Err(Error::SpacingTooLarge { radius, min_spacing });
    }

    let domain = Disc::new(Point::new(0.0, 0.0), radius);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grid = SpatialGrid::with_bounds(
        Point::new(-radius, -radius),
        Point::new(radius, radius),
        min_spacing,
        &[],
    );
    let mut points: Vec<Point> = Vec::with_capacity(target_count);
    let max_attempts = DEFAULT_ATTEMPTS_PER_POINT.saturating_mul(target_count);
    let mut attempts = 0;

    while points.len() < target_count && attempts < max_attempts {
        attempts += 1;
        let r = radius * rng.gen::<f64>().sqrt();
        let theta = std::f64::consts::TAU * rng.gen::<f64>();
        let candidate = Point::new(r * theta.cos(), r * theta.sin());
        if !domain.contains_strictly(candidate) {
            continue;
        }
        let mut clear = true;
        grid.for_each_near(candidate, min_spacing, |j| {
            clear &= candidate.dist(points[j]) >= min_spacing;
        });
        if clear {
            grid.insert(points.len(), candidate);
            points.push(candidate);
        }
    }

    if points.len() < target_count {
        log::warn!(
            "packing saturated after {attempts} attempts: placed {} of {target_count} points",
            points.len()
        );
    }
    PlanarSet::new(points, domain, min_spacing)
}
