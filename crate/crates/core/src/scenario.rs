//! Standard data sets for the experiments: a seven-point layout, a
//! symmetric pair, a five-pointed star contour and a few solid shapes.

use crate::geometry::{Disc, PlanarSet, Point};
use crate::projection::Raster;

/// Layout as fractions of the disc radius.
const SEVEN: [(f64, f64); 7] = [
    (-0.55, 0.40),
    (0.10, 0.62),
    (0.58, 0.22),
    (-0.20, -0.05),
    (0.40, -0.42),
    (-0.58, -0.40),
    (0.02, -0.70),
];

fn scaled(fractions: &[(f64, f64)], radius: f64) -> PlanarSet {
    let points = fractions
        .iter()
        .map(|&(x, y)| Point::new(x * radius, y * radius))
        .collect();
    PlanarSet::new(points, Disc::new(Point::new(0.0, 0.0), radius), 0.0)
        .expect("fractions lie inside the unit disc")
}

/// Seven irregularly spread data points in the disc of `radius` at the origin.
pub fn seven_points(radius: f64) -> PlanarSet {
    scaled(&SEVEN, radius)
}

/// Two points mirrored through the origin; their bisector is the y axis.
pub fn two_points(radius: f64) -> PlanarSet {
    scaled(&[(-0.45, 0.0), (0.45, 0.0)], radius)
}

/// Vertices of a five-pointed star, counter-clockwise, in unit coordinates.
pub fn star_vertices(outer: f64, inner: f64) -> Vec<Point> {
    (0..10)
        .map(|k| {
            let a = std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * k as f64 / 5.0;
            let r = if k % 2 == 0 { outer } else { inner };
            Point::new(r * a.cos(), r * a.sin())
        })
        .collect()
}

/// A `size`×`size` raster holding the outline of a five-pointed star, about
/// one pixel thick.
pub fn star_contour(size: usize) -> Raster {
    let half = size as f64 / 2.0;
    let verts = star_vertices(0.85 * half, 0.42 * half);
    Raster::from_fn(size, size, |col, row| {
        // Pixel center in star coordinates, y up.
        let p = Point::new(col as f64 + 0.5 - half, half - (row as f64 + 0.5));
        (0..verts.len()).any(|k| {
            let (a, b) = (verts[k], verts[(k + 1) % verts.len()]);
            crate::geometry::polygon::segment_distance(p, a, b) <= 0.6
        })
    })
}

/// A `size`×`size` raster with three solid shapes: a disc, a bar and a
/// triangle.
pub fn shapes(size: usize) -> Raster {
    let s = size as f64;
    let tri = [
        Point::new(0.60 * s, 0.80 * s),
        Point::new(0.90 * s, 0.80 * s),
        Point::new(0.75 * s, 0.55 * s),
    ];
    Raster::from_fn(size, size, |col, row| {
        let p = Point::new(col as f64 + 0.5, row as f64 + 0.5);
        let disc = p.dist(Point::new(0.30 * s, 0.30 * s)) < 0.09 * s;
        let bar = (0.55 * s..0.85 * s).contains(&p.x) && (0.22 * s..0.30 * s).contains(&p.y);
        let inside_tri = (0..3).all(|k| {
            let (a, b) = (tri[k], tri[(k + 1) % 3]);
            (b - a).cross(p - a) <= 0.0
        });
        disc || bar || inside_tri
    })
}
