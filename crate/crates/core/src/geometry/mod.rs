//! Planar point sets, disc-clipped Voronoi tessellations and their
//! neighborhood structure.

mod grid;
mod histogram;
mod packing;
pub mod polygon;
mod tessellation;

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use grid::SpatialGrid;
pub use histogram::{neighborhood_histogram, NeighborhoodHistogram};
pub use packing::{pack_points, DEFAULT_ATTEMPTS_PER_POINT};
pub(crate) use tessellation::voronoi_cells as tessellation_cells;
pub use tessellation::{
    build_tessellation, second_order_neighborhood, Tessellation, TessellationMeta,
};

/// Number of sides of the regular polygon standing in for the bounding disc.
pub const DOMAIN_POLYGON_SIDES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn dist2(self, other: Point) -> f64 {
        let d = self - other;
        d.dot(d)
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// Bounding disc of a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disc {
    pub center: Point,
    pub radius: f64,
}

impl Disc {
    pub const fn new(center: Point, radius: f64) -> Self {
        Disc { center, radius }
    }

    pub fn contains_strictly(&self, p: Point) -> bool {
        p.dist2(self.center) < self.radius * self.radius
    }

    /// Regular polygon circumscribing the disc, counter-clockwise, first
    /// vertex on +x. Circumscribing keeps every interior point inside it.
    pub fn polygon(&self, sides: usize) -> Vec<Point> {
        let circumradius = self.radius / (std::f64::consts::PI / sides as f64).cos();
        (0..sides)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / sides as f64;
                Point::new(
                    self.center.x + circumradius * a.cos(),
                    self.center.y + circumradius * a.sin(),
                )
            })
            .collect()
    }

    /// Area of [`Disc::polygon`], the region a tessellation covers.
    pub fn polygon_area(&self, sides: usize) -> f64 {
        let n = sides as f64;
        n * self.radius * self.radius * (std::f64::consts::PI / n).tan()
    }
}

/// A finite planar point set confined to a disc, with a recorded minimum
/// pairwise spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarSet {
    points: Vec<Point>,
    domain: Disc,
    min_spacing: f64,
}

impl PlanarSet {
    /// Validates that every point lies strictly inside `domain` and that no
    /// two points are closer than `min_spacing`. A `min_spacing` of zero only
    /// rejects nothing; duplicates are checked separately where they matter.
    pub fn new(points: Vec<Point>, domain: Disc, min_spacing: f64) -> Result<Self> {
        if !(domain.radius.is_finite() && domain.radius > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "domain radius must be positive, got {}",
                domain.radius
            )));
        }
        if min_spacing.is_nan() || min_spacing < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "min spacing must be non-negative, got {min_spacing}"
            )));
        }
        for (index, p) in points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() || !domain.contains_strictly(*p) {
                return Err(Error::OutsideDomain {
                    index,
                    x: p.x,
                    y: p.y,
                });
            }
        }
        if min_spacing > 0.0 && points.len() > 1 {
            let grid = SpatialGrid::new(&points, min_spacing);
            for (i, &p) in points.iter().enumerate() {
                let mut bad = None;
                grid.for_each_near(p, min_spacing, |j| {
                    if j != i && bad.is_none() && p.dist(points[j]) < min_spacing {
                        bad = Some(j);
                    }
                });
                if let Some(j) = bad {
                    return Err(Error::SpacingViolated(i.min(j), i.max(j)));
                }
            }
        }
        Ok(PlanarSet {
            points,
            domain,
            min_spacing,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn domain(&self) -> Disc {
        self.domain
    }

    pub fn min_spacing(&self) -> f64 {
        self.min_spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// First pair of coincident points, if any.
    pub fn find_duplicate(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.points.len()).collect();
        order.sort_by(|&a, &b| {
            let (pa, pb) = (self.points[a], self.points[b]);
            pa.x.total_cmp(&pb.x).then(pa.y.total_cmp(&pb.y))
        });
        order.windows(2).find_map(|w| {
            (self.points[w[0]] == self.points[w[1]]).then(|| (w[0].min(w[1]), w[0].max(w[1])))
        })
    }
}
