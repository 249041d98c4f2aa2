//! Exact Voronoi diagram of a data point set, used as ground truth when
//! scoring precipitate patterns.

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::geometry::polygon::segment_distance;
use crate::geometry::{tessellation_cells, PlanarSet, Point};

/// A bisector segment between data points `sites.0 < sites.1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceEdge {
    pub a: Point,
    pub b: Point,
    pub sites: (usize, usize),
}

impl ReferenceEdge {
    pub fn distance(&self, p: Point) -> f64 {
        segment_distance(p, self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceDiagram {
    edges: Vec<ReferenceEdge>,
    sources: PlanarSet,
}

impl ReferenceDiagram {
    pub fn edges(&self) -> &[ReferenceEdge] {
        &self.edges
    }

    pub fn sources(&self) -> &PlanarSet {
        &self.sources
    }

    /// Distance from `p` to the nearest edge; infinite when there are none.
    pub fn distance(&self, p: Point) -> f64 {
        self.edges
            .iter()
            .map(|e| e.distance(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// CSV `x1,y1,x2,y2`, one segment per line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e| Error::io("<edges>", e);
        writeln!(out, "x1,y1,x2,y2").map_err(io)?;
        for e in &self.edges {
            writeln!(out, "{},{},{},{}", e.a.x, e.a.y, e.b.x, e.b.y).map_err(io)?;
        }
        Ok(())
    }
}

/// Voronoi diagram of `data`, clipped to its bounding domain.
pub fn exact_voronoi(data: &PlanarSet) -> Result<ReferenceDiagram> {
    if data.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some((a, b)) = data.find_duplicate() {
        return Err(Error::DuplicatePoint(a, b));
    }
    let cells = tessellation_cells(data.points(), data.domain());
    // Both cells carry a copy of a shared edge; keep the lower-index one.
    let mut by_pair: BTreeMap<(usize, usize), ReferenceEdge> = BTreeMap::new();
    for (i, poly) in cells.iter().enumerate() {
        for (a, b, tag) in poly.edges() {
            if let Some(j) = tag {
                let key = (i.min(j), i.max(j));
                by_pair.entry(key).or_insert(ReferenceEdge { a, b, sites: key });
            }
        }
    }
    Ok(ReferenceDiagram {
        edges: by_pair.into_values().collect(),
        sources: data.clone(),
    })
}

pub fn distance_to_diagram(d: &ReferenceDiagram, p: Point) -> f64 {
    d.distance(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Disc;
    use crate::scenario;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn data(points: &[(f64, f64)]) -> PlanarSet {
        let pts = points.iter().map(|&(x, y)| Point::new(x, y)).collect();
        PlanarSet::new(pts, Disc::new(Point::new(0.0, 0.0), 480.0), 0.0).unwrap()
    }

    fn random_in_disc(rng: &mut ChaCha8Rng, r: f64) -> Point {
        let rr = r * rng.gen::<f64>().sqrt();
        let a = std::f64::consts::TAU * rng.gen::<f64>();
        Point::new(rr * a.cos(), rr * a.sin())
    }

    #[test]
    fn one_point_has_no_edges() {
        let d = exact_voronoi(&data(&[(5.0, 5.0)])).unwrap();
        assert!(d.edges().is_empty());
        assert_eq!(distance_to_diagram(&d, Point::new(0.0, 0.0)), f64::INFINITY);
    }

    #[test]
    fn two_points_single_bisector() {
        let d = exact_voronoi(&data(&[(-100.0, 0.0), (100.0, 0.0)])).unwrap();
        assert_eq!(d.edges().len(), 1);
        let e = d.edges()[0];
        assert!(e.a.x.abs() < 1e-9 && e.b.x.abs() < 1e-9);
        // Endpoints reach the clipping polygon near the disc boundary.
        assert!((e.a.y.abs() - 480.0).abs() < 0.1);
        assert!((distance_to_diagram(&d, Point::new(-100.0, 0.0)) - 100.0).abs() < 1e-9);
        assert!(distance_to_diagram(&d, Point::new(0.0, 17.0)) < 1e-9);
    }

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(
            exact_voronoi(&data(&[(1.0, 1.0), (1.0, 1.0)])),
            Err(Error::DuplicatePoint(0, 1))
        ));
    }

    #[test]
    fn edge_points_are_equidistant_and_nearest() {
        let set = scenario::seven_points(480.0);
        let d = exact_voronoi(&set).unwrap();
        let pts = set.points();
        for e in d.edges() {
            for k in 0..=10 {
                let t = k as f64 / 10.0;
                let p = e.a + (e.b - e.a) * t;
                let (da, db) = (p.dist(pts[e.sites.0]), p.dist(pts[e.sites.1]));
                assert!((da - db).abs() < 1e-9 * da.max(1.0), "{da} vs {db}");
                for (m, q) in pts.iter().enumerate() {
                    if m != e.sites.0 && m != e.sites.1 {
                        assert!(p.dist(*q) >= da - 1e-9 * da.max(1.0));
                    }
                }
            }
        }
    }

    #[test]
    fn seven_point_sampling_oracle() {
        let set = scenario::seven_points(480.0);
        let d = exact_voronoi(&set).unwrap();
        let mut cells = std::collections::BTreeSet::new();
        for e in d.edges() {
            cells.insert(e.sites.0);
            cells.insert(e.sites.1);
        }
        assert_eq!(cells.len(), 7);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..10_000 {
            let p = random_in_disc(&mut rng, 479.0);
            let mut dists: Vec<f64> = set.points().iter().map(|q| q.dist(p)).collect();
            dists.sort_by(f64::total_cmp);
            let gap = dists[1] - dists[0];
            let to_edge = d.distance(p);
            if gap < 1e-9 {
                assert!(to_edge < 1e-6);
            }
            // Moving a point by delta changes the gap by at most 2 delta, so
            // the owning source cannot change within gap / 2 of the point.
            assert!(gap <= 2.0 * to_edge + 1e-6, "gap {gap} edge distance {to_edge}");
        }
        // Points just either side of each edge belong to its two sites.
        for e in d.edges() {
            let mid = e.a.midpoint(e.b);
            let dir = e.b - e.a;
            let normal = Point::new(-dir.y, dir.x) * (1e-3 / dir.norm());
            for p in [mid + normal, mid - normal] {
                let owner = (0..7)
                    .min_by(|&i, &j| p.dist(set.points()[i]).total_cmp(&p.dist(set.points()[j])))
                    .unwrap();
                assert!(owner == e.sites.0 || owner == e.sites.1);
            }
        }
    }

    #[test]
    fn distance_matches_segment_scan() {
        let d = exact_voronoi(&scenario::seven_points(480.0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = random_in_disc(&mut rng, 480.0);
            let brute = d
                .edges()
                .iter()
                .map(|e| {
                    // Sampled scan along each segment, refined locally.
                    (0..=2000)
                        .map(|k| p.dist(e.a + (e.b - e.a) * (k as f64 / 2000.0)))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(f64::INFINITY, f64::min);
            let exact = distance_to_diagram(&d, p);
            assert!(exact <= brute + 1e-9);
            assert!(brute - exact < 0.5, "{brute} vs {exact}");
        }
    }

    #[test]
    fn reflection_symmetry() {
        let set = scenario::seven_points(480.0);
        let reflected: Vec<Point> = set.points().iter().map(|p| Point::new(-p.x, -p.y)).collect();
        let rset = PlanarSet::new(reflected, set.domain(), 0.0).unwrap();
        let (d, rd) = (exact_voronoi(&set).unwrap(), exact_voronoi(&rset).unwrap());
        assert_eq!(d.edges().len(), rd.edges().len());
        for e in d.edges() {
            let (ra, rb) = (Point::new(-e.a.x, -e.a.y), Point::new(-e.b.x, -e.b.y));
            let found = rd.edges().iter().any(|f| {
                f.sites == e.sites
                    && ((f.a.dist(ra) < 1e-9 && f.b.dist(rb) < 1e-9)
                        || (f.a.dist(rb) < 1e-9 && f.b.dist(ra) < 1e-9))
            });
            assert!(found, "no reflected counterpart for {e:?}");
        }
    }

    #[test]
    fn csv_export() {
        let d = exact_voronoi(&data(&[(-1.0, 0.0), (1.0, 0.0)])).unwrap();
        let mut out = Vec::new();
        d.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("x1,y1,x2,y2\n"));
        let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert!(row[0].abs() < 1e-12 && row[2].abs() < 1e-12);
    }
}
