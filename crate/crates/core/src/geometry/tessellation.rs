use super::polygon::{self, TaggedPolygon};
use super::{Disc, PlanarSet, Point, SpatialGrid, DOMAIN_POLYGON_SIDES};
use crate::error::{Error, Result};

/// Provenance recorded alongside a tessellation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TessellationMeta {
    pub seed: Option<u64>,
    pub min_spacing: f64,
}

/// Voronoi cells of a generator set, clipped to the bounding domain, with
/// first-order adjacency `w` and second-order neighborhoods `u`.
///
/// Cell `i` belongs to generator `i`. `w(i)` holds the cells sharing a
/// boundary edge with `i`; `u(i)` is `w(i)` together with the neighbors of
/// every cell in `w(i)`, excluding `i` itself. Both lists are sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct Tessellation {
    points: Vec<Point>,
    polygons: Vec<Vec<Point>>,
    w: Vec<Vec<usize>>,
    u: Vec<Vec<usize>>,
    domain: Disc,
    meta: TessellationMeta,
}

impl Tessellation {
    /// Assembles a tessellation from precomputed parts (e.g. a file),
    /// checking that adjacency is symmetric and irreflexive. `u` is derived
    /// from `w`.
    pub fn from_parts(
        points: Vec<Point>,
        polygons: Vec<Vec<Point>>,
        w: Vec<Vec<usize>>,
        domain: Disc,
        meta: TessellationMeta,
    ) -> Result<Self> {
        let n = points.len();
        if polygons.len() != n || w.len() != n {
            return Err(Error::InconsistentTessellation(format!(
                "{n} points, {} polygons, {} adjacency lists",
                polygons.len(),
                w.len()
            )));
        }
        let mut w = w;
        for (i, nbrs) in w.iter_mut().enumerate() {
            nbrs.sort_unstable();
            nbrs.dedup();
            if let Some(&j) = nbrs.iter().find(|&&j| j >= n || j == i) {
                return Err(Error::InconsistentTessellation(format!(
                    "cell {i} lists invalid neighbor {j}"
                )));
            }
        }
        for (i, nbrs) in w.iter().enumerate() {
            for &j in nbrs {
                if w[j].binary_search(&i).is_err() {
                    return Err(Error::InconsistentTessellation(format!(
                        "adjacency not symmetric: {j} in w({i}) but {i} not in w({j})"
                    )));
                }
            }
        }
        let u = (0..n).map(|i| second_order_neighborhood_of(&w, i)).collect();
        Ok(Tessellation {
            points,
            polygons,
            w,
            u,
            domain,
            meta,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn generator(&self, cell: usize) -> Point {
        self.points[cell]
    }

    pub fn polygon(&self, cell: usize) -> &[Point] {
        &self.polygons[cell]
    }

    pub fn polygons(&self) -> &[Vec<Point>] {
        &self.polygons
    }

    /// First-order neighborhood.
    pub fn w(&self, cell: usize) -> &[usize] {
        &self.w[cell]
    }

    /// Second-order neighborhood.
    pub fn u(&self, cell: usize) -> &[usize] {
        &self.u[cell]
    }

    /// Size of the second-order neighborhood, the denominator of the
    /// excitation ratio.
    pub fn u_size(&self, cell: usize) -> usize {
        self.u[cell].len()
    }

    pub fn domain(&self) -> Disc {
        self.domain
    }

    pub fn meta(&self) -> TessellationMeta {
        self.meta
    }

    pub fn set_seed(&mut self, seed: Option<u64>) {
        self.meta.seed = seed;
    }

    pub fn cell_area(&self, cell: usize) -> f64 {
        polygon::signed_area(&self.polygons[cell])
    }

    /// Index of the cell whose generator is nearest `p`.
    pub fn locate(&self, p: Point) -> Option<usize> {
        (0..self.len()).min_by(|&a, &b| p.dist2(self.points[a]).total_cmp(&p.dist2(self.points[b])))
    }
}

/// `(⋃_{q ∈ w(p)} w(q) ∪ w(p)) \ {p}`, i.e. neighbors and neighbors of
/// neighbors.
pub fn second_order_neighborhood(t: &Tessellation, cell: usize) -> &[usize] {
    t.u(cell)
}

fn second_order_neighborhood_of(w: &[Vec<usize>], cell: usize) -> Vec<usize> {
    let mut out: Vec<usize> = w[cell]
        .iter()
        .flat_map(|&q| std::iter::once(q).chain(w[q].iter().copied()))
        .filter(|&q| q != cell)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Computes the clipped Voronoi cell of every point. Bisectors are applied
/// in order of growing grid rings until no farther site can reach the cell.
pub(crate) fn voronoi_cells(points: &[Point], domain: Disc) -> Vec<TaggedPolygon> {
    let boundary = domain.polygon(DOMAIN_POLYGON_SIDES);
    let eps = 1e-9 * domain.radius;
    let n = points.len();
    let spacing = (std::f64::consts::PI * domain.radius * domain.radius / n.max(1) as f64).sqrt();
    let cell = spacing.clamp(domain.radius * 1e-4, 2.0 * domain.radius);
    let grid = SpatialGrid::new(points, cell);

    points
        .iter()
        .enumerate()
        .map(|(i, &site)| {
            let mut poly = TaggedPolygon::from_boundary(boundary.clone());
            let home = grid.cell_of(site);
            for k in 0.. {
                let reach = 2.0 * poly.max_dist_from(site);
                if k >= 1 && (k - 1) as f64 * grid.cell_size() > reach {
                    break;
                }
                let more = grid.for_each_in_ring(home, k, |j| {
                    if j != i {
                        poly.clip_bisector(site, points[j], j, eps);
                    }
                });
                if !more {
                    break;
                }
            }
            poly
        })
        .collect()
}

/// Builds the disc-clipped Voronoi tessellation of `set`.
///
/// Adjacency comes from the bisector edges that survive clipping; an edge
/// found from either side makes the pair adjacent, so `w` is symmetric even
/// when round-off shortens one side's copy of a near-degenerate edge below
/// the length cutoff.
pub fn build_tessellation(set: &PlanarSet) -> Result<Tessellation> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some((a, b)) = set.find_duplicate() {
        return Err(Error::DuplicatePoint(a, b));
    }
    let cells = voronoi_cells(set.points(), set.domain());
    let n = cells.len();
    let mut w: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, poly) in cells.iter().enumerate() {
        for j in poly.tags.iter().flatten() {
            w[i].push(*j);
            w[*j].push(i);
        }
    }
    let polygons = cells.into_iter().map(|c| c.verts).collect();
    Tessellation::from_parts(
        set.points().to_vec(),
        polygons,
        w,
        set.domain(),
        TessellationMeta {
            seed: None,
            min_spacing: set.min_spacing(),
        },
    )
}
