use super::Point;

/// Uniform bucket grid over the bounding box of a point set.
#[derive(Debug, Clone)]
pub(crate) struct SpatialGrid {
    origin: Point,
    cell: f64,
    cols: usize,
    rows: usize,
    buckets: Vec<Vec<u32>>,
}

impl SpatialGrid {
    pub fn new(points: &[Point], cell: f64) -> Self {
        let (mut lo, mut hi) = (
            Point::new(f64::INFINITY, f64::INFINITY),
            Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for p in points {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if points.is_empty() {
            lo = Point::default();
            hi = Point::default();
        }
        Self::with_bounds(lo, hi, cell, points)
    }

    pub fn with_bounds(lo: Point, hi: Point, cell: f64, points: &[Point]) -> Self {
        let cols = (((hi.x - lo.x) / cell).floor() as usize + 1).max(1);
        let rows = (((hi.y - lo.y) / cell).floor() as usize + 1).max(1);
        let mut grid = SpatialGrid {
            origin: lo,
            cell,
            cols,
            rows,
            buckets: vec![Vec::new(); cols * rows],
        };
        for (i, &p) in points.iter().enumerate() {
            grid.insert(i, p);
        }
        grid
    }

    pub fn cell_of(&self, p: Point) -> (usize, usize) {
        let c = ((p.x - self.origin.x) / self.cell).floor();
        let r = ((p.y - self.origin.y) / self.cell).floor();
        (
            (c.max(0.0) as usize).min(self.cols - 1),
            (r.max(0.0) as usize).min(self.rows - 1),
        )
    }

    pub fn insert(&mut self, index: usize, p: Point) {
        let (c, r) = self.cell_of(p);
        self.buckets[r * self.cols + c].push(index as u32);
    }

    pub fn bucket(&self, c: usize, r: usize) -> &[u32] {
        &self.buckets[r * self.cols + c]
    }

    /// Visits every stored index whose bucket intersects the square of
    /// half-width `reach` around `p`.
    pub fn for_each_near(&self, p: Point, reach: f64, mut f: impl FnMut(usize)) {
        let lo = self.cell_of(Point::new(p.x - reach, p.y - reach));
        let hi = self.cell_of(Point::new(p.x + reach, p.y + reach));
        for r in lo.1..=hi.1 {
            for c in lo.0..=hi.0 {
                for &i in self.bucket(c, r) {
                    f(i as usize);
                }
            }
        }
    }

    /// Visits the buckets on the Chebyshev ring `k` around bucket `(c, r)`.
    /// Returns false once the ring lies entirely outside the grid.
    pub fn for_each_in_ring(&self, (c, r): (usize, usize), k: usize, mut f: impl FnMut(usize)) -> bool {
        let (c, r, k) = (c as isize, r as isize, k as isize);
        let (cols, rows) = (self.cols as isize, self.rows as isize);
        if c - k < 0 && r - k < 0 && c + k >= cols && r + k >= rows {
            return false;
        }
        let mut visit = |cc: isize, rr: isize| {
            if cc >= 0 && rr >= 0 && cc < cols && rr < rows {
                for &i in self.bucket(cc as usize, rr as usize) {
                    f(i as usize);
                }
            }
        };
        if k == 0 {
            visit(c, r);
            return true;
        }
        for cc in c - k..=c + k {
            visit(cc, r - k);
            visit(cc, r + k);
        }
        for rr in r - k + 1..r + k {
            visit(c - k, rr);
            visit(c + k, rr);
        }
        true
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }
}
