//! Convex polygon helpers: half-plane clipping with edge provenance, area,
//! containment, smallest enclosing circle and segment distance.

use super::Point;

/// Convex counter-clockwise polygon whose edge `k` (from `verts[k]` to
/// `verts[k + 1]`) remembers which site's bisector produced it. `None` marks
/// an edge of the bounding domain.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct TaggedPolygon {
    pub verts: Vec<Point>,
    pub tags: Vec<Option<usize>>,
}

impl TaggedPolygon {
    pub fn from_boundary(verts: Vec<Point>) -> Self {
        let tags = vec![None; verts.len()];
        TaggedPolygon { verts, tags }
    }

    pub fn max_dist_from(&self, p: Point) -> f64 {
        self.verts.iter().map(|v| v.dist(p)).fold(0.0, f64::max)
    }

    /// Keeps the part of the polygon at least as close to `site` as to
    /// `other`; new edges along the bisector are tagged `other_index`.
    /// Edges shorter than `eps` are dropped.
    pub fn clip_bisector(&mut self, site: Point, other: Point, other_index: usize, eps: f64) {
        let normal = other - site;
        let mid = site.midpoint(other);
        let side: Vec<f64> = self.verts.iter().map(|&v| (v - mid).dot(normal)).collect();
        if side.iter().all(|&s| s <= 0.0) {
            return;
        }
        let n = self.verts.len();
        let mut verts = Vec::with_capacity(n + 1);
        let mut tags = Vec::with_capacity(n + 1);
        for k in 0..n {
            let (a, b) = (self.verts[k], self.verts[(k + 1) % n]);
            let (sa, sb) = (side[k], side[(k + 1) % n]);
            let tag = self.tags[k];
            if sa <= 0.0 {
                verts.push(a);
                tags.push(tag);
                if sb > 0.0 {
                    verts.push(lerp(a, b, sa / (sa - sb)));
                    tags.push(Some(other_index));
                }
            } else if sb <= 0.0 {
                verts.push(lerp(a, b, sa / (sa - sb)));
                tags.push(tag);
            }
        }
        self.verts = verts;
        self.tags = tags;
        self.drop_short_edges(eps);
    }

    fn drop_short_edges(&mut self, eps: f64) {
        let mut k = 0;
        while self.verts.len() > 1 && k < self.verts.len() {
            let next = (k + 1) % self.verts.len();
            if self.verts[k].dist(self.verts[next]) < eps {
                // Edge k collapses; the edge leaving `next` now leaves `k`.
                self.tags[k] = self.tags[next];
                self.verts.remove(next);
                self.tags.remove(next);
                if next < k {
                    k -= 1;
                }
            } else {
                k += 1;
            }
        }
    }

    /// Iterates over `(start, end, tag)` for every edge.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point, Option<usize>)> + '_ {
        let n = self.verts.len();
        (0..n).map(move |k| (self.verts[k], self.verts[(k + 1) % n], self.tags[k]))
    }
}

fn lerp(a: Point, b: Point, t: f64) -> Point {
    Point::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
}

/// Signed shoelace area; positive for counter-clockwise loops.
pub fn signed_area(verts: &[Point]) -> f64 {
    let n = verts.len();
    0.5 * (0..n).map(|k| verts[k].cross(verts[(k + 1) % n])).sum::<f64>()
}

pub fn is_convex_ccw(verts: &[Point], tol: f64) -> bool {
    let n = verts.len();
    if n < 3 {
        return false;
    }
    (0..n).all(|k| {
        let (a, b, c) = (verts[k], verts[(k + 1) % n], verts[(k + 2) % n]);
        (b - a).cross(c - b) >= -tol
    })
}

/// Whether `p` lies inside (or within `tol` of) a convex counter-clockwise polygon.
pub fn convex_contains(verts: &[Point], p: Point, tol: f64) -> bool {
    let n = verts.len();
    (0..n).all(|k| {
        let (a, b) = (verts[k], verts[(k + 1) % n]);
        let e = b - a;
        e.cross(p - a) >= -tol * e.norm()
    })
}

pub fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

/// Diameter of the smallest circle enclosing all `pts`.
pub fn enclosing_diameter(pts: &[Point]) -> f64 {
    match pts.len() {
        0 => return 0.0,
        1 => return 0.0,
        _ => {}
    }
    // Incremental construction; polygon vertex counts are small.
    let mut c = pts[0];
    let mut r2 = 0.0;
    let inside = |c: Point, r2: f64, p: Point| p.dist2(c) <= r2 * (1.0 + 1e-12) + 1e-18;
    for i in 1..pts.len() {
        if inside(c, r2, pts[i]) {
            continue;
        }
        c = pts[i];
        r2 = 0.0;
        for j in 0..i {
            if inside(c, r2, pts[j]) {
                continue;
            }
            c = pts[i].midpoint(pts[j]);
            r2 = c.dist2(pts[i]);
            for k in 0..j {
                if inside(c, r2, pts[k]) {
                    continue;
                }
                match circumcenter(pts[i], pts[j], pts[k]) {
                    Some(cc) => {
                        c = cc;
                        r2 = cc.dist2(pts[i]);
                    }
                    None => {
                        // Collinear: the farthest pair spans the circle.
                        let pairs = [(pts[i], pts[j]), (pts[i], pts[k]), (pts[j], pts[k])];
                        let (a, b) = pairs
                            .into_iter()
                            .max_by(|x, y| x.0.dist2(x.1).total_cmp(&y.0.dist2(y.1)))
                            .unwrap();
                        c = a.midpoint(b);
                        r2 = c.dist2(a);
                    }
                }
            }
        }
    }
    2.0 * r2.sqrt()
}

fn circumcenter(a: Point, b: Point, c: Point) -> Option<Point> {
    let (ab, ac) = (b - a, c - a);
    let d = 2.0 * ab.cross(ac);
    if d.abs() < 1e-300 {
        return None;
    }
    let (b2, c2) = (ab.dot(ab), ac.dot(ac));
    Some(Point::new(
        a.x + (ac.y * b2 - ab.y * c2) / d,
        a.y + (ab.x * c2 - ac.x * b2) / d,
    ))
}
