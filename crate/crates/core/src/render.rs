//! Raster (PPM/PGM) and vector (SVG) snapshots of automaton states.
//!
//! The image frames the bounding square of the tessellation's disc; y grows
//! upwards in the domain and downwards in the image. Pixels are painted by
//! center sampling with half-open edge rules, so output bytes depend only on
//! the inputs.

use std::fmt::Write as _;

use crate::automaton::{AutomatonState, CellState};
use crate::geometry::{Point, Tessellation};
use crate::reference::ReferenceDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub const WHITE: Rgb = Rgb(255, 255, 255);
    pub const BLACK: Rgb = Rgb(0, 0, 0);

    fn hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }

    fn luma(self) -> u8 {
        ((299 * self.0 as u32 + 587 * self.1 as u32 + 114 * self.2 as u32 + 500) / 1000) as u8
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderStyle {
    pub resting: Rgb,
    pub excited: Rgb,
    pub refractory: Rgb,
    pub precipitate: Rgb,
    pub background: Rgb,
    pub edge: Rgb,
    /// Reference edge stroke width in pixels.
    pub edge_width: f64,
    /// Side of the square image in pixels.
    pub size: usize,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            resting: Rgb::WHITE,
            excited: Rgb(220, 20, 20),
            refractory: Rgb(190, 190, 190),
            precipitate: Rgb::BLACK,
            background: Rgb::WHITE,
            edge: Rgb(30, 90, 230),
            edge_width: 2.0,
            size: 800,
        }
    }
}

impl RenderStyle {
    pub fn color(&self, state: CellState) -> Rgb {
        match state {
            CellState::Resting => self.resting,
            CellState::Excited => self.excited,
            CellState::Refractory => self.refractory,
            CellState::Precipitate => self.precipitate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<Rgb>,
}

impl Image {
    pub fn new(width: usize, height: usize, fill: Rgb) -> Self {
        Image {
            width,
            height,
            pixels: vec![fill; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        self.pixels[y * self.width + x]
    }

    fn put(&mut self, x: usize, y: usize, c: Rgb) {
        self.pixels[y * self.width + x] = c;
    }

    pub fn count(&self, c: Rgb) -> usize {
        self.pixels.iter().filter(|&&p| p == c).count()
    }

    /// Binary `P6`.
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(3 * self.pixels.len());
        for p in &self.pixels {
            out.extend_from_slice(&[p.0, p.1, p.2]);
        }
        out
    }

    /// Binary `P5` of the luma channel.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(self.pixels.iter().map(|p| p.luma()));
        out
    }

    /// Fills the pixels whose centers fall inside a convex polygon given in
    /// pixel coordinates.
    fn fill_convex(&mut self, poly: &[(f64, f64)], c: Rgb) {
        if poly.len() < 3 {
            return;
        }
        let (ymin, ymax) = poly
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.1), hi.max(p.1)));
        let row_lo = (ymin - 0.5).ceil().max(0.0) as usize;
        let row_hi = ((ymax - 0.5).ceil().max(0.0) as usize).min(self.height);
        for row in row_lo..row_hi {
            let yc = row as f64 + 0.5;
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for k in 0..poly.len() {
                let (a, b) = (poly[k], poly[(k + 1) % poly.len()]);
                let (top, bottom) = if a.1 <= b.1 { (a, b) } else { (b, a) };
                if top.1 <= yc && yc < bottom.1 {
                    let x = top.0 + (yc - top.1) / (bottom.1 - top.1) * (bottom.0 - top.0);
                    lo = lo.min(x);
                    hi = hi.max(x);
                }
            }
            if lo > hi {
                continue;
            }
            let col_lo = (lo - 0.5).ceil().max(0.0) as usize;
            let col_hi = ((hi - 0.5).ceil().max(0.0) as usize).min(self.width);
            for col in col_lo..col_hi {
                self.put(col, row, c);
            }
        }
    }

    fn stroke_segment(&mut self, a: (f64, f64), b: (f64, f64), width: f64, c: Rgb) {
        let half = 0.5 * width;
        let x0 = ((a.0.min(b.0) - half).floor().max(0.0)) as usize;
        let x1 = ((a.0.max(b.0) + half).ceil().max(0.0) as usize).min(self.width);
        let y0 = ((a.1.min(b.1) - half).floor().max(0.0)) as usize;
        let y1 = ((a.1.max(b.1) + half).ceil().max(0.0) as usize).min(self.height);
        let (pa, pb) = (Point::new(a.0, a.1), Point::new(b.0, b.1));
        for y in y0..y1 {
            for x in x0..x1 {
                let p = Point::new(x as f64 + 0.5, y as f64 + 0.5);
                if crate::geometry::polygon::segment_distance(p, pa, pb) <= half {
                    self.put(x, y, c);
                }
            }
        }
    }
}

/// Domain → pixel mapping framing the disc's bounding square.
#[derive(Debug, Clone, Copy)]
struct Viewport {
    left: f64,
    top: f64,
    scale: f64,
}

impl Viewport {
    fn new(t: &Tessellation, size: usize) -> Self {
        let d = t.domain();
        Viewport {
            left: d.center.x - d.radius,
            top: d.center.y + d.radius,
            scale: size as f64 / (2.0 * d.radius),
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        ((p.x - self.left) * self.scale, (self.top - p.y) * self.scale)
    }
}

/// Fills every cell polygon with the color of its state.
///
/// # Panics
///
/// If the state vector does not match the tessellation.
pub fn render_state(t: &Tessellation, s: &AutomatonState, style: &RenderStyle) -> Image {
    assert_eq!(s.len(), t.len(), "state vector length must match cell count");
    let mut img = Image::new(style.size, style.size, style.background);
    let view = Viewport::new(t, style.size);
    for (cell, &state) in s.states.iter().enumerate() {
        let poly: Vec<(f64, f64)> = t.polygon(cell).iter().map(|&p| view.map(p)).collect();
        img.fill_convex(&poly, style.color(state));
    }
    img
}

/// [`render_state`] with the reference edges stroked on top.
pub fn render_overlay(
    t: &Tessellation,
    s: &AutomatonState,
    reference: &ReferenceDiagram,
    style: &RenderStyle,
) -> Image {
    let mut img = render_state(t, s, style);
    let view = Viewport::new(t, style.size);
    for e in reference.edges() {
        img.stroke_segment(view.map(e.a), view.map(e.b), style.edge_width, style.edge);
    }
    img
}

/// SVG 1.1 document with one path per non-background cell and, when given,
/// the reference edges as lines. Coordinates are in domain units.
pub fn render_svg(
    t: &Tessellation,
    s: &AutomatonState,
    reference: Option<&ReferenceDiagram>,
    style: &RenderStyle,
) -> String {
    assert_eq!(s.len(), t.len(), "state vector length must match cell count");
    let d = t.domain();
    let (x0, y0, side) = (d.center.x - d.radius, -(d.center.y + d.radius), 2.0 * d.radius);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="{x0:.4} {y0:.4} {side:.4} {side:.4}">"#,
        size = style.size
    );
    let _ = writeln!(
        out,
        r#"<rect x="{x0:.4}" y="{y0:.4}" width="{side:.4}" height="{side:.4}" fill="{}"/>"#,
        style.background.hex()
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" stroke="none">"#);
    for (cell, &state) in s.states.iter().enumerate() {
        let color = style.color(state);
        if color == style.background {
            continue;
        }
        let mut path = String::new();
        for (k, p) in t.polygon(cell).iter().enumerate() {
            let _ = write!(path, "{}{:.4},{:.4}", if k == 0 { "M" } else { " L" }, p.x, p.y);
        }
        let _ = writeln!(out, r#"<path d="{path} Z" fill="{}"/>"#, color.hex());
    }
    if let Some(reference) = reference {
        let width = style.edge_width * side / style.size as f64;
        for e in reference.edges() {
            let _ = writeln!(
                out,
                r#"<line x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="{}" stroke-width="{width:.4}"/>"#,
                e.a.x,
                e.a.y,
                e.b.x,
                e.b.y,
                style.edge.hex()
            );
        }
    }
    let _ = writeln!(out, "</g>\n</svg>");
    out
}

/// File name of history frame `k`.
pub fn frame_name(k: usize) -> String {
    format!("frame_{k:05}.ppm")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{run_to_fixpoint, AutomatonConfig};
    use crate::geometry::{build_tessellation, pack_points};
    use crate::projection::seed_from_points;
    use crate::reference::exact_voronoi;
    use crate::scenario;

    fn small() -> Tessellation {
        build_tessellation(&pack_points(100.0, 5.0, 300, 6).unwrap()).unwrap()
    }

    fn style(size: usize) -> RenderStyle {
        RenderStyle {
            size,
            ..RenderStyle::default()
        }
    }

    #[test]
    fn resting_is_blank() {
        let t = small();
        let img = render_state(&t, &AutomatonState::resting(t.len()), &style(64));
        assert_eq!(img.count(Rgb::WHITE), 64 * 64);
    }

    #[test]
    fn precipitate_fills_domain_without_gaps() {
        let t = small();
        let mut s = AutomatonState::resting(t.len());
        s.states.fill(CellState::Precipitate);
        let n = 200;
        let img = render_state(&t, &s, &style(n));
        // Every pixel whose center is well inside the disc is black.
        for y in 0..n {
            for x in 0..n {
                let (dx, dy) = (x as f64 + 0.5 - 100.0, y as f64 + 0.5 - 100.0);
                let r = dx.hypot(dy);
                if r < 99.0 {
                    assert_eq!(img.get(x, y), Rgb::BLACK, "hole at {x},{y}");
                } else if r > 101.0 {
                    assert_eq!(img.get(x, y), Rgb::WHITE);
                }
            }
        }
    }

    #[test]
    fn output_is_byte_deterministic() {
        let t = small();
        let mut s = AutomatonState::resting(t.len());
        s.states[3] = CellState::Excited;
        s.states[9] = CellState::Refractory;
        let a = render_state(&t, &s, &style(96)).to_ppm();
        let b = render_state(&t, &s, &style(96)).to_ppm();
        assert_eq!(a, b);
        assert!(a.starts_with(b"P6\n96 96\n255\n"));
        assert_eq!(a.len(), 13 + 96 * 96 * 3);
        let pgm = render_state(&t, &s, &style(10)).to_pgm();
        assert_eq!(pgm.len(), 13 + 100);
        assert_eq!(render_svg(&t, &s, None, &style(96)), render_svg(&t, &s, None, &style(96)));
    }

    #[test]
    fn empty_reference_overlay_matches_state() {
        let t = small();
        let one = crate::geometry::PlanarSet::new(vec![Point::new(0.0, 0.0)], t.domain(), 0.0).unwrap();
        let reference = exact_voronoi(&one).unwrap();
        let s = AutomatonState::resting(t.len());
        assert_eq!(render_overlay(&t, &s, &reference, &style(64)), render_state(&t, &s, &style(64)));
    }

    #[test]
    fn two_point_band_straddles_bisector() {
        let t = build_tessellation(&pack_points(150.0, 5.0, 1400, 12).unwrap()).unwrap();
        let data = scenario::two_points(150.0);
        let reference = exact_voronoi(&data).unwrap();
        let seed = seed_from_points(&t, &data, 9.0).unwrap();
        let run = run_to_fixpoint(&t, &seed.state, &AutomatonConfig::new(0.4).unwrap(), false);
        let size = 300;
        let img = render_state(&t, &run.final_state, &style(size));
        // Black pixel density within the band around x = 0 beats the density elsewhere.
        let band_px = 12.0 * size as f64 / 300.0;
        let (mut inside, mut inside_total, mut outside, mut outside_total) = (0, 0, 0, 0);
        for y in 0..size {
            for x in 0..size {
                let dx = (x as f64 + 0.5 - size as f64 / 2.0).abs();
                let black = img.get(x, y) == Rgb::BLACK;
                if dx <= band_px {
                    inside_total += 1;
                    inside += black as usize;
                } else {
                    outside_total += 1;
                    outside += black as usize;
                }
            }
        }
        assert!(inside > 0);
        assert!(inside as f64 / inside_total as f64 > outside as f64 / outside_total as f64);
        let overlay = render_overlay(&t, &run.final_state, &reference, &style(size));
        assert!(overlay.count(RenderStyle::default().edge) > 0);
        let svg = render_svg(&t, &run.final_state, Some(&reference), &style(size));
        assert!(svg.contains("<line") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn frame_names() {
        assert_eq!(frame_name(7), "frame_00007.ppm");
    }
}
