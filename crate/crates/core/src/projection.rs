//! Turning data into initial automaton states: excite the cells near data
//! points, or the cells whose generators land on set pixels of a raster.

use std::collections::VecDeque;
use std::io::Write;

use crate::automaton::{AutomatonState, CellState};
use crate::error::{Error, Result};
use crate::geometry::{Disc, PlanarSet, Point, Tessellation};

/// Default distance under which a generator counts as covered by a data point.
pub const DEFAULT_EXCITATION_RADIUS: f64 = 9.0;

/// Binary image, row-major, row 0 at the top. `true` is a set (black) pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl Raster {
    pub fn new(width: usize, height: usize) -> Self {
        Raster {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = Vec::with_capacity(width * height);
        for row in 0..height {
            for col in 0..width {
                bits.push(f(col, row));
            }
        }
        Raster { width, height, bits }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, col: usize, row: usize) -> bool {
        self.bits[row * self.width + col]
    }

    pub fn set(&mut self, col: usize, row: usize, value: bool) {
        self.bits[row * self.width + col] = value;
    }

    pub fn count_set(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Parses plain (`P1`) or raw (`P4`) portable bitmaps.
    pub fn from_pbm(bytes: &[u8]) -> Result<Self> {
        let mut cursor = PbmCursor { bytes, pos: 0 };
        let magic = cursor.token()?;
        let width = cursor.number()?;
        let height = cursor.number()?;
        let mut raster = Raster::new(width, height);
        match magic.as_str() {
            "P1" => {
                for i in 0..width * height {
                    cursor.skip_space_and_comments();
                    match cursor.bytes.get(cursor.pos) {
                        Some(b'0') => {}
                        Some(b'1') => raster.bits[i] = true,
                        other => {
                            return Err(Error::parse(
                                "PBM",
                                format!("expected 0/1 for pixel {i}, found {other:?}"),
                            ))
                        }
                    }
                    cursor.pos += 1;
                }
            }
            "P4" => {
                // Exactly one whitespace byte separates the header from the data.
                cursor.pos += 1;
                let stride = width.div_ceil(8);
                let data = bytes
                    .get(cursor.pos..cursor.pos + stride * height)
                    .ok_or_else(|| Error::parse("PBM", "truncated raster data"))?;
                for row in 0..height {
                    for col in 0..width {
                        let byte = data[row * stride + col / 8];
                        raster.bits[row * width + col] = byte & (0x80 >> (col % 8)) != 0;
                    }
                }
            }
            other => return Err(Error::parse("PBM", format!("unsupported magic {other:?}"))),
        }
        Ok(raster)
    }

    /// Raw `P4` encoding.
    pub fn to_pbm(&self) -> Vec<u8> {
        let mut out = format!("P4\n{} {}\n", self.width, self.height).into_bytes();
        let stride = self.width.div_ceil(8);
        for row in 0..self.height {
            let mut line = vec![0u8; stride];
            for col in 0..self.width {
                if self.get(col, row) {
                    line[col / 8] |= 0x80 >> (col % 8);
                }
            }
            out.extend_from_slice(&line);
        }
        out
    }

    /// Plain `P1` encoding, 35 pixels per line.
    pub fn write_plain_pbm<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "P1\n{} {}", self.width, self.height)?;
        for row in 0..self.height {
            let line: Vec<&str> = (0..self.width)
                .map(|col| if self.get(col, row) { "1" } else { "0" })
                .collect();
            for chunk in line.chunks(35) {
                writeln!(out, "{}", chunk.join(" "))?;
            }
        }
        Ok(())
    }
}

struct PbmCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl PbmCursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<String> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| !b.is_ascii_whitespace() && *b != b'#') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse("PBM", "unexpected end of header"));
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<usize> {
        let tok = self.token()?;
        tok.parse()
            .map_err(|_| Error::parse("PBM", format!("bad dimension {tok:?}")))
    }
}

/// Pixel → domain transform: `x = a·col + b·row + c`, `y = d·col + e·row + f`,
/// where `(col, row)` are continuous pixel coordinates (pixel `(i, j)` spans
/// `[i, i+1) × [j, j+1)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl Affine {
    /// Uniform scale-to-fit, centered in the disc, rows growing downwards.
    pub fn fit(width: usize, height: usize, domain: Disc) -> Self {
        let s = 2.0 * domain.radius / width.max(height).max(1) as f64;
        Affine {
            a: s,
            b: 0.0,
            c: domain.center.x - 0.5 * width as f64 * s,
            d: 0.0,
            e: -s,
            f: domain.center.y + 0.5 * height as f64 * s,
        }
    }

    pub fn apply(&self, col: f64, row: f64) -> Point {
        Point::new(
            self.a * col + self.b * row + self.c,
            self.d * col + self.e * row + self.f,
        )
    }

    pub fn invert(&self, p: Point) -> Option<(f64, f64)> {
        let det = self.a * self.e - self.b * self.d;
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let (x, y) = (p.x - self.c, p.y - self.f);
        Some(((self.e * x - self.b * y) / det, (self.a * y - self.d * x) / det))
    }

    /// Pixel containing `p`, if it falls on the raster.
    pub fn pixel_of(&self, p: Point, width: usize, height: usize) -> Option<(usize, usize)> {
        let (col, row) = self.invert(p)?;
        let (col, row) = (col.floor(), row.floor());
        (col >= 0.0 && row >= 0.0 && col < width as f64 && row < height as f64)
            .then_some((col as usize, row as usize))
    }

    /// Domain length of one pixel side (geometric mean of the axis scales).
    pub fn pixel_size(&self) -> f64 {
        (self.a * self.e - self.b * self.d).abs().sqrt()
    }
}

/// How a run is seeded.
#[derive(Debug, Clone, PartialEq)]
pub enum SeedSpec {
    Points { data: PlanarSet, excitation_radius: f64 },
    Raster { image: Raster, placement: Affine },
}

impl SeedSpec {
    pub fn apply(&self, t: &Tessellation) -> Result<Seed> {
        match self {
            SeedSpec::Points { data, excitation_radius } => seed_from_points(t, data, *excitation_radius),
            SeedSpec::Raster { image, placement } => Ok(seed_from_raster(t, image, placement)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedWarning {
    /// No cell ended up excited.
    NothingExcited,
}

/// An initial state with any diagnostics from seeding.
#[derive(Debug, Clone, PartialEq)]
pub struct Seed {
    pub state: AutomatonState,
    pub warnings: Vec<SeedWarning>,
}

impl Seed {
    fn from_mask(excited: Vec<bool>) -> Self {
        let states: Vec<CellState> = excited
            .iter()
            .map(|&e| if e { CellState::Excited } else { CellState::Resting })
            .collect();
        let mut warnings = Vec::new();
        if !excited.contains(&true) {
            log::warn!("seeding excited no cells");
            warnings.push(SeedWarning::NothingExcited);
        }
        Seed {
            state: AutomatonState { states, t: 0 },
            warnings,
        }
    }
}

/// Excites every cell whose generator lies strictly within `radius` of a
/// data point.
pub fn seed_from_points(t: &Tessellation, data: &PlanarSet, radius: f64) -> Result<Seed> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "excitation radius must be positive, got {radius}"
        )));
    }
    let r2 = radius * radius;
    let excited = t
        .points()
        .iter()
        .map(|g| data.points().iter().any(|p| p.dist2(*g) < r2))
        .collect();
    Ok(Seed::from_mask(excited))
}

/// Excites every cell whose generator falls on a set pixel of `image`.
pub fn seed_from_raster(t: &Tessellation, image: &Raster, placement: &Affine) -> Seed {
    Seed::from_mask(cells_in_mask(t, image, placement))
}

/// Per cell: does its generator land on a set pixel of `mask`?
pub fn cells_in_mask(t: &Tessellation, mask: &Raster, placement: &Affine) -> Vec<bool> {
    t.points()
        .iter()
        .map(|&g| {
            placement
                .pixel_of(g, mask.width(), mask.height())
                .is_some_and(|(c, r)| mask.get(c, r))
        })
        .collect()
}

/// Unset pixels enclosed by set pixels: those not 4-connected to the image
/// border through unset pixels.
pub fn interior_mask(image: &Raster) -> Raster {
    let (w, h) = (image.width(), image.height());
    let mut outside = Raster::new(w, h);
    let mut queue = VecDeque::new();
    let push = |c: usize, r: usize, outside: &mut Raster, queue: &mut VecDeque<(usize, usize)>| {
        if !image.get(c, r) && !outside.get(c, r) {
            outside.set(c, r, true);
            queue.push_back((c, r));
        }
    };
    for c in 0..w {
        push(c, 0, &mut outside, &mut queue);
        push(c, h.saturating_sub(1), &mut outside, &mut queue);
    }
    for r in 0..h {
        push(0, r, &mut outside, &mut queue);
        push(w.saturating_sub(1), r, &mut outside, &mut queue);
    }
    while let Some((c, r)) = queue.pop_front() {
        if c > 0 {
            push(c - 1, r, &mut outside, &mut queue);
        }
        if c + 1 < w {
            push(c + 1, r, &mut outside, &mut queue);
        }
        if r > 0 {
            push(c, r - 1, &mut outside, &mut queue);
        }
        if r + 1 < h {
            push(c, r + 1, &mut outside, &mut queue);
        }
    }
    Raster::from_fn(w, h, |c, r| !image.get(c, r) && !outside.get(c, r))
}

/// Distance from `p` to the nearest set pixel square of `image` under
/// `placement`; infinite for an empty raster.
pub fn distance_to_set_pixels(image: &Raster, placement: &Affine, p: Point) -> f64 {
    let mut best = f64::INFINITY;
    for row in 0..image.height() {
        for col in 0..image.width() {
            if !image.get(col, row) {
                continue;
            }
            let corners = [
                placement.apply(col as f64, row as f64),
                placement.apply(col as f64 + 1.0, row as f64 + 1.0),
            ];
            let (x0, x1) = (corners[0].x.min(corners[1].x), corners[0].x.max(corners[1].x));
            let (y0, y1) = (corners[0].y.min(corners[1].y), corners[0].y.max(corners[1].y));
            let dx = (x0 - p.x).max(p.x - x1).max(0.0);
            let dy = (y0 - p.y).max(p.y - y1).max(0.0);
            best = best.min(dx.hypot(dy));
        }
    }
    best
}
