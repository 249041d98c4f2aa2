//! File formats: tessellation and point-set JSON, point CSV, state text.

use std::fs;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::automaton::AutomatonState;
use crate::error::{Error, Result};
use crate::geometry::{Disc, PlanarSet, Point, Tessellation, TessellationMeta};

#[derive(Debug, Serialize, Deserialize)]
struct DomainDoc {
    cx: f64,
    cy: f64,
    r: f64,
}

impl From<Disc> for DomainDoc {
    fn from(d: Disc) -> Self {
        DomainDoc {
            cx: d.center.x,
            cy: d.center.y,
            r: d.radius,
        }
    }
}

impl From<DomainDoc> for Disc {
    fn from(d: DomainDoc) -> Self {
        Disc::new(Point::new(d.cx, d.cy), d.r)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CellDoc {
    polygon: Vec<Point>,
    w: Vec<usize>,
    u: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MetaDoc {
    seed: Option<u64>,
    min_spacing: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct TessellationDoc {
    points: Vec<Point>,
    cells: Vec<CellDoc>,
    domain: DomainDoc,
    meta: MetaDoc,
}

#[derive(Debug, Serialize, Deserialize)]
struct PlanarSetDoc {
    points: Vec<Point>,
    domain: DomainDoc,
    #[serde(default)]
    min_spacing: f64,
}

pub fn tessellation_to_writer<W: Write>(t: &Tessellation, out: W) -> Result<()> {
    let doc = TessellationDoc {
        points: t.points().to_vec(),
        cells: (0..t.len())
            .map(|i| CellDoc {
                polygon: t.polygon(i).to_vec(),
                w: t.w(i).to_vec(),
                u: t.u(i).to_vec(),
            })
            .collect(),
        domain: t.domain().into(),
        meta: MetaDoc {
            seed: t.meta().seed,
            min_spacing: t.meta().min_spacing,
        },
    };
    serde_json::to_writer(out, &doc)?;
    Ok(())
}

pub fn tessellation_to_string(t: &Tessellation) -> Result<String> {
    let mut buf = Vec::new();
    tessellation_to_writer(t, &mut buf)?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Parses a tessellation document. The stored `u` lists must agree with
/// the ones derived from `w`.
pub fn tessellation_from_reader<R: Read>(input: R) -> Result<Tessellation> {
    let doc: TessellationDoc = serde_json::from_reader(input)?;
    let (polygons, w, u): (Vec<_>, Vec<_>, Vec<_>) = doc.cells.into_iter().fold(
        (Vec::new(), Vec::new(), Vec::new()),
        |(mut p, mut w, mut u), c| {
            p.push(c.polygon);
            w.push(c.w);
            u.push(c.u);
            (p, w, u)
        },
    );
    let t = Tessellation::from_parts(
        doc.points,
        polygons,
        w,
        doc.domain.into(),
        TessellationMeta {
            seed: doc.meta.seed,
            min_spacing: doc.meta.min_spacing,
        },
    )?;
    for (i, mut stored) in u.into_iter().enumerate() {
        stored.sort_unstable();
        if stored != t.u(i) {
            return Err(Error::InconsistentTessellation(format!(
                "stored second-order neighborhood of cell {i} disagrees with adjacency"
            )));
        }
    }
    Ok(t)
}

pub fn save_tessellation(t: &Tessellation, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    tessellation_to_writer(t, &mut out)?;
    out.flush().map_err(|e| Error::io(path, e))
}

pub fn load_tessellation(path: &Path) -> Result<Tessellation> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    tessellation_from_reader(std::io::BufReader::new(file))
}

pub fn planar_set_to_string(set: &PlanarSet) -> Result<String> {
    Ok(serde_json::to_string(&PlanarSetDoc {
        points: set.points().to_vec(),
        domain: set.domain().into(),
        min_spacing: set.min_spacing(),
    })?)
}

pub fn planar_set_from_str(text: &str) -> Result<PlanarSet> {
    let doc: PlanarSetDoc = serde_json::from_str(text)?;
    PlanarSet::new(doc.points, doc.domain.into(), doc.min_spacing)
}

/// Reads `x,y` rows; a leading non-numeric row is taken as a header.
pub fn points_from_csv(text: &str) -> Result<Vec<Point>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut points = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        if record.len() < 2 {
            return Err(Error::parse("points CSV", format!("row {} has fewer than 2 fields", line + 1)));
        }
        match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => points.push(Point::new(x, y)),
            _ if line == 0 => continue,
            _ => {
                return Err(Error::parse(
                    "points CSV",
                    format!("row {} is not numeric", line + 1),
                ))
            }
        }
    }
    Ok(points)
}

pub fn points_to_csv(points: &[Point]) -> String {
    let mut out = String::from("x,y\n");
    for p in points {
        out.push_str(&format!("{},{}\n", p.x, p.y));
    }
    out
}

/// Loads data points from `.json` (point-set document) or CSV, placing CSV
/// points in `domain`.
pub fn load_points(path: &Path, domain: Disc) -> Result<PlanarSet> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        planar_set_from_str(&text)
    } else {
        PlanarSet::new(points_from_csv(&text)?, domain, 0.0)
    }
}

pub fn load_state(path: &Path) -> Result<AutomatonState> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let line = text.lines().last().unwrap_or("");
    AutomatonState::from_line(line, 0)
}
