use std::collections::BTreeMap;
use std::io::Write;

use super::Tessellation;
use crate::error::Result;

/// Empirical distributions of neighborhood sizes over all cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NeighborhoodHistogram {
    /// `|w|` → fraction of cells.
    pub first_order: BTreeMap<usize, f64>,
    /// `|u| - |w|` → fraction of cells.
    pub second_order_only: BTreeMap<usize, f64>,
    /// `|u|` → fraction of cells.
    pub u_total: BTreeMap<usize, f64>,
}

impl NeighborhoodHistogram {
    /// Most frequent count; ties go to the smaller count.
    pub fn mode(dist: &BTreeMap<usize, f64>) -> Option<(usize, f64)> {
        dist.iter()
            .fold(None, |best: Option<(usize, f64)>, (&k, &f)| match best {
                Some((_, bf)) if bf >= f => best,
                _ => Some((k, f)),
            })
    }

    /// The `k` most frequent counts, most frequent first.
    pub fn top(dist: &BTreeMap<usize, f64>, k: usize) -> Vec<usize> {
        let mut entries: Vec<(usize, f64)> = dist.iter().map(|(&c, &f)| (c, f)).collect();
        entries.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        entries.into_iter().take(k).map(|(c, _)| c).collect()
    }

    /// CSV with header `kind,count,fraction`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let io = |e| crate::Error::io("<histogram>", e);
        writeln!(out, "kind,count,fraction").map_err(io)?;
        for (kind, dist) in [
            ("first_order", &self.first_order),
            ("second_order_only", &self.second_order_only),
            ("u_total", &self.u_total),
        ] {
            for (count, fraction) in dist {
                writeln!(out, "{kind},{count},{fraction}").map_err(io)?;
            }
        }
        Ok(())
    }
}

pub fn neighborhood_histogram(t: &Tessellation) -> NeighborhoodHistogram {
    let mut hist = NeighborhoodHistogram::default();
    if t.is_empty() {
        return hist;
    }
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    let mut second: BTreeMap<usize, usize> = BTreeMap::new();
    let mut total: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..t.len() {
        let (w, u) = (t.w(i).len(), t.u_size(i));
        *first.entry(w).or_default() += 1;
        *second.entry(u - w).or_default() += 1;
        *total.entry(u).or_default() += 1;
    }
    let n = t.len() as f64;
    let normalize = |m: BTreeMap<usize, usize>| m.into_iter().map(|(k, c)| (k, c as f64 / n)).collect();
    hist.first_order = normalize(first);
    hist.second_order_only = normalize(second);
    hist.u_total = normalize(total);
    hist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_tessellation, pack_points};

    #[test]
    fn single_cell() {
        let t = build_tessellation(&pack_points(10.0, 1.0, 1, 0).unwrap()).unwrap();
        let h = neighborhood_histogram(&t);
        assert_eq!(h.first_order.get(&0), Some(&1.0));
        assert_eq!(h.u_total.get(&0), Some(&1.0));
    }

    #[test]
    fn distributions_sum_to_one() {
        let t = build_tessellation(&pack_points(100.0, 5.0, 300, 9).unwrap()).unwrap();
        let h = neighborhood_histogram(&t);
        for d in [&h.first_order, &h.second_order_only, &h.u_total] {
            assert!((d.values().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        let mut csv = Vec::new();
        h.write_csv(&mut csv).unwrap();
        let text = String::from_utf8(csv).unwrap();
        assert!(text.starts_with("kind,count,fraction\nfirst_order,"));
    }
}
