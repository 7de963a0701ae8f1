//! CSV and JSON writers. Floats are printed in scientific notation with 15
//! significant digits so that repeated runs diff cleanly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use arcmap::DiskMap;
use num_complex::Complex64;
use serde::Serialize;

use crate::CliError;

pub fn fmt(x: f64) -> String {
    format!("{x:.14e}")
}

/// One CSV cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Num(f64),
    Int(usize),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(k: usize) -> Self {
        Cell::Int(k)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Text(s) => s.clone(),
                    Cell::Num(x) => fmt(*x),
                    Cell::Int(k) => k.to_string(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// `dir/stem_suffix.csv` next to the main output file.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("map");
    path.with_file_name(format!("{stem}_{suffix}.csv"))
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
pub struct MapJson<'a> {
    pub domain: &'a str,
    pub kind: &'static str,
    pub n: usize,
    pub grading_p: u32,
    pub base_point: [f64; 2],
    pub c: f64,
    pub iterations: usize,
    pub residual: f64,
    pub vertices: Vec<[f64; 2]>,
    pub preimages: Vec<[f64; 2]>,
    pub nodes: Vec<[f64; 2]>,
    pub s: Vec<f64>,
    pub zeta: Vec<[f64; 2]>,
}

impl<'a> MapJson<'a> {
    pub fn new(domain: &'a str, map: &DiskMap, grading_p: u32) -> Self {
        let disc = map.disc();
        Self {
            domain,
            kind: match map.kind() {
                arcmap::DomainKind::Bounded => "interior",
                arcmap::DomainKind::Unbounded => "exterior",
            },
            n: disc.n(),
            grading_p,
            base_point: pair(map.base_point()),
            c: map.c(),
            iterations: map.iterations(),
            residual: map.residual(),
            vertices: disc.curve().vertices().iter().map(|&v| pair(v)).collect(),
            preimages: map.preimages().into_iter().map(pair).collect(),
            nodes: disc.points().iter().map(|&p| pair(p)).collect(),
            s: map.s().to_vec(),
            zeta: map.zeta().iter().map(|&z| pair(z)).collect(),
        }
    }
}

pub fn preimage_table(map: &DiskMap) -> Table {
    let mut t = Table::new(&["k", "v_re", "v_im", "w_re", "w_im"]);
    for (k, (v, w)) in map.disc().curve().vertices().iter().zip(map.preimages()).enumerate() {
        t.rows.push(vec![(k + 1).into(), v.re.into(), v.im.into(), w.re.into(), w.im.into()]);
    }
    t
}

/// Samples per grid circle.
const CIRCLE_SAMPLES: usize = 720;

/// `Φ⁻¹` on the circles `|w| = r`, for `r < 1`.
pub fn inverse_polylines(map: &DiskMap, radii: &[f64]) -> Result<Table, CliError> {
    let mut t = Table::new(&["r", "segment", "re", "im"]);
    for &r in radii.iter().filter(|&&r| r < 1.0) {
        let ws: Vec<Complex64> = (0..=CIRCLE_SAMPLES)
            .map(|k| Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / CIRCLE_SAMPLES as f64))
            .collect();
        for z in map.eval_inverse_many(&ws) {
            let z = z?;
            t.rows.push(vec![r.into(), 0usize.into(), z.re.into(), z.im.into()]);
        }
    }
    Ok(t)
}

/// `Φ` on the parts of the circles `|z| = r` inside the domain. Points closer
/// to the boundary than two node spacings are left out, which splits the
/// arcs into numbered segments.
pub fn forward_polylines(map: &DiskMap, radii: &[f64]) -> Result<Table, CliError> {
    let disc = map.disc();
    let pts = disc.points();
    let perimeter: f64 = pts.iter().zip(pts.iter().cycle().skip(1)).map(|(a, b)| (b - a).norm()).sum();
    let margin = 2.0 * perimeter / disc.n() as f64;
    let curve = disc.curve();
    let want_inside = map.kind() == arcmap::DomainKind::Bounded;
    let mut t = Table::new(&["r", "segment", "re", "im"]);
    for &r in radii {
        let mut segment = 0usize;
        let mut open = false;
        for k in 0..=CIRCLE_SAMPLES {
            let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / CIRCLE_SAMPLES as f64);
            if curve.encloses(z) == want_inside && curve.distance(z) > margin {
                let w = map.eval_forward(z)?;
                t.rows.push(vec![r.into(), segment.into(), w.re.into(), w.im.into()]);
                open = true;
            } else if open {
                segment += 1;
                open = false;
            }
        }
    }
    Ok(t)
}

/// Text report of `name value` lines.
pub fn report_lines(items: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in items {
        let _ = writeln!(out, "{k} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_float_format() {
        assert_eq!(fmt(1.0), "1.00000000000000e0");
        assert_eq!(fmt(-0.00123), "-1.23000000000000e-3");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["a", "b", "c"]);
        t.rows.push(vec!["x".into(), 2usize.into(), 0.5.into()]);
        assert_eq!(t.to_csv(), "a,b,c\nx,2,5.00000000000000e-1\n");
    }

    #[test]
    fn sibling_names() {
        assert_eq!(sibling(Path::new("/tmp/out/g.json"), "forward"), PathBuf::from("/tmp/out/g_forward.csv"));
    }
}
