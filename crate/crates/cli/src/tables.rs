//! Datasets behind the published tables and figures.

use std::f64::consts::PI;

use arcmap::domains::{self, LArcBows, LShape, NamedDomain};
use arcmap::modulus::{modulus_report, ModulusReport, QuadrilateralSpec};
use arcmap::specfun::psi_ratio;
use arcmap::{map_to_disk, BoundaryDiscretization, DomainKind, SolverOptions};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::input::adjust_n;
use crate::output::{Cell, Table};
use crate::CliError;

pub const TABLE_NAMES: &[&str] = &[
    "half",
    "lshape",
    "lshape-arc",
    "tre",
    "trapezoid",
    "ext-rect",
    "ext-poly",
    "gear6",
    "multitooth",
    "annular",
    "onetooth-sweep",
];

#[derive(Debug, Clone)]
pub struct TableConfig {
    /// Overrides the table's own node count.
    pub n: Option<usize>,
    pub grading_p: u32,
    pub solver: SolverOptions,
}

impl TableConfig {
    fn n(&self, default: usize, m: usize) -> usize {
        adjust_n(self.n.unwrap_or(default), m)
    }

    fn spec(&self, d: &NamedDomain, marked: [usize; 4], default_n: usize) -> Result<QuadrilateralSpec, CliError> {
        let n = self.n(default_n, d.poly.len());
        let spec = QuadrilateralSpec::from_vertices(d.poly.clone(), marked.map(|v| v - 1), n, d.kind)?;
        Ok(spec.with_grading(self.grading_p)?.with_solver(self.solver))
    }

    fn default_spec(&self, d: &NamedDomain, default_n: usize) -> Result<QuadrilateralSpec, CliError> {
        let n = self.n(default_n, d.poly.len());
        Ok(d.spec(n)?.with_grading(self.grading_p)?.with_solver(self.solver))
    }
}

pub fn run(name: &str, cfg: &TableConfig) -> Result<Table, CliError> {
    match name {
        "half" => half(cfg),
        "lshape" => vertex_table(cfg, &domains::l_shaped(LShape::Straight)?, &L_ROWS, 1 << 13),
        "lshape-arc" => {
            let d = domains::l_shaped(LShape::Arc { eps: domains::L_ARC_EPS, bows: LArcBows::UpperLeft })?;
            vertex_table(cfg, &d, &LARC_ROWS, 1 << 13)
        }
        "tre" => vertex_table(cfg, &domains::tre_polygon()?, &TRE_ROWS, 7 << 10),
        "trapezoid" => trapezoid(cfg),
        "ext-rect" => exterior_rectangle(cfg),
        "ext-poly" => exterior_polygons(cfg),
        "gear6" => preimages(cfg, &domains::gear6()?, &GEAR6_W, 1, 3 << 11),
        "multitooth" => preimages(cfg, &domains::multitooth12()?, &MULTITOOTH_W, 0, 3 << 12),
        "annular" => annular(cfg),
        "onetooth-sweep" => one_tooth_sweep(cfg),
        _ => Err(CliError::Input(format!("unknown table {name:?}; known: {}", TABLE_NAMES.join(", ")))),
    }
}

/// Runs independent cases on the worker pool, keeping their order.
fn par_rows<T: Sync>(
    cases: &[T],
    f: impl Fn(&T) -> Result<Vec<Cell>, CliError> + Sync + Send,
) -> Result<Vec<Vec<Cell>>, CliError> {
    cases.par_iter().map(f).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// `(r, s, m, n)` with `σ = mπ`, `β = nπ`; `m`, `n` as printed.
const HALF_ROWS: [(f64, f64, &str, &str); 5] = [
    (-0.8, 0.2, "1/8", "1/3"),
    (-0.5, 0.3, "1/6", "2/5"),
    (-0.2, 0.5, "1/5", "1/2"),
    (0.2, 0.6, "1/4", "3/5"),
    (0.2, 0.8, "1/4", "4/5"),
];

fn fraction(s: &str) -> f64 {
    let (a, b) = s.split_once('/').expect("fraction literal");
    a.parse::<f64>().expect("numerator") / b.parse::<f64>().expect("denominator")
}

fn half(cfg: &TableConfig) -> Result<Table, CliError> {
    let mut t = Table::new(&["r", "s", "m", "n_angle", "n", "modulus", "exact", "rel_error"]);
    t.rows = par_rows(&HALF_ROWS, |&(r, s, m, b)| {
        let (sigma, beta) = (fraction(m) * PI, fraction(b) * PI);
        let d = domains::half_disk(r, s, sigma, beta)?;
        let spec = cfg.default_spec(&d, 1 << 13)?;
        let got = modulus_report(&spec, DomainKind::Bounded)?.modulus;
        let exact = domains::exact_half_disk_modulus(r, s, sigma, beta)?;
        Ok(vec![
            r.into(),
            s.into(),
            m.into(),
            b.into(),
            spec.n.into(),
            got.into(),
            exact.into(),
            rel(got, exact).into(),
        ])
    })?;
    Ok(t)
}

const L_ROWS: [([usize; 4], f64); 7] = [
    ([1, 3, 5, 6], 1.73205080756888),
    ([5, 6, 7, 8], 1.73205080756888),
    ([1, 3, 5, 7], 1.0),
    ([8, 4, 6, 7], 0.78170096134806),
    ([8, 1, 3, 6], 1.70916888655749),
    ([8, 1, 5, 6], 2.55852314234188),
    ([8, 2, 4, 6], 1.56340192269611),
];

const LARC_ROWS: [([usize; 4], f64); 7] = [
    ([1, 3, 5, 6], 1.74325313824307),
    ([5, 6, 7, 8], 1.58841772274399),
    ([1, 3, 5, 7], 1.10535075580239),
    ([8, 4, 6, 7], 0.84849597438205),
    ([8, 1, 3, 6], 1.72040886827649),
    ([8, 1, 5, 6], 2.58094977005996),
    ([8, 2, 4, 6], 1.57581541654770),
];

/// The printed table lists `v1,v2,v5,v7` twice; the first of those is `v1,v2,v5,v6`.
const TRE_ROWS: [([usize; 4], f64); 10] = [
    ([1, 2, 3, 4], 2.45771442325834),
    ([1, 2, 3, 5], 1.35593720891099),
    ([1, 2, 3, 6], 1.05881208405979),
    ([1, 2, 3, 7], 0.61626814533203),
    ([1, 2, 4, 5], 1.36608045307310),
    ([1, 2, 4, 6], 1.06274475848552),
    ([1, 2, 4, 7], 0.61717041892812),
    ([1, 2, 5, 6], 1.21717866219720),
    ([1, 2, 5, 7], 0.64658016206138),
    ([1, 2, 6, 7], 0.70102635018388),
];

fn vertex_table(
    cfg: &TableConfig,
    d: &NamedDomain,
    rows: &[([usize; 4], f64)],
    default_n: usize,
) -> Result<Table, CliError> {
    let mut t = Table::new(&["z1", "z2", "z3", "z4", "n", "modulus", "reference", "rel_error", "reciprocal_error"]);
    t.rows = par_rows(rows, |&(v, want)| {
        let spec = cfg.spec(d, v, default_n)?;
        let rep: ModulusReport = modulus_report(&spec, d.kind)?;
        let mut row: Vec<Cell> = v.iter().map(|k| Cell::Text(format!("v{k}"))).collect();
        row.extend([
            spec.n.into(),
            rep.modulus.into(),
            want.into(),
            rel(rep.modulus, want).into(),
            rep.reciprocal_error.into(),
        ]);
        Ok(row)
    })?;
    Ok(t)
}

fn trapezoid(cfg: &TableConfig) -> Result<Table, CliError> {
    let ls: Vec<f64> = (1..=16).map(|k| 1.0 + 0.25 * k as f64).collect();
    let mut t = Table::new(&["L", "n", "modulus", "exact", "rel_error"]);
    t.rows = par_rows(&ls, |&l| {
        let spec = cfg.default_spec(&domains::trapezoid(l)?, 1 << 13)?;
        let got = modulus_report(&spec, DomainKind::Bounded)?.modulus;
        let exact = domains::exact_trapezoid_modulus(l)?;
        Ok(vec![l.into(), spec.n.into(), got.into(), exact.into(), rel(got, exact).into()])
    })?;
    Ok(t)
}

fn exterior_rectangle(cfg: &TableConfig) -> Result<Table, CliError> {
    let (lo, hi) = (0.02787f64, 0.7306f64);
    let kappas: Vec<f64> = (0..10).map(|i| lo * (hi / lo).powf(i as f64 / 9.0)).collect();
    let mut t = Table::new(&["kappa", "a", "b", "n", "modulus", "exact", "rel_error"]);
    t.rows = par_rows(&kappas, |&kappa| {
        let b = 1.0 / psi_ratio(kappa)?;
        let spec = cfg.default_spec(&domains::rectangle(1.0, b)?, 1 << 13)?;
        let got = modulus_report(&spec, DomainKind::Unbounded)?.modulus;
        let exact = domains::exact_exterior_rectangle_modulus(1.0, b)?;
        Ok(vec![kappa.into(), 1.0.into(), b.into(), spec.n.into(), got.into(), exact.into(), rel(got, exact).into()])
    })?;
    Ok(t)
}

fn exterior_polygons(cfg: &TableConfig) -> Result<Table, CliError> {
    let cases = [("P1", 0.9923416331), ("P2", 0.9592571729)];
    let mut t = Table::new(&["polygon", "n", "modulus", "reference", "abs_diff"]);
    t.rows = par_rows(&cases, |&(name, want)| {
        let d = if name == "P1" { domains::polygon_p1()? } else { domains::polygon_p2()? };
        let spec = cfg.default_spec(&d, 1 << 13)?;
        let got = modulus_report(&spec, DomainKind::Unbounded)?.modulus;
        Ok(vec![name.into(), spec.n.into(), got.into(), want.into(), (got - want).abs().into()])
    })?;
    Ok(t)
}

const GEAR6_W: [(f64, f64); 6] = [
    (0.97953567010215, 0.20127064117138),
    (0.92181215666441, 0.38763687624595),
    (-0.60224821653432, 0.79830889114505),
    (-0.82674608972861, 0.56257524218406),
    (-0.33447524422818, -0.94240453680917),
    (-0.20794689838982, -0.97814011647108),
];

const MULTITOOTH_W: [(f64, f64); 12] = [
    (0.86701428817497, 0.49828327696246),
    (-0.28316473230969, 0.95907128743174),
    (-0.56900711726358, 0.82233259725210),
    (-0.65069062054555, 0.75934295040781),
    (-0.71186505065025, 0.70231627466742),
    (-0.95549393111898, 0.29501075843909),
    (-0.97908358634907, 0.20345842558580),
    (-0.62508676492722, -0.78055527434822),
    (-0.32775376595675, -0.94476318138524),
    (0.97086850902193, -0.23961289236922),
    (0.98506920087238, 0.17215884959145),
    (0.95294901093885, 0.30313063611365),
];

/// Vertex images of a gear map normalized at the origin. `shift` pairs
/// vertex `k` with reference row `k + shift`: the six-vertex table lists
/// each image one row later than its vertex.
fn preimages(
    cfg: &TableConfig,
    d: &NamedDomain,
    reference: &[(f64, f64)],
    shift: usize,
    default_n: usize,
) -> Result<Table, CliError> {
    let m = d.poly.len();
    let disc = BoundaryDiscretization::new(&d.poly, cfg.n(default_n, m), cfg.grading_p, d.kind.orientation())?;
    let n = disc.n();
    let map = map_to_disk(disc, Complex64::new(0.0, 0.0), d.kind, &cfg.solver)?;
    let mut t = Table::new(&["k", "n", "v_re", "v_im", "w_re", "w_im", "reference_re", "reference_im", "abs_diff"]);
    for (k, (v, w)) in d.poly.vertices().iter().zip(map.preimages()).enumerate() {
        let (rr, ri) = reference[(k + shift) % m];
        let diff = (w - Complex64::new(rr, ri)).norm();
        t.rows.push(vec![
            (k + 1).into(),
            n.into(),
            v.re.into(),
            v.im.into(),
            w.re.into(),
            w.im.into(),
            rr.into(),
            ri.into(),
            diff.into(),
        ]);
    }
    Ok(t)
}

fn annular(cfg: &TableConfig) -> Result<Table, CliError> {
    let beta = 1.5;
    let ks: Vec<usize> = (1..=9).collect();
    let mut t = Table::new(&["theta_over_pi", "n", "exterior", "half_interior", "abs_diff"]);
    t.rows = par_rows(&ks, |&k| {
        let theta = 0.1 * k as f64 * PI;
        let ext_spec = cfg.default_spec(&domains::annular_rectangle(beta, theta)?, 1 << 13)?;
        let ext = modulus_report(&ext_spec, DomainKind::Unbounded)?.modulus;
        let gear = modulus_report(&cfg.default_spec(&domains::one_tooth(beta, theta)?, 1 << 13)?, DomainKind::Bounded)?;
        let half = 0.5 * gear.modulus;
        Ok(vec![(0.1 * k as f64).into(), ext_spec.n.into(), ext.into(), half.into(), (ext - half).abs().into()])
    })?;
    Ok(t)
}

fn one_tooth_sweep(cfg: &TableConfig) -> Result<Table, CliError> {
    let betas = [1.1, 1.25, 1.5, 2.0];
    // θ = 0.03π .. 0.97π; closer to the ends the tooth or the gap gets too
    // thin for double precision.
    let fractions: Vec<f64> = (3..=97).map(|k| k as f64 / 100.0).collect();
    let cases: Vec<(f64, f64)> = betas.iter().flat_map(|&b| fractions.iter().map(move |&f| (b, f))).collect();
    let values: Vec<(f64, usize)> = cases
        .par_iter()
        .map(|&(beta, f)| {
            let spec = cfg.default_spec(&domains::one_tooth(beta, f * PI)?, 1 << 10)?;
            Ok((modulus_report(&spec, DomainKind::Bounded)?.modulus, spec.n))
        })
        .collect::<Result<_, CliError>>()?;
    let mut t = Table::new(&["beta", "theta_over_pi", "n", "modulus", "is_max"]);
    for (bi, &beta) in betas.iter().enumerate() {
        let chunk = &values[bi * fractions.len()..(bi + 1) * fractions.len()];
        let top = (0..chunk.len()).max_by(|&a, &b| chunk[a].0.total_cmp(&chunk[b].0)).unwrap_or(0);
        for (k, (&f, &(m, n))) in fractions.iter().zip(chunk).enumerate() {
            t.rows.push(vec![beta.into(), f.into(), n.into(), m.into(), usize::from(k == top).into()]);
        }
    }
    Ok(t)
}
