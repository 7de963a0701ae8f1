//! Domain loading and parsing of command-line values.

use std::path::Path;

use arcmap::domains::{self, NamedDomain};
use arcmap::modulus::{default_base_point, MarkedPoint};
use arcmap::{ArcPolygon, DomainKind, PolygonJson};
use num_complex::Complex64;

use crate::CliError;

/// A builtin name such as `gear6` or `half:-0.8,0.2,0.3927,1.0472`, or a path to a JSON polygon.
pub fn load_domain(source: &str) -> Result<NamedDomain, CliError> {
    let path = Path::new(source);
    if source.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {source}: {e}")))?;
        let json: PolygonJson =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bad domain JSON in {source}: {e}")))?;
        let poly = ArcPolygon::try_from(json)?;
        let centroid = poly.vertices().iter().sum::<Complex64>() / poly.len() as f64;
        let base = default_base_point(&poly, centroid)?;
        return Ok(NamedDomain {
            name: source.to_string(),
            poly,
            kind: DomainKind::Bounded,
            default_base_point: base,
            default_marked: None,
        });
    }
    Ok(domains::builtin(source)?)
}

/// Smallest `m 2^k >= n`; the discretization needs `n` to be a multiple of `m`.
pub fn adjust_n(n: usize, m: usize) -> usize {
    let mut out = m;
    while out < n {
        out *= 2;
    }
    out
}

/// `n` adjusted to the domain, with a note on stderr when it changed.
pub fn node_count(n: usize, poly: &ArcPolygon) -> Result<usize, CliError> {
    if n == 0 {
        return Err(CliError::Input("--n must be positive".into()));
    }
    let adjusted = adjust_n(n, poly.len());
    if adjusted != n {
        eprintln!("note: n rounded up from {n} to {adjusted} (a power-of-two multiple of the {} vertices)", poly.len());
    }
    Ok(adjusted)
}

fn number(s: &str) -> Result<f64, CliError> {
    let x: f64 = s.trim().parse().map_err(|_| CliError::Input(format!("bad number {s:?}")))?;
    if !x.is_finite() {
        return Err(CliError::Input(format!("bad number {s:?}")));
    }
    Ok(x)
}

/// `re,im` or a single real number.
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(number(re)?, number(im)?)),
        None => Ok(Complex64::new(number(s)?, 0.0)),
    }
}

/// Marked points `v1,t:1.25,xy:0.5,0.5,v4`: vertex names (1-based), raw
/// parameters, or boundary coordinates.
pub fn parse_points(s: &str, m: usize) -> Result<[MarkedPoint; 4], CliError> {
    let tokens: Vec<&str> = s.split(',').map(str::trim).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let tok = tokens[i];
        if let Some(v) = tok.strip_prefix('v') {
            let k: usize = v.parse().map_err(|_| CliError::Input(format!("bad vertex name {tok:?}")))?;
            if k == 0 || k > m {
                return Err(CliError::Input(format!("vertex {tok} out of range v1..v{m}")));
            }
            out.push(MarkedPoint::Vertex(k - 1));
        } else if let Some(t) = tok.strip_prefix("t:") {
            out.push(MarkedPoint::Param(number(t)?));
        } else if let Some(re) = tok.strip_prefix("xy:") {
            let im = tokens.get(i + 1).ok_or_else(|| CliError::Input(format!("{tok} needs an imaginary part")))?;
            out.push(MarkedPoint::Point(Complex64::new(number(re)?, number(im)?)));
            i += 1;
        } else {
            return Err(CliError::Input(format!("bad marked point {tok:?}; use v<k>, t:<param> or xy:<re>,<im>")));
        }
        i += 1;
    }
    out.try_into().map_err(|v: Vec<_>| CliError::Input(format!("need exactly 4 marked points, got {}", v.len())))
}

/// `0.3,0.45,0.6` or `a..b` for ten evenly spaced values from `a` to `b`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let radii: Vec<f64> = match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (number(a)?, number(b)?);
            (0..10).map(|k| a + (b - a) * k as f64 / 9.0).collect()
        }
        None => s.split(',').map(number).collect::<Result<_, _>>()?,
    };
    if radii.iter().any(|&r| r <= 0.0) {
        return Err(CliError::Input("grid radii must be positive".into()));
    }
    Ok(radii)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_rounds_up_to_power_of_two_multiples() {
        assert_eq!(adjust_n(4096, 8), 4096);
        assert_eq!(adjust_n(4096, 7), 7168);
        assert_eq!(adjust_n(6144, 6), 6144);
        assert_eq!(adjust_n(5, 4), 8);
        assert_eq!(adjust_n(1, 4), 4);
    }

    #[test]
    fn points_in_all_three_styles() {
        let p = parse_points("v1, t:1.5,xy:-0.5,2,v8", 8).unwrap();
        assert_eq!(p[0], MarkedPoint::Vertex(0));
        assert_eq!(p[1], MarkedPoint::Param(1.5));
        assert_eq!(p[2], MarkedPoint::Point(Complex64::new(-0.5, 2.0)));
        assert_eq!(p[3], MarkedPoint::Vertex(7));
        assert!(parse_points("v1,v2,v3", 8).is_err());
        assert!(parse_points("v1,v2,v3,v9", 8).is_err());
        assert!(parse_points("v1,v2,v3,q", 8).is_err());
        assert!(parse_points("v1,v2,v3,xy:1", 8).is_err());
    }

    #[test]
    fn grid_lists_and_ranges() {
        assert_eq!(parse_grid("0.3,0.6").unwrap(), vec![0.3, 0.6]);
        let r = parse_grid("0.09..0.99").unwrap();
        assert_eq!(r.len(), 10);
        assert!((r[1] - 0.19).abs() < 1e-15 && (r[9] - 0.99).abs() < 1e-15);
        assert!(parse_grid("0,0.5").is_err());
    }

    #[test]
    fn complex_values() {
        assert_eq!(parse_complex("0").unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(parse_complex("-1.5,2").unwrap(), Complex64::new(-1.5, 2.0));
        assert!(parse_complex("x").is_err());
    }
}
