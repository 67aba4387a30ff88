//! Point evaluation, phase-space plane scans and spin-rotation scans, with the
//! CSV/JSON table format shared by the CLI and the plotting scripts.
//!
//! Table columns, in order:
//!
//! ```text
//! theta2,theta3,alpha,physical,c12,c13,c23,c1_23,c2_13,c3_12,f3,m1,m2,m3
//! ```
//!
//! Numbers carry 12 significant digits with trailing zeros kept (C's
//! `%#.12g`). A column that does not apply to the row is empty in CSV and
//! `null` in JSON. Unphysical plane nodes have empty measure columns.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Deserialize;

use crate::decay::{spin_direction_from_rotation, spin_state, CouplingSet, DecayConfiguration, RotationAxis};
use crate::error::{Error, Result};
use crate::measures::{full_report, EntanglementReport};

pub const HEADER: [&str; 14] = [
    "theta2", "theta3", "alpha", "physical", "c12", "c13", "c23", "c1_23", "c2_13", "c3_12", "f3", "m1", "m2", "m3",
];

pub const DEFAULT_GRID: usize = 181;
pub const DEFAULT_SAMPLES: usize = 361;

/// Parent spin perpendicular to the decay plane, `n = +y`.
pub const SPIN_PERPENDICULAR: (f64, f64) = (FRAC_PI_2, FRAC_PI_2);
/// Tilted parent spin, `theta = phi = pi/4`.
pub const SPIN_TILTED: (f64, f64) = (PI / 4.0, PI / 4.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::Request(format!("unknown format `{other}` (expected csv or json)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScanMode {
    Point(DecayConfiguration),
    /// `grid x grid` nodes over `[0, pi]^2` at a fixed spin direction.
    Plane { grid: usize, spin_theta: f64, spin_phi: f64 },
    /// `samples` rotation angles on `[0, 2 pi)` about `axis` at fixed
    /// `(theta2, theta3)`.
    Spin {
        theta2: f64,
        theta3: f64,
        axis: RotationAxis,
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRequest {
    pub couplings: CouplingSet,
    pub mode: ScanMode,
}

impl ScanRequest {
    pub fn run(&self) -> Result<Vec<ScanRow>> {
        match self.mode {
            ScanMode::Point(cfg) => run_point(&cfg, &self.couplings).map(|r| vec![r]),
            ScanMode::Plane {
                grid,
                spin_theta,
                spin_phi,
            } => run_plane(&self.couplings, grid, spin_theta, spin_phi),
            ScanMode::Spin {
                theta2,
                theta3,
                axis,
                samples,
            } => run_spin(&self.couplings, theta2, theta3, axis, samples),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub theta2: Option<f64>,
    pub theta3: Option<f64>,
    pub alpha: Option<f64>,
    pub physical: bool,
    pub report: Option<EntanglementReport>,
}

impl ScanRow {
    /// Largest absolute difference over all numeric fields; infinite when the
    /// rows differ in which fields are present.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let opt = |a: Option<f64>, b: Option<f64>| match (a, b) {
            (Some(x), Some(y)) => (x - y).abs(),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        let report = match (&self.report, &other.report) {
            (Some(a), Some(b)) => a.max_abs_diff(b),
            (None, None) => 0.0,
            _ => f64::INFINITY,
        };
        if self.physical != other.physical {
            return f64::INFINITY;
        }
        [
            opt(self.theta2, other.theta2),
            opt(self.theta3, other.theta3),
            opt(self.alpha, other.alpha),
            report,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn evaluate(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<EntanglementReport> {
    full_report(&spin_state(cfg, g)?)
}

/// A single configuration. Unphysical points are evaluated too and flagged.
pub fn run_point(cfg: &DecayConfiguration, g: &CouplingSet) -> Result<ScanRow> {
    Ok(ScanRow {
        theta2: Some(cfg.theta2),
        theta3: Some(cfg.theta3),
        alpha: None,
        physical: cfg.is_physical(),
        report: Some(evaluate(cfg, g)?),
    })
}

/// Node `k` of an `n`-point grid over `[0, upper]`, exact at both ends.
fn grid_node(k: usize, n: usize, upper: f64) -> f64 {
    upper * (k as f64 / (n - 1) as f64)
}

/// First error in row order, so failures are reported deterministically
/// whatever the evaluation order was.
fn collect_ordered(rows: Vec<Result<ScanRow>>) -> Result<Vec<ScanRow>> {
    rows.into_iter().collect()
}

/// `grid x grid` scan over `(theta2, theta3) in [0, pi]^2`, `theta2` outer.
pub fn run_plane(g: &CouplingSet, grid: usize, spin_theta: f64, spin_phi: f64) -> Result<Vec<ScanRow>> {
    if grid < 2 {
        return Err(Error::Request(format!("grid size must be at least 2, got {grid}")));
    }
    DecayConfiguration::new(0.0, 0.0, spin_theta, spin_phi)?;
    let rows: Vec<Result<ScanRow>> = (0..grid * grid)
        .into_par_iter()
        .map(|node| {
            let (i, j) = (node / grid, node % grid);
            let cfg = DecayConfiguration::new(grid_node(i, grid, PI), grid_node(j, grid, PI), spin_theta, spin_phi)?;
            let physical = cfg.is_physical();
            let report = if physical {
                Some(evaluate(&cfg, g).map_err(|e| node_error(e, &cfg))?)
            } else {
                None
            };
            Ok(ScanRow {
                theta2: Some(cfg.theta2),
                theta3: Some(cfg.theta3),
                alpha: None,
                physical,
                report,
            })
        })
        .collect();
    collect_ordered(rows)
}

fn node_error(e: Error, cfg: &DecayConfiguration) -> Error {
    match e {
        Error::VanishingAmplitude => Error::Request(format!(
            "vanishing amplitude at theta2 = {}, theta3 = {}, spin = ({}, {})",
            cfg.theta2, cfg.theta3, cfg.spin_theta, cfg.spin_phi
        )),
        other => other,
    }
}

/// Rotates the parent spin from `+z` about `axis` through `samples` angles
/// `alpha_k = 2 pi k / samples`.
pub fn run_spin(g: &CouplingSet, theta2: f64, theta3: f64, axis: RotationAxis, samples: usize) -> Result<Vec<ScanRow>> {
    if samples < 2 {
        return Err(Error::Request(format!("sample count must be at least 2, got {samples}")));
    }
    DecayConfiguration::new(theta2, theta3, 0.0, 0.0)?;
    let rows: Vec<Result<ScanRow>> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let alpha = TAU * (k as f64 / samples as f64);
            let (spin_theta, spin_phi) = spin_direction_from_rotation(axis, alpha)?;
            let cfg = DecayConfiguration::new(theta2, theta3, spin_theta, spin_phi)?;
            Ok(ScanRow {
                theta2: Some(theta2),
                theta3: Some(theta3),
                alpha: Some(alpha),
                physical: cfg.is_physical(),
                report: Some(evaluate(&cfg, g).map_err(|e| node_error(e, &cfg))?),
            })
        })
        .collect();
    collect_ordered(rows)
}

/// Formats like C's `%#.12g`: 12 significant digits, trailing zeros kept.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000000".to_owned();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else if exp == 11 {
        format!("{x:.0}.")
    } else {
        format!("{:.*}", (11 - exp) as usize, x)
    }
}

struct Cells<'a>(&'a ScanRow);

impl Cells<'_> {
    fn numbers(&self) -> [Option<f64>; 13] {
        let r = self.0;
        let mut out = [None; 13];
        out[0] = r.theta2;
        out[1] = r.theta3;
        out[2] = r.alpha;
        if let Some(rep) = &r.report {
            for (slot, v) in out[3..].iter_mut().zip(rep.values()) {
                *slot = Some(v);
            }
        }
        out
    }
}

impl fmt::Display for Cells<'_> {
    /// One CSV record without the line terminator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.numbers();
        let cell = |v: Option<f64>| v.map(format_value).unwrap_or_default();
        write!(f, "{},{},{},{}", cell(n[0]), cell(n[1]), cell(n[2]), self.0.physical)?;
        for v in &n[3..] {
            write!(f, ",{}", cell(*v))?;
        }
        Ok(())
    }
}

pub fn write_csv<W: Write>(rows: &[ScanRow], mut out: W) -> Result<()> {
    writeln!(out, "{}", HEADER.join(","))?;
    for row in rows {
        writeln!(out, "{}", Cells(row))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ScanRow], mut out: W) -> Result<()> {
    writeln!(out, "[")?;
    for (k, row) in rows.iter().enumerate() {
        let n = Cells(row).numbers();
        let mut fields = Vec::with_capacity(HEADER.len());
        for (name, v) in HEADER.iter().zip(n.iter().take(3)) {
            fields.push(format!("\"{name}\":{}", v.map(format_value).unwrap_or_else(|| "null".into())));
        }
        fields.push(format!("\"physical\":{}", row.physical));
        for (name, v) in HEADER[4..].iter().zip(&n[3..]) {
            fields.push(format!("\"{name}\":{}", v.map(format_value).unwrap_or_else(|| "null".into())));
        }
        let sep = if k + 1 == rows.len() { "" } else { "," };
        writeln!(out, "{{{}}}{sep}", fields.join(","))?;
    }
    writeln!(out, "]")?;
    out.flush()?;
    Ok(())
}

pub fn serialize<W: Write>(rows: &[ScanRow], format: OutputFormat, out: W) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Request("nothing to serialize".into()));
    }
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(rows, out),
    }
}

fn assemble(
    line: usize,
    vars: [Option<f64>; 3],
    physical: bool,
    measures: [Option<f64>; 10],
) -> Result<ScanRow> {
    let present = measures.iter().filter(|v| v.is_some()).count();
    let report = match present {
        0 => None,
        10 => Some(EntanglementReport::from_values(measures.map(|v| v.expect("present")))),
        _ => {
            return Err(Error::Parse {
                line,
                msg: "measure columns must be all present or all empty".into(),
            })
        }
    };
    Ok(ScanRow {
        theta2: vars[0],
        theta3: vars[1],
        alpha: vars[2],
        physical,
        report,
    })
}

/// Reads the CSV dialect written by [`write_csv`].
pub fn parse_csv<R: Read>(input: R) -> Result<Vec<ScanRow>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = reader.headers().map_err(|e| Error::Parse {
        line: 1,
        msg: e.to_string(),
    })?;
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(Error::Parse {
            line: 1,
            msg: format!("unexpected header `{}`", header.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let num = |k: usize| -> Result<Option<f64>> {
            let s = &record[k];
            if s.is_empty() {
                return Ok(None);
            }
            s.parse().map(Some).map_err(|_| Error::Parse {
                line,
                msg: format!("column `{}`: `{s}` is not a number", HEADER[k]),
            })
        };
        let physical = match &record[3] {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("column `physical`: `{other}` is not a boolean"),
                })
            }
        };
        let vars = [num(0)?, num(1)?, num(2)?];
        let mut measures = [None; 10];
        for (k, slot) in measures.iter_mut().enumerate() {
            *slot = num(4 + k)?;
        }
        rows.push(assemble(line, vars, physical, measures)?);
    }
    Ok(rows)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRow {
    theta2: Option<f64>,
    theta3: Option<f64>,
    alpha: Option<f64>,
    physical: bool,
    c12: Option<f64>,
    c13: Option<f64>,
    c23: Option<f64>,
    c1_23: Option<f64>,
    c2_13: Option<f64>,
    c3_12: Option<f64>,
    f3: Option<f64>,
    m1: Option<f64>,
    m2: Option<f64>,
    m3: Option<f64>,
}

/// Reads the JSON layout written by [`write_json`].
pub fn parse_json<R: Read>(input: R) -> Result<Vec<ScanRow>> {
    let raw: Vec<JsonRow> = serde_json::from_reader(input).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    raw.into_iter()
        .enumerate()
        .map(|(k, r)| {
            assemble(
                k + 1,
                [r.theta2, r.theta3, r.alpha],
                r.physical,
                [r.c12, r.c13, r.c23, r.c1_23, r.c2_13, r.c3_12, r.f3, r.m1, r.m2, r.m3],
            )
        })
        .collect()
}

/// Parses an angle in radians, or in units of pi: `pi`, `-pi/2`, `5pi/6`,
/// `0.25pi`, `2*pi/3`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let bad = || Error::Request(format!("cannot parse angle `{text}`"));
    let t: String = text
        .trim()
        .to_ascii_lowercase()
        .replace('π', "pi")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad);
    };
    let coef = t[..pos].trim_end_matches('*');
    let rest = &t[pos + 2..];
    let k = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let denom = if rest.is_empty() {
        1.0
    } else {
        rest.strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(bad)?
    };
    let value = k * PI / denom;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decay::Interaction;

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(1.0), "1.00000000000");
        assert_eq!(format_value(0.0), "0.00000000000");
        assert_eq!(format_value(-0.0), "0.00000000000");
        assert_eq!(format_value(PI), "3.14159265359");
        assert_eq!(format_value(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_value(1e-4), "0.000100000000000");
        assert_eq!(format_value(1.5e-5), "1.50000000000e-05");
        assert_eq!(format_value(-2.5e-17), "-2.50000000000e-17");
        assert_eq!(format_value(123456789012.0), "123456789012.");
        assert_eq!(format_value(1e12), "1.00000000000e+12");
        // Rounding that carries into the next decade.
        assert_eq!(format_value(9.999999999999), "10.0000000000");
    }

    #[test]
    fn angle_parsing() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("5pi/6").unwrap(), 5.0 * PI / 6.0);
        assert_eq!(parse_angle(" -pi/2 ").unwrap(), -PI / 2.0);
        assert_eq!(parse_angle("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("0.25pi").unwrap(), 0.25 * PI);
        assert_eq!(parse_angle("π/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("1.25").unwrap(), 1.25);
        for bad in ["", "abc", "pi/0", "pi/", "3pi2", "nan", "inf"] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn plane_flags_and_order() {
        let g = CouplingSet::uniform(Interaction::Tensor);
        let n = 7;
        let rows = run_plane(&g, n, SPIN_PERPENDICULAR.0, SPIN_PERPENDICULAR.1).unwrap();
        assert_eq!(rows.len(), n * n);
        for (node, row) in rows.iter().enumerate() {
            let (i, j) = (node / n, node % n);
            assert_eq!(row.theta2, Some(PI * i as f64 / (n - 1) as f64));
            assert_eq!(row.physical, i + j >= n - 1);
            assert_eq!(row.report.is_some(), row.physical);
            assert!(row.alpha.is_none());
        }
        let unphysical = rows.iter().filter(|r| !r.physical).count();
        assert_eq!(unphysical, n * (n - 1) / 2);
    }

    #[test]
    fn request_validation() {
        let g = CouplingSet::uniform(Interaction::Vector);
        assert!(run_plane(&g, 1, 0.0, 0.0).is_err());
        assert!(run_spin(&g, 2.0, 2.0, RotationAxis::X, 1).is_err());
        assert!(run_spin(&g, 4.0, 2.0, RotationAxis::X, 10).is_err());
        assert!(run_plane(&g, 5, 0.0, 7.0).is_err());
    }

    #[test]
    fn spin_scan_samples() {
        let g = CouplingSet::uniform(Interaction::Vector);
        let rows = run_spin(&g, 4.0 * PI / 6.0, 5.0 * PI / 6.0, RotationAxis::Y, 12).unwrap();
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[0].alpha, Some(0.0));
        assert!((rows[3].alpha.unwrap() - FRAC_PI_2).abs() < 1e-15);
        let point = run_point(&DecayConfiguration::new(4.0 * PI / 6.0, 5.0 * PI / 6.0, 0.0, 0.0).unwrap(), &g).unwrap();
        assert_eq!(rows[0].report, point.report);
    }

    #[test]
    fn vanishing_node_is_reported() {
        // Only M_LL survives; it vanishes wherever sin(theta3/2) = 0.
        let g = CouplingSet::new(Interaction::Vector, [1.0, 0.0, 1.0, 0.0]).unwrap();
        let err = run_plane(&g, 3, 0.3, 0.2).unwrap_err();
        assert!(err.to_string().contains("theta2 = 3.14"), "{err}");
    }

    #[test]
    fn csv_layout() {
        let rows = vec![
            ScanRow {
                theta2: Some(0.0),
                theta3: Some(PI),
                alpha: None,
                physical: true,
                report: Some(EntanglementReport::from_values([0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0])),
            },
            ScanRow {
                theta2: Some(0.0),
                theta3: Some(0.0),
                alpha: None,
                physical: false,
                report: None,
            },
        ];
        let mut buf = Vec::new();
        serialize(&rows, OutputFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], "theta2,theta3,alpha,physical,c12,c13,c23,c1_23,c2_13,c3_12,f3,m1,m2,m3");
        assert_eq!(
            lines[1],
            "0.00000000000,3.14159265359,,true,0.00000000000,0.00000000000,0.00000000000,\
             1.00000000000,1.00000000000,1.00000000000,1.00000000000,1.00000000000,1.00000000000,1.00000000000"
        );
        assert_eq!(lines[2], "0.00000000000,0.00000000000,,false,,,,,,,,,,");
        assert_eq!(lines[3], "");
        assert!(!text.contains('\r'));
        assert!(serialize(&[], OutputFormat::Csv, Vec::new()).is_err());
    }

    #[test]
    fn json_layout() {
        let rows = vec![ScanRow {
            theta2: Some(1.0),
            theta3: Some(2.5),
            alpha: Some(0.5),
            physical: true,
            report: Some(EntanglementReport::default()),
        }];
        let mut buf = Vec::new();
        serialize(&rows, OutputFormat::Json, &mut buf).unwrap();
        let value: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let obj = value[0].as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        let mut want = HEADER.to_vec();
        want.sort_unstable();
        let mut keys_sorted = keys.clone();
        keys_sorted.sort_unstable();
        assert_eq!(keys_sorted, want);
        assert_eq!(obj["physical"], serde_json::Value::Bool(true));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = format!("{}\n0.1,0.2,,true,1,1,1,1,1,1,1,1,1,1\n0.1,x,,true,,,,,,,,,,\n", HEADER.join(","));
        match parse_csv(text.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let partial = format!("{}\n0.1,0.2,,true,1,,,,,,,,,\n", HEADER.join(","));
        assert!(matches!(parse_csv(partial.as_bytes()), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_csv("a,b\n".as_bytes()), Err(Error::Parse { line: 1, .. })));
    }
}
