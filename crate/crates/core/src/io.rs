//! CSV + JSON sidecar serialization.
//!
//! Floats are written with Rust's shortest round-trip formatting (`{:?}`),
//! lines end in `\n`, and nothing depends on the locale, so identical inputs
//! produce identical bytes everywhere. The sidecar of `path` is
//! `<path>.meta.json`. Writes go to a temporary file in the same directory
//! that is renamed into place, so a failed write never leaves a truncated
//! file behind.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forward::{FieldTensor, Provenance, SensorArray, WavenumberGrid};
use crate::grid::{RealGrid, SamplingGrid};

pub const TENSOR_HEADER: &str = "l,m,sensor_x,sensor_y,k,re,im";
pub const GRID_HEADER: &str = "i,j,z1,z2,value";

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Writes `bytes` to `path` through a temporary file and an atomic rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp-{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    let res = fs::write(&tmp, bytes).and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = res {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("sidecar types always serialize");
    s.push('\n');
    s
}

#[derive(Debug, Serialize, Deserialize)]
struct TensorMeta {
    #[serde(rename = "R")]
    radius: f64,
    #[serde(rename = "L")]
    sensors: usize,
    k_min: f64,
    dk: f64,
    #[serde(rename = "M")]
    wavenumbers: usize,
    provenance: Provenance,
}

fn parse_err(file: &str, row: usize, msg: impl Into<String>) -> Error {
    Error::Parse { file: file.to_string(), row, msg: msg.into() }
}

struct Rows<'a> {
    file: &'a str,
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Rows<'a> {
    fn new(text: &'a str, file: &'a str, header: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, h)) if h == header => Ok(Rows { file, lines }),
            Some((_, h)) => Err(parse_err(file, 1, format!("expected header `{header}`, found `{h}`"))),
            None => Err(parse_err(file, 1, "empty file")),
        }
    }

    /// Next data row as `(row_number, fields)`, row numbers counting the
    /// header as row 1.
    fn next_row<const N: usize>(&mut self) -> Result<Option<(usize, [&'a str; N])>> {
        let Some((idx, line)) = self.lines.next() else {
            return Ok(None);
        };
        let row = idx + 1;
        let mut out = [""; N];
        let mut parts = line.split(',');
        for slot in out.iter_mut() {
            *slot = parts.next().ok_or_else(|| parse_err(self.file, row, format!("expected {N} fields")))?;
        }
        if parts.next().is_some() {
            return Err(parse_err(self.file, row, format!("expected {N} fields")));
        }
        Ok(Some((row, out)))
    }

    fn float(&self, row: usize, s: &str) -> Result<f64> {
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(_) => Err(parse_err(self.file, row, format!("non-finite value `{s}`"))),
            Err(_) => Err(parse_err(self.file, row, format!("invalid number `{s}`"))),
        }
    }

    fn index(&self, row: usize, s: &str, expected: usize, name: &str) -> Result<()> {
        match s.parse::<usize>() {
            Ok(v) if v == expected => Ok(()),
            _ => Err(parse_err(self.file, row, format!("expected {name} = {expected}, found `{s}`"))),
        }
    }

    fn exact(&self, row: usize, s: &str, expected: f64, name: &str) -> Result<()> {
        let v = self.float(row, s)?;
        if v.to_bits() != expected.to_bits() {
            return Err(parse_err(
                self.file,
                row,
                format!("{name} = {v:?} does not match the sidecar geometry ({expected:?})"),
            ));
        }
        Ok(())
    }

    fn finish(&mut self) -> Result<()> {
        match self.lines.next() {
            Some((idx, line)) if !line.is_empty() => {
                Err(parse_err(self.file, idx + 1, "more rows than the sidecar declares"))
            }
            _ => Ok(()),
        }
    }
}

pub fn format_field_tensor(t: &FieldTensor) -> (String, String) {
    let mut csv = String::with_capacity(64 * t.values.len());
    csv.push_str(TENSOR_HEADER);
    csv.push('\n');
    for l in 0..t.sensors.count() {
        let x = t.sensors.position(l);
        for m in 0..t.wavenumbers.count() {
            let u = t.get(l, m);
            let _ = writeln!(csv, "{l},{m},{:?},{:?},{:?},{:?},{:?}", x.x, x.y, t.wavenumbers.k(m), u.re, u.im);
        }
    }
    let meta = TensorMeta {
        radius: t.sensors.radius(),
        sensors: t.sensors.count(),
        k_min: t.wavenumbers.k_min(),
        dk: t.wavenumbers.dk(),
        wavenumbers: t.wavenumbers.count(),
        provenance: t.provenance,
    };
    (csv, to_json(&meta))
}

pub fn write_field_tensor(t: &FieldTensor, path: &Path) -> Result<()> {
    let (csv, meta) = format_field_tensor(t);
    atomic_write(path, csv.as_bytes())?;
    atomic_write(&sidecar_path(path), meta.as_bytes())
}

pub fn parse_field_tensor(csv: &str, meta: &str, file: &str) -> Result<FieldTensor> {
    let meta: TensorMeta =
        serde_json::from_str(meta).map_err(|e| parse_err(&format!("{file}.meta.json"), e.line(), e.to_string()))?;
    let bad_meta = |e: Error| parse_err(&format!("{file}.meta.json"), 0, e.to_string());
    let sensors = SensorArray::new(meta.radius, meta.sensors).map_err(bad_meta)?;
    let wavenumbers = WavenumberGrid::new(meta.k_min, meta.dk, meta.wavenumbers).map_err(bad_meta)?;
    let mut rows = Rows::new(csv, file, TENSOR_HEADER)?;
    let mut values = Vec::with_capacity(sensors.count() * wavenumbers.count());
    for l in 0..sensors.count() {
        let x = sensors.position(l);
        for m in 0..wavenumbers.count() {
            let (row, f) = rows
                .next_row::<7>()?
                .ok_or_else(|| parse_err(file, values.len() + 2, "fewer rows than the sidecar declares"))?;
            rows.index(row, f[0], l, "l")?;
            rows.index(row, f[1], m, "m")?;
            rows.exact(row, f[2], x.x, "sensor_x")?;
            rows.exact(row, f[3], x.y, "sensor_y")?;
            rows.exact(row, f[4], wavenumbers.k(m), "k")?;
            values.push(Complex64::new(rows.float(row, f[5])?, rows.float(row, f[6])?));
        }
    }
    rows.finish()?;
    FieldTensor::new(sensors, wavenumbers, values, meta.provenance)
}

pub fn read_field_tensor(path: &Path) -> Result<FieldTensor> {
    let meta_path = sidecar_path(path);
    if !meta_path.exists() {
        return Err(Error::Parse {
            file: path.display().to_string(),
            row: 0,
            msg: format!("missing sidecar {}", meta_path.display()),
        });
    }
    parse_field_tensor(&read_text(path)?, &read_text(&meta_path)?, &path.display().to_string())
}

pub fn format_grid(g: &RealGrid) -> (String, String) {
    let s = &g.grid;
    let mut csv = String::with_capacity(48 * g.values.len());
    csv.push_str(GRID_HEADER);
    csv.push('\n');
    for j in 0..s.ny {
        let y = s.y(j);
        for i in 0..s.nx {
            let _ = writeln!(csv, "{i},{j},{:?},{y:?},{:?}", s.x(i), g.get(i, j));
        }
    }
    (csv, to_json(s))
}

pub fn write_grid(g: &RealGrid, path: &Path) -> Result<()> {
    let (csv, meta) = format_grid(g);
    atomic_write(path, csv.as_bytes())?;
    atomic_write(&sidecar_path(path), meta.as_bytes())
}

pub fn parse_grid(csv: &str, meta: &str, file: &str) -> Result<RealGrid> {
    let raw: SamplingGrid =
        serde_json::from_str(meta).map_err(|e| parse_err(&format!("{file}.meta.json"), e.line(), e.to_string()))?;
    let s = SamplingGrid::new(raw.x_min, raw.x_max, raw.y_min, raw.y_max, raw.nx, raw.ny)
        .map_err(|e| parse_err(&format!("{file}.meta.json"), 0, e.to_string()))?;
    let mut rows = Rows::new(csv, file, GRID_HEADER)?;
    let mut values = Vec::with_capacity(s.len());
    for j in 0..s.ny {
        for i in 0..s.nx {
            let (row, f) = rows
                .next_row::<5>()?
                .ok_or_else(|| parse_err(file, values.len() + 2, "fewer rows than the sidecar declares"))?;
            rows.index(row, f[0], i, "i")?;
            rows.index(row, f[1], j, "j")?;
            rows.exact(row, f[2], s.x(i), "z1")?;
            rows.exact(row, f[3], s.y(j), "z2")?;
            values.push(rows.float(row, f[4])?);
        }
    }
    rows.finish()?;
    RealGrid::new(s, values)
}

pub fn read_grid(path: &Path) -> Result<RealGrid> {
    let meta_path = sidecar_path(path);
    if !meta_path.exists() {
        return Err(Error::Parse {
            file: path.display().to_string(),
            row: 0,
            msg: format!("missing sidecar {}", meta_path.display()),
        });
    }
    parse_grid(&read_text(path)?, &read_text(&meta_path)?, &path.display().to_string())
}

/// Serializes any sidecar-style value as pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    atomic_write(path, to_json(value).as_bytes())
}
