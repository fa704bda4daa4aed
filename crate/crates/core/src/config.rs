//! Experiment configuration.
//!
//! The text format is one `key = value` pair per line; blank lines and lines
//! starting with `#` are ignored. Keys match the command-line flag names:
//!
//! | key           | value                                   | default        |
//! |---------------|-----------------------------------------|----------------|
//! | `example`     | builtin source id, 1, 2 or 3            | 3              |
//! | `source-file` | raster mask grid file (overrides example) | none         |
//! | `R`           | sensor circle radius                    | 5              |
//! | `L`           | number of sensors                       | 30             |
//! | `kmin`        | smallest wavenumber                     | 0.1            |
//! | `kmax`        | largest wavenumber                      | 30             |
//! | `dk`          | wavenumber spacing                      | 0.1            |
//! | `delta`       | relative noise level                    | 0.2            |
//! | `seed`        | noise seed                              | 42             |
//! | `grid`        | `x0,x1,y0,y1,nx,ny`                     | `-3,3,-3,3,601,601` |
//! | `nq`          | source quadrature cells per axis        | 512            |
//! | `output`      | output directory                        | `out`          |

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::forward::{NoiseSpec, QuadratureSpec, SensorArray, WavenumberGrid};
use crate::grid::SamplingGrid;
use crate::sources::{builtin_example, RasterMask, SourceModel};

#[derive(Debug, Clone, PartialEq)]
pub enum SourceSpec {
    Example(u32),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub source: SourceSpec,
    pub radius: f64,
    pub sensors: usize,
    pub k_min: f64,
    pub k_max: f64,
    pub dk: f64,
    pub delta: f64,
    pub seed: u64,
    pub grid: SamplingGrid,
    pub n_q: usize,
    pub output: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            source: SourceSpec::Example(3),
            radius: 5.0,
            sensors: 30,
            k_min: 0.1,
            k_max: 30.0,
            dk: 0.1,
            delta: 0.2,
            seed: 42,
            grid: SamplingGrid { x_min: -3.0, x_max: 3.0, y_min: -3.0, y_max: 3.0, nx: 601, ny: 601 },
            n_q: QuadratureSpec::DEFAULT_N_Q,
            output: PathBuf::from("out"),
        }
    }
}

fn bad(key: &str, msg: impl std::fmt::Display) -> Error {
    Error::Usage(format!("`{key}`: {msg}"))
}

/// Re-labels a validation error from a domain type with the config key.
fn rekey(key: &str, e: Error) -> Error {
    match e {
        Error::Usage(m) | Error::Domain(m) | Error::Precondition(m) => bad(key, m),
        other => bad(key, other),
    }
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.trim().parse().map_err(|_| bad(key, format!("cannot parse `{value}`")))
}

fn parse_grid_spec(value: &str) -> Result<SamplingGrid> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(bad("grid", "expected x0,x1,y0,y1,nx,ny"));
    }
    let g = SamplingGrid {
        x_min: num("grid", parts[0])?,
        x_max: num("grid", parts[1])?,
        y_min: num("grid", parts[2])?,
        y_max: num("grid", parts[3])?,
        nx: num("grid", parts[4])?,
        ny: num("grid", parts[5])?,
    };
    Ok(g)
}

impl ExperimentConfig {
    /// Sets one key. Values are checked for syntax here and for constraints
    /// in [`ExperimentConfig::validate`].
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "example" => self.source = SourceSpec::Example(num(key, value)?),
            "source-file" => self.source = SourceSpec::File(PathBuf::from(value.trim())),
            "R" => self.radius = num(key, value)?,
            "L" => self.sensors = num(key, value)?,
            "kmin" => self.k_min = num(key, value)?,
            "kmax" => self.k_max = num(key, value)?,
            "dk" => self.dk = num(key, value)?,
            "delta" => self.delta = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "grid" => self.grid = parse_grid_spec(value)?,
            "nq" => self.n_q = num(key, value)?,
            "output" => self.output = PathBuf::from(value.trim()),
            _ => return Err(Error::Usage(format!("unknown configuration key `{key}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if let SourceSpec::Example(id) = self.source {
            if !(1..=3).contains(&id) {
                return Err(bad("example", format!("unknown example {id}; expected 1, 2 or 3")));
            }
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(bad("R", "must be > 0"));
        }
        if self.sensors == 0 {
            return Err(bad("L", "must be >= 1"));
        }
        if !(self.k_min > 0.0 && self.k_min.is_finite()) {
            return Err(bad("kmin", "must be > 0"));
        }
        if !(self.dk > 0.0 && self.dk.is_finite()) {
            return Err(bad("dk", "must be > 0"));
        }
        if !(self.k_max > self.k_min && self.k_max.is_finite()) {
            return Err(bad("kmax", "must be > kmin"));
        }
        WavenumberGrid::from_range(self.k_min, self.k_max, self.dk).map_err(|e| rekey("kmax", e))?;
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return Err(bad("delta", "must be >= 0"));
        }
        let g = self.grid;
        SamplingGrid::new(g.x_min, g.x_max, g.y_min, g.y_max, g.nx, g.ny).map_err(|e| rekey("grid", e))?;
        if self.n_q < 32 {
            return Err(bad("nq", "must be >= 32"));
        }
        Ok(())
    }

    /// Defaults, then `text` (if any), then `overrides` in order, then
    /// validation.
    pub fn parse(text: Option<&str>, overrides: &[(String, String)]) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        if let Some(text) = text {
            for (n, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line
                    .split_once('=')
                    .ok_or_else(|| Error::Usage(format!("config line {}: expected `key = value`", n + 1)))?;
                cfg.set(key.trim(), value)?;
            }
        }
        for (k, v) in overrides {
            cfg.set(k, v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// The configuration in the text format, one key per line in table order.
    pub fn to_text(&self) -> String {
        let source = match &self.source {
            SourceSpec::Example(id) => format!("example = {id}\n"),
            SourceSpec::File(p) => format!("source-file = {}\n", p.display()),
        };
        let g = self.grid;
        format!(
            "{source}R = {:?}\nL = {}\nkmin = {:?}\nkmax = {:?}\ndk = {:?}\ndelta = {:?}\nseed = {}\ngrid = {:?},{:?},{:?},{:?},{},{}\nnq = {}\noutput = {}\n",
            self.radius,
            self.sensors,
            self.k_min,
            self.k_max,
            self.dk,
            self.delta,
            self.seed,
            g.x_min,
            g.x_max,
            g.y_min,
            g.y_max,
            g.nx,
            g.ny,
            self.n_q,
            self.output.display()
        )
    }

    pub fn sensor_array(&self) -> Result<SensorArray> {
        SensorArray::new(self.radius, self.sensors)
    }

    pub fn wavenumbers(&self) -> Result<WavenumberGrid> {
        WavenumberGrid::from_range(self.k_min, self.k_max, self.dk)
    }

    pub fn noise(&self) -> Result<NoiseSpec> {
        NoiseSpec::new(self.delta, self.seed)
    }

    pub fn quadrature(&self) -> Result<QuadratureSpec> {
        QuadratureSpec::new(self.n_q)
    }

    pub fn source_model(&self) -> Result<SourceModel> {
        match &self.source {
            SourceSpec::Example(id) => builtin_example(*id),
            SourceSpec::File(p) => {
                let g = crate::io::read_grid(p)?;
                Ok(SourceModel::RasterMask(RasterMask::from_cell_centers(&g)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_gives_defaults() {
        let c = ExperimentConfig::parse(Some(""), &[]).unwrap();
        assert_eq!(c, ExperimentConfig::default());
        assert_eq!(c.sensors, 30);
        assert_eq!(c.k_max, 30.0);
        assert_eq!(c.delta, 0.2);
        assert_eq!((c.grid.nx, c.grid.ny), (601, 601));
        assert_eq!(c.wavenumbers().unwrap().count(), 300);
    }

    #[test]
    fn overrides_win() {
        let c = ExperimentConfig::parse(Some("L = 45\n# comment\n"), &[("L".into(), "60".into())]).unwrap();
        assert_eq!(c.sensors, 60);
    }

    #[test]
    fn errors_name_the_key() {
        let e = ExperimentConfig::parse(Some("dk = 0"), &[]).unwrap_err();
        assert!(e.is_usage() && e.to_string().contains("`dk`"), "{e}");
        let e = ExperimentConfig::parse(Some("frobnicate = 1"), &[]).unwrap_err();
        assert!(e.to_string().contains("frobnicate"), "{e}");
        let e = ExperimentConfig::parse(None, &[("grid".into(), "0,1,0,1,5".into())]).unwrap_err();
        assert!(e.to_string().contains("`grid`"), "{e}");
        let e = ExperimentConfig::parse(None, &[("kmax".into(), "30.05".into())]).unwrap_err();
        assert!(e.to_string().contains("`kmax`"), "{e}");
        assert!(ExperimentConfig::parse(Some("no equals sign"), &[]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let mut c = ExperimentConfig::default();
        c.set("grid", "-2,2,-1.5,1.5,41,31").unwrap();
        c.set("seed", "7").unwrap();
        c.set("source-file", "mask.csv").unwrap();
        assert_eq!(ExperimentConfig::parse(Some(&c.to_text()), &[]).unwrap(), c);
    }
}
