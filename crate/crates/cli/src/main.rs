//! `radonsource` command-line pipeline.
//!
//! ```text
//! radonsource synthesize --example 3 --L 60 --kmax 30 --delta 0.2 --seed 42 -o data/
//! radonsource reconstruct -i data/ -o out/
//! radonsource errmap -i out/ -o out/
//! ```
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on data or domain errors.

// Range checks are written as negated comparisons so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use radonsource::config::ExperimentConfig;
use radonsource::forward::{add_noise, disk_field_closed_form, noise_variate, scattered_field, synthesize};
use radonsource::heatmap::write_heatmap;
use radonsource::io::{atomic_write, read_field_tensor, read_grid, write_field_tensor, write_grid, write_json};
use radonsource::reconstruct::{indicator_grid, IndicatorConfig};
use radonsource::sources::{rasterize, SourceModel};
use radonsource::verify::{check_disk_identity, check_inversion_identity, error_stats};
use radonsource::{Error, Point, Result};

const FIELD_FILE: &str = "field.csv";
const INDICATOR_FILE: &str = "indicator.csv";
const CONFIG_FILE: &str = "config.txt";

#[derive(Parser, Debug)]
#[command(name = "radonsource", version, about = "Multi-frequency source reconstruction from near-field data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate the scattered field on the sensor circle and write a field tensor.
    Synthesize(Opts),
    /// Read a field tensor and write the indicator grid and its heatmap.
    Reconstruct(Opts),
    /// Compare an indicator grid with the configured source.
    Errmap(Opts),
    /// Run the identity checks and print a residual table.
    Verify(Opts),
    /// Compare the disk-source field against its closed form.
    Oracle(Opts),
}

#[derive(Args, Debug)]
struct Opts {
    /// Configuration file (`key = value` lines); flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Builtin source 1, 2 or 3.
    #[arg(long)]
    example: Option<String>,
    /// Raster mask grid file used as the source.
    #[arg(long = "source-file")]
    source_file: Option<String>,
    /// Sensor circle radius.
    #[arg(long = "R")]
    radius: Option<String>,
    /// Number of sensors.
    #[arg(long = "L")]
    sensors: Option<String>,
    #[arg(long)]
    kmin: Option<String>,
    #[arg(long)]
    kmax: Option<String>,
    #[arg(long)]
    dk: Option<String>,
    /// Relative noise level (0 for clean data).
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Sampling grid as x0,x1,y0,y1,nx,ny.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Source quadrature cells per axis.
    #[arg(long)]
    nq: Option<String>,
    /// Worker threads (default: RADONSOURCE_THREADS, else all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Input directory or file.
    #[arg(short = 'i', long = "input")]
    input: Option<PathBuf>,
    /// Output directory.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

impl Opts {
    fn overrides(&self) -> Vec<(String, String)> {
        let pairs = [
            ("example", &self.example),
            ("source-file", &self.source_file),
            ("R", &self.radius),
            ("L", &self.sensors),
            ("kmin", &self.kmin),
            ("kmax", &self.kmax),
            ("dk", &self.dk),
            ("delta", &self.delta),
            ("seed", &self.seed),
            ("grid", &self.grid),
            ("nq", &self.nq),
        ];
        let mut out: Vec<(String, String)> =
            pairs.iter().filter_map(|(k, v)| v.as_ref().map(|v| (k.to_string(), v.clone()))).collect();
        if let Some(o) = &self.output {
            out.push(("output".into(), o.display().to_string()));
        }
        out
    }

    /// Explicit `--config`, else `config.txt` inside an input directory, then
    /// the flag overrides.
    fn experiment(&self, input_dir: Option<&Path>) -> Result<ExperimentConfig> {
        let base = match (&self.config, input_dir) {
            (Some(p), _) => Some(read_text(p)?),
            (None, Some(dir)) if dir.join(CONFIG_FILE).is_file() => Some(read_text(&dir.join(CONFIG_FILE))?),
            _ => None,
        };
        ExperimentConfig::parse(base.as_deref(), &self.overrides())
    }

    fn threads(&self) -> Result<Option<usize>> {
        if let Some(n) = self.threads {
            return if n == 0 { Err(Error::Usage("`threads` must be >= 1".into())) } else { Ok(Some(n)) };
        }
        match std::env::var("RADONSOURCE_THREADS") {
            Ok(v) if !v.trim().is_empty() => match v.trim().parse::<usize>() {
                Ok(n) if n > 0 => Ok(Some(n)),
                _ => Err(Error::Usage(format!("RADONSOURCE_THREADS must be a positive integer, got `{v}`"))),
            },
            _ => Ok(None),
        }
    }

    /// Resolves `-i` to a file: directories get `default_name` appended.
    /// Without `-i` the configured output directory is used.
    fn input_file(&self, cfg_output: &Path, default_name: &str) -> Result<PathBuf> {
        let p = self.input.clone().unwrap_or_else(|| cfg_output.to_path_buf());
        let file = if p.is_dir() { p.join(default_name) } else { p };
        if !file.is_file() {
            return Err(Error::Usage(format!("input file {} does not exist", file.display())));
        }
        Ok(file)
    }

    fn input_dir(&self) -> Option<PathBuf> {
        match &self.input {
            Some(p) if p.is_dir() => Some(p.clone()),
            Some(p) => p.parent().map(Path::to_path_buf),
            None => None,
        }
    }
}

fn read_text(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::io(p, e))
}

fn prepare_output(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn progress(start: Instant, msg: impl AsRef<str>) {
    eprintln!("[{:>8.2}s] {}", start.elapsed().as_secs_f64(), msg.as_ref());
}

fn run_synthesize(opts: &Opts, start: Instant) -> Result<()> {
    let cfg = opts.experiment(None)?;
    let model = cfg.source_model()?;
    let (sensors, kgrid, q) = (cfg.sensor_array()?, cfg.wavenumbers()?, cfg.quadrature()?);
    let noise = cfg.noise()?;
    prepare_output(&cfg.output)?;
    progress(
        start,
        format!("synthesizing {} sensors x {} wavenumbers, n_q = {}", sensors.count(), kgrid.count(), q.n_q()),
    );
    let mut data = synthesize(&model, &sensors, &kgrid, &q)?;
    if cfg.delta > 0.0 {
        progress(start, format!("adding noise delta = {} seed = {}", cfg.delta, cfg.seed));
        data = add_noise(&data, &noise)?;
    }
    let path = cfg.output.join(FIELD_FILE);
    write_field_tensor(&data, &path)?;
    atomic_write(&cfg.output.join(CONFIG_FILE), cfg.to_text().as_bytes())?;
    progress(start, format!("wrote {}", path.display()));
    Ok(())
}

fn run_reconstruct(opts: &Opts, start: Instant) -> Result<()> {
    let cfg = opts.experiment(opts.input_dir().as_deref())?;
    let input = opts.input_file(&cfg.output, FIELD_FILE)?;
    prepare_output(&cfg.output)?;
    let data = read_field_tensor(&input)?;
    progress(
        start,
        format!(
            "reconstructing on {}x{} nodes from {} sensors x {} wavenumbers",
            cfg.grid.nx,
            cfg.grid.ny,
            data.sensors.count(),
            data.wavenumbers.count()
        ),
    );
    let rec = indicator_grid(&data, &cfg.grid, &IndicatorConfig::default())?;
    write_grid(&rec, &cfg.output.join(INDICATOR_FILE))?;
    write_heatmap(&rec, &cfg.output.join("indicator.ppm"), None)?;
    atomic_write(&cfg.output.join(CONFIG_FILE), cfg.to_text().as_bytes())?;
    progress(start, format!("wrote {}", cfg.output.join(INDICATOR_FILE).display()));
    Ok(())
}

fn run_errmap(opts: &Opts, start: Instant) -> Result<()> {
    let cfg = opts.experiment(opts.input_dir().as_deref())?;
    let input = opts.input_file(&cfg.output, INDICATOR_FILE)?;
    prepare_output(&cfg.output)?;
    let rec = read_grid(&input)?;
    let model = cfg.source_model()?;
    let stats = error_stats(&rec, &rasterize(&model, &rec.grid))?;
    let summary = stats.summary();
    write_json(&summary, &cfg.output.join("stats.json"))?;
    write_grid(&stats.error_grid, &cfg.output.join("error.csv"))?;
    write_heatmap(&stats.error_grid, &cfg.output.join("error.ppm"), None)?;
    progress(
        start,
        format!(
            "l_inf = {:.3e}  l2_relative = {:.3e}  percentile_95 = {:.3e}",
            summary.l_inf, summary.l2_relative, summary.percentile_95
        ),
    );
    Ok(())
}

/// Uniform point in the disk of radius `rho`, from the counter-based hash.
fn sample_disk(seed: u64, i: usize, rho: f64) -> Point {
    let u = 0.5 * (noise_variate(seed, i, 0) + 1.0);
    let v = 0.5 * (noise_variate(seed, i, 1) + 1.0);
    let r = rho * u.sqrt();
    let t = std::f64::consts::TAU * v;
    Point::new(r * t.cos(), r * t.sin())
}

fn run_verify(opts: &Opts, start: Instant) -> Result<bool> {
    let cfg = opts.experiment(None)?;
    let rho = 0.6 * cfg.radius;
    let pairs: Vec<(Point, Point)> =
        (0..20).map(|i| (sample_disk(cfg.seed, 2 * i, rho), sample_disk(cfg.seed, 2 * i + 1, rho))).collect();
    let n_thetas = [32, 64, 128, 256, 512];
    println!("disk identity, max residual over {} pairs in |z|, |y| < {rho}, R = {}", pairs.len(), cfg.radius);
    print!("{:>6}", "k");
    for n in n_thetas {
        print!("{:>12}", format!("n={n}"));
    }
    println!();
    let mut ok = true;
    for k in [1.0, 5.0, 10.0] {
        print!("{k:>6}");
        for n in n_thetas {
            let mut worst = 0.0f64;
            for &(z, y) in &pairs {
                worst = worst.max(check_disk_identity(k, z, y, cfg.radius, n)?);
            }
            if n == 512 && !(worst <= 1e-8) {
                ok = false;
            }
            print!("{worst:>12.3e}");
        }
        println!();
    }
    let model = cfg.source_model()?;
    let q = cfg.n_q.min(256);
    let r = check_inversion_identity(&model, Point::ORIGIN, cfg.k_max, cfg.dk, q)?;
    println!("inversion identity at z = 0: k_max = {}, dk = {}, n_q = {q}: residual {r:.3e}", cfg.k_max, cfg.dk);
    progress(start, if ok { "identity checks passed" } else { "disk identity above 1e-8 at n = 512" });
    Ok(ok)
}

fn run_oracle(opts: &Opts, start: Instant) -> Result<bool> {
    let cfg = opts.experiment(None)?;
    let q = cfg.quadrature()?;
    let model = SourceModel::disk(Point::ORIGIN, 1.0, 1.0);
    let x = Point::new(cfg.radius, 0.0);
    let mut ok = true;
    println!("unit disk at the origin, sensor at ({}, 0), n_q = {}", cfg.radius, q.n_q());
    println!("{:>6} {:>24} {:>24} {:>11}", "k", "re (quadrature)", "im (quadrature)", "rel err");
    for k in [0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
        let u = scattered_field(&model, x, k, &q)?;
        let exact = disk_field_closed_form(1.0, 1.0, x, k);
        let rel = (u - exact).norm() / exact.norm();
        if !(rel <= 1e-6) {
            ok = false;
        }
        println!("{k:>6} {:>24.16e} {:>24.16e} {rel:>11.3e}", u.re, u.im);
    }
    progress(start, if ok { "closed form matched to 1e-6" } else { "relative error above 1e-6" });
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    let start = Instant::now();
    let opts = match &cli.command {
        Command::Synthesize(o)
        | Command::Reconstruct(o)
        | Command::Errmap(o)
        | Command::Verify(o)
        | Command::Oracle(o) => o,
    };
    if let Some(n) = opts.threads()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Usage(format!("cannot start {n} worker threads: {e}")))?;
    }
    match &cli.command {
        Command::Synthesize(o) => run_synthesize(o, start).map(|_| true),
        Command::Reconstruct(o) => run_reconstruct(o, start).map(|_| true),
        Command::Errmap(o) => run_errmap(o, start).map(|_| true),
        Command::Verify(o) => run_verify(o, start),
        Command::Oracle(o) => run_oracle(o, start),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 1 } else { 2 })
        }
    }
}
