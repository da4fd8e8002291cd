//! The `heunsym` command line.
//!
//! ```text
//! heunsym eval --phi 0.7853981633974483 --chi 0,0,0,0 --lambda 1+0i --z 0.3+0.1i
//! heunsym table --config eq.cfg --grid 0:0.8:9,0:6.283185307179586:16 --output grid.csv
//! heunsym verify --config eq.cfg --seed 7
//! ```
//!
//! Exit codes: 0 success, 1 a verification suite failed, 2 bad flags or
//! config, 3 numeric failure.

mod config;
mod verify;

pub use config::{parse_complex, parse_complex_list, write_config, ConfigFile, EquationSpec};
pub use verify::{run_suites, SuiteResult};

use crate::connection::{connection_gamma, eigenvalue_search, LambdaWindow};
use crate::fuchsian::SymmetricHeunConfig;
use crate::mobius::{transform_config, MobiusMap};
use crate::symmetric::{
    eval_series, laurent_series, ode_residual, series_coeffs, wronskian_residual, InitTag,
    RecurrenceFamily, SeriesSolution,
};
use crate::{fmt_complex, C64};
use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use std::io::Write;
use std::path::PathBuf;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 42;
const DEFAULT_GRID: &str = "0:0.8:9,0:6.283185307179586:16";
const DEFAULT_WINDOW: &str = "-20:20:81";
const FUNDAMENTAL_TERMS: usize = 32;
const START_TERMS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// F1, F2 and their derivatives at one point.
    Eval,
    /// Taylor coefficients of F1 and F2.
    Fundamental,
    /// CSV over a polar grid.
    Table,
    /// Wronskian, residual, Moebius and Lagrange suites.
    Verify,
    /// Transform the configuration by a Moebius map.
    Mobius,
    /// Connection coefficients of the local solutions at the singular points.
    Connect,
    /// Eigenvalues of the two-point boundary problem.
    Spectrum,
}

#[derive(Debug, Parser)]
#[command(
    name = "heunsym",
    version,
    about = "Symmetric-form general Heun functions"
)]
struct Args {
    mode: Mode,
    /// Config file (key = value lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Canonical angle: points at the roots of z^4 - 2cos(2phi)z^2 + 1.
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
    /// Four singular points, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    /// Four uniformization angles, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    chi: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Evaluation point for `eval`.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// Series truncation (default adaptive).
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    tol: Option<f64>,
    #[arg(long)]
    family: Option<String>,
    /// Polar grid r0:r1:nr,t0:t1:nt.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Moebius map: a,b,c,d or translate:C, dilate:C, invert.
    #[arg(long, allow_hyphen_values = true)]
    map: Option<String>,
    /// Singular point (1-based) for `connect`; all four when absent.
    #[arg(long)]
    point: Option<usize>,
    /// Boundary points i,j (1-based) for `spectrum`.
    #[arg(long)]
    pair: Option<String>,
    /// Accessory window: lo:hi:samples (real) or lo:hi:nre:nim (complex corners).
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

/// Polar sampling `r0..r1` in `nr` radii and `t0..t1` in `nt` angles, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarGrid {
    pub r0: f64,
    pub r1: f64,
    pub nr: usize,
    pub t0: f64,
    pub t1: f64,
    pub nt: usize,
}

impl PolarGrid {
    pub fn parse(s: &str) -> Result<Self, String> {
        let (r, t) = s.split_once(',').ok_or("grid must be r0:r1:nr,t0:t1:nt")?;
        let axis = |a: &str| -> Result<(f64, f64, usize), String> {
            let p: Vec<&str> = a.split(':').collect();
            if p.len() != 3 {
                return Err(format!("grid axis '{a}' must be lo:hi:n"));
            }
            let lo: f64 = p[0]
                .parse()
                .map_err(|_| format!("bad grid bound '{}'", p[0]))?;
            let hi: f64 = p[1]
                .parse()
                .map_err(|_| format!("bad grid bound '{}'", p[1]))?;
            let n: usize = p[2]
                .parse()
                .map_err(|_| format!("bad grid count '{}'", p[2]))?;
            if !lo.is_finite() || !hi.is_finite() || n == 0 {
                return Err(format!("grid axis '{a}' needs finite bounds and n >= 1"));
            }
            Ok((lo, hi, n))
        };
        let (r0, r1, nr) = axis(r)?;
        let (t0, t1, nt) = axis(t)?;
        if r0 < 0.0 || r1 < r0 {
            return Err("grid radii need 0 <= r0 <= r1".into());
        }
        Ok(PolarGrid {
            r0,
            r1,
            nr,
            t0,
            t1,
            nt,
        })
    }

    fn lerp(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    }

    pub fn radius(&self, k: usize) -> f64 {
        Self::lerp(self.r0, self.r1, self.nr, k)
    }

    pub fn angle(&self, k: usize) -> f64 {
        Self::lerp(self.t0, self.t1, self.nt, k)
    }
}

pub fn parse_window(s: &str) -> Result<LambdaWindow, String> {
    let p: Vec<&str> = s.split(':').collect();
    let count = |x: &str| {
        x.parse::<usize>()
            .map_err(|_| format!("bad sample count '{x}'"))
    };
    match p.len() {
        3 => {
            let lo: f64 = p[0]
                .parse()
                .map_err(|_| format!("bad window bound '{}'", p[0]))?;
            let hi: f64 = p[1]
                .parse()
                .map_err(|_| format!("bad window bound '{}'", p[1]))?;
            if !(lo < hi) {
                return Err("window needs lo < hi".into());
            }
            Ok(LambdaWindow::Real {
                lo,
                hi,
                samples: count(p[2])?,
            })
        }
        4 => {
            let lo = parse_complex(p[0])?;
            let hi = parse_complex(p[1])?;
            if !(lo.re < hi.re && lo.im < hi.im) {
                return Err("complex window needs lo below and left of hi".into());
            }
            Ok(LambdaWindow::Rect {
                lo,
                hi,
                nre: count(p[2])?,
                nim: count(p[3])?,
            })
        }
        _ => Err("window must be lo:hi:n or lo:hi:nre:nim".into()),
    }
}

pub fn parse_map(s: &str) -> Result<MobiusMap, String> {
    let m = if s == "invert" {
        Ok(MobiusMap::inversion())
    } else if let Some(z) = s.strip_prefix("translate:") {
        Ok(MobiusMap::translation(parse_complex(z)?))
    } else if let Some(t) = s.strip_prefix("dilate:") {
        MobiusMap::dilatation(parse_complex(t)?)
    } else {
        let [a, b, c, d] = parse_complex_list::<4>(s)?;
        MobiusMap::new(a, b, c, d)
    };
    m.map_err(|e| e.to_string())
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("pair must be i,j")?;
    let idx = |x: &str| match x.trim().parse::<usize>() {
        Ok(k @ 1..=4) => Ok(k - 1),
        _ => Err(format!("point index '{x}' must be 1..4")),
    };
    let (i, j) = (idx(a)?, idx(b)?);
    if i == j {
        return Err("pair needs two distinct points".into());
    }
    Ok((i, j))
}

/// Everything one invocation needs, validated.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub equation: SymmetricHeunConfig,
    pub z: Option<C64>,
    pub terms: Option<usize>,
    pub tol: f64,
    pub family: Option<RecurrenceFamily>,
    pub grid: PolarGrid,
    pub window: LambdaWindow,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub map: Option<MobiusMap>,
    pub point: Option<usize>,
    pub pair: (usize, usize),
}

impl RunConfig {
    /// Flags override the config file key by key.
    pub fn from_argv<I, T>(argv: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let args = Args::try_parse_from(argv).map_err(CliError::Clap)?;
        let p = |e: String| CliError::Parse(e);
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| p(format!("{}: {e}", path.display())))?;
                ConfigFile::parse(&text).map_err(p)?
            }
            None => ConfigFile::default(),
        };
        let flags = EquationSpec {
            phi: args
                .phi
                .as_deref()
                .map(parse_complex)
                .transpose()
                .map_err(p)?,
            points: args
                .points
                .as_deref()
                .map(parse_complex_list::<4>)
                .transpose()
                .map_err(p)?,
            chis: args
                .chi
                .as_deref()
                .map(parse_complex_list::<4>)
                .transpose()
                .map_err(p)?,
            lambda: args
                .lambda
                .as_deref()
                .map(parse_complex)
                .transpose()
                .map_err(p)?,
        };
        let spec = EquationSpec::from_file(&file).map_err(p)?.overlay(flags);
        let equation = spec.build().map_err(p)?;

        let pick =
            |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).map(str::to_string));
        let z = pick(args.z, "z")
            .as_deref()
            .map(parse_complex)
            .transpose()
            .map_err(p)?;
        let terms = match args.terms {
            Some(t) => Some(t),
            None => file
                .get("terms")
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| p(format!("bad terms '{t}'")))
                })
                .transpose()?,
        };
        if matches!(terms, Some(t) if t < 8) {
            return Err(p("terms must be at least 8".into()));
        }
        let tol = match args.tol {
            Some(t) => t,
            None => match file.get("tol") {
                Some(t) => t.parse::<f64>().map_err(|_| p(format!("bad tol '{t}'")))?,
                None => DEFAULT_TOL,
            },
        };
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(p(format!("tol must be positive, got {tol}")));
        }
        let family = pick(args.family, "family")
            .map(|f| f.parse::<RecurrenceFamily>().map_err(|e| p(e.to_string())))
            .transpose()?;
        let grid =
            PolarGrid::parse(&pick(args.grid, "grid").unwrap_or_else(|| DEFAULT_GRID.into()))
                .map_err(p)?;
        let window =
            parse_window(&pick(args.window, "window").unwrap_or_else(|| DEFAULT_WINDOW.into()))
                .map_err(p)?;
        let seed = match args.seed {
            Some(s) => s,
            None => match file.get("seed") {
                Some(s) => s.parse::<u64>().map_err(|_| p(format!("bad seed '{s}'")))?,
                None => DEFAULT_SEED,
            },
        };
        let map = pick(args.map, "map")
            .as_deref()
            .map(parse_map)
            .transpose()
            .map_err(p)?;
        let point = match args.point {
            Some(k @ 1..=4) => Some(k - 1),
            Some(k) => return Err(p(format!("point index {k} must be 1..4"))),
            None => None,
        };
        let pair =
            parse_pair(&pick(args.pair, "pair").unwrap_or_else(|| "1,2".into())).map_err(p)?;
        Ok(RunConfig {
            mode: args.mode,
            equation,
            z,
            terms,
            tol,
            family,
            grid,
            window,
            output: args.output,
            seed,
            map,
            point,
            pair,
        })
    }

    /// The requested family, or the closed form that fits the configuration.
    pub fn family(&self) -> RecurrenceFamily {
        self.family
            .unwrap_or(if self.equation.is_circular_canonical() {
                RecurrenceFamily::Circular
            } else {
                RecurrenceFamily::General
            })
    }

    fn pair_series(&self, laurent: bool) -> crate::Result<(SeriesSolution, SeriesSolution)> {
        let n = self.terms.unwrap_or(START_TERMS);
        let build = |init| {
            if laurent {
                laurent_series(&self.equation, self.family(), init, n)
            } else {
                series_coeffs(&self.equation, self.family(), init, n)
            }
        };
        Ok((build(InitTag::F1)?, build(InitTag::F2)?))
    }
}

#[derive(Debug)]
pub enum CliError {
    Clap(clap::Error),
    Parse(String),
    Numeric(crate::Error),
    Io(std::io::Error),
    VerifyFailed,
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Clap(e) if !e.use_stderr() => 0,
            CliError::Clap(_) | CliError::Parse(_) => 2,
            CliError::VerifyFailed => 1,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

fn csv_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn eval_mode(cfg: &RunConfig) -> Result<String, CliError> {
    let z = cfg
        .z
        .ok_or_else(|| CliError::Parse("eval needs --z".into()))?;
    let (f1, f2) = cfg.pair_series(false)?;
    let a = eval_series(&f1, z, cfg.tol)?;
    let b = eval_series(&f2, z, cfg.tol)?;
    let w = wronskian_residual(&f1, &f2, z)?;
    Ok(format!(
        "z={}\nF1={}\ndF1={}\nF2={}\ndF2={}\nterms={}\nwronskian_residual={:e}\n",
        fmt_complex(z),
        fmt_complex(a.value),
        fmt_complex(a.derivative),
        fmt_complex(b.value),
        fmt_complex(b.derivative),
        a.terms.max(b.terms),
        w
    ))
}

fn fundamental_mode(cfg: &RunConfig) -> Result<String, CliError> {
    let n = cfg.terms.unwrap_or(FUNDAMENTAL_TERMS);
    let f1 = series_coeffs(&cfg.equation, cfg.family(), InitTag::F1, n)?;
    let f2 = series_coeffs(&cfg.equation, cfg.family(), InitTag::F2, n)?;
    let mut out = String::from("n,re_f1,im_f1,re_f2,im_f2\n");
    for (k, (a, b)) in f1.coeffs().iter().zip(f2.coeffs()).enumerate() {
        out.push_str(&format!(
            "{k},{},{},{},{}\n",
            csv_num(a.re),
            csv_num(a.im),
            csv_num(b.re),
            csv_num(b.im)
        ));
    }
    Ok(out)
}

pub const CSV_HEADER: &str = "re_z,im_z,re_F1,im_F1,re_F2,im_F2,wronskian_residual,ode_residual";

fn table_mode(cfg: &RunConfig) -> Result<String, CliError> {
    let g = cfg.grid;
    // an annulus outside the unit circle uses the pair in 1/z
    let laurent = cfg.equation.is_circular_canonical() && g.r0 > 1.0;
    let (f1, f2) = cfg.pair_series(laurent)?;
    let rows: Vec<Result<String, crate::Error>> = (0..g.nr)
        .into_par_iter()
        .map(|i| {
            let r = g.radius(i);
            let mut rows = String::new();
            for k in 0..g.nt {
                let z = C64::from_polar(r, g.angle(k));
                let a = eval_series(&f1, z, cfg.tol)?.value;
                let b = eval_series(&f2, z, cfg.tol)?.value;
                let w = wronskian_residual(&f1, &f2, z)?;
                let o =
                    ode_residual(&cfg.equation, &f1, z)?.max(ode_residual(&cfg.equation, &f2, z)?);
                let cols = [z.re, z.im, a.re, a.im, b.re, b.im, w, o];
                rows.push_str(&cols.map(csv_num).join(","));
                rows.push('\n');
            }
            Ok(rows)
        })
        .collect();
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        out.push_str(&r?);
    }
    Ok(out)
}

fn connect_mode(cfg: &RunConfig) -> Result<String, CliError> {
    let which: Vec<usize> = cfg
        .point
        .map(|j| vec![j])
        .unwrap_or_else(|| (0..4).collect());
    let mut out = String::new();
    for j in which {
        let g = connection_gamma(&cfg.equation, j)?;
        out.push_str(&format!(
            "point={} z={} gamma1={} gamma2={} match={} check_gap={:e} condition={:e}\n",
            j + 1,
            fmt_complex(cfg.equation.points()[j]),
            fmt_complex(g.gamma1),
            fmt_complex(g.gamma2),
            fmt_complex(g.matching_point),
            g.verification_gap,
            g.condition
        ));
    }
    Ok(out)
}

fn spectrum_mode(cfg: &RunConfig) -> Result<String, CliError> {
    let (i, j) = cfg.pair;
    let roots = eigenvalue_search(&cfg.equation, i, j, cfg.window, cfg.tol)?;
    let mut out = String::new();
    for (k, r) in roots.iter().enumerate() {
        out.push_str(&format!(
            "lambda[{k}]={} |D|={:e}\n",
            fmt_complex(r.lambda),
            r.residual
        ));
    }
    Ok(out)
}

fn mobius_mode(cfg: &RunConfig) -> Result<String, CliError> {
    let map = cfg
        .map
        .as_ref()
        .ok_or_else(|| CliError::Parse("mobius needs --map".into()))?;
    let image = transform_config(&cfg.equation, map)?;
    Ok(write_config(&image))
}

fn dispatch(cfg: &RunConfig) -> Result<(), CliError> {
    let text = match cfg.mode {
        Mode::Eval => eval_mode(cfg)?,
        Mode::Fundamental => fundamental_mode(cfg)?,
        Mode::Table => table_mode(cfg)?,
        Mode::Mobius => mobius_mode(cfg)?,
        Mode::Connect => connect_mode(cfg)?,
        Mode::Spectrum => spectrum_mode(cfg)?,
        Mode::Verify => {
            let results = run_suites(cfg)?;
            let mut text = String::new();
            for r in &results {
                text.push_str(&r.line());
                text.push('\n');
            }
            emit(cfg, &text)?;
            if results.iter().all(|r| r.passed()) {
                return Ok(());
            }
            return Err(CliError::VerifyFailed);
        }
    };
    emit(cfg, &text)
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = RunConfig::from_argv(argv).and_then(|cfg| dispatch(&cfg));
    match result {
        Ok(()) => 0,
        Err(e) => {
            match &e {
                CliError::Clap(c) => {
                    let _ = c.print();
                }
                CliError::Parse(m) => eprintln!("error: {m}"),
                CliError::Numeric(n) => eprintln!("error: {n}"),
                CliError::Io(io) => eprintln!("error: {io}"),
                CliError::VerifyFailed => eprintln!("verification failed"),
            }
            e.exit_code()
        }
    }
}
