//! Command-line parameters, the flat `key = value` config file, and the
//! grids derived from them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use gmlab::gallery;
use gmlab::profile::Piecewise;
use gmlab::series::SequenceProfile;
use gmlab::transforms::default_u_grid;
use gmlab::{BesselOrder, RadialProfile};

use crate::report::Format;
use crate::CliError;

/// Parameters shared by every subcommand. Flags override the config file,
/// which overrides the built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    /// Bessel order(s) α >= -1/2; repeat or comma-separate for several.
    #[arg(long, global = true, allow_negative_numbers = true, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Evaluation point(s); repeat or comma-separate for several.
    #[arg(long, global = true, allow_negative_numbers = true, value_delimiter = ',')]
    pub x: Vec<f64>,
    /// Gallery profile name or a piecewise spec such as `0..1: exp(1,1); 1..inf: const(0)`.
    #[arg(long, global = true)]
    pub function: Option<String>,
    /// Gallery sequence name.
    #[arg(long, global = true)]
    pub sequence: Option<String>,
    /// GM constant C; fitted on the grid when omitted.
    #[arg(long, global = true)]
    pub c: Option<f64>,
    /// Window ratio λ = 2^ν.
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true)]
    pub u_min: Option<f64>,
    #[arg(long, global = true)]
    pub u_max: Option<f64>,
    #[arg(long, global = true)]
    pub u_per_decade: Option<usize>,
    /// Largest cut-off N, block index n or sequence length.
    #[arg(long, global = true)]
    pub n_max: Option<f64>,
    /// Smallest block index for dyadic statistics.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub n_min: Option<i32>,
    /// Truncation order of the power-series envelopes.
    #[arg(long, global = true)]
    pub m: Option<u32>,
    /// Bessel table: `eval` (values and envelopes) or `s` (the constants S_α).
    #[arg(long, global = true)]
    pub table: Option<String>,
    /// Quadrature tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output format: csv or json.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Output file; defaults to $GMLAB_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file with defaults for any of the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Run grid sweeps on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

fn config_error(path: &Path, line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{}:{line}: {msg}", path.display()))
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn read_config(path: &Path) -> Result<BTreeMap<String, (usize, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| config_error(path, i + 1, "expected `key = value`"))?;
        let v = v.trim().trim_matches('"').to_string();
        out.insert(k.trim().replace('_', "-"), (i + 1, v));
    }
    Ok(out)
}

fn parse<T: std::str::FromStr>(path: &Path, line: usize, key: &str, v: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    v.parse().map_err(|e| config_error(path, line, format!("bad value for `{key}`: {e}")))
}

fn parse_list(path: &Path, line: usize, key: &str, v: &str) -> Result<Vec<f64>, CliError> {
    v.split(',').map(|s| parse(path, line, key, s.trim())).collect()
}

impl Params {
    /// Fills every unset field from the config file named by `--config`.
    pub fn merge_config(mut self) -> Result<Self, CliError> {
        let Some(path) = self.config.clone() else { return Ok(self) };
        for (key, (line, v)) in read_config(&path)? {
            let p = path.as_path();
            let k = key.as_str();
            match k {
                "alpha" if self.alpha.is_empty() => self.alpha = parse_list(p, line, k, &v)?,
                "x" if self.x.is_empty() => self.x = parse_list(p, line, k, &v)?,
                "function" if self.function.is_none() => self.function = Some(v),
                "sequence" if self.sequence.is_none() => self.sequence = Some(v),
                "c" if self.c.is_none() => self.c = Some(parse(p, line, k, &v)?),
                "lambda" if self.lambda.is_none() => self.lambda = Some(parse(p, line, k, &v)?),
                "u-min" if self.u_min.is_none() => self.u_min = Some(parse(p, line, k, &v)?),
                "u-max" if self.u_max.is_none() => self.u_max = Some(parse(p, line, k, &v)?),
                "u-per-decade" if self.u_per_decade.is_none() => self.u_per_decade = Some(parse(p, line, k, &v)?),
                "n-max" if self.n_max.is_none() => self.n_max = Some(parse(p, line, k, &v)?),
                "n-min" if self.n_min.is_none() => self.n_min = Some(parse(p, line, k, &v)?),
                "m" if self.m.is_none() => self.m = Some(parse(p, line, k, &v)?),
                "table" if self.table.is_none() => self.table = Some(v),
                "tol" if self.tol.is_none() => self.tol = Some(parse(p, line, k, &v)?),
                "format" if self.format.is_none() => self.format = Some(parse(p, line, k, &v)?),
                "out" if self.out.is_none() => self.out = Some(PathBuf::from(v)),
                "sequential" => self.sequential |= parse::<bool>(p, line, k, &v)?,
                "alpha" | "x" | "function" | "sequence" | "c" | "lambda" | "u-min" | "u-max" | "u-per-decade"
                | "n-max" | "n-min" | "m" | "table" | "tol" | "format" | "out" => {}
                other => return Err(config_error(p, line, format!("unknown key `{other}`"))),
            }
        }
        Ok(self)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or(Format::Csv)
    }

    pub fn tol(&self) -> Result<f64, CliError> {
        match self.tol {
            None => Ok(1e-9),
            Some(t) if t > 0.0 && t.is_finite() => Ok(t),
            Some(t) => Err(CliError::Config(format!("--tol must be positive, got {t}"))),
        }
    }

    pub fn orders(&self, default: &[f64]) -> Result<Vec<BesselOrder>, CliError> {
        let alphas = if self.alpha.is_empty() { default.to_vec() } else { self.alpha.clone() };
        alphas.into_iter().map(|a| BesselOrder::new(a).map_err(CliError::from)).collect()
    }

    /// `ν` from `--lambda`, which must be a power of two `>= 2`.
    pub fn nu(&self) -> Result<u32, CliError> {
        match self.lambda {
            None => Ok(1),
            Some(l) => {
                let nu = l.log2().round();
                if l >= 2.0 && nu <= 30.0 && 2f64.powf(nu) == l {
                    Ok(nu as u32)
                } else {
                    Err(CliError::Config(format!("--lambda must be a power of two >= 2, got {l}")))
                }
            }
        }
    }

    pub fn c(&self) -> Result<Option<f64>, CliError> {
        match self.c {
            Some(c) if !(c > 0.0 && c.is_finite()) => Err(CliError::Config(format!("--c must be positive, got {c}"))),
            c => Ok(c),
        }
    }

    pub fn profile(&self) -> Result<RadialProfile, CliError> {
        let name = self.function.as_deref().ok_or_else(|| CliError::Config("--function is required".into()))?;
        if name.contains(':') {
            return Ok(Piecewise::parse(name)?.into_profile(name)?);
        }
        let e = gallery::get(name)?;
        e.profile().cloned().ok_or_else(|| CliError::Config(format!("`{name}` is a sequence; use --sequence")))
    }

    pub fn sequence(&self) -> Result<SequenceProfile, CliError> {
        let name = self.sequence.as_deref().ok_or_else(|| CliError::Config("--sequence is required".into()))?;
        let e = gallery::get(name)?;
        e.sequence().cloned().ok_or_else(|| CliError::Config(format!("`{name}` is a profile; use --function")))
    }

    /// Geometric `u` grid from the flags, or the default grid (0 plus 151
    /// points over `[1e-3, 1e3]`) when none is given.
    pub fn u_grid(&self) -> Result<Vec<f64>, CliError> {
        if self.u_min.is_none() && self.u_max.is_none() && self.u_per_decade.is_none() {
            return Ok(default_u_grid());
        }
        let lo = self.u_min.unwrap_or(1e-3);
        let hi = self.u_max.unwrap_or(1e3);
        let per = self.u_per_decade.unwrap_or(25);
        if !(lo > 0.0 && hi >= lo && hi.is_finite()) || per == 0 {
            return Err(CliError::Config(format!(
                "u grid needs 0 < u-min <= u-max and u-per-decade >= 1, got {lo}, {hi}, {per}"
            )));
        }
        let n = ((hi / lo).log10() * per as f64).ceil() as usize;
        let mut g: Vec<f64> = (0..=n).map(|i| lo * 10f64.powf(i as f64 / per as f64)).collect();
        if let Some(last) = g.last_mut() {
            *last = hi;
        }
        Ok(g)
    }

    pub fn n_max_int(&self, default: u64) -> Result<u64, CliError> {
        match self.n_max {
            None => Ok(default),
            Some(n) if n >= 1.0 && n.fract() == 0.0 && n <= 1e12 => Ok(n as u64),
            Some(n) => Err(CliError::Config(format!("--n-max must be a positive integer here, got {n}"))),
        }
    }
}
