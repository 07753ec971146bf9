//! Run configuration: built-in defaults, then `XIZERO_BITS`, then a flat
//! `key=value` config file, then command-line flags.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use xizero_core::PrecisionContext;

pub const BITS_ENV: &str = "XIZERO_BITS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub bits: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_escalations: u32,
    pub output_format: Format,
    pub plot: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let c = PrecisionContext::default();
        RunConfig {
            bits: c.bits,
            rel_tol: c.rel_tol,
            abs_tol: c.abs_tol,
            max_escalations: c.max_escalations,
            output_format: Format::Json,
            plot: None,
        }
    }
}

/// Values given explicitly on one configuration layer.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub bits: Option<usize>,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_escalations: Option<u32>,
    pub output_format: Option<Format>,
    pub plot: Option<PathBuf>,
}

fn parse_field<T: FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.parse().map_err(|_| format!("bad value `{v}` for `{key}`"))
}

impl Overrides {
    /// Parses a config file: one `key = value` per line, `#` comments.
    /// Keys match the long flag names with `-` or `_`.
    pub fn parse_file(text: &str) -> Result<Overrides, String> {
        let mut o = Overrides::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
            let (k, v) = (k.trim().replace('-', "_"), v.trim());
            match k.as_str() {
                "bits" => o.bits = Some(parse_field(&k, v)?),
                "rel_tol" => o.rel_tol = Some(parse_field(&k, v)?),
                "abs_tol" => o.abs_tol = Some(parse_field(&k, v)?),
                "max_escalations" => o.max_escalations = Some(parse_field(&k, v)?),
                "format" | "output_format" => o.output_format = Some(v.parse()?),
                "plot" => o.plot = Some(PathBuf::from(v)),
                _ => return Err(format!("config line {}: unknown key `{k}`", i + 1)),
            }
        }
        Ok(o)
    }

    pub fn from_env(bits: Option<&str>) -> Result<Overrides, String> {
        let bits = match bits {
            Some(b) => Some(parse_field(BITS_ENV, b.trim())?),
            None => None,
        };
        Ok(Overrides { bits, ..Overrides::default() })
    }

    fn apply(&self, c: &mut RunConfig) {
        if let Some(b) = self.bits {
            c.bits = b;
        }
        if let Some(r) = self.rel_tol {
            c.rel_tol = r;
        }
        if let Some(a) = self.abs_tol {
            c.abs_tol = a;
        }
        if let Some(m) = self.max_escalations {
            c.max_escalations = m;
        }
        if let Some(f) = self.output_format {
            c.output_format = f;
        }
        if let Some(p) = &self.plot {
            c.plot = Some(p.clone());
        }
    }
}

impl RunConfig {
    /// Layers, lowest priority first: defaults, environment, file, flags.
    pub fn resolve(env: &Overrides, file: &Overrides, flags: &Overrides) -> Result<RunConfig, String> {
        let mut c = RunConfig::default();
        for layer in [env, file, flags] {
            layer.apply(&mut c);
        }
        c.context().map_err(|e| e.to_string())?;
        Ok(c)
    }

    pub fn context(&self) -> xizero_core::Result<PrecisionContext> {
        PrecisionContext::new(self.bits, self.rel_tol, self.abs_tol, self.max_escalations)
    }
}
