//! Run configuration: a flat `key = value` file overlaid by command-line flags.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use qwalk_core::{CoinMatrix, InitialSpinor, C64, DEFAULT_WALL_WIDTH};

/// Keys accepted in a config file. Dashes and underscores are interchangeable.
pub const KNOWN_KEYS: &[&str] = &[
    "a_re",
    "a_im",
    "b_re",
    "b_im",
    "phi1_re",
    "phi1_im",
    "phi2_re",
    "phi2_im",
    "steps",
    "window",
    "wall_width",
    "out",
    "format",
    "alpha",
    "beta",
    "xi",
    "function",
    "points",
    "x",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => bail!("format must be csv or json, got {other:?}"),
        }
    }
}

/// Raw settings after merging file and flags; flags overwrite file entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings(BTreeMap<String, String>);

fn normalize_key(key: &str) -> String {
    key.trim().replace('-', "_")
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", lineno + 1))?;
            let key = normalize_key(key);
            if !KNOWN_KEYS.contains(&key.as_str()) {
                bail!("line {}: unknown key {key:?}", lineno + 1);
            }
            let value = value.trim().to_string();
            // Repeated windows accumulate, like the repeatable flag.
            match map.get_mut(&key) {
                Some(prev) if key == "window" => *prev = format!("{prev},{value}"),
                _ => {
                    map.insert(key, value);
                }
            }
        }
        Ok(Settings(map))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.0.insert(normalize_key(key), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| anyhow!("invalid {key} {v:?}: {e}"))
            })
            .transpose()
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        self.parsed(key)?
            .ok_or_else(|| anyhow!("missing required setting {key}"))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub coin: CoinMatrix,
    pub phi: InitialSpinor,
    pub steps: Vec<usize>,
    /// Windows in `xi = y/n`, each within `[-1, 1]`.
    pub windows: Vec<(f64, f64)>,
    /// Whether `windows` came from the user rather than the `[-1, 1]` default.
    pub windows_given: bool,
    pub wall_width: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn parse_steps(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| anyhow!("invalid step count {t:?}: {e}"))
        })
        .collect()
}

pub fn parse_windows(s: &str) -> Result<Vec<(f64, f64)>> {
    s.split(',')
        .map(|w| {
            let (lo, hi) = w
                .trim()
                .split_once(':')
                .ok_or_else(|| anyhow!("window {w:?} is not lo:hi"))?;
            let lo: f64 = lo
                .trim()
                .parse()
                .map_err(|e| anyhow!("window {w:?}: {e}"))?;
            let hi: f64 = hi
                .trim()
                .parse()
                .map_err(|e| anyhow!("window {w:?}: {e}"))?;
            if !(-1.0..=1.0).contains(&lo) || !(-1.0..=1.0).contains(&hi) || !(lo <= hi) {
                bail!("window {w:?} must satisfy -1 <= lo <= hi <= 1");
            }
            Ok((lo, hi))
        })
        .collect()
}

impl RunConfig {
    pub fn from_settings(s: &Settings) -> Result<Self> {
        let f = |key: &str, default: f64| -> Result<f64> { Ok(s.parsed(key)?.unwrap_or(default)) };
        let coin = CoinMatrix::new(
            C64::new(f("a_re", FRAC_1_SQRT_2)?, f("a_im", 0.0)?),
            C64::new(f("b_re", FRAC_1_SQRT_2)?, f("b_im", 0.0)?),
        )?;
        let phi = InitialSpinor::new(
            C64::new(f("phi1_re", 1.0)?, f("phi1_im", 0.0)?),
            C64::new(f("phi2_re", 0.0)?, f("phi2_im", 0.0)?),
        )?;
        let steps = s
            .get("steps")
            .map(parse_steps)
            .transpose()?
            .unwrap_or_default();
        let windows = s
            .get("window")
            .map(parse_windows)
            .transpose()?
            .unwrap_or_else(|| vec![(-1.0, 1.0)]);
        let wall_width = f("wall_width", DEFAULT_WALL_WIDTH)?;
        if !(wall_width >= 0.0 && wall_width.is_finite()) {
            bail!("wall_width must be finite and non-negative, got {wall_width}");
        }
        Ok(RunConfig {
            coin,
            phi,
            steps,
            windows,
            windows_given: s.get("window").is_some(),
            wall_width,
            out: s.get("out").map(PathBuf::from),
            format: s.parsed("format")?.unwrap_or(Format::Csv),
        })
    }

    /// Steps list, required non-empty and (unless `allow_zero`) free of zeros.
    pub fn require_steps(&self, allow_zero: bool) -> Result<&[usize]> {
        if self.steps.is_empty() {
            bail!("no step counts given (use --steps)");
        }
        if !allow_zero && self.steps.contains(&0) {
            bail!("step counts must be >= 1");
        }
        Ok(&self.steps)
    }

    /// Whether `y / n` lies in some window (`n = 0` counts as `xi = 0`).
    pub fn in_window(&self, n: usize, y: i64) -> bool {
        let xi = if n == 0 { 0.0 } else { y as f64 / n as f64 };
        self.windows.iter().any(|&(lo, hi)| lo <= xi && xi <= hi)
    }

    /// Sites `y` with `n + y` even and `y / n` in some window, ascending.
    pub fn window_sites(&self, n: usize) -> Vec<i64> {
        let n_i = n as i64;
        (-n_i..=n_i)
            .step_by(2)
            .filter(|&y| self.in_window(n, y))
            .collect()
    }
}
