//! The subcommands, each producing tables. Independent step counts run in
//! parallel and are collected in input order so output bytes are fixed.

use anyhow::{bail, Result};
use rayon::prelude::*;

use qwalk_core::special::{airy, AiryMethod};
use qwalk_core::spectral::{density_integral, density_rho, rate_h};
use qwalk_core::{
    classify, degenerate_distribution, distribution, estimate, evolve, parity_site, Distribution,
    Error,
};

use crate::config::RunConfig;
use crate::table::{Cell, Table};

/// Exact probabilities at or below this are treated as lost to underflow.
pub const UNDERFLOW: f64 = 1e-300;

fn exact_distribution(cfg: &RunConfig, n: usize) -> Result<Distribution> {
    Ok(if cfg.coin.is_degenerate() {
        degenerate_distribution(&cfg.coin, &cfg.phi, n)?
    } else {
        distribution(&evolve(&cfg.coin, &cfg.phi, n)?)
    })
}

fn per_step<T: Send>(
    steps: &[usize],
    job: impl Fn(usize) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    steps.par_iter().map(|&n| job(n)).collect()
}

/// One `y,p` table per step count, over parity-valid sites inside the windows.
pub fn simulate(cfg: &RunConfig) -> Result<Vec<(usize, Table)>> {
    let steps = cfg.require_steps(true)?;
    per_step(steps, |n| {
        let dist = exact_distribution(cfg, n)?;
        let mut t = Table::new(&["y", "p"]);
        for (y, p) in dist.parity_sites().filter(|&(y, _)| cfg.in_window(n, y)) {
            t.push(vec![Cell::Int(y), Cell::Float(p)]);
        }
        Ok((n, t))
    })
}

pub const COMPARE_COLUMNS: &[&str] = &[
    "n", "y", "region", "estimate", "exact", "abs_err", "rel_err",
];

/// Exact against asymptotic values on every parity-valid site in the windows.
///
/// Sites where the dispatched formula has no value (the hidden formula at
/// `|y| = n`, or a domain edge) get an absent estimate.
pub fn compare(cfg: &RunConfig) -> Result<Table> {
    let steps = cfg.require_steps(false)?;
    if cfg.coin.is_degenerate() {
        return Err(Error::DegenerateCoin.into());
    }
    let blocks = per_step(steps, |n| {
        let dist = exact_distribution(cfg, n)?;
        let mut rows = Vec::new();
        for y in cfg.window_sites(n) {
            let exact = dist.prob(y);
            let label = classify(&cfg.coin, n, y, cfg.wall_width);
            let est = match estimate(&cfg.coin, &cfg.phi, n, y, cfg.wall_width) {
                Ok(e) => Some(e.value),
                Err(Error::Domain { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let abs_err = est.map(|e| (e - exact).abs());
            let rel_err = abs_err.filter(|_| exact > UNDERFLOW).map(|d| d / exact);
            rows.push(vec![
                Cell::Int(n as i64),
                Cell::Int(y),
                Cell::Str(label.kind.to_string()),
                Cell::float_or_absent(est),
                Cell::Float(exact),
                Cell::float_or_absent(abs_err),
                Cell::float_or_absent(rel_err),
            ]);
        }
        Ok(rows)
    })?;
    let mut t = Table::new(COMPARE_COLUMNS);
    blocks.into_iter().flatten().for_each(|r| t.push(r));
    Ok(t)
}

/// Window mass `sum_{alpha <= y/n <= beta} p_n(y)` against `int_alpha^beta rho`.
pub fn konno(cfg: &RunConfig, alpha: f64, beta: f64) -> Result<Table> {
    let steps = cfg.require_steps(false)?;
    let a = cfg.coin.abs_a();
    for (what, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v.abs() < a) {
            return Err(Error::Domain {
                what,
                value: v,
                domain: format!("(-|a|, |a|) = (-{a}, {a})"),
            }
            .into());
        }
    }
    if !(alpha < beta) {
        bail!("alpha = {alpha} must be below beta = {beta}");
    }
    let integral = density_integral(&cfg.coin, &cfg.phi, alpha, beta)?;
    let sums = per_step(steps, |n| {
        let dist = exact_distribution(cfg, n)?;
        let nf = n as f64;
        Ok(dist
            .sites()
            .filter(|&(y, _)| alpha <= y as f64 / nf && y as f64 / nf <= beta)
            .map(|(_, p)| p)
            .sum::<f64>())
    })?;
    let mut t = Table::new(&["n", "alpha", "beta", "sum", "integral", "difference"]);
    for (&n, sum) in steps.iter().zip(sums) {
        t.push(vec![
            Cell::Int(n as i64),
            Cell::Float(alpha),
            Cell::Float(beta),
            Cell::Float(sum),
            Cell::Float(integral),
            Cell::Float(sum - integral),
        ]);
    }
    Ok(t)
}

/// Empirical log-rate `-(1/n) log p_n(y_n)` at the parity-correct rounding
/// `y_n` of `n xi`, next to `H_Q(y_n / n)`.
pub fn rate(cfg: &RunConfig, xi: f64) -> Result<Table> {
    let steps = cfg.require_steps(false)?;
    if cfg.coin.is_degenerate() {
        return Err(Error::DegenerateCoin.into());
    }
    let a = cfg.coin.abs_a();
    if !(a < xi.abs() && xi.abs() < 1.0) {
        return Err(Error::Domain {
            what: "xi",
            value: xi,
            domain: format!("|a| < |xi| < 1 with |a| = {a}"),
        }
        .into());
    }
    let rows = per_step(steps, |n| {
        let y = parity_site(n, n as f64 * xi);
        let exact = exact_distribution(cfg, n)?.prob(y);
        let h = match rate_h(&cfg.coin, y as f64 / n as f64) {
            Ok(h) => Some(h),
            Err(Error::Domain { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let (exact, status) = if exact <= UNDERFLOW {
            (None, "underflow")
        } else if h.is_none() {
            (Some(exact), "domain")
        } else {
            (Some(exact), "ok")
        };
        let empirical = exact.map(|p| -p.ln() / n as f64);
        let gap = empirical.zip(h).map(|(e, h)| (e - h).abs());
        Ok(vec![
            Cell::Int(n as i64),
            Cell::Int(y),
            Cell::float_or_absent(exact),
            Cell::float_or_absent(empirical),
            Cell::float_or_absent(h),
            Cell::float_or_absent(gap),
            Cell::Str(status.to_string()),
        ])
    })?;
    let mut t = Table::new(&["n", "y", "exact", "empirical_rate", "h_q", "gap", "status"]);
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityFunction {
    Rho,
    Rate,
}

impl std::str::FromStr for DensityFunction {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" => Ok(DensityFunction::Rho),
            "rate" => Ok(DensityFunction::Rate),
            other => bail!("function must be rho or rate, got {other:?}"),
        }
    }
}

/// `xi,value` on `points` equally spaced abscissae, endpoints included.
///
/// The first window is used, defaulting to `[-|a|, |a|]` for `rho` and
/// `[|a|, 1]` for `rate`. Points where the function is undefined are absent.
pub fn density(cfg: &RunConfig, function: DensityFunction, points: usize) -> Result<Table> {
    if cfg.coin.is_degenerate() {
        return Err(Error::DegenerateCoin.into());
    }
    if points < 2 {
        bail!("points must be at least 2, got {points}");
    }
    let a = cfg.coin.abs_a();
    let (lo, hi) = if cfg.windows_given {
        cfg.windows[0]
    } else {
        match function {
            DensityFunction::Rho => (-a, a),
            DensityFunction::Rate => (a, 1.0),
        }
    };
    let mut t = Table::new(&["xi", "value"]);
    for k in 0..points {
        let xi = lo + (hi - lo) * k as f64 / (points - 1) as f64;
        let value = match function {
            DensityFunction::Rho => density_rho(&cfg.coin, &cfg.phi, xi),
            DensityFunction::Rate => rate_h(&cfg.coin, xi),
        };
        let value = match value {
            Ok(v) => Some(v),
            Err(Error::Domain { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        t.push(vec![Cell::Float(xi), Cell::float_or_absent(value)]);
    }
    Ok(t)
}

pub fn airy_table(x: f64) -> Result<Table> {
    let v = airy(x)?;
    let method = match v.method {
        AiryMethod::Series => "series",
        AiryMethod::Asymptotic => "asymptotic",
    };
    let mut t = Table::new(&["x", "ai", "method"]);
    t.push(vec![
        Cell::Float(v.x),
        Cell::Float(v.ai),
        Cell::Str(method.to_string()),
    ]);
    Ok(t)
}
