//! Leading-order estimates of `p_n(phi; y)` in the three regimes, with a
//! finite-n region classifier.
//!
//! The walls `y = +-n|a|` get a band of half-width `W n^{1/3}` in which the
//! Airy formula is used; inside the band the inner and hidden prefactors blow up.

use std::f64::consts::PI;
use std::fmt;

use crate::coin::{lambda_functional, CoinMatrix, InitialSpinor};
use crate::error::{domain, Error, Result};
use crate::special::airy_ai;
use crate::spectral::{allowed_data, hidden_data};

pub const DEFAULT_WALL_WIDTH: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionKind {
    Allowed,
    WallPlus,
    WallMinus,
    Hidden,
    OutOfRange,
}

impl RegionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionKind::Allowed => "allowed",
            RegionKind::WallPlus => "wall_plus",
            RegionKind::WallMinus => "wall_minus",
            RegionKind::Hidden => "hidden",
            RegionKind::OutOfRange => "out_of_range",
        }
    }

    pub fn is_wall(self) -> bool {
        matches!(self, RegionKind::WallPlus | RegionKind::WallMinus)
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionLabel {
    pub kind: RegionKind,
    /// `y / n`.
    pub xi: f64,
    /// Offset from the nearer wall: `y - n|a|` for `y >= 0`, `y + n|a|` otherwise.
    pub d: f64,
}

/// The power of `n` in the prefactor of an estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LeadingOrder {
    Power(f64),
    Exponential,
    /// Outside the support; the probability is exactly zero.
    Vanishing,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimate {
    pub value: f64,
    pub region: RegionLabel,
    pub leading_order: LeadingOrder,
    /// `n + y` is odd, so the value is exactly zero.
    pub parity_zero: bool,
    /// The inner bracket `1 + lambda xi + OSC` went negative and was clamped to 0.
    pub clamped: bool,
}

/// Classifies `(n, y)` into a region.
///
/// Sites with `|y| > n` are `OutOfRange`. Otherwise the `+` wall band is
/// tested first, then the `-` band, then `|y/n| < |a|`. For `n = 0` only
/// `y = 0` is in range and it is labelled `Allowed`.
pub fn classify(coin: &CoinMatrix, n: usize, y: i64, wall_width: f64) -> RegionLabel {
    let nf = n as f64;
    let a = coin.abs_a();
    let xi = if n == 0 { 0.0 } else { y as f64 / nf };
    let (d_plus, d_minus) = (y as f64 - nf * a, y as f64 + nf * a);
    let d = if y >= 0 { d_plus } else { d_minus };
    let band = wall_width * nf.cbrt();

    let kind = if y.unsigned_abs() > n as u64 {
        RegionKind::OutOfRange
    } else if n == 0 {
        RegionKind::Allowed
    } else if d_plus.abs() <= band {
        RegionKind::WallPlus
    } else if d_minus.abs() <= band {
        RegionKind::WallMinus
    } else if xi.abs() < a {
        RegionKind::Allowed
    } else {
        RegionKind::Hidden
    };
    let d = match kind {
        RegionKind::WallPlus => d_plus,
        RegionKind::WallMinus => d_minus,
        _ => d,
    };
    RegionLabel { kind, xi, d }
}

/// Nearest integer to `target` with the parity of `n`, ties toward 0.
pub fn parity_site(n: usize, target: f64) -> i64 {
    let parity = (n % 2) as i64;
    let mut lo = target.floor() as i64;
    if lo.rem_euclid(2) != parity {
        lo -= 1;
    }
    let hi = lo + 2;
    let (dl, dh) = (target - lo as f64, hi as f64 - target);
    if dl < dh || (dl == dh && lo.abs() < hi.abs()) {
        lo
    } else {
        hi
    }
}

fn parity_odd(n: usize, y: i64) -> bool {
    (n as i64 + y).rem_euclid(2) == 1
}

fn expect_region(
    coin: &CoinMatrix,
    n: usize,
    y: i64,
    accept: fn(RegionKind) -> bool,
    expected: &'static str,
) -> Result<RegionLabel> {
    coin.require_nondegenerate()?;
    let label = classify(coin, n, y, DEFAULT_WALL_WIDTH);
    if n == 0 || !accept(label.kind) {
        return Err(Error::Region {
            n,
            y,
            found: label.kind,
            expected,
        });
    }
    Ok(label)
}

/// Allowed-region estimate
/// `(1 + (-1)^{n+y}) R(xi) / n * [1 + lambda xi + OSC_n(xi)]`, `xi = y/n`.
///
/// The region is checked with [`DEFAULT_WALL_WIDTH`]; use [`estimate`] for another band.
pub fn inner_estimate(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    n: usize,
    y: i64,
) -> Result<AsymptoticEstimate> {
    let label = expect_region(coin, n, y, |k| k == RegionKind::Allowed, "allowed")?;
    inner_at(coin, phi, n, y, label)
}

/// Wall estimate `(1 + (-1)^{n+y}) alpha^2 n^{-2/3} Ai(+-alpha n^{-1/3} d)^2 (1 +- |a| lambda)`.
pub fn wall_estimate(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    n: usize,
    y: i64,
) -> Result<AsymptoticEstimate> {
    let label = expect_region(coin, n, y, RegionKind::is_wall, "a wall band")?;
    wall_at(coin, phi, n, y, label)
}

/// Hidden-region estimate
/// `(1 + (-1)^{n+y}) |b| / (pi n (1 - xi^2) sqrt(xi^2 - |a|^2)) e^{-n H_Q(xi)} G(xi)`.
pub fn hidden_estimate(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    n: usize,
    y: i64,
) -> Result<AsymptoticEstimate> {
    let label = expect_region(coin, n, y, |k| k == RegionKind::Hidden, "hidden")?;
    hidden_at(coin, phi, n, y, label)
}

/// Classifies with band half-width `wall_width * n^{1/3}` and dispatches.
pub fn estimate(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    n: usize,
    y: i64,
    wall_width: f64,
) -> Result<AsymptoticEstimate> {
    coin.require_nondegenerate()?;
    if n == 0 {
        return Err(domain("n", 0.0, "n >= 1"));
    }
    if !(wall_width >= 0.0 && wall_width.is_finite()) {
        return Err(domain("wall_width", wall_width, "[0, inf)"));
    }
    let label = classify(coin, n, y, wall_width);
    match label.kind {
        RegionKind::Allowed => inner_at(coin, phi, n, y, label),
        RegionKind::WallPlus | RegionKind::WallMinus => wall_at(coin, phi, n, y, label),
        RegionKind::Hidden => hidden_at(coin, phi, n, y, label),
        RegionKind::OutOfRange => Ok(AsymptoticEstimate {
            value: 0.0,
            region: label,
            leading_order: LeadingOrder::Vanishing,
            parity_zero: parity_odd(n, y),
            clamped: false,
        }),
    }
}

fn zero(region: RegionLabel, leading_order: LeadingOrder) -> AsymptoticEstimate {
    AsymptoticEstimate {
        value: 0.0,
        region,
        leading_order,
        parity_zero: true,
        clamped: false,
    }
}

fn inner_at(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    n: usize,
    y: i64,
    label: RegionLabel,
) -> Result<AsymptoticEstimate> {
    let order = LeadingOrder::Power(-1.0);
    let lambda = lambda_functional(coin, phi)?;
    // Computed even when the parity kills the value so that domain errors do not depend on y's parity.
    let data = allowed_data(coin, phi, label.xi)?;
    if parity_odd(n, y) {
        return Ok(zero(label, order));
    }
    let bracket = 1.0 + lambda * label.xi + data.osc(n);
    let clamped = bracket < 0.0;
    Ok(AsymptoticEstimate {
        value: 2.0 * data.r_env / n as f64 * bracket.max(0.0),
        region: label,
        leading_order: order,
        parity_zero: false,
        clamped,
    })
}

/// `alpha = (2 / (|a| |b|^2))^{1/3}`.
pub fn wall_alpha(coin: &CoinMatrix) -> Result<f64> {
    coin.require_nondegenerate()?;
    Ok((2.0 / (coin.abs_a() * coin.abs_b().powi(2))).cbrt())
}

fn wall_at(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    n: usize,
    y: i64,
    label: RegionLabel,
) -> Result<AsymptoticEstimate> {
    let order = LeadingOrder::Power(-2.0 / 3.0);
    let lambda = lambda_functional(coin, phi)?;
    let alpha = wall_alpha(coin)?;
    let nf = n as f64;
    let sign = if label.kind == RegionKind::WallPlus {
        1.0
    } else {
        -1.0
    };
    let ai = airy_ai(sign * alpha * label.d / nf.cbrt())?;
    if parity_odd(n, y) {
        return Ok(zero(label, order));
    }
    let value =
        2.0 * alpha * alpha * nf.powf(-2.0 / 3.0) * ai * ai * (1.0 + sign * coin.abs_a() * lambda);
    Ok(AsymptoticEstimate {
        value: value.max(0.0),
        region: label,
        leading_order: order,
        parity_zero: false,
        clamped: false,
    })
}

fn hidden_at(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    n: usize,
    y: i64,
    label: RegionLabel,
) -> Result<AsymptoticEstimate> {
    let order = LeadingOrder::Exponential;
    if y.unsigned_abs() == n as u64 {
        return Err(domain(
            "xi",
            label.xi,
            "|xi| < 1 for the hidden-region formula",
        ));
    }
    let data = hidden_data(coin, phi, label.xi)?;
    if parity_odd(n, y) {
        return Ok(zero(label, order));
    }
    let (a, b) = (coin.abs_a(), coin.abs_b());
    let xi = label.xi;
    let nf = n as f64;
    let prefactor = b / (PI * nf * (1.0 - xi * xi) * (xi * xi - a * a).sqrt());
    Ok(AsymptoticEstimate {
        value: 2.0 * prefactor * (-nf * data.h).exp() * data.g,
        region: label,
        leading_order: order,
        parity_zero: false,
        clamped: false,
    })
}
