//! Closed-form spectral quantities of the walk.
//!
//! Allowed region `|eta| < |a|`: the eigenphase `mu(t) = arccos(|a| cos t)` of
//! `A(omega e^{it})`, its saddle point `t(eta)`, the oscillation phase
//! `theta(eta)`, and the boundary values `f_i`, `g_i` built from the unit
//! eigenvector `u(z)`. Hidden region `|a| < |xi| < 1`: the moduli `D`, `r`, the
//! rate function `H_Q` and the amplitude `G`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::coin::{lambda_functional, CoinMatrix, InitialSpinor, Spinor};
use crate::error::{domain, Result};
use crate::quadrature::adaptive_simpson;

/// Allowed-region evaluations refuse `|eta| > |a| - NEAR_WALL_BAND`.
pub const NEAR_WALL_BAND: f64 = 1e-6;
/// Radicands in the hidden region must exceed this.
pub const RADICAND_GUARD: f64 = 1e-12;
/// Absolute tolerance of [`density_integral`].
pub const DENSITY_QUADRATURE_TOL: f64 = 1e-9;

/// `mu(t) = arccos(|a| cos t)`, in `[0, pi]`.
pub fn mu(coin: &CoinMatrix, t: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    Ok((coin.abs_a() * t.cos()).clamp(-1.0, 1.0).acos())
}

/// `mu'(t) = |a| sin t / sqrt(1 - |a|^2 cos^2 t)`.
pub fn mu_prime(coin: &CoinMatrix, t: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    let a = coin.abs_a();
    Ok(a * t.sin() / (1.0 - a * a * t.cos().powi(2)).sqrt())
}

/// `mu''(t) = |a| |b|^2 cos t / (1 - |a|^2 cos^2 t)^{3/2}`.
pub fn mu_second(coin: &CoinMatrix, t: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    let (a, b) = (coin.abs_a(), coin.abs_b());
    Ok(a * b * b * t.cos() / (1.0 - a * a * t.cos().powi(2)).powf(1.5))
}

/// The saddle `t(eta) = arcsin(|b| eta / (|a| sqrt(1 - eta^2)))`, solving `mu'(t) = eta`.
pub fn saddle_t(coin: &CoinMatrix, eta: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    let (a, b) = (coin.abs_a(), coin.abs_b());
    if !(eta.abs() < a) {
        return Err(domain("eta", eta, format!("|eta| < |a| = {a}")));
    }
    let arg = b * eta / (a * (1.0 - eta * eta).sqrt());
    Ok(arg.clamp(-1.0, 1.0).asin())
}

/// `R(eta) = |b| / (pi (1 - eta^2) sqrt(|a|^2 - eta^2))`, so that `rho = R (1 + lambda eta)`.
pub fn envelope(coin: &CoinMatrix, eta: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    check_allowed(coin, eta, "eta")?;
    let (a, b) = (coin.abs_a(), coin.abs_b());
    Ok(b / (PI * (1.0 - eta * eta) * (a * a - eta * eta).sqrt()))
}

fn check_allowed(coin: &CoinMatrix, eta: f64, what: &'static str) -> Result<()> {
    let a = coin.abs_a();
    if !(eta.abs() <= a - NEAR_WALL_BAND) {
        return Err(domain(
            what,
            eta,
            format!(
                "|{what}| <= |a| - {NEAR_WALL_BAND:e} = {}",
                a - NEAR_WALL_BAND
            ),
        ));
    }
    Ok(())
}

fn inner(x: Spinor, y: Spinor) -> C64 {
    x[0] * y[0].conj() + x[1] * y[1].conj()
}

/// `J(psi1, psi2) = (-conj(psi2), conj(psi1))`.
pub fn j_map(v: Spinor) -> Spinor {
    [-v[1].conj(), v[0].conj()]
}

/// Unit eigenvector `u(z)` of `A(omega z)` for the eigenvalue `lambda(z)`, `|z| = 1`.
pub fn unit_eigenvector(coin: &CoinMatrix, z: C64) -> Result<Spinor> {
    coin.require_nondegenerate()?;
    let omega = coin.omega().expect("nondegenerate coin has a phase");
    let a = coin.abs_a();
    let lambda = C64::from_polar(1.0, mu(coin, z.arg())?);
    let first = omega * coin.b() * z;
    let second = lambda - a * z.conj();
    let p = (coin.abs_b().powi(2) + second.norm_sqr()).sqrt();
    Ok([first / p, second / p])
}

/// Boundary data at a point of the allowed region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AllowedRegionData {
    pub eta: f64,
    /// Saddle angle `t(eta)`.
    pub t: f64,
    pub mu_at_t: f64,
    /// `theta(eta) = 2 mu(t(eta)) - 2 eta t(eta)`.
    pub theta: f64,
    pub f1: C64,
    pub f2: C64,
    pub g1: C64,
    pub g2: C64,
    /// `R(eta)`.
    pub r_env: f64,
}

impl AllowedRegionData {
    pub fn boundary_norm(&self) -> f64 {
        self.f1.norm_sqr() + self.f2.norm_sqr() + self.g1.norm_sqr() + self.g2.norm_sqr()
    }

    /// `f1 conj(g1) + f2 conj(g2)`, the complex amplitude of the oscillating term.
    pub fn cross_term(&self) -> C64 {
        self.f1 * self.g1.conj() + self.f2 * self.g2.conj()
    }

    /// `OSC_n(eta) = 2 Re(e^{i (n theta + pi/2)} (f1 conj(g1) + f2 conj(g2)))`.
    pub fn osc(&self, n: usize) -> f64 {
        let phase = C64::from_polar(1.0, n as f64 * self.theta + PI / 2.0);
        2.0 * (phase * self.cross_term()).re
    }

    /// `(A, B)` with `OSC_n = A cos(n theta) + B sin(n theta)`.
    pub fn osc_coefficients(&self) -> (f64, f64) {
        let k = self.cross_term();
        (-2.0 * k.im, -2.0 * k.re)
    }
}

pub fn allowed_data(coin: &CoinMatrix, phi: &InitialSpinor, eta: f64) -> Result<AllowedRegionData> {
    coin.require_nondegenerate()?;
    check_allowed(coin, eta, "eta")?;
    let t = saddle_t(coin, eta)?;
    let mu_at_t = mu(coin, t)?;
    let phi = phi.as_array();

    let u = unit_eigenvector(coin, C64::from_polar(1.0, t))?;
    let fc = inner(phi, u);
    let w = j_map(unit_eigenvector(coin, C64::from_polar(1.0, -t))?);
    let gc = inner(phi, w);

    Ok(AllowedRegionData {
        eta,
        t,
        mu_at_t,
        theta: 2.0 * mu_at_t - 2.0 * eta * t,
        f1: fc * u[0],
        f2: fc * u[1],
        g1: gc * w[0],
        g2: gc * w[1],
        r_env: envelope(coin, eta)?,
    })
}

/// Weak-limit density `rho(xi) = |b| (1 + lambda xi) / (pi (1 - xi^2) sqrt(|a|^2 - xi^2))`.
pub fn density_rho(coin: &CoinMatrix, phi: &InitialSpinor, xi: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    check_allowed(coin, xi, "xi")?;
    let lambda = lambda_functional(coin, phi)?;
    Ok(envelope(coin, xi)? * (1.0 + lambda * xi))
}

/// `int_lo^hi rho(xi) d xi` for `-|a| <= lo < hi <= |a|`.
///
/// Integrates in `u` with `xi = |a| sin u`, where the integrand
/// `|b| (1 + lambda |a| sin u) / (pi (1 - |a|^2 sin^2 u))` is smooth up to the walls.
pub fn density_integral(coin: &CoinMatrix, phi: &InitialSpinor, lo: f64, hi: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    let (a, b) = (coin.abs_a(), coin.abs_b());
    for (what, v) in [("alpha", lo), ("beta", hi)] {
        if !(v.abs() <= a) {
            return Err(domain(what, v, format!("[-|a|, |a|] = [-{a}, {a}]")));
        }
    }
    if !(lo < hi) {
        return Err(domain("alpha", lo, format!("alpha < beta = {hi}")));
    }
    let lambda = lambda_functional(coin, phi)?;
    let (ulo, uhi) = (
        (lo / a).clamp(-1.0, 1.0).asin(),
        (hi / a).clamp(-1.0, 1.0).asin(),
    );
    let integrand = |u: f64| {
        let s = u.sin();
        b * (1.0 + lambda * a * s) / (PI * (1.0 - a * a * s * s))
    };
    Ok(adaptive_simpson(integrand, ulo, uhi, DENSITY_QUADRATURE_TOL).value)
}

/// Square roots `(sqrt(xi^2 - |a|^2), sqrt(1 - xi^2))` on the hidden region.
fn hidden_roots(coin: &CoinMatrix, xi: f64) -> Result<(f64, f64)> {
    let a = coin.abs_a();
    let inner = xi * xi - a * a;
    let outer = 1.0 - xi * xi;
    if !(inner > RADICAND_GUARD && outer > RADICAND_GUARD) {
        return Err(domain("xi", xi, format!("|a| < |xi| < 1 with |a| = {a}")));
    }
    Ok((inner.sqrt(), outer.sqrt()))
}

/// `D(xi) = (|b| + sqrt(xi^2 - |a|^2)) / sqrt(1 - xi^2)`.
pub fn hidden_d(coin: &CoinMatrix, xi: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    let (s, c) = hidden_roots(coin, xi)?;
    Ok((coin.abs_b() + s) / c)
}

/// `r(xi) = (|b| xi + sqrt(xi^2 - |a|^2)) / (|a| sqrt(1 - xi^2))`; negative for `xi < 0`.
pub fn hidden_r(coin: &CoinMatrix, xi: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    let (s, c) = hidden_roots(coin, xi)?;
    Ok((coin.abs_b() * xi + s) / (coin.abs_a() * c))
}

/// The large-deviation rate `H_Q(xi)`:
///
/// `2|xi| log(|b||xi| + s) - 2 log(|b| + s) + (1 - |xi|) log(1 - xi^2) - 2|xi| log|a|`
/// with `s = sqrt(xi^2 - |a|^2)`.
pub fn rate_h(coin: &CoinMatrix, xi: f64) -> Result<f64> {
    coin.require_nondegenerate()?;
    let (s, _) = hidden_roots(coin, xi)?;
    let (a, b) = (coin.abs_a(), coin.abs_b());
    let x = xi.abs();
    Ok(
        2.0 * x * (b * x + s).ln() - 2.0 * (b + s).ln() + (1.0 - x) * (1.0 - x * x).ln()
            - 2.0 * x * a.ln(),
    )
}

/// `H_Q` through the moduli: `2 (|xi| log r(|xi|) - log D(xi))`.
pub fn rate_h_from_moduli(coin: &CoinMatrix, xi: f64) -> Result<f64> {
    let x = xi.abs();
    Ok(2.0 * (x * hidden_r(coin, x)?.ln() - hidden_d(coin, xi)?.ln()))
}

/// Data at a point of the hidden region.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HiddenRegionData {
    pub xi: f64,
    pub d: f64,
    /// Signed `r(xi)`.
    pub r: f64,
    pub h: f64,
    pub g: f64,
    pub f1: C64,
    pub f2: C64,
    /// The scalar `phi(xi)` with `F_psi = phi(xi) <u(xi), psi>`.
    pub coefficient: C64,
    pub u: Spinor,
}

pub fn hidden_data(coin: &CoinMatrix, phi: &InitialSpinor, xi: f64) -> Result<HiddenRegionData> {
    coin.require_nondegenerate()?;
    let d = hidden_d(coin, xi)?;
    let r = hidden_r(coin, xi)?;
    let h = rate_h(coin, xi)?;
    let a = coin.abs_a();
    let ab = coin.a() * coin.b();
    let i = C64::new(0.0, 1.0);

    let numerator = i * a * (a / r - 1.0 / d) * phi.phi1() - i * r * ab * phi.phi2();
    let coefficient = numerator / (r * ab * (d + 1.0 / d));
    let u = [i * r * ab / a, i * d + i * a / r];
    let (f1, f2) = (coefficient * u[0], coefficient * u[1]);

    Ok(HiddenRegionData {
        xi,
        d,
        r,
        h,
        g: f1.norm_sqr() + f2.norm_sqr(),
        f1,
        f2,
        coefficient,
        u,
    })
}

impl HiddenRegionData {
    /// `|phi(xi)|^2 ||u(xi)||^2`, the second route to `G`.
    pub fn g_from_norms(&self) -> f64 {
        self.coefficient.norm_sqr() * (self.u[0].norm_sqr() + self.u[1].norm_sqr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn mu_special_values() {
        let h = CoinMatrix::hadamard();
        assert!((mu(&h, 0.0).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!((mu(&h, FRAC_PI_2).unwrap() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn mu_prime_finite_difference() {
        let h = CoinMatrix::hadamard();
        let step = 1e-5;
        let fd = (mu(&h, 0.3 + step).unwrap() - mu(&h, 0.3 - step).unwrap()) / (2.0 * step);
        assert!((fd - mu_prime(&h, 0.3).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn saddle_values() {
        let h = CoinMatrix::hadamard();
        assert_eq!(saddle_t(&h, 0.0).unwrap(), 0.0);
        let near = saddle_t(&h, FRAC_1_SQRT_2 * (1.0 - 1e-12)).unwrap();
        assert!((near - FRAC_PI_2).abs() < 1e-5);
        let t = saddle_t(&h, 0.5).unwrap();
        assert!((mu_prime(&h, t).unwrap() - 0.5).abs() < 1e-10);
        assert!((saddle_t(&h, -0.5).unwrap() + t).abs() < 1e-16);
        assert!(saddle_t(&h, FRAC_1_SQRT_2).is_err());
    }

    #[test]
    fn degenerate_coins_rejected() {
        let coin = CoinMatrix::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(mu(&coin, 0.1).is_err());
        assert!(density_rho(&coin, &InitialSpinor::up(), 0.0).is_err());
        assert!(rate_h(&coin, 0.5).is_err());
    }

    #[test]
    fn boundary_norm_at_center() {
        let d = allowed_data(&CoinMatrix::hadamard(), &InitialSpinor::up(), 0.0).unwrap();
        assert!((d.boundary_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn theta_derivative() {
        let h = CoinMatrix::hadamard();
        let phi = InitialSpinor::up();
        let step = 1e-5;
        let th = |e: f64| allowed_data(&h, &phi, e).unwrap().theta;
        let fd = (th(0.3 + step) - th(0.3 - step)) / (2.0 * step);
        let t = saddle_t(&h, 0.3).unwrap();
        assert!((fd + 2.0 * t).abs() < 1e-6);
    }

    #[test]
    fn osc_coefficients_reproduce_osc() {
        let coin = CoinMatrix::new(c(0.6, 0.3), C64::from_polar(0.55f64.sqrt(), 1.1)).unwrap();
        let phi = InitialSpinor::new(c(0.0, 0.6), c(0.8, 0.0)).unwrap();
        let d = allowed_data(&coin, &phi, 0.2).unwrap();
        let (ca, cb) = d.osc_coefficients();
        for n in [1usize, 7, 100, 1001] {
            let nt = n as f64 * d.theta;
            assert!((d.osc(n) - (ca * nt.cos() + cb * nt.sin())).abs() < 1e-12);
        }
    }

    #[test]
    fn density_values_and_symmetry() {
        let h = CoinMatrix::hadamard();
        let sym = InitialSpinor::symmetric();
        assert!((density_rho(&h, &sym, 0.0).unwrap() - 1.0 / PI).abs() < 1e-12);
        for i in 1..20 {
            let x = 0.035 * i as f64;
            let l = density_rho(&h, &sym, -x).unwrap();
            let r = density_rho(&h, &sym, x).unwrap();
            assert!((l - r).abs() < 1e-14 * r);
        }
        assert!(density_rho(&h, &sym, FRAC_1_SQRT_2 - 1e-7).is_err());
    }

    #[test]
    fn density_integrates_to_one() {
        let coin = CoinMatrix::new(c(0.8, 0.0), c(0.0, 0.6)).unwrap();
        let phi = InitialSpinor::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let total = density_integral(&coin, &phi, -0.8, 0.8).unwrap();
        assert!((total - 1.0).abs() < 1e-6);
        assert!(density_integral(&coin, &phi, -0.9, 0.1).is_err());
        assert!(density_integral(&coin, &phi, 0.3, 0.1).is_err());
    }

    // Independent check of the u-substitution: midpoint rule in xi with an
    // open grid that avoids the endpoint singularities, on an interior window.
    #[test]
    fn density_integral_matches_midpoint_rule() {
        let h = CoinMatrix::hadamard();
        let phi = InitialSpinor::up();
        let (lo, hi) = (-0.3, 0.5);
        let m = 200_000;
        let step = (hi - lo) / m as f64;
        let mid: f64 = (0..m)
            .map(|k| density_rho(&h, &phi, lo + (k as f64 + 0.5) * step).unwrap() * step)
            .sum();
        let quad = density_integral(&h, &phi, lo, hi).unwrap();
        assert!((mid - quad).abs() < 1e-8);
    }

    #[test]
    fn hidden_boundary_limits() {
        let h = CoinMatrix::hadamard();
        let xi = FRAC_1_SQRT_2 + 1e-9;
        assert!((hidden_d(&h, xi).unwrap() - 1.0).abs() < 1e-3);
        assert!((hidden_r(&h, xi).unwrap().abs() - 1.0).abs() < 1e-3);
        assert!(rate_h(&h, xi).unwrap().abs() < 1e-10);
        let top = rate_h(&h, 1.0 - 1e-9).unwrap();
        assert!((top - 2.0f64.ln()).abs() < 1e-6);
        assert!(rate_h(&h, 0.5).is_err());
        assert!(rate_h(&h, 1.0).is_err());
    }

    #[test]
    fn rate_is_even_and_routes_agree() {
        let coin = CoinMatrix::new(c(0.5, 0.5), c(0.0, FRAC_1_SQRT_2)).unwrap();
        for k in 1..100 {
            let xi = coin.abs_a() + (1.0 - coin.abs_a()) * k as f64 / 100.0;
            let h = rate_h(&coin, xi).unwrap();
            assert_eq!(h, rate_h(&coin, -xi).unwrap());
            assert!((h - rate_h_from_moduli(&coin, -xi).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn rate_derivative_is_twice_log_r() {
        let h = CoinMatrix::hadamard();
        let step = 1e-5;
        let fd = (rate_h(&h, 0.8 + step).unwrap() - rate_h(&h, 0.8 - step).unwrap()) / (2.0 * step);
        assert!((fd - 2.0 * hidden_r(&h, 0.8).unwrap().ln()).abs() < 1e-6);
    }

    #[test]
    fn hidden_amplitude_routes_agree() {
        let coin = CoinMatrix::new(c(0.6, 0.3), C64::from_polar(0.55f64.sqrt(), 1.1)).unwrap();
        let phi = InitialSpinor::new(c(0.0, 0.6), c(0.8, 0.0)).unwrap();
        for xi in [-0.95, -0.8, 0.72, 0.9] {
            let d = hidden_data(&coin, &phi, xi).unwrap();
            assert!(d.g >= 0.0 && d.g.is_finite());
            assert!((d.g - d.g_from_norms()).abs() < 1e-12 * d.g.max(1.0));
            assert!(d.d >= 1.0);
            assert_eq!(d.r < 0.0, xi < 0.0);
        }
    }
}
