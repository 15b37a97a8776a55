//! Airy function of the first kind on the real line.
//!
//! `Ai(x) = c1 f(x) - c2 g(x)` by its Maclaurin series for `|x| <= 6`, with
//! `f`, `g` the two hypergeometric solutions of `y'' = x y`; optimally
//! truncated asymptotic expansions beyond. `Ai'` uses the same split.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{domain, Result};

/// `Ai(0) = 3^{-2/3} / Gamma(2/3) = 0.35502805388781723926...`
pub const AI_ZERO: f64 = 0.355_028_053_887_817_2;
/// `-Ai'(0) = 3^{-1/3} / Gamma(1/3) = 0.25881940379280679840...`
pub const AI_PRIME_ZERO_NEG: f64 = 0.258_819_403_792_806_8;

/// Series/asymptotic switch point.
pub const SERIES_LIMIT: f64 = 6.0;
/// Largest supported `|x|`.
pub const MAX_ARGUMENT: f64 = 50.0;

const MAX_SERIES_TERMS: usize = 200;
const MAX_ASYMPTOTIC_TERMS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AiryMethod {
    Series,
    Asymptotic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryValue {
    pub x: f64,
    pub ai: f64,
    pub method: AiryMethod,
}

fn check(x: f64) -> Result<()> {
    if !x.is_finite() || x.abs() > MAX_ARGUMENT {
        return Err(domain("x", x, "|x| <= 50"));
    }
    Ok(())
}

fn method_for(x: f64) -> AiryMethod {
    if x.abs() <= SERIES_LIMIT {
        AiryMethod::Series
    } else {
        AiryMethod::Asymptotic
    }
}

pub fn airy(x: f64) -> Result<AiryValue> {
    check(x)?;
    let method = method_for(x);
    Ok(AiryValue {
        x,
        ai: ai_by(x, method),
        method,
    })
}

pub fn airy_ai(x: f64) -> Result<f64> {
    airy(x).map(|v| v.ai)
}

pub fn airy_ai_prime(x: f64) -> Result<f64> {
    check(x)?;
    Ok(match method_for(x) {
        AiryMethod::Series => ai_prime_series(x),
        AiryMethod::Asymptotic => ai_prime_asymptotic(x),
    })
}

/// `Ai(x)` forced through one branch; used to check that the branches agree.
pub fn airy_ai_by(x: f64, method: AiryMethod) -> Result<f64> {
    check(x)?;
    if method == AiryMethod::Asymptotic && x == 0.0 {
        return Err(domain("x", x, "x != 0 for the asymptotic branch"));
    }
    Ok(ai_by(x, method))
}

pub fn airy_ai_prime_by(x: f64, method: AiryMethod) -> Result<f64> {
    check(x)?;
    if method == AiryMethod::Asymptotic && x == 0.0 {
        return Err(domain("x", x, "x != 0 for the asymptotic branch"));
    }
    Ok(match method {
        AiryMethod::Series => ai_prime_series(x),
        AiryMethod::Asymptotic => ai_prime_asymptotic(x),
    })
}

fn ai_by(x: f64, method: AiryMethod) -> f64 {
    match method {
        AiryMethod::Series => ai_series(x),
        AiryMethod::Asymptotic => ai_asymptotic(x),
    }
}

/// `f(x) = sum 3^k (1/3)_k x^{3k} / (3k)!` and `g(x) = sum 3^k (2/3)_k x^{3k+1} / (3k+1)!`.
fn series_fg(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let (mut f, mut ft) = (1.0, 1.0);
    let (mut g, mut gt) = (x, x);
    for k in 1..MAX_SERIES_TERMS {
        let k3 = 3.0 * k as f64;
        ft *= x3 / ((k3 - 1.0) * k3);
        gt *= x3 / (k3 * (k3 + 1.0));
        f += ft;
        g += gt;
        if ft.abs() <= f64::EPSILON * 1e-3 * f.abs().max(1.0)
            && gt.abs() <= f64::EPSILON * 1e-3 * g.abs().max(1.0)
        {
            break;
        }
    }
    (f, g)
}

/// Derivatives `f'` and `g'` of the series above.
fn series_fg_prime(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let (mut fp, mut ft) = (0.5 * x * x, 0.5 * x * x);
    let (mut gp, mut gt) = (1.0, 1.0);
    for k in 1..MAX_SERIES_TERMS {
        let k3 = 3.0 * k as f64;
        // f' term k+1 over term k: x^3 / ((3k+2)(3k)); g' term k over k-1: x^3 / ((3k)(3k-2))
        ft *= x3 / ((k3 + 2.0) * k3);
        gt *= x3 / (k3 * (k3 - 2.0));
        fp += ft;
        gp += gt;
        if ft.abs() <= f64::EPSILON * 1e-3 * fp.abs().max(1.0)
            && gt.abs() <= f64::EPSILON * 1e-3 * gp.abs().max(1.0)
        {
            break;
        }
    }
    (fp, gp)
}

fn ai_series(x: f64) -> f64 {
    let (f, g) = series_fg(x);
    AI_ZERO * f - AI_PRIME_ZERO_NEG * g
}

fn ai_prime_series(x: f64) -> f64 {
    let (fp, gp) = series_fg_prime(x);
    AI_ZERO * fp - AI_PRIME_ZERO_NEG * gp
}

/// Coefficients `u_k` of the asymptotic expansions, `u_0 = 1`.
fn u_coefficients() -> [f64; MAX_ASYMPTOTIC_TERMS] {
    let mut u = [0.0; MAX_ASYMPTOTIC_TERMS];
    u[0] = 1.0;
    for k in 1..MAX_ASYMPTOTIC_TERMS {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
    }
    u
}

/// `v_k = -(6k+1)/(6k-1) u_k`, the coefficients for `Ai'`.
fn v_coefficients() -> [f64; MAX_ASYMPTOTIC_TERMS] {
    let mut v = u_coefficients();
    for (k, vk) in v.iter_mut().enumerate() {
        let kf = k as f64;
        *vk *= -(6.0 * kf + 1.0) / (6.0 * kf - 1.0);
    }
    v
}

/// Terms `c_k / zeta^k` up to (excluding) the smallest one.
fn truncated_terms(coeffs: &[f64; MAX_ASYMPTOTIC_TERMS], zeta: f64) -> Vec<f64> {
    let mut terms = Vec::with_capacity(MAX_ASYMPTOTIC_TERMS);
    let mut power = 1.0;
    let mut prev = f64::INFINITY;
    for &c in coeffs.iter() {
        let t = c * power;
        if t.abs() >= prev || t.abs() < 1e-18 {
            break;
        }
        prev = t.abs();
        terms.push(t);
        power /= zeta;
    }
    terms
}

/// Alternating sum `sum (-1)^k t_k`.
fn alternating(terms: &[f64]) -> f64 {
    terms
        .iter()
        .enumerate()
        .map(|(k, t)| if k % 2 == 0 { *t } else { -*t })
        .sum()
}

/// Splits into `(sum (-1)^k t_{2k}, sum (-1)^k t_{2k+1})`.
fn even_odd(terms: &[f64]) -> (f64, f64) {
    let even = alternating(&terms.iter().step_by(2).copied().collect::<Vec<_>>());
    let odd = alternating(&terms.iter().skip(1).step_by(2).copied().collect::<Vec<_>>());
    (even, odd)
}

fn ai_asymptotic(x: f64) -> f64 {
    let ax = x.abs();
    let zeta = 2.0 / 3.0 * ax * ax.sqrt();
    let terms = truncated_terms(&u_coefficients(), zeta);
    if x > 0.0 {
        (-zeta).exp() / (2.0 * PI.sqrt() * ax.powf(0.25)) * alternating(&terms)
    } else {
        let (p, q) = even_odd(&terms);
        let phase = zeta - FRAC_PI_4;
        (phase.cos() * p + phase.sin() * q) / (PI.sqrt() * ax.powf(0.25))
    }
}

fn ai_prime_asymptotic(x: f64) -> f64 {
    let ax = x.abs();
    let zeta = 2.0 / 3.0 * ax * ax.sqrt();
    let terms = truncated_terms(&v_coefficients(), zeta);
    if x > 0.0 {
        -ax.powf(0.25) * (-zeta).exp() / (2.0 * PI.sqrt()) * alternating(&terms)
    } else {
        let (p, q) = even_odd(&terms);
        let phase = zeta - FRAC_PI_4;
        ax.powf(0.25) / PI.sqrt() * (phase.sin() * p - phase.cos() * q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with 30-digit arithmetic (mpmath airyai).
    #[allow(clippy::excessive_precision)]
    const REFERENCE: &[(f64, f64, f64)] = &[
        (-50.0, -0.16188142361232092, 0.96898983727674909),
        (-30.0, -0.087968188456842163, 1.2286206026374851),
        (-12.0, -0.066555175054373129, 1.0231104533679707),
        (-10.0, 0.040241238486443191, 0.99626504413279006),
        (-8.0, -0.052705050356386203, 0.93556093819830655),
        (-6.0, -0.32914517362982311, 0.34593548728134289),
        (-4.0, -0.070265532949289515, -0.79062857536858138),
        (-1.0, 0.53556088329235212, -0.010160567116645209),
        (-0.5, 0.47572809161053959, -0.20408167033954739),
        (0.5, 0.23169360648083349, -0.22491053266468389),
        (1.0, 0.13529241631288142, -0.15914744129679321),
        (2.0, 0.034924130423274379, -0.053090384433653632),
        (3.0, 0.0065911393574607191, -0.011912976705951318),
        (5.0, 0.00010834442813607442, -0.00024741389086846248),
        (6.0, 9.9476943602528896e-6, -2.4765200397034955e-5),
        (8.0, 4.6922076160992316e-8, -1.3414392979067866e-7),
        (10.0, 1.1047532552898686e-10, -3.5206336767389236e-10),
        (12.0, 1.3931846888753608e-13, -4.8547365549853085e-13),
        (20.0, 1.6916728686705403e-27, -7.586391625748355e-27),
        (30.0, 3.2082175915504956e-49, -1.759876581432726e-48),
        (50.0, 4.5849417240748285e-104, -3.2443318198287993e-103),
    ];

    #[test]
    fn values_at_origin() {
        assert!((airy_ai(0.0).unwrap() - 0.3550280538878172).abs() < 1e-15);
        assert!((airy_ai_prime(0.0).unwrap() + 0.2588194037928068).abs() < 1e-15);
    }

    #[test]
    fn matches_reference_table() {
        for &(x, ai, aip) in REFERENCE {
            let got = airy_ai(x).unwrap();
            let gotp = airy_ai_prime(x).unwrap();
            if x.abs() <= 10.0 {
                assert!((got - ai).abs() <= 1e-10, "Ai({x}) = {got}, want {ai}");
                assert!((gotp - aip).abs() <= 1e-9, "Ai'({x}) = {gotp}, want {aip}");
            } else if x > 0.0 {
                assert!(
                    ((got - ai) / ai).abs() <= 1e-8,
                    "Ai({x}) = {got}, want {ai}"
                );
                assert!(((gotp - aip) / aip).abs() <= 1e-8);
            } else {
                // oscillatory side: relative to the envelope |x|^{-1/4}/sqrt(pi)
                let env = 1.0 / (PI.sqrt() * x.abs().powf(0.25));
                assert!((got - ai).abs() <= 1e-8 * env, "Ai({x}) = {got}, want {ai}");
                assert!((gotp - aip).abs() <= 1e-8 * env * x.abs().sqrt());
            }
        }
    }

    #[test]
    fn first_zero() {
        assert!(airy_ai(-2.338107410459767).unwrap().abs() < 1e-9);
        assert!(airy_ai_prime(-2.338107410459767).unwrap().abs() > 0.5);
    }

    #[test]
    fn right_side_decays() {
        let v = airy_ai(5.0).unwrap();
        assert!(v > 0.0 && v < 2e-4);
        let mut prev = airy_ai(0.0).unwrap();
        for i in 1..=1000 {
            let cur = airy_ai(i as f64 * 0.01).unwrap();
            assert!(cur < prev);
            prev = cur;
        }
    }

    #[test]
    fn branches_agree_at_switch() {
        for x in [-SERIES_LIMIT, SERIES_LIMIT] {
            let s = airy_ai_by(x, AiryMethod::Series).unwrap();
            let a = airy_ai_by(x, AiryMethod::Asymptotic).unwrap();
            assert!((s - a).abs() <= 1e-10, "x={x}: {s} vs {a}");
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let h = 1e-5;
        let fd = (airy_ai(1.0 + h).unwrap() - airy_ai(1.0 - h).unwrap()) / (2.0 * h);
        assert!((fd - airy_ai_prime(1.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn method_tags_and_domain() {
        assert_eq!(airy(1.0).unwrap().method, AiryMethod::Series);
        assert_eq!(airy(-7.0).unwrap().method, AiryMethod::Asymptotic);
        assert!(airy_ai(51.0).is_err());
        assert!(airy_ai(f64::NAN).is_err());
        assert!(airy_ai_prime(-60.0).is_err());
    }
}
