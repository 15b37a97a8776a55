//! Adaptive Simpson quadrature.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    /// False if some subinterval hit the depth limit before meeting its share of the tolerance.
    pub converged: bool,
}

const MAX_DEPTH: u32 = 50;

/// Integrates a smooth `f` over `[lo, hi]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Quadrature {
    let mut state = State {
        evaluations: 3,
        error: 0.0,
        converged: true,
    };
    let (flo, fhi, fmid) = (f(lo), f(hi), f(0.5 * (lo + hi)));
    let whole = simpson(lo, hi, flo, fmid, fhi);
    let value = refine(
        &f, lo, hi, flo, fmid, fhi, whole, tol, MAX_DEPTH, &mut state,
    );
    Quadrature {
        value,
        error_estimate: state.error,
        evaluations: state.evaluations,
        converged: state.converged,
    }
}

struct State {
    evaluations: usize,
    error: f64,
    converged: bool,
}

fn simpson(lo: f64, hi: f64, flo: f64, fmid: f64, fhi: f64) -> f64 {
    (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    flo: f64,
    fmid: f64,
    fhi: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    state: &mut State,
) -> f64 {
    let mid = 0.5 * (lo + hi);
    let (lm, rm) = (0.5 * (lo + mid), 0.5 * (mid + hi));
    let (flm, frm) = (f(lm), f(rm));
    state.evaluations += 2;
    let left = simpson(lo, mid, flo, flm, fmid);
    let right = simpson(mid, hi, fmid, frm, fhi);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        if depth == 0 && delta.abs() > 15.0 * tol {
            state.converged = false;
        }
        state.error += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    refine(
        f,
        lo,
        mid,
        flo,
        flm,
        fmid,
        left,
        0.5 * tol,
        depth - 1,
        state,
    ) + refine(
        f,
        mid,
        hi,
        fmid,
        frm,
        fhi,
        right,
        0.5 * tol,
        depth - 1,
        state,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = adaptive_simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12);
        assert!((q.value - 0.0).abs() < 1e-12);
        assert!(q.converged);
    }

    #[test]
    fn smooth_integrand() {
        let q = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-10);
        assert!((q.value - 2.0).abs() < 1e-10);
    }
}
