//! Fixtures shared by the benchmarks.

use qwalk_core::{CoinMatrix, InitialSpinor, C64};

/// A generic coin with all entries complex, away from the degenerate cases.
pub fn generic_coin() -> CoinMatrix {
    CoinMatrix::new(C64::from_polar(0.6, 0.4), C64::from_polar(0.8, -1.3)).expect("unit coin")
}

pub fn generic_spinor() -> InitialSpinor {
    InitialSpinor::new(C64::from_polar(0.8, 0.2), C64::from_polar(0.6, 2.1)).expect("unit spinor")
}

/// `count` equally spaced points on `[lo, hi]`.
pub fn grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| lo + (hi - lo) * k as f64 / (count - 1).max(1) as f64)
        .collect()
}
