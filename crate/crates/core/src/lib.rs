//! Discrete-time quantum walks on the integer line with an SU(2) coin.
//!
//! [`engine`] evolves a walk exactly; [`spectral`], [`special`] and
//! [`asymptotics`] evaluate the leading-order behaviour of the transition
//! probability in the allowed region, at the walls `|y| = n|a|` and in the
//! hidden region beyond them.

// `!(x < y)` is used on purpose so that NaN inputs fail validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod coin;
pub mod engine;
pub mod error;
pub mod format;
pub mod quadrature;
pub mod special;
pub mod spectral;

pub use num_complex::Complex64 as C64;

pub use asymptotics::{
    classify, estimate, hidden_estimate, inner_estimate, parity_site, wall_estimate,
    AsymptoticEstimate, LeadingOrder, RegionKind, RegionLabel, DEFAULT_WALL_WIDTH,
};
pub use coin::{
    decompose, lambda_functional, make_coin, CoinDecomposition, CoinMatrix, Degeneracy,
    InitialSpinor, Mat2, Spinor,
};
pub use engine::{
    amplitude_oracle, degenerate_distribution, distribution, evolve, evolve_capped, evolve_from,
    row_walk, row_walk_distribution, Component, Distribution, SpinorField,
};
pub use error::{Error, Result};
pub use spectral::{AllowedRegionData, HiddenRegionData};
