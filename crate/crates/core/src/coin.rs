//! SU(2) coins, initial spinors and the column/row splits of the coin.
//!
//! A coin is written `A = [[a, b], [-conj(b), conj(a)]]` with `|a|^2 + |b|^2 = 1`.
//! The column split `A = P + Q` sends the first spin component to the left
//! and the second to the right; the row split `A = R + S` is the convention
//! used by part of the literature and drives the row walk in
//! [`crate::engine::row_walk_distribution`].

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance on `| |a|^2 + |b|^2 - 1 |` (and on spinor norms).
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Moduli below this count as zero for the degeneracy flags.
pub const DEGENERACY_TOL: f64 = 1e-14;
/// Largest imaginary residue tolerated in [`lambda_functional`].
pub const IMAG_RESIDUE_TOL: f64 = 1e-13;

pub type Spinor = [C64; 2];

/// A 2x2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[C64::new(0.0, 0.0); 2]; 2]);

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Mat2([[one, zero], [zero, one]])
    }

    #[inline]
    pub fn apply(&self, v: Spinor) -> Spinor {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let (x, y) = (&self.0, &other.0);
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = x[i][0] * y[0][j] + x[i][1] * y[1][j];
            }
        }
        Mat2(out)
    }

    pub fn add(&self, other: &Mat2) -> Mat2 {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry += other.0[i][j];
            }
        }
        Mat2(out)
    }

    pub fn scale(&self, s: C64) -> Mat2 {
        let mut out = self.0;
        for entry in out.iter_mut().flatten() {
            *entry *= s;
        }
        Mat2(out)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// Which of `a`, `b` vanishes for a degenerate coin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// `a = 0`: the walker oscillates between the origin and its neighbours.
    ZeroA,
    /// `b = 0`: the spin components move ballistically apart.
    ZeroB,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinMatrix {
    a: C64,
    b: C64,
    omega: Option<C64>,
    degeneracy: Option<Degeneracy>,
}

/// Compensated summation, accurate to a few ulps of the result.
pub(crate) fn neumaier_sum(terms: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &t in terms {
        let s = sum + t;
        comp += if sum.abs() >= t.abs() {
            (sum - s) + t
        } else {
            (t - s) + sum
        };
        sum = s;
    }
    sum + comp
}

/// Validates and builds a coin from its first row `(a, b)`.
pub fn make_coin(a: C64, b: C64) -> Result<CoinMatrix> {
    CoinMatrix::new(a, b)
}

impl CoinMatrix {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let defect = (a.norm_sqr() + b.norm_sqr() - 1.0).abs();
        if !defect.is_finite() || defect > NORMALIZATION_TOL {
            return Err(Error::Normalization { defect });
        }
        let degeneracy = if a.norm() < DEGENERACY_TOL {
            Some(Degeneracy::ZeroA)
        } else if b.norm() < DEGENERACY_TOL {
            Some(Degeneracy::ZeroB)
        } else {
            None
        };
        let omega = (a.norm() >= DEGENERACY_TOL).then(|| a / a.norm());
        Ok(CoinMatrix {
            a,
            b,
            omega,
            degeneracy,
        })
    }

    /// `|a|^2 + |b|^2 - 1` evaluated without cancellation.
    ///
    /// The stored matrix is exactly `sqrt(1 + defect)` times a unitary one, so
    /// this is the per-step norm gain of a walk driven by it.
    pub fn unitarity_defect(&self) -> f64 {
        let parts = [self.a.re, self.a.im, self.b.re, self.b.im];
        // Each square split into its rounded value and exact rounding error.
        let mut terms: Vec<f64> = parts.iter().map(|x| x * x).collect();
        terms.extend(parts.iter().map(|x| x.mul_add(*x, -(x * x))));
        terms.push(-1.0);
        neumaier_sum(&terms)
    }

    /// The Hadamard-type coin `a = b = 1/sqrt(2)`.
    pub fn hadamard() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        CoinMatrix::new(h, h).expect("hadamard coin is normalized")
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn abs_a(&self) -> f64 {
        self.a.norm()
    }

    pub fn abs_b(&self) -> f64 {
        self.b.norm()
    }

    /// Phase `a/|a|`; `None` when `a = 0`.
    pub fn omega(&self) -> Option<C64> {
        self.omega
    }

    pub fn degeneracy(&self) -> Option<Degeneracy> {
        self.degeneracy
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracy.is_some()
    }

    pub(crate) fn require_nondegenerate(&self) -> Result<()> {
        match self.degeneracy {
            Some(_) => Err(Error::DegenerateCoin),
            None => Ok(()),
        }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2([[self.a, self.b], [-self.b.conj(), self.a.conj()]])
    }

    /// `A(z) = P z^{-1} + Q z`, the symbol of one walk step.
    pub fn symbol(&self, z: C64) -> Mat2 {
        let d = decompose(self);
        d.p.scale(z.inv()).add(&d.q.scale(z))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InitialSpinor {
    phi1: C64,
    phi2: C64,
}

impl InitialSpinor {
    pub fn new(phi1: C64, phi2: C64) -> Result<Self> {
        let defect = (phi1.norm_sqr() + phi2.norm_sqr() - 1.0).abs();
        if !defect.is_finite() || defect > NORMALIZATION_TOL {
            return Err(Error::SpinorNormalization { defect });
        }
        Ok(InitialSpinor { phi1, phi2 })
    }

    pub fn from_array(v: Spinor) -> Result<Self> {
        Self::new(v[0], v[1])
    }

    /// `e1 = (1, 0)`.
    pub fn up() -> Self {
        InitialSpinor {
            phi1: C64::new(1.0, 0.0),
            phi2: C64::new(0.0, 0.0),
        }
    }

    /// `e2 = (0, 1)`.
    pub fn down() -> Self {
        InitialSpinor {
            phi1: C64::new(0.0, 0.0),
            phi2: C64::new(1.0, 0.0),
        }
    }

    /// `(1, i)/sqrt(2)`, the spinor that makes the Hadamard walk symmetric.
    pub fn symmetric() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        InitialSpinor {
            phi1: C64::new(h, 0.0),
            phi2: C64::new(0.0, h),
        }
    }

    pub fn phi1(&self) -> C64 {
        self.phi1
    }

    pub fn phi2(&self) -> C64 {
        self.phi2
    }

    pub fn as_array(&self) -> Spinor {
        [self.phi1, self.phi2]
    }

    /// The spinor multiplied by a global phase `e^{i gamma}`.
    pub fn with_phase(&self, gamma: f64) -> Self {
        let w = C64::from_polar(1.0, gamma);
        InitialSpinor {
            phi1: self.phi1 * w,
            phi2: self.phi2 * w,
        }
    }
}

/// Column split `A = P + Q` and row split `A = R + S`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoinDecomposition {
    pub p: Mat2,
    pub q: Mat2,
    pub r: Mat2,
    pub s: Mat2,
}

pub fn decompose(coin: &CoinMatrix) -> CoinDecomposition {
    let (a, b) = (coin.a, coin.b);
    let z = C64::new(0.0, 0.0);
    CoinDecomposition {
        p: Mat2([[a, z], [-b.conj(), z]]),
        q: Mat2([[z, b], [z, a.conj()]]),
        r: Mat2([[a, b], [z, z]]),
        s: Mat2([[z, z], [-b.conj(), a.conj()]]),
    }
}

/// The real functional `lambda_A(phi)` that skews every limit formula:
///
/// `|phi2|^2 - |phi1|^2 + (a b conj(phi1) phi2 + conj(a b) phi1 conj(phi2)) / |a|^2`.
pub fn lambda_functional(coin: &CoinMatrix, phi: &InitialSpinor) -> Result<f64> {
    if coin.degeneracy == Some(Degeneracy::ZeroA) {
        return Err(Error::DegenerateCoin);
    }
    let (a, b) = (coin.a, coin.b);
    let (p1, p2) = (phi.phi1, phi.phi2);
    let cross = a * b * p1.conj() * p2 + (a * b).conj() * p1 * p2.conj();
    let value = C64::new(p2.norm_sqr() - p1.norm_sqr(), 0.0) + cross / a.norm_sqr();
    if value.im.abs() > IMAG_RESIDUE_TOL {
        return Err(Error::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn unitarity_defect_is_exact_for_dyadic_entries() {
        let coin = CoinMatrix::new(c(0.5, 0.5), c(0.5, -0.5)).unwrap();
        assert_eq!(coin.unitarity_defect(), 0.0);
        let s = 1.0 + 2f64.powi(-44);
        let coin = CoinMatrix::new(c(0.5 * s, 0.5 * s), c(0.5 * s, -0.5 * s)).unwrap();
        let exact = 2f64.powi(-43) + 2f64.powi(-88);
        assert_eq!(coin.unitarity_defect(), exact);
    }

    #[test]
    fn hadamard_is_valid_and_nondegenerate() {
        let coin = make_coin(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).unwrap();
        assert!(!coin.is_degenerate());
        assert!((coin.omega().unwrap() - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn b_zero_sets_flag() {
        let coin = make_coin(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(coin.degeneracy(), Some(Degeneracy::ZeroB));
        let coin = make_coin(c(0.0, 0.0), c(0.0, 1.0)).unwrap();
        assert_eq!(coin.degeneracy(), Some(Degeneracy::ZeroA));
        assert_eq!(coin.omega(), None);
    }

    #[test]
    fn unnormalized_coin_rejected() {
        let err = make_coin(c(0.9, 0.0), c(0.9, 0.0)).unwrap_err();
        assert!(matches!(err, Error::Normalization { .. }));
        assert!(InitialSpinor::new(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn hadamard_decomposition_entries() {
        let d = decompose(&CoinMatrix::hadamard());
        let h = FRAC_1_SQRT_2;
        let z = c(0.0, 0.0);
        assert!(d.p.max_abs_diff(&Mat2([[c(h, 0.0), z], [c(-h, 0.0), z]])) < 1e-16);
        assert!(d.q.max_abs_diff(&Mat2([[z, c(h, 0.0)], [z, c(h, 0.0)]])) < 1e-16);
    }

    #[test]
    fn identity_coin_splits() {
        let d = decompose(&make_coin(c(1.0, 0.0), c(0.0, 0.0)).unwrap());
        let z = c(0.0, 0.0);
        let e22 = Mat2([[z, z], [z, c(1.0, 0.0)]]);
        assert_eq!(d.q, e22);
        assert_eq!(d.s, e22);
    }

    #[test]
    fn lambda_basis_vectors() {
        let coin = CoinMatrix::hadamard();
        assert!((lambda_functional(&coin, &InitialSpinor::up()).unwrap() + 1.0).abs() < 1e-15);
        assert!((lambda_functional(&coin, &InitialSpinor::down()).unwrap() - 1.0).abs() < 1e-15);
        assert!(
            lambda_functional(&coin, &InitialSpinor::symmetric())
                .unwrap()
                .abs()
                < 1e-15
        );
    }

    #[test]
    fn lambda_needs_nonzero_a() {
        let coin = make_coin(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(
            lambda_functional(&coin, &InitialSpinor::up()),
            Err(Error::DegenerateCoin)
        );
    }

    fn coin_strategy() -> impl Strategy<Value = CoinMatrix> {
        (0.05f64..1.5, -3.2f64..3.2, -3.2f64..3.2).prop_map(|(theta, alpha, beta)| {
            CoinMatrix::new(
                C64::from_polar(theta.cos(), alpha),
                C64::from_polar(theta.sin(), beta),
            )
            .unwrap()
        })
    }

    fn spinor_strategy() -> impl Strategy<Value = InitialSpinor> {
        (0.0f64..1.571, -3.2f64..3.2, -3.2f64..3.2).prop_map(|(theta, alpha, beta)| {
            InitialSpinor::new(
                C64::from_polar(theta.cos(), alpha),
                C64::from_polar(theta.sin(), beta),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn decompositions_resum_to_coin(coin in coin_strategy()) {
            let d = decompose(&coin);
            prop_assert!(d.p.add(&d.q).max_abs_diff(&coin.matrix()) < 1e-15);
            prop_assert!(d.r.add(&d.s).max_abs_diff(&coin.matrix()) < 1e-15);
        }

        #[test]
        fn lambda_is_phase_invariant_and_bounded(
            coin in coin_strategy(),
            phi in spinor_strategy(),
            gamma in -6.3f64..6.3,
        ) {
            let l = lambda_functional(&coin, &phi).unwrap();
            let lg = lambda_functional(&coin, &phi.with_phase(gamma)).unwrap();
            prop_assert!((l - lg).abs() < 1e-13);
            prop_assert!(l.abs() <= 1.0 + coin.abs_b() / coin.abs_a() + 1e-12);
        }
    }
}
