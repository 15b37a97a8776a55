//! Exact n-step evolution of the walk and a Fourier-side amplitude oracle.
//!
//! One step maps a field `f` to `(Uf)(x) = P f(x+1) + Q f(x-1)`. After `n`
//! steps from `delta_x (x) phi` the field lives on `[x - n, x + n]`, and only
//! sites with `n + y - x` even carry amplitude. Fields are stored over the full
//! interval, forced zeros included.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64 as C64;

use crate::coin::{decompose, neumaier_sum, CoinMatrix, Degeneracy, InitialSpinor, Mat2, Spinor};
use crate::error::{Error, Result};
use crate::format::sig17;

/// Default cap on the number of stored sites, `2n + 1`.
pub const DEFAULT_MAX_SITES: usize = 1_000_000;

const ZERO: C64 = C64::new(0.0, 0.0);

/// The state `U^n (delta_origin (x) phi)` over `[offset, offset + len)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    n: usize,
    origin: i64,
    offset: i64,
    amps: Vec<Spinor>,
}

impl SpinorField {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Starting site of the walk.
    pub fn origin(&self) -> i64 {
        self.origin
    }

    /// Leftmost stored site.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn amps(&self) -> &[Spinor] {
        &self.amps
    }

    /// Amplitude at `y`; zero outside the stored interval.
    pub fn amplitude(&self, y: i64) -> Spinor {
        let idx = y - self.offset;
        if idx < 0 || idx as usize >= self.amps.len() {
            [ZERO, ZERO]
        } else {
            self.amps[idx as usize]
        }
    }

    /// `(site, amplitude)` over the stored interval.
    pub fn sites(&self) -> impl Iterator<Item = (i64, Spinor)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.offset + i as i64, *v))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps
            .iter()
            .map(|v| v[0].norm_sqr() + v[1].norm_sqr())
            .sum()
    }

    fn parity_allows(&self, y: i64) -> bool {
        (self.n as i64 + y - self.origin).rem_euclid(2) == 0
    }

    /// CSV `y,re1,im1,re2,im2` over the parity-valid sites.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "y,re1,im1,re2,im2")?;
        for (y, v) in self.sites().filter(|(y, _)| self.parity_allows(*y)) {
            writeln!(
                w,
                "{},{},{},{},{}",
                y,
                sig17(v[0].re),
                sig17(v[0].im),
                sig17(v[1].re),
                sig17(v[1].im)
            )?;
        }
        Ok(())
    }
}

/// Probabilities `p_n(phi; y)` over `[offset, offset + len)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    n: usize,
    origin: i64,
    offset: i64,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, y: i64) -> f64 {
        let idx = y - self.offset;
        if idx < 0 || idx as usize >= self.probs.len() {
            0.0
        } else {
            self.probs[idx as usize]
        }
    }

    pub fn total(&self) -> f64 {
        neumaier_sum(&self.probs)
    }

    pub fn sites(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, p)| (self.offset + i as i64, *p))
    }

    pub fn parity_allows(&self, y: i64) -> bool {
        (self.n as i64 + y - self.origin).rem_euclid(2) == 0
    }

    /// Stored sites that parity allows to be occupied.
    pub fn parity_sites(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.sites().filter(move |(y, _)| self.parity_allows(*y))
    }

    /// CSV `y,p` over the parity-valid sites.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "y,p")?;
        for (y, p) in self.parity_sites() {
            writeln!(w, "{},{}", y, sig17(p))?;
        }
        Ok(())
    }
}

/// Runs `n` steps of `f(x) <- left f(x+1) + right f(x-1)` from `delta_origin (x) init`.
///
/// `defect` is the coin's [`CoinMatrix::unitarity_defect`]; the result is
/// divided by the accumulated gain `(1 + defect)^{n/2}` so long walks do not
/// drift off unit norm.
fn propagate(
    left: &Mat2,
    right: &Mat2,
    defect: f64,
    init: Spinor,
    origin: i64,
    n: usize,
    max_sites: usize,
) -> Result<SpinorField> {
    let sites = 2 * n + 1;
    if sites > max_sites {
        return Err(Error::Resource {
            steps: n,
            sites,
            cap: max_sites,
        });
    }
    // One zero guard cell on each side keeps the inner loop branch-free.
    let mut cur = vec![[ZERO, ZERO]; sites + 2];
    let mut next = vec![[ZERO, ZERO]; sites + 2];
    cur[n + 1] = init;
    for k in 1..=n {
        // After k steps the support is [n - k, n + k] in site indices, shifted by the guard.
        let (lo, hi) = (n + 1 - k, n + 1 + k);
        for i in lo..=hi {
            let from_right = left.apply(cur[i + 1]);
            let from_left = right.apply(cur[i - 1]);
            next[i] = [from_right[0] + from_left[0], from_right[1] + from_left[1]];
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur.pop();
    cur.remove(0);
    if defect != 0.0 {
        let scale = (-0.5 * n as f64 * defect.ln_1p()).exp();
        for v in cur.iter_mut() {
            *v = [v[0] * scale, v[1] * scale];
        }
    }
    Ok(SpinorField {
        n,
        origin,
        offset: origin - n as i64,
        amps: cur,
    })
}

/// `U^n (delta_0 (x) phi)` by direct recursion.
pub fn evolve(coin: &CoinMatrix, phi: &InitialSpinor, n: usize) -> Result<SpinorField> {
    evolve_capped(coin, phi, n, DEFAULT_MAX_SITES)
}

pub fn evolve_capped(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    n: usize,
    max_sites: usize,
) -> Result<SpinorField> {
    let d = decompose(coin);
    propagate(
        &d.p,
        &d.q,
        coin.unitarity_defect(),
        phi.as_array(),
        0,
        n,
        max_sites,
    )
}

/// `U^n (delta_x (x) phi)`; the walk commutes with translations.
pub fn evolve_from(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    x: i64,
    n: usize,
) -> Result<SpinorField> {
    let d = decompose(coin);
    propagate(
        &d.p,
        &d.q,
        coin.unitarity_defect(),
        phi.as_array(),
        x,
        n,
        DEFAULT_MAX_SITES,
    )
}

pub fn distribution(field: &SpinorField) -> Distribution {
    Distribution {
        n: field.n,
        origin: field.origin,
        offset: field.offset,
        probs: field
            .amps
            .iter()
            .map(|v| v[0].norm_sqr() + v[1].norm_sqr())
            .collect(),
    }
}

/// Closed-form distributions for `a = 0` or `b = 0`.
///
/// The stored range is the minimal interval covering the support.
pub fn degenerate_distribution(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    n: usize,
) -> Result<Distribution> {
    let (w1, w2) = (phi.phi1().norm_sqr(), phi.phi2().norm_sqr());
    let (offset, probs) = match coin.degeneracy() {
        None => return Err(Error::NotDegenerate),
        Some(Degeneracy::ZeroA) if n.is_multiple_of(2) => (0, vec![1.0]),
        Some(Degeneracy::ZeroA) => (-1, vec![w1, 0.0, w2]),
        Some(Degeneracy::ZeroB) if n == 0 => (0, vec![1.0]),
        Some(Degeneracy::ZeroB) => {
            let mut probs = vec![0.0; 2 * n + 1];
            probs[0] = w1;
            probs[2 * n] = w2;
            (-(n as i64), probs)
        }
    };
    Ok(Distribution {
        n,
        origin: 0,
        offset,
        probs,
    })
}

/// Spin component selected by the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    First,
    Second,
}

impl Component {
    pub fn index(self) -> usize {
        match self {
            Component::First => 0,
            Component::Second => 1,
        }
    }
}

/// Samples `A(z_k)^n phi` at the `N = 2n + 2` nodes `z_k = e^{2 pi i k / N}`.
fn symbol_samples(coin: &CoinMatrix, phi: &InitialSpinor, n: usize) -> Vec<Spinor> {
    let nodes = 2 * n + 2;
    (0..nodes)
        .map(|k| {
            let z = C64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64);
            let sym = coin.symbol(z);
            let mut v = phi.as_array();
            for _ in 0..n {
                v = sym.apply(v);
            }
            v
        })
        .collect()
}

fn laurent_coefficient(samples: &[Spinor], component: usize, y: i64) -> C64 {
    let nodes = samples.len() as i64;
    samples
        .iter()
        .enumerate()
        .map(|(k, v)| {
            // z_k^{-y}, with the exponent reduced mod N before taking the angle
            let m = (k as i64 * y).rem_euclid(nodes);
            v[component] * C64::from_polar(1.0, -2.0 * PI * m as f64 / nodes as f64)
        })
        .sum::<C64>()
        / nodes as f64
}

/// `<U^n (delta_0 (x) phi), delta_y (x) e_i>` as the `y`-th Laurent
/// coefficient of `z -> <A(z)^n phi, e_i>`, by uniform sampling of the circle.
///
/// Independent of [`evolve`]: it never touches the lattice recursion.
pub fn amplitude_oracle(
    coin: &CoinMatrix,
    phi: &InitialSpinor,
    component: Component,
    n: usize,
    y: i64,
) -> C64 {
    if y.unsigned_abs() as usize > n || (n as i64 + y) % 2 != 0 {
        return ZERO;
    }
    let samples = symbol_samples(coin, phi, n);
    laurent_coefficient(&samples, component.index(), y)
}

/// Every amplitude of the n-step field through the oracle route, sharing one
/// set of circle samples.
pub fn oracle_field(coin: &CoinMatrix, phi: &InitialSpinor, n: usize) -> SpinorField {
    let samples = symbol_samples(coin, phi, n);
    let amps = (-(n as i64)..=n as i64)
        .map(|y| {
            if (n as i64 + y) % 2 != 0 {
                [ZERO, ZERO]
            } else {
                [
                    laurent_coefficient(&samples, 0, y),
                    laurent_coefficient(&samples, 1, y),
                ]
            }
        })
        .collect();
    SpinorField {
        n,
        origin: 0,
        offset: -(n as i64),
        amps,
    }
}

/// The row walk `(Vf)(x) = R f(x+1) + S f(x-1)` from `delta_0 (x) psi`.
pub fn row_walk(coin: &CoinMatrix, psi: &InitialSpinor, n: usize) -> Result<SpinorField> {
    let d = decompose(coin);
    propagate(
        &d.r,
        &d.s,
        coin.unitarity_defect(),
        psi.as_array(),
        0,
        n,
        DEFAULT_MAX_SITES,
    )
}

/// `q_n(psi; .)`, the distribution of the row walk.
pub fn row_walk_distribution(
    coin: &CoinMatrix,
    psi: &InitialSpinor,
    n: usize,
) -> Result<Distribution> {
    row_walk(coin, psi, n).map(|f| distribution(&f))
}
