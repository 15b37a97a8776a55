use thiserror::Error;

use crate::asymptotics::RegionKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coin is not in SU(2): ||a|^2 + |b|^2 - 1| = {defect:e}")]
    Normalization { defect: f64 },

    #[error("initial spinor is not a unit vector: ||phi1|^2 + |phi2|^2 - 1| = {defect:e}")]
    SpinorNormalization { defect: f64 },

    #[error("operation requires a coin with ab != 0")]
    DegenerateCoin,

    #[error("coin is not degenerate (ab != 0); use the exact engine")]
    NotDegenerate,

    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    #[error("{steps}-step walk needs {sites} sites, above the cap of {cap}")]
    Resource {
        steps: usize,
        sites: usize,
        cap: usize,
    },

    #[error("site y = {y} at n = {n} lies in the {found:?} region, expected {expected}")]
    Region {
        n: usize,
        y: i64,
        found: RegionKind,
        expected: &'static str,
    },

    #[error("imaginary residue {0:e} in a quantity that must be real")]
    ImaginaryResidue(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, domain: impl Into<String>) -> Error {
    Error::Domain {
        what,
        value,
        domain: domain.into(),
    }
}
