use thiserror::Error;

use crate::casimir::SpectralLabel;
use crate::poly::Poly;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("density has weight {found}, operator slot {slot} expects {expected}")]
    WeightMismatch {
        slot: usize,
        expected: String,
        found: String,
    },

    #[error("expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("unsupported arity {0} (only 1 and 2 are supported here)")]
    UnsupportedArity(usize),

    #[error("polynomial uses fiber family {family} but the context has arity {arity}")]
    FamilyOutOfRange { family: usize, arity: usize },

    #[error("expected a polynomial in x only")]
    NotCoefficient,

    #[error("expected a homogeneous symbol of degree {expected}")]
    NotHomogeneous { expected: usize },

    #[error("label ({i},{p}) out of range for dimension {n}")]
    LabelOutOfRange { i: usize, p: usize, n: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("resonance needs distinct orders, got i={i}, j={j}")]
    EqualOrders { i: usize, j: usize },

    #[error("critical shift: denominator {0} vanishes")]
    CriticalShift(&'static str),

    #[error("invalid input shape: {0}")]
    Shape(String),

    #[error("{0}")]
    Obstruction(Box<Obstruction>),
}

/// A prolongation that cannot be completed: the component of `N_C` applied
/// to the degree `blocked.i + 1` part lands in an eigenspace with the same
/// eigenvalue as the source and does not vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstruction {
    pub source: SpectralLabel,
    pub blocked: SpectralLabel,
    pub obstruction: Poly,
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "no equivariant prolongation of {} past {}: obstruction {}",
            self.source, self.blocked, self.obstruction
        )
    }
}

impl From<Obstruction> for Error {
    fn from(o: Obstruction) -> Self {
        Error::Obstruction(Box::new(o))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
