//! Exact symbolic engine for the projective `sl(n+1)` action on
//! multidifferential operators between tensor densities on `ℝⁿ`.
//!
//! Operators and their symbols are sparse polynomials with rational
//! coefficients. The crate computes the Casimir operators, the isotypic
//! decomposition of symbols, the resonant and critical values of the shift,
//! and the equivariant quantization together with its inverse.

pub mod algebra;
pub mod casimir;
pub mod density;
pub mod error;
pub mod isotypic;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod quantize;
pub mod random;
pub mod resonance;
pub mod scalar;
pub mod verify;

pub use algebra::{sl_basis, BasisLabel, DualBasisPair};
pub use casimir::{
    casimir_direct, casimir_direct_with, casimir_symbol, gamma, hwv, n_c, SpectralLabel,
};
pub use density::{
    apply_operator, bracket, lie_derivative_applied, lie_derivative_density,
    lie_derivative_operator, lie_derivative_symbol, BidiffOp, Context, Density, SymbolPoly,
    VectorField,
};
pub use error::{Error, Obstruction, Result};
pub use isotypic::{decompose, isotypic_project};
pub use parse::{format_poly, parse_poly, ParseError};
pub use poly::{Family, Monomial, Poly, ALPHA, BETA};
pub use quantize::{
    linear_quantize_order2, order2_k_family, quantize, quantize_order2_closed, symbol_map, t1, t2,
    tau_maps, QuantizationResult, SymbolResult,
};
pub use resonance::{
    classify_shift, critical_bound_index, critical_values_in, one_dimensional_resonances,
    resonant_delta, ResonanceTuple, ShiftClass, ShiftReport,
};
pub use scalar::{format_scalar, parse_scalar, ExactScalar};
