//! The projective embedding of `sl(n+1)` into polynomial vector fields,
//! with the dual bases used to assemble Casimir operators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::density::{bracket, VectorField};
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Monomial, Poly};
use crate::scalar::{int, ExactScalar};

/// Which element of the basis a pair is built around (indices 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// `e_ij = −x^j ∂_i`, `i ≠ j`, dual `e_ji`.
    OffDiagonal(usize, usize),
    /// `e_ii = −x^i ∂_i − Σ_k x^k ∂_k`, dual `−x^i ∂_i`.
    Diagonal(usize),
    /// `e_i = −∂_i`, dual `ε^i`.
    Translation(usize),
    /// `ε^i = x^i Σ_k x^k ∂_k`, dual `e_i`.
    Quadratic(usize),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::OffDiagonal(i, j) => write!(f, "e{}{}", i + 1, j + 1),
            BasisLabel::Diagonal(i) => write!(f, "e{}{}", i + 1, i + 1),
            BasisLabel::Translation(i) => write!(f, "e{}", i + 1),
            BasisLabel::Quadratic(i) => write!(f, "eps{}", i + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasisPair {
    pub label: BasisLabel,
    pub element: VectorField,
    pub dual: VectorField,
}

fn linear(n: usize, entries: &[(usize, usize, i64)]) -> VectorField {
    // entries: (component i, coordinate j, coefficient) for c x^j ∂_i
    let mut comps = vec![Poly::zero(n); n];
    for &(i, j, c) in entries {
        comps[i] += &Poly::x(n, j).scale(&int(c));
    }
    VectorField::new(comps).expect("well-formed field")
}

pub fn e_offdiag(n: usize, i: usize, j: usize) -> VectorField {
    linear(n, &[(i, j, -1)])
}

pub fn e_diag(n: usize, i: usize) -> VectorField {
    let mut entries = vec![(i, i, -1)];
    entries.extend((0..n).map(|k| (k, k, -1)));
    linear(n, &entries)
}

pub fn e_diag_dual(n: usize, i: usize) -> VectorField {
    linear(n, &[(i, i, -1)])
}

pub fn e_translation(n: usize, i: usize) -> VectorField {
    VectorField::partial(n, i).scale(&int(-1))
}

pub fn epsilon(n: usize, i: usize) -> VectorField {
    let xi = Poly::x(n, i);
    VectorField::new((0..n).map(|k| &xi * &Poly::x(n, k)).collect()).expect("well-formed field")
}

/// The `n² + 2n` dual pairs: off-diagonal, diagonal, translations, then
/// quadratic fields.
pub fn sl_basis(n: usize) -> Result<Vec<DualBasisPair>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = Vec::with_capacity(n * n + 2 * n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(DualBasisPair {
                    label: BasisLabel::OffDiagonal(i, j),
                    element: e_offdiag(n, i, j),
                    dual: e_offdiag(n, j, i),
                });
            }
        }
    }
    for i in 0..n {
        out.push(DualBasisPair {
            label: BasisLabel::Diagonal(i),
            element: e_diag(n, i),
            dual: e_diag_dual(n, i),
        });
    }
    for i in 0..n {
        out.push(DualBasisPair {
            label: BasisLabel::Translation(i),
            element: e_translation(n, i),
            dual: epsilon(n, i),
        });
    }
    for i in 0..n {
        out.push(DualBasisPair {
            label: BasisLabel::Quadratic(i),
            element: epsilon(n, i),
            dual: e_translation(n, i),
        });
    }
    Ok(out)
}

/// Coordinates of a field with respect to `(component, x-monomial)` keys.
fn coordinates(field: &VectorField) -> BTreeMap<(usize, Monomial), ExactScalar> {
    let mut out = BTreeMap::new();
    for (i, c) in field.components().iter().enumerate() {
        for (m, v) in c.terms() {
            out.insert((i, m.clone()), v.clone());
        }
    }
    out
}

/// Expresses `field` as a combination of the given fields, if possible.
pub fn decompose_in_span(field: &VectorField, span: &[VectorField]) -> Option<Vec<ExactScalar>> {
    let coords: Vec<_> = span.iter().map(coordinates).collect();
    let target = coordinates(field);
    let mut keys: Vec<(usize, Monomial)> = coords.iter().flat_map(|c| c.keys().cloned()).collect();
    keys.extend(target.keys().cloned());
    keys.sort();
    keys.dedup();
    let columns: Vec<Vec<ExactScalar>> = coords
        .iter()
        .map(|c| {
            keys.iter()
                .map(|k| c.get(k).cloned().unwrap_or_else(ExactScalar::zero))
                .collect()
        })
        .collect();
    let rhs: Vec<ExactScalar> = keys
        .iter()
        .map(|k| target.get(k).cloned().unwrap_or_else(ExactScalar::zero))
        .collect();
    linalg::solve(&columns, &rhs)
}

/// Outcome of checking that the basis spans a Lie subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub closed: bool,
    /// First pair whose bracket leaves the span.
    pub witness: Option<(BasisLabel, BasisLabel)>,
    pub pairs_checked: usize,
}

pub fn bracket_closure_check(n: usize) -> Result<ClosureReport> {
    let basis = sl_basis(n)?;
    let elements: Vec<VectorField> = basis.iter().map(|p| p.element.clone()).collect();
    let mut checked = 0;
    for (a, pa) in basis.iter().enumerate() {
        for pb in &basis[a + 1..] {
            let br = bracket(&pa.element, &pb.element)?;
            checked += 1;
            if decompose_in_span(&br, &elements).is_none() {
                return Ok(ClosureReport {
                    closed: false,
                    witness: Some((pa.label, pb.label)),
                    pairs_checked: checked,
                });
            }
        }
    }
    Ok(ClosureReport {
        closed: true,
        witness: None,
        pairs_checked: checked,
    })
}
