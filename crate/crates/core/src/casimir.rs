//! Casimir operators of the projective algebra.
//!
//! On operators the Casimir is assembled directly from the dual bases. On
//! symbols it is the closed form `C^t`, and the two differ by the
//! degree-lowering term `N_C`.

use std::fmt;

use crate::algebra::{sl_basis, DualBasisPair};
use crate::density::{lie_derivative_operator, BidiffOp, Context, SymbolPoly};
use crate::error::{Error, Result};
use crate::poly::{Family, Poly};
use crate::scalar::{from_usize, int, ExactScalar};

/// Names the isotypic block `S_(i,p)`: total fiber degree `i` and tableau
/// label `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectralLabel {
    pub i: usize,
    pub p: usize,
}

impl SpectralLabel {
    pub fn new(i: usize, p: usize) -> Self {
        SpectralLabel { i, p }
    }

    /// Checks `p ≤ ⌊i/2⌋` (`p = 0` when `n = 1`).
    pub fn validate(self, n: usize) -> Result<Self> {
        if self.p > max_label(n, self.i) {
            return Err(Error::LabelOutOfRange {
                i: self.i,
                p: self.p,
                n,
            });
        }
        Ok(self)
    }
}

impl fmt::Display for SpectralLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.p)
    }
}

pub(crate) fn max_label(n: usize, i: usize) -> usize {
    if n >= 2 {
        i / 2
    } else {
        0
    }
}

/// `γ_{i,q} = n(n+1)δ(δ−1) − 2((n+1)δ − n + q)i + 2i² + 2q(q−1)`.
pub fn gamma(n: usize, delta: &ExactScalar, i: usize, q: usize) -> Result<ExactScalar> {
    SpectralLabel::new(i, q).validate(n)?;
    Ok(gamma_unchecked(n, delta, i, q))
}

pub(crate) fn gamma_unchecked(n: usize, delta: &ExactScalar, i: usize, q: usize) -> ExactScalar {
    let nn = from_usize(n);
    let n1 = from_usize(n + 1);
    let i = from_usize(i);
    let q = from_usize(q);
    &nn * &n1 * delta * (delta - int(1)) - int(2) * (&n1 * delta - &nn + &q) * &i
        + int(2) * &i * &i
        + int(2) * &q * (&q - int(1))
}

/// `(α_1 β_2 − α_2 β_1)^q α_1^{k−q} β_1^{l−q}`.
pub fn hwv(k: usize, l: usize, q: usize, n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if q > k.min(l) || (n == 1 && q > 0) {
        return Err(Error::LabelOutOfRange { i: k + l, p: q, n });
    }
    let a1 = Poly::alpha(n, 0);
    let b1 = Poly::beta(n, 0);
    let mut out = Poly::one(n);
    if q > 0 {
        let wedge = &(&a1 * &Poly::beta(n, 1)) - &(&Poly::alpha(n, 1) * &b1);
        for _ in 0..q {
            out = &out * &wedge;
        }
    }
    for _ in 0..k - q {
        out = &out * &a1;
    }
    for _ in 0..l - q {
        out = &out * &b1;
    }
    Ok(out)
}

/// `C^t` applied to a polynomial form:
///
/// ```text
/// n(n+1)δ(δ−1) + 2(n+1)(1−δ) Σ_k E_k
///   + Σ_{k,l} Σ_{i,j} ξ^k_i ξ^l_j D_{ξ^k_j} D_{ξ^l_i}
///   + Σ_{k,l} Σ_{i,j} ξ^k_i ξ^l_j D_{ξ^k_i} D_{ξ^l_j}
/// ```
///
/// The last sum equals `D(D−1)` on terms of total fiber degree `D`.
pub fn casimir_symbol_poly(body: &Poly, ctx: &Context) -> Poly {
    let n = ctx.n();
    let delta = ctx.delta();
    let c0 = from_usize(n * (n + 1)) * &delta * (&delta - int(1));
    let c1 = int(2) * from_usize(n + 1) * (int(1) - &delta);
    let mut out = Poly::zero(n);
    for (m, c) in body.terms() {
        let d = m.fiber_degree(n) as usize;
        let factor = &c0 + &c1 * from_usize(d) + from_usize(d * d.saturating_sub(1));
        out.add_term(m.clone(), c * factor);
    }
    let p = ctx.arity();
    for l in 0..p {
        for i in 0..n {
            let d1 = body.d(Family::Fiber(l), i);
            if d1.is_zero() {
                continue;
            }
            for k in 0..p {
                for j in 0..n {
                    let d2 = d1.d(Family::Fiber(k), j);
                    if d2.is_zero() {
                        continue;
                    }
                    out += &d2.mul_var(Family::Fiber(k), i).mul_var(Family::Fiber(l), j);
                }
            }
        }
    }
    out
}

pub fn casimir_symbol(sym: &SymbolPoly) -> SymbolPoly {
    SymbolPoly {
        body: casimir_symbol_poly(&sym.body, &sym.context),
        context: sym.context.clone(),
    }
}

/// `N_C = 2 Σ_k (E_k + (n+1)λ_k)(η D_{ξ^k})`.
pub fn n_c_poly(body: &Poly, ctx: &Context) -> Poly {
    let n = ctx.n();
    let mut out = Poly::zero(n);
    for k in 0..ctx.arity() {
        let fam = Family::Fiber(k);
        let lowered = body.eta_contract(fam);
        if lowered.is_zero() {
            continue;
        }
        let shift = from_usize(n + 1) * ctx.weight(k);
        out += &(&lowered.euler(fam) + &lowered.scale(&shift)).scale(&int(2));
    }
    out
}

pub fn n_c(sym: &SymbolPoly) -> SymbolPoly {
    SymbolPoly {
        body: n_c_poly(&sym.body, &sym.context),
        context: sym.context.clone(),
    }
}

/// `Σ L_e ∘ L_{e*}` over the given dual pairs.
pub fn casimir_direct_with(op: &BidiffOp, basis: &[DualBasisPair]) -> Result<BidiffOp> {
    let mut body = Poly::zero(op.context.n());
    for pair in basis {
        let inner = lie_derivative_operator(&pair.dual, op)?;
        body += &lie_derivative_operator(&pair.element, &inner)?.body;
    }
    Ok(BidiffOp {
        body,
        context: op.context.clone(),
    })
}

pub fn casimir_direct(op: &BidiffOp) -> Result<BidiffOp> {
    casimir_direct_with(op, &sl_basis(op.context.n())?)
}
