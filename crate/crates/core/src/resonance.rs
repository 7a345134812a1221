//! Resonant and critical values of the shift `δ`.
//!
//! A value of `δ` is resonant when two eigenvalues `γ_{i,p} = γ_{j,q}` with
//! `i > j` coincide. Since the `δ²` terms cancel, the equation is linear in
//! `δ` and has the single solution
//!
//! ```text
//! δ_{i,p;j,q} = [i² − j² + (n−p)i − (n−q)j + p(p−1) − q(q−1)] / ((n+1)(i−j))
//! ```
//!
//! A resonance is critical when additionally `0 ≤ p−q ≤ i−j`. Critical
//! values are bounded below by `f(i) = δ_{i,⌊i/2⌋;0,0}`, which is
//! non-decreasing and unbounded, so criticality can be decided exactly.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::casimir::{max_label, SpectralLabel};
use crate::error::{Error, Result};
use crate::scalar::{from_usize, int, ExactScalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResonanceTuple {
    pub i: usize,
    pub p: usize,
    pub j: usize,
    pub q: usize,
    pub delta: ExactScalar,
    pub critical: bool,
}

impl ResonanceTuple {
    pub fn upper(&self) -> SpectralLabel {
        SpectralLabel::new(self.i, self.p)
    }

    pub fn lower(&self) -> SpectralLabel {
        SpectralLabel::new(self.j, self.q)
    }
}

/// `0 ≤ p−q ≤ i−j`.
pub fn is_critical_pair(i: usize, p: usize, j: usize, q: usize) -> bool {
    p >= q && p - q <= i.saturating_sub(j)
}

/// The unique `δ` at which `γ_{i,p} = γ_{j,q}`.
pub fn resonant_delta(n: usize, i: usize, p: usize, j: usize, q: usize) -> Result<ExactScalar> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    SpectralLabel::new(i, p).validate(n)?;
    SpectralLabel::new(j, q).validate(n)?;
    if i == j {
        return Err(Error::EqualOrders { i, j });
    }
    Ok(resonant_delta_unchecked(n, i, p, j, q))
}

fn resonant_delta_unchecked(n: usize, i: usize, p: usize, j: usize, q: usize) -> ExactScalar {
    let (n, i, p, j, q) = (n as i64, i as i64, p as i64, j as i64, q as i64);
    let num = i * i - j * j + (n - p) * i - (n - q) * j + p * (p - 1) - q * (q - 1);
    ExactScalar::new(num.into(), ((n + 1) * (i - j)).into())
}

/// `f(i) = δ_{i,⌊i/2⌋;0,0}`, the lower bound for critical values reached
/// from order `i`.
pub fn f(n: usize, i: usize) -> Result<ExactScalar> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if i == 0 {
        return Err(Error::Shape("f is defined for orders i >= 1".into()));
    }
    Ok(resonant_delta_unchecked(n, i, max_label(n, i), 0, 0))
}

/// Smallest `i*` with `f(i) > δ` for every `i ≥ i*`. No critical tuple at
/// this shift has order `i ≥ i*`.
pub fn critical_bound_index(n: usize, delta: &ExactScalar) -> Result<usize> {
    let mut i = 1;
    while f(n, i)? <= *delta {
        i += 1;
    }
    Ok(i)
}

/// Every resonance with `j < i ≤ max_order`, ordered by `(i, p, j, q)`.
pub fn resonance_tuples(n: usize, max_order: usize) -> Result<Vec<ResonanceTuple>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = Vec::new();
    for i in 1..=max_order {
        for p in 0..=max_label(n, i) {
            for j in 0..i {
                for q in 0..=max_label(n, j) {
                    out.push(ResonanceTuple {
                        i,
                        p,
                        j,
                        q,
                        delta: resonant_delta_unchecked(n, i, p, j, q),
                        critical: is_critical_pair(i, p, j, q),
                    });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftClass {
    Generic,
    Resonant(Vec<ResonanceTuple>),
    Critical(Vec<ResonanceTuple>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftReport {
    pub n: usize,
    pub delta: ExactScalar,
    /// Orders searched. Resonances above this order are not reported;
    /// critical tuples cannot occur above it.
    pub order_cap: usize,
    pub class: ShiftClass,
}

impl ShiftReport {
    pub fn tuples(&self) -> &[ResonanceTuple] {
        match &self.class {
            ShiftClass::Generic => &[],
            ShiftClass::Resonant(t) | ShiftClass::Critical(t) => t,
        }
    }

    pub fn is_critical(&self) -> bool {
        matches!(self.class, ShiftClass::Critical(_))
    }

    pub fn is_generic(&self) -> bool {
        matches!(self.class, ShiftClass::Generic)
    }
}

/// Resonances at a given shift, with orders up to
/// `max(max_order, critical_bound_index)`.
pub fn classify_shift(n: usize, delta: &ExactScalar, max_order: usize) -> Result<ShiftReport> {
    let cap = max_order.max(critical_bound_index(n, delta)?);
    let tuples: Vec<_> = resonance_tuples(n, cap)?
        .into_iter()
        .filter(|t| t.delta == *delta)
        .collect();
    let class = if tuples.is_empty() {
        ShiftClass::Generic
    } else if tuples.iter().any(|t| t.critical) {
        ShiftClass::Critical(tuples)
    } else {
        ShiftClass::Resonant(tuples)
    };
    Ok(ShiftReport {
        n,
        delta: delta.clone(),
        order_cap: cap,
        class,
    })
}

/// For `n = 1`: `γ_{i,0} = γ_{j,0}` exactly at `δ = 1 + (i+j−1)/2`.
pub fn one_dimensional_resonances(i: usize, j: usize) -> Result<ExactScalar> {
    if i <= j {
        return Err(Error::Shape(format!("expected i > j, got i={i}, j={j}")));
    }
    Ok(int(1) + (from_usize(i + j) - int(1)) / int(2))
}

/// All critical values in `[lo, hi]` with their witnessing tuples. The list
/// is complete: orders at or above `critical_bound_index(n, hi)` cannot
/// contribute.
pub fn critical_values_in(
    n: usize,
    lo: &ExactScalar,
    hi: &ExactScalar,
) -> Result<BTreeMap<ExactScalar, Vec<ResonanceTuple>>> {
    let mut out: BTreeMap<ExactScalar, Vec<ResonanceTuple>> = BTreeMap::new();
    if lo > hi {
        return Ok(out);
    }
    let bound = critical_bound_index(n, hi)?;
    for t in resonance_tuples(n, bound.saturating_sub(1))? {
        if t.critical && t.delta >= *lo && t.delta <= *hi {
            out.entry(t.delta.clone()).or_default().push(t);
        }
    }
    Ok(out)
}

/// Whether no two eigenvalues of orders up to `max_order` coincide at `δ`.
pub fn is_generic_up_to(n: usize, delta: &ExactScalar, max_order: usize) -> Result<bool> {
    Ok(resonance_tuples(n, max_order)?
        .iter()
        .all(|t| !(&t.delta - delta).is_zero()))
}
