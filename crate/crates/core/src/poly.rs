//! Sparse polynomials in the base coordinates `x` and the fiber variables
//! `ξ¹, ξ², …` (written `a` and `b` for the first two families).
//!
//! A term is keyed by one exponent vector laid out family by family:
//! `[x_1..x_n, ξ¹_1..ξ¹_n, ξ²_1..ξ²_n, ...]`. Trailing zeros are trimmed so a
//! polynomial has one representation regardless of how many fiber families
//! it could mention, and the lexicographic order on trimmed keys agrees with
//! the order on zero-padded keys.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{from_usize, ExactScalar};

/// A variable family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Base coordinates `x_i`.
    X,
    /// Fiber variables of the `k`-th argument (0-based).
    Fiber(usize),
}

pub const ALPHA: Family = Family::Fiber(0);
pub const BETA: Family = Family::Fiber(1);

impl Family {
    fn block(self) -> usize {
        match self {
            Family::X => 0,
            Family::Fiber(k) => k + 1,
        }
    }
}

/// Exponent vector of a single term.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Builds a monomial from a dense exponent vector.
    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn get(&self, pos: usize) -> u32 {
        self.0.get(pos).copied().unwrap_or(0)
    }

    pub fn exponent(&self, n: usize, family: Family, index: usize) -> u32 {
        self.get(family.block() * n + index)
    }

    /// Exponents of one family, always of length `n`.
    pub fn family(&self, n: usize, family: Family) -> Vec<u32> {
        let start = family.block() * n;
        (start..start + n).map(|p| self.get(p)).collect()
    }

    pub fn degree(&self, n: usize, family: Family) -> u32 {
        let start = family.block() * n;
        (start..start + n).map(|p| self.get(p)).sum()
    }

    /// Sum of the degrees of all fiber families.
    pub fn fiber_degree(&self, n: usize) -> u32 {
        self.0.iter().skip(n).sum()
    }

    /// Number of fiber families with a nonzero exponent, counting up to the
    /// last one present.
    pub fn fiber_families(&self, n: usize) -> usize {
        if self.0.len() <= n {
            0
        } else {
            (self.0.len() - 1) / n
        }
    }

    pub(crate) fn shifted(&self, pos: usize, delta: i64) -> Option<Monomial> {
        let cur = self.get(pos) as i64 + delta;
        if cur < 0 {
            return None;
        }
        let mut v = self.0.clone();
        if v.len() <= pos {
            v.resize(pos + 1, 0);
        }
        v[pos] = cur as u32;
        Some(Monomial::from_exponents(v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let len = self.0.len().max(other.0.len());
        Monomial((0..len).map(|p| self.get(p) + other.get(p)).collect())
    }

    /// The part of the monomial in the given family, other blocks zeroed.
    pub(crate) fn restrict(&self, n: usize, keep: impl Fn(Family) -> bool) -> Monomial {
        let v = self
            .0
            .iter()
            .enumerate()
            .map(|(p, &e)| {
                let fam = if p < n { Family::X } else { Family::Fiber(p / n - 1) };
                if keep(fam) {
                    e
                } else {
                    0
                }
            })
            .collect();
        Monomial::from_exponents(v)
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Zero coefficients are never stored; two equal polynomials of the same
/// dimension have identical term maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, ExactScalar::one())
    }

    pub fn constant(n: usize, c: ExactScalar) -> Self {
        Self::term(n, Monomial::one(), c)
    }

    pub fn term(n: usize, mono: Monomial, c: ExactScalar) -> Self {
        let mut p = Self::zero(n);
        p.add_term(mono, c);
        p
    }

    /// The single variable `family_index` (index is 0-based).
    pub fn var(n: usize, family: Family, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        let mono = Monomial::one()
            .shifted(family.block() * n + index, 1)
            .expect("positive shift");
        Ok(Self::term(n, mono, ExactScalar::one()))
    }

    pub fn x(n: usize, index: usize) -> Self {
        Self::var(n, Family::X, index).expect("index in range")
    }

    pub fn alpha(n: usize, index: usize) -> Self {
        Self::var(n, ALPHA, index).expect("index in range")
    }

    pub fn beta(n: usize, index: usize) -> Self {
        Self::var(n, BETA, index).expect("index in range")
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, ExactScalar)>) -> Self {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> ExactScalar {
        self.terms.get(mono).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_dim(other)?;
        let mut out = Poly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.mul(mono), v.clone())).collect(),
        }
    }

    /// Multiplies by a single variable.
    pub fn mul_var(&self, family: Family, index: usize) -> Poly {
        let pos = family.block() * self.n + index;
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.shifted(pos, 1).expect("positive shift"), v.clone()))
                .collect(),
        }
    }

    /// Formal partial derivative with respect to `family_index`.
    pub fn derivative(&self, family: Family, index: usize) -> Result<Poly> {
        if index >= self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        Ok(self.d(family, index))
    }

    pub(crate) fn d(&self, family: Family, index: usize) -> Poly {
        let pos = family.block() * self.n + index;
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let e = m.get(pos);
            if e > 0 {
                out.add_term(m.shifted(pos, -1).expect("e > 0"), c * from_usize(e as usize));
            }
        }
        out
    }

    /// `D^w` in one family for a multi-index `w` of length `n`.
    pub fn multi_derivative(&self, family: Family, w: &[u32]) -> Poly {
        let mut out = self.clone();
        for (i, &k) in w.iter().enumerate() {
            for _ in 0..k {
                if out.is_zero() {
                    return out;
                }
                out = out.d(family, i);
            }
        }
        out
    }

    /// `Σ_j ∂_{x_j} ∂_{ξ_j}` for the given fiber family.
    pub fn eta_contract(&self, family: Family) -> Poly {
        let mut out = Poly::zero(self.n);
        for j in 0..self.n {
            out += &self.d(family, j).d(Family::X, j);
        }
        out
    }

    /// Euler operator of a family: multiplies each term by its degree in it.
    pub fn euler(&self, family: Family) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            let deg = m.degree(self.n, family);
            if deg > 0 {
                out.add_term(m.clone(), c * from_usize(deg as usize));
            }
        }
        out
    }

    pub fn degree(&self, family: Family) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree(self.n, family))
            .max()
            .unwrap_or(0)
    }

    /// Highest total fiber degree of a term (the order of an operator).
    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.fiber_degree(self.n))
            .max()
            .unwrap_or(0)
    }

    /// Number of fiber families used (one past the highest with a nonzero exponent).
    pub fn fiber_families(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.fiber_families(self.n))
            .max()
            .unwrap_or(0)
    }

    pub fn is_coefficient(&self) -> bool {
        self.fiber_families() == 0
    }

    /// Terms of total fiber degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter(|m| m.fiber_degree(self.n) == d)
    }

    /// Terms of degree `k` in `ξ¹` and `l` in `ξ²`.
    pub fn bidegree_part(&self, k: u32, l: u32) -> Poly {
        self.filter(|m| m.degree(self.n, ALPHA) == k && m.degree(self.n, BETA) == l)
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.fiber_degree(self.n) == d)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Groups terms by fiber monomial: `Σ_U A_U(x) ξ^U`.
    pub fn fiber_coefficients(&self) -> BTreeMap<Monomial, Poly> {
        let n = self.n;
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let fiber = m.restrict(n, |f| f != Family::X);
            let base = m.restrict(n, |f| f == Family::X);
            out.entry(fiber)
                .or_insert_with(|| Poly::zero(n))
                .add_term(base, c.clone());
        }
        out
    }

    /// Exchanges two fiber families.
    pub fn swap_families(&self, a: usize, b: usize) -> Poly {
        let n = self.n;
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let mut v = m.0.clone();
            let need = (a.max(b) + 2) * n;
            v.resize(v.len().max(need), 0);
            for i in 0..n {
                v.swap((a + 1) * n + i, (b + 1) * n + i);
            }
            out.add_term(Monomial::from_exponents(v), c.clone());
        }
        out
    }

    /// Evaluates every base coordinate at zero (keeps the fiber part).
    pub fn at_origin(&self) -> Poly {
        self.filter(|m| m.degree(self.n, Family::X) == 0)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial dimensions agree")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial dimensions agree")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial dimensions agree")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.n, rhs.n, "polynomial dimensions agree");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.n, rhs.n, "polynomial dimensions agree");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-ExactScalar::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_poly(self))
    }
}
