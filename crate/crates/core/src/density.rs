//! Densities, vector fields, symbols and multidifferential operators, with
//! their Lie derivatives.
//!
//! Operators and symbols share the [`Poly`] representation. For an operator
//! the fiber variables of family `k` stand for derivatives applied to the
//! `k`-th argument, and the `x`-dependence is the coefficient density; for a
//! symbol they are plain fiber coordinates.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Family, Monomial, Poly};
use crate::scalar::{binomial, format_scalar, ExactScalar};

/// Dimension, argument weights and target weight. The shift
/// `δ = μ − Σ λ_k` is always derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    n: usize,
    weights: Vec<ExactScalar>,
    mu: ExactScalar,
}

impl Context {
    pub fn new(n: usize, weights: Vec<ExactScalar>, mu: ExactScalar) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if weights.is_empty() {
            return Err(Error::UnsupportedArity(0));
        }
        Ok(Context { n, weights, mu })
    }

    /// Builds the context whose shift is `delta`.
    pub fn with_shift(n: usize, weights: Vec<ExactScalar>, delta: ExactScalar) -> Result<Self> {
        let mu = weights.iter().fold(delta, |acc, w| acc + w);
        Self::new(n, weights, mu)
    }

    pub fn bilinear(n: usize, l1: ExactScalar, l2: ExactScalar, mu: ExactScalar) -> Result<Self> {
        Self::new(n, vec![l1, l2], mu)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[ExactScalar] {
        &self.weights
    }

    pub fn weight(&self, k: usize) -> &ExactScalar {
        &self.weights[k]
    }

    pub fn mu(&self) -> &ExactScalar {
        &self.mu
    }

    pub fn delta(&self) -> ExactScalar {
        self.weights.iter().fold(self.mu.clone(), |acc, w| acc - w)
    }

    pub(crate) fn check_body(&self, body: &Poly) -> Result<()> {
        if body.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: body.dim(),
            });
        }
        let used = body.fiber_families();
        if used > self.arity() {
            return Err(Error::FamilyOutOfRange {
                family: used - 1,
                arity: self.arity(),
            });
        }
        Ok(())
    }
}

/// A density of the given weight with polynomial value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Density {
    pub value: Poly,
    pub weight: ExactScalar,
}

impl Density {
    pub fn new(value: Poly, weight: ExactScalar) -> Result<Self> {
        if !value.is_coefficient() {
            return Err(Error::NotCoefficient);
        }
        Ok(Density { value, weight })
    }
}

/// A polynomial vector field `Σ X^i ∂_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        for c in &components {
            if c.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.dim(),
                });
            }
            if !c.is_coefficient() {
                return Err(Error::NotCoefficient);
            }
        }
        Ok(VectorField { components })
    }

    pub fn zero(n: usize) -> Self {
        VectorField {
            components: vec![Poly::zero(n); n],
        }
    }

    /// The constant field `∂_i`.
    pub fn partial(n: usize, i: usize) -> Self {
        let mut f = Self::zero(n);
        f.components[i] = Poly::one(n);
        f
    }

    /// The Euler field `Σ x^i ∂_i`.
    pub fn euler(n: usize) -> Self {
        VectorField {
            components: (0..n).map(|i| Poly::x(n, i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    /// Highest x-degree among the components.
    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.degree(Family::X))
            .max()
            .unwrap_or(0)
    }

    pub fn divergence(&self) -> Poly {
        let n = self.n();
        let mut out = Poly::zero(n);
        for (i, c) in self.components.iter().enumerate() {
            out += &c.d(Family::X, i);
        }
        out
    }

    /// `Σ X^i ∂_{x_i} p`.
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(self.n());
        for (i, c) in self.components.iter().enumerate() {
            let d = p.d(Family::X, i);
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        VectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.n(),
            });
        }
        Ok(())
    }
}

impl std::ops::Add<&VectorField> for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub<&VectorField> for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Lie bracket `[X,Y]^i = Σ_j (X^j ∂_j Y^i − Y^j ∂_j X^i)`.
pub fn bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    y.check(x.n())?;
    Ok(VectorField {
        components: (0..x.n())
            .map(|i| &x.apply(&y.components[i]) - &y.apply(&x.components[i]))
            .collect(),
    })
}

/// `L_X φ = Σ X^i ∂_i φ + λ (div X) φ`.
pub fn lie_derivative_density(x: &VectorField, phi: &Density) -> Result<Density> {
    x.check(phi.value.dim())?;
    let value = &x.apply(&phi.value) + &(&x.divergence() * &phi.value).scale(&phi.weight);
    Ok(Density {
        value,
        weight: phi.weight.clone(),
    })
}

/// Element of the symbol space: fiber variables are tensor coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolPoly {
    pub body: Poly,
    pub context: Context,
}

/// Multidifferential operator: family `k` encodes derivatives on argument `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidiffOp {
    pub body: Poly,
    pub context: Context,
}

impl SymbolPoly {
    pub fn new(body: Poly, context: Context) -> Result<Self> {
        context.check_body(&body)?;
        Ok(SymbolPoly { body, context })
    }

    pub fn as_operator(&self) -> BidiffOp {
        BidiffOp {
            body: self.body.clone(),
            context: self.context.clone(),
        }
    }
}

impl BidiffOp {
    pub fn new(body: Poly, context: Context) -> Result<Self> {
        context.check_body(&body)?;
        Ok(BidiffOp { body, context })
    }

    /// Total order: highest fiber degree.
    pub fn order(&self) -> u32 {
        self.body.order()
    }

    /// The polynomial form read as a symbol.
    pub fn as_symbol(&self) -> SymbolPoly {
        SymbolPoly {
            body: self.body.clone(),
            context: self.context.clone(),
        }
    }
}

/// Evaluates `T(f_1, …, f_p) = Σ A_U D^{u_1} f_1 ⋯ D^{u_p} f_p`.
pub fn apply_operator(op: &BidiffOp, args: &[Density]) -> Result<Density> {
    let ctx = &op.context;
    if args.len() != ctx.arity() {
        return Err(Error::ArityMismatch {
            expected: ctx.arity(),
            found: args.len(),
        });
    }
    for (k, f) in args.iter().enumerate() {
        if f.value.dim() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                found: f.value.dim(),
            });
        }
        if &f.weight != ctx.weight(k) {
            return Err(Error::WeightMismatch {
                slot: k + 1,
                expected: format_scalar(ctx.weight(k)),
                found: format_scalar(&f.weight),
            });
        }
    }
    let n = ctx.n();
    let mut value = Poly::zero(n);
    for (fiber, coeff) in op.body.fiber_coefficients() {
        let mut acc = coeff;
        for (k, f) in args.iter().enumerate() {
            let u = fiber.family(n, Family::Fiber(k));
            let df = f.value.multi_derivative(Family::X, &u);
            acc = &acc * &df;
            if acc.is_zero() {
                break;
            }
        }
        value += &acc;
    }
    Ok(Density {
        value,
        weight: ctx.mu().clone(),
    })
}

/// Enumerates the nonzero multi-indices `0 < w ≤ u` with `|w| ≤ max`.
fn sub_indices(u: &[u32], max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut w = vec![0u32; u.len()];
    fn rec(u: &[u32], pos: usize, left: u32, w: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == u.len() {
            if w.iter().any(|&e| e > 0) {
                out.push(w.clone());
            }
            return;
        }
        for e in 0..=u[pos].min(left) {
            w[pos] = e;
            rec(u, pos + 1, left - e, w, out);
        }
        w[pos] = 0;
    }
    rec(u, 0, max, &mut w, &mut out);
    out
}

fn multi_binomial(u: &[u32], w: &[u32]) -> ExactScalar {
    u.iter()
        .zip(w)
        .fold(ExactScalar::from_integer(1.into()), |acc, (&a, &b)| {
            acc * binomial(a, b)
        })
}

fn fiber_block_shift(n: usize, k: usize, u: &Monomial, w: &[u32], plus: Option<usize>) -> Monomial {
    let mut v: Vec<u32> = u.exponents().to_vec();
    let base = (k + 1) * n;
    v.resize(v.len().max(base + n), 0);
    for (j, &e) in w.iter().enumerate() {
        v[base + j] -= e;
    }
    if let Some(i) = plus {
        v[base + i] += 1;
    }
    Monomial::from_exponents(v)
}

/// Lie derivative of a multidifferential operator in closed polynomial form.
///
/// For `T = Σ_U A_U ξ^U`:
///
/// ```text
/// L_X T = Σ_U (X·∇A_U + δ div X A_U) ξ^U
///       − Σ_k Σ_U Σ_{0<w≤u_k} C(u_k,w) A_U (Σ_i D^w X^i ξ^{U−w+e_i} + λ_k D^w div X ξ^{U−w})
/// ```
///
/// where the shifts act on family `k` only. This agrees with
/// `L_X ∘ T − Σ_k T(…, L_X ·, …)` for every polynomial `X`.
pub fn lie_derivative_operator(x: &VectorField, op: &BidiffOp) -> Result<BidiffOp> {
    let ctx = &op.context;
    x.check(ctx.n())?;
    let n = ctx.n();
    let delta = ctx.delta();
    let div = x.divergence();
    let max_w = x.degree();
    let mut cache: HashMap<Vec<u32>, (Vec<Poly>, Poly)> = HashMap::new();
    let mut out = Poly::zero(n);
    for (fiber, coeff) in op.body.fiber_coefficients() {
        let transported = &x.apply(&coeff) + &(&div * &coeff).scale(&delta);
        out += &transported.mul_monomial(&fiber);
        for k in 0..ctx.arity() {
            let u = fiber.family(n, Family::Fiber(k));
            let lambda = ctx.weight(k);
            for w in sub_indices(&u, max_w) {
                let (dx, ddiv) = cache.entry(w.clone()).or_insert_with(|| {
                    (
                        x.components()
                            .iter()
                            .map(|c| c.multi_derivative(Family::X, &w))
                            .collect(),
                        div.multi_derivative(Family::X, &w),
                    )
                });
                let c = multi_binomial(&u, &w);
                let scaled = coeff.scale(&c);
                for (i, dxi) in dx.iter().enumerate() {
                    if dxi.is_zero() {
                        continue;
                    }
                    let mono = fiber_block_shift(n, k, &fiber, &w, Some(i));
                    out -= &(&scaled * dxi).mul_monomial(&mono);
                }
                if !ddiv.is_zero() && !lambda.is_zero() {
                    let mono = fiber_block_shift(n, k, &fiber, &w, None);
                    out -= &(&scaled * &*ddiv).scale(lambda).mul_monomial(&mono);
                }
            }
        }
    }
    Ok(BidiffOp {
        body: out,
        context: ctx.clone(),
    })
}

/// Lie derivative on the symbol space:
/// `L_X P = X·∇P − Σ_k Σ_{i,j} ∂_j X^i ξ^k_i ∂_{ξ^k_j} P + δ div X P`.
pub fn lie_derivative_symbol(x: &VectorField, sym: &SymbolPoly) -> Result<SymbolPoly> {
    let ctx = &sym.context;
    x.check(ctx.n())?;
    let n = ctx.n();
    let p = &sym.body;
    let mut out = &x.apply(p) + &(&x.divergence() * p).scale(&ctx.delta());
    let jac: Vec<Vec<Poly>> = x
        .components()
        .iter()
        .map(|c| (0..n).map(|j| c.d(Family::X, j)).collect())
        .collect();
    for k in 0..ctx.arity() {
        let fam = Family::Fiber(k);
        for j in 0..n {
            let dp = p.d(fam, j);
            if dp.is_zero() {
                continue;
            }
            for (i, row) in jac.iter().enumerate() {
                if row[j].is_zero() {
                    continue;
                }
                out -= &(&row[j] * &dp.mul_var(fam, i));
            }
        }
    }
    Ok(SymbolPoly {
        body: out,
        context: ctx.clone(),
    })
}

/// The defining form of the operator Lie derivative, evaluated on arguments:
/// `L_X(T(f…)) − Σ_k T(…, L_X f_k, …)`.
pub fn lie_derivative_applied(x: &VectorField, op: &BidiffOp, args: &[Density]) -> Result<Density> {
    let base = apply_operator(op, args)?;
    let mut value = lie_derivative_density(x, &base)?.value;
    for k in 0..args.len() {
        let mut moved = args.to_vec();
        moved[k] = lie_derivative_density(x, &args[k])?;
        value -= &apply_operator(op, &moved)?.value;
    }
    Ok(Density {
        value,
        weight: base.weight,
    })
}
