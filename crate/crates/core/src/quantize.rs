//! The equivariant quantization `Q` and its inverse, the symbol map `σ`.
//!
//! A symbol component `P ∈ S_(i,p)` with eigenvalue `γ = γ_{i,p}` is
//! prolonged to an eigenvector `P_i + P_{i−1} + … + P_0` of `C^op` by solving
//! `(γ − C^t) P_j = N_C P_{j+1}` from the top down, one isotypic block at a
//! time. When a gap `γ − γ_{j,q}` vanishes the block is either left at zero
//! (a free slot) or the system has no solution (an obstruction).

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::casimir::{gamma_unchecked, n_c_poly, SpectralLabel};
use crate::density::{BidiffOp, Context, SymbolPoly};
use crate::error::{Error, Obstruction, Result};
use crate::isotypic::{decompose_poly, labels};
use crate::poly::{Family, Monomial, Poly, ALPHA, BETA};
use crate::scalar::{from_usize, int, ExactScalar};

#[derive(Debug, Clone, PartialEq)]
pub struct QuantizationResult {
    pub operator: BidiffOp,
    /// Resonant blocks left at zero although other values would also work.
    pub free_slots: BTreeSet<SpectralLabel>,
    pub unique: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymbolResult {
    pub symbol: SymbolPoly,
    pub free_slots: BTreeSet<SpectralLabel>,
    pub unique: bool,
}

fn prolong(
    top: &Poly,
    source: SpectralLabel,
    ctx: &Context,
    free: &mut BTreeSet<SpectralLabel>,
) -> Result<Poly> {
    let n = ctx.n();
    let delta = ctx.delta();
    let g = gamma_unchecked(n, &delta, source.i, source.p);
    let mut total = top.clone();
    let mut current = top.clone();
    for j in (0..source.i).rev() {
        let rhs = n_c_poly(&current, ctx);
        let parts = decompose_poly(&rhs, ctx)?;
        let mut next = Poly::zero(n);
        for q in labels(ctx, j)? {
            let label = SpectralLabel::new(j, q);
            let gap = &g - gamma_unchecked(n, &delta, j, q);
            match parts.get(&label) {
                Some(r) if gap.is_zero() => {
                    return Err(Obstruction {
                        source,
                        blocked: label,
                        obstruction: r.clone(),
                    }
                    .into())
                }
                Some(r) => next += &r.scale(&(ExactScalar::one() / gap)),
                None if gap.is_zero() => {
                    free.insert(label);
                }
                None => {}
            }
        }
        total += &next;
        current = next;
    }
    Ok(total)
}

pub(crate) fn quantize_poly(
    body: &Poly,
    ctx: &Context,
    free: &mut BTreeSet<SpectralLabel>,
) -> Result<Poly> {
    let mut out = Poly::zero(ctx.n());
    for (label, comp) in decompose_poly(body, ctx)? {
        out += &prolong(&comp, label, ctx, free)?;
    }
    Ok(out)
}

/// `Q(P)`: the operator with principal part `P` whose isotypic pieces are
/// eigenvectors of the operator Casimir.
pub fn quantize(sym: &SymbolPoly) -> Result<QuantizationResult> {
    let mut free = BTreeSet::new();
    let body = quantize_poly(&sym.body, &sym.context, &mut free)?;
    Ok(QuantizationResult {
        operator: BidiffOp {
            body,
            context: sym.context.clone(),
        },
        unique: free.is_empty(),
        free_slots: free,
    })
}

/// `σ(T)`: peels off the top-degree part, quantizes it, subtracts and
/// recurses.
pub fn symbol_map(op: &BidiffOp) -> Result<SymbolResult> {
    let ctx = &op.context;
    let mut free = BTreeSet::new();
    let mut symbol = Poly::zero(ctx.n());
    let mut rest = op.body.clone();
    while !rest.is_zero() {
        let top = rest.homogeneous_part(rest.order());
        rest -= &quantize_poly(&top, ctx, &mut free)?;
        symbol += &top;
    }
    Ok(SymbolResult {
        symbol: SymbolPoly {
            body: symbol,
            context: ctx.clone(),
        },
        unique: free.is_empty(),
        free_slots: free,
    })
}

/// Fiber variables of a monomial, with multiplicity, as `(family, index)`.
fn fiber_factors(n: usize, m: &Monomial) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 0..m.fiber_families(n) {
        for (i, &e) in m.family(n, Family::Fiber(k)).iter().enumerate() {
            out.extend(std::iter::repeat_n((k, i), e as usize));
        }
    }
    out
}

struct Order2Coefficients {
    /// `λ_k/(1−δ)`.
    first: Vec<ExactScalar>,
    /// `((n+1)λ_k+1)/D2`.
    pure_a: Vec<ExactScalar>,
    /// `((n+1)λ_k+1)(n+1)λ_k/(D2 D1)`, or the free parameter.
    pure_b: Vec<ExactScalar>,
    /// `(n+1)λ_k/D2`.
    sym_s: Vec<ExactScalar>,
    /// `2(n+1)²λ₁λ₂/(D2 D1)`, or the free parameter.
    sym_c: ExactScalar,
}

fn order2_coefficients(ctx: &Context, k_param: Option<&ExactScalar>) -> Result<Order2Coefficients> {
    let n1 = from_usize(ctx.n() + 1);
    let one_minus = int(1) - ctx.delta();
    let d1 = &n1 * &one_minus + int(1);
    let d2 = &n1 * &one_minus + int(2);
    if one_minus.is_zero() {
        return Err(Error::CriticalShift("1-delta"));
    }
    if d2.is_zero() {
        return Err(Error::CriticalShift("(n+1)(1-delta)+2"));
    }
    if d1.is_zero() && k_param.is_none() {
        return Err(Error::CriticalShift("(n+1)(1-delta)+1"));
    }
    let ws = ctx.weights();
    let param = |v: ExactScalar| match k_param {
        Some(k) => k.clone(),
        None => v / &d1,
    };
    let sym_c = if ws.len() == 2 {
        param(int(2) * &n1 * &n1 * &ws[0] * &ws[1] / &d2)
    } else {
        ExactScalar::zero()
    };
    Ok(Order2Coefficients {
        first: ws.iter().map(|l| l / &one_minus).collect(),
        pure_a: ws.iter().map(|l| (&n1 * l + int(1)) / &d2).collect(),
        pure_b: ws
            .iter()
            .map(|l| param((&n1 * l + int(1)) * &n1 * l / &d2))
            .collect(),
        sym_s: ws.iter().map(|l| &n1 * l / &d2).collect(),
        sym_c,
    })
}

fn fam(k: usize) -> Family {
    Family::Fiber(k)
}

fn closed_order2(sym: &SymbolPoly, k_param: Option<&ExactScalar>) -> Result<BidiffOp> {
    let ctx = &sym.context;
    if ctx.arity() > 2 {
        return Err(Error::UnsupportedArity(ctx.arity()));
    }
    if sym.body.order() > 2 {
        return Err(Error::Shape(format!(
            "closed forms cover order <= 2, got {}",
            sym.body.order()
        )));
    }
    let co = order2_coefficients(ctx, k_param)?;
    let n = ctx.n();
    let half = ExactScalar::new(1.into(), 2.into());
    let mut out = Poly::zero(n);
    for (fiber, c) in sym.body.fiber_coefficients() {
        let d = |i: usize| c.d(Family::X, i);
        out += &c.mul_monomial(&fiber);
        match fiber_factors(n, &fiber)[..] {
            [] => {}
            [(k, i)] => out += &d(i).scale(&co.first[k]),
            [(k, i), (l, j)] if k == l => {
                out += &(&d(i).mul_var(fam(k), j) + &d(j).mul_var(fam(k), i)).scale(&co.pure_a[k]);
                out += &d(i).d(Family::X, j).scale(&co.pure_b[k]);
            }
            [(_, i), (_, j)] => {
                // c α_i β_j = ½ c(α_iβ_j + α_jβ_i) + ½ c(α_iβ_j − α_jβ_i)
                let (di, dj) = (d(i), d(j));
                let sym_part = &(&(&di.mul_var(BETA, j) + &dj.mul_var(BETA, i)).scale(&co.sym_s[0])
                    + &(&dj.mul_var(ALPHA, i) + &di.mul_var(ALPHA, j)).scale(&co.sym_s[1]))
                    + &di.d(Family::X, j).scale(&co.sym_c);
                let anti_part = &(&di.mul_var(BETA, j) - &dj.mul_var(BETA, i)).scale(&co.first[0])
                    + &(&dj.mul_var(ALPHA, i) - &di.mul_var(ALPHA, j)).scale(&co.first[1]);
                out += &(&sym_part + &anti_part).scale(&half);
            }
            _ => unreachable!("order checked above"),
        }
    }
    Ok(BidiffOp {
        body: out,
        context: ctx.clone(),
    })
}

/// The explicit second-order formulas, valid away from the three critical
/// shifts `1`, `(n+2)/(n+1)` and `(n+3)/(n+1)`.
pub fn quantize_order2_closed(sym: &SymbolPoly) -> Result<BidiffOp> {
    closed_order2(sym, None)
}

/// At `δ = (n+2)/(n+1)` the coefficient of `∂_i∂_j c` on `S_(2,0)` is not
/// determined. This uses `k` there and the unique prolongation elsewhere.
pub fn order2_k_family(sym: &SymbolPoly, k: &ExactScalar) -> Result<BidiffOp> {
    let n = sym.context.n();
    let expected = ExactScalar::new(((n + 2) as i64).into(), ((n + 1) as i64).into());
    if sym.context.delta() != expected {
        return Err(Error::Shape(format!("the k-family lives at shift {expected}")));
    }
    closed_order2(sym, Some(k))
}

/// The unique equivariant quantization of linear differential operators of
/// order at most two, `q_{λ,μ}`, run through the same solver with a single
/// fiber family.
pub fn linear_quantize_order2(body: &Poly, lambda: &ExactScalar, mu: &ExactScalar) -> Result<BidiffOp> {
    let ctx = Context::new(body.dim(), vec![lambda.clone()], mu.clone())?;
    if body.order() > 2 {
        return Err(Error::Shape(format!("expected order <= 2, got {}", body.order())));
    }
    order2_coefficients(&ctx, None)?;
    let sym = SymbolPoly::new(body.clone(), ctx)?;
    Ok(quantize(&sym)?.operator)
}

/// `P(α + β)` for a single-family polynomial `P`.
pub fn substitute_sum(p: &Poly) -> Result<Poly> {
    if p.fiber_families() > 1 {
        return Err(Error::FamilyOutOfRange {
            family: p.fiber_families() - 1,
            arity: 1,
        });
    }
    let n = p.dim();
    let mut out = Poly::zero(n);
    for (m, c) in p.terms() {
        let mut acc = Poly::term(n, m.restrict(n, |f| f == Family::X), c.clone());
        for (i, &e) in m.family(n, ALPHA).iter().enumerate() {
            let sum = &Poly::alpha(n, i) + &Poly::beta(n, i);
            for _ in 0..e {
                acc = &acc * &sum;
            }
        }
        out += &acc;
    }
    Ok(out)
}

/// `(τ_α P, τ_β P, τ_αβ P)` for a homogeneous degree-2 single-family `P`:
/// `P(α)`, `P(β)` and `P(α+β) − P(α) − P(β)`.
pub fn tau_maps(p: &Poly) -> Result<(Poly, Poly, Poly)> {
    if p.fiber_families() > 1 {
        return Err(Error::FamilyOutOfRange {
            family: p.fiber_families() - 1,
            arity: 1,
        });
    }
    if p.is_zero() || !p.is_homogeneous(2) {
        return Err(Error::NotHomogeneous { expected: 2 });
    }
    let ta = p.clone();
    let tb = p.swap_families(0, 1);
    let tab = &(&substitute_sum(p)? - &ta) - &tb;
    Ok((ta, tb, tab))
}

fn require_unit_shift(ctx: &Context) -> Result<()> {
    if ctx.arity() != 2 {
        return Err(Error::UnsupportedArity(ctx.arity()));
    }
    if ctx.delta() != int(1) {
        return Err(Error::Shape(format!("expected shift 1, got {}", ctx.delta())));
    }
    Ok(())
}

/// `c(α_iβ_j − α_jβ_i) ↦ ((f,g) ↦ ∂_i c f ∂_j g − ∂_j c f ∂_i g)`.
pub fn t1(sym: &SymbolPoly) -> Result<BidiffOp> {
    require_unit_shift(&sym.context)?;
    let p = &sym.body;
    if p.bidegree_part(1, 1) != *p || p.swap_families(0, 1) != -p {
        return Err(Error::Shape("expected an antisymmetric symbol of bidegree (1,1)".into()));
    }
    Ok(BidiffOp {
        body: p.eta_contract(ALPHA),
        context: sym.context.clone(),
    })
}

/// `c α_i ↦ ((f,g) ↦ ∂_i c f g)`.
pub fn t2(sym: &SymbolPoly) -> Result<BidiffOp> {
    require_unit_shift(&sym.context)?;
    let p = &sym.body;
    if p.bidegree_part(1, 0) != *p {
        return Err(Error::Shape("expected a symbol of bidegree (1,0)".into()));
    }
    Ok(BidiffOp {
        body: p.eta_contract(ALPHA),
        context: sym.context.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::{casimir_direct, gamma, hwv};
    use crate::parse::parse_poly;
    use crate::scalar::rat;

    fn sym(ctx: &Context, s: &str) -> SymbolPoly {
        SymbolPoly::new(parse_poly(s, ctx.n()).unwrap(), ctx.clone()).unwrap()
    }

    fn generic() -> Context {
        Context::with_shift(2, vec![rat(1, 3), rat(1, 6)], rat(1, 2)).unwrap()
    }

    #[test]
    fn order_zero_is_multiplication() {
        let r = quantize(&sym(&generic(), "x1^2 - 3*x2")).unwrap();
        assert_eq!(r.operator.body, parse_poly("x1^2 - 3*x2", 2).unwrap());
        assert!(r.unique);
    }

    #[test]
    fn first_order_example() {
        let ctx = Context::with_shift(2, vec![rat(1, 3), int(0)], rat(1, 2)).unwrap();
        let r = quantize(&sym(&ctx, "x1*a1")).unwrap();
        assert_eq!(r.operator.body, parse_poly("x1*a1 + 2/3", 2).unwrap());
    }

    #[test]
    fn second_order_example() {
        let ctx = Context::with_shift(2, vec![rat(1, 3), int(0)], rat(1, 2)).unwrap();
        let r = quantize(&sym(&ctx, "x1*x2*a1*a2")).unwrap();
        let expected = parse_poly("x1*x2*a1*a2 + 4/7*(x2*a2 + x1*a1) + 8/35", 2).unwrap();
        assert_eq!(r.operator.body, expected);
    }

    #[test]
    fn closed_form_examples() {
        let ctx = generic();
        let anti = quantize_order2_closed(&sym(&ctx, "x1*x2*(a1*b2 - a2*b1)")).unwrap();
        let expected = parse_poly(
            "x1*x2*(a1*b2 - a2*b1) + 2/3*(x2*b2 - x1*b1) + 1/3*(x1*a1 - x2*a2)",
            2,
        )
        .unwrap();
        assert_eq!(anti.body, expected);
        let s = quantize_order2_closed(&sym(&ctx, "x1*x2*(a1*b2 + a2*b1)")).unwrap();
        let expected = parse_poly(
            "x1*x2*(a1*b2 + a2*b1) + 2/7*(x2*b2 + x1*b1) + 1/7*(x1*a1 + x2*a2) + 4/35",
            2,
        )
        .unwrap();
        assert_eq!(s.body, expected);
    }

    #[test]
    fn closed_form_matches_engine() {
        let ctx = generic();
        for s in ["x1*a1^2", "x1*x2*a1*b2", "x2*b1*b2", "x1^2*a2", "x1*b1", "x2*a1*b1"] {
            let p = sym(&ctx, s);
            assert_eq!(quantize_order2_closed(&p).unwrap(), quantize(&p).unwrap().operator, "{s}");
        }
    }

    #[test]
    fn closed_form_rejects_critical_shifts() {
        let n = 2;
        for (delta, name) in [
            (int(1), "1-delta"),
            (rat(4, 3), "(n+1)(1-delta)+1"),
            (rat(5, 3), "(n+1)(1-delta)+2"),
        ] {
            let ctx = Context::with_shift(n, vec![int(0), int(0)], delta).unwrap();
            assert_eq!(
                quantize_order2_closed(&sym(&ctx, "a1")).unwrap_err(),
                Error::CriticalShift(name)
            );
        }
    }

    #[test]
    fn obstruction_at_highest_critical_shift() {
        let ctx = Context::with_shift(2, vec![int(0), int(0)], rat(5, 3)).unwrap();
        let Err(Error::Obstruction(o)) = quantize(&sym(&ctx, "x1*a1^2")) else {
            panic!("expected obstruction")
        };
        assert_eq!(o.source, SpectralLabel::new(2, 0));
        assert_eq!(o.blocked, SpectralLabel::new(1, 0));
        assert!(!o.obstruction.is_zero());
    }

    #[test]
    fn free_slot_at_highest_critical_shift() {
        let ctx = Context::with_shift(2, vec![rat(-1, 3), int(0)], rat(5, 3)).unwrap();
        let r = quantize(&sym(&ctx, "x1*a1^2")).unwrap();
        assert!(!r.unique);
        assert!(r.free_slots.contains(&SpectralLabel::new(1, 0)));
        let g = gamma(2, &ctx.delta(), 2, 0).unwrap();
        let c = casimir_direct(&r.operator).unwrap();
        assert_eq!(c.body, r.operator.body.scale(&g));
    }

    #[test]
    fn prolongation_is_eigenvector() {
        let ctx = generic();
        let p = &hwv(2, 1, 1, 2).unwrap() * &Poly::x(2, 1);
        let r = quantize(&SymbolPoly::new(p, ctx.clone()).unwrap()).unwrap();
        let g = gamma(2, &ctx.delta(), 3, 1).unwrap();
        assert_eq!(casimir_direct(&r.operator).unwrap().body, r.operator.body.scale(&g));
    }

    #[test]
    fn symbol_map_inverts() {
        let ctx = generic();
        let p = sym(&ctx, "x1*a1*b2^2 - 2*x2^2*a2 + x1*b1 + 5");
        let q = quantize(&p).unwrap();
        let back = symbol_map(&q.operator).unwrap();
        assert_eq!(back.symbol, p);
        assert!(back.unique);
        let ctx1 = Context::with_shift(2, vec![rat(1, 3), int(0)], rat(1, 2)).unwrap();
        let t = BidiffOp::new(parse_poly("x1*a1 + 2/3", 2).unwrap(), ctx1).unwrap();
        assert_eq!(symbol_map(&t).unwrap().symbol.body, parse_poly("x1*a1", 2).unwrap());
    }

    #[test]
    fn k_family_zero_is_engine_output() {
        let ctx = Context::with_shift(2, vec![int(0), int(0)], rat(4, 3)).unwrap();
        let p = sym(&ctx, "x1*x2*a1*a2 + x1*x2*a1*b2");
        let r = quantize(&p).unwrap();
        assert!(r.free_slots.contains(&SpectralLabel::new(0, 0)));
        assert_eq!(order2_k_family(&p, &int(0)).unwrap(), r.operator);
        assert!(order2_k_family(&sym(&generic(), "a1"), &int(0)).is_err());
    }

    #[test]
    fn linear_first_order() {
        let lambda = rat(1, 4);
        let mu = rat(2, 3);
        let q = linear_quantize_order2(&parse_poly("x1*a1", 2).unwrap(), &lambda, &mu).unwrap();
        let coeff = &lambda / (int(1) - (&mu - &lambda));
        assert_eq!(q.body, &parse_poly("x1*a1", 2).unwrap() + &Poly::constant(2, coeff));
        assert!(linear_quantize_order2(&Poly::alpha(2, 0), &int(0), &int(1)).is_err());
    }

    #[test]
    fn tau_examples() {
        let n = 2;
        let (a, b, ab) = tau_maps(&parse_poly("a1^2", n).unwrap()).unwrap();
        assert_eq!(a, parse_poly("a1^2", n).unwrap());
        assert_eq!(b, parse_poly("b1^2", n).unwrap());
        assert_eq!(ab, parse_poly("2*a1*b1", n).unwrap());
        let (a, b, ab) = tau_maps(&parse_poly("a1*a2", n).unwrap()).unwrap();
        assert_eq!(a, parse_poly("a1*a2", n).unwrap());
        assert_eq!(b, parse_poly("b1*b2", n).unwrap());
        assert_eq!(ab, parse_poly("a1*b2 + a2*b1", n).unwrap());
        assert_eq!(ab.swap_families(0, 1), ab);
        assert!(tau_maps(&parse_poly("a1", n).unwrap()).is_err());
    }

    #[test]
    fn t_maps() {
        let ctx = Context::with_shift(2, vec![int(0), int(0)], int(1)).unwrap();
        let r = t1(&sym(&ctx, "x1*x2*(a1*b2 - a2*b1)")).unwrap();
        assert_eq!(r.body, parse_poly("x2*b2 - x1*b1", 2).unwrap());
        let r = t2(&sym(&ctx, "x1^2*a1")).unwrap();
        assert_eq!(r.body, parse_poly("2*x1", 2).unwrap());
        assert!(t1(&sym(&ctx, "a1*b2 - a2*b1")).unwrap().body.is_zero());
        assert!(t2(&sym(&ctx, "a1")).unwrap().body.is_zero());
        assert!(t1(&sym(&ctx, "a1*b2")).is_err());
        assert!(t2(&sym(&generic(), "a1")).is_err());
    }
}
