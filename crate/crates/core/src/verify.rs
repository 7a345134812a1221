//! Self-checks run from the command line. Each suite draws its inputs from
//! a seeded stream and reports one entry per identity checked.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{bracket_closure_check, sl_basis, DualBasisPair};
use crate::casimir::{
    casimir_direct_with, casimir_symbol_poly, gamma, gamma_unchecked, hwv, max_label, n_c_poly,
    SpectralLabel,
};
use crate::density::{
    lie_derivative_applied, lie_derivative_operator, lie_derivative_symbol, apply_operator,
    BidiffOp, Context, SymbolPoly,
};
use crate::error::Result;
use crate::isotypic::{decompose_poly, labels, project_poly};
use crate::poly::Poly;
use crate::quantize::{quantize, symbol_map};
use crate::random::{generic_context, random_body, random_density, random_homogeneous, rng, small_rational};
use crate::resonance::{f, resonance_tuples, resonant_delta};
use crate::scalar::{int, ExactScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Equivariance,
    Casimir,
    Spectrum,
    Resonance,
    Roundtrip,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Equivariance,
        Suite::Casimir,
        Suite::Spectrum,
        Suite::Resonance,
        Suite::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Equivariance => "equivariance",
            Suite::Casimir => "casimir",
            Suite::Spectrum => "spectrum",
            Suite::Resonance => "resonance",
            Suite::Roundtrip => "roundtrip",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n: usize,
    pub seed: u64,
    pub max_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: if passed { String::new() } else { detail.into() },
        });
    }

    fn equal(&mut self, name: impl Into<String>, lhs: &Poly, rhs: &Poly) {
        let passed = lhs == rhs;
        self.check(name, passed, format!("difference {}", lhs - rhs));
    }

    fn finish(self, suite: Suite) -> VerifyReport {
        VerifyReport {
            suite,
            checks: self.checks,
        }
    }
}

const SAMPLES: usize = 3;

pub fn run(suite: Suite, cfg: VerifyConfig) -> Result<VerifyReport> {
    match suite {
        Suite::Casimir => casimir_suite_with(cfg, &sl_basis(cfg.n)?),
        Suite::Equivariance => equivariance_suite(cfg),
        Suite::Spectrum => spectrum_suite(cfg),
        Suite::Resonance => resonance_suite(cfg),
        Suite::Roundtrip => roundtrip_suite(cfg),
    }
}

/// Checks the direct Casimir built from `basis` against `C^t + N_C`.
pub fn casimir_suite_with(cfg: VerifyConfig, basis: &[DualBasisPair]) -> Result<VerifyReport> {
    let mut rec = Recorder::new();
    let closure = bracket_closure_check(cfg.n)?;
    rec.check(
        "basis closes under bracket",
        closure.closed,
        format!("{:?}", closure.witness),
    );
    let mut r = rng(cfg.seed);
    for s in 0..SAMPLES {
        let ctx = Context::new(cfg.n, vec![small_rational(&mut r), small_rational(&mut r)], small_rational(&mut r))?;
        let order = (s % cfg.max_order.max(1)) as u32 + 1;
        let body = random_body(&mut r, cfg.n, 2, order, 2, 3);
        let op = BidiffOp::new(body.clone(), ctx.clone())?;
        let direct = casimir_direct_with(&op, basis)?.body;
        let split = &casimir_symbol_poly(&body, &ctx) + &n_c_poly(&body, &ctx);
        rec.equal(format!("direct casimir splits [{s}]"), &direct, &split);
    }
    Ok(rec.finish(Suite::Casimir))
}

fn spectrum_suite(cfg: VerifyConfig) -> Result<VerifyReport> {
    let mut rec = Recorder::new();
    let n = cfg.n;
    let mut r = rng(cfg.seed);
    let ctx = Context::new(n, vec![small_rational(&mut r), small_rational(&mut r)], small_rational(&mut r))?;
    let delta = ctx.delta();
    for k in 0..=cfg.max_order {
        for l in 0..=cfg.max_order - k {
            let qmax = if n >= 2 { k.min(l) } else { 0 };
            for q in 0..=qmax {
                let v = hwv(k, l, q, n)?;
                let g = gamma(n, &delta, k + l, q)?;
                rec.equal(
                    format!("C^t hwv({k},{l},{q}) = gamma"),
                    &casimir_symbol_poly(&v, &ctx),
                    &v.scale(&g),
                );
            }
        }
    }
    for i in 0..=cfg.max_order {
        let ls = labels(&ctx, i)?;
        for (a, &p) in ls.iter().enumerate() {
            for &q in &ls[a + 1..] {
                rec.check(
                    format!("gamma({i},{p}) != gamma({i},{q})"),
                    gamma_unchecked(n, &delta, i, p) != gamma_unchecked(n, &delta, i, q),
                    "eigenvalues collide",
                );
            }
        }
        let p = random_homogeneous(&mut r, n, 2, i as u32, 2, 4);
        let parts = decompose_poly(&p, &ctx)?;
        let mut sum = Poly::zero(n);
        for (label, comp) in &parts {
            let g = gamma_unchecked(n, &delta, label.i, label.p);
            rec.equal(
                format!("component {label} is an eigenvector"),
                &casimir_symbol_poly(comp, &ctx),
                &comp.scale(&g),
            );
            rec.equal(
                format!("projector {label} is idempotent"),
                &project_poly(comp, &ctx, *label)?,
                comp,
            );
            sum += comp;
        }
        rec.equal(format!("components of degree {i} sum back"), &sum, &p);
    }
    Ok(rec.finish(Suite::Spectrum))
}

fn resonance_suite(cfg: VerifyConfig) -> Result<VerifyReport> {
    let mut rec = Recorder::new();
    let n = cfg.n;
    let top = cfg.max_order.max(10);
    for t in resonance_tuples(n, top)? {
        let lhs = gamma(n, &t.delta, t.i, t.p)?;
        let rhs = gamma(n, &t.delta, t.j, t.q)?;
        rec.check(
            format!("gamma({},{}) = gamma({},{}) at {}", t.i, t.p, t.j, t.q, t.delta),
            lhs == rhs,
            format!("{lhs} vs {rhs}"),
        );
        if t.critical {
            let bound = f(n, t.i)?;
            rec.check(
                format!("critical ({},{};{},{}) above f", t.i, t.p, t.j, t.q),
                t.delta >= bound && t.delta >= int(1),
                format!("{} < {bound}", t.delta),
            );
        }
        if t.p < max_label(n, t.i) {
            let step = resonant_delta(n, t.i, t.p, t.j, t.q)? - resonant_delta(n, t.i, t.p + 1, t.j, t.q)?;
            let expected = ExactScalar::new(
                ((t.i - 2 * t.p) as i64).into(),
                ((n + 1) as i64 * (t.i - t.j) as i64).into(),
            );
            rec.check(
                format!("step in p at ({},{};{},{})", t.i, t.p, t.j, t.q),
                step == expected,
                format!("{step} vs {expected}"),
            );
        }
    }
    let mut prev = f(n, 1)?;
    rec.check("f(1) = 1", prev == int(1), prev.to_string());
    for i in 2..=top {
        let cur = f(n, i)?;
        rec.check(format!("f({i}) >= f({})", i - 1), cur >= prev, format!("{cur} < {prev}"));
        prev = cur;
    }
    Ok(rec.finish(Suite::Resonance))
}

fn equivariance_suite(cfg: VerifyConfig) -> Result<VerifyReport> {
    let mut rec = Recorder::new();
    let n = cfg.n;
    let mut r = rng(cfg.seed);
    let basis = sl_basis(n)?;
    for s in 0..SAMPLES {
        let ctx = generic_context(&mut r, n, 2, cfg.max_order)?;
        let body = random_body(&mut r, n, 2, cfg.max_order as u32, 2, 3);
        let op = BidiffOp::new(body, ctx.clone())?;
        let sigma = symbol_map(&op)?.symbol;
        let args = [
            random_density(&mut r, n, ctx.weight(0), 3),
            random_density(&mut r, n, ctx.weight(1), 3),
        ];
        for pair in &basis {
            let x = &pair.element;
            let lt = lie_derivative_operator(x, &op)?;
            let applied = lie_derivative_applied(x, &op, &args)?.value;
            rec.equal(
                format!("operator Lie derivative along {} [{s}]", pair.label),
                &apply_operator(&lt, &args)?.value,
                &applied,
            );
            let lhs = symbol_map(&lt)?.symbol.body;
            let rhs = lie_derivative_symbol(x, &sigma)?.body;
            rec.equal(format!("symbol map commutes with {} [{s}]", pair.label), &lhs, &rhs);
        }
    }
    Ok(rec.finish(Suite::Equivariance))
}

fn roundtrip_suite(cfg: VerifyConfig) -> Result<VerifyReport> {
    let mut rec = Recorder::new();
    let n = cfg.n;
    let mut r = rng(cfg.seed);
    for s in 0..SAMPLES {
        let ctx = generic_context(&mut r, n, 2, cfg.max_order)?;
        let body = random_body(&mut r, n, 2, cfg.max_order as u32, 2, 4);
        let sym = SymbolPoly::new(body.clone(), ctx.clone())?;
        let q = quantize(&sym)?;
        rec.equal(format!("symbol of quantization [{s}]"), &symbol_map(&q.operator)?.symbol.body, &body);
        let top = body.order();
        rec.equal(
            format!("principal symbol preserved [{s}]"),
            &q.operator.body.homogeneous_part(top),
            &body.homogeneous_part(top),
        );
        let op = BidiffOp::new(random_body(&mut r, n, 2, cfg.max_order as u32, 2, 4), ctx.clone())?;
        let back = quantize(&symbol_map(&op)?.symbol)?.operator;
        rec.equal(format!("quantization of symbol [{s}]"), &back.body, &op.body);
        let i = cfg.max_order.min(3);
        let label = SpectralLabel::new(i, max_label(n, i).min(1));
        let v = &hwv(i - label.p, label.p, label.p, n)? * &Poly::x(n, 0);
        let qv = quantize(&SymbolPoly::new(v, ctx.clone())?)?.operator;
        let g = gamma(n, &ctx.delta(), label.i, label.p)?;
        let direct = casimir_direct_with(&qv, &sl_basis(n)?)?.body;
        rec.equal(format!("quantized {label} is an eigenvector [{s}]"), &direct, &qv.body.scale(&g));
    }
    Ok(rec.finish(Suite::Roundtrip))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BasisLabel;

    fn cfg(n: usize) -> VerifyConfig {
        VerifyConfig { n, seed: 42, max_order: 2 }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn all_suites_pass() {
        for n in [1, 2] {
            for s in Suite::ALL {
                let rep = run(s, cfg(n)).unwrap();
                let failed: Vec<_> = rep.checks.iter().filter(|c| !c.passed).collect();
                assert!(failed.is_empty(), "n={n} {s}: {failed:?}");
            }
        }
    }

    #[test]
    fn tampered_basis_fails() {
        let mut basis = sl_basis(2).unwrap();
        let pair = basis
            .iter_mut()
            .find(|p| p.label == BasisLabel::Translation(0))
            .unwrap();
        pair.dual = pair.dual.scale(&int(-1));
        assert!(!casimir_suite_with(cfg(2), &basis).unwrap().passed());
    }
}
