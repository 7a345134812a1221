//! Splitting homogeneous symbols into the eigenspaces `S_(i,p)` of `C^t`.
//!
//! On symbols of total degree `i` the spectrum of `C^t` is
//! `{γ_{i,q} : q ≤ ⌊i/2⌋}` and is simple in `q`, so the block `S_(i,p)` is
//! the image of the Lagrange projector
//! `Π_p = ∏_{q≠p} (C^t − γ_{i,q}) / (γ_{i,p} − γ_{i,q})`.
//! The differences `γ_{i,p} − γ_{i,q} = 2(p−q)(p+q−1−i)` do not depend on
//! the shift.

use std::collections::BTreeMap;

use crate::casimir::{casimir_symbol_poly, gamma_unchecked, max_label, SpectralLabel};
use crate::density::{Context, SymbolPoly};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Labels `p` present in total degree `i`.
pub fn labels(ctx: &Context, i: usize) -> Result<Vec<usize>> {
    match ctx.arity() {
        1 => Ok(vec![0]),
        2 => Ok((0..=max_label(ctx.n(), i)).collect()),
        a => Err(Error::UnsupportedArity(a)),
    }
}

pub(crate) fn project_poly(body: &Poly, ctx: &Context, label: SpectralLabel) -> Result<Poly> {
    let all = labels(ctx, label.i)?;
    if !all.contains(&label.p) {
        return Err(Error::LabelOutOfRange {
            i: label.i,
            p: label.p,
            n: ctx.n(),
        });
    }
    if !body.is_homogeneous(label.i as u32) {
        return Err(Error::NotHomogeneous { expected: label.i });
    }
    let delta = ctx.delta();
    let target = gamma_unchecked(ctx.n(), &delta, label.i, label.p);
    let mut out = body.clone();
    for &q in all.iter().filter(|&&q| q != label.p) {
        if out.is_zero() {
            break;
        }
        let other = gamma_unchecked(ctx.n(), &delta, label.i, q);
        let applied = &casimir_symbol_poly(&out, ctx) - &out.scale(&other);
        out = applied.scale(&(num_traits::one::<crate::ExactScalar>() / (&target - &other)));
    }
    Ok(out)
}

/// Component of a homogeneous symbol in `S_(label)`.
pub fn isotypic_project(sym: &SymbolPoly, label: SpectralLabel) -> Result<SymbolPoly> {
    Ok(SymbolPoly {
        body: project_poly(&sym.body, &sym.context, label)?,
        context: sym.context.clone(),
    })
}

pub(crate) fn decompose_poly(body: &Poly, ctx: &Context) -> Result<BTreeMap<SpectralLabel, Poly>> {
    let mut out = BTreeMap::new();
    for i in 0..=body.order() as usize {
        let part = body.homogeneous_part(i as u32);
        if part.is_zero() {
            continue;
        }
        let ls = labels(ctx, i)?;
        let mut rest = part.clone();
        for (idx, &p) in ls.iter().enumerate() {
            let label = SpectralLabel::new(i, p);
            // the last component is whatever remains
            let comp = if idx + 1 == ls.len() {
                rest.clone()
            } else {
                project_poly(&part, ctx, label)?
            };
            rest -= &comp;
            if !comp.is_zero() {
                out.insert(label, comp);
            }
        }
    }
    Ok(out)
}

/// Splits a symbol into its nonzero isotypic components.
pub fn decompose(sym: &SymbolPoly) -> Result<BTreeMap<SpectralLabel, SymbolPoly>> {
    Ok(decompose_poly(&sym.body, &sym.context)?
        .into_iter()
        .map(|(l, body)| {
            (
                l,
                SymbolPoly {
                    body,
                    context: sym.context.clone(),
                },
            )
        })
        .collect())
}
