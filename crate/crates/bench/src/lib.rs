//! Fixed workloads shared by the benchmarks.

use projsym_core::random::{generic_context, random_body, rng};
use projsym_core::{BidiffOp, SymbolPoly};

/// A seeded symbol of the given order over a generic bilinear context.
pub fn symbol(n: usize, order: u32, seed: u64) -> SymbolPoly {
    let mut r = rng(seed);
    let ctx = generic_context(&mut r, n, 2, order as usize).expect("valid dimension");
    SymbolPoly::new(random_body(&mut r, n, 2, order, 2, 6), ctx).expect("fits the context")
}

/// A seeded operator of the given order.
pub fn operator(n: usize, order: u32, seed: u64) -> BidiffOp {
    symbol(n, order, seed).as_operator()
}

