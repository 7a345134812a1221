//! Seeded generators for test inputs. Everything is driven by a ChaCha
//! stream so a seed fixes the output on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::density::{Context, Density, VectorField};
use crate::error::Result;
use crate::poly::{Monomial, Poly};
use crate::resonance::is_generic_up_to;
use crate::scalar::{rat, ExactScalar};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `[-6, 6]` and denominator in `[1, 6]`.
pub fn small_rational(rng: &mut impl Rng) -> ExactScalar {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=6))
}

fn nonzero_rational(rng: &mut impl Rng) -> ExactScalar {
    loop {
        let v = small_rational(rng);
        if v != rat(0, 1) {
            return v;
        }
    }
}

fn random_exponents(rng: &mut impl Rng, slots: usize, degree: u32) -> Vec<u32> {
    let mut e = vec![0; slots];
    for _ in 0..degree {
        e[rng.gen_range(0..slots)] += 1;
    }
    e
}

/// A polynomial in `x` of degree at most `max_degree` with up to `terms`
/// terms.
pub fn random_coefficient(rng: &mut impl Rng, n: usize, max_degree: u32, terms: usize) -> Poly {
    let mut out = Poly::zero(n);
    for _ in 0..terms {
        let d = rng.gen_range(0..=max_degree);
        let m = Monomial::from_exponents(random_exponents(rng, n, d));
        out += &Poly::term(n, m, nonzero_rational(rng));
    }
    out
}

/// A homogeneous polynomial of fiber degree `degree` over `arity` families.
pub fn random_homogeneous(
    rng: &mut impl Rng,
    n: usize,
    arity: usize,
    degree: u32,
    max_coeff_degree: u32,
    terms: usize,
) -> Poly {
    let mut out = Poly::zero(n);
    for _ in 0..terms {
        let cd = rng.gen_range(0..=max_coeff_degree);
        let mut e = random_exponents(rng, n, cd);
        e.extend(random_exponents(rng, n * arity, degree));
        out += &Poly::term(n, Monomial::from_exponents(e), nonzero_rational(rng));
    }
    out
}

/// A polynomial whose top fiber degree is exactly `order` (unless the
/// terms cancel), with lower-degree parts mixed in.
pub fn random_body(
    rng: &mut impl Rng,
    n: usize,
    arity: usize,
    order: u32,
    max_coeff_degree: u32,
    terms: usize,
) -> Poly {
    let mut out = random_homogeneous(rng, n, arity, order, max_coeff_degree, 1);
    for _ in 1..terms {
        let d = rng.gen_range(0..=order);
        out += &random_homogeneous(rng, n, arity, d, max_coeff_degree, 1);
    }
    out
}

/// A polynomial vector field with components of degree at most
/// `max_degree`.
pub fn random_field(rng: &mut impl Rng, n: usize, max_degree: u32, terms: usize) -> VectorField {
    let comps = (0..n)
        .map(|_| random_coefficient(rng, n, max_degree, terms))
        .collect();
    VectorField::new(comps).expect("components have matching dimension")
}

pub fn random_density(rng: &mut impl Rng, n: usize, weight: &ExactScalar, max_degree: u32) -> Density {
    Density::new(random_coefficient(rng, n, max_degree, 3), weight.clone())
        .expect("x-only polynomial")
}

/// Random weights, resampled until no two eigenvalues of order at most
/// `max_order` coincide.
pub fn generic_context(rng: &mut impl Rng, n: usize, arity: usize, max_order: usize) -> Result<Context> {
    loop {
        let weights = (0..arity).map(|_| small_rational(rng)).collect();
        let mu = small_rational(rng);
        let ctx = Context::new(n, weights, mu)?;
        if is_generic_up_to(n, &ctx.delta(), max_order)? {
            return Ok(ctx);
        }
    }
}
