#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use polycert::{Coefficient, ExponentVector, MonomialOrder, Polynomial};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero coefficient; rationals get a random small denominator.
pub fn coeff<C: Coefficient>(rng: &mut ChaCha8Rng) -> C {
    loop {
        let num = rng.gen_range(-20i64..=20);
        if num == 0 {
            continue;
        }
        let den = rng.gen_range(1i64..=6);
        if let Some(c) = C::from_ratio(BigInt::from(num), BigInt::from(den)) {
            return c;
        }
    }
}

pub fn monomial(rng: &mut ChaCha8Rng, nvars: usize, max_exp: u64) -> ExponentVector {
    let e: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
    ExponentVector::from_u64s(&e)
}

/// Up to `max_terms` random terms, combined and normalized.
pub fn poly<C: Coefficient>(
    rng: &mut ChaCha8Rng,
    order: MonomialOrder,
    nvars: usize,
    max_terms: usize,
    max_exp: u64,
) -> Polynomial<C> {
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..n).map(|_| (monomial(rng, nvars, max_exp), coeff::<C>(rng))).collect();
    Polynomial::from_terms(order, nvars, terms).unwrap()
}

/// Exactly `n` terms on distinct monomials.
pub fn poly_exact<C: Coefficient>(
    rng: &mut ChaCha8Rng,
    order: MonomialOrder,
    nvars: usize,
    n: usize,
    max_exp: u64,
) -> Polynomial<C> {
    let mut seen = BTreeSet::new();
    while seen.len() < n {
        let e: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect();
        seen.insert(e);
    }
    let terms: Vec<_> = seen
        .into_iter()
        .map(|e| (ExponentVector::from_u64s(&e), coeff::<C>(rng)))
        .collect();
    let p = Polynomial::from_terms(order, nvars, terms).unwrap();
    assert_eq!(p.term_count(), n);
    p
}

/// At least one term.
pub fn nonzero_poly<C: Coefficient>(
    rng: &mut ChaCha8Rng,
    order: MonomialOrder,
    nvars: usize,
    max_terms: usize,
    max_exp: u64,
) -> Polynomial<C> {
    let n = rng.gen_range(1..=max_terms.max(1));
    poly_exact(rng, order, nvars, n.min(((max_exp + 1) as usize).pow(nvars as u32)), max_exp)
}

pub fn order(rng: &mut ChaCha8Rng) -> MonomialOrder {
    *MonomialOrder::ALL.choose(rng).unwrap()
}

/// Univariate polynomials with unit coefficients on the given exponents.
pub fn uni<C: Coefficient>(exps: &[u64]) -> Polynomial<C> {
    let terms = exps.iter().map(|&e| (ExponentVector::from_u64s(&[e]), C::one()));
    Polynomial::from_terms(MonomialOrder::Lex, 1, terms).unwrap()
}

/// Associativity fixture: the three smallest exponents come from p, r and
/// q in that order, so every pairwise merge runs to the end of both lists.
pub fn associativity_fixture<C: Coefficient>(l: u64, m: u64, n: u64) -> (Polynomial<C>, Polynomial<C>, Polynomial<C>) {
    let block = |first: u64, start: u64, len: u64| {
        let mut e: Vec<u64> = (start..start + len - 1).collect();
        e.push(first);
        uni::<C>(&e)
    };
    let p = block(0, 3, l);
    let r = block(1, 3 + l, n);
    let q = block(2, 3 + l + n, m);
    (p, q, r)
}
