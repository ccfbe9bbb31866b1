//! Comparison counts for merge addition, and how the bracketing of a
//! three-way sum changes them.

use num_rational::BigRational;
use polycert::{measure, ExponentVector, MonomialOrder, Polynomial, VariableSet};
use num_traits::One;

type Q = BigRational;

/// Univariate polynomial with unit coefficients on the given exponents.
fn uni(exps: &[u64]) -> Polynomial<Q> {
    let terms = exps
        .iter()
        .map(|&e| (ExponentVector::from_u64s(&[e]), Q::one()));
    Polynomial::from_terms(MonomialOrder::Lex, 1, terms).unwrap()
}

fn main() {
    let vars = VariableSet::new(["x"]).unwrap();

    // Interleaved supports force a comparison on every step.
    let p = uni(&[6, 4, 2]);
    let q = uni(&[7, 5, 3, 1]);
    let (sum, ops) = measure(|| p.add(&q).unwrap());
    println!("p = {}", polycert::print_poly(&p, &vars));
    println!("q = {}", polycert::print_poly(&q, &vars));
    println!("p + q = {}", polycert::print_poly(&sum, &vars));
    println!("comparisons: {} (m + n - 1 = {})", ops.comparisons, 3 + 4 - 1);

    // Every merge is worst case when the three smallest exponents come from
    // p, r and q in that order; the rest sit above in disjoint blocks.
    for (l, m, n) in [(10u64, 3u64, 3u64), (50, 5, 5), (100, 4, 4)] {
        let block = |first: u64, start: u64, len: u64| {
            let mut e: Vec<u64> = (start..start + len - 1).rev().collect();
            e.push(first);
            uni(&e)
        };
        let p = block(0, 3, l);
        let r = block(1, 3 + l, n);
        let q = block(2, 3 + l + n, m);
        let (_, right) = measure(|| p.add(&q.add(&r).unwrap()).unwrap());
        let (_, left) = measure(|| p.add(&q).unwrap().add(&r).unwrap());
        println!(
            "l={l:3} m={m} n={n}: p+(q+r) {:3} comparisons, (p+q)+r {:3}",
            right.comparisons, left.comparisons
        );
    }
}
