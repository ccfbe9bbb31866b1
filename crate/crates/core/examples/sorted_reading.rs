//! Reading a term stream that is already sorted costs one comparison per
//! term; the term-at-a-time baseline is quadratic on the same input.

use num_bigint::BigInt;
use num_rational::BigRational;
use polycert::{measure, read_naive, read_sorted, ExponentVector, MonomialOrder, VariableSet};

const LAMBDA: &str = "256/3*p^12*x^2 + 128*q*p^11*x*z + 2304*q^2*p^9*x^2 + 2592*q^3*p^8*x*z \
    - 64*q*p^10*y^2 + 23328*q^4*p^6*x^2 + 17496*q^5*p^5*x*z - 1296*q^3*p^7*y^2 \
    + 104976*q^6*p^3*x^2 + 39366*q^7*p^2*x*z - 8748*q^5*p^4*y^2 + 177147*q^8*x^2 \
    - 19683*q^7*p*y^2";

fn main() {
    let vars = VariableSet::new(["x", "y", "z", "p", "q"]).unwrap();
    let stream = polycert::textio::parse_terms::<BigRational>(LAMBDA, &vars).unwrap();
    let (lambda, ops) = measure(|| read_sorted(stream, MonomialOrder::Grlex, vars.len()).unwrap());
    println!("{} terms read with {} comparisons", lambda.term_count(), ops.comparisons);

    for n in [64u64, 128, 256, 512] {
        let descending: Vec<_> = (0..n)
            .rev()
            .map(|e| (ExponentVector::from_u64s(&[e]), BigInt::from(1)))
            .collect();
        let (_, sorted) = measure(|| read_sorted(descending.clone(), MonomialOrder::Lex, 1).unwrap());
        let (_, naive) = measure(|| read_naive(descending, MonomialOrder::Lex, 1).unwrap());
        println!("n = {n:3}: read_sorted {:4}, read_naive {:6}", sorted.comparisons, naive.comparisons);
    }
}
