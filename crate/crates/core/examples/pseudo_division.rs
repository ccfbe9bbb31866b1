//! Univariate division over the rationals and pseudo-division over the
//! integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use polycert::{univ_divide, univ_pseudo_divide, RecursivePoly, VariableSet};

fn uni<C: polycert::Coefficient>(coeffs: &[(u64, i64)]) -> RecursivePoly<C> {
    RecursivePoly::anonymous(coeffs.iter().map(|&(e, c)| (e.into(), C::from_i64(c)))).bind(0)
}

fn main() {
    let vars = VariableSet::new(["x"]).unwrap();

    let f: RecursivePoly<BigInt> = uni(&[(3, 1), (1, 2), (0, -5)]);
    let g: RecursivePoly<BigInt> = uni(&[(2, 2), (0, 3)]);
    let (q, r, delta) = univ_pseudo_divide(&f, &g).unwrap();
    println!("f = {}", f.display(&vars));
    println!("g = {}", g.display(&vars));
    println!("lc(g)^{delta} * f = q*g + r with q = {}, r = {}", q.display(&vars), r.display(&vars));

    let f: RecursivePoly<BigRational> = uni(&[(3, 1), (1, 2), (0, -5)]);
    let g: RecursivePoly<BigRational> = uni(&[(2, 2), (0, 3)]);
    let (q, r) = univ_divide(&f, &g).unwrap();
    println!("over Q: q = {}, r = {}", q.display(&vars), r.display(&vars));
}
