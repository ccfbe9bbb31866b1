//! Heap-based multiplication: product terms come out largest first while
//! the heap never holds more than one entry per term of the left factor.

use polycert::{measure, mul_heap, parse_poly, print_poly, MonomialOrder, VariableSet};
use num_rational::BigRational;

fn main() {
    let vars = VariableSet::new(["x", "y"]).unwrap();
    let order = MonomialOrder::Grevlex;
    let f = parse_poly::<BigRational>("x^3 + 2*x*y - y^2 + 1/3", &vars, order).unwrap();
    let g = parse_poly::<BigRational>("x^2*y - x + 5*y^3 - 7", &vars, order).unwrap();

    let (heap, heap_ops) = measure(|| mul_heap(&f, &g).unwrap());
    let (naive, naive_ops) = measure(|| f.mul_naive(&g).unwrap());
    assert_eq!(heap, naive);

    println!("f*g = {}", print_poly(&heap, &vars));
    println!("heap : {heap_ops}");
    println!("naive: {naive_ops}");

    let (_, stats) = polycert::heapmul::mul_heap_with_stats(&f, &g).unwrap();
    println!(
        "#f = {}, #g = {}, largest heap = {}",
        f.term_count(),
        g.term_count(),
        stats.max_heap
    );
}
