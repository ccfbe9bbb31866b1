//! Distributed versus recursive storage of the same polynomial.

use num_bigint::BigInt;
use polycert::{parse_poly, to_distributed, to_recursive, MonomialOrder, RecursionMode, VariableSet};

fn show(text: &str, names: &[&str]) {
    let vars = VariableSet::new(names.iter().copied()).unwrap();
    let p = parse_poly::<BigInt>(text, &vars, MonomialOrder::Lex).unwrap();
    println!("{text}   over {names:?}");
    for mode in [RecursionMode::SparseInVariables, RecursionMode::DenseInVariables] {
        let r = to_recursive(&p, mode);
        assert_eq!(to_distributed(&r, MonomialOrder::Lex, vars.len()).unwrap(), p);
        println!("  {mode:?}: {}", r.display(&vars));
    }
}

fn main() {
    show("y^2*z^2 + 2*z^2 + 3*y + 4", &["z", "y"]);
    show("y^2*z^2 + 2*z^2 + 3*x + 4", &["z", "y", "x"]);
    show("x^1000000 - 1", &["x", "y", "z"]);
}
