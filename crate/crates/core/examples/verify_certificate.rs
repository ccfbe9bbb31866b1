//! Checking an ideal-membership certificate without forming the products.
//!
//! Run with a certificate file, or without arguments for a built-in one:
//! `cargo run --example verify_certificate -- data/weierstrass.cert`

use num_rational::BigRational;
use polycert::{parse_certificate, verify, verify_naive, Direction};

const BUILTIN: &str = "\
vars: x, y
order: grevlex
N: 2
f: x^3 - y^3
lambda[1]: x^2 + x*y + y^2
g[1]: x - y
lambda[2]: 0
g[2]: x + y
";

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable certificate"),
        None => BUILTIN.to_string(),
    };
    let file = parse_certificate::<BigRational>(&text).expect("well-formed certificate");
    let cert = &file.certificate;
    println!("N = {}, input terms = {}", cert.len(), cert.input_terms());

    for direction in [Direction::MaxFirst, Direction::MinFirst] {
        let res = verify(cert, direction);
        println!(
            "{direction:?}: {:?}, peak live terms {}, {}",
            res.verdict, res.stats.peak_live_terms, res.stats.counters
        );
        if let Some((m, c)) = &res.witness {
            println!("  witness: {}", polycert::textio::print_monomial_coeff(&file.vars, m, c));
        }
    }
    let naive = verify_naive(cert);
    println!("naive: {:?}, {}", naive.verdict, naive.stats.counters);
}
