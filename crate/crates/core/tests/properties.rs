mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use polycert::textio::{parse_poly_file, print_certificate, print_poly_file};
use polycert::{
    measure, mul_heap, mul_heap_gb, parse_certificate, parse_poly, print_poly, read_naive, read_sorted,
    to_recursive, verify, verify_naive, Certificate, Coefficient, Direction, ExponentVector, GbRoute, Geobucket,
    LcStrategy, MonomialOrder, Polynomial, RecursionMode, VariableSet,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

type Q = BigRational;
type Z = BigInt;

fn vars(n: usize) -> VariableSet {
    VariableSet::new(["x", "y", "z", "w"].into_iter().take(n)).unwrap()
}

fn print_parse_round_trip<C: Coefficient>(seed: u64) {
    let mut rng = common::rng(seed);
    let order = common::order(&mut rng);
    let n = rng.gen_range(1..=4);
    let p = common::poly::<C>(&mut rng, order, n, 15, 7);
    let vs = vars(n);
    let text = print_poly(&p, &vs);
    assert_eq!(parse_poly::<C>(&text, &vs, order).unwrap(), p, "{text}");
    let file = print_poly_file(&vs, &p);
    let back = parse_poly_file::<C>(&file, None).unwrap();
    assert_eq!((back.vars, back.poly), (vs, p));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        print_parse_round_trip::<Z>(seed);
        print_parse_round_trip::<Q>(seed);
    }

    #[test]
    fn readers_agree_on_any_stream(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let order = common::order(&mut rng);
        let len = rng.gen_range(0..60);
        // Small exponents force repeats, and some coefficients cancel.
        let stream: Vec<(ExponentVector, Q)> = (0..len)
            .map(|_| (common::monomial(&mut rng, 2, 3), common::coeff(&mut rng)))
            .collect();
        let reference = Polynomial::from_terms(order, 2, stream.clone()).unwrap();
        prop_assert_eq!(&read_sorted(stream.clone(), order, 2).unwrap(), &reference);
        prop_assert_eq!(&read_naive(stream, order, 2).unwrap(), &reference);
    }

    #[test]
    fn sorted_stream_costs_one_comparison_per_gap(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let order = common::order(&mut rng);
        let n = rng.gen_range(1..80);
        let p = common::poly_exact::<Z>(&mut rng, order, 3, n, 9);
        let stream: Vec<_> = p.terms().iter().cloned().map(|t| t.into_parts()).collect();
        let (q, ops) = measure(|| read_sorted(stream, order, 3).unwrap());
        prop_assert_eq!(q, p);
        prop_assert_eq!(ops.comparisons, n as u64 - 1);
    }

    #[test]
    fn addition_laws(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let order = common::order(&mut rng);
        let [a, b, c] = [(); 3].map(|_| common::poly::<Q>(&mut rng, order, 3, 20, 4));
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert!(a.add(&b).unwrap().is_well_formed());
    }

    #[test]
    fn multiplication_laws(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let order = common::order(&mut rng);
        let [a, b, c] = [(); 3].map(|_| common::poly::<Z>(&mut rng, order, 3, 10, 4));
        let lhs = a.mul_naive(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul_naive(&b).unwrap().add(&a.mul_naive(&c).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(mul_heap(&a, &b).unwrap(), b.mul_naive(&a).unwrap());
        let point: Vec<Z> = (0..3).map(|_| Z::from(rng.gen_range(-3..=3))).collect();
        prop_assert_eq!(
            lhs.eval(&point).unwrap(),
            a.eval(&point).unwrap() * (b.eval(&point).unwrap() + c.eval(&point).unwrap())
        );
    }

    #[test]
    fn geobucket_matches_fold_for_any_growth(seed in any::<u64>(), growth in 2usize..7) {
        let mut rng = common::rng(seed);
        let order = common::order(&mut rng);
        let strategy = if rng.gen_bool(0.5) { LcStrategy::ScanAll } else { LcStrategy::LargestBucket };
        let mut gb = Geobucket::<Q>::new(order, 2, growth, strategy).unwrap();
        let mut fold = Polynomial::zero(order, 2);
        for _ in 0..rng.gen_range(0..60) {
            let s = common::poly::<Q>(&mut rng, order, 2, 10, 5);
            gb.add(&s).unwrap();
            fold = fold.add(&s).unwrap();
            prop_assert!(gb.check_invariants());
        }
        prop_assert_eq!(gb.normalize(), fold.clone());
        let routes = [GbRoute::ConvertFirst, GbRoute::PerBucketStreams, GbRoute::Hybrid { threshold: growth }];
        let f = common::poly::<Q>(&mut rng, order, 2, 6, 5);
        let expected = f.mul_naive(&fold).unwrap();
        for route in routes {
            prop_assert_eq!(mul_heap_gb(&f, &gb, route).unwrap(), expected.clone());
        }
        let mut drained = Vec::new();
        while let Some(t) = gb.extract_leading() {
            drained.push(t);
        }
        prop_assert_eq!(drained.as_slice(), fold.terms());
    }

    #[test]
    fn recursive_addition_matches_distributed(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let order = common::order(&mut rng);
        let a = common::poly::<Z>(&mut rng, order, 3, 12, 3);
        let b = common::poly::<Z>(&mut rng, order, 3, 12, 3);
        for mode in [RecursionMode::SparseInVariables, RecursionMode::DenseInVariables] {
            let sum = to_recursive(&a, mode).add(&to_recursive(&b, mode)).unwrap();
            let expected = to_recursive(&a.add(&b).unwrap(), RecursionMode::SparseInVariables);
            let sparse_sum = to_recursive(&polycert::to_distributed(&sum, order, 3).unwrap(), RecursionMode::SparseInVariables);
            prop_assert_eq!(sparse_sum, expected);
        }
    }

    #[test]
    fn certificate_files_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let order = common::order(&mut rng);
        let n = rng.gen_range(1..=4);
        let pairs: Vec<_> = (0..n)
            .map(|_| (common::poly::<Q>(&mut rng, order, 3, 5, 3), common::poly::<Q>(&mut rng, order, 3, 5, 3)))
            .collect();
        let f = common::poly::<Q>(&mut rng, order, 3, 8, 4);
        let cert = Certificate::new(f, pairs).unwrap();
        let vs = vars(3);
        let text = print_certificate(&vs, &cert);
        let back = parse_certificate::<Q>(&text).unwrap();
        prop_assert_eq!(back.vars, vs);
        prop_assert_eq!(back.certificate.target(), cert.target());
        prop_assert_eq!(back.certificate.pairs(), cert.pairs());
        let heap = verify(&cert, Direction::MaxFirst);
        prop_assert_eq!(heap.verdict, verify_naive(&cert).verdict);
        prop_assert_eq!(heap.verdict, verify(&cert, Direction::MinFirst).verdict);
    }
}

#[test]
fn min_first_finds_a_low_error_with_fewer_extractions() {
    let mut rng = common::rng(99);
    let order = MonomialOrder::Grevlex;
    let pairs: Vec<(Polynomial<Z>, Polynomial<Z>)> = (0..3)
        .map(|_| (common::poly_exact(&mut rng, order, 3, 20, 8), common::poly_exact(&mut rng, order, 3, 20, 8)))
        .collect();
    let mut f = Polynomial::zero(order, 3);
    for (l, g) in &pairs {
        f = f.add(&l.mul_naive(g).unwrap()).unwrap();
    }
    // Corrupt the smallest term of f.
    let low = f.terms().last().unwrap().monomial().clone();
    let bump = Polynomial::from_terms(order, 3, [(low.clone(), Z::from(1))]).unwrap();
    let cert = Certificate::new(f.add(&bump).unwrap(), pairs).unwrap();

    let max = verify(&cert, Direction::MaxFirst);
    let min = verify(&cert, Direction::MinFirst);
    assert_eq!(max.witness, Some((low.clone(), Z::from(-1))));
    assert_eq!(min.witness, max.witness);
    assert!(
        min.stats.counters.heap_extractions * 10 < max.stats.counters.heap_extractions,
        "min {} vs max {}",
        min.stats.counters.heap_extractions,
        max.stats.counters.heap_extractions
    );
}

#[test]
fn shuffled_lambda_falls_back_to_a_geobucket() {
    let vs = VariableSet::new(["x", "y", "z", "p", "q"]).unwrap();
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/lambda1.poly")).unwrap();
    let lambda = parse_poly_file::<Q>(&text, None).unwrap().poly;
    let mut stream: Vec<_> = lambda.terms().iter().cloned().map(|t| t.into_parts()).collect();
    stream.shuffle(&mut common::rng(3));
    let (p, fallback) = polycert::textio::read_sorted_report(stream, MonomialOrder::Grlex, vs.len()).unwrap();
    assert_eq!(p, lambda);
    assert!(fallback.is_some());
}
