//! Multiplying by an operand still held in a geobucket, by each route.

use num_bigint::BigInt;
use polycert::{measure, mul_heap, mul_heap_gb, ExponentVector, GbRoute, Geobucket, LcStrategy, MonomialOrder, Polynomial, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let order = MonomialOrder::Lex;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let term = |rng: &mut ChaCha8Rng| {
        let e = [rng.gen_range(0..30u64), rng.gen_range(0..30u64), rng.gen_range(0..30u64)];
        Term::new(ExponentVector::from_u64s(&e), BigInt::from(rng.gen_range(1..=9i64))).unwrap()
    };

    let f = Polynomial::from_terms(order, 3, (0..24).map(|_| term(&mut rng).into_parts())).unwrap();
    let mut gb = Geobucket::new(order, 3, 4, LcStrategy::ScanAll).unwrap();
    for _ in 0..100 {
        gb.add_term(term(&mut rng)).unwrap();
    }
    println!("geobucket sizes: {:?}", gb.bucket_sizes());

    let expected = mul_heap(&f, &gb.normalize()).unwrap();
    for route in [GbRoute::ConvertFirst, GbRoute::PerBucketStreams, GbRoute::Hybrid { threshold: 16 }] {
        let (p, ops) = measure(|| mul_heap_gb(&f, &gb, route).unwrap());
        assert_eq!(p, expected);
        println!("{route:?}: {} terms, {ops}", p.term_count());
    }
}
