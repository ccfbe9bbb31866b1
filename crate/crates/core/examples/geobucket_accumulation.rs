//! Accumulating many small summands: geobucket versus repeated merging.

use num_bigint::BigInt;
use polycert::{measure, ExponentVector, Geobucket, LcStrategy, MonomialOrder, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, len: usize) -> Polynomial<BigInt> {
    let terms = (0..len).map(|_| {
        let e = [rng.gen_range(0..40u64), rng.gen_range(0..40u64)];
        (ExponentVector::from_u64s(&e), BigInt::from(rng.gen_range(1..10i64)))
    });
    Polynomial::from_terms(MonomialOrder::Grevlex, 2, terms).unwrap()
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let summands: Vec<_> = (0..512).map(|_| random_poly(&mut rng, 4)).collect();

    let (plain, plain_ops) = measure(|| {
        summands
            .iter()
            .fold(Polynomial::zero(MonomialOrder::Grevlex, 2), |acc, s| acc.add(s).unwrap())
    });

    for strategy in [LcStrategy::ScanAll, LcStrategy::LargestBucket] {
        let ((gb, sum), ops) = measure(|| {
            let mut gb = Geobucket::new(MonomialOrder::Grevlex, 2, 4, strategy).unwrap();
            for s in &summands {
                gb.add(s).unwrap();
            }
            let sum = gb.normalize();
            (gb, sum)
        });
        assert_eq!(sum, plain);
        println!("{strategy:?}: bucket sizes {:?}", gb.bucket_sizes());
        println!("  comparisons {} vs {} for repeated merging", ops.comparisons, plain_ops.comparisons);
    }

    let mut gb = Geobucket::new(MonomialOrder::Grevlex, 2, 4, LcStrategy::ScanAll).unwrap();
    for s in &summands[..16] {
        gb.add(s).unwrap();
    }
    let lead = gb.extract_leading().unwrap();
    println!("leading term after 16 additions: {:?} * {}", lead.monomial().exponents(), lead.coeff());
}
