//! Geobuckets: a polynomial held as an unevaluated sum of buckets, bucket `k`
//! holding at most `c^k` terms.
//!
//! Adding an `l`-term polynomial merges it into the bucket `k` with
//! `c^(k-1) < l <= c^k`; a bucket that then exceeds its capacity is merged
//! into the next one, and so on upwards. Long-running sums of short
//! polynomials thereby cost `O(N log N)` comparisons instead of the
//! `O(N^2)` of repeated list addition.

use std::cmp::Ordering;


use crate::coeff::{ensure_nontrivial, Coefficient};
use crate::counters;
use crate::error::{PolyError, Result};
use crate::monomial::{check_dim, MonomialOrder};
use crate::poly::{merge_add, terms_well_formed, Polynomial, Term};

/// Default growth factor.
pub const DEFAULT_GROWTH: usize = 4;

/// How the leading term of the whole sum is located.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LcStrategy {
    /// Compare the leading terms of all buckets, summing ties.
    ScanAll,
    /// Keep the leading term of the sum in the highest nonempty bucket by
    /// merging any bucket whose leading monomial is not smaller into it.
    LargestBucket,
}

/// A bucket's live terms are `terms[head..]`; extraction advances `head`.
#[derive(Debug, Clone)]
struct Bucket<C> {
    terms: Vec<Term<C>>,
    head: usize,
}

impl<C> Bucket<C> {
    fn empty() -> Self {
        Bucket {
            terms: Vec::new(),
            head: 0,
        }
    }

    fn live(&self) -> &[Term<C>] {
        &self.terms[self.head..]
    }

    fn len(&self) -> usize {
        self.terms.len() - self.head
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lead(&self) -> Option<&Term<C>> {
        self.terms.get(self.head)
    }

    fn set(&mut self, terms: Vec<Term<C>>) {
        self.terms = terms;
        self.head = 0;
    }

    fn take(&mut self) -> Vec<Term<C>> {
        let mut terms = std::mem::take(&mut self.terms);
        terms.drain(..self.head);
        self.head = 0;
        terms
    }
}

#[derive(Debug, Clone)]
pub struct Geobucket<C> {
    order: MonomialOrder,
    nvars: usize,
    growth: usize,
    strategy: LcStrategy,
    /// `buckets[k - 1]` is bucket `k`.
    buckets: Vec<Bucket<C>>,
}

impl<C: Coefficient> Geobucket<C> {
    pub fn new(order: MonomialOrder, nvars: usize, growth: usize, strategy: LcStrategy) -> Result<Self> {
        ensure_nontrivial::<C>()?;
        if growth < 2 {
            return Err(PolyError::GrowthFactor(growth));
        }
        Ok(Geobucket {
            order,
            nvars,
            growth,
            strategy,
            buckets: Vec::new(),
        })
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn growth(&self) -> usize {
        self.growth
    }

    pub fn strategy(&self) -> LcStrategy {
        self.strategy
    }

    /// Capacity `c^k` of bucket `k >= 1`, saturating.
    pub fn capacity(&self, k: usize) -> usize {
        u32::try_from(k)
            .ok()
            .and_then(|k| self.growth.checked_pow(k))
            .unwrap_or(usize::MAX)
    }

    /// The bucket an `len`-term polynomial is first merged into.
    pub fn target_bucket(&self, len: usize) -> usize {
        let mut k = 1;
        while len > self.capacity(k) {
            k += 1;
        }
        k
    }

    /// Number of bucket slots, empty or not.
    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    /// Live terms of bucket `k >= 1` (empty past the last slot).
    pub fn bucket(&self, k: usize) -> &[Term<C>] {
        self.buckets.get(k - 1).map_or(&[], Bucket::live)
    }

    /// Sizes of buckets `1..=bucket_count()`; entry `i` is bucket `i + 1`.
    pub fn bucket_sizes(&self) -> Vec<usize> {
        self.buckets.iter().map(Bucket::len).collect()
    }

    /// Live terms of every nonempty bucket, smallest bucket first.
    pub fn nonempty_buckets(&self) -> impl Iterator<Item = &[Term<C>]> + '_ {
        self.buckets.iter().filter(|b| !b.is_empty()).map(Bucket::live)
    }

    /// Stored terms across all buckets (an upper bound on the value's size).
    pub fn stored_terms(&self) -> usize {
        self.buckets.iter().map(Bucket::len).sum()
    }

    /// True when no bucket holds a term. A non-empty geobucket may still
    /// have value zero through cancellation across buckets.
    pub fn is_empty(&self) -> bool {
        self.buckets.iter().all(Bucket::is_empty)
    }

    pub fn add(&mut self, p: &Polynomial<C>) -> Result<()> {
        if p.order() != self.order {
            return Err(PolyError::OrderMismatch {
                left: self.order,
                right: p.order(),
            });
        }
        check_dim(self.nvars, p.nvars())?;
        if p.is_zero() {
            return Ok(());
        }
        let k = self.target_bucket(p.term_count());
        self.ensure_slot(k);
        let slot = &mut self.buckets[k - 1];
        let merged = merge_add(self.order, slot.live(), p.terms());
        slot.set(merged);
        self.cascade(k);
        if self.strategy == LcStrategy::LargestBucket {
            self.restore_top();
        }
        Ok(())
    }

    pub fn add_term(&mut self, t: Term<C>) -> Result<()> {
        check_dim(self.nvars, t.monomial().dim())?;
        let p = Polynomial::from_sorted_unchecked(self.order, self.nvars, vec![t]);
        self.add(&p)
    }

    fn ensure_slot(&mut self, k: usize) {
        while self.buckets.len() < k {
            self.buckets.push(Bucket::empty());
        }
    }

    /// Pushes overflow from bucket `k` upwards until every bucket fits.
    fn cascade(&mut self, mut k: usize) {
        while self.buckets[k - 1].len() > self.capacity(k) {
            let moved = self.buckets[k - 1].take();
            self.ensure_slot(k + 1);
            let next = &mut self.buckets[k];
            let merged = merge_add(self.order, next.live(), &moved);
            next.set(merged);
            k += 1;
        }
    }

    fn top(&self) -> Option<usize> {
        self.buckets.iter().rposition(|b| !b.is_empty())
    }

    /// Re-establishes the largest-bucket invariant: the leading monomial of
    /// the top bucket is strictly greater than every other bucket's.
    fn restore_top(&mut self) {
        loop {
            let Some(top) = self.top() else { return };
            let mut changed = false;
            for j in 0..top {
                let absorb = match (self.buckets[j].lead(), self.buckets[top].lead()) {
                    (Some(a), Some(t)) => self.order.compare(a.monomial(), t.monomial()) != Ordering::Less,
                    (Some(_), None) => true,
                    _ => false,
                };
                if absorb {
                    let moved = self.buckets[j].take();
                    let dest = &mut self.buckets[top];
                    let merged = merge_add(self.order, dest.live(), &moved);
                    dest.set(merged);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
            self.cascade(top + 1);
        }
    }

    /// Finds the leading term of the value and the buckets contributing to
    /// it, discarding monomials whose coefficients cancel across buckets.
    fn locate_leading(&mut self) -> Option<(Term<C>, Vec<usize>)> {
        match self.strategy {
            LcStrategy::LargestBucket => {
                self.restore_top();
                let top = self.top()?;
                Some((self.buckets[top].lead()?.clone(), vec![top]))
            }
            LcStrategy::ScanAll => loop {
                let mut best: Vec<usize> = Vec::new();
                for (j, b) in self.buckets.iter().enumerate() {
                    let Some(lead) = b.lead() else { continue };
                    match best.first() {
                        None => best.push(j),
                        Some(&i) => {
                            let cur = self.buckets[i].lead().expect("nonempty");
                            match self.order.compare(lead.monomial(), cur.monomial()) {
                                Ordering::Greater => {
                                    best.clear();
                                    best.push(j);
                                }
                                Ordering::Equal => best.push(j),
                                Ordering::Less => {}
                            }
                        }
                    }
                }
                let &first = best.first()?;
                let lead = self.buckets[first].lead().expect("nonempty").clone();
                let mut coeff = lead.coeff().clone();
                for &j in &best[1..] {
                    counters::record(counters::Op::CoeffAdd);
                    coeff = coeff + self.buckets[j].lead().expect("nonempty").coeff();
                }
                if coeff.is_zero() {
                    for &j in &best {
                        self.buckets[j].head += 1;
                    }
                    continue;
                }
                let (m, _) = lead.into_parts();
                return Some((Term::new_unchecked(m, coeff), best));
            },
        }
    }

    /// Leading term of the value, `None` iff the value is zero.
    pub fn leading_term(&mut self) -> Option<Term<C>> {
        self.locate_leading().map(|(t, _)| t)
    }

    /// Removes and returns the leading term of the value.
    pub fn extract_leading(&mut self) -> Option<Term<C>> {
        let (t, from) = self.locate_leading()?;
        for j in from {
            self.buckets[j].head += 1;
        }
        if self.strategy == LcStrategy::LargestBucket {
            self.restore_top();
        }
        Some(t)
    }

    /// The value as a plain polynomial, adding buckets from small to large.
    pub fn normalize(&self) -> Polynomial<C> {
        let mut acc: Vec<Term<C>> = Vec::new();
        for b in &self.buckets {
            if !b.is_empty() {
                acc = merge_add(self.order, &acc, b.live());
            }
        }
        Polynomial::from_sorted_unchecked(self.order, self.nvars, acc)
    }

    /// Checks bucket capacities, per-bucket well-formedness and, under
    /// [`LcStrategy::LargestBucket`], the top-bucket invariant. Uncounted.
    pub fn check_invariants(&self) -> bool {
        counters::uncounted(|| {
            let sizes_ok = self
                .buckets
                .iter()
                .enumerate()
                .all(|(i, b)| b.len() <= self.capacity(i + 1));
            let formed = self
                .buckets
                .iter()
                .all(|b| terms_well_formed(self.order, self.nvars, b.live()));
            let top_ok = self.strategy != LcStrategy::LargestBucket
                || match self.top() {
                    None => true,
                    Some(top) => {
                        let t = self.buckets[top].lead().expect("nonempty").monomial();
                        self.buckets[..top].iter().filter_map(Bucket::lead).all(|l| {
                            self.order.compare(l.monomial(), t) == Ordering::Less
                        })
                    }
                };
            sizes_ok && formed && top_ok
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counters::measure;
    use crate::monomial::ExponentVector;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type P = Polynomial<BigInt>;
    const G: MonomialOrder = MonomialOrder::Grlex;

    fn uni(terms: &[(u64, i64)]) -> P {
        P::from_terms(
            G,
            1,
            terms.iter().map(|&(e, c)| (ExponentVector::from_u64s(&[e]), BigInt::from(c))),
        )
        .unwrap()
    }

    fn random_poly(rng: &mut ChaCha8Rng, order: MonomialOrder, n: usize) -> P {
        P::from_terms(
            order,
            3,
            (0..n).map(|_| {
                let e: Vec<u64> = (0..3).map(|_| rng.gen_range(0..8)).collect();
                let mut c = rng.gen_range(-9i64..=9);
                if c == 0 {
                    c = 1;
                }
                (ExponentVector::from_u64s(&e), BigInt::from(c))
            }),
        )
        .unwrap()
    }

    #[test]
    fn new_validates_growth() {
        let gb = Geobucket::<BigInt>::new(G, 1, 4, LcStrategy::ScanAll).unwrap();
        assert!(gb.normalize().is_zero());
        assert_eq!(
            Geobucket::<BigInt>::new(G, 1, 1, LcStrategy::ScanAll).unwrap_err(),
            PolyError::GrowthFactor(1)
        );
        let gb = Geobucket::<BigInt>::new(MonomialOrder::Lex, 1, 2, LcStrategy::LargestBucket).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn bucket_selection_rule() {
        let gb = Geobucket::<BigInt>::new(G, 1, 4, LcStrategy::ScanAll).unwrap();
        assert_eq!(gb.target_bucket(1), 1);
        assert_eq!(gb.target_bucket(4), 1);
        assert_eq!(gb.target_bucket(5), 2);
        assert_eq!(gb.target_bucket(16), 2);
        assert_eq!(gb.target_bucket(17), 3);
        assert_eq!(gb.capacity(200), usize::MAX);
    }

    #[test]
    fn adding_zero_is_a_noop() {
        let mut gb = Geobucket::<BigInt>::new(G, 1, 4, LcStrategy::ScanAll).unwrap();
        gb.add(&P::zero(G, 1)).unwrap();
        assert_eq!(gb.bucket_count(), 0);
    }

    #[test]
    fn cascade_of_five_disjoint_quads() {
        let mut gb = Geobucket::<BigInt>::new(G, 1, 4, LcStrategy::ScanAll).unwrap();
        let mut expected_sizes = Vec::new();
        for i in 0..5u64 {
            let base = 4 * i;
            gb.add(&uni(&[(base, 1), (base + 1, 1), (base + 2, 1), (base + 3, 1)]))
                .unwrap();
            expected_sizes.push(gb.bucket_sizes());
            assert!(gb.check_invariants());
        }
        // hand simulation: 4 | 8 -> spill | 4 | 8 -> spill to 16 | 4
        assert_eq!(expected_sizes, vec![vec![4], vec![0, 8], vec![4, 8], vec![0, 16], vec![4, 16]]);
        assert_eq!(gb.normalize().term_count(), 20);
    }

    #[test]
    fn leading_term_examples() {
        for strategy in [LcStrategy::ScanAll, LcStrategy::LargestBucket] {
            let mut gb = Geobucket::<BigInt>::new(G, 1, 2, strategy).unwrap();
            assert_eq!(gb.leading_term(), None);
            gb.add(&uni(&[(1, 1)])).unwrap();
            gb.add(&uni(&[(2, 1), (0, 1)])).unwrap();
            let lt = gb.leading_term().unwrap();
            assert_eq!(lt.monomial(), &ExponentVector::from_u64s(&[2]));
            assert_eq!(lt.coeff(), &BigInt::from(1));
        }
    }

    #[test]
    fn hidden_zero_across_buckets() {
        // -x^3 sits in bucket 2 and x^3 in bucket 1; no add ever merges them.
        let mut gb = Geobucket::<BigInt>::new(G, 1, 2, LcStrategy::ScanAll).unwrap();
        gb.add(&uni(&[(3, -1), (1, 2), (0, 3)])).unwrap();
        gb.add(&uni(&[(3, 1)])).unwrap();
        assert_eq!(gb.bucket_sizes(), vec![1, 3]);
        let lt = gb.leading_term().unwrap();
        assert_eq!(lt.monomial(), &ExponentVector::from_u64s(&[1]));
        assert_eq!(lt.coeff(), &BigInt::from(2));
        assert!(gb.check_invariants());

        // p spread over three buckets against -p: value zero, nothing merged.
        let mut gb = Geobucket::<BigInt>::new(G, 1, 2, LcStrategy::ScanAll).unwrap();
        gb.add(&uni(&[(4, 1), (3, 1), (2, 1), (1, 1), (0, 1)])).unwrap();
        gb.add(&uni(&[(4, -1), (3, -1), (2, -1)])).unwrap();
        gb.add(&uni(&[(1, -1), (0, -1)])).unwrap();
        assert_eq!(gb.bucket_sizes(), vec![2, 3, 5]);
        assert_eq!(gb.leading_term(), None);
        assert!(gb.normalize().is_zero());
    }

    #[test]
    fn extraction_examples() {
        let mut gb = Geobucket::<BigInt>::new(G, 1, 4, LcStrategy::ScanAll).unwrap();
        assert_eq!(gb.extract_leading(), None);
        gb.add(&uni(&[(2, 1), (0, 2)])).unwrap();
        let t = gb.extract_leading().unwrap();
        assert_eq!(t.monomial(), &ExponentVector::from_u64s(&[2]));
        assert_eq!(gb.normalize(), uni(&[(0, 2)]));
    }

    #[test]
    fn repeated_extraction_emits_normal_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for strategy in [LcStrategy::ScanAll, LcStrategy::LargestBucket] {
            for _ in 0..20 {
                let mut gb = Geobucket::<BigInt>::new(MonomialOrder::Grevlex, 3, 2, strategy).unwrap();
                for _ in 0..30 {
                    let n = rng.gen_range(0..6);
                    gb.add(&random_poly(&mut rng, MonomialOrder::Grevlex, n)).unwrap();
                    assert!(gb.check_invariants());
                }
                let expected = gb.normalize();
                let mut out = Vec::new();
                while let Some(t) = gb.extract_leading() {
                    assert!(gb.check_invariants());
                    out.push(t);
                }
                assert_eq!(out.as_slice(), expected.terms());
            }
        }
    }

    #[test]
    fn normalize_equals_fold_of_add() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let single = {
            let mut gb = Geobucket::<BigInt>::new(G, 1, 4, LcStrategy::ScanAll).unwrap();
            let p = uni(&[(3, 1), (1, 2)]);
            gb.add(&p).unwrap();
            assert_eq!(gb.normalize(), p);
            gb
        };
        assert_eq!(single.bucket_count(), 1);
        let mut gb = Geobucket::<BigInt>::new(G, 3, 4, LcStrategy::ScanAll).unwrap();
        let mut fold = P::zero(G, 3);
        for _ in 0..50 {
            let n = rng.gen_range(0..10);
            let p = random_poly(&mut rng, G, n);
            gb.add(&p).unwrap();
            fold = fold.add(&p).unwrap();
        }
        assert!(gb.check_invariants());
        assert_eq!(gb.normalize(), fold);
    }

    #[test]
    fn strategies_agree_on_leading_term() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let mut a = Geobucket::<BigInt>::new(G, 3, 2, LcStrategy::ScanAll).unwrap();
            let mut b = Geobucket::<BigInt>::new(G, 3, 2, LcStrategy::LargestBucket).unwrap();
            for _ in 0..rng.gen_range(1..20) {
                let n = rng.gen_range(0..7);
                let p = random_poly(&mut rng, G, n);
                a.add(&p).unwrap();
                b.add(&p).unwrap();
                assert_eq!(a.leading_term(), b.leading_term());
            }
        }
    }

    #[test]
    fn order_mismatch_rejected() {
        let mut gb = Geobucket::<BigInt>::new(G, 1, 4, LcStrategy::ScanAll).unwrap();
        let p = P::one(MonomialOrder::Lex, 1);
        assert!(matches!(gb.add(&p), Err(PolyError::OrderMismatch { .. })));
    }

    /// Large sparse exponent space so that term combination is rare.
    fn sparse_triple(rng: &mut ChaCha8Rng) -> P {
        P::from_terms(
            G,
            3,
            (0..3).map(|_| {
                let e: Vec<u64> = (0..3).map(|_| rng.gen_range(0..1000)).collect();
                (ExponentVector::from_u64s(&e), BigInt::from(1))
            }),
        )
        .unwrap()
    }

    #[test]
    fn geobucket_beats_left_fold_and_gap_grows() {
        let mut last_ratio = 0.0;
        for log_n in 4..=10 {
            let n = 1usize << log_n;
            let mut rng = ChaCha8Rng::seed_from_u64(log_n);
            let inputs: Vec<P> = (0..n).map(|_| sparse_triple(&mut rng)).collect();
            let (fold, fold_cost) = measure(|| {
                inputs.iter().fold(P::zero(G, 3), |acc, p| acc.add(p).unwrap())
            });
            let (gb_sum, gb_cost) = measure(|| {
                let mut gb = Geobucket::new(G, 3, 4, LcStrategy::ScanAll).unwrap();
                for p in &inputs {
                    gb.add(p).unwrap();
                }
                gb.normalize()
            });
            assert_eq!(fold, gb_sum);
            let ratio = fold_cost.comparisons as f64 / gb_cost.comparisons as f64;
            if n >= 32 {
                assert!(gb_cost.comparisons < fold_cost.comparisons, "n={n}");
            }
            assert!(ratio > last_ratio * 0.95, "ratio should trend upward: n={n} {ratio} after {last_ratio}");
            last_ratio = ratio;
        }
        assert!(last_ratio > 10.0);
    }
}
