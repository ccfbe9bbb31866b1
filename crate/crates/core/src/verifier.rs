//! Ideal-membership certificate checking without building any product.
//!
//! A certificate claims `f = sum_i lambda_i * f_i`. Each product
//! `lambda_i * f_i` is kept unevaluated as a [`ProductStream`] whose heap side
//! is `f_i` and whose list side is `lambda_i`; `-f` joins as one more stream
//! with heap side the constant `-1`. An outer heap orders the streams by
//! their next monomial, so the terms of the residual
//! `sum_i lambda_i * f_i - f` arrive in order and are combined on the fly.
//! The certificate is valid iff every combined coefficient is zero. Nothing
//! is stored apart from the heap entries and one pending coefficient.

use std::cmp::Ordering;


use crate::coeff::Coefficient;
use crate::counters::{self, CounterScope, Op, OpCounters};
use crate::error::{PolyError, Result};
use crate::heap::SiftHeap;
use crate::heapmul::{Direction, ProductStream};
use crate::monomial::{ExponentVector, MonomialOrder};
use crate::poly::{Polynomial, Term};

/// A claimed identity `f = sum_i lambda_i * f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<C> {
    order: MonomialOrder,
    nvars: usize,
    f: Polynomial<C>,
    pairs: Vec<(Polynomial<C>, Polynomial<C>)>,
}

impl<C: Coefficient> Certificate<C> {
    /// `pairs` holds `(lambda_i, f_i)`; at least one pair is required and all
    /// polynomials must share order and dimension.
    pub fn new(f: Polynomial<C>, pairs: Vec<(Polynomial<C>, Polynomial<C>)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(PolyError::Certificate("at least one cofactor pair is required".into()));
        }
        let (order, nvars) = (f.order(), f.nvars());
        for (i, (l, g)) in pairs.iter().enumerate() {
            for (what, p) in [("lambda", l), ("g", g)] {
                if p.order() != order || p.nvars() != nvars {
                    return Err(PolyError::Certificate(format!(
                        "{what}[{}] uses {} in {} variables, expected {} in {}",
                        i + 1,
                        p.order(),
                        p.nvars(),
                        order,
                        nvars
                    )));
                }
            }
        }
        Ok(Certificate { order, nvars, f, pairs })
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn target(&self) -> &Polynomial<C> {
        &self.f
    }

    pub fn pairs(&self) -> &[(Polynomial<C>, Polynomial<C>)] {
        &self.pairs
    }

    /// Number of cofactor pairs.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Terms held by the inputs: `#f + sum_i (#lambda_i + #f_i)`.
    pub fn input_terms(&self) -> usize {
        self.f.term_count()
            + self
                .pairs
                .iter()
                .map(|(l, g)| l.term_count() + g.term_count())
                .sum::<usize>()
    }

    /// Largest product size `#lambda_i * #f_i` (an upper bound on its terms).
    pub fn largest_product_bound(&self) -> usize {
        self.pairs
            .iter()
            .map(|(l, g)| l.term_count() * g.term_count())
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Valid,
    Invalid,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyStats {
    pub counters: OpCounters,
    /// Peak number of terms held by the checker itself (inner heap entries,
    /// outer heap entries and the pending accumulator); inputs excluded.
    pub peak_live_terms: usize,
    pub max_outer_heap: usize,
    /// Largest inner heap seen, over all streams.
    pub max_inner_heap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyResult<C> {
    pub verdict: Verdict,
    /// First monomial, in scan direction, where the residual
    /// `sum_i lambda_i * f_i - f` is nonzero, with that coefficient.
    pub witness: Option<(ExponentVector, C)>,
    pub stats: VerifyStats,
}

impl<C> VerifyResult<C> {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }
}

/// Sum of several product streams, combined and emitted in direction order.
struct MergedSum<'a, C> {
    order: MonomialOrder,
    direction: Direction,
    streams: Vec<ProductStream<'a, C>>,
    outer: SiftHeap<usize>,
    pending: Option<(ExponentVector, C)>,
    peak_live: usize,
    max_outer: usize,
}

impl<'a, C: Coefficient> MergedSum<'a, C> {
    fn new(order: MonomialOrder, direction: Direction, streams: Vec<ProductStream<'a, C>>) -> Self {
        let mut m = MergedSum {
            order,
            direction,
            streams,
            outer: SiftHeap::new(),
            pending: None,
            peak_live: 0,
            max_outer: 0,
        };
        for i in 0..m.streams.len() {
            if !m.streams[i].is_empty() {
                let streams = &m.streams;
                m.outer.push(i, |a: &usize, b: &usize| Self::prio(order, direction, streams, *a, *b));
            }
        }
        m.max_outer = m.outer.len();
        m.note_live();
        m
    }

    fn prio(order: MonomialOrder, direction: Direction, streams: &[ProductStream<'a, C>], a: usize, b: usize) -> Ordering {
        let ka = streams[a].peek_key().expect("live stream");
        let kb = streams[b].peek_key().expect("live stream");
        direction.orient(order.compare(ka, kb)).then_with(|| b.cmp(&a))
    }

    fn note_live(&mut self) {
        let live = self.streams.iter().map(ProductStream::len).sum::<usize>()
            + self.outer.len()
            + usize::from(self.pending.is_some());
        self.peak_live = self.peak_live.max(live);
    }

    fn next_raw(&mut self) -> Option<(ExponentVector, C)> {
        let &i = self.outer.peek()?;
        let term = self.streams[i].next_term().expect("live stream");
        let (order, direction) = (self.order, self.direction);
        let streams = &self.streams;
        let prio = |a: &usize, b: &usize| Self::prio(order, direction, streams, *a, *b);
        if streams[i].is_empty() {
            self.outer.pop(prio);
        } else {
            self.outer.sift_down_root(prio);
        }
        Some(term)
    }

    /// Next monomial with nonzero combined coefficient.
    fn next_nonzero(&mut self) -> Option<Term<C>> {
        loop {
            let Some((m, c)) = self.next_raw() else {
                let (pm, pc) = self.pending.take()?;
                if pc.is_zero() {
                    return None;
                }
                return Some(Term::new_unchecked(pm, pc));
            };
            let flushed = match self.pending.take() {
                Some((pm, pc)) if self.order.compare(&pm, &m) == Ordering::Equal => {
                    counters::record(Op::CoeffAdd);
                    self.pending = Some((pm, pc + c));
                    None
                }
                Some(prev) => {
                    self.pending = Some((m, c));
                    Some(prev)
                }
                None => {
                    self.pending = Some((m, c));
                    None
                }
            };
            self.note_live();
            if let Some((pm, pc)) = flushed {
                if !pc.is_zero() {
                    return Some(Term::new_unchecked(pm, pc));
                }
            }
        }
    }

    fn max_inner(&self) -> usize {
        self.streams.iter().map(ProductStream::max_len).max().unwrap_or(0)
    }
}

fn product_streams<C: Coefficient>(cert: &Certificate<C>, direction: Direction) -> Vec<ProductStream<'_, C>> {
    cert.pairs
        .iter()
        .map(|(lambda, g)| ProductStream::new(cert.order, direction, g.terms(), vec![lambda.terms()]))
        .collect()
}

/// Checks `0 = -f + sum_i lambda_i * f_i` scanning from the greatest or the
/// smallest monomial. Stops at the first nonzero residual coefficient.
pub fn verify<C: Coefficient>(cert: &Certificate<C>, direction: Direction) -> VerifyResult<C> {
    let scope = CounterScope::open();
    let minus_one = [Term::new_unchecked(ExponentVector::zero(cert.nvars), -C::one())];
    let mut streams = product_streams(cert, direction);
    streams.push(ProductStream::new(cert.order, direction, &minus_one, vec![cert.f.terms()]));
    let mut sum = MergedSum::new(cert.order, direction, streams);
    let witness = sum.next_nonzero().map(Term::into_parts);
    let stats = VerifyStats {
        counters: OpCounters::default(),
        peak_live_terms: sum.peak_live,
        max_outer_heap: sum.max_outer,
        max_inner_heap: sum.max_inner(),
    };
    drop(sum);
    VerifyResult {
        verdict: if witness.is_none() { Verdict::Valid } else { Verdict::Invalid },
        witness,
        stats: VerifyStats {
            counters: scope.close(),
            ..stats
        },
    }
}

/// Materializes `sum_i lambda_i * f_i` greatest term first, ignoring `f`.
pub fn combine<C: Coefficient>(cert: &Certificate<C>) -> Polynomial<C> {
    let mut sum = MergedSum::new(cert.order, Direction::MaxFirst, product_streams(cert, Direction::MaxFirst));
    let mut terms = Vec::new();
    while let Some(t) = sum.next_nonzero() {
        terms.push(t);
    }
    Polynomial::from_sorted_unchecked(cert.order, cert.nvars, terms)
}

/// Reference check by plain arithmetic: `sum_i lambda_i * f_i - f` computed
/// with schoolbook products and merge additions. The witness is the greatest
/// residual term.
pub fn verify_naive<C: Coefficient>(cert: &Certificate<C>) -> VerifyResult<C> {
    let scope = CounterScope::open();
    let mut acc = Polynomial::zero(cert.order, cert.nvars);
    let mut peak = 0;
    for (lambda, g) in &cert.pairs {
        let prod = lambda.mul_naive(g).expect("certificate is consistent");
        peak = peak.max(prod.term_count() + acc.term_count());
        acc = acc.add(&prod).expect("certificate is consistent");
    }
    let residual = acc.sub(&cert.f).expect("certificate is consistent");
    peak = peak.max(residual.term_count());
    let witness = residual
        .leading_term()
        .ok()
        .map(|t| (t.monomial().clone(), t.coeff().clone()));
    VerifyResult {
        verdict: if witness.is_none() { Verdict::Valid } else { Verdict::Invalid },
        witness,
        stats: VerifyStats {
            counters: scope.close(),
            peak_live_terms: peak,
            max_outer_heap: 0,
            max_inner_heap: 0,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const G: MonomialOrder = MonomialOrder::Grlex;
    type P = Polynomial<BigInt>;

    fn uni(terms: &[(u64, i64)]) -> P {
        P::from_terms(
            G,
            1,
            terms.iter().map(|&(e, c)| (ExponentVector::from_u64s(&[e]), BigInt::from(c))),
        )
        .unwrap()
    }

    #[test]
    fn identity_certificate_is_valid() {
        let g = uni(&[(3, 2), (1, -1), (0, 5)]);
        let cert = Certificate::new(g.clone(), vec![(P::one(G, 1), g)]).unwrap();
        for d in [Direction::MaxFirst, Direction::MinFirst] {
            let r = verify(&cert, d);
            assert!(r.is_valid());
            assert_eq!(r.stats.counters.heap_extractions, 6);
        }
        assert!(verify_naive(&cert).is_valid());
    }

    #[test]
    fn off_by_constant_reports_constant_witness() {
        let cert = Certificate::new(uni(&[(1, 1)]), vec![(P::one(G, 1), uni(&[(1, 1), (0, 1)]))]).unwrap();
        for d in [Direction::MaxFirst, Direction::MinFirst] {
            let r = verify(&cert, d);
            assert_eq!(r.verdict, Verdict::Invalid);
            assert_eq!(r.witness, Some((ExponentVector::zero(1), BigInt::from(1))));
        }
        assert_eq!(verify_naive(&cert).verdict, Verdict::Invalid);
    }

    #[test]
    fn empty_combination_of_zero() {
        let cert = Certificate::new(P::zero(G, 1), vec![(P::zero(G, 1), uni(&[(1, 1)]))]).unwrap();
        assert!(verify(&cert, Direction::MaxFirst).is_valid());
        assert!(verify_naive(&cert).is_valid());
    }

    #[test]
    fn combine_examples() {
        let g = uni(&[(2, 1), (0, -3)]);
        let one = Certificate::new(P::zero(G, 1), vec![(P::one(G, 1), g.clone())]).unwrap();
        assert_eq!(combine(&one), g);
        let l = uni(&[(1, 1), (0, 2)]);
        let cancel = Certificate::new(P::zero(G, 1), vec![(l.clone(), g.clone()), (-&l, g)]).unwrap();
        assert!(combine(&cancel).is_zero());
    }

    #[test]
    fn rejects_mixed_shapes() {
        let a = uni(&[(1, 1)]);
        let b = P::one(MonomialOrder::Lex, 1);
        assert!(Certificate::new(a.clone(), vec![(b, a.clone())]).is_err());
        let c = P::one(G, 2);
        assert!(Certificate::new(a.clone(), vec![(a.clone(), c)]).is_err());
        assert!(Certificate::new(a, vec![]).is_err());
    }

    #[test]
    fn outer_heap_bounded_by_streams() {
        let g = uni(&[(4, 1), (2, 1), (0, 1)]);
        let l = uni(&[(3, 1), (1, -1)]);
        let f = l.mul_naive(&g).unwrap().add(&g.mul_naive(&g).unwrap()).unwrap();
        let cert = Certificate::new(f, vec![(l, g.clone()), (g.clone(), g)]).unwrap();
        let r = verify(&cert, Direction::MaxFirst);
        assert!(r.is_valid());
        assert!(r.stats.max_outer_heap <= 3);
        assert!(r.stats.max_inner_heap <= 3);
    }
}
