//! Heap-merged sparse multiplication.
//!
//! The product `f * g` is the merge of the `#f` sorted streams
//! `f_i * g`. A binary heap holds the current head of every stream, keyed by
//! monomial; after extracting `f_i * g_j` the stream's next term
//! `f_i * g_(j+1)` takes its place. The heap never holds more than `#f`
//! entries, every one of the `#f * #g` products is extracted exactly once,
//! and the output comes out greatest monomial first, so it is appended
//! without any further sorting.
//!
//! When `g` lives in a [`Geobucket`] the list side can be the normalized
//! polynomial, each bucket separately, or a mix; see [`GbRoute`].

use std::cmp::Ordering;


use crate::coeff::Coefficient;
use crate::counters::{self, Op};
use crate::error::{PolyError, Result};
use crate::geobucket::Geobucket;
use crate::heap::SiftHeap;
use crate::monomial::{check_dim, ExponentVector, MonomialOrder};
use crate::poly::{merge_add, Polynomial, Term};

/// Which end of the product a stream starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Greatest monomial first.
    MaxFirst,
    /// Smallest monomial first: the term lists are walked from the tail.
    MinFirst,
}

impl Direction {
    /// Orients a monomial comparison so that `Greater` means "comes first".
    #[inline]
    pub fn orient(self, ord: Ordering) -> Ordering {
        match self {
            Direction::MaxFirst => ord,
            Direction::MinFirst => ord.reverse(),
        }
    }
}

#[derive(Debug, Clone)]
struct StreamEntry {
    key: ExponentVector,
    heap_index: usize,
    list: usize,
    cursor: usize,
}

/// The unevaluated product of a heap side and one or more list sides,
/// producing its (uncombined) terms in direction order.
///
/// Each heap-side term `a` contributes one stream per list, `a * list`; a
/// stream is a cursor into the list, so advancing it costs nothing beyond
/// one monomial product.
#[derive(Debug)]
pub struct ProductStream<'a, C> {
    order: MonomialOrder,
    direction: Direction,
    heap_side: &'a [Term<C>],
    lists: Vec<&'a [Term<C>]>,
    heap: SiftHeap<StreamEntry>,
    max_len: usize,
}

impl<'a, C: Coefficient> ProductStream<'a, C> {
    pub fn new(order: MonomialOrder, direction: Direction, heap_side: &'a [Term<C>], lists: Vec<&'a [Term<C>]>) -> Self {
        let mut s = ProductStream {
            order,
            direction,
            heap_side,
            lists,
            heap: SiftHeap::new(),
            max_len: 0,
        };
        for heap_index in 0..s.heap_side.len() {
            for list in 0..s.lists.len() {
                if !s.lists[list].is_empty() {
                    let key = s.key_of(heap_index, list, 0);
                    let entry = StreamEntry {
                        key,
                        heap_index,
                        list,
                        cursor: 0,
                    };
                    let prio = s.priority();
                    s.heap.push(entry, prio);
                }
            }
        }
        s.max_len = s.heap.len();
        s
    }

    fn term(&self, slice: &'a [Term<C>], pos: usize) -> &'a Term<C> {
        match self.direction {
            Direction::MaxFirst => &slice[pos],
            Direction::MinFirst => &slice[slice.len() - 1 - pos],
        }
    }

    fn key_of(&self, heap_index: usize, list: usize, cursor: usize) -> ExponentVector {
        let a = self.term(self.heap_side, heap_index);
        let b = self.term(self.lists[list], cursor);
        a.monomial().mul_unchecked(b.monomial())
    }

    fn priority(&self) -> impl Fn(&StreamEntry, &StreamEntry) -> Ordering {
        let (order, direction) = (self.order, self.direction);
        move |a, b| {
            direction
                .orient(order.compare(&a.key, &b.key))
                .then_with(|| (b.heap_index, b.list).cmp(&(a.heap_index, a.list)))
        }
    }

    /// Key of the next term, if any.
    pub fn peek_key(&self) -> Option<&ExponentVector> {
        self.heap.peek().map(|e| &e.key)
    }

    /// Current number of heap entries.
    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    /// Largest heap size seen so far.
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Extracts the next product term and advances its stream.
    pub fn next_term(&mut self) -> Option<(ExponentVector, C)> {
        let top = self.heap.peek()?.clone();
        counters::record(Op::HeapExtraction);
        counters::record(Op::CoeffMul);
        let coeff = self.term(self.heap_side, top.heap_index).coeff().clone()
            * self.term(self.lists[top.list], top.cursor).coeff();
        let next = top.cursor + 1;
        let prio = self.priority();
        if next < self.lists[top.list].len() {
            let key = self.key_of(top.heap_index, top.list, next);
            let root = self.heap.peek_mut().expect("nonempty");
            root.key = key;
            root.cursor = next;
            self.heap.sift_down_root(prio);
        } else {
            self.heap.pop(prio);
        }
        Some((top.key, coeff))
    }
}

/// Sizes observed during a heap multiplication.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MulStats {
    pub max_heap: usize,
    /// Initial number of streams.
    pub streams: usize,
}

/// Drains a stream, combining equal monomials, into a term list in stream
/// order.
fn collect_combined<C: Coefficient>(order: MonomialOrder, stream: &mut ProductStream<'_, C>) -> Vec<Term<C>> {
    let mut out = Vec::new();
    let mut pending: Option<(ExponentVector, C)> = None;
    while let Some((m, c)) = stream.next_term() {
        pending = match pending {
            Some((pm, pc)) if order.compare(&pm, &m) == Ordering::Equal => {
                counters::record(Op::CoeffAdd);
                Some((pm, pc + c))
            }
            Some((pm, pc)) => {
                if !pc.is_zero() {
                    out.push(Term::new_unchecked(pm, pc));
                }
                Some((m, c))
            }
            None => Some((m, c)),
        };
    }
    if let Some((pm, pc)) = pending {
        if !pc.is_zero() {
            out.push(Term::new_unchecked(pm, pc));
        }
    }
    out
}

fn check_pair<C: Coefficient>(f: &Polynomial<C>, order: MonomialOrder, nvars: usize) -> Result<()> {
    if f.order() != order {
        return Err(PolyError::OrderMismatch {
            left: f.order(),
            right: order,
        });
    }
    check_dim(f.nvars(), nvars)
}

/// `f * g` by heap merge of the `#f` streams `f_i * g`.
///
/// `f` is always the heap side; pass the longer operand as `g`.
pub fn mul_heap<C: Coefficient>(f: &Polynomial<C>, g: &Polynomial<C>) -> Result<Polynomial<C>> {
    mul_heap_with_stats(f, g).map(|(p, _)| p)
}

pub fn mul_heap_with_stats<C: Coefficient>(f: &Polynomial<C>, g: &Polynomial<C>) -> Result<(Polynomial<C>, MulStats)> {
    check_pair(f, g.order(), g.nvars())?;
    Ok(mul_lists(f, vec![g.terms()]))
}

fn mul_lists<C: Coefficient>(f: &Polynomial<C>, lists: Vec<&[Term<C>]>) -> (Polynomial<C>, MulStats) {
    let mut stream = ProductStream::new(f.order(), Direction::MaxFirst, f.terms(), lists);
    let streams = stream.len();
    let terms = collect_combined(f.order(), &mut stream);
    let stats = MulStats {
        max_heap: stream.max_len(),
        streams,
    };
    (Polynomial::from_sorted_unchecked(f.order(), f.nvars(), terms), stats)
}

/// How a geobucket operand feeds the heap multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GbRoute {
    /// Normalize the geobucket to one list first.
    ConvertFirst,
    /// One stream per (term of `f`, nonempty bucket).
    PerBucketStreams,
    /// Buckets with at most `threshold` terms are added together into one
    /// list; larger buckets get their own streams.
    Hybrid { threshold: usize },
}

/// Default size below which [`GbRoute::Hybrid`] merges buckets.
pub const DEFAULT_HYBRID_THRESHOLD: usize = 16;

pub fn mul_heap_gb<C: Coefficient>(f: &Polynomial<C>, g: &Geobucket<C>, route: GbRoute) -> Result<Polynomial<C>> {
    mul_heap_gb_with_stats(f, g, route).map(|(p, _)| p)
}

pub fn mul_heap_gb_with_stats<C: Coefficient>(
    f: &Polynomial<C>,
    g: &Geobucket<C>,
    route: GbRoute,
) -> Result<(Polynomial<C>, MulStats)> {
    check_pair(f, g.order(), g.nvars())?;
    Ok(match route {
        GbRoute::ConvertFirst => {
            let flat = g.normalize();
            mul_lists(f, vec![flat.terms()])
        }
        GbRoute::PerBucketStreams => mul_lists(f, g.nonempty_buckets().collect()),
        GbRoute::Hybrid { threshold } => {
            let mut small: Vec<Term<C>> = Vec::new();
            let mut large = Vec::new();
            for b in g.nonempty_buckets() {
                if b.len() <= threshold {
                    small = merge_add(g.order(), &small, b);
                } else {
                    large.push(b);
                }
            }
            let mut lists: Vec<&[Term<C>]> = Vec::with_capacity(large.len() + 1);
            if !small.is_empty() {
                lists.push(&small);
            }
            lists.extend(large);
            mul_lists(f, lists)
        }
    })
}
