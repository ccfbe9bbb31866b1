//! Scoped operation counters.
//!
//! Counting is thread-local: a [`CounterScope`] pushes a fresh set of
//! counters for the current thread and every instrumented operation run on
//! that thread increments all open scopes. Scopes nest, so an outer scope
//! sees everything its inner scopes saw.

use std::cell::{Cell, RefCell};
use std::fmt;
use std::marker::PhantomData;
use std::ops::AddAssign;

/// Operation counts collected inside a [`CounterScope`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounters {
    /// Monomial order comparisons.
    pub comparisons: u64,
    pub coeff_adds: u64,
    pub coeff_muls: u64,
    /// Extractions from product-stream heaps.
    pub heap_extractions: u64,
}

impl AddAssign for OpCounters {
    fn add_assign(&mut self, rhs: Self) {
        self.comparisons += rhs.comparisons;
        self.coeff_adds += rhs.coeff_adds;
        self.coeff_muls += rhs.coeff_muls;
        self.heap_extractions += rhs.heap_extractions;
    }
}

impl fmt::Display for OpCounters {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "comparisons={} coeff_adds={} coeff_muls={} heap_extractions={}",
            self.comparisons, self.coeff_adds, self.coeff_muls, self.heap_extractions
        )
    }
}

#[derive(Clone, Copy)]
pub(crate) enum Op {
    Comparison,
    CoeffAdd,
    CoeffMul,
    HeapExtraction,
}

thread_local! {
    static STACK: RefCell<Vec<OpCounters>> = const { RefCell::new(Vec::new()) };
    static PAUSED: Cell<bool> = const { Cell::new(false) };
}

#[inline]
pub(crate) fn record(op: Op) {
    if PAUSED.with(Cell::get) {
        return;
    }
    STACK.with(|stack| {
        let mut stack = stack.borrow_mut();
        for c in stack.iter_mut() {
            match op {
                Op::Comparison => c.comparisons += 1,
                Op::CoeffAdd => c.coeff_adds += 1,
                Op::CoeffMul => c.coeff_muls += 1,
                Op::HeapExtraction => c.heap_extractions += 1,
            }
        }
    });
}

/// Runs `f` without recording anything (validators, invariant checks).
pub(crate) fn uncounted<T>(f: impl FnOnce() -> T) -> T {
    let was = PAUSED.with(|p| p.replace(true));
    let out = f();
    PAUSED.with(|p| p.set(was));
    out
}

/// An open instrumentation scope on the current thread.
///
/// Scopes must be closed in LIFO order; dropping a scope closes it.
pub struct CounterScope {
    depth: usize,
    closed: bool,
    // thread-local state: keep the guard on its thread
    _not_send: PhantomData<*const ()>,
}

impl CounterScope {
    pub fn open() -> Self {
        let depth = STACK.with(|s| {
            let mut s = s.borrow_mut();
            s.push(OpCounters::default());
            s.len()
        });
        CounterScope {
            depth,
            closed: false,
            _not_send: PhantomData,
        }
    }

    /// Counts accumulated so far.
    pub fn snapshot(&self) -> OpCounters {
        STACK.with(|s| s.borrow()[self.depth - 1])
    }

    pub fn close(mut self) -> OpCounters {
        self.pop()
    }

    fn pop(&mut self) -> OpCounters {
        self.closed = true;
        STACK.with(|s| {
            let mut s = s.borrow_mut();
            assert_eq!(s.len(), self.depth, "counter scopes closed out of order");
            s.pop().unwrap_or_default()
        })
    }
}

impl Drop for CounterScope {
    fn drop(&mut self) {
        if !self.closed {
            self.pop();
        }
    }
}

/// Runs `f` inside a fresh scope and returns its result with the counts.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, OpCounters) {
    let scope = CounterScope::open();
    let out = f();
    (out, scope.close())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_scopes_accumulate_outward() {
        let outer = CounterScope::open();
        record(Op::Comparison);
        let ((), inner) = measure(|| {
            record(Op::Comparison);
            record(Op::CoeffMul);
        });
        assert_eq!(inner.comparisons, 1);
        assert_eq!(inner.coeff_muls, 1);
        let total = outer.close();
        assert_eq!(total.comparisons, 2);
        assert_eq!(total.coeff_muls, 1);
    }

    #[test]
    fn recording_without_scope_is_a_noop() {
        record(Op::HeapExtraction);
        let ((), c) = measure(|| ());
        assert_eq!(c, OpCounters::default());
    }
}
