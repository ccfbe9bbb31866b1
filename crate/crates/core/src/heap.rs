//! Array-backed binary heap with a caller-supplied priority.
//!
//! The comparator is passed to every mutating call instead of being stored,
//! so entries can be keyed by state the heap does not own (the verifier keys
//! its outer heap by the current head of each inner heap).

use std::cmp::Ordering;

#[derive(Debug, Clone)]
pub struct SiftHeap<T> {
    items: Vec<T>,
}

impl<T> Default for SiftHeap<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> SiftHeap<T> {
    pub fn new() -> Self {
        SiftHeap { items: Vec::new() }
    }

    pub fn with_capacity(n: usize) -> Self {
        SiftHeap {
            items: Vec::with_capacity(n),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn peek(&self) -> Option<&T> {
        self.items.first()
    }

    pub fn peek_mut(&mut self) -> Option<&mut T> {
        self.items.first_mut()
    }

    /// `prio(a, b) == Greater` means `a` belongs nearer the root.
    pub fn push<F>(&mut self, item: T, prio: F)
    where
        F: Fn(&T, &T) -> Ordering,
    {
        self.items.push(item);
        self.sift_up(self.items.len() - 1, &prio);
    }

    pub fn pop<F>(&mut self, prio: F) -> Option<T>
    where
        F: Fn(&T, &T) -> Ordering,
    {
        let last = self.items.pop()?;
        if self.items.is_empty() {
            return Some(last);
        }
        let top = std::mem::replace(&mut self.items[0], last);
        self.sift_down(0, &prio);
        Some(top)
    }

    /// Restores the heap after the root's priority dropped in place.
    pub fn sift_down_root<F>(&mut self, prio: F)
    where
        F: Fn(&T, &T) -> Ordering,
    {
        if !self.items.is_empty() {
            self.sift_down(0, &prio);
        }
    }

    fn sift_up<F>(&mut self, mut i: usize, prio: &F)
    where
        F: Fn(&T, &T) -> Ordering,
    {
        while i > 0 {
            let parent = (i - 1) / 2;
            if prio(&self.items[i], &self.items[parent]) != Ordering::Greater {
                break;
            }
            self.items.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down<F>(&mut self, mut i: usize, prio: &F)
    where
        F: Fn(&T, &T) -> Ordering,
    {
        let n = self.items.len();
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let child = if right < n && prio(&self.items[right], &self.items[left]) == Ordering::Greater {
                right
            } else {
                left
            };
            if prio(&self.items[child], &self.items[i]) != Ordering::Greater {
                break;
            }
            self.items.swap(i, child);
            i = child;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.items.iter()
    }
}
