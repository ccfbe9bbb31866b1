//! Distributed sparse polynomials stored as strictly decreasing term lists.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::coeff::{ensure_nontrivial, Coefficient};
use crate::counters::{self, Op};
use crate::error::{PolyError, Result};
use crate::monomial::{check_dim, ExponentVector, MonomialOrder};

/// A monomial with a nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term<C> {
    monomial: ExponentVector,
    coeff: C,
}

impl<C: Coefficient> Term<C> {
    pub fn new(monomial: ExponentVector, coeff: C) -> Result<Self> {
        if coeff.is_zero() {
            return Err(PolyError::ZeroCoefficient(0));
        }
        Ok(Term { monomial, coeff })
    }

    pub(crate) fn new_unchecked(monomial: ExponentVector, coeff: C) -> Self {
        debug_assert!(!coeff.is_zero());
        Term { monomial, coeff }
    }

    pub fn monomial(&self) -> &ExponentVector {
        &self.monomial
    }

    pub fn coeff(&self) -> &C {
        &self.coeff
    }

    pub fn into_parts(self) -> (ExponentVector, C) {
        (self.monomial, self.coeff)
    }

    /// Product of two terms; `None` if the coefficients multiply to zero.
    pub(crate) fn mul(&self, other: &Self) -> Option<Self> {
        counters::record(Op::CoeffMul);
        let c = self.coeff.clone() * &other.coeff;
        (!c.is_zero()).then(|| Term::new_unchecked(self.monomial.mul_unchecked(&other.monomial), c))
    }
}

/// A polynomial in a fixed number of variables under a fixed monomial order.
///
/// Terms are kept strictly decreasing under the order with no zero
/// coefficients; the empty list is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<C> {
    order: MonomialOrder,
    nvars: usize,
    terms: Vec<Term<C>>,
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(order: MonomialOrder, nvars: usize) -> Self {
        Polynomial {
            order,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(order: MonomialOrder, nvars: usize, c: C) -> Self {
        let mut p = Self::zero(order, nvars);
        if !c.is_zero() {
            p.terms.push(Term::new_unchecked(ExponentVector::zero(nvars), c));
        }
        p
    }

    pub fn one(order: MonomialOrder, nvars: usize) -> Self {
        Self::constant(order, nvars, C::one())
    }

    /// Normalizing constructor: sorts, combines equal monomials and drops
    /// zeros.
    pub fn from_terms<I>(order: MonomialOrder, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
    {
        ensure_nontrivial::<C>()?;
        let mut raw = Vec::new();
        for (m, c) in terms {
            check_dim(nvars, m.dim())?;
            if !c.is_zero() {
                raw.push((m, c));
            }
        }
        raw.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<Term<C>> = Vec::with_capacity(raw.len());
        let mut pending: Option<(ExponentVector, C)> = None;
        for (m, c) in raw {
            pending = match pending {
                Some((pm, pc)) if pm == m => {
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
        Ok(Polynomial {
            order,
            nvars,
            terms: out,
        })
    }

    /// Wraps a term list the caller guarantees is well-formed.
    pub(crate) fn from_sorted_unchecked(order: MonomialOrder, nvars: usize, terms: Vec<Term<C>>) -> Self {
        let p = Polynomial { order, nvars, terms };
        debug_assert!(p.is_well_formed());
        p
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<C>> {
        self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Result<&Term<C>> {
        self.terms.first().ok_or(PolyError::EmptyPolynomial)
    }

    pub fn trailing_term(&self) -> Result<&Term<C>> {
        self.terms.last().ok_or(PolyError::EmptyPolynomial)
    }

    /// Coefficient of `m`, zero if absent.
    pub fn coeff_of(&self, m: &ExponentVector) -> C {
        self.terms
            .iter()
            .find(|t| t.monomial == *m)
            .map_or_else(C::zero, |t| t.coeff.clone())
    }

    /// Checks strict sortedness, nonzero coefficients and dimensions.
    /// Performs uncounted comparisons.
    pub fn is_well_formed(&self) -> bool {
        terms_well_formed(self.order, self.nvars, &self.terms)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(PolyError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        check_dim(self.nvars, other.nvars)
    }

    /// Merge addition. For disjoint supports of sizes m and n this uses at
    /// most m+n-1 monomial comparisons.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Polynomial {
            order: self.order,
            nvars: self.nvars,
            terms: merge_add(self.order, &self.terms, &other.terms),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        Polynomial {
            order: self.order,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|t| Term::new_unchecked(t.monomial.clone(), -t.coeff.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                counters::record(Op::CoeffMul);
                let v = t.coeff.clone() * c;
                (!v.is_zero()).then(|| Term::new_unchecked(t.monomial.clone(), v))
            })
            .collect();
        Polynomial {
            order: self.order,
            nvars: self.nvars,
            terms,
        }
    }

    /// Multiplies every term by `t`; order is preserved because monomial
    /// orders are compatible with multiplication.
    pub fn mul_term(&self, t: &Term<C>) -> Result<Self> {
        check_dim(self.nvars, t.monomial.dim())?;
        let terms = self.terms.iter().filter_map(|s| s.mul(t)).collect();
        Ok(Polynomial::from_sorted_unchecked(self.order, self.nvars, terms))
    }

    /// Schoolbook product: accumulates `q * p_i` for every term of `self`
    /// with merge addition.
    pub fn mul_naive(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc = Polynomial::zero(self.order, self.nvars);
        for t in &self.terms {
            let row = other.mul_term(t)?;
            acc = acc.add(&row)?;
        }
        Ok(acc)
    }

    /// Resorts the terms under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.monomial, &a.monomial));
        Polynomial {
            order,
            nvars: self.nvars,
            terms,
        }
    }

    /// Evaluates at a point. Exponents must fit in `u64`.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        check_dim(self.nvars, point.len())?;
        let mut sum = C::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (x, e) in point.iter().zip(t.monomial.exponents()) {
                v = v * pow(x, e)?;
            }
            sum = sum + v;
        }
        Ok(sum)
    }
}

fn pow<C: Coefficient>(x: &C, e: &BigUint) -> Result<C> {
    let e = e
        .to_u64()
        .ok_or_else(|| PolyError::ExponentOverflow(e.to_string()))?;
    Ok(pow_u64(x, e))
}

pub(crate) fn pow_u64<C: Coefficient>(x: &C, mut e: u64) -> C {
    let mut base = x.clone();
    let mut acc = C::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * &base;
        }
        base = base.clone() * &base;
        e >>= 1;
    }
    acc
}

impl<C: Coefficient> std::ops::Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        self.negate()
    }
}

pub(crate) fn terms_well_formed<C: Coefficient>(order: MonomialOrder, nvars: usize, terms: &[Term<C>]) -> bool {
    counters::uncounted(|| {
        terms.iter().all(|t| !t.coeff.is_zero() && t.monomial.dim() == nvars)
            && terms
                .windows(2)
                .all(|w| order.compare(&w[0].monomial, &w[1].monomial) == Ordering::Greater)
    })
}

/// Merges two strictly decreasing term lists, combining equal monomials.
pub(crate) fn merge_add<C: Coefficient>(order: MonomialOrder, a: &[Term<C>], b: &[Term<C>]) -> Vec<Term<C>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    #[cfg(debug_assertions)]
    let mut variant = a.len() + b.len() + 1;
    while i < a.len() && j < b.len() {
        #[cfg(debug_assertions)]
        {
            let now = (a.len() - i) + (b.len() - j);
            debug_assert!(now < variant, "merge made no progress");
            variant = now;
        }
        match order.compare(&a[i].monomial, &b[j].monomial) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                counters::record(Op::CoeffAdd);
                let c = a[i].coeff.clone() + &b[j].coeff;
                if !c.is_zero() {
                    out.push(Term::new_unchecked(a[i].monomial.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
