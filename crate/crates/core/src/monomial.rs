//! Variables, exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::counters::{self, Op};
use crate::error::{PolyError, Result};

/// An ordered, duplicate-free list of variable names.
///
/// Position fixes precedence: the first variable is the most significant
/// under `lex` and is the main variable of recursive forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
}

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(PolyError::VariableSet("no variables".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(PolyError::VariableSet(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(PolyError::VariableSet(format!("duplicate variable {n:?}")));
            }
        }
        Ok(VariableSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Builds an exponent vector, checking the length against this set.
    pub fn monomial<E: Into<BigUint> + Clone>(&self, exponents: &[E]) -> Result<ExponentVector> {
        if exponents.len() != self.len() {
            return Err(PolyError::Dimension {
                expected: self.len(),
                found: exponents.len(),
            });
        }
        Ok(ExponentVector::new(exponents.iter().cloned().map(Into::into)))
    }

    /// Canonical text of a monomial: `x^2*y`, or `1` for the unit monomial.
    pub fn format_monomial(&self, m: &ExponentVector) -> String {
        let mut out = String::new();
        for (name, e) in self.names.iter().zip(m.exponents()) {
            if e.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(name);
            if *e != BigUint::from(1u32) {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponents of a monomial with its cached total degree.
///
/// Exponents are unbounded naturals, so `x^1000000000` and beyond are fine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    exps: Box<[BigUint]>,
    total: BigUint,
}

impl ExponentVector {
    pub fn new(exponents: impl IntoIterator<Item = BigUint>) -> Self {
        let exps: Box<[BigUint]> = exponents.into_iter().collect();
        let total = exps.iter().sum();
        ExponentVector { exps, total }
    }

    pub fn from_u64s(exponents: &[u64]) -> Self {
        Self::new(exponents.iter().map(|&e| BigUint::from(e)))
    }

    /// The unit monomial in `nvars` variables.
    pub fn zero(nvars: usize) -> Self {
        ExponentVector {
            exps: vec![BigUint::zero(); nvars].into_boxed_slice(),
            total: BigUint::zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[BigUint] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> &BigUint {
        &self.exps[var]
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn is_unit(&self) -> bool {
        self.total.is_zero()
    }

    /// Recomputes the total degree from scratch and compares with the cache.
    pub fn total_is_consistent(&self) -> bool {
        self.exps.iter().sum::<BigUint>() == self.total
    }

    /// Monomial product.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        ExponentVector {
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
            total: &self.total + &other.total,
        }
    }

    /// Same vector with exponent `var` replaced.
    pub(crate) fn with_exponent(&self, var: usize, value: BigUint) -> Self {
        let mut exps = self.exps.clone();
        let old = std::mem::replace(&mut exps[var], value);
        let total = &self.total - old + &exps[var];
        ExponentVector { exps, total }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(PolyError::Dimension { expected, found })
    }
}

/// Total orders on monomials compatible with multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Lexicographic; earlier variables dominate.
    Lex,
    /// Total degree, ties broken lexicographically.
    Grlex,
    /// Total degree, ties broken by the smaller exponent in the last
    /// differing variable winning.
    Grevlex,
}

impl MonomialOrder {
    pub const ALL: [MonomialOrder; 3] = [MonomialOrder::Lex, MonomialOrder::Grlex, MonomialOrder::Grevlex];

    /// Compares two monomials of equal dimension. Counts one comparison.
    #[inline]
    pub fn compare(self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        debug_assert_eq!(a.dim(), b.dim());
        counters::record(Op::Comparison);
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Grlex => a.total.cmp(&b.total).then_with(|| lex(a, b)),
            MonomialOrder::Grevlex => a.total.cmp(&b.total).then_with(|| revlex(a, b)),
        }
    }

    /// As [`compare`](Self::compare) but rejects mismatched dimensions.
    pub fn try_compare(self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        check_dim(a.dim(), b.dim())?;
        Ok(self.compare(a, b))
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grlex => "grlex",
            MonomialOrder::Grevlex => "grevlex",
        }
    }
}

fn lex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    a.exps.iter().cmp(b.exps.iter())
}

fn revlex(a: &ExponentVector, b: &ExponentVector) -> Ordering {
    for (x, y) in a.exps.iter().rev().zip(b.exps.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "lex" | "plex" => Ok(MonomialOrder::Lex),
            "grlex" | "deglex" => Ok(MonomialOrder::Grlex),
            "grevlex" | "degrevlex" => Ok(MonomialOrder::Grevlex),
            other => Err(format!("unknown monomial order {other:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev(e: &[u64]) -> ExponentVector {
        ExponentVector::from_u64s(e)
    }

    #[test]
    fn make_caches_total() {
        let vars = VariableSet::new(["p", "x", "y"]).unwrap();
        assert_eq!(*vars.monomial(&[1u32, 0, 0]).unwrap().total(), 1u32.into());
        assert!(vars.monomial(&[0u32, 0, 0]).unwrap().is_unit());
        // p^12 x^2
        assert_eq!(*vars.monomial(&[12u32, 2, 0]).unwrap().total(), 14u32.into());
        assert_eq!(
            vars.monomial(&[1u32, 2]),
            Err(PolyError::Dimension { expected: 3, found: 2 })
        );
    }

    #[test]
    fn variable_set_validation() {
        assert!(VariableSet::new(Vec::<String>::new()).is_err());
        assert!(VariableSet::new(["x", "x"]).is_err());
        assert!(VariableSet::new(["x", "2y"]).is_err());
        assert!(VariableSet::new(["x1", "_t"]).is_ok());
    }

    #[test]
    fn monomial_product() {
        assert_eq!(ev(&[1, 0]).try_add(&ev(&[0, 1])).unwrap(), ev(&[1, 1]));
        let a = ev(&[4, 9, 2]);
        assert_eq!(a.try_add(&ExponentVector::zero(3)).unwrap(), a);
        let s = ev(&[2, 3]).try_add(&ev(&[5, 7])).unwrap();
        assert_eq!(s, ev(&[7, 10]));
        assert_eq!(*s.total(), 17u32.into());
        assert!(ev(&[1]).try_add(&ev(&[1, 2])).is_err());
    }

    #[test]
    fn huge_exponents_do_not_overflow() {
        let big = BigUint::from(u64::MAX);
        let a = ExponentVector::new([big.clone(), big.clone()]);
        let b = a.try_add(&a).unwrap();
        assert_eq!(*b.total(), big * 4u32);
        assert!(b.total_is_consistent());
    }

    #[test]
    fn compare_examples() {
        use MonomialOrder::*;
        // x before y
        assert_eq!(Grlex.compare(&ev(&[1, 0]), &ev(&[0, 1])), Ordering::Greater);
        assert_eq!(Lex.compare(&ev(&[0, 1]), &ev(&[1, 0])), Ordering::Less);
        for o in MonomialOrder::ALL {
            assert_eq!(o.compare(&ev(&[3, 1]), &ev(&[3, 1])), Ordering::Equal);
        }
        assert!(Lex.try_compare(&ev(&[1]), &ev(&[1, 0])).is_err());
    }

    #[test]
    fn grlex_and_grevlex_differ_where_expected() {
        // x*z^2 vs y^3 in three variables: grlex compares x first
        let a = ev(&[1, 0, 2]);
        let b = ev(&[0, 3, 0]);
        assert_eq!(MonomialOrder::Grlex.compare(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.compare(&a, &b), Ordering::Less);
        // x^2 vs x*y^5: lex follows x, graded follow degree
        let c = ev(&[2, 0, 0]);
        let d = ev(&[1, 5, 0]);
        assert_eq!(MonomialOrder::Lex.compare(&c, &d), Ordering::Greater);
        assert_eq!(MonomialOrder::Grlex.compare(&c, &d), Ordering::Less);
    }

    #[test]
    fn order_names_round_trip() {
        for o in MonomialOrder::ALL {
            assert_eq!(o.name().parse::<MonomialOrder>().unwrap(), o);
        }
        assert!("elim".parse::<MonomialOrder>().is_err());
    }

    #[test]
    fn format_monomial() {
        let vars = VariableSet::new(["x", "y"]).unwrap();
        assert_eq!(vars.format_monomial(&ev(&[2, 1])), "x^2*y");
        assert_eq!(vars.format_monomial(&ev(&[0, 0])), "1");
    }

    fn arb_ev() -> impl Strategy<Value = ExponentVector> {
        proptest::collection::vec(0u64..6, 3).prop_map(|e| ExponentVector::from_u64s(&e))
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop::sample::select(MonomialOrder::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn compare_is_total_and_antisymmetric(o in arb_order(), a in arb_ev(), b in arb_ev(), c in arb_ev()) {
            prop_assert_eq!(o.compare(&a, &b), o.compare(&b, &a).reverse());
            prop_assert_eq!(o.compare(&a, &b) == Ordering::Equal, a == b);
            if o.compare(&a, &b) != Ordering::Greater && o.compare(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.compare(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn compatible_with_multiplication(o in arb_order(), i in arb_ev(), j in arb_ev(), k in arb_ev()) {
            if o.compare(&i, &j) == Ordering::Less {
                prop_assert_eq!(o.compare(&i.try_add(&k).unwrap(), &j.try_add(&k).unwrap()), Ordering::Less);
            }
        }

        #[test]
        fn unit_monomial_is_minimum(o in arb_order(), a in arb_ev()) {
            prop_assert_ne!(o.compare(&ExponentVector::zero(3), &a), Ordering::Greater);
        }

        #[test]
        fn cached_total_survives_products(vs in proptest::collection::vec(arb_ev(), 1..8)) {
            let prod = vs.iter().skip(1).fold(vs[0].clone(), |acc, v| acc.try_add(v).unwrap());
            prop_assert!(prod.total_is_consistent());
        }
    }
}
