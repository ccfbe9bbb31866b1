//! Recursive representation: a polynomial in a main variable whose
//! coefficients are polynomials in later variables.
//!
//! `x^3 - 2x` is written `(x,(3,1),(1,-2))`: the variable followed by
//! `(exponent, coefficient)` pairs in decreasing exponent order. Variable
//! precedence comes from the [`VariableSet`]: the first variable is the
//! outermost, and every variable inside a coefficient must come strictly
//! later than the variable of the enclosing node. That rule is what rules
//! out a polynomial in `y` with coefficients in `x` with coefficients in `y`.
//!
//! Two conversions from distributed form are offered. *Dense in variables*
//! threads every later variable through every coefficient, writing
//! `(x,(0,c))` levels where `x` does not occur; *sparse in variables* skips
//! straight to the next variable that does occur.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::coeff::{Coefficient, Field};
use crate::error::{PolyError, Result};
use crate::monomial::{ExponentVector, MonomialOrder, VariableSet};
use crate::poly::{pow_u64, Polynomial};

/// Variable of a recursive node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MainVar {
    /// Position in the ambient [`VariableSet`].
    Index(usize),
    /// An unnamed variable, allowed only at the root: a bare list of
    /// `(exponent, coefficient)` pairs.
    Anonymous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecursionMode {
    DenseInVariables,
    SparseInVariables,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecursivePoly<C> {
    Const(C),
    Node {
        var: MainVar,
        /// Strictly decreasing exponents, no zero coefficients.
        terms: Vec<(BigUint, RecursivePoly<C>)>,
    },
}

/// Main variable (if any) and the coefficient list of a univariate polynomial.
type Univariate<C> = (Option<MainVar>, Vec<(BigUint, C)>);

impl<C: Coefficient> RecursivePoly<C> {
    pub fn zero() -> Self {
        RecursivePoly::Const(C::zero())
    }

    /// A univariate polynomial in no particular variable.
    pub fn anonymous(pairs: impl IntoIterator<Item = (BigUint, C)>) -> Self {
        let mut by_exp: BTreeMap<BigUint, C> = BTreeMap::new();
        for (e, c) in pairs {
            let slot = by_exp.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        let terms: Vec<_> = by_exp
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, RecursivePoly::Const(c)))
            .collect();
        normalize_node(MainVar::Anonymous, terms)
    }

    /// Gives an anonymous root a concrete variable.
    pub fn bind(self, var: usize) -> Self {
        match self {
            RecursivePoly::Node {
                var: MainVar::Anonymous,
                terms,
            } => RecursivePoly::Node {
                var: MainVar::Index(var),
                terms,
            },
            other => other,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RecursivePoly::Const(c) if c.is_zero())
    }

    /// Degree in the root variable; `None` for zero.
    pub fn main_degree(&self) -> Option<BigUint> {
        match self {
            RecursivePoly::Const(c) if c.is_zero() => None,
            RecursivePoly::Const(_) => Some(BigUint::zero()),
            RecursivePoly::Node { terms, .. } => terms.first().map(|(e, _)| e.clone()),
        }
    }

    /// Checks exponent ordering, absence of zero subtrees and variable
    /// precedence against an ambient set of `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        self.validate_below(nvars, None, true)
    }

    pub fn is_well_formed(&self, nvars: usize) -> bool {
        self.validate(nvars).is_ok()
    }

    fn validate_below(&self, nvars: usize, parent: Option<usize>, root: bool) -> Result<()> {
        let RecursivePoly::Node { var, terms } = self else {
            return Ok(());
        };
        let index = match *var {
            MainVar::Anonymous if root => None,
            MainVar::Anonymous => {
                return Err(PolyError::Structure("anonymous variable below the root".into()));
            }
            MainVar::Index(i) if i >= nvars => {
                return Err(PolyError::Structure(format!("variable index {i} out of range")));
            }
            MainVar::Index(i) => {
                if let Some(p) = parent {
                    if i <= p {
                        return Err(PolyError::Structure(format!(
                            "variable {i} nested inside variable {p} violates precedence"
                        )));
                    }
                }
                Some(i)
            }
        };
        if terms.is_empty() {
            return Err(PolyError::Structure("node without terms".into()));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(PolyError::Structure("exponents not strictly decreasing".into()));
        }
        for (_, c) in terms {
            if c.is_zero() {
                return Err(PolyError::Structure("zero coefficient subtree".into()));
            }
            if index.is_none() && !matches!(c, RecursivePoly::Const(_)) {
                return Err(PolyError::Structure("anonymous node with polynomial coefficients".into()));
            }
            c.validate_below(nvars, index.or(parent), false)?;
        }
        Ok(())
    }

    /// Sum, lifting the operand with the later main variable into a
    /// degree-0 coefficient of the other. Nodes left with only a degree-0
    /// term collapse to that term.
    pub fn add(&self, other: &Self) -> Result<Self> {
        use RecursivePoly::*;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        Ok(match (self, other) {
            (Const(a), Const(b)) => Const(a.clone() + b),
            (Node { var: v, terms: a }, Node { var: w, terms: b }) if v == w => {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].0.cmp(&b[j].0) {
                        std::cmp::Ordering::Greater => {
                            out.push(a[i].clone());
                            i += 1;
                        }
                        std::cmp::Ordering::Less => {
                            out.push(b[j].clone());
                            j += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            let c = a[i].1.add(&b[j].1)?;
                            if !c.is_zero() {
                                out.push((a[i].0.clone(), c));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out.extend_from_slice(&a[i..]);
                out.extend_from_slice(&b[j..]);
                normalize_node(*v, out)
            }
            (Node { var: v, .. }, Node { var: w, .. }) => {
                if *v == MainVar::Anonymous || *w == MainVar::Anonymous {
                    return Err(PolyError::NotUnivariate(
                        "cannot mix anonymous and named variables".into(),
                    ));
                }
                if v < w {
                    self.add(&lift(*v, other.clone()))?
                } else {
                    lift(*w, self.clone()).add(other)?
                }
            }
            (Node { var, .. }, Const(_)) => self.add(&lift(*var, other.clone()))?,
            (Const(_), Node { var, .. }) => lift(*var, self.clone()).add(other)?,
        })
    }

    pub fn neg(&self) -> Self {
        self.scale(&-C::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        match self {
            RecursivePoly::Const(a) => RecursivePoly::Const(a.clone() * c),
            RecursivePoly::Node { var, terms } => {
                let terms = terms
                    .iter()
                    .map(|(e, t)| (e.clone(), t.scale(c)))
                    .filter(|(_, t)| !t.is_zero())
                    .collect();
                normalize_node(*var, terms)
            }
        }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, var: MainVar, k: &BigUint) -> Self {
        if self.is_zero() || k.is_zero() {
            return self.clone();
        }
        match self {
            RecursivePoly::Node { var: v, terms } if *v == var => RecursivePoly::Node {
                var,
                terms: terms.iter().map(|(e, t)| (e + k, t.clone())).collect(),
            },
            RecursivePoly::Node { var: v, terms } if *v < var => RecursivePoly::Node {
                var: *v,
                terms: terms.iter().map(|(e, t)| (e.clone(), t.shift(var, k))).collect(),
            },
            _ => RecursivePoly::Node {
                var,
                terms: vec![(k.clone(), self.clone())],
            },
        }
    }

    /// Renders nested tuples using the names of `vars`.
    pub fn display<'a>(&'a self, vars: &'a VariableSet) -> impl fmt::Display + 'a {
        Nested { poly: self, vars }
    }

    /// `(variable, [(exponent, constant)])` when every coefficient is a
    /// constant; `None` for the variable of a constant.
    fn univariate(&self) -> Result<Univariate<C>> {
        match self {
            RecursivePoly::Const(c) if c.is_zero() => Ok((None, Vec::new())),
            RecursivePoly::Const(c) => Ok((None, vec![(BigUint::zero(), c.clone())])),
            RecursivePoly::Node { var, terms } => {
                let mut out = Vec::with_capacity(terms.len());
                for (e, t) in terms {
                    match t {
                        RecursivePoly::Const(c) => out.push((e.clone(), c.clone())),
                        RecursivePoly::Node { .. } => {
                            return Err(PolyError::NotUnivariate(
                                "coefficients must be constants".into(),
                            ))
                        }
                    }
                }
                Ok((Some(*var), out))
            }
        }
    }
}

fn lift<C: Coefficient>(var: MainVar, p: RecursivePoly<C>) -> RecursivePoly<C> {
    if p.is_zero() {
        return p;
    }
    RecursivePoly::Node {
        var,
        terms: vec![(BigUint::zero(), p)],
    }
}

fn normalize_node<C: Coefficient>(var: MainVar, mut terms: Vec<(BigUint, RecursivePoly<C>)>) -> RecursivePoly<C> {
    match terms.len() {
        0 => RecursivePoly::zero(),
        1 if terms[0].0.is_zero() => terms.pop().expect("one term").1,
        _ => RecursivePoly::Node { var, terms },
    }
}

struct Nested<'a, C> {
    poly: &'a RecursivePoly<C>,
    vars: &'a VariableSet,
}

impl<C: Coefficient> fmt::Display for Nested<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.poly {
            RecursivePoly::Const(c) => write!(f, "{c}"),
            RecursivePoly::Node { var, terms } => {
                f.write_str("(")?;
                let mut first = true;
                if let MainVar::Index(i) = var {
                    f.write_str(self.vars.names().get(*i).map_or("?", String::as_str))?;
                    first = false;
                }
                for (e, t) in terms {
                    if !first {
                        f.write_str(",")?;
                    }
                    first = false;
                    write!(f, "({e},{})", Nested { poly: t, vars: self.vars })?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Converts a distributed polynomial into recursive form, with the first
/// variable outermost.
pub fn to_recursive<C: Coefficient>(p: &Polynomial<C>, mode: RecursionMode) -> RecursivePoly<C> {
    let terms: Vec<(ExponentVector, C)> = p
        .terms()
        .iter()
        .map(|t| (t.monomial().clone(), t.coeff().clone()))
        .collect();
    if terms.is_empty() {
        return RecursivePoly::zero();
    }
    build(terms, 0, p.nvars(), mode)
}

fn build<C: Coefficient>(
    terms: Vec<(ExponentVector, C)>,
    level: usize,
    nvars: usize,
    mode: RecursionMode,
) -> RecursivePoly<C> {
    let var = match mode {
        RecursionMode::DenseInVariables => (level < nvars).then_some(level),
        RecursionMode::SparseInVariables => {
            (level..nvars).find(|&v| terms.iter().any(|(m, _)| !m.exponent(v).is_zero()))
        }
    };
    let Some(var) = var else {
        // only the unit monomial is left
        debug_assert_eq!(terms.len(), 1);
        return RecursivePoly::Const(terms.into_iter().next().expect("nonempty").1);
    };
    let mut groups: BTreeMap<BigUint, Vec<(ExponentVector, C)>> = BTreeMap::new();
    for (m, c) in terms {
        let e = m.exponent(var).clone();
        groups
            .entry(e)
            .or_default()
            .push((m.with_exponent(var, BigUint::zero()), c));
    }
    RecursivePoly::Node {
        var: MainVar::Index(var),
        terms: groups
            .into_iter()
            .rev()
            .map(|(e, g)| (e, build(g, var + 1, nvars, mode)))
            .collect(),
    }
}

/// Expands a recursive polynomial into distributed form over `nvars`
/// variables.
pub fn to_distributed<C: Coefficient>(
    r: &RecursivePoly<C>,
    order: MonomialOrder,
    nvars: usize,
) -> Result<Polynomial<C>> {
    r.validate(nvars)?;
    if let RecursivePoly::Node {
        var: MainVar::Anonymous,
        ..
    } = r
    {
        return Err(PolyError::Structure(
            "anonymous variable must be bound before conversion".into(),
        ));
    }
    let mut out = Vec::new();
    let mut exps = vec![BigUint::zero(); nvars];
    expand(r, &mut exps, &mut out);
    Polynomial::from_terms(order, nvars, out)
}

fn expand<C: Coefficient>(r: &RecursivePoly<C>, exps: &mut Vec<BigUint>, out: &mut Vec<(ExponentVector, C)>) {
    match r {
        RecursivePoly::Const(c) => {
            if !c.is_zero() {
                out.push((ExponentVector::new(exps.iter().cloned()), c.clone()));
            }
        }
        RecursivePoly::Node { var, terms } => {
            let MainVar::Index(v) = *var else { unreachable!("validated") };
            for (e, t) in terms {
                let saved = std::mem::replace(&mut exps[v], e.clone());
                expand(t, exps, out);
                exps[v] = saved;
            }
        }
    }
}

fn common_var(a: Option<MainVar>, b: Option<MainVar>) -> Result<Option<MainVar>> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(PolyError::NotUnivariate(
            "operands are in different variables".into(),
        )),
        (x, y) => Ok(x.or(y)),
    }
}

fn leading_coeff<C: Coefficient>(list: &[(BigUint, C)]) -> &C {
    &list[0].1
}

/// Division with remainder over a field: `f = q*g + r`, `deg r < deg g`.
pub fn univ_divide<C: Field>(
    f: &RecursivePoly<C>,
    g: &RecursivePoly<C>,
) -> Result<(RecursivePoly<C>, RecursivePoly<C>)> {
    let (fv, _) = f.univariate()?;
    let (gv, gl) = g.univariate()?;
    let var = common_var(fv, gv)?.unwrap_or(MainVar::Anonymous);
    if gl.is_empty() {
        return Err(PolyError::DivisionByZero);
    }
    let gdeg = gl[0].0.clone();
    let glc = leading_coeff(&gl).clone();
    let mut q = RecursivePoly::zero();
    let mut r = f.clone();
    while let Some(rdeg) = r.main_degree().filter(|d| *d >= gdeg) {
        let (_, rl) = r.univariate()?;
        let t = leading_coeff(&rl).clone() / glc.clone();
        let k = rdeg - &gdeg;
        q = q.add(&RecursivePoly::Const(t.clone()).shift(var, &k))?;
        r = r.sub(&g.shift(var, &k).scale(&t))?;
    }
    Ok((q, r))
}

/// Pseudo-division over an integral domain:
/// `lc(g)^delta * f = q*g + r` with `deg r < deg g` and
/// `delta = max(deg f - deg g + 1, 0)`.
pub fn univ_pseudo_divide<C: Coefficient>(
    f: &RecursivePoly<C>,
    g: &RecursivePoly<C>,
) -> Result<(RecursivePoly<C>, RecursivePoly<C>, u64)> {
    let (fv, _) = f.univariate()?;
    let (gv, gl) = g.univariate()?;
    let var = common_var(fv, gv)?.unwrap_or(MainVar::Anonymous);
    if gl.is_empty() {
        return Err(PolyError::DivisionByZero);
    }
    let gdeg = gl[0].0.clone();
    let glc = leading_coeff(&gl).clone();
    let delta = match f.main_degree() {
        Some(fdeg) if fdeg >= gdeg => {
            let d = fdeg - &gdeg + 1u32;
            d.to_u64().ok_or_else(|| PolyError::ExponentOverflow(d.to_string()))?
        }
        _ => 0,
    };
    let mut q = RecursivePoly::zero();
    let mut r = f.clone();
    let mut remaining = delta;
    while let Some(rdeg) = r.main_degree().filter(|d| *d >= gdeg) {
        let (_, rl) = r.univariate()?;
        let rlc = leading_coeff(&rl).clone();
        let k = rdeg - &gdeg;
        q = q.scale(&glc).add(&RecursivePoly::Const(rlc.clone()).shift(var, &k))?;
        r = r.scale(&glc).sub(&g.shift(var, &k).scale(&rlc))?;
        remaining -= 1;
    }
    let fix = pow_u64(&glc, remaining);
    Ok((q.scale(&fix), r.scale(&fix), delta))
}
