//! Text formats.
//!
//! # Polynomial grammar
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := int ('/' int)? | '(' sign? int ('/' int)? ')' | var ('^' int)?
//! ```
//!
//! Whitespace is free between tokens. Multiplication must be written
//! explicitly: `2*p*x*z`, never `2pxz`. Variables must belong to the
//! declared [`VariableSet`] and may repeat within a term (`x*x = x^2`).
//! The canonical printer [`print_poly`] writes terms in decreasing order,
//! coefficients first, rationals as `a/b` in lowest terms with the sign on
//! the numerator, and omits unit coefficients and exponents.
//!
//! # Certificate files
//!
//! Line-oriented UTF-8. Each section starts with `label:` at the start of a
//! line; lines without a colon continue the previous section; blank lines
//! and lines starting with `#` are ignored.
//!
//! ```text
//! vars: x, y, z
//! order: grevlex
//! N: 2
//! f: x^2*y - z
//! lambda[1]: x
//! g[1]: x*y
//! lambda[2]: -1
//! g[2]: z
//! ```
//!
//! `vars`, `order`, `N` and `f` are required, as are `lambda[i]` and `g[i]`
//! for every `i` in `1..=N`. Polynomial files use the same layout with the
//! sections `vars`, `order` and `poly`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::coeff::Coefficient;
use crate::error::PolyError;
use crate::geobucket::{Geobucket, LcStrategy, DEFAULT_GROWTH};
use crate::monomial::{check_dim, ExponentVector, MonomialOrder, VariableSet};
use crate::poly::{Polynomial, Term};
use crate::verifier::Certificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable {name:?} at byte {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("zero denominator at byte {position}")]
    ZeroDenominator { position: usize },
    #[error("coefficient at byte {position} is not in the {domain} domain")]
    Domain { position: usize, domain: &'static str },
    #[error("line {line}: {message}")]
    File { line: usize, message: String },
    #[error("missing section {0}")]
    MissingSection(String),
    #[error("in section {section}: {source}")]
    InSection {
        section: String,
        #[source]
        source: Box<TextError>,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> TextError {
        TextError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Result<&'a str, TextError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii")
    }
}

fn parse_int(digits: &str) -> BigInt {
    digits.parse().expect("digits")
}

/// A number, optionally `int/int`, with an optional leading sign inside
/// parentheses.
fn number(sc: &mut Scanner<'_>, allow_sign: bool) -> Result<(BigInt, BigInt), TextError> {
    let negative = allow_sign && sc.eat(b'-');
    let mut num = parse_int(sc.digits()?);
    if negative {
        num = -num;
    }
    let den = if sc.eat(b'/') {
        let at = sc.pos;
        let d = parse_int(sc.digits()?);
        if d.is_zero() {
            return Err(TextError::ZeroDenominator { position: at });
        }
        d
    } else {
        BigInt::one()
    };
    Ok((num, den))
}

fn term<C: Coefficient>(sc: &mut Scanner<'_>, vars: &VariableSet) -> Result<(ExponentVector, C), TextError> {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut exps = vec![BigUint::zero(); vars.len()];
    let start = sc.pos;
    loop {
        match sc.peek() {
            Some(b'0'..=b'9') => {
                let (n, d) = number(sc, false)?;
                num *= n;
                den *= d;
            }
            Some(b'(') => {
                sc.pos += 1;
                let (n, d) = number(sc, true)?;
                if !sc.eat(b')') {
                    return Err(sc.error("expected ')'"));
                }
                num *= n;
                den *= d;
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let at = sc.pos;
                let name = sc.ident();
                let Some(index) = vars.index_of(name) else {
                    return Err(TextError::UnknownVariable {
                        name: name.to_string(),
                        position: at,
                    });
                };
                let e = if sc.eat(b'^') {
                    sc.digits()?.parse::<BigUint>().expect("digits")
                } else {
                    BigUint::one()
                };
                exps[index] += e;
            }
            _ => return Err(sc.error("expected a number, a variable or '('")),
        }
        if !sc.eat(b'*') {
            break;
        }
    }
    let coeff = C::from_ratio(num, den).ok_or(TextError::Domain {
        position: start,
        domain: C::NAME,
    })?;
    Ok((ExponentVector::new(exps), coeff))
}

/// Parses the terms of `text` in the order they are written, without
/// combining or sorting. Zero terms are kept.
pub fn parse_terms<C: Coefficient>(text: &str, vars: &VariableSet) -> Result<Vec<(ExponentVector, C)>, TextError> {
    let mut sc = Scanner::new(text);
    let mut out = Vec::new();
    let mut negative = if sc.eat(b'-') {
        true
    } else {
        sc.eat(b'+');
        false
    };
    loop {
        let (m, c) = term::<C>(&mut sc, vars)?;
        out.push((m, if negative { -c } else { c }));
        negative = match sc.peek() {
            Some(b'+') => false,
            Some(b'-') => true,
            None => break,
            Some(_) => return Err(sc.error("expected '+', '-' or end of input")),
        };
        sc.pos += 1;
    }
    Ok(out)
}

/// Parses a polynomial. Input already written in decreasing order is read
/// in linear time; anything else is accumulated in a geobucket.
pub fn parse_poly<C: Coefficient>(text: &str, vars: &VariableSet, order: MonomialOrder) -> Result<Polynomial<C>, TextError> {
    let terms = parse_terms::<C>(text, vars)?;
    Ok(read_sorted(
        terms.into_iter().filter(|(_, c)| !c.is_zero()),
        order,
        vars.len(),
    )?)
}

/// Builds a polynomial from a term stream expected in strictly decreasing
/// order: `n - 1` comparisons and plain appends when it is. From the first
/// out-of-order term on, the rest is accumulated in a geobucket.
pub fn read_sorted<C, I>(stream: I, order: MonomialOrder, nvars: usize) -> Result<Polynomial<C>, PolyError>
where
    C: Coefficient,
    I: IntoIterator<Item = (ExponentVector, C)>,
{
    read_sorted_report(stream, order, nvars).map(|(p, _)| p)
}

/// As [`read_sorted`], also reporting the position where the fast path was
/// abandoned.
pub fn read_sorted_report<C, I>(
    stream: I,
    order: MonomialOrder,
    nvars: usize,
) -> Result<(Polynomial<C>, Option<usize>), PolyError>
where
    C: Coefficient,
    I: IntoIterator<Item = (ExponentVector, C)>,
{
    let mut terms: Vec<Term<C>> = Vec::new();
    let mut iter = stream.into_iter().enumerate();
    while let Some((i, (m, c))) = iter.next() {
        check_dim(nvars, m.dim())?;
        if c.is_zero() {
            return Err(PolyError::ZeroCoefficient(i));
        }
        let in_order = terms
            .last()
            .is_none_or(|last| order.compare(last.monomial(), &m) == Ordering::Greater);
        if !in_order {
            let mut gb = Geobucket::new(order, nvars, DEFAULT_GROWTH, LcStrategy::ScanAll)?;
            gb.add(&Polynomial::from_sorted_unchecked(order, nvars, terms))?;
            gb.add_term(Term::new_unchecked(m, c))?;
            for (j, (m, c)) in iter {
                check_dim(nvars, m.dim())?;
                if c.is_zero() {
                    return Err(PolyError::ZeroCoefficient(j));
                }
                gb.add_term(Term::new_unchecked(m, c))?;
            }
            return Ok((gb.normalize(), Some(i)));
        }
        terms.push(Term::new_unchecked(m, c));
    }
    Ok((Polynomial::from_sorted_unchecked(order, nvars, terms), None))
}

/// Reads a term at a time, adding each to the running polynomial with
/// merge addition. Quadratic on decreasing input; kept as a baseline.
pub fn read_naive<C, I>(stream: I, order: MonomialOrder, nvars: usize) -> Result<Polynomial<C>, PolyError>
where
    C: Coefficient,
    I: IntoIterator<Item = (ExponentVector, C)>,
{
    let mut acc = Polynomial::zero(order, nvars);
    for (i, (m, c)) in stream.into_iter().enumerate() {
        check_dim(nvars, m.dim())?;
        if c.is_zero() {
            return Err(PolyError::ZeroCoefficient(i));
        }
        let single = Polynomial::from_sorted_unchecked(order, nvars, vec![Term::new_unchecked(m, c)]);
        acc = acc.add(&single)?;
    }
    Ok(acc)
}

fn write_term<C: Coefficient>(out: &mut String, vars: &VariableSet, m: &ExponentVector, c: &C) {
    if m.is_unit() {
        out.push_str(&c.to_string());
    } else if c.is_one() {
        out.push_str(&vars.format_monomial(m));
    } else {
        out.push_str(&c.to_string());
        out.push('*');
        out.push_str(&vars.format_monomial(m));
    }
}

/// Canonical text of `p`; reparses to an equal polynomial.
pub fn print_poly<C: Coefficient>(p: &Polynomial<C>, vars: &VariableSet) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in p.terms().iter().enumerate() {
        let neg = t.coeff().is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        write_term(&mut out, vars, t.monomial(), &t.coeff().abs());
    }
    out
}

/// `monomial coefficient`, as used in witness lines.
pub fn print_monomial_coeff<C: Coefficient>(vars: &VariableSet, m: &ExponentVector, c: &C) -> String {
    format!("{} {}", vars.format_monomial(m), c)
}

#[derive(Debug)]
struct Section {
    label: String,
    line: usize,
    body: String,
}

fn split_sections(text: &str) -> Result<Vec<Section>, TextError> {
    let mut out: Vec<Section> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some((label, body)) = raw.split_once(':') {
            let label = label.trim().to_string();
            if out.iter().any(|s| s.label == label) {
                return Err(TextError::File {
                    line,
                    message: format!("duplicate section {label}"),
                });
            }
            out.push(Section {
                label,
                line,
                body: body.trim().to_string(),
            });
        } else if let Some(last) = out.last_mut() {
            last.body.push(' ');
            last.body.push_str(trimmed);
        } else {
            return Err(TextError::File {
                line,
                message: "text before the first section".into(),
            });
        }
    }
    Ok(out)
}

fn indexed_label(label: &str) -> Option<(&str, &str)> {
    let (name, rest) = label.split_once('[')?;
    let index = rest.strip_suffix(']')?;
    Some((name, index))
}

struct Header {
    vars: VariableSet,
    order: MonomialOrder,
}

fn take_header(
    sections: &mut BTreeMap<String, Section>,
    order_override: Option<MonomialOrder>,
) -> Result<Header, TextError> {
    let vars_sec = sections
        .remove("vars")
        .ok_or_else(|| TextError::MissingSection("vars".into()))?;
    let names: Vec<&str> = vars_sec
        .body
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    let vars = VariableSet::new(names).map_err(|e| TextError::File {
        line: vars_sec.line,
        message: e.to_string(),
    })?;
    let order = match (sections.remove("order"), order_override) {
        (_, Some(o)) => o,
        (Some(sec), None) => sec
            .body
            .parse::<MonomialOrder>()
            .map_err(|message| TextError::File { line: sec.line, message })?,
        (None, None) => return Err(TextError::MissingSection("order".into())),
    };
    Ok(Header { vars, order })
}

fn section_poly<C: Coefficient>(sec: &Section, h: &Header) -> Result<Polynomial<C>, TextError> {
    parse_poly(&sec.body, &h.vars, h.order).map_err(|e| TextError::InSection {
        section: sec.label.clone(),
        source: Box::new(e),
    })
}

/// A parsed certificate file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateFile<C> {
    pub vars: VariableSet,
    pub certificate: Certificate<C>,
}

pub fn parse_certificate<C: Coefficient>(text: &str) -> Result<CertificateFile<C>, TextError> {
    parse_certificate_with_order(text, None)
}

/// Parses a certificate; `order_override` replaces the file's `order:`.
pub fn parse_certificate_with_order<C: Coefficient>(
    text: &str,
    order_override: Option<MonomialOrder>,
) -> Result<CertificateFile<C>, TextError> {
    let mut sections: BTreeMap<String, Section> = split_sections(text)?
        .into_iter()
        .map(|s| (s.label.clone(), s))
        .collect();
    let header = take_header(&mut sections, order_override)?;
    let n_sec = sections
        .remove("N")
        .ok_or_else(|| TextError::MissingSection("N".into()))?;
    let n: usize = n_sec
        .body
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| TextError::File {
            line: n_sec.line,
            message: format!("N must be a positive integer, got {:?}", n_sec.body),
        })?;
    let f_sec = sections
        .remove("f")
        .ok_or_else(|| TextError::MissingSection("f".into()))?;
    let f = section_poly(&f_sec, &header)?;

    let mut lambdas: Vec<Option<Polynomial<C>>> = vec![None; n];
    let mut gs: Vec<Option<Polynomial<C>>> = vec![None; n];
    for (label, sec) in &sections {
        let bad = |message: String| TextError::File { line: sec.line, message };
        let Some((name, index)) = indexed_label(label) else {
            return Err(bad(format!("unknown section {label}")));
        };
        let slot = match name {
            "lambda" => &mut lambdas,
            "g" => &mut gs,
            _ => return Err(bad(format!("unknown section {label}"))),
        };
        let i: usize = index
            .parse()
            .map_err(|_| bad(format!("bad index in {label}")))?;
        if i == 0 || i > n {
            return Err(bad(format!("index gap: {label} is outside 1..={n}")));
        }
        slot[i - 1] = Some(section_poly(sec, &header)?);
    }
    let mut pairs = Vec::with_capacity(n);
    for (i, (l, g)) in lambdas.into_iter().zip(gs).enumerate() {
        let l = l.ok_or_else(|| TextError::MissingSection(format!("lambda[{}]", i + 1)))?;
        let g = g.ok_or_else(|| TextError::MissingSection(format!("g[{}]", i + 1)))?;
        pairs.push((l, g));
    }
    Ok(CertificateFile {
        vars: header.vars,
        certificate: Certificate::new(f, pairs)?,
    })
}

pub fn print_certificate<C: Coefficient>(vars: &VariableSet, cert: &Certificate<C>) -> String {
    let mut out = format!(
        "vars: {}\norder: {}\nN: {}\nf: {}\n",
        vars.names().join(", "),
        cert.order(),
        cert.len(),
        print_poly(cert.target(), vars)
    );
    for (i, (l, g)) in cert.pairs().iter().enumerate() {
        out.push_str(&format!("lambda[{}]: {}\n", i + 1, print_poly(l, vars)));
        out.push_str(&format!("g[{}]: {}\n", i + 1, print_poly(g, vars)));
    }
    out
}

/// A parsed polynomial file (`vars:`, `order:`, `poly:`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFile<C> {
    pub vars: VariableSet,
    pub poly: Polynomial<C>,
}

pub fn parse_poly_file<C: Coefficient>(
    text: &str,
    order_override: Option<MonomialOrder>,
) -> Result<PolyFile<C>, TextError> {
    let mut sections: BTreeMap<String, Section> = split_sections(text)?
        .into_iter()
        .map(|s| (s.label.clone(), s))
        .collect();
    let header = take_header(&mut sections, order_override)?;
    let sec = sections
        .remove("poly")
        .ok_or_else(|| TextError::MissingSection("poly".into()))?;
    if let Some(extra) = sections.values().next() {
        return Err(TextError::File {
            line: extra.line,
            message: format!("unknown section {}", extra.label),
        });
    }
    let poly = section_poly(&sec, &header)?;
    Ok(PolyFile {
        vars: header.vars,
        poly,
    })
}

pub fn print_poly_file<C: Coefficient>(vars: &VariableSet, p: &Polynomial<C>) -> String {
    format!(
        "vars: {}\norder: {}\npoly: {}\n",
        vars.names().join(", "),
        p.order(),
        print_poly(p, vars)
    )
}
