//! Exact rational scalars and sparse multivariate Laurent polynomials.
//!
//! All polynomials live over a fixed global variable table. Each polynomial
//! carries its own alphabet (a sorted subset of the table) so that small
//! rings stay small; binary operations unify alphabets on demand. Terms are
//! kept in canonical graded lexicographic order, which makes serialization
//! and iteration deterministic.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rational = num::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Parse an exact rational from a "p/q" or "p" string.
pub fn rat_from_str(s: &str) -> Result<Rational, PolyError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| PolyError::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| PolyError::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(PolyError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Render a rational as an exact "p/q" (or "p") string.
pub fn rat_to_str(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Global variable table. The order here is the canonical alphabet order
/// used for the graded lexicographic term order everywhere.
const VAR_NAMES: &[&str] = &[
    "a0", "a2", "a3", "a4", "b0", "b1", "b2", "b3", "b4", "b5", "b6", // 0..=10
    "c0", "c1", "c2", "c3", "c4", "d0", "d2", "d3", "d4", "d5", "d6", // 11..=21
    "al0", "al1", "al2", "al3", "al4", // 22..=26
    "be0", "be1", "be2", "be3", "be4", "be5", "be6", // 27..=33
    "u", "v", // 34, 35
    "A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B6", // 36..=44
    "E4", "E6",   // 45, 46
    "Dinv", // 47: formal inverse of the discriminant, internal to identity checks
];

/// Variables that may carry negative exponents. These are the only
/// denominators the translation maps ever produce, plus `u` which appears
/// transiently while lifting a semiinvariant back to a covariant.
const LAURENT: &[&str] = &["a0", "b0", "c0", "d0", "al0", "be0", "E4", "E6", "u"];

/// A variable of the global table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Var(pub u8);

impl Var {
    pub fn name(self) -> &'static str {
        VAR_NAMES[self.0 as usize]
    }

    pub fn from_name(name: &str) -> Option<Var> {
        VAR_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| Var(i as u8))
    }

    pub fn is_laurent(self) -> bool {
        LAURENT.contains(&self.name())
    }
}

/// Look up a variable by name, panicking on unknown names.
/// Intended for static tables and tests.
pub fn var(name: &str) -> Var {
    Var::from_name(name).unwrap_or_else(|| panic!("unknown variable {name:?}"))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolyError {
    UnmappedVariable(String),
    ZeroPolynomial,
    NegativeExponent(String),
    DivisionByZero,
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::UnmappedVariable(v) => write!(f, "unmapped variable {v}"),
            PolyError::ZeroPolynomial => write!(f, "undefined for zero polynomial"),
            PolyError::NegativeExponent(m) => write!(f, "negative exponent: {m}"),
            PolyError::DivisionByZero => write!(f, "division by zero"),
            PolyError::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Exponent vector, same length as the owning polynomial's alphabet.
/// Ordered by total degree first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate Laurent polynomial over `Rational`.
#[derive(Clone, Debug)]
pub struct Poly {
    vars: Vec<Var>,
    terms: BTreeMap<Mono, Rational>,
}

/// Equality is mathematical, not representational: alphabets are unified
/// first, so a vestigial variable with all-zero exponents does not matter.
impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.unify(other);
        a.terms == b.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero() -> Poly {
        Poly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(Mono(Vec::new()), r);
        }
        Poly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn variable(v: Var) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![1]), Rational::one());
        Poly {
            vars: vec![v],
            terms,
        }
    }

    /// Monomial c * v^e. Negative `e` requires a Laurent variable.
    pub fn monomial(v: Var, e: i32, c: Rational) -> Poly {
        assert!(e >= 0 || v.is_laurent(), "negative exponent on {}", v.name());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(vec![e]), c);
        }
        Poly {
            vars: vec![v],
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn alphabet(&self) -> &[Var] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    /// Variables actually occurring with nonzero exponent.
    pub fn support(&self) -> Vec<Var> {
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e != 0 {
                    used[i] = true;
                }
            }
        }
        self.vars
            .iter()
            .zip(used)
            .filter_map(|(&v, u)| u.then_some(v))
            .collect()
    }

    /// Drop alphabet entries that no term uses.
    pub fn compress(&self) -> Poly {
        let support = self.support();
        if support.len() == self.vars.len() {
            return self.clone();
        }
        self.remap(&support)
    }

    fn remap(&self, new_vars: &[Var]) -> Poly {
        let idx: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0i32; new_vars.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                if exp != 0 {
                    let j = idx[i].expect("remap dropped a used variable");
                    e[j] = exp;
                }
            }
            terms.insert(Mono(e), c.clone());
        }
        Poly {
            vars: new_vars.to_vec(),
            terms,
        }
    }

    /// Extend the alphabet to (at least) the union with `other`'s, keeping
    /// global variable order.
    fn unify(&self, other: &Poly) -> (Poly, Poly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut union: Vec<Var> = self.vars.iter().chain(other.vars.iter()).copied().collect();
        union.sort();
        union.dedup();
        (self.remap(&union), other.remap(&union))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (mut a, b) = self.unify(other);
        for (m, c) in b.terms {
            let entry = a.terms.entry(m).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                // removed below
            }
        }
        a.terms.retain(|_, c| !c.is_zero());
        a
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c = -c.clone();
        }
        p
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        let mut p = self.clone();
        for c in p.terms.values_mut() {
            *c *= r;
        }
        p
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (a, b) = self.unify(other);
        let n = a.vars.len();
        let mut acc: HashMap<Vec<i32>, Rational> = HashMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let mut e = vec![0i32; n];
                for i in 0..n {
                    e[i] = ma.0[i]
                        .checked_add(mb.0[i])
                        .expect("exponent overflow in multiplication");
                }
                let entry = acc.entry(e).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        let mut terms = BTreeMap::new();
        for (e, c) in acc {
            if !c.is_zero() {
                terms.insert(Mono(e), c);
            }
        }
        Poly {
            vars: a.vars,
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse, defined only for single-term polynomials
    /// whose variables all admit Laurent exponents.
    pub fn invert_monomial(&self) -> Result<Poly, PolyError> {
        if self.terms.len() != 1 {
            return Err(PolyError::DivisionByZero);
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let mut e = Vec::with_capacity(m.0.len());
        for (i, &exp) in m.0.iter().enumerate() {
            if exp != 0 && !self.vars[i].is_laurent() {
                return Err(PolyError::NegativeExponent(self.vars[i].name().into()));
            }
            e.push(-exp);
        }
        let mut terms = BTreeMap::new();
        terms.insert(Mono(e), c.recip());
        Ok(Poly {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let Some(i) = self.vars.iter().position(|&w| w == v) else {
            return Poly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut me = m.0.clone();
            me[i] = e - 1;
            terms.insert(Mono(me), c * rat_int(e as i64));
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
        .compress()
    }

    /// Substitute variables by polynomial images. Variables absent from the
    /// map are kept as themselves. Negative exponents require the image to
    /// be an invertible monomial.
    pub fn substitute(&self, map: &HashMap<Var, Poly>) -> Result<Poly, PolyError> {
        let mut images: Vec<Option<&Poly>> = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            images.push(map.get(v));
        }
        let mut result = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = match images[i] {
                    Some(img) => img.clone(),
                    None => Poly::variable(self.vars[i]),
                };
                let factor = if e > 0 {
                    base.pow(e as u32)
                } else {
                    base.invert_monomial()?.pow((-e) as u32)
                };
                term = term.mul(&factor);
            }
            result = result.add(&term);
        }
        Ok(result.compress())
    }

    /// Substitution that rejects unmapped variables outside `target`.
    pub fn substitute_into(
        &self,
        map: &HashMap<Var, Poly>,
        target: &[Var],
    ) -> Result<Poly, PolyError> {
        for &v in &self.support() {
            if !map.contains_key(&v) && !target.contains(&v) {
                return Err(PolyError::UnmappedVariable(v.name().into()));
            }
        }
        self.substitute(map)
    }

    /// Smallest exponent of `x` over all terms (0 if absent); errors on the
    /// zero polynomial.
    pub fn min_exponent(&self, x: Var) -> Result<i32, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let Some(i) = self.vars.iter().position(|&v| v == x) else {
            return Ok(0);
        };
        Ok(self.terms.keys().map(|m| m.0[i]).min().unwrap())
    }

    /// Exponent range of `x`: (min, max); (0, 0) if absent.
    pub fn exponent_range(&self, x: Var) -> (i32, i32) {
        let Some(i) = self.vars.iter().position(|&v| v == x) else {
            return (0, 0);
        };
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for m in self.terms.keys() {
            lo = lo.min(m.0[i]);
            hi = hi.max(m.0[i]);
        }
        if lo == i32::MAX {
            (0, 0)
        } else {
            (lo, hi)
        }
    }

    /// Group terms by the exponent of `x`; each returned polynomial is free
    /// of `x`.
    pub fn collect_by(&self, x: Var) -> Vec<(i32, Poly)> {
        let Some(i) = self.vars.iter().position(|&v| v == x) else {
            if self.is_zero() {
                return Vec::new();
            }
            return vec![(0, self.clone())];
        };
        let mut groups: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut me = m.0.clone();
            me[i] = 0;
            let part = Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(Mono(me), c.clone())]),
            };
            let entry = groups.entry(e).or_insert_with(Poly::zero);
            *entry = entry.add(&part);
        }
        groups
            .into_iter()
            .map(|(e, p)| (e, p.compress()))
            .collect()
    }

    /// Coefficient (a polynomial in the remaining variables) of x^e.
    pub fn coefficient_of(&self, x: Var, e: i32) -> Poly {
        self.collect_by(x)
            .into_iter()
            .find(|&(k, _)| k == e)
            .map(|(_, p)| p)
            .unwrap_or_else(Poly::zero)
    }

    /// Weighted degree common to all terms, if any (`None` when mixed).
    pub fn homogeneous_degree<F: Fn(Var) -> i64>(&self, weight: F) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: i64 = m
                .0
                .iter()
                .enumerate()
                .map(|(i, &e)| e as i64 * weight(self.vars[i]))
                .sum();
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Exact evaluation at rational points. All support variables must be
    /// assigned; a zero value with a negative exponent is an error.
    pub fn eval_rational(&self, values: &HashMap<Var, Rational>) -> Result<Rational, PolyError> {
        let mut assigned = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            assigned.push(values.get(v));
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let val = assigned[i]
                    .ok_or_else(|| PolyError::UnmappedVariable(self.vars[i].name().into()))?;
                if val.is_zero() {
                    if e < 0 {
                        return Err(PolyError::DivisionByZero);
                    }
                    term = Rational::zero();
                    break;
                }
                let base = if e > 0 { val.clone() } else { val.recip() };
                for _ in 0..e.unsigned_abs() {
                    term *= &base;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Floating-point evaluation at complex points.
    pub fn eval_complex(&self, values: &HashMap<Var, Complex64>) -> Result<Complex64, PolyError> {
        let mut assigned = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            assigned.push(values.get(v));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut term = Complex64::new(
                c.numer().to_f64().unwrap_or(f64::NAN),
                0.0,
            ) / c.denom().to_f64().unwrap_or(f64::NAN);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let val = assigned[i]
                    .ok_or_else(|| PolyError::UnmappedVariable(self.vars[i].name().into()))?;
                term *= val.powi(e);
            }
            total += term;
        }
        Ok(total)
    }

    /// Clears positive powers of `inv` by multiplying with `direct^N` where
    /// `N` is the largest occurring power; `inv` is understood as the formal
    /// inverse of `direct`. Returns `(poly * direct^N with inv eliminated, N)`.
    pub fn eliminate_inverse(&self, inv: Var, direct: &Poly) -> (Poly, u32) {
        let groups = self.collect_by(inv);
        let n = groups.iter().map(|&(e, _)| e).max().unwrap_or(0);
        assert!(n >= 0, "negative power of formal inverse");
        let n = n as u32;
        let mut result = Poly::zero();
        for (e, p) in groups {
            debug_assert!(e >= 0);
            result = result.add(&p.mul(&direct.pow(n - e as u32)));
        }
        (result, n)
    }
}

// -------------------------------------------------------------------------
// Serialization
// -------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Vec<i32>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    alphabet: Vec<String>,
    terms: Vec<TermJson>,
}

impl Poly {
    pub fn to_json(&self) -> serde_json::Value {
        let p = PolyJson {
            alphabet: self.vars.iter().map(|v| v.name().to_string()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    e: m.0.clone(),
                    c: rat_to_str(c),
                })
                .collect(),
        };
        serde_json::to_value(p).expect("polynomial serialization")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Poly, PolyError> {
        let p: PolyJson = serde_json::from_value(v.clone())
            .map_err(|e| PolyError::Parse(e.to_string()))?;
        let mut vars = Vec::new();
        for name in &p.alphabet {
            vars.push(
                Var::from_name(name)
                    .ok_or_else(|| PolyError::UnmappedVariable(name.clone()))?,
            );
        }
        let mut terms = BTreeMap::new();
        for t in p.terms {
            if t.e.len() != vars.len() {
                return Err(PolyError::Parse("exponent length mismatch".into()));
            }
            let c = rat_from_str(&t.c)?;
            if !c.is_zero() {
                terms.insert(Mono(t.e), c);
            }
        }
        Ok(Poly { vars, terms })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars[i].name().to_string());
                } else if e != 0 {
                    factors.push(format!("{}^{}", self.vars[i].name(), e));
                }
            }
            if factors.is_empty() {
                write!(f, "{}", rat_to_str(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", rat_to_str(&abs))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

// -------------------------------------------------------------------------
// Expression parser (used for the embedded identity tables and the CLI)
// -------------------------------------------------------------------------

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            input: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> Result<(), PolyError> {
        match self.bump() {
            Some(x) if x == c => Ok(()),
            other => Err(PolyError::Parse(format!(
                "expected {:?}, found {:?}",
                c as char,
                other.map(|b| b as char)
            ))),
        }
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs.invert_monomial()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        if self.peek() == Some(b'-') {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let neg = if self.peek() == Some(b'-') {
                self.bump();
                true
            } else {
                false
            };
            let n = self.integer()?;
            let p = base.pow(n);
            return if neg { p.invert_monomial() } else { Ok(p) };
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u32, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse("expected integer".into()));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::Parse("integer overflow".into()))
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.big_integer()?;
                Ok(Poly::constant(Rational::from(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.input.len()
                    && (self.input[self.pos].is_ascii_alphanumeric())
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.input[start..self.pos]).unwrap();
                let v = Var::from_name(name)
                    .ok_or_else(|| PolyError::UnmappedVariable(name.into()))?;
                Ok(Poly::variable(v))
            }
            other => Err(PolyError::Parse(format!(
                "unexpected {:?}",
                other.map(|b| b as char)
            ))),
        }
    }

    fn big_integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| PolyError::Parse("bad integer".into()))
    }
}

/// Parse a polynomial expression such as `(3*a0^2 - b1/2) * c0^-1`.
pub fn parse_poly(s: &str) -> Result<Poly, PolyError> {
    let mut p = Parser::new(s);
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(PolyError::Parse(format!(
            "trailing input at byte {}",
            p.pos
        )));
    }
    Ok(e.compress())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let r = rat(-3, 6);
        assert_eq!(rat_to_str(&r), "-1/2");
        assert_eq!(rat_from_str("-1/2").unwrap(), r);
        assert_eq!(rat_from_str("7").unwrap(), rat_int(7));
        assert!(rat_from_str("1/0").is_err());
    }

    #[test]
    fn parse_and_display() {
        let p = parse_poly("a0*b1/6 - a2^2/4").unwrap();
        assert_eq!(p.num_terms(), 2);
        let q = parse_poly(&p.to_string()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn laurent_only_on_designated() {
        assert!(parse_poly("c0^-1").is_ok());
        assert!(parse_poly("c1^-1").is_err());
    }

    #[test]
    fn substitute_examples() {
        // a0 -> c0 rename
        let p = parse_poly("a0").unwrap();
        let map = HashMap::from([(var("a0"), parse_poly("c0").unwrap())]);
        assert_eq!(p.substitute(&map).unwrap(), parse_poly("c0").unwrap());
    }

    #[test]
    fn min_exponent_examples() {
        let p = parse_poly("c2 - 3/8*c1^2*c0^-1").unwrap();
        assert_eq!(p.min_exponent(var("c0")).unwrap(), -1);
        let q = parse_poly("-3/2*c1*d0").unwrap();
        assert_eq!(q.min_exponent(var("c0")).unwrap(), 0);
        let r = parse_poly("c0^3 - 27*d0^2").unwrap();
        assert_eq!(r.min_exponent(var("c0")).unwrap(), 0);
        assert!(Poly::zero().min_exponent(var("c0")).is_err());
    }

    #[test]
    fn serialization_fixed_point() {
        let p = parse_poly("2*a0^3*b1 - 1/3*b6 + 5").unwrap();
        let j = p.to_json();
        let q = Poly::from_json(&j).unwrap();
        assert_eq!(p, q);
        assert_eq!(j, q.to_json());
    }

    #[test]
    fn derivative_and_collect() {
        let p = parse_poly("u^4 + 2*u^2*v^2").unwrap();
        let d = p.derivative(var("u"));
        assert_eq!(d, parse_poly("4*u^3 + 4*u*v^2").unwrap());
        let groups = p.collect_by(var("u"));
        assert_eq!(groups.len(), 2);
    }

    #[test]
    fn eliminate_inverse_works() {
        // (1 + Dinv*E4) * E4^1 with Dinv*E4 = 1 collapses to 2*E4
        let p = parse_poly("1 + Dinv*E4").unwrap();
        let (q, n) = p.eliminate_inverse(var("Dinv"), &parse_poly("E4").unwrap());
        assert_eq!(n, 1);
        assert_eq!(q, parse_poly("2*E4").unwrap());
    }
}
