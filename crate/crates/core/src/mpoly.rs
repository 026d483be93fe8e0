//! Exact sparse multivariate polynomials over arbitrary-precision integers.
//!
//! A [`MPoly`] is a map from monomials to nonzero `BigInt` coefficients, kept
//! in graded-lexicographic order so that equality, hashing and the text
//! serialisation are canonical across platforms. The zero polynomial is the
//! empty map. There is no rational arithmetic anywhere: callers that would
//! need fractional constants scale their identities into `Z` first.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Errors from polynomial operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MPolyError {
    /// `exact_div(p, q)` found no `r` with `p = q * r` over integer
    /// coefficients.
    NotDivisible,
    /// `exact_div` was called with a zero divisor.
    ZeroDivisor,
    /// `eval` was asked to evaluate a polynomial containing a variable the
    /// assignment does not cover.
    MissingVariable(String),
    /// Text parsing failed.
    Parse(String),
}

impl fmt::Display for MPolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MPolyError::NotDivisible => write!(f, "polynomial division is not exact"),
            MPolyError::ZeroDivisor => write!(f, "division by the zero polynomial"),
            MPolyError::MissingVariable(v) => write!(f, "no value assigned to variable `{v}`"),
            MPolyError::Parse(s) => write!(f, "cannot parse polynomial: {s}"),
        }
    }
}

impl core::error::Error for MPolyError {}

/// A power product of named variables. Zero exponents are never stored, so
/// the constant monomial is the empty product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// `(variable, exponent)` pairs sorted by variable name, exponents >= 1.
    exps: Vec<(String, u32)>,
}

impl Monomial {
    /// The constant monomial `1`.
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// A single variable to the first power.
    pub fn var(name: &str) -> Self {
        Monomial {
            exps: vec![(name.to_owned(), 1)],
        }
    }

    fn from_pairs(mut pairs: Vec<(String, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        Monomial { exps: pairs }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.exps
            .iter()
            .find(|(v, _)| v == var)
            .map_or(0, |(_, e)| *e)
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.exps.iter().map(|(v, _)| v.as_str())
    }

    pub fn pairs(&self) -> &[(String, u32)] {
        &self.exps
    }

    /// Product of two monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => {
                    out.push(self.exps[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.exps[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.exps[i].0.clone(), self.exps[i].1 + other.exps[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    /// `self / other` when every exponent of `other` fits under `self`.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.exps.clone();
        for (v, e) in &other.exps {
            let slot = out.iter_mut().find(|(w, _)| w == v)?;
            if slot.1 < *e {
                return None;
            }
            slot.1 -= *e;
        }
        Some(Monomial::from_pairs(out))
    }
}

/// Graded-lexicographic order: total degree first, then lexicographic on the
/// exponent vectors over the variables in ascending name order (the first
/// variable where the exponents differ decides; larger exponent wins).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                // The side that still has a variable carries a positive
                // exponent where the other has zero.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // Alphabetically earlier variable present only on one
                    // side: that side has the larger exponent there.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over `BigInt`.
///
/// Invariant: no stored coefficient is zero; term order is graded-lex.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        MPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name), BigInt::one());
        MPoly { terms }
    }

    /// Univariate shorthand: `univar("t", &[(4, 1), (2, 3), (0, 1)])` is
    /// `t^4 + 3*t^2 + 1`.
    pub fn univar(name: &str, coeffs: &[(u32, i64)]) -> Self {
        let mut p = MPoly::zero();
        for &(e, c) in coeffs {
            let m = if e == 0 {
                Monomial::one()
            } else {
                Monomial::from_pairs(vec![(name.to_owned(), e)])
            };
            p.add_term(m, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    /// Largest term under graded-lex, if any.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// All variables that occur, sorted and deduplicated.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for m in self.terms.keys() {
            for v in m.vars() {
                if !vars.iter().any(|w| w == v) {
                    vars.push(v.to_owned());
                }
            }
        }
        vars.sort();
        vars
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replace `var` by `s` everywhere and expand.
    pub fn substitute(&self, var: &str, s: &MPoly) -> MPoly {
        let max_e = self.degree_in(var);
        // powers[e] = s^e
        let mut powers: Vec<MPoly> = Vec::with_capacity(max_e as usize + 1);
        powers.push(MPoly::one());
        for _ in 1..=max_e {
            let next = powers.last().unwrap() * s;
            powers.push(next);
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let rest = Monomial::from_pairs(
                m.pairs()
                    .iter()
                    .filter(|(v, _)| v != var)
                    .cloned()
                    .collect(),
            );
            let mut piece = MPoly::zero();
            piece.add_term(rest, c.clone());
            out = &out + &(&piece * &powers[e as usize]);
        }
        out
    }

    /// Substitute several variables in sequence. Replacement polynomials must
    /// not themselves contain variables appearing later in `assignment`.
    pub fn substitute_all(&self, assignment: &[(&str, &MPoly)]) -> MPoly {
        let mut p = self.clone();
        for (v, s) in assignment {
            p = p.substitute(v, s);
        }
        p
    }

    /// Exact integer evaluation. Every variable of `self` must be assigned.
    pub fn eval(&self, assignment: &[(&str, &BigInt)]) -> Result<BigInt, MPolyError> {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.pairs() {
                let val = assignment
                    .iter()
                    .find(|(w, _)| w == v)
                    .map(|(_, val)| *val)
                    .ok_or_else(|| MPolyError::MissingVariable(v.clone()))?;
                term *= num_traits::pow::pow(val.clone(), *e as usize);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Exact division: returns `r` with `self = q * r`, or `NotDivisible`.
    ///
    /// Greedy leading-term reduction is complete here: graded-lex is a monomial
    /// order, so if an exact quotient exists the leading term of every
    /// intermediate remainder is divisible by the leading term of `q`.
    pub fn exact_div(&self, q: &MPoly) -> Result<MPoly, MPolyError> {
        if q.is_zero() {
            return Err(MPolyError::ZeroDivisor);
        }
        let (qm, qc) = q.leading_term().unwrap();
        let qm = qm.clone();
        let qc = qc.clone();
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.try_div(&qm).ok_or(MPolyError::NotDivisible)?;
            let (c, r) = rc.div_rem(&qc);
            if !r.is_zero() {
                return Err(MPolyError::NotDivisible);
            }
            let mut t = MPoly::zero();
            t.add_term(m, c);
            rem = &rem - &(&t * q);
            quot = &quot + &t;
        }
        Ok(quot)
    }

    /// Coefficients reduced mod 2 into `{0, 1}`; zero coefficients dropped.
    pub fn parity_reduce(&self) -> MPoly {
        let two = BigInt::from(2);
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.mod_floor(&two));
        }
        out
    }

    /// True when every coefficient is even.
    pub fn all_even(&self) -> bool {
        self.parity_reduce().is_zero()
    }

    /// Divide every coefficient by 2; caller must have checked `all_even`.
    pub fn halve(&self) -> Result<MPoly, MPolyError> {
        let two = BigInt::from(2);
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(&two);
            if !r.is_zero() {
                return Err(MPolyError::NotDivisible);
            }
            out.add_term(m.clone(), q);
        }
        Ok(out)
    }

    /// The constant value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }
}

impl From<i64> for MPoly {
    fn from(v: i64) -> Self {
        MPoly::constant(BigInt::from(v))
    }
}

impl From<BigInt> for MPoly {
    fn from(v: BigInt) -> Self {
        MPoly::constant(v)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                self.$method(&rhs)
            }
        }
        impl $trait<i64> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: i64) -> MPoly {
                self.$method(&MPoly::from(rhs))
            }
        }
        impl $trait<i64> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: i64) -> MPoly {
                (&self).$method(&MPoly::from(rhs))
            }
        }
        impl $trait<&MPoly> for i64 {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&MPoly::from(self)).$method(rhs)
            }
        }
        impl $trait<MPoly> for i64 {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&MPoly::from(self)).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

/// Canonical text form: terms in descending graded-lex order, each written as
/// `coef*v1^e1*v2^e2` (exponent 1 omits the `^1`), joined with ` + `. The zero
/// polynomial prints as `0`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, e) in m.pairs() {
                if *e == 1 {
                    write!(f, "*{v}")?;
                } else {
                    write!(f, "*{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for MPoly {
    type Err = MPolyError;

    /// Parses the canonical text form. Also accepts terms without an explicit
    /// coefficient (`t^2`) and `-` signs attached to coefficients.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(MPolyError::Parse("empty input".to_owned()));
        }
        let mut p = MPoly::zero();
        for term in s.split(" + ") {
            let term = term.trim();
            if term.is_empty() {
                return Err(MPolyError::Parse("empty term".to_owned()));
            }
            let mut coef: Option<BigInt> = None;
            let mut pairs: Vec<(String, u32)> = Vec::new();
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(MPolyError::Parse("empty factor".to_owned()));
                }
                let leading = factor.chars().next().unwrap();
                if leading.is_ascii_digit() || leading == '-' || leading == '+' {
                    let c: BigInt = factor
                        .parse()
                        .map_err(|_| MPolyError::Parse(factor.to_owned()))?;
                    match coef {
                        None => coef = Some(c),
                        Some(prev) => coef = Some(prev * c),
                    }
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        None => (factor, 1u32),
                        Some((n, e)) => (
                            n,
                            e.parse()
                                .map_err(|_| MPolyError::Parse(factor.to_owned()))?,
                        ),
                    };
                    if !name
                        .chars()
                        .all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
                        || !name.chars().next().unwrap().is_ascii_alphabetic()
                    {
                        return Err(MPolyError::Parse(factor.to_owned()));
                    }
                    if let Some(slot) = pairs.iter_mut().find(|(v, _)| v == name) {
                        slot.1 += exp;
                    } else {
                        pairs.push((name.to_owned(), exp));
                    }
                }
            }
            p.add_term(
                Monomial::from_pairs(pairs),
                coef.unwrap_or_else(BigInt::one),
            );
        }
        Ok(p)
    }
}

/// Product of `k` consecutive values starting at `start`:
/// `start * (start+1) * ... * (start+k-1)`.
pub fn falling_block(start: &MPoly, k: u32) -> MPoly {
    let mut acc = MPoly::one();
    for i in 0..k {
        acc = &acc * &(start + i as i64);
    }
    acc
}
