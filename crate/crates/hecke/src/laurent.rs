//! Exact arithmetic in the ring `A = Z[v, v^-1]`.
//!
//! Coefficients are kept in a sparse map from exponent to integer with no
//! explicit zeros, so equality is structural. The bar involution `v -> v^-1`
//! and the specialization `v -> 1` are the two ring maps everything else in
//! the crate leans on.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("Laurent coefficient overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("Laurent coefficient overflow")
}

/// An element of `Z[v, v^-1]`, stored sparsely by exponent.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(1, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::term(n, 0)
    }

    /// The monomial `c * v^k`.
    pub fn term(c: i64, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn v() -> Self {
        Self::term(1, 1)
    }

    pub fn v_pow(k: i32) -> Self {
        Self::term(1, k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0) == 1
    }

    pub fn coeff(&self, k: i32) -> i64 {
        self.terms.get(&k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        let terms = self.terms.iter().map(|(&k, &c)| (-k, c)).collect();
        Self { terms }
    }

    /// The specialization `v -> 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().fold(0, |acc, &c| checked_add(acc, c))
    }

    /// If `self` is a single term `c * v^k`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(i64, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&k, &c)| (c, k))
        } else {
            None
        }
    }

    /// True when every exponent is nonnegative (an element of `Z[v]`).
    pub fn is_polynomial(&self) -> bool {
        self.valuation().map_or(true, |m| m >= 0)
    }

    /// True when every exponent is even (an element of `Z[v^2, v^-2]`).
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|k| k % 2 == 0)
    }

    pub fn shift(&self, k: i32) -> Self {
        let terms = self.terms.iter().map(|(&e, &c)| (e + k, c)).collect();
        Self { terms }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&k, &a)| (k, checked_mul(a, c)))
            .collect();
        Self { terms }
    }

    /// Discard every term whose exponent exceeds `max_exp`.
    pub fn truncate_above(&self, max_exp: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&k, _)| k <= max_exp)
            .map(|(&k, &c)| (k, c))
            .collect();
        Self { terms }
    }

    /// Exact division by the monomial `c * v^k`, if every coefficient divides.
    pub fn div_monomial(&self, c: i64, k: i32) -> Option<Self> {
        assert!(c != 0, "division by zero monomial");
        let mut terms = BTreeMap::new();
        for (&e, &a) in &self.terms {
            if a % c != 0 {
                return None;
            }
            terms.insert(e - k, a / c);
        }
        Some(Self { terms })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, k: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(k).or_insert(0);
        *entry = checked_add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&k);
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, &c) in &rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&k, &c) in &rhs.terms {
            self.add_term(k, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&k1, &c1) in &self.terms {
            for (&k2, &c2) in &rhs.terms {
                out.add_term(k1 + k2, checked_mul(c1, c2));
            }
        }
        out
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders terms with exponents descending, e.g. `v^2 - 1` or `2*v^-1 + 3`.
    /// [`LaurentPoly::from_str`] parses this format back losslessly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag, k) {
                (_, 0) => write!(f, "{mag}")?,
                (1, 1) => write!(f, "v")?,
                (1, _) => write!(f, "v^{k}")?,
                (_, 1) => write!(f, "{mag}*v")?,
                (_, _) => write!(f, "{mag}*v^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = LaurentPoly::zero();
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty Laurent polynomial".into()));
        }
        if s == "0" {
            return Ok(out);
        }
        let mut rest = s;
        let mut sign = 1i64;
        // Leading sign.
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let term_end = find_term_end(rest);
            let term = rest[..term_end].trim();
            let (c, k) = parse_term(term)?;
            out.add_term(k, checked_mul(sign, c));
            rest = rest[term_end..].trim_start();
            if rest.is_empty() {
                break;
            }
            if let Some(r) = rest.strip_prefix('+') {
                sign = 1;
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r.trim_start();
            } else {
                return Err(Error::Parse(format!("expected '+' or '-' in {s:?}")));
            }
            if rest.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
        }
        Ok(out)
    }
}

/// Index of the next top-level `+`/`-` separator (a sign following `^` or `*`
/// belongs to the term).
fn find_term_end(s: &str) -> usize {
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b == b'+' || b == b'-' {
            let prev = s[..i].trim_end().bytes().last();
            if !matches!(prev, Some(b'^') | Some(b'*')) {
                return i;
            }
        }
        i += 1;
    }
    s.len()
}

fn parse_term(term: &str) -> Result<(i64, i32)> {
    let bad = || Error::Parse(format!("malformed Laurent term {term:?}"));
    if let Some(vpos) = term.find('v') {
        let coeff_part = term[..vpos].trim().trim_end_matches('*').trim();
        let c: i64 = if coeff_part.is_empty() {
            1
        } else {
            coeff_part.parse().map_err(|_| bad())?
        };
        let exp_part = term[vpos + 1..].trim();
        let k: i32 = if exp_part.is_empty() {
            1
        } else {
            exp_part
                .strip_prefix('^')
                .ok_or_else(bad)?
                .trim()
                .parse()
                .map_err(|_| bad())?
        };
        Ok((c, k))
    } else {
        let c: i64 = term.trim().parse().map_err(|_| bad())?;
        Ok((c, 0))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
