use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Laurent polynomial in one variable with exact integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i128>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i128, exp: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff, exp);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i128, i32)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    pub fn add_term(&mut self, coeff: i128, exp: i32) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i128 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms as `(coefficient, exponent)` sorted by exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i128, i32)> + '_ {
        self.terms.iter().map(|(&e, &c)| (c, e))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn scale(&self, k: i128) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&e, &c)| (e, c * k)).collect() }
    }

    /// Substitute `x -> x^k` (k may be negative).
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, &c)| (c, e * k)))
    }

    /// Divide every exponent by `k`; fails unless all exponents are multiples of `k`.
    pub fn divide_exponents(&self, k: i32) -> Option<Self> {
        if self.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        Some(Self { terms: self.terms.iter().map(|(&e, &c)| (e / k, c)).collect() })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                let c = c1.checked_mul(c2).ok_or(Error::Overflow("polynomial product"))?;
                let slot = out.terms.entry(e1 + e2).or_insert(0);
                *slot = slot.checked_add(c).ok_or(Error::Overflow("polynomial product"))?;
            }
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            let slot = out.terms.entry(e).or_insert(0);
            *slot = slot.checked_add(c).ok_or(Error::Overflow("polynomial sum"))?;
        }
        out.terms.retain(|_, c| *c != 0);
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rhi) = rem.max_exp() {
            if rhi - dhi < rem.min_exp()? - dlo {
                return None;
            }
            let c = rem.coeff(rhi);
            if c % lead != 0 {
                return None;
            }
            let q = Self::monomial(c / lead, rhi - dhi);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// Evaluate at an integer point; negative exponents require `x = ±1`.
    pub fn eval_unit(&self, x: i128) -> i128 {
        debug_assert!(x == 1 || x == -1);
        self.terms
            .iter()
            .map(|(&e, &c)| if x == -1 && e.rem_euclid(2) == 1 { -c } else { c })
            .sum()
    }

    /// `c*t^e` term list sorted by exponent, e.g. `-1*t^-4 + 1*t^-3 + 1*t^-1`.
    pub fn to_term_string(&self, var: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(&e, &c)| format!("{c}*{var}^{e}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse_terms(text: &str, var: &str) -> Result<Self> {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for tok in text.split(" + ") {
            let bad = || Error::Parse { token: tok.to_string(), message: "expected c*var^e".into() };
            let (c, rest) = tok.trim().split_once('*').ok_or_else(bad)?;
            let e = rest.strip_prefix(var).and_then(|r| r.strip_prefix('^')).ok_or_else(bad)?;
            p.add_term(c.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?);
        }
        Ok(p)
    }
}

impl From<LaurentPolynomial> for String {
    fn from(p: LaurentPolynomial) -> String {
        p.to_term_string("t")
    }
}

impl TryFrom<String> for LaurentPolynomial {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Self::parse_terms(&s, "t")
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term_string("t"))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term_string("t"))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        self.checked_add(rhs).expect("polynomial overflow")
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        self.checked_mul(rhs).expect("polynomial overflow")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i128, i32)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn zero_terms_are_dropped() {
        let a = p(&[(1, 2), (-1, 2), (3, -1)]);
        assert_eq!(a.len(), 1);
        assert_eq!(a.coeff(-1), 3);
    }

    #[test]
    fn exact_division_by_loop_value() {
        // delta = -A^2 - A^-2
        let delta = p(&[(-1, 2), (-1, -2)]);
        let q = p(&[(5, 3), (-2, -7), (1, 0)]);
        let prod = &q * &delta;
        assert_eq!(prod.exact_div(&delta), Some(q));
        assert_eq!(p(&[(1, 0)]).exact_div(&delta), None);
    }

    #[test]
    fn term_string_round_trip() {
        let a = p(&[(-1, -4), (1, -3), (1, -1)]);
        let s = a.to_term_string("t");
        assert_eq!(s, "-1*t^-4 + 1*t^-3 + 1*t^-1");
        assert_eq!(LaurentPolynomial::parse_terms(&s, "t").unwrap(), a);
    }

    #[test]
    fn eval_at_minus_one() {
        // figure-eight: t^-2 - t^-1 + 1 - t + t^2 -> 5
        let f = p(&[(1, -2), (-1, -1), (1, 0), (-1, 1), (1, 2)]);
        assert_eq!(f.eval_unit(-1), 5);
        assert_eq!(f.eval_unit(1), 1);
    }
}
