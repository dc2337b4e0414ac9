//! Laurent polynomials in one variable over [`Rat`].
//!
//! A [`LaurentPoly`] is a finite-support map from integer exponents (which
//! may be negative) to nonzero rational coefficients; the empty map is the
//! zero element. Negative exponents are carried natively because the
//! operator coefficients in this domain come with `1/x` and `1/x^2`
//! prefactors.

use crate::rat::Rat;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial `sum_k c_k x^k`, `k` ranging over a finite set of
/// integers. Invariant: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rat::one())
    }

    /// The variable `x`.
    pub fn x() -> Self {
        LaurentPoly::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    /// `c * x^k`. Returns zero if `c` is zero.
    pub fn monomial(c: Rat, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms(pairs: &[(i64, Rat)]) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in pairs {
            p.add_term(*k, c.clone());
        }
        p
    }

    /// Convenience constructor from integer `(exponent, coefficient)` pairs.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        LaurentPoly::from_terms(
            &pairs
                .iter()
                .map(|&(k, c)| (k, Rat::from(c)))
                .collect::<Vec<_>>(),
        )
    }

    /// Ordinary polynomial from coefficients in ascending degree order.
    pub fn from_coeffs(coeffs: &[Rat]) -> Self {
        LaurentPoly::from_terms(
            &coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, c.clone()))
                .collect::<Vec<_>>(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest exponent, `None` for the zero element.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for the zero element.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// True when no exponent is negative (the zero element counts).
    pub fn is_polynomial(&self) -> bool {
        self.valuation().map_or(true, |v| v >= 0)
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.terms.values().next_back()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, k: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rat::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `x^k` (shifts every exponent by `k`).
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Returns `f(lambda * x)`: the coefficient of `x^k` picks up `lambda^k`.
    ///
    /// Errors with [`Error::ZeroScale`] if `lambda = 0` while a negative
    /// exponent is present; for a plain polynomial, `f(0 * x)` is the
    /// constant term.
    pub fn substitute_scaled(&self, lambda: &Rat) -> Result<LaurentPoly> {
        if lambda.is_zero() {
            if !self.is_polynomial() {
                return Err(Error::ZeroScale);
            }
            return Ok(LaurentPoly::constant(self.coeff(0)));
        }
        Ok(LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v * &lambda.pow(*k)))
                .collect(),
        })
    }

    /// Evaluates at a point. Errors on `x = 0` when negative exponents exist.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        if x.is_zero() && !self.is_polynomial() {
            return Err(Error::ZeroScale);
        }
        let mut acc = Rat::zero();
        for (k, c) in &self.terms {
            if x.is_zero() {
                if *k == 0 {
                    acc += c;
                }
            } else {
                acc += &(c * &x.pow(*k));
            }
        }
        Ok(acc)
    }

    /// Coefficients in ascending degree order starting at the valuation.
    /// Returns `(valuation, coefficients)`; zero maps to `(0, [])`.
    pub fn dense(&self) -> (i64, Vec<Rat>) {
        match (self.valuation(), self.degree()) {
            (Some(v), Some(d)) => {
                let mut out = vec![Rat::zero(); (d - v + 1) as usize];
                for (k, c) in &self.terms {
                    out[(k - v) as usize] = c.clone();
                }
                (v, out)
            }
            _ => (0, Vec::new()),
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (j, a) in &self.terms {
            for (k, b) in &rhs.terms {
                out.add_term(j + k, a * b);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", mag)?,
                (_, true) => write!(f, "x^{}", k)?,
                (_, false) => write!(f, "{}*x^{}", mag, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
