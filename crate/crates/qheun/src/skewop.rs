//! The skew algebra of q-shift operators.
//!
//! A [`SkewOperator`] is a finite sum `sum_k C_k(x) T^k` with rational
//! function coefficients, where `T^k f(x) = f(q^k x)`. Composition follows
//! the skew rule `(A T^j)(B T^k) = A(x) B(q^j x) T^(j+k)`. Coefficients are
//! kept in canonical [`RatFunc`] form, so operator equality is a structural
//! comparison of the shift base and the coefficient maps.

use crate::laurent::LaurentPoly;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A q-shift operator `sum_k C_k(x) T^k` over a fixed shift base `q`.
///
/// Invariants: no stored coefficient is the zero rational function, and
/// `q` is not 0, 1 or -1.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewOperator {
    q: Rat,
    coeffs: BTreeMap<i64, RatFunc>,
}

/// Validates a shift base.
pub fn check_base(q: &Rat) -> Result<()> {
    if q.is_zero() || q.is_one() || *q == Rat::new(-1, 1) {
        return Err(Error::Config(format!("shift base q = {q} is excluded")));
    }
    Ok(())
}

impl SkewOperator {
    /// The zero operator.
    pub fn zero(q: Rat) -> Self {
        SkewOperator {
            q,
            coeffs: BTreeMap::new(),
        }
    }

    /// The identity operator.
    pub fn identity(q: Rat) -> Self {
        SkewOperator::from_coeff(q, 0, RatFunc::one())
    }

    /// The pure shift `T^k`.
    pub fn shift(q: Rat, k: i64) -> Self {
        SkewOperator::from_coeff(q, k, RatFunc::one())
    }

    /// Multiplication by `x` (the operator `x * I`).
    pub fn mul_by_x(q: Rat) -> Self {
        SkewOperator::from_coeff(q, 0, RatFunc::x())
    }

    /// A single-term operator `C(x) T^k`.
    pub fn from_coeff(q: Rat, k: i64, c: RatFunc) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        SkewOperator { q, coeffs }
    }

    pub fn from_coeffs(q: Rat, entries: Vec<(i64, RatFunc)>) -> Self {
        let mut op = SkewOperator::zero(q);
        for (k, c) in entries {
            op.add_coeff(k, c);
        }
        op
    }

    pub fn base(&self) -> &Rat {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Shift degrees with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn coeff(&self, k: i64) -> RatFunc {
        self.coeffs.get(&k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &RatFunc)> {
        self.coeffs.iter()
    }

    fn add_coeff(&mut self, k: i64, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .coeffs
            .entry(k)
            .or_insert_with(RatFunc::zero);
        let sum = &*entry + &c;
        if sum.is_zero() {
            self.coeffs.remove(&k);
        } else {
            *entry = sum;
        }
    }

    fn check_same_base(&self, other: &SkewOperator) -> Result<()> {
        if self.q != other.q {
            return Err(Error::BaseMismatch {
                left: self.q.to_string(),
                right: other.q.to_string(),
            });
        }
        Ok(())
    }

    /// Applies the operator to a Laurent polynomial:
    /// `W f = sum_k C_k(x) f(q^k x)`.
    ///
    /// Errors with [`Error::NonPolynomialResult`] when a nontrivial
    /// denominator survives, i.e. the operator does not preserve the
    /// Laurent-polynomial module on this input.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        let mut acc = RatFunc::zero();
        for (k, c) in &self.coeffs {
            let shifted = f.substitute_scaled(&self.q.pow(*k))?;
            acc = &acc + &(c * &RatFunc::from_laurent(shifted));
        }
        acc.as_laurent().ok_or_else(|| Error::NonPolynomialResult {
            residual: acc.to_string(),
        })
    }

    pub fn add(&self, other: &SkewOperator) -> Result<SkewOperator> {
        self.check_same_base(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_coeff(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SkewOperator) -> Result<SkewOperator> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SkewOperator {
        SkewOperator {
            q: self.q.clone(),
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> SkewOperator {
        if c.is_zero() {
            return SkewOperator::zero(self.q.clone());
        }
        SkewOperator {
            q: self.q.clone(),
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.scale(c))).collect(),
        }
    }

    /// Composition: `(A T^j)(B T^k) = A(x) B(q^j x) T^(j+k)`, extended
    /// bilinearly.
    pub fn mul(&self, other: &SkewOperator) -> Result<SkewOperator> {
        self.check_same_base(other)?;
        let mut out = SkewOperator::zero(self.q.clone());
        for (j, a) in &self.coeffs {
            let qj = self.q.pow(*j);
            for (k, b) in &other.coeffs {
                let shifted = b.substitute_scaled(&qj)?;
                out.add_coeff(j + k, a * &shifted);
            }
        }
        Ok(out)
    }

    /// `UV - VU`.
    pub fn commutator(&self, other: &SkewOperator) -> Result<SkewOperator> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `UV + VU`.
    pub fn anticommutator(&self, other: &SkewOperator) -> Result<SkewOperator> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// Similarity transform by a power of `x`: the coefficient of `T^k` is
    /// multiplied by `mu^k`. With `mu = q^(-gamma)` this is exactly
    /// `x^gamma W x^(-gamma)`; `mu` is passed directly so the computation
    /// stays rational.
    pub fn conjugate_shift_scale(&self, mu: &Rat) -> Result<SkewOperator> {
        if mu.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(SkewOperator {
            q: self.q.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (*k, c.scale(&mu.pow(*k))))
                .collect(),
        })
    }

    /// Argument scaling `S_eps W S_eps^(-1)` with `(S_eps f)(x) = f(eps x)`:
    /// every coefficient becomes `C_k(eps x)`.
    pub fn scale_argument(&self, eps: &Rat) -> Result<SkewOperator> {
        if eps.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mut coeffs = BTreeMap::new();
        for (k, c) in &self.coeffs {
            coeffs.insert(*k, c.substitute_scaled(eps)?);
        }
        Ok(SkewOperator {
            q: self.q.clone(),
            coeffs,
        })
    }

    /// The affine-equivalence transform `theta(x) * (W + (alpha x + beta) I)`.
    pub fn affine(&self, theta: &RatFunc, alpha: &Rat, beta: &Rat) -> Result<SkewOperator> {
        if theta.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        let linear = RatFunc::from_laurent(LaurentPoly::from_terms(&[
            (1, alpha.clone()),
            (0, beta.clone()),
        ]));
        let shifted = self.add(&SkewOperator::from_coeff(self.q.clone(), 0, linear))?;
        Ok(SkewOperator {
            q: self.q.clone(),
            coeffs: shifted
                .coeffs
                .iter()
                .map(|(k, c)| (*k, theta * c))
                .collect(),
        })
    }

    /// Plain-text records `(k, numerator coefficients, denominator
    /// coefficients)`, coefficients in ascending degree order as exact
    /// `p/q` strings.
    pub fn to_records(&self) -> Vec<(i64, Vec<String>, Vec<String>)> {
        self.coeffs
            .iter()
            .map(|(k, c)| {
                let render = |p: &LaurentPoly| {
                    let (v, dense) = p.dense();
                    debug_assert!(v >= 0);
                    let mut out = vec!["0".to_string(); v as usize];
                    out.extend(dense.iter().map(|r| r.to_string()));
                    out
                };
                (*k, render(c.num()), render(c.den()))
            })
            .collect()
    }
}

impl fmt::Display for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            match *k {
                0 => write!(f, "[{}] I", c)?,
                1 => write!(f, "[{}] T+", c)?,
                -1 => write!(f, "[{}] T-", c)?,
                _ => write!(f, "[{}] T^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
