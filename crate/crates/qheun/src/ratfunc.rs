//! Reduced rational functions in one variable over [`Rat`].
//!
//! [`RatFunc`] is the canonical form used for operator coefficients:
//! numerator and denominator are ordinary polynomials with gcd 1 and a
//! monic denominator. Canonicality makes equality of operator coefficients
//! a structural comparison. A rational function whose denominator is a pure
//! power of `x` converts back to a Laurent polynomial on demand.

use crate::laurent::LaurentPoly;
use crate::rat::Rat;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A reduced rational function `num / den` with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc {
            num: LaurentPoly::constant(c),
            den: LaurentPoly::one(),
        }
    }

    pub fn x() -> Self {
        RatFunc::from_laurent(LaurentPoly::x())
    }

    /// Canonicalizes `num / den`. Laurent inputs are allowed: negative
    /// exponents are cleared by multiplying both sides by a power of `x`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        // Clear negative exponents.
        let shift = num.valuation().unwrap_or(0).min(den.valuation().unwrap_or(0));
        let (mut num, mut den) = if shift < 0 {
            (num.shift(-shift), den.shift(-shift))
        } else {
            (num, den)
        };
        // Cancel common powers of x.
        let xpow = num.valuation().unwrap().min(den.valuation().unwrap());
        if xpow > 0 {
            num = num.shift(-xpow);
            den = den.shift(-xpow);
        }
        let g = poly_gcd(&num, &den);
        if g.degree() != Some(0) {
            num = poly_div_exact(&num, &g);
            den = poly_div_exact(&den, &g);
        }
        let lead = den.leading_coeff().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    /// A Laurent polynomial as a rational function (denominator a power
    /// of `x` when negative exponents are present).
    pub fn from_laurent(f: LaurentPoly) -> Self {
        let v = f.valuation().unwrap_or(0);
        if v < 0 {
            RatFunc {
                num: f.shift(-v),
                den: LaurentPoly::monomial(Rat::one(), -v),
            }
        } else {
            RatFunc {
                num: f,
                den: LaurentPoly::one(),
            }
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Converts back to a Laurent polynomial when the denominator is a pure
    /// power of `x`; `None` otherwise.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let d = self.den.degree()?;
        if self.den == LaurentPoly::monomial(Rat::one(), d) {
            Some(self.num.shift(-d))
        } else {
            None
        }
    }

    /// Substitutes `x -> eps * x` in the function.
    pub fn substitute_scaled(&self, eps: &Rat) -> Result<RatFunc> {
        if eps.is_zero() {
            return Err(Error::ZeroScale);
        }
        RatFunc::new(
            self.num.substitute_scaled(eps)?,
            self.den.substitute_scaled(eps)?,
        )
    }

    /// Evaluates at a point where the denominator does not vanish.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.num.eval(x)? / &d)
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("denominators nonzero")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("denominators nonzero")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num).expect("checked nonzero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Exact quotient and remainder of two ordinary polynomials.
pub fn poly_div_rem(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    assert!(!b.is_zero(), "polynomial division by zero");
    assert!(a.is_polynomial() && b.is_polynomial(), "laurent division");
    let db = b.degree().unwrap();
    let lb = b.leading_coeff().unwrap().clone();
    let mut rem = a.clone();
    let mut quo = LaurentPoly::zero();
    while let Some(dr) = rem.degree() {
        if dr < db {
            break;
        }
        let c = &rem.coeff(dr) / &lb;
        let t = LaurentPoly::monomial(c, dr - db);
        quo = &quo + &t;
        rem = &rem - &(&t * b);
    }
    (quo, rem)
}

/// Exact quotient; panics when the division is not exact. Used only on
/// divisors produced by [`poly_gcd`].
fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (q, r) = poly_div_rem(a, b);
    assert!(r.is_zero(), "inexact polynomial division");
    q
}

/// Gcd of two ordinary polynomials, made monic.
///
/// Works on primitive integer polynomials with a primitive pseudo-remainder
/// sequence, which keeps intermediate coefficients small.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return make_monic(b);
    }
    if b.is_zero() {
        return make_monic(a);
    }
    let mut r0 = to_primitive_int(a);
    let mut r1 = to_primitive_int(b);
    if int_degree(&r0) < int_degree(&r1) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let rem = int_pseudo_rem(&r0, &r1);
        if rem.iter().all(|c| c.is_zero()) {
            break;
        }
        r0 = r1;
        r1 = int_primitive(rem);
    }
    let g = LaurentPoly::from_terms(
        &r1.iter()
            .enumerate()
            .map(|(i, c)| (i as i64, Rat::from_big(c.clone(), BigInt::from(1))))
            .collect::<Vec<_>>(),
    );
    make_monic(&g)
}

fn make_monic(p: &LaurentPoly) -> LaurentPoly {
    match p.leading_coeff() {
        None => LaurentPoly::zero(),
        Some(l) => p.scale(&l.recip()),
    }
}

fn to_primitive_int(p: &LaurentPoly) -> Vec<BigInt> {
    let (v, dense) = p.dense();
    assert!(v >= 0, "gcd needs ordinary polynomials");
    let mut lcm = BigInt::from(1);
    for c in &dense {
        let d = c.denom();
        let g = num_integer::Integer::gcd(&lcm, d);
        lcm = &lcm / &g * d;
    }
    let mut out = vec![BigInt::zero(); v as usize + dense.len()];
    for (i, c) in dense.iter().enumerate() {
        out[v as usize + i] = c.numer() * (&lcm / c.denom());
    }
    int_primitive(out)
}

fn int_degree(p: &[BigInt]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn int_primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    let mut content = BigInt::zero();
    for c in &p {
        content = num_integer::Integer::gcd(&content, c);
    }
    if content.is_zero() {
        return p;
    }
    if p.last().map_or(false, |c| c.is_negative()) {
        content = -content;
    }
    p.iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder `lc(b)^(da-db+1) * a mod b` over the integers.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = int_degree(b);
    let lb = b[db].clone();
    let mut rem: Vec<BigInt> = a.to_vec();
    loop {
        while rem.last().map_or(false, |c| c.is_zero()) {
            rem.pop();
        }
        if rem.is_empty() || rem.len() - 1 < db {
            return rem;
        }
        let dr = rem.len() - 1;
        let lead = rem[dr].clone();
        for c in rem.iter_mut() {
            *c = &*c * &lb;
        }
        for j in 0..=db {
            rem[dr - db + j] = &rem[dr - db + j] - &(&lead * &b[j]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(pairs)
    }

    #[test]
    fn common_factor_cancels() {
        // (x^2 - 1) / (x - 1) = x + 1
        let r = RatFunc::new(poly(&[(2, 1), (0, -1)]), poly(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(r, RatFunc::from_laurent(poly(&[(1, 1), (0, 1)])));
    }

    #[test]
    fn monic_denominator() {
        // 2x / 4 = x / 2
        let r = RatFunc::new(poly(&[(1, 2)]), poly(&[(0, 4)])).unwrap();
        assert_eq!(r.num(), &LaurentPoly::monomial(rat(1, 2), 1));
        assert_eq!(r.den(), &LaurentPoly::one());
    }

    #[test]
    fn heun_shift_coefficient() {
        // (q p3 + x p2) / x^2 with p3 = x^3, p2 = 0, q = 2 reduces to 2x.
        let num = poly(&[(3, 2)]);
        let r = RatFunc::new(num, poly(&[(2, 1)])).unwrap();
        assert_eq!(r, RatFunc::from_laurent(poly(&[(1, 2)])));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RatFunc::new(poly(&[(0, 1)]), LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn normalization_is_idempotent() {
        let r = RatFunc::new(poly(&[(3, 2), (1, -2)]), poly(&[(2, 4), (0, 4)])).unwrap();
        let again = RatFunc::new(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn laurent_round_trip() {
        let f = poly(&[(-2, 3), (1, 5)]);
        let r = RatFunc::from_laurent(f.clone());
        assert_eq!(r.as_laurent(), Some(f));
        // x / (x + 1) is not a Laurent polynomial.
        let s = RatFunc::new(poly(&[(1, 1)]), poly(&[(1, 1), (0, 1)])).unwrap();
        assert_eq!(s.as_laurent(), None);
    }

    #[test]
    fn arithmetic_round_trip() {
        let a = RatFunc::new(poly(&[(1, 1), (0, 1)]), poly(&[(2, 1)])).unwrap();
        let b = RatFunc::new(poly(&[(1, 1), (0, -1)]), poly(&[(1, 3)])).unwrap();
        let s = &(&a * &b) / &b;
        assert_eq!(s, a);
        let t = &(&a + &b) - &b;
        assert_eq!(t, a);
    }

    #[test]
    fn gcd_examples() {
        let g = poly_gcd(&poly(&[(2, 1), (0, -1)]), &poly(&[(1, 1), (0, -1)]));
        assert_eq!(g, poly(&[(1, 1), (0, -1)]));
        let g = poly_gcd(&poly(&[(2, 1)]), &poly(&[(1, 1)]));
        assert_eq!(g, poly(&[(1, 1)]));
        let g = poly_gcd(&poly(&[(1, 1), (0, 1)]), &poly(&[(1, 1), (0, -1)]));
        assert_eq!(g, LaurentPoly::one());
    }
}
