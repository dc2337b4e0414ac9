//! Polynomial families and the bispectral pair.
//!
//! The operator `Y` of the big q-Jacobi polynomials and the multiplication
//! operator `X = x` form the bispectral pair underlying the whole
//! construction: `Y` is diagonal on big q-Jacobi polynomials with
//! eigenvalues `lambda_n`, while `X` is tridiagonal on them; on the
//! q-Pochhammer basis the roles reverse. This module provides both bases,
//! the eigen-data, the three-term recurrence, and the Pastro polynomials
//! used by the pencil construction.

use crate::laurent::LaurentPoly;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::skewop::{check_base, SkewOperator};
use crate::{Error, Result};

/// Model parameters `(q, a, b, c)` of the big q-Jacobi family.
///
/// Over the rationals, `q^k = 1` for some `k >= 2` forces `q` to be a root
/// of unity, so excluding `q` in `{0, 1, -1}` already rules out every
/// root-of-unity degeneracy; consumers check their own extra predicates
/// (such as eigenvalue distinctness) at the point of use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub q: Rat,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl Params {
    pub fn new(q: Rat, a: Rat, b: Rat, c: Rat) -> Result<Self> {
        check_base(&q)?;
        Ok(Params { q, a, b, c })
    }
}

/// The q-Pochhammer symbol `(t; q)_k = (1 - t)(1 - t q) ... (1 - t q^(k-1))`.
pub fn qpochhammer_symbol(t: &Rat, q: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    let mut tq = t.clone();
    for _ in 0..k {
        acc = acc * (Rat::one() - tq.clone());
        tq = &tq * q;
    }
    acc
}

/// The q-Pochhammer basis element
/// `phi_n(x) = (x; q)_n = (1 - x)(1 - qx) ... (1 - q^(n-1) x)`.
pub fn pochhammer_basis(q: &Rat, n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    let mut scale = Rat::one();
    for _ in 0..n {
        let factor = LaurentPoly::from_terms(&[(0, Rat::one()), (1, -&scale)]);
        acc = &acc * &factor;
        scale = &scale * q;
    }
    acc
}

/// Expands an ordinary polynomial in the q-Pochhammer basis by triangular
/// back-substitution from the top degree. Coefficient `i` of the result
/// multiplies `phi_i`.
pub fn to_pochhammer_coeffs(f: &LaurentPoly, q: &Rat) -> Result<Vec<Rat>> {
    if let Some(v) = f.valuation() {
        if v < 0 {
            return Err(Error::NegativeExponent { exponent: v });
        }
    }
    let deg = match f.degree() {
        None => return Ok(vec![]),
        Some(d) => d as usize,
    };
    let basis: Vec<LaurentPoly> = (0..=deg).map(|n| pochhammer_basis(q, n)).collect();
    expand_in_graded_basis(f, &basis)
}

/// Expands `f` over a graded basis (`basis[n]` of exact degree `n` with a
/// nonzero leading coefficient) by back-substitution.
pub(crate) fn expand_in_graded_basis(
    f: &LaurentPoly,
    basis: &[LaurentPoly],
) -> Result<Vec<Rat>> {
    let mut rem = f.clone();
    let deg = match rem.degree() {
        None => return Ok(vec![]),
        Some(d) => d as usize,
    };
    if deg >= basis.len() {
        return Err(Error::ExpansionFailure {
            reason: format!("degree {deg} exceeds basis size {}", basis.len()),
        });
    }
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for n in (0..=deg).rev() {
        let c = rem.coeff(n as i64);
        if c.is_zero() {
            continue;
        }
        let lead = basis[n].coeff(n as i64);
        if lead.is_zero() {
            return Err(Error::ExpansionFailure {
                reason: format!("basis element {n} has zero leading coefficient"),
            });
        }
        let factor = &c / &lead;
        rem = &rem - &basis[n].scale(&factor);
        coeffs[n] = factor;
    }
    if !rem.is_zero() {
        return Err(Error::ExpansionFailure {
            reason: "back-substitution left a residual".into(),
        });
    }
    Ok(coeffs)
}

/// The big q-Jacobi q-difference operator
/// `Y = B(x) T+ + D(x) T- - (B(x) + D(x)) I` with
/// `B(x) = aq x^(-2) (x - 1)(bx - c)` and `D(x) = x^(-2) (x - aq)(x - cq)`.
pub fn big_qjacobi_operator(p: &Params) -> SkewOperator {
    let b = big_qjacobi_b(p);
    let d = big_qjacobi_d(p);
    let zero_shift = -&(&b + &d);
    SkewOperator::from_coeffs(
        p.q.clone(),
        vec![(1, b), (-1, d), (0, zero_shift)],
    )
}

/// `B(x) = aq x^(-2) (x - 1)(bx - c)`.
pub fn big_qjacobi_b(p: &Params) -> RatFunc {
    let x_minus_1 = LaurentPoly::from_terms(&[(1, Rat::one()), (0, -Rat::one())]);
    let bx_minus_c = LaurentPoly::from_terms(&[(1, p.b.clone()), (0, -&p.c)]);
    let num = (&x_minus_1 * &bx_minus_c).scale(&(&p.a * &p.q));
    RatFunc::new(num, LaurentPoly::monomial(Rat::one(), 2)).expect("x^2 != 0")
}

/// `D(x) = x^(-2) (x - aq)(x - cq)`.
pub fn big_qjacobi_d(p: &Params) -> RatFunc {
    let aq = &p.a * &p.q;
    let cq = &p.c * &p.q;
    let f1 = LaurentPoly::from_terms(&[(1, Rat::one()), (0, -aq)]);
    let f2 = LaurentPoly::from_terms(&[(1, Rat::one()), (0, -cq)]);
    RatFunc::new(&f1 * &f2, LaurentPoly::monomial(Rat::one(), 2)).expect("x^2 != 0")
}

/// Eigenvalue `lambda_n = (q^(-n) - 1)(1 - a b q^(n+1))` of `Y`.
pub fn lambda_n(p: &Params, n: usize) -> Rat {
    let n = n as i64;
    (p.q.pow(-n) - Rat::one()) * (Rat::one() - &p.a * &p.b * p.q.pow(n + 1))
}

/// Lowering coefficient `mu_n = (1 - q^(-n))(a q^n - 1)(c q^n - 1)` of the
/// action of `Y` on the q-Pochhammer basis.
pub fn mu_n(p: &Params, n: usize) -> Rat {
    let n = n as i64;
    (Rat::one() - p.q.pow(-n))
        * (&p.a * p.q.pow(n) - Rat::one())
        * (&p.c * p.q.pow(n) - Rat::one())
}

/// The monic big q-Jacobi polynomial of degree `n`, computed as the unique
/// monic solution of the eigenproblem `Y P_n = lambda_n P_n`.
///
/// `Y` lowers no degree and acts triangularly on monomials, so the
/// coefficients follow from back-substitution; the divisions require
/// `lambda_m != lambda_n` for `m < n` and fail with
/// [`Error::DegenerateSpectrum`] otherwise.
pub fn big_qjacobi_poly(p: &Params, n: usize) -> Result<LaurentPoly> {
    let y = big_qjacobi_operator(p);
    let lam_n = lambda_n(p, n);
    // Column m of Y on monomials: Y x^m, degree <= m.
    let columns: Vec<LaurentPoly> = (0..=n)
        .map(|m| y.apply(&LaurentPoly::monomial(Rat::one(), m as i64)))
        .collect::<Result<_>>()?;
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    for d in (0..n).rev() {
        // (lambda_d - lambda_n) c_d = - sum_{m > d} c_m [Y x^m]_d
        let mut rhs = Rat::zero();
        for m in (d + 1)..=n {
            if !coeffs[m].is_zero() {
                rhs += &(&coeffs[m] * &columns[m].coeff(d as i64));
            }
        }
        let gap = lambda_n(p, d) - lam_n.clone();
        if gap.is_zero() {
            return Err(Error::DegenerateSpectrum { m: d, n });
        }
        coeffs[d] = -&rhs / &gap;
    }
    Ok(LaurentPoly::from_coeffs(&coeffs))
}

/// Recurrence coefficients of the monic big q-Jacobi polynomials:
/// `x P_n = P_(n+1) + b_n P_n + u_n P_(n-1)`; `u_0` is absent.
///
/// Fitted by exact coefficient matching over the full identity (not just
/// two coefficients), so an inconsistency signals a degenerate parameter
/// choice or a bug.
pub fn recurrence_coeffs(p: &Params, n: usize) -> Result<(Rat, Option<Rat>)> {
    let pn = big_qjacobi_poly(p, n)?;
    let pn1 = big_qjacobi_poly(p, n + 1)?;
    let x_pn = &LaurentPoly::x() * &pn;
    let target = &x_pn - &pn1;
    if n == 0 {
        // target = b_0 P_0 = b_0.
        if target.degree().map_or(false, |d| d > 0) {
            return Err(Error::FitFailure {
                context: "degree-1 recurrence identity".into(),
            });
        }
        return Ok((target.coeff(0), None));
    }
    let pm = big_qjacobi_poly(p, n - 1)?;
    // target = b_n P_n + u_n P_(n-1): match coefficients of x^n and x^(n-1),
    // then verify the whole identity.
    let bn = target.coeff(n as i64); // P_n is monic
    let un = &(&target.coeff(n as i64 - 1) - &(&bn * &pn.coeff(n as i64 - 1)))
        / &pm.coeff(n as i64 - 1);
    let residual = &(&target - &pn.scale(&bn)) - &pm.scale(&un);
    if !residual.is_zero() {
        return Err(Error::FitFailure {
            context: format!("three-term recurrence at n = {n}, residual {residual}"),
        });
    }
    Ok((bn, Some(un)))
}

/// The monic Pastro polynomial `P_n(z)`, a terminating basic
/// hypergeometric sum with upper parameters `q^(-n), b`, lower parameter
/// `(b/a) q^(1-n)` and argument `z b^2 / a`, rescaled to leading
/// coefficient 1.
pub fn pastro_poly(a: &Rat, b: &Rat, q: &Rat, n: usize) -> Result<LaurentPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::SingularParameters {
            factor: "a, b must be nonzero".into(),
        });
    }
    let upper1 = q.pow(-(n as i64));
    let lower = &(b / a) * &q.pow(1 - n as i64);
    // Term ratio form: term_(k) = term_(k-1) *
    //   (1 - upper1 q^(k-1))(1 - b q^(k-1)) / ((1 - lower q^(k-1))(1 - q^k)) * arg
    let arg = &(b * b) / a;
    let mut poly = LaurentPoly::zero();
    let mut term = Rat::one();
    poly.add_term(0, term.clone());
    for k in 1..=n {
        let k1 = (k - 1) as i64;
        let low_factor = Rat::one() - &lower * &q.pow(k1);
        if low_factor.is_zero() {
            return Err(Error::SingularParameters {
                factor: format!("((b/a) q^(1 - {n}); q)_{k}"),
            });
        }
        let q_factor = Rat::one() - q.pow(k as i64);
        if q_factor.is_zero() {
            return Err(Error::SingularParameters {
                factor: format!("(q; q)_{k}"),
            });
        }
        let ratio = (Rat::one() - &upper1 * &q.pow(k1)) * (Rat::one() - b * &q.pow(k1));
        term = term * ratio * arg.clone() / (low_factor * q_factor);
        poly.add_term(k as i64, term.clone());
    }
    let lead = poly.coeff(n as i64);
    if lead.is_zero() {
        return Err(Error::SingularParameters {
            factor: format!("leading coefficient of degree {n} sum"),
        });
    }
    Ok(poly.scale(&lead.recip()))
}

/// Which family a [`PolyFamily`] caches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `phi_n(x) = (x; q)_n`; stored unmodified, leading coefficient
    /// `(-1)^n q^(n(n-1)/2)`.
    Pochhammer { q: Rat },
    /// Monic big q-Jacobi polynomials.
    BigQJacobi { params: Params },
    /// Monic Pastro polynomials.
    Pastro { a: Rat, b: Rat, q: Rat },
}

/// A cached graded polynomial family together with basis expansion.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    kind: FamilyKind,
    cache: Vec<LaurentPoly>,
}

impl PolyFamily {
    pub fn pochhammer(q: Rat) -> Self {
        PolyFamily {
            kind: FamilyKind::Pochhammer { q },
            cache: Vec::new(),
        }
    }

    pub fn big_qjacobi(params: Params) -> Self {
        PolyFamily {
            kind: FamilyKind::BigQJacobi { params },
            cache: Vec::new(),
        }
    }

    pub fn pastro(a: Rat, b: Rat, q: Rat) -> Self {
        PolyFamily {
            kind: FamilyKind::Pastro { a, b, q },
            cache: Vec::new(),
        }
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    /// The degree-`n` member, built and cached on demand.
    pub fn poly(&mut self, n: usize) -> Result<&LaurentPoly> {
        while self.cache.len() <= n {
            let m = self.cache.len();
            let next = match &self.kind {
                FamilyKind::Pochhammer { q } => pochhammer_basis(q, m),
                FamilyKind::BigQJacobi { params } => big_qjacobi_poly(params, m)?,
                FamilyKind::Pastro { a, b, q } => pastro_poly(a, b, q, m)?,
            };
            self.cache.push(next);
        }
        Ok(&self.cache[n])
    }

    /// Expands an ordinary polynomial over this family.
    pub fn expand(&mut self, f: &LaurentPoly) -> Result<Vec<Rat>> {
        if let Some(v) = f.valuation() {
            if v < 0 {
                return Err(Error::NegativeExponent { exponent: v });
            }
        }
        let deg = match f.degree() {
            None => return Ok(vec![]),
            Some(d) => d as usize,
        };
        self.poly(deg)?;
        expand_in_graded_basis(f, &self.cache[..=deg])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn sample_params() -> Params {
        Params::new(rat(2, 1), rat(1, 3), rat(1, 5), rat(1, 7)).unwrap()
    }

    #[test]
    fn pochhammer_basis_values() {
        assert_eq!(pochhammer_basis(&rat(2, 1), 0), LaurentPoly::one());
        assert_eq!(
            pochhammer_basis(&rat(2, 1), 2),
            LaurentPoly::from_ints(&[(0, 1), (1, -3), (2, 2)])
        );
        // (1-x)(1-2x)(1-4x) = 1 - 7x + 14x^2 - 8x^3
        assert_eq!(
            pochhammer_basis(&rat(2, 1), 3),
            LaurentPoly::from_ints(&[(0, 1), (1, -7), (2, 14), (3, -8)])
        );
    }

    #[test]
    fn pochhammer_symbol_values() {
        assert_eq!(qpochhammer_symbol(&rat(3, 1), &rat(2, 1), 0), Rat::one());
        assert_eq!(qpochhammer_symbol(&Rat::one(), &rat(2, 1), 3), Rat::zero());
        // (1/2; 2)_2 = (1 - 1/2)(1 - 1) = 0
        assert_eq!(qpochhammer_symbol(&rat(1, 2), &rat(2, 1), 2), Rat::zero());
        // (3; 2)_2 = (1 - 3)(1 - 6) = 10
        assert_eq!(qpochhammer_symbol(&rat(3, 1), &rat(2, 1), 2), rat(10, 1));
    }

    #[test]
    fn pochhammer_expansion_inverts() {
        let q = rat(2, 1);
        // x = phi_0 - phi_1.
        let coeffs = to_pochhammer_coeffs(&LaurentPoly::x(), &q).unwrap();
        assert_eq!(coeffs, vec![Rat::one(), rat(-1, 1)]);
        // Basis self-expansion gives a unit vector.
        let phi5 = pochhammer_basis(&q, 5);
        let coeffs = to_pochhammer_coeffs(&phi5, &q).unwrap();
        let mut expect = vec![Rat::zero(); 6];
        expect[5] = Rat::one();
        assert_eq!(coeffs, expect);
        // Constants are phi_0 multiples.
        assert_eq!(
            to_pochhammer_coeffs(&LaurentPoly::one(), &q).unwrap(),
            vec![Rat::one()]
        );
        // Laurent input is rejected.
        assert!(to_pochhammer_coeffs(&LaurentPoly::from_ints(&[(-1, 1)]), &q).is_err());
    }

    #[test]
    fn y_annihilates_constants() {
        let y = big_qjacobi_operator(&sample_params());
        assert!(y.apply(&LaurentPoly::one()).unwrap().is_zero());
    }

    #[test]
    fn lambda_and_mu_values() {
        let p = sample_params();
        assert_eq!(lambda_n(&p, 0), Rat::zero());
        assert_eq!(mu_n(&p, 0), Rat::zero());
        // lambda_1 = (1/2 - 1)(1 - 4/15) = -11/30 at q=2, a=1/3, b=1/5.
        assert_eq!(lambda_n(&p, 1), rat(-11, 30));
        // mu_1 = (1 - 1/2)(2/3 - 1)(2/7 - 1) = 5/42 at q=2, a=1/3, c=1/7.
        assert_eq!(mu_n(&p, 1), rat(5, 42));
    }

    #[test]
    fn y_action_on_monomial_has_lambda_leading() {
        let p = sample_params();
        let y = big_qjacobi_operator(&p);
        let out = y.apply(&LaurentPoly::x()).unwrap();
        assert!(out.degree().unwrap() <= 1);
        assert_eq!(out.coeff(1), lambda_n(&p, 1));
    }

    #[test]
    fn y_pochhammer_action() {
        let p = sample_params();
        let y = big_qjacobi_operator(&p);
        for n in 0..=10usize {
            let phi_n = pochhammer_basis(&p.q, n);
            let lhs = y.apply(&phi_n).unwrap();
            let mut rhs = phi_n.scale(&lambda_n(&p, n));
            if n > 0 {
                rhs = &rhs + &pochhammer_basis(&p.q, n - 1).scale(&mu_n(&p, n));
            }
            assert_eq!(lhs, rhs, "Y phi_{n}");
        }
    }

    #[test]
    fn eigenpolynomials_have_zero_residual() {
        let p = sample_params();
        let y = big_qjacobi_operator(&p);
        for n in 0..=6usize {
            let pn = big_qjacobi_poly(&p, n).unwrap();
            assert_eq!(pn.coeff(n as i64), Rat::one(), "monic");
            let residual = &y.apply(&pn).unwrap() - &pn.scale(&lambda_n(&p, n));
            assert!(residual.is_zero(), "residual at n = {n}: {residual}");
        }
        assert_eq!(big_qjacobi_poly(&p, 0).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn recurrence_holds_exactly() {
        let p = sample_params();
        let (b0, u0) = recurrence_coeffs(&p, 0).unwrap();
        assert!(u0.is_none());
        let p1 = big_qjacobi_poly(&p, 1).unwrap();
        assert_eq!(b0, -p1.coeff(0));
        for n in 1..=5usize {
            let (bn, un) = recurrence_coeffs(&p, n).unwrap();
            let un = un.unwrap();
            let pn = big_qjacobi_poly(&p, n).unwrap();
            let lhs = &LaurentPoly::x() * &pn;
            let rhs = &(&big_qjacobi_poly(&p, n + 1).unwrap() + &pn.scale(&bn))
                + &big_qjacobi_poly(&p, n - 1).unwrap().scale(&un);
            assert_eq!(lhs, rhs, "recurrence at n = {n}");
        }
    }

    #[test]
    fn pastro_poly_is_monic() {
        let (a, b, q) = (rat(2, 3), rat(3, 5), rat(2, 1));
        assert_eq!(pastro_poly(&a, &b, &q, 0).unwrap(), LaurentPoly::one());
        for n in 1..=6usize {
            let pn = pastro_poly(&a, &b, &q, n).unwrap();
            assert_eq!(pn.degree(), Some(n as i64));
            assert_eq!(pn.coeff(n as i64), Rat::one());
        }
    }

    #[test]
    fn pastro_singular_parameters_reported() {
        // b/a = q makes the lower factor (q^(1-n) b/a; q)_k vanish for n=2, k=1.
        let err = pastro_poly(&Rat::one(), &rat(2, 1), &rat(2, 1), 2).unwrap_err();
        assert!(matches!(err, Error::SingularParameters { .. }));
        assert!(pastro_poly(&Rat::zero(), &Rat::one(), &rat(2, 1), 1).is_err());
    }

    #[test]
    fn family_cache_and_expansion() {
        let p = sample_params();
        let mut fam = PolyFamily::big_qjacobi(p.clone());
        let f = {
            let p2 = fam.poly(2).unwrap().clone();
            let p0 = fam.poly(0).unwrap().clone();
            &p2.scale(&rat(3, 1)) + &p0.scale(&rat(-1, 2))
        };
        let coeffs = fam.expand(&f).unwrap();
        assert_eq!(coeffs, vec![rat(-1, 2), Rat::zero(), rat(3, 1)]);
    }
}
