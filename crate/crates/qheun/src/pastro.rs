//! Pastro biorthogonal polynomials and the q-Heun pencil.
//!
//! The Pastro polynomials are not eigenfunctions of a single operator but
//! lie in the kernel of the linear pencil `L1 - lambda_n L2` of two
//! little-q-Heun operators, with `lambda_n = q^n / (q - 1)`. The pencil
//! residual doubles as the oracle for the terminating hypergeometric-sum
//! convention used to build the polynomials: it vanishes identically iff
//! the convention is right.

use crate::families::pastro_poly;
use crate::laurent::LaurentPoly;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::report::CheckRecord;
use crate::skewop::{check_base, SkewOperator};
use crate::{Error, Result};
use serde_json::json;

/// Parameters `(a, b, q)` of the Pastro family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PastroParams {
    pub a: Rat,
    pub b: Rat,
    pub q: Rat,
}

impl PastroParams {
    pub fn new(a: Rat, b: Rat, q: Rat) -> Result<Self> {
        check_base(&q)?;
        if a.is_zero() || b.is_zero() {
            return Err(Error::SingularParameters {
                factor: "a and b must be nonzero".into(),
            });
        }
        Ok(PastroParams { a, b, q })
    }

    pub fn poly(&self, n: usize) -> Result<LaurentPoly> {
        pastro_poly(&self.a, &self.b, &self.q, n)
    }
}

/// `L1 = ((b^2 x - q) / ((q - 1) x)) T+ + ((q - bx) / ((q - 1) x)) I`.
pub fn pastro_l1(pp: &PastroParams) -> SkewOperator {
    let (b, q) = (&pp.b, &pp.q);
    let qm1 = q - &Rat::one();
    let den = LaurentPoly::monomial(qm1, 1);
    let plus_num = LaurentPoly::from_terms(&[(1, b * b), (0, -q)]);
    let zero_num = LaurentPoly::from_terms(&[(0, q.clone()), (1, -b)]);
    SkewOperator::from_coeffs(
        q.clone(),
        vec![
            (1, RatFunc::new(plus_num, den.clone()).expect("(q-1)x != 0")),
            (0, RatFunc::new(zero_num, den).expect("(q-1)x != 0")),
        ],
    )
}

/// `L2 = ((aq - b^2 x) / (bx)) T- + ((b^3 x - aq) / (bx)) I`.
pub fn pastro_l2(pp: &PastroParams) -> SkewOperator {
    let (a, b, q) = (&pp.a, &pp.b, &pp.q);
    let den = LaurentPoly::monomial(b.clone(), 1);
    let aq = a * q;
    let minus_num = LaurentPoly::from_terms(&[(0, aq.clone()), (1, -&(b * b))]);
    let zero_num = LaurentPoly::from_terms(&[(1, b * &(b * b)), (0, -aq)]);
    SkewOperator::from_coeffs(
        q.clone(),
        vec![
            (-1, RatFunc::new(minus_num, den.clone()).expect("bx != 0")),
            (0, RatFunc::new(zero_num, den).expect("bx != 0")),
        ],
    )
}

/// The pencil eigenvalue `lambda_n = q^n / (q - 1)`.
pub fn pastro_lambda(q: &Rat, n: usize) -> Rat {
    &q.pow(n as i64) / &(q - &Rat::one())
}

/// Checks `(L1 - lambda_n L2) P_n = 0` exactly for `n <= n_max`.
pub fn pastro_gevp_check(pp: &PastroParams, n_max: usize) -> Vec<CheckRecord> {
    let l1 = pastro_l1(pp);
    let l2 = pastro_l2(pp);
    let mut records = Vec::new();
    for n in 0..=n_max {
        let name = format!("pastro-gevp/n={n}");
        let inputs = json!({
            "n": n,
            "lambda_n": pastro_lambda(&pp.q, n).to_string(),
        });
        let outcome = (|| -> Result<LaurentPoly> {
            let pn = pp.poly(n)?;
            let pencil = l1.sub(&l2.scale(&pastro_lambda(&pp.q, n)))?;
            pencil.apply(&pn)
        })();
        match outcome {
            Ok(residual) => records.push(CheckRecord::assert(
                name,
                inputs,
                residual.is_zero(),
                format!("pencil residual {residual}"),
            )),
            Err(e) => records.push(CheckRecord::fail(name, inputs, e.to_string())),
        }
    }
    records
}

/// Fits the Laurent-type recurrence
/// `P_(n+1)(x) + g_n P_n(x) = x (P_n(x) + e_n P_(n-1)(x))`
/// by exact coefficient matching; two unknowns against `n + 2` equations,
/// so the fit is itself a consistency proof of the polynomial convention.
pub fn pastro_recurrence_fit(pp: &PastroParams, n: usize) -> Result<(Rat, Rat)> {
    assert!(n >= 1, "recurrence needs P_(n-1)");
    let pm = pp.poly(n - 1)?;
    let pn = pp.poly(n)?;
    let pn1 = pp.poly(n + 1)?;
    let x_pn = &LaurentPoly::x() * &pn;
    // P_(n+1) + g_n P_n - x P_n - e_n x P_(n-1) = 0.
    let target = &x_pn - &pn1; // g_n P_n - e_n x P_(n-1) = target
    let x_pm = &LaurentPoly::x() * &pm;
    // Match on x^n (P_n monic, x P_(n-1) monic of degree n):
    //   g_n - e_n = [x^n] target  ... but both have x^n coefficient 1, so
    // solve the 2x2 from the top two coefficients and verify everything.
    // [x^n]:     g_n * 1         - e_n * 1                    = t_n
    // [x^(n-1)]: g_n * pn[n-1]   - e_n * x_pm[n-1]            = t_(n-1)
    let tn = target.coeff(n as i64);
    let tn1 = target.coeff(n as i64 - 1);
    let a11 = Rat::one();
    let a12 = -Rat::one();
    let a21 = pn.coeff(n as i64 - 1);
    let a22 = -x_pm.coeff(n as i64 - 1);
    let det = &(&a11 * &a22) - &(&a12 * &a21);
    if det.is_zero() {
        return Err(Error::FitFailure {
            context: format!("singular 2x2 system in Laurent recurrence fit at n = {n}"),
        });
    }
    let gn = &(&(&tn * &a22) - &(&a12 * &tn1)) / &det;
    let en = &(&(&a11 * &tn1) - &(&tn * &a21)) / &det;
    let residual = &(&target - &pn.scale(&gn)) + &x_pm.scale(&en);
    if !residual.is_zero() {
        return Err(Error::FitFailure {
            context: format!("Laurent recurrence at n = {n}, residual {residual}"),
        });
    }
    Ok((gn, en))
}

/// Regenerates `P_(n+1)` from the fitted recurrence and compares with the
/// hypergeometric-sum construction; records one check per degree.
pub fn pastro_recurrence_check(pp: &PastroParams, n_max: usize) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for n in 1..=n_max {
        let name = format!("pastro-recurrence/n={n}");
        let outcome = (|| -> Result<bool> {
            let (gn, en) = pastro_recurrence_fit(pp, n)?;
            let pm = pp.poly(n - 1)?;
            let pn = pp.poly(n)?;
            let pn1 = pp.poly(n + 1)?;
            let regenerated =
                &(&LaurentPoly::x() * &(&pn + &pm.scale(&en))) - &pn.scale(&gn);
            Ok(regenerated == pn1)
        })();
        let inputs = json!({ "n": n });
        match outcome {
            Ok(ok) => records.push(CheckRecord::assert(
                name,
                inputs,
                ok,
                "recurrence-generated polynomial differs from sum-generated",
            )),
            Err(e) => records.push(CheckRecord::fail(name, inputs, e.to_string())),
        }
    }
    records
}
