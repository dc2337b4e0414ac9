//! The q-Heun operators on the exponential grid.
//!
//! The big q-Heun operator is the most general second-order q-difference
//! operator sending polynomials of degree `n` to polynomials of degree at
//! most `n + 1`; its coefficients are
//!
//! ```text
//! A1 = p3(x) / x^2,   A2 = (q p3(x) + x p2(x)) / x^2,
//! A0 = -A1 - A2 + p1(x),        deg p_i <= i.
//! ```
//!
//! The same operator arises as the bilinear combination
//! `tau1 XY + tau2 YX + tau3 X + tau4 Y + tau0 I` of the bispectral pair
//! `(X, Y)`, and is tridiagonal on both the q-Pochhammer and big q-Jacobi
//! bases. This module builds every member of the family (big, little, the
//! Hahn form, and the two Takemura presentations), converts between them,
//! and exposes the characterization checks as executable reports.

use crate::families::{lambda_n, recurrence_coeffs, FamilyKind, Params, PolyFamily};
use crate::laurent::LaurentPoly;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::report::CheckRecord;
use crate::skewop::{check_base, SkewOperator};
use crate::{Error, Result};
use serde_json::json;

/// The polynomial data `(p3, p2, p1)` of a big q-Heun operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeunData {
    pub p3: LaurentPoly,
    pub p2: LaurentPoly,
    pub p1: LaurentPoly,
    pub q: Rat,
}

impl HeunData {
    pub fn new(p3: LaurentPoly, p2: LaurentPoly, p1: LaurentPoly, q: Rat) -> Result<Self> {
        check_base(&q)?;
        for (p, bound, name) in [(&p3, 3, "p3"), (&p2, 2, "p2"), (&p1, 1, "p1")] {
            if !p.is_polynomial() {
                return Err(Error::NotHeunShape {
                    reason: format!("{name} has a negative exponent"),
                });
            }
            if p.degree().unwrap_or(0) > bound {
                return Err(Error::NotHeunShape {
                    reason: format!("deg {name} > {bound}"),
                });
            }
        }
        Ok(HeunData { p3, p2, p1, q })
    }
}

/// Tridiagonalization parameters `tau0 .. tau4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSet {
    pub t0: Rat,
    pub t1: Rat,
    pub t2: Rat,
    pub t3: Rat,
    pub t4: Rat,
}

impl TauSet {
    pub fn new(t0: Rat, t1: Rat, t2: Rat, t3: Rat, t4: Rat) -> Self {
        TauSet { t0, t1, t2, t3, t4 }
    }
}

fn x_pow(k: i64) -> LaurentPoly {
    LaurentPoly::monomial(Rat::one(), k)
}

/// The big q-Heun operator of the given polynomial data.
pub fn big_q_heun(d: &HeunData) -> SkewOperator {
    let x2 = x_pow(2);
    let a1 = RatFunc::new(d.p3.clone(), x2.clone()).expect("x^2 != 0");
    let a2 = RatFunc::new(&d.p3.scale(&d.q) + &(&LaurentPoly::x() * &d.p2), x2)
        .expect("x^2 != 0");
    let a0 = &(&RatFunc::from_laurent(d.p1.clone()) - &a1) - &a2;
    SkewOperator::from_coeffs(d.q.clone(), vec![(1, a1), (-1, a2), (0, a0)])
}

/// Closed form of the big q-Heun action on a monomial:
/// `W x^n = (q^n - 1) { (1 - q^(1-n)) p3 - q^(-n) x p2 } x^(n-2) + p1 x^n`.
pub fn big_q_heun_on_monomial(d: &HeunData, n: usize) -> LaurentPoly {
    let n = n as i64;
    let outer = d.q.pow(n) - Rat::one();
    let bracket = &d.p3.scale(&(Rat::one() - d.q.pow(1 - n)))
        - &(&LaurentPoly::x() * &d.p2).scale(&d.q.pow(-n));
    &bracket.scale(&outer).shift(n - 2) + &d.p1.shift(n)
}

/// Solves `a1 mu + a0 + a2 / mu = 0` for a nonzero rational `mu`.
fn solve_scale_equation(a1: &Rat, a0: &Rat, a2: &Rat) -> Option<Rat> {
    // Equivalent to a1 mu^2 + a0 mu + a2 = 0 with mu != 0.
    if a1.is_zero() {
        if a0.is_zero() {
            return None; // constant equation, no mu helps
        }
        let mu = -&(a2 / a0);
        return if mu.is_zero() { None } else { Some(mu) };
    }
    let disc = a0 * a0 - Rat::from(4) * a1 * a2;
    let root = disc.sqrt_exact()?;
    let two_a1 = Rat::from(2) * a1.clone();
    for sign in [Rat::one(), Rat::new(-1, 1)] {
        let mu = &(&(-a0.clone()) + &(&sign * &root)) / &two_a1;
        if !mu.is_zero() {
            return Some(mu);
        }
    }
    None
}

/// The little q-Heun / Hahn-form operator
/// `W = (s1/x) T+ + (s2/x) T- + (s0/x) I` with quadratic `s_k`.
///
/// With `enforce` set and the `x^2` coefficients of `s0 + s1 + s2` not yet
/// cancelling, the operator is conjugated by a similarity scale `mu`
/// solving `mu a1 + a0 + a2/mu = 0` on those leading coefficients;
/// [`Error::NoRationalScale`] is reported when the quadratic has no
/// rational root rather than approximating.
pub fn little_q_heun(
    s0: &LaurentPoly,
    s1: &LaurentPoly,
    s2: &LaurentPoly,
    q: &Rat,
    enforce: bool,
) -> Result<SkewOperator> {
    check_base(q)?;
    for (s, name) in [(s0, "s0"), (s1, "s1"), (s2, "s2")] {
        if !s.is_polynomial() || s.degree().unwrap_or(0) > 2 {
            return Err(Error::NotHeunShape {
                reason: format!("{name} must be a polynomial of degree <= 2"),
            });
        }
    }
    let x = x_pow(1);
    let op = SkewOperator::from_coeffs(
        q.clone(),
        vec![
            (1, RatFunc::new(s1.clone(), x.clone())?),
            (-1, RatFunc::new(s2.clone(), x.clone())?),
            (0, RatFunc::new(s0.clone(), x)?),
        ],
    );
    if !enforce {
        return Ok(op);
    }
    let (a0, a1, a2) = (s0.coeff(2), s1.coeff(2), s2.coeff(2));
    if (&(&a0 + &a1) + &a2).is_zero() {
        return Ok(op);
    }
    let mu = solve_scale_equation(&a1, &a0, &a2).ok_or_else(|| Error::NoRationalScale {
        equation: format!("({a1}) mu + ({a0}) + ({a2})/mu = 0"),
    })?;
    op.conjugate_shift_scale(&mu)
}

/// The multiplication operator `X = x I` over the base of `p`.
pub fn x_operator(p: &Params) -> SkewOperator {
    SkewOperator::mul_by_x(p.q.clone())
}

/// The algebraic Heun operator `tau1 XY + tau2 YX + tau3 X + tau4 Y +
/// tau0 I`, built compositionally from the bispectral pair.
pub fn algebraic_heun(p: &Params, t: &TauSet) -> SkewOperator {
    let x = x_operator(p);
    let y = crate::families::big_qjacobi_operator(p);
    let xy = x.mul(&y).expect("same base");
    let yx = y.mul(&x).expect("same base");
    let id = SkewOperator::identity(p.q.clone());
    xy.scale(&t.t1)
        .add(&yx.scale(&t.t2))
        .and_then(|w| w.add(&x.scale(&t.t3)))
        .and_then(|w| w.add(&y.scale(&t.t4)))
        .and_then(|w| w.add(&id.scale(&t.t0)))
        .expect("same base")
}

/// The same operator from its closed-form coefficients.
pub fn algebraic_heun_closed(p: &Params, t: &TauSet) -> SkewOperator {
    let (q, a, b, c) = (&p.q, &p.a, &p.b, &p.c);
    let x2 = x_pow(2);
    let lin = |slope: Rat, inter: Rat| LaurentPoly::from_terms(&[(1, slope), (0, inter)]);

    // A1 = aq (x - 1)(bx - c) ((tau1 + q tau2) x + tau4) / x^2
    let a1_num = (&(&lin(Rat::one(), -Rat::one()) * &lin(b.clone(), -&p.c))
        * &lin(&t.t1 + &(q * &t.t2), t.t4.clone()))
        .scale(&(a * q));
    let a1 = RatFunc::new(a1_num, x2.clone()).expect("x^2 != 0");

    // A2 = (x - aq)(x - cq) ((tau1 + tau2/q) x + tau4) / x^2
    let a2_num = &(&lin(Rat::one(), -&(a * q)) * &lin(Rat::one(), -&(c * q)))
        * &lin(&t.t1 + &(&t.t2 / q), t.t4.clone());
    let a2 = RatFunc::new(a2_num, x2).expect("x^2 != 0");

    // p1 = (tau2 (q-1)(qab - 1/q) + tau3) x + tau0 + (1-q)(qa(b+c) - a - c) tau2
    let slope = &t.t2 * &((q - &Rat::one()) * (q * a * b - q.recip())) + t.t3.clone();
    let inter = t.t0.clone()
        + (Rat::one() - q.clone()) * (q * a * &(b + c) - a.clone() - c.clone()) * t.t2.clone();
    let p1 = RatFunc::from_laurent(lin(slope, inter));
    let a0 = &(&p1 - &a1) - &a2;

    SkewOperator::from_coeffs(q.clone(), vec![(1, a1), (-1, a2), (0, a0)])
}

/// The Takemura `A<4>` operator in pre-exponentiated parameters:
/// `u_i = q^(h_i + 1/2) t_i`, `w_i = q^(l_i - 1/2) t_i`,
/// `rho = q^(alpha_1 + alpha_2)`, `sigma_i = q^(alpha_i)`, and `kappa` the
/// constant prefactor of the `1/x` term. Half-integer q-powers are
/// irrational for rational q, so the combinations themselves are passed.
#[allow(clippy::too_many_arguments)]
pub fn takemura_a4(
    u1: &Rat,
    u2: &Rat,
    w1: &Rat,
    w2: &Rat,
    rho: &Rat,
    sigma1: &Rat,
    sigma2: &Rat,
    kappa: &Rat,
    q: &Rat,
) -> SkewOperator {
    let x = x_pow(1);
    let root = |r: &Rat| LaurentPoly::from_terms(&[(1, Rat::one()), (0, -r)]);
    let c_minus = RatFunc::new(&root(u1) * &root(u2), x.clone()).expect("x != 0");
    let c_plus = RatFunc::new((&root(w1) * &root(w2)).scale(rho), x.clone()).expect("x != 0");
    let zero_num = LaurentPoly::from_terms(&[(2, -&(sigma1 + sigma2)), (0, -kappa.clone())]);
    let c_zero = RatFunc::new(zero_num, x).expect("x != 0");
    SkewOperator::from_coeffs(q.clone(), vec![(-1, c_minus), (1, c_plus), (0, c_zero)])
}

/// The Takemura `A<3>` operator in pre-exponentiated parameters
/// `u_i = q^(h_i + 1/2) t_i`, `w_i = q^(l_i - 1/2) t_i` and constant
/// `kappa`. The zero-shift part carries explicit `sqrt(q)` factors, so `q`
/// must be an exact square of a rational; otherwise
/// [`Error::NonSquareBase`] is returned.
pub fn takemura_a3(u: [&Rat; 3], w: [&Rat; 3], kappa: &Rat, q: &Rat) -> Result<SkewOperator> {
    check_base(q)?;
    let v = q
        .sqrt_exact()
        .ok_or_else(|| Error::NonSquareBase { q: q.to_string() })?;
    let x = x_pow(1);
    let root = |r: &Rat| LaurentPoly::from_terms(&[(1, Rat::one()), (0, -r)]);
    let cubic = |rs: [&Rat; 3]| &(&root(rs[0]) * &root(rs[1])) * &root(rs[2]);
    let c_minus = RatFunc::new(cubic(u), x.clone())?;
    let c_plus = RatFunc::new(cubic(w), x.clone())?;
    // -(sqrt(q) + 1/sqrt(q)) x^2 + (sum(u)/sqrt(q) + sqrt(q) sum(w)) x + kappa/x
    let sum_u = u.iter().fold(Rat::zero(), |acc, r| acc + (*r).clone());
    let sum_w = w.iter().fold(Rat::zero(), |acc, r| acc + (*r).clone());
    let zero_num = LaurentPoly::from_terms(&[
        (3, -(&v + &v.recip())),
        (2, &sum_u / &v + &v * &sum_w),
        (0, kappa.clone()),
    ]);
    let c_zero = RatFunc::new(zero_num, x)?;
    Ok(SkewOperator::from_coeffs(
        q.clone(),
        vec![(-1, c_minus), (1, c_plus), (0, c_zero)],
    ))
}

/// Recovers the polynomial data of a big q-Heun operator: `p3 = A1 x^2`,
/// `p2 = (A2 x^2 - q p3) / x`, `p1 = A0 + A1 + A2`. Exact inverse of
/// [`big_q_heun`]; any shape violation reports [`Error::NotHeunShape`].
pub fn extract_heun_data(w: &SkewOperator) -> Result<HeunData> {
    if w.support().iter().any(|k| k.abs() > 1) {
        return Err(Error::NotHeunShape {
            reason: format!("support {:?} exceeds {{-1, 0, 1}}", w.support()),
        });
    }
    let q = w.base().clone();
    let x2 = RatFunc::from_laurent(x_pow(2));
    let as_poly = |f: &RatFunc, bound: i64, name: &str| -> Result<LaurentPoly> {
        let p = f.as_laurent().ok_or_else(|| Error::NotHeunShape {
            reason: format!("{name} is not a Laurent polynomial: {f}"),
        })?;
        if !p.is_polynomial() {
            return Err(Error::NotHeunShape {
                reason: format!("{name} has a negative exponent: {p}"),
            });
        }
        if p.degree().unwrap_or(0) > bound {
            return Err(Error::NotHeunShape {
                reason: format!("deg {name} > {bound}: {p}"),
            });
        }
        Ok(p)
    };

    let p3 = as_poly(&(&w.coeff(1) * &x2), 3, "p3 = A1 x^2")?;
    let a2x2 = as_poly(&(&w.coeff(-1) * &x2), 4, "A2 x^2")?;
    let diff = &a2x2 - &p3.scale(&q);
    if diff.valuation().map_or(false, |v| v < 1) {
        return Err(Error::NotHeunShape {
            reason: format!("A2 x^2 - q p3 is not divisible by x: {diff}"),
        });
    }
    let p2 = diff.shift(-1);
    if p2.degree().unwrap_or(0) > 2 {
        return Err(Error::NotHeunShape {
            reason: format!("deg p2 > 2: {p2}"),
        });
    }
    let p1_sum = &(&w.coeff(0) + &w.coeff(1)) + &w.coeff(-1);
    let p1 = as_poly(&p1_sum, 1, "p1 = A0 + A1 + A2")?;
    HeunData::new(p3, p2, p1, q)
}

/// Checks the degree-raising property on monomials: `deg(W x^n) <= n + 1`
/// for `0 <= n <= n_max`. With `data` supplied, the application is also
/// compared against the monomial closed form. Violations become failed
/// records carrying the witness polynomial.
pub fn check_degree_raising(
    w: &SkewOperator,
    n_max: usize,
    data: Option<&HeunData>,
) -> Vec<CheckRecord> {
    let mut records = Vec::new();
    for n in 0..=n_max {
        let inputs = json!({ "n": n });
        let name = format!("degree-raising/n={n}");
        match w.apply(&LaurentPoly::monomial(Rat::one(), n as i64)) {
            Err(e) => records.push(CheckRecord::fail(name, inputs, e.to_string())),
            Ok(image) => {
                let deg_ok =
                    image.is_polynomial() && image.degree().map_or(true, |d| d <= n as i64 + 1);
                if !deg_ok {
                    records.push(CheckRecord::fail(name, inputs, format!("W x^{n} = {image}")));
                    continue;
                }
                match data {
                    None => records.push(CheckRecord::pass(name, inputs)),
                    Some(d) => {
                        let closed = big_q_heun_on_monomial(d, n);
                        records.push(CheckRecord::assert(
                            format!("degree-raising/closed-form/n={n}"),
                            inputs,
                            image == closed,
                            format!("apply gave {image}, closed form gave {closed}"),
                        ));
                    }
                }
            }
        }
    }
    records
}

/// Expands `W P_n` over the family for `n <= n_max` and asserts that all
/// coefficients outside `{n-1, n, n+1}` vanish. When `taus` is supplied and
/// the family is big q-Jacobi, the three band coefficients are additionally
/// matched against
///
/// ```text
/// xi_n   = tau1 lambda_(n-1) + tau2 lambda_n + tau3     (on P_(n+1), as xi_(n+1))
/// eta_n  = (tau1 + tau2) lambda_n b_n + tau3 b_n + tau4 lambda_n + tau0
/// zeta_n = tau2 lambda_(n-1) + tau1 lambda_n + tau3     (entry zeta_n u_n)
/// ```
pub fn check_tridiagonal(
    w: &SkewOperator,
    family: &mut PolyFamily,
    n_max: usize,
    taus: Option<&TauSet>,
) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    for n in 0..=n_max {
        let pn = family.poly(n)?.clone();
        let name = format!("tridiagonal/n={n}");
        let image = match w.apply(&pn) {
            Ok(f) => f,
            Err(e) => {
                records.push(CheckRecord::fail(name, json!({ "n": n }), e.to_string()));
                continue;
            }
        };
        let coeffs = family.expand(&image)?;
        let band = |k: i64| -> Rat {
            let idx = n as i64 + k;
            if idx < 0 || idx as usize >= coeffs.len() {
                Rat::zero()
            } else {
                coeffs[idx as usize].clone()
            }
        };
        let stray: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(m, c)| !c.is_zero() && (*m as i64) < n as i64 - 1)
            .map(|(m, c)| format!("coefficient {c} on P_{m}"))
            .collect();
        let above = image.degree().map_or(false, |d| d > n as i64 + 1);
        let inputs = json!({
            "n": n,
            "sub": band(-1).to_string(),
            "diag": band(0).to_string(),
            "super": band(1).to_string(),
        });
        let ok = stray.is_empty() && !above;
        records.push(CheckRecord::assert(
            name,
            inputs.clone(),
            ok,
            format!("stray components: {stray:?}; image {image}"),
        ));
        if !ok {
            continue;
        }

        if let (Some(t), FamilyKind::BigQJacobi { params }) = (taus, family.kind().clone()) {
            let lam = |m: usize| lambda_n(&params, m);
            let xi_next = &t.t1 * &lam(n) + &t.t2 * &lam(n + 1) + t.t3.clone();
            records.push(CheckRecord::assert(
                format!("tridiagonal/xi/n={n}"),
                inputs.clone(),
                band(1) == xi_next,
                format!("fitted {} vs formula {}", band(1), xi_next),
            ));
            let (bn, un) = recurrence_coeffs(&params, n)?;
            let eta = (&t.t1 + &t.t2) * lam(n) * bn.clone()
                + &t.t3 * &bn
                + &t.t4 * &lam(n)
                + t.t0.clone();
            records.push(CheckRecord::assert(
                format!("tridiagonal/eta/n={n}"),
                inputs.clone(),
                band(0) == eta,
                format!("fitted {} vs formula {}", band(0), eta),
            ));
            if n >= 1 {
                let zeta = &t.t2 * &lam(n - 1) + &t.t1 * &lam(n) + t.t3.clone();
                let expected = &zeta * &un.expect("u_n exists for n >= 1");
                records.push(CheckRecord::assert(
                    format!("tridiagonal/zeta/n={n}"),
                    inputs,
                    band(-1) == expected,
                    format!("fitted {} vs zeta_n u_n = {}", band(-1), expected),
                ));
            }
        }
    }
    Ok(records)
}

/// The `(N+1) x (N+1)` matrix of `W` on the exponential grid
/// `x_s = q^(-s)`, `s = 0 .. N`: `(W f)(x_s) = sum_s' M[s][s'] f(x_s')`.
///
/// Requires every shift that would leave the grid to carry a vanishing
/// coefficient at the boundary ([`Error::BoundaryLeak`] otherwise, which
/// signals `c != q^(-N-1)` or a non-restricting operator). The construction
/// is verified against direct application on all monomials of degree `<= N`.
pub fn finite_restriction_matrix(
    w: &SkewOperator,
    p: &Params,
    n_grid: usize,
) -> Result<Vec<Vec<Rat>>> {
    let n = n_grid as i64;
    let grid: Vec<Rat> = (0..=n).map(|s| p.q.pow(-s)).collect();
    let mut matrix = vec![vec![Rat::zero(); n_grid + 1]; n_grid + 1];
    for s in 0..=n {
        for (k, c) in w.iter() {
            let value = c.eval(&grid[s as usize])?;
            let target = s - k; // q^k x_s = q^(k - s) = x_(s - k)
            if target < 0 || target > n {
                if !value.is_zero() {
                    return Err(Error::BoundaryLeak {
                        point: format!("x_{s} = {}", grid[s as usize]),
                        coefficient: format!("C_{k}(x_{s}) = {value}"),
                    });
                }
                continue;
            }
            matrix[s as usize][target as usize] = &matrix[s as usize][target as usize] + &value;
        }
    }
    // Verify against direct application on monomial samples.
    for d in 0..=n_grid {
        let f = LaurentPoly::monomial(Rat::one(), d as i64);
        let image = w.apply(&f)?;
        for s in 0..=n_grid {
            let direct = image.eval(&grid[s])?;
            let mut from_matrix = Rat::zero();
            for (sp, x_sp) in grid.iter().enumerate() {
                from_matrix += &(&matrix[s][sp] * &f.eval(x_sp)?);
            }
            if direct != from_matrix {
                return Err(Error::FiniteRestrictionMismatch {
                    witness: format!("x^{d} at grid point {s}"),
                });
            }
        }
    }
    Ok(matrix)
}

/// The degeneration `W1` (`tau4 = 0`, `tau2 = -q tau1`): the `T-`
/// coefficient vanishes identically, leaving
/// `B1(x) T+ + x^(-1) v1(x) I` with
/// `B1 = tau1 a q (1 - q^2)(x - 1)(bx - c) / x`.
pub fn specialize_w1(p: &Params, t1: &Rat, t3: &Rat, t0: &Rat) -> SkewOperator {
    let taus = TauSet::new(
        t0.clone(),
        t1.clone(),
        -&(&p.q * t1),
        t3.clone(),
        Rat::zero(),
    );
    let w = algebraic_heun(p, &taus);
    debug_assert!(w.coeff(-1).is_zero(), "T- must vanish for W1");
    w
}

/// The degeneration `W2` (`tau4 = 0`, `tau2 = -tau1/q`): the `T+`
/// coefficient vanishes identically, leaving
/// `B2(x) T- + x^(-1) v2(x) I` with
/// `B2 = tau1 (1 - q^(-2))(x - cq)(x - aq) / x`.
pub fn specialize_w2(p: &Params, t1: &Rat, t3: &Rat, t0: &Rat) -> SkewOperator {
    let taus = TauSet::new(
        t0.clone(),
        t1.clone(),
        -&(t1 / &p.q),
        t3.clone(),
        Rat::zero(),
    );
    let w = algebraic_heun(p, &taus);
    debug_assert!(w.coeff(1).is_zero(), "T+ must vanish for W2");
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{big_qjacobi_operator, pochhammer_basis, to_pochhammer_coeffs};
    use crate::rat::rat;

    fn poly(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_ints(pairs)
    }

    fn sample_params() -> Params {
        Params::new(rat(2, 1), rat(1, 3), rat(1, 5), rat(1, 7)).unwrap()
    }

    fn sample_taus() -> TauSet {
        TauSet::new(rat(1, 2), rat(2, 1), rat(-1, 3), rat(3, 4), rat(1, 5))
    }

    #[test]
    fn multiplication_operator_limit() {
        // p3 = p2 = 0, p1 = x gives W = x I.
        let d = HeunData::new(
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::x(),
            rat(2, 1),
        )
        .unwrap();
        assert_eq!(big_q_heun(&d), SkewOperator::mul_by_x(rat(2, 1)));
    }

    #[test]
    fn cubic_example_annihilates_constants() {
        let d = HeunData::new(
            poly(&[(3, 1)]),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            rat(2, 1),
        )
        .unwrap();
        let w = big_q_heun(&d);
        assert_eq!(w.coeff(1), RatFunc::from_laurent(LaurentPoly::x()));
        assert_eq!(
            w.coeff(-1),
            RatFunc::from_laurent(LaurentPoly::monomial(rat(2, 1), 1))
        );
        assert_eq!(
            w.coeff(0),
            RatFunc::from_laurent(LaurentPoly::monomial(rat(-3, 1), 1))
        );
        assert!(w.apply(&LaurentPoly::one()).unwrap().is_zero());
        // W x = 0 for this data.
        assert!(w.apply(&LaurentPoly::x()).unwrap().is_zero());
    }

    #[test]
    fn closed_form_matches_application() {
        let d = HeunData::new(
            poly(&[(3, 2), (1, -1), (0, 3)]),
            poly(&[(2, 1), (0, -2)]),
            poly(&[(1, 5), (0, 1)]),
            rat(3, 2),
        )
        .unwrap();
        let w = big_q_heun(&d);
        for n in 0..=10usize {
            let direct = w
                .apply(&LaurentPoly::monomial(Rat::one(), n as i64))
                .unwrap();
            assert_eq!(direct, big_q_heun_on_monomial(&d, n), "n = {n}");
            assert!(direct.degree().map_or(true, |deg| deg <= n as i64 + 1));
        }
    }

    #[test]
    fn little_case_matches_big_with_root_at_zero() {
        // p3 = x r2 reproduces the little operator built from r2.
        let q = rat(2, 1);
        let r2 = poly(&[(2, 1), (1, -2), (0, 3)]);
        let p2 = poly(&[(2, 2), (1, 1), (0, -1)]);
        let p1 = poly(&[(1, 1), (0, 4)]);
        let d = HeunData::new(&LaurentPoly::x() * &r2, p2.clone(), p1.clone(), q.clone()).unwrap();
        let s1 = r2.clone();
        let s2 = &r2.scale(&q) + &p2;
        let s0 = &(&LaurentPoly::x() * &p1) - &(&s1 + &s2);
        let little = little_q_heun(&s0, &s1, &s2, &q, false).unwrap();
        assert_eq!(big_q_heun(&d), little);
    }

    #[test]
    fn enforce_cancels_leading_coefficients() {
        let q = rat(2, 1);
        // alpha1 = 1, alpha0 = -3, alpha2 = 2: mu^2 - 3mu + 2 has roots 1, 2.
        let s1 = poly(&[(2, 1), (0, 1)]);
        let s0 = poly(&[(2, -3), (1, 1)]);
        let s2 = poly(&[(2, 2), (1, -1)]);
        let w = little_q_heun(&s0, &s1, &s2, &q, true).unwrap();
        // The conjugated coefficients must have cancelling x^2 terms.
        let x = RatFunc::from_laurent(LaurentPoly::x());
        let total = &(&(&w.coeff(1) + &w.coeff(-1)) + &w.coeff(0)) * &x;
        let total = total.as_laurent().unwrap();
        assert!(total.coeff(2).is_zero(), "x^2 coefficient in {total}");
        // Already-satisfied data is returned unchanged.
        let s1 = poly(&[(2, 1), (0, 1)]);
        let s2 = poly(&[(2, -4), (1, 2)]);
        let s0 = poly(&[(2, 3), (1, 7)]);
        let w_plain = little_q_heun(&s0, &s1, &s2, &q, false).unwrap();
        let w_enforced = little_q_heun(&s0, &s1, &s2, &q, true).unwrap();
        assert_eq!(w_plain, w_enforced);
        // No rational root: alpha1 = 1, alpha0 = 0, alpha2 = 1 (mu^2 = -1).
        let err = little_q_heun(
            &poly(&[(1, 1)]),
            &poly(&[(2, 1)]),
            &poly(&[(2, 1)]),
            &q,
            true,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NoRationalScale { .. }));
    }

    #[test]
    fn algebraic_equals_closed_form() {
        let p = sample_params();
        let t = sample_taus();
        assert_eq!(algebraic_heun(&p, &t), algebraic_heun_closed(&p, &t));
    }

    #[test]
    fn bilinear_degenerations() {
        let p = sample_params();
        let y = big_qjacobi_operator(&p);
        let t = TauSet::new(
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::one(),
        );
        assert_eq!(algebraic_heun(&p, &t), y);
        let t = TauSet::new(
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::one(),
            Rat::zero(),
        );
        assert_eq!(algebraic_heun(&p, &t), x_operator(&p));
    }

    #[test]
    fn extraction_round_trip() {
        let d = HeunData::new(
            poly(&[(3, 1), (2, -1), (0, 2)]),
            poly(&[(2, 3), (1, 1)]),
            poly(&[(1, -2), (0, 5)]),
            rat(2, 1),
        )
        .unwrap();
        assert_eq!(extract_heun_data(&big_q_heun(&d)).unwrap(), d);
        // The algebraic operator always lies in the class.
        let p = sample_params();
        let w = algebraic_heun(&p, &sample_taus());
        let extracted = extract_heun_data(&w).unwrap();
        assert_eq!(big_q_heun(&extracted), w);
        // Degree violation is rejected.
        let bad = SkewOperator::from_coeff(rat(2, 1), 1, RatFunc::from_laurent(poly(&[(5, 1)])));
        assert!(matches!(
            extract_heun_data(&bad),
            Err(Error::NotHeunShape { .. })
        ));
    }

    #[test]
    fn degree_raising_reports() {
        let d = HeunData::new(
            poly(&[(3, 1), (1, 1)]),
            poly(&[(2, -2), (0, 1)]),
            poly(&[(1, 1)]),
            rat(2, 1),
        )
        .unwrap();
        let w = big_q_heun(&d);
        let records = check_degree_raising(&w, 12, Some(&d));
        assert!(records.iter().all(|r| r.passed()));
        // Designed violation: W = x^2 I fails at n = 0.
        let bad = SkewOperator::from_coeff(rat(2, 1), 0, RatFunc::from_laurent(poly(&[(2, 1)])));
        let records = check_degree_raising(&bad, 2, None);
        assert!(!records[0].passed());
        // The identity preserves degrees.
        let id = SkewOperator::identity(rat(2, 1));
        assert!(check_degree_raising(&id, 5, None).iter().all(|r| r.passed()));
    }

    #[test]
    fn x_is_tridiagonal_on_pochhammer() {
        let q = rat(2, 1);
        let x = SkewOperator::mul_by_x(q.clone());
        let mut fam = PolyFamily::pochhammer(q.clone());
        let records = check_tridiagonal(&x, &mut fam, 6, None).unwrap();
        assert!(records.iter().all(|r| r.passed()));
        // Coefficients are exactly q^(-n) and -q^(-n).
        for n in 0..=6usize {
            let image = x.apply(&pochhammer_basis(&q, n)).unwrap();
            let coeffs = to_pochhammer_coeffs(&image, &q).unwrap();
            assert_eq!(coeffs[n], q.pow(-(n as i64)));
            assert_eq!(coeffs[n + 1], -q.pow(-(n as i64)));
        }
    }

    #[test]
    fn y_is_diagonal_on_its_polynomials() {
        let p = sample_params();
        let y = big_qjacobi_operator(&p);
        let mut fam = PolyFamily::big_qjacobi(p.clone());
        let records = check_tridiagonal(&y, &mut fam, 5, None).unwrap();
        assert!(records.iter().all(|r| r.passed()));
        for n in 0..=5usize {
            let pn = fam.poly(n).unwrap().clone();
            let image = y.apply(&pn).unwrap();
            assert_eq!(image, pn.scale(&lambda_n(&p, n)));
        }
    }

    #[test]
    fn algebraic_heun_band_formulas() {
        let p = sample_params();
        let t = sample_taus();
        let w = algebraic_heun(&p, &t);
        let mut poch = PolyFamily::pochhammer(p.q.clone());
        assert!(check_tridiagonal(&w, &mut poch, 6, None)
            .unwrap()
            .iter()
            .all(|r| r.passed()));
        let mut jac = PolyFamily::big_qjacobi(p.clone());
        let records = check_tridiagonal(&w, &mut jac, 6, Some(&t)).unwrap();
        assert!(records.iter().all(|r| r.passed()), "{records:#?}");
    }

    #[test]
    fn takemura_a4_shapes() {
        let q = rat(2, 1);
        let zero = Rat::zero();
        let one = Rat::one();
        // sigma1 = sigma2 = 1, kappa = 0, u = w = 0 collapses to
        // x T- + x T+ - 2x I.
        let w = takemura_a4(&zero, &zero, &zero, &zero, &one, &one, &one, &zero, &q);
        assert_eq!(w.coeff(-1), RatFunc::from_laurent(LaurentPoly::x()));
        assert_eq!(w.coeff(1), RatFunc::from_laurent(LaurentPoly::x()));
        assert_eq!(
            w.coeff(0),
            RatFunc::from_laurent(LaurentPoly::monomial(rat(-2, 1), 1))
        );
        // Generic parameters give the Hahn shape: quadratics over x.
        let w = takemura_a4(
            &rat(1, 2),
            &rat(2, 3),
            &rat(3, 4),
            &rat(1, 5),
            &rat(4, 9),
            &rat(2, 3),
            &rat(2, 3),
            &rat(5, 7),
            &q,
        );
        let x = RatFunc::from_laurent(LaurentPoly::x());
        for k in [-1i64, 0, 1] {
            let s = (&w.coeff(k) * &x).as_laurent().unwrap();
            assert!(s.is_polynomial() && s.degree().unwrap() <= 2, "k = {k}: {s}");
        }
    }

    #[test]
    fn takemura_a3_equivalence_to_big_shape() {
        // Constraints for big q-Heun equivalence: prod(u) = q prod(w) and
        // kappa = prod(u) + prod(w). Pick q = 4 (a square), w = (1, 2, 3),
        // u with u1 u2 u3 = 4 * 6 = 24.
        let q = rat(4, 1);
        let (u1, u2, u3) = (rat(2, 1), rat(3, 1), rat(4, 1));
        let (w1, w2, w3) = (rat(1, 1), rat(2, 1), rat(3, 1));
        let kappa = rat(24 + 6, 1);
        let a3 = takemura_a3([&u1, &u2, &u3], [&w1, &w2, &w3], &kappa, &q).unwrap();
        // theta = 1/x; beta kills the x^(-1) part of the zero-shift sum:
        // beta = -(e2(u) + e2(w)) with e2 the degree-2 elementary symmetric.
        let e2_u = &u1 * &u2 + &u1 * &u3 + &u2 * &u3;
        let e2_w = &w1 * &w2 + &w1 * &w3 + &w2 * &w3;
        let theta = RatFunc::new(LaurentPoly::one(), LaurentPoly::x()).unwrap();
        let normalized = a3.affine(&theta, &Rat::zero(), &-(&e2_u + &e2_w)).unwrap();
        let d = extract_heun_data(&normalized).unwrap();
        assert_eq!(d.p3.degree(), Some(3));
        // Non-square q is reported.
        let err = takemura_a3([&u1, &u2, &u3], [&w1, &w2, &w3], &kappa, &rat(2, 1)).unwrap_err();
        assert!(matches!(err, Error::NonSquareBase { .. }));
    }

    #[test]
    fn specializations_have_one_sided_support() {
        let p = sample_params();
        let (t1, t3, t0) = (rat(2, 3), rat(-1, 4), rat(1, 6));
        let w1 = specialize_w1(&p, &t1, &t3, &t0);
        assert_eq!(w1.support(), vec![0, 1]);
        let w2 = specialize_w2(&p, &t1, &t3, &t0);
        assert_eq!(w2.support(), vec![-1, 0]);
        // B1 = tau1 a q (1 - q^2)(x - 1)(bx - c)/x exactly.
        let b1_num = (&poly(&[(1, 1), (0, -1)])
            * &LaurentPoly::from_terms(&[(1, p.b.clone()), (0, -&p.c)]))
            .scale(&(&t1 * &p.a * &p.q * &(Rat::one() - &p.q * &p.q)));
        let b1 = RatFunc::new(b1_num, LaurentPoly::x()).unwrap();
        assert_eq!(w1.coeff(1), b1);
        // B2 = tau1 (1 - q^(-2))(x - cq)(x - aq)/x exactly.
        let b2_num = (&LaurentPoly::from_terms(&[(1, Rat::one()), (0, -&(&p.c * &p.q))])
            * &LaurentPoly::from_terms(&[(1, Rat::one()), (0, -&(&p.a * &p.q))]))
            .scale(&(&t1 * &(Rat::one() - p.q.pow(-2))));
        let b2 = RatFunc::new(b2_num, LaurentPoly::x()).unwrap();
        assert_eq!(w2.coeff(-1), b2);
        // v1 via extraction: x A0 is quadratic.
        let v1 = (&w1.coeff(0) * &RatFunc::x()).as_laurent().unwrap();
        assert!(v1.is_polynomial() && v1.degree().unwrap() <= 2);
    }

    #[test]
    fn finite_restriction_is_tridiagonal_for_y() {
        let n_grid = 4usize;
        let q = rat(2, 1);
        let c = q.pow(-(n_grid as i64) - 1);
        let p = Params::new(q, rat(1, 3), rat(1, 5), c).unwrap();
        let y = big_qjacobi_operator(&p);
        let m = finite_restriction_matrix(&y, &p, n_grid).unwrap();
        for (s, row) in m.iter().enumerate() {
            for (sp, entry) in row.iter().enumerate() {
                if (s as i64 - sp as i64).abs() > 1 {
                    assert!(entry.is_zero(), "entry ({s}, {sp}) = {entry}");
                }
            }
        }
        // Wrong c leaks at the boundary.
        let bad = Params::new(rat(2, 1), rat(1, 3), rat(1, 5), rat(1, 7)).unwrap();
        let y_bad = big_qjacobi_operator(&bad);
        assert!(matches!(
            finite_restriction_matrix(&y_bad, &bad, n_grid),
            Err(Error::BoundaryLeak { .. })
        ));
    }
}
