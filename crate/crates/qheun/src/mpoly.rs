//! Sparse multivariate polynomials over [`Rat`], used by the staged
//! elimination in the Askey-Wilson triple solver.
//!
//! Variables are indexed `0 .. n`; a monomial is a sorted exponent list.
//! Only the operations the solver needs are implemented: ring arithmetic,
//! substitution of a polynomial for a variable, division by a variable that
//! occurs in every monomial, and evaluation.

use crate::rat::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// A monomial as a sorted list of `(variable, exponent)` pairs with
/// positive exponents; the empty list is the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: usize) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<usize, u32> = self.0.iter().copied().collect();
        for (v, e) in &other.0 {
            *map.entry(*v).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }

    pub fn degree_of(&self, v: usize) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|(v, _)| *v)
    }

    /// Removes every power of `v`.
    fn remove_var(&self, v: usize) -> Monomial {
        Monomial(self.0.iter().filter(|(w, _)| *w != v).copied().collect())
    }

    /// Divides by `v` once; `None` if `v` does not occur.
    fn div_var(&self, v: usize) -> Option<Monomial> {
        let idx = self.0.iter().position(|(w, _)| *w == v)?;
        let mut out = self.0.clone();
        if out[idx].1 == 1 {
            out.remove(idx);
        } else {
            out[idx].1 -= 1;
        }
        Some(Monomial(out))
    }
}

/// A sparse multivariate polynomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MPoly { terms }
    }

    pub fn var(v: usize) -> Self {
        MPoly::term(Monomial::var(v), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (zero included).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (*m == Monomial::one()).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Highest exponent of `v` across all monomials.
    pub fn degree_of(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.degree_of(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Variables occurring in the polynomial, sorted.
    pub fn vars(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms.keys().flat_map(|m| m.vars()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Coefficient layers in `v`: returns `[C_0, .., C_D]` with
    /// `self = sum_d C_d v^d` and each `C_d` free of `v`.
    pub fn layers_of(&self, v: usize) -> Vec<MPoly> {
        let degree = self.degree_of(v) as usize;
        let mut layers = vec![MPoly::zero(); degree + 1];
        for (m, c) in &self.terms {
            layers[m.degree_of(v) as usize].add_term(m.remove_var(v), c.clone());
        }
        layers
    }

    /// Splits as `A * v + B` with `A`, `B` free of `v`. `None` when `v`
    /// occurs with exponent above 1.
    pub fn split_linear(&self, v: usize) -> Option<(MPoly, MPoly)> {
        let mut coeff = MPoly::zero();
        let mut rest = MPoly::zero();
        for (m, c) in &self.terms {
            match m.degree_of(v) {
                0 => rest.add_term(m.clone(), c.clone()),
                1 => coeff.add_term(m.div_var(v).unwrap(), c.clone()),
                _ => return None,
            }
        }
        Some((coeff, rest))
    }

    /// Divides every monomial by `v`; `None` unless `v` occurs in all.
    pub fn div_var(&self, v: usize) -> Option<MPoly> {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.div_var(v)?, c.clone());
        }
        Some(out)
    }

    /// Substitutes `v := value` (a polynomial in other variables).
    pub fn substitute(&self, v: usize, value: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_of(v);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut reduced = m.clone();
            for _ in 0..e {
                reduced = reduced.div_var(v).unwrap();
            }
            let mut power = MPoly::constant(Rat::one());
            for _ in 0..e {
                power = power.mul(value);
            }
            out = out.add(&power.mul(&MPoly::term(reduced, c.clone())));
        }
        out
    }

    /// Evaluates with a full assignment.
    pub fn eval(&self, assignment: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in &m.0 {
                for _ in 0..*e {
                    term = &term * &assignment[*v];
                }
            }
            acc += &term;
        }
        acc
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .0
                    .iter()
                    .map(|(v, e)| {
                        if *e == 1 {
                            format!("v{v}")
                        } else {
                            format!("v{v}^{e}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn ring_arithmetic() {
        // (v0 + 2)(v1 - v0) = v0 v1 - v0^2 + 2 v1 - 2 v0
        let a = MPoly::var(0).add(&MPoly::constant(rat(2, 1)));
        let b = MPoly::var(1).sub(&MPoly::var(0));
        let p = a.mul(&b);
        assert_eq!(p.degree_of(0), 2);
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.eval(&[rat(1, 1), rat(3, 1)]), rat(6, 1)); // (1+2)(3-1)
    }

    #[test]
    fn linear_split_and_substitution() {
        // p = 3 v0 v1 + v2 - 5, linear in v0.
        let p = MPoly::term(Monomial::var(0).mul(&Monomial::var(1)), rat(3, 1))
            .add(&MPoly::var(2))
            .add(&MPoly::constant(rat(-5, 1)));
        let (a, b) = p.split_linear(0).unwrap();
        assert_eq!(a, MPoly::term(Monomial::var(1), rat(3, 1)));
        assert_eq!(b, MPoly::var(2).add(&MPoly::constant(rat(-5, 1))));
        // Substitute v0 := v2: 3 v2 v1 + v2 - 5.
        let s = p.substitute(0, &MPoly::var(2));
        assert_eq!(s.eval(&[rat(0, 1), rat(2, 1), rat(1, 1)]), rat(2, 1));
        // A square in v0 defeats the linear split.
        let sq = p.mul(&MPoly::var(0));
        assert!(sq.split_linear(0).is_none());
    }

    #[test]
    fn common_variable_division() {
        // v0 v1 + 2 v0 is divisible by v0, not by v1.
        let p = MPoly::term(Monomial::var(0).mul(&Monomial::var(1)), Rat::one())
            .add(&MPoly::term(Monomial::var(0), rat(2, 1)));
        let q = p.div_var(0).unwrap();
        assert_eq!(q, MPoly::var(1).add(&MPoly::constant(rat(2, 1))));
        assert!(p.div_var(1).is_none());
    }
}
