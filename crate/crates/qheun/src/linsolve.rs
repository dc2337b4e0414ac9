//! Exact linear solving over [`Rat`].
//!
//! Gaussian elimination with exact arithmetic: no pivot-growth concerns, a
//! zero pivot is genuinely zero. The solver reports the full structure of
//! the solution set rather than erroring on rank deficiency.

use crate::rat::Rat;

/// An exact linear system `matrix * x = rhs`.
#[derive(Clone, Debug)]
pub struct LinSystem {
    pub matrix: Vec<Vec<Rat>>,
    pub rhs: Vec<Rat>,
}

impl LinSystem {
    pub fn new(matrix: Vec<Vec<Rat>>, rhs: Vec<Rat>) -> Self {
        assert_eq!(matrix.len(), rhs.len(), "row count mismatch");
        if let Some(w) = matrix.first().map(|r| r.len()) {
            assert!(matrix.iter().all(|r| r.len() == w), "ragged matrix");
        }
        LinSystem { matrix, rhs }
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }
}

/// Solution set of an exact linear system.
#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    /// Exactly one solution.
    Unique(Vec<Rat>),
    /// An affine family: `particular + span(null_basis)`. The particular
    /// solution sets every free variable to zero; each null-space basis
    /// vector is scaled so its first nonzero coordinate is 1.
    Parametric {
        particular: Vec<Rat>,
        null_basis: Vec<Vec<Rat>>,
    },
    /// No solution.
    Inconsistent,
}

impl SolveOutcome {
    /// Any solution, when one exists.
    pub fn solution(&self) -> Option<&[Rat]> {
        match self {
            SolveOutcome::Unique(v) => Some(v),
            SolveOutcome::Parametric { particular, .. } => Some(particular),
            SolveOutcome::Inconsistent => None,
        }
    }
}

/// Exact Gaussian elimination.
pub fn solve_exact(sys: &LinSystem) -> SolveOutcome {
    let rows = sys.matrix.len();
    let cols = sys.cols();
    let mut a: Vec<Vec<Rat>> = sys.matrix.clone();
    let mut b: Vec<Rat> = sys.rhs.clone();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - &t;
                }
                let t = &b[r] * &f;
                b[i] = &b[i] - &t;
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }

    for i in r..rows {
        if !b[i].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut particular = vec![Rat::zero(); cols];
    for (row, &pc) in pivot_cols.iter().enumerate() {
        particular[pc] = b[row].clone();
    }
    if free_cols.is_empty() {
        return SolveOutcome::Unique(particular);
    }

    let mut null_basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Rat::zero(); cols];
        v[fc] = Rat::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&a[row][fc];
        }
        // Scale so the first nonzero coordinate is 1.
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            let inv = first.recip();
            for x in v.iter_mut() {
                *x = &*x * &inv;
            }
        }
        null_basis.push(v);
    }
    SolveOutcome::Parametric {
        particular,
        null_basis,
    }
}

/// Identifies a small infeasible subset of equations in an inconsistent
/// system: the original rows whose combination eliminates to `0 = c` with
/// `c != 0` (a Farkas-style certificate from the elimination history).
pub fn inconsistency_certificate(sys: &LinSystem) -> Option<Vec<usize>> {
    let rows = sys.matrix.len();
    let cols = sys.cols();
    let mut a = sys.matrix.clone();
    let mut b = sys.rhs.clone();
    // History matrix: row i of the current tableau as a combination of the
    // original rows.
    let mut h: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let mut e = vec![Rat::zero(); rows];
            e[i] = Rat::one();
            e
        })
        .collect();

    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        h.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for x in h[r].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - &t;
                }
                for j in 0..rows {
                    let t = &h[r][j] * &f;
                    h[i][j] = &h[i][j] - &t;
                }
                let t = &b[r] * &f;
                b[i] = &b[i] - &t;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }

    for i in r..rows {
        if !b[i].is_zero() {
            let involved: Vec<usize> = (0..rows).filter(|&j| !h[i][j].is_zero()).collect();
            return Some(involved);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn sys(m: &[&[i64]], r: &[i64]) -> LinSystem {
        LinSystem::new(
            m.iter()
                .map(|row| row.iter().map(|&x| Rat::from(x)).collect())
                .collect(),
            r.iter().map(|&x| Rat::from(x)).collect(),
        )
    }

    #[test]
    fn identity_system() {
        let out = solve_exact(&sys(&[&[1, 0], &[0, 1]], &[3, 4]));
        assert_eq!(out, SolveOutcome::Unique(vec![Rat::from(3), Rat::from(4)]));
    }

    #[test]
    fn rank_one_system() {
        let out = solve_exact(&sys(&[&[1, 1], &[2, 2]], &[1, 2]));
        match out {
            SolveOutcome::Parametric {
                particular,
                null_basis,
            } => {
                assert_eq!(particular, vec![Rat::one(), Rat::zero()]);
                assert_eq!(null_basis, vec![vec![Rat::one(), rat(-1, 1)]]);
            }
            other => panic!("expected parametric, got {:?}", other),
        }
    }

    #[test]
    fn contradictory_rows() {
        let out = solve_exact(&sys(&[&[1, 1], &[1, 1]], &[1, 2]));
        assert_eq!(out, SolveOutcome::Inconsistent);
        let cert = inconsistency_certificate(&sys(&[&[1, 1], &[1, 1]], &[1, 2])).unwrap();
        assert_eq!(cert, vec![0, 1]);
    }

    #[test]
    fn solution_set_contains_preimage() {
        // Solving A x = A v must yield a solution set containing v: the
        // particular solution solves the system and every null vector is
        // annihilated, for a full-rank and a rank-deficient matrix.
        let matrices = [
            vec![vec![2i64, 3, 1], vec![0, 1, 4], vec![1, 0, 2]], // det = 15
            vec![vec![2i64, 3, 1], vec![0, 1, 4], vec![2, 4, 5]], // row3 = row1 + row2
        ];
        let v = [rat(1, 2), rat(-2, 3), rat(5, 7)];
        for m in matrices {
            let apply = |x: &[Rat]| -> Vec<Rat> {
                m.iter()
                    .map(|row| {
                        row.iter()
                            .zip(x.iter())
                            .fold(Rat::zero(), |acc, (&a, xi)| acc + Rat::from(a) * xi.clone())
                    })
                    .collect()
            };
            let rhs = apply(&v);
            let system = LinSystem::new(
                m.iter()
                    .map(|row| row.iter().map(|&x| Rat::from(x)).collect())
                    .collect(),
                rhs.clone(),
            );
            match solve_exact(&system) {
                SolveOutcome::Unique(sol) => {
                    assert_eq!(sol.as_slice(), &v[..]);
                }
                SolveOutcome::Parametric {
                    particular,
                    null_basis,
                } => {
                    assert_eq!(apply(&particular), rhs);
                    for n in &null_basis {
                        assert!(apply(n).iter().all(|x| x.is_zero()));
                    }
                }
                SolveOutcome::Inconsistent => panic!("must be consistent"),
            }
        }
    }
}
