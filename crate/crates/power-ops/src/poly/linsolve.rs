//! Gaussian elimination over an exact coefficient field. Systems here
//! are small (at most a dozen unknowns), so pivoting just takes the
//! first nonzero entry.

use crate::error::{Error, Result};
use crate::series::Coeff;

/// Solves A*x = b exactly. The system may be overdetermined; every
/// equation is checked against the solution, and an inconsistent or
/// underdetermined system is an error.
pub fn solve_exact<C: Coeff>(a: &[Vec<C>], b: &[C]) -> Result<Vec<C>> {
    let rows = a.len();
    if rows == 0 || rows != b.len() {
        return Err(Error::UnsolvableSystem("matrix and right-hand side sizes disagree".into()));
    }
    let cols = a[0].len();
    if a.iter().any(|r| r.len() != cols) || cols == 0 {
        return Err(Error::UnsolvableSystem("ragged or empty coefficient matrix".into()));
    }

    let mut m: Vec<Vec<C>> = a.to_vec();
    let mut rhs: Vec<C> = b.to_vec();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            return Err(Error::UnsolvableSystem(format!("no pivot for column {col}")));
        };
        m.swap(row, p);
        rhs.swap(row, p);
        let inv = m[row][col].inv()?;
        for c in col..cols {
            m[row][c] = m[row][c].mul(&inv);
        }
        rhs[row] = rhs[row].mul(&inv);
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let delta = factor.mul(&m[row][c]);
                    m[r][c] = m[r][c].sub(&delta);
                }
                rhs[r] = rhs[r].sub(&factor.mul(&rhs[row]));
            }
        }
        pivot_rows.push(row);
        row += 1;
        if row == rows {
            break;
        }
    }
    if pivot_rows.len() < cols {
        return Err(Error::UnsolvableSystem("system does not determine every unknown".into()));
    }

    let mut x = vec![b[0].zero_like(); cols];
    for (col, &r) in pivot_rows.iter().enumerate() {
        x[col] = rhs[r].clone();
    }
    // any leftover rows must have been reduced to 0 = 0
    for r in 0..rows {
        let mut acc = b[0].zero_like();
        for c in 0..cols {
            acc = acc.add(&a[r][c].mul(&x[c]));
        }
        if acc != b[r] {
            return Err(Error::UnsolvableSystem(format!("equation {r} is inconsistent with the solution")));
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratfunc::RatPoly;
    use crate::poly::Var;

    #[test]
    fn two_by_two() {
        let a = RatPoly::var(Var::A);
        let sys = vec![
            vec![RatPoly::one(), a.clone()],
            vec![a.clone(), RatPoly::one()],
        ];
        let rhs = vec![a.mul(&a).add(&RatPoly::one()), a.mul(&RatPoly::int(2))];
        let x = solve_exact(&sys, &rhs).unwrap();
        assert_eq!(x[0], RatPoly::one());
        assert_eq!(x[1], a);
    }

    #[test]
    fn overdetermined_consistent() {
        let sys = vec![
            vec![RatPoly::one(), RatPoly::zero()],
            vec![RatPoly::zero(), RatPoly::one()],
            vec![RatPoly::one(), RatPoly::one()],
        ];
        let rhs = vec![RatPoly::int(2), RatPoly::int(3), RatPoly::int(5)];
        let x = solve_exact(&sys, &rhs).unwrap();
        assert_eq!(x, vec![RatPoly::int(2), RatPoly::int(3)]);
    }

    #[test]
    fn inconsistent_rejected() {
        let sys = vec![
            vec![RatPoly::one(), RatPoly::zero()],
            vec![RatPoly::zero(), RatPoly::one()],
            vec![RatPoly::one(), RatPoly::one()],
        ];
        let rhs = vec![RatPoly::int(2), RatPoly::int(3), RatPoly::int(6)];
        assert!(solve_exact(&sys, &rhs).is_err());
    }

    #[test]
    fn underdetermined_rejected() {
        let sys = vec![vec![RatPoly::one(), RatPoly::one()]];
        let rhs = vec![RatPoly::int(1)];
        assert!(solve_exact(&sys, &rhs).is_err());
    }
}
