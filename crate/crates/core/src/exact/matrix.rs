use std::fmt;

use super::{LaurentPoly, RatFunc};
use crate::error::{Error, Result};

/// Dense row-major matrix over `Q(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

impl RFMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RFMatrix {
            rows,
            cols,
            data: vec![RatFunc::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RFMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RFMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        RFMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RatFunc) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RFMatrix {
        RFMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &RFMatrix) -> RFMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        RFMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = RatFunc::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, j);
                if !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn bar(&self) -> RFMatrix {
        RFMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(RatFunc::bar).collect(),
        }
    }

    /// Converts every entry to a Laurent polynomial, reporting the first
    /// entry that is not one.
    pub fn to_laurent(&self) -> std::result::Result<Vec<Vec<LaurentPoly>>, (usize, usize)> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.get(i, j).to_laurent().ok_or((i, j))?);
            }
            out.push(row);
        }
        Ok(out)
    }
}

impl fmt::Display for RFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Solves `a * x = b` for square nonsingular `a` by Gauss-Jordan
/// elimination, choosing in each column the first nonzero pivot in row
/// order.
pub fn solve_linear(a: &RFMatrix, b: &RFMatrix) -> Result<RFMatrix> {
    let n = a.rows;
    assert_eq!(n, a.cols, "solve_linear needs a square matrix");
    assert_eq!(n, b.rows, "right-hand side has wrong height");
    let m = b.cols;
    let mut lhs: Vec<Vec<RatFunc>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut rhs: Vec<Vec<RatFunc>> = (0..n).map(|i| b.row(i).to_vec()).collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !lhs[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        lhs.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = lhs[col][col].inv().unwrap();
        for x in lhs[col].iter_mut().skip(col) {
            *x = &*x * &inv;
        }
        for x in rhs[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r == col || lhs[r][col].is_zero() {
                continue;
            }
            let factor = lhs[r][col].clone();
            for k in col..n {
                let t = &factor * &lhs[col][k];
                lhs[r][k] = &lhs[r][k] - &t;
            }
            for k in 0..m {
                let t = &factor * &rhs[col][k];
                rhs[r][k] = &rhs[r][k] - &t;
            }
        }
    }
    Ok(RFMatrix {
        rows: n,
        cols: m,
        data: rhs.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    fn rf(c: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_i64(c), Poly::one())
    }

    #[test]
    fn solves_small_system() {
        let a = RFMatrix::from_rows(vec![vec![rf(&[0]), rf(&[1])], vec![rf(&[1]), rf(&[0, 1])]]);
        let b = RFMatrix::from_rows(vec![vec![rf(&[1])], vec![rf(&[0, 0, 1])]]);
        let x = solve_linear(&a, &b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn singular_is_reported() {
        let a = RFMatrix::from_rows(vec![
            vec![rf(&[1, 1]), rf(&[1])],
            vec![rf(&[1, 2, 1]), rf(&[1, 1])],
        ]);
        assert!(matches!(
            solve_linear(&a, &RFMatrix::identity(2)),
            Err(Error::SingularMatrix)
        ));
    }
}
