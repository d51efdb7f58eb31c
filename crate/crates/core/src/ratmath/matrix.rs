use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Dense matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count mismatch");
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::from_integer(1.into());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// λI with the given dimension.
    pub fn scalar(n: usize, lambda: &Rational) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = lambda.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// First negative entry, 1-based, if any.
    pub fn first_negative_entry(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)].is_negative() {
                    return Some((i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn require_nonnegative(&self) -> Result<()> {
        match self.first_negative_entry() {
            Some((row, col)) => Err(Error::NotNonnegative { row, col }),
            None => Ok(()),
        }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn matvec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Principal submatrix with rows and columns indexed by `idx` (0-based).
    pub fn principal_submatrix(&self, idx: &[usize]) -> RatMatrix {
        self.submatrix(idx, idx)
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zero(row_idx.len(), col_idx.len());
        for (a, &i) in row_idx.iter().enumerate() {
            for (b, &j) in col_idx.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Matrix columns as generator vectors.
    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn pow(&self, mut e: u32) -> RatMatrix {
        let n = self.rows;
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = RatMatrix::identity(n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// λI − A, the shift that sends eigenvalues to λ − μ.
    pub fn lambda_i_minus(&self, lambda: &Rational) -> RatMatrix {
        let n = self.rows;
        assert!(self.is_square());
        let mut out = self.clone().neg();
        for i in 0..n {
            out[(i, i)] += lambda;
        }
        out
    }

    /// A + I.
    pub fn plus_identity(&self) -> RatMatrix {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] += Rational::from_integer(1.into());
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        use num_traits::ToPrimitive;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_f64().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.into_iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rational::rat_int;

    #[test]
    fn matmul_and_pow() {
        let a = RatMatrix::from_integers(&[&[1, 1], &[0, 0]]);
        let a2 = &a * &a;
        assert_eq!(a2, a, "A is idempotent");
        assert_eq!(a.pow(0), RatMatrix::identity(2));
        assert_eq!(a.pow(3), a);
    }

    #[test]
    fn shift_and_submatrix() {
        let a = RatMatrix::from_integers(&[&[1, 2], &[3, 4]]);
        let s = a.lambda_i_minus(&rat_int(5));
        assert_eq!(s, RatMatrix::from_integers(&[&[4, -2], &[-3, 1]]));
        let sub = a.principal_submatrix(&[1]);
        assert_eq!(sub, RatMatrix::from_integers(&[&[4]]));
    }
}
