use std::ops::{Add, Mul, Sub};

use crate::arith::RationalFunction;
use crate::error::{Error, Result};

/// Dense matrix over the rational function field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    nvars: usize,
    data: Vec<RationalFunction>,
}

impl Matrix {
    pub fn zero(nvars: usize, nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, nvars, data: vec![RationalFunction::zero(nvars); nrows * ncols] }
    }

    pub fn identity(nvars: usize, m: usize) -> Self {
        let mut out = Self::zero(nvars, m, m);
        for i in 0..m {
            out.set(i, i, RationalFunction::one(nvars));
        }
        out
    }

    /// Builds a matrix from rows of equal length over `nvars` variables.
    pub fn from_rows(nvars: usize, rows: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {ncols}",
                    i + 1,
                    row.len()
                )));
            }
            for e in row {
                if e.nvars() != nvars {
                    return Err(Error::VarTableMismatch(e.nvars(), nvars));
                }
                data.push(e);
            }
        }
        Ok(Matrix { nrows, ncols, nvars, data })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RationalFunction::is_zero)
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RationalFunction]> {
        (0..self.nrows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> impl Iterator<Item = &RationalFunction> {
        self.data.iter()
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        Matrix { data: self.data.iter().map(f).collect(), ..*self }
    }

    /// Entry-wise derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        self.map(|e| e.derivative(i))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        self.map(|e| e * c)
    }

    fn check_same(&self, other: &Matrix, what: &str) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarTableMismatch(self.nvars, other.nvars));
        }
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch(format!(
                "{what} of {}x{} and {}x{} matrices",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other, "sum")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other, "difference")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { data, ..*self })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.nvars != other.nvars {
            return Err(Error::VarTableMismatch(self.nvars, other.nvars));
        }
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{} matrices",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut out = Matrix::zero(self.nvars, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = RationalFunction::zero(self.nvars);
                for k in 0..self.ncols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Fraction-free Gauss-Jordan elimination of `[self | I]`.
    ///
    /// Returns the final pivot (the determinant up to the sign of the row
    /// permutation), that sign, and the reduced right block. `None` if the
    /// matrix is singular.
    fn bareiss(&self) -> Option<(RationalFunction, bool, Matrix)> {
        let m = self.nrows;
        let w = 2 * m;
        let nv = self.nvars;
        let mut a: Vec<Vec<RationalFunction>> = (0..m)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..m).map(|j| if i == j { RationalFunction::one(nv) } else { RationalFunction::zero(nv) }));
                row
            })
            .collect();
        let mut prev = RationalFunction::one(nv);
        let mut flipped = false;
        for k in 0..m {
            let p = (k..m).find(|&i| !a[i][k].is_zero())?;
            if p != k {
                a.swap(p, k);
                flipped = !flipped;
            }
            let pivot = a[k][k].clone();
            let prev_inv = prev.inv().expect("pivots are nonzero");
            for i in 0..m {
                if i == k {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..w {
                    let v = &(&(&pivot * &a[i][j]) - &(&f * &a[k][j])) * &prev_inv;
                    a[i][j] = v;
                }
            }
            prev = pivot;
        }
        let mut right = Matrix::zero(nv, m, m);
        for (i, row) in a.into_iter().enumerate() {
            for (j, v) in row.into_iter().skip(m).enumerate() {
                right.set(i, j, v);
            }
        }
        Some((prev, flipped, right))
    }

    pub fn determinant(&self) -> Result<RationalFunction> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        Ok(match self.bareiss() {
            Some((d, flipped, _)) => {
                if flipped {
                    -d
                } else {
                    d
                }
            }
            None => RationalFunction::zero(self.nvars),
        })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let (d, _, right) = self.bareiss().ok_or(Error::SingularMatrix)?;
        let inv = d.inv()?;
        Ok(right.scale(&inv))
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).expect("matrix sum")
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.checked_sub(rhs).expect("matrix difference")
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product")
    }
}
