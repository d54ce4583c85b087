use std::fmt;

use super::LinalgError;
use crate::rational::Rational;

/// Dense row-major matrix of exact rationals, at least 1×1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self, LinalgError> {
        Self::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        Ok(m)
    }

    /// Builds a matrix from nested rows, all of equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Self::new(m, n, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor over integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, LinalgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    fn check_row(&self, row: usize) -> Result<(), LinalgError> {
        if row >= self.rows {
            Err(LinalgError::IndexOutOfRange {
                index: row,
                len: self.rows,
            })
        } else {
            Ok(())
        }
    }

    /// Multiplies `row` entrywise by a nonzero `factor`.
    pub fn scale_row(&self, row: usize, factor: &Rational) -> Result<Matrix, LinalgError> {
        let mut out = self.clone();
        out.scale_row_in_place(row, factor, 0)?;
        Ok(out)
    }

    /// Replaces row `dst` by `dst + factor * src`.
    pub fn axpy_row(
        &self,
        src: usize,
        dst: usize,
        factor: &Rational,
    ) -> Result<Matrix, LinalgError> {
        let mut out = self.clone();
        out.axpy_row_in_place(src, dst, factor, 0)?;
        Ok(out)
    }

    pub fn swap_rows(&self, i: usize, j: usize) -> Result<Matrix, LinalgError> {
        let mut out = self.clone();
        out.swap_rows_in_place(i, j)?;
        Ok(out)
    }

    /// Scales entries `from_col..` of `row`. Entries left of `from_col` are
    /// left untouched, which is exact whenever they are already zero.
    pub(crate) fn scale_row_in_place(
        &mut self,
        row: usize,
        factor: &Rational,
        from_col: usize,
    ) -> Result<(), LinalgError> {
        if factor.is_zero() {
            return Err(LinalgError::ZeroFactor);
        }
        self.check_row(row)?;
        let start = row * self.cols;
        for e in &mut self.entries[start + from_col..start + self.cols] {
            *e = &*e * factor;
        }
        Ok(())
    }

    pub(crate) fn axpy_row_in_place(
        &mut self,
        src: usize,
        dst: usize,
        factor: &Rational,
        from_col: usize,
    ) -> Result<(), LinalgError> {
        self.check_row(src)?;
        self.check_row(dst)?;
        if src == dst {
            return Err(LinalgError::SameRow(src));
        }
        if factor.is_zero() {
            return Ok(());
        }
        let cols = self.cols;
        for c in from_col..cols {
            let s = &self.entries[src * cols + c];
            if s.is_zero() {
                continue;
            }
            let delta = factor * s;
            let d = &mut self.entries[dst * cols + c];
            *d = &*d + &delta;
        }
        Ok(())
    }

    pub(crate) fn swap_rows_in_place(&mut self, i: usize, j: usize) -> Result<(), LinalgError> {
        self.check_row(i)?;
        self.check_row(j)?;
        if i != j {
            for c in 0..self.cols {
                self.entries.swap(i * self.cols + c, j * self.cols + c);
            }
        }
        Ok(())
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "{:?}", self.row(r))?;
            if r + 1 < self.rows {
                write!(f, ", ")?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = cells[r * self.cols..(r + 1) * self.cols]
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A linear system `A x = b` kept as coefficients plus right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedSystem {
    coefficients: Matrix,
    rhs: Vec<Rational>,
}

impl AugmentedSystem {
    pub fn new(coefficients: Matrix, rhs: Vec<Rational>) -> Result<Self, LinalgError> {
        if rhs.len() != coefficients.rows() {
            return Err(LinalgError::DimensionMismatch {
                expected: coefficients.rows(),
                found: rhs.len(),
            });
        }
        Ok(AugmentedSystem { coefficients, rhs })
    }

    /// Splits an `m × (n+1)` matrix into coefficients and its last column.
    pub fn from_augmented(m: &Matrix) -> Result<Self, LinalgError> {
        if m.cols() < 2 {
            return Err(LinalgError::EmptyMatrix);
        }
        let n = m.cols() - 1;
        let coeffs = (0..m.rows()).flat_map(|r| m.row(r)[..n].to_vec()).collect();
        let rhs = m.column(n);
        Self::new(Matrix::new(m.rows(), n, coeffs)?, rhs)
    }

    pub fn coefficients(&self) -> &Matrix {
        &self.coefficients
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// Number of unknowns.
    pub fn unknowns(&self) -> usize {
        self.coefficients.cols()
    }

    /// The `m × (n+1)` matrix `[A|b]`.
    pub fn augmented(&self) -> Matrix {
        let a = &self.coefficients;
        let entries = (0..a.rows())
            .flat_map(|r| {
                a.row(r)
                    .iter()
                    .cloned()
                    .chain(std::iter::once(self.rhs[r].clone()))
            })
            .collect();
        Matrix::new(a.rows(), a.cols() + 1, entries).expect("augmented shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn shape_checks() {
        assert_eq!(Matrix::new(0, 1, vec![]), Err(LinalgError::EmptyMatrix));
        assert!(matches!(
            Matrix::new(2, 2, vec![Rational::zero(); 3]),
            Err(LinalgError::DimensionMismatch {
                expected: 4,
                found: 3
            })
        ));
        let a = Matrix::from_i64(&[&[1, 2]]).unwrap();
        assert!(AugmentedSystem::new(a, vec![]).is_err());
    }

    #[test]
    fn scale_row_examples() {
        let m = Matrix::from_i64(&[&[2, 4], &[5, 6]]).unwrap();
        let s = m.scale_row(0, &q(1, 2)).unwrap();
        assert_eq!(s.row(0), &[q(1, 1), q(2, 1)]);
        assert_eq!(s.row(1), m.row(1));

        assert_eq!(m.scale_row(1, &Rational::one()).unwrap(), m);

        // normalising by the leading entry gives a leading one
        let g = Matrix::from_i64(&[&[3, 7, -2]]).unwrap();
        let lead = g.get(0, 0).recip().unwrap();
        let s = g.scale_row(0, &lead).unwrap();
        assert_eq!(s.row(0), &[q(1, 1), q(7, 3), q(-2, 3)]);

        assert_eq!(
            m.scale_row(0, &Rational::zero()),
            Err(LinalgError::ZeroFactor)
        );
        assert!(matches!(
            m.scale_row(2, &Rational::one()),
            Err(LinalgError::IndexOutOfRange { index: 2, len: 2 })
        ));
    }

    #[test]
    fn axpy_row_examples() {
        let m = Matrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap();
        let e = m.axpy_row(0, 1, &q(-3, 1)).unwrap();
        assert_eq!(e.row(1), &[q(0, 1), q(-2, 1)]);
        assert_eq!(e.row(0), m.row(0));

        assert_eq!(m.axpy_row(0, 1, &Rational::zero()).unwrap(), m);

        // eliminating below a normalised pivot row
        let m = Matrix::from_rows(vec![vec![q(1, 1), q(5, 2)], vec![q(4, 1), q(3, 1)]]).unwrap();
        let aj1 = m.get(1, 0).clone();
        let e = m.axpy_row(0, 1, &-aj1).unwrap();
        assert_eq!(e.row(1), &[q(0, 1), q(3, 1) - q(4, 1) * q(5, 2)]);

        assert_eq!(m.axpy_row(1, 1, &q(1, 1)), Err(LinalgError::SameRow(1)));
        assert!(m.axpy_row(0, 5, &q(1, 1)).is_err());
    }

    #[test]
    fn swap_rows_examples() {
        let m = Matrix::from_i64(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(m.swap_rows(0, 0).unwrap(), m);
        let s = m.swap_rows(0, 1).unwrap();
        assert_eq!(s, Matrix::from_i64(&[&[3, 4], &[1, 2]]).unwrap());
        assert_eq!(s.swap_rows(0, 1).unwrap(), m);
        assert!(m.swap_rows(0, 2).is_err());
    }

    #[test]
    fn augmented_round_trip() {
        let a = Matrix::from_i64(&[&[1, 1], &[1, -1]]).unwrap();
        let sys = AugmentedSystem::new(a, vec![q(2, 1), q(0, 1)]).unwrap();
        let aug = sys.augmented();
        assert_eq!(aug, Matrix::from_i64(&[&[1, 1, 2], &[1, -1, 0]]).unwrap());
        assert_eq!(AugmentedSystem::from_augmented(&aug).unwrap(), sys);
    }
}
