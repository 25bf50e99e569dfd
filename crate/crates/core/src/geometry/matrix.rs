use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::RationalVector;
use crate::rational::{Rational, Tuple};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from equally long rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[Rational]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend_from_slice(row);
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_integer_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::rational::int(v)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns<P: AsRef<RationalVector>>(columns: &[P]) -> Self {
        let rows = columns.first().map_or(0, |c| c.as_ref().dim());
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            let col = col.as_ref();
            assert_eq!(col.dim(), rows, "ragged matrix columns");
            for i in 0..rows {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> RationalVector {
        RationalVector::new(self.row(i).to_vec())
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn columns(&self) -> Vec<RationalVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(v.dim(), self.cols, "matrix-vector dimension mismatch");
        RationalVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.coords())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &RationalMatrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        bareiss_echelon(&mut rows, self.cols).len()
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", Tuple(self.row(i)))?;
        }
        Ok(())
    }
}

/// Scales a rational row by the lcm of its denominators.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    row.iter().map(|a| a.numer() * (&lcm / a.denom())).collect()
}

/// Fraction-free Gaussian elimination to row echelon form, in place.
/// Returns the pivot column of each nonzero row; rows past the rank are
/// left zero. Every division below is exact (Sylvester's identity).
fn bareiss_echelon(rows: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..row.len() {
                let v = &row[j] * &pivot_row[c] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves the square system `matrix · x = rhs` exactly. `None` means the
/// matrix is singular.
pub fn solve_linear_system(matrix: &RationalMatrix, rhs: &RationalVector) -> Option<RationalVector> {
    let n = matrix.rows();
    assert_eq!(matrix.cols(), n, "solve_linear_system needs a square matrix");
    assert_eq!(rhs.dim(), n, "right-hand side dimension mismatch");
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = matrix.row(i).to_vec();
            row.push(rhs[i].clone());
            integer_row(&row)
        })
        .collect();
    let pivots = bareiss_echelon(&mut rows, n);
    if pivots.len() < n {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(rows[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(rows[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(rows[i][i].clone());
    }
    Some(RationalVector::new(x))
}

/// Solves a tall system with independent columns through its normal
/// equations. Returns the unique `x` with `matrix · x = rhs`, or `None` if
/// the columns are dependent or the system is inconsistent.
pub fn solve_full_column_rank(matrix: &RationalMatrix, rhs: &RationalVector) -> Option<RationalVector> {
    let t = matrix.transpose();
    let mut normal = RationalMatrix::zeros(matrix.cols(), matrix.cols());
    for i in 0..matrix.cols() {
        for j in i..matrix.cols() {
            let v = t
                .row(i)
                .iter()
                .zip(t.row(j))
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
            normal[(j, i)] = v.clone();
            normal[(i, j)] = v;
        }
    }
    let x = solve_linear_system(&normal, &t.mul_vec(rhs))?;
    (matrix.mul_vec(&x) == *rhs).then_some(x)
}
