use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{one, zero, LinalgError, Rational};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = one();
        }
        m
    }

    /// Elementary matrix `E_{row,col}`.
    pub fn unit(rows: usize, cols: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.entries[row * cols + col] = one();
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entries length must equal rows * cols");
        RationalMatrix { rows, cols, entries }
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        Self::from_entries(rows, cols, super::qvec(values))
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(cols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            entries.extend(r.iter().cloned());
        }
        RationalMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.entries[i * cols + j] = v.clone();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, col).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).fold(zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &RationalMatrix) -> RationalMatrix {
        &(self * other) - &(other * self)
    }

    /// Kronecker product; index `(i, j)` of the product space is `i * other.rows + j`.
    pub fn kron(&self, other: &RationalMatrix) -> RationalMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        m.entries[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                    }
                }
            }
        }
        m
    }

    /// Submatrix on the given row and column index sets.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        RationalMatrix::from_entries(rows.len(), cols.len(), entries)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        let cols = m.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.entries[(self.rows + i) * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }

    /// Row echelon form computed by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first cleared of denominators; every stored entry is then
    /// a minor of the integer matrix, so the division by the previous pivot
    /// is always exact.
    fn bareiss(&self) -> Echelon {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        let mut prev = BigInt::one();
        let mut pivots = Vec::new();
        let mut swaps = 0usize;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let pivot = pivot_row[c].clone();
            for row in tail.iter_mut() {
                let factor = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let mut v = &pivot * &row[j];
                    if !factor.is_zero() && !pivot_row[j].is_zero() {
                        v -= &factor * &pivot_row[j];
                    }
                    if !prev.is_one() && !v.is_zero() {
                        let (quot, rem) = v.div_rem(&prev);
                        debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                        v = quot;
                    }
                    row[j] = v;
                }
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        Echelon {
            rows: a,
            pivots,
            swaps,
            last_pivot: prev,
        }
    }

    /// Row rank.
    pub fn rank(&self) -> usize {
        self.bareiss().pivots.len()
    }

    /// Reduced row echelon form: the nonzero rows and their pivot columns.
    pub fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let ech = self.bareiss();
        let mut rows: Vec<Vec<Rational>> = ech
            .rows
            .iter()
            .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
            .collect();
        let pivots = ech.pivots;
        for k in (0..rows.len()).rev() {
            let pc = pivots[k];
            let lead = rows[k][pc].clone();
            if !lead.is_one() {
                for v in rows[k].iter_mut() {
                    if !v.is_zero() {
                        *v /= &lead;
                    }
                }
            }
            let (above, rest) = rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let f = row[pc].clone();
                if f.is_zero() {
                    continue;
                }
                for (x, p) in row.iter_mut().zip(pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        (rows, pivots)
    }

    /// Basis of `{v : self·v = 0}` in reduced-echelon normal form: one vector
    /// per free column, with a 1 at that column and 0 at every other free
    /// column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (rows, pivots) = self.rref();
        nullspace_from_rref(self.cols, &rows, &pivots)
    }

    /// Determinant via the final Bareiss pivot.
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return one();
        }
        let denominators = (0..self.rows).fold(BigInt::one(), |acc, i| acc * row_lcm(self.row(i)));
        let ech = self.bareiss();
        if ech.pivots.len() < self.rows {
            return zero();
        }
        let mut d = Rational::new(ech.last_pivot, denominators);
        if ech.swaps % 2 == 1 {
            d = -d;
        }
        d
    }

    /// One solution of `self·x = rhs`.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                got: rhs.len(),
            });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (rows, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = vec![zero(); self.cols];
        for (row, &p) in rows.iter().zip(&pivots) {
            x[p] = row[self.cols].clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<RationalMatrix, LinalgError> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, one());
        }
        let (rows, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for (i, row) in rows.iter().enumerate().take(n) {
            for j in 0..n {
                inv.set(i, j, row[n + j].clone());
            }
        }
        Ok(inv)
    }
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
    last_pivot: BigInt,
}

fn row_lcm(row: &[Rational]) -> BigInt {
    row.iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = row_lcm(row);
    row.iter()
        .map(|v| {
            if v.is_zero() {
                BigInt::zero()
            } else {
                v.numer() * (&l / v.denom())
            }
        })
        .collect()
}

pub(crate) fn nullspace_from_rref(
    cols: usize,
    rows: &[Vec<Rational>],
    pivots: &[usize],
) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![zero(); cols];
            v[f] = one();
            for (row, &p) in rows.iter().zip(pivots) {
                if !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            v
        })
        .collect()
}

impl<'a> Mul<&'a RationalMatrix> for &'a RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for multiplication");
        let mut m = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    m.entries[i * rhs.cols + j] += a * b;
                }
            }
        }
        m
    }
}

impl<'a> Add<&'a RationalMatrix> for &'a RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RationalMatrix> for &'a RationalMatrix {
    type Output = RationalMatrix;

    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RationalMatrix {
    type Output = RationalMatrix;

    fn neg(self) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
