//! Exact dense linear algebra over the rationals.
//!
//! Everything in this crate is a dimension of a rational vector space, so all
//! arithmetic is exact: `Rational` is an arbitrary-precision fraction kept in
//! lowest terms, and no tolerance ever enters a rank computation.

use num::{BigInt, One, Zero};
use std::fmt;

/// Arbitrary-precision rational number, always normalized.
pub type Rational = num::BigRational;

/// Builds a rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `num / den`. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A vector of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalVector {
    pub entries: Vec<Rational>,
}

impl RationalVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            entries: vec![Rational::zero(); len],
        }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self {
            entries: values.iter().map(|&v| rat(v)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// True when `self` is a nonzero multiple of `other`.
    pub fn is_proportional_to(&self, other: &RationalVector) -> bool {
        if self.len() != other.len() || self.is_zero() || other.is_zero() {
            return false;
        }
        let (i, pivot) = match other.entries.iter().enumerate().find(|(_, x)| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let scale = &self.entries[i] / pivot;
        self.entries.iter().zip(&other.entries).all(|(a, b)| *a == &scale * b)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            entries.extend(row);
        }
        Self { rows: n, cols, entries }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul_vector(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let entries = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(&v.entries)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        RationalVector { entries }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduces `self` in place to reduced row echelon form and returns the
    /// pivot column of each nonzero row, in order.
    pub fn reduce_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(found) = (lead..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(lead, found);

            let inv = self[(lead, col)].recip();
            for j in col..self.cols {
                if !self[(lead, j)].is_zero() {
                    let scaled = &self[(lead, j)] * &inv;
                    self[(lead, j)] = scaled;
                }
            }

            let pivot_row: Vec<(usize, Rational)> = (col..self.cols)
                .filter(|&j| !self[(lead, j)].is_zero())
                .map(|j| (j, self[(lead, j)].clone()))
                .collect();
            for r in 0..self.rows {
                if r == lead || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for (j, value) in &pivot_row {
                    let updated = &self[(r, *j)] - &factor * value;
                    self[(r, *j)] = updated;
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn of(m: &RationalMatrix) -> Self {
        let mut matrix = m.clone();
        let pivots = matrix.reduce_in_place();
        Self { matrix, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns carrying no pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.matrix.cols()).filter(|&j| !is_pivot[j]).collect()
    }
}

/// The unique reduced row echelon form of `m`.
pub fn rref(m: &RationalMatrix) -> RationalMatrix {
    Echelon::of(m).matrix
}

pub fn rank(m: &RationalMatrix) -> usize {
    Echelon::of(m).rank()
}

/// A basis of `{v : m v = 0}`, one vector per free column.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<RationalVector> {
    let ech = Echelon::of(m);
    let cols = m.cols();
    ech.free_columns()
        .into_iter()
        .map(|free| {
            let mut v = RationalVector::zeros(cols);
            v.entries[free] = Rational::one();
            for (row, &pivot) in ech.pivots.iter().enumerate() {
                let x = &ech.matrix[(row, free)];
                if !x.is_zero() {
                    v.entries[pivot] = -x;
                }
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_incidence() -> RationalMatrix {
        RationalMatrix::from_i64(&[&[1, -1, 0], &[0, 1, -1], &[-1, 0, 1]])
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = RationalMatrix::identity(3);
        assert_eq!(rref(&id), id);
    }

    #[test]
    fn rref_scales_rank_one() {
        let m = RationalMatrix::from_i64(&[&[2, 4], &[1, 2]]);
        assert_eq!(rref(&m), RationalMatrix::from_i64(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_of_cycle_incidence() {
        // by hand: R3 += R1 gives (0,-1,1) = -R2, then back-substitute
        let r = rref(&cycle_incidence());
        assert_eq!(r, RationalMatrix::from_i64(&[&[1, 0, -1], &[0, 1, -1], &[0, 0, 0]]));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&RationalMatrix::zeros(2, 3)), 0);
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&cycle_incidence()), 2);
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&RationalMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&RationalMatrix::zeros(2, 3)).len(), 3);
        let k = kernel_basis(&cycle_incidence());
        assert_eq!(k.len(), 1);
        assert!(k[0].is_proportional_to(&RationalVector::from_i64(&[1, 1, 1])));
    }

    #[test]
    fn fractions_stay_exact() {
        let m = RationalMatrix::from_rows(2, vec![vec![ratio(1, 3), ratio(2, 7)], vec![rat(7), rat(6)]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vector(&k[0]).is_zero());
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(rank(&RationalMatrix::zeros(0, 4)), 0);
        assert_eq!(kernel_basis(&RationalMatrix::zeros(0, 4)).len(), 4);
        assert!(kernel_basis(&RationalMatrix::zeros(3, 0)).is_empty());
    }
}
