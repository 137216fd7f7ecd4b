//! Dense square matrices with exact rational entries.

use std::ops::{Add, Index, IndexMut};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix { n, data: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend(row);
        }
        RatMatrix { n, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational::int(v)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.data.chunks(self.n.max(1))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix { n: self.n, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn add_scaled(&mut self, other: &RatMatrix, c: &Rational) {
        assert_eq!(self.n, other.n);
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let (p, q) = (self.n, other.n);
        let mut out = RatMatrix::zeros(p * q);
        for i in 0..p {
            for j in 0..p {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for r in 0..q {
                    for s in 0..q {
                        let b = &other[(r, s)];
                        if !b.is_zero() {
                            out[(i * q + r, j * q + s)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Tensor (Kronecker) sum `self ⊗ I + I ⊗ other`.
    pub fn tensor_sum(&self, other: &RatMatrix) -> RatMatrix {
        let left = self.kron(&RatMatrix::identity(other.n));
        let right = RatMatrix::identity(self.n).kron(other);
        left + right
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| rational::to_f64(&self[(i, j)]))
    }

    /// Exact determinant: clear denominators row by row, then Bareiss over ℤ.
    pub fn det(&self) -> Rational {
        if self.n == 0 {
            return Rational::one();
        }
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = self
            .rows()
            .map(|row| {
                let l = rational::lcm_of_denominators(row);
                let out = row
                    .iter()
                    .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                    .collect();
                scale *= &l;
                out
            })
            .collect();
        Rational::new(bareiss_det(rows), scale)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.n + j]
    }
}

impl Add for RatMatrix {
    type Output = RatMatrix;
    fn add(mut self, rhs: RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n);
        for (a, b) in self.data.iter_mut().zip(rhs.data) {
            *a += b;
        }
        self
    }
}

/// Fraction-free Gaussian elimination on an integer matrix.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn scalar_tensor_sum_adds() {
        let a = RatMatrix::from_i64(&[&[1]]);
        let b = RatMatrix::from_i64(&[&[2]]);
        assert_eq!(a.tensor_sum(&b), RatMatrix::from_i64(&[&[3]]));
    }

    #[test]
    fn diagonal_tensor_sum() {
        let a = RatMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let expect = RatMatrix::from_i64(&[
            &[2, 0, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, 0],
            &[0, 0, 0, -2],
        ]);
        assert_eq!(a.tensor_sum(&a), expect);
    }

    #[test]
    fn exact_det_small() {
        let m = RatMatrix::from_rows(vec![
            vec![ratio(1, 2), int(3)],
            vec![int(4), ratio(-2, 3)],
        ]);
        assert_eq!(m.det(), ratio(-1, 3) - int(12));
        let singular = RatMatrix::from_i64(&[&[8, 4], &[4, 2]]);
        assert!(singular.det().is_zero());
    }

    #[test]
    fn det_needs_pivoting() {
        let m = RatMatrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        // cofactor expansion by hand: 0*(0+9) - 1*(8-12) + 2*(-3-0) = -2
        assert_eq!(m.det(), int(-2));
    }
}
