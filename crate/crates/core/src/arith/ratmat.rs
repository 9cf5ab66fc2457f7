//! Small exact rational linear algebra helpers (Gauss-Jordan scale).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntMatrix;

pub type RatVec = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigRational>,
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.cols + j]
    }
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        let mut out = Self::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = BigRational::from_integer(m[(i, j)].clone());
            }
        }
        out
    }

    pub fn from_columns(cols: &[RatVec]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = Self::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for i in 0..r {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> RatVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> RatVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan; None when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !a[(i, col)].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a[(col, j)].clone(), a[(pivot, j)].clone());
                    a[(col, j)] = y;
                    a[(pivot, j)] = x;
                    let (x, y) = (inv[(col, j)].clone(), inv[(pivot, j)].clone());
                    inv[(col, j)] = y;
                    inv[(pivot, j)] = x;
                }
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &p;
                inv[(col, j)] = &inv[(col, j)] / &p;
            }
            for i in 0..n {
                if i == col || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(i, j)] -= t;
                    let t = &f * &inv[(col, j)];
                    inv[(i, j)] -= t;
                }
            }
        }
        Some(inv)
    }

    /// Solve self * x = b exactly; None when no solution.
    pub fn solve(&self, b: &[BigRational]) -> Option<RatVec> {
        assert_eq!(self.rows, b.len());
        let n = self.rows;
        let m = self.cols;
        let mut a = self.clone();
        let mut rhs: RatVec = b.to_vec();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            let Some(p) = (row..n).find(|&i| !a[(i, col)].is_zero()) else { continue };
            if p != row {
                for j in 0..m {
                    let (x, y) = (a[(row, j)].clone(), a[(p, j)].clone());
                    a[(row, j)] = y;
                    a[(p, j)] = x;
                }
                rhs.swap(row, p);
            }
            let pv = a[(row, col)].clone();
            for j in 0..m {
                a[(row, j)] = &a[(row, j)] / &pv;
            }
            rhs[row] = &rhs[row] / &pv;
            for i in 0..n {
                if i == row || a[(i, col)].is_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in 0..m {
                    let t = &f * &a[(row, j)];
                    a[(i, j)] -= t;
                }
                let t = &f * &rhs[row];
                rhs[i] -= t;
            }
            pivots.push((row, col));
            row += 1;
            if row == n {
                break;
            }
        }
        // consistency
        for i in row..n {
            if !rhs[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![BigRational::zero(); m];
        for &(r, c) in &pivots {
            x[c] = rhs[r].clone();
        }
        Some(x)
    }
}

pub fn int_vec_to_rat(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Clear denominators: returns (integer vector, lcm of denominators).
pub fn clear_denominators(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let out = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    (out, lcm)
}

pub fn is_integral(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.denom().is_one())
}

pub fn rat_to_int_vec(v: &[BigRational]) -> Option<Vec<BigInt>> {
    if !is_integral(v) {
        return None;
    }
    Some(v.iter().map(|x| x.numer().clone()).collect())
}
