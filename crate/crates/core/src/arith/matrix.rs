//! Arbitrary-precision integer matrices and Smith normal form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn from_columns(cols: &[Vec<BigInt>]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    /// Like `from_columns` but keeps the ambient row count when the column
    /// list is empty.
    pub fn from_columns_with_rows(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        if cols.is_empty() {
            return Self::zero(rows, 0);
        }
        assert!(cols.iter().all(|col| col.len() == rows), "ragged columns");
        Self::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
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

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
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

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j { self[(i, j)].is_one() } else { self[(i, j)].is_zero() }
                })
            })
    }

    /// Block direct sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let mut m = Self::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            let (x, y) = (a[(k, j)].clone(), a[(i, j)].clone());
                            a[(k, j)] = y;
                            a[(i, j)] = x;
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 { -d } else { d }
    }

    /// Rank over Q, via Smith normal form.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }
}

/// Result of a Smith normal form computation: `u * m * v = s` with
/// `u`, `v` unimodular and `s` diagonal with divisibility d1 | d2 | ...
pub struct SmithDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).filter(|&i| !self.s[(i, i)].is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }

    /// Invariant factors > 1 (the torsion of coker(m) for square m).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|d| d.magnitude() > &BigInt::one().magnitude().clone())
            .map(|d| d.abs())
            .collect()
    }
}

struct SnfWorker {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfWorker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.a.cols() {
            self.a.entries.swap(i * self.a.cols + c, j * self.a.cols + c);
        }
        for c in 0..self.u.cols() {
            self.u.entries.swap(i * self.u.cols + c, j * self.u.cols + c);
        }
        // u_inv: swap columns i, j
        for r in 0..self.u_inv.rows() {
            self.u_inv.entries.swap(r * self.u_inv.cols + i, r * self.u_inv.cols + j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.a.rows() {
            self.a.entries.swap(r * self.a.cols + i, r * self.a.cols + j);
        }
        for r in 0..self.v.rows() {
            self.v.entries.swap(r * self.v.cols + i, r * self.v.cols + j);
        }
        // v_inv: swap rows i, j
        for c in 0..self.v_inv.cols() {
            self.v_inv.entries.swap(i * self.v_inv.cols + c, j * self.v_inv.cols + c);
        }
    }

    /// row i += c * row j  (on a and u); u_inv: col j -= c * col i
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.a.cols() {
            let t = c * &self.a[(j, k)];
            self.a[(i, k)] += t;
        }
        for k in 0..self.u.cols() {
            let t = c * &self.u[(j, k)];
            self.u[(i, k)] += t;
        }
        for k in 0..self.u_inv.rows() {
            let t = c * &self.u_inv[(k, i)];
            self.u_inv[(k, j)] -= t;
        }
    }

    /// col i += c * col j  (on a and v); v_inv: row j -= c * row i
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for k in 0..self.a.rows() {
            let t = c * &self.a[(k, j)];
            self.a[(k, i)] += t;
        }
        for k in 0..self.v.rows() {
            let t = c * &self.v[(k, j)];
            self.v[(k, i)] += t;
        }
        for k in 0..self.v_inv.cols() {
            let t = c * &self.v_inv[(i, k)];
            self.v_inv[(j, k)] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.a.cols() {
            let t = -self.a[(i, k)].clone();
            self.a[(i, k)] = t;
        }
        for k in 0..self.u.cols() {
            let t = -self.u[(i, k)].clone();
            self.u[(i, k)] = t;
        }
        for k in 0..self.u_inv.rows() {
            let t = -self.u_inv[(k, i)].clone();
            self.u_inv[(k, i)] = t;
        }
    }
}

/// Smith normal form with unimodular transforms: returns (s, u, v) with
/// u·m·v = s, s diagonal, d1 | d2 | ... | dr, zeros thereafter.
///
/// Pivot strategy: smallest non-zero absolute value in the remaining block,
/// which keeps intermediate growth modest at the ranks used here.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = SnfWorker {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        u_inv: IntMatrix::identity(rows),
        v_inv: IntMatrix::identity(cols),
    };
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // locate smallest-abs nonzero pivot in block [t.., t..]
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !w.a[(i, j)].is_zero()
                    && best
                        .map(|(bi, bj)| w.a[(i, j)].abs() < w.a[(bi, bj)].abs())
                        .unwrap_or(true)
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        // clear row/column t
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = div_round(&w.a[(i, t)], &w.a[(t, t)]);
                w.add_row(i, t, &-q);
                if !w.a[(i, t)].is_zero() {
                    // remainder smaller than pivot: promote it
                    w.swap_rows(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = div_round(&w.a[(t, j)], &w.a[(t, t)]);
                w.add_col(j, t, &-q);
                if !w.a[(t, j)].is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        t += 1;
    }
    // normalize signs
    for i in 0..n {
        if w.a[(i, i)].is_negative() {
            w.negate_row(i);
        }
    }
    // enforce divisibility chain
    loop {
        let mut fixed = true;
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (w.a[(i, i)].clone(), w.a[(i + 1, i + 1)].clone());
            if a.is_zero() && !b.is_zero() {
                w.swap_rows(i, i + 1);
                w.swap_cols(i, i + 1);
                fixed = false;
                continue;
            }
            if !a.is_zero() && !(&b % &a).is_zero() {
                // fold d_{i+1} into row i and re-reduce the 2x2 block
                w.add_col(i, i + 1, &BigInt::one());
                let g = gcd_reduce_2x2(&mut w, i);
                debug_assert!(!g.is_zero());
                fixed = false;
            }
        }
        if fixed {
            break;
        }
    }
    SmithDecomposition { s: w.a, u: w.u, v: w.v, u_inv: w.u_inv, v_inv: w.v_inv }
}

/// Reduce the 2x2 block at (i, i) back to diagonal after a fill-in; returns new pivot.
fn gcd_reduce_2x2(w: &mut SnfWorker, i: usize) -> BigInt {
    loop {
        // entries: a[(i,i)], a[(i+1,i)], a[(i,i+1)], a[(i+1,i+1)]
        if w.a[(i + 1, i)].is_zero() && w.a[(i, i + 1)].is_zero() {
            if w.a[(i, i)].is_negative() {
                w.negate_row(i);
            }
            if w.a[(i + 1, i + 1)].is_negative() {
                w.negate_row(i + 1);
            }
            // keep smaller first
            if !w.a[(i + 1, i + 1)].is_zero()
                && (w.a[(i, i)].is_zero() || w.a[(i, i)].abs() > w.a[(i + 1, i + 1)].abs())
            {
                w.swap_rows(i, i + 1);
                w.swap_cols(i, i + 1);
                continue;
            }
            return w.a[(i, i)].clone();
        }
        if !w.a[(i + 1, i)].is_zero() {
            if w.a[(i, i)].is_zero() || w.a[(i + 1, i)].abs() < w.a[(i, i)].abs() {
                w.swap_rows(i, i + 1);
            }
            let q = div_round(&w.a[(i + 1, i)], &w.a[(i, i)]);
            w.add_row(i + 1, i, &-q);
        }
        if !w.a[(i, i + 1)].is_zero() {
            if w.a[(i, i)].is_zero() || w.a[(i, i + 1)].abs() < w.a[(i, i)].abs() {
                w.swap_cols(i, i + 1);
            }
            let q = div_round(&w.a[(i, i + 1)], &w.a[(i, i)]);
            w.add_col(i + 1, i, &-q);
        }
    }
}

/// Rounded division: quotient minimizing |a - q b|.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    let two_r = r.abs() * 2;
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) { q + 1 } else { q - 1 }
    } else {
        q
    }
}

/// Saturated basis of ker(m) (integer column vectors), from SNF.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let d = smith_normal_form(m);
    let r = d.rank();
    (r..m.cols()).map(|j| d.v.column(j)).collect()
}

/// Basis of the saturation of the column span of `m` inside Z^rows:
/// the first rank(m) columns of u^{-1}.
pub fn column_span_saturation(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let d = smith_normal_form(m);
    let r = d.rank();
    (0..r).map(|j| d.u_inv.column(j)).collect()
}

/// Basis of the column span (image) of `m` over Z: u^{-1} columns scaled by
/// the elementary divisors.
pub fn column_span_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let d = smith_normal_form(m);
    let r = d.rank();
    (0..r)
        .map(|j| {
            d.u_inv
                .column(j)
                .into_iter()
                .map(|x| x * &d.s[(j, j)])
                .collect()
        })
        .collect()
}

/// Characteristic polynomial det(xI - m) by the Faddeev–LeVerrier recursion
/// (all divisions exact over Z). Coefficients returned lowest degree first.
pub fn char_poly(m: &IntMatrix) -> Result<super::IntPoly, ArithError> {
    if !m.is_square() {
        return Err(ArithError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::identity(n);
    for k in 1..=n {
        mk = m.mul(&mk);
        let tr: BigInt = (0..n).map(|i| mk[(i, i)].clone()).sum();
        let a = -tr / BigInt::from(k);
        coeffs[n - k] = a.clone();
        for i in 0..n {
            mk[(i, i)] += &a;
        }
    }
    Ok(super::IntPoly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram_an(n: usize) -> IntMatrix {
        IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigInt::from(-2)
            } else if i.abs_diff(j) == 1 {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    #[test]
    fn snf_already_diagonal() {
        let m = IntMatrix::from_rows_i64(&[vec![2, 0], vec![0, 2]]);
        let d = smith_normal_form(&m);
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(d.u.mul(&m).mul(&d.v), d.s);
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMatrix::from_rows_i64(&[vec![0]]);
        let d = smith_normal_form(&m);
        assert_eq!(d.s, m);
    }

    #[test]
    fn snf_a7_gram() {
        // independent oracle value: diag(1,...,1,8), det -8
        let m = gram_an(7);
        assert_eq!(m.det(), BigInt::from(-8));
        let d = smith_normal_form(&m);
        let diag: Vec<i64> = vec![1, 1, 1, 1, 1, 1, 8];
        assert_eq!(d.diagonal(), diag.into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(d.u.mul(&m).mul(&d.v), d.s);
        assert!(d.u.mul(&d.u_inv).is_identity());
        assert!(d.v.mul(&d.v_inv).is_identity());
        assert_eq!(d.u.det().abs(), BigInt::one());
        assert_eq!(d.v.det().abs(), BigInt::one());
    }

    #[test]
    fn char_poly_identity_and_swap() {
        let id = IntMatrix::identity(2);
        let p = char_poly(&id).unwrap();
        // (x-1)^2 = x^2 - 2x + 1
        assert_eq!(p.coeffs(), &[BigInt::one(), BigInt::from(-2), BigInt::one()]);
        let swap = IntMatrix::from_rows_i64(&[vec![0, 1], vec![1, 0]]);
        let p = char_poly(&swap).unwrap();
        assert_eq!(p.coeffs(), &[BigInt::from(-1), BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn char_poly_companion() {
        // companion matrix of x^2 - 3x + 1
        let c = IntMatrix::from_rows_i64(&[vec![0, -1], vec![1, 3]]);
        let p = char_poly(&c).unwrap();
        assert_eq!(p.coeffs(), &[BigInt::one(), BigInt::from(-3), BigInt::one()]);
    }

    #[test]
    fn char_poly_rejects_non_square() {
        let m = IntMatrix::zero(2, 3);
        assert!(char_poly(&m).is_err());
    }

    #[test]
    fn kernel_of_degenerate() {
        // double-edge pair gram [[-2,2],[2,-2]]
        let m = IntMatrix::from_rows_i64(&[vec![-2, 2], vec![2, -2]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], k[0][1]);
        assert_eq!(k[0][0].abs(), BigInt::one());
    }

    #[test]
    fn saturation_of_doubled_vector() {
        // span of (2, 0): saturation is Z(1,0)
        let m = IntMatrix::from_fn(2, 1, |i, _| BigInt::from(if i == 0 { 2 } else { 0 }));
        let sat = column_span_saturation(&m);
        assert_eq!(sat.len(), 1);
        assert_eq!(sat[0][0].abs(), BigInt::one());
        assert!(sat[0][1].is_zero());
    }
}
