use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::IntPolynomial;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Most of the crate works with square matrices; rectangular shapes are
/// allowed so that linear maps between coefficient spaces (commutant
/// equations, kernels) can use the same type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Square matrix from a literal array, e.g. `IntMatrix::from_array([[2, 1], [1, 1]])`.
    pub fn from_array<const N: usize>(rows: [[i64; N]; N]) -> Self {
        let data = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        Self { rows: N, cols: N, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, value: &BigInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = value.clone();
        }
        m
    }

    /// Block-diagonal assembly of square blocks.
    pub fn block_diagonal(blocks: &[IntMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(off + i) * n + off + j] = b[(i, j)].clone();
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of a square matrix (the row count).
    pub fn n(&self) -> usize {
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn ensure_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(|v| v.abs()).max().unwrap_or_default()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product of two matrices already known to be compatible.
    pub(crate) fn mul_unchecked(&self, other: &IntMatrix) -> IntMatrix {
        self.mul(other).expect("dimension-checked product")
    }

    fn zip_with(&self, other: &IntMatrix, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<IntMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(IntMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| -v).collect() }
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * s).collect() }
    }

    /// `self - s·1`.
    pub fn sub_scalar(&self, s: &BigInt) -> IntMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.data[i * self.cols + i] -= s;
        }
        m
    }

    /// Exact determinant by fraction-free (Bareiss) elimination; 0 for singular input.
    ///
    /// Panics if the matrix is not square.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = !sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign { -d } else { d }
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    pub fn ensure_unimodular(&self) -> Result<BigInt> {
        self.ensure_square()?;
        let d = self.det();
        if d.abs().is_one() {
            Ok(d)
        } else {
            Err(Error::NotUnimodular { det: d.to_string() })
        }
    }

    /// Characteristic polynomial `det(x·1 − M)` via the Faddeev–LeVerrier
    /// recursion; every division in it is exact over the integers.
    pub fn charpoly(&self) -> IntPolynomial {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut mk = IntMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·1
            let mut next = self.mul_unchecked(&mk);
            let c = coeffs[n - k + 1].clone();
            for i in 0..n {
                next.data[i * n + i] += &c;
            }
            let t = self.mul_unchecked(&next).trace();
            let (q, r) = t.div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero());
            coeffs[n - k] = -q;
            mk = next;
        }
        IntPolynomial::new(coeffs)
    }

    /// Inverse of a unimodular matrix from its characteristic polynomial:
    /// `M⁻¹ = −(1/a₀)·Σ a_{l+1}·Mˡ`.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        self.ensure_unimodular()?;
        let p = self.charpoly();
        let a = p.coeffs();
        let n = self.rows;
        // Horner: H = a_n·1, then H = H·M + a_l·1 for l = n-1..1
        let mut h = IntMatrix::scalar(n, &a[n]);
        for l in (1..n).rev() {
            h = h.mul_unchecked(self);
            for i in 0..n {
                h.data[i * n + i] += &a[l];
            }
        }
        // 1/a0 = a0 for a0 = ±1
        Ok(h.scale(&-&a[0]))
    }

    /// `Mᵏ` by binary powering; negative exponents go through the inverse.
    pub fn pow(&self, k: i64) -> Result<IntMatrix> {
        self.ensure_square()?;
        let base = if k < 0 { self.inverse_unimodular()? } else { self.clone() };
        Ok(base.pow_u(k.unsigned_abs()))
    }

    pub(crate) fn pow_u(&self, mut e: u64) -> IntMatrix {
        let mut result = IntMatrix::identity(self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_unchecked(&b);
            }
        }
        result
    }

    /// Substitute this matrix into a polynomial.
    pub fn eval_poly(&self, p: &IntPolynomial) -> IntMatrix {
        let n = self.rows;
        let c = p.coeffs();
        if c.is_empty() {
            return IntMatrix::zeros(n, n);
        }
        let mut acc = IntMatrix::scalar(n, &c[c.len() - 1]);
        for a in c.iter().rev().skip(1) {
            acc = acc.mul_unchecked(self);
            for i in 0..n {
                acc.data[i * n + i] += a;
            }
        }
        acc
    }

    pub fn commutes_with(&self, other: &IntMatrix) -> bool {
        match (self.mul(other), other.mul(self)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Row-major vectorisation.
    pub fn vectorize(&self) -> Vec<BigInt> {
        self.data.clone()
    }

    pub fn from_vector(n: usize, v: &[BigInt]) -> IntMatrix {
        assert_eq!(v.len(), n * n);
        IntMatrix { rows: n, cols: n, data: v.to_vec() }
    }

    /// Anti-diagonal involution: ones on the anti-diagonal.
    pub fn reversal(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + (n - 1 - i)] = BigInt::one();
        }
        m
    }

    /// Standard skew form `J = [[0, 1], [-1, 0]]` in block form, for even n.
    pub fn standard_symplectic(n: usize) -> Option<IntMatrix> {
        if n == 0 || !n.is_multiple_of(2) {
            return None;
        }
        let h = n / 2;
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..h {
            m.data[i * n + h + i] = BigInt::one();
            m.data[(h + i) * n + i] = -BigInt::one();
        }
        Some(m)
    }

    /// Total order used to make result lists deterministic: shape, then
    /// row-major entries lexicographically.
    pub fn canonical_cmp(&self, other: &IntMatrix) -> std::cmp::Ordering {
        (self.rows, self.cols).cmp(&(other.rows, other.cols)).then_with(|| self.data.cmp(&other.data))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m1() -> IntMatrix {
        IntMatrix::from_array([[0, 0, 1], [1, 0, 0], [0, 1, 1]])
    }

    fn m2() -> IntMatrix {
        IntMatrix::from_array([[1, 1, 0], [1, 0, 1], [1, 1, 1]])
    }

    fn adjugate_inverse_2x2(m: &IntMatrix) -> IntMatrix {
        let d = m.det();
        IntMatrix::from_rows(vec![
            vec![&m[(1, 1)] * &d, -&m[(0, 1)] * &d],
            vec![-&m[(1, 0)] * &d, &m[(0, 0)] * &d],
        ])
        .unwrap()
    }

    #[test]
    fn determinants_of_the_cubic_examples() {
        assert_eq!(m1().det(), BigInt::from(1));
        assert_eq!(m2().det(), BigInt::from(-1));
        assert_eq!(IntMatrix::identity(5).det(), BigInt::from(1));
    }

    #[test]
    fn singular_determinant_is_zero() {
        let m = IntMatrix::from_array([[1, 2], [2, 4]]);
        assert_eq!(m.det(), BigInt::zero());
        let z = IntMatrix::from_array([[0, 0, 1], [0, 0, 2], [3, 4, 5]]);
        assert_eq!(z.det(), BigInt::zero());
    }

    #[test]
    fn pivoting_determinant() {
        let m = IntMatrix::from_array([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(m.det(), BigInt::from(-1));
    }

    #[test]
    fn charpolys() {
        assert_eq!(m1().charpoly().to_string(), "x^3 - x^2 - 1");
        assert_eq!(m2().charpoly().to_string(), "x^3 - 2*x^2 - x + 1");
        let cat4 = IntMatrix::from_array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 2, 1], [0, 1, 1, 2]]);
        assert_eq!(cat4.charpoly().to_string(), "x^4 - 4*x^3 + 5*x^2 - 4*x + 1");
        assert_eq!(IntMatrix::identity(2).charpoly().to_string(), "x^2 - 2*x + 1");
    }

    #[test]
    fn powers() {
        let cat = IntMatrix::from_array([[2, 1], [1, 1]]);
        assert!(cat.pow(0).unwrap().is_identity());
        assert_eq!(cat.pow(2).unwrap(), IntMatrix::from_array([[5, 3], [3, 2]]));
        let eight = IntMatrix::from_array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0]]);
        assert!(eight.pow(8).unwrap().is_identity());
        assert!(!eight.pow(4).unwrap().is_identity());
        assert_eq!(cat.pow(-2).unwrap().mul(&cat.pow(2).unwrap()).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn negative_power_needs_unimodular() {
        let m = IntMatrix::from_array([[2, 0], [0, 1]]);
        assert!(matches!(m.pow(-1), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn dimension_mismatch() {
        let a = IntMatrix::identity(2);
        let b = IntMatrix::identity(3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverses() {
        assert!(IntMatrix::identity(3).inverse_unimodular().unwrap().is_identity());
        let cat = IntMatrix::from_array([[2, 1], [1, 1]]);
        assert_eq!(cat.inverse_unimodular().unwrap(), IntMatrix::from_array([[1, -1], [-1, 2]]));
        let inv = m2().inverse_unimodular().unwrap();
        assert!(inv.mul(&m2()).unwrap().is_identity());
        let hyperbolic = IntMatrix::from_array([[5, 7], [7, 10]]);
        assert_eq!(hyperbolic.inverse_unimodular().unwrap(), adjugate_inverse_2x2(&hyperbolic));
        assert!(IntMatrix::from_array([[2, 0], [0, 1]]).inverse_unimodular().is_err());
    }

    #[test]
    fn reversal_conjugates_companions() {
        let r = IntMatrix::reversal(4);
        assert!(r.mul(&r).unwrap().is_identity());
        let j = IntMatrix::standard_symplectic(4).unwrap();
        assert_eq!(j.transpose(), j.neg());
        assert!(IntMatrix::standard_symplectic(3).is_none());
    }
}
