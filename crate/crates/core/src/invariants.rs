//! Invariant factors from gcds of minors, minimal polynomials, companion
//! matrices and the Frobenius (rational canonical) form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, RatMatrix};
use crate::polyring::IntPolynomial;

/// Invariant factors `q₁ | q₂ | … | q_r`, all monic of degree ≥ 1.
/// `ell` counts the trivial factors, so `ell + r = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    pub q: Vec<IntPolynomial>,
    pub ell: usize,
}

impl InvariantFactors {
    pub fn r(&self) -> usize {
        self.q.len()
    }

    pub fn minimal_polynomial(&self) -> &IntPolynomial {
        self.q.last().expect("at least one invariant factor")
    }

    pub fn product(&self) -> IntPolynomial {
        self.q.iter().fold(IntPolynomial::one(), |acc, q| &acc * q)
    }
}

fn poly_det(mut a: Vec<Vec<IntPolynomial>>) -> IntPolynomial {
    let k = a.len();
    let mut prev = IntPolynomial::one();
    let mut negate = false;
    for t in 0..k {
        let Some(p) = (t..k).find(|&i| !a[i][t].is_zero()) else {
            return IntPolynomial::zero();
        };
        if p != t {
            a.swap(p, t);
            negate = !negate;
        }
        for i in t + 1..k {
            for j in t + 1..k {
                let num = &(&a[t][t] * &a[i][j]) - &(&a[i][t] * &a[t][j]);
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[t][t].clone();
    }
    let d = a[k - 1][k - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

fn next_subset(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Primitive gcd (positive leading coefficient) of all `k×k` minors of `x·1 − M`.
fn minors_gcd(xm: &[Vec<IntPolynomial>], k: usize) -> IntPolynomial {
    let n = xm.len();
    let mut g = IntPolynomial::zero();
    let mut rows: Vec<usize> = (0..k).collect();
    loop {
        let mut cols: Vec<usize> = (0..k).collect();
        loop {
            let sub: Vec<Vec<IntPolynomial>> =
                rows.iter().map(|&i| cols.iter().map(|&j| xm[i][j].clone()).collect()).collect();
            let d = poly_det(sub);
            if !d.is_zero() {
                g = g.gcd(&d);
                if g.deg() == 0 {
                    return IntPolynomial::one();
                }
            }
            if !next_subset(&mut cols, n) {
                break;
            }
        }
        if !next_subset(&mut rows, n) {
            break;
        }
    }
    g.primitive_part()
}

/// Invariant factors from `p_k = gcd of k×k minors of (x·1 − M)`, computed
/// from `k = n` downwards until `p_k = 1`.
pub fn polynomial_invariants(m: &IntMatrix) -> Result<InvariantFactors> {
    m.ensure_square()?;
    let n = m.n();
    let xm: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = -m[(i, j)].clone();
                    if i == j {
                        IntPolynomial::new(vec![c, BigInt::one()])
                    } else {
                        IntPolynomial::constant(c)
                    }
                })
                .collect()
        })
        .collect();
    // p[k] for k = 0..=n
    let mut p = vec![IntPolynomial::one(); n + 1];
    p[n] = m.charpoly();
    let mut ell = n - 1;
    for k in (1..n).rev() {
        p[k] = minors_gcd(&xm, k);
        if p[k].is_one() {
            ell = k;
            break;
        }
        ell = k - 1;
    }
    let q = (ell + 1..=n)
        .map(|k| p[k].exact_div(&p[k - 1]))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Error::Invariant("minor gcds do not divide".into()))?;
    Ok(InvariantFactors { q, ell })
}

pub fn minimal_polynomial(m: &IntMatrix) -> Result<IntPolynomial> {
    Ok(polynomial_invariants(m)?.minimal_polynomial().clone())
}

pub fn is_cyclic(m: &IntMatrix) -> Result<bool> {
    Ok(polynomial_invariants(m)?.r() == 1)
}

/// No repeated eigenvalues.
pub fn is_simple(m: &IntMatrix) -> Result<bool> {
    m.ensure_square()?;
    Ok(m.charpoly().is_square_free())
}

/// Diagonalisable over ℂ.
pub fn is_semisimple(m: &IntMatrix) -> Result<bool> {
    Ok(minimal_polynomial(m)?.is_square_free())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompanionSide {
    Left,
    Right,
}

/// Companion matrix of a monic polynomial. The left form has ones on the
/// superdiagonal and `−a₀, …, −a_{d−1}` in the last row; the right form
/// is its conjugate by the anti-diagonal involution.
pub fn companion(p: &IntPolynomial, side: CompanionSide) -> Result<IntMatrix> {
    if !p.is_monic() || p.deg() == 0 {
        return Err(Error::NotMonic);
    }
    let d = p.deg();
    let mut c = IntMatrix::zeros(d, d);
    for i in 0..d - 1 {
        c[(i, i + 1)] = BigInt::one();
    }
    for j in 0..d {
        c[(d - 1, j)] = -p.coeff(j);
    }
    Ok(match side {
        CompanionSide::Left => c,
        CompanionSide::Right => {
            let r = reversal_involution(d);
            r.mul_unchecked(&c).mul_unchecked(&r)
        }
    })
}

pub fn reversal_involution(n: usize) -> IntMatrix {
    IntMatrix::reversal(n)
}

/// `M = S·D·S⁻¹` with `D` the block diagonal of left companions of `q₁, …, q_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusForm {
    pub blocks: Vec<IntMatrix>,
    pub transform: RatMatrix,
}

impl FrobeniusForm {
    pub fn block_diagonal(&self) -> IntMatrix {
        IntMatrix::block_diagonal(&self.blocks)
    }
}

fn rat_apply(m: &RatMatrix, v: &[BigRational]) -> Vec<BigRational> {
    m.mul_vec(v)
}

fn krylov(m: &RatMatrix, v: &[BigRational], d: usize) -> Vec<Vec<BigRational>> {
    let mut out = Vec::with_capacity(d);
    let mut cur = v.to_vec();
    for _ in 0..d {
        let next = rat_apply(m, &cur);
        out.push(std::mem::replace(&mut cur, next));
    }
    out
}

fn combine(basis: &[Vec<BigRational>], coeffs: &[BigRational]) -> Vec<BigRational> {
    let n = basis[0].len();
    let mut v = vec![BigRational::zero(); n];
    for (b, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    v
}

/// A vector of `span(basis)` whose cyclic subspace has dimension `d`:
/// basis vectors in order first, then points on the moment curve.
fn cyclic_vector(m: &RatMatrix, basis: &[Vec<BigRational>], d: usize) -> Vec<BigRational> {
    let full = |v: &[BigRational]| RatMatrix::from_rows(&krylov(m, v, d)).rank() == d;
    if let Some(b) = basis.iter().find(|b| full(b)) {
        return b.clone();
    }
    for t in 2i64.. {
        let t = BigRational::from_integer(BigInt::from(t));
        let mut c = Vec::with_capacity(basis.len());
        let mut pw = BigRational::one();
        for _ in basis {
            c.push(pw.clone());
            pw *= &t;
        }
        let v = combine(basis, &c);
        if full(&v) {
            return v;
        }
    }
    unreachable!()
}

/// Frobenius normal form with an explicit rational transform, built by
/// splitting off cyclic subspaces for `q_r, q_{r−1}, …` in turn.
pub fn frobenius_form(m: &IntMatrix) -> Result<FrobeniusForm> {
    let inv = polynomial_invariants(m)?;
    let n = m.n();
    let mr = RatMatrix::from(m);
    let id = RatMatrix::identity(n);
    let mut basis: Vec<Vec<BigRational>> = (0..n).map(|j| id.column(j)).collect();
    let mut columns_by_block: Vec<Vec<Vec<BigRational>>> = Vec::new();
    for q in inv.q.iter().rev() {
        let d = q.deg();
        let v = cyclic_vector(&mr, &basis, d);
        // w_{d−1} = v, w_{j−1} = M·w_j + a_j·v
        let mut w = vec![Vec::new(); d];
        w[d - 1] = v.clone();
        for j in (1..d).rev() {
            let mut next = rat_apply(&mr, &w[j]);
            let a = BigRational::from_integer(q.coeff(j));
            for (x, y) in next.iter_mut().zip(&v) {
                *x += &a * y;
            }
            w[j - 1] = next;
        }
        columns_by_block.push(w);

        if basis.len() == d {
            basis.clear();
            continue;
        }
        // functional f with f(Mʲv) = δ_{j,d−1}, then U' = {x ∈ U : f(Mʲx) = 0, j < d}
        let k = krylov(&mr, &v, d);
        let aug_rows: Vec<Vec<BigRational>> = (0..d)
            .map(|j| {
                let mut r = k[j].clone();
                r.push(if j == d - 1 { -BigRational::one() } else { BigRational::zero() });
                r
            })
            .collect();
        let sols = RatMatrix::from_rows(&aug_rows).kernel();
        let sol = sols
            .into_iter()
            .find(|s| !s[n].is_zero())
            .ok_or_else(|| Error::Invariant("no dual functional for cyclic block".into()))?;
        let scale = sol[n].recip();
        let f: Vec<BigRational> = sol[..n].iter().map(|x| x * &scale).collect();
        let mut rows = Vec::with_capacity(d);
        let mut fj = f;
        for _ in 0..d {
            rows.push(basis.iter().map(|b| dot(&fj, b)).collect::<Vec<_>>());
            fj = row_times(&fj, &mr);
        }
        let coeffs = RatMatrix::from_rows(&rows).kernel();
        basis = coeffs.iter().map(|c| combine(&basis, c)).collect();
    }
    columns_by_block.reverse();
    let blocks = inv
        .q
        .iter()
        .map(|q| companion(q, CompanionSide::Left))
        .collect::<Result<Vec<_>>>()?;
    let cols: Vec<Vec<BigRational>> = columns_by_block.into_iter().flatten().collect();
    let transform = RatMatrix::from_columns(n, &cols);
    let form = FrobeniusForm { blocks, transform };
    let d = RatMatrix::from(&form.block_diagonal());
    if mr.mul(&form.transform)? != form.transform.mul(&d)? {
        return Err(Error::Invariant("Frobenius transform does not intertwine".into()));
    }
    Ok(form)
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn row_times(f: &[BigRational], m: &RatMatrix) -> Vec<BigRational> {
    (0..m.cols()).map(|j| (0..m.rows()).map(|i| &f[i] * &m[(i, j)]).sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn identity_has_two_linear_invariants() {
        let inv = polynomial_invariants(&IntMatrix::identity(2)).unwrap();
        assert_eq!(inv.q, vec![p(&[-1, 1]), p(&[-1, 1])]);
        assert_eq!(inv.ell, 0);
    }

    #[test]
    fn jordan_block() {
        let j = IntMatrix::from_array([[1, 1], [0, 1]]);
        assert_eq!(minimal_polynomial(&j).unwrap(), p(&[1, -2, 1]));
        assert!(is_cyclic(&j).unwrap());
        assert!(!is_simple(&j).unwrap());
        assert!(!is_semisimple(&j).unwrap());
    }

    #[test]
    fn companions() {
        let c = companion(&p(&[1, 0, 0, 0, 1]), CompanionSide::Left).unwrap();
        assert_eq!(c, IntMatrix::from_array([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0]]));
        let q = p(&[1, -3, 1]);
        let l = companion(&q, CompanionSide::Left).unwrap();
        let r = companion(&q, CompanionSide::Right).unwrap();
        assert_eq!(r, l.inverse_unimodular().unwrap());
        assert_eq!(companion(&p(&[2, 1]), CompanionSide::Left).unwrap(), IntMatrix::from_array([[-2]]));
        assert_eq!(companion(&p(&[1, 2, 2]), CompanionSide::Left), Err(Error::NotMonic));
    }

    #[test]
    fn frobenius_of_scalar_matrix() {
        let m = IntMatrix::scalar(3, &BigInt::from(2));
        let f = frobenius_form(&m).unwrap();
        assert_eq!(f.blocks.len(), 3);
        assert!(f.transform.inverse().is_ok());
    }

    #[test]
    fn frobenius_mixed_blocks() {
        let m = IntMatrix::block_diagonal(&[
            IntMatrix::from_array([[2, 1], [1, 1]]),
            IntMatrix::from_array([[1]]),
            IntMatrix::from_array([[0, 1], [-1, 3]]),
        ]);
        let inv = polynomial_invariants(&m).unwrap();
        assert_eq!(inv.q, vec![p(&[1, -3, 1]), p(&[-1, 4, -4, 1])]);
        let f = frobenius_form(&m).unwrap();
        let s = &f.transform;
        let back = s.mul(&RatMatrix::from(&f.block_diagonal())).unwrap().mul(&s.inverse().unwrap()).unwrap();
        assert_eq!(back, RatMatrix::from(&m));
    }
}
