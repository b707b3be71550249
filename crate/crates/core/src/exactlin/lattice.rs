//! Integer lattices: Hermite normal form, kernels, and LLL reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

fn axpy_row(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (a, b) = rows.split_at_mut(source);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(target);
        (&mut b[0], &a[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Row echelon form over the integers restricted to the first `width`
/// columns, using only unimodular row operations. Pivots end up positive.
/// Returns the pivot columns in order.
fn echelon(rows: &mut [Vec<BigInt>], width: usize, reduce_above: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..width {
        if pr == rows.len() {
            break;
        }
        loop {
            let best = (pr..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()).then(a.cmp(&b)));
            let Some(best) = best else { break };
            rows.swap(pr, best);
            if rows[pr][col].is_negative() {
                for v in rows[pr].iter_mut() {
                    *v = -&*v;
                }
            }
            let p = rows[pr][col].clone();
            let mut clean = true;
            for i in pr + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&p);
                if !q.is_zero() {
                    axpy_row(rows, i, pr, &q);
                }
                if !rows[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if pr < rows.len() && !rows[pr][col].is_zero() {
            if reduce_above {
                let p = rows[pr][col].clone();
                for i in 0..pr {
                    let q = rows[i][col].div_floor(&p);
                    if !q.is_zero() {
                        axpy_row(rows, i, pr, &q);
                    }
                }
            }
            pivots.push(col);
            pr += 1;
        }
    }
    pivots
}

/// Hermite normal form of the row lattice: nonzero rows in echelon form,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut rows = rows;
    let width = rows.first().map_or(0, Vec::len);
    let pivots = echelon(&mut rows, width, true);
    rows.truncate(pivots.len());
    rows
}

/// Basis of `{v ∈ ℤᵏ : L·v = 0}` for an `m×k` matrix `L`, in Hermite form.
pub fn integer_kernel(l: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (m, k) = (l.rows(), l.cols());
    let mut rows: Vec<Vec<BigInt>> = (0..k)
        .map(|j| {
            let mut r = Vec::with_capacity(m + k);
            r.extend((0..m).map(|i| l[(i, j)].clone()));
            r.extend((0..k).map(|t| if t == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let rank = echelon(&mut rows, m, false).len();
    let kernel: Vec<Vec<BigInt>> = rows.into_iter().skip(rank).map(|r| r[m..].to_vec()).collect();
    hermite_rows(kernel)
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn round_rational(x: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

struct GramSchmidt {
    mu: Vec<Vec<BigRational>>,
    norms: Vec<BigRational>,
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> GramSchmidt {
    let n = b.len();
    let rb: Vec<Vec<BigRational>> = b
        .iter()
        .map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = rb[i].clone();
        for j in 0..i {
            let m = dot(&rb[i], &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &m * y;
            }
            mu[i][j] = m;
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    GramSchmidt { mu, norms }
}

/// LLL reduction (δ = 3/4) of a list of linearly independent integer vectors.
/// The output spans the same lattice and is deterministic for a given input.
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut b = basis.to_vec();
    let n = b.len();
    if n < 2 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut gs = gram_schmidt(&b);
    let mut k = 1;
    let size_reduce = |b: &mut Vec<Vec<BigInt>>, gs: &mut GramSchmidt, k: usize, j: usize| {
        let q = round_rational(&gs.mu[k][j]);
        if q.is_zero() {
            return;
        }
        let src = b[j].clone();
        for (x, y) in b[k].iter_mut().zip(&src) {
            *x -= &q * y;
        }
        let qr = BigRational::from_integer(q);
        for t in 0..j {
            let d = &qr * &gs.mu[j][t];
            gs.mu[k][t] -= d;
        }
        gs.mu[k][j] -= qr;
    };
    while k < n {
        size_reduce(&mut b, &mut gs, k, k - 1);
        let m = gs.mu[k][k - 1].clone();
        let lovasz = (&delta - &m * &m) * &gs.norms[k - 1];
        if gs.norms[k] < lovasz {
            b.swap(k, k - 1);
            gs = gram_schmidt(&b);
            k = (k - 1).max(1);
        } else {
            for j in (0..k - 1).rev() {
                size_reduce(&mut b, &mut gs, k, j);
            }
            k += 1;
        }
    }
    b
}
