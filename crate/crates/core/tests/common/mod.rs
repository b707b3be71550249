//! Matrices from the examples and independent reference computations
//! shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use toralsym::invariants::{companion, CompanionSide};
use toralsym::{IntMatrix, IntPolynomial};

pub fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

pub fn left(c: &[i64]) -> IntMatrix {
    companion(&poly(c), CompanionSide::Left).unwrap()
}

pub fn m1() -> IntMatrix {
    IntMatrix::from_array([[0, 0, 1], [1, 0, 0], [0, 1, 1]])
}

pub fn m2() -> IntMatrix {
    IntMatrix::from_array([[1, 1, 0], [1, 0, 1], [1, 1, 1]])
}

pub fn m2_prime() -> IntMatrix {
    IntMatrix::from_array([[0, 1, 0], [1, -1, 1], [1, 1, 0]])
}

pub fn cat4d() -> IntMatrix {
    IntMatrix::from_array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 2, 1], [0, 1, 1, 2]])
}

pub fn cat() -> IntMatrix {
    IntMatrix::from_array([[2, 1], [1, 1]])
}

pub fn cat8() -> IntMatrix {
    IntMatrix::block_diagonal(&[IntMatrix::from_array([[0, 1], [1, 1]]), left(&[-1, 1, 4, -3, -4, 1, 1])])
}

pub fn salem() -> IntMatrix {
    left(&[1, -2, -2, -2, 1])
}

/// Product of `steps` random elementary matrices `1 ± E_ij`, optionally with a sign flip.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize, steps: usize, allow_det_minus: bool) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return if allow_det_minus && rng.gen_bool(0.5) { m.neg() } else { m };
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        m = m.mul(&e).unwrap();
    }
    if allow_det_minus && rng.gen_bool(0.5) {
        let mut d = IntMatrix::identity(n);
        d[(0, 0)] = -BigInt::one();
        m = m.mul(&d).unwrap();
    }
    m
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    IntMatrix::from_i64(rows, cols, &entries).unwrap()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if a[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &a[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Smith invariants `s_k = d_k / d_{k−1}` from the gcds `d_k` of all k×k minors.
pub fn determinantal_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let rows = a.to_rows();
    let r = a.rows().min(a.cols());
    let mut d_prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=r {
        let mut g = BigInt::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect()).collect();
                g = g.gcd(&cofactor_det(&minor));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), r - k + 1));
            return out;
        }
        out.push(&g / &d_prev);
        d_prev = g;
    }
    out
}

/// Inverse via the adjugate, as exact rationals.
pub fn adjugate_inverse(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = a.n();
    let rows = a.to_rows();
    let det = cofactor_det(&rows);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<BigInt>> = rows
                        .iter()
                        .enumerate()
                        .filter(|(r, _)| *r != j)
                        .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, x)| x.clone()).collect())
                        .collect();
                    let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    BigRational::new(sign * cofactor_det(&minor), det.clone())
                })
                .collect()
        })
        .collect()
}

/// Number of real roots of a square-free integer polynomial by sign changes
/// on a fine rational grid inside the Cauchy bound.
pub fn grid_real_roots(p: &IntPolynomial) -> usize {
    let eval = |x: &BigRational| -> BigRational {
        p.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    };
    let lead = p.leading().abs();
    let bound = p.coeffs().iter().map(|c| c.abs()).max().unwrap() / &lead + BigInt::one() + BigInt::one();
    let steps = 4000i64;
    let b = BigRational::from_integer(bound);
    let mut count = 0;
    let mut prev = eval(&-b.clone());
    for s in 1..=steps {
        let x = -b.clone() + b.clone() * BigRational::new(BigInt::from(2 * s), BigInt::from(steps));
        let v = eval(&x);
        if v.is_zero() || (!prev.is_zero() && prev.is_positive() != v.is_positive()) {
            count += 1;
        }
        prev = v;
    }
    count
}

/// Textbook Smith form by elementary row and column operations on `i128`,
/// returning the nonnegative diagonal.
pub fn naive_smith(a: &IntMatrix) -> Vec<i128> {
    let mut d: Vec<Vec<i128>> =
        a.to_rows().iter().map(|r| r.iter().map(|x| i128::try_from(x).unwrap()).collect()).collect();
    let (m, n) = (a.rows(), a.cols());
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry in the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                out.extend(std::iter::repeat_n(0, m.min(n) - t));
                return out;
            };
            d.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            let p = d[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = d[i][t].div_euclid(p);
                for j in t..n {
                    d[i][j] -= q * d[t][j];
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let q = d[t][j].div_euclid(p);
                for i in t..m {
                    d[i][j] -= q * d[i][t];
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            if let Some(i) = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % p != 0)) {
                for j in t..n {
                    d[t][j] += d[i][j];
                }
                continue;
            }
            out.push(p.abs());
            break;
        }
    }
    out
}

fn apply_mod(m: &[Vec<i64>], x: &[i64], q: i64) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>().rem_euclid(q)).collect()
}

fn small_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).collect()
}

/// Points `j/q` of the torus, `j ∈ [0,q)ⁿ`, fixed by `Mᵏ`, with `q = |det(Mᵏ − 1)|`.
/// Every fixed point has a denominator dividing `q`, so the scan is exhaustive.
pub fn lattice_fixed_points(m: &IntMatrix, k: u64) -> (i64, Vec<Vec<i64>>) {
    let mk = m.pow(k as i64).unwrap();
    let q = i64::try_from(mk.sub(&IntMatrix::identity(m.n())).unwrap().det().abs()).unwrap();
    assert!(q > 0);
    let rows = small_rows(&mk);
    let n = m.n();
    let mut pts = Vec::new();
    let mut j = vec![0i64; n];
    loop {
        if apply_mod(&rows, &j, q) == j {
            pts.push(j.clone());
        }
        let mut i = 0;
        while i < n {
            j[i] += 1;
            if j[i] < q {
                break;
            }
            j[i] = 0;
            i += 1;
        }
        if i == n {
            return (q, pts);
        }
    }
}

/// `(a_k, c_k)` for `k = 1..=depth` by direct enumeration on `Λ_q`.
pub fn lattice_orbit_counts(m: &IntMatrix, depth: u64) -> (Vec<u64>, Vec<u64>) {
    let mut a = Vec::new();
    let mut c = Vec::new();
    for k in 1..=depth {
        let (q, pts) = lattice_fixed_points(m, k);
        a.push(pts.len() as u64);
        let lower: Vec<Vec<Vec<i64>>> = (1..k).filter(|d| k % d == 0).map(|d| small_rows(&m.pow(d as i64).unwrap())).collect();
        let primitive = pts.iter().filter(|p| lower.iter().all(|r| apply_mod(r, p, q) != **p)).count() as u64;
        assert_eq!(primitive % k, 0);
        c.push(primitive / k);
    }
    (a, c)
}

/// All 3×3 integer matrices with entries in `[−b, b]` commuting with `m`.
pub fn commuting_scan_3x3(m: &IntMatrix, b: i64) -> Vec<[i64; 9]> {
    let mr = small_rows(m);
    let mm: [[i64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| mr[i][j]));
    let side = (2 * b + 1) as u64;
    let mut out = Vec::new();
    for code in 0..side.pow(9) {
        let mut c = code;
        let g: [i64; 9] = std::array::from_fn(|_| {
            let v = (c % side) as i64 - b;
            c /= side;
            v
        });
        let ok = (0..3).all(|i| {
            (0..3).all(|j| {
                let gm: i64 = (0..3).map(|t| g[3 * i + t] * mm[t][j]).sum();
                let mg: i64 = (0..3).map(|t| mm[i][t] * g[3 * t + j]).sum();
                gm == mg
            })
        });
        if ok {
            out.push(g);
        }
    }
    out
}
