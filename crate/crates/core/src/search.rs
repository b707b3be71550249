//! Bounded enumeration of integer combinations of a module basis, in
//! graded-lexicographic order: shells of increasing height `max |cᵢ|`,
//! each shell in lexicographic order from `(−h, …, −h)`.

use std::ops::ControlFlow;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlin::{lll_reduce, IntMatrix};

/// Outcome of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SearchStats {
    pub visited: u64,
    pub truncated: bool,
}

pub(crate) fn to_i128(m: &IntMatrix) -> Result<Vec<i128>> {
    m.entries()
        .iter()
        .map(|v| i128::try_from(v).map_err(|_| Error::Invariant("search basis entry exceeds i128".into())))
        .collect()
}

/// LLL-reduced search basis of a module of `n×n` matrices, in machine integers.
pub(crate) fn reduced_basis(basis: &[IntMatrix]) -> Result<Vec<Vec<i128>>> {
    let n = basis.first().map_or(0, IntMatrix::n);
    let vecs: Vec<_> = basis.iter().map(IntMatrix::vectorize).collect();
    lll_reduce(&vecs).iter().map(|v| to_i128(&IntMatrix::from_vector(n, v))).collect()
}

pub(crate) fn from_i128(n: usize, v: &[i128]) -> IntMatrix {
    IntMatrix::from_vector(n, &v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

/// Calls `visit(coeffs, entries)` for every nonzero coefficient vector with
/// `1 ≤ max |cᵢ| ≤ radius`, stopping early on `Break` or once `budget`
/// vectors have been visited.
pub(crate) fn enumerate_box<F>(basis: &[Vec<i128>], radius: u32, budget: u64, mut visit: F) -> Result<SearchStats>
where
    F: FnMut(&[i64], &[i128]) -> ControlFlow<()>,
{
    let m = basis.len();
    let mut stats = SearchStats { visited: 0, truncated: false };
    if m == 0 {
        return Ok(stats);
    }
    let len = basis[0].len();
    let bound = i64::from(radius);
    for h in 1..=bound {
        let mut c = vec![-h; m];
        let mut acc = vec![0i128; len];
        for (ci, b) in c.iter().zip(basis) {
            add_scaled(&mut acc, b, *ci)?;
        }
        loop {
            if c.iter().any(|x| x.abs() == h) {
                if stats.visited == budget {
                    stats.truncated = true;
                    return Ok(stats);
                }
                stats.visited += 1;
                if visit(&c, &acc).is_break() {
                    return Ok(stats);
                }
            }
            // odometer step, last coordinate fastest
            let mut i = m;
            let advanced = loop {
                if i == 0 {
                    break false;
                }
                i -= 1;
                if c[i] < h {
                    c[i] += 1;
                    add_scaled(&mut acc, &basis[i], 1)?;
                    break true;
                }
                add_scaled(&mut acc, &basis[i], -2 * h)?;
                c[i] = -h;
            };
            if !advanced {
                break;
            }
        }
    }
    Ok(stats)
}

fn add_scaled(acc: &mut [i128], b: &[i128], s: i64) -> Result<()> {
    let s = i128::from(s);
    for (a, x) in acc.iter_mut().zip(b) {
        *a = x
            .checked_mul(s)
            .and_then(|t| a.checked_add(t))
            .ok_or_else(|| Error::Invariant("search arithmetic overflow".into()))?;
    }
    Ok(())
}

/// Exact determinant of a small matrix given row-major, fraction-free, in
/// `i128`; `None` on overflow.
pub(crate) fn det_i128(n: usize, a: &[i128]) -> Option<i128> {
    let mut m = a.to_vec();
    let mut prev: i128 = 1;
    let mut sign = 1;
    for k in 0..n {
        if m[k * n + k] == 0 {
            let p = (k + 1..n).find(|&i| m[i * n + k] != 0)?;
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k * n + k].checked_mul(m[i * n + j])?.checked_sub(m[i * n + k].checked_mul(m[k * n + j])?)?;
                m[i * n + j] = v / prev;
            }
        }
        prev = m[k * n + k];
    }
    Some(sign * m[(n - 1) * n + (n - 1)])
}

pub(crate) fn mul_i128(n: usize, a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let mut out = vec![0i128; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                let t = x.checked_mul(b[k * n + j])?;
                out[i * n + j] = out[i * n + j].checked_add(t)?;
            }
        }
    }
    Some(out)
}

/// Determinant via `i128` when possible, exact big-integer fallback otherwise.
pub(crate) fn det_exact(n: usize, a: &[i128]) -> BigInt {
    match det_i128(n, a) {
        Some(d) => BigInt::from(d),
        None => from_i128(n, a).det(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_shells_in_order() {
        let basis = vec![vec![1i128], vec![10]];
        let mut seen = Vec::new();
        let stats = enumerate_box(&basis, 1, u64::MAX, |c, v| {
            seen.push((c.to_vec(), v[0]));
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(stats.visited, 8);
        assert_eq!(seen[0], (vec![-1, -1], -11));
        assert_eq!(seen[7], (vec![1, 1], 11));
        assert!(!seen.iter().any(|(c, _)| c == &vec![0, 0]));
    }

    #[test]
    fn budget_truncates() {
        let basis = vec![vec![1i128], vec![1]];
        let stats = enumerate_box(&basis, 3, 5, |_, _| ControlFlow::Continue(())).unwrap();
        assert!(stats.truncated);
        assert_eq!(stats.visited, 5);
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_i128(2, &[0, 1, 1, 0]), Some(-1));
        assert_eq!(det_i128(3, &[2, 0, 0, 0, 3, 0, 0, 0, 4]), Some(24));
        assert_eq!(det_i128(2, &[1, 2, 2, 4]), None);
        assert_eq!(det_exact(2, &[1, 2, 2, 4]), BigInt::from(0));
    }
}
