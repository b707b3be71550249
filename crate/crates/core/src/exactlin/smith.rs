use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, `dᵢ | dᵢ₊₁`, `dᵢ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecompositionZ {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl SmithDecompositionZ {
    /// The diagonal `d₁, …, d_min(m,n)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form over ℤ with transforms.
pub fn smith_z(a: &IntMatrix) -> SmithDecompositionZ {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.to_rows();
    let mut u = IntMatrix::identity(m).to_rows();
    let mut v = IntMatrix::identity(n).to_rows();

    fn row_sub(mat: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
        let src = mat[source].clone();
        for (x, y) in mat[target].iter_mut().zip(&src) {
            *x -= q * y;
        }
    }
    fn col_sub(mat: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
        for row in mat.iter_mut() {
            let s = row[source].clone();
            row[target] -= q * s;
        }
    }
    fn col_swap(mat: &mut [Vec<BigInt>], a: usize, b: usize) {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
    }

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(d, u, v, m, n);
            };
            d.swap(t, bi);
            u.swap(t, bi);
            col_swap(&mut d, t, bj);
            col_swap(&mut v, t, bj);

            let p = d[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&p);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&p);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    row_sub(&mut d, t, i, &BigInt::from(-1));
                    row_sub(&mut u, t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    finish(d, u, v, m, n)
}

fn finish(d: Vec<Vec<BigInt>>, u: Vec<Vec<BigInt>>, v: Vec<Vec<BigInt>>, m: usize, n: usize) -> SmithDecompositionZ {
    let mut d = d;
    let mut u = u;
    for t in 0..m.min(n) {
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    SmithDecompositionZ {
        u: IntMatrix::from_rows(u).expect("square transform"),
        v: IntMatrix::from_rows(v).expect("square transform"),
        d: IntMatrix::from_rows(d).unwrap_or_else(|_| IntMatrix::zeros(m, n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithDecompositionZ {
        let s = smith_z(a);
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[0] >= BigInt::zero());
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        s
    }

    #[test]
    fn already_diagonal() {
        let s = check(&IntMatrix::from_array([[2, 0], [0, 6]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntMatrix::from_array([[2, 4], [6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn cat_map_minus_one() {
        let m = IntMatrix::from_array([[2, 1], [1, 1]]).sub_scalar(&BigInt::from(1));
        let s = check(&m);
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn divisibility_repair() {
        let s = check(&IntMatrix::from_array([[2, 0], [0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check(&IntMatrix::from_array([[0, 0, 0], [0, 4, 0], [0, 0, 6]]));
        check(&IntMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]).unwrap());
    }
}
