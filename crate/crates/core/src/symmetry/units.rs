//! Exact unit computations in `ℚ[M] ≅ ⊕ ℚ[x]/Pᵢ` for simple `M`: roots of
//! unity per component, Chinese remaindering back to matrices, and k-th roots.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, RatMatrix};
use crate::polyring::{cyclotomic_index, factor_over_z, real_root_count, IntPolynomial, RatPolynomial};

/// Largest number of component tuples tried by the exact enumerations.
const TUPLE_LIMIT: u64 = 200_000;

fn eval_at(m: &RatMatrix, p: &RatPolynomial) -> RatMatrix {
    let n = m.rows();
    let mut acc = RatMatrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).expect("square");
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}

/// `ℚ[M]` split along the irreducible factors of a square-free charpoly.
pub(crate) struct SplitAlgebra {
    m: RatMatrix,
    pub factors: Vec<IntPolynomial>,
    idempotents: Vec<RatPolynomial>,
    modulus: RatPolynomial,
}

impl SplitAlgebra {
    /// `None` unless the characteristic polynomial is square-free.
    pub fn new(m: &IntMatrix) -> Result<Option<Self>> {
        m.ensure_square()?;
        let p = m.charpoly();
        let fact = factor_over_z(&p)?;
        if !fact.is_square_free() {
            return Ok(None);
        }
        let factors: Vec<IntPolynomial> = fact.factors.into_iter().map(|(f, _)| f).collect();
        let modulus = RatPolynomial::from(&p);
        let idempotents = factors
            .iter()
            .map(|f| {
                let fi = RatPolynomial::from(f);
                let q = modulus.div_rem(&fi).expect("nonzero").0;
                let (_, s, _) = RatPolynomial::ext_gcd(&q, &fi);
                s.mul(&q).rem(&modulus).expect("nonzero")
            })
            .collect();
        Ok(Some(Self { m: RatMatrix::from(m), factors, idempotents, modulus }))
    }

    /// `(eᵢ·g mod P)(M)`: the matrix acting as `g(α)` on component `i` and as 0 elsewhere.
    pub fn component_matrix(&self, i: usize, g: &RatPolynomial) -> RatMatrix {
        let poly = self.idempotents[i].mul(g).rem(&self.modulus).expect("nonzero");
        eval_at(&self.m, &poly)
    }
}

fn reduce(g: &RatPolynomial, f: &IntPolynomial) -> RatPolynomial {
    g.rem(&RatPolynomial::from(f)).expect("nonzero")
}

fn power_mod(g: &RatPolynomial, k: u64, f: &IntPolynomial) -> RatPolynomial {
    let mut r = RatPolynomial::one();
    for _ in 0..k {
        r = reduce(&r.mul(g), f);
    }
    r
}

/// Roots of unity in `ℚ[x]/P` for irreducible `P`, when they are known exactly:
/// `{±1}` when `P` has a real root, `⟨±x⟩` when `P = Φ_m`.
fn local_roots_of_unity(p: &IntPolynomial) -> Result<Option<(RatPolynomial, u64)>> {
    let minus_one = RatPolynomial::new(vec![-BigRational::one()]);
    if real_root_count(p)?.n1 > 0 {
        return Ok(Some((minus_one, 2)));
    }
    Ok(cyclotomic_index(p).map(|m| {
        let x = RatPolynomial::new(vec![BigRational::zero(), BigRational::one()]);
        let gen = if m % 2 == 0 { x } else { x.scale(&-BigRational::one()) };
        (gen, m.lcm(&2))
    }))
}

/// All finite-order elements of the integral commutant with their orders,
/// when every component's roots of unity are known exactly.
pub(crate) fn exact_torsion(m: &IntMatrix) -> Result<Option<Vec<(IntMatrix, u64)>>> {
    let Some(alg) = SplitAlgebra::new(m)? else { return Ok(None) };
    let mut tables: Vec<Vec<RatMatrix>> = Vec::new();
    let mut orders = Vec::new();
    let mut total: u64 = 1;
    for (i, f) in alg.factors.iter().enumerate() {
        let Some((gen, w)) = local_roots_of_unity(f)? else { return Ok(None) };
        total = total.saturating_mul(w);
        if total > TUPLE_LIMIT {
            return Ok(None);
        }
        tables.push((0..w).map(|k| alg.component_matrix(i, &power_mod(&gen, k, f))).collect());
        orders.push(w);
    }
    let mut found = Vec::new();
    for_each_tuple(&orders, |ks| {
        let mut acc = tables[0][ks[0] as usize].clone();
        for (i, &k) in ks.iter().enumerate().skip(1) {
            acc = add(&acc, &tables[i][k as usize]);
        }
        if let Some(g) = acc.to_int() {
            let ord = ks.iter().zip(&orders).fold(1u64, |l, (&k, &w)| l.lcm(&(w / k.gcd(&w))));
            found.push((g, ord));
        }
    });
    found.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Some(found))
}

fn add(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] += &b[(i, j)];
        }
    }
    out
}

fn for_each_tuple(radices: &[u64], mut f: impl FnMut(&[u64])) {
    let mut t = vec![0u64; radices.len()];
    loop {
        f(&t);
        let mut i = radices.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < radices[i] {
                break;
            }
            t[i] = 0;
        }
    }
}

/// `g` of degree `< deg h` with `g(yᵏ) ≡ y (mod h)`, so `β = g(βᵏ)` for a root `β` of `h`.
fn root_expression(h: &IntPolynomial, k: usize) -> Result<RatPolynomial> {
    let d = h.deg();
    let hr = RatPolynomial::from(h);
    let mut cols = Vec::with_capacity(d);
    for j in 0..d {
        let mut mono = vec![BigRational::zero(); j * k + 1];
        mono[j * k] = BigRational::one();
        let r = RatPolynomial::new(mono).rem(&hr)?;
        let mut c: Vec<BigRational> = r.coeffs().to_vec();
        c.resize(d, BigRational::zero());
        cols.push(c);
    }
    let a = RatMatrix::from_columns(d, &cols);
    let mut target = vec![BigRational::zero(); d];
    if d == 1 {
        // y ≡ −h₀ (mod y + h₀)
        target[0] = -BigRational::from_integer(h.coeff(0));
    } else {
        target[1] = BigRational::one();
    }
    let g = a.inverse().map_err(|_| Error::Invariant("power basis is degenerate".into()))?.mul_vec(&target);
    Ok(RatPolynomial::new(g))
}

/// Every integral `G ∈ ℚ[N]` with `Gᵏ = N`, or `None` when `N` is not simple
/// (or the enumeration would be too large) and the question is left open.
pub(crate) fn kth_roots(n_mat: &IntMatrix, k: u32) -> Result<Option<Vec<IntMatrix>>> {
    let Some(alg) = SplitAlgebra::new(n_mat)? else { return Ok(None) };
    let mut candidates: Vec<Vec<RatMatrix>> = Vec::new();
    let mut total: u64 = 1;
    for (i, f) in alg.factors.iter().enumerate() {
        let lifted = factor_over_z(&f.compose_power(k as usize))?;
        let mut local = Vec::new();
        for (h, _) in lifted.factors.iter().filter(|(h, _)| h.deg() == f.deg()) {
            let g = root_expression(h, k as usize)?;
            local.push(alg.component_matrix(i, &reduce(&g, f)));
        }
        if local.is_empty() {
            return Ok(Some(Vec::new()));
        }
        total = total.saturating_mul(local.len() as u64);
        if total > TUPLE_LIMIT {
            return Ok(None);
        }
        candidates.push(local);
    }
    let radices: Vec<u64> = candidates.iter().map(|c| c.len() as u64).collect();
    let mut roots = Vec::new();
    for_each_tuple(&radices, |ks| {
        let mut acc = candidates[0][ks[0] as usize].clone();
        for (i, &j) in ks.iter().enumerate().skip(1) {
            acc = add(&acc, &candidates[i][j as usize]);
        }
        if let Some(g) = acc.to_int() {
            roots.push(g);
        }
    });
    for g in &roots {
        if g.pow_u(u64::from(k)) != *n_mat {
            return Err(Error::Invariant("constructed root does not reproduce its power".into()));
        }
    }
    roots.sort_by(|a, b| a.canonical_cmp(b));
    Ok(Some(roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_scalar_minus_one(g: &IntMatrix) -> bool {
        *g == IntMatrix::scalar(g.rows(), &-num_bigint::BigInt::one())
    }

    fn cat4d() -> IntMatrix {
        IntMatrix::from_array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 2, 1], [0, 1, 1, 2]])
    }

    #[test]
    fn cat4d_torsion_is_klein_four() {
        let t = exact_torsion(&cat4d()).unwrap().unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.iter().all(|(_, o)| *o <= 2));
        assert!(t.iter().any(|(g, _)| is_scalar_minus_one(g)));
    }

    #[test]
    fn cat4d_has_no_square_root() {
        assert_eq!(kth_roots(&cat4d(), 2).unwrap(), Some(vec![]));
    }

    #[test]
    fn square_roots_of_a_square() {
        let a = IntMatrix::from_array([[2, 1], [1, 1]]);
        let roots = kth_roots(&a.pow_u(2), 2).unwrap().unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&a) && roots.contains(&a.neg()));
    }

    #[test]
    fn non_simple_is_open() {
        assert_eq!(exact_torsion(&IntMatrix::identity(2)).unwrap(), None);
    }
}
