//! Dense polynomials over a small prime field 𝔽ₚ (p < 2³¹).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntPolynomial;

pub(crate) type Fp = Vec<u64>;

pub(crate) fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn reduce(f: &IntPolynomial, p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().expect("small")).collect())
}

pub(crate) fn deg(a: &Fp) -> usize {
    a.len().saturating_sub(1)
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    pow_scalar(a, p - 2, p)
}

fn pow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x * y) % p;
        }
    }
    trim(r)
}

pub(crate) fn scale(a: &Fp, s: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| x * s % p).collect())
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        Some(&l) => scale(a, inv(l, p), p),
        None => Vec::new(),
    }
}

pub(crate) fn divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let db = deg(b);
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let li = inv(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for i in (db..a.len()).rev() {
        let c = r[i] * li % p;
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for (j, &y) in b.iter().enumerate() {
            let t = &mut r[i - db + j];
            *t = (*t + p - c * y % p) % p;
        }
    }
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    divrem(a, b, p).1
}

/// Monic gcd.
pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Inverse of `a` modulo `m` (requires gcd 1).
pub(crate) fn inv_mod(a: &Fp, m: &Fp, p: u64) -> Fp {
    // extended Euclid tracking only the coefficient of `a`
    let (mut r0, mut r1) = (m.clone(), rem(a, m, p));
    let (mut s0, mut s1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    assert_eq!(deg(&r0), 0, "not invertible mod p");
    rem(&scale(&s0, inv(r0[0], p), p), m, p)
}

pub(crate) fn derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| c * (i as u64 % p) % p).collect())
}

pub(crate) fn powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        r = rem(&mul(&r, &r, p), m, p);
        if e.bit(i) {
            r = rem(&mul(&r, &b, p), m, p);
        }
    }
    rem(&r, m, p)
}

/// Small deterministic generator for Cantor–Zassenhaus splitting attempts.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Factor a monic square-free polynomial over 𝔽ₚ (p odd) into monic
/// irreducibles, sorted by degree then coefficients.
pub(crate) fn factor_squarefree(f: &Fp, p: u64) -> Vec<Fp> {
    assert!(p % 2 == 1);
    let mut out = Vec::new();
    let mut rng = XorShift(0x9E37_79B9_7F4A_7C15 ^ p);
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut res = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let pb = BigUint::from(p);
    let mut h = x.clone();
    let mut d = 1;
    while deg(&f) >= 2 * d {
        h = powmod(&h, &pb, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            res.push((g, d));
        }
        d += 1;
    }
    if deg(&f) > 0 {
        let d = deg(&f);
        res.push((f, d));
    }
    res
}

fn equal_degree(g: &Fp, d: usize, p: u64, rng: &mut XorShift, out: &mut Vec<Fp>) {
    let n = deg(g);
    if n == d {
        out.push(g.clone());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.next() % p).collect());
        if deg(&a) == 0 {
            continue;
        }
        let b = sub(&powmod(&a, &e, g, p), &vec![1], p);
        let h = gcd(&b, g, p);
        let dh = deg(&h);
        if dh > 0 && dh < n {
            let q = divrem(g, &h, p).0;
            equal_degree(&h, d, p, rng, out);
            equal_degree(&monic(&q, p), d, p, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_x4_minus_1_mod_5() {
        // x⁴ − 1 = (x−1)(x−2)(x−3)(x−4) over 𝔽₅
        let f = vec![4, 0, 0, 0, 1];
        let fs = factor_squarefree(&f, 5);
        assert_eq!(fs, vec![vec![1, 1], vec![2, 1], vec![3, 1], vec![4, 1]]);
    }

    #[test]
    fn irreducible_quadratic_mod_3() {
        let f = vec![1, 0, 1];
        assert_eq!(factor_squarefree(&f, 3), vec![f]);
    }

    #[test]
    fn inverse_mod() {
        let m = vec![1, 0, 1];
        let a = vec![1, 1];
        let i = inv_mod(&a, &m, 7);
        assert_eq!(rem(&mul(&a, &i, 7), &m, 7), vec![1]);
    }
}
