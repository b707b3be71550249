//! Real-root counting, self-reciprocity and cyclotomic detection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{factor_over_z, IntPolynomial};
use crate::error::{Error, Result};

/// `n1` real roots and `n2` pairs of complex-conjugate roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSignature {
    pub n1: usize,
    pub n2: usize,
}

/// `a₀ = ±1` and `a_{n−k} = a₀·a_k` for all `k`.
pub fn is_self_reciprocal(p: &IntPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let a0 = p.constant_term();
    if a0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if !a0.abs().is_one() {
        return Ok(false);
    }
    let n = p.deg();
    Ok((0..=n).all(|k| p.coeff(n - k) == &a0 * p.coeff(k)))
}

fn sign_changes(values: impl Iterator<Item = BigInt>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for v in values.filter(|v| !v.is_zero()) {
        let s = v.is_positive();
        if last.is_some_and(|l| l != s) {
            count += 1;
        }
        last = Some(s);
    }
    count
}

/// Sturm chain where every member is a positive multiple of the classical
/// one, kept primitive to stop coefficient growth.
pub fn sturm_sequence(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let a = &seq[seq.len() - 2];
        let b = &seq[seq.len() - 1];
        if b.deg() == 0 || b.is_zero() {
            break;
        }
        let delta = (a.deg() + 1 - b.deg()) as u32;
        let mut r = a.pseudo_rem(b).expect("nonzero");
        if b.leading().is_negative() && delta % 2 == 1 {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        let c = r.content();
        let r = IntPolynomial::new(r.coeffs().iter().map(|x| -(x / &c)).collect());
        seq.push(r);
    }
    seq
}

/// Number of distinct real roots via Sturm's theorem on `(−∞, +∞)`.
pub fn real_root_count(p: &IntPolynomial) -> Result<RootSignature> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_square_free() {
        return Err(Error::NotSquareFree);
    }
    let seq = sturm_sequence(p);
    let at_pos = sign_changes(seq.iter().map(IntPolynomial::leading));
    let at_neg = sign_changes(seq.iter().map(|s| if s.deg() % 2 == 1 { -s.leading() } else { s.leading() }));
    let n1 = at_neg - at_pos;
    Ok(RootSignature { n1, n2: (p.deg() - n1) / 2 })
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut r = m;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            r -= r / d;
        }
        d += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// The cyclotomic polynomial `Φ_m`, by dividing `xᵐ − 1` by `Φ_d` for proper divisors `d`.
pub fn cyclotomic_polynomial(m: u64) -> IntPolynomial {
    assert!(m >= 1);
    let mut v = vec![BigInt::zero(); m as usize + 1];
    v[0] = -BigInt::one();
    v[m as usize] = BigInt::one();
    let mut p = IntPolynomial::new(v);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        p = p.exact_div(&cyclotomic_polynomial(d)).expect("Φ_d divides xᵐ − 1");
    }
    p
}

/// `Some(m)` when the irreducible monic `f` equals `Φ_m`.
pub fn cyclotomic_index(f: &IntPolynomial) -> Option<u64> {
    let d = f.deg() as u64;
    if d == 0 || !f.is_monic() {
        return None;
    }
    // φ(m) ≥ √(m/2), so m ≤ 2d² bounds the search
    (1..=2 * d * d + 2).filter(|&m| totient(m) == d).find(|&m| cyclotomic_polynomial(m) == *f)
}

/// Whether every irreducible factor of the monic `p` is cyclotomic, and if
/// so the lcm of the orders of those roots of unity.
pub fn cyclotomic_profile(p: &IntPolynomial) -> (bool, Option<u64>) {
    if !p.is_monic() {
        return (false, None);
    }
    let Ok(fact) = factor_over_z(p) else { return (false, None) };
    let mut l = 1u64;
    for (f, _) in &fact.factors {
        match cyclotomic_index(f) {
            Some(m) => l = l.lcm(&m),
            None => return (false, None),
        }
    }
    (true, Some(l))
}
