use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntPolynomial;
use crate::error::{Error, Result};

/// Polynomial over ℚ, used where the Euclidean algorithm needs a field
/// (Bézout identities, Chinese remaindering).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatPolynomial {
    coeffs: Vec<BigRational>,
}

impl RatPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let lc_inv = d.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = &r[i] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * dc;
            }
            q[i - dd] = c;
        }
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// `(g, s, t)` with `g = s·a + t·b` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.coeffs.last().cloned() {
            Some(l) => {
                let li = l.recip();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
            None => (r0, s0, t0),
        }
    }

    /// `d·self` as an integer polynomial, `d > 0` the least common denominator.
    pub fn clear_denominators(&self) -> (IntPolynomial, BigInt) {
        let d = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self.coeffs.iter().map(|c| (c * BigRational::from_integer(d.clone())).to_integer()).collect();
        (IntPolynomial::new(ints), d)
    }
}

impl From<&IntPolynomial> for RatPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        Self::new(p.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_identity() {
        let a = RatPolynomial::from(&IntPolynomial::from_i64(&[1, -3, 1]));
        let b = RatPolynomial::from(&IntPolynomial::from_i64(&[1, -1, 1]));
        let (g, s, t) = RatPolynomial::ext_gcd(&a, &b);
        assert_eq!(g, RatPolynomial::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), RatPolynomial::one());
    }

    #[test]
    fn clearing() {
        let half = BigRational::new(1.into(), 2.into());
        let p = RatPolynomial::new(vec![half.clone(), BigRational::one()]);
        let (ip, d) = p.clear_denominators();
        assert_eq!(ip, IntPolynomial::from_i64(&[1, 2]));
        assert_eq!(d, BigInt::from(2));
    }
}
