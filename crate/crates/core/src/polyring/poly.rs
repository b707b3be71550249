use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients `a₀ + a₁x + … + a_d xᵈ`.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial
/// has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// From coefficients listed lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x − c`
    pub fn linear(c: i64) -> Self {
        Self::from_i64(&[-c, 1])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut v = vec![BigInt::zero(); degree + 1];
        v[degree] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = 0`.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// `p(−x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `xᵈ·p(1/x)` with `d = deg p` (coefficient reversal).
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `p(xᵏ)`
    pub fn compose_power(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return Self::constant(self.coeffs.iter().sum());
        }
        let mut v = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Self::new(v)
    }

    /// Division with remainder in ℤ[x]. Fails unless every quotient
    /// coefficient is integral (always the case for a monic divisor).
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.deg();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let (c, rem) = r[i].div_rem(&lc);
            if !rem.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * dc;
            }
            q[i - dd] = c;
        }
        Ok((Self::new(q), Self::new(r)))
    }

    /// Quotient of an exact division; errors if a remainder is left.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        matches!(other.div_rem(self), Ok((_, r)) if r.is_zero())
    }

    /// Pseudo-remainder `lc(d)^(deg p − deg d + 1)·p mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.deg() < d.deg() || self.is_zero() {
            return Ok(self.clone());
        }
        let lc = d.leading();
        let dd = d.deg();
        let mut r = self.clone();
        let mut steps = self.deg() - dd + 1;
        while !r.is_zero() && r.deg() >= dd {
            let shift = r.deg() - dd;
            let t = Self::monomial(r.leading(), shift);
            r = &r.scale(&lc) - &(&t * d);
            steps -= 1;
        }
        let factor = num_traits::pow(lc, steps);
        Ok(r.scale(&factor))
    }

    /// Primitive gcd normalised to a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("nonzero divisor").primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    pub fn is_square_free(&self) -> bool {
        if self.deg() == 0 {
            return true;
        }
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Square-free part `p / gcd(p, p')` (primitive, positive leading coefficient).
    pub fn square_free_part(&self) -> Self {
        let pp = self.primitive_part();
        if pp.deg() == 0 {
            return pp;
        }
        let g = pp.gcd(&pp.derivative());
        pp.exact_div(&g).expect("gcd divides").primitive_part()
    }

    /// Multiplicity of `d` as a factor of `self` (nonzero, `d` nonconstant).
    pub fn multiplicity_of(&self, d: &Self) -> u32 {
        let mut k = 0;
        let mut p = self.clone();
        if p.is_zero() || d.deg() == 0 {
            return 0;
        }
        while let Ok((q, r)) = p.div_rem(d) {
            if !r.is_zero() {
                break;
            }
            k += 1;
            p = q;
        }
        k
    }

    /// Canonical order: degree, then coefficients from the constant term up.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Monic reciprocal `xᵈ·p(1/x)/p(0)`; `None` unless `p(0) = ±1`.
    pub fn reciprocal(&self) -> Option<Self> {
        let a0 = self.constant_term();
        if !a0.abs().is_one() {
            return None;
        }
        Some(self.reversed().scale(&a0))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for IntPolynomial {
    type Err = Error;

    /// Parses the `Display` format, e.g. `x^3 - 2*x^2 - x + 1`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigInt> = Vec::new();
        let bad = |t: &str| Error::Parse(format!("bad polynomial term '{}'", t));
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (coef, deg) = match body.find('x') {
                None => (body.parse::<BigInt>().map_err(|_| bad(&t))?, 0usize),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { BigInt::one() } else { c.parse::<BigInt>().map_err(|_| bad(&t))? };
                    let rest = &body[pos + 1..];
                    let d = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(|| bad(&t))?.parse::<usize>().map_err(|_| bad(&t))?
                    };
                    (c, d)
                }
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, BigInt::zero());
            }
            coeffs[deg] += coef * sign;
        }
        Ok(Self::new(coeffs))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPolynomial::new(v)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, o: IntPolynomial) -> IntPolynomial {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn gcd_basic() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[6, 12])), p(&[1, 2]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), p(&[1]));
    }

    #[test]
    fn synthetic_division() {
        let (q, r) = p(&[1, -1, -2, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[-2, -1, 1]));
        assert_eq!(r, p(&[-1]));
    }

    #[test]
    fn division_errors() {
        assert_eq!(p(&[1, 1]).div_rem(&IntPolynomial::zero()), Err(Error::DivisionByZero));
        assert_eq!(p(&[1, 0, 1]).div_rem(&p(&[1, 2])), Err(Error::InexactDivision));
    }

    #[test]
    fn product_of_cat4d_factors() {
        let prod = &p(&[1, -3, 1]) * &p(&[1, -1, 1]);
        assert_eq!(prod, p(&[1, -4, 5, -4, 1]));
        assert_eq!(prod.to_string(), "x^4 - 4*x^3 + 5*x^2 - 4*x + 1");
    }

    #[test]
    fn display_and_parse() {
        for s in ["x^3 - 2*x^2 - x + 1", "-x", "7", "x^4 + 1", "-3*x^2 + x"] {
            let q: IntPolynomial = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        assert!("x^".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn square_free() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[1, 1]);
        assert!(!f.is_square_free());
        assert_eq!(f.square_free_part(), p(&[-1, 0, 1]));
        assert_eq!(f.multiplicity_of(&p(&[-1, 1])), 2);
    }

    #[test]
    fn reciprocal_of_golden() {
        assert_eq!(p(&[-1, -1, 1]).reciprocal().unwrap(), p(&[-1, 1, 1]));
        assert_eq!(p(&[2, 1]).reciprocal(), None);
    }
}
