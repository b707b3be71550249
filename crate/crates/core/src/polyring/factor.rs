//! Factorisation in ℤ[x]: square-free reduction, factorisation modulo a
//! small prime, multifactor Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{self, Fp};
use super::IntPolynomial;
use crate::error::{Error, Result};

/// `content · Π factorᵢ^multiplicityᵢ`, factors irreducible, primitive,
/// with positive leading coefficient, pairwise distinct and sorted by
/// degree then by coefficients from the constant term upwards.
///
/// For a monic input every factor is monic and `content = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(IntPolynomial::constant(self.content.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.content.is_one() || self.factors.is_empty() {
            parts.push(self.content.to_string());
        }
        for (p, m) in &self.factors {
            let base = if self.factors.len() == 1 && *m == 1 && parts.is_empty() {
                p.to_string()
            } else {
                format!("({})", p)
            };
            if *m == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{}^{}", base, m));
            }
        }
        write!(f, "{}", parts.join(" * "))
    }
}

/// Complete factorisation of a nonzero integer polynomial.
pub fn factor_over_z(p: &IntPolynomial) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut content = p.content();
    if p.leading().is_negative() {
        content = -content;
    }
    let f = p.primitive_part();
    let mut factors: Vec<(IntPolynomial, u32)> = factor_square_free(&f.square_free_part())
        .into_iter()
        .map(|q| {
            let m = f.multiplicity_of(&q);
            (q, m)
        })
        .collect();
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    Ok(Factorization { content, factors })
}

/// Irreducible factors of a primitive square-free polynomial with positive
/// leading coefficient.
fn factor_square_free(g: &IntPolynomial) -> Vec<IntPolynomial> {
    if g.deg() == 0 {
        return Vec::new();
    }
    if g.deg() == 1 {
        return vec![g.clone()];
    }
    if g.constant_term().is_zero() {
        let rest = g.exact_div(&IntPolynomial::x()).expect("x divides");
        let mut v = vec![IntPolynomial::x()];
        v.extend(factor_square_free(&rest));
        return v;
    }
    let (p, modular) = choose_prime(g);
    if modular.len() == 1 {
        return vec![g.clone()];
    }
    let (lifted, modulus) = hensel_lift(g, &modular, p);
    recombine(g, lifted, &modulus)
}

fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Among the first few admissible primes, the one giving the fewest
/// modular factors (ties go to the smaller prime).
fn choose_prime(g: &IntPolynomial) -> (u64, Vec<Fp>) {
    let lc = g.leading();
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in odd_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let gp = modp::reduce(g, p);
        if modp::deg(&gp) != g.deg() || modp::deg(&modp::gcd(&gp, &modp::derivative(&gp, p), p)) > 0 {
            continue;
        }
        let fs = modp::factor_squarefree(&modp::monic(&gp, p), p);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried == 6 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("some prime is admissible")
}

fn to_int(a: &Fp) -> IntPolynomial {
    IntPolynomial::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

fn mod_poly(f: &IntPolynomial, q: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(q)).collect())
}

/// Lift `g ≡ lc·Π fᵢ (mod p)` to a congruence modulo `pᵏ` exceeding twice
/// the leading coefficient times the Mignotte bound.
fn hensel_lift(g: &IntPolynomial, modular: &[Fp], p: u64) -> (Vec<IntPolynomial>, BigInt) {
    let lc = g.leading();
    let norm2: BigInt = g.coeffs().iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * (BigInt::one() << g.deg()) * lc.abs() * 2u32;

    let pb = BigInt::from(p);
    let lc_inv = modp::inv(lc.mod_floor(&pb).to_u64().expect("small"), p);
    // sᵢ·Πⱼ≠ᵢ fⱼ ≡ 1 (mod fᵢ)
    let s: Vec<Fp> = (0..modular.len())
        .map(|i| {
            let others = modular
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(vec![1u64], |acc, (_, f)| modp::mul(&acc, f, p));
            modp::scale(&modp::inv_mod(&others, &modular[i], p), lc_inv, p)
        })
        .collect();

    let mut fs: Vec<IntPolynomial> = modular.iter().map(to_int).collect();
    let mut q = pb.clone();
    while q <= bound {
        let prod = fs.iter().fold(IntPolynomial::constant(lc.clone()), |acc, f| &acc * f);
        let diff = g - &prod;
        let e = IntPolynomial::new(diff.coeffs().iter().map(|c| c / &q).collect());
        let ep = modp::reduce(&e, p);
        for (i, f) in fs.iter_mut().enumerate() {
            let fi = &modular[i];
            let alpha = modp::rem(&modp::mul(&ep, &s[i], p), fi, p);
            *f = &*f + &to_int(&alpha).scale(&q);
        }
        q *= &pb;
    }
    let fs = fs.iter().map(|f| mod_poly(f, &q)).collect();
    (fs, q)
}

fn symmetric(f: &IntPolynomial, q: &BigInt) -> IntPolynomial {
    let half = q / 2u32;
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(q);
                if r > half {
                    r - q
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn recombine(g: &IntPolynomial, mut lifted: Vec<IntPolynomial>, q: &BigInt) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut g = g.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let cand = combo
                .iter()
                .fold(IntPolynomial::constant(g.leading()), |acc, &i| mod_poly(&(&acc * &lifted[i]), q));
            let h = symmetric(&cand, q).primitive_part();
            if let Ok((quot, r)) = g.div_rem(&h) {
                if r.is_zero() {
                    out.push(h);
                    g = quot;
                    for &i in combo.iter().rev() {
                        lifted.remove(i);
                    }
                    found = true;
                    break;
                }
            }
            if !next_combination(&mut combo, lifted.len()) {
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if g.deg() > 0 {
        out.push(g.primitive_part());
    }
    out
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
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
