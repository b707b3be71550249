//! The toral automorphism as a dynamical system on `ℝⁿ/ℤⁿ`: affine
//! symmetries, periodic points, orbit counts and the zeta function.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{smith_z, IntMatrix};
use crate::reversibility::{is_pgl_reversor, is_reversor};

/// Largest fixed set [`enumerate_fixed_points`] will list.
pub const FIXED_POINT_LIMIT: u64 = 1_000_000;

/// A rational point of the torus, coordinates reduced into `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<BigRational>,
}

fn frac(x: &BigRational) -> BigRational {
    x - BigRational::from_integer(x.floor().to_integer())
}

impl TorusPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        TorusPoint { coords: coords.iter().map(frac).collect() }
    }

    pub fn origin(n: usize) -> Self {
        TorusPoint { coords: vec![BigRational::zero(); n] }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `M·t mod 1`
    pub fn image(&self, m: &IntMatrix) -> Result<TorusPoint> {
        if m.cols() != self.dim() {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix on a point of dimension {}", m.rows(), m.cols(), self.dim())));
        }
        let coords = (0..m.rows())
            .map(|i| {
                self.coords
                    .iter()
                    .enumerate()
                    .fold(BigRational::zero(), |acc, (j, c)| acc + BigRational::from_integer(m[(i, j)].clone()) * c)
            })
            .collect();
        Ok(TorusPoint::new(coords))
    }

    /// `t ≡ −t (mod 1)`
    pub fn is_two_division(&self) -> bool {
        self.coords.iter().all(|c| frac(&(c * BigRational::from_integer(BigInt::from(2)))).is_zero())
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Comma-separated rationals, e.g. `1/2,0,-1/3`.
impl FromStr for TorusPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                let (num, den) = part.split_once('/').unwrap_or((part, "1"));
                let num: BigInt = num.trim().parse().map_err(|_| Error::Parse(format!("bad coordinate {:?}", part)))?;
                let den: BigInt = den.trim().parse().map_err(|_| Error::Parse(format!("bad coordinate {:?}", part)))?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {:?}", part)));
                }
                Ok(BigRational::new(num, den))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TorusPoint::new(coords))
    }
}

/// `x ↦ G·x + t` is a symmetry (or, with `reversing`, a reversing symmetry)
/// of `x ↦ M·x` iff `G` is one for `M` and `M·t ≡ t (mod 1)`.
pub fn affine_symmetry_check(t: &TorusPoint, g: &IntMatrix, m: &IntMatrix, reversing: bool) -> Result<bool> {
    m.ensure_square()?;
    g.ensure_square()?;
    if g.n() != m.n() || t.dim() != m.n() {
        return Err(Error::DimensionMismatch(format!(
            "M is {}x{}, G is {}x{}, t has {} coordinates",
            m.n(),
            m.n(),
            g.n(),
            g.n(),
            t.dim()
        )));
    }
    let linear = if reversing { is_reversor(m, g) } else { g.is_unimodular() && m.commutes_with(g) };
    Ok(linear && t.image(m)? == *t)
}

/// Projective version: `G·M·G⁻¹ = −M⁻¹`, with the translation restricted
/// to the 2-division points and fixed by `M`.
pub fn projective_affine_check(t: &TorusPoint, g: &IntMatrix, m: &IntMatrix) -> Result<bool> {
    affine_symmetry_check(t, g, m, false)?;
    Ok(is_pgl_reversor(m, g) && t.is_two_division() && t.image(m)? == *t)
}

/// The `2ⁿ` points with coordinates in `{0, 1/2}`, in lexicographic order.
pub fn two_division_points(n: usize) -> Vec<TorusPoint> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (0..1u64 << n)
        .map(|mask| {
            let coords = (0..n)
                .map(|i| if mask >> (n - 1 - i) & 1 == 1 { half.clone() } else { BigRational::zero() })
                .collect();
            TorusPoint { coords }
        })
        .collect()
}

/// `a_k = |det(Mᵏ − 1)|`, the number of points fixed by `Mᵏ`.
pub fn periodic_point_count(m: &IntMatrix, k: u64) -> Result<BigInt> {
    m.ensure_square()?;
    let d = m.pow_u(k).sub_scalar(&BigInt::one()).det();
    if d.is_zero() {
        return Err(Error::DegenerateFixedSet { k });
    }
    Ok(d.abs())
}

pub fn mobius(k: u64) -> i64 {
    let mut n = k;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(k: u64) -> impl Iterator<Item = u64> {
    (1..=k).filter(move |d| k.is_multiple_of(*d))
}

/// `c_k = (1/k)·Σ_{ℓ | k} μ(k/ℓ)·a_ℓ` from `a₁, …, a_K`.
pub fn mobius_inversion(a: &[BigInt]) -> Result<Vec<BigInt>> {
    (1..=a.len() as u64)
        .map(|k| {
            let s: BigInt = divisors(k).map(|l| BigInt::from(mobius(k / l)) * &a[l as usize - 1]).sum();
            let (q, r) = s.div_rem(&BigInt::from(k));
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::Invariant(format!("orbit count c_{} is not an integer", k)))
            }
        })
        .collect()
}

/// Periodic-point and orbit counts up to `K`, optionally with zeta series.
/// Series are indexed by the power of `t`, starting at `t⁰`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitData {
    pub a: Vec<BigInt>,
    pub c: Vec<BigInt>,
    pub zeta_log: Vec<BigRational>,
    pub zeta: Vec<BigRational>,
}

pub fn orbit_counts(m: &IntMatrix, depth: usize) -> Result<OrbitData> {
    let a = (1..=depth as u64).map(|k| periodic_point_count(m, k)).collect::<Result<Vec<_>>>()?;
    let c = mobius_inversion(&a)?;
    Ok(OrbitData { a, c, zeta_log: Vec::new(), zeta: Vec::new() })
}

/// One row of an orbit table; `a` is absent where `Mᵏ` has eigenvalue 1,
/// `c` wherever some `a_ℓ` with `ℓ | k` is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRow {
    pub k: u64,
    pub a: Option<BigInt>,
    pub c: Option<BigInt>,
}

pub fn orbit_table(m: &IntMatrix, depth: usize) -> Result<Vec<OrbitRow>> {
    let mut a = Vec::with_capacity(depth);
    for k in 1..=depth as u64 {
        match periodic_point_count(m, k) {
            Ok(x) => a.push(Some(x)),
            Err(Error::DegenerateFixedSet { .. }) => a.push(None),
            Err(e) => return Err(e),
        }
    }
    let rows = (1..=depth as u64)
        .map(|k| {
            let terms: Option<Vec<BigInt>> =
                divisors(k).map(|l| a[l as usize - 1].as_ref().map(|x| BigInt::from(mobius(k / l)) * x)).collect();
            let c = terms.map(|t| t.into_iter().sum::<BigInt>() / BigInt::from(k));
            OrbitRow { k, a: a[k as usize - 1].clone(), c }
        })
        .collect();
    Ok(rows)
}

pub fn zeta_series(m: &IntMatrix, depth: usize) -> Result<OrbitData> {
    let mut data = orbit_counts(m, depth)?;
    data.zeta_log = log_zeta_from_counts(&data.a);
    data.zeta = series_exp(&data.zeta_log);
    Ok(data)
}

/// `Σ a_k tᵏ / k`
pub fn log_zeta_from_counts(a: &[BigInt]) -> Vec<BigRational> {
    std::iter::once(BigRational::zero())
        .chain(a.iter().enumerate().map(|(i, ak)| BigRational::new(ak.clone(), BigInt::from(i + 1))))
        .collect()
}

/// `exp` of a series with zero constant term, via `m·z_m = Σ k·l_k·z_{m−k}`.
pub fn series_exp(l: &[BigRational]) -> Vec<BigRational> {
    let mut z = vec![BigRational::one()];
    for m in 1..l.len() {
        let s: BigRational = (1..=m).map(|k| BigRational::from_integer(BigInt::from(k)) * &l[k] * &z[m - k]).sum();
        z.push(s / BigRational::from_integer(BigInt::from(m)));
    }
    z
}

/// `log` of a series with constant term 1, inverting [`series_exp`].
pub fn series_log(z: &[BigRational]) -> Vec<BigRational> {
    let mut l = vec![BigRational::zero()];
    for m in 1..z.len() {
        let s: BigRational = (1..m).map(|k| BigRational::from_integer(BigInt::from(k)) * &l[k] * &z[m - k]).sum();
        l.push(&z[m] - s / BigRational::from_integer(BigInt::from(m)));
    }
    l
}

/// `a_k = k·[tᵏ] log ζ`
pub fn counts_from_zeta(zeta: &[BigRational]) -> Vec<BigRational> {
    series_log(zeta)
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
        .collect()
}

/// Exponents `c_k` of `ζ = Π_k (1 − tᵏ)^(−c_k)`, peeled off one degree at a time.
pub fn euler_exponents(zeta: &[BigRational]) -> Result<Vec<BigInt>> {
    let len = zeta.len();
    let mut f = zeta.to_vec();
    let mut out = Vec::new();
    for k in 1..len {
        let ck = &f[k];
        if !ck.is_integer() {
            return Err(Error::Invariant(format!("Euler exponent at degree {} is not an integer", k)));
        }
        let c = ck.to_integer();
        // multiply by (1 − tᵏ)^c = Σ_j binom(c, j)·(−1)ʲ·t^{kj}
        let mut factor = vec![BigRational::zero(); len];
        let mut coeff = BigRational::one();
        for j in 0..len {
            if j * k >= len {
                break;
            }
            factor[j * k] = coeff.clone();
            let jj = BigRational::from_integer(BigInt::from(j));
            coeff = -coeff * (BigRational::from_integer(c.clone()) - &jj) / (jj + BigRational::one());
        }
        let mut next = vec![BigRational::zero(); len];
        for (i, x) in f.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in factor.iter().enumerate().take(len - i) {
                next[i + j] += x * y;
            }
        }
        f = next;
        out.push(c);
    }
    Ok(out)
}

/// The points with `Mᵏ·t ≡ t (mod 1)`, from `U·(Mᵏ − 1)·V = D`:
/// `t = V·(j₁/d₁, …, jₙ/dₙ)` with `0 ≤ jᵢ < dᵢ`, canonically sorted.
pub fn enumerate_fixed_points(m: &IntMatrix, k: u64) -> Result<Vec<TorusPoint>> {
    let count = periodic_point_count(m, k)?;
    if count > BigInt::from(FIXED_POINT_LIMIT) {
        return Err(Error::LimitExceeded { what: format!("a_{} = {}", k, count), limit: FIXED_POINT_LIMIT });
    }
    let n = m.n();
    let a = m.pow_u(k).sub_scalar(&BigInt::one());
    let snf = smith_z(&a);
    let diag: Vec<u64> = snf.diagonal().iter().map(|d| d.abs().to_u64().expect("bounded by the count")).collect();
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut j = vec![0u64; n];
    loop {
        let y: Vec<BigRational> = j.iter().zip(&diag).map(|(&ji, &d)| BigRational::new(BigInt::from(ji), BigInt::from(d))).collect();
        let coords = (0..n)
            .map(|r| (0..n).fold(BigRational::zero(), |acc, c| acc + BigRational::from_integer(snf.v[(r, c)].clone()) * &y[c]))
            .collect();
        out.push(TorusPoint::new(coords));
        let mut i = n;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            j[i] += 1;
            if j[i] < diag[i] {
                break;
            }
            j[i] = 0;
        }
    }
}
