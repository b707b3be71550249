//! Symmetries of a toral automorphism: the commutant as a ℤ-module, the
//! structure of the centraliser in `GL(n, ℤ)`, element orders, and checks
//! for candidate symmetries.

mod torsion;
pub(crate) mod units;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

pub use torsion::{
    abelian_invariants, admissible_orders, torsion_search, torsion_search_with_budget, TorsionSearch,
    DEFAULT_SEARCH_BUDGET,
};

use crate::error::{Error, Result};
use crate::exactlin::{integer_kernel, IntMatrix};
use crate::polyring::{cyclotomic_profile, factor_over_z, real_root_count};

/// Default coefficient radius of the torsion search.
pub const DEFAULT_TORSION_RADIUS: u32 = 3;

/// ℤ-basis of `{G : L(G) = 0}` for a linear map `L` on `n×n` integer matrices.
pub(crate) fn linear_module(n: usize, f: impl Fn(&IntMatrix) -> IntMatrix) -> Vec<IntMatrix> {
    let dim = n * n;
    let mut l = IntMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut e = IntMatrix::zeros(n, n);
        e[(col / n, col % n)] = BigInt::from(1);
        for (row, v) in f(&e).entries().iter().enumerate() {
            l[(row, col)] = v.clone();
        }
    }
    integer_kernel(&l).iter().map(|v| IntMatrix::from_vector(n, v)).collect()
}

/// The integer matrices commuting with `M`, as a ℤ-module with a
/// Hermite-reduced basis (vectorised row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutantModule {
    pub basis: Vec<IntMatrix>,
}

impl CommutantModule {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn element(&self, coeffs: &[BigInt]) -> IntMatrix {
        let n = self.basis.first().map_or(0, IntMatrix::n);
        let mut acc = IntMatrix::zeros(n, n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c)).expect("same shape");
            }
        }
        acc
    }

    /// Integer coordinates of `g` in the basis, if `g` lies in the module.
    pub fn coordinates(&self, g: &IntMatrix) -> Option<Vec<BigInt>> {
        let mut residual = g.vectorize();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let bv = b.entries();
            let pivot = bv.iter().position(|x| !x.is_zero())?;
            let (q, r) = residual[pivot].div_rem(&bv[pivot]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in residual.iter_mut().zip(bv) {
                *x -= &q * y;
            }
            coeffs.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, g: &IntMatrix) -> bool {
        self.coordinates(g).is_some()
    }

    /// Products of basis elements stay in the module.
    pub fn is_ring(&self) -> bool {
        self.basis.iter().all(|a| self.basis.iter().all(|b| self.contains(&a.mul_unchecked(b))))
    }
}

pub fn commutant_basis(m: &IntMatrix) -> Result<CommutantModule> {
    m.ensure_square()?;
    let basis = linear_module(m.n(), |g| m.mul_unchecked(g).sub(&g.mul_unchecked(m)).expect("same shape"));
    Ok(CommutantModule { basis })
}

/// Finitely generated Abelian group `C_{d₁} × … × C_{d_k} × ℤʳ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    pub torsion: Vec<u64>,
    pub rank: usize,
    pub torsion_complete: bool,
}

impl GroupStructure {
    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("C{}", d)).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{}", r)),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralizerStructure {
    Determined(GroupStructure),
    /// `M` is not simple: only the commutant rank is known.
    Undetermined { commutant_rank: usize },
}

pub fn centralizer_structure(m: &IntMatrix) -> Result<CentralizerStructure> {
    centralizer_structure_with_radius(m, DEFAULT_TORSION_RADIUS)
}

/// Torsion × free rank of the centraliser of a simple unimodular `M`, the
/// rank being `Σ (n₁ + n₂ − 1)` over the irreducible factors of the charpoly.
pub fn centralizer_structure_with_radius(m: &IntMatrix, radius: u32) -> Result<CentralizerStructure> {
    m.ensure_unimodular()?;
    let fact = factor_over_z(&m.charpoly())?;
    if !fact.is_square_free() {
        return Ok(CentralizerStructure::Undetermined { commutant_rank: commutant_basis(m)?.rank() });
    }
    let mut rank = 0;
    for (f, _) in &fact.factors {
        let sig = real_root_count(f)?;
        rank += sig.n1 + sig.n2 - 1;
    }
    let t = torsion_search(m, radius)?;
    Ok(CentralizerStructure::Determined(GroupStructure {
        torsion: t.invariants,
        rank,
        torsion_complete: t.complete,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for MatrixOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixOrder::Finite(k) => write!(f, "{}", k),
            MatrixOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Order of a unimodular matrix: finite exactly when the charpoly is a
/// product of cyclotomics and `G^L = 1` for `L` the lcm of their orders.
pub fn matrix_order(g: &IntMatrix) -> Result<MatrixOrder> {
    g.ensure_unimodular()?;
    let (cyclo, lcm) = cyclotomic_profile(&g.charpoly());
    let Some(l) = lcm.filter(|_| cyclo) else { return Ok(MatrixOrder::Infinite) };
    if !g.pow_u(l).is_identity() {
        return Ok(MatrixOrder::Infinite);
    }
    let k = (1..=l).filter(|d| l % d == 0).find(|&d| g.pow_u(d).is_identity()).expect("l works");
    Ok(MatrixOrder::Finite(k))
}

/// Every `G` in the commutant with `Gᵏ = M`, or `None` when `M` is not
/// simple and the question is left open.
pub fn roots_in_commutant(m: &IntMatrix, k: u32) -> Result<Option<Vec<IntMatrix>>> {
    m.ensure_square()?;
    units::kth_roots(m, k)
}

pub fn verify_symmetry(m: &IntMatrix, g: &IntMatrix) -> bool {
    m.commutes_with(g)
}

/// Least `k ≤ k_max` with `G·Mᵏ = Mᵏ·G`.
pub fn ksym_index(m: &IntMatrix, g: &IntMatrix, k_max: u64) -> Option<u64> {
    if !m.is_square() || m.rows() != g.rows() || !g.is_square() {
        return None;
    }
    let mut p = m.clone();
    for k in 1..=k_max {
        if p.commutes_with(g) {
            return Some(k);
        }
        p = p.mul_unchecked(m);
    }
    None
}

/// Exponent bound of the relation search among infinite-order generators.
pub const RELATION_EXPONENT_BOUND: i64 = 6;

/// Outcome of checking a claimed generating set of the centraliser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub orders: Vec<MatrixOrder>,
    pub mutually_commuting: bool,
    /// No relation `Π hᵢ^eᵢ ∈ torsion` with `0 < max |eᵢ| ≤ 6` among the infinite-order generators.
    pub independent: bool,
    /// The group the generators span, as far as the checks can tell.
    pub structure: GroupStructure,
    /// Commuting, independent, and (if a claim was given) matching it.
    pub consistent: bool,
}

pub fn verify_generator_set(
    m: &IntMatrix,
    generators: &[IntMatrix],
    claimed: Option<&GroupStructure>,
) -> Result<GeneratorCheck> {
    m.ensure_square()?;
    let n = m.n();
    let mut orders = Vec::with_capacity(generators.len());
    for (index, g) in generators.iter().enumerate() {
        if g.rows() != n || !g.is_square() {
            return Err(Error::BadGenerator { index, reason: "has the wrong dimension".into() });
        }
        if !g.is_unimodular() {
            return Err(Error::BadGenerator { index, reason: format!("is not unimodular (det = {})", g.det()) });
        }
        if !m.commutes_with(g) {
            return Err(Error::BadGenerator { index, reason: "does not commute with M".into() });
        }
        orders.push(matrix_order(g)?);
    }
    let mutually_commuting = generators.iter().all(|a| generators.iter().all(|b| a.commutes_with(b)));
    let finite: Vec<IntMatrix> = generators
        .iter()
        .zip(&orders)
        .filter(|(_, o)| matches!(o, MatrixOrder::Finite(_)))
        .map(|(g, _)| g.clone())
        .collect();
    let infinite: Vec<&IntMatrix> = generators
        .iter()
        .zip(&orders)
        .filter(|(_, o)| **o == MatrixOrder::Infinite)
        .map(|(g, _)| g)
        .collect();

    let (torsion, independent) = if mutually_commuting {
        let group = torsion::closure(&finite, n);
        let max = *admissible_orders(n).last().expect("nonempty");
        let elem_orders: Vec<u64> = group
            .iter()
            .map(|g| match matrix_order(g) {
                Ok(MatrixOrder::Finite(k)) if k <= max => k,
                _ => 0,
            })
            .collect();
        if elem_orders.contains(&0) {
            return Err(Error::Invariant("closure of finite-order generators left the torsion".into()));
        }
        let set: HashSet<IntMatrix> = group.into_iter().collect();
        (abelian_invariants(&elem_orders), !has_relation(&infinite, &set, n)?)
    } else {
        (Vec::new(), false)
    };
    let structure = GroupStructure { torsion, rank: infinite.len(), torsion_complete: false };
    let matches_claim = claimed.is_none_or(|c| c.torsion == structure.torsion && c.rank == structure.rank);
    Ok(GeneratorCheck {
        orders,
        mutually_commuting,
        independent,
        consistent: mutually_commuting && independent && matches_claim,
        structure,
    })
}

fn has_relation(gens: &[&IntMatrix], torsion: &HashSet<IntMatrix>, n: usize) -> Result<bool> {
    if gens.is_empty() {
        return Ok(false);
    }
    let b = RELATION_EXPONENT_BOUND;
    let powers: Vec<Vec<IntMatrix>> =
        gens.iter().map(|g| (-b..=b).map(|e| g.pow(e)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let k = gens.len();
    let mut e = vec![-b; k];
    loop {
        // only exponent vectors whose first nonzero entry is positive: e and −e are equivalent
        if let Some(first) = e.iter().find(|x| **x != 0) {
            if *first > 0 {
                let prod = e
                    .iter()
                    .enumerate()
                    .fold(IntMatrix::identity(n), |acc, (i, &x)| acc.mul_unchecked(&powers[i][(x + b) as usize]));
                if torsion.contains(&prod) {
                    return Ok(true);
                }
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if e[i] < b {
                e[i] += 1;
                break;
            }
            e[i] = -b;
        }
    }
}
