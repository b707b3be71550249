//! Reversing symmetries: spectral necessary conditions, reversibility over
//! ℚ with an explicit involution, bounded witness searches over ℤ (plain,
//! projective and weak), and the orders of reversors.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::exactlin::{IntMatrix, RatMatrix};
use crate::invariants::{frobenius_form, polynomial_invariants, reversal_involution};
use crate::polyring::{factor_over_z, is_self_reciprocal, real_root_count};
use crate::search::{self, det_exact, enumerate_box};
use crate::symmetry::{self, linear_module, matrix_order, units, MatrixOrder, DEFAULT_SEARCH_BUDGET};

/// Default coefficient radius of the reversor searches.
pub const DEFAULT_REVERSOR_RADIUS: u32 = 5;

/// Visit cap of the weak search, which scans its whole box.
pub const WEAK_SEARCH_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecessaryConditions {
    pub self_reciprocal: bool,
    pub det_ok: bool,
    /// Why reversibility in `GL(n, ℤ)` is impossible on degree/determinant grounds.
    pub parity_obstruction: Option<String>,
}

impl NecessaryConditions {
    pub fn passed(&self) -> bool {
        self.self_reciprocal && self.det_ok && self.parity_obstruction.is_none()
    }
}

pub fn necessary_conditions(m: &IntMatrix) -> Result<NecessaryConditions> {
    m.ensure_square()?;
    let det = m.det();
    let det_ok = det.abs().is_one();
    let p = m.charpoly();
    let self_reciprocal = !det.is_zero() && is_self_reciprocal(&p)?;
    let mut parity_obstruction = None;
    if det_ok && m.n() > 1 {
        let fact = factor_over_z(&p)?;
        let n = m.n();
        if fact.is_irreducible() {
            // degree 1 is excluded: [±1] is its own inverse
            if n % 2 == 1 {
                parity_obstruction = Some("odd degree, irreducible".to_string());
            } else if det.is_negative() {
                parity_obstruction = Some("determinant -1, irreducible".to_string());
            }
        } else {
            let multiplicity = |q: &crate::IntPolynomial| fact.factors.iter().find(|(f, _)| f == q).map_or(0, |(_, e)| *e);
            for (f, e) in &fact.factors {
                let d = f.deg();
                if d < 2 || f.reciprocal().as_ref() == Some(f) {
                    continue;
                }
                let matched = f.reciprocal().is_some_and(|r| multiplicity(&r) == *e);
                if matched {
                    continue;
                }
                if d % 2 == 1 {
                    parity_obstruction = Some(format!("isolated irreducible factor {} of odd degree", f));
                } else if f.constant_term() == -BigInt::one() {
                    parity_obstruction = Some(format!("isolated irreducible factor {} of even degree with constant term -1", f));
                }
                if parity_obstruction.is_some() {
                    break;
                }
            }
        }
    }
    Ok(NecessaryConditions { self_reciprocal, det_ok, parity_obstruction })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QReversibility {
    pub reversible: bool,
    /// Involution `G` with `G·M·G⁻¹ = M⁻¹`, when reversible.
    pub reversor: Option<RatMatrix>,
}

/// Reversible in `GL(n, ℚ)` iff every invariant factor is self-reciprocal;
/// the reversor is the block anti-diagonal involution moved back from the
/// Frobenius form.
pub fn q_reversibility(m: &IntMatrix) -> Result<QReversibility> {
    m.ensure_unimodular()?;
    let inv = polynomial_invariants(m)?;
    for q in &inv.q {
        if !is_self_reciprocal(q)? {
            return Ok(QReversibility { reversible: false, reversor: None });
        }
    }
    let frob = frobenius_form(m)?;
    let blocks: Vec<IntMatrix> = frob.blocks.iter().map(|b| reversal_involution(b.n())).collect();
    let r = RatMatrix::from(&IntMatrix::block_diagonal(&blocks));
    let s = &frob.transform;
    let g = s.mul(&r)?.mul(&s.inverse()?)?;
    let mr = RatMatrix::from(m);
    let minv = RatMatrix::from(&m.inverse_unimodular()?);
    if !g.mul(&g)?.is_identity() || g.mul(&mr)? != minv.mul(&g)? {
        return Err(crate::Error::Invariant("rational reversor failed verification".into()));
    }
    Ok(QReversibility { reversible: true, reversor: Some(g) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StructuralFlags {
    /// `Mᵗ·J·M = J`
    pub is_symplectic: bool,
    pub is_symmetric_symplectic: bool,
    /// Symplectic with `Mᵗ = −M`.
    pub is_skew_symplectic: bool,
    /// `M·Mᵗ = 1`
    pub is_integer_orthogonal: bool,
}

pub fn structural_shortcuts(m: &IntMatrix) -> StructuralFlags {
    if !m.is_square() {
        return StructuralFlags::default();
    }
    let t = m.transpose();
    let is_symplectic =
        IntMatrix::standard_symplectic(m.n()).is_some_and(|j| t.mul_unchecked(&j).mul_unchecked(m) == j);
    StructuralFlags {
        is_symplectic,
        is_symmetric_symplectic: is_symplectic && t == *m,
        is_skew_symplectic: is_symplectic && t == m.neg(),
        is_integer_orthogonal: m.mul_unchecked(&t).is_identity(),
    }
}

/// `G·M·G⁻¹ = M⁻¹` with `G` unimodular.
pub fn is_reversor(m: &IntMatrix, g: &IntMatrix) -> bool {
    conjugates_to(m, g, false)
}

/// `G·M·G⁻¹ = −M⁻¹` with `G` unimodular.
pub fn is_pgl_reversor(m: &IntMatrix, g: &IntMatrix) -> bool {
    conjugates_to(m, g, true)
}

fn conjugates_to(m: &IntMatrix, g: &IntMatrix, negate: bool) -> bool {
    if !m.is_square() || !g.is_square() || m.n() != g.n() || !m.is_unimodular() || !g.is_unimodular() {
        return false;
    }
    let mut target = m.inverse_unimodular().expect("unimodular");
    if negate {
        target = target.neg();
    }
    g.mul_unchecked(m) == target.mul_unchecked(g)
}

/// `G = M·G·M` with `G` nonsingular.
pub fn is_weak_reversor(m: &IntMatrix, g: &IntMatrix) -> bool {
    m.is_square() && g.is_square() && m.n() == g.n() && !g.det().is_zero() && m.mul_unchecked(g).mul_unchecked(m) == *g
}

/// `G·M²·G⁻¹ = M⁻²`, which follows from `G` being a projective reversor.
pub fn square_is_reversed(m: &IntMatrix, g: &IntMatrix) -> bool {
    is_reversor(&m.pow_u(2), g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    Symplectic,
    Reversal,
    BlockReversal,
    RationalReversor,
    Torsion,
    Box,
}

impl WitnessSource {
    pub fn name(self) -> &'static str {
        match self {
            WitnessSource::Symplectic => "symplectic J",
            WitnessSource::Reversal => "reversal R",
            WitnessSource::BlockReversal => "blockwise reversal",
            WitnessSource::RationalReversor => "integral rational reversor",
            WitnessSource::Torsion => "torsion times rational reversor",
            WitnessSource::Box => "box search",
        }
    }
}

/// Result of a bounded witness search. A missing witness means only that
/// none was found with coefficients up to `radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witness: Option<IntMatrix>,
    pub source: Option<WitnessSource>,
    pub radius: u32,
    pub visited: u64,
    pub truncated: bool,
}

impl WitnessSearch {
    fn empty(radius: u32) -> Self {
        WitnessSearch { witness: None, source: None, radius, visited: 0, truncated: false }
    }

    fn found(radius: u32, source: WitnessSource, g: IntMatrix) -> Self {
        WitnessSearch { witness: Some(g), source: Some(source), radius, visited: 0, truncated: false }
    }
}

fn diagonal_blocks(m: &IntMatrix) -> Vec<(usize, usize)> {
    let n = m.n();
    let mut out = Vec::new();
    let mut start = 0;
    for b in 1..=n {
        let split = b == n
            || (start..b).all(|i| (b..n).all(|j| m[(i, j)].is_zero() && m[(j, i)].is_zero()));
        if split {
            out.push((start, b - start));
            start = b;
        }
    }
    out
}

fn sub_block(m: &IntMatrix, start: usize, size: usize) -> IntMatrix {
    let rows = (start..start + size).map(|i| (start..start + size).map(|j| m[(i, j)].clone()).collect()).collect();
    IntMatrix::from_rows(rows).expect("square block")
}

fn alternating_diagonal(n: usize) -> IntMatrix {
    let mut d = IntMatrix::identity(n);
    for i in (1..n).step_by(2) {
        d[(i, i)] = -BigInt::one();
    }
    d
}

/// Per diagonal block, the first candidate that works; `None` if some block has none.
fn blockwise(m: &IntMatrix, negate: bool, candidates: impl Fn(usize) -> Vec<IntMatrix>) -> Option<IntMatrix> {
    let mut chosen = Vec::new();
    for (start, size) in diagonal_blocks(m) {
        let b = sub_block(m, start, size);
        let g = candidates(size).into_iter().find(|g| conjugates_to(&b, g, negate))?;
        chosen.push(g);
    }
    Some(IntMatrix::block_diagonal(&chosen))
}

fn box_search(
    m: &IntMatrix,
    negate: bool,
    radius: u32,
    budget: u64,
) -> Result<WitnessSearch> {
    let n = m.n();
    let minv = m.inverse_unimodular()?;
    let target = if negate { minv.neg() } else { minv };
    let module = linear_module(n, |g| g.mul_unchecked(m).sub(&target.mul_unchecked(g)).expect("same shape"));
    let mut out = WitnessSearch::empty(radius);
    let Ok(basis) = search::reduced_basis(&module) else {
        out.truncated = true;
        return Ok(out);
    };
    let mut hit = None;
    let stats = enumerate_box(&basis, radius, budget, |_, g| {
        if det_exact(n, g).abs().is_one() {
            hit = Some(search::from_i128(n, g));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    out.visited = stats.visited;
    out.truncated = stats.truncated;
    if let Some(g) = hit {
        out.witness = Some(g);
        out.source = Some(WitnessSource::Box);
    }
    Ok(out)
}

pub fn z_reversor_search(m: &IntMatrix, radius: u32) -> Result<WitnessSearch> {
    z_reversor_search_with_budget(m, radius, DEFAULT_SEARCH_BUDGET)
}

/// Unimodular `G` with `G·M·G⁻¹ = M⁻¹`: structural candidates first, then
/// the first unimodular element of `{G : GM = M⁻¹G}` in graded-lex order.
pub fn z_reversor_search_with_budget(m: &IntMatrix, radius: u32, budget: u64) -> Result<WitnessSearch> {
    let q = q_reversibility(m)?;
    if !q.reversible {
        return Ok(WitnessSearch::empty(radius));
    }
    let n = m.n();
    let mut candidates: Vec<(WitnessSource, IntMatrix)> = Vec::new();
    if structural_shortcuts(m).is_symmetric_symplectic {
        candidates.push((WitnessSource::Symplectic, IntMatrix::standard_symplectic(n).expect("even")));
    }
    candidates.push((WitnessSource::Reversal, reversal_involution(n)));
    if let Some(g) = blockwise(m, false, |d| vec![reversal_involution(d)]) {
        candidates.push((WitnessSource::BlockReversal, g));
    }
    let gq = q.reversor.expect("reversible");
    if let Some(g) = gq.to_int() {
        candidates.push((WitnessSource::RationalReversor, g));
    }
    for (source, g) in candidates {
        if is_reversor(m, &g) {
            return Ok(WitnessSearch::found(radius, source, g));
        }
    }
    if let Some(torsion) = units::exact_torsion(m)? {
        for (t, _) in torsion {
            if let Some(g) = RatMatrix::from(&t).mul(&gq)?.to_int() {
                if is_reversor(m, &g) {
                    return Ok(WitnessSearch::found(radius, WitnessSource::Torsion, g));
                }
            }
        }
    }
    box_search(m, false, radius, budget)
}

pub fn pgl_reversor_search(m: &IntMatrix, radius: u32) -> Result<WitnessSearch> {
    pgl_reversor_search_with_budget(m, radius, DEFAULT_SEARCH_BUDGET)
}

/// Unimodular `G` with `G·M·G⁻¹ = −M⁻¹`: `J` for skew-symmetric symplectic
/// `M`, blockwise `±R·D`, `±D·R` with `D = diag(1, −1, 1, …)`, then the box.
pub fn pgl_reversor_search_with_budget(m: &IntMatrix, radius: u32, budget: u64) -> Result<WitnessSearch> {
    m.ensure_unimodular()?;
    let n = m.n();
    if structural_shortcuts(m).is_skew_symplectic {
        let j = IntMatrix::standard_symplectic(n).expect("even");
        if is_pgl_reversor(m, &j) {
            return Ok(WitnessSearch::found(radius, WitnessSource::Symplectic, j));
        }
    }
    let variants = |d: usize| {
        let r = reversal_involution(d);
        let dd = alternating_diagonal(d);
        let rd = r.mul_unchecked(&dd);
        let dr = dd.mul_unchecked(&r);
        vec![rd.clone(), rd.neg(), dr.clone(), dr.neg()]
    };
    if let Some(g) = blockwise(m, true, variants) {
        if is_pgl_reversor(m, &g) {
            return Ok(WitnessSearch::found(radius, WitnessSource::BlockReversal, g));
        }
    }
    box_search(m, true, radius, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakWitness {
    pub g: IntMatrix,
    pub det: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakSearch {
    pub witness: Option<WeakWitness>,
    pub radius: u32,
    pub visited: u64,
    pub truncated: bool,
}

/// Ordering key of weak witnesses: smaller max-abs entry, then smaller
/// entry sum of absolute values, then lexicographically larger entries.
fn weak_key(g: &[i128]) -> (u128, u128, std::cmp::Reverse<Vec<i128>>) {
    let max = g.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let l1 = g.iter().map(|x| x.unsigned_abs()).sum();
    (max, l1, std::cmp::Reverse(g.to_vec()))
}

/// Nonsingular integer `G` with `G = M·G·M` (no unimodularity required),
/// the least under [`weak_key`] among coefficient vectors up to `radius`.
pub fn weak_reversibility_search(m: &IntMatrix, radius: u32) -> Result<WeakSearch> {
    weak_reversibility_search_with_budget(m, radius, WEAK_SEARCH_BUDGET)
}

pub fn weak_reversibility_search_with_budget(m: &IntMatrix, radius: u32, budget: u64) -> Result<WeakSearch> {
    m.ensure_square()?;
    let n = m.n();
    let module = linear_module(n, |g| g.sub(&m.mul_unchecked(g).mul_unchecked(m)).expect("same shape"));
    let mut out = WeakSearch { witness: None, radius, visited: 0, truncated: false };
    let Ok(basis) = search::reduced_basis(&module) else {
        out.truncated = true;
        return Ok(out);
    };
    let mut best: Option<(Vec<i128>, BigInt)> = None;
    let stats = enumerate_box(&basis, radius, budget, |_, g| {
        if best.as_ref().is_some_and(|(b, _)| weak_key(g) >= weak_key(b)) {
            return ControlFlow::Continue(());
        }
        let d = det_exact(n, g);
        if !d.is_zero() {
            best = Some((g.to_vec(), d));
        }
        ControlFlow::Continue(())
    })?;
    out.visited = stats.visited;
    out.truncated = stats.truncated;
    out.witness = best.map(|(g, det)| WeakWitness { g: search::from_i128(n, &g), det });
    Ok(out)
}

/// Orders of the reversors `t·Mᵏ·G` (`t` of finite order in the centraliser).
/// `(t·Mᵏ·G)² = t·(G·t·G⁻¹)·G²` does not depend on `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversorOrderAnalysis {
    /// Centraliser of rank 1, torsion known exactly and `M` of infinite
    /// order, so that the centraliser is finite over `⟨M⟩`.
    pub quotient_finite: bool,
    /// `M` is not `t·Uᵏ` for `k > 1` (certified for n = 2 only).
    pub m_primitive: Option<bool>,
    pub g_squared: IntMatrix,
    /// `G² = s·Mˡ` with `s = ±1`, when that holds for some `|l| ≤ 12`.
    pub g_squared_power: Option<(i8, i64)>,
    pub family_size: usize,
    pub minimal_order: Option<u64>,
    pub involution: Option<IntMatrix>,
    /// An involutory reversor exists, so reversors form `𝒮(M) ⋊ C₂`.
    pub semidirect: bool,
    /// The family `t·Mᵏ·G` is every reversor.
    pub exhaustive: bool,
}

impl ReversorOrderAnalysis {
    pub fn applicable(&self) -> bool {
        self.quotient_finite
    }

    pub fn no_involutory_reversor(&self) -> bool {
        self.exhaustive && self.involution.is_none()
    }
}

fn small_primes_up_to(k: u64) -> Vec<u32> {
    (2..=k as u32).filter(|p| (2..*p).take_while(|d| d * d <= *p).all(|d| p % d != 0)).collect()
}

/// In GL(2, ℤ) a unit of infinite order has spectral radius at least the golden ratio,
/// so `M = t·Uᵏ` forces `k ≤ log|λ_max(M)| / log φ`.
fn root_exponent_bound(m: &IntMatrix) -> Option<u64> {
    if m.n() != 2 {
        return None;
    }
    let bits = (m.trace().abs() + 1u32).bits() as f64;
    Some((bits * std::f64::consts::LN_2 / 1.618_033_988_749_895f64.ln()).ceil() as u64)
}

pub fn reversor_order_analysis(m: &IntMatrix, g: &IntMatrix) -> Result<ReversorOrderAnalysis> {
    if !is_reversor(m, g) {
        return Err(crate::Error::Invariant("reversor_order_analysis needs a verified reversor".into()));
    }
    let n = m.n();
    let g_squared = g.mul_unchecked(g);
    let minus = IntMatrix::identity(n).neg();
    let mut g_squared_power = None;
    'outer: for l in 0..=12i64 {
        for l in if l == 0 { vec![0] } else { vec![l, -l] } {
            let p = m.pow(l)?;
            if p == g_squared {
                g_squared_power = Some((1, l));
                break 'outer;
            }
            if p.mul_unchecked(&minus) == g_squared {
                g_squared_power = Some((-1, l));
                break 'outer;
            }
        }
    }

    let exact = units::exact_torsion(m)?;
    let m_infinite = matrix_order(m)? == MatrixOrder::Infinite;
    let rank = free_rank(m)?;
    let quotient_finite = exact.is_some() && rank == Some(1) && m_infinite;
    let mut torsion: Vec<IntMatrix> = match exact {
        Some(list) => list.into_iter().map(|(t, _)| t).collect(),
        None => symmetry::torsion_search(m, symmetry::DEFAULT_TORSION_RADIUS)?.elements,
    };
    // G itself first
    torsion.sort_by_key(|t| !t.is_identity());

    let m_primitive = if quotient_finite {
        let bound = root_exponent_bound(m);
        let mut root = false;
        'roots: for k in small_primes_up_to(bound.unwrap_or(7)) {
            for t in &torsion {
                match units::kth_roots(&t.mul_unchecked(m), k)? {
                    Some(r) if !r.is_empty() => {
                        root = true;
                        break 'roots;
                    }
                    _ => {}
                }
            }
        }
        if root {
            Some(false)
        } else {
            bound.map(|_| true)
        }
    } else {
        None
    };

    let mut minimal_order: Option<u64> = None;
    let mut involution = None;
    for t in &torsion {
        let h = t.mul_unchecked(g);
        if let MatrixOrder::Finite(order) = matrix_order(&h)? {
            minimal_order = Some(minimal_order.map_or(order, |o| o.min(order)));
            if order == 2 && involution.is_none() {
                involution = Some(h);
            }
        }
    }
    Ok(ReversorOrderAnalysis {
        quotient_finite,
        m_primitive,
        g_squared,
        g_squared_power,
        family_size: torsion.len(),
        minimal_order,
        semidirect: involution.is_some(),
        involution,
        exhaustive: quotient_finite && m_primitive == Some(true),
    })
}

/// `Σ (n₁ + n₂ − 1)` over irreducible factors, for square-free charpoly.
fn free_rank(m: &IntMatrix) -> Result<Option<usize>> {
    let fact = factor_over_z(&m.charpoly())?;
    if !fact.is_square_free() {
        return Ok(None);
    }
    let mut rank = 0;
    for (f, _) in &fact.factors {
        let s = real_root_count(f)?;
        rank += s.n1 + s.n2 - 1;
    }
    Ok(Some(rank))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReversibilityOptions {
    pub reversor_radius: u32,
    pub projective: bool,
    pub budget: u64,
}

impl Default for ReversibilityOptions {
    fn default() -> Self {
        ReversibilityOptions { reversor_radius: DEFAULT_REVERSOR_RADIUS, projective: false, budget: DEFAULT_SEARCH_BUDGET }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibilityReport {
    pub conditions: NecessaryConditions,
    pub shortcuts: StructuralFlags,
    pub q_reversible: bool,
    pub q_reversor: Option<RatMatrix>,
    /// Absent for non-unimodular input.
    pub z_search: Option<WitnessSearch>,
    pub pgl_search: Option<WitnessSearch>,
    /// `G·M²·G⁻¹ = M⁻²` for the projective witness.
    pub pgl_square_reversible: Option<bool>,
    pub weak: WeakSearch,
    pub reversor_orders: Option<ReversorOrderAnalysis>,
}

impl ReversibilityReport {
    pub fn z_witness(&self) -> Option<&IntMatrix> {
        self.z_search.as_ref().and_then(|s| s.witness.as_ref())
    }

    /// `z_witness ⟹ q_reversible ⟹ self_reciprocal ∧ |det| = 1`.
    pub fn implication_chain_holds(&self) -> bool {
        let z = self.z_witness().is_none() || self.q_reversible;
        let q = !self.q_reversible || (self.conditions.self_reciprocal && self.conditions.det_ok);
        z && q
    }

    /// Whether reversibility implies a finite-order reversor is not settled here:
    /// set when a witness exists but the reversor orders are not pinned down.
    pub fn finite_order_question_open(&self) -> bool {
        self.z_witness().is_some() && !self.reversor_orders.as_ref().is_some_and(|a| a.exhaustive || a.semidirect)
    }
}

pub fn reversibility_report(m: &IntMatrix, opts: &ReversibilityOptions) -> Result<ReversibilityReport> {
    let conditions = necessary_conditions(m)?;
    let shortcuts = structural_shortcuts(m);
    let weak = weak_reversibility_search_with_budget(m, opts.reversor_radius, WEAK_SEARCH_BUDGET.min(opts.budget))?;
    if !m.is_unimodular() {
        return Ok(ReversibilityReport {
            conditions,
            shortcuts,
            q_reversible: false,
            q_reversor: None,
            z_search: None,
            pgl_search: None,
            pgl_square_reversible: None,
            weak,
            reversor_orders: None,
        });
    }
    let q = q_reversibility(m)?;
    if (shortcuts.is_symplectic || shortcuts.is_integer_orthogonal) && !q.reversible {
        return Err(crate::Error::Invariant("structural shortcut disagrees with the invariant factors".into()));
    }
    let z = z_reversor_search_with_budget(m, opts.reversor_radius, opts.budget)?;
    let reversor_orders = match &z.witness {
        Some(g) => Some(reversor_order_analysis(m, g)?),
        None => None,
    };
    let (pgl_search, pgl_square_reversible) = if opts.projective {
        let s = pgl_reversor_search_with_budget(m, opts.reversor_radius, opts.budget)?;
        let sq = s.witness.as_ref().map(|g| square_is_reversed(m, g));
        (Some(s), sq)
    } else {
        (None, None)
    };
    Ok(ReversibilityReport {
        conditions,
        shortcuts,
        q_reversible: q.reversible,
        q_reversor: q.reversor,
        z_search: Some(z),
        pgl_search,
        pgl_square_reversible,
        weak,
        reversor_orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{companion, CompanionSide};
    use crate::IntPolynomial;

    fn left(c: &[i64]) -> IntMatrix {
        companion(&IntPolynomial::from_i64(c), CompanionSide::Left).unwrap()
    }

    #[test]
    fn cubic_examples_are_obstructed() {
        for m in [
            IntMatrix::from_array([[0, 0, 1], [1, 0, 0], [0, 1, 1]]),
            IntMatrix::from_array([[1, 1, 0], [1, 0, 1], [1, 1, 1]]),
        ] {
            let c = necessary_conditions(&m).unwrap();
            assert_eq!(c.parity_obstruction.as_deref(), Some("odd degree, irreducible"));
            assert!(!q_reversibility(&m).unwrap().reversible);
        }
    }

    #[test]
    fn identity_passes() {
        let c = necessary_conditions(&IntMatrix::identity(3)).unwrap();
        assert!(c.passed());
        let w = weak_reversibility_search(&IntMatrix::identity(2), 2).unwrap().witness.unwrap();
        assert!(w.g.is_identity());
    }

    #[test]
    fn isolated_odd_factor() {
        // (x − 1)(x³ − x − 1): reducible, with an unmatched cubic
        let m = IntMatrix::block_diagonal(&[IntMatrix::identity(1), left(&[-1, -1, 0, 1])]);
        let c = necessary_conditions(&m).unwrap();
        assert!(c.parity_obstruction.unwrap().contains("odd degree"));
    }

    #[test]
    fn two_by_two_reversor() {
        let m = IntMatrix::from_array([[5, 7], [7, 10]]);
        let s = z_reversor_search(&m, 5).unwrap();
        assert_eq!(s.witness, Some(IntMatrix::from_array([[0, 1], [-1, 0]])));
        assert_eq!(s.source, Some(WitnessSource::Symplectic));
        let a = reversor_order_analysis(&m, s.witness.as_ref().unwrap()).unwrap();
        assert!(a.quotient_finite && a.exhaustive);
        assert_eq!(a.minimal_order, Some(4));
        assert_eq!(a.g_squared_power, Some((-1, 0)));
        assert!(a.no_involutory_reversor());
    }

    #[test]
    fn k_independence_of_squares() {
        let m = IntMatrix::from_array([[5, 7], [7, 10]]);
        let g = IntMatrix::from_array([[0, 1], [-1, 0]]);
        for k in -3..=3 {
            let h = m.pow(k).unwrap().mul_unchecked(&g);
            assert!(is_reversor(&m, &h));
            assert_eq!(h.mul_unchecked(&h), g.mul_unchecked(&g));
        }
    }

    #[test]
    fn q_reversor_is_an_involution() {
        let m = IntMatrix::from_array([[2, 1], [1, 1]]);
        let g = q_reversibility(&m).unwrap().reversor.unwrap();
        assert!(g.mul(&g).unwrap().is_identity());
    }

    #[test]
    fn companion_class_reversal() {
        let m = left(&[1, -3, 1]);
        let s = z_reversor_search(&m, 1).unwrap();
        assert_eq!(s.source, Some(WitnessSource::Reversal));
        let a = reversor_order_analysis(&m, s.witness.as_ref().unwrap()).unwrap();
        assert!(a.semidirect);
    }

    #[test]
    fn weak_module_matches_reversor() {
        let m = IntMatrix::from_array([[4, 9], [7, 16]]);
        assert!(is_weak_reversor(&m, &IntMatrix::from_array([[3, 0], [4, -3]])));
        let w = weak_reversibility_search(&m, 3).unwrap().witness.unwrap();
        assert!(is_weak_reversor(&m, &w.g));
        assert_eq!(w.det, w.g.det());
    }

    #[test]
    fn projective_block() {
        let m = IntMatrix::from_array([[0, 1], [1, 1]]);
        let s = pgl_reversor_search(&m, 2).unwrap();
        let g = s.witness.unwrap();
        assert!(is_pgl_reversor(&m, &g));
        assert!(square_is_reversed(&m, &g));
        assert!(pgl_reversor_search(&IntMatrix::identity(2), 2).unwrap().witness.is_none());
    }

    #[test]
    fn shortcut_flags() {
        let j = IntMatrix::standard_symplectic(4).unwrap();
        assert!(structural_shortcuts(&j).is_symplectic);
        let p = IntMatrix::from_array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
        assert!(structural_shortcuts(&p).is_integer_orthogonal);
    }
}
