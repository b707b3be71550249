use std::collections::{BTreeMap, HashSet};
use std::ops::ControlFlow;

use super::{commutant_basis, units};
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::polyring::totient;
use crate::search::{self, det_exact, enumerate_box, mul_i128};

/// Default cap on the number of coefficient vectors a box search visits.
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

/// `ψ(m)`: the least dimension of an integer matrix of order `m`.
fn min_dimension_for_order(m: u64) -> u64 {
    let mut n = m;
    let mut total = 0;
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            // an isolated factor 2 comes for free from −1
            if !(p == 2 && q == 2 && m != 2) {
                total += totient(q);
            }
        }
        p += 1;
    }
    total
}

/// Orders of elements of finite order in `GL(n, ℤ)`.
pub fn admissible_orders(n: usize) -> Vec<u64> {
    let n = n as u64;
    // the largest admissible order stays far below 60·n² in every dimension
    (1..=(60 * n.max(1) * n.max(1))).filter(|&m| min_dimension_for_order(m) <= n).collect()
}

/// Exact finite order of a small matrix in `i128` arithmetic, up to `max`.
fn finite_order(n: usize, g: &[i128], max: u64) -> Option<u64> {
    let id: Vec<i128> = (0..n * n).map(|k| i128::from(k % (n + 1) == 0)).collect();
    let mut p = g.to_vec();
    for k in 1..=max {
        if p == id {
            return Some(k);
        }
        p = match mul_i128(n, &p, g) {
            Some(x) => x,
            None => return finite_order_big(&search::from_i128(n, g), max),
        };
    }
    None
}

fn finite_order_big(g: &IntMatrix, max: u64) -> Option<u64> {
    let mut p = g.clone();
    for k in 1..=max {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul_unchecked(g);
    }
    None
}

/// Invariant factors `d₁ | d₂ | …` of a finite Abelian group, from the
/// multiset of its element orders.
pub fn abelian_invariants(orders: &[u64]) -> Vec<u64> {
    let size = orders.len() as u64;
    let mut primes = Vec::new();
    let mut s = size;
    let mut p = 2;
    while s > 1 {
        if s.is_multiple_of(p) {
            primes.push(p);
            while s.is_multiple_of(p) {
                s /= p;
            }
        }
        p += 1;
    }
    // exponent partitions per prime, largest first
    let mut parts: Vec<Vec<u32>> = Vec::new();
    for &p in &primes {
        let count = |e: u32| orders.iter().filter(|&&o| p.pow(e) % o == 0).count() as u64;
        let mut ge = Vec::new(); // number of cyclic factors with exponent ≥ j
        let mut prev = 1u64;
        let mut e = 1;
        loop {
            let c = count(e);
            if c == prev {
                break;
            }
            let mut k = 0;
            let mut r = c / prev;
            while r > 1 {
                r /= p;
                k += 1;
            }
            ge.push(k);
            prev = c;
            e += 1;
        }
        let mut exps = Vec::new();
        for f in 0..ge.first().copied().unwrap_or(0) {
            exps.push(ge.iter().filter(|&&g| g > f).count() as u32);
        }
        parts.push(exps);
    }
    let width = parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..width)
        .map(|i| primes.iter().zip(&parts).map(|(&p, ex)| p.pow(ex.get(i).copied().unwrap_or(0))).product())
        .collect();
    out.sort_unstable();
    out
}

/// Group generated by commuting finite-order matrices (all elements).
pub(crate) fn closure(gens: &[IntMatrix], n: usize) -> Vec<IntMatrix> {
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    let id = IntMatrix::identity(n);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul_unchecked(g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<IntMatrix> = seen.into_iter().collect();
    v.sort_by(|a, b| a.canonical_cmp(b));
    v
}

fn order_of(g: &IntMatrix, max: u64) -> u64 {
    finite_order_big(g, max).expect("element of a finite group")
}

/// Greedy generating set: elements by decreasing order (canonical tie
/// break), kept when not already in the subgroup generated so far.
fn greedy_generators(elements: &[(IntMatrix, u64)], n: usize) -> Vec<IntMatrix> {
    let mut sorted: Vec<&(IntMatrix, u64)> = elements.iter().filter(|(_, o)| *o > 1).collect();
    sorted.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.canonical_cmp(&b.0)));
    let mut gens: Vec<IntMatrix> = Vec::new();
    let mut span: HashSet<IntMatrix> = closure(&[], n).into_iter().collect();
    for (g, _) in sorted {
        if span.len() == elements.len() {
            break;
        }
        if !span.contains(g) {
            gens.push(g.clone());
            span = closure(&gens, n).into_iter().collect();
        }
    }
    gens
}

/// Finite-order symmetries of `M` found by bounded search, merged with the
/// exact roots-of-unity enumeration when that is available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionSearch {
    pub radius: u32,
    /// Every finite-order element known, in canonical order.
    pub elements: Vec<IntMatrix>,
    pub generators: Vec<IntMatrix>,
    /// Invariant factors of the torsion group, e.g. `[2, 2]`; empty when not abelian.
    pub invariants: Vec<u64>,
    /// False when the finite-order elements found do not commute; then only
    /// the box hits are listed and no generators or invariants are given.
    pub abelian: bool,
    /// True when the torsion is pinned by theory rather than by the box alone.
    pub complete: bool,
    /// Distinct finite-order elements met inside the box.
    pub box_hits: usize,
    pub visited: u64,
    pub truncated: bool,
    /// Number of elements of each order, e.g. `{1: 1, 2: 3}`.
    pub order_counts: BTreeMap<u64, usize>,
}

impl TorsionSearch {
    pub fn has_element_of_order(&self, k: u64) -> bool {
        self.order_counts.contains_key(&k)
    }
}

pub fn torsion_search(m: &IntMatrix, radius: u32) -> Result<TorsionSearch> {
    torsion_search_with_budget(m, radius, DEFAULT_SEARCH_BUDGET)
}

pub fn torsion_search_with_budget(m: &IntMatrix, radius: u32, budget: u64) -> Result<TorsionSearch> {
    m.ensure_square()?;
    let n = m.n();
    let module = commutant_basis(m)?;
    let reduced = search::reduced_basis(&module.basis)?;
    let max_order = *admissible_orders(n).last().expect("order 1 is admissible");

    let mut hits: HashSet<IntMatrix> = HashSet::new();
    hits.insert(IntMatrix::identity(n));
    let stats = enumerate_box(&reduced, radius, budget, |_, g| {
        let tr: i128 = (0..n).map(|i| g[i * n + i]).sum();
        if tr.unsigned_abs() > n as u128 {
            return ControlFlow::Continue(());
        }
        let d = det_exact(n, g);
        if d.magnitude() != &num_bigint::BigUint::from(1u32) {
            return ControlFlow::Continue(());
        }
        if finite_order(n, g, max_order).is_some() {
            hits.insert(search::from_i128(n, g));
        }
        ControlFlow::Continue(())
    })?;
    let box_hits = hits.len();

    let (elements, complete, abelian) = match units::exact_torsion(m)? {
        Some(exact) => {
            let all: HashSet<IntMatrix> = exact.iter().map(|(g, _)| g.clone()).collect();
            if let Some(stray) = hits.iter().find(|h| !all.contains(*h)) {
                return Err(Error::Invariant(format!("box found finite-order {} outside the exact torsion", stray)));
            }
            (exact, true, true)
        }
        None => {
            hits.insert(IntMatrix::identity(n).neg());
            let mut gens: Vec<IntMatrix> = hits.into_iter().collect();
            gens.sort_by(|a, b| a.canonical_cmp(b));
            let abelian = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)));
            // non-commuting elements of finite order can generate an infinite group
            let group = if abelian { closure(&gens, n) } else { gens };
            let with_orders = group.into_iter().map(|g| {
                let o = order_of(&g, max_order);
                (g, o)
            });
            (with_orders.collect::<Vec<_>>(), false, abelian)
        }
    };
    let orders: Vec<u64> = elements.iter().map(|(_, o)| *o).collect();
    let mut order_counts = BTreeMap::new();
    for o in &orders {
        *order_counts.entry(*o).or_insert(0) += 1;
    }
    Ok(TorsionSearch {
        radius,
        generators: if abelian { greedy_generators(&elements, n) } else { Vec::new() },
        elements: elements.into_iter().map(|(g, _)| g).collect(),
        invariants: if abelian { abelian_invariants(&orders) } else { Vec::new() },
        abelian,
        complete,
        box_hits,
        visited: stats.visited,
        truncated: stats.truncated,
        order_counts,
    })
}
