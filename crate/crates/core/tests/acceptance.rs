//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use toralsym::dynamics::{counts_from_zeta, orbit_counts, zeta_series};
use toralsym::exactlin::{hermite_rows, integer_kernel, smith_z};
use toralsym::invariants::{polynomial_invariants, reversal_involution};
use toralsym::polyring::{factor_over_z, is_self_reciprocal, real_root_count};
use toralsym::reversibility::{
    is_pgl_reversor, is_reversor, is_weak_reversor, necessary_conditions, pgl_reversor_search, q_reversibility,
    reversibility_report, reversor_order_analysis, z_reversor_search, ReversibilityOptions, WitnessSource,
};
use toralsym::symmetry::{
    centralizer_structure, commutant_basis, matrix_order, roots_in_commutant, torsion_search, CentralizerStructure,
    MatrixOrder,
};
use toralsym::{IntMatrix, RatMatrix};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn structure(m: &IntMatrix) -> std::result::Result<(Vec<u64>, usize), String> {
    match centralizer_structure(m).map_err(|e| e.to_string())? {
        CentralizerStructure::Determined(g) => Ok((g.torsion, g.rank)),
        other => Err(format!("centralizer left undetermined: {:?}", other)),
    }
}

fn c1() -> Check {
    let p1 = m1().charpoly();
    let p2 = m2().charpoly();
    ensure(p1 == poly(&[-1, 0, -1, 1]), format!("P1 = {}", p1))?;
    ensure(p2 == poly(&[1, -1, -2, 1]), format!("P2 = {}", p2))?;
    Ok(format!("P1 = {}, P2 = {}", p1, p2))
}

fn c2() -> Check {
    let m = cat4d();
    let f = factor_over_z(&m.charpoly()).map_err(|e| e.to_string())?;
    let mut got: Vec<_> = f.factors.clone();
    got.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut want = vec![(poly(&[1, -3, 1]), 1), (poly(&[1, -1, 1]), 1)];
    want.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    ensure(f.content.is_one() && got == want, format!("factorization {:?}", got))?;
    let (torsion, rank) = structure(&m)?;
    ensure(torsion == vec![2, 2] && rank == 1, format!("torsion {:?}, rank {}", torsion, rank))?;
    let ts = torsion_search(&m, 2).map_err(|e| e.to_string())?;
    ensure(ts.invariants == vec![2, 2], format!("torsion_search invariants {:?}", ts.invariants))?;
    ensure(ts.elements.len() == 4, "expected four finite-order elements")?;
    ensure(!ts.has_element_of_order(3) && !ts.has_element_of_order(6), "element of order 3 or 6")?;
    let roots = roots_in_commutant(&m, 2).map_err(|e| e.to_string())?;
    ensure(roots.as_ref().is_some_and(Vec::is_empty), format!("square roots of M: {:?}", roots))?;
    // independent check on the search box: no G with entries in [-2,2] squares to M or has order 3
    let basis = commutant_basis(&m).map_err(|e| e.to_string())?;
    let r = basis.rank();
    let mut coeffs = vec![-2i64; r];
    loop {
        let g = basis.element(&coeffs.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        ensure(g.mul(&g).unwrap() != m, format!("G^2 = M for G = {}", g))?;
        if g.is_unimodular() {
            ensure(!g.pow(3).unwrap().is_identity() || g.is_identity(), format!("order-3 element {}", g))?;
        }
        let mut i = 0;
        while i < r && coeffs[i] == 2 {
            coeffs[i] = -2;
            i += 1;
        }
        if i == r {
            break;
        }
        coeffs[i] += 1;
    }
    Ok(format!("S(M) = C2 x C2 x <M>, {} elements of finite order, no square root", ts.elements.len()))
}

fn c3() -> Check {
    let r = reversal_involution(4);
    let cols = [
        (left(&[1, 0, 0, 0, 1]), IntMatrix::from_array([[1, 1, 0, -1], [1, 1, 1, 0], [0, 1, 1, 1], [-1, 0, 1, 1]]), 8u64),
        (left(&[1, 1, 1, 1, 1]), IntMatrix::from_array([[1, 0, 1, 1], [-1, 0, -1, 0], [0, -1, 0, -1], [1, 1, 0, 1]]), 5),
        (left(&[1, 0, -1, 0, 1]), IntMatrix::from_array([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [-1, 0, 1, 1]]), 12),
    ];
    let mut summary = Vec::new();
    for (i, (m, g, ord)) in cols.iter().enumerate() {
        let o = matrix_order(m).map_err(|e| e.to_string())?;
        ensure(o == MatrixOrder::Finite(*ord), format!("order of M = {}", o))?;
        let (torsion, rank) = structure(m)?;
        let t: u64 = torsion.iter().product();
        let want_t = [8, 10, 12][i];
        ensure(t == want_t && rank == 1, format!("torsion {:?}, rank {}", torsion, rank))?;
        ensure(is_reversor(m, &r), "R M R != M^-1")?;
        ensure(m.commutes_with(g), "G does not commute with M")?;
        let gr = g.commutes_with(&r);
        if i < 2 {
            ensure(gr, "[G,R] != 0")?;
        } else {
            ensure(!gr, "[G,R] = 0 for the 12-fold case")?;
            let gp = m.pow(-1).unwrap().mul(&g.mul(g).unwrap()).unwrap();
            ensure(gp.commutes_with(&r), "[M^-1 G^2, R] != 0")?;
        }
        summary.push(format!("{}-fold", [8, 10, 12][i]));
    }
    Ok(summary.join(", ") + " confirmed")
}

fn c4() -> Check {
    for (name, m) in [("M1", m1()), ("M2", m2())] {
        let nc = necessary_conditions(&m).map_err(|e| e.to_string())?;
        ensure(
            nc.parity_obstruction.as_deref() == Some("odd degree, irreducible"),
            format!("{}: obstruction {:?}", name, nc.parity_obstruction),
        )?;
        let q = q_reversibility(&m).map_err(|e| e.to_string())?;
        ensure(!q.reversible, format!("{} reported reversible over Q", name))?;
    }
    Ok("M1 and M2 irreversible (odd degree, irreducible)".into())
}

fn c5() -> Check {
    let m = cat8();
    let t = Instant::now();
    let inv = polynomial_invariants(&m).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let a = poly(&[-1, -1, 1]);
    let b = poly(&[-1, 1, 1]);
    let want = vec![a.clone(), &a * &(&b * &b)];
    ensure(inv.q == want, format!("invariants {:?}", inv.q))?;
    ensure(elapsed.as_secs() <= 60, format!("invariants took {:?}", elapsed))?;
    ensure(is_self_reciprocal(&m.charpoly()).unwrap(), "charpoly not self-reciprocal")?;
    let q = q_reversibility(&m).map_err(|e| e.to_string())?;
    ensure(!q.reversible, "8x8 matrix reported Q-reversible")?;
    let s = pgl_reversor_search(&m, 5).map_err(|e| e.to_string())?;
    let g = s.witness.ok_or("no PGL witness")?;
    ensure(is_pgl_reversor(&m, &g) && g.is_unimodular(), "witness fails G M G^-1 = -M^-1")?;
    let lhs = g.mul(&m).unwrap().mul(&g.pow(-1).unwrap()).unwrap();
    ensure(lhs == m.pow(-1).unwrap().neg(), "witness check by hand failed")?;
    Ok(format!("invariants in {:.1?}, PGL witness via {}", elapsed, s.source.map_or("?", |s| s.name())))
}

fn c6() -> Check {
    let m = IntMatrix::from_array([[5, 7], [7, 10]]);
    let j = IntMatrix::from_array([[0, 1], [-1, 0]]);
    let s = z_reversor_search(&m, 5).map_err(|e| e.to_string())?;
    ensure(s.witness.as_ref() == Some(&j), format!("witness {:?}", s.witness))?;
    ensure(s.source == Some(WitnessSource::Symplectic), format!("source {:?}", s.source))?;
    let a = reversor_order_analysis(&m, &j).map_err(|e| e.to_string())?;
    ensure(a.applicable() && a.exhaustive, "reversor family not exhaustive")?;
    ensure(a.g_squared_power == Some((-1, 0)), format!("G^2 = {:?}", a.g_squared_power))?;
    ensure(a.minimal_order == Some(4), format!("minimal order {:?}", a.minimal_order))?;
    ensure(a.no_involutory_reversor(), "involution reported")?;
    // (±M^k J)^2 = -1 for all k, checked directly on a window of k
    for k in -6..=6 {
        for sgn in [1i64, -1] {
            let h = m.pow(k).unwrap().mul(&j).unwrap().scale(&BigInt::from(sgn));
            ensure(h.mul(&h).unwrap() == IntMatrix::identity(2).neg(), format!("(±M^{} J)^2 != -1", k))?;
        }
    }
    Ok("z witness J on fast path; every reversor has order 4; no involutory reversor".into())
}

fn c7() -> Check {
    let m = IntMatrix::from_array([[4, 9], [7, 16]]);
    let g = IntMatrix::from_array([[3, 0], [4, -3]]);
    ensure(is_weak_reversor(&m, &g), "G != M G M")?;
    ensure(m.mul(&g).unwrap().mul(&m).unwrap() == g, "M G M by hand")?;
    let d = g.det();
    ensure(d == BigInt::from(-9), format!("det G = {}", d))?;
    Ok("G = M G M with det G = -9".into())
}

fn c8() -> Check {
    let p = poly(&[1, -2, -2, -2, 1]);
    let sig = real_root_count(&p).map_err(|e| e.to_string())?;
    ensure((sig.n1, sig.n2) == (2, 1), format!("signature ({}, {})", sig.n1, sig.n2))?;
    ensure(grid_real_roots(&p) == 2, "grid oracle disagrees")?;
    let m = salem();
    let (torsion, rank) = structure(&m)?;
    ensure(torsion == vec![2] && rank == 2, format!("torsion {:?}, rank {}", torsion, rank))?;
    let r = reversal_involution(4);
    let rep = reversibility_report(&m, &ReversibilityOptions::default()).map_err(|e| e.to_string())?;
    ensure(rep.z_witness() == Some(&r), format!("z witness {:?}", rep.z_witness()))?;
    ensure(r.mul(&r).unwrap().is_identity() && is_reversor(&m, &r), "R not an involutory reversor")?;
    Ok("signature (2,1), S(M) = C2 x Z^2, R(M) = S(M) x| C2 via R".into())
}

fn random_sl2(rng: &mut ChaCha8Rng) -> IntMatrix {
    loop {
        let mut m = IntMatrix::identity(2);
        for _ in 0..rng.gen_range(2..12) {
            let k = rng.gen_range(-4i64..=4);
            let e = if rng.gen_bool(0.5) {
                IntMatrix::from_array([[1, k], [0, 1]])
            } else {
                IntMatrix::from_array([[1, 0], [k, 1]])
            };
            m = m.mul(&e).unwrap();
        }
        let bound = BigInt::from(1000);
        if m.entries().iter().all(|x| x.magnitude() <= bound.magnitude()) {
            return m;
        }
    }
}

fn c9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..100 {
        let m = random_sl2(&mut rng);
        ensure(m.det().is_one(), "not in SL(2,Z)")?;
        let q = q_reversibility(&m).map_err(|e| e.to_string())?;
        let g = q.reversor.as_ref().filter(|_| q.reversible).ok_or(format!("#{} {} not Q-reversible", i, m))?;
        let mq = RatMatrix::from(&m);
        let minv = RatMatrix::from(&m.pow(-1).unwrap());
        let lhs = g.mul(&mq).unwrap().mul(&g.inverse().unwrap()).unwrap();
        ensure(lhs == minv, format!("#{} reversor fails on {}", i, m))?;
        ensure(g.mul(g).unwrap().is_identity(), format!("#{} reversor not involutory", i))?;
    }
    Ok("100/100 random SL(2,Z) matrices reversible over Q with involutory reversor".into())
}

fn c10() -> Check {
    let m = cat();
    let od = orbit_counts(&m, 3).map_err(|e| e.to_string())?;
    let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    ensure(od.a == ints(&[1, 5, 16]), format!("a = {:?}", od.a))?;
    ensure(od.c == ints(&[1, 2, 5]), format!("c = {:?}", od.c))?;
    let (a, c) = lattice_orbit_counts(&m, 3);
    ensure(a == vec![1, 5, 16] && c == vec![1, 2, 5], format!("lattice oracle a = {:?}, c = {:?}", a, c))?;
    let z = zeta_series(&m, 8).map_err(|e| e.to_string())?;
    let back = counts_from_zeta(&z.zeta);
    for k in 1..=8usize {
        let want = BigRational::from_integer(z.a[k - 1].clone());
        ensure(back[k - 1] == want, format!("round trip at k = {}", k))?;
        ensure(
            BigRational::from_integer(BigInt::from(k)) * z.zeta_log[k].clone() == want,
            format!("k [t^k] log zeta != a_k at k = {}", k),
        )?;
    }
    Ok("a = (1,5,16), c = (1,2,5) by formula and lattice scan; zeta round trip to k = 8".into())
}

fn c11() -> Check {
    for (name, m) in [("M1", m1()), ("M2", m2()), ("M2'", m2_prime())] {
        let basis = commutant_basis(&m).map_err(|e| e.to_string())?;
        let brute = commuting_scan_3x3(&m, 3);
        for g in &brute {
            let gm = IntMatrix::from_i64(3, 3, g).unwrap();
            ensure(basis.contains(&gm), format!("{}: {} missing from commutant", name, gm))?;
        }
        let brute_rows: Vec<Vec<BigInt>> = brute.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let basis_rows: Vec<Vec<BigInt>> = basis.basis.iter().map(IntMatrix::vectorize).collect();
        ensure(hermite_rows(brute_rows) == hermite_rows(basis_rows), format!("{}: spans differ", name))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..20 {
        let mut a = random_matrix(&mut rng, 4, 4, 6);
        if i % 4 == 0 {
            // force rank deficiency
            for j in 0..4 {
                let v = &a[(0, j)] * 2 - &a[(1, j)];
                a[(3, j)] = v;
            }
        }
        let s = smith_z(&a);
        ensure(s.u.is_unimodular() && s.v.is_unimodular(), format!("#{} transforms not unimodular", i))?;
        ensure(s.u.mul(&a).unwrap().mul(&s.v).unwrap() == s.d, format!("#{} U A V != D", i))?;
        let diag = s.diagonal();
        ensure(diag == determinantal_invariants(&a), format!("#{} Smith vs minors", i))?;
        let naive: Vec<BigInt> = naive_smith(&a).into_iter().map(BigInt::from).collect();
        ensure(diag == naive, format!("#{} Smith vs elementary operations", i))?;
        let ker = integer_kernel(&a);
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        ensure(ker.len() == 4 - rank, format!("#{} kernel dimension", i))?;
        for v in &ker {
            let col = IntMatrix::new(4, 1, v.clone()).unwrap();
            ensure(a.mul(&col).unwrap().is_zero(), format!("#{} A k != 0", i))?;
        }
        if !ker.is_empty() {
            let km = IntMatrix::new(ker.len(), 4, ker.concat()).unwrap();
            ensure(smith_z(&km).diagonal().iter().all(|d| d.is_one()), format!("#{} kernel not saturated", i))?;
        }
    }
    Ok("commutant spans match [-3,3] scans; Smith and kernel match oracles on 20 random 4x4".into())
}

fn c12() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..200 {
        let n = rng.gen_range(1..=5);
        let m = random_matrix(&mut rng, n, n, 3);
        let inv = polynomial_invariants(&m).map_err(|e| e.to_string())?;
        ensure(inv.q.windows(2).all(|w| w[0].divides(&w[1])), format!("#{} divisibility chain", i))?;
        ensure(inv.product() == m.charpoly(), format!("#{} product != charpoly", i))?;
        ensure(inv.ell + inv.r() == n, format!("#{} ell + r != n", i))?;
        let u = random_unimodular(&mut rng, n, 6, true);
        let conj = u.mul(&m).unwrap().mul(&u.pow(-1).unwrap()).unwrap();
        ensure(polynomial_invariants(&conj).unwrap() == inv, format!("#{} conjugation changes invariants", i))?;
    }
    let opts = ReversibilityOptions { reversor_radius: 2, ..ReversibilityOptions::default() };
    for i in 0..200 {
        let n = rng.gen_range(2..=3);
        let m = random_unimodular(&mut rng, n, 5, true);
        let rep = reversibility_report(&m, &opts).map_err(|e| e.to_string())?;
        ensure(rep.implication_chain_holds(), format!("#{} implication chain broken for {}", i, m))?;
    }
    Ok("200 random invariant suites and 200 reversibility reports consistent".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("characteristic polynomials", c1),
        ("cat4D symmetry group", c2),
        ("quasicrystal table", c3),
        ("cubic irreversibility", c4),
        ("8x8 invariants and PGL reversor", c5),
        ("GL(2,Z) reversor orders", c6),
        ("weak reversibility", c7),
        ("Salem quartic", c8),
        ("SL(2,Z) rational reversibility", c9),
        ("orbit counts and zeta", c10),
        ("oracle equivalence", c11),
        ("invariant suites", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("PASS criterion {:>2} ({}): {} [{:.2?}]", i + 1, name, msg, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({}): {}", i + 1, name, msg);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
