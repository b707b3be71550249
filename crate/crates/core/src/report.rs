//! Serializable reports for the command-line tool, with a human-readable
//! rendering and a versioned JSON form.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dynamics::{orbit_table, log_zeta_from_counts, series_exp, TorusPoint};
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, RatMatrix};
use crate::invariants::{is_cyclic, is_semisimple, is_simple, polynomial_invariants};
use crate::polyring::{cyclotomic_index, factor_over_z, real_root_count};
use crate::reversibility::{reversibility_report, ReversibilityOptions, ReversibilityReport};
use crate::symmetry::{
    centralizer_structure_with_radius, commutant_basis, matrix_order, torsion_search_with_budget,
    CentralizerStructure, DEFAULT_SEARCH_BUDGET, DEFAULT_TORSION_RADIUS,
};
use crate::reversibility::DEFAULT_REVERSOR_RADIUS;

pub const SCHEMA: &str = "toralsym/1";

/// Matrix input: `n` followed by `n²` integers, or `{"n": n, "rows": [[…], …]}`.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        #[derive(Deserialize)]
        struct JsonMatrix {
            n: usize,
            rows: Vec<Vec<serde_json::Value>>,
        }
        let jm: JsonMatrix = serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        if jm.rows.len() != jm.n || jm.rows.iter().any(|r| r.len() != jm.n) {
            return Err(Error::Parse(format!("expected {} rows of {} entries", jm.n, jm.n)));
        }
        let rows = jm
            .rows
            .iter()
            .map(|r| r.iter().map(json_int).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        return check_size(IntMatrix::from_rows(rows)?);
    }
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?
        .parse()
        .map_err(|_| Error::Parse("first token must be the dimension n".into()))?;
    let entries = tokens
        .map(|t| t.parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {:?}", t))))
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != n * n {
        return Err(Error::Parse(format!("expected {} entries for n = {}, found {}", n * n, n, entries.len())));
    }
    check_size(IntMatrix::new(n, n, entries)?)
}

fn check_size(m: IntMatrix) -> Result<IntMatrix> {
    if m.n() == 0 {
        return Err(Error::Parse("dimension must be at least 1".into()));
    }
    Ok(m)
}

fn json_int(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(x) if x.is_i64() || x.is_u64() => Ok(x.to_string().parse().expect("integer")),
        serde_json::Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("not an integer: {:?}", s))),
        other => Err(Error::Parse(format!("not an integer: {}", other))),
    }
}

/// An integer, as a JSON number when it fits in `i64` and a string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Int {
    fn from(x: &BigInt) -> Self {
        x.to_i64().map_or_else(|| Int::Big(x.to_string()), Int::Small)
    }
}

impl std::fmt::Display for Int {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Int::Small(x) => write!(f, "{}", x),
            Int::Big(s) => write!(f, "{}", s),
        }
    }
}

pub type Rows = Vec<Vec<Int>>;

fn rows(m: &IntMatrix) -> Rows {
    m.to_rows().iter().map(|r| r.iter().map(Int::from).collect()).collect()
}

fn rat_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect()
}

fn format_rows(r: &Rows) -> String {
    let body: Vec<String> =
        r.iter().map(|row| format!("[{}]", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", body.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub n: usize,
    pub rows: Rows,
    pub det: Int,
}

impl InputEcho {
    fn new(m: &IntMatrix) -> Self {
        InputEcho { n: m.n(), rows: rows(m), det: Int::from(&m.det()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEntry {
    pub factor: String,
    pub multiplicity: u32,
    pub degree: usize,
    pub real_roots: usize,
    pub complex_pairs: usize,
    /// `m` when the factor is the cyclotomic polynomial `Φ_m`.
    pub cyclotomic: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub display: String,
    pub irreducible: bool,
    pub factors: Vec<FactorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub trivial: usize,
    pub factors: Vec<String>,
    pub minimal_polynomial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub unimodular: bool,
    pub simple: bool,
    pub cyclic: bool,
    pub semisimple: bool,
    /// Element order of `M`: a number or `"infinite"`; absent when not unimodular.
    pub order: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub radius: u32,
    pub visited: u64,
    pub truncated: bool,
    pub box_hits: usize,
    pub complete: bool,
    pub abelian: bool,
    pub invariants: Vec<u64>,
    pub order_counts: BTreeMap<u64, usize>,
    pub generators: Vec<Rows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerReport {
    pub determined: bool,
    /// e.g. `"C2 x Z"`
    pub structure: Option<String>,
    pub rank: Option<usize>,
    pub commutant_rank: usize,
    pub torsion: TorsionReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub witness: Option<Rows>,
    pub source: Option<String>,
    pub radius: u32,
    pub visited: u64,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakReport {
    pub witness: Option<Rows>,
    pub det: Option<Int>,
    pub radius: u32,
    pub visited: u64,
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversorOrdersReport {
    pub applicable: bool,
    pub m_primitive: Option<bool>,
    pub g_squared: Rows,
    pub family_size: usize,
    pub minimal_order: Option<u64>,
    pub involution: Option<Rows>,
    pub semidirect: bool,
    pub no_involutory_reversor: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversibilitySection {
    /// `true`/`false` when settled, `null` when the search was inconclusive.
    pub reversible: Option<bool>,
    pub verdict: String,
    pub self_reciprocal: bool,
    pub det_ok: bool,
    pub parity_obstruction: Option<String>,
    pub symplectic: bool,
    pub symmetric_symplectic: bool,
    pub integer_orthogonal: bool,
    pub q_reversible: Option<bool>,
    pub q_reversor: Option<Vec<Vec<String>>>,
    pub z_search: Option<SearchReport>,
    pub reversor_orders: Option<ReversorOrdersReport>,
    pub finite_order_reversor_question_open: bool,
    pub pgl_search: Option<SearchReport>,
    pub pgl_square_reversible: Option<bool>,
    pub weak: WeakReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRowReport {
    pub k: u64,
    pub a: Option<Int>,
    pub c: Option<Int>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsReport {
    pub depth: usize,
    pub rows: Vec<OrbitRowReport>,
    /// Series coefficients from `t⁰`, up to the last degree before the first degenerate row.
    pub zeta_log: Vec<String>,
    pub zeta: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub torsion_radius: u32,
    pub reversor_radius: u32,
    pub search_budget: u64,
    pub projective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub input: InputEcho,
    pub charpoly: String,
    pub factorization: FactorizationReport,
    pub invariant_factors: InvariantsReport,
    pub flags: Flags,
    pub centralizer: CentralizerReport,
    pub reversibility: ReversibilitySection,
    pub orbits: Option<OrbitsReport>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub torsion_radius: u32,
    pub reversor_radius: u32,
    pub orbits: Option<usize>,
    pub projective: bool,
    pub allow_nonunimodular: bool,
    pub budget: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            torsion_radius: DEFAULT_TORSION_RADIUS,
            reversor_radius: DEFAULT_REVERSOR_RADIUS,
            orbits: None,
            projective: false,
            allow_nonunimodular: false,
            budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

pub fn analyze(m: &IntMatrix, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    m.ensure_square()?;
    let unimodular = m.is_unimodular();
    if !unimodular && !opts.allow_nonunimodular {
        m.ensure_unimodular()?;
    }
    let p = m.charpoly();
    let fact = factor_over_z(&p)?;
    let mut factors = Vec::new();
    for (f, e) in &fact.factors {
        let sig = real_root_count(f)?;
        factors.push(FactorEntry {
            factor: f.to_string(),
            multiplicity: *e,
            degree: f.deg(),
            real_roots: sig.n1,
            complex_pairs: sig.n2,
            cyclotomic: cyclotomic_index(f),
        });
    }
    let inv = polynomial_invariants(m)?;
    let flags = Flags {
        unimodular,
        simple: is_simple(m)?,
        cyclic: is_cyclic(m)?,
        semisimple: is_semisimple(m)?,
        order: if unimodular { Some(matrix_order(m)?.to_string()) } else { None },
    };

    let torsion = torsion_search_with_budget(m, opts.torsion_radius, opts.budget)?;
    let commutant_rank = commutant_basis(m)?.rank();
    let (determined, structure, rank) = if unimodular {
        match centralizer_structure_with_radius(m, opts.torsion_radius)? {
            CentralizerStructure::Determined(g) => (true, Some(g.to_string()), Some(g.rank)),
            CentralizerStructure::Undetermined { .. } => (false, None, None),
        }
    } else {
        (false, None, None)
    };
    let centralizer = CentralizerReport {
        determined,
        structure,
        rank,
        commutant_rank,
        torsion: TorsionReport {
            radius: torsion.radius,
            visited: torsion.visited,
            truncated: torsion.truncated,
            box_hits: torsion.box_hits,
            complete: torsion.complete,
            abelian: torsion.abelian,
            invariants: torsion.invariants.clone(),
            order_counts: torsion.order_counts.clone(),
            generators: torsion.generators.iter().map(rows).collect(),
        },
    };

    let rev_opts =
        ReversibilityOptions { reversor_radius: opts.reversor_radius, projective: opts.projective, budget: opts.budget };
    let rev = reversibility_report(m, &rev_opts)?;
    let orbits = match opts.orbits {
        Some(k) if k > 0 => Some(orbits_report(m, k)?),
        _ => None,
    };

    Ok(AnalysisReport {
        schema: SCHEMA.to_string(),
        input: InputEcho::new(m),
        charpoly: p.to_string(),
        factorization: FactorizationReport {
            display: fact.to_string(),
            irreducible: fact.is_irreducible(),
            factors,
        },
        invariant_factors: InvariantsReport {
            trivial: inv.ell,
            factors: inv.q.iter().map(ToString::to_string).collect(),
            minimal_polynomial: inv.minimal_polynomial().to_string(),
        },
        flags,
        centralizer,
        reversibility: reversibility_section(m, &rev),
        orbits,
        provenance: Provenance {
            tool: "toralsym".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            torsion_radius: opts.torsion_radius,
            reversor_radius: opts.reversor_radius,
            search_budget: opts.budget,
            projective: opts.projective,
        },
    })
}

fn search_report(s: &crate::reversibility::WitnessSearch) -> SearchReport {
    SearchReport {
        witness: s.witness.as_ref().map(rows),
        source: s.source.map(|x| x.name().to_string()),
        radius: s.radius,
        visited: s.visited,
        truncated: s.truncated,
    }
}

fn reversibility_section(m: &IntMatrix, rev: &ReversibilityReport) -> ReversibilitySection {
    let c = &rev.conditions;
    let (reversible, verdict) = if let Some(s) = rev.z_search.as_ref().filter(|s| s.witness.is_some()) {
        let how = s.source.map_or("", |x| x.name());
        (Some(true), format!("reversible in GL({}, Z), witness from {}", m.n(), how))
    } else if !c.det_ok {
        (Some(false), format!("not reversible: det = {} is not a unit", m.det()))
    } else if let Some(o) = &c.parity_obstruction {
        (Some(false), format!("not reversible: {}", o))
    } else if !c.self_reciprocal {
        (Some(false), "not reversible: characteristic polynomial is not self-reciprocal".to_string())
    } else if !rev.q_reversible {
        (Some(false), "not reversible: some invariant factor is not self-reciprocal, so not even over Q".to_string())
    } else {
        let radius = rev.z_search.as_ref().map_or(0, |s| s.radius);
        (None, format!("undecided: reversible over Q, no integral witness with coefficients up to {}", radius))
    };
    ReversibilitySection {
        reversible,
        verdict,
        self_reciprocal: c.self_reciprocal,
        det_ok: c.det_ok,
        parity_obstruction: c.parity_obstruction.clone(),
        symplectic: rev.shortcuts.is_symplectic,
        symmetric_symplectic: rev.shortcuts.is_symmetric_symplectic,
        integer_orthogonal: rev.shortcuts.is_integer_orthogonal,
        q_reversible: rev.z_search.as_ref().map(|_| rev.q_reversible),
        q_reversor: rev.q_reversor.as_ref().map(rat_rows),
        z_search: rev.z_search.as_ref().map(search_report),
        reversor_orders: rev.reversor_orders.as_ref().map(|a| ReversorOrdersReport {
            applicable: a.applicable(),
            m_primitive: a.m_primitive,
            g_squared: rows(&a.g_squared),
            family_size: a.family_size,
            minimal_order: a.minimal_order,
            involution: a.involution.as_ref().map(rows),
            semidirect: a.semidirect,
            no_involutory_reversor: a.no_involutory_reversor(),
        }),
        finite_order_reversor_question_open: rev.finite_order_question_open(),
        pgl_search: rev.pgl_search.as_ref().map(search_report),
        pgl_square_reversible: rev.pgl_square_reversible,
        weak: WeakReport {
            witness: rev.weak.witness.as_ref().map(|w| rows(&w.g)),
            det: rev.weak.witness.as_ref().map(|w| Int::from(&w.det)),
            radius: rev.weak.radius,
            visited: rev.weak.visited,
            truncated: rev.weak.truncated,
        },
    }
}

pub fn orbits_report(m: &IntMatrix, depth: usize) -> Result<OrbitsReport> {
    let table = orbit_table(m, depth)?;
    let prefix: Vec<BigInt> = table.iter().map_while(|r| r.a.clone()).collect();
    let zeta_log = log_zeta_from_counts(&prefix);
    let zeta = series_exp(&zeta_log);
    Ok(OrbitsReport {
        depth,
        rows: table
            .iter()
            .map(|r| OrbitRowReport {
                k: r.k,
                a: r.a.as_ref().map(Int::from),
                c: r.c.as_ref().map(Int::from),
                degenerate: r.a.is_none(),
            })
            .collect(),
        zeta_log: zeta_log.iter().map(ToString::to_string).collect(),
        zeta: zeta.iter().map(ToString::to_string).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsCommandReport {
    pub schema: String,
    pub input: InputEcho,
    pub orbits: OrbitsReport,
}

pub fn orbits_command(m: &IntMatrix, depth: usize) -> Result<OrbitsCommandReport> {
    m.ensure_unimodular()?;
    Ok(OrbitsCommandReport { schema: SCHEMA.to_string(), input: InputEcho::new(m), orbits: orbits_report(m, depth)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Symmetry,
    Reversor,
    PglReversor,
    Weak,
    Affine,
}

impl VerifyMode {
    pub fn name(self) -> &'static str {
        match self {
            VerifyMode::Symmetry => "symmetry",
            VerifyMode::Reversor => "reversor",
            VerifyMode::PglReversor => "pgl-reversor",
            VerifyMode::Weak => "weak",
            VerifyMode::Affine => "affine",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineReport {
    pub translation: String,
    pub translation_fixed: bool,
    pub symmetry: bool,
    pub reversing: bool,
    /// Projective reversor with a 2-division translation.
    pub projective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub mode: String,
    pub input: InputEcho,
    pub candidate: InputEcho,
    pub verdict: bool,
    /// What should vanish (or be the identity) when the check passes.
    pub residual_label: Option<String>,
    pub residual: Option<Rows>,
    pub notes: Vec<String>,
    pub affine: Option<AffineReport>,
}

pub fn verify(m: &IntMatrix, g: &IntMatrix, mode: VerifyMode, translation: Option<&TorusPoint>) -> Result<VerifyReport> {
    if m.n() != g.n() {
        return Err(Error::DimensionMismatch(format!("M is {}x{} but the candidate is {}x{}", m.n(), m.n(), g.n(), g.n())));
    }
    let mut notes = Vec::new();
    let g_unimodular = g.is_unimodular();
    let m_unimodular = m.is_unimodular();
    if !g_unimodular && mode != VerifyMode::Weak {
        notes.push(format!("candidate is not unimodular (det = {})", g.det()));
    }
    if !m_unimodular && mode != VerifyMode::Weak && mode != VerifyMode::Symmetry {
        notes.push(format!("M is not unimodular (det = {})", m.det()));
    }
    let conj = |negate: bool| -> Option<IntMatrix> {
        if !(g_unimodular && m_unimodular) {
            return None;
        }
        let c = g.mul_unchecked(m).mul_unchecked(&g.inverse_unimodular().expect("unimodular")).mul_unchecked(m);
        Some(if negate { c.neg() } else { c })
    };
    let mut affine = None;
    let (verdict, label, residual) = match mode {
        VerifyMode::Symmetry => {
            let r = g.mul_unchecked(m).sub(&m.mul_unchecked(g))?;
            (g_unimodular && r.is_zero(), "G*M - M*G", Some(r))
        }
        VerifyMode::Reversor => {
            let r = conj(false);
            (r.as_ref().is_some_and(IntMatrix::is_identity), "G*M*G^-1*M", r)
        }
        VerifyMode::PglReversor => {
            let r = conj(true);
            (r.as_ref().is_some_and(IntMatrix::is_identity), "-G*M*G^-1*M", r)
        }
        VerifyMode::Weak => {
            let r = m.mul_unchecked(g).mul_unchecked(m).sub(g)?;
            let det = g.det();
            notes.push(format!("det(G) = {}", det));
            (!det.is_zero() && r.is_zero(), "M*G*M - G", Some(r))
        }
        VerifyMode::Affine => {
            let t = translation.ok_or_else(|| Error::Parse("affine mode needs --translation".into()))?;
            let fixed = t.image(m)? == *t;
            let symmetry = crate::dynamics::affine_symmetry_check(t, g, m, false)?;
            let reversing = crate::dynamics::affine_symmetry_check(t, g, m, true)?;
            let projective = crate::dynamics::projective_affine_check(t, g, m)?;
            let image = t.image(m)?;
            if !fixed {
                notes.push(format!("M*t = {} differs from t = {} mod 1", image, t));
            }
            affine = Some(AffineReport {
                translation: t.to_string(),
                translation_fixed: fixed,
                symmetry,
                reversing,
                projective,
            });
            let r = g.mul_unchecked(m).sub(&m.mul_unchecked(g))?;
            (symmetry || reversing || projective, "G*M - M*G", Some(r))
        }
    };
    Ok(VerifyReport {
        schema: SCHEMA.to_string(),
        mode: mode.name().to_string(),
        input: InputEcho::new(m),
        candidate: InputEcho::new(g),
        verdict,
        residual_label: residual.as_ref().map(|_| label.to_string()),
        residual: residual.as_ref().map(rows),
        notes,
        affine,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

pub fn render_orbits(o: &OrbitsReport, out: &mut String) {
    writeln!(out, "{:>4}  {:>24}  {:>24}", "k", "a_k", "c_k").unwrap();
    for r in &o.rows {
        if r.degenerate {
            writeln!(out, "{:>4}  {:>24}  {:>24}", r.k, "degenerate (eigenvalue 1)", opt(&r.c)).unwrap();
        } else {
            writeln!(out, "{:>4}  {:>24}  {:>24}", r.k, opt(&r.a), opt(&r.c)).unwrap();
        }
    }
    writeln!(out, "log zeta: {}", o.zeta_log.join(", ")).unwrap();
    writeln!(out, "zeta:     {}", o.zeta.join(", ")).unwrap();
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    writeln!(w, "matrix ({}x{}): {}", r.input.n, r.input.n, format_rows(&r.input.rows)).unwrap();
    writeln!(w, "det: {}", r.input.det).unwrap();
    writeln!(w, "charpoly: {}", r.charpoly).unwrap();
    writeln!(w, "factorization: {}", r.factorization.display).unwrap();
    for f in &r.factorization.factors {
        let cyc = f.cyclotomic.map(|m| format!(", cyclotomic Phi_{}", m)).unwrap_or_default();
        writeln!(w, "  {} (mult {}): {} real roots, {} complex pairs{}", f.factor, f.multiplicity, f.real_roots, f.complex_pairs, cyc)
            .unwrap();
    }
    writeln!(w, "invariant factors: {} (plus {} trivial)", r.invariant_factors.factors.join(" | "), r.invariant_factors.trivial)
        .unwrap();
    let fl = &r.flags;
    writeln!(
        w,
        "unimodular: {}, simple: {}, cyclic: {}, semisimple: {}, order: {}",
        yes(fl.unimodular),
        yes(fl.simple),
        yes(fl.cyclic),
        yes(fl.semisimple),
        opt(&fl.order)
    )
    .unwrap();

    let c = &r.centralizer;
    writeln!(w, "symmetry group: {}", c.structure.clone().unwrap_or_else(|| "undetermined".to_string())).unwrap();
    writeln!(w, "  commutant rank: {}", c.commutant_rank).unwrap();
    let t = &c.torsion;
    let inv: Vec<String> = t.invariants.iter().map(|d| format!("C{}", d)).collect();
    writeln!(
        w,
        "  torsion: {} ({}; radius {}, {} visited{})",
        if !t.abelian {
            format!("nonabelian, {} elements of finite order found", t.box_hits)
        } else if inv.is_empty() {
            "trivial".to_string()
        } else {
            inv.join(" x ")
        },
        if t.complete { "complete" } else { "found by search" },
        t.radius,
        t.visited,
        if t.truncated { ", truncated" } else { "" }
    )
    .unwrap();
    for g in &t.generators {
        writeln!(w, "  torsion generator: {}", format_rows(g)).unwrap();
    }

    let v = &r.reversibility;
    let rev = match v.reversible {
        Some(true) => "true",
        Some(false) => "false",
        None => "undecided",
    };
    match &v.parity_obstruction {
        Some(o) => writeln!(w, "reversible: {} ({})", rev, o).unwrap(),
        None => writeln!(w, "reversible: {}", rev).unwrap(),
    }
    writeln!(w, "  verdict: {}", v.verdict).unwrap();
    writeln!(
        w,
        "  self-reciprocal charpoly: {}, det = +-1: {}, reversible over Q: {}",
        yes(v.self_reciprocal),
        yes(v.det_ok),
        v.q_reversible.map_or("-", yes)
    )
    .unwrap();
    writeln!(
        w,
        "  symplectic: {}, symmetric symplectic: {}, integer orthogonal: {}",
        yes(v.symplectic),
        yes(v.symmetric_symplectic),
        yes(v.integer_orthogonal)
    )
    .unwrap();
    if let Some(s) = &v.z_search {
        match &s.witness {
            Some(g) => writeln!(w, "  Z-witness: {} ({})", format_rows(g), opt(&s.source)).unwrap(),
            None => writeln!(
                w,
                "  Z-witness: none up to radius {} ({} visited{})",
                s.radius,
                s.visited,
                if s.truncated { ", truncated" } else { "" }
            )
            .unwrap(),
        }
    }
    if let Some(a) = &v.reversor_orders {
        let min = a.minimal_order.map_or_else(|| "-".to_string(), |o| o.to_string());
        writeln!(w, "  least reversor order found: {}", min).unwrap();
        if let Some(i) = &a.involution {
            writeln!(w, "  involutory reversor: {} (reversing group is a semidirect product with C2)", format_rows(i)).unwrap();
        } else if a.no_involutory_reversor {
            writeln!(w, "  no involutory reversor").unwrap();
        }
    }
    if v.finite_order_reversor_question_open {
        writeln!(w, "  existence of a finite-order reversor: open").unwrap();
    }
    if let Some(s) = &v.pgl_search {
        match &s.witness {
            Some(g) => writeln!(
                w,
                "  PGL-witness (G M G^-1 = -M^-1): {} ({}); M^2 reversed: {}",
                format_rows(g),
                opt(&s.source),
                v.pgl_square_reversible.map_or("-", yes)
            )
            .unwrap(),
            None => writeln!(w, "  PGL-witness: none up to radius {}", s.radius).unwrap(),
        }
    }
    match (&v.weak.witness, &v.weak.det) {
        (Some(g), Some(d)) => writeln!(w, "  weak witness (G = M G M): {} with det {}", format_rows(g), d).unwrap(),
        _ => writeln!(w, "  weak witness: none up to radius {}", v.weak.radius).unwrap(),
    }

    if let Some(o) = &r.orbits {
        writeln!(w, "orbits:").unwrap();
        render_orbits(o, w);
    }
    let p = &r.provenance;
    writeln!(
        w,
        "{} {}: torsion radius {}, reversor radius {}, search budget {}",
        p.tool, p.version, p.torsion_radius, p.reversor_radius, p.search_budget
    )
    .unwrap();
    out
}

pub fn render_verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    writeln!(out, "mode: {}", r.mode).unwrap();
    writeln!(out, "M: {}", format_rows(&r.input.rows)).unwrap();
    writeln!(out, "G: {}", format_rows(&r.candidate.rows)).unwrap();
    writeln!(out, "verdict: {}", r.verdict).unwrap();
    if let Some(a) = &r.affine {
        writeln!(
            out,
            "translation {}: fixed by M: {}, symmetry: {}, reversing: {}, projective: {}",
            a.translation,
            yes(a.translation_fixed),
            yes(a.symmetry),
            yes(a.reversing),
            yes(a.projective)
        )
        .unwrap();
    }
    for n in &r.notes {
        writeln!(out, "{}", n).unwrap();
    }
    if !r.verdict {
        if let (Some(l), Some(res)) = (&r.residual_label, &r.residual) {
            writeln!(out, "{} = {}", l, format_rows(res)).unwrap();
        }
    }
    out
}

pub fn render_orbits_command(r: &OrbitsCommandReport) -> String {
    let mut out = String::new();
    writeln!(out, "matrix ({}x{}): {}", r.input.n, r.input.n, format_rows(&r.input.rows)).unwrap();
    render_orbits(&r.orbits, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_json_inputs() {
        let a = parse_matrix("2\n2 1\n1 1\n").unwrap();
        let b = parse_matrix(r#"{"n": 2, "rows": [[2, 1], [1, 1]]}"#).unwrap();
        assert_eq!(a, b);
        assert!(parse_matrix("2 1 2 3").is_err());
        assert!(parse_matrix("x").is_err());
        assert!(parse_matrix(r#"{"n": 2, "rows": [[1, 2]]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = IntMatrix::from_array([[0, 0, 1], [1, 0, 0], [0, 1, 1]]);
        let opts = AnalyzeOptions { orbits: Some(4), ..AnalyzeOptions::default() };
        let report = analyze(&m, &opts).unwrap();
        let s = serde_json::to_string_pretty(&report).unwrap();
        let back: AnalysisReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, report);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), s);
        let human = render_analysis(&report);
        assert!(human.contains("C2 x Z"));
        assert!(human.contains("reversible: false (odd degree, irreducible)"));
    }

    #[test]
    fn big_entries_become_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(Int::from(&big), Int::Big(big.to_string()));
        assert_eq!(Int::from(&BigInt::from(-3)), Int::Small(-3));
    }
}
