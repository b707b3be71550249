//! Reversibility in PGL(n, Z): a witness with G M G^-1 = -M^-1 for an 8x8 matrix
//! that is not reversible over Q.
use toralsym::invariants::{companion, polynomial_invariants, CompanionSide};
use toralsym::reversibility::{pgl_reversor_search, q_reversibility, square_is_reversed};
use toralsym::{IntMatrix, IntPolynomial};

fn main() -> toralsym::Result<()> {
    let golden = IntMatrix::from_array([[0, 1], [1, 1]]);
    let six = companion(&IntPolynomial::from_i64(&[-1, 1, 4, -3, -4, 1, 1]), CompanionSide::Left)?;
    let m = IntMatrix::block_diagonal(&[golden, six]);
    let inv = polynomial_invariants(&m)?;
    println!("invariant factors: {}", inv.q.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" | "));
    println!("reversible over Q: {}", q_reversibility(&m)?.reversible);
    let s = pgl_reversor_search(&m, 5)?;
    if let Some(g) = s.witness {
        println!("PGL witness ({}):\n{g}", s.source.map_or("?", |s| s.name()));
        println!("G also reverses M^2: {}", square_is_reversed(&m, &g));
    }
    Ok(())
}
