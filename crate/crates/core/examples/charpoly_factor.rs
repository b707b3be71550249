//! Characteristic polynomials, factorization over Z and real-root signatures.
use toralsym::invariants::{is_cyclic, is_simple};
use toralsym::polyring::{factor_over_z, real_root_count};
use toralsym::IntMatrix;

fn main() -> toralsym::Result<()> {
    let examples = [
        ("M1", IntMatrix::from_array([[0, 0, 1], [1, 0, 0], [0, 1, 1]])),
        ("M2", IntMatrix::from_array([[1, 1, 0], [1, 0, 1], [1, 1, 1]])),
        ("cat4D", IntMatrix::from_array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 2, 1], [0, 1, 1, 2]])),
    ];
    for (name, m) in &examples {
        let p = m.charpoly();
        println!("{name}: P(x) = {p}, simple {}, cyclic {}", is_simple(m)?, is_cyclic(m)?);
        for (f, e) in factor_over_z(&p)?.factors {
            let s = real_root_count(&f)?;
            println!("  ({f})^{e}: {} real, {} complex pairs", s.n1, s.n2);
        }
    }
    Ok(())
}
