//! Centralizer of M in GL(n, Z): commutant module, torsion and free rank.
use toralsym::symmetry::{centralizer_structure, commutant_basis, torsion_search, verify_symmetry};
use toralsym::IntMatrix;

fn main() -> toralsym::Result<()> {
    let m2 = IntMatrix::from_array([[1, 1, 0], [1, 0, 1], [1, 1, 1]]);
    let m2p = IntMatrix::from_array([[0, 1, 0], [1, -1, 1], [1, 1, 0]]);
    let module = commutant_basis(&m2)?;
    println!("commutant of M2 has rank {}; basis:", module.rank());
    for b in &module.basis {
        println!("  {b}");
    }
    println!("M2' commutes with M2: {}", verify_symmetry(&m2, &m2p));
    println!("S(M2) = {:?}", centralizer_structure(&m2)?);

    let cat4d = IntMatrix::from_array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 2, 1], [0, 1, 1, 2]]);
    let t = torsion_search(&cat4d, 2)?;
    println!("cat4D torsion {:?} from {} elements, complete {}", t.invariants, t.elements.len(), t.complete);
    for g in &t.generators {
        println!("  generator {g}");
    }
    Ok(())
}
