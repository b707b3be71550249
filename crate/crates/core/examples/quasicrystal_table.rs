//! The 8-, 10- and 12-fold companion matrices with their unit generators.
use toralsym::invariants::{companion, reversal_involution, CompanionSide};
use toralsym::reversibility::is_reversor;
use toralsym::symmetry::{centralizer_structure, matrix_order};
use toralsym::{IntMatrix, IntPolynomial};

fn main() -> toralsym::Result<()> {
    let r = reversal_involution(4);
    let rows = [
        ([1, 0, 0, 0, 1], [[1, 1, 0, -1], [1, 1, 1, 0], [0, 1, 1, 1], [-1, 0, 1, 1]]),
        ([1, 1, 1, 1, 1], [[1, 0, 1, 1], [-1, 0, -1, 0], [0, -1, 0, -1], [1, 1, 0, 1]]),
        ([1, 0, -1, 0, 1], [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [-1, 0, 1, 1]]),
    ];
    for (p, g) in rows {
        let m = companion(&IntPolynomial::from_i64(&p), CompanionSide::Left)?;
        let g = IntMatrix::from_array(g);
        let g2 = m.pow(-1)?.mul(&g.mul(&g)?)?;
        println!("P = {}", m.charpoly());
        println!("  order of M {}, S(M) = {:?}", matrix_order(&m)?, centralizer_structure(&m)?);
        println!("  R reverses M: {}, [G,M] = 0: {}", is_reversor(&m, &r), m.commutes_with(&g));
        println!("  [G,R] = 0: {}, [M^-1 G^2, R] = 0: {}", g.commutes_with(&r), g2.commutes_with(&r));
    }
    Ok(())
}
