//! Rational canonical form with an explicit transform.
use toralsym::invariants::{frobenius_form, polynomial_invariants};
use toralsym::{IntMatrix, RatMatrix};

fn main() -> toralsym::Result<()> {
    let m = IntMatrix::from_array([[-1, -1, 1], [0, 1, 0], [0, 0, 1]]);
    let inv = polynomial_invariants(&m)?;
    println!("trivial factors {}, invariant factors {:?}", inv.ell, inv.q.iter().map(|q| q.to_string()).collect::<Vec<_>>());
    let f = frobenius_form(&m)?;
    println!("D = {}", f.block_diagonal());
    println!("S = {}", f.transform);
    let back = f.transform.mul(&RatMatrix::from(&f.block_diagonal()))?.mul(&f.transform.inverse()?)?;
    println!("S D S^-1 == M: {}", back == RatMatrix::from(&m));
    Ok(())
}
