//! Non-invertible G with G = M G M.
use toralsym::reversibility::{is_weak_reversor, weak_reversibility_search};
use toralsym::IntMatrix;

fn main() -> toralsym::Result<()> {
    let m = IntMatrix::from_array([[4, 9], [7, 16]]);
    let g = IntMatrix::from_array([[3, 0], [4, -3]]);
    println!("G = M G M for G = {g}: {}, det G = {}", is_weak_reversor(&m, &g), g.det());
    let s = weak_reversibility_search(&m, 3)?;
    if let Some(w) = s.witness {
        println!("search picks {} with det {} ({} candidates)", w.g, w.det, s.visited);
    }
    Ok(())
}
