//! Periodic points, orbit counts and the zeta function of the cat map.
use toralsym::dynamics::{enumerate_fixed_points, orbit_table, zeta_series};
use toralsym::IntMatrix;

fn main() -> toralsym::Result<()> {
    let m = IntMatrix::from_array([[2, 1], [1, 1]]);
    for row in orbit_table(&m, 8)? {
        println!("k = {}: a = {:?}, c = {:?}", row.k, row.a, row.c);
    }
    let z = zeta_series(&m, 6)?;
    let coeffs: Vec<String> = z.zeta.iter().map(|c| c.to_string()).collect();
    println!("zeta = {} + ...", coeffs.join(", "));
    let pts: Vec<String> = enumerate_fixed_points(&m, 2)?.iter().map(|p| p.to_string()).collect();
    println!("fixed points of M^2: {}", pts.join(" "));
    Ok(())
}
