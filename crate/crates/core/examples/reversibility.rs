//! Necessary conditions, rational reversibility and the integral witness search.
use toralsym::reversibility::{reversibility_report, ReversibilityOptions};
use toralsym::IntMatrix;

fn main() -> toralsym::Result<()> {
    let opts = ReversibilityOptions::default();
    for (name, m) in [
        ("M1", IntMatrix::from_array([[0, 0, 1], [1, 0, 0], [0, 1, 1]])),
        ("[[5,7],[7,10]]", IntMatrix::from_array([[5, 7], [7, 10]])),
        ("cat", IntMatrix::from_array([[2, 1], [1, 1]])),
    ] {
        let rep = reversibility_report(&m, &opts)?;
        println!("{name}: obstruction {:?}, reversible over Q {}", rep.conditions.parity_obstruction, rep.q_reversible);
        if let (Some(g), Some(s)) = (rep.z_witness(), rep.z_search.as_ref()) {
            println!("  witness {g} via {}", s.source.map_or("?", |s| s.name()));
        }
        if let Some(a) = &rep.reversor_orders {
            println!(
                "  least reversor order {:?}, involution {:?}, family exhaustive {}",
                a.minimal_order, a.involution, a.exhaustive
            );
        }
    }
    Ok(())
}
