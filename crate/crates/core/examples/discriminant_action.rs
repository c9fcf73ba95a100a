//! How isometries act on the discriminant group, by the integrality test and
//! by explicit Smith normal form coordinates.
//!
//! ```sh
//! cargo run --example discriminant_action
//! ```

use k3aut::aut::build_h;
use k3aut::lattice::{disc_action, disc_action_oracle, disc_group_snf, make_lattice};

fn main() -> k3aut::Result<()> {
    for (a, b, c) in [(1, 4, 1), (2, 6, 2), (2, 8, 2), (2, 10, 2), (1, 0, -3)] {
        let l = make_lattice(a, b, c)?;
        let h = build_h(&l)?;
        let (d1, d2) = disc_group_snf(&l);
        let order = disc_action_oracle(&l, &h)?.order();
        println!("({a}, {b}, {c}): A(L) ≅ Z/{d1} × Z/{d2}, h = {h} has order {order} on A(L)");
        for j in 1..=order as i64 {
            let p = h.pow(j).expect("unimodular");
            let map = disc_action_oracle(&l, &p)?;
            println!(
                "  h^{j}: criterion {:?}, Smith coordinates {:?}",
                disc_action(&l, &p)?,
                map.matrix
            );
        }
    }
    Ok(())
}
