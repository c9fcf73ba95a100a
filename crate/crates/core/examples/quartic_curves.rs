//! Picard lattices of quartic surfaces containing a smooth curve.
//!
//! ```sh
//! cargo run --example quartic_curves
//! ```

use k3aut::aut::{classify, lattice_from_quartic, QuarticLattice};

fn main() {
    for (deg, genus) in [(4, 3), (5, 3), (6, 3), (7, 4), (9, 5), (2, 5)] {
        match lattice_from_quartic(deg, genus) {
            Err(e) => println!("deg {deg}, genus {genus}: {e}"),
            Ok(QuarticLattice::FiniteDegenerate { .. }) => {
                println!("deg {deg}, genus {genus}: degenerate lattice, Aut(X) finite")
            }
            Ok(QuarticLattice::Lattice(l)) => {
                let variant = classify(&l).map(|c| c.variant_name()).unwrap_or("error");
                println!("deg {deg}, genus {genus}: {l}, {variant}");
            }
        }
    }
}
