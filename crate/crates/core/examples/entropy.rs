//! Topological entropy of generators and involutions.
//!
//! ```sh
//! cargo run --example entropy
//! ```

use k3aut::aut::{entropy_data, generator_infinite, involutions};
use k3aut::lattice::make_lattice;

fn main() -> k3aut::Result<()> {
    for (a, b, c) in [(1, 4, 1), (2, 6, 2), (1, 0, -3), (1, 1, -165)] {
        let l = make_lattice(a, b, c)?;
        let Ok(report) = generator_infinite(&l) else {
            println!("({a}, {b}, {c}): no hyperbolic rotation");
            continue;
        };
        let h = entropy_data(report.h.matrix());
        let g = entropy_data(report.generator.matrix());
        println!(
            "({a}, {b}, {c}): log ρ(h) = {:.12} (trace {}), log ρ(h^{}) = {:.12}",
            h.value, h.trace, report.k, g.value
        );
        for inv in involutions(&l, &report)? {
            println!("  involution {inv}: entropy {}", entropy_data(inv.matrix()).value);
        }
    }
    Ok(())
}
