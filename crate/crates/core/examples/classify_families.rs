//! Classification of the two model families `(2, 2n, 2)` and `(1, n, 1)`.
//!
//! ```sh
//! cargo run --example classify_families
//! ```

use k3aut::aut::{classify, AutClassification};
use k3aut::lattice::make_lattice;

fn describe(a: i64, b: i64, c: i64) -> k3aut::Result<String> {
    let l = make_lattice(a, b, c)?;
    Ok(match classify(&l)? {
        AutClassification::Finite { witness } => format!("finite, witness {witness:?}"),
        AutClassification::InfiniteCyclic { report } => format!(
            "Z generated by h^{} = {} (ε = {:+}), entropy {:.6}",
            report.k,
            report.generator.matrix(),
            report.epsilon,
            report.entropy
        ),
        AutClassification::InfiniteDihedral { report, pair, .. } => format!(
            "Z/2 * Z/2 with σ = {}, τ = {}, στ = h^{}",
            pair.sigma.matrix(),
            pair.tau.matrix(),
            report.k
        ),
    })
}

fn main() -> k3aut::Result<()> {
    println!("(2, 2n, 2):");
    for n in 3..=8 {
        println!("  n = {n}: {}", describe(2, 2 * n, 2)?);
    }
    println!("(1, n, 1):");
    for n in 3..=7 {
        println!("  n = {n}: {}", describe(1, n, 1)?);
    }
    Ok(())
}
