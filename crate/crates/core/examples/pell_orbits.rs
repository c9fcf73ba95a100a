//! Fundamental solutions and orbit decompositions of Pell-type equations.
//!
//! ```sh
//! cargo run --example pell_orbits
//! ```

use k3aut::pell::{
    general_pell_orbits, neg_pell_fundamental, pell1_fundamental, pell4_fundamental,
    pell_multiply,
};
use num_bigint::BigInt;

fn main() -> k3aut::Result<()> {
    for d in [2, 5, 12, 13, 661] {
        let p1 = pell1_fundamental(d)?;
        let p4 = pell4_fundamental(d)?;
        println!("d = {d}: u² − dv² = 1 → ({}, {}), u² − dv² = 4 → ({}, {})", p1.u, p1.v, p4.u, p4.v);
        if let Some(n) = neg_pell_fundamental(d)? {
            println!("         u² − dv² = −1 → ({}, {})", n.u, n.v);
        }
    }

    // Every third norm-4 solution has both coordinates even: ((3 + √5)/2)³ = 9 + 4√5.
    let half = pell4_fundamental(5)?;
    println!("\nnorm-4 fundamental for d = 5 is ({}, {})", half.u, half.v);

    let orbits = general_pell_orbits(5, 4)?;
    println!("\nu² − 5v² = 4 splits into {} orbits under ({}, {}):", orbits.representatives.len(), orbits.unit.u, orbits.unit.v);
    for rep in &orbits.representatives {
        let next = pell_multiply(rep, &orbits.unit)?;
        println!("  ({}, {}) → ({}, {}) → …", rep.u, rep.v, next.u, next.v);
    }
    println!("solutions with |v| ≤ 10:");
    for s in orbits.solutions_below(&BigInt::from(10)) {
        println!("  ({}, {})", s.u, s.v);
    }

    let none = general_pell_orbits(20, -8)?;
    println!("\nu² − 20v² = −8 has {} solutions", if none.is_empty() { "no" } else { "some" });
    Ok(())
}
