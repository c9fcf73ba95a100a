//! Divisor classes of prescribed square, one per orbit of the positive rotation.
//!
//! ```sh
//! cargo run --example represent_classes
//! ```

use k3aut::divisors::{has_minus_two_class, has_zero_class, represent};
use k3aut::lattice::make_lattice;

fn main() -> k3aut::Result<()> {
    for (a, b, c) in [(1, 3, 1), (2, 6, 2), (1, 4, 1), (3, 5, -1)] {
        let l = make_lattice(a, b, c)?;
        match has_minus_two_class(&l)? {
            Some(cls) => println!("({a}, {b}, {c}): (−2)-class {cls}"),
            None => println!("({a}, {b}, {c}): no (−2)-class"),
        }
        for k in [1, 2, 3] {
            let classes = represent(&l, k)?;
            let list: Vec<String> = classes.iter().map(ToString::to_string).collect();
            println!("  square {}: [{}]", 2 * k, list.join(", "));
        }
    }
    let square = make_lattice(1, 3, 2)?;
    if let Some(w) = has_zero_class(&square) {
        println!("(1, 3, 2): d = {} is a square, isotropic class {w}", square.d());
    }
    Ok(())
}
