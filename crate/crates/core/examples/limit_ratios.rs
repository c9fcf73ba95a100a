//! Iterating the positive rotation drives `x/y` to a null direction of the form.
//!
//! ```sh
//! cargo run --example limit_ratios
//! ```

use k3aut::aut::build_h;
use k3aut::divisors::{null_directions, null_residual, orbit_ratio_sequence, DivisorClass};
use k3aut::lattice::make_lattice;
use num_traits::ToPrimitive;

fn main() -> k3aut::Result<()> {
    let l = make_lattice(1, 4, 1)?;
    let h = build_h(&l)?;
    let (plus, minus) = null_directions(&l);
    println!("null directions: {plus:.12}, {minus:.12}");
    let seq = orbit_ratio_sequence(&l, &DivisorClass::new(1, 0), &h, 12)?;
    let mut last_error = None;
    for p in &seq {
        let Some(r) = &p.ratio else {
            println!("{:>3}  {:>12}  {:>12}", p.n, p.class.x, p.class.y);
            continue;
        };
        let value = r.to_f64().unwrap_or(f64::NAN);
        let error = (value - minus).abs();
        let rate = last_error.map(|e: f64| error / e);
        println!(
            "{:>3}  {:>12}  {:>12}  {value:>16.12}  residual {:.3e}  rate {}",
            p.n,
            p.class.x,
            p.class.y,
            null_residual(&l, r).to_f64().unwrap_or(f64::NAN),
            rate.map_or("-".into(), |q| format!("{q:.6}"))
        );
        last_error = Some(error);
    }
    println!("expected rate (2 + √3)⁻² = {:.6}", (2.0 + 3f64.sqrt()).powi(-2));
    Ok(())
}
