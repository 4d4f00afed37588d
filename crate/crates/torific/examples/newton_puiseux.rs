//! Newton-Puiseux parametrization of rational plane branches.
//!
//! Expands the branches of a two-component curve, validates each
//! parametrization by substituting it back into the equation, and performs
//! a defining-polynomial round trip.
//!
//! ```sh
//! cargo run --example newton_puiseux
//! ```

use torific::branch::{branches_from_equation, defining_poly_from_param};
use torific::fixtures::two_cusps_curve;

fn main() -> torific::Result<()> {
    let f = two_cusps_curve();
    println!("curve: {}", f.display(&["X".into(), "Y".into()]));
    let branches = branches_from_equation("C", &f, 32)?;
    for b in &branches {
        let p = b.param().unwrap();
        println!("branch {}: x = t^{}, y = {}", b.name, p.ramification(), p.zeta());
        let (xs, ys) = p.arc();
        let residual = f.substitute(&[xs, ys])?;
        println!("  residual of the curve equation: {}", residual);
        let g = defining_poly_from_param(p)?;
        println!(
            "  defining polynomial (round trip): {}",
            g.display(&["X".into(), "Y".into()])
        );
    }
    Ok(())
}
