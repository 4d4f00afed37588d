//! Characteristic exponents and the semigroup of a plane branch.
//!
//! Runs Newton-Puiseux on a degree-8 branch equation and prints the
//! characteristic exponents, the minimal semigroup generators, the gcd
//! chain and the quotients.
//!
//! ```sh
//! cargo run --example semigroup
//! ```

use torific::branch::branches_from_equation;
use torific::fixtures::quartic_semigroup_curve;

fn main() -> torific::Result<()> {
    let f = quartic_semigroup_curve();
    println!("curve: {}", f.display(&["X".into(), "Y".into()]));
    let branches = branches_from_equation("C", &f, 64)?;
    for b in &branches {
        let sg = b.semigroup();
        println!("branch {}:", b.name);
        println!("  characteristic exponents: {:?}", b.char_exponents());
        println!("  semigroup generators:     {:?}", sg.generators());
        println!("  gcd chain:                {:?}", sg.gcd_chain());
        println!("  quotients n_j:            {:?}", sg.quotients());
        println!("  conductor:                {}", sg.conductor());
    }
    Ok(())
}
