//! The local tropicalization fan and its minimal regularization.
//!
//! Computes the `w`-vectors of the marked tree points, assembles the fan
//! with its two-dimensional cones, regularizes it minimally, and prints the
//! ray dictionary (primitive integer vector, exact `w^P`, `i^+`).
//!
//! ```sh
//! cargo run --example tropicalization
//! ```

use torific::eggers::EwTree;
use torific::fixtures::five_branch_configuration;
use torific::rat::rat_str;
use torific::tropical::{build_trop_fan, regularize_trop_fan, RayLabel};

fn main() -> torific::Result<()> {
    let branches = five_branch_configuration();
    let mut tree = EwTree::build(&branches, &[])?;
    let fan = build_trop_fan(&tree)?;
    println!("fan rays:");
    for ray in &fan.rays {
        let w: Vec<String> = ray.w.iter().map(rat_str).collect();
        println!("  {:?} -> ({})", ray.label, w.join(", "));
    }
    println!("two-dimensional cones: {}", fan.cones.len());

    let reg = regularize_trop_fan(&mut tree)?;
    println!("regularized rays:");
    for ray in &reg.rays {
        let prim: Vec<String> = ray.primitive.iter().map(|x| x.to_string()).collect();
        match (&ray.w, ray.i_plus) {
            (Some(w), Some(ip)) => {
                let ws: Vec<String> = w.iter().map(rat_str).collect();
                println!("  ({})  =  {} * ({})", prim.join(", "), ip, ws.join(", "));
            }
            _ => {
                let which = match ray.label {
                    RayLabel::Axis(j) => format!("axis e{}", j),
                    RayLabel::Point(_) => "interior".into(),
                };
                println!("  ({})  [{}]", prim.join(", "), which);
            }
        }
    }
    Ok(())
}
