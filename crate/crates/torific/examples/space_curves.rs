//! Space-curve resolution: torus branches and coordinate-subspace branches.
//!
//! Resolves the pair of arcs `(t^4, t^6, t^13)` and `(t^2, t^3, 0)`: the
//! first lies in the torus and is handled through its primitive order ray,
//! the second lies in the plane `X_3 = 0` and is certified through the Star
//! fan of the vanishing-coordinate cone; the `theta` cones of both branches
//! assemble into a fan with an explicit regular-candidate refinement.
//!
//! ```sh
//! cargo run --example space_curves
//! ```

use torific::rat::rat;
use torific::resolution::{space_curve_resolve, SpaceCurveInput};
use torific::series::{Series, Trunc};

fn mono(e: i64) -> Series {
    Series::monomial("t", e, rat(1, 1), Trunc::Exact)
}

fn main() -> torific::Result<()> {
    let input = SpaceCurveInput::new(vec![
        vec![mono(4), mono(6), mono(13)],
        vec![mono(2), mono(3), Series::zero("t", Trunc::Exact)],
    ])?;
    let report = space_curve_resolve(&input, false)?;
    for b in &report.branches {
        println!(
            "branch {}: zero coords {:?}, reduced ray {:?}, chart orders {:?}",
            b.index, b.zero_coords, b.reduced_ray, b.u_orders
        );
    }
    for (branch, rays) in &report.star_rays {
        println!("star fan for branch {}: rays {:?}", branch, rays);
    }
    if let Some(tf) = &report.theta_fan {
        println!("theta cones:");
        for t in &tf.thetas {
            println!("  {:?}", t.gens());
        }
        println!(
            "refinement fan has {} maximal cones",
            tf.refinement.maximal_cones().len()
        );
    }
    println!("resolved: {}", report.resolved);
    Ok(())
}
