//! Chart-by-chart verification of a toric resolution.
//!
//! Verifies the chart spanned by (1,1,2), (2,3,7), (2,3,8) for the
//! two-branch curve: both branches lift with orders (0,0,1) and attach to
//! the exceptional orbit at the distinct torus points 1/2 and 1.
//!
//! ```sh
//! cargo run --example chart_verification
//! ```

use torific::branch::{branches_from_equation, BranchData, PuiseuxParam};
use torific::fixtures::{cusp_plus_quartic, cusp_plus_quintic};
use torific::lattice::{ivec, ChartBasis};
use torific::mpoly::MPoly;
use torific::rat::rat_str;
use torific::resolution::{build_embedding_ideal, chart_check_plane};
use torific::series::{Series, Trunc};

fn main() -> torific::Result<()> {
    let mut curve = branches_from_equation("C1", &cusp_plus_quartic(), 64)?;
    curve.extend(branches_from_equation("C2", &cusp_plus_quintic(), 64)?);
    // sequence (X, Y, Y^2 - X^3 + X^4)
    let x = MPoly::var(2, 0);
    let y = MPoly::var(2, 1);
    let h = y.pow(2).sub(&x.pow(3)).add(&x.pow(4));
    let l1 = BranchData::from_param(
        "L1",
        PuiseuxParam::new(1, Series::zero("t", Trunc::Exact))?,
        Some(MPoly::var(2, 1)),
    )?;
    let l2 = branches_from_equation("L2", &h, 64)?.remove(0);
    let seq = vec![BranchData::x_axis(), l1, l2];
    let ideal = build_embedding_ideal(&seq, 2, &[2, 3, 8])?;

    let basis = ChartBasis::new(vec![ivec(&[1, 1, 2]), ivec(&[2, 3, 7]), ivec(&[2, 3, 8])])?;
    let report = chart_check_plane(&seq, &curve, &ideal.generators, &basis)?;
    println!("chart determinant: {}", report.det);
    for b in &report.branches {
        let leads: Vec<String> = b.u_leading.iter().map(rat_str).collect();
        println!(
            "branch {}: u-orders {:?}, leading ({})",
            b.name,
            b.u_orders,
            leads.join(", ")
        );
    }
    println!("attachments distinct: {}", report.attachments_distinct);
    println!("surface strict transforms:");
    let names: Vec<String> = (1..=3).map(|i| format!("U{}", i)).collect();
    for h in &report.surface_strict {
        println!("  {}", h.display(&names));
    }
    println!("curve resolved on this chart: {}", report.verdict);
    println!("surface locally coordinated:  {}", report.surface_certified);
    Ok(())
}
