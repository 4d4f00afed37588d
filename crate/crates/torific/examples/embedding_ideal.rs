//! Generators of the re-embedding ideal and their weighted initial forms.
//!
//! For the branch with semigroup (8, 12, 26, 53) and the adapted sequence,
//! prints the generators `H_2, H_3`, the adic expansion of the curve
//! equation, and the initial forms at the interior weight.
//!
//! ```sh
//! cargo run --example embedding_ideal
//! ```

use torific::branch::{branches_from_equation, BranchData, PuiseuxParam};
use torific::fixtures::quartic_semigroup_curve;
use torific::mpoly::MPoly;
use torific::rat::Rat;
use torific::resolution::{adic_expansion, build_embedding_ideal, initial_form_certificate};
use torific::series::{Series, Trunc};

fn main() -> torific::Result<()> {
    let x = MPoly::var(2, 0);
    let y = MPoly::var(2, 1);
    let y2x3 = y.pow(2).sub(&x.pow(3));
    let inner = y2x3.pow(2).sub(&x.pow(5).mul(&y));
    let l1 = BranchData::from_param(
        "L1",
        PuiseuxParam::new(1, Series::zero("t", Trunc::Exact))?,
        Some(MPoly::var(2, 1)),
    )?;
    let l2 = branches_from_equation("L2", &y2x3, 64)?.remove(0);
    let l3 = branches_from_equation("L3", &inner, 128)?.remove(0);
    let seq = vec![BranchData::x_axis(), l1, l2, l3];

    let names: Vec<String> = (0..4).map(|i| format!("X{}", i)).collect();
    let ideal = build_embedding_ideal(&seq, 3, &[8, 12, 26, 53])?;
    println!("generators:");
    for (k, h) in ideal.generators.iter().enumerate() {
        println!("  H{} = {}", k + 2, h.flatten_exact()?.display(&names));
    }

    let f = quartic_semigroup_curve();
    let base = vec![MPoly::var(2, 1), y2x3, inner];
    let exp = adic_expansion(&f, &base)?;
    println!("adic expansion of the curve equation has {} terms:", exp.terms.len());
    for (digits, coef) in &exp.terms {
        println!("  digits {:?} coefficient {:?}", digits, coef);
    }

    let w: Vec<Rat> = [8, 12, 26, 53]
        .iter()
        .map(|v| Rat::new((*v).into(), 8.into()))
        .collect();
    let cert = initial_form_certificate(&ideal, &w)?;
    println!("initial forms at the interior weight:");
    for line in &cert.lines {
        println!("  {}", line);
    }
    Ok(())
}
