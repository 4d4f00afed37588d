//! Generic maximal contact sequence with its genericity certificate.
//!
//! Runs the slot search on the two-branch curve whose deep curvetta family
//! is `Y^2 - X^3 + a X^4`, printing the excluded coefficients and the
//! certificate table (predicted divisorial values versus intersection
//! numbers).
//!
//! ```sh
//! cargo run --example contact_sequence
//! ```

use torific::contact::maximal_contact_sequence;
use torific::fixtures::two_cusps_branches;
use torific::rat::rat_str;

fn main() -> torific::Result<()> {
    let curve = two_cusps_branches()?;
    let analysis = maximal_contact_sequence(&curve)?;
    println!("sequence:");
    for b in &analysis.sequence {
        println!(
            "  {} = {}",
            b.name,
            b.equation_or_compute()?.display(&["X".into(), "Y".into()])
        );
    }
    println!("slots:");
    for slot in &analysis.slots {
        println!(
            "  {} -> chosen a = {}",
            slot.description,
            slot.chosen.as_ref().map(rat_str).unwrap_or_default()
        );
        for (a, why) in &slot.excluded {
            println!("    excluded a = {}: {}", rat_str(a), why);
        }
    }
    println!("certificate:");
    for e in &analysis.certificate.entries {
        println!(
            "  ({} . {}) = {:?}   predicted {}   {}",
            e.li,
            e.cj,
            e.actual,
            e.predicted,
            if e.pass { "ok" } else { "FAIL" }
        );
    }
    Ok(())
}
