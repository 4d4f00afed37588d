//! The Eggers-Wall tree of a five-branch configuration.
//!
//! Builds the tree, prints the exponent/index/contact data of its marked
//! points, the renormalization pairs `(n_P, m_P)`, and emits DOT for the
//! tree and the dual graph of the minimal embedded resolution.
//!
//! ```sh
//! cargo run --example eggers_wall_tree
//! ```

use torific::dot::{dual_graph_to_dot, tree_to_dot};
use torific::eggers::{dual_graph, EwTree, NodeKind};
use torific::fixtures::five_branch_configuration;

fn main() -> torific::Result<()> {
    let branches = five_branch_configuration();
    let mut tree = EwTree::build(&branches, &[])?;
    println!("marked points (exponent, index, contact):");
    for id in tree.node_ids() {
        let n = tree.node(id);
        if n.marked && matches!(n.kind, NodeKind::Interior) {
            let r = tree.renorm(id)?;
            println!(
                "  e = {:>4}  i = {}  c = {:>6}  (n, m) = ({}, {})  i+ = {}",
                format!("{}", tree.exponent(id)),
                tree.index(id),
                format!("{}", tree.contact(id)),
                r.n,
                r.m,
                r.i_plus
            );
        }
    }
    let divisors = tree.divisors()?;
    println!("exceptional divisors of the minimal embedded resolution: {}", divisors.len());
    let graph = dual_graph(&mut tree)?;
    println!("dual graph ends: {:?}", graph.exceptional_ends());
    std::fs::write("eggers_wall_tree.dot", tree_to_dot(&tree)).ok();
    std::fs::write("dual_graph.dot", dual_graph_to_dot(&graph, &tree)).ok();
    println!("wrote eggers_wall_tree.dot and dual_graph.dot");
    Ok(())
}
