//! DOT emission for trees and dual graphs.
//!
//! Node identifiers are stable FNV-1a hashes of the node labels and exact
//! exponent data, so regenerated files diff cleanly.

use crate::eggers::{DualGraph, EwTree, NodeKind};
use crate::rat::rat_str;

fn fnv1a(data: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in data.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn node_id(kind: &str, label: &str) -> String {
    format!("n{:016x}", fnv1a(&format!("{}:{}", kind, label)))
}

/// Render an Eggers-Wall tree: nodes carry `(e, i, c)` as exact fractions.
pub fn tree_to_dot(tree: &EwTree) -> String {
    let mut out = String::from("graph eggers_wall {\n  node [shape=circle];\n");
    let mut names = Vec::new();
    for id in tree.node_ids() {
        let n = tree.node(id);
        let label = match &n.kind {
            NodeKind::Root => "L0".to_string(),
            NodeKind::Leaf(b) => tree.branches()[*b].name.clone(),
            NodeKind::Interior => format!("e={}", tree.exponent(id)),
        };
        let full = format!(
            "{}\\ne={} i={} c={}",
            label,
            tree.exponent(id),
            tree.index(id),
            tree.contact(id)
        );
        let dot_id = node_id("t", &format!("{}|{}", label, tree.exponent(id)));
        let shape = match n.kind {
            NodeKind::Interior if n.marked => "doublecircle",
            NodeKind::Interior => "circle",
            _ => "box",
        };
        out.push_str(&format!(
            "  {} [label=\"{}\", shape={}];\n",
            dot_id, full, shape
        ));
        names.push(dot_id);
    }
    for id in tree.node_ids() {
        if let Some(p) = tree.node(id).parent {
            out.push_str(&format!(
                "  {} -- {} [label=\"{}\"];\n",
                names[p],
                names[id],
                tree.index(id)
            ));
        }
    }
    out.push_str("}\n");
    out
}

/// Render a dual graph: divisor vertices as circles, branch leaves as boxes.
pub fn dual_graph_to_dot(graph: &DualGraph, tree: &EwTree) -> String {
    let mut out = String::from("graph dual_graph {\n");
    let mut names = Vec::new();
    for v in 0..graph.vertex_count() {
        let label = match graph.divisor_node[v] {
            Some(node) => format!(
                "{}\\ne={}",
                graph.labels[v],
                rat_str(tree.exponent(node).finite().unwrap_or(&crate::rat::rat(0, 1)))
            ),
            None => graph.labels[v].clone(),
        };
        let dot_id = node_id("d", &format!("{}|{}", v, label));
        let shape = if graph.divisor_node[v].is_some() { "circle" } else { "box" };
        out.push_str(&format!("  {} [label=\"{}\", shape={}];\n", dot_id, label, shape));
        names.push(dot_id);
    }
    for (a, b) in &graph.edges {
        out.push_str(&format!("  {} -- {};\n", names[*a], names[*b]));
    }
    out.push_str("}\n");
    out
}
