//! Graphviz output for Hasse diagrams.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use princon_core::{ColoredLattice, FiniteLattice};

/// DOT digraph drawn bottom to top. Nodes are listed in element order and
/// grouped into ranks by height; edges follow the cover list and carry their
/// colors when given. With a drawing, nodes get pinned positions.
pub fn emit_dot(lattice: &FiniteLattice, colors: Option<&[String]>) -> String {
    let mut out = String::from("digraph L {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n");
    let emb = lattice.embedding();
    for v in 0..lattice.len() {
        let _ = write!(out, "  \"{}\"", lattice.label(v));
        if let Some(e) = emb {
            let _ = write!(out, " [pos=\"{},{}!\"]", e.x(v), lattice.height(v));
        }
        out.push_str(";\n");
    }
    let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..lattice.len() {
        ranks.entry(lattice.height(v)).or_default().push(v);
    }
    for members in ranks.values() {
        out.push_str("  { rank=same;");
        for &v in members {
            let _ = write!(out, " \"{}\";", lattice.label(v));
        }
        out.push_str(" }\n");
    }
    for (e, &(a, b)) in lattice.covers().iter().enumerate() {
        let _ = write!(out, "  \"{}\" -> \"{}\"", lattice.label(a), lattice.label(b));
        if let Some(c) = colors.and_then(|c| c.get(e)) {
            let _ = write!(out, " [label=\"{c}\"]");
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

pub fn emit_colored_dot(colored: &ColoredLattice) -> String {
    emit_dot(colored.lattice(), Some(colored.colors()))
}
