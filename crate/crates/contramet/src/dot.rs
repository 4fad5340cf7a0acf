//! Graphviz export.
//!
//! [`render_dot`] draws an instance as a functional graph: one cluster per
//! component, an edge from every point to its image. Tree roots are drawn
//! as double circles, the designated fixed point is filled. Chains are cut
//! to a window of coordinates around the origin wide enough to show every
//! graft anchor, with ellipsis nodes standing in for the infinite tails.

use std::fmt::Write as _;

use num::ToPrimitive;

use crate::space::{Component, Instance};

#[derive(Clone, Copy, Debug)]
pub struct DotOptions {
    /// How many coordinates to show on each side of the origin. Anchors
    /// outside the window widen it so every graft stays attached.
    pub chain_window: i64,
}

impl Default for DotOptions {
    fn default() -> Self {
        DotOptions { chain_window: 5 }
    }
}

fn coord_id(comp: usize, c: i64) -> String {
    if c < 0 {
        format!("c{comp}_m{}", -(c as i128))
    } else {
        format!("c{comp}_{c}")
    }
}

/// Renders `inst` in Graphviz dot syntax. Output is deterministic: nodes
/// and edges appear in component order, then node / ascending coordinate
/// order.
pub fn render_dot(inst: &Instance, opts: &DotOptions) -> String {
    let designated = inst.designated();
    let mut out = String::new();
    out.push_str("digraph instance {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle, fontsize=10];\n");
    for (ci, comp) in inst.components().iter().enumerate() {
        match comp {
            Component::Tree { parent } => {
                writeln!(out, "  subgraph cluster_{ci} {{").unwrap();
                writeln!(out, "    label=\"component {ci}: tree\";").unwrap();
                for (node, &p) in parent.iter().enumerate() {
                    let mut attrs = format!("label=\"{node}\"");
                    if p == node {
                        attrs.push_str(", shape=doublecircle");
                    }
                    if designated.component == ci && designated.node == node {
                        attrs.push_str(", style=filled, fillcolor=lightgrey");
                    }
                    writeln!(out, "    t{ci}_{node} [{attrs}];").unwrap();
                }
                for (node, &p) in parent.iter().enumerate() {
                    if p != node {
                        writeln!(out, "    t{ci}_{node} -> t{ci}_{p};").unwrap();
                    }
                }
                writeln!(out, "  }}").unwrap();
            }
            Component::Chain { two_sided, grafts } => {
                // Widen the window so every anchor is visible; anchors too
                // far out to fit an i64 would make the drawing useless
                // anyway, so we saturate.
                let mut hi = opts.chain_window.max(1);
                let mut lo = if *two_sided { -hi } else { 0 };
                for g in grafts {
                    let a = g.anchor.to_i64().unwrap_or(i64::MAX - 1);
                    lo = lo.min(a);
                    hi = hi.max(a + 1);
                }
                writeln!(out, "  subgraph cluster_{ci} {{").unwrap();
                let flavor = if *two_sided { "two-sided chain" } else { "one-sided chain" };
                writeln!(out, "    label=\"component {ci}: {flavor}\";").unwrap();
                if *two_sided {
                    writeln!(out, "    c{ci}_tail_lo [label=\"…\", shape=none];").unwrap();
                }
                for c in lo..=hi {
                    writeln!(out, "    {} [label=\"{c}\", shape=box];", coord_id(ci, c)).unwrap();
                }
                writeln!(out, "    c{ci}_tail_hi [label=\"…\", shape=none];").unwrap();
                if *two_sided {
                    writeln!(out, "    c{ci}_tail_lo -> {};", coord_id(ci, lo)).unwrap();
                }
                for c in lo..hi {
                    writeln!(out, "    {} -> {};", coord_id(ci, c), coord_id(ci, c + 1)).unwrap();
                }
                writeln!(out, "    {} -> c{ci}_tail_hi;", coord_id(ci, hi)).unwrap();
                for (gi, g) in grafts.iter().enumerate() {
                    for node in 0..g.parent.len() {
                        writeln!(out, "    g{ci}_{gi}_{node} [label=\"g{gi}.{node}\"];").unwrap();
                    }
                    let anchor = g.anchor.to_i64().unwrap_or(i64::MAX - 1);
                    writeln!(out, "    g{ci}_{gi}_0 -> {};", coord_id(ci, anchor)).unwrap();
                    for (node, &p) in g.parent.iter().enumerate().skip(1) {
                        writeln!(out, "    g{ci}_{gi}_{node} -> g{ci}_{gi}_{p};").unwrap();
                    }
                }
                writeln!(out, "  }}").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
