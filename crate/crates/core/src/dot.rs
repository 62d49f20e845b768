//! Graphviz DOT rendering.
//!
//! State nodes are filled circles, input nodes open circles with an arrow to
//! their target. SSC nodes are drawn blue; components become clusters and
//! bridge edges are red and dashed.

use std::fmt::Write;

use crate::graph::StructuredNetwork;
use crate::pactus::PactusDecomposition;

pub enum Annotation<'a> {
    Plain,
    /// Dense indices of SSC nodes.
    SscNodes(&'a [usize]),
    Components(&'a PactusDecomposition),
}

const SSC_COLOR: &str = "#2b6cb0";

pub fn export_dot(net: &StructuredNetwork, annotation: &Annotation) -> String {
    let mut out = String::new();
    out.push_str("graph G {\n");
    out.push_str("  node [shape=circle, style=filled, fillcolor=black, fontcolor=white, fixedsize=true, width=0.4];\n");

    let state_line = |i: usize| -> String {
        let l = net.label(i);
        match annotation {
            Annotation::SscNodes(ssc) if ssc.contains(&i) => {
                format!("{l} [fillcolor=\"{SSC_COLOR}\"];")
            }
            _ => format!("{l};"),
        }
    };

    match annotation {
        Annotation::Components(dec) => {
            for comp in &dec.components {
                let _ = writeln!(out, "  subgraph cluster_{} {{", comp.index + 1);
                let _ = writeln!(out, "    label=\"G{} ({:?})\";", comp.index + 1, comp.kind);
                for i in comp.sorted_nodes() {
                    let _ = writeln!(out, "    {}", state_line(i));
                }
                out.push_str("  }\n");
            }
        }
        _ => {
            for i in 0..net.n() {
                let _ = writeln!(out, "  {}", state_line(i));
            }
        }
    }

    for a in net.inputs() {
        let _ = writeln!(out, "  u{} [fillcolor=white, fontcolor=black];", a.input);
    }

    for &(i, j) in net.edges() {
        let bridge = matches!(annotation, Annotation::Components(dec) if dec.component_of(i) != dec.component_of(j));
        let style = if bridge {
            " [color=red, style=dashed]"
        } else {
            ""
        };
        let _ = writeln!(out, "  {} -- {}{};", net.label(i), net.label(j), style);
    }
    for a in net.inputs() {
        let _ = writeln!(
            out,
            "  u{} -- {} [dir=forward];",
            a.input,
            net.label(a.target)
        );
    }
    out.push_str("}\n");
    out
}
