//! The poset text format and Graphviz export of Hasse diagrams.
//!
//! ```text
//! # the fence on three points
//! element a b c
//! cover b a
//! cover b c
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{DistLattice, IntervalRef};
use crate::poset::Poset;

pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut labels: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let Some(directive) = words.next() else {
            continue;
        };
        match directive {
            "element" => {
                for w in words {
                    if labels.iter().any(|l| l == w) {
                        return Err(Error::DuplicateLabel(w.to_string()).at_line(line));
                    }
                    labels.push(w.to_string());
                }
            }
            "cover" => {
                let parts: Vec<&str> = words.collect();
                let [lo, hi] = parts[..] else {
                    return Err(Error::Parse {
                        line,
                        message: format!("`cover` takes two labels, got {}", parts.len()),
                    });
                };
                for w in [lo, hi] {
                    if !labels.iter().any(|l| l == w) {
                        return Err(Error::UnknownLabel(w.to_string()).at_line(line));
                    }
                }
                covers.push((lo.to_string(), hi.to_string()));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown directive `{other}`"),
                })
            }
        }
    }
    Poset::from_covers(&labels, &covers)
}

/// The elements line, then one `cover` line per cover relation, sorted by label.
pub fn write_poset(p: &Poset) -> String {
    let mut out = String::from("element");
    for l in p.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    let mut covers: Vec<(&str, &str)> = p
        .covers()
        .into_iter()
        .map(|(a, b)| (p.label(a), p.label(b)))
        .collect();
    covers.sort_unstable();
    for (a, b) in covers {
        let _ = writeln!(out, "cover {a} {b}");
    }
    out
}

/// What to emphasise in a DOT drawing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Highlight {
    /// One interval, drawn as a cluster.
    Interval(IntervalRef),
    /// An interval and its copy after an expansion, plus the covers joining them.
    Expansion { original: IntervalRef, copy: IntervalRef },
}

/// The Hasse diagram in DOT, drawn bottom to top with one rank per height.
pub fn export_dot(l: &DistLattice, highlight: Option<Highlight>) -> Result<String> {
    let name = |a: usize| format!("\"{}\"", l.bitstring(a));
    let mut out = String::from("digraph L {\n  rankdir=BT;\n  node [shape=box];\n");

    let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for a in 0..l.len() {
        ranks.entry(l.height(a)).or_default().push(a);
    }
    for members in ranks.values() {
        let ids: Vec<String> = members.iter().map(|&a| name(a)).collect();
        let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
    }

    let mut bridges: Vec<(usize, usize)> = Vec::new();
    let clusters: Vec<(&str, IntervalRef)> = match highlight {
        None => Vec::new(),
        Some(Highlight::Interval(k)) => vec![("K", k)],
        Some(Highlight::Expansion { original, copy }) => {
            let orig = l.interval_elements(original)?;
            let dup = l.interval_elements(copy)?;
            for &c in &dup {
                for &o in l.upper_covers(c) {
                    if orig.contains(&o) && l.height(o) == l.height(c) + 1 {
                        bridges.push((c, o));
                    }
                }
            }
            vec![("K", original), ("K_copy", copy)]
        }
    };
    for (label, k) in clusters {
        let _ = writeln!(out, "  subgraph cluster_{label} {{");
        let _ = writeln!(out, "    label=\"{label}\";");
        let _ = writeln!(out, "    style=filled;");
        let _ = writeln!(out, "    color=lightgrey;");
        for a in l.interval_elements(k)? {
            let _ = writeln!(out, "    {};", name(a));
        }
        out.push_str("  }\n");
    }

    for (a, b) in l.cover_pairs() {
        if bridges.contains(&(a, b)) {
            let _ = writeln!(out, "  {} -> {} [color=red, style=bold];", name(a), name(b));
        } else {
            let _ = writeln!(out, "  {} -> {};", name(a), name(b));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
