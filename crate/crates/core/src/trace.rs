//! Tab-separated rendering of search traces.
//!
//! One line per event: `step<TAB>event<TAB>path<TAB>sprouts<TAB>remark`.
//! The path is written as `label parity` pairs; on cycle events the revisited
//! vertex is appended with parity 1 even though it is not stored in `P`.
//! Sprouts are listed bottom to top as `<root,tip>` joined by `;`, or `-`
//! when the stack is empty.

use std::fmt::Write as _;

use crate::graph::{Graph, VertexId};
use crate::search::{SearchEvent, Sprout, TraceRecord};

pub const HEADER: &str = "step\tevent\tpath\tsprouts\tremark";

pub fn render_path(g: &Graph, path: &[VertexId], revisit: Option<VertexId>) -> String {
    let mut out = String::new();
    for (i, &v) in path.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{} {}", g.label(v), i % 2).unwrap();
    }
    if let Some(v) = revisit {
        write!(out, " {} 1", g.label(v)).unwrap();
    }
    out
}

pub fn render_sprouts(g: &Graph, sprouts: &[Sprout]) -> String {
    if sprouts.is_empty() {
        return "-".to_string();
    }
    sprouts
        .iter()
        .map(|s| format!("<{},{}>", g.label(s.root), g.label(s.tip)))
        .collect::<Vec<_>>()
        .join(";")
}

fn remark(g: &Graph, rec: &TraceRecord) -> String {
    let l = |v: VertexId| g.label(v);
    match rec.event {
        SearchEvent::Init { root, tip } => format!("start at free vertex {}, take <{},{}>", l(root), l(root), l(tip)),
        SearchEvent::Grow { root, tip } => format!("grow <{},{}>", l(root), l(tip)),
        SearchEvent::OddCycle { root, revisit } => {
            format!("<{},{}> closes an odd cycle: {} is even in P", l(root), l(revisit), l(revisit))
        }
        SearchEvent::EvenCycle { root, revisit } => {
            format!("<{},{}> closes an even cycle: {} is odd in P", l(root), l(revisit), l(revisit))
        }
        SearchEvent::DeadEnd { at } => format!("dead end at {}", l(at)),
        SearchEvent::Detour { root, tip } => format!("detour through <{},{}>", l(root), l(tip)),
        SearchEvent::Augment { root, tip, via_detour } => {
            let path = rec.path.iter().map(|&v| l(v)).collect::<Vec<_>>().join(",");
            if via_detour {
                format!("detour through <{},{}>, augmenting path {}", l(root), l(tip), path)
            } else {
                format!("augmenting path {path}")
            }
        }
        SearchEvent::Fail => "sprout stack empty, no augmenting path".to_string(),
        SearchEvent::BudgetExceeded => "step budget exhausted".to_string(),
    }
}

pub fn render_record(g: &Graph, rec: &TraceRecord) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}",
        rec.step,
        rec.event.kind(),
        render_path(g, &rec.path, rec.revisit),
        render_sprouts(g, &rec.sprouts),
        remark(g, rec)
    )
}

/// Header plus one line per record, newline-terminated.
pub fn render_trace(g: &Graph, trace: &[TraceRecord]) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    for rec in trace {
        out.push_str(&render_record(g, rec));
        out.push('\n');
    }
    out
}

/// First differing line (1-based) after normalizing line endings, with the
/// expected and actual text of that line.
pub fn diff_golden(expected: &str, actual: &str) -> Option<(usize, String, String)> {
    let norm = |s: &str| s.replace("\r\n", "\n");
    let (e, a) = (norm(expected), norm(actual));
    if e == a {
        return None;
    }
    let mut el = e.split('\n');
    let mut al = a.split('\n');
    let mut line = 1;
    loop {
        match (el.next(), al.next()) {
            (Some(x), Some(y)) if x == y => line += 1,
            (x, y) => {
                return Some((
                    line,
                    x.unwrap_or("<eof>").to_string(),
                    y.unwrap_or("<eof>").to_string(),
                ))
            }
        }
    }
}
