//! Named example graphs with their starting matchings.
//!
//! The `fig*` graphs are the worked examples used for golden traces. Edge
//! order is significant: each vertex's adjacency order decides which sprout
//! is taken first, and the `_alt` variants only reorder edges to force the
//! other branch.

use thiserror::Error;

use crate::graph::{Graph, Matching};

pub const FIXTURE_NAMES: &[&str] = &[
    "fig4", "fig4_alt", "fig5", "fig5_alt", "fig8", "sylvester", "petersen",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown fixture `{0}`")]
pub struct UnknownFixture(pub String);

struct Spec {
    labels: &'static [&'static str],
    edges: &'static [(&'static str, &'static str)],
    matching: &'static [(&'static str, &'static str)],
}

const FIG4_LABELS: &[&str] = &["v0", "v1", "va", "vb", "vc", "vd", "ve", "vx", "vy", "vz"];
const FIG4_MATCHING: &[(&str, &str)] = &[("v1", "va"), ("vb", "vc"), ("vd", "ve"), ("vy", "vz")];

// vd: [ve, vx, vc], so the augmenting sprout <vd,vx> is taken first.
const FIG4: Spec = Spec {
    labels: FIG4_LABELS,
    edges: &[
        ("v0", "v1"),
        ("v1", "va"),
        ("va", "vb"),
        ("va", "ve"),
        ("vb", "vc"),
        ("vd", "ve"),
        ("vd", "vx"),
        ("vc", "vd"),
        ("vc", "vy"),
        ("vy", "vz"),
    ],
    matching: FIG4_MATCHING,
};

// vd: [ve, vc, vx], so the path runs back into the odd cycle first.
const FIG4_ALT: Spec = Spec {
    labels: FIG4_LABELS,
    edges: &[
        ("v0", "v1"),
        ("v1", "va"),
        ("va", "vb"),
        ("va", "ve"),
        ("vb", "vc"),
        ("vd", "ve"),
        ("vc", "vd"),
        ("vd", "vx"),
        ("vc", "vy"),
        ("vy", "vz"),
    ],
    matching: FIG4_MATCHING,
};

const FIG5_LABELS: &[&str] = &["v0", "v1", "v2", "va", "vb", "vc", "vd", "vx", "vy", "vz"];
const FIG5_MATCHING: &[(&str, &str)] = &[("v1", "v2"), ("va", "vb"), ("vc", "vd"), ("vy", "vz")];

// vb: [va, vc, vy], vd: [vc, va, vx]
const FIG5: Spec = Spec {
    labels: FIG5_LABELS,
    edges: &[
        ("v0", "v1"),
        ("v1", "v2"),
        ("v2", "va"),
        ("va", "vb"),
        ("vb", "vc"),
        ("vb", "vy"),
        ("vc", "vd"),
        ("va", "vd"),
        ("vd", "vx"),
        ("vy", "vz"),
    ],
    matching: FIG5_MATCHING,
};

// vb: [va, vy, vc], vd: [vc, vx, va]
const FIG5_ALT: Spec = Spec {
    labels: FIG5_LABELS,
    edges: &[
        ("v0", "v1"),
        ("v1", "v2"),
        ("v2", "va"),
        ("va", "vb"),
        ("vb", "vy"),
        ("vb", "vc"),
        ("vc", "vd"),
        ("vd", "vx"),
        ("va", "vd"),
        ("vy", "vz"),
    ],
    matching: FIG5_MATCHING,
};

// va: [v1, vb, ve], vb: [vc, va, vh], vc: [vb, vf, vg], vf: [vd, vc, vg]
const FIG8: Spec = Spec {
    labels: &["v0", "v1", "va", "vb", "vc", "vd", "ve", "vf", "vg", "vh"],
    edges: &[
        ("v0", "v1"),
        ("v1", "va"),
        ("vb", "vc"),
        ("va", "vb"),
        ("va", "ve"),
        ("vb", "vh"),
        ("vd", "ve"),
        ("vd", "vf"),
        ("vc", "vf"),
        ("vc", "vg"),
        ("vf", "vg"),
    ],
    matching: &[("v1", "va"), ("vb", "vc"), ("vd", "ve"), ("vf", "vg")],
};

fn build(spec: &Spec) -> (Graph, Matching) {
    let index = |name: &str| {
        spec.labels
            .iter()
            .position(|l| *l == name)
            .unwrap_or_else(|| panic!("fixture label {name}"))
    };
    let g = Graph::from_edges(
        spec.labels.len(),
        spec.edges.iter().map(|&(a, b)| (index(a), index(b))),
    )
    .expect("fixture graph is simple")
    .with_labels(spec.labels.iter().map(|s| s.to_string()).collect())
    .expect("fixture labels");
    let m = Matching::from_pairs(&g, spec.matching.iter().map(|&(a, b)| (index(a), index(b))))
        .expect("fixture matching is valid");
    (g, m)
}

/// Three 5-cycles, each with one vertex joined to a shared cut vertex `va`.
fn sylvester() -> (Graph, Matching) {
    let mut labels = vec!["va".to_string()];
    let mut edges = Vec::new();
    for part in 1..=3 {
        let base = labels.len();
        for j in 0..5 {
            labels.push(format!("g{part}{j}"));
        }
        edges.push((0, base));
        for j in 0..5 {
            edges.push((base + j, base + (j + 1) % 5));
        }
    }
    let g = Graph::from_edges(labels.len(), edges)
        .expect("sylvester graph is simple")
        .with_labels(labels)
        .expect("sylvester labels");
    let m = Matching::empty(g.n());
    (g, m)
}

/// Outer 5-cycle, inner pentagram, five spokes.
fn petersen() -> (Graph, Matching) {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    let g = Graph::from_edges(10, edges).expect("petersen graph is simple");
    let m = Matching::empty(10);
    (g, m)
}

pub fn fixture(name: &str) -> Result<(Graph, Matching), UnknownFixture> {
    Ok(match name {
        "fig4" => build(&FIG4),
        "fig4_alt" => build(&FIG4_ALT),
        "fig5" => build(&FIG5),
        "fig5_alt" => build(&FIG5_ALT),
        "fig8" => build(&FIG8),
        "sylvester" => sylvester(),
        "petersen" => petersen(),
        other => return Err(UnknownFixture(other.to_string())),
    })
}
