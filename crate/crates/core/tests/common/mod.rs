#![allow(dead_code)]

use std::path::PathBuf;

use trunk_match::generate::{gen_gnp, gen_random_regular};
use trunk_match::Graph;

pub mod reference;

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub struct Instance {
    pub graph: Graph,
    pub source: String,
    pub seed: u64,
}

pub const GNP_PROBABILITIES: [f64; 3] = [0.2, 0.4, 0.6];

/// `per_cell` non-empty samples for every `n` in 2..=12 and every
/// probability. Samples where every vertex ends up isolated are skipped.
pub fn gnp_corpus(per_cell: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 2..=12 {
        for (pi, &p) in GNP_PROBABILITIES.iter().enumerate() {
            let mut kept = 0;
            let mut k = 0u64;
            while kept < per_cell {
                let seed = ((n as u64) << 40) ^ ((pi as u64) << 32) ^ k;
                k += 1;
                let g = gen_gnp(n, p, seed).expect("valid probability");
                if g.n() == 0 {
                    continue;
                }
                out.push(Instance {
                    graph: g,
                    source: format!("gnp n={n} p={p}"),
                    seed,
                });
                kept += 1;
            }
        }
    }
    out
}

/// Every feasible `(n, delta)` with `n <= 12` and `1 <= delta <= 5`.
pub fn regular_cells() -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for n in 2..=12usize {
        for delta in 1..=5usize {
            if delta < n && (n * delta) % 2 == 0 {
                cells.push((n, delta));
            }
        }
    }
    cells
}

/// At least `count` random regular graphs, spread over [`regular_cells`].
pub fn regular_corpus(count: usize) -> Vec<Instance> {
    let cells = regular_cells();
    let per_cell = count.div_ceil(cells.len());
    let mut out = Vec::new();
    for &(n, delta) in &cells {
        for t in 0..per_cell as u64 {
            let seed = 0x5eed_0000 + ((n as u64) << 16) + ((delta as u64) << 8) + t;
            out.push(Instance {
                graph: gen_random_regular(n, delta, seed).expect("feasible cell"),
                source: format!("regular n={n} delta={delta}"),
                seed,
            });
        }
    }
    out
}
