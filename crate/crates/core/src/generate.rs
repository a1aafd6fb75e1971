//! Seeded random graph generators.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;

/// Pairings tried before giving up on a regular graph.
pub const MAX_PAIRING_ATTEMPTS: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("no {delta}-regular graph on {n} vertices exists")]
    Infeasible { n: usize, delta: usize },
    #[error("no simple pairing found after {0} attempts")]
    RejectionBudget(usize),
    #[error("edge probability {0} outside [0, 1]")]
    Probability(f64),
}

/// Samples a simple `delta`-regular graph with the pairing model, rejecting
/// pairings that produce loops or parallel edges.
pub fn gen_random_regular(n: usize, delta: usize, seed: u64) -> Result<Graph, GenerateError> {
    if delta >= n.max(1) || (n * delta) % 2 == 1 {
        return Err(GenerateError::Infeasible { n, delta });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(delta)).collect();
    let mut seen = HashSet::with_capacity(stubs.len() / 2);
    let mut edges = Vec::with_capacity(stubs.len() / 2);
    'attempt: for _ in 0..MAX_PAIRING_ATTEMPTS {
        stubs.shuffle(&mut rng);
        seen.clear();
        edges.clear();
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                continue 'attempt;
            }
            edges.push((a, b));
        }
        return Ok(Graph::from_edges(n, edges.iter().copied()).expect("pairing is simple"));
    }
    Err(GenerateError::RejectionBudget(MAX_PAIRING_ATTEMPTS))
}

/// Erdős–Rényi sample over pairs in lexicographic order. Isolated vertices
/// are dropped; each surviving vertex is labelled with its original 1-based
/// index.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GenerateError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::Probability(p));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    let mut keep = vec![false; n];
    for &(a, b) in &edges {
        keep[a] = true;
        keep[b] = true;
    }
    let mut remap = vec![usize::MAX; n];
    let mut labels = Vec::new();
    for (old, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
        remap[old] = labels.len();
        labels.push((old + 1).to_string());
    }
    let g = Graph::from_edges(labels.len(), edges.iter().map(|&(a, b)| (remap[a], remap[b])))
        .expect("sampled pairs are simple");
    Ok(g.with_labels(labels).expect("one label per kept vertex"))
}
