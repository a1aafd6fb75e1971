//! Exhaustive reference routines for small graphs.
//!
//! Nothing here calls into the search or the matcher. Every routine has a
//! hard vertex-count guard and returns an error past it.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::dimacs::{write_dimacs, write_matching};
use crate::graph::{Graph, Matching, MatchingError, VertexId};

pub const NU_LIMIT: usize = 24;
pub const PATH_LIMIT: usize = 24;
pub const GE_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{n} vertices exceeds the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("vertex {0} is matched")]
    RootNotFree(usize),
    #[error(transparent)]
    InvalidMatching(#[from] MatchingError),
}

fn guard(g: &Graph, limit: usize) -> Result<(), OracleError> {
    if g.n() > limit {
        return Err(OracleError::TooLarge { n: g.n(), limit });
    }
    Ok(())
}

/// Memoized maximum matching over vertex subsets.
struct Subsets {
    adj: Vec<u32>,
    memo: HashMap<u32, u8>,
}

impl Subsets {
    fn new(g: &Graph) -> Self {
        let adj = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0u32, |acc, u| acc | 1 << u.index()))
            .collect();
        Subsets {
            adj,
            memo: HashMap::new(),
        }
    }

    fn full(&self) -> u32 {
        if self.adj.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.adj.len()) - 1
        }
    }

    /// Lowest vertex of `mask` with a neighbour in `mask`, dropping the
    /// isolated ones below it.
    fn pivot(&self, mut mask: u32) -> Option<(usize, u32)> {
        while mask != 0 {
            let v = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << v);
            if self.adj[v] & rest != 0 {
                return Some((v, rest));
            }
            mask = rest;
        }
        None
    }

    fn nu(&mut self, mask: u32) -> u8 {
        let Some((v, rest)) = self.pivot(mask) else {
            return 0;
        };
        if let Some(&k) = self.memo.get(&(rest | 1 << v)) {
            return k;
        }
        let bound = ((rest.count_ones() + 1) / 2) as u8;
        // leave v exposed
        let mut best = self.nu(rest);
        let mut nbrs = self.adj[v] & rest;
        while nbrs != 0 && best < bound {
            let u = nbrs.trailing_zeros();
            nbrs &= nbrs - 1;
            best = best.max(1 + self.nu(rest & !(1 << u)));
        }
        self.memo.insert(rest | 1 << v, best);
        best
    }

    fn witness(&mut self, mut mask: u32, m: &mut Matching) {
        while let Some((v, rest)) = self.pivot(mask) {
            let target = self.nu(mask);
            if self.nu(rest) == target {
                mask = rest;
                continue;
            }
            let mut nbrs = self.adj[v] & rest;
            loop {
                let u = nbrs.trailing_zeros();
                nbrs &= nbrs - 1;
                let next = rest & !(1 << u);
                if 1 + self.nu(next) == target {
                    m.pair(VertexId::new(v), VertexId::new(u as usize));
                    mask = next;
                    break;
                }
            }
        }
    }
}

/// Maximum matching size and one maximum matching.
pub fn nu_bruteforce(g: &Graph) -> Result<(usize, Matching), OracleError> {
    guard(g, NU_LIMIT)?;
    let mut s = Subsets::new(g);
    let full = s.full();
    let nu = s.nu(full) as usize;
    let mut witness = Matching::empty(g.n());
    s.witness(full, &mut witness);
    debug_assert_eq!(witness.len(), nu);
    Ok((nu, witness))
}

/// Depth-first enumeration of simple alternating paths from `v0`. Returns
/// the first augmenting path found.
pub fn has_augmenting_path_exhaustive(
    g: &Graph,
    m: &Matching,
    v0: VertexId,
) -> Result<Option<Vec<VertexId>>, OracleError> {
    guard(g, PATH_LIMIT)?;
    m.validate(g)?;
    if v0.index() >= g.n() {
        return Err(OracleError::OutOfRange(v0.index()));
    }
    if !m.is_free(v0) {
        return Err(OracleError::RootNotFree(v0.index()));
    }
    let mut on_path = vec![false; g.n()];
    let mut path = vec![v0];
    on_path[v0.index()] = true;
    Ok(extend(g, m, &mut path, &mut on_path).then_some(path))
}

// `path` ends at an even vertex; try every unmatched edge out of it
fn extend(g: &Graph, m: &Matching, path: &mut Vec<VertexId>, on_path: &mut [bool]) -> bool {
    let tip = *path.last().expect("non-empty path");
    for &u in g.neighbors(tip) {
        if on_path[u.index()] || m.mate(tip) == Some(u) {
            continue;
        }
        path.push(u);
        let Some(w) = m.mate(u) else {
            return true;
        };
        if !on_path[w.index()] {
            on_path[u.index()] = true;
            on_path[w.index()] = true;
            path.push(w);
            if extend(g, m, path, on_path) {
                return true;
            }
            path.pop();
            on_path[u.index()] = false;
            on_path[w.index()] = false;
        }
        path.pop();
    }
    false
}

pub fn verify_maximum(g: &Graph, m: &Matching) -> Result<bool, OracleError> {
    m.validate(g)?;
    let (nu, _) = nu_bruteforce(g)?;
    Ok(m.len() == nu)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GEDecomposition {
    pub d: Vec<VertexId>,
    pub a: Vec<VertexId>,
    pub c: Vec<VertexId>,
    pub nu: usize,
    /// A maximum matching of the whole graph.
    pub witness: Matching,
}

pub fn gallai_edmonds_bruteforce(g: &Graph) -> Result<GEDecomposition, OracleError> {
    guard(g, GE_LIMIT)?;
    let mut s = Subsets::new(g);
    let full = s.full();
    let nu = s.nu(full);
    let in_d: Vec<bool> = g
        .vertices()
        .map(|v| s.nu(full & !(1 << v.index())) == nu)
        .collect();
    let in_a: Vec<bool> = g
        .vertices()
        .map(|v| !in_d[v.index()] && g.neighbors(v).iter().any(|u| in_d[u.index()]))
        .collect();
    let mut witness = Matching::empty(g.n());
    s.witness(full, &mut witness);
    let pick = |f: &dyn Fn(usize) -> bool| g.vertices().filter(|v| f(v.index())).collect::<Vec<_>>();
    Ok(GEDecomposition {
        d: pick(&|i| in_d[i]),
        a: pick(&|i| in_a[i]),
        c: pick(&|i| !in_d[i] && !in_a[i]),
        nu: nu as usize,
        witness,
    })
}

fn components(g: &Graph, inside: &[bool]) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in g.vertices() {
        if !inside[s.index()] || seen[s.index()] {
            continue;
        }
        seen[s.index()] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &u in g.neighbors(comp[i]) {
                if inside[u.index()] && !seen[u.index()] {
                    seen[u.index()] = true;
                    comp.push(u);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

impl GEDecomposition {
    /// Checks the partition and the component structure: even components of
    /// C perfectly matched by the witness, odd factor-critical components of
    /// D each missing at most one witness edge, and A matched into D.
    pub fn check_structure(&self, g: &Graph) -> Result<(), String> {
        let mut class = vec![0u8; g.n()];
        for (tag, set) in [(1u8, &self.d), (2, &self.a), (3, &self.c)] {
            for v in set {
                if class[v.index()] != 0 {
                    return Err(format!("vertex {v} in two classes"));
                }
                class[v.index()] = tag;
            }
        }
        if let Some(i) = class.iter().position(|&c| c == 0) {
            return Err(format!("vertex {i} unclassified"));
        }
        for v in g.vertices() {
            let near_d = g.neighbors(v).iter().any(|u| class[u.index()] == 1);
            if (class[v.index()] == 2) != (class[v.index()] != 1 && near_d) {
                return Err(format!("A is not N(D) \\ D at vertex {v}"));
            }
        }
        if self.witness.len() != self.nu {
            return Err("witness is not maximum".into());
        }
        let mut s = Subsets::new(g);
        let in_c: Vec<bool> = class.iter().map(|&c| c == 3).collect();
        for comp in components(g, &in_c) {
            if comp.len() % 2 == 1 {
                return Err(format!("odd component in C at {}", comp[0]));
            }
            if let Some(v) = comp.iter().find(|&&v| self.witness.mate(v).map_or(true, |u| !in_c[u.index()])) {
                return Err(format!("witness leaves C vertex {v} unmatched inside C"));
            }
        }
        let in_d: Vec<bool> = class.iter().map(|&c| c == 1).collect();
        for comp in components(g, &in_d) {
            if comp.len() % 2 == 0 {
                return Err(format!("even component in D at {}", comp[0]));
            }
            let mask = comp.iter().fold(0u32, |acc, v| acc | 1 << v.index());
            let half = (comp.len() / 2) as u8;
            for &w in &comp {
                if s.nu(mask & !(1 << w.index())) != half {
                    return Err(format!("D component at {} not factor-critical at {w}", comp[0]));
                }
            }
            let inner = comp
                .iter()
                .filter(|&&v| self.witness.mate(v).is_some_and(|u| mask & 1 << u.index() != 0))
                .count();
            if inner != comp.len() - 1 {
                return Err(format!("witness not near-perfect on D component at {}", comp[0]));
            }
        }
        for &v in &self.a {
            if !self.witness.mate(v).is_some_and(|u| in_d[u.index()]) {
                return Err(format!("A vertex {v} not matched into D"));
            }
        }
        Ok(())
    }
}

/// Everything recorded alongside a failing instance.
#[derive(Clone, Debug)]
pub struct Counterexample<'a> {
    pub graph: &'a Graph,
    pub seed: u64,
    pub source: String,
    pub matcher_output: &'a Matching,
    pub nu: usize,
    pub witness: &'a Matching,
    pub note: String,
}

/// Writes `<hash>.dimacs` and `<hash>.report` into `dir`, returning the
/// graph path. The hash is over the DIMACS text.
pub fn write_counterexample(dir: &Path, cx: &Counterexample<'_>) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let dimacs = write_dimacs(cx.graph);
    let hash = hex::encode(&Sha256::digest(dimacs.as_bytes())[..8]);
    let graph_path = dir.join(format!("{hash}.dimacs"));
    fs::write(&graph_path, &dimacs)?;
    let mut report = String::new();
    let _ = writeln!(report, "source: {}", cx.source);
    let _ = writeln!(report, "seed: {}", cx.seed);
    let _ = writeln!(report, "matched: {}", cx.matcher_output.len());
    let _ = writeln!(report, "nu: {}", cx.nu);
    if !cx.note.is_empty() {
        let _ = writeln!(report, "note: {}", cx.note);
    }
    let _ = writeln!(report, "\n# matcher output");
    report.push_str(&write_matching(cx.matcher_output));
    let _ = writeln!(report, "\n# oracle witness");
    report.push_str(&write_matching(cx.witness));
    fs::write(dir.join(format!("{hash}.report")), report)?;
    Ok(graph_path)
}
