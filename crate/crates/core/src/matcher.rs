//! Maximum matching driver.
//!
//! Starting from an initial matching, every free vertex is used as a search
//! root once, in ascending index order. A root whose search fails is never
//! searched again, even after later augmentations: a vertex with no
//! augmenting path stays that way when other augmenting paths are flipped.

use thiserror::Error;

use crate::coloring::ColorConfiguration;
use crate::graph::{Graph, Matching, VertexId};
use crate::search::{default_budget, SearchConfig, SearchError, SearchOutcome, SearchResult, Searcher};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InitMode {
    Empty,
    /// Maximal matching from one scan of the adjacency lists.
    #[default]
    Greedy,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatcherConfig {
    pub init_mode: InitMode,
    pub prefer_free_tips: bool,
    /// Scales the per-search step budget `4 (m + 1) (n + 1)`.
    pub budget_factor: f64,
    pub trace: bool,
    /// Unused by the current deterministic modes.
    pub seed: u64,
    /// Replay every augmentation as a coloring walk and compare.
    pub cross_check: bool,
}

impl Default for MatcherConfig {
    fn default() -> Self {
        MatcherConfig {
            init_mode: InitMode::Greedy,
            prefer_free_tips: false,
            budget_factor: 1.0,
            trace: false,
            seed: 0,
            cross_check: cfg!(debug_assertions),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchResult {
    pub matching: Matching,
    pub initial_size: usize,
    pub augmentations: usize,
    pub failed_roots: Vec<VertexId>,
    /// Roots whose search ran out of budget. Also listed in `failed_roots`.
    pub budget_exceeded: Vec<VertexId>,
    pub searches: usize,
    pub total_steps: u64,
    /// Search roots in the order they were used.
    pub roots: Vec<VertexId>,
    pub max_path_len: usize,
    pub max_sprouts: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatcherError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has isolated vertices: {0:?}")]
    IsolatedVertices(Vec<usize>),
    #[error("budget factor must be positive, got {0}")]
    BudgetFactor(f64),
    #[error("initial matching is invalid: {0}")]
    InvalidMatching(#[from] crate::graph::MatchingError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("augmentation failed: {0}")]
    Augment(#[from] AugmentError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AugmentError {
    #[error("path must have an even number of vertices, at least 2 (got {0})")]
    Length(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("vertex {0} repeats")]
    Repeated(usize),
    #[error("endpoint {0} is matched")]
    EndpointMatched(usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("edge {0}-{1} breaks alternation")]
    NotAlternating(usize, usize),
    #[error("coloring walk disagrees with the flipped matching")]
    CrossCheck,
}

pub fn initial_matching(g: &Graph, mode: InitMode) -> Matching {
    let mut m = Matching::empty(g.n());
    if mode == InitMode::Greedy {
        for v in g.vertices() {
            if !m.is_free(v) {
                continue;
            }
            if let Some(&u) = g.neighbors(v).iter().find(|&&u| m.is_free(u)) {
                m.pair(v, u);
            }
        }
    }
    m
}

fn validate_path(g: &Graph, m: &Matching, path: &[VertexId]) -> Result<(), AugmentError> {
    if path.len() < 2 || path.len() % 2 == 1 {
        return Err(AugmentError::Length(path.len()));
    }
    if let Some(v) = path.iter().find(|v| v.index() >= g.n()) {
        return Err(AugmentError::OutOfRange(v.index()));
    }
    let mut sorted = path.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(AugmentError::Repeated(w[0].index()));
    }
    for end in [path[0], path[path.len() - 1]] {
        if !m.is_free(end) {
            return Err(AugmentError::EndpointMatched(end.index()));
        }
    }
    for (i, pair) in path.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if !g.has_edge(a, b) {
            return Err(AugmentError::NotAnEdge(a.index(), b.index()));
        }
        if (m.mate(a) == Some(b)) != (i % 2 == 1) {
            return Err(AugmentError::NotAlternating(a.index(), b.index()));
        }
    }
    Ok(())
}

fn flip(m: &mut Matching, path: &[VertexId]) {
    for pair in path[1..path.len() - 1].chunks_exact(2) {
        m.unpair(pair[0]);
    }
    for pair in path.chunks_exact(2) {
        m.pair(pair[0], pair[1]);
    }
}

fn cross_check(g: &Graph, before: &Matching, after: &Matching, path: &[VertexId]) -> Result<(), AugmentError> {
    // the coloring view needs every vertex to carry a red link
    let Ok(mut c) = ColorConfiguration::from_matching(g, before) else {
        return Ok(());
    };
    c.eliminate_along_path(path).map_err(|_| AugmentError::CrossCheck)?;
    if &c.to_matching() != after {
        return Err(AugmentError::CrossCheck);
    }
    Ok(())
}

/// Flips the augmenting path `path`, returning a matching one edge larger.
pub fn augment(g: &Graph, m: &Matching, path: &[VertexId]) -> Result<Matching, AugmentError> {
    validate_path(g, m, path)?;
    let mut out = m.clone();
    flip(&mut out, path);
    if cfg!(debug_assertions) {
        cross_check(g, m, &out, path)?;
    }
    Ok(out)
}

/// What the driver saw for one search, passed to observers before the
/// outcome is applied.
#[derive(Debug)]
pub struct SearchReport<'a> {
    pub root: VertexId,
    pub matching: &'a Matching,
    pub outcome: &'a SearchOutcome,
}

fn check_input(g: &Graph, cfg: &MatcherConfig) -> Result<(), MatcherError> {
    if g.n() == 0 {
        return Err(MatcherError::EmptyGraph);
    }
    let isolated = g.isolated_vertices();
    if !isolated.is_empty() {
        return Err(MatcherError::IsolatedVertices(
            isolated.into_iter().map(VertexId::index).collect(),
        ));
    }
    if !(cfg.budget_factor > 0.0 && cfg.budget_factor.is_finite()) {
        return Err(MatcherError::BudgetFactor(cfg.budget_factor));
    }
    Ok(())
}

pub fn maximum_matching(g: &Graph, cfg: &MatcherConfig) -> Result<MatchResult, MatcherError> {
    check_input(g, cfg)?;
    let initial = initial_matching(g, cfg.init_mode);
    maximum_matching_observed(g, initial, cfg, |_| {})
}

/// Runs the driver from an explicit starting matching.
pub fn maximum_matching_from(g: &Graph, initial: Matching, cfg: &MatcherConfig) -> Result<MatchResult, MatcherError> {
    maximum_matching_observed(g, initial, cfg, |_| {})
}

pub fn maximum_matching_observed<F>(
    g: &Graph,
    initial: Matching,
    cfg: &MatcherConfig,
    mut observer: F,
) -> Result<MatchResult, MatcherError>
where
    F: FnMut(&SearchReport<'_>),
{
    check_input(g, cfg)?;
    initial.validate(g)?;
    let budget = ((default_budget(g) as f64) * cfg.budget_factor).ceil().max(1.0) as u64;
    let search_cfg = SearchConfig {
        prefer_free_tips: cfg.prefer_free_tips,
        budget,
        trace: cfg.trace,
    };
    let mut result = MatchResult {
        initial_size: initial.len(),
        matching: initial,
        augmentations: 0,
        failed_roots: Vec::new(),
        budget_exceeded: Vec::new(),
        searches: 0,
        total_steps: 0,
        roots: Vec::new(),
        max_path_len: 0,
        max_sprouts: 0,
    };
    let mut searcher = Searcher::new(g.n());
    // each vertex is a root at most once: it leaves the free set on success
    // and is retired on failure
    for v0 in g.vertices() {
        if !result.matching.is_free(v0) {
            continue;
        }
        let outcome = searcher.search(g, &result.matching, v0, &search_cfg)?;
        observer(&SearchReport {
            root: v0,
            matching: &result.matching,
            outcome: &outcome,
        });
        result.searches += 1;
        result.roots.push(v0);
        result.total_steps += outcome.steps_used;
        result.max_path_len = result.max_path_len.max(outcome.max_path_len);
        result.max_sprouts = result.max_sprouts.max(outcome.max_sprouts);
        match outcome.result {
            SearchResult::AugmentingPath(path) => {
                validate_path(g, &result.matching, &path)?;
                let before = cfg.cross_check.then(|| result.matching.clone());
                flip(&mut result.matching, &path);
                if let Some(before) = before {
                    cross_check(g, &before, &result.matching, &path)?;
                }
                result.augmentations += 1;
            }
            SearchResult::NoAugmentingPath => result.failed_roots.push(v0),
            SearchResult::BudgetExceeded => {
                result.failed_roots.push(v0);
                result.budget_exceeded.push(v0);
            }
        }
    }
    Ok(result)
}
