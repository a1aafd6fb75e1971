//! Depth-first augmenting path search without blossom shrinking.
//!
//! The search state is a *trunk*: an alternating path `P` rooted at a free
//! vertex, plus a LIFO stack `S` of *sprouts*. A sprout is a free edge leaving
//! an even-position vertex of `P` that was not taken when that vertex was
//! appended; it is a detour kept in reserve.
//!
//! Each step either grows `P` by a (matched, free) edge pair or, when the
//! path runs into a dead end or back into itself, pops the newest sprout,
//! cuts `P` back to that sprout's root and continues through it. Vertices
//! are never stored in `P` twice: a revisit is reported as an odd or even
//! cycle event and immediately followed by a detour. The search fails once a
//! detour is needed and `S` is empty.
//!
//! Sprouts are considered in adjacency order. The first one is taken and the
//! rest are pushed in adjacency order, so they are popped in reverse.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Matching, VertexId};

const NOT_IN_PATH: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn of_position(pos: usize) -> Self {
        if pos % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathEntry {
    pub vertex: VertexId,
    pub parity: Parity,
}

/// A reserved free edge `root -> tip` with `root` at even parity in `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sprout {
    pub root: VertexId,
    pub tip: VertexId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventKind {
    Init,
    Grow,
    OddCycle,
    EvenCycle,
    DeadEnd,
    Detour,
    Augment,
    Fail,
    BudgetExceeded,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::Init => "init",
            EventKind::Grow => "grow",
            EventKind::OddCycle => "odd-cycle",
            EventKind::EvenCycle => "even-cycle",
            EventKind::DeadEnd => "dead-end",
            EventKind::Detour => "detour",
            EventKind::Augment => "augment",
            EventKind::Fail => "fail",
            EventKind::BudgetExceeded => "budget-exceeded",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchEvent {
    /// `P = [root, tip]`.
    Init { root: VertexId, tip: VertexId },
    /// Appended the even vertex `root` and the odd vertex `tip`.
    Grow { root: VertexId, tip: VertexId },
    /// `root -> revisit` closes a cycle; `revisit` sits at even parity in `P`.
    OddCycle { root: VertexId, revisit: VertexId },
    /// `root -> revisit` closes a cycle; `revisit` sits at odd parity in `P`.
    EvenCycle { root: VertexId, revisit: VertexId },
    /// The mate `at` of the tip of `P` has no free edges.
    DeadEnd { at: VertexId },
    /// Popped sprout `root -> tip` and continued through it.
    Detour { root: VertexId, tip: VertexId },
    /// `tip` is free; `P` is an augmenting path.
    Augment {
        root: VertexId,
        tip: VertexId,
        via_detour: bool,
    },
    /// A detour was needed but the sprout stack is empty.
    Fail,
    BudgetExceeded,
}

impl SearchEvent {
    pub fn kind(&self) -> EventKind {
        match self {
            SearchEvent::Init { .. } => EventKind::Init,
            SearchEvent::Grow { .. } => EventKind::Grow,
            SearchEvent::OddCycle { .. } => EventKind::OddCycle,
            SearchEvent::EvenCycle { .. } => EventKind::EvenCycle,
            SearchEvent::DeadEnd { .. } => EventKind::DeadEnd,
            SearchEvent::Detour { .. } => EventKind::Detour,
            SearchEvent::Augment { .. } => EventKind::Augment,
            SearchEvent::Fail => EventKind::Fail,
            SearchEvent::BudgetExceeded => EventKind::BudgetExceeded,
        }
    }

    /// Whether the next step must be a detour.
    pub fn needs_detour(&self) -> bool {
        matches!(
            self,
            SearchEvent::OddCycle { .. } | SearchEvent::EvenCycle { .. } | SearchEvent::DeadEnd { .. }
        )
    }

    pub fn is_terminal(&self) -> bool {
        matches!(
            self,
            SearchEvent::Augment { .. } | SearchEvent::Fail | SearchEvent::BudgetExceeded
        )
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("vertex {0} is matched; searches start at a free vertex")]
    RootNotFree(usize),
    #[error("vertex {0} is isolated")]
    IsolatedRoot(usize),
    #[error("budget must be positive")]
    ZeroBudget,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Take a sprout leading straight to a free vertex when one exists.
    pub prefer_free_tips: bool,
    /// Maximum number of events, including the initial one.
    pub budget: u64,
    pub trace: bool,
}

impl SearchConfig {
    pub fn for_graph(g: &Graph) -> Self {
        SearchConfig {
            prefer_free_tips: false,
            budget: default_budget(g),
            trace: false,
        }
    }
}

/// `4 (m + 1) (n + 1)` events.
pub fn default_budget(g: &Graph) -> u64 {
    4 * (g.m() as u64 + 1) * (g.n() as u64 + 1)
}

/// Free edges at `v`, in adjacency order.
pub fn sprout_set(g: &Graph, m: &Matching, v: VertexId) -> Vec<Sprout> {
    let mate = m.mate(v);
    g.neighbors(v)
        .iter()
        .filter(|&&u| Some(u) != mate)
        .map(|&tip| Sprout { root: v, tip })
        .collect()
}

/// The trunk `T = {P, S}`.
#[derive(Clone, Debug)]
pub struct Trunk {
    path: Vec<VertexId>,
    position: Vec<u32>,
    sprouts: Vec<Sprout>,
}

impl Trunk {
    pub fn new(n: usize) -> Self {
        Trunk {
            path: Vec::new(),
            position: vec![NOT_IN_PATH; n],
            sprouts: Vec::new(),
        }
    }

    pub fn path(&self) -> &[VertexId] {
        &self.path
    }

    pub fn entries(&self) -> impl Iterator<Item = PathEntry> + '_ {
        self.path.iter().enumerate().map(|(i, &vertex)| PathEntry {
            vertex,
            parity: Parity::of_position(i),
        })
    }

    /// Bottom to top.
    pub fn sprouts(&self) -> &[Sprout] {
        &self.sprouts
    }

    pub fn tip(&self) -> Option<VertexId> {
        self.path.last().copied()
    }

    #[inline]
    pub fn position(&self, v: VertexId) -> Option<usize> {
        match self.position[v.index()] {
            NOT_IN_PATH => None,
            p => Some(p as usize),
        }
    }

    pub fn parity(&self, v: VertexId) -> Option<Parity> {
        self.position(v).map(Parity::of_position)
    }

    fn clear(&mut self) {
        for &v in &self.path {
            self.position[v.index()] = NOT_IN_PATH;
        }
        self.path.clear();
        self.sprouts.clear();
    }

    fn append(&mut self, v: VertexId) {
        debug_assert!(self.position(v).is_none(), "vertex {v} appended twice");
        self.position[v.index()] = self.path.len() as u32;
        self.path.push(v);
    }

    fn truncate_after(&mut self, pos: usize) {
        for &v in &self.path[pos + 1..] {
            self.position[v.index()] = NOT_IN_PATH;
        }
        self.path.truncate(pos + 1);
    }

    /// Appends the even vertex `root`, picks one of its free edges (skipping
    /// `except`) and pushes the others as sprouts. Returns the chosen tip.
    fn branch(
        &mut self,
        g: &Graph,
        m: &Matching,
        root: VertexId,
        except: Option<VertexId>,
        prefer_free_tips: bool,
    ) -> VertexId {
        let candidates = g.neighbors(root).iter().copied().filter(|&u| Some(u) != except);
        let chosen = prefer_free_tips
            .then(|| {
                candidates
                    .clone()
                    .find(|&u| m.is_free(u) && self.position(u).is_none())
            })
            .flatten()
            .or_else(|| candidates.clone().next())
            .expect("root has a free edge");
        self.append(root);
        self.sprouts.extend(
            candidates
                .filter(|&u| u != chosen)
                .map(|tip| Sprout { root, tip }),
        );
        chosen
    }

    /// Event for continuing `P` from its even tip `root` along the free edge
    /// to `tip`; appends `tip` unless it closes a cycle.
    fn extend(&mut self, m: &Matching, root: VertexId, tip: VertexId, detour: bool) -> SearchEvent {
        match self.parity(tip) {
            Some(Parity::Even) => SearchEvent::OddCycle { root, revisit: tip },
            Some(Parity::Odd) => SearchEvent::EvenCycle { root, revisit: tip },
            None => {
                self.append(tip);
                if m.is_free(tip) {
                    SearchEvent::Augment {
                        root,
                        tip,
                        via_detour: detour,
                    }
                } else if detour {
                    SearchEvent::Detour { root, tip }
                } else {
                    SearchEvent::Grow { root, tip }
                }
            }
        }
    }

    /// Starts a search at the free vertex `v0`. A free neighbor of `v0`
    /// short-circuits to an augmenting path of one edge.
    pub fn init(
        &mut self,
        g: &Graph,
        m: &Matching,
        v0: VertexId,
        prefer_free_tips: bool,
    ) -> Result<SearchEvent, SearchError> {
        if v0.index() >= g.n() || self.position.len() != g.n() {
            return Err(SearchError::OutOfRange(v0.index()));
        }
        if !m.is_free(v0) {
            return Err(SearchError::RootNotFree(v0.index()));
        }
        if g.degree(v0) == 0 {
            return Err(SearchError::IsolatedRoot(v0.index()));
        }
        self.clear();
        if let Some(&u) = g.neighbors(v0).iter().find(|&&u| m.is_free(u)) {
            self.append(v0);
            self.append(u);
            return Ok(SearchEvent::Augment {
                root: v0,
                tip: u,
                via_detour: false,
            });
        }
        let tip = self.branch(g, m, v0, None, prefer_free_tips);
        self.append(tip);
        Ok(SearchEvent::Init { root: v0, tip })
    }

    /// Extends `P` from its odd, matched tip through the tip's mate.
    pub fn grow_step(&mut self, g: &Graph, m: &Matching, prefer_free_tips: bool) -> SearchEvent {
        let tip = self.tip().expect("grow_step on an empty trunk");
        debug_assert_eq!(self.parity(tip), Some(Parity::Odd));
        let w = m.mate(tip).expect("grow_step from a free tip");
        debug_assert!(self.position(w).is_none(), "mate {w} already in P");
        if g.degree(w) < 2 {
            return SearchEvent::DeadEnd { at: w };
        }
        let next = self.branch(g, m, w, Some(tip), prefer_free_tips);
        self.extend(m, w, next, false)
    }

    /// Pops the newest sprout, cuts `P` back to its root and continues
    /// through it.
    pub fn detour(&mut self, m: &Matching) -> SearchEvent {
        let Some(Sprout { root, tip }) = self.sprouts.pop() else {
            return SearchEvent::Fail;
        };
        let pos = self.position(root).expect("sprout root is in P");
        debug_assert_eq!(pos % 2, 0);
        self.truncate_after(pos);
        self.extend(m, root, tip, true)
    }

    /// Structural invariants of the trunk, for tests and debugging.
    pub fn check_invariants(&self, g: &Graph, m: &Matching) -> Result<(), String> {
        let Some(&first) = self.path.first() else {
            return Ok(());
        };
        if !m.is_free(first) {
            return Err(format!("root {first} is matched"));
        }
        for (i, &v) in self.path.iter().enumerate() {
            if self.position(v) != Some(i) {
                return Err(format!("position index of {v} is stale"));
            }
        }
        if self.position.iter().filter(|&&p| p != NOT_IN_PATH).count() != self.path.len() {
            return Err("position index has extra entries".into());
        }
        for (i, pair) in self.path.windows(2).enumerate() {
            if !g.has_edge(pair[0], pair[1]) {
                return Err(format!("{} and {} are not adjacent", pair[0], pair[1]));
            }
            let matched = m.mate(pair[0]) == Some(pair[1]);
            if matched != (i % 2 == 1) {
                return Err(format!("edge {}-{} breaks alternation", pair[0], pair[1]));
            }
        }
        let mut last = 0;
        for s in &self.sprouts {
            let pos = self
                .position(s.root)
                .ok_or_else(|| format!("sprout root {} not in P", s.root))?;
            if pos % 2 == 1 {
                return Err(format!("sprout root {} has odd parity", s.root));
            }
            if pos < last {
                return Err("sprout roots out of order".into());
            }
            if m.mate(s.root) == Some(s.tip) || !g.has_edge(s.root, s.tip) {
                return Err(format!("sprout {}->{} is not a free edge", s.root, s.tip));
            }
            last = pos;
        }
        Ok(())
    }
}

/// One row of a search trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub step: usize,
    pub event: SearchEvent,
    /// `P` after the event.
    pub path: Vec<VertexId>,
    /// For cycle events: the vertex that would have been appended.
    pub revisit: Option<VertexId>,
    /// `S` after the event, bottom to top.
    pub sprouts: Vec<Sprout>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    AugmentingPath(Vec<VertexId>),
    NoAugmentingPath,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub result: SearchResult,
    pub trace: Vec<TraceRecord>,
    pub steps_used: u64,
    pub max_path_len: usize,
    pub max_sprouts: usize,
}

/// Reusable search state; avoids reallocating the trunk per root.
#[derive(Clone, Debug)]
pub struct Searcher {
    trunk: Trunk,
}

impl Searcher {
    pub fn new(n: usize) -> Self {
        Searcher {
            trunk: Trunk::new(n),
        }
    }

    pub fn search(
        &mut self,
        g: &Graph,
        m: &Matching,
        v0: VertexId,
        cfg: &SearchConfig,
    ) -> Result<SearchOutcome, SearchError> {
        if cfg.budget == 0 {
            return Err(SearchError::ZeroBudget);
        }
        if self.trunk.position.len() != g.n() {
            self.trunk = Trunk::new(g.n());
        }
        let trunk = &mut self.trunk;
        let mut outcome = SearchOutcome {
            result: SearchResult::NoAugmentingPath,
            trace: Vec::new(),
            steps_used: 0,
            max_path_len: 0,
            max_sprouts: 0,
        };
        let mut event = trunk.init(g, m, v0, cfg.prefer_free_tips)?;
        loop {
            outcome.steps_used += 1;
            outcome.max_path_len = outcome.max_path_len.max(trunk.path.len());
            outcome.max_sprouts = outcome.max_sprouts.max(trunk.sprouts.len());
            if cfg.trace {
                outcome.trace.push(record(outcome.trace.len() + 1, event, trunk));
            }
            match event {
                SearchEvent::Augment { .. } => {
                    outcome.result = SearchResult::AugmentingPath(trunk.path.clone());
                    return Ok(outcome);
                }
                SearchEvent::Fail => {
                    outcome.result = SearchResult::NoAugmentingPath;
                    return Ok(outcome);
                }
                _ => {}
            }
            if outcome.steps_used >= cfg.budget {
                if cfg.trace {
                    outcome
                        .trace
                        .push(record(outcome.trace.len() + 1, SearchEvent::BudgetExceeded, trunk));
                }
                outcome.result = SearchResult::BudgetExceeded;
                return Ok(outcome);
            }
            event = if event.needs_detour() {
                trunk.detour(m)
            } else {
                trunk.grow_step(g, m, cfg.prefer_free_tips)
            };
        }
    }
}

fn record(step: usize, event: SearchEvent, trunk: &Trunk) -> TraceRecord {
    let revisit = match event {
        SearchEvent::OddCycle { revisit, .. } | SearchEvent::EvenCycle { revisit, .. } => Some(revisit),
        _ => None,
    };
    TraceRecord {
        step,
        event,
        path: trunk.path.clone(),
        revisit,
        sprouts: trunk.sprouts.clone(),
    }
}

/// Runs one search from `v0` until an augmenting path is found, the sprout
/// stack runs dry, or the budget is spent.
pub fn search(
    g: &Graph,
    m: &Matching,
    v0: VertexId,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    Searcher::new(g.n()).search(g, m, v0, cfg)
}
