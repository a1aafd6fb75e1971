//! Two-link edge coloring view of a matching.
//!
//! Every edge is split into two links, one per endpoint. A configuration is
//! consistent when each vertex has exactly one red link; it is stored as the
//! neighbor each vertex points its red link at. Edges red at both ends form
//! the matching, edges red at exactly one end are *variables*, and the number
//! of variables always equals the number of exposed vertices.
//!
//! Free vertices start out pointing at their lowest-index neighbor, so the
//! configuration built from a matching is deterministic.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, Graph, Matching, MatchingError, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkColor {
    Red,
    Blue,
}

impl LinkColor {
    fn letter(self) -> char {
        match self {
            LinkColor::Red => 'r',
            LinkColor::Blue => 'b',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    /// Exactly one red link.
    Variable,
    RedConstant,
    BlueConstant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub edge: Edge,
    pub color_at_u: LinkColor,
    pub color_at_v: LinkColor,
}

impl EdgeColoring {
    pub fn class(&self) -> EdgeClass {
        match (self.color_at_u, self.color_at_v) {
            (LinkColor::Red, LinkColor::Red) => EdgeClass::RedConstant,
            (LinkColor::Blue, LinkColor::Blue) => EdgeClass::BlueConstant,
            _ => EdgeClass::Variable,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    InvalidMatching(#[from] MatchingError),
    #[error("vertex {0} has no incident edge to carry a red link")]
    IsolatedVertex(usize),
    #[error("red link of vertex {0} does not point at a neighbor")]
    Inconsistent(usize),
    #[error("edges are not both incident to pivot {0}")]
    NotAdjacentAtPivot(usize),
    #[error("exchange at pivot {0} is ineffective")]
    Ineffective(usize),
    #[error("free vertex {0} has only free neighbours pointing back at it")]
    Unrepresentable(usize),
    #[error("not an augmenting path: {0}")]
    NotAugmenting(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorConfiguration<'g> {
    graph: &'g Graph,
    red_target: Vec<VertexId>,
}

impl<'g> ColorConfiguration<'g> {
    /// Matched vertices point red at their mate. A free vertex points at its
    /// lowest-index neighbour, skipping free neighbours that already point
    /// back at it, so that no red-red edge appears outside `m`.
    pub fn from_matching(g: &'g Graph, m: &Matching) -> Result<Self, ColoringError> {
        m.validate(g)?;
        let mut red_target: Vec<VertexId> = Vec::with_capacity(g.n());
        for v in g.vertices() {
            let target = match m.mate(v) {
                Some(mate) => mate,
                None => {
                    if g.degree(v) == 0 {
                        return Err(ColoringError::IsolatedVertex(v.index()));
                    }
                    g.neighbors(v)
                        .iter()
                        .copied()
                        .filter(|&u| !(u < v && m.is_free(u) && red_target[u.index()] == v))
                        .min()
                        .ok_or(ColoringError::Unrepresentable(v.index()))?
                }
            };
            red_target.push(target);
        }
        Ok(ColorConfiguration {
            graph: g,
            red_target,
        })
    }

    /// Builds a configuration from explicit red-link targets.
    pub fn from_red_targets(g: &'g Graph, red_target: Vec<VertexId>) -> Result<Self, ColoringError> {
        let c = ColorConfiguration {
            graph: g,
            red_target,
        };
        c.check_consistent()?;
        Ok(c)
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn red_target(&self, v: VertexId) -> VertexId {
        self.red_target[v.index()]
    }

    /// One red link per vertex, each pointing along an existing edge.
    pub fn check_consistent(&self) -> Result<(), ColoringError> {
        if self.red_target.len() != self.graph.n() {
            return Err(ColoringError::Inconsistent(self.red_target.len()));
        }
        for v in self.graph.vertices() {
            if !self.graph.has_edge(v, self.red_target(v)) {
                return Err(ColoringError::Inconsistent(v.index()));
            }
        }
        Ok(())
    }

    /// Color of `at`'s link on the edge toward `toward`.
    pub fn link_color(&self, at: VertexId, toward: VertexId) -> LinkColor {
        if self.red_target(at) == toward {
            LinkColor::Red
        } else {
            LinkColor::Blue
        }
    }

    pub fn edge_coloring(&self, e: Edge) -> EdgeColoring {
        EdgeColoring {
            edge: e,
            color_at_u: self.link_color(e.u(), e.v()),
            color_at_v: self.link_color(e.v(), e.u()),
        }
    }

    pub fn is_variable(&self, e: Edge) -> bool {
        self.edge_coloring(e).class() == EdgeClass::Variable
    }

    pub fn variable_count(&self) -> usize {
        self.graph
            .edges()
            .iter()
            .filter(|&&e| self.is_variable(e))
            .count()
    }

    fn is_matched(&self, v: VertexId) -> bool {
        self.red_target(self.red_target(v)) == v
    }

    /// Vertices whose red link is not returned.
    pub fn exposed(&self) -> Vec<VertexId> {
        self.graph.vertices().filter(|&v| !self.is_matched(v)).collect()
    }

    pub fn to_matching(&self) -> Matching {
        let mut m = Matching::empty(self.graph.n());
        for v in self.graph.vertices() {
            let w = self.red_target(v);
            if v < w && self.is_matched(v) {
                m.pair(v, w);
            }
        }
        m
    }

    /// Swaps the colors of the links of `e1` and `e2` at `pivot`. Far-end
    /// links keep their colors. Rejected unless exactly one of the two links
    /// at the pivot is red and the variable count of the two edges does not
    /// grow.
    pub fn color_exchange(&mut self, pivot: VertexId, e1: Edge, e2: Edge) -> Result<(), ColoringError> {
        let g = self.graph;
        if e1 == e2 || !e1.contains(pivot) || !e2.contains(pivot) {
            return Err(ColoringError::NotAdjacentAtPivot(pivot.index()));
        }
        let (a, b) = (e1.other(pivot), e2.other(pivot));
        if !g.has_edge(pivot, a) || !g.has_edge(pivot, b) {
            return Err(ColoringError::NotAdjacentAtPivot(pivot.index()));
        }
        let red = self.red_target(pivot);
        let swapped = if red == a {
            b
        } else if red == b {
            a
        } else {
            return Err(ColoringError::Ineffective(pivot.index()));
        };
        let before = self.is_variable(e1) as u8 + self.is_variable(e2) as u8;
        self.red_target[pivot.index()] = swapped;
        let after = self.is_variable(e1) as u8 + self.is_variable(e2) as u8;
        if after > before {
            self.red_target[pivot.index()] = red;
            return Err(ColoringError::Ineffective(pivot.index()));
        }
        Ok(())
    }

    /// Walks the variable at one end of the augmenting path `path` to the
    /// other end with color exchanges, cancelling both. The derived matching
    /// afterwards is the old one with `path` flipped. Returns the number of
    /// exchanges applied.
    pub fn eliminate_along_path(&mut self, path: &[VertexId]) -> Result<usize, ColoringError> {
        self.eliminate_along_path_with(path, |_| {})
    }

    /// Same as [`eliminate_along_path`](Self::eliminate_along_path), calling
    /// `after_exchange` with the configuration after every exchange.
    pub fn eliminate_along_path_with<F>(&mut self, path: &[VertexId], mut after_exchange: F) -> Result<usize, ColoringError>
    where
        F: FnMut(&Self),
    {
        self.check_augmenting(path)?;
        let edge = |a: VertexId, b: VertexId| Edge::new(a, b).expect("distinct path vertices");
        let mut exchanges = 0;
        let mut step = |c: &mut Self, pivot: VertexId, from: VertexId, to: VertexId| {
            c.color_exchange(pivot, edge(pivot, from), edge(pivot, to))?;
            debug_assert!(c.check_consistent().is_ok());
            after_exchange(c);
            exchanges += 1;
            Ok::<_, ColoringError>(())
        };

        let first = path[0];
        if self.red_target(first) != path[1] {
            let t = self.red_target(first);
            step(self, first, t, path[1])?;
        }
        for i in 1..path.len() - 1 {
            // the pivot's red link points forward on odd steps and back on even ones
            let (from, to) = if i % 2 == 1 {
                (path[i + 1], path[i - 1])
            } else {
                (path[i - 1], path[i + 1])
            };
            step(self, path[i], from, to)?;
        }
        let last = path[path.len() - 1];
        let before_last = path[path.len() - 2];
        if self.red_target(last) != before_last {
            let t = self.red_target(last);
            step(self, last, t, before_last)?;
        }
        Ok(exchanges)
    }

    fn check_augmenting(&self, path: &[VertexId]) -> Result<(), ColoringError> {
        let g = self.graph;
        if path.len() < 2 || path.len() % 2 == 1 {
            return Err(ColoringError::NotAugmenting("vertex count must be even and at least 2"));
        }
        if path.iter().any(|v| v.index() >= g.n()) {
            return Err(ColoringError::NotAugmenting("vertex out of range"));
        }
        let mut seen = vec![false; g.n()];
        for &v in path {
            if std::mem::replace(&mut seen[v.index()], true) {
                return Err(ColoringError::NotAugmenting("repeated vertex"));
            }
        }
        if self.is_matched(path[0]) || self.is_matched(path[path.len() - 1]) {
            return Err(ColoringError::NotAugmenting("endpoint is not exposed"));
        }
        for (i, pair) in path.windows(2).enumerate() {
            if !g.has_edge(pair[0], pair[1]) {
                return Err(ColoringError::NotAugmenting("consecutive vertices not adjacent"));
            }
            let matched = self.red_target(pair[0]) == pair[1] && self.red_target(pair[1]) == pair[0];
            if matched != (i % 2 == 1) {
                return Err(ColoringError::NotAugmenting("edges do not alternate"));
            }
        }
        Ok(())
    }

    /// One line per edge: `u v <color at u><color at v>`, 1-based.
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        for &e in self.graph.edges() {
            let c = self.edge_coloring(e);
            writeln!(
                out,
                "{} {} {}{}",
                e.u().index() + 1,
                e.v().index() + 1,
                c.color_at_u.letter(),
                c.color_at_v.letter()
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    fn vid(i: usize) -> VertexId {
        VertexId::new(i)
    }

    fn edge(a: usize, b: usize) -> Edge {
        Edge::new(vid(a), vid(b)).unwrap()
    }

    #[test]
    fn k2_configuration() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let m = Matching::from_pairs(&g, [(0, 1)]).unwrap();
        let c = ColorConfiguration::from_matching(&g, &m).unwrap();
        assert_eq!(c.red_target, vec![vid(1), vid(0)]);
        assert_eq!(c.to_matching(), m);
        assert!(c.exposed().is_empty());
        assert_eq!(c.debug_dump(), "1 2 rr\n");
    }

    #[test]
    fn path3_has_one_variable() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let m = Matching::from_pairs(&g, [(0, 1)]).unwrap();
        let c = ColorConfiguration::from_matching(&g, &m).unwrap();
        assert_eq!(c.red_target, vec![vid(1), vid(0), vid(1)]);
        assert_eq!(c.exposed(), vec![vid(2)]);
        assert_eq!(c.edge_coloring(edge(1, 2)).class(), EdgeClass::Variable);
        assert_eq!(c.variable_count(), 1);
    }

    #[test]
    fn fig4_exposed_vertices() {
        let (g, m) = fixture("fig4").unwrap();
        let c = ColorConfiguration::from_matching(&g, &m).unwrap();
        let names: Vec<_> = c.exposed().iter().map(|&v| g.label(v)).collect();
        assert_eq!(names, ["v0", "vx"]);
        assert_eq!(c.to_matching(), m);
    }

    #[test]
    fn no_mutual_targets_means_empty_matching() {
        // triangle pointing around the cycle
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = ColorConfiguration::from_red_targets(&g, vec![vid(1), vid(2), vid(0)]).unwrap();
        assert!(c.to_matching().is_empty());
        assert_eq!(c.variable_count(), 3);
        assert!(ColorConfiguration::from_red_targets(&g, vec![vid(0), vid(2), vid(0)]).is_err());
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let m = Matching::from_pairs(&g, [(0, 1)]).unwrap();
        assert_eq!(
            ColorConfiguration::from_matching(&g, &m),
            Err(ColoringError::IsolatedVertex(2))
        );
    }

    #[test]
    fn free_neighbours_never_point_at_each_other() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(
            ColorConfiguration::from_matching(&k2, &Matching::empty(2)),
            Err(ColoringError::Unrepresentable(1))
        );
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = ColorConfiguration::from_matching(&tri, &Matching::empty(3)).unwrap();
        assert_eq!(c.red_target, [vid(1), vid(2), vid(0)]);
        assert!(c.to_matching().is_empty());
        let (g, m) = crate::fixtures::fixture("sylvester").unwrap();
        let c = ColorConfiguration::from_matching(&g, &m).unwrap();
        assert_eq!(c.to_matching(), m);
    }

    #[test]
    fn two_adjacent_variables_cancel() {
        // u=0, v=1, w=2 plus pendants 3 and 4; <u,v> -> (b,r), <v,w> -> (b,r)
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 3), (2, 4)]).unwrap();
        let mut c =
            ColorConfiguration::from_red_targets(&g, vec![vid(3), vid(0), vid(1), vid(0), vid(2)])
                .unwrap();
        // 0 and 3 are matched; 4 points at 2, which points at 1
        assert_eq!(
            (c.edge_coloring(edge(0, 1)).color_at_u, c.edge_coloring(edge(0, 1)).color_at_v),
            (LinkColor::Blue, LinkColor::Red)
        );
        assert_eq!(
            (c.edge_coloring(edge(1, 2)).color_at_u, c.edge_coloring(edge(1, 2)).color_at_v),
            (LinkColor::Blue, LinkColor::Red)
        );
        c.color_exchange(vid(1), edge(0, 1), edge(1, 2)).unwrap();
        assert_eq!(c.edge_coloring(edge(0, 1)).class(), EdgeClass::BlueConstant);
        assert_eq!(c.edge_coloring(edge(1, 2)).class(), EdgeClass::RedConstant);
    }

    #[test]
    fn blue_blue_exchange_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        let m = Matching::from_pairs(&g, [(1, 3)]).unwrap();
        let mut c = ColorConfiguration::from_matching(&g, &m).unwrap();
        let before = c.clone();
        assert_eq!(
            c.color_exchange(vid(1), edge(0, 1), edge(1, 2)),
            Err(ColoringError::Ineffective(1))
        );
        assert_eq!(c, before);
        assert_eq!(
            c.color_exchange(vid(0), edge(0, 1), edge(1, 2)),
            Err(ColoringError::NotAdjacentAtPivot(0))
        );
    }

    #[test]
    fn breaking_a_red_constant_is_rejected() {
        // moving 1's red link off the matched edge 1-3 toward blue-blue 1-2
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (1, 3), (0, 2)]).unwrap();
        let m = Matching::from_pairs(&g, [(1, 3), (0, 2)]).unwrap();
        let mut c = ColorConfiguration::from_matching(&g, &m).unwrap();
        assert_eq!(
            c.color_exchange(vid(1), edge(1, 3), edge(1, 2)),
            Err(ColoringError::Ineffective(1))
        );
    }

    #[test]
    fn variable_moves_one_edge() {
        // path 0-1-2-3, M = {1-2}; variable at <0,1> moves to <1,2>
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = Matching::from_pairs(&g, [(1, 2)]).unwrap();
        let mut c = ColorConfiguration::from_matching(&g, &m).unwrap();
        assert!(c.is_variable(edge(0, 1)));
        assert!(!c.is_variable(edge(1, 2)));
        c.color_exchange(vid(1), edge(1, 2), edge(0, 1)).unwrap();
        assert_eq!(c.edge_coloring(edge(0, 1)).class(), EdgeClass::RedConstant);
        assert!(c.is_variable(edge(1, 2)));
        assert_eq!(c.variable_count(), 2);
    }

    #[test]
    fn walk_on_p4() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = Matching::from_pairs(&g, [(1, 2)]).unwrap();
        let mut c = ColorConfiguration::from_matching(&g, &m).unwrap();
        c.eliminate_along_path(&[vid(0), vid(1), vid(2), vid(3)]).unwrap();
        assert_eq!(c.to_matching().edges(), vec![edge(0, 1), edge(2, 3)]);
        assert_eq!(c.variable_count(), 0);
    }

    #[test]
    fn walk_on_fig4() {
        let (g, m) = fixture("fig4").unwrap();
        let mut c = ColorConfiguration::from_matching(&g, &m).unwrap();
        let path: Vec<_> = ["v0", "v1", "va", "ve", "vd", "vx"]
            .iter()
            .map(|s| g.vertex_by_label(s).unwrap())
            .collect();
        let before = c.variable_count();
        c.eliminate_along_path(&path).unwrap();
        assert_eq!(c.variable_count(), before - 2);
        let result = c.to_matching();
        assert_eq!(result.len(), 5);
        let mut got: Vec<(String, String)> = result
            .edges()
            .iter()
            .map(|e| (g.label(e.u()), g.label(e.v())))
            .collect();
        got.sort();
        let want: Vec<(String, String)> = [("v0", "v1"), ("va", "ve"), ("vb", "vc"), ("vd", "vx"), ("vy", "vz")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn walk_rejects_non_augmenting() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let m = Matching::from_pairs(&g, [(1, 2)]).unwrap();
        let mut c = ColorConfiguration::from_matching(&g, &m).unwrap();
        assert!(c.eliminate_along_path(&[vid(0), vid(1), vid(2)]).is_err());
        assert!(c.eliminate_along_path(&[vid(0), vid(1)]).is_err());
        assert!(c.eliminate_along_path(&[vid(3), vid(2), vid(1), vid(0)]).is_ok());
    }
}
