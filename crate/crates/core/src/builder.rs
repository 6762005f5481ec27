//! The Hamiltonian player's path-keeping strategy for caps `k >= 4`.
//!
//! The builder keeps a Hamilton path on the non-isolated vertices whose two
//! ends `x1` and `x2` have degree 1 and at most 2. Every opponent edge falls
//! in one of six shapes, each with a reply that extends the path by fresh
//! vertices. Once the pool of isolated vertices is used up the ends are
//! joined, and from then on any move keeps the cycle.

use serde::{Deserialize, Serialize};

use crate::graph::{GameGraph, MoveEdge, Vertex};
use crate::strategy::{legal, Strategy, StrategyDecision, StrategyError};

/// The maintained path. `x1` and `x2` are its two ends, in either order
/// relative to `path`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamPathState {
    pub path: Vec<Vertex>,
    pub x1: Vertex,
    pub x2: Vertex,
}

/// Where an opponent endpoint sat before the move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Spot {
    Fresh,
    Interior,
    End1,
    End2,
}

impl HamPathState {
    pub fn new(path: Vec<Vertex>, x1: Vertex, x2: Vertex) -> Self {
        HamPathState { path, x1, x2 }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.path.contains(&v)
    }

    /// The path read from `x1` to `x2`.
    pub fn oriented(&self) -> Vec<Vertex> {
        let mut p = self.path.clone();
        if p.first() != Some(&self.x1) {
            p.reverse();
        }
        p
    }

    fn spot(&self, v: Vertex) -> Spot {
        if v == self.x1 {
            Spot::End1
        } else if v == self.x2 {
            Spot::End2
        } else if self.contains(v) {
            Spot::Interior
        } else {
            Spot::Fresh
        }
    }

    /// Appends `vs` beyond the end `end`, returning the new far end.
    fn extend_at(&mut self, end: Vertex, vs: &[Vertex]) -> Vertex {
        if self.path.last() == Some(&end) {
            self.path.extend_from_slice(vs);
        } else {
            debug_assert_eq!(self.path.first(), Some(&end));
            let mut front: Vec<Vertex> = vs.iter().rev().copied().collect();
            front.extend_from_slice(&self.path);
            self.path = front;
        }
        *vs.last().unwrap()
    }

    /// The path invariant after a builder move.
    pub fn check(&self, g: &GameGraph) -> Result<(), String> {
        let p = &self.path;
        let ends = (p.first().copied(), p.last().copied());
        if !(ends == (Some(self.x1), Some(self.x2)) || ends == (Some(self.x2), Some(self.x1))) {
            return Err(format!("ends {} and {} are not the ends of {:?}", self.x1, self.x2, p));
        }
        let mut seen = vec![false; g.n()];
        for &v in p {
            if std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} repeats on the path"));
            }
        }
        if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(format!("path step {}-{} is not an edge", w[0], w[1]));
        }
        if let Some(v) = g.vertices().find(|&v| seen[v] == g.is_isolated(v)) {
            return Err(format!("path membership of {v} disagrees with its degree {}", g.degree(v)));
        }
        if g.lowest_isolated().is_some() && (g.degree(self.x1) != 1 || g.degree(self.x2) > 2) {
            return Err(format!(
                "end degrees {} (x1={}) and {} (x2={}) with isolated vertices left",
                g.degree(self.x1),
                self.x1,
                g.degree(self.x2),
                self.x2
            ));
        }
        Ok(())
    }
}

/// Opening move. On an empty board the first edge is a path by itself;
/// facing a single edge `(a, b)` the builder hangs the lowest isolated
/// vertex off `b`.
pub fn builder_open(g: &GameGraph) -> Result<(StrategyDecision, HamPathState), StrategyError> {
    let edges = g.edges();
    match edges.as_slice() {
        [] if g.n() >= 2 => Ok((StrategyDecision::new(0, 1, "path-open"), HamPathState::new(vec![0, 1], 0, 1))),
        [e] => {
            let (a, b) = (e.u, e.v);
            let v = g.lowest_isolated().ok_or(StrategyError::NoLegalMove)?;
            let d = legal(g, StrategyDecision::new(b, v, "path-open"))?;
            Ok((d, HamPathState::new(vec![a, b, v], a, v)))
        }
        _ => Err(StrategyError::BadOpening(format!("{} edges on {} vertices", edges.len(), g.n()))),
    }
}

/// Answers `opp`, which `g` already contains.
pub fn builder_respond(
    state: &HamPathState,
    g: &GameGraph,
    opp: MoveEdge,
) -> Result<(StrategyDecision, HamPathState), StrategyError> {
    let mut s = state.clone();
    if g.lowest_isolated().is_none() && !(s.spot(opp.u) == Spot::Fresh || s.spot(opp.v) == Spot::Fresh) {
        return Ok((builder_close(&s, g)?, s));
    }
    let (a, b) = (opp.u, opp.v);
    let (sa, sb) = (s.spot(a), s.spot(b));
    let fresh = |skip: &[Vertex]| g.lowest_isolated_except(skip);
    use Spot::*;
    let decision = match (sa, sb) {
        (Fresh, Fresh) => {
            let x2 = s.x2;
            s.x2 = s.extend_at(x2, &[a, b]);
            StrategyDecision::new(x2, a, "path-row-a")
        }
        (Interior, Interior) => match fresh(&[]) {
            Some(v) => {
                let x2 = s.x2;
                s.x2 = s.extend_at(x2, &[v]);
                StrategyDecision::new(x2, v, "path-row-b")
            }
            None => builder_close(&s, g)?,
        },
        (Interior, End1 | End2) | (End1 | End2, Interior) => {
            let end = if sa == Interior { b } else { a };
            match fresh(&[]) {
                Some(v) => {
                    let new_end = s.extend_at(end, &[v]);
                    if end == s.x1 {
                        s.x1 = new_end;
                    } else {
                        s.x2 = new_end;
                    }
                    StrategyDecision::new(end, v, "path-row-c")
                }
                None => builder_close(&s, g)?,
            }
        }
        (Interior, Fresh) | (Fresh, Interior) => {
            let v = if sa == Fresh { a } else { b };
            let x2 = s.x2;
            s.x2 = s.extend_at(x2, &[v]);
            StrategyDecision::new(x2, v, "path-row-d")
        }
        (End1 | End2, Fresh) | (Fresh, End1 | End2) => {
            let (end, v) = if sa == Fresh { (b, a) } else { (a, b) };
            match fresh(&[v]) {
                Some(w) => {
                    let new_end = s.extend_at(end, &[v, w]);
                    if end == s.x1 {
                        s.x1 = new_end;
                    } else {
                        s.x2 = new_end;
                    }
                    StrategyDecision::new(v, w, "path-row-e")
                }
                None => {
                    // v was the last isolated vertex: the path now spans
                    let new_end = s.extend_at(end, &[v]);
                    if end == s.x1 {
                        s.x1 = new_end;
                    } else {
                        s.x2 = new_end;
                    }
                    builder_close(&s, g)?
                }
            }
        }
        (End1, End2) | (End2, End1) => match fresh(&[]) {
            Some(v) => {
                let (x1, x2) = (s.x1, s.x2);
                s.extend_at(x2, &[v]);
                s.x1 = v;
                s.x2 = x1;
                StrategyDecision::new(x2, v, "path-row-f")
            }
            None => builder_close(&s, g)?,
        },
        (End1, End1) | (End2, End2) => {
            return Err(StrategyError::Precondition(format!("opponent edge {opp} is a loop")))
        }
    };
    Ok((legal(g, decision)?, s))
}

/// Joins the ends once the path spans, or fills with the lowest legal edge
/// when the cycle is already closed.
pub fn builder_close(state: &HamPathState, g: &GameGraph) -> Result<StrategyDecision, StrategyError> {
    if let Some(v) = g.lowest_isolated() {
        return Err(StrategyError::Precondition(format!("isolated vertex {v} remains")));
    }
    let (x1, x2) = (state.x1, state.x2);
    if !g.has_edge(x1, x2) && state.path.len() >= 3 {
        return legal(g, StrategyDecision::new(x1, x2, "path-close"));
    }
    let m = g.first_legal_move().ok_or(StrategyError::NoLegalMove)?;
    Ok(StrategyDecision { edge: m, rule: "path-filler".into() })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuilderStrategy {
    pub state: Option<HamPathState>,
}

impl BuilderStrategy {
    pub fn new() -> Self {
        BuilderStrategy::default()
    }
}

impl Strategy for BuilderStrategy {
    fn respond(&mut self, g: &GameGraph, opp: Option<MoveEdge>) -> Result<StrategyDecision, StrategyError> {
        match (&self.state, opp) {
            (None, _) => {
                let (d, s) = builder_open(g)?;
                self.state = Some(s);
                Ok(d)
            }
            (Some(state), Some(m)) => {
                let (d, s) = builder_respond(state, g, m)?;
                self.state = Some(s);
                Ok(d)
            }
            (Some(_), None) => Err(StrategyError::Precondition("no opponent move to answer".into())),
        }
    }

    /// Position along the path from `x1`, starting at 1; 0 off the path.
    fn marks(&self, n: usize) -> Vec<u32> {
        let mut m = vec![0; n];
        if let Some(s) = &self.state {
            for (i, &v) in s.oriented().iter().enumerate() {
                m[v] = i as u32 + 1;
            }
        }
        m
    }

    fn check(&self, g: &GameGraph) -> Result<(), String> {
        match &self.state {
            Some(s) => s.check(g),
            None => Err("no path state".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> GameGraph {
        GameGraph::from_edges(n, 4, edges.iter().copied()).unwrap()
    }

    fn same_path(s: &HamPathState, p: &[Vertex]) -> bool {
        let mut r = p.to_vec();
        r.reverse();
        s.path == p || s.path == r
    }

    #[test]
    fn openings() {
        let (d, s) = builder_open(&GameGraph::new(5, 4)).unwrap();
        assert_eq!(d.edge, MoveEdge::new(0, 1));
        assert_eq!(s.path, vec![0, 1]);
        let (d, s) = builder_open(&g(5, &[(2, 4)])).unwrap();
        assert_eq!(d.edge, MoveEdge::new(4, 0));
        assert_eq!(s.path, vec![2, 4, 0]);
        assert!(matches!(builder_open(&g(5, &[(0, 1), (2, 3)])), Err(StrategyError::BadOpening(_))));
    }

    #[test]
    fn row_a_extends_by_both() {
        let s = HamPathState::new(vec![0, 1, 2], 0, 2);
        let pos = g(6, &[(0, 1), (1, 2), (3, 4)]);
        let (d, s) = builder_respond(&s, &pos, MoveEdge::new(3, 4)).unwrap();
        assert_eq!((d.edge, d.rule.as_str()), (MoveEdge::new(2, 3), "path-row-a"));
        assert!(same_path(&s, &[0, 1, 2, 3, 4]));
        assert_eq!((s.x1, s.x2), (0, 4));
    }

    #[test]
    fn row_f_swaps_ends() {
        let s = HamPathState::new(vec![0, 1, 2], 0, 2);
        let pos = g(5, &[(0, 1), (1, 2), (0, 2)]);
        let (d, s) = builder_respond(&s, &pos, MoveEdge::new(0, 2)).unwrap();
        assert_eq!(d.edge, MoveEdge::new(2, 3));
        assert!(same_path(&s, &[0, 1, 2, 3]));
        assert_eq!((s.x1, s.x2), (3, 0));
        assert!(s.check(&pos.with_edge(d.edge).unwrap()).is_ok());
    }

    #[test]
    fn row_c_extends_the_touched_end() {
        let s = HamPathState::new(vec![0, 1, 2, 3], 0, 3);
        let pos = g(6, &[(0, 1), (1, 2), (2, 3), (1, 3)]);
        let (d, s) = builder_respond(&s, &pos, MoveEdge::new(1, 3)).unwrap();
        assert_eq!((d.edge, d.rule.as_str()), (MoveEdge::new(3, 4), "path-row-c"));
        assert!(same_path(&s, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn row_e_without_second_fresh_vertex_closes() {
        let s = HamPathState::new(vec![0, 1, 2], 0, 2);
        let pos = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let (d, s) = builder_respond(&s, &pos, MoveEdge::new(2, 3)).unwrap();
        assert_eq!((d.edge, d.rule.as_str()), (MoveEdge::new(0, 3), "path-close"));
        assert!(same_path(&s, &[0, 1, 2, 3]));
    }

    #[test]
    fn close_and_filler() {
        let s = HamPathState::new(vec![0, 1, 2, 3], 0, 3);
        let open = g(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(builder_close(&s, &open).unwrap().edge, MoveEdge::new(0, 3));
        let closed = open.with_edge(MoveEdge::new(0, 3)).unwrap();
        let d = builder_close(&s, &closed).unwrap();
        assert_eq!((d.edge, d.rule.as_str()), (MoveEdge::new(0, 2), "path-filler"));
        assert!(builder_close(&s, &g(5, &[(0, 1), (1, 2), (2, 3)])).is_err());
    }
}
