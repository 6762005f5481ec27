//! Game positions: simple undirected graphs on a fixed vertex pool with a
//! degree cap, plus the structural quantities the strategies reason about
//! (components around a tracked root, degrees of freedom, eventual cut
//! vertices and non-Hamiltonicity witnesses).

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// Degree every vertex of a finished 3-capped game is measured against.
pub const CUBIC: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} already has degree {cap}")]
    DegreeCapExceeded { vertex: Vertex, cap: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("vertex set is not a connected component")]
    NotAComponent,
    #[error("parse error: {0}")]
    Parse(String),
}

/// An edge drawn by a player, stored with `u < v` once normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[Vertex; 2]", into = "[Vertex; 2]")]
pub struct MoveEdge {
    pub u: Vertex,
    pub v: Vertex,
}

impl MoveEdge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        MoveEdge { u: a.min(b), v: a.max(b) }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`, if `x` is an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }
}

impl From<[Vertex; 2]> for MoveEdge {
    fn from(e: [Vertex; 2]) -> Self {
        MoveEdge::new(e[0], e[1])
    }
}

impl From<MoveEdge> for [Vertex; 2] {
    fn from(e: MoveEdge) -> Self {
        [e.u, e.v]
    }
}

impl fmt::Display for MoveEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Simple graph over `0..n` where no vertex may exceed degree `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameGraph {
    n: usize,
    k: usize,
    adj: Vec<Vec<Vertex>>,
    edges: usize,
}

impl GameGraph {
    pub fn new(n: usize, k: usize) -> Self {
        GameGraph { n, k, adj: vec![Vec::new(); n], edges: 0 }
    }

    pub fn from_edges<I>(n: usize, k: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = GameGraph::new(n, k);
        for (a, b) in edges {
            g.add_edge(MoveEdge::new(a, b))?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.n && b < self.n && self.adj[a].contains(&b)
    }

    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.adj[v].is_empty()
    }

    pub fn is_saturated(&self, v: Vertex) -> bool {
        self.adj[v].len() >= self.k
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    /// Validates `m` against the game rules without drawing it.
    pub fn check_move(&self, m: MoveEdge) -> Result<(), GraphError> {
        for x in [m.u, m.v] {
            if x >= self.n {
                return Err(GraphError::OutOfRange { vertex: x, n: self.n });
            }
        }
        if m.u == m.v {
            return Err(GraphError::SelfLoop(m.u));
        }
        if self.has_edge(m.u, m.v) {
            return Err(GraphError::DuplicateEdge(m.u, m.v));
        }
        for x in [m.u, m.v] {
            if self.is_saturated(x) {
                return Err(GraphError::DegreeCapExceeded { vertex: x, cap: self.k });
            }
        }
        Ok(())
    }

    pub fn is_legal(&self, m: MoveEdge) -> bool {
        self.check_move(m).is_ok()
    }

    pub fn add_edge(&mut self, m: MoveEdge) -> Result<(), GraphError> {
        self.check_move(m)?;
        insert_sorted(&mut self.adj[m.u], m.v);
        insert_sorted(&mut self.adj[m.v], m.u);
        self.edges += 1;
        Ok(())
    }

    /// Value-returning form of [`GameGraph::add_edge`].
    pub fn with_edge(&self, m: MoveEdge) -> Result<GameGraph, GraphError> {
        let mut g = self.clone();
        g.add_edge(m)?;
        Ok(g)
    }

    /// The graph with `m` taken out again; returns `None` if `m` is absent.
    pub fn without_edge(&self, m: MoveEdge) -> Option<GameGraph> {
        if !self.has_edge(m.u, m.v) {
            return None;
        }
        let mut g = self.clone();
        g.adj[m.u].retain(|&w| w != m.v);
        g.adj[m.v].retain(|&w| w != m.u);
        g.edges -= 1;
        Some(g)
    }

    /// All edges, normalized and sorted.
    pub fn edges(&self) -> Vec<MoveEdge> {
        let mut out = Vec::with_capacity(self.edges);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push(MoveEdge { u, v });
                }
            }
        }
        out
    }

    /// Every edge a player may draw; empty exactly when the game is over.
    pub fn legal_moves(&self) -> Vec<MoveEdge> {
        let open: Vec<Vertex> = self.vertices().filter(|&v| !self.is_saturated(v)).collect();
        let mut out = Vec::new();
        for (i, &u) in open.iter().enumerate() {
            for &v in &open[i + 1..] {
                if !self.has_edge(u, v) {
                    out.push(MoveEdge { u, v });
                }
            }
        }
        out
    }

    pub fn first_legal_move(&self) -> Option<MoveEdge> {
        for u in 0..self.n {
            if self.is_saturated(u) {
                continue;
            }
            for v in u + 1..self.n {
                if !self.is_saturated(v) && !self.has_edge(u, v) {
                    return Some(MoveEdge { u, v });
                }
            }
        }
        None
    }

    pub fn is_terminal(&self) -> bool {
        self.first_legal_move().is_none()
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.is_isolated(v)).collect()
    }

    pub fn lowest_isolated(&self) -> Option<Vertex> {
        self.vertices().find(|&v| self.is_isolated(v))
    }

    /// Lowest isolated vertex different from `skip`.
    pub fn lowest_isolated_except(&self, skip: &[Vertex]) -> Option<Vertex> {
        self.vertices().find(|&v| self.is_isolated(v) && !skip.contains(&v))
    }

    /// Component id for every vertex (isolated vertices get their own id).
    pub fn component_ids(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if id[s] != usize::MAX {
                continue;
            }
            id[s] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if id[w] == usize::MAX {
                        id[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        id
    }

    /// Vertex set of the component containing `v`, sorted.
    pub fn component_of(&self, v: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.n];
        let mut out = vec![v];
        seen[v] = true;
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Components containing at least one edge, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let ids = self.component_ids();
        let mut buckets: Vec<Vec<Vertex>> = Vec::new();
        let mut slot = vec![usize::MAX; self.n];
        for v in 0..self.n {
            if self.is_isolated(v) {
                continue;
            }
            let c = ids[v];
            if slot[c] == usize::MAX {
                slot[c] = buckets.len();
                buckets.push(Vec::new());
            }
            buckets[slot[c]].push(v);
        }
        buckets
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.component_of(0).len() == self.n
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()` in order.
    pub fn induced(&self, keep: &[Vertex]) -> GameGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut g = GameGraph::new(keep.len(), self.k);
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    insert_sorted(&mut g.adj[i], j);
                    insert_sorted(&mut g.adj[j], i);
                    g.edges += 1;
                }
            }
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> GameGraph {
        let mut g = GameGraph::new(self.n, self.k);
        for e in self.edges() {
            let (a, b) = (perm[e.u], perm[e.v]);
            insert_sorted(&mut g.adj[a], b);
            insert_sorted(&mut g.adj[b], a);
        }
        g.edges = self.edges;
        g
    }

    /// Serializes in the line format `n k` followed by one `u v` per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.k);
        for e in self.edges() {
            s.push_str(&format!("{} {}\n", e.u, e.v));
        }
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n, k: self.k, edges: self.edges().into_iter().map(|e| [e.u, e.v]).collect() }
    }

    /// Parses either the JSON form or the line-oriented text form.
    pub fn parse_any(s: &str) -> Result<GameGraph, GraphError> {
        if s.trim_start().starts_with('{') {
            let j: GraphJson = serde_json::from_str(s).map_err(|e| GraphError::Parse(e.to_string()))?;
            GameGraph::try_from(j)
        } else {
            s.parse()
        }
    }
}

fn insert_sorted(list: &mut Vec<Vertex>, x: Vertex) {
    let at = list.partition_point(|&y| y < x);
    list.insert(at, x);
}

impl FromStr for GameGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GraphError::Parse("missing header".into()))?;
        let (n, k) = parse_pair(header)?;
        let mut g = GameGraph::new(n, k);
        for line in lines {
            let (a, b) = parse_pair(line)?;
            g.add_edge(MoveEdge::new(a, b))?;
        }
        Ok(g)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let mut num = || -> Result<usize, GraphError> {
        it.next()
            .ok_or_else(|| GraphError::Parse(format!("expected two integers in {line:?}")))?
            .parse()
            .map_err(|_| GraphError::Parse(format!("bad integer in {line:?}")))
    };
    let a = num()?;
    let b = num()?;
    if it.next().is_some() {
        return Err(GraphError::Parse(format!("trailing input in {line:?}")));
    }
    Ok((a, b))
}

/// JSON form `{"n":..,"k":..,"edges":[[u,v],..]}` with normalized, sorted edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub k: usize,
    pub edges: Vec<[Vertex; 2]>,
}

impl TryFrom<GraphJson> for GameGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        GameGraph::from_edges(j.n, j.k, j.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

/// The tracked component `C` of a root vertex and everything else.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentView {
    pub root_x: Vertex,
    pub c_vertices: Vec<Vertex>,
    pub d_components: Vec<Vec<Vertex>>,
    pub isolated: Vec<Vertex>,
}

impl ComponentView {
    pub fn in_c(&self, v: Vertex) -> bool {
        self.c_vertices.binary_search(&v).is_ok()
    }

    pub fn d_index(&self, v: Vertex) -> Option<usize> {
        self.d_components.iter().position(|d| d.binary_search(&v).is_ok())
    }

    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.isolated.binary_search(&v).is_ok()
    }

    /// Summed effective freedom of the non-isolated remainder.
    pub fn e_of_d(&self, g: &GameGraph) -> i64 {
        self.d_components.iter().map(|d| freedom(g, d).e).sum()
    }

    pub fn f_of_c(&self, g: &GameGraph) -> i64 {
        freedom(g, &self.c_vertices).f
    }
}

pub fn component_view(g: &GameGraph, root_x: Vertex) -> Result<ComponentView, GraphError> {
    if root_x >= g.n() {
        return Err(GraphError::OutOfRange { vertex: root_x, n: g.n() });
    }
    let c_vertices = g.component_of(root_x);
    let d_components = g.components().into_iter().filter(|c| c.binary_search(&root_x).is_err()).collect();
    let isolated = g.vertices().filter(|&v| v != root_x && g.is_isolated(v)).collect();
    Ok(ComponentView { root_x, c_vertices, d_components, isolated })
}

/// Degrees of freedom `f = Σ (3 - deg)` and effective freedom `e = f - 2`
/// per component, summed over the components the set meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreedomStats {
    pub f: i64,
    pub e: i64,
}

pub fn freedom(g: &GameGraph, vertices: &[Vertex]) -> FreedomStats {
    let f: i64 = vertices.iter().map(|&v| CUBIC as i64 - g.degree(v) as i64).sum();
    let parts = if vertices.len() <= 1 {
        vertices.len()
    } else {
        let ids = g.component_ids();
        let mut seen: Vec<usize> = vertices.iter().map(|&v| ids[v]).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    };
    FreedomStats { f, e: f - 2 * parts as i64 }
}

/// Components of `G \ x` that make `x` an eventual cut vertex: every vertex
/// of the side is saturated and `x` has one or two neighbours in it.
pub fn eventual_cut_sides(g: &GameGraph, x: Vertex) -> Vec<Vec<Vertex>> {
    let mut sides = Vec::new();
    if g.is_isolated(x) {
        return sides;
    }
    let mut seen = vec![false; g.n()];
    seen[x] = true;
    for &start in g.neighbors(x) {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut side = vec![start];
        let mut i = 0;
        let mut saturated = true;
        while i < side.len() {
            let u = side[i];
            if g.degree(u) != g.k() {
                saturated = false;
            }
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    side.push(w);
                }
            }
            i += 1;
        }
        if saturated {
            let links = g.neighbors(x).iter().filter(|w| side.contains(w)).count();
            if links == 1 || links == 2 {
                side.sort_unstable();
                sides.push(side);
            }
        }
    }
    sides
}

pub fn is_eventual_cut_vertex(g: &GameGraph, x: Vertex) -> bool {
    !eventual_cut_sides(g, x).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `vertex` separates the saturated `side` from at least one other vertex.
    EventualCutVertex { vertex: Vertex, side: Vec<Vertex> },
    /// A saturated component that does not span the vertex pool.
    SaturatedComponent { vertices: Vec<Vertex> },
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::EventualCutVertex { .. } => "eventual-cut-vertex",
            Witness::SaturatedComponent { .. } => "saturated-component",
        }
    }

    /// The certifying vertex, or the smallest vertex of the component.
    pub fn at(&self) -> Vertex {
        match self {
            Witness::EventualCutVertex { vertex, .. } => *vertex,
            Witness::SaturatedComponent { vertices } => vertices[0],
        }
    }

    /// Vertices whose degree the witness depends on.
    pub fn footprint(&self) -> Vec<Vertex> {
        match self {
            Witness::EventualCutVertex { vertex, side } => {
                let mut v = side.clone();
                v.push(*vertex);
                v
            }
            Witness::SaturatedComponent { vertices } => vertices.clone(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::EventualCutVertex { vertex, side } => {
                write!(f, "eventual cut vertex {vertex} guarding saturated side {side:?}")
            }
            Witness::SaturatedComponent { vertices } => write!(f, "saturated component {vertices:?}"),
        }
    }
}

/// Finds a certificate that no completion of `g` under its cap can be
/// 2-connected (and hence Hamiltonian), if the position already has one.
///
/// An eventual cut vertex only counts when some vertex lies outside both the
/// cut vertex and its saturated side; a saturated component only counts when
/// it leaves some vertex out.
pub fn has_witness(g: &GameGraph) -> Option<Witness> {
    for comp in g.components() {
        if comp.len() < g.n() && comp.iter().all(|&v| g.degree(v) == g.k()) {
            return Some(Witness::SaturatedComponent { vertices: comp });
        }
    }
    for x in g.vertices() {
        for side in eventual_cut_sides(g, x) {
            if side.len() + 1 < g.n() {
                return Some(Witness::EventualCutVertex { vertex: x, side });
            }
        }
    }
    None
}
