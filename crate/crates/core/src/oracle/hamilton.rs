use crate::graph::{GameGraph, Vertex};

/// Finds a Hamilton cycle by backtracking from vertex 0.
///
/// Branches are pruned when some unvisited vertex can no longer be given two
/// path neighbours. Graphs that are not 2-connected are rejected up front.
pub fn hamilton_cycle(g: &GameGraph) -> Option<Vec<Vertex>> {
    let n = g.n();
    if n < 3 || g.vertices().any(|v| g.degree(v) < 2) || !is_two_connected(g) {
        return None;
    }
    let mut search = Search { g, on_path: vec![false; n], path: Vec::with_capacity(n) };
    search.on_path[0] = true;
    search.path.push(0);
    if search.extend() {
        Some(search.path)
    } else {
        None
    }
}

struct Search<'a> {
    g: &'a GameGraph,
    on_path: Vec<bool>,
    path: Vec<Vertex>,
}

impl Search<'_> {
    fn extend(&mut self) -> bool {
        let n = self.g.n();
        let last = *self.path.last().unwrap();
        if self.path.len() == n {
            return self.g.has_edge(last, 0);
        }
        if !self.feasible(last) {
            return false;
        }
        let mut next: Vec<(usize, Vertex)> = self
            .g
            .neighbors(last)
            .iter()
            .filter(|&&w| !self.on_path[w])
            .map(|&w| (self.free_degree(w), w))
            .collect();
        next.sort_unstable();
        for (_, w) in next {
            self.on_path[w] = true;
            self.path.push(w);
            if self.extend() {
                return true;
            }
            self.path.pop();
            self.on_path[w] = false;
        }
        false
    }

    fn free_degree(&self, v: Vertex) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| !self.on_path[w]).count()
    }

    /// Every unvisited vertex needs two usable neighbours among unvisited
    /// vertices and the two path ends.
    fn feasible(&self, last: Vertex) -> bool {
        for v in self.g.vertices() {
            if self.on_path[v] {
                continue;
            }
            let usable = self
                .g
                .neighbors(v)
                .iter()
                .filter(|&&w| !self.on_path[w] || w == last || w == 0)
                .count();
            if usable < 2 {
                return false;
            }
        }
        true
    }
}

/// Whether `c` lists every vertex once, consecutive entries (cyclically)
/// being adjacent.
pub fn is_hamilton_cycle(g: &GameGraph, c: &[Vertex]) -> bool {
    let mut seen = vec![false; g.n()];
    c.len() == g.n()
        && g.n() >= 3
        && c.iter().all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
        && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
}

/// Cut vertices via Tarjan's low-link numbering.
pub fn articulation_points(g: &GameGraph) -> Vec<Vertex> {
    let n = g.n();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut clock = 0;
    for root in 0..n {
        if order[root] != usize::MAX {
            continue;
        }
        order[root] = clock;
        low[root] = clock;
        clock += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
            if *i < g.degree(v) {
                let w = g.neighbors(v)[*i];
                *i += 1;
                if w == parent {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= order[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

/// Connected, at least three vertices, and no cut vertex.
pub fn is_two_connected(g: &GameGraph) -> bool {
    g.n() >= 3 && g.is_connected() && articulation_points(g).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, k: usize, edges: &[(usize, usize)]) -> GameGraph {
        GameGraph::from_edges(n, k, edges.iter().copied()).unwrap()
    }

    pub(crate) fn petersen() -> GameGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        g(10, 3, &e)
    }

    #[test]
    fn hamilton_examples() {
        let k4 = g(4, 3, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(is_hamilton_cycle(&k4, &hamilton_cycle(&k4).unwrap()));
        assert_eq!(hamilton_cycle(&g(4, 3, &[(0, 1), (1, 2), (2, 3)])), None);
        assert_eq!(hamilton_cycle(&petersen()), None);
        assert_eq!(hamilton_cycle(&g(2, 3, &[(0, 1)])), None);
        let c5 = g(5, 2, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert!(is_hamilton_cycle(&c5, &hamilton_cycle(&c5).unwrap()));
    }

    #[test]
    fn two_connected_examples() {
        assert!(is_two_connected(&g(3, 3, &[(0, 1), (1, 2), (0, 2)])));
        assert!(!is_two_connected(&g(3, 3, &[(0, 1), (1, 2)])));
        assert_eq!(articulation_points(&g(3, 3, &[(0, 1), (1, 2)])), vec![1]);
        assert!(!is_two_connected(&g(6, 3, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])));
        assert!(is_two_connected(&petersen()));
        // two triangles sharing vertex 2
        let bow = g(5, 4, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(articulation_points(&bow), vec![2]);
    }
}
