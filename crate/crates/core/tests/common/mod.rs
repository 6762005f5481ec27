#![allow(dead_code)]

use degree_game::oracle::{Objective, Side};
use degree_game::{GameGraph, MoveEdge};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Plays up to `moves` uniformly random legal edges from the empty graph.
pub fn random_play(n: usize, k: usize, moves: usize, rng: &mut ChaCha8Rng) -> GameGraph {
    let mut g = GameGraph::new(n, k);
    for _ in 0..moves {
        let legal = g.legal_moves();
        match legal.choose(rng) {
            Some(&m) => g.add_edge(m).unwrap(),
            None => break,
        }
    }
    g
}

/// Any graph with max degree `k`: each pair kept with probability `p`.
pub fn random_capped(n: usize, k: usize, p: f64, rng: &mut ChaCha8Rng) -> GameGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    let mut g = GameGraph::new(n, k);
    for (a, b) in pairs {
        let m = MoveEdge::new(a, b);
        if rng.gen_bool(p) && g.is_legal(m) {
            g.add_edge(m).unwrap();
        }
    }
    g
}

/// Plain minimax over every move order, no memo.
pub fn brute_force(g: &GameGraph, side: Side, objective: Objective) -> bool {
    let moves = g.legal_moves();
    if moves.is_empty() {
        return objective.holds_on_terminal(g);
    }
    let pursuer = side == Side::Pursuer;
    for m in moves {
        if brute_force(&g.with_edge(m).unwrap(), side.flip(), objective) == pursuer {
            return pursuer;
        }
    }
    !pursuer
}

/// Hamiltonicity by trying every cyclic order with vertex 0 first; edges
/// are only looked at once an order is complete.
pub fn hamiltonian_by_permutations(g: &GameGraph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    fn go(g: &GameGraph, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = g.n();
        if path.len() == n {
            return (0..n).all(|i| g.has_edge(path[i], path[(i + 1) % n]));
        }
        for w in 1..n {
            if !used[w] {
                used[w] = true;
                path.push(w);
                let ok = go(g, path, used);
                path.pop();
                used[w] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[0] = true;
    go(g, &mut vec![0], &mut used)
}

/// Whether some supergraph of `g` on the same vertices with max degree
/// `g.k()` has a Hamilton cycle: search cycles of the complete graph,
/// paying one unit of spare degree at both ends of every new edge.
pub fn completable_to_hamiltonian(g: &GameGraph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let mut spare: Vec<usize> = g.vertices().map(|v| g.k() - g.degree(v)).collect();
    let mut used = vec![false; n];
    used[0] = true;
    fn go(g: &GameGraph, last: usize, len: usize, spare: &mut [usize], used: &mut [bool]) -> bool {
        let n = g.n();
        if len == n {
            return g.has_edge(last, 0) || (spare[last] > 0 && spare[0] > 0);
        }
        for w in 1..n {
            if used[w] {
                continue;
            }
            let new = !g.has_edge(last, w);
            if new && (spare[last] == 0 || spare[w] == 0) {
                continue;
            }
            if new {
                spare[last] -= 1;
                spare[w] -= 1;
            }
            used[w] = true;
            let ok = go(g, w, len + 1, spare, used);
            used[w] = false;
            if new {
                spare[last] += 1;
                spare[w] += 1;
            }
            if ok {
                return true;
            }
        }
        false
    }
    go(g, 0, 1, &mut spare, &mut used)
}

/// Random simple 3-regular graph on `m` vertices by the pairing model.
pub fn random_cubic(m: usize, rng: &mut ChaCha8Rng) -> GameGraph {
    assert!(m % 2 == 0 && m >= 4);
    loop {
        let mut points: Vec<usize> = (0..3 * m).collect();
        points.shuffle(rng);
        let mut g = GameGraph::new(m, 3);
        let ok = points.chunks(2).all(|p| {
            let (a, b) = (p[0] / 3, p[1] / 3);
            a != b && g.add_edge(MoveEdge::new(a, b)).is_ok()
        });
        if ok {
            return g;
        }
    }
}

/// A connected graph, 3-regular except exactly four degree-2 vertices.
pub fn random_four_deficient(max_vertices: usize, rng: &mut ChaCha8Rng) -> GameGraph {
    loop {
        let m = 2 * rng.gen_range(3..=max_vertices / 2);
        let g = random_cubic(m, rng);
        let edges = g.edges();
        let e1 = *edges.choose(rng).unwrap();
        let e2 = *edges.choose(rng).unwrap();
        if e1.touches(e2.u) || e1.touches(e2.v) {
            continue;
        }
        let keep: Vec<(usize, usize)> = edges.iter().filter(|&&e| e != e1 && e != e2).map(|e| (e.u, e.v)).collect();
        let h = GameGraph::from_edges(m, 3, keep).unwrap();
        if h.is_connected() {
            return h;
        }
    }
}
