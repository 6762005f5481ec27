//! Canonical labelling for small positions.
//!
//! Colour refinement followed by individualization of the first
//! non-singleton cell. Leaves are discrete orderings; the key is the
//! lexicographically smallest adjacency string over all leaves, so two
//! graphs share a key exactly when they are isomorphic (respecting the
//! optional initial vertex colours). Cells made of mutual twins are not
//! branched on, since every ordering of them yields the same string.

use serde::{Deserialize, Serialize};

use crate::graph::{GameGraph, Vertex};

use super::{OracleError, Side};

pub const DEFAULT_CANON_BOUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub key: Vec<u8>,
}

impl CanonicalForm {
    pub fn hex(&self) -> String {
        self.key.iter().map(|b| format!("{b:02x}")).collect()
    }
}

pub fn canonical_form(g: &GameGraph, side: Side) -> Result<CanonicalForm, OracleError> {
    canonical_form_bounded(g, side, DEFAULT_CANON_BOUND)
}

pub fn canonical_form_bounded(g: &GameGraph, side: Side, bound: usize) -> Result<CanonicalForm, OracleError> {
    if g.n() > bound {
        return Err(OracleError::TooLarge { n: g.n(), bound });
    }
    let mut key = canonical_key(g, &vec![0; g.n()]);
    key.insert(2, side as u8);
    Ok(CanonicalForm { key })
}

/// Canonical key of `g` with vertex `v` pre-coloured `colors[v]`.
///
/// The key starts with `n` and `k`, then lists the initial colours in
/// canonical order, then the packed upper-triangle adjacency bits.
pub fn canonical_key(g: &GameGraph, colors: &[u32]) -> Vec<u8> {
    let n = g.n();
    let initial = rank(&colors.to_vec());
    let refined = refine(g, initial);
    let mut best: Option<Vec<u8>> = None;
    search(g, colors, refined, &mut best);
    let mut key = vec![n as u8, g.k() as u8];
    key.extend(best.unwrap_or_default());
    key
}

fn search(g: &GameGraph, colors: &[u32], cells: Vec<u32>, best: &mut Option<Vec<u8>>) {
    let n = g.n();
    let target = first_branch_cell(g, &cells);
    match target {
        None => {
            let mut order: Vec<Vertex> = (0..n).collect();
            order.sort_by_key(|&v| (cells[v], v));
            let leaf = leaf_key(g, colors, &order);
            if best.as_ref().is_none_or(|b| leaf < *b) {
                *best = Some(leaf);
            }
        }
        Some(c) => {
            let members: Vec<Vertex> = (0..n).filter(|&v| cells[v] == c).collect();
            for &v in &members {
                let split: Vec<u32> = (0..n)
                    .map(|u| 2 * cells[u] + u32::from(cells[u] == c && u != v))
                    .collect();
                let next = refine(g, rank(&split));
                search(g, colors, next, best);
            }
        }
    }
}

/// Smallest colour whose cell has several vertices that are not all twins.
fn first_branch_cell(g: &GameGraph, cells: &[u32]) -> Option<u32> {
    let n = g.n();
    let mut by_color: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 0..n {
        by_color[cells[v] as usize].push(v);
    }
    by_color
        .iter()
        .enumerate()
        .find(|(_, cell)| cell.len() > 1 && !twin_cell(g, cell))
        .map(|(c, _)| c as u32)
}

fn twin_cell(g: &GameGraph, cell: &[Vertex]) -> bool {
    let outside = |v: Vertex| -> Vec<Vertex> {
        g.neighbors(v).iter().copied().filter(|w| !cell.contains(w)).collect()
    };
    let first = outside(cell[0]);
    let inner = g.neighbors(cell[0]).iter().filter(|w| cell.contains(w)).count();
    let clique = inner == cell.len() - 1;
    if inner != 0 && !clique {
        return false;
    }
    cell.iter().all(|&v| {
        let inside = g.neighbors(v).iter().filter(|w| cell.contains(w)).count();
        outside(v) == first && inside == inner
    })
}

/// Replaces values by their rank among the distinct values.
fn rank(values: &Vec<u32>) -> Vec<u32> {
    let mut sorted = values.clone();
    sorted.sort_unstable();
    sorted.dedup();
    values.iter().map(|x| sorted.binary_search(x).unwrap() as u32).collect()
}

fn refine(g: &GameGraph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.n();
    let mut count = distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut around: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        colors = sigs.iter().map(|s| sorted.binary_search(s).unwrap() as u32).collect();
        let next = sorted.len();
        if next == count {
            return colors;
        }
        count = next;
    }
}

fn distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn leaf_key(g: &GameGraph, colors: &[u32], order: &[Vertex]) -> Vec<u8> {
    let n = order.len();
    let mut out = Vec::with_capacity(4 * n + n * n / 16 + 1);
    for &v in order {
        out.extend_from_slice(&colors[v].to_be_bytes());
    }
    let mut byte = 0u8;
    let mut bits = 0;
    for i in 0..n {
        for j in i + 1..n {
            byte = (byte << 1) | u8::from(g.has_edge(order[i], order[j]));
            bits += 1;
            if bits == 8 {
                out.push(byte);
                byte = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(byte << (8 - bits));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> GameGraph {
        GameGraph::from_edges(n, 3, edges.iter().copied()).unwrap()
    }

    fn cube() -> GameGraph {
        let mut e = Vec::new();
        for a in 0..8usize {
            for b in 0..3 {
                let c = a ^ (1 << b);
                if a < c {
                    e.push((a, c));
                }
            }
        }
        g(8, &e)
    }

    #[test]
    fn relabelled_paths_agree() {
        let a = g(3, &[(0, 1), (1, 2)]);
        let b = g(3, &[(2, 0), (0, 1)]);
        assert_eq!(canonical_form(&a, Side::Pursuer).unwrap(), canonical_form(&b, Side::Pursuer).unwrap());
        let tri = g(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_ne!(canonical_form(&a, Side::Pursuer).unwrap(), canonical_form(&tri, Side::Pursuer).unwrap());
        assert_ne!(canonical_form(&a, Side::Pursuer).unwrap(), canonical_form(&a, Side::Opponent).unwrap());
    }

    #[test]
    fn cube_labelings_agree() {
        let c = cube();
        let perm = [5, 2, 7, 0, 3, 6, 1, 4];
        assert_eq!(canonical_form(&c, Side::Pursuer).unwrap(), canonical_form(&c.relabel(&perm), Side::Pursuer).unwrap());
    }

    #[test]
    fn too_large() {
        let big = GameGraph::new(9, 3);
        assert_eq!(canonical_form(&big, Side::Pursuer), Err(OracleError::TooLarge { n: 9, bound: 8 }));
    }

    #[test]
    fn colours_distinguish() {
        let p = g(3, &[(0, 1), (1, 2)]);
        let end = canonical_key(&p, &[1, 0, 0]);
        let mid = canonical_key(&p, &[0, 1, 0]);
        let other_end = canonical_key(&p, &[0, 0, 1]);
        assert_ne!(end, mid);
        assert_eq!(end, other_end);
    }
}
