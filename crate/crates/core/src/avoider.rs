//! The non-2-connectedness strategy for cap 3.
//!
//! The avoider tracks the component `C` of a root vertex `x` and, on every
//! turn, either grows `C`, spends its freedom by the main table, or follows
//! one of the short forcing lines that start once `C` is type H with no
//! effective freedom left elsewhere. Every line ends in a witness: a
//! saturated component that does not span, or an eventual cut vertex.
//!
//! Positions a line does not cover fall back to any witness-creating move,
//! then to the main table.

use serde::{Deserialize, Serialize};

use crate::classify::{classify_avoider_state, classify_component, AvoiderState, Deficits, Label};
use crate::graph::{component_view, has_witness, ComponentView, GameGraph, MoveEdge, Vertex};
use crate::strategy::{Strategy, StrategyDecision, StrategyError};

/// Where the avoider is in its plan. Bindings name the vertices each line
/// plays on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "phase", rename_all = "kebab-case")]
pub enum Phase {
    Main,
    /// `v` was joined to `p` in another component; `w` and `q` are the
    /// remaining degree-2 vertices, and joining them saturates everything.
    BalancedFollow { w: Vertex, q: Vertex },
    /// Opening line with nothing outside `C`. `u` of the adjacent pair got
    /// the fresh vertex `x`; `v` is the other of the pair.
    OpenAttached { v: Vertex, x: Vertex },
    /// Degree-1 `a`, degree-2 `b` holding degree-1 `c`.
    OpenFork { a: Vertex, b: Vertex, c: Vertex },
    /// Degree-1 `t` and an adjacent degree-2 pair `l`, `m`.
    OpenHook { t: Vertex, l: Vertex, m: Vertex },
    /// Degree-2 path `l - m - r` and a separate single edge `y - z`.
    OpenBridge { l: Vertex, m: Vertex, r: Vertex, y: Vertex, z: Vertex },
    /// Reply line: `s` of the pair took `x` from the fresh edge `x - y`;
    /// `t` is the other of the pair.
    ReplyAttached { t: Vertex, x: Vertex, y: Vertex },
    /// Single-edge endgame: `p`, `q` are a non-adjacent degree-2 pair.
    TypeAEnd { p: Vertex, q: Vertex },
    /// Three degree-2 vertices with `p ~ q` and `x` apart.
    TypeBEnd { p: Vertex, q: Vertex, x: Vertex },
    /// `x` was extended to `y` and `y` joined to `p`; `q`, `y` are left.
    TypeBHooked { q: Vertex, y: Vertex },
    WitnessHold,
}

impl Phase {
    fn code(&self) -> u32 {
        match self {
            Phase::Main => 0,
            Phase::BalancedFollow { .. } => 1,
            Phase::OpenAttached { .. } => 2,
            Phase::OpenFork { .. } => 3,
            Phase::OpenHook { .. } => 4,
            Phase::OpenBridge { .. } => 5,
            Phase::ReplyAttached { .. } => 6,
            Phase::TypeAEnd { .. } => 7,
            Phase::TypeBEnd { .. } => 8,
            Phase::TypeBHooked { .. } => 9,
            Phase::WitnessHold => 10,
        }
    }

    fn bindings(&self) -> Vec<Vertex> {
        match *self {
            Phase::Main | Phase::WitnessHold => vec![],
            Phase::BalancedFollow { w, q } => vec![w, q],
            Phase::OpenAttached { v, x } => vec![v, x],
            Phase::OpenFork { a, b, c } => vec![a, b, c],
            Phase::OpenHook { t, l, m } => vec![t, l, m],
            Phase::OpenBridge { l, m, r, y, z } => vec![l, m, r, y, z],
            Phase::ReplyAttached { t, x, y } => vec![t, x, y],
            Phase::TypeAEnd { p, q } => vec![p, q],
            Phase::TypeBEnd { p, q, x } => vec![p, q, x],
            Phase::TypeBHooked { q, y } => vec![q, y],
        }
    }
}

/// Strategy state: the tracked root and the active phase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoiderPlan {
    pub root_x: Option<Vertex>,
    pub phase: Phase,
}

impl Default for AvoiderPlan {
    fn default() -> Self {
        AvoiderPlan { root_x: None, phase: Phase::Main }
    }
}

fn dec(a: Vertex, b: Vertex, rule: &str) -> StrategyDecision {
    StrategyDecision::new(a, b, rule)
}

fn ok(g: &GameGraph, a: Vertex, b: Vertex) -> bool {
    g.is_legal(MoveEdge::new(a, b))
}

/// Lowest legal edge that creates a witness.
pub fn forcing_move(g: &GameGraph) -> Option<MoveEdge> {
    g.legal_moves().into_iter().find(|&m| has_witness(&g.with_edge(m).expect("legal")).is_some())
}

/// Lowest legal edge avoiding the witness's vertices when one exists.
pub fn hold_move(g: &GameGraph) -> Option<MoveEdge> {
    let keep = has_witness(g).map(|w| w.footprint()).unwrap_or_default();
    let moves = g.legal_moves();
    moves.iter().copied().find(|m| !keep.contains(&m.u) && !keep.contains(&m.v)).or(moves.first().copied())
}

/// A labeling `((u, v), (p, q))` of four degree-2 vertices with `u !~ v`
/// and `p !~ q`.
///
/// Fix the first vertex `u`. If it sees none of the others, the other three
/// cannot form a triangle inside a larger component, so some pair of them is
/// open. If it sees one, `v`, then `v` sees at most one of the last two. If
/// it sees two, those two are not adjacent or they would close a triangle.
pub fn pair_four_degree2(
    g: &GameGraph,
    comp: &[Vertex],
    four: [Vertex; 4],
) -> Result<((Vertex, Vertex), (Vertex, Vertex)), StrategyError> {
    let d = Deficits::of(g, comp);
    let mut sorted = four;
    sorted.sort_unstable();
    if !(d.zero.is_empty() && d.ones.is_empty() && d.over.is_empty() && d.twos == sorted) {
        return Err(StrategyError::Precondition(format!(
            "{four:?} are not exactly the degree-2 vertices of the component"
        )));
    }
    let [u, a, b, c] = four;
    let adj = |x, y| g.has_edge(x, y);
    let seen: Vec<Vertex> = [a, b, c].into_iter().filter(|&y| adj(u, y)).collect();
    let pairing = match seen.as_slice() {
        [] => [(a, (b, c)), (b, (a, c)), (c, (a, b))].into_iter().find(|&(_, (p, q))| !adj(p, q)).map(|(v, pq)| ((u, v), pq)),
        [v] => {
            let rest: Vec<Vertex> = [a, b, c].into_iter().filter(|y| y != v).collect();
            let (p, q) = if adj(*v, rest[0]) { (rest[0], rest[1]) } else { (rest[1], rest[0]) };
            // v ~ p at most, so u !~ p and v !~ q
            Some(((u, p), (*v, q)))
        }
        [v, q] => {
            let p = [a, b, c].into_iter().find(|y| y != v && y != q).unwrap();
            Some(((u, p), (*v, *q)))
        }
        _ => None,
    };
    match pairing {
        Some(((u, v), (p, q))) if !adj(u, v) && !adj(p, q) => Ok(((u, v), (p, q))),
        _ => Err(StrategyError::NoValidPairing),
    }
}

/// The avoider for cap 3.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvoiderStrategy {
    pub plan: AvoiderPlan,
    /// Rule of the last move, for the post-move soundness check.
    #[serde(skip)]
    last_rule: String,
    /// Degree-1 vertices of `C` before the last move.
    #[serde(skip)]
    ones_before: usize,
}

impl AvoiderStrategy {
    pub fn new() -> Self {
        AvoiderStrategy::default()
    }

    /// Tracks `root` from the start, for play on a non-empty initial graph.
    pub fn with_root(root: Vertex) -> Self {
        AvoiderStrategy { plan: AvoiderPlan { root_x: Some(root), phase: Phase::Main }, ..Default::default() }
    }

    pub fn root(&self) -> Option<Vertex> {
        self.plan.root_x
    }
}

impl Strategy for AvoiderStrategy {
    fn respond(&mut self, g: &GameGraph, opp: Option<MoveEdge>) -> Result<StrategyDecision, StrategyError> {
        let (d, plan) = avoider_respond(&self.plan, g, opp)?;
        self.plan = plan;
        self.last_rule = d.rule.clone();
        self.ones_before = self.plan.root_x.map_or(0, |r| ones_in_c(g, r));
        Ok(d)
    }

    /// Bit 0 marks the root; bit `i + 1` marks the `i`-th phase binding.
    fn marks(&self, n: usize) -> Vec<u32> {
        let mut m = vec![0; n];
        if let Some(r) = self.plan.root_x {
            m[r] |= 1;
        }
        for (i, v) in self.plan.phase.bindings().into_iter().enumerate() {
            m[v] |= 2 << i;
        }
        m
    }

    fn phase_code(&self) -> u32 {
        self.plan.phase.code()
    }

    /// A main-table move that joins or spends vertices of `C` leaves at most
    /// one degree-1 vertex there, or at least fewer than before.
    fn check(&self, g: &GameGraph) -> Result<(), String> {
        let Some(root) = self.plan.root_x else { return Err("no root".into()) };
        if ["main-row-a", "main-row-b", "main-row-c", "main-row-d"].contains(&self.last_rule.as_str()) {
            let ones = ones_in_c(g, root);
            if ones > 1 && ones >= self.ones_before {
                return Err(format!("{} left {ones} degree-1 vertices in the tracked component", self.last_rule));
            }
        }
        Ok(())
    }
}

fn ones_in_c(g: &GameGraph, root: Vertex) -> usize {
    g.component_of(root).iter().filter(|&&v| g.degree(v) == 1).count()
}

/// One avoider move from `plan` with `g` already containing `opp`.
pub fn avoider_respond(
    plan: &AvoiderPlan,
    g: &GameGraph,
    opp: Option<MoveEdge>,
) -> Result<(StrategyDecision, AvoiderPlan), StrategyError> {
    if g.k() != 3 {
        return Err(StrategyError::Precondition(format!("the avoider plays cap 3, not {}", g.k())));
    }
    if g.is_terminal() {
        return Err(StrategyError::NoLegalMove);
    }
    let mut plan = plan.clone();
    let root = match plan.root_x {
        Some(r) => r,
        None => match opp {
            None if g.edge_count() == 0 => {
                plan.root_x = Some(0);
                return Ok((dec(0, 1, "avoid-open"), plan));
            }
            None => lowest_non_isolated(g).unwrap_or(0),
            Some(m) => m.u,
        },
    };
    plan.root_x = Some(root);
    if has_witness(g).is_some() {
        plan.phase = Phase::WitnessHold;
        let m = hold_move(g).ok_or(StrategyError::NoLegalMove)?;
        return Ok((StrategyDecision { edge: m, rule: "hold".into() }, plan));
    }
    let line = match (&plan.phase, opp) {
        (Phase::Main | Phase::WitnessHold, _) => None,
        (phase, Some(m)) => opening_tree_respond(phase, g, m),
        (_, None) => None,
    };
    let (d, phase) = match line {
        Some(step) => step,
        None if plan.phase != Phase::Main && plan.phase != Phase::WitnessHold => match forcing_move(g) {
            Some(m) => (StrategyDecision { edge: m, rule: "force".into() }, Phase::Main),
            None => main_move(g, root, opp)?,
        },
        None => main_move(g, root, opp)?,
    };
    if !g.is_legal(d.edge) {
        return Err(StrategyError::StrategyBreak {
            rule: d.rule.clone(),
            detail: format!("{} is illegal in {}", d.edge, g.to_text().replace('\n', ";")),
        });
    }
    plan.phase = phase;
    Ok((d, plan))
}

fn lowest_non_isolated(g: &GameGraph) -> Option<Vertex> {
    g.vertices().find(|&v| !g.is_isolated(v))
}

/// Main table, with the balanced reply table taking over when `C` was
/// type H with no effective freedom outside it before the opponent moved.
fn main_move(g: &GameGraph, root: Vertex, opp: Option<MoveEdge>) -> Result<(StrategyDecision, Phase), StrategyError> {
    if let Some(m) = opp {
        if let Some(step) = balanced_reply(g, root, m) {
            return Ok(step);
        }
    }
    let view = component_view(g, root).map_err(|e| StrategyError::Precondition(e.to_string()))?;
    let state = classify_avoider_state(&view, g);
    let c = &view.c_vertices;
    let step = match state {
        AvoiderState::Small => {
            let from = c.iter().copied().find(|&v| g.degree(v) < 3);
            match (from, g.lowest_isolated_except(&[root])) {
                (Some(a), Some(b)) => Some((dec(a, b, "grow-small"), Phase::Main)),
                _ => None,
            }
        }
        AvoiderState::RowA { ones: (a, b) } => Some((dec(a, b, "main-row-a"), Phase::Main)),
        // Joining the two degree-2 vertices leaves only the pendant, whose
        // neighbour becomes an eventual cut vertex.
        AvoiderState::RowB { u, v, .. } => Some((dec(u, v, "main-row-b"), Phase::Main)),
        AvoiderState::RowC { u, twos } => row_c(g, u, &twos).map(|(a, b)| (dec(a, b, "main-row-c"), Phase::Main)),
        AvoiderState::RowD { twos } => row_d(g, c, &twos).map(|(a, b, rule)| (dec(a, b, rule), Phase::Main)),
        AvoiderState::RowE { u, v } => row_e(g, &view, u, v).map(|(a, b)| (dec(a, b, "main-row-e"), Phase::Main)),
        AvoiderState::RowF { u, v } => Some(balanced_open(g, &view, u, v)),
        AvoiderState::WitnessAlready { .. }
        | AvoiderState::Impossible1
        | AvoiderState::Impossible2 { .. }
        | AvoiderState::Impossible3 { .. } => None,
    };
    match step {
        Some(s) if g.is_legal(s.0.edge) => Ok(s),
        _ => {
            if let Some(m) = forcing_move(g) {
                return Ok((StrategyDecision { edge: m, rule: "force".into() }, Phase::Main));
            }
            let m = hold_move(g).ok_or(StrategyError::NoLegalMove)?;
            Ok((StrategyDecision { edge: m, rule: "hold".into() }, Phase::Main))
        }
    }
}

/// One degree-1 vertex `u`; the table's catch-all row, refined so the move
/// never produces an adjacent degree-2 pair when it can be helped.
fn row_c(g: &GameGraph, u: Vertex, twos: &[Vertex]) -> Option<(Vertex, Vertex)> {
    match twos {
        [] => None,
        [t] => Some((u, *t)),
        [v, w] => {
            let (v, w) = (*v, *w);
            if g.has_edge(v, w) {
                // u hangs on one of the pair or on neither
                if g.has_edge(u, v) {
                    Some((u, w))
                } else if g.has_edge(u, w) {
                    Some((u, v))
                } else {
                    Some((u, v))
                }
            } else {
                Some((u, v))
            }
        }
        _ => twos.iter().find(|&&t| !g.has_edge(u, t)).or(twos.first()).map(|&t| (u, t)),
    }
}

fn row_d(g: &GameGraph, c: &[Vertex], twos: &[Vertex]) -> Option<(Vertex, Vertex, &'static str)> {
    let open_pairs = || {
        twos.iter()
            .enumerate()
            .flat_map(move |(i, &a)| twos[i + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| !g.has_edge(a, b))
    };
    match twos.len() {
        0 | 1 => None,
        2 | 3 => open_pairs().next().map(|(a, b)| (a, b, "main-row-d")),
        4 => {
            let four = [twos[0], twos[1], twos[2], twos[3]];
            pair_four_degree2(g, c, four).ok().map(|((u, v), _)| (u, v, "main-row-d"))
        }
        _ => {
            let clean = open_pairs().find(|&(a, b)| {
                let rest: Vec<Vertex> = twos.iter().copied().filter(|&t| t != a && t != b).collect();
                rest.iter().enumerate().all(|(i, &x)| rest[i + 1..].iter().all(|&y| !g.has_edge(x, y)))
            });
            match clean {
                Some((a, b)) => Some((a, b, "main-row-d")),
                None => open_pairs().next().map(|(a, b)| (a, b, "main-row-d-gap")),
            }
        }
    }
}

/// Type H `C` with effective freedom elsewhere: tie `C` to the remainder.
/// Prefers degree-2 targets, then degree-1, and skips joins that would make
/// the merged component type Y.
fn row_e(g: &GameGraph, view: &ComponentView, u: Vertex, v: Vertex) -> Option<(Vertex, Vertex)> {
    let mut targets: Vec<Vertex> =
        view.d_components.iter().flatten().copied().filter(|&t| g.degree(t) == 1 || g.degree(t) == 2).collect();
    targets.sort_by_key(|&t| (std::cmp::Reverse(g.degree(t)), t));
    let candidates: Vec<(Vertex, Vertex)> = targets.iter().flat_map(|&t| [(u, t), (v, t)]).collect();
    let makes_y = |&(a, b): &(Vertex, Vertex)| {
        let after = g.with_edge(MoveEdge::new(a, b)).expect("legal");
        let comp = after.component_of(a);
        classify_component(&after, &comp).map(|l| l.label == Label::TypeY).unwrap_or(false)
    };
    candidates.iter().copied().find(|c| !makes_y(c)).or(candidates.first().copied())
}

/// Avoider to move with `C` type H and no effective freedom elsewhere.
fn balanced_open(g: &GameGraph, view: &ComponentView, u: Vertex, v: Vertex) -> (StrategyDecision, Phase) {
    if let Some(dj) = view.d_components.first() {
        let twos: Vec<Vertex> = dj.iter().copied().filter(|&t| g.degree(t) == 2).collect();
        if let [p, q] = twos.as_slice() {
            return (dec(u, *p, "balanced-p2-a"), Phase::BalancedFollow { w: v, q: *q });
        }
    }
    match g.lowest_isolated_except(&[view.root_x]) {
        Some(x) if view.d_components.is_empty() => (dec(u, x, "open-tree-attach"), Phase::OpenAttached { v, x }),
        _ => (dec(u, v, "balanced-p2-unmatched"), Phase::Main),
    }
}

/// The degree-2 pair of a type H `C` and the pairs of every other component,
/// when every component outside `C` has exactly two degree-2 vertices.
struct Balanced {
    v: Vertex,
    w: Vertex,
    pairs: Vec<(Vertex, Vertex)>,
}

fn balanced_shape(g: &GameGraph, root: Vertex) -> Option<Balanced> {
    let view = component_view(g, root).ok()?;
    if view.c_vertices.len() < 4 {
        return None;
    }
    let AvoiderState::RowF { u, v } = classify_avoider_state(&view, g) else { return None };
    let mut pairs = Vec::new();
    for d in &view.d_components {
        let dd = Deficits::of(g, d);
        if !(dd.ones.is_empty() && dd.zero.is_empty()) {
            return None;
        }
        match dd.twos.as_slice() {
            [p, q] => pairs.push((*p, *q)),
            _ => return None,
        }
    }
    Some(Balanced { v: u, w: v, pairs })
}

/// The opponent moved while `C` was type H with no effective freedom
/// elsewhere; every legal reply shape has a mirror.
fn balanced_reply(g: &GameGraph, root: Vertex, m: MoveEdge) -> Option<(StrategyDecision, Phase)> {
    let before = g.without_edge(m)?;
    if has_witness(&before).is_some() {
        return None;
    }
    let b = balanced_shape(&before, root)?;
    let partner = |x: Vertex| -> Option<(usize, Vertex)> {
        b.pairs.iter().enumerate().find_map(|(i, &(p, q))| {
            if x == p {
                Some((i, q))
            } else if x == q {
                Some((i, p))
            } else {
                None
            }
        })
    };
    let in_c_pair = |x: Vertex| x == b.v || x == b.w;
    let other_c = |x: Vertex| if x == b.v { b.w } else { b.v };
    let fresh = |x: Vertex| before.is_isolated(x);
    let (a, c) = (m.u, m.v);
    let step = |x, y, rule: &str| Some((dec(x, y, rule), Phase::Main));
    // (a) two different components' pairs
    if let (Some((i, pa)), Some((j, pc))) = (partner(a), partner(c)) {
        if i != j {
            return step(pa, pc, "balanced-p1-a");
        }
        // (c) a component closed itself
        let x = before.lowest_isolated()?;
        let y = before.lowest_isolated_except(&[x])?;
        return step(x, y, "balanced-p1-c");
    }
    for (s, t) in [(a, c), (c, a)] {
        // (b) the pair of C to a pair elsewhere
        if in_c_pair(s) {
            if let Some((_, pt)) = partner(t) {
                return step(other_c(s), pt, "balanced-p1-b");
            }
            // (d) the pair of C to a fresh vertex
            if fresh(t) {
                return step(other_c(s), t, "balanced-p1-d");
            }
        }
        // (e) a pair elsewhere to a fresh vertex
        if let Some((_, ps)) = partner(s) {
            if fresh(t) {
                return step(ps, t, "balanced-p1-e");
            }
        }
    }
    // (f) two fresh vertices
    if fresh(a) && fresh(c) {
        if let Some(&(p, q)) = b.pairs.first() {
            return Some((dec(b.v, p, "balanced-p1-f"), Phase::TypeAEnd { p: b.w, q }));
        }
        return Some((dec(b.v, a, "reply-tree-attach"), Phase::ReplyAttached { t: b.w, x: a, y: c }));
    }
    None
}

/// Continues an active forcing line after the opponent's edge `m`.
/// `None` means the position left the line.
pub fn opening_tree_respond(phase: &Phase, g: &GameGraph, m: MoveEdge) -> Option<(StrategyDecision, Phase)> {
    let before = g.without_edge(m)?;
    let fresh = |x: Vertex| before.is_isolated(x);
    let touches = |x: Vertex| m.touches(x);
    let main = |a, b, rule: &str| Some((dec(a, b, rule), Phase::Main));
    match *phase {
        Phase::BalancedFollow { w, q } => {
            for (t, partner) in [(w, q), (q, w)] {
                if let Some(a) = m.other(t) {
                    if a == partner {
                        return None;
                    }
                    if g.degree(a) <= 2 && !g.has_edge(partner, a) {
                        return main(partner, a, "balanced-p2-cut");
                    }
                    let b = g
                        .component_of(a)
                        .into_iter()
                        .find(|&b| b != partner && before.degree(b) == 2 && g.degree(b) == 2 && !g.has_edge(partner, b))?;
                    return main(partner, b, "balanced-p2-saturate");
                }
            }
            main(w, q, "balanced-p2-close")
        }
        Phase::OpenAttached { v, x } => {
            let y = m.other(v)?;
            if !fresh(y) {
                return None;
            }
            let (a, b) = (x.max(y), x.min(y));
            let z = g.lowest_isolated()?;
            Some((dec(b, z, "open-tree-fork"), Phase::OpenFork { a, b, c: z }))
        }
        Phase::OpenFork { a, b, c } => {
            let (s, y) = if fresh(m.v) { (m.u, m.v) } else { (m.v, m.u) };
            if fresh(s) && fresh(y) {
                let (l, r) = (a, b);
                return Some((dec(a, c, "open-tree-bridge"), Phase::OpenBridge { l, m: c, r, y: s, z: y }));
            }
            if !fresh(y) {
                return None;
            }
            if s == c {
                Some((dec(b, y, "open-tree-hook-c"), Phase::OpenHook { t: a, l: c, m: y }))
            } else if s == a {
                Some((dec(a, c, "open-tree-hook-a"), Phase::OpenHook { t: y, l: b, m: c }))
            } else if s == b {
                Some((dec(y, c, "open-tree-hook-b"), Phase::OpenHook { t: a, l: y, m: c }))
            } else {
                None
            }
        }
        Phase::OpenHook { t, l, m: mm } => {
            if fresh(m.u) && fresh(m.v) {
                return Some((dec(mm, t, "open-tree-hook-to-a"), Phase::TypeAEnd { p: l, q: t }));
            }
            let (s, y) = if fresh(m.v) { (m.u, m.v) } else { (m.v, m.u) };
            if !fresh(y) {
                return None;
            }
            if s == t {
                Some((dec(mm, y, "open-tree-hook-to-b"), Phase::TypeBEnd { p: t, q: y, x: l }))
            } else if s == l || s == mm {
                let other = if s == l { mm } else { l };
                Some((dec(t, y, "open-tree-hook-to-b"), Phase::TypeBEnd { p: t, q: y, x: other }))
            } else {
                None
            }
        }
        Phase::OpenBridge { l, m: mid, r, y, z } => {
            for (end, far) in [(l, r), (r, l)] {
                if let Some(e) = m.other(end) {
                    if e == y || e == z {
                        let e2 = if e == y { z } else { y };
                        return Some((dec(mid, e2, "open-tree-bridge-to-b"), Phase::TypeBEnd { p: e, q: e2, x: far }));
                    }
                    if fresh(e) {
                        return Some((dec(mid, e, "open-tree-bridge-to-a"), Phase::TypeAEnd { p: far, q: e }));
                    }
                }
            }
            None
        }
        Phase::ReplyAttached { t, x, y } => {
            let (s, z) = if fresh(m.v) { (m.u, m.v) } else { (m.v, m.u) };
            if fresh(z) && s == t {
                return main(y, z, "reply-tree-path");
            }
            if fresh(z) && s == x {
                return Some((dec(y, z, "reply-tree-to-b"), Phase::TypeBEnd { p: y, q: z, x: t }));
            }
            None
        }
        Phase::TypeAEnd { p, q } => type_a_end(g, &before, m, p, q),
        Phase::TypeBEnd { p, q, x } => type_b_end(g, &before, m, p, q, x),
        Phase::TypeBHooked { q, y } => {
            let s = |a, b, rule: &str| Some((dec(a, b, rule), Phase::Main));
            if touches(q) {
                let z = m.other(q)?;
                if fresh(z) && ok(g, y, z) {
                    return s(y, z, "typeB-end-cut");
                }
                None
            } else if touches(y) {
                let z = m.other(y)?;
                if fresh(z) && ok(g, q, z) {
                    return s(q, z, "typeB-end-cut");
                }
                None
            } else if ok(g, q, y) {
                s(q, y, "typeB-end-close")
            } else {
                None
            }
        }
        Phase::Main | Phase::WitnessHold => None,
    }
}

/// Single-edge endgame on the opponent's move `m`.
pub fn type_a_end(
    g: &GameGraph,
    before: &GameGraph,
    m: MoveEdge,
    p: Vertex,
    q: Vertex,
) -> Option<(StrategyDecision, Phase)> {
    for (s, partner) in [(p, q), (q, p)] {
        if let Some(v) = m.other(s) {
            if g.degree(v) <= 2 && ok(g, partner, v) {
                return Some((dec(partner, v, "typeA-end-cut"), Phase::Main));
            }
            // v was the degree-2 vertex of another open component
            let v2 = before
                .component_of(v)
                .into_iter()
                .find(|&b| b != v && before.degree(b) == 2 && g.degree(b) == 2 && ok(g, partner, b))?;
            return Some((dec(partner, v2, "typeA-end-saturate"), Phase::Main));
        }
    }
    if ok(g, p, q) {
        return Some((dec(p, q, "typeA-end-close"), Phase::Main));
    }
    None
}

/// Three degree-2 vertices `p ~ q` and `x`: joining `x` to either of the
/// adjacent pair cuts off the other.
pub fn type_b_end(
    g: &GameGraph,
    before: &GameGraph,
    m: MoveEdge,
    p: Vertex,
    q: Vertex,
    x: Vertex,
) -> Option<(StrategyDecision, Phase)> {
    for (a, b) in [(p, x), (q, x)] {
        if ok(g, a, b) && has_witness(&g.with_edge(MoveEdge::new(a, b)).expect("legal")).is_some() {
            return Some((dec(a, b, "typeB-end-cut"), Phase::Main));
        }
    }
    let y = m.other(x)?;
    if before.is_isolated(y) && ok(g, y, p) {
        return Some((dec(y, p, "typeB-end-hook"), Phase::TypeBHooked { q, y }));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> GameGraph {
        GameGraph::from_edges(n, 3, edges.iter().copied()).unwrap()
    }

    fn cube_minus(missing: &[(usize, usize)]) -> GameGraph {
        let mut e = Vec::new();
        for a in 0..8usize {
            for bit in 0..3 {
                let b = a ^ (1 << bit);
                if a < b && !missing.contains(&(a, b)) {
                    e.push((a, b));
                }
            }
        }
        g(8, &e)
    }

    fn play(s: &mut AvoiderStrategy, pos: &GameGraph, opp: Option<(usize, usize)>) -> StrategyDecision {
        s.respond(pos, opp.map(|(a, b)| MoveEdge::new(a, b))).unwrap()
    }

    #[test]
    fn row_a_joins_the_pendants() {
        let pos = g(8, &[(0, 1), (1, 2), (2, 3)]);
        let mut s = AvoiderStrategy::with_root(0);
        let d = play(&mut s, &pos, Some((2, 3)));
        assert_eq!((d.edge, d.rule.as_str()), (MoveEdge::new(0, 3), "main-row-a"));
    }

    #[test]
    fn small_component_grows_into_the_pool() {
        let pos = g(8, &[(0, 1)]);
        let mut s = AvoiderStrategy::new();
        let d = play(&mut s, &pos, Some((0, 1)));
        assert_eq!((d.edge, d.rule.as_str()), (MoveEdge::new(0, 2), "grow-small"));
        assert_eq!(s.root(), Some(0));
    }

    #[test]
    fn row_e_reaches_into_the_remainder() {
        // type H on 0..6 with pair 4 ~ 5, a diamond on 6..10 with open pair 6, 9
        let mut e = vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2)];
        e.extend([(6, 7), (6, 8), (7, 8), (7, 9), (8, 9)]);
        let pos = g(12, &e);
        // the diamond alone has no effective freedom, so this is the balanced case
        let mut s = AvoiderStrategy::with_root(0);
        let d = play(&mut s, &pos, Some((8, 9)));
        assert_eq!((d.edge, d.rule.as_str()), (MoveEdge::new(4, 6), "balanced-p2-a"));
        let pos = g(14, &[e.as_slice(), &[(10, 11), (11, 12)]].concat());
        let mut s = AvoiderStrategy::with_root(0);
        let d = play(&mut s, &pos, Some((11, 12)));
        assert_eq!((d.edge, d.rule.as_str()), (MoveEdge::new(4, 6), "main-row-e"));
    }

    #[test]
    fn opening_move_when_first() {
        let mut s = AvoiderStrategy::new();
        let d = play(&mut s, &GameGraph::new(6, 3), None);
        assert_eq!(d.edge, MoveEdge::new(0, 1));
    }

    #[test]
    fn pairings_avoid_adjacent_vertices() {
        let c = cube_minus(&[(0, 1), (6, 7)]);
        let all: Vec<usize> = (0..8).collect();
        assert_eq!(pair_four_degree2(&c, &all, [0, 1, 6, 7]).unwrap(), ((0, 1), (6, 7)));

        // prism on triangles 0-1-2 and 3-4-5 without 0-3 and 1-2:
        // u = 0 sees v = 1 and q = 2, and p = 3 is apart
        let prism = g(6, &[(0, 1), (0, 2), (3, 4), (3, 5), (4, 5), (1, 4), (2, 5)]);
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(pair_four_degree2(&prism, &all, [0, 1, 3, 2]).unwrap(), ((0, 3), (1, 2)));
        // u = 1 sees only 0, which sees 2 as well
        assert_eq!(pair_four_degree2(&prism, &all, [1, 0, 2, 3]).unwrap(), ((1, 2), (0, 3)));
    }

    #[test]
    fn three_degree2_is_rejected() {
        let mut e = vec![(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2), (0, 6), (6, 3)];
        e.sort();
        let b = g(7, &e);
        let all: Vec<usize> = (0..7).collect();
        assert!(matches!(pair_four_degree2(&b, &all, [4, 5, 6, 0]), Err(StrategyError::Precondition(_))));
    }

    #[test]
    fn balanced_mirrors() {
        // type H on 0..6 (pair 4 ~ 5) and two diamonds with open pairs 6, 9 and 10, 13
        let mut e = vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2)];
        e.extend([(6, 7), (6, 8), (7, 8), (7, 9), (8, 9)]);
        e.extend([(10, 11), (10, 12), (11, 12), (11, 13), (12, 13)]);
        let base = g(16, &e);
        let cases = [((6, 10), (9, 13)), ((4, 14), (5, 14)), ((6, 14), (9, 14))];
        for (opp, reply) in cases {
            let pos = base.with_edge(MoveEdge::new(opp.0, opp.1)).unwrap();
            let mut s = AvoiderStrategy::with_root(0);
            let d = play(&mut s, &pos, Some(opp));
            assert_eq!(d.edge, MoveEdge::new(reply.0, reply.1), "{opp:?} {}", d.rule);
            assert!(d.rule.starts_with("balanced-p1"));
        }
    }

    #[test]
    fn type_a_endgame() {
        // diamond 0..4 open pair 0, 3 and single edge 4-5
        let base = g(8, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 5)]);
        let pos = base.with_edge(MoveEdge::new(0, 4)).unwrap();
        let (d, _) = type_a_end(&pos, &base, MoveEdge::new(0, 4), 0, 3).unwrap();
        assert_eq!(d.edge, MoveEdge::new(3, 4));
        let pos = base.with_edge(MoveEdge::new(6, 7)).unwrap();
        let (d, _) = type_a_end(&pos, &base, MoveEdge::new(6, 7), 0, 3).unwrap();
        assert_eq!(d.edge, MoveEdge::new(0, 3));
    }

    #[test]
    fn type_b_endgame() {
        // K4 with 1-2 -> 1-4-5-2 and 0-3 -> 0-6-3: p, q = 4, 5 and x = 6
        let b = g(9, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2), (0, 6), (6, 3)]);
        let pos = b.with_edge(MoveEdge::new(7, 8)).unwrap();
        let (d, _) = type_b_end(&pos, &b, MoveEdge::new(7, 8), 4, 5, 6).unwrap();
        assert_eq!(d.edge, MoveEdge::new(4, 6));
        assert!(has_witness(&pos.with_edge(d.edge).unwrap()).is_some());
    }
}
