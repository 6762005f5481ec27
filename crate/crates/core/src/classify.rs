//! Recognizers for the named near-cubic shapes and the avoider's reading of
//! the tracked component.
//!
//! Every shape here is "3-regular except for a few deficient vertices", so
//! the recognizers work from the list of vertices whose degree is below 3.

use serde::{Deserialize, Serialize};

use crate::graph::{component_view, eventual_cut_sides, ComponentView, GameGraph, GraphError, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    /// Two adjacent degree-2 vertices.
    #[serde(rename = "type-H")]
    TypeH,
    /// Whole-graph shape: one single-edge component, every other component
    /// missing exactly two non-adjacent edges' worth of degree.
    #[serde(rename = "type-A")]
    TypeA,
    /// Three degree-2 vertices, exactly one adjacent pair among them.
    #[serde(rename = "type-B")]
    TypeB,
    /// Two non-adjacent degree-1 vertices.
    #[serde(rename = "type-X")]
    TypeX,
    /// One degree-1 and one degree-2 vertex, not adjacent.
    #[serde(rename = "type-Y")]
    TypeY,
    #[serde(rename = "3-regular")]
    ThreeRegular,
    #[serde(rename = "other")]
    Other,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::TypeH => "type-H",
            Label::TypeA => "type-A",
            Label::TypeB => "type-B",
            Label::TypeX => "type-X",
            Label::TypeY => "type-Y",
            Label::ThreeRegular => "3-regular",
            Label::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeLabel {
    pub label: Label,
    pub evidence: Vec<Vertex>,
    /// Set on `Other` components that are 3-regular except for two
    /// non-adjacent degree-2 vertices, the building block of type A.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub open_pair: Option<(Vertex, Vertex)>,
}

impl TypeLabel {
    fn plain(label: Label, evidence: Vec<Vertex>) -> Self {
        TypeLabel { label, evidence, open_pair: None }
    }
}

/// Vertices of `comp` below degree 3, bucketed by degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Deficits {
    pub zero: Vec<Vertex>,
    pub ones: Vec<Vertex>,
    pub twos: Vec<Vertex>,
    pub over: Vec<Vertex>,
}

impl Deficits {
    pub fn of(g: &GameGraph, comp: &[Vertex]) -> Self {
        let mut d = Deficits::default();
        for &v in comp {
            match g.degree(v) {
                0 => d.zero.push(v),
                1 => d.ones.push(v),
                2 => d.twos.push(v),
                3 => {}
                _ => d.over.push(v),
            }
        }
        d
    }

    pub fn is_regular(&self) -> bool {
        self.zero.is_empty() && self.ones.is_empty() && self.twos.is_empty() && self.over.is_empty()
    }

    fn shape(&self) -> (usize, usize, usize, usize) {
        (self.zero.len(), self.ones.len(), self.twos.len(), self.over.len())
    }
}

fn is_component(g: &GameGraph, comp: &[Vertex]) -> bool {
    match comp.first() {
        None => false,
        Some(&v) => {
            let mut sorted = comp.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            sorted.len() == comp.len() && g.component_of(v) == sorted
        }
    }
}

/// Two non-adjacent degree-2 vertices with everything else cubic.
pub fn open_pair(g: &GameGraph, comp: &[Vertex]) -> Option<(Vertex, Vertex)> {
    let d = Deficits::of(g, comp);
    match (d.shape(), d.twos.as_slice()) {
        ((0, 0, 2, 0), &[p, q]) if !g.has_edge(p, q) => Some((p, q)),
        _ => None,
    }
}

pub fn classify_component(g: &GameGraph, comp: &[Vertex]) -> Result<TypeLabel, GraphError> {
    if !is_component(g, comp) {
        return Err(GraphError::NotAComponent);
    }
    let d = Deficits::of(g, comp);
    let label = match d.shape() {
        (0, 0, 0, 0) => TypeLabel::plain(Label::ThreeRegular, vec![]),
        (0, 0, 2, 0) => {
            let (u, v) = (d.twos[0], d.twos[1]);
            if g.has_edge(u, v) {
                TypeLabel::plain(Label::TypeH, vec![u, v])
            } else {
                TypeLabel { label: Label::Other, evidence: vec![u, v], open_pair: Some((u, v)) }
            }
        }
        (0, 0, 3, 0) => {
            let t = &d.twos;
            let pairs = [(t[0], t[1], t[2]), (t[0], t[2], t[1]), (t[1], t[2], t[0])];
            let adjacent: Vec<_> = pairs.iter().filter(|(a, b, _)| g.has_edge(*a, *b)).collect();
            match adjacent.as_slice() {
                [(p, q, x)] => TypeLabel::plain(Label::TypeB, vec![*p, *q, *x]),
                _ => TypeLabel::plain(Label::Other, vec![]),
            }
        }
        (0, 2, 0, 0) if !g.has_edge(d.ones[0], d.ones[1]) => {
            TypeLabel::plain(Label::TypeX, vec![d.ones[0], d.ones[1]])
        }
        (0, 1, 1, 0) if !g.has_edge(d.ones[0], d.twos[0]) => {
            TypeLabel::plain(Label::TypeY, vec![d.ones[0], d.twos[0]])
        }
        _ => TypeLabel::plain(Label::Other, vec![]),
    };
    Ok(label)
}

/// Evidence for the whole-graph type A shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeAEvidence {
    pub edge: (Vertex, Vertex),
    pub pairs: Vec<(Vertex, Vertex)>,
}

/// Isolated vertices are ignored; at least one non-edge component is
/// required so that the open pair the endgame plays on exists.
pub fn classify_graph_type_a(g: &GameGraph) -> Option<TypeAEvidence> {
    let comps = g.components();
    let (singles, rest): (Vec<_>, Vec<_>) = comps.iter().partition(|c| c.len() == 2);
    if singles.len() != 1 || rest.is_empty() {
        return None;
    }
    let edge = (singles[0][0], singles[0][1]);
    let pairs = rest.iter().map(|c| open_pair(g, c)).collect::<Option<Vec<_>>>()?;
    Some(TypeAEvidence { edge, pairs })
}

/// Which line of the main response table applies to the tracked component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "row", rename_all = "kebab-case")]
pub enum AvoiderState {
    /// Fewer than four vertices in `C`.
    Small,
    /// At least two degree-1 vertices; `ones` are the two lowest.
    RowA { ones: (Vertex, Vertex) },
    /// Single degree-1 vertex `w` hanging on degree-2 `u`; the other
    /// degree-2 vertex `v` is adjacent to neither.
    RowB { w: Vertex, u: Vertex, v: Vertex },
    /// Single degree-1 vertex `u` otherwise.
    RowC { u: Vertex, twos: Vec<Vertex> },
    /// No degree-1 vertex and some non-adjacent pair of degree-2 vertices.
    RowD { twos: Vec<Vertex> },
    /// Type H with non-zero effective freedom outside `C`.
    RowE { u: Vertex, v: Vertex },
    /// Type H with zero effective freedom outside `C`.
    RowF { u: Vertex, v: Vertex },
    WitnessAlready { vertex: Vertex },
    /// `C` is 3-regular.
    Impossible1,
    /// One deficient vertex only.
    Impossible2 { vertex: Vertex },
    /// One degree-1 vertex adjacent to the only degree-2 vertex.
    Impossible3 { one: Vertex, two: Vertex },
}

impl AvoiderState {
    pub fn name(&self) -> &'static str {
        match self {
            AvoiderState::Small => "small",
            AvoiderState::RowA { .. } => "row-a",
            AvoiderState::RowB { .. } => "row-b",
            AvoiderState::RowC { .. } => "row-c",
            AvoiderState::RowD { .. } => "row-d",
            AvoiderState::RowE { .. } => "row-e",
            AvoiderState::RowF { .. } => "row-f",
            AvoiderState::WitnessAlready { .. } => "witness-already",
            AvoiderState::Impossible1 => "impossible-1",
            AvoiderState::Impossible2 { .. } => "impossible-2",
            AvoiderState::Impossible3 { .. } => "impossible-3",
        }
    }
}

/// Classifies `C` from `view` into the main table's rows.
///
/// The three shapes where the table cannot be followed are reported first,
/// then any eventual cut vertex inside `C`, then rows in table order.
pub fn classify_avoider_state(view: &ComponentView, g: &GameGraph) -> AvoiderState {
    let c = &view.c_vertices;
    if c.len() < 4 {
        return AvoiderState::Small;
    }
    let d = Deficits::of(g, c);
    if d.is_regular() {
        return AvoiderState::Impossible1;
    }
    match (d.ones.as_slice(), d.twos.as_slice()) {
        ([one], []) | ([], [one]) => return AvoiderState::Impossible2 { vertex: *one },
        ([one], [two]) if g.has_edge(*one, *two) => {
            return AvoiderState::Impossible3 { one: *one, two: *two }
        }
        _ => {}
    }
    if let Some(&x) = c.iter().find(|&&x| cut_inside(g, c, x)) {
        return AvoiderState::WitnessAlready { vertex: x };
    }
    if d.ones.len() >= 2 {
        return AvoiderState::RowA { ones: (d.ones[0], d.ones[1]) };
    }
    if let [w] = d.ones.as_slice() {
        let w = *w;
        if let [a, b] = d.twos.as_slice() {
            let (a, b) = (*a, *b);
            if !g.has_edge(a, b) {
                if g.has_edge(w, a) && !g.has_edge(w, b) {
                    return AvoiderState::RowB { w, u: a, v: b };
                }
                if g.has_edge(w, b) && !g.has_edge(w, a) {
                    return AvoiderState::RowB { w, u: b, v: a };
                }
            }
        }
        return AvoiderState::RowC { u: w, twos: d.twos.clone() };
    }
    let t = &d.twos;
    let any_open = t.iter().enumerate().any(|(i, &a)| t[i + 1..].iter().any(|&b| !g.has_edge(a, b)));
    if any_open {
        return AvoiderState::RowD { twos: t.clone() };
    }
    // Remaining with two or more degree-2 vertices, all pairwise adjacent,
    // inside a component of at least four vertices: exactly the type H pair.
    match t.as_slice() {
        [u, v] => {
            if view.e_of_d(g) != 0 {
                AvoiderState::RowE { u: *u, v: *v }
            } else {
                AvoiderState::RowF { u: *u, v: *v }
            }
        }
        _ => AvoiderState::Impossible1,
    }
}

/// Eventual cut vertex whose saturated side lies inside `c`.
fn cut_inside(g: &GameGraph, c: &[Vertex], x: Vertex) -> bool {
    eventual_cut_sides(g, x).iter().any(|side| side.len() < c.len() && side.len() + 1 < g.n())
}

/// Labels for the component of `root` followed by all other non-isolated
/// components in order of their smallest vertex.
pub fn label_components(g: &GameGraph, root: Vertex) -> Vec<TypeLabel> {
    let view = match component_view(g, root) {
        Ok(v) => v,
        Err(_) => return Vec::new(),
    };
    let mut out = Vec::with_capacity(1 + view.d_components.len());
    let c_label = if view.c_vertices.len() == 1 && g.is_isolated(root) {
        TypeLabel::plain(Label::Other, vec![])
    } else {
        classify_component(g, &view.c_vertices).expect("component of root")
    };
    out.push(c_label);
    for d in &view.d_components {
        out.push(classify_component(g, d).expect("component"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MoveEdge;

    fn g(n: usize, edges: &[(usize, usize)]) -> GameGraph {
        GameGraph::from_edges(n, 3, edges.iter().copied()).unwrap()
    }

    /// K4 on {0,1,2,3} with 1-2 subdivided into 1-4-5-2.
    pub(crate) fn type_h() -> GameGraph {
        g(6, &[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2)])
    }

    fn all(g: &GameGraph) -> Vec<Vertex> {
        g.vertices().collect()
    }

    #[test]
    fn named_shapes() {
        let h = type_h();
        let l = classify_component(&h, &all(&h)).unwrap();
        assert_eq!((l.label, l.evidence), (Label::TypeH, vec![4, 5]));

        let mut x = GameGraph::new(6, 3);
        for e in h.edges().into_iter().filter(|e| *e != MoveEdge::new(4, 5)) {
            x.add_edge(e).unwrap();
        }
        assert_eq!(classify_component(&x, &all(&x)).unwrap().label, Label::TypeX);

        let mut y = GameGraph::new(7, 3);
        for e in h.edges() {
            y.add_edge(e).unwrap();
        }
        y.add_edge(MoveEdge::new(4, 6)).unwrap();
        let ly = classify_component(&y, &all(&y)).unwrap();
        assert_eq!((ly.label, ly.evidence), (Label::TypeY, vec![6, 5]));

        // K4 with 1-2 -> 1-4-5-2 and 0-3 -> 0-6-3
        let b = g(7, &[(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (4, 5), (5, 2), (0, 6), (6, 3)]);
        let lb = classify_component(&b, &all(&b)).unwrap();
        assert_eq!(lb.label, Label::TypeB);
        assert_eq!(lb.evidence, vec![4, 5, 6]);

        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(classify_component(&k4, &all(&k4)).unwrap().label, Label::ThreeRegular);

        let diamond = g(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let ld = classify_component(&diamond, &all(&diamond)).unwrap();
        assert_eq!(ld.label, Label::Other);
        assert_eq!(ld.open_pair, Some((0, 3)));

        assert_eq!(classify_component(&diamond, &[0, 1]), Err(GraphError::NotAComponent));
    }

    #[test]
    fn type_a_examples() {
        let a = g(6, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 5)]);
        assert_eq!(classify_graph_type_a(&a), Some(TypeAEvidence { edge: (4, 5), pairs: vec![(0, 3)] }));
        assert_eq!(classify_graph_type_a(&g(4, &[(0, 1), (2, 3)])), None);
        assert_eq!(classify_graph_type_a(&g(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])), None);
    }

    #[test]
    fn avoider_rows() {
        let path = g(6, &[(0, 1), (1, 2), (2, 3)]);
        let v = component_view(&path, 0).unwrap();
        assert_eq!(classify_avoider_state(&v, &path), AvoiderState::RowA { ones: (0, 3) });

        let mut h = GameGraph::new(8, 3);
        for e in type_h().edges() {
            h.add_edge(e).unwrap();
        }
        h.add_edge(MoveEdge::new(6, 7)).unwrap();
        let v = component_view(&h, 0).unwrap();
        assert_eq!(classify_avoider_state(&v, &h), AvoiderState::RowE { u: 4, v: 5 });

        let v = component_view(&type_h(), 0).unwrap();
        assert_eq!(classify_avoider_state(&v, &type_h()), AvoiderState::RowF { u: 4, v: 5 });

        // K4 with one edge subdivided once: a single degree-2 vertex
        let one = g(6, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 1)]);
        let v = component_view(&one, 0).unwrap();
        assert_eq!(classify_avoider_state(&v, &one), AvoiderState::Impossible2 { vertex: 4 });

        let small = g(5, &[(0, 1), (1, 2)]);
        let v = component_view(&small, 0).unwrap();
        assert_eq!(classify_avoider_state(&v, &small), AvoiderState::Small);
    }
}
