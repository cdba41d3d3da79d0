//! Bag decomposition of {claw, diamond}-free graphs and the attachment
//! relation between modulator vertices and bags.
//!
//! A bag is a maximal clique, or a singleton `{v}` for a simplicial vertex
//! `v`. In a {claw, diamond}-free graph every non-isolated vertex lies in
//! exactly two bags, every edge in exactly one, two bags share at most one
//! vertex, and two bags sharing `v` have no edges between them apart from
//! those through `v`.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::obstructions::{find_obstruction, Obstruction};

pub type BagId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph is not {{claw, diamond}}-free: {witness:?}")]
pub struct NotDominoError {
    pub witness: Obstruction,
}

/// Bags of `G'`, where `G'` is either a whole graph or the host graph with
/// some vertices removed. Vertex ids are always those of the host graph;
/// removed vertices belong to no bag.
#[derive(Clone, Debug)]
pub struct BagDecomposition {
    /// Each bag sorted ascending.
    pub bags: Vec<Vec<Vertex>>,
    /// For every host vertex, the bags containing it.
    pub vertex_bags: Vec<Vec<BagId>>,
    /// For every edge of `G'`, the bag containing it.
    pub edge_bag: HashMap<Edge, BagId>,
}

impl BagDecomposition {
    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn bag(&self, id: BagId) -> &[Vertex] {
        &self.bags[id]
    }

    pub fn bags_of(&self, v: Vertex) -> &[BagId] {
        &self.vertex_bags[v]
    }

    /// The bag holding `v` other than `bag`, if any.
    pub fn other_bag(&self, v: Vertex, bag: BagId) -> Option<BagId> {
        self.vertex_bags[v].iter().copied().find(|&b| b != bag)
    }
}

/// `B(g)`; fails with a witness when `g` contains an induced claw or diamond.
pub fn bag_decomposition(g: &Graph) -> Result<BagDecomposition, NotDominoError> {
    decompose_without(g, &vec![false; g.n()])
}

/// `B(g - X)` in host ids, where `removed[v]` marks membership in `X`.
pub fn decompose_without(g: &Graph, removed: &[bool]) -> Result<BagDecomposition, NotDominoError> {
    let keep: Vec<Vertex> = g.vertices().filter(|&v| !removed[v]).collect();
    let (sub, old_of) = g.induced_subgraph(&keep).expect("vertices in range");
    if let Some(o) = find_obstruction(&sub, &Default::default()) {
        let mut vertices = o.vertices;
        vertices.iter_mut().for_each(|v| *v = old_of[*v]);
        return Err(NotDominoError {
            witness: Obstruction { vertices, ..o },
        });
    }

    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    for v in sub.vertices() {
        if sub.is_simplicial(v) {
            bags.push(vec![v]);
        }
    }
    let mut edge_bag: HashMap<Edge, BagId> = HashMap::new();
    for &e in sub.edges() {
        if edge_bag.contains_key(&e) {
            continue;
        }
        let (u, v) = e.endpoints();
        let mut clique = vec![u, v];
        for w in crate::obstructions::common_neighbors(&sub, u, v) {
            if clique.iter().all(|&c| sub.has_edge(c, w)) {
                clique.push(w);
            }
        }
        clique.sort_unstable();
        let id = bags.len();
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                edge_bag.insert(Edge::new(a, b), id);
            }
        }
        bags.push(clique);
    }

    let mut vertex_bags = vec![Vec::new(); g.n()];
    for bag in &mut bags {
        bag.iter_mut().for_each(|v| *v = old_of[*v]);
    }
    for (id, bag) in bags.iter().enumerate() {
        for &v in bag {
            vertex_bags[v].push(id);
        }
    }
    let edge_bag = edge_bag
        .into_iter()
        .map(|(e, id)| (Edge::new(old_of[e.u()], old_of[e.v()]), id))
        .collect();
    let d = BagDecomposition {
        bags,
        vertex_bags,
        edge_bag,
    };
    debug_assert_eq!(validate_decomposition_without(g, removed, &d), Ok(()));
    Ok(d)
}

/// A violated decomposition property, with witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionViolation {
    InvalidVertex { bag: BagId, vertex: Vertex },
    /// Property (a): a non-isolated vertex not in exactly two bags, or an
    /// isolated vertex not in exactly one.
    VertexBagCount { vertex: Vertex, count: usize, expected: usize },
    /// Property (b): an edge not inside exactly one bag.
    EdgeBagCount { edge: Edge, count: usize },
    /// Property (c).
    BagsShareTooMuch { a: BagId, b: BagId, shared: Vec<Vertex> },
    /// Property (d): bags `a`, `b` share `vertex` and `edge` runs between
    /// `a - vertex` and `b - vertex`.
    CrossEdge { a: BagId, b: BagId, vertex: Vertex, edge: Edge },
    TooManyBags { count: usize, bound: usize },
    NotAClique { bag: BagId },
}

pub fn validate_decomposition(g: &Graph, d: &BagDecomposition) -> Result<(), DecompositionViolation> {
    validate_decomposition_without(g, &vec![false; g.n()], d)
}

/// Checks, in order: vertex ids, edge coverage (b), vertex coverage (a),
/// pairwise intersections (c), cross edges (d), the `|V| + |E|` bound, and
/// that every bag is a clique. Reports the first failure.
pub fn validate_decomposition_without(
    g: &Graph,
    removed: &[bool],
    d: &BagDecomposition,
) -> Result<(), DecompositionViolation> {
    let active = |v: Vertex| v < g.n() && !removed[v];
    for (id, bag) in d.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| !active(v)) {
            return Err(DecompositionViolation::InvalidVertex { bag: id, vertex: v });
        }
    }
    let mut containing: Vec<Vec<BagId>> = vec![Vec::new(); g.n()];
    for (id, bag) in d.bags.iter().enumerate() {
        for &v in bag {
            containing[v].push(id);
        }
    }

    let mut active_edges = 0;
    for &e in g.edges() {
        if !active(e.u()) || !active(e.v()) {
            continue;
        }
        active_edges += 1;
        let count = containing[e.u()]
            .iter()
            .filter(|b| containing[e.v()].contains(b))
            .count();
        if count != 1 {
            return Err(DecompositionViolation::EdgeBagCount { edge: e, count });
        }
    }

    let mut active_vertices = 0;
    for v in g.vertices().filter(|&v| active(v)) {
        active_vertices += 1;
        let isolated = g.neighbors(v).iter().all(|&w| !active(w));
        let expected = if isolated { 1 } else { 2 };
        let count = containing[v].len();
        if count != expected {
            return Err(DecompositionViolation::VertexBagCount {
                vertex: v,
                count,
                expected,
            });
        }
    }

    for a in 0..d.bags.len() {
        for b in a + 1..d.bags.len() {
            let shared: Vec<Vertex> = d.bags[a]
                .iter()
                .copied()
                .filter(|v| d.bags[b].contains(v))
                .collect();
            if shared.len() > 1 {
                return Err(DecompositionViolation::BagsShareTooMuch { a, b, shared });
            }
            if let Some(&v) = shared.first() {
                for &p in d.bags[a].iter().filter(|&&p| p != v) {
                    for &q in d.bags[b].iter().filter(|&&q| q != v) {
                        if g.has_edge(p, q) {
                            return Err(DecompositionViolation::CrossEdge {
                                a,
                                b,
                                vertex: v,
                                edge: Edge::new(p, q),
                            });
                        }
                    }
                }
            }
        }
    }

    let bound = active_vertices + active_edges;
    if d.bags.len() > bound {
        return Err(DecompositionViolation::TooManyBags {
            count: d.bags.len(),
            bound,
        });
    }
    if let Some(id) = d.bags.iter().position(|b| !g.is_clique(b)) {
        return Err(DecompositionViolation::NotAClique { bag: id });
    }
    Ok(())
}

/// Which bags of `B(G - X)` are attached to each modulator vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachmentMap {
    /// Sorted modulator vertices.
    pub x: Vec<Vertex>,
    /// `attached[i]` lists the bags attached to `x[i]`, ascending.
    pub attached: Vec<Vec<BagId>>,
}

impl AttachmentMap {
    pub fn bags_attached_to(&self, x: Vertex) -> &[BagId] {
        match self.x.binary_search(&x) {
            Ok(i) => &self.attached[i],
            Err(_) => &[],
        }
    }

    pub fn is_attached(&self, x: Vertex, bag: BagId) -> bool {
        self.bags_attached_to(x).contains(&bag)
    }

    /// Bags attached to at least one modulator vertex, ascending.
    pub fn attached_bags(&self) -> Vec<BagId> {
        let mut all: Vec<BagId> = self.attached.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

/// The structural consequences of a valid modulator that failed to hold.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ModulatorViolation {
    #[error("vertex {x} has {} attached bags (at most 2 allowed)", bags.len())]
    TooManyAttached { x: Vertex, bags: Vec<BagId> },
    #[error("vertex {v} adjacent to {x} has {count} bags attached to {x} (exactly 1 required)")]
    NotExactlyOneAttached { x: Vertex, v: Vertex, count: usize },
    #[error("vertex {x} has two neighbours in bag {bag} but the bag is not attached")]
    TwoNeighborsUnattached { x: Vertex, bag: BagId },
}

fn fully_adjacent(g: &Graph, x: Vertex, bag: &[Vertex]) -> bool {
    bag.iter().all(|&v| g.has_edge(x, v))
}

/// Computes the attachment relation and checks the at-most-two,
/// exactly-one and two-neighbours consequences of the modulator property.
///
/// A bag `B` is attached to `x` when `B` is fully adjacent to `x` and, if
/// `B = {v}` with `v` not isolated in `G - X`, the other bag of `v` is not
/// fully adjacent to `x`.
pub fn compute_attachment(
    g: &Graph,
    x_set: &[Vertex],
    d: &BagDecomposition,
) -> Result<AttachmentMap, ModulatorViolation> {
    let mut xs = x_set.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let mut in_x = vec![false; g.n()];
    xs.iter().for_each(|&x| in_x[x] = true);

    let mut attached = Vec::with_capacity(xs.len());
    for &x in &xs {
        let mut candidates: Vec<BagId> = g
            .neighbors(x)
            .iter()
            .filter(|&&v| !in_x[v])
            .flat_map(|&v| d.bags_of(v).iter().copied())
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        let mine: Vec<BagId> = candidates
            .into_iter()
            .filter(|&b| {
                let bag = d.bag(b);
                if !fully_adjacent(g, x, bag) {
                    return false;
                }
                match bag {
                    [v] => match d.other_bag(*v, b) {
                        Some(other) => !fully_adjacent(g, x, d.bag(other)),
                        None => true,
                    },
                    _ => true,
                }
            })
            .collect();
        if mine.len() > 2 {
            return Err(ModulatorViolation::TooManyAttached { x, bags: mine });
        }
        for &v in g.neighbors(x).iter().filter(|&&v| !in_x[v]) {
            let count = d.bags_of(v).iter().filter(|b| mine.contains(b)).count();
            if count != 1 {
                return Err(ModulatorViolation::NotExactlyOneAttached { x, v, count });
            }
        }
        attached.push(mine);
    }
    let map = AttachmentMap { x: xs, attached };

    for (i, &x) in map.x.iter().enumerate() {
        for (b, bag) in d.bags.iter().enumerate() {
            let inside = bag.iter().filter(|&&v| g.has_edge(x, v)).count();
            if inside >= 2 && !map.attached[i].contains(&b) {
                return Err(ModulatorViolation::TwoNeighborsUnattached { x, bag: b });
            }
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn sorted_bags(d: &BagDecomposition) -> Vec<Vec<Vertex>> {
        let mut bags = d.bags.clone();
        bags.sort();
        bags
    }

    #[test]
    fn triangle_bags() {
        let g = complete(3);
        let d = bag_decomposition(&g).unwrap();
        assert_eq!(sorted_bags(&d), vec![vec![0], vec![0, 1, 2], vec![1], vec![2]]);
        assert!((0..3).all(|v| d.bags_of(v).len() == 2));
        assert_eq!(validate_decomposition(&g, &d), Ok(()));
    }

    #[test]
    fn path_bags() {
        let d = bag_decomposition(&path(3)).unwrap();
        assert_eq!(sorted_bags(&d), vec![vec![0], vec![0, 1], vec![1, 2], vec![2]]);
        assert!((0..3).all(|v| d.bags_of(v).len() == 2));
    }

    #[test]
    fn k4_with_pendant() {
        // K4 on 0..4, pendant 4 on vertex 0.
        let g = Graph::from_edges(
            5,
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)],
        )
        .unwrap();
        let d = bag_decomposition(&g).unwrap();
        assert_eq!(
            sorted_bags(&d),
            vec![vec![0, 1, 2, 3], vec![0, 4], vec![1], vec![2], vec![3], vec![4]]
        );
        let mut of_0: Vec<Vec<Vertex>> = d.bags_of(0).iter().map(|&b| d.bag(b).to_vec()).collect();
        of_0.sort();
        assert_eq!(of_0, vec![vec![0, 1, 2, 3], vec![0, 4]]);
    }

    #[test]
    fn isolated_vertices_get_one_singleton() {
        let g = Graph::empty(3);
        let d = bag_decomposition(&g).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(validate_decomposition(&g, &d), Ok(()));
    }

    #[test]
    fn rejects_claws() {
        let err = bag_decomposition(&claw()).unwrap_err();
        assert!(err.witness.is_induced_in(&claw()));
    }

    #[test]
    fn missing_singletons_fail_vertex_count() {
        let g = complete(3);
        let d = BagDecomposition {
            bags: vec![vec![0, 1, 2]],
            vertex_bags: vec![vec![0]; 3],
            edge_bag: HashMap::new(),
        };
        assert!(matches!(
            validate_decomposition(&g, &d),
            Err(DecompositionViolation::VertexBagCount { count: 1, expected: 2, .. })
        ));
    }

    #[test]
    fn duplicated_edge_coverage_fails_property_b() {
        let g = complete(3).delete_edges(&[Edge::new(0, 2)].into()).unwrap();
        let d = BagDecomposition {
            bags: vec![vec![0, 1], vec![1, 2], vec![0, 1, 2]],
            vertex_bags: vec![],
            edge_bag: HashMap::new(),
        };
        assert_eq!(
            validate_decomposition(&g, &d),
            Err(DecompositionViolation::EdgeBagCount {
                edge: Edge::new(0, 1),
                count: 2
            })
        );
    }

    #[test]
    fn attachment_of_fully_adjacent_bag() {
        // x = 3 adjacent to both ends of the edge {0,1}; 2 hangs off 1.
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (3, 0), (3, 1)]).unwrap();
        let mut removed = vec![false; 4];
        removed[3] = true;
        let d = decompose_without(&g, &removed).unwrap();
        let map = compute_attachment(&g, &[3], &d).unwrap();
        let bag01 = d.edge_bag[&Edge::new(0, 1)];
        assert_eq!(map.bags_attached_to(3), &[bag01]);
    }

    #[test]
    fn modulator_vertex_without_outside_neighbours() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let removed = vec![true, true, false];
        let d = decompose_without(&g, &removed).unwrap();
        let map = compute_attachment(&g, &[0, 1], &d).unwrap();
        assert!(map.bags_attached_to(0).is_empty());
        assert!(map.attached_bags().is_empty());
    }

    #[test]
    fn claw_center_alone_is_not_a_modulator() {
        let g = claw();
        let removed = vec![true, false, false, false];
        let d = decompose_without(&g, &removed).unwrap();
        assert_eq!(d.len(), 3);
        match compute_attachment(&g, &[0], &d) {
            Err(ModulatorViolation::TooManyAttached { x: 0, bags }) => assert_eq!(bags.len(), 3),
            other => panic!("{other:?}"),
        }
    }
}
