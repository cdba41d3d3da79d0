//! Induced claws and diamonds: detection, deletion-set checks and the greedy
//! modulator.

use std::cmp::Ordering;

use crate::graph::{Edge, EdgeSet, Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObstructionKind {
    Claw,
    Diamond,
}

/// A witnessed induced claw or diamond.
///
/// Vertex roles are positional. For a claw, `[c, u, v, w]` is the center
/// followed by the three leaves. For a diamond, `[u, v, w, x]` follows the
/// edge list `uv, uw, vw, vx, wx`: `v, w` are the degree-3 pair and `u, x`
/// the non-adjacent degree-2 pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub vertices: [Vertex; 4],
}

impl Obstruction {
    pub fn claw(center: Vertex, leaves: [Vertex; 3]) -> Obstruction {
        Obstruction {
            kind: ObstructionKind::Claw,
            vertices: [center, leaves[0], leaves[1], leaves[2]],
        }
    }

    /// `tips` are the two degree-2 vertices, `spine` the degree-3 pair.
    pub fn diamond(tips: [Vertex; 2], spine: [Vertex; 2]) -> Obstruction {
        Obstruction {
            kind: ObstructionKind::Diamond,
            vertices: [tips[0], spine[0], spine[1], tips[1]],
        }
    }

    pub fn edges(&self) -> Vec<Edge> {
        let [a, b, c, d] = self.vertices;
        match self.kind {
            ObstructionKind::Claw => vec![Edge::new(a, b), Edge::new(a, c), Edge::new(a, d)],
            ObstructionKind::Diamond => vec![
                Edge::new(a, b),
                Edge::new(a, c),
                Edge::new(b, c),
                Edge::new(b, d),
                Edge::new(c, d),
            ],
        }
    }

    pub fn non_edges(&self) -> Vec<Edge> {
        let [a, b, c, d] = self.vertices;
        match self.kind {
            ObstructionKind::Claw => vec![Edge::new(b, c), Edge::new(b, d), Edge::new(c, d)],
            ObstructionKind::Diamond => vec![Edge::new(a, d)],
        }
    }

    pub fn sorted_vertices(&self) -> [Vertex; 4] {
        let mut vs = self.vertices;
        vs.sort_unstable();
        vs
    }

    /// True iff the four vertices induce exactly this obstruction in `g`.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let vs = self.vertices;
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
        distinct
            && vs.iter().all(|&v| v < g.n())
            && self.edges().iter().all(|&e| g.contains_edge(e))
            && self.non_edges().iter().all(|&e| !g.contains_edge(e))
    }

    fn uses_any(&self, forbidden: &EdgeSet) -> bool {
        !forbidden.is_empty() && self.edges().iter().any(|e| forbidden.contains(e))
    }

    /// Canonical order: sorted vertex tuple, then claws before diamonds.
    pub fn canonical_cmp(&self, other: &Obstruction) -> Ordering {
        self.sorted_vertices()
            .cmp(&other.sorted_vertices())
            .then(self.kind.cmp(&other.kind))
    }
}

/// Classifies the subgraph induced by four distinct vertices, ignoring the
/// edges in `removed`.
pub fn classify_quad(g: &Graph, quad: [Vertex; 4], removed: &EdgeSet) -> Option<Obstruction> {
    let adjacent = |a: Vertex, b: Vertex| g.has_edge(a, b) && !removed.contains(&Edge::new(a, b));
    let mut deg = [0usize; 4];
    let mut m = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if adjacent(quad[i], quad[j]) {
                deg[i] += 1;
                deg[j] += 1;
                m += 1;
            }
        }
    }
    match m {
        3 => {
            let center = (0..4).find(|&i| deg[i] == 3)?;
            let mut leaves = [0; 3];
            let mut it = (0..4).filter(|&i| i != center).map(|i| quad[i]);
            leaves.fill_with(|| it.next().unwrap());
            Some(Obstruction::claw(quad[center], leaves))
        }
        5 => {
            let tips: Vec<Vertex> = (0..4).filter(|&i| deg[i] == 2).map(|i| quad[i]).collect();
            let spine: Vec<Vertex> = (0..4).filter(|&i| deg[i] == 3).map(|i| quad[i]).collect();
            Some(Obstruction::diamond([tips[0], tips[1]], [spine[0], spine[1]]))
        }
        _ => None,
    }
}

/// Calls `visit` once for every induced claw and diamond of `g`, in no
/// particular order. Stops early when `visit` returns `false`.
///
/// Claws are found around each center of degree at least three; diamonds
/// around each edge whose endpoints have two non-adjacent common neighbours.
pub fn for_each_obstruction<F>(g: &Graph, mut visit: F)
where
    F: FnMut(Obstruction) -> bool,
{
    for c in g.vertices() {
        let nb = g.neighbors(c);
        if nb.len() < 3 {
            continue;
        }
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(a, b) {
                    continue;
                }
                for &d in &nb[j + 1..] {
                    if !g.has_edge(a, d) && !g.has_edge(b, d) && !visit(Obstruction::claw(c, [a, b, d])) {
                        return;
                    }
                }
            }
        }
    }
    for e in g.edges() {
        let (v, w) = e.endpoints();
        let common = common_neighbors(g, v, w);
        for (i, &a) in common.iter().enumerate() {
            for &b in &common[i + 1..] {
                if !g.has_edge(a, b) && !visit(Obstruction::diamond([a, b], [v, w])) {
                    return;
                }
            }
        }
    }
}

pub(crate) fn common_neighbors(g: &Graph, v: Vertex, w: Vertex) -> Vec<Vertex> {
    let (a, b) = (g.neighbors(v), g.neighbors(w));
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// All induced obstructions of `g`, in canonical order.
pub fn all_obstructions(g: &Graph) -> Vec<Obstruction> {
    let mut out = Vec::new();
    for_each_obstruction(g, |o| {
        out.push(o);
        true
    });
    out.sort_by(Obstruction::canonical_cmp);
    out
}

/// The canonically-first induced claw or diamond of `g` that uses no edge of
/// `forbidden`. Obstructions are induced in `g` itself; `forbidden` only
/// restricts which ones are eligible.
pub fn find_obstruction(g: &Graph, forbidden: &EdgeSet) -> Option<Obstruction> {
    let mut best: Option<Obstruction> = None;
    for_each_obstruction(g, |o| {
        if !o.uses_any(forbidden) && best.is_none_or(|b| o.canonical_cmp(&b).is_lt()) {
            best = Some(o);
        }
        true
    });
    best
}

pub fn is_obstruction_free(g: &Graph) -> bool {
    let mut found = false;
    for_each_obstruction(g, |_| {
        found = true;
        false
    });
    !found
}

/// True iff `g - f` has no induced claw and no induced diamond.
///
/// Panics if `f` contains a non-edge of `g`.
pub fn is_hds(g: &Graph, f: &EdgeSet) -> bool {
    let rest = g.delete_edges(f).expect("deletion set must consist of edges of the graph");
    is_obstruction_free(&rest)
}

/// Greedy edge-disjoint packing in canonical order, stopping once `limit`
/// obstructions are packed.
pub fn greedy_packing(g: &Graph, limit: usize) -> Vec<Obstruction> {
    let mut used = EdgeSet::new();
    let mut packing = Vec::new();
    while packing.len() < limit {
        let Some(o) = find_obstruction(g, &used) else {
            break;
        };
        used.extend(o.edges());
        packing.push(o);
    }
    packing
}

/// A maximal packing of edge-disjoint obstructions and the union `X` of their
/// vertex sets. Every induced obstruction of the host graph has an edge in
/// `E(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modulator {
    pub packing: Vec<Obstruction>,
    /// Sorted, deduplicated.
    pub x: Vec<Vertex>,
}

impl Modulator {
    pub fn contains(&self, v: Vertex) -> bool {
        self.x.binary_search(&v).is_ok()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.x {
            mask[v] = true;
        }
        mask
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModulatorOutcome {
    Modulator(Modulator),
    /// More than `k` edge-disjoint obstructions; the packing holds `k + 1` of
    /// them and certifies that no deletion set of size `k` exists.
    NoInstance { packing: Vec<Obstruction> },
}

pub fn build_modulator(g: &Graph, k: usize) -> ModulatorOutcome {
    let packing = greedy_packing(g, k + 1);
    if packing.len() > k {
        return ModulatorOutcome::NoInstance { packing };
    }
    let mut x: Vec<Vertex> = packing.iter().flat_map(|o| o.vertices).collect();
    x.sort_unstable();
    x.dedup();
    ModulatorOutcome::Modulator(Modulator { packing, x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn edges(list: &[(Vertex, Vertex)]) -> EdgeSet {
        list.iter().map(|&(u, v)| Edge::new(u, v)).collect()
    }

    #[test]
    fn claw_is_found() {
        let o = find_obstruction(&claw(), &EdgeSet::new()).unwrap();
        assert_eq!(o, Obstruction::claw(0, [1, 2, 3]));
        assert!(o.is_induced_in(&claw()));
    }

    #[test]
    fn cliques_are_clean() {
        for n in 0..7 {
            assert!(find_obstruction(&complete(n), &EdgeSet::new()).is_none());
        }
    }

    #[test]
    fn forbidding_the_diamond_spine_leaves_nothing() {
        let g = diamond();
        let o = find_obstruction(&g, &EdgeSet::new()).unwrap();
        assert_eq!(o.kind, ObstructionKind::Diamond);
        assert_eq!(o.vertices, [0, 1, 2, 3]);
        assert!(find_obstruction(&g, &edges(&[(1, 2)])).is_none());
    }

    #[test]
    fn hds_checks() {
        assert!(is_hds(&claw(), &edges(&[(0, 2)])));
        assert!(!is_hds(&claw(), &EdgeSet::new()));
        assert!(is_hds(&diamond(), &edges(&[(0, 1)])));
        for g in [claw(), diamond(), complete(5), cycle(6), disjoint_claws(2)] {
            assert!(is_hds(&g, &g.edge_set()));
        }
    }

    #[test]
    fn canonical_order_prefers_smaller_vertex_tuples() {
        // Claw on {2,3,4,5} and a diamond on {0,1,6,7}.
        let g = Graph::from_edges(
            8,
            [(2, 3), (2, 4), (2, 5), (0, 1), (0, 6), (1, 6), (1, 7), (6, 7)],
        )
        .unwrap();
        let o = find_obstruction(&g, &EdgeSet::new()).unwrap();
        assert_eq!(o.sorted_vertices(), [0, 1, 6, 7]);
    }

    #[test]
    fn modulator_outcomes() {
        match build_modulator(&complete(5), 0) {
            ModulatorOutcome::Modulator(m) => {
                assert!(m.packing.is_empty() && m.x.is_empty())
            }
            other => panic!("{other:?}"),
        }
        match build_modulator(&claw(), 1) {
            ModulatorOutcome::Modulator(m) => {
                assert_eq!(m.packing.len(), 1);
                assert_eq!(m.x, vec![0, 1, 2, 3]);
            }
            other => panic!("{other:?}"),
        }
        for k in 0..4 {
            match build_modulator(&disjoint_claws(k + 1), k) {
                ModulatorOutcome::NoInstance { packing } => assert_eq!(packing.len(), k + 1),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn classify_quad_roles() {
        let o = classify_quad(&diamond(), [0, 1, 2, 3], &EdgeSet::new()).unwrap();
        assert_eq!(o, Obstruction::diamond([0, 3], [1, 2]));
        assert!(classify_quad(&complete(4), [0, 1, 2, 3], &EdgeSet::new()).is_none());
        let c = classify_quad(&complete(4), [0, 1, 2, 3], &edges(&[(1, 2), (1, 3), (2, 3)]));
        assert_eq!(c, Some(Obstruction::claw(0, [1, 2, 3])));
    }
}
