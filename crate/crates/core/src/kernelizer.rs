//! Compression of an instance `(G, k)` to an annotated instance whose size is
//! polynomial in `k`, and its composition back into a plain instance.
//!
//! The pipeline is: greedy modulator `X` (at most `4k` vertices), bags of
//! `G - X`, marking of small bags near `X` to obtain a vertex set `S` that
//! contains every inclusion-minimal solution of size at most `k`, and
//! finally the set `U ⊇ S` whose induced subgraph, annotated with `S`, is
//! equivalent to the input.

use std::collections::HashSet;

use thiserror::Error;

use crate::domino::{
    compute_attachment, decompose_without, AttachmentMap, BagDecomposition, BagId,
    ModulatorViolation, NotDominoError,
};
use crate::graph::{named, EdgeSet, Graph, GraphError, Vertex};
use crate::obstructions::{build_modulator, classify_quad, Modulator, ModulatorOutcome};
use crate::reductions::{self, CnfFormula, GadgetLayout, VarMap};

/// `(graph, S, k)`: is there a deletion set of size at most `k` inside `E(S)`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedInstance {
    pub graph: Graph,
    /// Sorted annotated vertices.
    pub s: Vec<Vertex>,
    pub k: usize,
    /// Host id of every vertex of `graph`, when the instance was cut out of a
    /// larger graph.
    pub origin: Vec<Vertex>,
}

impl AnnotatedInstance {
    pub fn new(graph: Graph, mut s: Vec<Vertex>, k: usize) -> Result<AnnotatedInstance, GraphError> {
        s.sort_unstable();
        s.dedup();
        for &v in &s {
            graph.check_vertex(v)?;
        }
        let origin = graph.vertices().collect();
        Ok(AnnotatedInstance { graph, s, k, origin })
    }

    /// `E(S)`.
    pub fn deletable_edges(&self) -> EdgeSet {
        self.graph.edges_within(&self.s)
    }

    /// Canonical yes-instance: the empty graph.
    pub fn trivial_yes() -> AnnotatedInstance {
        AnnotatedInstance::new(Graph::empty(0), vec![], 0).unwrap()
    }

    /// Canonical no-instance: a claw with nothing deletable.
    pub fn trivial_no() -> AnnotatedInstance {
        AnnotatedInstance::new(named::claw(), vec![], 0).unwrap()
    }
}

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("modulator leaves an obstruction outside it: {0}")]
    NotDomino(#[from] NotDominoError),
    #[error(transparent)]
    Modulator(#[from] ModulatorViolation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkRule {
    /// Small bag attached to some modulator vertex.
    Attached,
    /// Small unattached bag sharing a vertex with a small attached bag.
    SharesVertex,
    /// One of at most `k + 1` small unattached bags of size at least two
    /// meeting `N(x) ∩ N(y)`.
    PairWitness { x: Vertex, y: Vertex },
}

#[derive(Clone, Debug)]
pub struct MarkingResult {
    /// Bags with fewer vertices than this are small.
    pub small_threshold: usize,
    /// Marked bags with the first rule that marked each, ascending by bag id.
    pub marked: Vec<(BagId, MarkRule)>,
    /// `X` together with every vertex of a marked bag, sorted.
    pub s: Vec<Vertex>,
    pub decomposition: BagDecomposition,
    pub attachment: AttachmentMap,
}

impl MarkingResult {
    /// Upper bound on the number of marked bags for a modulator of size `x`.
    pub fn marked_bound(x: usize, k: usize) -> usize {
        2 * x + 2 * x * (2 * k + 1) + x * x * (k + 1)
    }

    /// Upper bound on `|S|` for a modulator of size `x`.
    pub fn s_bound(x: usize, k: usize) -> usize {
        x + Self::marked_bound(x, k) * (2 * k + 1)
    }
}

/// Marks small bags around the modulator and returns `S`.
///
/// Rule-3 candidates for a pair `{x, y}` are ordered by (minimum vertex,
/// bag id) and the first `k + 1` are taken.
pub fn mark_and_extract_s(g: &Graph, modulator: &Modulator, k: usize) -> Result<MarkingResult, KernelError> {
    let removed = modulator.mask(g.n());
    let decomposition = decompose_without(g, &removed)?;
    let attachment = compute_attachment(g, &modulator.x, &decomposition)?;
    let small_threshold = 2 * k + 2;
    let is_small = |b: BagId| decomposition.bag(b).len() < small_threshold;

    let attached = attachment.attached_bags();
    let mut is_attached = vec![false; decomposition.len()];
    attached.iter().for_each(|&b| is_attached[b] = true);

    let mut rule: Vec<Option<MarkRule>> = vec![None; decomposition.len()];
    let small_attached: Vec<BagId> = attached.iter().copied().filter(|&b| is_small(b)).collect();
    for &b in &small_attached {
        rule[b] = Some(MarkRule::Attached);
    }
    for &a in &small_attached {
        for &v in decomposition.bag(a) {
            for &b in decomposition.bags_of(v) {
                if !is_attached[b] && is_small(b) && rule[b].is_none() {
                    rule[b] = Some(MarkRule::SharesVertex);
                }
            }
        }
    }

    let xs = &modulator.x;
    for (i, &x) in xs.iter().enumerate() {
        for &y in &xs[i + 1..] {
            let mut eligible: Vec<(Vertex, BagId)> = Vec::new();
            for &c in g.neighbors(x) {
                if removed[c] || !g.has_edge(c, y) {
                    continue;
                }
                for &b in decomposition.bags_of(c) {
                    let bag = decomposition.bag(b);
                    if !is_attached[b] && is_small(b) && bag.len() >= 2 {
                        eligible.push((bag[0], b));
                    }
                }
            }
            eligible.sort_unstable();
            eligible.dedup();
            for &(_, b) in eligible.iter().take(k + 1) {
                rule[b].get_or_insert(MarkRule::PairWitness { x, y });
            }
        }
    }

    let marked: Vec<(BagId, MarkRule)> = rule
        .iter()
        .enumerate()
        .filter_map(|(b, r)| r.map(|r| (b, r)))
        .collect();
    let mut in_s = removed;
    for &(b, _) in &marked {
        decomposition.bag(b).iter().for_each(|&v| in_s[v] = true);
    }
    let s: Vec<Vertex> = g.vertices().filter(|&v| in_s[v]).collect();

    assert!(marked.iter().all(|&(b, _)| is_small(b)));
    assert!(marked.len() <= MarkingResult::marked_bound(xs.len(), k));
    assert!(s.len() <= MarkingResult::s_bound(xs.len(), k));
    Ok(MarkingResult {
        small_threshold,
        marked,
        s,
        decomposition,
        attachment,
    })
}

/// Upper bound on `|U|` given `|S|`.
pub fn u_bound(s: usize) -> u128 {
    let s = s as u128;
    s + 128 * s * s * s
}

/// Builds `U ⊇ S` and returns `(G[U], S, k)`.
///
/// For every `M ⊆ S` with `|M| ≤ 3` and every `F ⊆ E(M)`, the vertices of
/// the first induced obstruction `H` of `G - F` with `V(H) ∩ S = M` are added
/// to `U`. Four-vertex sets are scanned in lexicographic order, so "first"
/// is canonical. Requires every inclusion-minimal solution of size at most
/// `k` to lie in `E(S)`.
pub fn build_u(g: &Graph, s: &[Vertex], k: usize) -> AnnotatedInstance {
    let mut in_s = vec![false; g.n()];
    s.iter().for_each(|&v| in_s[v] = true);
    let mut in_u = in_s.clone();
    let mut done: HashSet<(Vec<Vertex>, usize)> = HashSet::new();

    let n = g.n();
    let mut quad = [0usize; 4];
    for a in 0..n {
        quad[0] = a;
        for b in a + 1..n {
            quad[1] = b;
            for c in b + 1..n {
                quad[2] = c;
                for d in c + 1..n {
                    quad[3] = d;
                    if quad.iter().all(|&v| in_s[v]) {
                        continue;
                    }
                    let m: Vec<Vertex> = quad.iter().copied().filter(|&v| in_s[v]).collect();
                    let inner: Vec<_> = g.edges_within(&m).into_iter().collect();
                    for mask in 0..1usize << inner.len() {
                        let key = (m.clone(), mask);
                        if done.contains(&key) {
                            continue;
                        }
                        let f: EdgeSet = (0..inner.len())
                            .filter(|i| mask >> i & 1 == 1)
                            .map(|i| inner[i])
                            .collect();
                        if classify_quad(g, quad, &f).is_some() {
                            done.insert(key);
                            quad.iter().for_each(|&v| in_u[v] = true);
                        }
                    }
                }
            }
        }
    }

    let u: Vec<Vertex> = g.vertices().filter(|&v| in_u[v]).collect();
    let (graph, origin) = g.induced_subgraph(&u).expect("vertices in range");
    let new_s = origin
        .iter()
        .enumerate()
        .filter(|&(_, &old)| in_s[old])
        .map(|(i, _)| i)
        .collect();
    AnnotatedInstance {
        graph,
        s: new_s,
        k,
        origin,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressionStats {
    pub modulator: usize,
    pub marked: usize,
    pub s: usize,
    pub u: usize,
}

#[derive(Clone, Debug)]
pub enum Compression {
    /// The input has no obstruction at all.
    TrivialYes,
    /// More than `k` edge-disjoint obstructions were packed.
    TrivialNo,
    Annotated {
        instance: AnnotatedInstance,
        stats: CompressionStats,
    },
}

impl Compression {
    /// The annotated instance, with the trivial outcomes replaced by their
    /// canonical fixed instances.
    pub fn to_instance(&self) -> AnnotatedInstance {
        match self {
            Compression::TrivialYes => AnnotatedInstance::trivial_yes(),
            Compression::TrivialNo => AnnotatedInstance::trivial_no(),
            Compression::Annotated { instance, .. } => instance.clone(),
        }
    }
}

/// Modulator, marking and `U`-construction. Asserts the size chain
/// `|X| ≤ 4k`, the bound on `|S|` and `|U| ≤ |S| + 128|S|³` on every run.
pub fn compress(g: &Graph, k: usize) -> Result<Compression, KernelError> {
    let modulator = match build_modulator(g, k) {
        ModulatorOutcome::NoInstance { .. } => return Ok(Compression::TrivialNo),
        ModulatorOutcome::Modulator(m) if m.packing.is_empty() => return Ok(Compression::TrivialYes),
        ModulatorOutcome::Modulator(m) => m,
    };
    let marking = mark_and_extract_s(g, &modulator, k)?;
    let instance = build_u(g, &marking.s, k);
    let stats = CompressionStats {
        modulator: modulator.x.len(),
        marked: marking.marked.len(),
        s: marking.s.len(),
        u: instance.graph.n(),
    };
    assert!(stats.modulator <= 4 * k);
    assert!(stats.s <= MarkingResult::s_bound(stats.modulator, k));
    assert!(stats.u as u128 <= u_bound(stats.s));
    Ok(Compression::Annotated { instance, stats })
}

/// A plain instance equivalent to the input, produced by compressing,
/// encoding the annotated instance as CNF, normalising to strict 3-CNF and
/// applying the gadget reduction.
#[derive(Clone, Debug)]
pub struct FullKernel {
    pub graph: Graph,
    pub k: usize,
    pub compression: Compression,
    /// Present unless the compression was trivial.
    pub annotated_cnf: Option<(CnfFormula, VarMap)>,
    pub three_sat: Option<CnfFormula>,
    pub layout: Option<GadgetLayout>,
}

pub fn kernelize_full(g: &Graph, k: usize) -> Result<FullKernel, KernelError> {
    let compression = compress(g, k)?;
    let instance = match &compression {
        Compression::TrivialYes => {
            return Ok(FullKernel {
                graph: Graph::empty(0),
                k: 0,
                compression,
                annotated_cnf: None,
                three_sat: None,
                layout: None,
            })
        }
        Compression::TrivialNo => {
            return Ok(FullKernel {
                graph: named::claw(),
                k: 0,
                compression,
                annotated_cnf: None,
                three_sat: None,
                layout: None,
            })
        }
        Compression::Annotated { instance, .. } => instance,
    };
    let (cnf, vars) = reductions::annotated_to_cnf(instance);
    let three = reductions::cnf_to_3sat(&cnf);
    let (graph, budget, layout) =
        reductions::sat3_to_graph(&three).expect("normalised formula is strict 3-CNF");
    Ok(FullKernel {
        graph,
        k: budget,
        compression,
        annotated_cnf: Some((cnf, vars)),
        three_sat: Some(three),
        layout: Some(layout),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::solvers::solve_annotated;

    #[test]
    fn clean_graph_marks_nothing() {
        let g = cycle(5);
        let m = Modulator {
            packing: vec![],
            x: vec![],
        };
        let r = mark_and_extract_s(&g, &m, 2).unwrap();
        assert!(r.marked.is_empty());
        assert!(r.s.is_empty());
    }

    #[test]
    fn claw_modulator_is_everything() {
        let g = claw();
        let ModulatorOutcome::Modulator(m) = build_modulator(&g, 1) else {
            panic!()
        };
        let r = mark_and_extract_s(&g, &m, 1).unwrap();
        assert_eq!(r.s, vec![0, 1, 2, 3]);
        assert!(r.decomposition.is_empty());
        let a = build_u(&g, &r.s, 1);
        assert_eq!(a.graph, g);
        assert_eq!(a.s, vec![0, 1, 2, 3]);
    }

    #[test]
    fn empty_s_on_clean_graph_gives_empty_u() {
        let a = build_u(&complete(4), &[], 3);
        assert_eq!(a.graph.n(), 0);
        assert!(solve_annotated(&a).is_yes());
    }

    #[test]
    fn trivial_compressions() {
        assert!(matches!(compress(&cycle(6), 0).unwrap(), Compression::TrivialYes));
        assert!(matches!(compress(&disjoint_claws(3), 2).unwrap(), Compression::TrivialNo));
        assert!(!solve_annotated(&AnnotatedInstance::trivial_no()).is_yes());
        assert!(solve_annotated(&AnnotatedInstance::trivial_yes()).is_yes());
    }

    #[test]
    fn trivial_kernels() {
        let yes = kernelize_full(&complete(5), 3).unwrap();
        assert_eq!((yes.graph.n(), yes.k), (0, 0));
        let no = kernelize_full(&disjoint_claws(2), 1).unwrap();
        assert_eq!((no.graph, no.k), (claw(), 0));
    }

    #[test]
    fn bounds() {
        assert_eq!(MarkingResult::marked_bound(4, 1), 8 + 24 + 32);
        assert_eq!(MarkingResult::s_bound(4, 1), 4 + 64 * 3);
        assert_eq!(u_bound(2), 2 + 1024);
    }
}
