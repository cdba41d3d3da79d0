//! Exact decision procedures: bounded search-tree branching (plain and
//! annotated) and the exhaustive subset oracle.

use thiserror::Error;

use crate::graph::{Edge, EdgeSet, Graph, Vertex};
use crate::kernelizer::AnnotatedInstance;
use crate::obstructions::{find_obstruction, greedy_packing};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    /// A deletion set of size at most `k` when the answer is yes.
    pub witness: Option<EdgeSet>,
    pub stats: SearchStats,
}

impl SolveResult {
    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }
}

/// Branches on the edges of the canonically-first obstruction, at most five
/// ways per level. A greedy edge-disjoint packing bounds the remaining budget
/// from below and prunes hopeless nodes.
pub fn solve_branching(g: &Graph, k: usize) -> SolveResult {
    let mut stats = SearchStats::default();
    let witness = branch(g, None, k, 0, &mut Vec::new(), &mut stats);
    SolveResult { witness, stats }
}

/// Like [`solve_branching`] but only edges of `E(S)` may be deleted.
pub fn solve_annotated(a: &AnnotatedInstance) -> SolveResult {
    let deletable = a.deletable_edges();
    let mut stats = SearchStats::default();
    let witness = branch(&a.graph, Some(&deletable), a.k, 0, &mut Vec::new(), &mut stats);
    SolveResult { witness, stats }
}

fn branch(
    g: &Graph,
    deletable: Option<&EdgeSet>,
    budget: usize,
    depth: usize,
    deleted: &mut Vec<Edge>,
    stats: &mut SearchStats,
) -> Option<EdgeSet> {
    stats.nodes += 1;
    stats.max_depth = stats.max_depth.max(depth);
    let Some(obstruction) = find_obstruction(g, &EdgeSet::new()) else {
        return Some(deleted.iter().copied().collect());
    };
    if budget == 0 || greedy_packing(g, budget + 1).len() > budget {
        return None;
    }
    let mut choices = obstruction.edges();
    choices.sort_unstable();
    for e in choices {
        if deletable.is_some_and(|d| !d.contains(&e)) {
            continue;
        }
        let next = g.delete_edges(&EdgeSet::from([e])).expect("obstruction edge");
        deleted.push(e);
        let found = branch(&next, deletable, budget - 1, depth + 1, deleted, stats);
        deleted.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScaleError {
    #[error("exhaustive search over {subsets} edge subsets exceeds the limit of {limit}")]
    TooManySubsets { subsets: u128, limit: u128 },
}

/// Default cap on the number of subsets the oracle will enumerate.
pub const DEFAULT_MAX_SUBSETS: u128 = 20_000_000;

#[derive(Clone, Debug)]
pub struct BruteForce {
    pub result: SolveResult,
    /// Every inclusion-minimal deletion set of size at most `k`, in
    /// size-then-lexicographic order.
    pub minimal: Vec<EdgeSet>,
}

/// Enumerates all edge subsets of size at most `k` (within `E(restrict)` when
/// given) in size-then-lexicographic order.
///
/// Deletion sets are checked with a bitset scan that shares no code with the
/// obstruction enumerator, so the two can be cross-checked.
pub fn brute_force_min_hds(
    g: &Graph,
    k: usize,
    restrict: Option<&[Vertex]>,
    max_subsets: u128,
) -> Result<BruteForce, ScaleError> {
    let candidates: Vec<Edge> = match restrict {
        Some(s) => g.edges_within(s).into_iter().collect(),
        None => g.edges().to_vec(),
    };
    let k = k.min(candidates.len());
    let subsets: u128 = (0..=k).map(|s| binomial(candidates.len(), s)).sum();
    if subsets > max_subsets {
        return Err(ScaleError::TooManySubsets {
            subsets,
            limit: max_subsets,
        });
    }

    let mut bits = BitGraph::new(g);
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    let mut nodes = 0u64;
    for size in 0..=k {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            nodes += 1;
            let covers_known = minimal.iter().any(|m| is_sorted_subset(m, &idx));
            if !covers_known {
                for &i in &idx {
                    bits.toggle(candidates[i]);
                }
                if bits.is_obstruction_free() {
                    minimal.push(idx.clone());
                }
                for &i in &idx {
                    bits.toggle(candidates[i]);
                }
            }
            if !next_combination(&mut idx, candidates.len()) {
                break;
            }
        }
    }
    let minimal: Vec<EdgeSet> = minimal
        .iter()
        .map(|m| m.iter().map(|&i| candidates[i]).collect())
        .collect();
    Ok(BruteForce {
        result: SolveResult {
            witness: minimal.first().cloned(),
            stats: SearchStats {
                nodes,
                max_depth: k,
            },
        },
        minimal,
    })
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Advances `idx` to the next `idx.len()`-combination of `0..n` in
/// lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let r = idx.len();
    let Some(i) = (0..r).rev().find(|&i| idx[i] < n - r + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..r {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

pub(crate) fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Adjacency bit matrix used by the oracle.
#[derive(Clone)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(g: &Graph) -> BitGraph {
        let words = g.n().div_ceil(64).max(1);
        let mut bits = BitGraph {
            n: g.n(),
            words,
            rows: vec![0; g.n() * words],
        };
        for &e in g.edges() {
            bits.toggle(e);
        }
        bits
    }

    pub fn toggle(&mut self, e: Edge) {
        let (u, v) = e.endpoints();
        self.rows[u * self.words + v / 64] ^= 1 << (v % 64);
        self.rows[v * self.words + u / 64] ^= 1 << (u % 64);
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    fn members(mask: &[u64]) -> impl Iterator<Item = usize> + '_ {
        mask.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    w * 64 + b
                })
            })
        })
    }

    /// `mask ∖ N[v]`, keeping only members greater than `v`.
    fn beyond_non_neighbors(&self, mask: &[u64], v: usize) -> Vec<u64> {
        let row = self.row(v);
        mask.iter()
            .zip(row)
            .enumerate()
            .map(|(w, (&m, &r))| {
                let rest = m & !r;
                match w.cmp(&(v / 64)) {
                    std::cmp::Ordering::Less => 0,
                    std::cmp::Ordering::Equal => rest & (!0u64 << (v % 64) << 1),
                    std::cmp::Ordering::Greater => rest,
                }
            })
            .collect()
    }

    /// No vertex has three pairwise non-adjacent neighbours, and no edge has
    /// two non-adjacent common neighbours.
    pub fn is_obstruction_free(&self) -> bool {
        for c in 0..self.n {
            let nc = self.row(c);
            for a in Self::members(nc) {
                let after_a = self.beyond_non_neighbors(nc, a);
                for b in Self::members(&after_a) {
                    if self.beyond_non_neighbors(&after_a, b).iter().any(|&w| w != 0) {
                        return false;
                    }
                }
            }
        }
        for v in 0..self.n {
            for w in Self::members(self.row(v)).filter(|&w| w > v) {
                let common: Vec<u64> = self.row(v).iter().zip(self.row(w)).map(|(a, b)| a & b).collect();
                for a in Self::members(&common) {
                    if self.beyond_non_neighbors(&common, a).iter().any(|&x| x != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::obstructions::is_hds;

    fn set(list: &[(Vertex, Vertex)]) -> EdgeSet {
        list.iter().map(|&(u, v)| Edge::new(u, v)).collect()
    }

    #[test]
    fn branching_on_claws() {
        assert!(!solve_branching(&claw(), 0).is_yes());
        let yes = solve_branching(&claw(), 1);
        let w = yes.witness.unwrap();
        assert_eq!(w.len(), 1);
        assert!(w.iter().all(|e| e.contains(0)));
        assert!(!solve_branching(&disjoint_claws(2), 1).is_yes());
        assert!(solve_branching(&disjoint_claws(2), 2).is_yes());
    }

    #[test]
    fn annotated_branching() {
        let a = |g: Graph, s: Vec<Vertex>, k| AnnotatedInstance::new(g, s, k).unwrap();
        assert!(solve_annotated(&a(claw(), vec![0, 1, 2, 3], 1)).is_yes());
        assert!(!solve_annotated(&a(claw(), vec![], 5)).is_yes());
        let r = solve_annotated(&a(diamond(), vec![1, 2], 1));
        assert_eq!(r.witness, Some(set(&[(1, 2)])));
    }

    #[test]
    fn oracle_minimal_sets() {
        let bf = brute_force_min_hds(&claw(), 1, None, DEFAULT_MAX_SUBSETS).unwrap();
        assert_eq!(bf.minimal, vec![set(&[(0, 1)]), set(&[(0, 2)]), set(&[(0, 3)])]);

        let bf = brute_force_min_hds(&diamond(), 1, None, DEFAULT_MAX_SUBSETS).unwrap();
        assert_eq!(bf.minimal.len(), 5);
        assert!(bf.minimal.iter().all(|f| f.len() == 1 && is_hds(&diamond(), f)));

        let bf = brute_force_min_hds(&complete(4), 0, None, DEFAULT_MAX_SUBSETS).unwrap();
        assert_eq!(bf.result.witness, Some(EdgeSet::new()));
        assert_eq!(bf.minimal, vec![EdgeSet::new()]);
    }

    #[test]
    fn oracle_refuses_large_searches() {
        let err = brute_force_min_hds(&complete(30), 5, None, 1000).unwrap_err();
        assert!(matches!(err, ScaleError::TooManySubsets { limit: 1000, .. }));
    }

    #[test]
    fn restricted_oracle() {
        let bf = brute_force_min_hds(&claw(), 3, Some(&[1, 2, 3]), DEFAULT_MAX_SUBSETS).unwrap();
        assert!(!bf.result.is_yes());
    }

    #[test]
    fn bitgraph_detects_obstructions_beyond_one_word() {
        // Claw with leaves spread over several machine words.
        let g = Graph::from_edges(200, [(70, 1), (70, 130), (70, 199)]).unwrap();
        assert!(!BitGraph::new(&g).is_obstruction_free());
        let g = Graph::from_edges(200, [(70, 1), (70, 130), (70, 199), (1, 199)]).unwrap();
        assert!(BitGraph::new(&g).is_obstruction_free());
        let d = Graph::from_edges(
            150,
            [(3, 100), (3, 140), (100, 140), (100, 64), (140, 64)],
        )
        .unwrap();
        assert!(!BitGraph::new(&d).is_obstruction_free());
    }

    #[test]
    fn combinations_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
        assert_eq!(binomial(27, 7), 888_030);
    }
}
