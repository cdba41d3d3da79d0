//! Oracles shared by the integration tests. None of these call into the
//! library's detection, decomposition or attachment code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cdfree::domino::BagDecomposition;
use cdfree::{Edge, EdgeSet, Graph, Vertex};

/// Adjacency matrix after deleting `removed`.
pub fn matrix(g: &Graph, removed: &EdgeSet) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for e in g.edges() {
        if !removed.contains(e) {
            a[e.u()][e.v()] = true;
            a[e.v()][e.u()] = true;
        }
    }
    a
}

/// `Some(true)` for a claw, `Some(false)` for a diamond, read off the edge
/// count and degree sequence of the induced 4-vertex subgraph.
pub fn quad_kind(a: &[Vec<bool>], q: [Vertex; 4]) -> Option<bool> {
    let mut deg = [0usize; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i != j && a[q[i]][q[j]] {
                deg[i] += 1;
            }
        }
    }
    let mut sorted = deg;
    sorted.sort_unstable();
    match sorted {
        [1, 1, 1, 3] => Some(true),
        [2, 2, 3, 3] => Some(false),
        _ => None,
    }
}

/// Every induced claw or diamond as (sorted vertex set, is_claw).
pub fn scan(g: &Graph, removed: &EdgeSet) -> Vec<([Vertex; 4], bool)> {
    let a = matrix(g, removed);
    let n = g.n();
    let mut out = Vec::new();
    for a0 in 0..n {
        for a1 in a0 + 1..n {
            for a2 in a1 + 1..n {
                for a3 in a2 + 1..n {
                    let q = [a0, a1, a2, a3];
                    if let Some(claw) = quad_kind(&a, q) {
                        out.push((q, claw));
                    }
                }
            }
        }
    }
    out
}

pub fn scan_free(g: &Graph, removed: &EdgeSet) -> bool {
    scan(g, removed).is_empty()
}

/// Minimum HDS size up to `limit` by plain subset enumeration, or `None`.
pub fn min_hds_size(g: &Graph, limit: usize) -> Option<usize> {
    let edges = g.edges();
    for size in 0..=limit.min(edges.len()) {
        let mut found = false;
        for_each_subset(edges.len(), size, &mut |idx| {
            let f: EdgeSet = idx.iter().map(|&i| edges[i]).collect();
            if scan_free(g, &f) {
                found = true;
            }
            !found
        });
        if found {
            return Some(size);
        }
    }
    None
}

/// Calls `visit` on each `r`-subset of `0..n` in lexicographic order until
/// it returns false.
pub fn for_each_subset(n: usize, r: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == r {
            return visit(cur);
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            if !go(i + 1, n, r, cur, visit) {
                return false;
            }
            cur.pop();
        }
        true
    }
    go(0, n, r, &mut Vec::new(), visit);
}

/// Edge set `{uv : u, v ∈ s}` present in `g`.
pub fn edges_inside(g: &Graph, s: &[Vertex]) -> EdgeSet {
    let set: BTreeSet<Vertex> = s.iter().copied().collect();
    g.edges()
        .iter()
        .copied()
        .filter(|e| set.contains(&e.u()) && set.contains(&e.v()))
        .collect()
}

/// Attachment straight from the definition: `B` fully adjacent to `x`, and a
/// singleton `{v}` with `v` non-isolated in `G - X` only if the other bag of
/// `v` is not fully adjacent to `x`.
pub fn attached(g: &Graph, in_x: &[bool], d: &BagDecomposition, x: Vertex, bag: usize) -> bool {
    let b = &d.bags[bag];
    if !b.iter().all(|&v| g.has_edge(x, v)) {
        return false;
    }
    if b.len() == 1 {
        let v = b[0];
        let isolated = g.neighbors(v).iter().all(|&w| in_x[w]);
        if !isolated {
            let other = d
                .bags
                .iter()
                .enumerate()
                .find(|(id, ob)| *id != bag && ob.contains(&v))
                .map(|(id, _)| id)
                .expect("non-isolated vertices sit in two bags");
            return !d.bags[other].iter().all(|&w| g.has_edge(x, w));
        }
    }
    true
}

/// Whether some edge lies in two triangles.
pub fn has_k4_or_diamond(g: &Graph) -> bool {
    g.edges().iter().any(|e| {
        let common = g.neighbors(e.u()).iter().filter(|&&w| g.has_edge(w, e.v())).count();
        common >= 2
    })
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn edge(u: Vertex, v: Vertex) -> Edge {
    Edge::new(u, v)
}

/// Obstruction-freeness by local search: claw centres with three pairwise
/// non-adjacent neighbours, and edges with two non-adjacent common
/// neighbours. Fast enough for gadget graphs with thousands of vertices.
pub fn local_free(g: &Graph, removed: &EdgeSet) -> bool {
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
    for e in g.edges() {
        if !removed.contains(e) {
            adj[e.u()].insert(e.v());
            adj[e.v()].insert(e.u());
        }
    }
    for c in 0..n {
        let nb: Vec<Vertex> = adj[c].iter().copied().collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if adj[nb[i]].contains(&nb[j]) {
                    continue;
                }
                for l in j + 1..nb.len() {
                    if !adj[nb[i]].contains(&nb[l]) && !adj[nb[j]].contains(&nb[l]) {
                        return false;
                    }
                }
            }
        }
    }
    for u in 0..n {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            let common: Vec<Vertex> = adj[u].intersection(&adj[v]).copied().collect();
            for i in 0..common.len() {
                for j in i + 1..common.len() {
                    if !adj[common[i]].contains(&common[j]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The same check on a graph of at most 32 vertices given as row bitmasks.
pub fn mask_free(rows: &[u32]) -> bool {
    let n = rows.len();
    for c in 0..n {
        let nb = rows[c];
        let mut a = nb;
        while a != 0 {
            let i = a.trailing_zeros() as usize;
            a &= a - 1;
            // Later neighbours not adjacent to i.
            let mut b = a & !rows[i];
            while b != 0 {
                let j = b.trailing_zeros() as usize;
                b &= b - 1;
                if b & !rows[i] & !rows[j] != 0 {
                    return false;
                }
            }
        }
    }
    for u in 0..n {
        let mut later = rows[u] & !(((2u64 << u) - 1) as u32);
        while later != 0 {
            let v = later.trailing_zeros() as usize;
            later &= later - 1;
            let mut common = rows[u] & rows[v];
            while common != 0 {
                let i = common.trailing_zeros() as usize;
                common &= common - 1;
                if common & !rows[i] != 0 {
                    return false;
                }
            }
        }
    }
    true
}

pub fn rows_of(n: usize, edges: &[(Vertex, Vertex)]) -> Vec<u32> {
    let mut rows = vec![0u32; n];
    for &(u, v) in edges {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

/// The five decomposition properties plus clique-ness, from first
/// principles.
pub fn check_bags(g: &Graph, bags: &[Vec<Vertex>]) -> Result<(), String> {
    let n = g.n();
    let mut count = vec![0usize; n];
    for (id, b) in bags.iter().enumerate() {
        for (i, &u) in b.iter().enumerate() {
            if u >= n {
                return Err(format!("bag {id} has vertex {u} out of range"));
            }
            count[u] += 1;
            for &w in &b[i + 1..] {
                if !g.has_edge(u, w) {
                    return Err(format!("bag {id} is not a clique"));
                }
            }
        }
    }
    for v in 0..n {
        let expected = if g.degree(v) == 0 { 1 } else { 2 };
        if count[v] != expected {
            return Err(format!("vertex {v} is in {} bags, expected {expected}", count[v]));
        }
    }
    for e in g.edges() {
        let c = bags.iter().filter(|b| b.contains(&e.u()) && b.contains(&e.v())).count();
        if c != 1 {
            return Err(format!("edge {e:?} is in {c} bags"));
        }
    }
    for i in 0..bags.len() {
        for j in i + 1..bags.len() {
            let shared: Vec<Vertex> = bags[i].iter().copied().filter(|v| bags[j].contains(v)).collect();
            if shared.len() > 1 {
                return Err(format!("bags {i} and {j} share {shared:?}"));
            }
            if let [v] = shared[..] {
                for &a in bags[i].iter().filter(|&&a| a != v) {
                    for &b in bags[j].iter().filter(|&&b| b != v) {
                        if g.has_edge(a, b) {
                            return Err(format!("edge {a}-{b} crosses bags {i} and {j} at {v}"));
                        }
                    }
                }
            }
        }
    }
    if bags.len() > n + g.m() {
        return Err(format!("{} bags exceed |V| + |E| = {}", bags.len(), n + g.m()));
    }
    Ok(())
}
