//! Seeded instance generators. Same seed and parameters, same output.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::reductions::CnfFormula;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p): each pair independently with probability `p`.
pub fn gen_random(seed: u64, n: usize, p: f64) -> Graph {
    let mut r = rng(seed);
    Graph::from_edges(n, gnp_pairs(&mut r, n, p)).expect("pairs are in range")
}

fn gnp_pairs(r: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(Vertex, Vertex)> {
    let p = p.clamp(0.0, 1.0);
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                out.push((u, v));
            }
        }
    }
    out
}

/// G(n, p) followed by removing one edge of each remaining triangle, edges
/// visited in lexicographic order.
pub fn gen_triangle_free(seed: u64, n: usize, p: f64) -> Graph {
    let mut r = rng(seed);
    let g = Graph::from_edges(n, gnp_pairs(&mut r, n, p)).expect("pairs are in range");
    break_triangles(&g)
}

/// Drops, for each edge `uv` in lex order, the edge if it still closes a
/// triangle with the kept edges seen so far.
pub fn break_triangles(g: &Graph) -> Graph {
    let mut adj: Vec<Vec<bool>> = vec![vec![false; g.n()]; g.n()];
    let mut edges = Vec::new();
    for e in g.edges() {
        let (u, v) = e.endpoints();
        if (0..g.n()).any(|w| adj[u][w] && adj[v][w]) {
            continue;
        }
        adj[u][v] = true;
        adj[v][u] = true;
        edges.push((u, v));
    }
    Graph::from_edges(g.n(), edges).expect("subset of a valid graph")
}

/// Line graph: vertex `i` is the `i`-th edge of `h` in sorted order.
pub fn line_graph(h: &Graph) -> Graph {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); h.n()];
    for (i, e) in h.edges().iter().enumerate() {
        incident[e.u()].push(i);
        incident[e.v()].push(i);
    }
    let mut edges = Vec::new();
    for list in &incident {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(h.m(), edges).expect("edge indices are in range")
}

/// Line graph of a random triangle-free graph on `h_vertices` vertices.
pub fn gen_domino(seed: u64, h_vertices: usize, p: f64) -> Graph {
    line_graph(&gen_triangle_free(seed, h_vertices, p))
}

/// A domino with `toggles` vertex pairs flipped, so a few obstructions
/// appear near an otherwise clean structure.
pub fn gen_perturbed_domino(seed: u64, h_vertices: usize, p: f64, toggles: usize) -> Graph {
    let base = gen_domino(seed, h_vertices, p);
    let n = base.n();
    if n < 2 {
        return base;
    }
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut set = base.edge_set();
    for _ in 0..toggles {
        let u = r.gen_range(0..n);
        let mut v = r.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let e = Edge::new(u, v);
        if !set.remove(&e) {
            set.insert(e);
        }
    }
    Graph::from_edge_set(n, set)
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("a clause needs 3 distinct variables but only {n} exist")]
pub struct TooFewVariables {
    pub n: usize,
}

/// Uniform strict 3-SAT: each clause picks 3 distinct variables and random
/// signs. Literals within a clause are sorted by variable.
pub fn gen_3sat(seed: u64, n: usize, m: usize) -> Result<CnfFormula, TooFewVariables> {
    if m > 0 && n < 3 {
        return Err(TooFewVariables { n });
    }
    let mut r = rng(seed);
    let vars: Vec<i32> = (1..=n as i32).collect();
    let clauses = (0..m)
        .map(|_| {
            let mut pick: Vec<i32> = vars.choose_multiple(&mut r, 3).copied().collect();
            pick.sort_unstable();
            pick.into_iter().map(|v| if r.gen_bool(0.5) { v } else { -v }).collect()
        })
        .collect();
    Ok(CnfFormula::new(n, clauses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::obstructions::is_obstruction_free;

    #[test]
    fn line_graphs_of_named_graphs() {
        assert_eq!(line_graph(&named::path(3)), named::path(2));
        assert_eq!(line_graph(&named::star(3)), named::complete(3));
        let c5 = line_graph(&named::cycle(5));
        assert_eq!(c5.m(), 5);
        assert!(c5.vertices().all(|v| c5.degree(v) == 2));
        assert_eq!(line_graph(&Graph::empty(4)).n(), 0);
    }

    #[test]
    fn triangle_breaking() {
        let h = break_triangles(&named::complete(5));
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    assert!(!(h.has_edge(a, b) && h.has_edge(b, c) && h.has_edge(a, c)));
                }
            }
        }
    }

    #[test]
    fn dominoes_are_clean() {
        for seed in 0..30 {
            assert!(is_obstruction_free(&gen_domino(seed, 9, 0.4)));
        }
    }

    #[test]
    fn determinism() {
        assert_eq!(gen_random(7, 12, 0.3), gen_random(7, 12, 0.3));
        assert_eq!(gen_domino(7, 10, 0.5), gen_domino(7, 10, 0.5));
        assert_eq!(gen_3sat(7, 6, 5), gen_3sat(7, 6, 5));
        assert_eq!(gen_perturbed_domino(3, 8, 0.5, 2), gen_perturbed_domino(3, 8, 0.5, 2));
    }

    #[test]
    fn three_sat_shapes() {
        assert_eq!(gen_3sat(1, 0, 0), Ok(CnfFormula::new(0, vec![])));
        assert_eq!(gen_random(1, 0, 0.5), Graph::empty(0));
        let phi = gen_3sat(5, 3, 1).unwrap();
        let vars: Vec<u32> = phi.clauses[0].iter().map(|l| l.unsigned_abs()).collect();
        assert_eq!(vars, vec![1, 2, 3]);
        assert!(gen_3sat(5, 2, 1).is_err());
        assert!(gen_3sat(5, 20, 30).unwrap().is_strict_3sat());
    }
}
