//! CNF formulas and the three reductions that carry an annotated instance
//! back to a plain one: annotated instance to CNF, CNF to strict 3-CNF, and
//! the clause/variable gadget construction from strict 3-CNF to a graph.

use std::collections::{BTreeMap, HashMap, HashSet};

use thiserror::Error;

use crate::graph::{Edge, EdgeSet, Graph, Vertex};
use crate::kernelizer::AnnotatedInstance;
use crate::obstructions::{classify_quad, is_hds, Obstruction};

/// A formula in conjunctive normal form with DIMACS-style literals: variable
/// `i` (1-based) appears as `i` or `-i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> CnfFormula {
        CnfFormula { num_vars, clauses }
    }

    /// The canonical unsatisfiable formula: a single empty clause.
    pub fn canonical_false() -> CnfFormula {
        CnfFormula::new(0, vec![vec![]])
    }

    pub fn is_canonical_false(&self) -> bool {
        *self == CnfFormula::canonical_false()
    }

    /// `assignment[i]` is the value of variable `i + 1`.
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| lit_value(l, assignment)))
    }

    /// Every clause has exactly three literals over three distinct variables.
    pub fn is_strict_3sat(&self) -> bool {
        self.clauses.iter().all(|c| {
            c.len() == 3
                && c.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= self.num_vars)
                && c[0].abs() != c[1].abs()
                && c[0].abs() != c[2].abs()
                && c[1].abs() != c[2].abs()
        })
    }
}

pub(crate) fn lit_value(lit: i32, assignment: &[bool]) -> bool {
    let value = assignment[lit.unsigned_abs() as usize - 1];
    if lit > 0 {
        value
    } else {
        !value
    }
}

/// Decision variable `i + 1` stands for deleting `edges[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarMap {
    pub edges: Vec<Edge>,
}

impl VarMap {
    pub fn decode(&self, assignment: &[bool]) -> EdgeSet {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| assignment[i])
            .map(|(_, &e)| e)
            .collect()
    }
}

/// Encodes an annotated instance as CNF.
///
/// One variable per edge of `E(S)`. For every four vertices `W` and every
/// pattern `D ⊆ E(W) ∩ E(S)` whose deletion leaves an induced claw or
/// diamond on `W`, a clause forbids exactly that pattern. A sequential
/// counter bounds the number of true decision variables by `k`. An
/// obstruction with no deletable edge yields [`CnfFormula::canonical_false`].
pub fn annotated_to_cnf(a: &AnnotatedInstance) -> (CnfFormula, VarMap) {
    let g = &a.graph;
    let deletable: Vec<Edge> = a.deletable_edges().into_iter().collect();
    let var_of: HashMap<Edge, i32> = deletable
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i as i32 + 1))
        .collect();
    let vars = VarMap { edges: deletable };

    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut seen: HashSet<Vec<i32>> = HashSet::new();
    let n = g.n();
    for a0 in 0..n {
        for a1 in a0 + 1..n {
            for a2 in a1 + 1..n {
                for a3 in a2 + 1..n {
                    let quad = [a0, a1, a2, a3];
                    let mut inner = Vec::new();
                    let mut present = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if g.has_edge(quad[i], quad[j]) {
                                present += 1;
                                let e = Edge::new(quad[i], quad[j]);
                                if var_of.contains_key(&e) {
                                    inner.push(e);
                                }
                            }
                        }
                    }
                    if present < 3 {
                        continue;
                    }
                    for mask in 0..1usize << inner.len() {
                        let removed: EdgeSet = (0..inner.len())
                            .filter(|i| mask >> i & 1 == 1)
                            .map(|i| inner[i])
                            .collect();
                        if classify_quad(g, quad, &removed).is_none() {
                            continue;
                        }
                        if inner.is_empty() {
                            return (CnfFormula::canonical_false(), vars);
                        }
                        let mut clause: Vec<i32> = inner
                            .iter()
                            .map(|e| {
                                let v = var_of[e];
                                if removed.contains(e) {
                                    -v
                                } else {
                                    v
                                }
                            })
                            .collect();
                        clause.sort_unstable_by_key(|l| (l.abs(), *l));
                        if seen.insert(clause.clone()) {
                            clauses.push(clause);
                        }
                    }
                }
            }
        }
    }

    let mut num_vars = vars.edges.len();
    at_most_k(&mut num_vars, &mut clauses, vars.edges.len(), a.k);
    (CnfFormula::new(num_vars, clauses), vars)
}

/// Sequential counter over variables `1..=n`: at most `k` of them true.
/// Register `s(i, j)` means "at least `j` of the first `i` are true".
fn at_most_k(num_vars: &mut usize, clauses: &mut Vec<Vec<i32>>, n: usize, k: usize) {
    if k >= n {
        return;
    }
    if k == 0 {
        clauses.extend((1..=n as i32).map(|x| vec![-x]));
        return;
    }
    let base = *num_vars as i32;
    // s(i, j) for i in 1..n, j in 1..=k.
    let s = |i: usize, j: usize| base + ((i - 1) * k + j) as i32;
    *num_vars += (n - 1) * k;
    let x = |i: usize| i as i32;

    clauses.push(vec![-x(1), s(1, 1)]);
    for j in 2..=k {
        clauses.push(vec![-s(1, j)]);
    }
    for i in 2..n {
        clauses.push(vec![-x(i), s(i, 1)]);
        clauses.push(vec![-s(i - 1, 1), s(i, 1)]);
        for j in 2..=k {
            clauses.push(vec![-x(i), -s(i - 1, j - 1), s(i, j)]);
            clauses.push(vec![-s(i - 1, j), s(i, j)]);
        }
        clauses.push(vec![-x(i), -s(i - 1, k)]);
    }
    clauses.push(vec![-x(n), -s(n - 1, k)]);
}

/// Equisatisfiable strict 3-CNF.
///
/// Duplicate literals are merged and tautologies dropped. Clauses longer than
/// three are split along a chain of fresh variables; shorter ones are padded
/// with fresh variables in every sign combination, so the padding alone never
/// satisfies them. The empty clause becomes all eight sign patterns over
/// three fresh variables.
pub fn cnf_to_3sat(phi: &CnfFormula) -> CnfFormula {
    let mut num_vars = phi.num_vars;
    let mut fresh = || {
        num_vars += 1;
        num_vars as i32
    };
    let mut out = Vec::new();
    for clause in &phi.clauses {
        let mut lits: Vec<i32> = Vec::new();
        for &l in clause {
            if !lits.contains(&l) {
                lits.push(l);
            }
        }
        if lits.iter().any(|&l| lits.contains(&-l)) {
            continue;
        }
        match lits.len() {
            0 => {
                let (p, q, r) = (fresh(), fresh(), fresh());
                for signs in 0..8 {
                    let sign = |bit: i32, v: i32| if signs >> bit & 1 == 1 { -v } else { v };
                    out.push(vec![sign(0, p), sign(1, q), sign(2, r)]);
                }
            }
            1 => {
                let (p, q) = (fresh(), fresh());
                for (a, b) in [(p, q), (p, -q), (-p, q), (-p, -q)] {
                    out.push(vec![lits[0], a, b]);
                }
            }
            2 => {
                let p = fresh();
                out.push(vec![lits[0], lits[1], p]);
                out.push(vec![lits[0], lits[1], -p]);
            }
            3 => out.push(lits),
            len => {
                let mut z = fresh();
                out.push(vec![lits[0], lits[1], z]);
                for &l in &lits[2..len - 2] {
                    let next = fresh();
                    out.push(vec![-z, l, next]);
                    z = next;
                }
                out.push(vec![-z, lits[len - 2], lits[len - 1]]);
            }
        }
    }
    CnfFormula::new(num_vars, out)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("clause {clause} is not three literals over three distinct variables")]
    NotStrict3Sat { clause: usize },
    #[error("clause {clause} mentions variable {var} beyond the declared {num_vars}")]
    VariableOutOfRange { clause: usize, var: usize, num_vars: usize },
}

/// One literal of a clause and its ten gadget vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub var: usize,
    pub positive: bool,
    pub v: Vertex,
    pub v_tilde: Vertex,
    pub w: Vertex,
    pub w_tilde: Vertex,
    pub t: Vertex,
    pub t_tilde: Vertex,
    pub s: Vertex,
    pub s_tilde: Vertex,
}

impl Occurrence {
    pub fn thick_edge(&self) -> Edge {
        Edge::new(self.t, self.t_tilde)
    }

    pub fn satisfied_by(&self, value: bool) -> bool {
        self.positive == value
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseGadget {
    pub u: Vertex,
    pub occurrences: [Occurrence; 3],
}

impl ClauseGadget {
    /// The 19 vertices of the gadget proper (no pendant `s`-vertices).
    pub fn core_vertices(&self) -> Vec<Vertex> {
        let mut vs = vec![self.u];
        for o in &self.occurrences {
            vs.extend([o.v, o.v_tilde, o.w, o.w_tilde, o.t, o.t_tilde]);
        }
        vs
    }

    /// The 27 edges: triangles `{u, v, ṽ}`, `{v, w, w̃}`, `{v, t, t̃}` per
    /// occurrence.
    pub fn edges(&self) -> Vec<Edge> {
        self.occurrences
            .iter()
            .flat_map(|o| {
                [
                    [self.u, o.v, o.v_tilde],
                    [o.v, o.w, o.w_tilde],
                    [o.v, o.t, o.t_tilde],
                ]
            })
            .flat_map(|[a, b, c]| [Edge::new(a, b), Edge::new(a, c), Edge::new(b, c)])
            .collect()
    }

    pub fn thick_edges(&self) -> [Edge; 3] {
        self.occurrences.map(|o| o.thick_edge())
    }

    /// The seven edge-disjoint claws avoiding the thick edges: center `u`
    /// with leaves `ṽ`, and per occurrence `{v; u, w, t}` and
    /// `{v; ṽ, w̃, t̃}`.
    pub fn claws(&self) -> Vec<Obstruction> {
        let [a, b, c] = self.occurrences;
        let mut out = vec![Obstruction::claw(self.u, [a.v_tilde, b.v_tilde, c.v_tilde])];
        for o in &self.occurrences {
            out.push(Obstruction::claw(o.v, [self.u, o.w, o.t]));
            out.push(Obstruction::claw(o.v, [o.v_tilde, o.w_tilde, o.t_tilde]));
        }
        out
    }
}

/// A variable's cycle `t_⊤, (t, t̃) per positive occurrence, t_⊥, (t, t̃)
/// per negative occurrence`, each cycle vertex carrying a pendant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableGadget {
    pub var: usize,
    pub t_true: Vertex,
    pub t_false: Vertex,
    pub s_true: Vertex,
    pub s_false: Vertex,
    /// Clause indices of positive / negative occurrences, in clause order.
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
    pub cycle: Vec<Vertex>,
    /// `pendant[i]` hangs off `cycle[i]`.
    pub pendant: Vec<Vertex>,
    /// Even cycle edges (1-based positions); holds the thick edges of the
    /// positive occurrences.
    pub bottom: Vec<Edge>,
    /// Odd cycle edges; holds the thick edges of the negative occurrences.
    pub top: Vec<Edge>,
}

impl VariableGadget {
    /// `E_b`: deleting it corresponds to assigning `b`.
    pub fn edges_for(&self, value: bool) -> &[Edge] {
        if value {
            &self.top
        } else {
            &self.bottom
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.cycle.iter().chain(&self.pendant).copied().collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self.bottom.iter().chain(&self.top).copied().collect();
        out.extend(self.cycle.iter().zip(&self.pendant).map(|(&t, &s)| Edge::new(t, s)));
        out
    }

    /// `p(x) + q(x) + 1`.
    pub fn lower_bound(&self) -> usize {
        self.positive.len() + self.negative.len() + 1
    }

    /// Edge-disjoint claws centred on every other cycle vertex.
    pub fn claws(&self) -> Vec<Obstruction> {
        let len = self.cycle.len();
        (0..len)
            .step_by(2)
            .map(|i| {
                let prev = self.cycle[(i + len - 1) % len];
                let next = self.cycle[(i + 1) % len];
                Obstruction::claw(self.cycle[i], [prev, next, self.pendant[i]])
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GadgetLayout {
    pub clauses: Vec<ClauseGadget>,
    /// Ascending by variable; only variables that occur.
    pub variables: Vec<VariableGadget>,
    /// Declared variables with no occurrence; they get no gadget.
    pub free_vars: Vec<usize>,
}

impl GadgetLayout {
    pub fn variable(&self, var: usize) -> Option<&VariableGadget> {
        self.variables
            .binary_search_by_key(&var, |g| g.var)
            .ok()
            .map(|i| &self.variables[i])
    }

    pub fn budget(&self) -> usize {
        7 * self.clauses.len() + self.variables.iter().map(VariableGadget::lower_bound).sum::<usize>()
    }

    /// The `k` pairwise edge-disjoint claws certifying the lower bound: seven
    /// per clause gadget and `p(x) + q(x) + 1` per variable gadget.
    pub fn claim_packing(&self) -> Vec<Obstruction> {
        self.clauses
            .iter()
            .flat_map(ClauseGadget::claws)
            .chain(self.variables.iter().flat_map(VariableGadget::claws))
            .collect()
    }

    /// The deletion set from a satisfying assignment: `E_{b(x)}` for every
    /// variable and, per clause with a satisfied occurrence of `y`, the
    /// triangle `{u, v^y, ṽ^y}` plus `v^x t^x, v^x t̃^x` for the other two
    /// occurrences. `None` if the assignment leaves a clause unsatisfied.
    pub fn proof_deletion_set(&self, assignment: &[bool]) -> Option<EdgeSet> {
        let mut f = EdgeSet::new();
        for x in &self.variables {
            f.extend(x.edges_for(assignment[x.var - 1]).iter().copied());
        }
        for c in &self.clauses {
            let y = c
                .occurrences
                .iter()
                .position(|o| o.satisfied_by(assignment[o.var - 1]))?;
            for (i, o) in c.occurrences.iter().enumerate() {
                if i == y {
                    f.extend([Edge::new(c.u, o.v), Edge::new(c.u, o.v_tilde), Edge::new(o.v, o.v_tilde)]);
                } else {
                    f.extend([Edge::new(o.v, o.t), Edge::new(o.v, o.t_tilde)]);
                }
            }
        }
        Some(f)
    }

    /// Sidecar text: one line per named gadget vertex, 1-based ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.clauses.iter().enumerate() {
            out += &format!("u {} {}\n", i + 1, c.u + 1);
            for o in &c.occurrences {
                let sign = if o.positive { "" } else { "-" };
                out += &format!("v {} {sign}{} {} {}\n", i + 1, o.var, o.v + 1, o.v_tilde + 1);
                out += &format!("w {} {sign}{} {} {}\n", i + 1, o.var, o.w + 1, o.w_tilde + 1);
                out += &format!("t {} {sign}{} {} {}\n", i + 1, o.var, o.t + 1, o.t_tilde + 1);
                out += &format!("s {} {sign}{} {} {}\n", i + 1, o.var, o.s + 1, o.s_tilde + 1);
            }
        }
        for x in &self.variables {
            out += &format!(
                "x {} {} {} {} {}\n",
                x.var,
                x.t_true + 1,
                x.t_false + 1,
                x.s_true + 1,
                x.s_false + 1
            );
            let cycle: Vec<String> = x.cycle.iter().map(|v| (v + 1).to_string()).collect();
            out += &format!("cycle {} {}\n", x.var, cycle.join(" "));
        }
        for v in &self.free_vars {
            out += &format!("free {v}\n");
        }
        out
    }
}

/// Gadget reduction from strict 3-CNF.
///
/// Vertex ids: clause `i` occupies `25i..25i+25` as `u`, then per literal
/// position `v, ṽ, w, w̃, t, t̃, s, s̃`; after all clauses, each occurring
/// variable (ascending) gets `t_⊤, t_⊥, s_⊤, s_⊥`. Returns the graph, the
/// budget `k = 7m + Σ (p(x) + q(x) + 1) = 10m + n` and the layout, where `n`
/// counts occurring variables.
pub fn sat3_to_graph(phi: &CnfFormula) -> Result<(Graph, usize, GadgetLayout), ReductionError> {
    for (i, c) in phi.clauses.iter().enumerate() {
        if let Some(&l) = c.iter().find(|l| l.unsigned_abs() as usize > phi.num_vars) {
            return Err(ReductionError::VariableOutOfRange {
                clause: i,
                var: l.unsigned_abs() as usize,
                num_vars: phi.num_vars,
            });
        }
        let single = CnfFormula::new(phi.num_vars, vec![c.clone()]);
        if !single.is_strict_3sat() {
            return Err(ReductionError::NotStrict3Sat { clause: i });
        }
    }

    let m = phi.clauses.len();
    let mut edges: Vec<Edge> = Vec::new();
    let mut clauses = Vec::with_capacity(m);
    let mut occurrences: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, c) in phi.clauses.iter().enumerate() {
        let base = 25 * i;
        let occ: Vec<Occurrence> = c
            .iter()
            .enumerate()
            .map(|(j, &l)| {
                let o = base + 1 + 8 * j;
                Occurrence {
                    var: l.unsigned_abs() as usize,
                    positive: l > 0,
                    v: o,
                    v_tilde: o + 1,
                    w: o + 2,
                    w_tilde: o + 3,
                    t: o + 4,
                    t_tilde: o + 5,
                    s: o + 6,
                    s_tilde: o + 7,
                }
            })
            .collect();
        let gadget = ClauseGadget {
            u: base,
            occurrences: [occ[0], occ[1], occ[2]],
        };
        edges.extend(gadget.edges());
        for o in &gadget.occurrences {
            edges.push(Edge::new(o.t, o.s));
            edges.push(Edge::new(o.t_tilde, o.s_tilde));
            let entry = occurrences.entry(o.var).or_default();
            if o.positive {
                entry.0.push(i);
            } else {
                entry.1.push(i);
            }
        }
        clauses.push(gadget);
    }

    let occurrence_of = |clause: usize, var: usize| -> Occurrence {
        *clauses[clause]
            .occurrences
            .iter()
            .find(|o: &&Occurrence| o.var == var)
            .expect("variable occurs in clause")
    };
    let mut variables = Vec::with_capacity(occurrences.len());
    for (r, (&var, (positive, negative))) in occurrences.iter().enumerate() {
        let base = 25 * m + 4 * r;
        let (t_true, t_false, s_true, s_false) = (base, base + 1, base + 2, base + 3);
        let mut cycle = vec![t_true];
        let mut pendant = vec![s_true];
        for &c in positive {
            let o = occurrence_of(c, var);
            cycle.extend([o.t, o.t_tilde]);
            pendant.extend([o.s, o.s_tilde]);
        }
        cycle.push(t_false);
        pendant.push(s_false);
        for &c in negative {
            let o = occurrence_of(c, var);
            cycle.extend([o.t, o.t_tilde]);
            pendant.extend([o.s, o.s_tilde]);
        }
        let len = cycle.len();
        let (mut bottom, mut top) = (Vec::new(), Vec::new());
        for i in 0..len {
            let e = Edge::new(cycle[i], cycle[(i + 1) % len]);
            // Position i + 1 in 1-based numbering.
            if (i + 1) % 2 == 0 {
                bottom.push(e);
            } else {
                top.push(e);
            }
            edges.push(e);
        }
        edges.push(Edge::new(t_true, s_true));
        edges.push(Edge::new(t_false, s_false));
        variables.push(VariableGadget {
            var,
            t_true,
            t_false,
            s_true,
            s_false,
            positive: positive.clone(),
            negative: negative.clone(),
            cycle,
            pendant,
            bottom,
            top,
        });
    }
    let free_vars = (1..=phi.num_vars)
        .filter(|v| !occurrences.contains_key(v))
        .collect();

    let n = 25 * m + 4 * variables.len();
    let graph = Graph::from_edges(n, edges.iter().map(|e| e.endpoints())).expect("gadget ids in range");
    let layout = GadgetLayout {
        clauses,
        variables,
        free_vars,
    };
    let k = layout.budget();
    Ok((graph, k, layout))
}

/// Some edge lying in two triangles, as the four vertices of the induced K4
/// or diamond it spans. `None` iff the graph is {K4, diamond}-free.
pub fn find_k4_or_diamond(g: &Graph) -> Option<[Vertex; 4]> {
    g.edges().iter().find_map(|e| {
        let common = crate::obstructions::common_neighbors(g, e.u(), e.v());
        (common.len() >= 2).then(|| [e.u(), e.v(), common[0], common[1]])
    })
}

/// Outcome of checking a deletion set against one clause gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseGadgetReport {
    /// Whether each of the seven edge-disjoint claws loses an edge.
    pub claws_hit: [bool; 7],
    /// Deleted gadget edges other than the thick ones.
    pub non_thick_deleted: usize,
    pub thick_deleted: usize,
}

impl ClauseGadgetReport {
    /// At least one edge of every claw, and not the forbidden combination of
    /// exactly seven non-thick deletions with all three thick edges gone.
    pub fn passes(&self) -> bool {
        self.claws_hit.iter().all(|&h| h) && !(self.non_thick_deleted == 7 && self.thick_deleted == 3)
    }
}

pub fn verify_clause_gadget(layout: &GadgetLayout, clause: usize, f: &EdgeSet) -> ClauseGadgetReport {
    let c = &layout.clauses[clause];
    let thick = c.thick_edges();
    let mut claws_hit = [false; 7];
    for (hit, claw) in claws_hit.iter_mut().zip(c.claws()) {
        *hit = claw.edges().iter().any(|e| f.contains(e));
    }
    let gadget: HashSet<Edge> = c.edges().into_iter().collect();
    let deleted: Vec<&Edge> = f.iter().filter(|e| gadget.contains(e)).collect();
    let thick_deleted = deleted.iter().filter(|e| thick.contains(e)).count();
    ClauseGadgetReport {
        claws_hit,
        non_thick_deleted: deleted.len() - thick_deleted,
        thick_deleted,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Bottom,
    Top,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableGadgetReport {
    /// `f` destroys every obstruction of the gadget's induced subgraph.
    pub is_hds: bool,
    pub size: usize,
    pub lower_bound: usize,
    /// Which parity class `f` equals, if any.
    pub parity: Option<Parity>,
}

impl VariableGadgetReport {
    /// A deletion set of the gadget is at least `p + q + 1` large, and meets
    /// the bound only as one of the two parity classes.
    pub fn passes(&self) -> bool {
        !self.is_hds || (self.size >= self.lower_bound && (self.size > self.lower_bound || self.parity.is_some()))
    }
}

/// Checks `f ⊆ E(G^x)` against the variable gadget bound. `g` is the graph
/// built together with `layout`.
pub fn verify_variable_gadget(g: &Graph, layout: &GadgetLayout, var: usize, f: &EdgeSet) -> Option<VariableGadgetReport> {
    let x = layout.variable(var)?;
    let (sub, origin) = g.induced_subgraph(&x.vertices()).ok()?;
    let local: HashMap<Vertex, Vertex> = origin.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut mapped = EdgeSet::new();
    for e in f {
        let (Some(&a), Some(&b)) = (local.get(&e.u()), local.get(&e.v())) else {
            return None;
        };
        mapped.insert(Edge::new(a, b));
    }
    if mapped.iter().any(|&e| !sub.contains_edge(e)) {
        return None;
    }
    let as_set = |edges: &[Edge]| edges.iter().copied().collect::<EdgeSet>();
    let parity = if *f == as_set(&x.bottom) {
        Some(Parity::Bottom)
    } else if *f == as_set(&x.top) {
        Some(Parity::Top)
    } else {
        None
    };
    Some(VariableGadgetReport {
        is_hds: is_hds(&sub, &mapped),
        size: f.len(),
        lower_bound: x.lower_bound(),
        parity,
    })
}
