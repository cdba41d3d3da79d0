//! Satisfiability checks used to verify the CNF legs of the pipeline.
//!
//! Two independent procedures: a chronological enumeration of assignments
//! that only prunes on falsified clauses (no propagation), and a DPLL search
//! with two-watched-literal unit propagation for formulas too large to
//! enumerate.

use thiserror::Error;

use crate::reductions::{lit_value, CnfFormula};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("exhaustive assignment over {vars} variables exceeds the limit of {limit}")]
pub struct TooManyVariables {
    pub vars: usize,
    pub limit: usize,
}

/// Enumerates assignments variable by variable in index order, abandoning a
/// prefix as soon as some clause has all its variables assigned and is
/// false. Returns a model if one exists.
pub fn exhaustive_model(phi: &CnfFormula, max_vars: usize) -> Result<Option<Vec<bool>>, TooManyVariables> {
    if phi.num_vars > max_vars {
        return Err(TooManyVariables {
            vars: phi.num_vars,
            limit: max_vars,
        });
    }
    let order: Vec<usize> = (1..=phi.num_vars).collect();
    Ok(enumerate(phi, &order, u64::MAX).expect("no node limit"))
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("exhaustive enumeration visited more than {limit} partial assignments")]
pub struct NodeLimitExceeded {
    pub limit: u64,
}

/// Like [`exhaustive_model`] but assigns variables in `order` (a permutation
/// of `1..=num_vars`) and gives up after `max_nodes` partial assignments.
pub fn exhaustive_model_in_order(
    phi: &CnfFormula,
    order: &[usize],
    max_nodes: u64,
) -> Result<Option<Vec<bool>>, NodeLimitExceeded> {
    let mut seen = vec![false; phi.num_vars + 1];
    assert_eq!(order.len(), phi.num_vars, "order must cover every variable");
    for &v in order {
        assert!((1..=phi.num_vars).contains(&v) && !seen[v], "order must be a permutation");
        seen[v] = true;
    }
    enumerate(phi, order, max_nodes)
}

/// Variables `1..=primary` in index order, each followed by the remaining
/// variables whose smallest primary clause-mate it is. Variables sharing no
/// clause with a primary one come last.
pub fn locality_order(phi: &CnfFormula, primary: usize) -> Vec<usize> {
    let mut key: Vec<usize> = (0..=phi.num_vars).collect();
    for k in key.iter_mut().skip(primary + 1) {
        *k = usize::MAX;
    }
    for c in &phi.clauses {
        let Some(p) = c.iter().map(|l| l.unsigned_abs() as usize).filter(|&v| v <= primary).min() else {
            continue;
        };
        for l in c {
            let v = l.unsigned_abs() as usize;
            if v > primary {
                key[v] = key[v].min(p);
            }
        }
    }
    let mut order: Vec<usize> = (1..=phi.num_vars).collect();
    order.sort_by_key(|&v| (key[v], v));
    order
}

fn enumerate(phi: &CnfFormula, order: &[usize], max_nodes: u64) -> Result<Option<Vec<bool>>, NodeLimitExceeded> {
    if phi.clauses.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let mut position = vec![0; phi.num_vars + 1];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    // Clauses grouped by the position of their last assigned variable.
    let mut closing: Vec<Vec<&[i32]>> = vec![Vec::new(); order.len()];
    for c in &phi.clauses {
        let last = c.iter().map(|l| position[l.unsigned_abs() as usize]).max().unwrap();
        closing[last].push(c);
    }
    struct Search<'a> {
        order: &'a [usize],
        closing: Vec<Vec<&'a [i32]>>,
        assignment: Vec<bool>,
        nodes: u64,
        max_nodes: u64,
    }
    impl Search<'_> {
        fn go(&mut self, depth: usize) -> Result<bool, NodeLimitExceeded> {
            if depth == self.order.len() {
                return Ok(true);
            }
            for value in [false, true] {
                self.nodes += 1;
                if self.nodes > self.max_nodes {
                    return Err(NodeLimitExceeded { limit: self.max_nodes });
                }
                self.assignment[self.order[depth] - 1] = value;
                let a = &self.assignment;
                let ok = self.closing[depth].iter().all(|c| c.iter().any(|&l| lit_value(l, a)));
                if ok && self.go(depth + 1)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
    let mut search = Search {
        order,
        closing,
        assignment: vec![false; phi.num_vars],
        nodes: 0,
        max_nodes,
    };
    let found = search.go(0)?;
    Ok(found.then_some(search.assignment))
}

/// Truth-table check over all `2^n` assignments.
pub fn truth_table_satisfiable(phi: &CnfFormula) -> bool {
    assert!(phi.num_vars <= 24, "truth table too large");
    (0u64..1 << phi.num_vars).any(|mask| {
        let a: Vec<bool> = (0..phi.num_vars).map(|i| mask >> i & 1 == 1).collect();
        phi.evaluate(&a)
    })
}

/// DPLL with watched literals and chronological backtracking.
pub fn dpll_model(phi: &CnfFormula) -> Option<Vec<bool>> {
    Dpll::new(phi).solve(&[])
}

pub fn dpll_satisfiable(phi: &CnfFormula) -> bool {
    dpll_model(phi).is_some()
}

/// Whether the partial assignment of the first `prefix.len()` variables
/// extends to a model.
pub fn extends_to_model(phi: &CnfFormula, prefix: &[bool]) -> bool {
    let assumptions: Vec<i32> = prefix
        .iter()
        .enumerate()
        .map(|(i, &b)| if b { i as i32 + 1 } else { -(i as i32 + 1) })
        .collect();
    Dpll::new(phi).solve(&assumptions).is_some()
}

struct Dpll {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
    units: Vec<i32>,
    trivially_false: bool,
    watches: Vec<Vec<usize>>,
    value: Vec<i8>,
    trail: Vec<i32>,
    head: usize,
}

fn lit_index(l: i32) -> usize {
    2 * (l.unsigned_abs() as usize) + usize::from(l < 0)
}

impl Dpll {
    fn new(phi: &CnfFormula) -> Dpll {
        let mut d = Dpll {
            num_vars: phi.num_vars,
            clauses: Vec::new(),
            units: Vec::new(),
            trivially_false: false,
            watches: vec![Vec::new(); 2 * phi.num_vars + 2],
            value: vec![0; phi.num_vars + 1],
            trail: Vec::new(),
            head: 0,
        };
        for c in &phi.clauses {
            let mut lits: Vec<i32> = Vec::new();
            for &l in c {
                if !lits.contains(&l) {
                    lits.push(l);
                }
            }
            if lits.iter().any(|&l| lits.contains(&-l)) {
                continue;
            }
            match lits.len() {
                0 => d.trivially_false = true,
                1 => d.units.push(lits[0]),
                _ => {
                    let id = d.clauses.len();
                    d.watches[lit_index(lits[0])].push(id);
                    d.watches[lit_index(lits[1])].push(id);
                    d.clauses.push(lits);
                }
            }
        }
        d
    }

    fn lit(&self, l: i32) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    /// False on an immediate conflict.
    fn assign(&mut self, l: i32) -> bool {
        match self.lit(l) {
            1 => true,
            -1 => false,
            _ => {
                self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
                self.trail.push(l);
                true
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = -self.trail[self.head];
            self.head += 1;
            let watching = std::mem::take(&mut self.watches[lit_index(falsified)]);
            let mut keep = Vec::with_capacity(watching.len());
            let mut conflict = false;
            for (pos, &ci) in watching.iter().enumerate() {
                if conflict {
                    keep.extend_from_slice(&watching[pos..]);
                    break;
                }
                let clause = &mut self.clauses[ci];
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if self.lit(first) == 1 {
                    keep.push(ci);
                    continue;
                }
                let clause = &self.clauses[ci];
                let replacement = (2..clause.len()).find(|&j| self.lit(clause[j]) != -1);
                if let Some(j) = replacement {
                    let clause = &mut self.clauses[ci];
                    clause.swap(1, j);
                    let new_watch = clause[1];
                    self.watches[lit_index(new_watch)].push(ci);
                    continue;
                }
                keep.push(ci);
                if !self.assign(first) {
                    conflict = true;
                }
            }
            self.watches[lit_index(falsified)].extend(keep);
            if conflict {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for l in self.trail.drain(len..) {
            self.value[l.unsigned_abs() as usize] = 0;
        }
        self.head = self.head.min(len);
    }

    fn solve(mut self, assumptions: &[i32]) -> Option<Vec<bool>> {
        if self.trivially_false {
            return None;
        }
        let forced: Vec<i32> = self.units.iter().chain(assumptions).copied().collect();
        for l in forced {
            if !self.assign(l) {
                return None;
            }
        }
        if !self.propagate() {
            return None;
        }
        // (trail length before the decision, decision literal, already flipped)
        let mut decisions: Vec<(usize, i32, bool)> = Vec::new();
        let mut next_var = 1;
        loop {
            while next_var <= self.num_vars && self.value[next_var] != 0 {
                next_var += 1;
            }
            if next_var > self.num_vars {
                let model: Vec<bool> = self.value[1..].iter().map(|&v| v == 1).collect();
                return Some(model);
            }
            decisions.push((self.trail.len(), -(next_var as i32), false));
            let mut ok = self.assign(-(next_var as i32)) && self.propagate();
            while !ok {
                let (mark, lit, flipped) = loop {
                    match decisions.pop() {
                        None => return None,
                        Some((_, _, true)) => continue,
                        Some(d) => break d,
                    }
                };
                debug_assert!(!flipped);
                self.undo_to(mark);
                decisions.push((mark, -lit, true));
                ok = self.assign(-lit) && self.propagate();
            }
            next_var = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize, clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula::new(n, clauses.iter().map(|c| c.to_vec()).collect())
    }

    #[test]
    fn small_formulas() {
        let sat = f(3, &[&[1, 2], &[-1, 3], &[-3, -2]]);
        let unsat = f(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        for (phi, expected) in [(sat, true), (unsat, false)] {
            assert_eq!(truth_table_satisfiable(&phi), expected);
            assert_eq!(exhaustive_model(&phi, 30).unwrap().is_some(), expected);
            assert_eq!(dpll_satisfiable(&phi), expected);
            if let Some(m) = dpll_model(&phi) {
                assert!(phi.evaluate(&m));
            }
        }
        assert!(!dpll_satisfiable(&CnfFormula::canonical_false()));
        assert!(dpll_satisfiable(&CnfFormula::default()));
        assert_eq!(exhaustive_model(&CnfFormula::canonical_false(), 5), Ok(None));
    }

    #[test]
    fn guard() {
        let phi = CnfFormula::new(50, vec![]);
        assert_eq!(
            exhaustive_model(&phi, 40),
            Err(TooManyVariables { vars: 50, limit: 40 })
        );
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 4 pigeons, 3 holes; var p*3+h+1.
        let v = |p: i32, h: i32| p * 3 + h + 1;
        let mut clauses: Vec<Vec<i32>> = (0..4).map(|p| (0..3).map(|h| v(p, h)).collect()).collect();
        for h in 0..3 {
            for a in 0..4 {
                for b in a + 1..4 {
                    clauses.push(vec![-v(a, h), -v(b, h)]);
                }
            }
        }
        let phi = CnfFormula::new(12, clauses);
        assert!(!dpll_satisfiable(&phi));
        assert!(!truth_table_satisfiable(&phi));
        assert_eq!(exhaustive_model(&phi, 12), Ok(None));
    }

    #[test]
    fn ordered_enumeration() {
        let phi = f(3, &[&[3], &[-3, 1], &[-3, -2]]);
        let order = locality_order(&phi, 1);
        assert_eq!(order, vec![1, 3, 2]);
        let m = exhaustive_model_in_order(&phi, &order, 100).unwrap().unwrap();
        assert_eq!(m, vec![true, false, true]);
        assert_eq!(
            exhaustive_model_in_order(&CnfFormula::new(20, vec![vec![-20]]), &(1..=20).rev().collect::<Vec<_>>(), 20),
            Ok(Some(vec![false; 20]))
        );
        let unsat = f(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        assert_eq!(exhaustive_model_in_order(&unsat, &[2, 1], 3), Err(NodeLimitExceeded { limit: 3 }));
    }

    #[test]
    fn assumptions() {
        let phi = f(2, &[&[1, 2]]);
        assert!(extends_to_model(&phi, &[false]));
        assert!(!extends_to_model(&phi, &[false, false]));
    }
}
