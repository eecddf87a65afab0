//! Structural analyses: cycle-freeness, nonexpansiveness, degree and the
//! dimension bound. All of them ignore weights, so rules of weight zero
//! still count.
//!
//! Negative answers come with witnesses that can be replayed into concrete
//! derivation sequences.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::derivation::{DerivationError, DerivationSequence};
use crate::grammar::{Grammar, Symbol};
use crate::semiring::Semiring;
use crate::tree::combine_dimensions;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("the grammar is expansive: tree dimensions are unbounded")]
    Expansive,
}

/// For every variable that derives ε, a rule starting such a derivation.
///
/// The chosen rules are well founded: following them from any nullable
/// variable always terminates.
pub fn nullable_rules<S: Semiring>(g: &Grammar<S>) -> Vec<Option<usize>> {
    let mut out = vec![None; g.variables().len()];
    loop {
        let mut changed = false;
        for (i, r) in g.rules().iter().enumerate() {
            if out[r.lhs].is_some() {
                continue;
            }
            let all_nullable = r.rhs.iter().all(|s| match *s {
                Symbol::Terminal(_) => false,
                Symbol::Variable(v) => out[v].is_some(),
            });
            if all_nullable {
                out[r.lhs] = Some(i);
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

pub fn nullable<S: Semiring>(g: &Grammar<S>) -> Vec<bool> {
    nullable_rules(g).iter().map(Option::is_some).collect()
}

/// Rewrites the nullable variable at `position` down to ε, rightmost first.
fn erase<S: Semiring>(
    g: &Grammar<S>,
    eps: &[Option<usize>],
    seq: &mut DerivationSequence,
    position: usize,
) -> Result<(), DerivationError> {
    let var = match seq.current()[position] {
        Symbol::Variable(v) => v,
        Symbol::Terminal(_) => unreachable!("only variables are erased"),
    };
    let rule = eps[var].expect("erased variables are nullable");
    seq.apply(g, rule, position)?;
    for i in (0..g.rule(rule).rhs.len()).rev() {
        erase(g, eps, seq, position + i)?;
    }
    Ok(())
}

/// A derivation `X ⇒+ X`: each edge is a rule and the position of the next
/// variable in its right-hand side, all other symbols being nullable variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    /// `X1, X2, …, X1`, one more entry than `edges`.
    pub variables: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl CycleWitness {
    /// Expands the witness into a derivation from `[X1]` back to `[X1]`.
    pub fn replay<S: Semiring>(&self, g: &Grammar<S>) -> Result<DerivationSequence, DerivationError> {
        let eps = nullable_rules(g);
        let mut seq = DerivationSequence::new(vec![Symbol::Variable(self.variables[0])]);
        for &(rule, position) in &self.edges {
            seq.apply(g, rule, 0)?;
            let len = g.rule(rule).rhs.len();
            for i in (position + 1..len).rev() {
                erase(g, &eps, &mut seq, i)?;
            }
            for i in (0..position).rev() {
                erase(g, &eps, &mut seq, i)?;
            }
        }
        Ok(seq)
    }
}

/// Unit edges `X → Y`: rules `X → αYβ` where `αβ` consists of nullable variables.
fn unit_edges<S: Semiring>(g: &Grammar<S>) -> Vec<Vec<(usize, usize, usize)>> {
    let null = nullable(g);
    let mut edges = vec![Vec::new(); g.variables().len()];
    for (i, r) in g.rules().iter().enumerate() {
        let only_vars = r.rhs.iter().all(|s| s.variable().is_some());
        if !only_vars {
            continue;
        }
        for (p, s) in r.rhs.iter().enumerate() {
            let others_nullable = r
                .rhs
                .iter()
                .enumerate()
                .all(|(q, o)| q == p || o.variable().is_some_and(|v| null[v]));
            if others_nullable {
                edges[r.lhs].push((i, p, s.variable().unwrap()));
            }
        }
    }
    edges
}

/// The shortest derivation `X ⇒+ X` if one exists; ties go to the earliest
/// variable, then to rules in declaration order.
pub fn cycle_witness<S: Semiring>(g: &Grammar<S>) -> Option<CycleWitness> {
    let edges = unit_edges(g);
    let n = g.variables().len();
    let mut best: Option<CycleWitness> = None;
    for x in 0..n {
        let mut parent: Vec<Option<(usize, usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        let mut closing = None;
        'bfs: while let Some(u) = queue.pop_front() {
            for &(rule, pos, v) in &edges[u] {
                if v == x {
                    closing = Some((u, rule, pos));
                    break 'bfs;
                }
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some((u, rule, pos));
                    queue.push_back(v);
                }
            }
        }
        let Some((last, rule, pos)) = closing else {
            continue;
        };
        let mut vars = vec![x];
        let mut path = vec![(rule, pos)];
        let mut u = last;
        while u != x {
            vars.push(u);
            let (p, r, q) = parent[u].unwrap();
            path.push((r, q));
            u = p;
        }
        vars.push(x);
        vars.reverse();
        path.reverse();
        let candidate = CycleWitness {
            variables: vars,
            edges: path,
        };
        if best
            .as_ref()
            .is_none_or(|b| candidate.edges.len() < b.edges.len())
        {
            best = Some(candidate);
        }
    }
    best
}

pub fn is_cycle_free<S: Semiring>(g: &Grammar<S>) -> bool {
    cycle_witness(g).is_none()
}

/// One step along an occurrence path: a rule and the position of the followed variable.
pub type PathStep = (usize, usize);

/// A derivation `X ⇒* w0 X w1 X w2`.
///
/// `to_branch` leads from `X` to the left-hand side of `branch_rule`; the
/// variables at `positions.0 < positions.1` of that rule each lead back to `X`
/// along `left_path` and `right_path`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionWitness {
    pub variable: usize,
    pub to_branch: Vec<PathStep>,
    pub branch_rule: usize,
    pub positions: (usize, usize),
    pub left_path: Vec<PathStep>,
    pub right_path: Vec<PathStep>,
}

impl ExpansionWitness {
    /// Replays the witness from `[X]`; returns the derivation and the two
    /// positions of `X` in the final sentence.
    pub fn replay<S: Semiring>(
        &self,
        g: &Grammar<S>,
    ) -> Result<(DerivationSequence, usize, usize), DerivationError> {
        let mut seq = DerivationSequence::new(vec![Symbol::Variable(self.variable)]);
        let mut p = 0;
        for &(rule, pos) in &self.to_branch {
            seq.apply(g, rule, p)?;
            p += pos;
        }
        seq.apply(g, self.branch_rule, p)?;
        let mut left = p + self.positions.0;
        let mut right = p + self.positions.1;
        for &(rule, pos) in &self.right_path {
            seq.apply(g, rule, right)?;
            right += pos;
        }
        for &(rule, pos) in &self.left_path {
            seq.apply(g, rule, left)?;
            let grown = g.rule(rule).rhs.len() - 1;
            left += pos;
            right += grown;
        }
        Ok((seq, left, right))
    }
}

/// Shortest occurrence paths. `forward[v]` leads from the source to `v`;
/// `backward[v]` leads from `v` to the target.
struct Reach {
    dist: Vec<Option<usize>>,
    path: Vec<Vec<PathStep>>,
}

fn occurrence_edges<S: Semiring>(g: &Grammar<S>) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (i, r) in g.rules().iter().enumerate() {
        for (p, s) in r.rhs.iter().enumerate() {
            if let Symbol::Variable(v) = *s {
                out.push((r.lhs, i, p, v));
            }
        }
    }
    out
}

fn reach_from<S: Semiring>(g: &Grammar<S>, x: usize) -> Reach {
    let n = g.variables().len();
    let edges = occurrence_edges(g);
    let mut dist = vec![None; n];
    let mut path = vec![Vec::new(); n];
    dist[x] = Some(0);
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for &(from, rule, pos, to) in &edges {
            if from == u && dist[to].is_none() {
                dist[to] = Some(dist[u].unwrap() + 1);
                let mut p = path[u].clone();
                p.push((rule, pos));
                path[to] = p;
                queue.push_back(to);
            }
        }
    }
    Reach { dist, path }
}

fn reach_to<S: Semiring>(g: &Grammar<S>, x: usize) -> Reach {
    let n = g.variables().len();
    let edges = occurrence_edges(g);
    let mut dist = vec![None; n];
    let mut path = vec![Vec::new(); n];
    dist[x] = Some(0);
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for &(from, rule, pos, to) in &edges {
            if to == u && dist[from].is_none() {
                dist[from] = Some(dist[u].unwrap() + 1);
                let mut p = vec![(rule, pos)];
                p.extend_from_slice(&path[u]);
                path[from] = p;
                queue.push_back(from);
            }
        }
    }
    Reach { dist, path }
}

/// A shortest witness of expansiveness for the first variable (in declaration
/// order) that has one.
pub fn expansion_witness<S: Semiring>(g: &Grammar<S>) -> Option<ExpansionWitness> {
    for x in 0..g.variables().len() {
        let fwd = reach_from(g, x);
        let back = reach_to(g, x);
        let mut best: Option<(usize, ExpansionWitness)> = None;
        for (ri, r) in g.rules().iter().enumerate() {
            let Some(da) = fwd.dist[r.lhs] else { continue };
            let hits: Vec<(usize, usize)> = r
                .rhs
                .iter()
                .enumerate()
                .filter_map(|(p, s)| {
                    let v = s.variable()?;
                    back.dist[v].map(|d| (p, d))
                })
                .collect();
            for (a, &(pi, di)) in hits.iter().enumerate() {
                for &(pj, dj) in &hits[a + 1..] {
                    let total = da + di + dj;
                    if best.as_ref().is_none_or(|(b, _)| total < *b) {
                        let vi = r.rhs[pi].variable().unwrap();
                        let vj = r.rhs[pj].variable().unwrap();
                        best = Some((
                            total,
                            ExpansionWitness {
                                variable: x,
                                to_branch: fwd.path[r.lhs].clone(),
                                branch_rule: ri,
                                positions: (pi, pj),
                                left_path: back.path[vi].clone(),
                                right_path: back.path[vj].clone(),
                            },
                        ));
                    }
                }
            }
        }
        if let Some((_, w)) = best {
            return Some(w);
        }
    }
    None
}

pub fn is_nonexpansive<S: Semiring>(g: &Grammar<S>) -> bool {
    expansion_witness(g).is_none()
}

/// Largest number of variables on a right-hand side, minus one, clamped at 0.
pub fn degree<S: Semiring>(g: &Grammar<S>) -> usize {
    g.rules()
        .iter()
        .map(|r| r.variable_count())
        .max()
        .unwrap_or(0)
        .saturating_sub(1)
}

/// Largest dimension of any parse tree, as a least fixed point over the
/// variables. `None` marks variables without any finite tree.
pub fn variable_dimensions<S: Semiring>(g: &Grammar<S>) -> Result<Vec<Option<usize>>, AnalysisError> {
    let n = g.variables().len();
    let mut dims: Vec<Option<usize>> = vec![None; n];
    loop {
        let mut next = dims.clone();
        for r in g.rules() {
            let children: Option<Vec<usize>> = r.variables().map(|v| dims[v]).collect();
            if let Some(children) = children {
                let d = combine_dimensions(children);
                if next[r.lhs].is_none_or(|cur| d > cur) {
                    next[r.lhs] = Some(d);
                }
            }
        }
        if next.iter().flatten().any(|&d| d > n) {
            return Err(AnalysisError::Expansive);
        }
        if next == dims {
            return Ok(dims);
        }
        dims = next;
    }
}

/// Upper bound on the dimension of every parse tree of `g`.
pub fn dimension_bound<S: Semiring>(g: &Grammar<S>) -> Result<usize, AnalysisError> {
    Ok(variable_dimensions(g)?.into_iter().flatten().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::fixtures::*;
    use crate::semiring::Rational;
    use crate::tree::{enumerate_trees, EnumerationLimits};

    #[test]
    fn two_cycle_witness() {
        let g: Grammar<Rational> = build(&["a"], &["X", "Y"], &[("X", "Y"), ("Y", "X"), ("X", "a")], ones);
        let w = cycle_witness(&g).unwrap();
        assert_eq!(w.variables, vec![0, 1, 0]);
        let seq = w.replay(&g).unwrap();
        seq.validate(&g).unwrap();
        assert_eq!(seq.current(), &[Symbol::Variable(0)]);
        assert!(!seq.is_empty());
    }

    #[test]
    fn cycle_through_nullable_sibling() {
        let g: Grammar<Rational> = build(&["a"], &["X", "Y"], &[("X", "X Y"), ("Y", ""), ("X", "a")], ones);
        let w = cycle_witness(&g).unwrap();
        assert_eq!(w.variables, vec![0, 0]);
        let seq = w.replay(&g).unwrap();
        seq.validate(&g).unwrap();
        assert_eq!(seq.current(), &[Symbol::Variable(0)]);
        assert_eq!(seq.len(), 2);
    }

    #[test]
    fn fixtures_are_cycle_free() {
        assert!(is_cycle_free(&dyck_split::<Rational>()));
        assert!(is_cycle_free(&doubled_dyck()));
        assert!(is_cycle_free(&catalan::<Rational>()));
    }

    #[test]
    fn catalan_is_expansive() {
        let g: Grammar<Rational> = catalan();
        let w = expansion_witness(&g).unwrap();
        assert_eq!(w.variable, 0);
        assert_eq!(w.branch_rule, 0);
        let (seq, l, r) = w.replay(&g).unwrap();
        seq.validate(&g).unwrap();
        assert_eq!(seq.current()[l], Symbol::Variable(0));
        assert_eq!(seq.current()[r], Symbol::Variable(0));
        assert!(l < r);
    }

    #[test]
    fn expansive_through_a_chain() {
        let g: Grammar<Rational> = build(
            &["a"],
            &["S", "A", "B"],
            &[("S", "a A"), ("A", "B S B"), ("B", "S"), ("S", "a")],
            ones,
        );
        let w = expansion_witness(&g).unwrap();
        let (seq, l, r) = w.replay(&g).unwrap();
        seq.validate(&g).unwrap();
        let x = Symbol::Variable(w.variable);
        assert_eq!((seq.current()[l], seq.current()[r]), (x, x));
    }

    #[test]
    fn nonexpansive_fixtures() {
        assert!(is_nonexpansive(&squared_tail::<Rational>()));
        assert!(is_nonexpansive(&mixed_unary::<Rational>()));
        assert!(is_nonexpansive(&layered::<Rational>()));
        assert!(!is_nonexpansive(&doubled_dyck()));
        assert!(!is_nonexpansive(&dyck_split::<Rational>()));
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&catalan::<Rational>()), 1);
        assert_eq!(degree(&squared_tail::<Rational>()), 1);
        let regular: Grammar<Rational> = build(&["a"], &["X"], &[("X", "a X"), ("X", "a")], ones);
        assert_eq!(degree(&regular), 0);
        assert_eq!(degree(&single_rule(Rational::from_integer(1.into()))), 0);
    }

    #[test]
    fn dimension_bounds() {
        assert_eq!(dimension_bound(&single_rule(Rational::from_integer(1.into()))), Ok(0));
        assert_eq!(dimension_bound(&squared_tail::<Rational>()), Ok(1));
        assert_eq!(dimension_bound(&catalan::<Rational>()), Err(AnalysisError::Expansive));
        assert_eq!(dimension_bound(&mixed_unary::<Rational>()), Ok(1));
        assert_eq!(dimension_bound(&layered::<Rational>()), Ok(2));
    }

    #[test]
    fn bound_dominates_enumerated_trees() {
        for g in [squared_tail::<Rational>(), mixed_unary(), layered()] {
            let bound = dimension_bound(&g).unwrap();
            let limits = EnumerationLimits {
                max_yield: 12,
                max_depth: 6,
                budget: 100_000,
            };
            for trees in enumerate_trees(&g, limits).unwrap() {
                for t in trees {
                    assert!(t.dimension() <= bound);
                }
            }
        }
    }
}
