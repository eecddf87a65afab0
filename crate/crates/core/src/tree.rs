//! Parse trees and brute-force enumeration.
//!
//! Enumeration is the independent oracle for Parikh series: it never builds
//! an algebraic system, it lists trees and sums their weights.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use thiserror::Error;

use crate::analysis;
use crate::grammar::{Grammar, Symbol};
use crate::monomial::Monomial;
use crate::semiring::Semiring;
use crate::series::TruncatedSeries;

/// A parse tree `π(τ1, …, τn)`: one child per variable occurrence of the
/// root rule's right-hand side, left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParseTree {
    pub rule: usize,
    pub children: Vec<ParseTree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("rule index {0} is out of range")]
    UnknownRule(usize),
    #[error("rule {rule} has {expected} variable occurrences but the node has {found} children")]
    ChildCount {
        rule: usize,
        expected: usize,
        found: usize,
    },
    #[error("child {child} of rule {rule} does not rewrite the variable at that occurrence")]
    ChildMismatch { rule: usize, child: usize },
    #[error("the grammar is not cycle-free")]
    NotCycleFree,
    #[error("enumeration exceeded the budget of {0} trees")]
    EnumerationBudgetExceeded(usize),
}

impl ParseTree {
    pub fn leaf(rule: usize) -> Self {
        ParseTree {
            rule,
            children: Vec::new(),
        }
    }

    pub fn new(rule: usize, children: Vec<ParseTree>) -> Self {
        ParseTree { rule, children }
    }

    /// Checks the tree against `g`, including the left-hand side of every child.
    pub fn validate<S: Semiring>(&self, g: &Grammar<S>) -> Result<(), TreeError> {
        let rule = g
            .rules()
            .get(self.rule)
            .ok_or(TreeError::UnknownRule(self.rule))?;
        let vars: Vec<usize> = rule.variables().collect();
        if vars.len() != self.children.len() {
            return Err(TreeError::ChildCount {
                rule: self.rule,
                expected: vars.len(),
                found: self.children.len(),
            });
        }
        for (i, (child, &var)) in self.children.iter().zip(&vars).enumerate() {
            let child_rule = g
                .rules()
                .get(child.rule)
                .ok_or(TreeError::UnknownRule(child.rule))?;
            if child_rule.lhs != var {
                return Err(TreeError::ChildMismatch {
                    rule: self.rule,
                    child: i,
                });
            }
            child.validate(g)?;
        }
        Ok(())
    }

    /// Variable at the root.
    pub fn root<S: Semiring>(&self, g: &Grammar<S>) -> usize {
        g.rule(self.rule).lhs
    }

    /// Product of all rule weights in the tree.
    pub fn weight<S: Semiring>(&self, g: &Grammar<S>) -> S {
        self.children
            .iter()
            .fold(g.rule(self.rule).weight.clone(), |acc, c| {
                acc.times(&c.weight(g))
            })
    }

    /// Terminal word read off the leaves, as terminal indices.
    pub fn yield_word<S: Semiring>(&self, g: &Grammar<S>) -> Vec<usize> {
        let mut out = Vec::new();
        self.push_yield(g, &mut out);
        out
    }

    fn push_yield<S: Semiring>(&self, g: &Grammar<S>, out: &mut Vec<usize>) {
        let mut children = self.children.iter();
        for sym in &g.rule(self.rule).rhs {
            match *sym {
                Symbol::Terminal(t) => out.push(t),
                Symbol::Variable(_) => {
                    if let Some(c) = children.next() {
                        c.push_yield(g, out);
                    }
                }
            }
        }
    }

    pub fn parikh<S: Semiring>(&self, g: &Grammar<S>) -> Monomial {
        Monomial::from_word(&self.yield_word(g))
    }

    pub fn dimension(&self) -> usize {
        combine_dimensions(self.children.iter().map(ParseTree::dimension))
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(ParseTree::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ParseTree::size).sum::<usize>()
    }

    /// Every rule occurrence in pre-order.
    pub fn rules(&self) -> Vec<usize> {
        let mut out = alloc::vec![self.rule];
        for c in &self.children {
            out.extend(c.rules());
        }
        out
    }
}

/// Dimension of a node from its children's dimensions: 0 for a leaf, the
/// maximum when it is attained once, the maximum plus one otherwise.
pub fn combine_dimensions(children: impl IntoIterator<Item = usize>) -> usize {
    let mut max = None;
    let mut count = 0;
    for d in children {
        match max {
            Some(m) if d < m => {}
            Some(m) if d == m => count += 1,
            _ => {
                max = Some(d);
                count = 1;
            }
        }
    }
    match max {
        None => 0,
        Some(m) if count == 1 => m,
        Some(m) => m + 1,
    }
}

/// Limits for [`enumerate_trees`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Maximum yield length.
    pub max_yield: usize,
    /// Maximum tree depth (nodes on a path).
    pub max_depth: usize,
    /// Maximum number of trees held at once.
    pub budget: usize,
}

impl EnumerationLimits {
    pub const DEFAULT_BUDGET: usize = 500_000;

    /// Depth `(k+1)·|V|`, enough for every yield of length ≤ k when the grammar is cycle-free.
    pub fn for_grammar<S: Semiring>(g: &Grammar<S>, max_yield: usize) -> Self {
        EnumerationLimits {
            max_yield,
            max_depth: (max_yield + 1) * g.variables().len(),
            budget: Self::DEFAULT_BUDGET,
        }
    }
}

/// A tree together with its yield length, as stored during enumeration.
type Measured = (ParseTree, usize);

/// All parse trees per variable with yield length and depth within `limits`.
///
/// Built level by level: trees of depth ≤ d+1 are every rule applied to
/// children of depth ≤ d. Stops early once a level adds nothing.
pub fn enumerate_trees<S: Semiring>(
    g: &Grammar<S>,
    limits: EnumerationLimits,
) -> Result<Vec<Vec<ParseTree>>, TreeError> {
    let n = g.variables().len();
    let mut level: Vec<Vec<Measured>> = alloc::vec![Vec::new(); n];
    for _ in 0..limits.max_depth {
        let mut next: Vec<Vec<Measured>> = alloc::vec![Vec::new(); n];
        let mut total = 0usize;
        for (ri, rule) in g.rules().iter().enumerate() {
            let own = rule.terminals().count();
            if own > limits.max_yield {
                continue;
            }
            let vars: Vec<usize> = rule.variables().collect();
            let mut partial: Vec<(Vec<ParseTree>, usize)> = alloc::vec![(Vec::new(), own)];
            for &v in &vars {
                let mut grown = Vec::new();
                for (kids, len) in &partial {
                    for (t, tl) in &level[v] {
                        if len + tl <= limits.max_yield {
                            let mut k = kids.clone();
                            k.push(t.clone());
                            grown.push((k, len + tl));
                        }
                    }
                }
                if grown.len() > limits.budget {
                    return Err(TreeError::EnumerationBudgetExceeded(limits.budget));
                }
                partial = grown;
            }
            total += partial.len();
            if total > limits.budget {
                return Err(TreeError::EnumerationBudgetExceeded(limits.budget));
            }
            next[rule.lhs].extend(
                partial
                    .into_iter()
                    .map(|(children, len)| (ParseTree::new(ri, children), len)),
            );
        }
        let saturated = next.iter().zip(&level).all(|(a, b)| a.len() == b.len());
        level = next;
        if saturated {
            break;
        }
    }
    Ok(level
        .into_iter()
        .map(|ts| ts.into_iter().map(|(t, _)| t).collect())
        .collect())
}

/// Trees rooted at the start symbol, see [`enumerate_trees`].
pub fn enumerate_start_trees<S: Semiring>(
    g: &Grammar<S>,
    limits: EnumerationLimits,
) -> Result<Vec<ParseTree>, TreeError> {
    Ok(enumerate_trees(g, limits)?.swap_remove(g.start()))
}

/// Truncated Parikh series of `g` summed over explicitly enumerated trees.
///
/// `depth` defaults to `(k+1)·|V|`.
pub fn parikh_series_bruteforce<S: Semiring>(
    g: &Grammar<S>,
    k: usize,
    depth: Option<usize>,
    budget: Option<usize>,
) -> Result<TruncatedSeries<S>, TreeError> {
    if !analysis::is_cycle_free(g) {
        return Err(TreeError::NotCycleFree);
    }
    let mut limits = EnumerationLimits::for_grammar(g, k);
    if let Some(d) = depth {
        limits.max_depth = d;
    }
    if let Some(b) = budget {
        limits.budget = b;
    }
    let mut series = TruncatedSeries::zero(k);
    for t in enumerate_start_trees(g, limits)? {
        series.add_term(t.parikh(g), &t.weight(g));
    }
    Ok(series)
}

/// Weight of every word of length ≤ `max_len` with at least one tree,
/// keyed by the word as terminal indices.
pub fn word_weights<S: Semiring>(
    g: &Grammar<S>,
    limits: EnumerationLimits,
) -> Result<BTreeMap<Vec<usize>, S>, TreeError> {
    let mut out: BTreeMap<Vec<usize>, S> = BTreeMap::new();
    for t in enumerate_start_trees(g, limits)? {
        let w = t.weight(g);
        out.entry(t.yield_word(g))
            .and_modify(|acc| *acc = acc.plus(&w))
            .or_insert(w);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::fixtures::*;
    use crate::semiring::{Natural, Rational, Tropical};
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn catalan_tree_for_a_cubed() {
        let g: Grammar<Rational> = catalan();
        let t = ParseTree::new(0, alloc::vec![ParseTree::leaf(1), ParseTree::leaf(1)]);
        t.validate(&g).unwrap();
        assert_eq!(t.yield_word(&g), alloc::vec![0, 0, 0]);
        assert_eq!(t.weight(&g), q(1));
        assert_eq!(t.dimension(), 1);
        assert_eq!(t.depth(), 2);
    }

    #[test]
    fn validation_catches_bad_children() {
        let g: Grammar<Rational> = catalan();
        assert!(matches!(
            ParseTree::leaf(0).validate(&g),
            Err(TreeError::ChildCount { .. })
        ));
        let g: Grammar<Rational> = squared_tail();
        let bad = ParseTree::new(0, alloc::vec![ParseTree::leaf(0), ParseTree::leaf(2)]);
        assert!(matches!(bad.validate(&g), Err(TreeError::ChildMismatch { .. })));
    }

    #[test]
    fn dimension_cases() {
        assert_eq!(combine_dimensions([]), 0);
        assert_eq!(combine_dimensions([3]), 3);
        assert_eq!(combine_dimensions([2, 0, 1]), 2);
        assert_eq!(combine_dimensions([2, 2]), 3);
        let chain = ParseTree::new(0, alloc::vec![ParseTree::new(0, alloc::vec![ParseTree::leaf(1)])]);
        assert_eq!(chain.dimension(), 0);
    }

    #[test]
    fn weight_of_reweighted_squared_tail_tree() {
        let g: Grammar<Rational> = squared_tail();
        // X1 → aX2X2 with children X2 → bX2 → a and X2 → a
        let t = ParseTree::new(
            0,
            alloc::vec![ParseTree::new(1, alloc::vec![ParseTree::leaf(2)]), ParseTree::leaf(2)],
        );
        assert_eq!(t.weight(&g), q(1));
        let g3 = build(
            &["a", "b"],
            &["X1", "X2"],
            &[("X1", "a X2 X2"), ("X2", "b X2"), ("X2", "a")],
            |i| q(if i == 1 { 3 } else { 1 }),
        );
        assert_eq!(t.weight(&g3), q(3));
    }

    #[test]
    fn catalan_numbers_by_enumeration() {
        let g: Grammar<Natural> = catalan();
        let s = parikh_series_bruteforce(&g, 7, None, None).unwrap();
        for (n, c) in [(1, 1u64), (3, 1), (5, 2), (7, 5)] {
            assert_eq!(s.get(&Monomial::var_pow(0, n)), Natural::new(c));
        }
        assert_eq!(s.get(&Monomial::var_pow(0, 2)), Natural::new(0));
    }

    #[test]
    fn weighted_unary_grammar() {
        let s = parikh_series_bruteforce(&doubled_dyck(), 3, None, None).unwrap();
        for n in 0..=3u32 {
            assert_eq!(s.get(&Monomial::var_pow(0, n)), q(1 << n));
        }
    }

    #[test]
    fn single_rule_series() {
        let g = single_rule(q(7));
        let s = parikh_series_bruteforce(&g, 3, None, None).unwrap();
        assert_eq!(s.terms().count(), 1);
        assert_eq!(s.get(&Monomial::var(0)), q(7));
    }

    #[test]
    fn refuses_cyclic_grammars() {
        let g: Grammar<Rational> = build(&["a"], &["X", "Y"], &[("X", "Y"), ("Y", "X"), ("X", "a")], ones);
        assert_eq!(parikh_series_bruteforce(&g, 3, None, None), Err(TreeError::NotCycleFree));
    }

    #[test]
    fn budget_is_enforced() {
        let g: Grammar<Natural> = catalan();
        let limits = EnumerationLimits {
            max_yield: 15,
            max_depth: 40,
            budget: 10,
        };
        assert_eq!(
            enumerate_trees(&g, limits),
            Err(TreeError::EnumerationBudgetExceeded(10))
        );
    }

    #[test]
    fn tropical_coefficients_are_minimum_tree_weights() {
        let g = build(
            &["a", "b"],
            &["X", "Y"],
            &[("X", "a Y"), ("X", "Y a"), ("Y", "b"), ("Y", "b Y")],
            |i| Tropical::Finite([4, 1, 2, 5][i]),
        );
        let k = 4;
        let s = parikh_series_bruteforce(&g, k, None, None).unwrap();
        let trees = enumerate_start_trees(&g, EnumerationLimits::for_grammar(&g, k)).unwrap();
        let mut mins: BTreeMap<Monomial, u64> = BTreeMap::new();
        for t in &trees {
            let w = t.weight(&g).finite().unwrap();
            let e = mins.entry(t.parikh(&g)).or_insert(u64::MAX);
            *e = (*e).min(w);
        }
        assert_eq!(mins.len(), s.terms().count());
        for (m, w) in mins {
            assert_eq!(s.get(&m), Tropical::Finite(w));
        }
    }

    proptest! {
        #[test]
        fn weight_is_independent_of_fold_order(seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let g = build(&["a"], &["X"], &[("X", "a X X"), ("X", "a")], |i| q([3, -2][i]));
            let trees = enumerate_start_trees(&g, EnumerationLimits::for_grammar(&g, 7)).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for t in trees {
                let mut weights: Vec<Rational> = t.rules().iter().map(|&r| g.rule(r).weight.clone()).collect();
                weights.shuffle(&mut rng);
                let folded = weights.iter().fold(Semiring::one(), |a: Rational, w| a.times(w));
                prop_assert_eq!(folded, t.weight(&g));
            }
        }
    }
}
