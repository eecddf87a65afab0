//! From a nonexpansive grammar to a Parikh-equivalent regular grammar.
//!
//! The pipeline has three stages:
//!
//! 1. [`at_most_k_grammar`] splits every variable `X` into `X.d.e` (trees of
//!    dimension exactly `d`) and `X.d.m` (dimension at most `d`). Its parse
//!    trees are in bijection with those of the input of dimension ≤ `k`
//!    ([`project_tree`] is the bijection).
//! 2. [`ldf_derivation`] derives the pending variable of lowest dimension
//!    first, which keeps the number of pending variables at most `k·m + 1`.
//! 3. [`regularize`] turns the pending-variable sequences into the states of
//!    a regular grammar, discovered lazily from the start.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::analysis;
use crate::derivation::DerivationSequence;
use crate::grammar::{Grammar, GrammarError, Rule, Symbol};
use crate::semiring::Semiring;
use crate::tree::ParseTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularizerError {
    #[error("k = {k} is below the dimension bound {bound}")]
    KTooSmall { k: usize, bound: usize },
    #[error("the grammar is expansive")]
    ExpansiveGrammar,
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Exact,
    AtMost,
}

/// A variable of the at-most-k grammar: `base` restricted to trees of
/// dimension exactly `level` or at most `level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnnotatedVariable {
    pub base: usize,
    pub level: usize,
    pub mode: Mode,
}

impl AnnotatedVariable {
    /// `X.d.e` or `X.d.m`.
    pub fn name(&self, base_name: &str) -> String {
        let m = match self.mode {
            Mode::Exact => 'e',
            Mode::AtMost => 'm',
        };
        format!("{base_name}.{}.{m}", self.level)
    }
}

/// Which construction produced a rule of the at-most-k grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleFamily {
    /// Terminal rule at level 0.
    Terminal,
    /// Rule with one variable occurrence, kept at its level.
    Unit,
    /// One child keeps the level, the others are strictly lower.
    Promoted,
    /// Two or more children one level down, the rest lower still.
    Split,
    /// `X.d.m → X.e.e` for `e ≤ d`.
    Epsilon,
}

/// The at-most-k grammar together with the meaning of its symbols.
#[derive(Clone, Debug)]
pub struct AtMostGrammar<S> {
    grammar: Grammar<S>,
    k: usize,
    annotations: Vec<AnnotatedVariable>,
    origin: Vec<Option<usize>>,
    families: Vec<RuleFamily>,
}

impl<S: Semiring> AtMostGrammar<S> {
    pub fn grammar(&self) -> &Grammar<S> {
        &self.grammar
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn annotation(&self, var: usize) -> AnnotatedVariable {
        self.annotations[var]
    }

    pub fn annotations(&self) -> &[AnnotatedVariable] {
        &self.annotations
    }

    /// The rule of the input grammar a rule was copied from; `None` for the
    /// epsilon family.
    pub fn origin(&self, rule: usize) -> Option<usize> {
        self.origin[rule]
    }

    pub fn family(&self, rule: usize) -> RuleFamily {
        self.families[rule]
    }

    pub fn family_count(&self, family: RuleFamily) -> usize {
        self.families.iter().filter(|&&f| f == family).count()
    }

    /// Index of the annotated variable `(base, level, mode)`.
    pub fn index_of(&self, v: AnnotatedVariable) -> usize {
        annotated_index(self.k, v)
    }

    /// Largest number of variable occurrences on a right-hand side, minus one.
    pub fn degree(&self) -> usize {
        analysis::degree(&self.grammar)
    }

    /// `k·m + 1`: the bound on pending variables in an LDF derivation.
    pub fn index_bound(&self) -> usize {
        self.k * self.degree() + 1
    }
}

fn annotated_index(k: usize, v: AnnotatedVariable) -> usize {
    (v.base * (k + 1) + v.level) * 2 + usize::from(v.mode == Mode::AtMost)
}

/// The at-most-k grammar of `g`, starting at `S.k.m`.
pub fn at_most_k_grammar<S: Semiring>(g: &Grammar<S>, k: usize) -> Result<AtMostGrammar<S>, RegularizerError> {
    let bound = analysis::dimension_bound(g).map_err(|_| RegularizerError::ExpansiveGrammar)?;
    if k < bound {
        return Err(RegularizerError::KTooSmall { k, bound });
    }
    let mut annotations = Vec::new();
    let mut names = Vec::new();
    for (base, name) in g.variables().iter().enumerate() {
        for level in 0..=k {
            for mode in [Mode::Exact, Mode::AtMost] {
                let v = AnnotatedVariable { base, level, mode };
                names.push(v.name(name));
                annotations.push(v);
            }
        }
    }
    let idx = |base, level, mode| annotated_index(k, AnnotatedVariable { base, level, mode });

    let mut rules = Vec::new();
    let mut origin = Vec::new();
    let mut families = Vec::new();
    let mut push = |lhs, levels: &[(usize, Mode)], r: &Rule<S>, ri: Option<usize>, family| {
        let mut children = levels.iter();
        let rhs = r
            .rhs
            .iter()
            .map(|s| match s {
                Symbol::Terminal(t) => Symbol::Terminal(*t),
                Symbol::Variable(v) => {
                    let &(level, mode) = children.next().expect("one annotation per occurrence");
                    Symbol::Variable(idx(*v, level, mode))
                }
            })
            .collect();
        rules.push(Rule {
            lhs,
            rhs,
            weight: r.weight.clone(),
        });
        origin.push(ri);
        families.push(family);
    };

    for (ri, r) in g.rules().iter().enumerate() {
        let n = r.variable_count();
        match n {
            0 => push(idx(r.lhs, 0, Mode::Exact), &[], r, Some(ri), RuleFamily::Terminal),
            1 => {
                for d in 0..=k {
                    push(idx(r.lhs, d, Mode::Exact), &[(d, Mode::Exact)], r, Some(ri), RuleFamily::Unit);
                }
            }
            _ => {
                for d in 1..=k {
                    let lhs = idx(r.lhs, d, Mode::Exact);
                    for i in 0..n {
                        let levels: Vec<_> = (0..n)
                            .map(|j| if j == i { (d, Mode::Exact) } else { (d - 1, Mode::AtMost) })
                            .collect();
                        push(lhs, &levels, r, Some(ri), RuleFamily::Promoted);
                    }
                    for mask in 1u64..(1 << n) {
                        let size = mask.count_ones() as usize;
                        if size < 2 || (size < n && d < 2) {
                            continue;
                        }
                        let levels: Vec<_> = (0..n)
                            .map(|j| {
                                if mask & (1 << j) != 0 {
                                    (d - 1, Mode::Exact)
                                } else {
                                    (d - 2, Mode::AtMost)
                                }
                            })
                            .collect();
                        push(lhs, &levels, r, Some(ri), RuleFamily::Split);
                    }
                }
            }
        }
    }
    for base in 0..g.variables().len() {
        for d in 0..=k {
            for e in 0..=d {
                rules.push(Rule {
                    lhs: idx(base, d, Mode::AtMost),
                    rhs: alloc::vec![Symbol::Variable(idx(base, e, Mode::Exact))],
                    weight: S::one(),
                });
                origin.push(None);
                families.push(RuleFamily::Epsilon);
            }
        }
    }
    let grammar = Grammar::new(
        g.terminals().to_vec(),
        names,
        idx(g.start(), k, Mode::AtMost),
        rules,
    )?;
    Ok(AtMostGrammar {
        grammar,
        k,
        annotations,
        origin,
        families,
    })
}

/// Terminals first in their relative order, then variables by ascending
/// level, stable within a level.
pub fn ldf_sort(sentence: &[Symbol], annotations: &[AnnotatedVariable]) -> Vec<Symbol> {
    let mut vars: Vec<Symbol> = sentence.iter().filter(|s| s.variable().is_some()).copied().collect();
    vars.sort_by_key(|s| annotations[s.variable().unwrap_or_default()].level);
    sentence
        .iter()
        .filter(|s| s.terminal().is_some())
        .copied()
        .chain(vars)
        .collect()
}

/// The lowest-dimension-first derivation of a tree of the at-most-k grammar.
///
/// # Panics
///
/// If the tree is not a parse tree of `gk` or the derivation exceeds the
/// index bound `k·m + 1`.
pub fn ldf_derivation<S: Semiring>(gk: &AtMostGrammar<S>, t: &ParseTree) -> DerivationSequence {
    let g = gk.grammar();
    let root = t.root(g);
    let mut seq = DerivationSequence::new(alloc::vec![Symbol::Variable(root)]);
    // node ids parallel to the variable occurrences of the current sentence
    let mut occurrence: Vec<&ParseTree> = alloc::vec![t];
    let mut pending: Vec<&ParseTree> = alloc::vec![t];
    while !pending.is_empty() {
        let node = pending.remove(0);
        let slot = occurrence
            .iter()
            .position(|&n| core::ptr::eq(n, node))
            .expect("pending node occurs in the sentence");
        let position = seq
            .current()
            .iter()
            .enumerate()
            .filter(|(_, s)| s.variable().is_some())
            .nth(slot)
            .map(|(p, _)| p)
            .expect("occurrence exists");
        seq.apply(g, node.rule, position).expect("tree is valid for the grammar");
        let children: Vec<&ParseTree> = node.children.iter().collect();
        occurrence.splice(slot..=slot, children.iter().copied());
        let mut sorted = children;
        sorted.sort_by_key(|c| gk.annotation(c.root(g)).level);
        sorted.extend(pending);
        pending = sorted;
    }
    assert!(
        seq.index() <= gk.index_bound(),
        "LDF index {} exceeds k*m + 1 = {}",
        seq.index(),
        gk.index_bound()
    );
    seq
}

/// Contracts the epsilon edges and drops the annotations.
pub fn project_tree<S: Semiring>(gk: &AtMostGrammar<S>, t: &ParseTree) -> ParseTree {
    match gk.origin(t.rule) {
        Some(rule) => ParseTree::new(rule, t.children.iter().map(|c| project_tree(gk, c)).collect()),
        None => project_tree(gk, &t.children[0]),
    }
}

/// Figures from one run of [`regularize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegularizeStats {
    pub k: usize,
    pub at_most_variables: usize,
    pub at_most_rules: usize,
    pub states: usize,
    pub rules: usize,
    pub longest_state: usize,
    pub index_bound: usize,
}

impl fmt::Display for RegularizeStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k = {}, at-most-k grammar: {} variables, {} rules; regular grammar: {} states, {} rules; longest state {} (bound {})",
            self.k,
            self.at_most_variables,
            self.at_most_rules,
            self.states,
            self.rules,
            self.longest_state,
            self.index_bound
        )
    }
}

/// A regular grammar with the same truncated Parikh series as the input.
#[derive(Clone, Debug)]
pub struct Regularized<S> {
    pub grammar: Grammar<S>,
    /// The pending-variable sequence of every state, as at-most-k variables.
    pub states: Vec<Vec<usize>>,
    pub stats: RegularizeStats,
}

/// Regularizes a nonexpansive grammar. `k` defaults to the dimension bound.
pub fn regularize<S: Semiring>(g: &Grammar<S>, k: Option<usize>) -> Result<Regularized<S>, RegularizerError> {
    if !analysis::is_nonexpansive(g) {
        return Err(RegularizerError::ExpansiveGrammar);
    }
    let bound = analysis::dimension_bound(g).map_err(|_| RegularizerError::ExpansiveGrammar)?;
    let gk = at_most_k_grammar(g, k.unwrap_or(bound))?;
    let ak = gk.grammar();
    let productive = productive_variables(ak);
    let live: Vec<bool> = ak
        .rules()
        .iter()
        .map(|r| r.variables().all(|v| productive[v]))
        .collect();

    let mut ids: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut states: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    let start = alloc::vec![ak.start()];
    ids.insert(start.clone(), 0);
    states.push(start.clone());
    queue.push_back(start);

    let mut rules = Vec::new();
    while let Some(state) = queue.pop_front() {
        let lhs = ids[&state];
        let (&head, rest) = state.split_first().expect("states are nonempty");
        for ri in ak.rules_for(head) {
            if !live[ri] {
                continue;
            }
            let r = ak.rule(ri);
            let sorted = ldf_sort(&r.rhs, gk.annotations());
            let mut rhs: Vec<Symbol> = sorted.iter().filter(|s| s.terminal().is_some()).copied().collect();
            let mut next: Vec<usize> = sorted.iter().filter_map(|s| s.variable()).collect();
            next.extend_from_slice(rest);
            if !next.is_empty() {
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        ids.insert(next.clone(), id);
                        states.push(next.clone());
                        queue.push_back(next);
                        id
                    }
                };
                rhs.push(Symbol::Variable(id));
            }
            rules.push(Rule {
                lhs,
                rhs,
                weight: r.weight.clone(),
            });
        }
    }
    let names: Vec<String> = states.iter().map(|s| state_name(ak, s)).collect();
    let grammar = Grammar::merged(g.terminals().to_vec(), names, 0, rules)?;
    let stats = RegularizeStats {
        k: gk.k(),
        at_most_variables: ak.variables().len(),
        at_most_rules: ak.rules().len(),
        states: states.len(),
        rules: grammar.rules().len(),
        longest_state: states.iter().map(Vec::len).max().unwrap_or(0),
        index_bound: gk.index_bound(),
    };
    assert!(stats.longest_state <= stats.index_bound, "state longer than k*m + 1");
    Ok(Regularized { grammar, states, stats })
}

/// `<X.0.e|Y.1.m>`.
pub fn state_name<S: Semiring>(ak: &Grammar<S>, state: &[usize]) -> String {
    let inner: Vec<&str> = state.iter().map(|&v| ak.variables()[v].as_str()).collect();
    format!("<{}>", inner.join("|"))
}

fn productive_variables<S: Semiring>(g: &Grammar<S>) -> Vec<bool> {
    let mut productive = alloc::vec![false; g.variables().len()];
    let mut changed = true;
    while changed {
        changed = false;
        for r in g.rules() {
            if !productive[r.lhs] && r.variables().all(|v| productive[v]) {
                productive[r.lhs] = true;
                changed = true;
            }
        }
    }
    productive
}
