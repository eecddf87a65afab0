//! The weighted grammar model.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::monomial::Monomial;
use crate::semiring::Semiring;

/// A right-hand-side symbol, referring to a declared terminal or variable by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Terminal(usize),
    Variable(usize),
}

impl Symbol {
    pub fn variable(self) -> Option<usize> {
        match self {
            Symbol::Variable(v) => Some(v),
            Symbol::Terminal(_) => None,
        }
    }

    pub fn terminal(self) -> Option<usize> {
        match self {
            Symbol::Terminal(t) => Some(t),
            Symbol::Variable(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule<S> {
    pub lhs: usize,
    pub rhs: Vec<Symbol>,
    pub weight: S,
}

impl<S> Rule<S> {
    /// Variables of the right-hand side, in order.
    pub fn variables(&self) -> impl Iterator<Item = usize> + '_ {
        self.rhs.iter().filter_map(|s| s.variable())
    }

    pub fn variable_count(&self) -> usize {
        self.variables().count()
    }

    pub fn terminals(&self) -> impl Iterator<Item = usize> + '_ {
        self.rhs.iter().filter_map(|s| s.terminal())
    }

    /// Parikh image of the terminal part of the right-hand side.
    pub fn terminal_monomial(&self) -> Monomial {
        Monomial::from_word(&self.terminals().collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("symbol `{0}` is declared more than once")]
    DuplicateSymbol(String),
    #[error("the grammar declares no variables")]
    NoVariables,
    #[error("start symbol index {0} is not a declared variable")]
    BadStart(usize),
    #[error("rule {rule} refers to an undeclared symbol")]
    UndeclaredSymbol { rule: usize },
    #[error("rule {rule} repeats the left- and right-hand side of rule {first}")]
    DuplicateRule { rule: usize, first: usize },
}

/// A weighted context-free grammar `(V, Σ, S, R)` with weights in `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grammar<S> {
    terminals: Vec<String>,
    variables: Vec<String>,
    start: usize,
    rules: Vec<Rule<S>>,
}

impl<S: Semiring> Grammar<S> {
    pub fn new(
        terminals: Vec<String>,
        variables: Vec<String>,
        start: usize,
        rules: Vec<Rule<S>>,
    ) -> Result<Self, GrammarError> {
        if variables.is_empty() {
            return Err(GrammarError::NoVariables);
        }
        let mut seen = BTreeSet::new();
        for name in terminals.iter().chain(&variables) {
            if !seen.insert(name.as_str()) {
                return Err(GrammarError::DuplicateSymbol(name.clone()));
            }
        }
        if start >= variables.len() {
            return Err(GrammarError::BadStart(start));
        }
        let mut sides = alloc::collections::BTreeMap::new();
        for (i, rule) in rules.iter().enumerate() {
            let in_range = rule.lhs < variables.len()
                && rule.rhs.iter().all(|s| match *s {
                    Symbol::Terminal(t) => t < terminals.len(),
                    Symbol::Variable(v) => v < variables.len(),
                });
            if !in_range {
                return Err(GrammarError::UndeclaredSymbol { rule: i });
            }
            if let Some(&first) = sides.get(&(rule.lhs, &rule.rhs)) {
                return Err(GrammarError::DuplicateRule { rule: i, first });
            }
            sides.insert((rule.lhs, &rule.rhs), i);
        }
        Ok(Grammar {
            terminals,
            variables,
            start,
            rules,
        })
    }

    /// Builds a grammar, merging rules that share both sides by adding their weights.
    pub fn merged(
        terminals: Vec<String>,
        variables: Vec<String>,
        start: usize,
        rules: Vec<Rule<S>>,
    ) -> Result<Self, GrammarError> {
        let mut out: Vec<Rule<S>> = Vec::with_capacity(rules.len());
        let mut index = alloc::collections::BTreeMap::new();
        for rule in rules {
            match index.get(&(rule.lhs, rule.rhs.clone())) {
                Some(&i) => {
                    let w: &mut Rule<S> = &mut out[i];
                    w.weight = w.weight.plus(&rule.weight);
                }
                None => {
                    index.insert((rule.lhs, rule.rhs.clone()), out.len());
                    out.push(rule);
                }
            }
        }
        Self::new(terminals, variables, start, out)
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.rules
    }

    pub fn rule(&self, index: usize) -> &Rule<S> {
        &self.rules[index]
    }

    /// Indices of the rules rewriting `var`, in declaration order.
    pub fn rules_for(&self, var: usize) -> impl Iterator<Item = usize> + '_ {
        self.rules
            .iter()
            .enumerate()
            .filter(move |(_, r)| r.lhs == var)
            .map(|(i, _)| i)
    }

    pub fn terminal_index(&self, name: &str) -> Option<usize> {
        self.terminals.iter().position(|t| t == name)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn symbol_name(&self, symbol: Symbol) -> &str {
        match symbol {
            Symbol::Terminal(t) => &self.terminals[t],
            Symbol::Variable(v) => &self.variables[v],
        }
    }

    /// Parikh image of a word given by terminal names.
    pub fn parikh_image(&self, word: &[&str]) -> Result<Monomial, UndeclaredTerminal> {
        let indices = word
            .iter()
            .map(|w| {
                self.terminal_index(w)
                    .ok_or_else(|| UndeclaredTerminal(String::from(*w)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Monomial::from_word(&indices))
    }

    /// Same rules with every weight mapped through `f`.
    pub fn map_weights<T: Semiring>(&self, mut f: impl FnMut(&S) -> T) -> Grammar<T> {
        Grammar {
            terminals: self.terminals.clone(),
            variables: self.variables.clone(),
            start: self.start,
            rules: self
                .rules
                .iter()
                .map(|r| Rule {
                    lhs: r.lhs,
                    rhs: r.rhs.clone(),
                    weight: f(&r.weight),
                })
                .collect(),
        }
    }

    /// Each right-hand side holds at most one variable, placed last.
    pub fn is_regular(&self) -> bool {
        self.rules.iter().all(|r| {
            let n = r.variable_count();
            n == 0 || (n == 1 && matches!(r.rhs.last(), Some(Symbol::Variable(_))))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a declared terminal")]
pub struct UndeclaredTerminal(pub String);


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::semiring::Rational;
    use alloc::vec;

    #[test]
    fn rejects_overlapping_declarations() {
        let err = Grammar::<Rational>::new(names(&["a"]), names(&["a"]), 0, vec![]).unwrap_err();
        assert_eq!(err, GrammarError::DuplicateSymbol("a".into()));
    }

    #[test]
    fn rejects_duplicate_rules() {
        let r = Rule {
            lhs: 0,
            rhs: vec![Symbol::Terminal(0)],
            weight: Rational::from_integer(1.into()),
        };
        let err = Grammar::new(names(&["a"]), names(&["X"]), 0, vec![r.clone(), r]).unwrap_err();
        assert_eq!(err, GrammarError::DuplicateRule { rule: 1, first: 0 });
    }

    #[test]
    fn merged_adds_weights() {
        let r = Rule {
            lhs: 0,
            rhs: vec![Symbol::Terminal(0)],
            weight: Rational::from_integer(2.into()),
        };
        let g = Grammar::merged(names(&["a"]), names(&["X"]), 0, vec![r.clone(), r]).unwrap();
        assert_eq!(g.rules().len(), 1);
        assert_eq!(g.rules()[0].weight, Rational::from_integer(4.into()));
    }

    #[test]
    fn rejects_undeclared_symbols() {
        let r = Rule {
            lhs: 0,
            rhs: vec![Symbol::Variable(3)],
            weight: Rational::from_integer(1.into()),
        };
        assert_eq!(
            Grammar::new(names(&["a"]), names(&["X"]), 0, vec![r]).unwrap_err(),
            GrammarError::UndeclaredSymbol { rule: 0 }
        );
    }

    #[test]
    fn parikh_image_by_name() {
        let g: Grammar<Rational> = squared_tail();
        assert_eq!(g.parikh_image(&["a", "a", "b", "b"]).unwrap().exponents(), &[2, 2]);
        assert_eq!(g.parikh_image(&[]).unwrap(), Monomial::one());
        assert!(g.parikh_image(&["c"]).is_err());
    }

    #[test]
    fn regularity() {
        assert!(!catalan::<Rational>().is_regular());
        let g: Grammar<Rational> = build(&["a"], &["X"], &[("X", "a X"), ("X", "")], ones);
        assert!(g.is_regular());
    }
}
