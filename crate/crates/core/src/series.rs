//! Truncated commutative power series and algebraic systems.
//!
//! The system of a grammar has one equation `Xi = pi` per variable, where
//! `pi` sums the weighted Parikh monomials of the right-hand sides of `Xi`.
//! Kleene iteration from zero, truncated at total degree `k`, converges in
//! finitely many steps for cycle-free grammars; its first component is the
//! truncated Parikh series.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Polynomial, RationalFunction, SystemPolynomial, XPolynomial};
use crate::grammar::{Grammar, GrammarError, Rule, Symbol};
use crate::monomial::Monomial;
use crate::semiring::{Rational, Semiring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("no fixed point after {0} iterations; the grammar is probably not cycle-free")]
    NonConvergent(usize),
    #[error("the equation of `{0}` is not regular")]
    NonRegularSystem(String),
    #[error("the coefficient of X must have a zero constant term")]
    NonzeroConstantTerm,
    #[error(transparent)]
    Grammar(#[from] GrammarError),
}

/// Display order for series and rule lists: ascending total degree, then
/// heavier exponents on earlier symbols first.
pub fn display_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.cmp(a))
}

/// `R_k(r)`: the coefficients of a series on monomials of total degree ≤ `order`.
/// Absent monomials have coefficient zero.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries<S> {
    order: usize,
    coeffs: BTreeMap<Monomial, S>,
}

impl<S: Semiring> TruncatedSeries<S> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(order: usize, c: S) -> Self {
        let mut s = Self::zero(order);
        s.add_term(Monomial::one(), &c);
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, m: &Monomial) -> S {
        self.coeffs.get(m).cloned().unwrap_or_else(S::zero)
    }

    /// Nonzero coefficients in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c·m`; ignored when `m` exceeds the order.
    pub fn add_term(&mut self, m: Monomial, c: &S) {
        if m.degree() as usize > self.order || c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&m) {
            Some(x) => x.plus(c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&m);
        } else {
            self.coeffs.insert(m, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.order = self.order.min(other.order);
        out.coeffs.retain(|m, _| m.degree() as usize <= out.order);
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order.min(other.order));
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                if (a.degree() + b.degree()) as usize <= out.order {
                    out.add_term(a.mul(b), &x.times(y));
                }
            }
        }
        out
    }

    /// `c·m·self`.
    pub fn mul_term(&self, m: &Monomial, c: &S) -> Self {
        let mut out = Self::zero(self.order);
        for (a, x) in &self.coeffs {
            out.add_term(a.mul(m), &c.times(x));
        }
        out
    }

    /// Drops every monomial of degree above `k`.
    pub fn truncate(&self, k: usize) -> Self {
        let order = k.min(self.order);
        TruncatedSeries {
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| m.degree() as usize <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The least monomial (in display order) where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<Monomial> {
        let mut keys: Vec<&Monomial> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.sort_by(|a, b| display_cmp(a, b));
        keys.dedup();
        keys.into_iter()
            .find(|m| self.get(m) != other.get(m))
            .cloned()
    }

    /// Renders as `1*a + 1*a^3` in ascending degree; the zero series is `0`.
    pub fn display<'a, N: AsRef<str>>(&'a self, names: &'a [N]) -> impl fmt::Display + 'a {
        SeriesDisplay { s: self, names }
    }
}

impl<S: Semiring> fmt::Debug for TruncatedSeries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [&str; 0] = [];
        write!(f, "TruncatedSeries[{}]({})", self.order, self.display(&names))?;
        Ok(())
    }
}

struct SeriesDisplay<'a, S, N> {
    s: &'a TruncatedSeries<S>,
    names: &'a [N],
}

impl<S: Semiring, N: AsRef<str>> fmt::Display for SeriesDisplay<'_, S, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Monomial, &S)> = self.s.coeffs.iter().collect();
        terms.sort_by(|a, b| display_cmp(a.0, b.0));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let c = c.to_string();
            let (negative, magnitude) = match c.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, c.as_str()),
            };
            f.write_str(match (i, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            })?;
            if m.is_one() {
                f.write_str(magnitude)?;
            } else {
                write!(f, "{magnitude}*{}", m.display(self.names))?;
            }
        }
        Ok(())
    }
}

/// The terms of one equation: `(terminal monomial, variable monomial) ↦ coefficient`.
pub type Equation<S> = BTreeMap<(Monomial, Monomial), S>;

/// An algebraic system in commuting variables. Variable 0 is the start
/// symbol; variable monomials index into [`AlgebraicSystem::variables`].
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicSystem<S> {
    terminals: Vec<String>,
    variables: Vec<String>,
    equations: Vec<Equation<S>>,
}

impl<S: Semiring> AlgebraicSystem<S> {
    /// The system of `g`: variables ordered start first, then the rest in
    /// declaration order.
    pub fn from_grammar(g: &Grammar<S>) -> Self {
        let order = system_order(g);
        let mut position = alloc::vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut equations: Vec<Equation<S>> = alloc::vec![BTreeMap::new(); order.len()];
        for r in g.rules() {
            let t = r.terminal_monomial();
            let v = Monomial::from_word(&r.variables().map(|v| position[v]).collect::<Vec<_>>());
            let eq = &mut equations[position[r.lhs]];
            let key = (t, v);
            let sum = match eq.get(&key) {
                Some(x) => x.plus(&r.weight),
                None => r.weight.clone(),
            };
            if sum.is_zero() {
                eq.remove(&key);
            } else {
                eq.insert(key, sum);
            }
        }
        AlgebraicSystem {
            terminals: g.terminals().to_vec(),
            variables: order.iter().map(|&v| g.variables()[v].clone()).collect(),
            equations,
        }
    }

    pub fn new(terminals: Vec<String>, variables: Vec<String>, equations: Vec<Equation<S>>) -> Self {
        assert_eq!(variables.len(), equations.len(), "one equation per variable");
        let equations = equations
            .into_iter()
            .map(|mut e| {
                e.retain(|_, c| !c.is_zero());
                e
            })
            .collect();
        AlgebraicSystem {
            terminals,
            variables,
            equations,
        }
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn equations(&self) -> &[Equation<S>] {
        &self.equations
    }

    pub fn equation(&self, name: &str) -> Option<&Equation<S>> {
        let i = self.variables.iter().position(|v| v == name)?;
        Some(&self.equations[i])
    }

    /// Substitutes the tuple `sigma` into every right-hand side, truncating at `k`.
    pub fn step(&self, sigma: &[TruncatedSeries<S>], k: usize) -> Vec<TruncatedSeries<S>> {
        self.equations
            .iter()
            .map(|eq| {
                let mut acc = TruncatedSeries::zero(k);
                for ((t, v), c) in eq {
                    if t.degree() as usize > k {
                        continue;
                    }
                    let mut prod = TruncatedSeries::constant(k, S::one());
                    for (var, &e) in v.exponents().iter().enumerate() {
                        for _ in 0..e {
                            prod = prod.mul(&sigma[var]);
                        }
                    }
                    acc = acc.add(&prod.mul_term(t, c));
                }
                acc
            })
            .collect()
    }

    /// The truncated strong solution: Kleene iteration from zero until two
    /// consecutive tuples agree.
    pub fn approximate(&self, k: usize, max_iters: usize) -> Result<Vec<TruncatedSeries<S>>, SeriesError> {
        let mut sigma = alloc::vec![TruncatedSeries::zero(k); self.variables.len()];
        for _ in 0..max_iters {
            let next = self.step(&sigma, k);
            if next == sigma {
                return Ok(sigma);
            }
            sigma = next;
        }
        Err(SeriesError::NonConvergent(max_iters))
    }

    /// The grammar with one rule per term. Every term must carry at most one
    /// variable; its terminals are written in declaration order before it.
    pub fn to_regular_grammar(&self) -> Result<Grammar<S>, SeriesError> {
        let mut rules = Vec::new();
        for (i, eq) in self.equations.iter().enumerate() {
            for ((t, v), c) in eq {
                if v.degree() > 1 {
                    return Err(SeriesError::NonRegularSystem(self.variables[i].clone()));
                }
                let mut rhs: Vec<Symbol> = t.canonical_word().into_iter().map(Symbol::Terminal).collect();
                rhs.extend(v.canonical_word().into_iter().map(Symbol::Variable));
                rules.push(Rule {
                    lhs: i,
                    rhs,
                    weight: c.clone(),
                });
            }
        }
        Ok(Grammar::new(self.terminals.clone(), self.variables.clone(), 0, rules)?)
    }
}

/// Grammar variable indices in system order: start first, then the rest.
pub fn system_order<S: Semiring>(g: &Grammar<S>) -> Vec<usize> {
    core::iter::once(g.start())
        .chain((0..g.variables().len()).filter(|&v| v != g.start()))
        .collect()
}

impl AlgebraicSystem<Rational> {
    /// The generators `Xi − pi` over the fraction field.
    pub fn generators(&self) -> Vec<SystemPolynomial> {
        self.equations
            .iter()
            .enumerate()
            .map(|(i, eq)| {
                let rhs = SystemPolynomial::from_terms(eq.iter().map(|((t, v), c)| {
                    (v.clone(), RationalFunction::from(Polynomial::term(t.clone(), c.clone())))
                }));
                SystemPolynomial::var(i).sub(&rhs)
            })
            .collect()
    }
}

/// `R_k(p(r))` for a polynomial `p` in `X1`, by Horner's rule with truncation.
pub fn eval_at_series(p: &XPolynomial, r: &TruncatedSeries<Rational>, k: usize) -> TruncatedSeries<Rational> {
    let r = r.truncate(k);
    p.coefficients()
        .iter()
        .rev()
        .fold(TruncatedSeries::zero(k), |acc, c| acc.mul(&r).add(&c.to_series(k)))
}

/// The regular grammar of `X = sX + t` over `terminals`, with `X` named
/// `variable`. Rules for `s` come first, then those for `t`, each in display
/// order.
pub fn grammar_from_linear(
    s: &Polynomial,
    t: &Polynomial,
    terminals: &[String],
    variable: &str,
) -> Result<Grammar<Rational>, SeriesError> {
    if !Zero::is_zero(&s.constant_term()) {
        return Err(SeriesError::NonzeroConstantTerm);
    }
    let mut rules = Vec::new();
    for (p, recursive) in [(s, true), (t, false)] {
        let mut terms: Vec<(&Monomial, &Rational)> = p.terms().collect();
        terms.sort_by(|a, b| display_cmp(a.0, b.0));
        for (m, c) in terms {
            let mut rhs: Vec<Symbol> = m.canonical_word().into_iter().map(Symbol::Terminal).collect();
            if recursive {
                rhs.push(Symbol::Variable(0));
            }
            rules.push(Rule {
                lhs: 0,
                rhs,
                weight: c.clone(),
            });
        }
    }
    Ok(Grammar::new(
        terminals.to_vec(),
        alloc::vec![String::from(variable)],
        0,
        rules,
    )?)
}
