//! Derivation sequences: sentences rewritten one variable occurrence at a time.

use alloc::vec::Vec;

use thiserror::Error;

use crate::grammar::{Grammar, Symbol};
use crate::semiring::Semiring;

pub type Sentence = Vec<Symbol>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivationStep {
    pub before: Sentence,
    pub rule: usize,
    pub position: usize,
    pub after: Sentence,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("step {step}: position {position} does not hold the left-hand side of rule {rule}")]
    NotApplicable {
        step: usize,
        rule: usize,
        position: usize,
    },
    #[error("step {step} does not continue from the previous sentence")]
    Broken { step: usize },
    #[error("step {step} records a sentence that is not the result of the rewrite")]
    WrongResult { step: usize },
}

/// Rewrites the variable at `position` with `rule`, or `None` if it does not apply.
pub fn rewrite<S: Semiring>(
    g: &Grammar<S>,
    sentence: &[Symbol],
    rule: usize,
    position: usize,
) -> Option<Sentence> {
    let r = g.rules().get(rule)?;
    if sentence.get(position) != Some(&Symbol::Variable(r.lhs)) {
        return None;
    }
    let mut out = Vec::with_capacity(sentence.len() + r.rhs.len());
    out.extend_from_slice(&sentence[..position]);
    out.extend_from_slice(&r.rhs);
    out.extend_from_slice(&sentence[position + 1..]);
    Some(out)
}

pub fn variable_count(sentence: &[Symbol]) -> usize {
    sentence.iter().filter(|s| s.variable().is_some()).count()
}

/// A chain of rewrites `α0 ⇒ α1 ⇒ … ⇒ αn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerivationSequence {
    start: Sentence,
    steps: Vec<DerivationStep>,
}

impl DerivationSequence {
    pub fn new(start: Sentence) -> Self {
        DerivationSequence {
            start,
            steps: Vec::new(),
        }
    }

    pub fn start(&self) -> &[Symbol] {
        &self.start
    }

    pub fn steps(&self) -> &[DerivationStep] {
        &self.steps
    }

    pub fn current(&self) -> &[Symbol] {
        self.steps.last().map_or(&self.start, |s| &s.after)
    }

    /// Applies `rule` at `position` of the current sentence.
    pub fn apply<S: Semiring>(
        &mut self,
        g: &Grammar<S>,
        rule: usize,
        position: usize,
    ) -> Result<(), DerivationError> {
        let before = self.current().to_vec();
        let after = rewrite(g, &before, rule, position).ok_or(DerivationError::NotApplicable {
            step: self.steps.len(),
            rule,
            position,
        })?;
        self.steps.push(DerivationStep {
            before,
            rule,
            position,
            after,
        });
        Ok(())
    }

    /// Re-checks every step against `g`.
    pub fn validate<S: Semiring>(&self, g: &Grammar<S>) -> Result<(), DerivationError> {
        let mut current: &[Symbol] = &self.start;
        for (i, step) in self.steps.iter().enumerate() {
            if step.before != current {
                return Err(DerivationError::Broken { step: i });
            }
            let after = rewrite(g, &step.before, step.rule, step.position).ok_or(
                DerivationError::NotApplicable {
                    step: i,
                    rule: step.rule,
                    position: step.position,
                },
            )?;
            if after != step.after {
                return Err(DerivationError::WrongResult { step: i });
            }
            current = &step.after;
        }
        Ok(())
    }

    /// Largest number of variables in any sentence of the sequence.
    pub fn index(&self) -> usize {
        self.steps
            .iter()
            .map(|s| variable_count(&s.after))
            .chain(core::iter::once(variable_count(&self.start)))
            .max()
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::fixtures::*;
    use crate::semiring::Rational;
    use alloc::vec;

    #[test]
    fn catalan_derivation_of_aaa() {
        let g: Grammar<Rational> = catalan();
        let mut d = DerivationSequence::new(vec![Symbol::Variable(0)]);
        d.apply(&g, 0, 0).unwrap();
        d.apply(&g, 1, 1).unwrap();
        d.apply(&g, 1, 2).unwrap();
        d.validate(&g).unwrap();
        assert_eq!(d.current(), &[Symbol::Terminal(0); 3]);
        assert_eq!(d.index(), 2);
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn rejects_misplaced_rewrite() {
        let g: Grammar<Rational> = catalan();
        let mut d = DerivationSequence::new(vec![Symbol::Variable(0)]);
        d.apply(&g, 0, 0).unwrap();
        assert_eq!(
            d.apply(&g, 1, 0),
            Err(DerivationError::NotApplicable {
                step: 1,
                rule: 1,
                position: 0
            })
        );
    }

    #[test]
    fn validate_detects_tampering() {
        let g: Grammar<Rational> = catalan();
        let mut d = DerivationSequence::new(vec![Symbol::Variable(0)]);
        d.apply(&g, 0, 0).unwrap();
        d.steps[0].after.pop();
        assert_eq!(d.validate(&g), Err(DerivationError::WrongResult { step: 0 }));
    }
}
