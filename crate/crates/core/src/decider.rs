//! Deciding whether a ℚ-weighted grammar has a Parikh-equivalent regular
//! grammar.
//!
//! The start component `r1` of the strong solution is algebraic over the
//! field `K` of rational functions in the terminals. Its minimal polynomial
//! divides the univariate element of the reduced Groebner basis of the
//! system. A regular equivalent exists exactly when that minimal polynomial
//! is linear, that is when `r1` itself lies in `K`.
//!
//! Instead of factoring over `K`, the procedure looks for `r1 = d/c` with
//! `deg c, deg d ≤ D` by solving a linear system on truncated coefficients.
//! A candidate is accepted once `cX1 − d` divides the annihilator and
//! truncated evaluation singles it out among the factors. An empty solution
//! space proves that no linear factor exists.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{
    clear_denominators, reduced_groebner_basis, Polynomial, RationalFunction, UniPolynomial, XPolynomial,
};
use crate::analysis;
use crate::grammar::Grammar;
use crate::monomial::monomials_up_to;
use crate::semiring::{Rational, SemiringKind};
use crate::series::{eval_at_series, grammar_from_linear, AlgebraicSystem, SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("the grammar is not cycle-free")]
    NotCycleFree,
    #[error("the decision procedure needs weights in Q, not {}", .0.keyword())]
    WrongSemiring(SemiringKind),
    #[error("the linear annihilator's X-coefficient has a zero constant term")]
    DegenerateLeadingTerm,
    #[error("no verdict up to truncation order {0}")]
    IterationCapExceeded(usize),
    #[error("the reduced basis has no element in the start variable alone")]
    NoUnivariateElement,
    #[error("no candidate factor vanishes at the start series")]
    NoVanishingFactor,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Cap on Kleene iterations per series approximation.
    pub max_iters: usize,
    /// Largest truncation order tried before giving up.
    pub max_order: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            max_iters: 10_000,
            max_order: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecisionReport {
    pub verdict: Verdict,
    /// The certified annihilator of the start series, with integer
    /// coefficients and no common factor.
    pub q: XPolynomial,
    /// The regular witness, present when the verdict holds.
    pub witness: Option<Grammar<Rational>>,
    /// The univariate element of the reduced Groebner basis.
    pub basis_g: UniPolynomial,
    /// Truncation order at which the verdict was certified.
    pub discrimination_order: usize,
    pub variable: String,
    pub terminals: Vec<String>,
}

impl fmt::Display for DecisionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = [self.variable.as_str()];
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "q: {}", self.q.display(&self.variable, &self.terminals))?;
        writeln!(f, "basis_g: {}", self.basis_g.to_system().display(&vars, &self.terminals))?;
        write!(f, "discrimination_order: {}", self.discrimination_order)
    }
}

/// The unique element of the reduced Groebner basis of `{Xi − pi}` that
/// involves the start variable only.
pub fn eliminate_to_univariate(sys: &AlgebraicSystem<Rational>) -> Result<UniPolynomial, DecideError> {
    reduced_groebner_basis(&sys.generators())
        .iter()
        .find(|p| !p.is_zero() && p.is_univariate_in_first())
        .and_then(UniPolynomial::from_system)
        .ok_or(DecideError::NoUnivariateElement)
}

/// A basis of `{(c, d) : deg c, deg d ≤ D, c·r1 ≡ d up to order k}`, each
/// vector scaled so that the graded-lex leading coefficient of `c` is 1.
pub fn reconstruction_basis(
    r1: &TruncatedSeries<Rational>,
    terminals: usize,
    degree: u32,
    k: usize,
) -> Vec<(Polynomial, Polynomial)> {
    let support = monomials_up_to(terminals, degree);
    let n = support.len();
    let rows: Vec<Vec<Rational>> = monomials_up_to(terminals, k as u32)
        .iter()
        .map(|v| {
            let mut row = alloc::vec![Rational::zero(); 2 * n];
            for (j, m) in support.iter().enumerate() {
                if let Some(rest) = m.quotient_of(v) {
                    row[j] = r1.get(&rest);
                }
                if m == v {
                    row[n + j] = -Rational::one();
                }
            }
            row
        })
        .collect();
    nullspace(rows, 2 * n)
        .into_iter()
        .filter_map(|x| {
            let c = Polynomial::from_terms(support.iter().cloned().zip(x[..n].iter().cloned()));
            let d = Polynomial::from_terms(support.iter().cloned().zip(x[n..].iter().cloned()));
            if c.is_zero() {
                return None;
            }
            let s = c.leading_coefficient().recip();
            Some((c.scale(&s), d.scale(&s)))
        })
        .collect()
}

/// The first vector of [`reconstruction_basis`], if any.
pub fn rational_reconstruct(
    r1: &TruncatedSeries<Rational>,
    terminals: usize,
    degree: u32,
    k: usize,
) -> Option<(Polynomial, Polynomial)> {
    reconstruction_basis(r1, terminals, degree, k).into_iter().next()
}

/// Index of the only candidate whose truncated value at `r1` stays zero,
/// with the order at which the others had all been ruled out.
///
/// Orders tried are 0, 4, 8, 16, … up to `options.max_order`.
pub fn discriminate_factor(
    candidates: &[XPolynomial],
    sys: &AlgebraicSystem<Rational>,
    options: DecideOptions,
) -> Result<(usize, usize), DecideError> {
    let mut alive: Vec<usize> = (0..candidates.len()).collect();
    let mut k = 0;
    loop {
        if alive.len() == 1 {
            return Ok((alive[0], k));
        }
        if k > options.max_order {
            return Err(DecideError::IterationCapExceeded(options.max_order));
        }
        let r1 = &sys.approximate(k, options.max_iters)?[0];
        alive.retain(|&i| eval_at_series(&candidates[i], r1, k).is_zero());
        match alive.len() {
            0 => return Err(DecideError::NoVanishingFactor),
            1 => return Ok((alive[0], k)),
            _ => k = if k == 0 { 4 } else { 2 * k },
        }
    }
}

/// Decides the Parikh property of a cycle-free ℚ-weighted grammar.
pub fn decide_parikh(g: &Grammar<Rational>, options: DecideOptions) -> Result<DecisionReport, DecideError> {
    if !analysis::is_cycle_free(g) {
        return Err(DecideError::NotCycleFree);
    }
    let sys = AlgebraicSystem::from_grammar(g);
    let basis_g = eliminate_to_univariate(&sys)?;
    let squarefree = clear_denominators(&clear_denominators(&basis_g).to_unipolynomial().squarefree_part());
    let report = |verdict, q, witness, discrimination_order| DecisionReport {
        verdict,
        q,
        witness,
        basis_g: basis_g.clone(),
        discrimination_order,
        variable: sys.variables()[0].clone(),
        terminals: g.terminals().to_vec(),
    };

    if squarefree.degree() <= 1 {
        let witness = linear_witness(&squarefree, &sys)?;
        return Ok(report(Verdict::Holds, squarefree, Some(witness), 0));
    }

    let bound = squarefree.sigma_degree();
    let target = squarefree.to_unipolynomial();
    let mut k = 2 * bound as usize + 1;
    while k <= options.max_order {
        let r1 = &sys.approximate(k, options.max_iters)?[0];
        let basis = reconstruction_basis(r1, g.terminals().len(), bound, k);
        if basis.is_empty() {
            return Ok(report(Verdict::Fails, squarefree, None, k));
        }
        for (c, d) in basis {
            let root = RationalFunction::from(d)
                .div(&RationalFunction::from(c))
                .expect("c is nonzero");
            if !target.eval(&root).is_zero() {
                continue;
            }
            let factor = UniPolynomial::new(alloc::vec![root.neg(), RationalFunction::one()]);
            let (cofactor, _) = target.div_rem(&factor);
            let linear = clear_denominators(&factor);
            let candidates = [linear.clone(), clear_denominators(&cofactor)];
            let (survivor, order) = discriminate_factor(&candidates, &sys, options)?;
            if survivor == 0 {
                let witness = linear_witness(&linear, &sys)?;
                return Ok(report(Verdict::Holds, linear, Some(witness), order));
            }
        }
        k *= 2;
    }
    Err(DecideError::IterationCapExceeded(options.max_order))
}

/// The regular grammar `X1 = (s1/s0)·X1 + t/s0` read off a linear
/// `q = (s0 − s1)·X1 − t`, where `s0` is the constant term of the
/// X-coefficient.
fn linear_witness(q: &XPolynomial, sys: &AlgebraicSystem<Rational>) -> Result<Grammar<Rational>, DecideError> {
    let c1 = q.coefficient(1);
    let s0 = c1.constant_term();
    if s0.is_zero() {
        return Err(DecideError::DegenerateLeadingTerm);
    }
    let s1 = &Polynomial::constant(s0.clone()) - &c1;
    let t = -&q.coefficient(0);
    let inv = s0.recip();
    Ok(grammar_from_linear(
        &s1.scale(&inv),
        &t.scale(&inv),
        sys.terminals(),
        &sys.variables()[0],
    )?)
}

/// Basis of the nullspace of `rows` (each of length `cols`) by exact
/// Gauss-Jordan elimination.
fn nullspace(mut rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = alloc::vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}
