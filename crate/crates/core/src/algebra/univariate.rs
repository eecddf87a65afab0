use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use super::system::{write_poly_coefficient, SystemPolynomial};
use crate::monomial::Monomial;
use crate::semiring::Rational;

/// A polynomial in `X1` alone with coefficients in the fraction field,
/// indexed by power.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPolynomial {
    coeffs: Vec<RationalFunction>,
}

impl UniPolynomial {
    pub fn new(mut coeffs: Vec<RationalFunction>) -> Self {
        while coeffs.last().is_some_and(RationalFunction::is_zero) {
            coeffs.pop();
        }
        UniPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        UniPolynomial { coeffs: Vec::new() }
    }

    /// Reads a system polynomial in which only `X1` occurs.
    pub fn from_system(p: &SystemPolynomial) -> Option<Self> {
        if !p.is_univariate_in_first() {
            return None;
        }
        let n = p
            .terms()
            .iter()
            .map(|(m, _)| m.exponent(0) as usize + 1)
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![RationalFunction::zero(); n];
        for (m, c) in p.terms() {
            coeffs[m.exponent(0) as usize] = c.clone();
        }
        Some(Self::new(coeffs))
    }

    pub fn to_system(&self) -> SystemPolynomial {
        SystemPolynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial::var_pow(0, e as u32), c.clone())),
        )
    }

    pub fn coefficients(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `X1`; the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> RationalFunction {
        self.coeffs.last().cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().inv().expect("nonzero leading coefficient");
        Self::new(self.coeffs.iter().map(|c| c.mul(&inv)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c.scale(&Rational::from_integer((e as i64).into())))
                .collect(),
        )
    }

    /// Quotient and remainder of division by a nonzero `d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let lc_inv = d.leading().inv().expect("nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![RationalFunction::zero(); self.coeffs.len().saturating_sub(d.degree())];
        while r.len() > d.degree() && !r.is_empty() {
            let shift = r.len() - 1 - d.degree();
            let c = r.last().unwrap().mul(&lc_inv);
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[shift + i] = r[shift + i].sub(&c.mul(dc));
                }
                q[shift] = c;
            }
            r.pop();
        }
        (Self::new(q), Self::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`, monic: the same roots, each once.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &RationalFunction) -> RationalFunction {
        self.coeffs
            .iter()
            .rev()
            .fold(RationalFunction::zero(), |acc, c| acc.mul(x).add(c))
    }
}

/// A polynomial in `X1` with polynomial coefficients over ℚ, indexed by power.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XPolynomial {
    coeffs: Vec<Polynomial>,
}

impl XPolynomial {
    pub fn new(mut coeffs: Vec<Polynomial>) -> Self {
        while coeffs.last().is_some_and(Polynomial::is_zero) {
            coeffs.pop();
        }
        XPolynomial { coeffs }
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coefficient(&self, e: usize) -> Polynomial {
        self.coeffs.get(e).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest total degree of a coefficient.
    pub fn sigma_degree(&self) -> u32 {
        self.coeffs.iter().map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub fn to_unipolynomial(&self) -> UniPolynomial {
        UniPolynomial::new(self.coeffs.iter().cloned().map(RationalFunction::from).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    /// Equal after multiplying one side by a nonzero rational.
    pub fn eq_up_to_constant(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (a, b) = (self.coeffs.last().unwrap(), other.coeffs.last().unwrap());
        let ratio = b.leading_coefficient() / a.leading_coefficient();
        self.scale(&ratio) == *other
    }

    /// Renders in descending powers, e.g. `(b^2 - 2*b + 1)*X1 - a^3`.
    pub fn display<'a, T: AsRef<str>>(&'a self, variable: &'a str, terminals: &'a [T]) -> impl fmt::Display + 'a {
        XDisplay {
            p: self,
            variable,
            terminals,
        }
    }
}

struct XDisplay<'a, T> {
    p: &'a XPolynomial,
    variable: &'a str,
    terminals: &'a [T],
}

impl<T: AsRef<str>> fmt::Display for XDisplay<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        let vars = [self.variable];
        let mut first = true;
        for (e, c) in self.p.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_poly_coefficient(f, first, c, &Monomial::var_pow(0, e as u32), &vars, self.terminals)?;
            first = false;
        }
        Ok(())
    }
}

/// Multiplies by the least common multiple of the coefficient denominators
/// and removes the common content.
///
/// The sign is fixed so that the leading coefficient has a positive constant
/// term, or, when that term vanishes, a positive graded-lex leading coefficient.
pub fn clear_denominators(g: &UniPolynomial) -> XPolynomial {
    let l = g
        .coefficients()
        .iter()
        .filter(|c| !c.is_zero())
        .fold(Polynomial::one(), |acc, c| acc.lcm(c.denominator()));
    let coeffs: Vec<Polynomial> = g
        .coefficients()
        .iter()
        .map(|c| c.numerator() * &l.exact_div(c.denominator()).expect("lcm is a multiple"))
        .collect();
    let content = coeffs
        .iter()
        .fold(Polynomial::zero(), |acc, c| acc.gcd(c));
    let mut coeffs: Vec<Polynomial> = coeffs
        .iter()
        .map(|c| c.exact_div(&content).expect("content divides"))
        .collect();
    if let Some(lead) = coeffs.iter().rev().find(|c| !c.is_zero()) {
        let c0 = lead.constant_term();
        let negative = if c0.is_zero() {
            lead.leading_coefficient().is_negative()
        } else {
            c0.is_negative()
        };
        if negative {
            coeffs = coeffs.iter().map(|c| -c).collect();
        }
    }
    // integer coefficients with no common integer factor
    let mut out = XPolynomial::new(coeffs);
    let k = integer_content(&out);
    if !k.is_zero() {
        out = out.scale(&k.recip());
    }
    out
}

fn integer_content(p: &XPolynomial) -> Rational {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in &p.coeffs {
        for (_, x) in c.terms() {
            num = num.gcd(x.numer());
            den = den.lcm(x.denom());
        }
    }
    Rational::new(num, den)
}
