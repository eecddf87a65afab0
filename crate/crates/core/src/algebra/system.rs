use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::Signed;

use super::poly::{write_term, Polynomial};
use super::ratfun::RationalFunction;
use super::AlgebraError;
use crate::monomial::Monomial;

/// Lexicographic order on monomials in the grammar variables, with the
/// last listed variable most significant: `Xn ≻ … ≻ X1`.
///
/// This is an elimination order for `X1`: any monomial containing another
/// variable exceeds every power of `X1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    variables: Vec<String>,
}

impl MonomialOrder {
    /// `variables[0]` is `X1`, the least significant.
    pub fn new(variables: Vec<String>) -> Self {
        MonomialOrder { variables }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Builds a monomial from `(name, exponent)` pairs.
    pub fn monomial(&self, powers: &[(&str, u32)]) -> Result<Monomial, AlgebraError> {
        let mut e = vec![0; self.variables.len()];
        for &(name, k) in powers {
            let i = self
                .variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| AlgebraError::UnknownVariable(String::from(name)))?;
            e[i] += k;
        }
        Ok(Monomial::from_exponents(e))
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, AlgebraError> {
        for m in [a, b] {
            if m.support_len() > self.variables.len() {
                return Err(AlgebraError::UnknownVariable(alloc::format!(
                    "#{}",
                    m.support_len() - 1
                )));
            }
        }
        Ok(a.lex_cmp(b))
    }
}

/// A polynomial in the grammar variables with coefficients in the fraction
/// field, ordered by [`MonomialOrder`]. Terms are kept in descending order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SystemPolynomial {
    terms: Vec<(Monomial, RationalFunction)>,
}

impl SystemPolynomial {
    pub fn zero() -> Self {
        SystemPolynomial::default()
    }

    pub fn constant(c: RationalFunction) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index), RationalFunction::one())
    }

    pub fn term(m: Monomial, c: RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SystemPolynomial {
            terms: vec![(m, c)],
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, RationalFunction)>) -> Self {
        let mut out = Self::zero();
        for (m, c) in terms {
            out = out.add(&Self::term(m, c));
        }
        out
    }

    /// Terms in descending order.
    pub fn terms(&self) -> &[(Monomial, RationalFunction)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, RationalFunction)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading().map(|(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> RationalFunction {
        self.terms
            .iter()
            .find(|(k, _)| k == m)
            .map_or_else(RationalFunction::zero, |(_, c)| c.clone())
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> Self {
        SystemPolynomial {
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    /// Only powers of `X1` occur.
    pub fn is_univariate_in_first(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.support_len() <= 1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, x) = &self.terms[i];
            let (b, y) = &other.terms[j];
            match a.lex_cmp(b) {
                Ordering::Greater => {
                    out.push((a.clone(), x.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.clone(), y.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = x.add(y);
                    if !s.is_zero() {
                        out.push((a.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        SystemPolynomial { terms: out }
    }

    pub fn neg(&self) -> Self {
        SystemPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SystemPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        other
            .terms
            .iter()
            .fold(Self::zero(), |acc, (m, c)| acc.add(&self.mul_term(m, c)))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        self.mul_term(&Monomial::one(), c)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.inv().expect("stored coefficients are nonzero")),
        }
    }

    /// Renders terms in descending order, e.g. `X2 + (a)/(b - 1)`.
    pub fn display<'a, V: AsRef<str>, T: AsRef<str>>(
        &'a self,
        variables: &'a [V],
        terminals: &'a [T],
    ) -> impl fmt::Display + 'a {
        SystemDisplay {
            p: self,
            variables,
            terminals,
        }
    }
}

impl fmt::Debug for SystemPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let none: [&str; 0] = [];
        write!(f, "SystemPolynomial({})", self.display(&none, &none))?;
        Ok(())
    }
}

/// Writes `sign coefficient*monomial` for one term of a sum, the coefficient
/// being a polynomial over the terminals.
pub(crate) fn write_poly_coefficient<V: AsRef<str>, T: AsRef<str>>(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Polynomial,
    m: &Monomial,
    variables: &[V],
    terminals: &[T],
) -> fmt::Result {
    let sep = |neg: bool| match (first, neg) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    };
    if c.term_count() == 1 {
        let (cm, cc) = c.leading().expect("nonzero");
        f.write_str(sep(cc.is_negative()))?;
        if m.is_one() {
            return write_term(f, cc, cm, terminals);
        }
        if !(cm.is_one() && cc.abs() == num_traits::One::one()) {
            write_term(f, cc, cm, terminals)?;
            f.write_str("*")?;
        }
        return write!(f, "{}", m.display(variables));
    }
    if m.is_one() {
        for (i, (cm, cc)) in c.terms().rev().enumerate() {
            f.write_str(match (first && i == 0, cc.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            })?;
            write_term(f, cc, cm, terminals)?;
        }
        return Ok(());
    }
    f.write_str(sep(false))?;
    write!(f, "({})*{}", c.display(terminals), m.display(variables))
}

struct SystemDisplay<'a, V, T> {
    p: &'a SystemPolynomial,
    variables: &'a [V],
    terminals: &'a [T],
}

impl<V: AsRef<str>, T: AsRef<str>> fmt::Display for SystemDisplay<'_, V, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.p.terms.iter().enumerate() {
            if c.is_polynomial() {
                write_poly_coefficient(f, i == 0, c.numerator(), m, self.variables, self.terminals)?;
                continue;
            }
            let (num, den) = c.integral_parts();
            let negative = num.leading_coefficient().is_negative();
            let num = if negative { -&num } else { num };
            f.write_str(match (i == 0, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            })?;
            write!(f, "({})/({})", num.display(self.terminals), den.display(self.terminals))?;
            if !m.is_one() {
                write!(f, "*{}", m.display(self.variables))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Rational;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn order() -> MonomialOrder {
        MonomialOrder::new(vec!["X1".into(), "X2".into(), "X3".into()])
    }

    #[test]
    fn elimination_order_examples() {
        let o = order();
        let x1 = o.monomial(&[("X1", 1)]).unwrap();
        let x2 = o.monomial(&[("X2", 1)]).unwrap();
        assert_eq!(o.cmp(&x2, &x1), Ok(Ordering::Greater));
        assert_eq!(o.cmp(&Monomial::one(), &x1), Ok(Ordering::Less));
        assert_eq!(o.cmp(&Monomial::var_pow(0, 3), &x2), Ok(Ordering::Less));
        assert_eq!(
            o.monomial(&[("Y", 1)]),
            Err(AlgebraError::UnknownVariable("Y".into()))
        );
        assert!(o.cmp(&Monomial::var(5), &x1).is_err());
    }

    #[test]
    fn terms_stay_sorted() {
        let p = SystemPolynomial::from_terms([
            (Monomial::var(0), RationalFunction::one()),
            (Monomial::var(1), RationalFunction::one()),
            (Monomial::one(), RationalFunction::one()),
        ]);
        let ms: Vec<_> = p.terms().iter().map(|(m, _)| m.clone()).collect();
        assert_eq!(ms, vec![Monomial::var(1), Monomial::var(0), Monomial::one()]);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn rendering() {
        let vars = ["X"];
        let terms = ["a"];
        let a = Polynomial::var(0);
        let p = SystemPolynomial::from_terms([
            (Monomial::var_pow(0, 2), a.clone().into()),
            (Monomial::var(0), RationalFunction::constant(Rational::from_integer((-1).into()))),
            (Monomial::one(), a.into()),
        ]);
        assert_eq!(p.display(&vars, &terms).to_string(), "a*X^2 - X + a");
        let m = p.monic();
        assert_eq!(m.display(&vars, &terms).to_string(), "X^2 - (1)/(a)*X + 1");
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..3, 0..3).prop_map(Monomial::from_exponents)
    }

    proptest! {
        #[test]
        fn order_properties(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            let o = order();
            let ab = o.cmp(&a, &b).unwrap();
            prop_assert_eq!(ab, o.cmp(&b, &a).unwrap().reverse());
            prop_assert_eq!(ab, o.cmp(&a.mul(&c), &b.mul(&c)).unwrap());
            prop_assert_ne!(o.cmp(&Monomial::one(), &a).unwrap(), Ordering::Greater);
            if o.cmp(&a, &b).unwrap() != Ordering::Greater && o.cmp(&b, &c).unwrap() != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c).unwrap(), Ordering::Greater);
            }
        }

        #[test]
        fn elimination_property(a in arb_monomial(), k in 0u32..6) {
            prop_assume!(a.support_len() > 1);
            prop_assert_eq!(order().cmp(&a, &Monomial::var_pow(0, k)).unwrap(), Ordering::Greater);
        }
    }
}
