use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::AlgebraError;
use crate::semiring::Rational;
use crate::series::TruncatedSeries;

/// An element of the fraction field of the terminal polynomials.
///
/// Always reduced: numerator and denominator are coprime and the
/// denominator's graded-lex leading coefficient is 1. Structural equality is
/// therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        Ok(Self::coprime(num, den))
    }

    /// Normalizes a fraction whose parts are already coprime.
    fn coprime(num: Polynomial, den: Polynomial) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            return RationalFunction { num, den };
        }
        let lc = lc.recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Polynomial::one().into()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::constant(c).into()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational constant, if it is one.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.constant_term())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone()).expect("nonzero");
        }
        let d = self.den.gcd(&other.den);
        let (a, b) = if d.is_one() {
            (other.den.clone(), self.den.clone())
        } else {
            (
                other.den.exact_div(&d).expect("gcd divides"),
                self.den.exact_div(&d).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &a) + &(&other.num * &b);
        if num.is_zero() {
            return Self::zero();
        }
        let den = &self.den * &a;
        if d.is_one() {
            return Self::coprime(num, den);
        }
        let g = num.gcd(&d);
        if g.is_one() {
            return Self::coprime(num, den);
        }
        Self::coprime(num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (an, bd) = cancel(&self.num, &other.den);
        let (bn, ad) = cancel(&other.num, &self.den);
        Self::coprime(&an * &bn, &ad * &bd)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Power-series expansion truncated at total degree `order`.
    pub fn series_expand(&self, order: usize) -> Result<TruncatedSeries<Rational>, AlgebraError> {
        self.num.series_quotient(&self.den, order)
    }

    /// Numerator and denominator rescaled to coprime integer coefficients,
    /// the denominator's leading coefficient positive.
    pub fn integral_parts(&self) -> (Polynomial, Polynomial) {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            den_lcm = den_lcm.lcm(c.denom());
        }
        for (_, c) in self.num.terms().chain(self.den.terms()) {
            num_gcd = num_gcd.gcd(&(c.numer() * (&den_lcm / c.denom())));
        }
        let k = Rational::new(den_lcm, num_gcd);
        (self.num.scale(&k), self.den.scale(&k))
    }

    /// Renders as a polynomial when the denominator is 1, otherwise as
    /// `(num)/(den)` with integer coefficients.
    pub fn display<'a, N: AsRef<str>>(&'a self, names: &'a [N]) -> impl fmt::Display + 'a {
        RatDisplay { r: self, names }
    }
}

/// `n / d` in lowest terms.
fn cancel(n: &Polynomial, d: &Polynomial) -> (Polynomial, Polynomial) {
    if d.is_constant() {
        return (n.clone(), d.clone());
    }
    let g = n.gcd(d);
    if g.is_one() {
        return (n.clone(), d.clone());
    }
    (n.exact_div(&g).expect("gcd divides"), d.exact_div(&g).expect("gcd divides"))
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({:?} / {:?})", self.num, self.den)
    }
}

struct RatDisplay<'a, N> {
    r: &'a RationalFunction,
    names: &'a [N],
}

impl<N: AsRef<str>> fmt::Display for RatDisplay<'_, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.is_polynomial() {
            return write!(f, "{}", self.r.num.display(self.names));
        }
        let (num, den) = self.r.integral_parts();
        write!(f, "({})/({})", num.display(self.names), den.display(self.names))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    const NAMES: [&str; 2] = ["a", "abar"];

    fn p(terms: &[(u32, u32, i64)]) -> Polynomial {
        Polynomial::from_terms(
            terms
                .iter()
                .map(|&(x, y, c)| (Monomial::from_exponents(vec![x, y]), Rational::from_integer(c.into()))),
        )
    }

    fn rf(num: Polynomial, den: Polynomial) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    #[test]
    fn reduction_and_normalisation() {
        // (a^2 - 1)/(2a - 2) = (a + 1)/2
        let r = rf(p(&[(2, 0, 1), (0, 0, -1)]), p(&[(1, 0, 2), (0, 0, -2)]));
        assert!(r.is_polynomial());
        assert_eq!(r.numerator(), &p(&[(1, 0, 1), (0, 0, 1)]).scale(&Rational::new(1.into(), 2.into())));
        // 1/(1 - 2a) keeps a monic denominator a - 1/2
        let g = rf(p(&[(0, 0, 1)]), p(&[(0, 0, 1), (1, 0, -2)]));
        assert_eq!(g.denominator().leading_coefficient(), Rational::one());
    }

    #[test]
    fn inversion() {
        let a = RationalFunction::from(p(&[(1, 0, 1)]));
        let inv = a.inv().unwrap();
        assert_eq!(inv.denominator(), &p(&[(1, 0, 1)]));
        assert_eq!(inv.series_expand(3), Err(AlgebraError::NonUnitDenominatorAtOrigin));
        assert_eq!(RationalFunction::zero().inv(), Err(AlgebraError::ZeroDenominator));
    }

    #[test]
    fn dyck_free_expansion() {
        // 1/(1 - (a + abar)) up to degree 2
        let r = rf(p(&[(0, 0, 1)]), p(&[(0, 0, 1), (1, 0, -1), (0, 1, -1)]));
        let s = r.series_expand(2).unwrap();
        let expect = [((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((2, 0), 1), ((1, 1), 2), ((0, 2), 1)];
        assert_eq!(s.terms().count(), expect.len());
        for ((x, y), c) in expect {
            assert_eq!(s.get(&Monomial::from_exponents(vec![x, y])), Rational::from_integer(c.into()));
        }
    }

    #[test]
    fn rendering() {
        let r = rf(p(&[(0, 0, 1)]), p(&[(0, 0, 1), (1, 0, -1), (0, 1, -1)]));
        assert_eq!(r.display(&NAMES).to_string(), "(-1)/(a + abar - 1)");
        let half = rf(p(&[(1, 0, 1)]), p(&[(0, 1, 2)]));
        assert_eq!(half.display(&NAMES).to_string(), "(a)/(2*abar)");
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..2, 0u32..2), -2i64..3), 0..3)
            .prop_map(|ts| p(&ts.into_iter().map(|((x, y), c)| (x, y, c)).collect::<alloc::vec::Vec<_>>()))
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction> {
        (arb_poly(), arb_poly()).prop_filter_map("nonzero denominator", |(n, d)| RationalFunction::new(n, d).ok())
    }

    fn arb_unit_rf() -> impl Strategy<Value = RationalFunction> {
        (arb_poly(), arb_poly(), 1i64..3).prop_map(|(n, d, c)| {
            let d = &d.mul_monomial(&Monomial::var(0)) + &Polynomial::integer(c);
            rf(n, d)
        })
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb_rf(), y in arb_rf(), z in arb_rf()) {
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert!(x.sub(&x).is_zero());
            if !x.is_zero() {
                prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn expansion_is_multiplicative(x in arb_unit_rf(), y in arb_unit_rf()) {
            let k = 4;
            let lhs = x.mul(&y).series_expand(k).unwrap();
            let rhs = x.series_expand(k).unwrap().mul(&y.series_expand(k).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
