//! Commutative semirings used as weight domains.
//!
//! Three carriers are provided: the rationals (a field), the natural numbers
//! and the tropical semiring `(N ∪ {∞}, min, +, ∞, 0)`.

use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// The rationals as a semiring.
pub type Rational = num_rational::BigRational;

/// Which weight domain a grammar is declared over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SemiringKind {
    Rationals,
    Naturals,
    Tropical,
}

impl SemiringKind {
    /// Keyword used in grammar documents.
    pub fn keyword(self) -> &'static str {
        match self {
            SemiringKind::Rationals => "Q",
            SemiringKind::Naturals => "N",
            SemiringKind::Tropical => "tropical",
        }
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A commutative semiring with decidable equality.
///
/// `plus` and `times` must be associative and commutative, `times` must
/// distribute over `plus` and `zero` must annihilate.
pub trait Semiring: Clone + PartialEq + fmt::Debug + fmt::Display {
    const KIND: SemiringKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Semiring for Rational {
    const KIND: SemiringKind = SemiringKind::Rationals;

    fn zero() -> Self {
        <Rational as Zero>::zero()
    }

    fn one() -> Self {
        <Rational as One>::one()
    }

    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// Natural numbers with ordinary addition and multiplication.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(pub BigUint);

impl Natural {
    pub fn new(value: u64) -> Self {
        Natural(BigUint::from(value))
    }
}

impl From<u64> for Natural {
    fn from(value: u64) -> Self {
        Natural::new(value)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl Semiring for Natural {
    const KIND: SemiringKind = SemiringKind::Naturals;

    fn zero() -> Self {
        Natural(BigUint::zero())
    }

    fn one() -> Self {
        Natural(BigUint::one())
    }

    fn plus(&self, other: &Self) -> Self {
        Natural(&self.0 + &other.0)
    }

    fn times(&self, other: &Self) -> Self {
        Natural(&self.0 * &other.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// The tropical semiring `(N ∪ {∞}, min, +, ∞, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tropical {
    Finite(u64),
    Infinity,
}

impl Tropical {
    pub fn finite(self) -> Option<u64> {
        match self {
            Tropical::Finite(v) => Some(v),
            Tropical::Infinity => None,
        }
    }
}

impl PartialOrd for Tropical {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tropical {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        use core::cmp::Ordering;
        match (self, other) {
            (Tropical::Finite(a), Tropical::Finite(b)) => a.cmp(b),
            (Tropical::Finite(_), Tropical::Infinity) => Ordering::Less,
            (Tropical::Infinity, Tropical::Finite(_)) => Ordering::Greater,
            (Tropical::Infinity, Tropical::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::Finite(v) => write!(f, "{v}"),
            Tropical::Infinity => f.write_str("inf"),
        }
    }
}

impl Semiring for Tropical {
    const KIND: SemiringKind = SemiringKind::Tropical;

    fn zero() -> Self {
        Tropical::Infinity
    }

    fn one() -> Self {
        Tropical::Finite(0)
    }

    fn plus(&self, other: &Self) -> Self {
        core::cmp::min(*self, *other)
    }

    fn times(&self, other: &Self) -> Self {
        match (self, other) {
            // saturates rather than wrapping; real weights never get near u64::MAX
            (Tropical::Finite(a), Tropical::Finite(b)) => Tropical::Finite(a.saturating_add(*b)),
            _ => Tropical::Infinity,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn arb_tropical() -> impl Strategy<Value = Tropical> {
        prop_oneof![
            1 => Just(Tropical::Infinity),
            4 => (0u64..1000).prop_map(Tropical::Finite),
        ]
    }

    fn check_axioms<S: Semiring>(a: S, b: S, c: S) {
        assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        assert_eq!(a.plus(&b), b.plus(&a));
        assert_eq!(a.plus(&S::zero()), a);
        assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        assert_eq!(a.times(&b), b.times(&a));
        assert_eq!(a.times(&S::one()), a);
        assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        assert!(a.times(&S::zero()).is_zero());
    }

    proptest! {
        #[test]
        fn rational_axioms(a in (-20i64..20, 1i64..9), b in (-20i64..20, 1i64..9), c in (-20i64..20, 1i64..9)) {
            check_axioms(q(a.0, a.1), q(b.0, b.1), q(c.0, c.1));
        }

        #[test]
        fn natural_axioms(a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
            check_axioms(Natural::new(a), Natural::new(b), Natural::new(c));
        }

        #[test]
        fn tropical_axioms(a in arb_tropical(), b in arb_tropical(), c in arb_tropical()) {
            check_axioms(a, b, c);
            prop_assert_eq!(a.plus(&a), a);
        }
    }

    #[test]
    fn tropical_identities() {
        assert_eq!(Tropical::zero(), Tropical::Infinity);
        assert_eq!(Tropical::one(), Tropical::Finite(0));
        assert_eq!(Tropical::Finite(3).plus(&Tropical::Finite(5)), Tropical::Finite(3));
        assert_eq!(Tropical::Finite(3).times(&Tropical::Finite(5)), Tropical::Finite(8));
        assert_eq!(Tropical::Infinity.to_string(), "inf");
    }
}
