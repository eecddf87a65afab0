//! Commutative monomials as exponent vectors.
//!
//! The same type serves for Parikh images over the terminal alphabet and for
//! monomials in the grammar variables: index `i` is the `i`-th declared
//! symbol of whichever ordered set the monomial lives over.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Exponent vector with trailing zeros trimmed, so equal monomials are
/// structurally equal regardless of alphabet size.
///
/// `Ord` is graded lexicographic: total degree first, then the exponent of
/// the earliest symbol (larger exponent is greater).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    /// The empty monomial (ε / the unit).
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize) -> Self {
        Self::var_pow(index, 1)
    }

    pub fn var_pow(index: usize, exponent: u32) -> Self {
        let mut e = alloc::vec![0; index + 1];
        e[index] = exponent;
        Self::from_exponents(e)
    }

    pub fn from_exponents(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial(exponents)
    }

    /// Parikh image of a word given as symbol indices.
    pub fn from_word(word: &[usize]) -> Self {
        let mut e = Vec::new();
        for &s in word {
            if e.len() <= s {
                e.resize(s + 1, 0);
            }
            e[s] += 1;
        }
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    /// Number of leading positions that may be nonzero.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = long.0.clone();
        for (slot, x) in e.iter_mut().zip(&short.0) {
            *slot += x;
        }
        Monomial(e)
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * n).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0.clone();
        for (slot, x) in e.iter_mut().zip(&self.0) {
            *slot -= x;
        }
        Some(Monomial::from_exponents(e))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exponent(i).max(other.exponent(i))).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().min(other.0.len());
        Monomial::from_exponents((0..n).map(|i| self.exponent(i).min(other.exponent(i))).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Drops symbol `index` (sets its exponent to zero).
    pub fn without(&self, index: usize) -> Monomial {
        let mut e = self.0.clone();
        if index < e.len() {
            e[index] = 0;
        }
        Monomial::from_exponents(e)
    }

    /// Largest index with a nonzero exponent.
    pub fn max_index(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Canonical word: symbols in index order, each repeated by its exponent.
    pub fn canonical_word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            w.extend(core::iter::repeat_n(i, e as usize));
        }
        w
    }

    /// Elimination order: lexicographic with the highest index most significant.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in (0..n).rev() {
            match self.exponent(i).cmp(&other.exponent(i)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Renders with the given symbol names, e.g. `a^2*b`; the unit renders as `1`.
    pub fn display<'a, N: AsRef<str>>(&'a self, names: &'a [N]) -> impl fmt::Display + 'a {
        MonomialDisplay { monomial: self, names }
    }
}

/// Every monomial in `vars` symbols of total degree at most `max_degree`,
/// in ascending graded order.
pub fn monomials_up_to(vars: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = alloc::vec![Monomial::one()];
    let mut frontier = alloc::vec![Monomial::one()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &frontier {
            // extend only at or after the last used symbol so each monomial appears once
            let from = m.max_index().unwrap_or(0);
            for v in from..vars {
                next.push(m.mul(&Monomial::var(v)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out.sort();
    out
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.0)
    }
}

struct MonomialDisplay<'a, N> {
    monomial: &'a Monomial,
    names: &'a [N],
}

impl<N: AsRef<str>> fmt::Display for MonomialDisplay<'_, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.monomial.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match self.names.get(i) {
                Some(name) => f.write_str(name.as_ref())?,
                None => write!(f, "x{i}")?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 0..4).prop_map(Monomial::from_exponents)
    }

    #[test]
    fn parikh_of_words() {
        // aabb and abab share a Parikh image
        let aabb = Monomial::from_word(&[0, 0, 1, 1]);
        let abab = Monomial::from_word(&[0, 1, 0, 1]);
        assert_eq!(aabb, abab);
        assert_eq!(aabb.exponents(), &[2, 2]);
        assert!(Monomial::from_word(&[]).is_one());
    }

    #[test]
    fn rendering() {
        let names = ["a", "b"];
        assert_eq!(Monomial::from_exponents(vec![2, 1]).display(&names).to_string(), "a^2*b");
        assert_eq!(Monomial::one().display(&names).to_string(), "1");
        assert_eq!(Monomial::var(1).display(&names).to_string(), "b");
    }

    #[test]
    fn monomial_listing() {
        let ms = monomials_up_to(2, 2);
        assert_eq!(ms.len(), 6);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(monomials_up_to(0, 3), vec![Monomial::one()]);
    }

    #[test]
    fn lex_elimination_order() {
        // X2 ≻ X1, X1^3 ≺ X2, 1 ≺ X1
        let x1 = Monomial::var(0);
        let x2 = Monomial::var(1);
        assert_eq!(x2.lex_cmp(&x1), Ordering::Greater);
        assert_eq!(Monomial::one().lex_cmp(&x1), Ordering::Less);
        assert_eq!(Monomial::var_pow(0, 3).lex_cmp(&x2), Ordering::Less);
    }

    proptest! {
        #[test]
        fn parikh_is_a_morphism(u in proptest::collection::vec(0usize..3, 0..8), v in proptest::collection::vec(0usize..3, 0..8)) {
            let mut uv = u.clone();
            uv.extend(&v);
            prop_assert_eq!(Monomial::from_word(&uv), Monomial::from_word(&u).mul(&Monomial::from_word(&v)));
        }

        #[test]
        fn orders_are_multiplicative(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
            prop_assert_eq!(a.lex_cmp(&b), a.mul(&c).lex_cmp(&b.mul(&c)));
            prop_assert_ne!(Monomial::one().lex_cmp(&a), Ordering::Greater);
        }

        #[test]
        fn lex_is_total_and_antisymmetric(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            prop_assert_eq!(a.lex_cmp(&b), b.lex_cmp(&a).reverse());
            prop_assert_eq!(a.lex_cmp(&b) == Ordering::Equal, a == b);
            if a.lex_cmp(&b) != Ordering::Greater && b.lex_cmp(&c) != Ordering::Greater {
                prop_assert_ne!(a.lex_cmp(&c), Ordering::Greater);
            }
        }

        #[test]
        fn quotient_inverts_product(a in arb_monomial(), b in arb_monomial()) {
            let ab = a.mul(&b);
            prop_assert_eq!(a.quotient_of(&ab), Some(b.clone()));
            prop_assert!(a.lcm(&b).mul(&a.gcd(&b)) == ab);
        }
    }
}
