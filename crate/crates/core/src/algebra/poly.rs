use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;
use crate::monomial::{monomials_up_to, Monomial};
use crate::semiring::Rational;
use crate::series::TruncatedSeries;

/// A polynomial over ℚ in the terminal symbols.
///
/// Terms are keyed by graded-lex order, so the leading term is the last entry.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Monomial::one()).is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading().map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// One past the largest symbol index in use.
    pub fn symbol_count(&self) -> usize {
        self.terms.keys().map(Monomial::support_len).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficients as a polynomial in symbol `v`, indexed by power.
    pub fn coefficients_in(&self, v: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            out[m.exponent(v) as usize].add_term(m.without(v), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(v: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut p = Polynomial::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var_pow(v, e as u32);
            for (m, x) in &c.terms {
                p.add_term(m.mul(&shift), x.clone());
            }
        }
        p
    }

    /// Exact quotient `self / d`.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let (dm, dc) = d.leading().ok_or(AlgebraError::DivisionByZeroPolynomial)?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut q = Polynomial::zero();
        let mut r = self.clone();
        while let Some((m, c)) = r.leading() {
            let shift = dm.quotient_of(m).ok_or(AlgebraError::NotDivisible)?;
            let c = c / &dc;
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&shift), -(dc * &c));
            }
            q.add_term(shift, c);
        }
        Ok(q)
    }

    /// Rational content, signed like the leading coefficient, so that
    /// `self = content · primitive_part`.
    pub fn content(&self) -> Rational {
        let Some((_, lc)) = self.leading() else {
            return Rational::zero();
        };
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let content = Rational::new(num, den);
        if lc.is_negative() {
            -content
        } else {
            content
        }
    }

    /// Integer coefficients without common factor and a positive leading coefficient.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        self.scale(&self.content().recip())
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        gcd(self, other)
    }

    pub fn lcm(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).expect("the gcd divides")).primitive_part()
    }

    /// Power-series coefficients up to total degree `order`.
    pub fn to_series(&self, order: usize) -> TruncatedSeries<Rational> {
        let mut s = TruncatedSeries::zero(order);
        for (m, c) in &self.terms {
            s.add_term(m.clone(), c);
        }
        s
    }

    /// Expansion of `self / den` as a power series up to total degree `order`.
    pub fn series_quotient(
        &self,
        den: &Polynomial,
        order: usize,
    ) -> Result<TruncatedSeries<Rational>, AlgebraError> {
        let c0 = den.constant_term();
        if c0.is_zero() {
            return Err(AlgebraError::NonUnitDenominatorAtOrigin);
        }
        let vars = self.symbol_count().max(den.symbol_count());
        let mut coeffs: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for v in monomials_up_to(vars, order as u32) {
            let mut acc = self.coefficient(&v);
            for (u, du) in den.terms() {
                if u.is_one() {
                    continue;
                }
                if let Some(rest) = u.quotient_of(&v) {
                    if let Some(r) = coeffs.get(&rest) {
                        acc -= du * r;
                    }
                }
            }
            let value = acc / &c0;
            if !value.is_zero() {
                coeffs.insert(v, value);
            }
        }
        let mut s = TruncatedSeries::zero(order);
        for (m, c) in coeffs {
            s.add_term(m, &c);
        }
        Ok(s)
    }

    /// Renders in descending graded-lex order, e.g. `b^2 - 2*b + 1`.
    pub fn display<'a, N: AsRef<str>>(&'a self, names: &'a [N]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

/// Coefficient of a term followed by its monomial, with the sign handled by the caller.
pub(crate) fn write_term<N: AsRef<str>>(
    f: &mut fmt::Formatter<'_>,
    c: &Rational,
    m: &Monomial,
    names: &[N],
) -> fmt::Result {
    let c = c.abs();
    if m.is_one() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{}", m.display(names))
    } else {
        write!(f, "{c}*{}", m.display(names))
    }
}

struct PolyDisplay<'a, N> {
    poly: &'a Polynomial,
    names: &'a [N],
}

impl<N: AsRef<str>> fmt::Display for PolyDisplay<'_, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term(f, c, m, self.names)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: [&str; 0] = [];
        write!(f, "Polynomial({})", self.display(&names))?;
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

fn max_symbol(p: &Polynomial) -> Option<usize> {
    p.terms.keys().filter_map(Monomial::max_index).max()
}

fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in p.coefficients_in(v).iter().filter(|c| !c.is_zero()) {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Largest monomial dividing every term.
fn monomial_content(p: &Polynomial) -> Monomial {
    let mut terms = p.terms.keys();
    let first = terms.next().cloned().unwrap_or_else(Monomial::one);
    terms.fold(first, |acc, m| acc.gcd(m))
}

fn primitive_in(p: &Polynomial, v: usize) -> Polynomial {
    p.exact_div(&content_in(p, v))
        .expect("content divides every coefficient")
        .primitive_part()
}

/// `lc(g)^e · f mod g` in symbol `v`, for some `e ≥ 0`.
fn pseudo_remainder(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let dg = g.degree_in(v);
    let lg = g.coefficients_in(v).pop().expect("g is nonzero");
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v).pop().expect("r is nonzero");
        let shift = Monomial::var_pow(v, dr - dg);
        r = &(&lg * &r) - &(&lr * &g.mul_monomial(&shift));
    }
    r
}

fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    if a.term_count() == 1 || b.term_count() == 1 {
        let m = monomial_content(a).gcd(&monomial_content(b));
        return Polynomial::term(m, Rational::one());
    }
    if modular::coprime(a, b) {
        return Polynomial::one();
    }
    if let Some(g) = heuristic::gcd(&a.primitive_part(), &b.primitive_part()) {
        return g.primitive_part();
    }
    let v = max_symbol(a).max(max_symbol(b)).expect("nonconstant");
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 {
        return gcd(a, &content_in(b, v));
    }
    if db == 0 {
        return gcd(&content_in(a, v), b);
    }
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let common = gcd(&ca, &cb);
    let mut f = a.exact_div(&ca).expect("content divides");
    let mut g = b.exact_div(&cb).expect("content divides");
    if f.degree_in(v) < g.degree_in(v) {
        core::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            g = Polynomial::one();
            break;
        }
        f = g;
        g = primitive_in(&r, v);
    }
    (&common * &primitive_in(&g, v)).primitive_part()
}

/// Heuristic gcd of integer polynomials: evaluate the main symbol at a large
/// integer, recurse, and read the candidate back from its balanced digits.
/// A candidate is only returned when it divides both inputs.
mod heuristic {
    use alloc::vec::Vec;

    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};

    use super::{max_symbol, Polynomial};
    use crate::monomial::Monomial;
    use crate::semiring::Rational;

    const ATTEMPTS: usize = 6;
    const MAX_BITS: u64 = 1 << 20;

    fn integer(c: &Rational) -> &BigInt {
        debug_assert!(c.is_integer());
        c.numer()
    }

    fn max_norm(p: &Polynomial) -> BigInt {
        p.terms.values().map(|c| integer(c).abs()).max().unwrap_or_default()
    }

    fn content(p: &Polynomial) -> BigInt {
        p.terms.values().fold(BigInt::zero(), |g, c| g.gcd(integer(c)))
    }

    fn eval(p: &Polynomial, v: usize, xi: &BigInt) -> Polynomial {
        let mut powers: Vec<BigInt> = Vec::new();
        let mut out = Polynomial::zero();
        for (m, c) in &p.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().map_or_else(BigInt::one, |x| x * xi);
                powers.push(next);
            }
            out.add_term(m.without(v), Rational::from_integer(integer(c) * &powers[e]));
        }
        out
    }

    fn interpolate(mut h: Polynomial, v: usize, xi: &BigInt) -> Polynomial {
        let mut out = Polynomial::zero();
        let mut e = 0;
        while !h.is_zero() {
            let mut digit = Polynomial::zero();
            for (m, c) in &h.terms {
                let mut r = integer(c).mod_floor(xi);
                if &r * 2 > *xi {
                    r -= xi;
                }
                digit.add_term(m.clone(), Rational::from_integer(r));
            }
            let shift = Monomial::var_pow(v, e);
            for (m, c) in &digit.terms {
                out.add_term(m.mul(&shift), c.clone());
            }
            let rest = &h - &digit;
            h = Polynomial::zero();
            for (m, c) in &rest.terms {
                h.add_term(m.clone(), Rational::from_integer(integer(c) / xi));
            }
            e += 1;
        }
        out
    }

    fn divides(d: &Polynomial, p: &Polynomial) -> bool {
        p.exact_div(d).is_ok()
    }

    /// Integer gcd with content, or `None` when the heuristic gives up.
    pub(super) fn gcd(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
        if a.is_zero() || b.is_zero() {
            return None;
        }
        let Some(v) = max_symbol(a).max(max_symbol(b)) else {
            return Some(Polynomial::constant(Rational::from_integer(content(a).gcd(&content(b)))));
        };
        let common = content(a).gcd(&content(b));
        let mut xi: BigInt = max_norm(a).min(max_norm(b)) * 2 + 29;
        for _ in 0..ATTEMPTS {
            let degree = a.degree_in(v).max(b.degree_in(v)) as u64 + 1;
            if xi.bits() * degree > MAX_BITS {
                return None;
            }
            let h = gcd(&eval(a, v, &xi), &eval(b, v, &xi))?;
            let g = interpolate(h, v, &xi);
            if !g.is_zero() {
                let g = g.scale(&Rational::new(BigInt::one(), content(&g)));
                if divides(&g, a) && divides(&g, b) {
                    return Some(g.scale(&Rational::from_integer(common)));
                }
            }
            xi = xi * 73_794 / 27_011;
        }
        None
    }
}

/// A sound but incomplete coprimality test by evaluation modulo a prime.
///
/// For every symbol both polynomials contain, the other symbols are sent to
/// pseudo-random residues. When the leading coefficients survive and the
/// univariate images are coprime, the gcd has degree zero in that symbol.
mod modular {
    use alloc::vec;
    use alloc::vec::Vec;

    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    use super::Polynomial;
    use crate::semiring::Rational;

    const P: u64 = 4_294_967_291;
    const ATTEMPTS: u64 = 2;

    fn mul(a: u64, b: u64) -> u64 {
        a * b % P
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    fn residue(n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(P)).to_u64().expect("reduced below P")
    }

    fn reduce(c: &Rational) -> Option<u64> {
        let d = residue(c.denom());
        (d != 0).then(|| mul(residue(c.numer()), inv(d)))
    }

    /// Dense image in symbol `v`, lowest power first, or `None` if a
    /// denominator vanishes.
    fn image(p: &Polynomial, v: usize, point: &[u64]) -> Option<Vec<u64>> {
        let mut out = vec![0u64; p.degree_in(v) as usize + 1];
        for (m, c) in p.terms() {
            let mut x = reduce(c)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if i != v && e > 0 {
                    x = mul(x, pow(point[i], e as u64));
                }
            }
            let slot = &mut out[m.exponent(v) as usize];
            *slot = (*slot + x) % P;
        }
        Some(out)
    }

    fn trim(p: &mut Vec<u64>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    fn degree_of_gcd(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let lb = inv(*b.last().expect("nonempty"));
            while a.len() >= b.len() {
                let f = mul(*a.last().expect("nonempty"), lb);
                let shift = a.len() - b.len();
                for (i, &y) in b.iter().enumerate() {
                    a[i + shift] = (a[i + shift] + P - mul(f, y)) % P;
                }
                trim(&mut a);
            }
            core::mem::swap(&mut a, &mut b);
        }
        a.len().saturating_sub(1)
    }

    pub(super) fn coprime(a: &Polynomial, b: &Polynomial) -> bool {
        let symbols = a.symbol_count().max(b.symbol_count());
        (0..symbols).all(|v| {
            let (da, db) = (a.degree_in(v), b.degree_in(v));
            if da == 0 || db == 0 {
                return true;
            }
            (0..ATTEMPTS).any(|attempt| {
                let point: Vec<u64> = (0..symbols)
                    .map(|i| (0x9e37_79b9 + 7919 * (i as u64 + 1) + 104_729 * (attempt + 3) * (v as u64 + 1)) % P)
                    .collect();
                let (Some(ia), Some(ib)) = (image(a, v, &point), image(b, v, &point)) else {
                    return false;
                };
                ia.last() != Some(&0) && ib.last() != Some(&0) && degree_of_gcd(ia, ib) == 0
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn a() -> Polynomial {
        Polynomial::var(0)
    }
    fn b() -> Polynomial {
        Polynomial::var(1)
    }
    fn int(n: i64) -> Polynomial {
        Polynomial::integer(n)
    }

    const NAMES: [&str; 3] = ["a", "b", "c"];

    #[test]
    fn square_of_b_minus_one() {
        let p = &b() - &int(1);
        let sq = &p * &p;
        assert_eq!(sq.display(&NAMES).to_string(), "b^2 - 2*b + 1");
        assert_eq!(sq.exact_div(&p).unwrap(), p);
    }

    #[test]
    fn univariate_gcd_of_high_degree() {
        let common = &(&a() * &a()).scale(&Rational::from_integer(3.into())) - &int(2);
        let p = (0..14).fold(int(7), |acc, i| &(&acc * &a()) + &int(i % 5 - 2));
        let q = (0..13).fold(int(-4), |acc, i| &(&acc * &a()) + &int(3 - i % 4));
        assert_eq!(p.gcd(&q), Polynomial::one());
        assert_eq!((&p * &common).gcd(&(&q * &common)), common);
    }

    #[test]
    fn gcd_of_monomials() {
        let x = &(&a() * &a()) * &b();
        let y = &(&b() * &b()) * &a();
        assert_eq!(x.gcd(&y), &a() * &b());
    }

    #[test]
    fn content_and_primitive_part() {
        let p = &a().scale(&Rational::from_integer(2.into())) + &b().scale(&Rational::from_integer(4.into()));
        assert_eq!(p.content(), Rational::from_integer(2.into()));
        assert_eq!(p.primitive_part(), &a() + &b().scale(&Rational::from_integer(2.into())));
        let n = -&p;
        assert_eq!(n.content(), Rational::from_integer((-2).into()));
        assert_eq!(n.primitive_part(), p.primitive_part());
    }

    #[test]
    fn division_errors() {
        assert_eq!(a().exact_div(&Polynomial::zero()), Err(AlgebraError::DivisionByZeroPolynomial));
        assert_eq!(a().exact_div(&b()), Err(AlgebraError::NotDivisible));
        assert_eq!((&a() + &int(1)).exact_div(&a()), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn rendering() {
        let p = &int(1) - &a().scale(&Rational::from_integer(2.into()));
        assert_eq!(p.display(&NAMES).to_string(), "-2*a + 1");
        assert_eq!(Polynomial::zero().display(&NAMES).to_string(), "0");
        let h = Polynomial::constant(Rational::new(1.into(), 2.into()));
        assert_eq!(h.display(&NAMES).to_string(), "1/2");
    }

    #[test]
    fn geometric_expansion() {
        let den = &int(1) - &a().scale(&Rational::from_integer(2.into()));
        let s = int(1).series_quotient(&den, 3).unwrap();
        for n in 0..=3u32 {
            assert_eq!(s.get(&Monomial::var_pow(0, n)), Rational::from_integer((1 << n).into()));
        }
        assert_eq!(int(1).series_quotient(&a(), 3), Err(AlgebraError::NonUnitDenominatorAtOrigin));
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3), -3i64..4), 0..4).prop_map(|ts| {
            Polynomial::from_terms(ts.into_iter().map(|((x, y), c)| {
                (Monomial::from_exponents(vec![x, y]), Rational::from_integer(c.into()))
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
            prop_assert_eq!(&p * &Polynomial::one(), p.clone());
        }

        #[test]
        fn gcd_divides_and_is_maximal(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assume!(!r.is_zero() && !(p.is_zero() && q.is_zero()));
            let (pr, qr) = (&p * &r, &q * &r);
            let g = pr.gcd(&qr);
            prop_assert!(pr.exact_div(&g).is_ok());
            prop_assert!(qr.exact_div(&g).is_ok());
            prop_assert!(g.exact_div(&r.primitive_part()).is_ok());
            prop_assert!(g.leading_coefficient() > Rational::zero());
        }

        #[test]
        fn exact_division_inverts_product(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!q.is_zero());
            prop_assert_eq!((&p * &q).exact_div(&q).unwrap(), p);
        }
    }
}
