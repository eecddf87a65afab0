use alloc::vec::Vec;
use core::cmp::Ordering;

use super::system::SystemPolynomial;
use crate::monomial::Monomial;

/// Fully reduces `f` modulo `basis`: no term of the result is divisible by
/// the leading monomial of a basis element.
///
/// When several elements divide a term, the smallest one is used.
pub fn poly_reduce(f: &SystemPolynomial, basis: &[SystemPolynomial]) -> SystemPolynomial {
    let mut reducers: Vec<&SystemPolynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    reducers.sort_by_cached_key(|g| (g.terms().len(), size(g)));
    let mut p = f.clone();
    let mut remainder = SystemPolynomial::zero();
    while let Some((m, c)) = p.leading().cloned() {
        let divisor = reducers.iter().find_map(|g| {
            let (gm, gc) = g.leading()?;
            gm.quotient_of(&m).map(|q| (g, q, gc))
        });
        match divisor {
            Some((g, q, gc)) => {
                let coef = c.div(gc).expect("leading coefficients are nonzero");
                p = p.sub(&g.mul_term(&q, &coef));
            }
            None => {
                remainder = remainder.add(&SystemPolynomial::term(m, c));
                p = p.tail();
            }
        }
    }
    remainder
}

fn size(g: &SystemPolynomial) -> usize {
    g.terms()
        .iter()
        .map(|(_, c)| c.numerator().term_count() + c.denominator().term_count())
        .sum()
}

/// The S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &SystemPolynomial, g: &SystemPolynomial) -> SystemPolynomial {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(
        &fm.quotient_of(&l).expect("lcm is a multiple"),
        &fc.inv().expect("nonzero"),
    );
    let b = g.mul_term(
        &gm.quotient_of(&l).expect("lcm is a multiple"),
        &gc.inv().expect("nonzero"),
    );
    a.sub(&b)
}

/// Critical pairs as indices into every polynomial seen so far.
type Pair = (usize, usize);

struct State {
    polys: Vec<SystemPolynomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("basis elements are nonzero")
    }

    fn lcm(&self, (i, j): Pair) -> Monomial {
        self.lm(i).lcm(self.lm(j))
    }

    /// Gebauer and Moeller's update for a new element `h`.
    fn insert(&mut self, h: SystemPolynomial) {
        let k = self.polys.len();
        self.polys.push(h);
        let mut fresh: Vec<Pair> = self.active.iter().map(|&g| (g, k)).collect();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = fresh.pop() {
            let l = self.lcm(p);
            let coprime = self.lm(p.0).is_coprime(self.lm(k));
            if coprime || !fresh.iter().chain(&kept).any(|&q| self.lcm(q).divides(&l)) {
                kept.push(p);
            }
        }
        kept.retain(|&(g, _)| !self.lm(g).is_coprime(self.lm(k)));
        let old = core::mem::take(&mut self.pairs);
        for (i, j) in old {
            let l = self.lcm((i, j));
            if !self.lm(k).divides(&l) || self.lcm((i, k)) == l || self.lcm((j, k)) == l {
                self.pairs.push((i, j));
            }
        }
        self.pairs.extend(kept);
        let lk = self.lm(k).clone();
        let active = core::mem::take(&mut self.active);
        self.active = active.into_iter().filter(|&g| !lk.divides(self.lm(g))).collect();
        self.active.push(k);
    }
}

/// A Groebner basis of the ideal generated by `generators`.
///
/// Pairs are taken smallest least common multiple first. Useless pairs and
/// redundant elements are dropped by the Gebauer and Moeller criteria, which
/// include the coprime leading monomial criterion.
pub fn buchberger(generators: &[SystemPolynomial]) -> Vec<SystemPolynomial> {
    let mut state = State { polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for f in generators.iter().filter(|f| !f.is_zero()) {
        state.insert(f.monic());
    }
    while !state.pairs.is_empty() {
        let pick = (0..state.pairs.len())
            .min_by(|&x, &y| {
                let (a, b) = (state.pairs[x], state.pairs[y]);
                match state.lcm(a).lex_cmp(&state.lcm(b)) {
                    Ordering::Equal => a.cmp(&b),
                    o => o,
                }
            })
            .expect("nonempty");
        let (i, j) = state.pairs.swap_remove(pick);
        let basis: Vec<SystemPolynomial> = state.active.iter().map(|&g| state.polys[g].clone()).collect();
        let r = poly_reduce(&s_polynomial(&state.polys[i], &state.polys[j]), &basis);
        if !r.is_zero() {
            state.insert(r.monic());
        }
    }
    state.active.iter().map(|&g| state.polys[g].clone()).collect()
}

/// The reduced Groebner basis: monic, no leading monomial divides a term of
/// another element, sorted by ascending leading monomial.
pub fn reduce_basis(basis: &[SystemPolynomial]) -> Vec<SystemPolynomial> {
    let mut sorted: Vec<SystemPolynomial> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    sorted.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .lex_cmp(b.leading_monomial().unwrap())
    });
    let mut minimal: Vec<SystemPolynomial> = Vec::new();
    for g in sorted {
        let lm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(g);
        }
    }
    let mut reduced: Vec<SystemPolynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<SystemPolynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            poly_reduce(&minimal[i], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .lex_cmp(b.leading_monomial().unwrap())
    });
    reduced
}

/// `reduce_basis(buchberger(generators))`.
pub fn reduced_groebner_basis(generators: &[SystemPolynomial]) -> Vec<SystemPolynomial> {
    reduce_basis(&buchberger(generators))
}
