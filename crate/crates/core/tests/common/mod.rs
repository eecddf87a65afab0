#![allow(dead_code)]

use parikh_core::{Grammar, Rational, Rule, Semiring, Symbol};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// Grammar from `(lhs, "rhs symbols")` pairs; `weight(i)` weighs rule `i`.
pub fn build<S: Semiring>(
    terminals: &[&str],
    variables: &[&str],
    rules: &[(&str, &str)],
    weight: impl Fn(usize) -> S,
) -> Grammar<S> {
    let symbol = |s: &str| match terminals.iter().position(|t| *t == s) {
        Some(t) => Symbol::Terminal(t),
        None => Symbol::Variable(variables.iter().position(|v| *v == s).expect("declared symbol")),
    };
    let rules = rules
        .iter()
        .enumerate()
        .map(|(i, (lhs, rhs))| Rule {
            lhs: variables.iter().position(|v| v == lhs).expect("declared lhs"),
            rhs: rhs.split_whitespace().map(symbol).collect(),
            weight: weight(i),
        })
        .collect();
    Grammar::new(names(terminals), names(variables), 0, rules).expect("valid grammar")
}

pub fn ones<S: Semiring>(_: usize) -> S {
    S::one()
}

pub fn catalan<S: Semiring>() -> Grammar<S> {
    build(&["a"], &["X"], &[("X", "a X X"), ("X", "a")], ones)
}

pub fn squared_tail<S: Semiring>() -> Grammar<S> {
    build(&["a", "b"], &["X1", "X2"], &[("X1", "a X2 X2"), ("X2", "b X2"), ("X2", "a")], ones)
}

pub const DYCK_SPLIT_VARIABLES: [&str; 5] = ["X2", "Dbar", "D", "Y", "Z"];

pub const DYCK_SPLIT_RULES: [(&str, &str); 11] = [
    ("X2", "D"),
    ("X2", "Dbar"),
    ("Dbar", "D abar Y"),
    ("Dbar", "D a Z"),
    ("Z", "D a Z"),
    ("Z", "D"),
    ("D", "a D abar D"),
    ("D", ""),
    ("Y", "a Y"),
    ("Y", "abar Y"),
    ("Y", ""),
];

pub fn dyck_split<S: Semiring>() -> Grammar<S> {
    build(&["a", "abar"], &DYCK_SPLIT_VARIABLES, &DYCK_SPLIT_RULES, ones)
}

pub fn doubled_dyck() -> Grammar<Rational> {
    build(
        &["a"],
        &["X", "Dbar", "D", "Y", "Z"],
        &[
            ("X", "D"),
            ("X", "Dbar"),
            ("Dbar", "D a Y"),
            ("Dbar", "D a Z"),
            ("Z", "D a Z"),
            ("Z", "D"),
            ("D", "a D a D"),
            ("D", ""),
            ("Y", "a Y"),
            ("Y", ""),
        ],
        |i| q(if i == 8 { 2 } else { 1 }, 1),
    )
}

pub fn mixed_unary<S: Semiring>() -> Grammar<S> {
    build(&["a"], &["X", "Y"], &[("X", "a X Y"), ("X", "a Y X"), ("X", "a"), ("Y", "a")], ones)
}

pub fn layered<S: Semiring>() -> Grammar<S> {
    build(
        &["a", "b"],
        &["S", "A", "B", "C"],
        &[
            ("S", "A C"),
            ("S", "a S"),
            ("A", "a A"),
            ("A", "b"),
            ("B", "A A b"),
            ("B", ""),
            ("C", "B B"),
            ("C", "b C"),
        ],
        ones,
    )
}

/// `layered` with assorted weights from `w`.
pub fn weighted_layered<S: Semiring>(w: impl Fn(usize) -> S) -> Grammar<S> {
    let g: Grammar<S> = layered();
    let mut i = 0;
    g.map_weights(|_| {
        i += 1;
        w(i)
    })
}
