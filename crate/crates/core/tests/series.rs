mod common;

use common::*;
use parikh_core::tree::{enumerate_start_trees, parikh_series_bruteforce, EnumerationLimits};
use parikh_core::{AlgebraicSystem, Grammar, Monomial, Natural, Rational, Rule, Semiring, Symbol, Tropical};
use proptest::prelude::*;

fn agree<S: Semiring>(g: &Grammar<S>, max_order: usize) {
    let sys = AlgebraicSystem::from_grammar(g);
    for k in 0..=max_order {
        let fast = sys.approximate(k, 10_000).unwrap().swap_remove(0);
        let slow = parikh_series_bruteforce(g, k, None, None).unwrap();
        assert_eq!(fast, slow, "order {k}");
    }
}

#[test]
fn fixtures_agree_with_enumeration() {
    agree(&catalan::<Rational>(), 6);
    agree(&catalan::<Natural>(), 6);
    agree(&squared_tail::<Tropical>(), 6);
    agree(&dyck_split::<Natural>(), 6);
    agree(&doubled_dyck(), 6);
    agree(&mixed_unary::<Rational>(), 6);
    agree(&weighted_layered(|i| q(i as i64 - 4, 2)), 6);
    agree(&weighted_layered(|i| Tropical::Finite(i as u64 % 3)), 6);
}

#[test]
fn tropical_coefficient_is_cheapest_tree() {
    let g = weighted_layered(|i| Tropical::Finite((i as u64 * 7) % 5));
    let k = 5;
    let series = AlgebraicSystem::from_grammar(&g).approximate(k, 10_000).unwrap().swap_remove(0);
    let trees = enumerate_start_trees(&g, EnumerationLimits::for_grammar(&g, k)).unwrap();
    let mut cheapest = std::collections::BTreeMap::<Monomial, u64>::new();
    for t in &trees {
        let cost: u64 = t.rules().iter().map(|&r| g.rule(r).weight.finite().unwrap()).sum();
        let slot = cheapest.entry(t.parikh(&g)).or_insert(u64::MAX);
        *slot = (*slot).min(cost);
    }
    assert!(!cheapest.is_empty());
    for (m, c) in &cheapest {
        assert_eq!(series.get(m), Tropical::Finite(*c), "{:?}", m);
    }
    assert_eq!(series.terms().count(), cheapest.len());
}

#[test]
fn catalan_numbers() {
    let s = AlgebraicSystem::from_grammar(&catalan::<Natural>()).approximate(21, 10_000).unwrap();
    let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (n, c) in expected.iter().enumerate() {
        assert_eq!(s[0].get(&Monomial::var_pow(0, 2 * n as u32 + 1)), Natural::new(*c));
    }
}

#[test]
fn rendering() {
    let s = AlgebraicSystem::from_grammar(&squared_tail::<Rational>()).approximate(4, 100).unwrap();
    assert_eq!(s[0].display(&["a", "b"]).to_string(), "1*a^3 + 2*a^3*b");
    let neg = AlgebraicSystem::from_grammar(&build(&["a"], &["X"], &[("X", "a")], |_| q(-3, 2)))
        .approximate(3, 100)
        .unwrap();
    assert_eq!(neg[0].display(&["a"]).to_string(), "-3/2*a");
}

#[test]
fn regular_system_round_trip() {
    let g: Grammar<Rational> = build(
        &["a", "b"],
        &["X", "Y"],
        &[("X", "a Y"), ("X", "b"), ("Y", "b X"), ("Y", "")],
        |i| q(i as i64 + 1, 1),
    );
    let sys = AlgebraicSystem::from_grammar(&g);
    let back = sys.to_regular_grammar().unwrap();
    assert!(back.is_regular());
    let again = AlgebraicSystem::from_grammar(&back).approximate(7, 1000).unwrap();
    assert_eq!(again[0], sys.approximate(7, 1000).unwrap()[0]);
}

fn arb_grammar() -> impl Strategy<Value = Grammar<Natural>> {
    let rule = (0..3usize, prop::collection::vec(0..5usize, 0..=3), 0..4u64);
    prop::collection::vec(rule, 1..=6).prop_filter_map("invalid grammar", |rules| {
        let mut built: Vec<Rule<Natural>> = Vec::new();
        for (lhs, rhs, w) in rules {
            let rhs: Vec<Symbol> = rhs
                .into_iter()
                .map(|s| if s < 2 { Symbol::Terminal(s) } else { Symbol::Variable(s - 2) })
                .collect();
            if built.iter().all(|r| r.lhs != lhs || r.rhs != rhs) {
                built.push(Rule { lhs, rhs, weight: Natural::new(w) });
            }
        }
        let g = Grammar::new(names(&["a", "b"]), names(&["X", "Y", "Z"]), 0, built).ok()?;
        parikh_core::analysis::is_cycle_free(&g).then_some(g)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_grammars_agree_with_enumeration(g in arb_grammar()) {
        let k = 4;
        let slow = parikh_series_bruteforce(&g, k, None, Some(200_000));
        prop_assume!(slow.is_ok());
        let fast = AlgebraicSystem::from_grammar(&g).approximate(k, 10_000).unwrap().swap_remove(0);
        prop_assert_eq!(fast, slow.unwrap());
    }
}
