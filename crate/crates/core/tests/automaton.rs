mod common;

use common::*;
use proptest::prelude::*;
use qreg::automaton::{build_with_limit, BuildError, DEFAULT_STATE_LIMIT};
use qreg::random::random_regex;
use qreg::{build, member, Alphabet, StateId};

#[test]
fn star_closure_has_four_states() {
    let a: Alphabet = "a".parse().unwrap();
    let aut = build(&[re("a*")], &a).unwrap();
    let exprs: Vec<String> = aut.state_ids().map(|s| aut.expr(s).to_string()).collect();
    assert_eq!(exprs, ["a*", "1;a*", "0;a* + 1;a*", "0 + 0;a* + 1;a*"]);
    assert!(aut.state_ids().all(|s| aut.output(s)));
    // the last state is its own successor
    assert_eq!(aut.next(StateId(3), 0), StateId(3));
}

#[test]
fn zero_is_a_single_sink() {
    let a: Alphabet = "a".parse().unwrap();
    let aut = build(&[re("0")], &a).unwrap();
    assert_eq!(aut.len(), 1);
    assert!(!aut.output(StateId(0)));
    assert_eq!(aut.next(StateId(0), 0), StateId(0));
}

#[test]
fn two_roots() {
    let a: Alphabet = "a".parse().unwrap();
    let aut = build(&[re("a*"), re("a+1")], &a).unwrap();
    assert_eq!(aut.roots(), &[StateId(0), StateId(1)]);
    assert_eq!(aut.len(), 7);
    let n = aut.len();
    let pairs = aut.product_pairs(StateId(0), StateId(1));
    assert!(pairs.len() <= n * (n + 1) / 2);
    assert_eq!(pairs[0], (StateId(0), StateId(1)));
}

#[test]
fn diagonal_product_pairs() {
    let ab: Alphabet = "ab".parse().unwrap();
    let aut = build(&[re("a")], &ab).unwrap();
    let s = aut.roots()[0];
    let pairs = aut.product_pairs(s, s);
    assert!(pairs.iter().all(|(u, v)| u == v));
    assert_eq!(pairs.len(), aut.len());
}

#[test]
fn errors() {
    let a: Alphabet = "a".parse().unwrap();
    assert_eq!(build(&[], &a).unwrap_err(), BuildError::EmptyRoots);
    assert!(matches!(
        build(&[re("b")], &a),
        Err(BuildError::LetterOutsideAlphabet { letter: 'b', .. })
    ));
    assert_eq!(
        build_with_limit(&[re("(a;a;a)*")], &a, 2).unwrap_err(),
        BuildError::StateLimit { limit: 2 }
    );
}

#[test]
fn dot_marks_accepting_states() {
    let a: Alphabet = "a".parse().unwrap();
    let dot = build(&[re("a")], &a).unwrap().to_dot();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("doublecircle"));
}

#[test]
fn thousand_expressions_stay_finite() {
    let mut rng = rng(1000);
    let alphabet: Alphabet = "ab".parse().unwrap();
    for _ in 0..1000 {
        let e = random_regex(&mut rng, &alphabet, 30);
        let aut = build(std::slice::from_ref(&e), &alphabet).unwrap_or_else(|err| panic!("{e}: {err}"));
        assert!(aut.len() < DEFAULT_STATE_LIMIT);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn automaton_preserves_language(seed in any::<u64>(), size in 1usize..25) {
        let mut rng = rng(seed);
        let alphabet = small_alphabet(&mut rng);
        let e = random_regex(&mut rng, &alphabet, size);
        let aut = build(std::slice::from_ref(&e), &alphabet).unwrap();
        for s in aut.state_ids() {
            prop_assert_eq!(aut.successors(s).len(), alphabet.len());
            prop_assert_eq!(aut.state_of(aut.expr(s)), Some(s));
        }
        let root = aut.roots()[0];
        for w in words_up_to(&alphabet, 6) {
            prop_assert_eq!(aut.accepts(root, &w), member(&e, &w));
        }
    }
}
