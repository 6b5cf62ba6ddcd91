mod common;

use common::*;
use proptest::prelude::*;
use qreg::oracle::{brute_distance, brute_witness, denote};
use qreg::random::random_regex;
use qreg::{member, Config, Word};

fn words(slice: &qreg::oracle::LanguageSlice) -> Vec<String> {
    slice.words.iter().map(|w| w.to_string()).collect()
}

#[test]
fn denote_examples() {
    assert_eq!(words(&denote(&re("a+1"), 3)), ["", "a"]);
    assert_eq!(words(&denote(&re("a*"), 3)), ["", "a", "aa", "aaa"]);
    assert!(denote(&re("0"), 3).is_empty());
    assert_eq!(denote(&re("(a;b)*"), 4).len(), 3);
}

#[test]
fn brute_distance_examples() {
    let cfg = Config::default();
    assert_eq!(brute_distance(&re("a*"), &re("a+1"), 5, &cfg), q(1, 4));
    assert_eq!(brute_distance(&re("a;b*"), &re("a;b*"), 5, &cfg), q(0, 1));
    assert_eq!(brute_distance(&re("a"), &re("b"), 5, &cfg), q(1, 2));
    assert_eq!(brute_witness(&re("a"), &re("b"), 5), Some(Word::from("a")));
    // nothing within the bound
    assert_eq!(brute_distance(&re("a;a;a"), &re("0"), 2, &cfg), q(0, 1));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn denotation_agrees_with_membership(seed in any::<u64>(), size in 1usize..20) {
        let mut rng = rng(seed);
        let alphabet = small_alphabet(&mut rng);
        let e = random_regex(&mut rng, &alphabet, size);
        let slice = denote(&e, 5);
        prop_assert!(slice.words.iter().all(|w| w.len() <= 5));
        for w in words_up_to(&alphabet, 5) {
            prop_assert_eq!(slice.contains(&w), member(&e, &w));
        }
    }

    #[test]
    fn brute_witness_is_shortest_and_least(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (e, f) = random_pair(&mut rng, 10);
        let alphabet = qreg::syntax::infer_alphabet(&e, &f);
        let first = words_up_to(&alphabet, 5)
            .into_iter()
            .find(|w| member(&e, w) != member(&f, w));
        prop_assert_eq!(brute_witness(&e, &f, 5), first);
    }
}
