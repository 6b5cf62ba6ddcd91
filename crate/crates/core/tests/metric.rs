mod common;

use common::*;
use proptest::prelude::*;
use qreg::metric::{ascend_from_zero, distance_over, kleene_descent, phi, Config, ConfigError, Descent, TableDfa};
use qreg::oracle::{brute_distance, brute_witness};
use qreg::random::{random_dfa, random_pseudometric, random_regex};
use qreg::syntax::infer_alphabet;
use qreg::{
    build, distance, member, witness, Alphabet, ExponentValue, MetricTable, Rational, RationalTable, Regex, Word,
};
use rand::seq::SliceRandom;

fn lambdas() -> Vec<Config> {
    [q(1, 2), q(1, 3), q(3, 4)]
        .into_iter()
        .map(|l| Config::new(l).unwrap())
        .collect()
}

#[test]
fn config_bounds() {
    assert!(matches!(Config::new(q(0, 1)), Err(ConfigError::LambdaOutOfRange(_))));
    assert!(Config::new(q(1, 1)).is_err());
    assert_eq!(Config::default().lambda(), &q(1, 2));
    assert_eq!(Config::default().pow(3), q(1, 8));
}

#[test]
fn top_examples() {
    assert_eq!(MetricTable::top(1).entries().count(), 0);
    let t2 = MetricTable::top(2);
    assert_eq!(t2.get(0, 1), ExponentValue::ONE);
    assert!(MetricTable::top(3).satisfies_triangle(&Config::default()));
}

#[test]
fn phi_examples() {
    let a: Alphabet = "a".parse().unwrap();
    let aut = build(&[re("a*"), re("a+1")], &a).unwrap();
    let once = phi(&aut, &MetricTable::top(aut.len()));
    assert_eq!(once.get(0, 1), ExponentValue::Finite(1));

    let aut = build(&[re("a*"), re("0")], &a).unwrap();
    let once = phi(&aut, &MetricTable::top(aut.len()));
    assert_eq!(once.get(0, 1), ExponentValue::ONE);

    // both states move to the same state and agree on output
    let dfa = TableDfa {
        outputs: vec![false, false, true],
        transitions: vec![vec![2], vec![2], vec![2]],
    };
    let once = phi(&dfa, &MetricTable::top(3));
    assert_eq!(once.get(0, 1), ExponentValue::ZERO);
}

#[test]
fn descent_examples() {
    let a: Alphabet = "a".parse().unwrap();
    let aut = build(&[re("a*"), re("a+1")], &a).unwrap();
    let Descent { fixpoint, trace, .. } = kleene_descent(&aut);
    let at_root: Vec<Option<u32>> = trace.iter().map(|d| d.get(0, 1).exponent()).collect();
    assert_eq!(at_root[..4], [Some(0), Some(1), Some(2), Some(2)]);
    let d = distance(&re("a*"), &re("a+1"), &Config::default()).unwrap();
    let root_trace: Vec<Option<u32>> = d.root_trace.iter().map(|v| v.exponent()).collect();
    assert_eq!(root_trace, [Some(0), Some(1), Some(2), Some(2)]);
    assert_eq!(Config::default().value(fixpoint.get(0, 1)), q(1, 4));
    assert_eq!(fixpoint.get(3, 3), ExponentValue::ZERO);

    let aut = build(&[re("a*"), re("0")], &a).unwrap();
    assert_eq!(kleene_descent(&aut).fixpoint.get(0, 1), ExponentValue::ONE);
}

#[test]
fn distance_examples() {
    let cfg = Config::default();
    let d = distance(&re("a*"), &re("a+1"), &cfg).unwrap();
    assert_eq!(d.value, q(1, 4));
    assert_eq!(d.witness, Some(Word::from("aa")));
    assert_eq!(distance(&re("a*"), &re("0"), &cfg).unwrap().value, q(1, 1));
    assert_eq!(distance(&re("a"), &re("b"), &cfg).unwrap().value, q(1, 2));
    let third = Config::new(q(1, 3)).unwrap();
    assert_eq!(distance(&re("a*"), &re("a+1"), &third).unwrap().value, q(1, 9));
}

#[test]
fn witness_examples() {
    let cfg = Config::default();
    assert_eq!(witness(&re("a*"), &re("a+1"), &cfg).unwrap(), Some(Word::from("aa")));
    assert_eq!(witness(&re("(a+b)*"), &re("(a+b)*"), &cfg).unwrap(), None);
    assert_eq!(witness(&re("a"), &re("b"), &cfg).unwrap(), Some(Word::from("a")));
    assert_eq!(witness(&re("a*"), &re("0"), &cfg).unwrap(), Some(Word::empty()));
}

fn to_values(t: &MetricTable, cfg: &Config) -> RationalTable {
    RationalTable::from_exponents(t, cfg.lambda())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn phi_is_monotone_and_nonexpansive(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let dfa = random_dfa(&mut rng, 12, 3);
        let n = dfa.outputs.len();
        let cfg = lambdas().choose(&mut rng).unwrap().clone();
        let lambda = cfg.lambda();
        let d = random_pseudometric(&mut rng, n);
        let e = random_pseudometric(&mut rng, n);
        let bigger = d.join(&e);
        prop_assert!(d.leq(&bigger));
        prop_assert!(d.phi(&dfa, lambda).leq(&bigger.phi(&dfa, lambda)));
        let before = d.sup_distance(&e);
        let after = d.phi(&dfa, lambda).sup_distance(&e.phi(&dfa, lambda));
        prop_assert!(after <= lambda * &before, "{} > λ·{}", after, before);
    }

    #[test]
    fn single_fixpoint_from_both_ends(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let dfa = random_dfa(&mut rng, 12, 3);
        let cfg = lambdas().choose(&mut rng).unwrap().clone();
        let descent = kleene_descent(&dfa);
        let down = to_values(&descent.fixpoint, &cfg);
        let up = ascend_from_zero::<Rational, _>(&dfa, cfg.lambda(), 10_000).expect("ascent stabilizes");
        prop_assert_eq!(&up, &down);
        prop_assert!(down.phi(&dfa, cfg.lambda()) == down);
        prop_assert_eq!(phi(&dfa, &descent.fixpoint), descent.fixpoint.clone());
        prop_assert!(descent.fixpoint.satisfies_triangle(&cfg));
    }

    #[test]
    fn descent_chain_decreases_to_fixpoint(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let dfa = random_dfa(&mut rng, 12, 3);
        let descent = kleene_descent(&dfa);
        let mut chain = descent.trace.clone();
        // continue well past the stopping point
        for _ in 0..2 * chain.len() + 4 {
            let next = phi(&dfa, chain.last().unwrap());
            chain.push(next);
        }
        for w in chain.windows(2) {
            prop_assert!(w[1].leq(&w[0]));
        }
        let last = chain.last().unwrap();
        for ((s, t), v) in descent.fixpoint.entries() {
            match v {
                ExponentValue::Infinite => {
                    let exp = last.get(s, t).exponent();
                    prop_assert!(exp.is_none() || exp.unwrap() as usize >= chain.len() - 1);
                }
                finite => prop_assert_eq!(last.get(s, t), finite),
            }
            prop_assert!(descent.fixpoint.leq(&chain[descent.iterations.min(chain.len() - 1)]));
        }
    }

    #[test]
    fn distance_is_isometric_in_larger_automata(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let alphabet = small_alphabet(&mut rng);
        let e = random_regex(&mut rng, &alphabet, 15);
        let f = random_regex(&mut rng, &alphabet, 15);
        let g = random_regex(&mut rng, &alphabet, 15);
        let cfg = Config::default();
        let small = distance_over(&e, &f, &alphabet, &cfg).unwrap();
        let aut = build(&[e, f, g], &alphabet).unwrap();
        let big = kleene_descent(&aut).fixpoint;
        prop_assert_eq!(big.get(aut.roots()[0].0, aut.roots()[1].0), small.exponent);
    }

    #[test]
    fn zero_distance_iff_same_language(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (e, f) = random_pair(&mut rng, 12);
        let alphabet = infer_alphabet(&e, &f);
        let d = distance_over(&e, &f, &alphabet, &Config::default()).unwrap();
        // all words up to P through the trie oracle, the short ones through member too
        let agree = brute_witness(&e, &f, d.pairs).is_none();
        prop_assert_eq!(d.exponent.is_zero(), agree);
        let short = words_up_to(&alphabet, d.pairs.min(8)).iter().all(|w| member(&e, w) == member(&f, w));
        prop_assert!(short || !agree);
        if let Some(w) = &d.witness {
            prop_assert_ne!(member(&e, w), member(&f, w));
            prop_assert_eq!(Some(w.len() as u32), d.exponent.exponent());
        }
    }

    #[test]
    fn operations_are_nonexpansive(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let alphabet = small_alphabet(&mut rng);
        let mut draw = || random_regex(&mut rng, &alphabet, 10);
        let (e, f, g, h) = (draw(), draw(), draw(), draw());
        let cfg = Config::default();
        let d = |x: &Regex, y: &Regex| distance_over(x, y, &alphabet, &cfg).unwrap().value;
        let bound = d(&e, &g).max(d(&f, &h));
        prop_assert!(d(&Regex::sum(e.clone(), f.clone()), &Regex::sum(g.clone(), h.clone())) <= bound);
        prop_assert!(d(&Regex::seq(e.clone(), f.clone()), &Regex::seq(g.clone(), h.clone())) <= bound);
        prop_assert!(d(&Regex::star(e.clone()), &Regex::star(g.clone())) <= d(&e, &g));
    }

    #[test]
    fn float_and_rational_tables_agree(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let dfa = random_dfa(&mut rng, 8, 2);
        let descent = kleene_descent(&dfa);
        let exact = RationalTable::from_exponents(&descent.fixpoint, &q(1, 2));
        let float = qreg::FloatTable::from_exponents(&descent.fixpoint, &0.5);
        for s in 0..dfa.outputs.len() {
            for t in 0..dfa.outputs.len() {
                let x: f64 = qreg::Scalar::from_rational(&exact.get(s, t));
                prop_assert!((x - float.get(s, t)).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn oracle_agrees_on_five_hundred_pairs() {
    let mut rng = rng(500);
    let configs = lambdas();
    for _ in 0..500 {
        let (e, f) = random_pair(&mut rng, 15);
        let cfg = configs.choose(&mut rng).unwrap();
        let alphabet = infer_alphabet(&e, &f);
        let d = distance_over(&e, &f, &alphabet, cfg).unwrap();
        assert_eq!(brute_distance(&e, &f, d.pairs, cfg), d.value, "{e} vs {f}");
    }
}
