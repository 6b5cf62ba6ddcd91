#![allow(dead_code)]

use qreg::random::random_regex;
use qreg::{Alphabet, Rational, Regex, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn re(s: &str) -> Regex {
    Regex::parse_any(s).unwrap()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn small_alphabet(rng: &mut StdRng) -> Alphabet {
    if rng.gen_bool(0.5) { "a" } else { "ab" }.parse().unwrap()
}

/// A random pair over one shared alphabet of at most two letters.
pub fn random_pair(rng: &mut StdRng, max_size: usize) -> (Regex, Regex) {
    let alphabet = small_alphabet(rng);
    (
        random_regex(rng, &alphabet, max_size),
        random_regex(rng, &alphabet, max_size),
    )
}

/// Every word over `alphabet` of length at most `max_len`.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut all = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &c in alphabet.symbols() {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}
