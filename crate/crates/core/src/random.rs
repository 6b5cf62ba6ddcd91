//! Random inputs for tests and benchmarks.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::metric::{TableDfa, ValueTable};
use crate::proof::{Derivation, Meta, Proof, Rule};
use crate::scalar::Rational;
use crate::syntax::{Alphabet, Regex};

/// A random expression with between 1 and `max_size` nodes.
pub fn random_regex<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_size: usize) -> Regex {
    let size = rng.gen_range(1..=max_size.max(1));
    regex_of_size(rng, alphabet, size)
}

/// A random expression with exactly `size` nodes.
pub fn regex_of_size<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, size: usize) -> Regex {
    match size {
        0 | 1 => match rng.gen_range(0..10) {
            0 => Regex::Zero,
            1 | 2 => Regex::One,
            _ => Regex::Letter(*alphabet.symbols().choose(rng).unwrap()),
        },
        2 => Regex::star(regex_of_size(rng, alphabet, 1)),
        _ => match rng.gen_range(0..7) {
            0 => Regex::star(regex_of_size(rng, alphabet, size - 1)),
            k => {
                let left = rng.gen_range(1..size - 1);
                let l = regex_of_size(rng, alphabet, left);
                let r = regex_of_size(rng, alphabet, size - 1 - left);
                if k <= 3 {
                    Regex::sum(l, r)
                } else {
                    Regex::seq(l, r)
                }
            }
        },
    }
}

/// Applies random associativity, commutativity and idempotence rewrites
/// of `+` anywhere in `e`.
pub fn aci_variant<R: Rng + ?Sized>(rng: &mut R, e: &Regex) -> Regex {
    let rewritten = match e {
        Regex::Zero | Regex::One | Regex::Letter(_) => e.clone(),
        Regex::Star(b) => Regex::star(aci_variant(rng, b)),
        Regex::Seq(l, r) => Regex::seq(aci_variant(rng, l), aci_variant(rng, r)),
        Regex::Sum(l, r) => {
            let (l, r) = (aci_variant(rng, l), aci_variant(rng, r));
            let mut out = if rng.gen_bool(0.5) {
                Regex::sum(r, l)
            } else {
                Regex::sum(l, r)
            };
            if rng.gen_bool(0.5) {
                out = reassociate(&out);
            }
            out
        }
    };
    if rng.gen_bool(0.1) {
        Regex::sum(rewritten.clone(), rewritten)
    } else {
        rewritten
    }
}

fn reassociate(e: &Regex) -> Regex {
    match e {
        Regex::Sum(l, r) => match (l.as_ref(), r.as_ref()) {
            (Regex::Sum(a, b), _) => Regex::sum(a.as_ref().clone(), Regex::sum(b.as_ref().clone(), r.as_ref().clone())),
            (_, Regex::Sum(b, c)) => Regex::sum(Regex::sum(l.as_ref().clone(), b.as_ref().clone()), c.as_ref().clone()),
            _ => e.clone(),
        },
        _ => e.clone(),
    }
}

/// A random complete DFA.
pub fn random_dfa<R: Rng + ?Sized>(rng: &mut R, max_states: usize, max_symbols: usize) -> TableDfa {
    let n = rng.gen_range(1..=max_states.max(1));
    let k = rng.gen_range(1..=max_symbols.max(1));
    TableDfa {
        outputs: (0..n).map(|_| rng.gen_bool(0.5)).collect(),
        transitions: (0..n).map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect()).collect(),
    }
}

/// A random rational pseudometric on `n` points with every off-diagonal
/// value in `[1/2, 1]`; any such table satisfies the triangle inequality.
pub fn random_pseudometric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ValueTable<Rational> {
    ValueTable::from_fn(n, |_, _| {
        let den: i64 = rng.gen_range(1..=16);
        let num: i64 = rng.gen_range(den..=2 * den);
        Rational::new(BigInt::from(num), BigInt::from(2 * den))
    })
}

/// A random rational in `[0, 1]` with denominator at most `max_den`.
pub fn random_unit_rational<R: Rng + ?Sized>(rng: &mut R, max_den: i64) -> Rational {
    let den = rng.gen_range(1..=max_den.max(1));
    let num = rng.gen_range(0..=den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `root` with one node changed at random: its distance, a side, its rule,
/// its premises or its midpoint. Shared copies of that node all change.
pub fn mutate_derivation<R: Rng + ?Sized>(rng: &mut R, root: &Proof) -> Proof {
    let mut nodes = Vec::new();
    let mut seen = HashSet::new();
    let mut stack = vec![root.clone()];
    while let Some(d) = stack.pop() {
        if seen.insert(Arc::as_ptr(&d)) {
            stack.extend(d.premises.iter().cloned());
            nodes.push(d);
        }
    }
    let target = nodes.choose(rng).unwrap().clone();
    let c = &root.conclusion;
    let letters: Vec<char> = c.left.letters().union(&c.right.letters()).copied().collect();
    let alphabet = Alphabet::new(if letters.is_empty() { vec!['a'] } else { letters }).unwrap();
    let mut changed = (*target).clone();
    match rng.gen_range(0..7) {
        0 => changed.conclusion.eps = &changed.conclusion.eps * random_unit_rational(rng, 8),
        1 => changed.conclusion.eps = random_unit_rational(rng, 8),
        2 => changed.conclusion.left = random_regex(rng, &alphabet, 6),
        3 => changed.conclusion.right = random_regex(rng, &alphabet, 6),
        4 => changed.rule = *Rule::ALL.choose(rng).unwrap(),
        5 => match rng.gen_range(0..3) {
            0 => changed.premises.reverse(),
            1 => {
                changed.premises.pop();
            }
            _ => {
                if let Some(p) = nodes.choose(rng) {
                    changed.premises.push(p.clone());
                }
            }
        },
        _ => changed.meta = Meta::Midpoint(random_regex(rng, &alphabet, 6)),
    }
    let mut memo = HashMap::new();
    replace(root, &target, Arc::new(changed), &mut memo)
}

fn replace(d: &Proof, target: &Proof, with: Proof, memo: &mut HashMap<*const Derivation, Proof>) -> Proof {
    if Arc::ptr_eq(d, target) {
        return with;
    }
    if let Some(p) = memo.get(&Arc::as_ptr(d)) {
        return p.clone();
    }
    let premises: Vec<Proof> = d
        .premises
        .iter()
        .map(|p| replace(p, target, with.clone(), memo))
        .collect();
    let out = if premises.iter().zip(&d.premises).all(|(a, b)| Arc::ptr_eq(a, b)) {
        d.clone()
    } else {
        Arc::new(Derivation {
            premises,
            ..(**d).clone()
        })
    };
    memo.insert(Arc::as_ptr(d), out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::canonicalize;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn sizes_are_bounded() {
        let mut rng = StdRng::seed_from_u64(1);
        let ab: Alphabet = "ab".parse().unwrap();
        for _ in 0..200 {
            let e = random_regex(&mut rng, &ab, 15);
            assert!((1..=15).contains(&e.size()));
        }
        for size in 1..20 {
            assert_eq!(regex_of_size(&mut rng, &ab, size).size(), size);
        }
    }

    #[test]
    fn aci_variants_share_canonical_form() {
        let mut rng = StdRng::seed_from_u64(2);
        let ab: Alphabet = "ab".parse().unwrap();
        for _ in 0..200 {
            let e = random_regex(&mut rng, &ab, 15);
            let v = aci_variant(&mut rng, &e);
            assert_eq!(canonicalize(&e), canonicalize(&v));
        }
    }

    #[test]
    fn random_tables_are_pseudometrics() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(1..8);
            assert!(random_pseudometric(&mut rng, n).is_pseudometric());
        }
    }
}
