//! Naive reference semantics: languages as explicit sets of words.
//!
//! Nothing here uses derivatives or automata.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use crate::derivatives::Word;
use crate::metric::Config;
use crate::scalar::{rational_pow, Rational};
use crate::syntax::Regex;

/// The words of length at most `max_len` in a language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageSlice {
    pub max_len: usize,
    pub words: BTreeSet<Word>,
}

impl LanguageSlice {
    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Language of `e` truncated to words of length at most `max_len`.
pub fn denote(e: &Regex, max_len: usize) -> LanguageSlice {
    LanguageSlice {
        max_len,
        words: denote_set(e, max_len),
    }
}

fn denote_set(e: &Regex, max_len: usize) -> BTreeSet<Word> {
    match e {
        Regex::Zero => BTreeSet::new(),
        Regex::One => BTreeSet::from([Word::empty()]),
        Regex::Letter(c) => {
            if max_len >= 1 {
                BTreeSet::from([Word::new(vec![*c])])
            } else {
                BTreeSet::new()
            }
        }
        Regex::Sum(l, r) => {
            let mut out = denote_set(l, max_len);
            out.extend(denote_set(r, max_len));
            out
        }
        Regex::Seq(l, r) => concat(&denote_set(l, max_len), &denote_set(r, max_len), max_len),
        Regex::Star(b) => {
            let body = denote_set(b, max_len);
            let mut all = BTreeSet::from([Word::empty()]);
            let mut frontier = all.clone();
            loop {
                let next: BTreeSet<Word> = concat(&body, &frontier, max_len)
                    .into_iter()
                    .filter(|w| !all.contains(w))
                    .collect();
                if next.is_empty() {
                    break all;
                }
                all.extend(next.iter().cloned());
                frontier = next;
            }
        }
    }
}

fn concat(left: &BTreeSet<Word>, right: &BTreeSet<Word>, max_len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for u in left {
        for v in right {
            if u.len() + v.len() <= max_len {
                out.insert(u.concat(v));
            }
        }
    }
    out
}

type Node = usize;

const EMPTY: Node = 0;
const EPS: Node = 1;

/// Sets of words that all have the same length, stored as hash-consed
/// tries. Equal sets get equal node ids, so comparing two sets is one
/// integer comparison and dense sets such as all words of length 30 stay
/// small.
struct Tries {
    children: Vec<Vec<(char, Node)>>,
    interned: HashMap<Vec<(char, Node)>, Node>,
    union_memo: HashMap<(Node, Node), Node>,
    concat_memo: HashMap<(Node, Node), Node>,
}

impl Tries {
    fn new() -> Self {
        Tries {
            children: vec![Vec::new(), Vec::new()],
            interned: HashMap::new(),
            union_memo: HashMap::new(),
            concat_memo: HashMap::new(),
        }
    }

    fn node(&mut self, children: Vec<(char, Node)>) -> Node {
        if children.is_empty() {
            return EMPTY;
        }
        if let Some(&id) = self.interned.get(&children) {
            return id;
        }
        let id = self.children.len();
        self.children.push(children.clone());
        self.interned.insert(children, id);
        id
    }

    fn letter(&mut self, c: char) -> Node {
        self.node(vec![(c, EPS)])
    }

    fn union(&mut self, x: Node, y: Node) -> Node {
        if x == EMPTY || x == y {
            return y;
        }
        if y == EMPTY {
            return x;
        }
        let key = (x.min(y), x.max(y));
        if let Some(&hit) = self.union_memo.get(&key) {
            return hit;
        }
        let (xs, ys) = (self.children[x].clone(), self.children[y].clone());
        let mut merged = Vec::with_capacity(xs.len() + ys.len());
        let (mut i, mut j) = (0, 0);
        while i < xs.len() || j < ys.len() {
            match (xs.get(i), ys.get(j)) {
                (Some(&(a, u)), Some(&(b, v))) if a == b => {
                    let w = self.union(u, v);
                    merged.push((a, w));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, u)), Some(&(b, _))) if a < b => {
                    merged.push((a, u));
                    i += 1;
                }
                (Some(&(a, u)), None) => {
                    merged.push((a, u));
                    i += 1;
                }
                (_, Some(&(b, v))) => {
                    merged.push((b, v));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let out = self.node(merged);
        self.union_memo.insert(key, out);
        out
    }

    /// `{uv | u ∈ x, v ∈ y}`
    fn concat(&mut self, x: Node, y: Node) -> Node {
        if x == EMPTY || y == EMPTY {
            return EMPTY;
        }
        if x == EPS {
            return y;
        }
        if y == EPS {
            return x;
        }
        if let Some(&hit) = self.concat_memo.get(&(x, y)) {
            return hit;
        }
        let kids = self.children[x].clone();
        let replaced = kids.into_iter().map(|(c, u)| (c, self.concat(u, y))).collect();
        let out = self.node(replaced);
        self.concat_memo.insert((x, y), out);
        out
    }

    fn least_word(&self, mut x: Node, word: &mut Vec<char>) {
        while x != EPS {
            let (c, next) = self.children[x][0];
            word.push(c);
            x = next;
        }
    }

    /// Least word in the symmetric difference of two different sets of the
    /// same length.
    fn least_difference(&self, mut x: Node, mut y: Node) -> Word {
        let mut word = Vec::new();
        loop {
            if x == EMPTY {
                self.least_word(y, &mut word);
                return Word::new(word);
            }
            if y == EMPTY {
                self.least_word(x, &mut word);
                return Word::new(word);
            }
            let (xs, ys) = (&self.children[x], &self.children[y]);
            let mut letters: Vec<char> = xs.iter().chain(ys).map(|&(c, _)| c).collect();
            letters.sort_unstable();
            letters.dedup();
            let child = |kids: &[(char, Node)], c: char| kids.iter().find(|&&(d, _)| d == c).map_or(EMPTY, |&(_, n)| n);
            let c = *letters
                .iter()
                .find(|&&c| child(xs, c) != child(ys, c))
                .expect("sets are equal");
            word.push(c);
            let (nx, ny) = (child(xs, c), child(ys, c));
            x = nx;
            y = ny;
        }
    }
}

/// Words of exactly one length per subexpression, memoized by node address,
/// which stays valid while `root` is borrowed.
struct ExactLengths<'a> {
    memo: HashMap<(*const Regex, usize), Node>,
    _root: &'a Regex,
}

impl<'a> ExactLengths<'a> {
    fn new(root: &'a Regex) -> Self {
        ExactLengths {
            memo: HashMap::new(),
            _root: root,
        }
    }

    fn words(&mut self, tries: &mut Tries, e: &Regex, n: usize) -> Node {
        let key = (e as *const Regex, n);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let out = match e {
            Regex::Zero => EMPTY,
            Regex::One => {
                if n == 0 {
                    EPS
                } else {
                    EMPTY
                }
            }
            Regex::Letter(c) => {
                if n == 1 {
                    tries.letter(*c)
                } else {
                    EMPTY
                }
            }
            Regex::Sum(l, r) => {
                let (x, y) = (self.words(tries, l, n), self.words(tries, r, n));
                tries.union(x, y)
            }
            Regex::Seq(l, r) => {
                let mut out = EMPTY;
                for k in 0..=n {
                    let left = self.words(tries, l, k);
                    if left == EMPTY {
                        continue;
                    }
                    let right = self.words(tries, r, n - k);
                    let part = tries.concat(left, right);
                    out = tries.union(out, part);
                }
                out
            }
            Regex::Star(b) => {
                if n == 0 {
                    EPS
                } else {
                    // the first iteration consumes k ≥ 1 letters
                    let mut out = EMPTY;
                    for k in 1..=n {
                        let head = self.words(tries, b, k);
                        if head == EMPTY {
                            continue;
                        }
                        let rest = self.words(tries, e, n - k);
                        let part = tries.concat(head, rest);
                        out = tries.union(out, part);
                    }
                    out
                }
            }
        };
        self.memo.insert(key, out);
        out
    }
}

/// `λ^|w|` for the first word `w`, shortest first and then in alphabet
/// order, that belongs to exactly one of the two languages; `0` if no word of
/// length at most `max_len` does.
pub fn brute_distance(e: &Regex, f: &Regex, max_len: usize, cfg: &Config) -> Rational {
    match brute_witness(e, f, max_len) {
        Some(w) => rational_pow(cfg.lambda(), w.len() as u32),
        None => Rational::zero(),
    }
}

/// The word [`brute_distance`] stops at.
pub fn brute_witness(e: &Regex, f: &Regex, max_len: usize) -> Option<Word> {
    let mut tries = Tries::new();
    let mut left = ExactLengths::new(e);
    let mut right = ExactLengths::new(f);
    for n in 0..=max_len {
        let l = left.words(&mut tries, e, n);
        let r = right.words(&mut tries, f, n);
        if l != r {
            return Some(tries.least_difference(l, r));
        }
    }
    None
}

#[cfg(test)]
impl Tries {
    fn all_words(&self, x: Node) -> Vec<Word> {
        match x {
            EMPTY => Vec::new(),
            EPS => vec![Word::empty()],
            _ => self.children[x]
                .iter()
                .flat_map(|&(c, u)| {
                    self.all_words(u)
                        .into_iter()
                        .map(move |w| Word::new(vec![c]).concat(&w))
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(s: &str) -> Regex {
        Regex::parse_any(s).unwrap()
    }

    fn words(ws: &[&str]) -> BTreeSet<Word> {
        ws.iter().map(|w| Word::from(*w)).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn denote_examples() {
        assert_eq!(denote(&re("a+1"), 3).words, words(&["", "a"]));
        assert_eq!(denote(&re("a*"), 3).words, words(&["", "a", "aa", "aaa"]));
        assert!(denote(&re("0"), 3).is_empty());
        assert_eq!(denote(&re("(ab)*"), 4).words, words(&["", "ab", "abab"]));
        assert_eq!(denote(&re("(a+1)*"), 2).words, words(&["", "a", "aa"]));
    }

    #[test]
    fn brute_distance_examples() {
        let cfg = Config::default();
        assert_eq!(brute_distance(&re("a*"), &re("a+1"), 5, &cfg), q(1, 4));
        assert_eq!(brute_distance(&re("a*b"), &re("a*b"), 5, &cfg), q(0, 1));
        assert_eq!(brute_distance(&re("a"), &re("b"), 5, &cfg), q(1, 2));
        assert_eq!(brute_witness(&re("a"), &re("b"), 5), Some("a".into()));
        assert_eq!(brute_distance(&re("a*"), &re("0"), 5, &cfg), q(1, 1));
    }

    #[test]
    fn exact_lengths_match_truncated_sets() {
        for text in ["(a+b)*a", "(ab+1)*(b+0)", "((a*)*b)*", "0*;a"] {
            let e = re(text);
            let slice = denote(&e, 5);
            let mut tries = Tries::new();
            let mut exact = ExactLengths::new(&e);
            let mut union = BTreeSet::new();
            for n in 0..=5 {
                let node = exact.words(&mut tries, &e, n);
                union.extend(tries.all_words(node));
            }
            assert_eq!(union, slice.words, "{text}");
        }
    }
}
