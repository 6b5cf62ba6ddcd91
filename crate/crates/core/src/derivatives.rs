//! Brzozowski derivatives.

use std::fmt;
use std::sync::Arc;

use crate::syntax::{Alphabet, Regex};

/// A finite word over an alphabet; the empty word is allowed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<char>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<char>) -> Word {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, c: char) {
        self.0.push(c);
    }

    /// Concatenation `self ⋄ other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        Word(out)
    }

    /// True when every symbol is in `alphabet`.
    pub fn is_over(&self, alphabet: &Alphabet) -> bool {
        self.0.iter().all(|&c| alphabet.contains(c))
    }

    /// Order used for witnesses: shorter first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl From<&str> for Word {
    fn from(s: &str) -> Self {
        Word(s.chars().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// Output derivative: whether `e` accepts the empty word.
pub fn output(e: &Regex) -> bool {
    match e {
        Regex::Zero | Regex::Letter(_) => false,
        Regex::One | Regex::Star(_) => true,
        Regex::Sum(l, r) => output(l) || output(r),
        Regex::Seq(l, r) => output(l) && output(r),
    }
}

/// Transition derivative `e_a`.
///
/// `(e;f)_a` is `e_a;f + f_a` when `e` accepts the empty word and
/// `e_a;f + 0` otherwise, so its second summand is always `1;f_a` or `0;f_a`
/// with the unit and zero already applied. `(e*)_a = e_a;e*`.
pub fn step(e: &Regex, a: char) -> Regex {
    match e {
        Regex::Zero | Regex::One => Regex::Zero,
        Regex::Letter(b) => Regex::bit(*b == a),
        Regex::Sum(l, r) => Regex::sum(step(l, a), step(r, a)),
        Regex::Seq(l, r) => {
            let head = Regex::Seq(Arc::new(step(l, a)), r.clone());
            let tail = if output(l) { step(r, a) } else { Regex::Zero };
            Regex::sum(head, tail)
        }
        Regex::Star(b) => Regex::Seq(Arc::new(step(b, a)), Arc::new(e.clone())),
    }
}

/// `e_w`, the left fold of [`step`] over `w`.
pub fn word_derivative(e: &Regex, w: &Word) -> Regex {
    w.symbols().iter().fold(e.clone(), |acc, &a| step(&acc, a))
}

/// Whether `w` belongs to the language of `e`.
pub fn member(e: &Regex, w: &Word) -> bool {
    output(&word_derivative(e, w))
}

/// `a₁;e_{a₁} + … + aₙ;e_{aₙ} + o(e)`, summands in alphabet order and
/// nested to the left, with the output bit as the last summand.
pub fn fundamental_decomposition(e: &Regex, alphabet: &Alphabet) -> Regex {
    let prefixed = alphabet
        .symbols()
        .iter()
        .map(|&a| Regex::seq(Regex::letter(a), step(e, a)));
    Regex::sum_of(prefixed.chain(std::iter::once(Regex::bit(output(e)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(s: &str) -> Regex {
        Regex::parse_any(s).unwrap()
    }

    #[test]
    fn output_examples() {
        assert!(output(&re("a*")));
        assert!(!output(&re("0")));
        assert!(!output(&re("a;b")));
        assert!(output(&re("a + 1")));
        assert!(output(&re("(a+1)(b*)")));
    }

    #[test]
    fn step_examples() {
        assert_eq!(step(&re("a"), 'a'), Regex::One);
        assert_eq!(step(&re("a"), 'b'), Regex::Zero);
        assert_eq!(step(&re("a*"), 'a'), Regex::seq(Regex::One, re("a*")));
        assert_eq!(step(&re("a+1"), 'a'), Regex::sum(Regex::One, Regex::Zero));
    }

    #[test]
    fn step_through_sequence() {
        // (1;a*)_a = 0;a* + (a*)_a
        let e = Regex::seq(Regex::One, re("a*"));
        assert_eq!(
            step(&e, 'a'),
            Regex::sum(Regex::seq(Regex::Zero, re("a*")), Regex::seq(Regex::One, re("a*")))
        );
        // (a;b)_a = 1;b + 0
        assert_eq!(step(&re("ab"), 'a'), Regex::sum(re("1;b"), Regex::Zero));
    }

    #[test]
    fn word_derivative_examples() {
        assert_eq!(word_derivative(&re("a*"), &Word::empty()), re("a*"));
        // a* -a-> 1;a* -a-> 0;a* + 1;a*
        assert_eq!(
            word_derivative(&re("a*"), &"aa".into()),
            Regex::sum(Regex::seq(Regex::Zero, re("a*")), Regex::seq(Regex::One, re("a*")))
        );
        let aa = word_derivative(&re("a"), &"aa".into());
        assert_eq!(aa, Regex::Zero);
        assert!(!output(&aa));
    }

    #[test]
    fn membership_examples() {
        assert!(member(&re("a*"), &"aa".into()));
        assert!(!member(&re("a+1"), &"aa".into()));
        assert!(member(&re("a+1"), &"a".into()));
        assert!(!member(&re("0"), &Word::empty()));
        assert!(member(&re("(ab)*"), &"abab".into()));
        assert!(!member(&re("(ab)*"), &"aba".into()));
    }

    #[test]
    fn fundamental_decomposition_examples() {
        let a: Alphabet = "a".parse().unwrap();
        assert_eq!(fundamental_decomposition(&re("a"), &a), re("a;1 + 0"));
        assert_eq!(fundamental_decomposition(&re("1"), &a), re("a;0 + 1"));
        assert_eq!(
            fundamental_decomposition(&re("a*"), &a),
            Regex::sum(Regex::seq(re("a"), Regex::seq(Regex::One, re("a*"))), Regex::One)
        );
        let ab: Alphabet = "ab".parse().unwrap();
        assert_eq!(fundamental_decomposition(&re("b"), &ab), re("a;0 + b;1 + 0"));
    }

    #[test]
    fn word_display() {
        assert_eq!(Word::from("ab").to_string(), "ab");
        assert_eq!(Word::empty().to_string(), "");
        assert!(Word::from("b").shortlex_cmp(&Word::from("aa")).is_lt());
    }
}
