//! Regular expression syntax: the AST, a parser and printer, and the
//! canonical form modulo associativity, commutativity and idempotence of `+`.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! expr   := term ('+' term)*
//! term   := factor (';'? factor)*      juxtaposition is sequencing
//! factor := atom '*'*
//! atom   := '0' | '1' | letter | '(' expr ')'
//! ```
//!
//! `+` and `;` associate to the left. Letters are lowercase ASCII.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

/// A regular expression over single-letter symbols.
///
/// The derived ordering is the total structural order used for canonical
/// forms: constructor first (`Zero < One < Letter < Seq < Star < Sum`), then
/// children left to right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regex {
    Zero,
    One,
    Letter(char),
    Seq(Arc<Regex>, Arc<Regex>),
    Star(Arc<Regex>),
    Sum(Arc<Regex>, Arc<Regex>),
}

impl Regex {
    pub fn letter(c: char) -> Regex {
        Regex::Letter(c)
    }

    pub fn sum(left: Regex, right: Regex) -> Regex {
        Regex::Sum(Arc::new(left), Arc::new(right))
    }

    pub fn seq(left: Regex, right: Regex) -> Regex {
        Regex::Seq(Arc::new(left), Arc::new(right))
    }

    pub fn star(body: Regex) -> Regex {
        Regex::Star(Arc::new(body))
    }

    /// The expression `1` if `bit` holds, `0` otherwise.
    pub fn bit(bit: bool) -> Regex {
        if bit {
            Regex::One
        } else {
            Regex::Zero
        }
    }

    /// Left-nested sum `((x₁ + x₂) + …) + xₙ`; `0` for an empty list.
    pub fn sum_of<I: IntoIterator<Item = Regex>>(items: I) -> Regex {
        items.into_iter().reduce(Regex::sum).unwrap_or(Regex::Zero)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Regex::Zero | Regex::One | Regex::Letter(_) => 1,
            Regex::Star(b) => 1 + b.size(),
            Regex::Sum(l, r) | Regex::Seq(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Letters occurring in the expression.
    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            Regex::Zero | Regex::One => {}
            Regex::Letter(c) => {
                out.insert(*c);
            }
            Regex::Star(b) => b.collect_letters(out),
            Regex::Sum(l, r) | Regex::Seq(l, r) => {
                l.collect_letters(out);
                r.collect_letters(out);
            }
        }
    }

    /// Top-level summands of a left- or right-nested sum, in order.
    pub fn summands(&self) -> Vec<&Regex> {
        let mut out = Vec::new();
        self.collect_summands(&mut out);
        out
    }

    fn collect_summands<'a>(&'a self, out: &mut Vec<&'a Regex>) {
        match self {
            Regex::Sum(l, r) => {
                l.collect_summands(out);
                r.collect_summands(out);
            }
            other => out.push(other),
        }
    }

    /// Parses `text`, requiring every letter to belong to `alphabet`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex, ParseError> {
        Parser::new(text, Some(alphabet)).parse()
    }

    /// Parses `text`, accepting any lowercase ASCII letter.
    pub fn parse_any(text: &str) -> Result<Regex, ParseError> {
        Parser::new(text, None).parse()
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Sum(..) => 0,
            Regex::Seq(..) => 1,
            Regex::Star(_) => 2,
            Regex::Zero | Regex::One | Regex::Letter(_) => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let paren = self.precedence() < ctx;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Regex::Zero => f.write_str("0")?,
            Regex::One => f.write_str("1")?,
            Regex::Letter(c) => write!(f, "{c}")?,
            Regex::Sum(l, r) => {
                l.fmt_at(f, 0)?;
                f.write_str(" + ")?;
                r.fmt_at(f, 1)?;
            }
            Regex::Seq(l, r) => {
                l.fmt_at(f, 1)?;
                f.write_str(";")?;
                r.fmt_at(f, 2)?;
            }
            Regex::Star(b) => {
                b.fmt_at(f, 2)?;
                f.write_str("*")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Debug for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Regex {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Regex::parse_any(s)
    }
}

/// Finite, ordered, duplicate-free set of input letters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet(Vec<char>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("alphabet must not be empty")]
    Empty,
    #[error("invalid alphabet symbol `{0}` (expected a-z)")]
    InvalidSymbol(char),
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Alphabet, AlphabetError> {
        let set: BTreeSet<char> = symbols.into_iter().collect();
        if let Some(bad) = set.iter().find(|c| !c.is_ascii_lowercase()) {
            return Err(AlphabetError::InvalidSymbol(*bad));
        }
        if set.is_empty() {
            return Err(AlphabetError::Empty);
        }
        Ok(Alphabet(set.into_iter().collect()))
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

    pub fn contains(&self, c: char) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.0.binary_search(&c).ok()
    }
}

impl FromStr for Alphabet {
    type Err = AlphabetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Alphabet::new(s.chars().filter(|c| !c.is_whitespace() && *c != ','))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Letters of `e` and `f` together; `{a}` when neither mentions a letter.
///
/// Letters absent from both expressions send both derivatives to `0`, so a
/// larger alphabet cannot produce a shorter distinguishing word.
pub fn infer_alphabet(e: &Regex, f: &Regex) -> Alphabet {
    let mut letters = e.letters();
    letters.extend(f.letters());
    if letters.is_empty() {
        letters.insert('a');
    }
    Alphabet(letters.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("unexpected `{found}` at position {pos}, expected {expected}")]
    Unexpected {
        pos: usize,
        found: char,
        expected: &'static str,
    },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEnd { expected: &'static str },
    #[error("letter `{letter}` at position {pos} is not in the alphabet")]
    UnknownLetter { pos: usize, letter: char },
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    cursor: usize,
    alphabet: Option<&'a Alphabet>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: Option<&'a Alphabet>) -> Self {
        Parser {
            chars: text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect(),
            cursor: 0,
            alphabet,
        }
    }

    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.cursor).copied()
    }

    fn parse(mut self) -> Result<Regex, ParseError> {
        if self.chars.is_empty() {
            return Err(ParseError::Empty);
        }
        let e = self.expr()?;
        match self.peek() {
            None => Ok(e),
            Some((pos, found)) => Err(ParseError::Unexpected {
                pos,
                found,
                expected: "`+`, `;`, `*` or end of input",
            }),
        }
    }

    fn expr(&mut self) -> Result<Regex, ParseError> {
        let mut acc = self.term()?;
        while let Some((_, '+')) = self.peek() {
            self.cursor += 1;
            let rhs = self.term()?;
            acc = Regex::sum(acc, rhs);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Regex, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some((_, ';')) => {
                    self.cursor += 1;
                    let rhs = self.factor()?;
                    acc = Regex::seq(acc, rhs);
                }
                Some((_, c)) if starts_atom(c) => {
                    let rhs = self.factor()?;
                    acc = Regex::seq(acc, rhs);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Regex, ParseError> {
        let mut acc = self.atom()?;
        while let Some((_, '*')) = self.peek() {
            self.cursor += 1;
            acc = Regex::star(acc);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Regex, ParseError> {
        const EXPECTED: &str = "`0`, `1`, a letter or `(`";
        let Some((pos, c)) = self.peek() else {
            return Err(ParseError::UnexpectedEnd { expected: EXPECTED });
        };
        self.cursor += 1;
        match c {
            '0' => Ok(Regex::Zero),
            '1' => Ok(Regex::One),
            '(' => {
                let inner = self.expr()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.cursor += 1;
                        Ok(inner)
                    }
                    Some((pos, found)) => Err(ParseError::Unexpected {
                        pos,
                        found,
                        expected: "`)`",
                    }),
                    None => Err(ParseError::UnexpectedEnd { expected: "`)`" }),
                }
            }
            c if c.is_ascii_lowercase() => match self.alphabet {
                Some(alphabet) if !alphabet.contains(c) => Err(ParseError::UnknownLetter { pos, letter: c }),
                _ => Ok(Regex::Letter(c)),
            },
            found => Err(ParseError::Unexpected {
                pos,
                found,
                expected: EXPECTED,
            }),
        }
    }
}

fn starts_atom(c: char) -> bool {
    c == '0' || c == '1' || c == '(' || c.is_ascii_lowercase()
}

/// Representative of an ACI-equivalence class of expressions.
///
/// Holds the strictly increasing list of top-level summands, each of which is
/// not a sum and is itself canonical beneath `;` and `*`. The class of `0`
/// is the single summand `0`: `0 + 0` and `0` are ACI-equivalent, and there
/// is no unit law, so `e + 0` keeps its `0` summand.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    summands: Vec<Regex>,
}

impl CanonicalForm {
    pub fn summands(&self) -> &[Regex] {
        &self.summands
    }

    /// Rebuilds an expression (left-nested sum of the summands).
    pub fn to_regex(&self) -> Regex {
        Regex::sum_of(self.summands.iter().cloned())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_regex(), f)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

pub fn canonicalize(e: &Regex) -> CanonicalForm {
    CanonicalForm {
        summands: canonical_summands(e),
    }
}

/// `canonicalize(e).to_regex()`
pub fn canonical_regex(e: &Regex) -> Regex {
    canonicalize(e).to_regex()
}

fn canonical_summands(e: &Regex) -> Vec<Regex> {
    match e {
        Regex::Zero | Regex::One | Regex::Letter(_) => vec![e.clone()],
        Regex::Seq(l, r) => vec![Regex::seq(canonical_regex(l), canonical_regex(r))],
        Regex::Star(b) => vec![Regex::star(canonical_regex(b))],
        Regex::Sum(l, r) => merge_sorted(canonical_summands(l), canonical_summands(r)),
    }
}

/// Union of two strictly increasing lists, still strictly increasing.
pub(crate) fn merge_sorted(left: Vec<Regex>, right: Vec<Regex>) -> Vec<Regex> {
    use std::cmp::Ordering;
    let mut out = Vec::with_capacity(left.len() + right.len());
    let mut li = left.into_iter().peekable();
    let mut ri = right.into_iter().peekable();
    loop {
        let ord = match (li.peek(), ri.peek()) {
            (Some(l), Some(r)) => l.cmp(r),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.extend(li.next()),
            Ordering::Greater => out.extend(ri.next()),
            Ordering::Equal => {
                out.extend(li.next());
                ri.next();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(s: &str) -> Regex {
        Regex::parse_any(s).unwrap()
    }

    fn ab() -> Alphabet {
        "ab".parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let a: Alphabet = "a".parse().unwrap();
        assert_eq!(Regex::parse("a*", &a).unwrap(), Regex::star(Regex::letter('a')));
        assert_eq!(
            Regex::parse("a+1", &a).unwrap(),
            Regex::sum(Regex::letter('a'), Regex::One)
        );
        assert_eq!(
            Regex::parse("ab*", &ab()).unwrap(),
            Regex::seq(Regex::letter('a'), Regex::star(Regex::letter('b')))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        // a + b;c* parses as a + (b;(c*))
        assert_eq!(
            re("a + b;c*"),
            Regex::sum(
                Regex::letter('a'),
                Regex::seq(Regex::letter('b'), Regex::star(Regex::letter('c')))
            )
        );
        assert_eq!(re("a+b+c"), Regex::sum(re("a+b"), re("c")));
        assert_eq!(re("abc"), Regex::seq(re("ab"), re("c")));
        assert_eq!(re("a;b;c"), re("abc"));
        assert_eq!(re(" ( a + 1 ) b "), Regex::seq(re("a+1"), re("b")));
        assert_eq!(re("a**"), Regex::star(re("a*")));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Regex::parse_any(""), Err(ParseError::Empty));
        assert_eq!(Regex::parse_any("   "), Err(ParseError::Empty));
        assert!(matches!(Regex::parse_any("a+"), Err(ParseError::UnexpectedEnd { .. })));
        assert!(matches!(Regex::parse_any("(a"), Err(ParseError::UnexpectedEnd { .. })));
        assert!(matches!(
            Regex::parse_any("a)"),
            Err(ParseError::Unexpected { pos: 1, found: ')', .. })
        ));
        assert!(matches!(
            Regex::parse_any("*a"),
            Err(ParseError::Unexpected { pos: 0, found: '*', .. })
        ));
        assert!(matches!(
            Regex::parse_any("A"),
            Err(ParseError::Unexpected { found: 'A', .. })
        ));
        let a: Alphabet = "a".parse().unwrap();
        assert_eq!(
            Regex::parse("a+b", &a),
            Err(ParseError::UnknownLetter { pos: 2, letter: 'b' })
        );
    }

    #[test]
    fn print_examples() {
        assert_eq!(Regex::star(Regex::letter('a')).to_string(), "a*");
        assert_eq!(Regex::sum(Regex::letter('a'), Regex::One).to_string(), "a + 1");
        assert_eq!(
            Regex::seq(Regex::sum(Regex::letter('a'), Regex::One), Regex::letter('b')).to_string(),
            "(a + 1);b"
        );
    }

    #[test]
    fn print_parenthesizes_right_nesting() {
        let right_sum = Regex::sum(re("a"), re("b + c"));
        assert_eq!(right_sum.to_string(), "a + (b + c)");
        let right_seq = Regex::seq(re("a"), re("bc"));
        assert_eq!(right_seq.to_string(), "a;(b;c)");
        assert_eq!(re("(ab)*").to_string(), "(a;b)*");
        assert_eq!(re("a**").to_string(), "a**");
        assert_eq!(re("(a+b)*;c").to_string(), "(a + b)*;c");
        for e in [right_sum, right_seq] {
            assert_eq!(re(&e.to_string()), e);
        }
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&re("a + a")).summands(), &[re("a")]);
        assert_eq!(
            canonicalize(&re("(a+b)+c")),
            canonicalize(&Regex::sum(re("a"), re("b+c")))
        );
        assert_eq!(canonicalize(&Regex::Zero).summands(), &[Regex::Zero]);
        assert_eq!(canonicalize(&re("0 + 0")), canonicalize(&Regex::Zero));
    }

    #[test]
    fn canonicalize_has_no_unit_law() {
        assert_ne!(canonicalize(&re("a + 0")), canonicalize(&re("a")));
        assert_ne!(canonicalize(&re("1;a")), canonicalize(&re("a")));
    }

    #[test]
    fn canonicalize_recurses_under_seq_and_star() {
        assert_eq!(canonicalize(&re("(b+a)*;(a+a)")), canonicalize(&re("(a+b)*;a")));
        assert_eq!(canonical_regex(&re("(b+a+b)*")), re("(a+b)*"));
    }

    #[test]
    fn structural_order() {
        let ordered = [re("0"), re("1"), re("a"), re("b"), re("a;a"), re("a*"), re("a+a")];
        for w in ordered.windows(2) {
            assert!(w[0] < w[1], "{:?} < {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn alphabet_inference() {
        assert_eq!(infer_alphabet(&re("a*"), &re("a+1")), "a".parse().unwrap());
        assert_eq!(infer_alphabet(&re("a"), &re("b")), "ab".parse().unwrap());
        assert_eq!(infer_alphabet(&re("1"), &re("0")), "a".parse().unwrap());
    }

    #[test]
    fn alphabet_validation() {
        assert_eq!(Alphabet::new([]), Err(AlphabetError::Empty));
        assert_eq!(Alphabet::new(['A']), Err(AlphabetError::InvalidSymbol('A')));
        let a = Alphabet::new(['b', 'a', 'b']).unwrap();
        assert_eq!(a.symbols(), &['a', 'b']);
        assert_eq!(a.to_string(), "{a,b}");
    }

    #[test]
    fn size_counts_nodes() {
        assert_eq!(re("a").size(), 1);
        assert_eq!(re("(a+1)*;b").size(), 6);
    }
}
