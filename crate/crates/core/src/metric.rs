//! Behavioural pseudometrics on deterministic automata.
//!
//! Distances reachable from the discrete metric by the lifting operator are
//! all of the form `λⁿ` or `0`, so the descent works on exponents
//! ([`ExponentValue`]) with plain integer arithmetic. Tables with arbitrary
//! values live in [`ValueTable`].

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::automaton::{build, BuildError, QuotientAutomaton, StateId};
use crate::derivatives::Word;
use crate::scalar::{rational_pow, Rational, Scalar};
use crate::syntax::{infer_alphabet, Alphabet, Regex};

/// `λⁿ` stored as `Finite(n)`, and `0` stored as `Infinite`.
///
/// Ordered by the value it denotes, so `Infinite` is the least element and
/// `Finite(0)` (the value 1) the greatest.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentValue {
    Finite(u32),
    Infinite,
}

impl ExponentValue {
    /// The value 1.
    pub const ONE: ExponentValue = ExponentValue::Finite(0);
    /// The value 0.
    pub const ZERO: ExponentValue = ExponentValue::Infinite;

    pub fn exponent(self) -> Option<u32> {
        match self {
            ExponentValue::Finite(n) => Some(n),
            ExponentValue::Infinite => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == ExponentValue::Infinite
    }

    /// Multiplication by `λ`.
    pub fn discount(self) -> ExponentValue {
        match self {
            ExponentValue::Finite(n) => ExponentValue::Finite(n + 1),
            ExponentValue::Infinite => ExponentValue::Infinite,
        }
    }

    pub fn to_rational(self, lambda: &Rational) -> Rational {
        match self {
            ExponentValue::Finite(n) => rational_pow(lambda, n),
            ExponentValue::Infinite => Rational::zero(),
        }
    }

    pub fn to_scalar<S: Scalar>(self, lambda: &S) -> S {
        match self {
            ExponentValue::Finite(n) => (0..n).fold(S::one(), |acc, _| acc * lambda.clone()),
            ExponentValue::Infinite => S::zero(),
        }
    }
}

impl Ord for ExponentValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExponentValue::Infinite, ExponentValue::Infinite) => Ordering::Equal,
            (ExponentValue::Infinite, _) => Ordering::Less,
            (_, ExponentValue::Infinite) => Ordering::Greater,
            (ExponentValue::Finite(a), ExponentValue::Finite(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for ExponentValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Finite(n) => write!(f, "λ^{n}"),
            ExponentValue::Infinite => f.write_str("0"),
        }
    }
}

impl fmt::Display for ExponentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExponentValue::Finite(n) => write!(f, "{n}"),
            ExponentValue::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("lambda must lie strictly between 0 and 1, got {0}")]
    LambdaOutOfRange(Rational),
}

pub const DEFAULT_SPOT_CHECKS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    lambda: Rational,
    spot_checks: usize,
}

impl Config {
    pub fn new(lambda: Rational) -> Result<Config, ConfigError> {
        if lambda <= Rational::zero() || lambda >= Rational::one() {
            return Err(ConfigError::LambdaOutOfRange(lambda));
        }
        Ok(Config {
            lambda,
            spot_checks: DEFAULT_SPOT_CHECKS,
        })
    }

    /// Number of template instances checked beyond any listed in the certificate.
    pub fn with_spot_checks(mut self, k: usize) -> Config {
        self.spot_checks = k;
        self
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn spot_checks(&self) -> usize {
        self.spot_checks
    }

    /// `λⁿ`
    pub fn pow(&self, n: u32) -> Rational {
        rational_pow(&self.lambda, n)
    }

    pub fn value(&self, e: ExponentValue) -> Rational {
        e.to_rational(&self.lambda)
    }
}

impl Default for Config {
    fn default() -> Self {
        Config::new(Rational::new(1.into(), 2.into())).unwrap()
    }
}

/// A deterministic automaton with states `0..num_states()` and symbols
/// `0..num_symbols()`.
pub trait Dfa {
    fn num_states(&self) -> usize;
    fn num_symbols(&self) -> usize;
    fn is_accepting(&self, s: usize) -> bool;
    fn successor(&self, s: usize, symbol: usize) -> usize;
}

impl Dfa for QuotientAutomaton {
    fn num_states(&self) -> usize {
        self.len()
    }

    fn num_symbols(&self) -> usize {
        self.alphabet().len()
    }

    fn is_accepting(&self, s: usize) -> bool {
        self.output(StateId(s))
    }

    fn successor(&self, s: usize, symbol: usize) -> usize {
        self.next(StateId(s), symbol).0
    }
}

/// A DFA given by explicit tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableDfa {
    pub outputs: Vec<bool>,
    pub transitions: Vec<Vec<usize>>,
}

impl Dfa for TableDfa {
    fn num_states(&self) -> usize {
        self.outputs.len()
    }

    fn num_symbols(&self) -> usize {
        self.transitions.first().map_or(0, Vec::len)
    }

    fn is_accepting(&self, s: usize) -> bool {
        self.outputs[s]
    }

    fn successor(&self, s: usize, symbol: usize) -> usize {
        self.transitions[s][symbol]
    }
}

fn tri_index(s: usize, t: usize) -> usize {
    let (i, j) = if s < t { (s, t) } else { (t, s) };
    j * (j - 1) / 2 + i
}

fn tri_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Exponent-valued pseudometric on `n` states; the diagonal is implicitly 0.
#[derive(Clone, PartialEq, Eq)]
pub struct MetricTable {
    n: usize,
    entries: Vec<ExponentValue>,
}

impl MetricTable {
    /// The discrete metric: every pair of distinct states at distance 1.
    pub fn top(n: usize) -> MetricTable {
        MetricTable {
            n,
            entries: vec![ExponentValue::ONE; tri_len(n)],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, s: usize, t: usize) -> ExponentValue {
        if s == t {
            ExponentValue::ZERO
        } else {
            self.entries[tri_index(s, t)]
        }
    }

    /// # Panics
    /// If `s == t`.
    pub fn set(&mut self, s: usize, t: usize, v: ExponentValue) {
        assert_ne!(s, t, "diagonal entries are fixed at 0");
        self.entries[tri_index(s, t)] = v;
    }

    /// Off-diagonal entries as `((s, t), value)` with `s < t`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), ExponentValue)> + '_ {
        (1..self.n).flat_map(move |j| (0..j).map(move |i| ((i, j), self.entries[tri_index(i, j)])))
    }

    /// Pointwise `self ⊑ other`.
    pub fn leq(&self, other: &MetricTable) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    pub fn satisfies_triangle(&self, cfg: &Config) -> bool {
        let values = ValueTable::from_exponents(self, cfg.lambda());
        values.is_pseudometric()
    }
}

impl fmt::Debug for MetricTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries().map(|((s, t), v)| (format!("{s},{t}"), v)))
            .finish()
    }
}

/// One application of the lifting operator to an exponent table.
pub fn phi<D: Dfa + ?Sized>(dfa: &D, d: &MetricTable) -> MetricTable {
    let n = dfa.num_states();
    assert_eq!(d.len(), n, "table and automaton sizes differ");
    let mut out = MetricTable::top(n);
    for j in 1..n {
        for i in 0..j {
            let v = if dfa.is_accepting(i) != dfa.is_accepting(j) {
                ExponentValue::ONE
            } else {
                (0..dfa.num_symbols())
                    .map(|k| d.get(dfa.successor(i, k), dfa.successor(j, k)))
                    .max()
                    .unwrap_or(ExponentValue::ZERO)
                    .discount()
            };
            out.entries[tri_index(i, j)] = v;
        }
    }
    out
}

/// Non-diagonal state pairs of a DFA, with successor links.
#[derive(Debug, Clone)]
pub struct PairSpace {
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    /// Per pair and symbol: index of the successor pair, `None` when diagonal.
    succ: Vec<Vec<Option<usize>>>,
    differ: Vec<bool>,
}

impl PairSpace {
    /// Every unordered pair of distinct states.
    pub fn full<D: Dfa + ?Sized>(dfa: &D) -> PairSpace {
        let n = dfa.num_states();
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        Self::from_pairs(dfa, pairs)
    }

    /// Non-diagonal pairs reachable from `{s, t}`, in breadth-first order.
    pub fn reachable<D: Dfa + ?Sized>(dfa: &D, s: usize, t: usize) -> PairSpace {
        let mut pairs = Vec::new();
        let mut seen = HashMap::new();
        if s != t {
            let start = sorted(s, t);
            seen.insert(start, ());
            pairs.push(start);
        }
        let mut head = 0;
        while head < pairs.len() {
            let (u, v) = pairs[head];
            head += 1;
            for k in 0..dfa.num_symbols() {
                let (x, y) = (dfa.successor(u, k), dfa.successor(v, k));
                if x != y && seen.insert(sorted(x, y), ()).is_none() {
                    pairs.push(sorted(x, y));
                }
            }
        }
        Self::from_pairs(dfa, pairs)
    }

    fn from_pairs<D: Dfa + ?Sized>(dfa: &D, pairs: Vec<(usize, usize)>) -> PairSpace {
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let succ = pairs
            .iter()
            .map(|&(u, v)| {
                (0..dfa.num_symbols())
                    .map(|k| {
                        let (x, y) = (dfa.successor(u, k), dfa.successor(v, k));
                        (x != y).then(|| index[&sorted(x, y)])
                    })
                    .collect()
            })
            .collect();
        let differ = pairs
            .iter()
            .map(|&(u, v)| dfa.is_accepting(u) != dfa.is_accepting(v))
            .collect();
        PairSpace {
            pairs,
            index,
            succ,
            differ,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn position(&self, s: usize, t: usize) -> Option<usize> {
        self.index.get(&sorted(s, t)).copied()
    }

    fn phi(&self, d: &[ExponentValue]) -> Vec<ExponentValue> {
        (0..self.pairs.len())
            .map(|p| {
                if self.differ[p] {
                    ExponentValue::ONE
                } else {
                    self.succ[p]
                        .iter()
                        .map(|q| q.map_or(ExponentValue::ZERO, |q| d[q]))
                        .max()
                        .unwrap_or(ExponentValue::ZERO)
                        .discount()
                }
            })
            .collect()
    }

    /// Kleene descent from the discrete metric, restricted to this space.
    ///
    /// Stops at a fixpoint, or once an iteration finalizes no pair (no new
    /// distinguishing word of the current length exists), or after
    /// `len()` iterations. Pairs still undistinguished are then set to 0.
    pub fn descend(&self) -> SpaceDescent {
        let p = self.pairs.len();
        let mut trace = vec![vec![ExponentValue::ONE; p]];
        let mut i: u32 = 0;
        loop {
            let cur = trace.last().unwrap();
            let next = self.phi(cur);
            let stable = &next == cur;
            let finalized_any = next.contains(&ExponentValue::Finite(i));
            trace.push(next);
            i += 1;
            if stable || !finalized_any || i as usize >= p {
                break;
            }
        }
        let mut fixpoint = trace.last().unwrap().clone();
        let open = ExponentValue::Finite(i);
        for v in fixpoint.iter_mut() {
            if *v == open {
                *v = ExponentValue::ZERO;
            }
        }
        debug_assert!((0..p).all(|q| fixpoint[q] != ExponentValue::ZERO || !self.differ[q]));
        debug_assert_eq!(self.phi(&fixpoint), fixpoint, "descent did not reach a fixpoint");
        SpaceDescent {
            trace,
            fixpoint,
            iterations: i as usize,
        }
    }
}

fn sorted(s: usize, t: usize) -> (usize, usize) {
    if s <= t {
        (s, t)
    } else {
        (t, s)
    }
}

/// Result of [`PairSpace::descend`], indexed by pair position.
#[derive(Debug, Clone)]
pub struct SpaceDescent {
    pub trace: Vec<Vec<ExponentValue>>,
    pub fixpoint: Vec<ExponentValue>,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct Descent {
    pub fixpoint: MetricTable,
    /// `Ψ⁽⁰⁾ = ⊤, Ψ⁽¹⁾, …` up to the last computed iterate.
    pub trace: Vec<MetricTable>,
    pub iterations: usize,
}

/// Descent over all state pairs of `dfa`.
pub fn kleene_descent<D: Dfa + ?Sized>(dfa: &D) -> Descent {
    let n = dfa.num_states();
    let space = PairSpace::full(dfa);
    let run = space.descend();
    // the full space enumerates pairs in triangular order
    let table = |entries: Vec<ExponentValue>| MetricTable { n, entries };
    Descent {
        fixpoint: table(run.fixpoint),
        trace: run.trace.into_iter().map(table).collect(),
        iterations: run.iterations,
    }
}

/// The approximants `Ψ⁽ⁱ⁾` on the pairs reachable from one root pair,
/// extended on demand.
#[derive(Debug, Clone)]
pub struct Approximants {
    space: PairSpace,
    trace: Vec<Vec<ExponentValue>>,
}

impl Approximants {
    pub fn new<D: Dfa + ?Sized>(dfa: &D, s: usize, t: usize) -> Approximants {
        let space = PairSpace::reachable(dfa, s, t);
        let p = space.len();
        Approximants {
            space,
            trace: vec![vec![ExponentValue::ONE; p]],
        }
    }

    pub fn space(&self) -> &PairSpace {
        &self.space
    }

    /// `Ψ⁽ⁱ⁾(s, t)`; 0 on the diagonal.
    pub fn at(&mut self, i: usize, s: usize, t: usize) -> ExponentValue {
        if s == t {
            return ExponentValue::ZERO;
        }
        let q = self
            .space
            .position(s, t)
            .expect("pair is not reachable from the root pair");
        while self.trace.len() <= i {
            let next = self.space.phi(self.trace.last().unwrap());
            self.trace.push(next);
        }
        self.trace[i][q]
    }
}

/// Distance between two expressions together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distance {
    pub exponent: ExponentValue,
    pub value: Rational,
    pub witness: Option<Word>,
    pub alphabet: Alphabet,
    /// Descent iterations on the pairs reachable from the root pair.
    pub iterations: usize,
    pub states: usize,
    pub pairs: usize,
    /// Root-pair values `Ψ⁽⁰⁾, Ψ⁽¹⁾, …` of the descent.
    pub root_trace: Vec<ExponentValue>,
}

/// Distance with the alphabet inferred from both expressions.
pub fn distance(e: &Regex, f: &Regex, cfg: &Config) -> Result<Distance, BuildError> {
    distance_over(e, f, &infer_alphabet(e, f), cfg)
}

pub fn distance_over(e: &Regex, f: &Regex, alphabet: &Alphabet, cfg: &Config) -> Result<Distance, BuildError> {
    let aut = build(&[e.clone(), f.clone()], alphabet)?;
    let (s, t) = (aut.roots()[0], aut.roots()[1]);
    let space = PairSpace::reachable(&aut, s.0, t.0);
    let run = space.descend();
    let exponent = if s == t { ExponentValue::ZERO } else { run.fixpoint[0] };
    let witness = shortest_distinguishing(&aut, s, t);
    debug_assert_eq!(
        witness.as_ref().map(|w| w.len() as u32),
        exponent.exponent(),
        "descent and breadth-first search disagree"
    );
    let root_trace = if s == t {
        vec![ExponentValue::ZERO]
    } else {
        run.trace.iter().map(|d| d[0]).collect()
    };
    Ok(Distance {
        exponent,
        value: cfg.value(exponent),
        witness,
        alphabet: alphabet.clone(),
        iterations: run.iterations,
        states: aut.len(),
        pairs: aut.product_pairs(s, t).len(),
        root_trace,
    })
}

/// Shortest word distinguishing `e` from `f`, least in alphabet order among
/// the shortest; `None` when their languages are equal.
pub fn witness(e: &Regex, f: &Regex, _cfg: &Config) -> Result<Option<Word>, BuildError> {
    let aut = build(&[e.clone(), f.clone()], &infer_alphabet(e, f))?;
    Ok(shortest_distinguishing(&aut, aut.roots()[0], aut.roots()[1]))
}

/// Breadth-first search over product pairs, expanding symbols in alphabet
/// order, so the first pair found with differing outputs is reached by the
/// shortlex-least distinguishing word.
pub fn shortest_distinguishing(aut: &QuotientAutomaton, s: StateId, t: StateId) -> Option<Word> {
    type Pair = (StateId, StateId);
    let mut parent: HashMap<Pair, Option<(Pair, char)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert((s, t), None);
    queue.push_back((s, t));
    while let Some((u, v)) = queue.pop_front() {
        if aut.output(u) != aut.output(v) {
            let mut word = Vec::new();
            let mut cur = (u, v);
            while let Some(Some((prev, c))) = parent.get(&cur) {
                word.push(*c);
                cur = *prev;
            }
            word.reverse();
            return Some(Word::new(word));
        }
        if u == v {
            continue;
        }
        for (k, &c) in aut.alphabet().symbols().iter().enumerate() {
            let next = (aut.next(u, k), aut.next(v, k));
            if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(next) {
                slot.insert(Some(((u, v), c)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Pseudometric table with values in an arbitrary [`Scalar`].
#[derive(Clone, PartialEq)]
pub struct ValueTable<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> ValueTable<S> {
    pub fn zero(n: usize) -> Self {
        ValueTable {
            n,
            entries: vec![S::zero(); tri_len(n)],
        }
    }

    pub fn top(n: usize) -> Self {
        ValueTable {
            n,
            entries: vec![S::one(); tri_len(n)],
        }
    }

    /// Builds a table from `f(s, t)` for `s < t`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(tri_len(n));
        for j in 1..n {
            for i in 0..j {
                entries.push(f(i, j));
            }
        }
        ValueTable { n, entries }
    }

    pub fn from_exponents(table: &MetricTable, lambda: &S) -> Self
    where
        S: Scalar,
    {
        ValueTable {
            n: table.n,
            entries: table.entries.iter().map(|e| e.to_scalar(lambda)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, s: usize, t: usize) -> S {
        if s == t {
            S::zero()
        } else {
            self.entries[tri_index(s, t)].clone()
        }
    }

    pub fn set(&mut self, s: usize, t: usize, v: S) {
        assert_ne!(s, t, "diagonal entries are fixed at 0");
        self.entries[tri_index(s, t)] = v;
    }

    /// `max{d₂(o(s), o(t)), λ · maxₐ d(sₐ, tₐ)}` at every pair.
    pub fn phi<D: Dfa + ?Sized>(&self, dfa: &D, lambda: &S) -> Self {
        assert_eq!(self.n, dfa.num_states(), "table and automaton sizes differ");
        Self::from_fn(self.n, |i, j| {
            let mut best = S::zero();
            for k in 0..dfa.num_symbols() {
                let v = self.get(dfa.successor(i, k), dfa.successor(j, k));
                if v > best {
                    best = v;
                }
            }
            let discounted = lambda.clone() * best;
            let bit = if dfa.is_accepting(i) == dfa.is_accepting(j) {
                S::zero()
            } else {
                S::one()
            };
            if bit > discounted {
                bit
            } else {
                discounted
            }
        })
    }

    /// Pointwise `self ⊑ other`.
    pub fn leq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// `sup |self - other|` over all pairs.
    pub fn sup_distance(&self, other: &Self) -> S {
        assert_eq!(self.n, other.n);
        let mut best = S::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            let d = a.abs_diff(b);
            if d > best {
                best = d;
            }
        }
        best
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        ValueTable {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| if a >= b { a.clone() } else { b.clone() })
                .collect(),
        }
    }

    /// Nonnegative, bounded by 1, and satisfies the triangle inequality.
    pub fn is_pseudometric(&self) -> bool {
        let in_range = self.entries.iter().all(|v| *v >= S::zero() && *v <= S::one());
        in_range
            && (0..self.n)
                .all(|s| (0..self.n).all(|t| (0..self.n).all(|u| self.get(s, u) <= self.get(s, t) + self.get(t, u))))
    }
}

impl<S: fmt::Debug> fmt::Debug for ValueTable<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        let mut k = 0;
        for j in 1..self.n {
            for i in 0..j {
                m.entry(&format!("{i},{j}"), &self.entries[k]);
                k += 1;
            }
        }
        m.finish()
    }
}

/// Iterates the lifting operator upwards from the zero table until it stops
/// changing, or `None` after `max_iterations` steps.
pub fn ascend_from_zero<S: Scalar, D: Dfa + ?Sized>(
    dfa: &D,
    lambda: &S,
    max_iterations: usize,
) -> Option<ValueTable<S>> {
    let mut cur = ValueTable::zero(dfa.num_states());
    for _ in 0..max_iterations {
        let next = cur.phi(dfa, lambda);
        if next == cur {
            return Some(cur);
        }
        cur = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(s: &str) -> Regex {
        Regex::parse_any(s).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exponent_order_follows_value() {
        use ExponentValue::*;
        assert!(Finite(0) > Finite(1));
        assert!(Finite(40) > Infinite);
        assert_eq!(Finite(1).max(Finite(3)), Finite(1));
        assert_eq!(Infinite.discount(), Infinite);
        assert_eq!(Finite(2).to_rational(&q(1, 3)), q(1, 9));
    }

    #[test]
    fn config_rejects_bad_lambda() {
        assert!(Config::new(q(0, 1)).is_err());
        assert!(Config::new(q(1, 1)).is_err());
        assert!(Config::new(q(3, 2)).is_err());
        assert_eq!(Config::default().lambda(), &q(1, 2));
        assert_eq!(Config::default().spot_checks(), 8);
    }

    #[test]
    fn top_tables() {
        assert_eq!(MetricTable::top(1).entries().count(), 0);
        let t2 = MetricTable::top(2);
        assert_eq!(t2.get(0, 1), ExponentValue::ONE);
        assert_eq!(t2.get(1, 0), ExponentValue::ONE);
        assert_eq!(t2.get(1, 1), ExponentValue::ZERO);
        assert!(MetricTable::top(3).satisfies_triangle(&Config::default()));
    }

    #[test]
    fn phi_on_star_against_option() {
        let aut = build(&[re("a*"), re("a+1")], &"a".parse().unwrap()).unwrap();
        let (s, t) = (aut.roots()[0].0, aut.roots()[1].0);
        let d1 = phi(&aut, &MetricTable::top(aut.len()));
        assert_eq!(d1.get(s, t), ExponentValue::Finite(1));
        // a* against the sink 0: outputs differ
        let zero = aut.state_of(&Regex::Zero).unwrap().0;
        assert_eq!(d1.get(s, zero), ExponentValue::ONE);
    }

    #[test]
    fn phi_with_diagonal_successors_gives_zero() {
        // two accepting states that both step to the same state
        let dfa = TableDfa {
            outputs: vec![true, true, false],
            transitions: vec![vec![2], vec![2], vec![2]],
        };
        let d1 = phi(&dfa, &MetricTable::top(3));
        assert_eq!(d1.get(0, 1), ExponentValue::ZERO);
    }

    #[test]
    fn descent_trace_on_star_against_option() {
        let aut = build(&[re("a*"), re("a+1")], &"a".parse().unwrap()).unwrap();
        let (s, t) = (aut.roots()[0].0, aut.roots()[1].0);
        let run = kleene_descent(&aut);
        let at_root: Vec<ExponentValue> = run.trace.iter().map(|d| d.get(s, t)).collect();
        use ExponentValue::Finite;
        assert_eq!(&at_root[..4], &[Finite(0), Finite(1), Finite(2), Finite(2)]);
        assert_eq!(run.fixpoint.get(s, t), Finite(2));
        for w in run.trace.windows(2) {
            assert!(w[1].leq(&w[0]));
        }
        assert_eq!(phi(&aut, &run.fixpoint), run.fixpoint);
    }

    #[test]
    fn distance_examples() {
        let cfg = Config::default();
        let d = distance(&re("a*"), &re("a+1"), &cfg).unwrap();
        assert_eq!(d.value, q(1, 4));
        assert_eq!(d.witness, Some("aa".into()));
        let d = distance(&re("a*"), &re("0"), &cfg).unwrap();
        assert_eq!(d.value, q(1, 1));
        assert_eq!(d.witness, Some(Word::empty()));
        let d = distance(&re("a"), &re("b"), &cfg).unwrap();
        assert_eq!(d.value, q(1, 2));
        assert_eq!(d.witness, Some("a".into()));
        let d = distance(&re("a*"), &re("(a+1)*"), &cfg).unwrap();
        assert_eq!(d.value, q(0, 1));
        assert_eq!(d.witness, None);
        let d = distance(&re("ab"), &re("ab"), &cfg).unwrap();
        assert!(d.exponent.is_zero());
    }

    #[test]
    fn distance_under_other_lambda() {
        let cfg = Config::new(q(1, 3)).unwrap();
        assert_eq!(distance(&re("a*"), &re("a+1"), &cfg).unwrap().value, q(1, 9));
    }

    #[test]
    fn full_and_restricted_descent_agree() {
        let aut = build(&[re("(a+b)*a"), re("b*a(a+b)*")], &"ab".parse().unwrap()).unwrap();
        let (s, t) = (aut.roots()[0].0, aut.roots()[1].0);
        let full = kleene_descent(&aut);
        let restricted = PairSpace::reachable(&aut, s, t).descend();
        assert_eq!(full.fixpoint.get(s, t), restricted.fixpoint[0]);
    }

    #[test]
    fn ascending_matches_descending_fixpoint() {
        let aut = build(&[re("a*"), re("a+1"), re("aa*")], &"a".parse().unwrap()).unwrap();
        let lambda = q(1, 2);
        let down = ValueTable::from_exponents(&kleene_descent(&aut).fixpoint, &lambda);
        let up = ascend_from_zero(&aut, &lambda, 1000).unwrap();
        assert_eq!(up, down);
        assert!(down.is_pseudometric());
    }

    #[test]
    fn approximants_extend_lazily() {
        let aut = build(&[re("a*"), re("a+1")], &"a".parse().unwrap()).unwrap();
        let (s, t) = (aut.roots()[0].0, aut.roots()[1].0);
        let mut approx = Approximants::new(&aut, s, t);
        assert_eq!(approx.at(0, s, t), ExponentValue::ONE);
        assert_eq!(approx.at(7, s, t), ExponentValue::Finite(2));
        assert_eq!(approx.at(3, s, s), ExponentValue::ZERO);
    }

    #[test]
    fn float_tables_run_the_same_operator() {
        let aut = build(&[re("a*"), re("a+1")], &"a".parse().unwrap()).unwrap();
        let up: ValueTable<f64> = ascend_from_zero(&aut, &0.5, 1000).unwrap();
        let (s, t) = (aut.roots()[0].0, aut.roots()[1].0);
        assert_eq!(up.get(s, t), 0.25);
    }
}
