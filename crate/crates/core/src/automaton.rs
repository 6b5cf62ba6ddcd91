//! The reachable part of the derivative automaton quotiented by ACI.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::derivatives::{output, step, Word};
use crate::syntax::{canonicalize, Alphabet, CanonicalForm, Regex};

pub const DEFAULT_STATE_LIMIT: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Debug for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("no root expressions given")]
    EmptyRoots,
    #[error("automaton exceeded {limit} states")]
    StateLimit { limit: usize },
    #[error("letter `{letter}` is not in the alphabet {alphabet}")]
    LetterOutsideAlphabet { letter: char, alphabet: Alphabet },
}

#[derive(Clone)]
pub struct QuotientAutomaton {
    alphabet: Alphabet,
    states: Vec<CanonicalForm>,
    exprs: Vec<Regex>,
    outputs: Vec<bool>,
    transitions: Vec<Vec<StateId>>,
    roots: Vec<StateId>,
    index: HashMap<CanonicalForm, StateId>,
}

/// Builds the automaton with the default state cap.
pub fn build(roots: &[Regex], alphabet: &Alphabet) -> Result<QuotientAutomaton, BuildError> {
    build_with_limit(roots, alphabet, DEFAULT_STATE_LIMIT)
}

/// Breadth-first closure of `roots` under `e ↦ [e_a]`. State ids follow
/// discovery order.
pub fn build_with_limit(roots: &[Regex], alphabet: &Alphabet, limit: usize) -> Result<QuotientAutomaton, BuildError> {
    if roots.is_empty() {
        return Err(BuildError::EmptyRoots);
    }
    for root in roots {
        if let Some(&letter) = root.letters().iter().find(|c| !alphabet.contains(**c)) {
            return Err(BuildError::LetterOutsideAlphabet {
                letter,
                alphabet: alphabet.clone(),
            });
        }
    }
    let mut aut = QuotientAutomaton {
        alphabet: alphabet.clone(),
        states: Vec::new(),
        exprs: Vec::new(),
        outputs: Vec::new(),
        transitions: Vec::new(),
        roots: Vec::new(),
        index: HashMap::new(),
    };
    let mut queue = VecDeque::new();
    for root in roots {
        let (id, fresh) = aut.intern(canonicalize(root), limit)?;
        if fresh {
            queue.push_back(id);
        }
        aut.roots.push(id);
    }
    while let Some(id) = queue.pop_front() {
        let expr = aut.exprs[id.0].clone();
        let mut row = Vec::with_capacity(alphabet.len());
        for &a in alphabet.symbols() {
            let (next, fresh) = aut.intern(canonicalize(&step(&expr, a)), limit)?;
            if fresh {
                queue.push_back(next);
            }
            row.push(next);
        }
        aut.transitions[id.0] = row;
    }
    Ok(aut)
}

impl QuotientAutomaton {
    fn intern(&mut self, form: CanonicalForm, limit: usize) -> Result<(StateId, bool), BuildError> {
        if let Some(&id) = self.index.get(&form) {
            return Ok((id, false));
        }
        if self.states.len() >= limit {
            return Err(BuildError::StateLimit { limit });
        }
        let id = StateId(self.states.len());
        let expr = form.to_regex();
        self.outputs.push(output(&expr));
        self.exprs.push(expr);
        self.index.insert(form.clone(), id);
        self.states.push(form);
        self.transitions.push(Vec::new());
        Ok((id, true))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    pub fn roots(&self) -> &[StateId] {
        &self.roots
    }

    pub fn form(&self, s: StateId) -> &CanonicalForm {
        &self.states[s.0]
    }

    /// The canonical expression representing state `s`.
    pub fn expr(&self, s: StateId) -> &Regex {
        &self.exprs[s.0]
    }

    pub fn output(&self, s: StateId) -> bool {
        self.outputs[s.0]
    }

    /// Successor of `s` on the symbol with position `symbol` in the alphabet.
    pub fn next(&self, s: StateId, symbol: usize) -> StateId {
        self.transitions[s.0][symbol]
    }

    pub fn successors(&self, s: StateId) -> &[StateId] {
        &self.transitions[s.0]
    }

    /// The state whose canonical form equals that of `e`, if reachable.
    pub fn state_of(&self, e: &Regex) -> Option<StateId> {
        self.index.get(&canonicalize(e)).copied()
    }

    pub fn run(&self, s: StateId, w: &Word) -> Option<StateId> {
        let mut cur = s;
        for &c in w.symbols() {
            cur = self.next(cur, self.alphabet.index_of(c)?);
        }
        Some(cur)
    }

    /// Whether the state `s` accepts `w`; `false` for letters outside the alphabet.
    pub fn accepts(&self, s: StateId, w: &Word) -> bool {
        self.run(s, w).is_some_and(|t| self.output(t))
    }

    /// Unordered pairs reachable from `{s, t}` under synchronized
    /// transitions, in breadth-first order, starting with `{s, t}`. Pairs are
    /// normalized so that the first component is the smaller id.
    pub fn product_pairs(&self, s: StateId, t: StateId) -> Vec<(StateId, StateId)> {
        let start = ordered(s, t);
        let mut seen = HashSet::from([start]);
        let mut order = vec![start];
        let mut head = 0;
        while head < order.len() {
            let (u, v) = order[head];
            head += 1;
            for k in 0..self.alphabet.len() {
                let next = ordered(self.next(u, k), self.next(v, k));
                if seen.insert(next) {
                    order.push(next);
                }
            }
        }
        order
    }

    /// Graphviz rendering; accepting states are drawn with a double circle.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quotient {\n  rankdir=LR;\n");
        for (i, root) in self.roots.iter().enumerate() {
            let _ = writeln!(out, "  start{i} [shape=point];");
            let _ = writeln!(out, "  start{i} -> {};", root.0);
        }
        for s in self.state_ids() {
            let shape = if self.output(s) { "doublecircle" } else { "circle" };
            let label = self.form(s).to_string().replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  {} [shape={shape}, label=\"{label}\"];", s.0);
        }
        for s in self.state_ids() {
            let mut by_target: Vec<(StateId, Vec<char>)> = Vec::new();
            for (k, &t) in self.successors(s).iter().enumerate() {
                let c = self.alphabet.symbols()[k];
                match by_target.iter_mut().find(|(u, _)| *u == t) {
                    Some((_, cs)) => cs.push(c),
                    None => by_target.push((t, vec![c])),
                }
            }
            for (t, cs) in by_target {
                let label: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", s.0, t.0, label.join(","));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Debug for QuotientAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QuotientAutomaton over {} roots {:?}", self.alphabet, self.roots)?;
        for s in self.state_ids() {
            writeln!(
                f,
                "  {s:?}{} {} -> {:?}",
                if self.output(s) { "*" } else { " " },
                self.form(s),
                self.successors(s)
            )?;
        }
        Ok(())
    }
}

pub(crate) fn ordered(s: StateId, t: StateId) -> (StateId, StateId) {
    if s <= t {
        (s, t)
    } else {
        (t, s)
    }
}
