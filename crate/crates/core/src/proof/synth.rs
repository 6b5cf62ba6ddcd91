use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use super::build::*;
use super::lemmas::normal_form_proof;
use super::normalize::rearrange;
use super::{Certificate, Derivation, Judgement, Meta, Proof, Rule, Schema};
use crate::automaton::{build, BuildError, QuotientAutomaton, StateId};
use crate::derivatives::{output, step, Word};
use crate::metric::{distance, Approximants, Config};
use crate::scalar::{format_rational, Rational};
use crate::syntax::{canonicalize, infer_alphabet, CanonicalForm, Regex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("distance must be nonnegative, got {}", format_rational(.0))]
    NegativeEpsilon(Rational),
    #[error("requested distance is below the actual distance {}{}", format_rational(.distance), witness_note(.witness))]
    TooSmall { distance: Rational, witness: Option<Word> },
    #[error(transparent)]
    Build(#[from] BuildError),
}

fn witness_note(w: &Option<Word>) -> String {
    match w {
        Some(w) if w.is_empty() => " (witness: the empty word)".to_string(),
        Some(w) => format!(" (witness: {w})"),
        None => String::new(),
    }
}

/// A derivation of `e ≡_eps f`, for any `eps` at least the distance.
///
/// Distance 0 between syntactically different classes is concluded by a
/// `ContTemplate` whose instances are this function at `λⁱ`.
pub fn synthesize(e: &Regex, f: &Regex, eps: &Rational, cfg: &Config) -> Result<Proof, SynthesisError> {
    if eps < &Rational::zero() {
        return Err(SynthesisError::NegativeEpsilon(eps.clone()));
    }
    let d = distance(e, f, cfg)?;
    if eps < &d.value {
        return Err(SynthesisError::TooSmall {
            distance: d.value,
            witness: d.witness,
        });
    }
    if let Some(p) = rearrange(e, f) {
        return Ok(weaken(p, eps));
    }
    if eps.is_zero() {
        return Ok(Arc::new(Derivation {
            conclusion: Judgement::new(e.clone(), f.clone(), Rational::zero()),
            rule: Rule::ContTemplate,
            premises: vec![],
            meta: Meta::Template {
                schema: Schema::Approximants {
                    left: e.clone(),
                    right: f.clone(),
                },
                spot_indices: vec![],
            },
        }));
    }
    let alphabet = infer_alphabet(e, f);
    let aut = build(&[e.clone(), f.clone()], &alphabet)?;
    let (s, t) = (aut.roots()[0], aut.roots()[1]);
    let mut synth = Synth {
        cfg,
        approx: Approximants::new(&aut, s.0, t.0),
        aut: &aut,
        memo: HashMap::new(),
        nf: HashMap::new(),
        into: HashMap::new(),
    };
    let mut i = 0;
    while &cfg.value(synth.approx.at(i, s.0, t.0)) > eps {
        i += 1;
    }
    let core = synth.pair(s, t, i);
    let proof = chain(vec![rearranged(e, aut.expr(s)), core, rearranged(aut.expr(t), f)]);
    Ok(weaken(proof, eps))
}

pub fn synthesize_certificate(
    e: &Regex,
    f: &Regex,
    eps: &Rational,
    cfg: &Config,
) -> Result<Certificate, SynthesisError> {
    Ok(Certificate::new(cfg.lambda().clone(), synthesize(e, f, eps, cfg)?))
}

fn rearranged(from: &Regex, to: &Regex) -> Proof {
    rearrange(from, to).unwrap_or_else(|| panic!("{from} and {to} are not in the same class"))
}

struct Synth<'a> {
    cfg: &'a Config,
    aut: &'a QuotientAutomaton,
    approx: Approximants,
    memo: HashMap<(StateId, StateId, usize), Proof>,
    nf: HashMap<StateId, Proof>,
    /// `(expr(s))_a ≡₀ expr(next(s, a))`
    into: HashMap<(StateId, usize), Proof>,
}

impl Synth<'_> {
    /// `expr(s) ≡_v expr(t)` with `v` the value of `Ψ⁽ⁱ⁾(s, t)`.
    fn pair(&mut self, s: StateId, t: StateId, i: usize) -> Proof {
        if let Some(p) = self.memo.get(&(s, t, i)) {
            return p.clone();
        }
        let aut = self.aut;
        let proof = if s == t {
            refl(aut.expr(s).clone())
        } else if i == 0 || aut.output(s) != aut.output(t) {
            top(aut.expr(s).clone(), aut.expr(t).clone())
        } else {
            let v = self.cfg.value(self.approx.at(i, s.0, t.0));
            let letters = aut.alphabet().symbols().to_vec();
            let mut parts: Vec<Proof> = letters
                .iter()
                .enumerate()
                .map(|(k, &a)| {
                    let (sa, ta) = (aut.next(s, k), aut.next(t, k));
                    let inner = self.pair(sa, ta, i - 1);
                    let there = self.toward_state(s, k);
                    let back = symm(self.toward_state(t, k));
                    npref(a, chain(vec![there, inner, back]), v.clone())
                })
                .collect();
            parts.push(refl(Regex::bit(aut.output(s))));
            chain(vec![self.nf(s), sum_congr(parts), symm(self.nf(t))])
        };
        self.memo.insert((s, t, i), proof.clone());
        proof
    }

    fn nf(&mut self, s: StateId) -> Proof {
        let aut = self.aut;
        self.nf
            .entry(s)
            .or_insert_with(|| {
                normal_form_proof(aut.expr(s), aut.alphabet()).expect("state letters lie in the alphabet")
            })
            .clone()
    }

    fn toward_state(&mut self, s: StateId, k: usize) -> Proof {
        let aut = self.aut;
        self.into
            .entry((s, k))
            .or_insert_with(|| {
                let a = aut.alphabet().symbols()[k];
                rearranged(&step(aut.expr(s), a), aut.expr(aut.next(s, k)))
            })
            .clone()
    }
}

/// A relation on canonical forms, each pair stored with the smaller form
/// first, that is a bisimulation up to equality of canonical forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisimCertificate {
    pub relation: BTreeSet<(CanonicalForm, CanonicalForm)>,
}

fn ordered_forms(x: CanonicalForm, y: CanonicalForm) -> (CanonicalForm, CanonicalForm) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// The pairs of distinct states reachable from `(e, f)` in their product.
/// It is a bisimulation exactly when `e` and `f` denote the same language.
pub fn bisim_relation(e: &Regex, f: &Regex) -> Result<BisimCertificate, BuildError> {
    let aut = build(&[e.clone(), f.clone()], &infer_alphabet(e, f))?;
    let relation = aut
        .product_pairs(aut.roots()[0], aut.roots()[1])
        .into_iter()
        .filter(|(u, v)| u != v)
        .map(|(u, v)| ordered_forms(aut.form(u).clone(), aut.form(v).clone()))
        .collect();
    Ok(BisimCertificate { relation })
}

/// Whether the relation relates `e` to `f`, agrees on outputs, and is
/// closed under derivatives by the letters of `e` and `f`.
pub fn check_bisim(cert: &BisimCertificate, e: &Regex, f: &Regex) -> bool {
    let alphabet = infer_alphabet(e, f);
    let related = |x: CanonicalForm, y: CanonicalForm| x == y || cert.relation.contains(&ordered_forms(x, y));
    if !related(canonicalize(e), canonicalize(f)) {
        return false;
    }
    cert.relation.iter().all(|(x, y)| {
        let (x, y) = (x.to_regex(), y.to_regex());
        output(&x) == output(&y)
            && alphabet
                .symbols()
                .iter()
                .all(|&a| related(canonicalize(&step(&x, a)), canonicalize(&step(&y, a))))
    })
}
