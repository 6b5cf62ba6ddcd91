//! Derivations in the quantitative equational theory of regular expressions:
//! representation, checking, synthesis and JSON certificates.
//!
//! Derivations are trees of [`Derivation`] nodes shared through [`Arc`], so
//! a subproof used many times is stored (and checked) once.

mod build;
mod cert;
mod check;
mod lemmas;
mod normalize;
mod synth;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::scalar::{format_rational, Rational};
use crate::syntax::Regex;

pub use build::*;
pub use cert::{from_json, to_json, CertificateError, FORMAT_VERSION};
pub use check::{check, check_derivation, CheckError};
pub use lemmas::{generalized_prefix, normal_form_proof, salomaa_rule, star_unroll_proof, LemmaError};
pub use normalize::{normalize, rearrange, zero_free_form};
pub use synth::{bisim_relation, check_bisim, synthesize, synthesize_certificate, BisimCertificate, SynthesisError};

/// `left ≡_eps right`
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Judgement {
    pub left: Regex,
    pub right: Regex,
    pub eps: Rational,
}

impl Judgement {
    pub fn new(left: Regex, right: Regex, eps: Rational) -> Judgement {
        Judgement { left, right, eps }
    }
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≡[{}] {}", self.left, format_rational(&self.eps), self.right)
    }
}

impl fmt::Debug for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Inference rules and axioms. `OneS` and `ZeroS` are the axioms usually
/// written `1S` and `0S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Refl,
    Symm,
    Triang,
    Max,
    NExp,
    Top,
    NPref,
    SL1,
    SL2,
    SL3,
    SL4,
    SL5,
    OneS,
    S,
    S1,
    ZeroS,
    S0,
    D1,
    D2,
    Unroll,
    Tight,
    Hypothesis,
    ContTemplate,
}

impl Rule {
    pub const ALL: [Rule; 23] = [
        Rule::Refl,
        Rule::Symm,
        Rule::Triang,
        Rule::Max,
        Rule::NExp,
        Rule::Top,
        Rule::NPref,
        Rule::SL1,
        Rule::SL2,
        Rule::SL3,
        Rule::SL4,
        Rule::SL5,
        Rule::OneS,
        Rule::S,
        Rule::S1,
        Rule::ZeroS,
        Rule::S0,
        Rule::D1,
        Rule::D2,
        Rule::Unroll,
        Rule::Tight,
        Rule::Hypothesis,
        Rule::ContTemplate,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Rule::Refl => "Refl",
            Rule::Symm => "Symm",
            Rule::Triang => "Triang",
            Rule::Max => "Max",
            Rule::NExp => "NExp",
            Rule::Top => "Top",
            Rule::NPref => "NPref",
            Rule::SL1 => "SL1",
            Rule::SL2 => "SL2",
            Rule::SL3 => "SL3",
            Rule::SL4 => "SL4",
            Rule::SL5 => "SL5",
            Rule::OneS => "OneS",
            Rule::S => "S",
            Rule::S1 => "S1",
            Rule::ZeroS => "ZeroS",
            Rule::S0 => "S0",
            Rule::D1 => "D1",
            Rule::D2 => "D2",
            Rule::Unroll => "Unroll",
            Rule::Tight => "Tight",
            Rule::Hypothesis => "Hypothesis",
            Rule::ContTemplate => "ContTemplate",
        }
    }

    /// Axioms whose instances all have distance 0 and no premises.
    pub fn is_zero_axiom(self) -> bool {
        matches!(
            self,
            Rule::SL1
                | Rule::SL2
                | Rule::SL3
                | Rule::SL4
                | Rule::OneS
                | Rule::S
                | Rule::S1
                | Rule::ZeroS
                | Rule::S0
                | Rule::D1
                | Rule::D2
                | Rule::Unroll
                | Rule::Tight
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for Rule {
    type Err = UnknownRule;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.tag() == s)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// A named family of derivations indexed by `i ∈ ℕ`, each concluding the
/// template's sides at distance `λ^i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Schema {
    /// Instance `i` is `synthesize(left, right, λ^i)`.
    Approximants { left: Regex, right: Regex },
    /// Instance `i` is `star_unroll_proof(hypothesis, i)`.
    StarUnroll { hypothesis: Judgement },
}

impl Schema {
    pub fn id(&self) -> &'static str {
        match self {
            Schema::Approximants { .. } => "approximants",
            Schema::StarUnroll { .. } => "star_unroll",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Meta {
    None,
    /// The middle expression of a `Triang` step.
    Midpoint(Regex),
    /// Instance family of a `ContTemplate` node; `spot_indices` are checked
    /// in addition to the checker's default range.
    Template {
        schema: Schema,
        spot_indices: Vec<u32>,
    },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Judgement,
    pub rule: Rule,
    pub premises: Vec<Proof>,
    pub meta: Meta,
}

pub type Proof = Arc<Derivation>;

impl Derivation {
    /// Number of distinct nodes, counting shared subproofs once.
    pub fn node_count(self: &Arc<Self>) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(d) = stack.pop() {
            if seen.insert(Arc::as_ptr(&d)) {
                stack.extend(d.premises.iter().cloned());
            }
        }
        seen.len()
    }

    /// Rules used anywhere below this node, including this node.
    pub fn rules_used(self: &Arc<Self>) -> std::collections::BTreeSet<Rule> {
        let mut seen = std::collections::HashSet::new();
        let mut rules = std::collections::BTreeSet::new();
        let mut stack = vec![self.clone()];
        while let Some(d) = stack.pop() {
            if seen.insert(Arc::as_ptr(&d)) {
                rules.insert(d.rule);
                stack.extend(d.premises.iter().cloned());
            }
        }
        rules
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(d: &Derivation, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            writeln!(f, "{:indent$}{} [{}]", "", d.conclusion, d.rule, indent = depth * 2)?;
            for p in &d.premises {
                go(p, depth + 1, f)?;
            }
            Ok(())
        }
        go(self, 0, f)
    }
}

/// A derivation with the value of `λ` and the hypotheses it may use.
#[derive(Clone, PartialEq, Eq)]
pub struct Certificate {
    pub lambda: Rational,
    pub hypotheses: Vec<Judgement>,
    pub root: Proof,
}

impl Certificate {
    pub fn new(lambda: Rational, root: Proof) -> Certificate {
        Certificate {
            lambda,
            hypotheses: Vec::new(),
            root,
        }
    }

    pub fn with_hypotheses(lambda: Rational, hypotheses: Vec<Judgement>, root: Proof) -> Certificate {
        Certificate {
            lambda,
            hypotheses,
            root,
        }
    }

    pub fn conclusion(&self) -> &Judgement {
        &self.root.conclusion
    }
}

impl fmt::Debug for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "λ = {}, hypotheses {:?}", self.lambda, self.hypotheses)?;
        fmt::Debug::fmt(&*self.root, f)
    }
}
