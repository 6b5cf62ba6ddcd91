use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use super::lemmas::star_unroll_proof;
use super::synth::{bisim_relation, check_bisim, synthesize};
use super::{Certificate, Derivation, Judgement, Meta, Proof, Rule, Schema};
use crate::derivatives::output;
use crate::metric::Config;
use crate::scalar::{format_rational, Rational};
use crate::syntax::Regex;

/// The first node that failed, located by premise indices from the root;
/// `i=n` steps into instance `n` of a template.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct CheckError {
    pub path: Vec<String>,
    pub rule: Option<Rule>,
    pub reason: String,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = if self.path.is_empty() {
            "root".to_string()
        } else {
            format!("root/{}", self.path.join("/"))
        };
        match self.rule {
            Some(rule) => write!(f, "at {path} ({rule}): {}", self.reason),
            None => write!(f, "at {path}: {}", self.reason),
        }
    }
}

/// Checks every node of the certificate against its rule.
pub fn check(cert: &Certificate, cfg: &Config) -> Result<(), CheckError> {
    if &cert.lambda != cfg.lambda() {
        return Err(CheckError {
            path: vec![],
            rule: None,
            reason: format!(
                "certificate uses lambda {} but the checker was given {}",
                format_rational(&cert.lambda),
                format_rational(cfg.lambda())
            ),
        });
    }
    check_derivation(&cert.root, &cert.hypotheses, cfg)
}

/// Checks a derivation whose `Hypothesis` leaves may cite `hypotheses`.
pub fn check_derivation(root: &Proof, hypotheses: &[Judgement], cfg: &Config) -> Result<(), CheckError> {
    let mut checker = Checker {
        cfg,
        hypotheses,
        verified: HashSet::new(),
        instances: Vec::new(),
        path: Vec::new(),
    };
    checker.visit(root)
}

struct Checker<'a> {
    cfg: &'a Config,
    hypotheses: &'a [Judgement],
    /// Addresses of checked nodes. Every such node stays alive until the
    /// check ends (the caller's tree, or `instances` below), so an address
    /// cannot be reused by a different node.
    verified: HashSet<*const Derivation>,
    instances: Vec<Proof>,
    path: Vec<String>,
}

type Outcome = Result<(), String>;

impl Checker<'_> {
    fn visit(&mut self, d: &Proof) -> Result<(), CheckError> {
        if self.verified.contains(&Arc::as_ptr(d)) {
            return Ok(());
        }
        if let Err(reason) = self.local(d) {
            return Err(CheckError {
                path: self.path.clone(),
                rule: Some(d.rule),
                reason,
            });
        }
        for (i, p) in d.premises.iter().enumerate() {
            self.path.push(i.to_string());
            self.visit(p)?;
            self.path.pop();
        }
        if d.rule == Rule::ContTemplate {
            self.instances(d)?;
        }
        self.verified.insert(Arc::as_ptr(d));
        Ok(())
    }

    /// The side conditions of `d`'s rule, given its premises' conclusions.
    fn local(&self, d: &Derivation) -> Outcome {
        let j = &d.conclusion;
        if j.eps < Rational::zero() {
            return Err(format!("negative distance {}", j.eps));
        }
        let arity = match d.rule {
            Rule::Symm | Rule::Max | Rule::NPref => 1,
            Rule::Triang | Rule::SL5 => 2,
            Rule::NExp => match &j.left {
                Regex::Star(_) => 1,
                _ => 2,
            },
            _ => 0,
        };
        if d.premises.len() != arity {
            return Err(format!("expected {arity} premises, found {}", d.premises.len()));
        }
        let prem = |i: usize| &d.premises[i].conclusion;
        match d.rule {
            Rule::Refl => {
                require(j.left == j.right, "sides differ")?;
                require(j.eps.is_zero(), "distance must be 0")
            }
            Rule::Symm => {
                let p = prem(0);
                require(
                    p.left == j.right && p.right == j.left,
                    "premise is not the mirror image",
                )?;
                require(p.eps == j.eps, "distance changed")
            }
            Rule::Triang => {
                let (p, q) = (prem(0), prem(1));
                let Meta::Midpoint(mid) = &d.meta else {
                    return Err("missing midpoint".into());
                };
                require(p.left == j.left, "first premise has the wrong left side")?;
                require(
                    &p.right == mid && &q.left == mid,
                    "premises do not meet at the midpoint",
                )?;
                require(q.right == j.right, "second premise has the wrong right side")?;
                require(j.eps == &p.eps + &q.eps, "distance is not the sum of the premises'")
            }
            Rule::Max => {
                let p = prem(0);
                require(p.left == j.left && p.right == j.right, "sides changed")?;
                require(p.eps < j.eps, "distance must strictly increase")
            }
            Rule::NExp => {
                let children = match (&j.left, &j.right) {
                    (Regex::Sum(a, b), Regex::Sum(c, e)) | (Regex::Seq(a, b), Regex::Seq(c, e))
                        if same_op(&j.left, &j.right) =>
                    {
                        vec![(a, c), (b, e)]
                    }
                    (Regex::Star(a), Regex::Star(c)) => vec![(a, c)],
                    _ => return Err("sides are not the same operation".into()),
                };
                for (i, (l, r)) in children.into_iter().enumerate() {
                    let p = prem(i);
                    require(
                        &p.left == l.as_ref() && &p.right == r.as_ref(),
                        "premise does not match an argument",
                    )?;
                    require(p.eps == j.eps, "premise distance differs")?;
                }
                Ok(())
            }
            Rule::Top => require(j.eps.is_one(), "distance must be 1"),
            Rule::NPref => {
                let p = prem(0);
                let (Regex::Seq(a, l), Regex::Seq(b, r)) = (&j.left, &j.right) else {
                    return Err("sides must be a;e and a;f".into());
                };
                let Regex::Letter(a) = a.as_ref() else {
                    return Err("prefix is not a letter".into());
                };
                require(b.as_ref() == &Regex::Letter(*a), "prefixes differ")?;
                require(
                    &p.left == l.as_ref() && &p.right == r.as_ref(),
                    "premise does not match",
                )?;
                require(
                    j.eps >= self.cfg.lambda() * &p.eps,
                    "distance below lambda times the premise's",
                )
            }
            Rule::SL5 => {
                let (p, q) = (prem(0), prem(1));
                let (Regex::Sum(a, b), Regex::Sum(c, e)) = (&j.left, &j.right) else {
                    return Err("sides must be sums".into());
                };
                require(
                    &p.left == a.as_ref() && &p.right == c.as_ref(),
                    "first premise does not match",
                )?;
                require(
                    &q.left == b.as_ref() && &q.right == e.as_ref(),
                    "second premise does not match",
                )?;
                require(
                    j.eps == (&p.eps).max(&q.eps).clone(),
                    "distance is not the maximum of the premises'",
                )
            }
            Rule::Hypothesis => require(self.hypotheses.contains(j), "not a declared hypothesis"),
            Rule::ContTemplate => self.template_shape(d),
            axiom => {
                require(j.eps.is_zero(), "distance must be 0")?;
                require(axiom_instance(axiom, &j.left, &j.right), "not an instance of the axiom")
            }
        }
    }

    fn template_shape(&self, d: &Derivation) -> Outcome {
        let j = &d.conclusion;
        let Meta::Template { schema, .. } = &d.meta else {
            return Err("missing template schema".into());
        };
        require(j.eps.is_zero(), "distance must be 0")?;
        match schema {
            Schema::Approximants { left, right } => {
                require(
                    &j.left == left && &j.right == right,
                    "conclusion does not match the schema",
                )?;
                // Finitely many instances cannot rule out a positive distance
                // below every checked λ^i, so the ε = 0 claim is confirmed
                // with a bisimulation as well.
                let relation = bisim_relation(left, right).map_err(|e| e.to_string())?;
                require(check_bisim(&relation, left, right), "sides are not bisimilar")
            }
            Schema::StarUnroll { hypothesis } => {
                let Regex::Sum(eg, f) = &hypothesis.right else {
                    return Err("hypothesis must have the shape g ≡ e;g + f".into());
                };
                let Regex::Seq(e, g) = eg.as_ref() else {
                    return Err("hypothesis must have the shape g ≡ e;g + f".into());
                };
                require(
                    g.as_ref() == &hypothesis.left,
                    "hypothesis must have the shape g ≡ e;g + f",
                )?;
                require(hypothesis.eps.is_zero(), "hypothesis distance must be 0")?;
                require(!output(e), "loop body accepts the empty word")?;
                require(self.hypotheses.contains(hypothesis), "hypothesis is not declared")?;
                let expected = Regex::seq(Regex::star(e.as_ref().clone()), f.as_ref().clone());
                require(
                    j.left == hypothesis.left && j.right == expected,
                    "conclusion must be g ≡ e*;f",
                )
            }
        }
    }

    fn instances(&mut self, d: &Derivation) -> Result<(), CheckError> {
        let Meta::Template { schema, spot_indices } = &d.meta else {
            unreachable!("shape checked before instances");
        };
        let mut indices: Vec<u32> = (0..=self.cfg.spot_checks() as u32).collect();
        indices.extend(spot_indices);
        indices.sort_unstable();
        indices.dedup();
        for i in indices {
            self.path.push(format!("i={i}"));
            let fail = |reason: String, path: &[String]| CheckError {
                path: path.to_vec(),
                rule: Some(Rule::ContTemplate),
                reason,
            };
            let eps = self.cfg.pow(i);
            let instance = match schema {
                Schema::Approximants { left, right } => synthesize(left, right, &eps, self.cfg)
                    .map_err(|e| fail(format!("instance {i} could not be generated: {e}"), &self.path))?,
                Schema::StarUnroll { hypothesis } => star_unroll_proof(hypothesis, i, self.cfg)
                    .map_err(|e| fail(format!("instance {i} could not be generated: {e}"), &self.path))?,
            };
            let c = &instance.conclusion;
            if c.left != d.conclusion.left || c.right != d.conclusion.right || c.eps != eps {
                return Err(fail(format!("instance {i} concludes {c}"), &self.path));
            }
            self.visit(&instance)?;
            self.instances.push(instance);
            self.path.pop();
        }
        Ok(())
    }
}

fn require(cond: bool, reason: &str) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(reason.to_string())
    }
}

fn same_op(a: &Regex, b: &Regex) -> bool {
    std::mem::discriminant(a) == std::mem::discriminant(b)
}

/// Whether `left ≡₀ right` is an instance of the axiom, read left to right.
fn axiom_instance(rule: Rule, left: &Regex, right: &Regex) -> bool {
    use Regex::*;
    match rule {
        // e + e ≡ e
        Rule::SL1 => matches!(left, Sum(a, b) if a == b && a.as_ref() == right),
        // e + f ≡ f + e
        Rule::SL2 => matches!((left, right), (Sum(a, b), Sum(c, d)) if a == d && b == c),
        // (e + f) + g ≡ e + (f + g)
        Rule::SL3 => match (left, right) {
            (Sum(ef, g), Sum(e2, fg)) => match (ef.as_ref(), fg.as_ref()) {
                (Sum(e, f), Sum(f2, g2)) => e == e2 && f == f2 && g == g2,
                _ => false,
            },
            _ => false,
        },
        // e + 0 ≡ e
        Rule::SL4 => matches!(left, Sum(a, z) if **z == Zero && a.as_ref() == right),
        // 1;e ≡ e
        Rule::OneS => matches!(left, Seq(o, e) if **o == One && e.as_ref() == right),
        // e;(f;g) ≡ (e;f);g
        Rule::S => match (left, right) {
            (Seq(e, fg), Seq(ef, g)) => match (fg.as_ref(), ef.as_ref()) {
                (Seq(f, g2), Seq(e2, f2)) => e == e2 && f == f2 && g == g2,
                _ => false,
            },
            _ => false,
        },
        // e;1 ≡ e
        Rule::S1 => matches!(left, Seq(e, o) if **o == One && e.as_ref() == right),
        // 0;e ≡ 0
        Rule::ZeroS => matches!(left, Seq(z, _) if **z == Zero) && *right == Zero,
        // e;0 ≡ 0
        Rule::S0 => matches!(left, Seq(_, z) if **z == Zero) && *right == Zero,
        // e;(f + g) ≡ e;f + e;g
        Rule::D1 => match (left, right) {
            (Seq(e, fg), Sum(ef, eg)) => match (fg.as_ref(), ef.as_ref(), eg.as_ref()) {
                (Sum(f, g), Seq(e2, f2), Seq(e3, g2)) => e == e2 && e == e3 && f == f2 && g == g2,
                _ => false,
            },
            _ => false,
        },
        // (e + f);g ≡ e;g + f;g
        Rule::D2 => match (left, right) {
            (Seq(ef, g), Sum(eg, fg)) => match (ef.as_ref(), eg.as_ref(), fg.as_ref()) {
                (Sum(e, f), Seq(e2, g2), Seq(f2, g3)) => e == e2 && f == f2 && g == g2 && g == g3,
                _ => false,
            },
            _ => false,
        },
        // e* ≡ e;e* + 1
        Rule::Unroll => match (left, right) {
            (Star(e), Sum(ee, one)) => {
                **one == One && matches!(ee.as_ref(), Seq(e2, s) if e2 == e && s.as_ref() == left)
            }
            _ => false,
        },
        // (e + 1)* ≡ e*
        Rule::Tight => match (left, right) {
            (Star(e1), Star(e)) => matches!(e1.as_ref(), Sum(e2, one) if **one == One && e2 == e),
            _ => false,
        },
        _ => false,
    }
}
