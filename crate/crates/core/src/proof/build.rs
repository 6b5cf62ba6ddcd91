//! Constructors for derivation nodes. They assume well-formed inputs and
//! panic on misuse; [`super::check`] is the authority on validity.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Derivation, Judgement, Meta, Proof, Rule};
use crate::scalar::Rational;
use crate::syntax::Regex;

fn node(left: Regex, right: Regex, eps: Rational, rule: Rule, premises: Vec<Proof>, meta: Meta) -> Proof {
    Arc::new(Derivation {
        conclusion: Judgement::new(left, right, eps),
        rule,
        premises,
        meta,
    })
}

/// `e ≡₀ e`
pub fn refl(e: Regex) -> Proof {
    node(e.clone(), e, Rational::zero(), Rule::Refl, vec![], Meta::None)
}

/// `l ≡₁ r`
pub fn top(left: Regex, right: Regex) -> Proof {
    node(left, right, Rational::one(), Rule::Top, vec![], Meta::None)
}

/// An instance `l ≡₀ r` of a distance-0 axiom.
pub fn axiom(rule: Rule, left: Regex, right: Regex) -> Proof {
    debug_assert!(rule.is_zero_axiom());
    node(left, right, Rational::zero(), rule, vec![], Meta::None)
}

pub fn hypothesis(j: Judgement) -> Proof {
    Arc::new(Derivation {
        conclusion: j,
        rule: Rule::Hypothesis,
        premises: vec![],
        meta: Meta::None,
    })
}

pub fn symm(p: Proof) -> Proof {
    if p.rule == Rule::Refl {
        return p;
    }
    let j = &p.conclusion;
    node(
        j.right.clone(),
        j.left.clone(),
        j.eps.clone(),
        Rule::Symm,
        vec![p.clone()],
        Meta::None,
    )
}

/// `l ≡ m`, `m ≡ r` ⊢ `l ≡ r`, skipping reflexive halves.
///
/// # Panics
/// If the inner sides differ.
pub fn trans(p: Proof, q: Proof) -> Proof {
    assert_eq!(p.conclusion.right, q.conclusion.left, "Triang: sides do not meet");
    if p.rule == Rule::Refl {
        return q;
    }
    if q.rule == Rule::Refl {
        return p;
    }
    let mid = p.conclusion.right.clone();
    node(
        p.conclusion.left.clone(),
        q.conclusion.right.clone(),
        &p.conclusion.eps + &q.conclusion.eps,
        Rule::Triang,
        vec![p, q],
        Meta::Midpoint(mid),
    )
}

/// Joins consecutive steps into a balanced tree of `Triang` nodes.
///
/// # Panics
/// If `steps` is empty or consecutive steps do not meet.
pub fn chain(steps: Vec<Proof>) -> Proof {
    assert!(!steps.is_empty(), "empty chain");
    let mut layer = steps;
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.into_iter();
        while let Some(p) = it.next() {
            match it.next() {
                Some(q) => next.push(trans(p, q)),
                None => next.push(p),
            }
        }
        layer = next;
    }
    layer.pop().unwrap()
}

/// Raises the distance of `p` to `eps` with `Max`; `p` itself when equal.
///
/// # Panics
/// If `eps` is below the distance of `p`.
pub fn weaken(p: Proof, eps: &Rational) -> Proof {
    match p.conclusion.eps.cmp(eps) {
        std::cmp::Ordering::Equal => p,
        std::cmp::Ordering::Less => {
            let j = &p.conclusion;
            node(
                j.left.clone(),
                j.right.clone(),
                eps.clone(),
                Rule::Max,
                vec![p.clone()],
                Meta::None,
            )
        }
        std::cmp::Ordering::Greater => panic!("cannot weaken {} to {}", p.conclusion, eps),
    }
}

fn max_eps<'a>(ps: impl IntoIterator<Item = &'a Proof>) -> Rational {
    ps.into_iter()
        .map(|p| p.conclusion.eps.clone())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// `l₁ + l₂ ≡ r₁ + r₂` by `NExp`, weakening both premises to the larger distance.
pub fn nexp_sum(p: Proof, q: Proof) -> Proof {
    let eps = max_eps([&p, &q]);
    let (p, q) = (weaken(p, &eps), weaken(q, &eps));
    node(
        Regex::sum(p.conclusion.left.clone(), q.conclusion.left.clone()),
        Regex::sum(p.conclusion.right.clone(), q.conclusion.right.clone()),
        eps,
        Rule::NExp,
        vec![p, q],
        Meta::None,
    )
}

/// `l₁;l₂ ≡ r₁;r₂` by `NExp`.
pub fn nexp_seq(p: Proof, q: Proof) -> Proof {
    if p.rule == Rule::Refl && q.rule == Rule::Refl {
        return refl(Regex::seq(p.conclusion.left.clone(), q.conclusion.left.clone()));
    }
    let eps = max_eps([&p, &q]);
    let (p, q) = (weaken(p, &eps), weaken(q, &eps));
    node(
        Regex::seq(p.conclusion.left.clone(), q.conclusion.left.clone()),
        Regex::seq(p.conclusion.right.clone(), q.conclusion.right.clone()),
        eps,
        Rule::NExp,
        vec![p, q],
        Meta::None,
    )
}

/// `l* ≡ r*` by `NExp`.
pub fn nexp_star(p: Proof) -> Proof {
    if p.rule == Rule::Refl {
        return refl(Regex::star(p.conclusion.left.clone()));
    }
    node(
        Regex::star(p.conclusion.left.clone()),
        Regex::star(p.conclusion.right.clone()),
        p.conclusion.eps.clone(),
        Rule::NExp,
        vec![p],
        Meta::None,
    )
}

/// `l₁ + l₂ ≡_max r₁ + r₂` by `SL5`.
pub fn sl5(p: Proof, q: Proof) -> Proof {
    if p.rule == Rule::Refl && q.rule == Rule::Refl {
        return refl(Regex::sum(p.conclusion.left.clone(), q.conclusion.left.clone()));
    }
    let eps = max_eps([&p, &q]);
    node(
        Regex::sum(p.conclusion.left.clone(), q.conclusion.left.clone()),
        Regex::sum(p.conclusion.right.clone(), q.conclusion.right.clone()),
        eps,
        Rule::SL5,
        vec![p, q],
        Meta::None,
    )
}

/// `a;l ≡_eps a;r` from `l ≡ r` by `NPref`.
pub fn npref(a: char, p: Proof, eps: Rational) -> Proof {
    node(
        Regex::seq(Regex::letter(a), p.conclusion.left.clone()),
        Regex::seq(Regex::letter(a), p.conclusion.right.clone()),
        eps,
        Rule::NPref,
        vec![p],
        Meta::None,
    )
}

/// Left-nested `Σ lᵢ ≡ Σ rᵢ` from proofs of `lᵢ ≡ rᵢ`, by `SL5`.
///
/// # Panics
/// If `proofs` is empty.
pub fn sum_congr(proofs: Vec<Proof>) -> Proof {
    proofs.into_iter().reduce(sl5).expect("empty sum")
}

/// `(x₁ + … + xₙ);g ≡₀ x₁;g + … + xₙ;g` for a left-nested sum of `n`
/// summands, by repeated `D2`.
pub fn distribute_right(sum: &Regex, n: usize, g: &Regex) -> Proof {
    if n <= 1 {
        return refl(Regex::seq(sum.clone(), g.clone()));
    }
    let Regex::Sum(rest, last) = sum else {
        panic!("expected a sum of {n} summands, got {sum}");
    };
    let split = axiom(
        Rule::D2,
        Regex::seq(sum.clone(), g.clone()),
        Regex::sum(
            Regex::seq(rest.as_ref().clone(), g.clone()),
            Regex::seq(last.as_ref().clone(), g.clone()),
        ),
    );
    let inner = distribute_right(rest, n - 1, g);
    trans(
        split,
        nexp_sum(inner, refl(Regex::seq(last.as_ref().clone(), g.clone()))),
    )
}
