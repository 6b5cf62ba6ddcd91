use thiserror::Error;

use num_traits::Zero;

use super::build::*;
use super::normalize::rearrange;
use super::{Derivation, Judgement, Meta, Proof, Rule, Schema};
use crate::derivatives::{fundamental_decomposition, output, step};
use crate::metric::Config;
use crate::scalar::{format_rational, Rational};
use crate::syntax::{Alphabet, Regex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("letter `{letter}` is not in the alphabet {alphabet}")]
    LetterOutsideAlphabet { letter: char, alphabet: Alphabet },
    #[error("`{0}` accepts the empty word")]
    AcceptsEmptyWord(Regex),
    #[error("distance {out} is below lambda times {premise}")]
    TooTight { out: String, premise: String },
    #[error("hypothesis must have the shape g ≡[0] e;g + f, got {0}")]
    BadHypothesis(Judgement),
}

fn sum_items(alphabet: &Alphabet, mut item: impl FnMut(char) -> Regex, bit: Regex) -> Regex {
    Regex::sum_of(alphabet.symbols().iter().map(|&a| item(a)).chain(std::iter::once(bit)))
}

fn rearranged(from: &Regex, to: &Regex) -> Proof {
    rearrange(from, to).unwrap_or_else(|| panic!("{from} and {to} do not rearrange"))
}

/// A proof of `e ≡₀ a₁;e_{a₁} + … + aₙ;e_{aₙ} + o(e)` over `alphabet`.
pub fn normal_form_proof(e: &Regex, alphabet: &Alphabet) -> Result<Proof, LemmaError> {
    if let Some(&letter) = e.letters().iter().find(|c| !alphabet.contains(**c)) {
        return Err(LemmaError::LetterOutsideAlphabet {
            letter,
            alphabet: alphabet.clone(),
        });
    }
    Ok(nf(e, alphabet))
}

fn nf(e: &Regex, alphabet: &Alphabet) -> Proof {
    let target = fundamental_decomposition(e, alphabet);
    let letters = alphabet.symbols();
    match e {
        Regex::Zero | Regex::One | Regex::Letter(_) => {
            // a;0 ≡ 0 by S0 and a;1 ≡ a by S1, then the sum collapses to e
            let mut steps: Vec<Proof> = letters
                .iter()
                .map(|&a| {
                    let d = step(e, a);
                    let lhs = Regex::seq(Regex::letter(a), d.clone());
                    match d {
                        Regex::Zero => axiom(Rule::S0, lhs, Regex::Zero),
                        _ => axiom(Rule::S1, lhs, Regex::letter(a)),
                    }
                })
                .collect();
            steps.push(refl(Regex::bit(output(e))));
            let simplified = sum_congr(steps);
            symm(trans(simplified.clone(), rearranged(&simplified.conclusion.right, e)))
        }
        Regex::Sum(f, g) => {
            let split = nexp_sum(nf(f, alphabet), nf(g, alphabet));
            let paired = sum_items(
                alphabet,
                |a| {
                    Regex::sum(
                        Regex::seq(Regex::letter(a), step(f, a)),
                        Regex::seq(Regex::letter(a), step(g, a)),
                    )
                },
                Regex::bit(output(e)),
            );
            let regroup = rearranged(&split.conclusion.right, &paired);
            let mut factor: Vec<Proof> = letters
                .iter()
                .map(|&a| {
                    symm(axiom(
                        Rule::D1,
                        Regex::seq(Regex::letter(a), step(e, a)),
                        Regex::sum(
                            Regex::seq(Regex::letter(a), step(f, a)),
                            Regex::seq(Regex::letter(a), step(g, a)),
                        ),
                    ))
                })
                .collect();
            factor.push(refl(Regex::bit(output(e))));
            chain(vec![split, regroup, sum_congr(factor)])
        }
        Regex::Seq(f, g) => {
            let g = g.as_ref();
            let nf_f = nf(f, alphabet);
            let unfolded_f = nf_f.conclusion.right.clone();
            let lift = nexp_seq(nf_f, refl(g.clone()));
            let spread = distribute_right(&unfolded_f, letters.len() + 1, g);
            // (a;f_a);g ≡ a;(f_a;g), and o(f);g ≡ 0 or ≡ g ≡ nf(g)
            let mut tidy: Vec<Proof> = letters
                .iter()
                .map(|&a| {
                    let fa = step(f, a);
                    symm(axiom(
                        Rule::S,
                        Regex::seq(Regex::letter(a), Regex::seq(fa.clone(), g.clone())),
                        Regex::seq(Regex::seq(Regex::letter(a), fa), g.clone()),
                    ))
                })
                .collect();
            let o_f = output(f);
            let tail = if o_f {
                trans(
                    axiom(Rule::OneS, Regex::seq(Regex::One, g.clone()), g.clone()),
                    nf(g, alphabet),
                )
            } else {
                axiom(Rule::ZeroS, Regex::seq(Regex::Zero, g.clone()), Regex::Zero)
            };
            tidy.push(tail);
            let tidy = sum_congr(tidy);
            let reached = tidy.conclusion.right.clone();
            let finish = if o_f {
                let paired = sum_items(
                    alphabet,
                    |a| {
                        Regex::sum(
                            Regex::seq(Regex::letter(a), Regex::seq(step(f, a), g.clone())),
                            Regex::seq(Regex::letter(a), step(g, a)),
                        )
                    },
                    Regex::bit(output(g)),
                );
                let mut factor: Vec<Proof> = letters
                    .iter()
                    .map(|&a| {
                        symm(axiom(
                            Rule::D1,
                            Regex::seq(Regex::letter(a), step(e, a)),
                            Regex::sum(
                                Regex::seq(Regex::letter(a), Regex::seq(step(f, a), g.clone())),
                                Regex::seq(Regex::letter(a), step(g, a)),
                            ),
                        ))
                    })
                    .collect();
                factor.push(refl(Regex::bit(output(g))));
                trans(rearranged(&reached, &paired), sum_congr(factor))
            } else {
                // the summands differ from the target only by `+ 0` inside
                rearranged(&reached, &target)
            };
            chain(vec![lift, spread, tidy, finish])
        }
        Regex::Star(f) => {
            let nf_f = nf(f, alphabet);
            let x = Regex::sum_of(letters.iter().map(|&a| Regex::seq(Regex::letter(a), step(f, a))));
            // f* ≡ (x + o(f))* ≡ x*
            let inner = nexp_star(nf_f);
            let drop_bit = if output(f) {
                axiom(
                    Rule::Tight,
                    Regex::star(Regex::sum(x.clone(), Regex::One)),
                    Regex::star(x.clone()),
                )
            } else {
                nexp_star(axiom(Rule::SL4, Regex::sum(x.clone(), Regex::Zero), x.clone()))
            };
            let to_x_star = trans(inner, drop_bit);
            let unroll = axiom(
                Rule::Unroll,
                Regex::star(x.clone()),
                Regex::sum(Regex::seq(x.clone(), Regex::star(x.clone())), Regex::One),
            );
            // x;x* + 1 ≡ x;f* + 1
            let back = nexp_sum(nexp_seq(refl(x.clone()), symm(to_x_star.clone())), refl(Regex::One));
            let spread = nexp_sum(distribute_right(&x, letters.len(), e), refl(Regex::One));
            let mut assoc: Vec<Proof> = letters
                .iter()
                .map(|&a| {
                    let fa = step(f, a);
                    symm(axiom(
                        Rule::S,
                        Regex::seq(Regex::letter(a), Regex::seq(fa.clone(), e.clone())),
                        Regex::seq(Regex::seq(Regex::letter(a), fa), e.clone()),
                    ))
                })
                .collect();
            assoc.push(refl(Regex::One));
            chain(vec![to_x_star, unroll, back, spread, sum_congr(assoc)])
        }
    }
}

/// From a proof of `f ≡_ε g`, a proof of `e;f ≡_{eps_out} e;g`, for `e`
/// not accepting the empty word and `eps_out ≥ λ·ε`.
pub fn generalized_prefix(premise: Proof, e: &Regex, eps_out: &Rational, cfg: &Config) -> Result<Proof, LemmaError> {
    if output(e) {
        return Err(LemmaError::AcceptsEmptyWord(e.clone()));
    }
    if eps_out < &(cfg.lambda() * &premise.conclusion.eps) {
        return Err(LemmaError::TooTight {
            out: format_rational(eps_out),
            premise: format_rational(&premise.conclusion.eps),
        });
    }
    Ok(prefix(premise, e, eps_out))
}

fn prefix(premise: Proof, e: &Regex, eps_out: &Rational) -> Proof {
    let (f, g) = (premise.conclusion.left.clone(), premise.conclusion.right.clone());
    match e {
        Regex::Zero => {
            let collapse = axiom(Rule::ZeroS, Regex::seq(Regex::Zero, f), Regex::Zero);
            let expand = symm(axiom(Rule::ZeroS, Regex::seq(Regex::Zero, g), Regex::Zero));
            weaken(trans(collapse, expand), eps_out)
        }
        Regex::Letter(a) => npref(*a, premise, eps_out.clone()),
        Regex::Sum(e1, e2) => {
            let both = sl5(prefix(premise.clone(), e1, eps_out), prefix(premise, e2, eps_out));
            let split = axiom(
                Rule::D2,
                Regex::seq(e.clone(), f.clone()),
                Regex::sum(
                    Regex::seq(e1.as_ref().clone(), f.clone()),
                    Regex::seq(e2.as_ref().clone(), f),
                ),
            );
            let join = symm(axiom(
                Rule::D2,
                Regex::seq(e.clone(), g.clone()),
                Regex::sum(
                    Regex::seq(e1.as_ref().clone(), g.clone()),
                    Regex::seq(e2.as_ref().clone(), g),
                ),
            ));
            weaken(chain(vec![split, both, join]), eps_out)
        }
        Regex::Seq(e1, e2) => {
            let (e1, e2) = (e1.as_ref(), e2.as_ref());
            let inner = match (output(e1), output(e2)) {
                (false, false) | (true, false) => {
                    let tail = prefix(premise, e2, eps_out);
                    if output(e1) {
                        nexp_seq(weaken(refl(e1.clone()), eps_out), tail)
                    } else {
                        prefix(tail, e1, eps_out)
                    }
                }
                (false, true) => {
                    let eps = premise.conclusion.eps.clone();
                    let tail = nexp_seq(weaken(refl(e2.clone()), &eps), premise);
                    prefix(tail, e1, eps_out)
                }
                (true, true) => unreachable!("e accepts the empty word"),
            };
            let open = symm(axiom(
                Rule::S,
                Regex::seq(e1.clone(), Regex::seq(e2.clone(), f.clone())),
                Regex::seq(e.clone(), f),
            ));
            let close = axiom(
                Rule::S,
                Regex::seq(e1.clone(), Regex::seq(e2.clone(), g.clone())),
                Regex::seq(e.clone(), g),
            );
            weaken(chain(vec![open, inner, close]), eps_out)
        }
        Regex::One | Regex::Star(_) => unreachable!("e accepts the empty word"),
    }
}

/// Splits `g ≡₀ e;g + f` into `(e, f)`, checking the side condition on `e`.
fn loop_parts(hyp: &Judgement) -> Result<(Regex, Regex), LemmaError> {
    let bad = || LemmaError::BadHypothesis(hyp.clone());
    let Regex::Sum(eg, f) = &hyp.right else {
        return Err(bad());
    };
    let Regex::Seq(e, g) = eg.as_ref() else {
        return Err(bad());
    };
    if g.as_ref() != &hyp.left || !hyp.eps.is_zero() {
        return Err(bad());
    }
    if output(e) {
        return Err(LemmaError::AcceptsEmptyWord(e.as_ref().clone()));
    }
    Ok((e.as_ref().clone(), f.as_ref().clone()))
}

/// From the hypothesis `g ≡₀ e;g + f`, a proof of `g ≡_{λⁿ} e*;f`.
pub fn star_unroll_proof(hyp: &Judgement, n: u32, cfg: &Config) -> Result<Proof, LemmaError> {
    let (e, f) = loop_parts(hyp)?;
    let g = hyp.left.clone();
    let target = Regex::seq(Regex::star(e.clone()), f.clone());
    let mut proof = top(g.clone(), target.clone());
    for k in 1..=n {
        let eps = cfg.pow(k);
        // e;g + f ≡ e;(e*;f) + f
        let inner = sl5(prefix(proof, &e, &eps), refl(f.clone()));
        let star = Regex::star(e.clone());
        let e_star = Regex::seq(e.clone(), star.clone());
        let steps = vec![
            hypothesis(hyp.clone()),
            inner,
            nexp_sum(
                axiom(
                    Rule::S,
                    Regex::seq(e.clone(), target.clone()),
                    Regex::seq(e_star.clone(), f.clone()),
                ),
                symm(axiom(Rule::OneS, Regex::seq(Regex::One, f.clone()), f.clone())),
            ),
            symm(axiom(
                Rule::D2,
                Regex::seq(Regex::sum(e_star.clone(), Regex::One), f.clone()),
                Regex::sum(Regex::seq(e_star.clone(), f.clone()), Regex::seq(Regex::One, f.clone())),
            )),
            nexp_seq(
                symm(axiom(Rule::Unroll, star.clone(), Regex::sum(e_star, Regex::One))),
                refl(f.clone()),
            ),
        ];
        proof = chain(steps);
    }
    Ok(proof)
}

/// From the hypothesis `g ≡₀ e;g + f`, the template concluding `g ≡₀ e*;f`
/// whose `n`th instance is [`star_unroll_proof`].
pub fn salomaa_rule(hyp: &Judgement, _cfg: &Config) -> Result<Proof, LemmaError> {
    let (e, f) = loop_parts(hyp)?;
    Ok(std::sync::Arc::new(Derivation {
        conclusion: Judgement::new(hyp.left.clone(), Regex::seq(Regex::star(e), f), Rational::zero()),
        rule: Rule::ContTemplate,
        premises: vec![],
        meta: Meta::Template {
            schema: Schema::StarUnroll {
                hypothesis: hyp.clone(),
            },
            spot_indices: vec![],
        },
    }))
}
