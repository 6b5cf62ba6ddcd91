//! Distance-0 proofs that rearrange sums: associativity, commutativity,
//! idempotence and the unit `0`, applied everywhere in an expression.

use super::build::{axiom, nexp_seq, nexp_star, nexp_sum, refl, symm, trans};
use super::{Proof, Rule};
use crate::syntax::{merge_sorted, Regex};

/// Sorted, duplicate-free summands with `0` summands dropped, recursively
/// beneath `;` and `*`.
fn items(e: &Regex) -> Vec<Regex> {
    match e {
        Regex::Zero => Vec::new(),
        Regex::One | Regex::Letter(_) => vec![e.clone()],
        Regex::Seq(l, r) => vec![Regex::seq(zero_free_form(l), zero_free_form(r))],
        Regex::Star(b) => vec![Regex::star(zero_free_form(b))],
        Regex::Sum(l, r) => merge_sorted(items(l), items(r)),
    }
}

/// Right-nested sum of the items; `0` when there are none.
fn from_items(items: &[Regex]) -> Regex {
    match items {
        [] => Regex::Zero,
        [x] => x.clone(),
        [x, rest @ ..] => Regex::sum(x.clone(), from_items(rest)),
    }
}

/// The representative reached by [`normalize`]. Expressions that are equal
/// up to ACI of `+` and the law `e + 0 = e` have the same form.
pub fn zero_free_form(e: &Regex) -> Regex {
    from_items(&items(e))
}

/// A proof of `e ≡₀ zero_free_form(e)` from `SL1`–`SL4` and `NExp`.
pub fn normalize(e: &Regex) -> Proof {
    match e {
        Regex::Zero | Regex::One | Regex::Letter(_) => refl(e.clone()),
        Regex::Seq(l, r) => nexp_seq(normalize(l), normalize(r)),
        Regex::Star(b) => nexp_star(normalize(b)),
        Regex::Sum(l, r) => {
            let parts = nexp_sum(normalize(l), normalize(r));
            trans(parts, merge(&items(l), &items(r)))
        }
    }
}

/// `e ≡₀ f` when both have the same [`zero_free_form`].
pub fn rearrange(e: &Regex, f: &Regex) -> Option<Proof> {
    if e == f {
        return Some(refl(e.clone()));
    }
    let (pe, pf) = (normalize(e), normalize(f));
    (pe.conclusion.right == pf.conclusion.right).then(|| trans(pe, symm(pf)))
}

/// `from_items(l) + from_items(r) ≡₀ from_items(l ∪ r)`
fn merge(l: &[Regex], r: &[Regex]) -> Proof {
    let (le, re) = (from_items(l), from_items(r));
    match (l, r) {
        ([], []) => axiom(Rule::SL4, Regex::sum(Regex::Zero, Regex::Zero), Regex::Zero),
        ([], _) => trans(
            axiom(
                Rule::SL2,
                Regex::sum(Regex::Zero, re.clone()),
                Regex::sum(re.clone(), Regex::Zero),
            ),
            axiom(Rule::SL4, Regex::sum(re.clone(), Regex::Zero), re),
        ),
        (_, []) => axiom(Rule::SL4, Regex::sum(le.clone(), Regex::Zero), le),
        ([x], _) => insert(x, r),
        ([x, rest @ ..], _) => {
            let rest_e = from_items(rest);
            let assoc = axiom(
                Rule::SL3,
                Regex::sum(le, re.clone()),
                Regex::sum(x.clone(), Regex::sum(rest_e, re)),
            );
            let inner = nexp_sum(refl(x.clone()), merge(rest, r));
            let merged = merge_sorted(rest.to_vec(), r.to_vec());
            trans(trans(assoc, inner), insert(x, &merged))
        }
    }
}

/// `x + from_items(m) ≡₀ from_items({x} ∪ m)` for nonempty sorted `m`.
fn insert(x: &Regex, m: &[Regex]) -> Proof {
    let y = &m[0];
    let me = from_items(m);
    if x < y {
        return refl(Regex::sum(x.clone(), me));
    }
    match &m[1..] {
        [] => {
            if x == y {
                axiom(Rule::SL1, Regex::sum(x.clone(), x.clone()), x.clone())
            } else {
                axiom(
                    Rule::SL2,
                    Regex::sum(x.clone(), y.clone()),
                    Regex::sum(y.clone(), x.clone()),
                )
            }
        }
        rest => {
            let rest_e = from_items(rest);
            // x + (y + rest) ≡ (x + y) + rest
            let unassoc = symm(axiom(
                Rule::SL3,
                Regex::sum(Regex::sum(x.clone(), y.clone()), rest_e.clone()),
                Regex::sum(x.clone(), me),
            ));
            if x == y {
                let collapse = nexp_sum(
                    axiom(Rule::SL1, Regex::sum(x.clone(), x.clone()), x.clone()),
                    refl(rest_e),
                );
                trans(unassoc, collapse)
            } else {
                let swap = nexp_sum(
                    axiom(
                        Rule::SL2,
                        Regex::sum(x.clone(), y.clone()),
                        Regex::sum(y.clone(), x.clone()),
                    ),
                    refl(rest_e.clone()),
                );
                let reassoc = axiom(
                    Rule::SL3,
                    Regex::sum(Regex::sum(y.clone(), x.clone()), rest_e.clone()),
                    Regex::sum(y.clone(), Regex::sum(x.clone(), rest_e)),
                );
                let deeper = nexp_sum(refl(y.clone()), insert(x, rest));
                trans(trans(trans(unassoc, swap), reassoc), deeper)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::{check, Certificate};
    use crate::Config;

    fn re(s: &str) -> Regex {
        Regex::parse_any(s).unwrap()
    }

    fn checks(p: &Proof) {
        let cert = Certificate::new(Config::default().lambda().clone(), p.clone());
        if let Err(err) = check(&cert, &Config::default()) {
            panic!("{err}\n{p:?}");
        }
    }

    #[test]
    fn forms() {
        assert_eq!(zero_free_form(&re("b + a + 0 + a")), re("a + b"));
        assert_eq!(zero_free_form(&re("0 + 0")), re("0"));
        assert_eq!(zero_free_form(&re("(c+0);(b+a)*")), re("c;(a + b)*"));
    }

    #[test]
    fn normalize_checks() {
        for text in [
            "a",
            "a + a",
            "b + a",
            "(a+b)+c",
            "c + (b + a)",
            "a + 0",
            "0 + a",
            "0 + 0",
            "(b + a + b + 0);(c + c)*",
            "a + b + a + c + b + 0 + a",
            "((1+b)+(a+1))*",
        ] {
            let e = re(text);
            let p = normalize(&e);
            assert_eq!(p.conclusion.left, e);
            assert_eq!(p.conclusion.right, zero_free_form(&e));
            checks(&p);
        }
    }

    #[test]
    fn rearrange_matches_sums() {
        let p = rearrange(&re("a + (c + b)"), &re("(b + c) + a + 0")).unwrap();
        checks(&p);
        assert!(rearrange(&re("a"), &re("b")).is_none());
    }
}
