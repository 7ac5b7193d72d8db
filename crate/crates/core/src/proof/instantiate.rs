//! Ground instantiation of universal axioms.

use std::collections::HashSet;

use crate::enumerate::advance_tuple;
use crate::proof::cc::{CongruenceClosure, NodeId};
use crate::syntax::{Formula, Sentence, Term};

/// An axiom left out of a ground instantiation, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedAxiom {
    pub axiom: Sentence,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroundInstantiation {
    pub sentences: Vec<Sentence>,
    pub skipped: Vec<SkippedAxiom>,
}

/// Splits `forall x1 ... xk. M` into its variables and quantifier-free matrix.
pub fn universal_prefix(phi: &Formula) -> Option<(Vec<String>, &Formula)> {
    let mut vars = Vec::new();
    let mut body = phi;
    while let Formula::Forall(v, b) = body {
        vars.push(v.clone());
        body = b;
    }
    body.is_quantifier_free().then_some((vars, body))
}

fn substitute_all(phi: &Formula, vars: &[String], values: &[&Term]) -> Formula {
    vars.iter()
        .zip(values)
        .fold(phi.clone(), |acc, (v, t)| acc.substitute(v, t))
}

/// Instantiates each prenex-universal axiom with at most `var_bound` variables
/// over every tuple of `terms`; quantifier-free axioms pass through unchanged.
pub fn ground_instantiate(axioms: &[Sentence], terms: &[Term], var_bound: usize) -> GroundInstantiation {
    let mut out = GroundInstantiation::default();
    for ax in axioms {
        let Some((vars, matrix)) = universal_prefix(ax) else {
            out.skipped.push(SkippedAxiom {
                axiom: ax.clone(),
                reason: "not prenex universal".into(),
            });
            continue;
        };
        if vars.len() > var_bound {
            out.skipped.push(SkippedAxiom {
                axiom: ax.clone(),
                reason: format!("{} universal variables exceed the bound {var_bound}", vars.len()),
            });
            continue;
        }
        if vars.is_empty() {
            out.sentences.push(matrix.clone());
            continue;
        }
        if terms.is_empty() {
            continue;
        }
        let mut idx = vec![0; vars.len()];
        loop {
            let values: Vec<&Term> = idx.iter().map(|&i| &terms[i]).collect();
            out.sentences.push(substitute_all(matrix, &vars, &values));
            if !advance_tuple(&mut idx, terms.len()) {
                break;
            }
        }
    }
    out
}

/// A universally quantified equation `forall vars. lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Equation {
    pub vars: Vec<String>,
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn from_sentence(phi: &Sentence) -> Option<Equation> {
        let (vars, matrix) = universal_prefix(phi)?;
        match matrix {
            Formula::Equal(l, r) => Some(Equation {
                vars,
                lhs: l.clone(),
                rhs: r.clone(),
            }),
            _ => None,
        }
    }

    fn instance(&self, values: &[&Term]) -> (Term, Term) {
        let sub = |t: &Term| {
            self.vars
                .iter()
                .zip(values)
                .fold(t.clone(), |acc, (v, val)| acc.substitute(v, val))
        };
        (sub(&self.lhs), sub(&self.rhs))
    }
}

/// Instantiates `equations` over class representatives of `universe` until no
/// new instance applies. Representatives are earliest universe members of each
/// class; an instance over arbitrary universe terms is congruent to the
/// instance over their representatives, so this reaches the same closure as
/// instantiating over the whole universe. Returns false when some equation was
/// skipped because its instance count exceeded `instance_cap`.
pub(crate) fn saturate(cc: &mut CongruenceClosure, universe: &[Term], equations: &[Equation], instance_cap: usize) -> bool {
    let nodes: Vec<NodeId> = universe.iter().map(|t| cc.add_term(t)).collect();
    let mut order: Vec<&Equation> = equations.iter().collect();
    order.sort_by_key(|e| e.vars.len());
    let mut done: HashSet<(usize, Vec<usize>)> = HashSet::new();
    loop {
        let mut progressed = false;
        let mut truncated = false;
        for (ei, eq) in order.iter().enumerate() {
            let reps = representatives(cc, &nodes);
            if eq.vars.is_empty() {
                if done.insert((ei, Vec::new())) {
                    cc.merge_terms(&eq.lhs, &eq.rhs);
                    progressed = true;
                }
                continue;
            }
            let count = reps.len().checked_pow(eq.vars.len() as u32);
            if count.is_none_or(|c| c > instance_cap) {
                truncated = true;
                continue;
            }
            let mut idx = vec![0; eq.vars.len()];
            loop {
                let tuple: Vec<usize> = idx.iter().map(|&i| reps[i]).collect();
                if done.insert((ei, tuple.clone())) {
                    let values: Vec<&Term> = tuple.iter().map(|&i| &universe[i]).collect();
                    let (l, r) = eq.instance(&values);
                    cc.merge_terms(&l, &r);
                    progressed = true;
                }
                if !advance_tuple(&mut idx, reps.len()) {
                    break;
                }
            }
        }
        if !progressed {
            return !truncated;
        }
    }
}

/// Universe positions of the earliest member of each class.
fn representatives(cc: &CongruenceClosure, nodes: &[NodeId]) -> Vec<usize> {
    let mut seen = HashSet::new();
    nodes
        .iter()
        .enumerate()
        .filter(|(_, &n)| seen.insert(cc.find(n)))
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn instantiates_left_identity_over_constants() {
        let m = fixtures::monoid();
        let terms = vec![Term::constant("e"), Term::constant("a")];
        let gi = ground_instantiate(&m.axioms[..1], &terms, 2);
        let shown: Vec<String> = gi.sentences.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["mul(e,e) = e", "mul(e,a) = a"]);
        assert!(gi.skipped.is_empty());
    }

    #[test]
    fn skips_over_bound_and_non_universal_axioms() {
        let m = fixtures::monoid();
        let terms = vec![Term::constant("e")];
        let gi = ground_instantiate(&m.axioms, &terms, 2);
        assert_eq!(gi.sentences.len(), 2);
        assert_eq!(gi.skipped.len(), 1);
        assert_eq!(gi.skipped[0].axiom, m.axioms[2]);

        let w = fixtures::witness();
        let gi = ground_instantiate(&w.axioms, &terms, 3);
        assert!(gi.sentences.is_empty());
        assert_eq!(gi.skipped[0].reason, "not prenex universal");
    }

    #[test]
    fn instance_count_is_a_power() {
        let m = fixtures::monoid();
        let terms: Vec<Term> = crate::enumerate::enumerate_ground_terms(&m.signature, 1);
        let gi = ground_instantiate(&m.axioms, &terms, 3);
        assert_eq!(gi.sentences.len(), 6 + 6 + 216);
    }
}
