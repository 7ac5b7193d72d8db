//! Bounded, deterministic completion of a Henkin expansion.

use thiserror::Error;

use super::expand::HenkinExpansion;
use crate::enumerate::enumerate_sentences;
use crate::modelfind::compile::{compile, Tables, Tri};
use crate::modelfind::search::{ModelPool, Searcher};
use crate::modelfind::{check_model, Counterexample, FiniteModel, ModelCheck, ModelError};
use crate::proof::tableau::refutes;
use crate::syntax::{Formula, Sentence, Term, Theory};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("theory is inconsistent: the tableau refutes a tautology")]
    Inconsistent,
    #[error("no model of size at most {max_model_size}")]
    OutOfDeskScale { max_model_size: usize },
    #[error("guide structure does not interpret the expansion: {0}")]
    GuideMismatch(ModelError),
    #[error("guide structure violates axiom {}: {}", .0.axiom_index, .0.axiom)]
    GuideNotAModel(Counterexample),
}

/// A Henkin expansion together with a decision for every enumerated sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletedTheory {
    pub expansion: HenkinExpansion,
    /// Enumerated sentences in order, with the polarity that was added.
    pub decided: Vec<(Sentence, bool)>,
    pub residual_unknowns: Vec<Sentence>,
    /// A model of everything decided; the least one when completed positive-first.
    pub witness_model: FiniteModel,
}

impl CompletedTheory {
    /// Base and Henkin axioms followed by the decided sentences or their negations.
    pub fn theory(&self) -> Theory {
        let mut t = self.expansion.theory();
        t.axioms.extend(self.decided.iter().map(|(s, positive)| literal(s, *positive)));
        t
    }

    pub fn positive_count(&self) -> usize {
        self.decided.iter().filter(|(_, p)| *p).count()
    }
}

fn literal(s: &Sentence, positive: bool) -> Sentence {
    if positive {
        s.clone()
    } else {
        Formula::not(s.clone())
    }
}

fn tautology() -> Sentence {
    Formula::forall("x", Formula::eq(Term::var("x"), Term::var("x")))
}

/// Distinguishes an inconsistent expansion from one whose models are all too
/// large: the former refutes the tautology `forall x. x = x`.
pub(crate) fn no_model_error(t: &Theory, max_model_size: usize, proof_budget: usize) -> CompletionError {
    let top = tautology();
    let premises: Vec<&Sentence> = std::iter::once(&top).chain(&t.axioms).collect();
    if refutes(&t.signature, &premises, proof_budget) {
        CompletionError::Inconsistent
    } else {
        CompletionError::OutOfDeskScale { max_model_size }
    }
}

/// Decides each sentence within `sentence_budget`, positive-first.
///
/// A sentence is added when the sentences decided so far together with it
/// have a model of size at most `max_model_size`, and negated otherwise.
/// Provable sentences always pass that test and refutable ones always fail
/// it, so proof search is only used to tell an inconsistent expansion from
/// one without small models.
///
/// When the small models are few they are enumerated once and filtered as
/// sentences are decided. Otherwise a current model of everything decided is
/// kept: a sentence true in it is added without search, and a successful
/// search replaces it. Because the first model is least and decided sets only
/// grow, the current model stays the least model of the decided set.
pub fn lindenbaum_complete(
    e: &HenkinExpansion,
    sentence_budget: usize,
    max_model_size: usize,
    proof_budget: usize,
) -> Result<CompletedTheory, CompletionError> {
    let t = e.theory();
    let sentences = enumerate_sentences(&t.signature, sentence_budget);
    let (decided, witness) = match ModelPool::enumerate(&t, max_model_size, POOL_LIMIT) {
        Some(pool) => complete_over_pool(pool, sentences),
        None => complete_by_search(&t, sentences, max_model_size),
    }
    .ok_or_else(|| no_model_error(&t, max_model_size, proof_budget))?;
    Ok(CompletedTheory {
        expansion: e.clone(),
        decided,
        residual_unknowns: Vec::new(),
        witness_model: FiniteModel::from_tables(t, &witness),
    })
}

/// Largest model pool enumerated before falling back to per-sentence search.
const POOL_LIMIT: usize = 20_000;

type Decisions = (Vec<(Sentence, bool)>, Tables);

/// With every small model at hand, a sentence is consistent with the decisions
/// so far exactly when one of the remaining models satisfies it.
fn complete_over_pool(mut pool: ModelPool, sentences: Vec<Sentence>) -> Option<Decisions> {
    if pool.models.is_empty() {
        return None;
    }
    let mut decided = Vec::with_capacity(sentences.len());
    for sigma in sentences {
        let truth = pool.truth(&sigma);
        let positive = truth.iter().any(|&b| b);
        if positive {
            pool.retain(&truth);
        }
        decided.push((sigma, positive));
    }
    let least = pool.models.swap_remove(0);
    Some((decided, least))
}

fn complete_by_search(t: &Theory, sentences: Vec<Sentence>, max_model_size: usize) -> Option<Decisions> {
    let sig = &t.signature;
    let mut searcher = Searcher::with_sentences(sig, &t.axioms);
    let mut current = (1..=max_model_size).find_map(|size| searcher.search(sig, size))?;
    let mut decided = Vec::with_capacity(sentences.len());
    for sigma in sentences {
        let compiled = compile(sig, &sigma, &[]).expect("sentence over the signature");
        searcher.push(sig, &sigma);
        let positive = if current.eval_closed(&compiled) == Tri::True {
            true
        } else {
            match (current.size..=max_model_size).find_map(|size| searcher.search(sig, size)) {
                Some(tables) => {
                    current = tables;
                    true
                }
                None => {
                    searcher.pop();
                    searcher.push(sig, &Formula::not(sigma.clone()));
                    false
                }
            }
        };
        decided.push((sigma, positive));
    }
    Some((decided, current))
}

/// Decides each sentence within `sentence_budget` by its truth in `guide`,
/// which must be a model of the expansion. The witness model is the least
/// model of the decisions when the small models can be enumerated, and the
/// guide otherwise.
pub fn lindenbaum_complete_guided(e: &HenkinExpansion, sentence_budget: usize, guide: &FiniteModel) -> Result<CompletedTheory, CompletionError> {
    let t = e.theory();
    let guide = guide.with_theory(t.clone()).map_err(CompletionError::GuideMismatch)?;
    match check_model(&guide, &t).map_err(CompletionError::GuideMismatch)? {
        ModelCheck::Pass => {}
        ModelCheck::Counterexample(c) => return Err(CompletionError::GuideNotAModel(c)),
    }
    let decided: Vec<(Sentence, bool)> = enumerate_sentences(&t.signature, sentence_budget)
        .into_iter()
        .map(|s| {
            let v = guide.satisfies(&s).expect("sentence over the model's signature");
            (s, v)
        })
        .collect();
    // The least model of the decisions has at most the guide's size.
    let least = ModelPool::enumerate(&t, guide.size, POOL_LIMIT).and_then(|mut pool| {
        for (s, positive) in &decided {
            let keep: Vec<bool> = pool.truth(s).iter().map(|&b| b == *positive).collect();
            pool.retain(&keep);
        }
        pool.models.into_iter().next()
    });
    let witness_model = match least {
        Some(tables) => FiniteModel::from_tables(t, &tables),
        None => guide,
    };
    Ok(CompletedTheory {
        expansion: e.clone(),
        decided,
        residual_unknowns: Vec::new(),
        witness_model,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modelfind::find_model;
    use crate::parse::parse_formula;

    fn decision(c: &CompletedTheory, s: &str) -> Option<bool> {
        let sig = &c.expansion.signature;
        let f = parse_formula(sig, s).unwrap();
        c.decided.iter().find(|(d, _)| *d == f).map(|(_, p)| *p)
    }

    #[test]
    fn trivial_theory_decides_reflexivity() {
        let e = HenkinExpansion::trivial(&fixtures::trivial());
        let c = lindenbaum_complete(&e, 3, 4, 100).unwrap();
        assert_eq!(decision(&c, "c = c"), Some(true));
    }

    #[test]
    fn monoid_collapses_generator() {
        let e = HenkinExpansion::trivial(&fixtures::monoid());
        let c = lindenbaum_complete(&e, 3, 4, 100).unwrap();
        assert_eq!(decision(&c, "e = a"), Some(true));
        assert_eq!(c.witness_model.size, 1);
    }

    #[test]
    fn z2_keeps_generator_apart() {
        let e = HenkinExpansion::trivial(&fixtures::z2());
        let c = lindenbaum_complete(&e, 3, 4, 100).unwrap();
        assert_eq!(decision(&c, "e = a"), Some(false));
        assert_eq!(c.witness_model.size, 2);
    }

    #[test]
    fn witness_model_is_least_model_of_completion() {
        let e = HenkinExpansion::trivial(&fixtures::z2());
        let c = lindenbaum_complete(&e, 5, 4, 100).unwrap();
        let least = find_model(&c.theory(), 4).unwrap();
        assert_eq!(least.fn_tables, c.witness_model.fn_tables);
        assert_eq!(least.const_table, c.witness_model.const_table);
    }

    #[test]
    fn infinite_only_theory_is_out_of_scale() {
        let e = HenkinExpansion::trivial(&fixtures::zf_stub());
        assert_eq!(
            lindenbaum_complete(&e, 3, 3, 200),
            Err(CompletionError::OutOfDeskScale { max_model_size: 3 })
        );
    }

    #[test]
    fn contradictory_theory_is_inconsistent() {
        let t = crate::parse::parse_theory("theory Bad\nconst c\naxiom ~(c = c)\n").unwrap();
        let e = HenkinExpansion::trivial(&t);
        assert_eq!(lindenbaum_complete(&e, 3, 3, 100), Err(CompletionError::Inconsistent));
    }

    #[test]
    fn guided_completion_follows_the_guide() {
        let z = fixtures::z2();
        let e = HenkinExpansion::trivial(&fixtures::monoid());
        let guide = find_model(&z, 4).unwrap().with_theory(e.theory()).unwrap();
        let c = lindenbaum_complete_guided(&e, 4, &guide).unwrap();
        assert_eq!(decision(&c, "e = a"), Some(false));
        assert_eq!(decision(&c, "e = mul(a,a)"), None);
        let c = lindenbaum_complete_guided(&e, 5, &guide).unwrap();
        assert_eq!(decision(&c, "e = mul(a,a)"), Some(true));
        let least = find_model(&c.theory(), 4).unwrap();
        assert_eq!((c.witness_model.const_table, c.witness_model.fn_tables), (least.const_table, least.fn_tables));
    }
}
