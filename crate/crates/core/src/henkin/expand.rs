//! Witness constants for provable existential sentences.

use std::collections::BTreeSet;

use crate::enumerate::enumerate_sentences;
use crate::modelfind::search::{ModelPool, Searcher};
use crate::modelfind::{find_model, FiniteModel};
use crate::proof::tableau::refutes;
use crate::syntax::{Formula, Sentence, Signature, Theory};

/// A closed existential sentence and the constant chosen to witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub sentence: Sentence,
    pub constant: String,
    /// Whether the constant was introduced for this sentence.
    pub fresh: bool,
    pub round: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HenkinExpansion {
    pub base: Theory,
    /// Base signature followed by the fresh witness constants in creation order.
    pub signature: Signature,
    pub witnesses: Vec<Witness>,
    /// `phi(c)` for each witness, in the order of `witnesses`.
    pub henkin_axioms: Vec<Sentence>,
    pub rounds: usize,
}

impl HenkinExpansion {
    /// The expansion with no witnesses.
    pub fn trivial(t: &Theory) -> HenkinExpansion {
        HenkinExpansion {
            base: t.clone(),
            signature: t.signature.clone(),
            witnesses: Vec::new(),
            henkin_axioms: Vec::new(),
            rounds: 0,
        }
    }

    /// Base axioms followed by the Henkin axioms, over the extended signature.
    pub fn theory(&self) -> Theory {
        Theory {
            name: self.base.name.clone(),
            signature: self.signature.clone(),
            axioms: self.base.axioms.iter().chain(&self.henkin_axioms).cloned().collect(),
        }
    }

    pub fn witness_for(&self, sentence: &Sentence) -> Option<&str> {
        self.witnesses
            .iter()
            .find(|w| w.sentence.alpha_eq(sentence))
            .map(|w| w.constant.as_str())
    }

    pub fn fresh_witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.fresh)
    }
}

/// Largest model pool enumerated for screening before falling back to search.
const POOL_LIMIT: usize = 20_000;

/// Settles unprovability by finite countermodels: either against every small
/// model at once, or by searching for a countermodel and caching it.
enum Screen {
    Pool(ModelPool),
    Search {
        found: Vec<FiniteModel>,
        /// False when the theory has no model within the bound, so searching is pointless.
        searchable: bool,
        max_model_size: usize,
    },
}

impl Screen {
    fn new(t: &Theory, max_model_size: usize) -> Screen {
        if let Some(pool) = ModelPool::enumerate(t, max_model_size, POOL_LIMIT) {
            return Screen::Pool(pool);
        }
        let first = find_model(t, max_model_size).ok();
        Screen::Search {
            searchable: first.is_some(),
            found: first.into_iter().collect(),
            max_model_size,
        }
    }

    /// True when some model of `t` within the bound falsifies `sigma`.
    fn refuted(&mut self, t: &Theory, sigma: &Sentence) -> bool {
        let (found, searchable, max_model_size) = match self {
            Screen::Pool(pool) => return pool.truth(sigma).contains(&false),
            Screen::Search {
                found,
                searchable,
                max_model_size,
            } => (found, *searchable, *max_model_size),
        };
        if found.iter().any(|m| !m.satisfies(sigma).unwrap_or(true)) {
            return true;
        }
        if !searchable {
            return false;
        }
        let negated = Formula::not(sigma.clone());
        let mut s = Searcher::with_sentences(&t.signature, t.axioms.iter().chain(std::iter::once(&negated)));
        if let Some(tables) = (1..=max_model_size).find_map(|size| s.search(&t.signature, size)) {
            found.push(FiniteModel::from_tables(t.clone(), &tables));
            return true;
        }
        false
    }
}

fn proves(t: &Theory, sigma: &Sentence, budget: usize) -> bool {
    let negated = Formula::not(sigma.clone());
    let premises: Vec<&Sentence> = std::iter::once(&negated).chain(&t.axioms).collect();
    refutes(&t.signature, &premises, budget)
}

/// Adds witnesses for the closed existential sentences, enumerated within
/// `formula_budget`, that the current theory proves.
///
/// Each round enumerates over the signature as of the previous round. A
/// sentence `exists x. phi` is witnessed by the first constant `c`, including
/// witnesses already added, with `phi(c)` provable, otherwise by a fresh
/// constant `_hN`; either way
/// `phi(c)` becomes a Henkin axiom. Unprovability is settled by finite
/// countermodels of size at most `max_model_size` where possible, and
/// provability by the tableau within `proof_budget` steps. Witnessing only
/// provable existentials keeps the expansion conservative.
pub fn henkin_expand(t: &Theory, rounds: usize, formula_budget: usize, proof_budget: usize, max_model_size: usize) -> HenkinExpansion {
    let mut e = HenkinExpansion::trivial(t);
    let mut fresh_count = 0;
    for round in 1..=rounds {
        let before = e.theory();
        let sig = before.signature.clone();
        let mut screen = Screen::new(&before, max_model_size);
        let mut added = false;
        for sigma in enumerate_sentences(&sig, formula_budget) {
            let Formula::Exists(x, body) = &sigma else { continue };
            if e.witness_for(&sigma).is_some() || screen.refuted(&before, &sigma) {
                continue;
            }
            // Witnesses made earlier in this round are candidates too. The
            // screen's models do not interpret them, so only the prover decides,
            // from the previous theory plus the Henkin axioms naming them.
            let existing = e.signature.constants().iter().find(|c| {
                let inst = body.substitute(x, &crate::syntax::Term::constant(c));
                if sig.is_declared(c) {
                    return !screen.refuted(&before, &inst) && proves(&before, &inst, proof_budget);
                }
                let mut local = before.clone();
                local.signature = e.signature.clone();
                local.axioms.extend(e.henkin_axioms.iter().filter(|a| mentions(a, c)).cloned());
                proves(&local, &inst, proof_budget)
            });
            let (constant, fresh) = match existing {
                Some(c) => (c.clone(), false),
                None => {
                    if !proves(&before, &sigma, proof_budget) {
                        continue;
                    }
                    (fresh_constant(&e.signature, &mut fresh_count), true)
                }
            };
            if fresh {
                e.signature.add_constant(constant.clone()).expect("fresh name is undeclared");
            }
            e.henkin_axioms.push(body.substitute(x, &crate::syntax::Term::constant(&constant)));
            e.witnesses.push(Witness {
                sentence: sigma.clone(),
                constant,
                fresh,
                round,
            });
            added = true;
        }
        e.rounds = round;
        if !added {
            break;
        }
    }
    e
}

fn mentions(phi: &Sentence, name: &str) -> bool {
    let mut symbols = BTreeSet::new();
    phi.symbols(&mut symbols);
    symbols.contains(name)
}

fn fresh_constant(sig: &Signature, count: &mut usize) -> String {
    let declared: BTreeSet<&str> = sig
        .constants()
        .iter()
        .map(String::as_str)
        .chain(sig.functions().iter().map(|f| f.name.as_str()))
        .chain(sig.predicates().iter().map(|p| p.name.as_str()))
        .collect();
    loop {
        let name = format!("_h{count}");
        *count += 1;
        if !declared.contains(name.as_str()) {
            return name;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn witness_fixture_gets_fresh_constant() {
        let w = fixtures::witness();
        let e = henkin_expand(&w, 1, 3, 200, 4);
        assert_eq!(e.witnesses.len(), 1);
        assert_eq!(e.witnesses[0].constant, "_h0");
        assert!(e.witnesses[0].fresh);
        assert_eq!(e.witnesses[0].sentence.to_string(), "exists x. P(x)");
        assert_eq!(e.henkin_axioms[0].to_string(), "P(_h0)");
        assert_eq!(e.signature.constants(), ["c".to_string(), "_h0".to_string()]);
    }

    #[test]
    fn zero_rounds_is_the_base_theory() {
        let w = fixtures::witness();
        let e = henkin_expand(&w, 0, 7, 200, 4);
        assert_eq!(e, HenkinExpansion::trivial(&w));
        assert_eq!(e.theory(), w);
    }

    #[test]
    fn monoid_existentials_use_existing_constants() {
        let m = fixtures::monoid();
        let e = henkin_expand(&m, 2, 5, 500, 3);
        assert!(!e.witnesses.is_empty());
        assert!(e.witnesses.iter().all(|w| !w.fresh));
        let refl = e.witnesses.iter().find(|w| w.sentence.to_string() == "exists x. x = x").unwrap();
        assert_eq!(refl.constant, "e");
        assert_eq!(e.witnesses.len(), e.henkin_axioms.len());
    }

    #[test]
    fn expansion_is_idempotent_after_convergence() {
        let w = fixtures::witness();
        let once = henkin_expand(&w, 1, 3, 200, 4);
        let thrice = henkin_expand(&w, 3, 3, 200, 4);
        assert_eq!(once.witnesses, thrice.witnesses);
    }
}
