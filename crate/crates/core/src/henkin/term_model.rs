//! The quotient term model of a completed theory and its action on translations.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use super::expand::HenkinExpansion;
use super::lindenbaum::CompletedTheory;
use crate::enumerate::{advance_tuple, enumerate_ground_terms};
use crate::modelfind::compile::row_index;
use crate::proof::cc::{CongruenceClosure, Partition};
use crate::proof::instantiate::{saturate, Equation};
use crate::syntax::{Formula, Sentence, Term};
use crate::translation::{ObligationFailure, SymbolMap, TheoryTranslation, TranslationError};

/// Cap on instances per equation while saturating the universe.
const INSTANCE_CAP: usize = 250_000;

/// Operation table on classes; `None` marks a tuple whose application is not
/// provably equal to any term of the universe.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpTable {
    pub name: String,
    pub arity: usize,
    pub entries: Vec<Option<usize>>,
}

/// Predicate table on classes; `None` where no ground atom was decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredTable {
    pub name: String,
    pub arity: usize,
    pub entries: Vec<Option<bool>>,
}

#[derive(Clone, Debug)]
pub struct TermModel {
    pub source: CompletedTheory,
    pub term_depth: usize,
    pub partition: Partition,
    pub op_tables: Vec<OpTable>,
    pub pred_tables: Vec<PredTable>,
    /// False when some equation had too many instances to saturate.
    pub saturation_complete: bool,
}

fn ground_equations<'a>(sentences: impl Iterator<Item = &'a Sentence>) -> Vec<Equation> {
    sentences.filter_map(Equation::from_sentence).collect()
}

/// Ground atoms and negated atoms, as (predicate, args, polarity).
fn ground_atoms(s: &Sentence) -> Option<(&str, &[Term], bool)> {
    match s {
        Formula::Pred(p, args) if args.iter().all(Term::is_ground) => Some((p, args, true)),
        Formula::Not(b) => match b.as_ref() {
            Formula::Pred(p, args) if args.iter().all(Term::is_ground) => Some((p, args, false)),
            _ => None,
        },
        _ => None,
    }
}

/// Quotients the ground terms of depth at most `term_depth` by the equalities
/// the completion decides: its ground equations and the instances of its
/// universal equations, closed under congruence.
pub fn build_term_model(c: &CompletedTheory, term_depth: usize) -> TermModel {
    let theory = c.theory();
    let sig = &theory.signature;
    let universe = enumerate_ground_terms(sig, term_depth);
    let equations = ground_equations(theory.axioms.iter());
    let mut cc = CongruenceClosure::new();
    let saturation_complete = saturate(&mut cc, &universe, &equations, INSTANCE_CAP);
    let partition = Partition::from_closure(&cc, universe);

    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    for (t, &class) in partition.universe.iter().zip(&partition.class_of) {
        class_of_root.entry(cc.lookup(t).expect("universe term")).or_insert(class);
    }
    let n = partition.num_classes();
    let rep_roots: Vec<usize> = (0..n)
        .map(|k| cc.lookup(partition.representative(k)).expect("universe term"))
        .collect();
    let op_tables = sig
        .functions()
        .iter()
        .map(|f| {
            let mut entries = Vec::with_capacity(n.pow(f.arity as u32));
            let mut idx = vec![0; f.arity];
            loop {
                let args: Vec<usize> = idx.iter().map(|&k| rep_roots[k]).collect();
                entries.push(cc.lookup_app(&f.name, &args).and_then(|root| class_of_root.get(&root).copied()));
                if !advance_tuple(&mut idx, n) {
                    break;
                }
            }
            OpTable {
                name: f.name.clone(),
                arity: f.arity,
                entries,
            }
        })
        .collect();

    let mut pred_tables: Vec<PredTable> = sig
        .predicates()
        .iter()
        .map(|p| PredTable {
            name: p.name.clone(),
            arity: p.arity,
            entries: vec![None; n.pow(p.arity as u32)],
        })
        .collect();
    for (p, args, positive) in theory.axioms.iter().filter_map(ground_atoms) {
        let classes: Option<Vec<usize>> = args
            .iter()
            .map(|a| cc.lookup(a).and_then(|root| class_of_root.get(&root).copied()))
            .collect();
        let (Some(classes), Some(pi)) = (classes, sig.predicate_index(p)) else { continue };
        let slot = &mut pred_tables[pi].entries[row_index(n, classes)];
        if slot.is_none() {
            *slot = Some(positive);
        }
    }

    TermModel {
        source: c.clone(),
        term_depth,
        partition,
        op_tables,
        pred_tables,
        saturation_complete,
    }
}

impl TermModel {
    pub fn universe(&self) -> &[Term] {
        &self.partition.universe
    }

    pub fn num_classes(&self) -> usize {
        self.partition.num_classes()
    }

    pub fn expansion(&self) -> &HenkinExpansion {
        &self.source.expansion
    }

    pub fn representative(&self, class: usize) -> &Term {
        self.partition.representative(class)
    }

    pub fn op(&self, f: &str, args: &[usize]) -> Option<usize> {
        let table = self.op_tables.iter().find(|t| t.name == f)?;
        table.entries[row_index(self.num_classes(), args.iter().copied())]
    }

    pub fn pred(&self, p: &str, args: &[usize]) -> Option<bool> {
        let table = self.pred_tables.iter().find(|t| t.name == p)?;
        table.entries[row_index(self.num_classes(), args.iter().copied())]
    }

    /// The class of any ground term: universe members directly, deeper terms
    /// through the operation tables.
    pub fn class_of_term(&self, t: &Term) -> Option<usize> {
        if let Some(c) = self.partition.class_of_term(t) {
            return Some(c);
        }
        match t {
            Term::Apply(f, args) => {
                let classes = args.iter().map(|a| self.class_of_term(a)).collect::<Option<Vec<_>>>()?;
                self.op(f, &classes)
            }
            _ => None,
        }
    }

    /// Fraction of operation-table entries that are defined.
    pub fn op_coverage(&self) -> f64 {
        let total: usize = self.op_tables.iter().map(|t| t.entries.len()).sum();
        if total == 0 {
            return 1.0;
        }
        let defined: usize = self.op_tables.iter().map(|t| t.entries.iter().flatten().count()).sum();
        defined as f64 / total as f64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TermModelMapError {
    #[error("obligation fails: {} translates to {} ({})", .0.axiom, .0.translated, .0.verdict)]
    Obligation(ObligationFailure),
    #[error("witness {witness} for `{sentence}` has no counterpart: the target does not witness `{translated}`")]
    WitnessOutsideTarget {
        witness: String,
        sentence: String,
        translated: String,
    },
    #[error(transparent)]
    Translation(#[from] TranslationError),
    #[error("the image of {term} is not a class of the target term model")]
    Unrepresented { term: String },
    #[error("class of {rep} is not mapped consistently: {rep} goes to class {rep_image} but {term} goes to class {image}")]
    IllDefined {
        rep: String,
        rep_image: usize,
        term: String,
        image: usize,
    },
}

/// Extends `phi` to the witness constants of `src` by sending the witness of
/// `exists x. psi` to the target's witness of the translated sentence.
pub fn extend_translation(phi: &TheoryTranslation, src: &HenkinExpansion, dst: &HenkinExpansion) -> Result<TheoryTranslation, TermModelMapError> {
    let mut map: SymbolMap = phi.symbol_map.clone();
    for w in src.fresh_witnesses() {
        let partial = TheoryTranslation {
            name: phi.name.clone(),
            source: phi.source.clone(),
            target: phi.target.clone(),
            symbol_map: map.clone(),
        };
        let translated = partial.map_formula(&w.sentence)?;
        let image = dst
            .witness_for(&translated)
            .ok_or_else(|| TermModelMapError::WitnessOutsideTarget {
                witness: w.constant.clone(),
                sentence: w.sentence.to_string(),
                translated: translated.to_string(),
            })?;
        map.insert(w.constant.clone(), image.to_string());
    }
    Ok(TheoryTranslation::new(phi.name.clone(), src.theory(), dst.theory(), map)?)
}

/// `F(phi)`: the class of `t` goes to the class of `phi(t)`. Obligations must
/// be discharged within `proof_budget`; every member of every class is checked
/// to land in the same target class.
pub fn map_term_model(phi: &TheoryTranslation, src: &TermModel, dst: &TermModel, proof_budget: usize) -> Result<Vec<usize>, TermModelMapError> {
    phi.discharge_obligations(proof_budget).map_err(TermModelMapError::Obligation)?;
    let ext = extend_translation(phi, src.expansion(), dst.expansion())?;
    let mut out: Vec<Option<(usize, &Term)>> = vec![None; src.num_classes()];
    for (t, &class) in src.universe().iter().zip(&src.partition.class_of) {
        let image = dst
            .class_of_term(&ext.map_term(t)?)
            .ok_or_else(|| TermModelMapError::Unrepresented { term: t.to_string() })?;
        match out[class] {
            None => out[class] = Some((image, t)),
            Some((first, rep)) if first != image => {
                return Err(TermModelMapError::IllDefined {
                    rep: rep.to_string(),
                    rep_image: first,
                    term: t.to_string(),
                    image,
                })
            }
            Some(_) => {}
        }
    }
    Ok(out.into_iter().map(|e| e.expect("every class has a member").0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::henkin::lindenbaum::lindenbaum_complete;

    fn completed(t: &crate::syntax::Theory, budget: usize) -> CompletedTheory {
        lindenbaum_complete(&HenkinExpansion::trivial(t), budget, 4, 200).unwrap()
    }

    #[test]
    fn trivial_theory_has_one_class() {
        let tm = build_term_model(&completed(&fixtures::trivial(), 3), 2);
        assert_eq!(tm.num_classes(), 1);
        assert_eq!(tm.universe().len(), 1);
    }

    #[test]
    fn z2_has_two_classes_with_cayley_table() {
        let tm = build_term_model(&completed(&fixtures::z2(), 3), 2);
        assert_eq!(tm.num_classes(), 2);
        assert_eq!(tm.representative(0), &Term::constant("e"));
        assert_eq!(tm.representative(1), &Term::constant("a"));
        assert_eq!(tm.op_tables[0].entries, vec![Some(0), Some(1), Some(1), Some(0)]);
        assert!(tm.saturation_complete);
    }

    #[test]
    fn collapsed_monoid_has_one_class() {
        let tm = build_term_model(&completed(&fixtures::monoid(), 3), 2);
        assert_eq!(tm.num_classes(), 1);
        assert_eq!(tm.op_tables[0].entries, vec![Some(0)]);
    }

    #[test]
    fn uncompleted_monoid_classes_are_powers_of_a() {
        let e = HenkinExpansion::trivial(&fixtures::monoid());
        let c = lindenbaum_complete(&e, 0, 4, 200).unwrap();
        let tm = build_term_model(&c, 2);
        assert_eq!(tm.num_classes(), 5);
        let tm3 = build_term_model(&c, 3);
        assert_eq!(tm3.num_classes(), 9);
        // a^4 times a leaves the depth-2 universe.
        let a4 = tm.class_of_term(&crate::parse::parse_term(&fixtures::monoid().signature, "mul(mul(a,a),mul(a,a))").unwrap()).unwrap();
        assert_eq!(tm.op("mul", &[a4, 1]), None);
        assert!(tm.op_coverage() < 1.0);
    }

    #[test]
    fn identity_translation_maps_classes_identically() {
        let z = fixtures::z2();
        let tm = build_term_model(&completed(&z, 3), 2);
        let id = TheoryTranslation::identity(&z);
        assert_eq!(map_term_model(&id, &tm, &tm, 100), Ok(vec![0, 1]));
    }

    #[test]
    fn violated_obligation_is_reported() {
        let src = build_term_model(&completed(&fixtures::z2(), 3), 2);
        let dst = build_term_model(&completed(&fixtures::monoid(), 3), 2);
        let err = map_term_model(&fixtures::z2_to_monoid(), &src, &dst, 200).unwrap_err();
        let TermModelMapError::Obligation(f) = err else { panic!("expected obligation failure") };
        assert_eq!(f.axiom, "mul(a,a) = e");
    }
}
