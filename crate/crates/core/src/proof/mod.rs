//! Equality reasoning and budgeted proof search.

pub mod cc;
pub mod instantiate;
pub mod tableau;

pub use cc::{congruence_close, CongruenceClosure, CongruenceError, Partition};
pub use instantiate::{ground_instantiate, GroundInstantiation, SkippedAxiom};
pub use tableau::{ProofVerdict, TableauOutcome};

use crate::enumerate::enumerate_ground_terms;
use crate::syntax::{Formula, Sentence, Term, Theory};
use instantiate::{saturate, Equation};

/// Instance cap for the equational fast path of [`prove_equal`].
const EQUATION_INSTANCE_CAP: usize = 50_000;

/// Budgeted attempt at `theory |- goal`.
pub fn prove(theory: &Theory, goal: &Sentence, budget: usize) -> ProofVerdict {
    tableau::prove_from(&theory.signature, &theory.axioms, goal, budget)
}

/// Decides `theory |- t = s` for ground terms.
///
/// The equational axioms are first instantiated over ground terms up to
/// `depth` (plus the subterms of `t` and `s`); if congruence closure already
/// identifies the two terms the answer is immediate. Otherwise the tableau
/// decides within `budget`.
pub fn prove_equal(theory: &Theory, t: &Term, s: &Term, depth: usize, budget: usize) -> ProofVerdict {
    let mut universe = enumerate_ground_terms(&theory.signature, depth);
    for extra in [t, s] {
        let mut subs = Vec::new();
        extra.subterms_into(&mut subs);
        universe.extend(subs.into_iter().cloned());
    }
    let equations: Vec<Equation> = theory.axioms.iter().filter_map(Equation::from_sentence).collect();
    let mut cc = CongruenceClosure::new();
    saturate(&mut cc, &universe, &equations, EQUATION_INSTANCE_CAP);
    if cc.lookup(t) == cc.lookup(s) {
        return ProofVerdict::Proved;
    }
    prove(theory, &Formula::eq(t.clone(), s.clone()), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parse::parse_term;

    fn term(th: &Theory, s: &str) -> Term {
        parse_term(&th.signature, s).unwrap()
    }

    #[test]
    fn z2_square_is_identity() {
        let z = fixtures::z2();
        assert_eq!(prove_equal(&z, &term(&z, "mul(a,a)"), &term(&z, "e"), 2, 100), ProofVerdict::Proved);
        let cube = term(&z, "mul(a,mul(a,a))");
        assert_eq!(prove_equal(&z, &cube, &term(&z, "a"), 2, 100), ProofVerdict::Proved);
    }

    #[test]
    fn z2_generator_is_not_identity() {
        let z = fixtures::z2();
        assert_eq!(prove_equal(&z, &term(&z, "e"), &term(&z, "a"), 2, 200), ProofVerdict::Refuted);
    }

    #[test]
    fn monoid_square_is_undetermined() {
        let m = fixtures::monoid();
        let v = prove_equal(&m, &term(&m, "a"), &term(&m, "mul(a,a)"), 2, 300);
        assert!(matches!(v, ProofVerdict::Unknown { .. }));
        assert_eq!(v.label(), "unknown");
    }

    #[test]
    fn associativity_reassociates() {
        let m = fixtures::monoid();
        let l = term(&m, "mul(mul(a,a),mul(a,e))");
        let r = term(&m, "mul(a,mul(a,a))");
        assert_eq!(prove_equal(&m, &l, &r, 1, 100), ProofVerdict::Proved);
    }
}
