//! The comparison map from term models to canonical models, and its laws.

mod checks;
mod eta;
mod report;

pub use checks::{
    check_canonical_representation, check_homomorphism, check_inverse_homomorphism, check_lawvere_square, check_naturality, check_rigidity,
    check_square,
};
pub use eta::{build_eta, check_well_defined, invert_eta, EtaComponent, EtaError, InversionError, NatCandidate};
pub use report::{exit_code, CheckReport, Status};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::henkin::{build_term_model, lindenbaum_complete, map_term_model, HenkinExpansion, TermModel};
    use crate::modelfind::{induced_hom, FiniteModel, ModelHom};
    use crate::syntax::Theory;
    use crate::translation::TheoryTranslation;

    fn parts(t: &Theory, sentence_budget: usize) -> (TermModel, FiniteModel) {
        let c = lindenbaum_complete(&HenkinExpansion::trivial(t), sentence_budget, 4, 200).unwrap();
        let g = c.witness_model.clone();
        (build_term_model(&c, 2), g)
    }

    /// Z2's term model against a structure where `mul(a,a)` is `a`.
    fn sabotaged() -> EtaComponent {
        let (f, g) = parts(&fixtures::z2(), 5);
        let broken = FiniteModel::new_unchecked(g.theory.clone(), 2, vec![0, 1], vec![vec![0, 1, 1, 1]], vec![]).unwrap();
        build_eta(&f, &broken).unwrap()
    }

    #[test]
    fn z2_eta_is_a_bijective_homomorphism() {
        let (f, g) = parts(&fixtures::z2(), 5);
        let eta = build_eta(&f, &g).unwrap();
        assert_eq!(eta.map, vec![0, 1]);
        assert!(eta.well_defined.passed());
        assert!(check_homomorphism(&eta).passed());
        assert_eq!(check_homomorphism(&eta).coverage, 1.0);
        assert!(check_canonical_representation(&f, &g).passed());
        assert!(check_lawvere_square(&f, &g, &eta).passed());
        let inv = invert_eta(&eta).unwrap();
        assert_eq!(inv, vec![0, 1]);
        assert!(check_inverse_homomorphism(&eta, &inv).passed());
        assert!(check_rigidity(&NatCandidate::from_eta(&eta), &eta).passed());
    }

    #[test]
    fn trivial_theory_is_a_single_point() {
        let (f, g) = parts(&fixtures::trivial(), 3);
        let eta = build_eta(&f, &g).unwrap();
        assert_eq!(eta.map, vec![0]);
        assert!(check_homomorphism(&eta).passed());
        assert!(check_lawvere_square(&f, &g, &eta).passed());
        assert_eq!(invert_eta(&eta), Ok(vec![0]));
    }

    #[test]
    fn sabotage_is_caught_by_three_checks() {
        let eta = sabotaged();
        assert!(eta.well_defined.failed());
        assert!(eta.well_defined.witnesses.contains(&vec!["mul(a,a)".to_string(), "e".into(), "1".into(), "0".into()]));
        let hom = check_homomorphism(&eta);
        assert!(hom.failed());
        assert_eq!(hom.witnesses, vec![vec!["mul([a],[a])".to_string(), "0".into(), "1".into()]]);
        let sq = check_lawvere_square(&eta.term_model, &eta.finite_model, &eta);
        assert_eq!(sq.witnesses, hom.witnesses);
        assert!(matches!(invert_eta(&eta), Err(InversionError::NotWellDefined { .. })));
    }

    #[test]
    fn uncompleted_monoid_is_not_injective() {
        let (f, _) = parts(&fixtures::monoid(), 0);
        let (_, g) = parts(&fixtures::monoid(), 3);
        let g = g.with_theory(f.expansion().theory()).unwrap();
        assert_eq!(f.num_classes(), 5);
        let eta = build_eta(&f, &g).unwrap();
        assert!(eta.well_defined.passed());
        let err = invert_eta(&eta).unwrap_err();
        let InversionError::InjectivityFailure { element, classes } = err else { panic!("expected injectivity failure") };
        assert_eq!(element, 0);
        assert_eq!(&classes[..2], ["[e]", "[a]"]);
        assert!(check_canonical_representation(&f, &g).failed());
    }

    #[test]
    fn unreachable_element_breaks_representation() {
        let t = fixtures::unreachable();
        let c = lindenbaum_complete(&HenkinExpansion::trivial(&t), 0, 4, 200).unwrap();
        let f = build_term_model(&c, 2);
        let g = crate::modelfind::find_model(&t, 4).unwrap();
        let report = check_canonical_representation(&f, &g);
        assert_eq!(report.witnesses, vec![vec!["1".to_string()]]);
        assert_eq!(report.coverage, 0.5);
    }

    #[test]
    fn twisted_candidate_fails_on_both_classes() {
        let (f, g) = parts(&fixtures::z2(), 5);
        let eta = build_eta(&f, &g).unwrap();
        let r = check_rigidity(&NatCandidate::twisted(&eta, &[1, 0]), &eta);
        assert_eq!(r.witnesses, vec![vec!["[e]".to_string(), "1".into(), "0".into()], vec!["[a]".to_string(), "0".into(), "1".into()]]);
    }

    #[test]
    fn one_mutated_class_is_the_only_witness() {
        let (f, _) = parts(&fixtures::monoid(), 0);
        let g = FiniteModel::new(fixtures::monoid(), 1, vec![0, 0], vec![vec![0]], vec![]).unwrap();
        let eta = build_eta(&f, &g).unwrap();
        let mut theta = NatCandidate::from_eta(&eta);
        theta.map[3] = 7;
        let r = check_rigidity(&theta, &eta);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0][0], class_name_of(&f, 3));
    }

    fn class_name_of(f: &TermModel, c: usize) -> String {
        format!("[{}]", f.representative(c))
    }

    #[test]
    fn identity_square_commutes_and_swapped_hom_does_not() {
        let z = fixtures::z2();
        let (f, g) = parts(&z, 5);
        let eta = build_eta(&f, &g).unwrap();
        let id = TheoryTranslation::identity(&z);
        let f_map = map_term_model(&id, &f, &f, 200).unwrap();
        let g_map = induced_hom(&id, &g, &g, f.universe()).unwrap();
        assert!(check_naturality(&id, &eta, &eta, &f_map, &g_map).passed());
        let swapped = ModelHom::new_unchecked(g.clone(), g.clone(), g_map.symbol_map.clone(), vec![1, 0]);
        let r = check_naturality(&id, &eta, &eta, &f_map, &swapped);
        assert!(r.failed());
        assert_eq!(r.witnesses.len(), 2);
    }
}
