//! Cross-module laws of the comparison map on the fixtures.

use henkin_core::fixtures;
use henkin_core::nattrans::{check_rigidity, check_square, NatCandidate};
use henkin_core::pipeline::{run_naturality, run_pipeline, PipelineConfig};
use henkin_core::translation::parse_translation;
use henkin_core::twocat::{build_modification, check_modification_coherence, CandidateFamily, EtaFamily, Modification, SquareData};

fn small() -> PipelineConfig {
    PipelineConfig {
        term_depth: 2,
        ..PipelineConfig::default()
    }
}

#[test]
fn eta_is_rigid_against_itself_everywhere() {
    for t in [fixtures::trivial(), fixtures::monoid(), fixtures::z2(), fixtures::witness(), fixtures::unreachable()] {
        let run = run_pipeline(&t, &small()).unwrap();
        assert!(check_rigidity(&NatCandidate::from_eta(&run.eta), &run.eta).passed(), "{}", t.name);
        // The map is evaluation at representatives.
        for c in 0..run.term_model.num_classes() {
            assert_eq!(Ok(run.eta.map[c]), run.model.eval_ground(run.term_model.representative(c)));
        }
    }
}

#[test]
fn pasted_square_along_a_chain_commutes() {
    let z2 = fixtures::z2();
    let id = parse_translation(fixtures::Z2_IDENTITY_TRANSLATION, &z2, &z2).unwrap();
    let chain = fixtures::monoid_to_z2().then(&id).unwrap();
    for phi in [fixtures::monoid_to_z2(), id.clone(), chain] {
        let run = run_naturality(&phi, &small()).unwrap();
        assert!(run.square.passed(), "{}: {:?}", phi.name, run.square.witnesses);
    }
}

#[test]
fn coherence_agrees_with_naturality_and_modifications_with_rigidity() {
    let run = run_naturality(&fixtures::monoid_to_z2(), &small()).unwrap();
    let mut etas = EtaFamily::new();
    etas.insert("Monoid".into(), run.source.eta.clone());
    etas.insert("Z2".into(), run.target.eta.clone());
    let square = SquareData {
        translation: run.extended.name.clone(),
        source: "Monoid".into(),
        target: "Z2".into(),
        f_map: run.f_map.clone(),
        g_map: run.g_map.clone(),
    };

    let eta = CandidateFamily::from_etas(&etas);
    let mu = build_modification(&eta, &etas).unwrap();
    let coherence = check_modification_coherence(&mu, std::slice::from_ref(&square), &etas);
    assert_eq!(coherence.passed(), run.square.passed());

    let twisted = CandidateFamily::twisted(&etas, "Z2", &[1, 0]);
    let rigid = twisted.components.iter().all(|(k, theta)| check_rigidity(theta, &etas[k]).passed());
    assert_eq!(build_modification(&twisted, &etas).is_ok(), rigid);
    let theta_square = check_square(
        "naturality",
        &run.source.term_model,
        &twisted.components["Monoid"].map,
        &twisted.components["Z2"].map,
        &run.f_map,
        &run.g_map,
    );
    let coherence = check_modification_coherence(&Modification::new_unchecked(twisted, &etas), &[square], &etas);
    assert!(theta_square.failed() && coherence.failed());
    assert_eq!(coherence.witnesses.len(), theta_square.witnesses.len());
}
