//! Modifications between families of comparison maps. Two-cells between
//! model homomorphisms are equalities here, so a modification exists exactly
//! when the families agree.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::modelfind::ModelHom;
use crate::nattrans::{CheckReport, EtaComponent, NatCandidate};

/// Components of the comparison map, keyed by theory name.
pub type EtaFamily = BTreeMap<String, EtaComponent>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateFamily {
    pub description: String,
    pub components: BTreeMap<String, NatCandidate>,
}

impl CandidateFamily {
    pub fn from_etas(etas: &EtaFamily) -> CandidateFamily {
        CandidateFamily {
            description: "eta".into(),
            components: etas.iter().map(|(k, e)| (k.clone(), NatCandidate::from_eta(e))).collect(),
        }
    }

    /// `etas` with the component at `theory` followed by `perm`.
    pub fn twisted(etas: &EtaFamily, theory: &str, perm: &[usize]) -> CandidateFamily {
        let mut family = CandidateFamily::from_etas(etas);
        family.description = format!("eta twisted by {perm:?} at {theory}");
        if let Some(eta) = etas.get(theory) {
            family.components.insert(theory.to_string(), NatCandidate::twisted(eta, perm));
        }
        family
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModificationError {
    #[error("no component at {theory}")]
    Unindexed { theory: String },
    #[error("components differ at {theory}, class {class}")]
    Mismatch { theory: String, class: String },
}

/// An identity two-cell at each theory of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modification {
    pub source: CandidateFamily,
    pub target: CandidateFamily,
    pub cells: Vec<String>,
}

impl Modification {
    /// Pairs the families without checking that they agree.
    pub fn new_unchecked(source: CandidateFamily, etas: &EtaFamily) -> Modification {
        Modification {
            cells: etas.keys().cloned().collect(),
            source,
            target: CandidateFamily::from_etas(etas),
        }
    }
}

pub fn build_modification(thetas: &CandidateFamily, etas: &EtaFamily) -> Result<Modification, ModificationError> {
    let unindexed = thetas.components.keys().find(|k| !etas.contains_key(*k));
    if let Some(theory) = unindexed.or_else(|| etas.keys().find(|k| !thetas.components.contains_key(*k))) {
        return Err(ModificationError::Unindexed { theory: theory.clone() });
    }
    for (theory, eta) in etas {
        let theta = &thetas.components[theory];
        let differs = (0..eta.map.len()).find(|&c| theta.map.get(c) != Some(&eta.map[c]));
        if let Some(c) = differs {
            return Err(ModificationError::Mismatch {
                theory: theory.clone(),
                class: format!("[{}]", eta.term_model.representative(c)),
            });
        }
    }
    Ok(Modification::new_unchecked(thetas.clone(), etas))
}

/// `F(phi)` and `G(phi)` along one translation between theories of the family.
#[derive(Clone, Debug)]
pub struct SquareData {
    pub translation: String,
    pub source: String,
    pub target: String,
    pub f_map: Vec<usize>,
    pub g_map: ModelHom,
}

/// For each square and class `c` of the source, the candidate sides
/// `theta_dst(F(phi)(c))` and `G(phi)(theta_src(c))` agree with each other and
/// with the corresponding sides for eta. Witnesses are
/// `(translation, class, candidate left, candidate right, eta left, eta right)`.
pub fn check_modification_coherence(mu: &Modification, squares: &[SquareData], etas: &EtaFamily) -> CheckReport {
    let mut witnesses = Vec::new();
    for sq in squares {
        let (Some(src), Some(theta_src), Some(theta_dst), Some(eta_dst)) = (
            etas.get(&sq.source),
            mu.source.components.get(&sq.source),
            mu.source.components.get(&sq.target),
            etas.get(&sq.target),
        ) else {
            witnesses.push(vec![sq.translation.clone(), "missing component".into()]);
            continue;
        };
        for c in 0..src.map.len() {
            let sides = [
                theta_dst.map[sq.f_map[c]],
                sq.g_map.apply(theta_src.map[c]),
                eta_dst.map[sq.f_map[c]],
                sq.g_map.apply(src.map[c]),
            ];
            if sides.iter().any(|&v| v != sides[0]) {
                let mut w = vec![sq.translation.clone(), format!("[{}]", src.term_model.representative(c))];
                w.extend(sides.iter().map(|v| v.to_string()));
                witnesses.push(w);
            }
        }
    }
    CheckReport::from_witnesses("modification_coherence", witnesses, 1.0)
}

/// Passes iff every candidate family admits a modification to eta.
/// Witnesses are `(family, theory, class)`.
pub fn check_contractibility(candidates: &[CandidateFamily], etas: &EtaFamily) -> CheckReport {
    let witnesses = candidates
        .iter()
        .filter_map(|family| match build_modification(family, etas) {
            Ok(_) => None,
            Err(ModificationError::Mismatch { theory, class }) => Some(vec![family.description.clone(), theory, class]),
            Err(ModificationError::Unindexed { theory }) => Some(vec![family.description.clone(), theory, "unindexed".into()]),
        })
        .collect();
    CheckReport::from_witnesses("contractibility", witnesses, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::henkin::{build_term_model, lindenbaum_complete, map_term_model, HenkinExpansion};
    use crate::modelfind::induced_hom;
    use crate::nattrans::build_eta;
    use crate::translation::TheoryTranslation;

    fn z2_family() -> EtaFamily {
        let c = lindenbaum_complete(&HenkinExpansion::trivial(&fixtures::z2()), 5, 4, 200).unwrap();
        let f = build_term_model(&c, 2);
        let eta = build_eta(&f, &c.witness_model).unwrap();
        BTreeMap::from([("Z2".to_string(), eta)])
    }

    fn identity_square(etas: &EtaFamily) -> SquareData {
        let eta = &etas["Z2"];
        let id = TheoryTranslation::identity(&fixtures::z2());
        SquareData {
            translation: "Id".into(),
            source: "Z2".into(),
            target: "Z2".into(),
            f_map: map_term_model(&id, &eta.term_model, &eta.term_model, 200).unwrap(),
            g_map: induced_hom(&id, &eta.finite_model, &eta.finite_model, eta.term_model.universe()).unwrap(),
        }
    }

    #[test]
    fn eta_family_has_the_identity_modification() {
        let etas = z2_family();
        let mu = build_modification(&CandidateFamily::from_etas(&etas), &etas).unwrap();
        assert_eq!(mu.cells, vec!["Z2".to_string()]);
        assert!(check_modification_coherence(&mu, &[identity_square(&etas)], &etas).passed());
    }

    #[test]
    fn twisted_family_fails_at_the_first_class() {
        let etas = z2_family();
        let twisted = CandidateFamily::twisted(&etas, "Z2", &[1, 0]);
        assert_eq!(
            build_modification(&twisted, &etas),
            Err(ModificationError::Mismatch {
                theory: "Z2".into(),
                class: "[e]".into()
            })
        );
        let mu = Modification::new_unchecked(twisted, &etas);
        let r = check_modification_coherence(&mu, &[identity_square(&etas)], &etas);
        assert_eq!(r.witnesses.len(), 2);
    }

    #[test]
    fn empty_family_is_vacuous() {
        let etas = EtaFamily::new();
        assert!(build_modification(&CandidateFamily::from_etas(&etas), &etas).is_ok());
        assert!(check_contractibility(&[], &etas).passed());
    }

    #[test]
    fn contractibility_names_the_twisted_family() {
        let etas = z2_family();
        let eta = CandidateFamily::from_etas(&etas);
        assert!(check_contractibility(std::slice::from_ref(&eta), &etas).passed());
        let twisted = CandidateFamily::twisted(&etas, "Z2", &[1, 0]);
        let r = check_contractibility(&[eta, twisted.clone()], &etas);
        assert_eq!(r.witnesses, vec![vec![twisted.description, "Z2".into(), "[e]".into()]]);
    }
}
