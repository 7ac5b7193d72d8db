use thiserror::Error;

use super::report::{ratio, CheckReport};
use crate::henkin::TermModel;
use crate::modelfind::{EvalError, FiniteModel};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EtaError {
    #[error("term model over `{term_model}` and model of `{model}` have different signatures")]
    SignatureMismatch { term_model: String, model: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The component of the comparison map at one theory: each class goes to
/// the value of its representative.
#[derive(Clone, Debug)]
pub struct EtaComponent {
    pub term_model: TermModel,
    pub finite_model: FiniteModel,
    pub map: Vec<usize>,
    /// Fraction of classes mapped.
    pub coverage: f64,
    pub well_defined: CheckReport,
}

pub(crate) fn class_name(f: &TermModel, class: usize) -> String {
    format!("[{}]", f.representative(class))
}

pub fn build_eta(f: &TermModel, g: &FiniteModel) -> Result<EtaComponent, EtaError> {
    if f.expansion().signature != *g.signature() {
        return Err(EtaError::SignatureMismatch {
            term_model: f.expansion().base.name.clone(),
            model: g.theory.name.clone(),
        });
    }
    let map = (0..f.num_classes())
        .map(|c| g.eval_ground(f.representative(c)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut eta = EtaComponent {
        term_model: f.clone(),
        finite_model: g.clone(),
        coverage: ratio(map.len(), f.num_classes()),
        map,
        well_defined: CheckReport::skipped("well_defined", "not yet checked"),
    };
    eta.well_defined = check_well_defined(&eta);
    Ok(eta)
}

/// Every member of a class evaluates to the representative's value. Witnesses
/// are `(t, representative, value of t, value of representative)`.
pub fn check_well_defined(eta: &EtaComponent) -> CheckReport {
    let f = &eta.term_model;
    let g = &eta.finite_model;
    let mut witnesses = Vec::new();
    for (t, &c) in f.universe().iter().zip(&f.partition.class_of) {
        let Ok(v) = g.eval_ground(t) else {
            witnesses.push(vec![t.to_string(), f.representative(c).to_string(), "undefined".into(), eta.map[c].to_string()]);
            continue;
        };
        if v != eta.map[c] {
            witnesses.push(vec![t.to_string(), f.representative(c).to_string(), v.to_string(), eta.map[c].to_string()]);
        }
    }
    CheckReport::from_witnesses("well_defined", witnesses, 1.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InversionError {
    #[error("not well defined: {term} and {representative} share a class but evaluate differently")]
    NotWellDefined { term: String, representative: String },
    #[error("element {element} is not the value of any term")]
    RepresentationFailure { element: usize },
    #[error("classes {} all evaluate to element {element}", .classes.join(", "))]
    InjectivityFailure { element: usize, classes: Vec<String> },
}

impl InversionError {
    pub fn witnesses(&self) -> Vec<Vec<String>> {
        match self {
            InversionError::NotWellDefined { term, representative } => vec![vec![term.clone(), representative.clone()]],
            InversionError::RepresentationFailure { element } => vec![vec![element.to_string()]],
            InversionError::InjectivityFailure { element, classes } => {
                let mut w = classes.clone();
                w.push(element.to_string());
                vec![w]
            }
        }
    }
}

/// Sends each element to the class of the least term evaluating to it, then
/// checks both round trips.
pub fn invert_eta(eta: &EtaComponent) -> Result<Vec<usize>, InversionError> {
    if let Some(w) = eta.well_defined.witnesses.first() {
        return Err(InversionError::NotWellDefined {
            term: w[0].clone(),
            representative: w[1].clone(),
        });
    }
    let f = &eta.term_model;
    // Class ids follow the first occurrence in the ordered universe, so the
    // least class over an element holds the least term evaluating to it.
    let mut inverse = vec![None; eta.finite_model.size];
    for (c, &y) in eta.map.iter().enumerate() {
        inverse[y].get_or_insert(c);
    }
    let inverse = inverse
        .into_iter()
        .enumerate()
        .map(|(element, c)| c.ok_or(InversionError::RepresentationFailure { element }))
        .collect::<Result<Vec<_>, _>>()?;
    debug_assert!(inverse.iter().enumerate().all(|(y, &c)| eta.map[c] == y));
    for (c, &y) in eta.map.iter().enumerate() {
        if inverse[y] != c {
            let classes = (0..f.num_classes())
                .filter(|&d| eta.map[d] == y)
                .map(|d| class_name(f, d))
                .collect();
            return Err(InversionError::InjectivityFailure { element: y, classes });
        }
    }
    Ok(inverse)
}

/// A candidate comparison map, possibly wrong.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatCandidate {
    pub description: String,
    pub map: Vec<usize>,
}

impl NatCandidate {
    pub fn from_eta(eta: &EtaComponent) -> NatCandidate {
        NatCandidate {
            description: "eta".into(),
            map: eta.map.clone(),
        }
    }

    /// `eta` followed by the permutation `perm` of the model's elements.
    pub fn twisted(eta: &EtaComponent, perm: &[usize]) -> NatCandidate {
        NatCandidate {
            description: format!("eta twisted by {perm:?}"),
            map: eta.map.iter().map(|&y| perm[y]).collect(),
        }
    }
}
