//! Homomorphisms between finite models and the isomorphism test.

use thiserror::Error;

use super::{EvalError, FiniteModel, ModelError};
use crate::enumerate::advance_tuple;
use crate::syntax::Term;
use crate::translation::{SymbolMap, TheoryTranslation, TranslationError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {found} entries for a source of size {expected}")]
    Shape { expected: usize, found: usize },
    #[error("element {value} is outside the target of size {size}")]
    OutOfRange { value: usize, size: usize },
    #[error("symbol `{0}` has no image in the target")]
    Unmapped(String),
    #[error("constant {name}: h({source_value}) = {image} but the target interprets it as {target_value}")]
    Constant {
        name: String,
        source_value: usize,
        image: usize,
        target_value: usize,
    },
    #[error("function {name} at {args:?}: h(f(args)) = {lhs} but f(h(args)) = {rhs}")]
    Function {
        name: String,
        args: Vec<usize>,
        lhs: usize,
        rhs: usize,
    },
    #[error("predicate {name} holds at {args:?} but not at their images")]
    Predicate { name: String, args: Vec<usize> },
}

/// A map between the domains of two models, read through a symbol map from
/// the source signature to the target signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelHom {
    pub source: FiniteModel,
    pub target: FiniteModel,
    pub symbol_map: SymbolMap,
    pub map: Vec<usize>,
}

impl ModelHom {
    pub fn new(source: FiniteModel, target: FiniteModel, symbol_map: SymbolMap, map: Vec<usize>) -> Result<ModelHom, HomError> {
        let h = ModelHom::new_unchecked(source, target, symbol_map, map);
        h.verify()?;
        Ok(h)
    }

    /// Skips the homomorphism check; the result may violate it.
    pub fn new_unchecked(source: FiniteModel, target: FiniteModel, symbol_map: SymbolMap, map: Vec<usize>) -> ModelHom {
        ModelHom {
            source,
            target,
            symbol_map,
            map,
        }
    }

    pub fn identity(m: &FiniteModel) -> ModelHom {
        let symbol_map = TheoryTranslation::identity(&m.theory).symbol_map;
        ModelHom::new_unchecked(m.clone(), m.clone(), symbol_map, (0..m.size).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    fn image(&self, name: &str) -> Result<&str, HomError> {
        self.symbol_map
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| HomError::Unmapped(name.to_string()))
    }

    /// Checks that constants, operations, and predicates are preserved.
    pub fn verify(&self) -> Result<(), HomError> {
        let (src, tgt) = (&self.source, &self.target);
        if self.map.len() != src.size {
            return Err(HomError::Shape {
                expected: src.size,
                found: self.map.len(),
            });
        }
        if let Some(&value) = self.map.iter().find(|&&v| v >= tgt.size) {
            return Err(HomError::OutOfRange { value, size: tgt.size });
        }
        let sig = src.signature();
        for (c, &v) in sig.constants().iter().zip(&src.const_table) {
            let target_value = tgt.constant(self.image(c)?).ok_or_else(|| HomError::Unmapped(c.clone()))?;
            if self.map[v] != target_value {
                return Err(HomError::Constant {
                    name: c.clone(),
                    source_value: v,
                    image: self.map[v],
                    target_value,
                });
            }
        }
        for f in sig.functions() {
            let g = self.image(&f.name)?;
            let mut args = vec![0; f.arity];
            loop {
                let lhs = self.map[src.apply(&f.name, &args).expect("declared")];
                let mapped: Vec<usize> = args.iter().map(|&a| self.map[a]).collect();
                let rhs = tgt.apply(g, &mapped).ok_or_else(|| HomError::Unmapped(f.name.clone()))?;
                if lhs != rhs {
                    return Err(HomError::Function {
                        name: f.name.clone(),
                        args,
                        lhs,
                        rhs,
                    });
                }
                if !advance_tuple(&mut args, src.size) {
                    break;
                }
            }
        }
        for p in sig.predicates() {
            let q = self.image(&p.name)?;
            let mut args = vec![0; p.arity];
            loop {
                let mapped: Vec<usize> = args.iter().map(|&a| self.map[a]).collect();
                if src.holds(&p.name, &args) == Some(true) && tgt.holds(q, &mapped) != Some(true) {
                    return Err(HomError::Predicate { name: p.name.clone(), args });
                }
                if !advance_tuple(&mut args, src.size) {
                    break;
                }
            }
        }
        Ok(())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ModelHom) -> ModelHom {
        let symbol_map = self
            .symbol_map
            .iter()
            .filter_map(|(k, v)| next.symbol_map.get(v).map(|w| (k.clone(), w.clone())))
            .collect();
        ModelHom::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            symbol_map,
            self.map.iter().map(|&x| next.map[x]).collect(),
        )
    }
}

/// Searches for an isomorphism between models over the same signature,
/// returning the least one as a permutation of the domain.
pub fn check_isomorphic(m1: &FiniteModel, m2: &FiniteModel) -> Result<Option<Vec<usize>>, ModelError> {
    if m1.signature() != m2.signature() {
        return Err(ModelError::SignatureMismatch(format!("{} vs {}", m1.theory.name, m2.theory.name)));
    }
    if m1.size != m2.size {
        return Ok(None);
    }
    let symbol_map = TheoryTranslation::identity(&m1.theory).symbol_map;
    let mut perm: Vec<usize> = Vec::with_capacity(m1.size);
    let mut used = vec![false; m1.size];
    fn go(m1: &FiniteModel, m2: &FiniteModel, symbols: &SymbolMap, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if perm.len() == m1.size {
            return ModelHom::new_unchecked(m1.clone(), m2.clone(), symbols.clone(), perm.clone())
                .verify()
                .is_ok();
        }
        let x = perm.len();
        // Constants pin their images.
        let pinned = m1
            .const_table
            .iter()
            .zip(&m2.const_table)
            .find(|(&v, _)| v == x)
            .map(|(_, &w)| w);
        for y in 0..m2.size {
            if used[y] || pinned.is_some_and(|w| w != y) {
                continue;
            }
            perm.push(y);
            used[y] = true;
            if go(m1, m2, symbols, perm, used) {
                return true;
            }
            used[y] = false;
            perm.pop();
        }
        false
    }
    Ok(go(m1, m2, &symbol_map, &mut perm, &mut used).then_some(perm))
}

/// The structure for `phi.source` that interprets each symbol `s` as `m`
/// interprets `phi(s)`.
pub fn pullback(m: &FiniteModel, phi: &TheoryTranslation) -> Result<FiniteModel, ModelError> {
    let sig = &phi.source.signature;
    let image = |name: &str| {
        phi.symbol_map
            .get(name)
            .ok_or_else(|| ModelError::SignatureMismatch(format!("`{name}` is not translated")))
    };
    let ms = m.signature();
    let consts = sig
        .constants()
        .iter()
        .map(|c| m.constant(image(c)?).ok_or_else(|| ModelError::SignatureMismatch(c.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let funcs = sig
        .functions()
        .iter()
        .map(|f| {
            let i = ms.function_index(image(&f.name)?).ok_or_else(|| ModelError::SignatureMismatch(f.name.clone()))?;
            Ok(m.fn_tables[i].clone())
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    let preds = sig
        .predicates()
        .iter()
        .map(|p| {
            let i = ms.predicate_index(image(&p.name)?).ok_or_else(|| ModelError::SignatureMismatch(p.name.clone()))?;
            Ok(m.pred_tables[i].clone())
        })
        .collect::<Result<Vec<_>, ModelError>>()?;
    FiniteModel::new_unchecked(phi.source.clone(), m.size, consts, funcs, preds)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InducedHomError {
    #[error(transparent)]
    Translation(#[from] TranslationError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("ill-defined at element {element}: {first_term} maps to {first_image} but {term} maps to {image}")]
    IllDefined {
        element: usize,
        first_term: String,
        first_image: usize,
        term: String,
        image: usize,
    },
    #[error("element {element} is not the value of any listed term")]
    RepresentationGap { element: usize },
    #[error("induced map is not a homomorphism: {0}")]
    NotAHomomorphism(HomError),
}

/// The map `G(phi)`: the value of a term `t` in `gsrc` goes to the value of
/// `phi(t)` in `gdst`. Every element of `gsrc` must be the value of some term
/// in `terms`, and all such terms must agree on the image.
pub fn induced_hom(phi: &TheoryTranslation, gsrc: &FiniteModel, gdst: &FiniteModel, terms: &[Term]) -> Result<ModelHom, InducedHomError> {
    let mut image: Vec<Option<(usize, &Term)>> = vec![None; gsrc.size];
    for t in terms {
        let x = gsrc.eval_ground(t)?;
        let y = gdst.eval_ground(&phi.map_term(t)?)?;
        match image[x] {
            None => image[x] = Some((y, t)),
            Some((y0, t0)) if y0 != y => {
                return Err(InducedHomError::IllDefined {
                    element: x,
                    first_term: t0.to_string(),
                    first_image: y0,
                    term: t.to_string(),
                    image: y,
                })
            }
            Some(_) => {}
        }
    }
    let map = image
        .iter()
        .enumerate()
        .map(|(x, e)| e.map(|(y, _)| y).ok_or(InducedHomError::RepresentationGap { element: x }))
        .collect::<Result<Vec<_>, _>>()?;
    let symbol_map = phi
        .symbol_map
        .iter()
        .filter(|(k, _)| gsrc.signature().is_declared(k))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    ModelHom::new(gsrc.clone(), gdst.clone(), symbol_map, map).map_err(InducedHomError::NotAHomomorphism)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_ground_terms;
    use crate::fixtures;
    use crate::modelfind::find_model;

    fn z2_model() -> FiniteModel {
        find_model(&fixtures::z2(), 4).unwrap()
    }

    #[test]
    fn identity_is_a_homomorphism() {
        assert_eq!(ModelHom::identity(&z2_model()).verify(), Ok(()));
    }

    #[test]
    fn swapping_elements_breaks_constants() {
        let m = z2_model();
        let h = ModelHom::new_unchecked(m.clone(), m.clone(), ModelHom::identity(&m).symbol_map, vec![1, 0]);
        assert!(matches!(h.verify(), Err(HomError::Constant { .. })));
    }

    #[test]
    fn relabelled_model_is_isomorphic() {
        let m = z2_model();
        let relabelled = FiniteModel::new(m.theory.clone(), 2, vec![1, 0], vec![vec![1, 0, 0, 1]], vec![]).unwrap();
        assert_eq!(check_isomorphic(&m, &relabelled), Ok(Some(vec![1, 0])));
        assert_eq!(check_isomorphic(&m, &m), Ok(Some(vec![0, 1])));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let m = fixtures::monoid();
        let trivial = find_model(&m, 4).unwrap();
        let three = FiniteModel::new(m.clone(), 2, vec![0, 0], vec![vec![0, 1, 1, 1]], vec![]).unwrap();
        assert_eq!(check_isomorphic(&trivial, &three), Ok(None));
    }

    #[test]
    fn induced_hom_along_quotient_is_identity_on_z2() {
        let z = z2_model();
        let phi = TheoryTranslation::identity(&z.theory);
        let terms = enumerate_ground_terms(z.signature(), 2);
        let h = induced_hom(&phi, &z, &z, &terms).unwrap();
        assert_eq!(h.map, vec![0, 1]);
    }

    #[test]
    fn pullback_along_quotient_is_a_monoid() {
        let g = pullback(&z2_model(), &fixtures::monoid_to_z2()).unwrap();
        assert_eq!(g.theory.name, "Monoid");
        assert_eq!(g.fn_tables, vec![vec![0, 1, 1, 0]]);
        assert_eq!(crate::modelfind::check_model(&g, &g.theory), Ok(crate::modelfind::ModelCheck::Pass));
    }

    #[test]
    fn collapsed_monoid_does_not_map_to_z2() {
        let g_monoid = find_model(&fixtures::monoid(), 4).unwrap();
        let terms = enumerate_ground_terms(g_monoid.signature(), 1);
        let err = induced_hom(&fixtures::monoid_to_z2(), &g_monoid, &z2_model(), &terms).unwrap_err();
        assert!(matches!(err, InducedHomError::IllDefined { element: 0, first_image: 0, image: 1, .. }));
    }
}
