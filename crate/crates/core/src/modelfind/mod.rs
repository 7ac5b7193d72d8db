//! Finite structures: evaluation, model checking, bounded search, and maps
//! between models.

pub(crate) mod compile;
pub mod hom;
pub mod search;

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::enumerate::advance_tuple;
use crate::syntax::{Formula, Sentence, Signature, Term, Theory};
use compile::{compile, compile_term, Tables, Tri};

pub use hom::{check_isomorphic, induced_hom, pullback, HomError, InducedHomError, ModelHom};
pub use search::{find_model, ModelSearchError};

/// Values of free variables.
pub type Assignment = BTreeMap<String, usize>;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` is not assigned")]
    UnboundVariable(String),
    #[error("symbol `{0}` is not interpreted by the model")]
    UnknownSymbol(String),
    #[error("assignment value {value} for `{var}` is outside the domain of size {size}")]
    OutOfDomain { var: String, value: usize, size: usize },
}

/// An axiom false in a model, with values for its leading universal variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub axiom_index: usize,
    pub axiom: String,
    pub assignment: Vec<(String, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model does not interpret `{0}` with the right kind")]
    SignatureMismatch(String),
    #[error("malformed model: {0}")]
    Shape(String),
    #[error("axiom {} fails: {}", .0.axiom_index, .0.axiom)]
    Counterexample(Counterexample),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelCheck {
    Pass,
    Counterexample(Counterexample),
}

/// A finite structure for a theory's signature on the domain `0..size`.
///
/// Function tables are row-major over argument tuples; predicate tables hold
/// truth values in the same layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    pub theory: Theory,
    pub size: usize,
    pub const_table: Vec<usize>,
    pub fn_tables: Vec<Vec<usize>>,
    pub pred_tables: Vec<Vec<bool>>,
}

impl FiniteModel {
    /// Builds a model, checking table shapes and every axiom.
    pub fn new(
        theory: Theory,
        size: usize,
        const_table: Vec<usize>,
        fn_tables: Vec<Vec<usize>>,
        pred_tables: Vec<Vec<bool>>,
    ) -> Result<FiniteModel, ModelError> {
        let m = FiniteModel::new_unchecked(theory, size, const_table, fn_tables, pred_tables)?;
        match check_model(&m, &m.theory)? {
            ModelCheck::Pass => Ok(m),
            ModelCheck::Counterexample(c) => Err(ModelError::Counterexample(c)),
        }
    }

    /// Builds a structure with well-shaped tables without checking the axioms.
    pub fn new_unchecked(
        theory: Theory,
        size: usize,
        const_table: Vec<usize>,
        fn_tables: Vec<Vec<usize>>,
        pred_tables: Vec<Vec<bool>>,
    ) -> Result<FiniteModel, ModelError> {
        let sig = &theory.signature;
        let shape = |msg: String| Err(ModelError::Shape(msg));
        if size == 0 {
            return shape("domain must be nonempty".into());
        }
        if const_table.len() != sig.constants().len() {
            return shape(format!("{} constants, expected {}", const_table.len(), sig.constants().len()));
        }
        if fn_tables.len() != sig.functions().len() || pred_tables.len() != sig.predicates().len() {
            return shape("table count does not match the signature".into());
        }
        for (f, table) in sig.functions().iter().zip(&fn_tables) {
            if table.len() != size.pow(f.arity as u32) {
                return shape(format!("table for {} has {} entries", f.name, table.len()));
            }
        }
        for (p, table) in sig.predicates().iter().zip(&pred_tables) {
            if table.len() != size.pow(p.arity as u32) {
                return shape(format!("table for {} has {} entries", p.name, table.len()));
            }
        }
        if const_table.iter().chain(fn_tables.iter().flatten()).any(|&v| v >= size) {
            return shape(format!("value outside the domain of size {size}"));
        }
        Ok(FiniteModel {
            theory,
            size,
            const_table,
            fn_tables,
            pred_tables,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.theory.signature
    }

    pub(crate) fn from_tables(theory: Theory, t: &Tables) -> FiniteModel {
        FiniteModel {
            theory,
            size: t.size,
            const_table: t.consts.iter().map(|&v| v as usize).collect(),
            fn_tables: t.funcs.iter().map(|(_, d)| d.iter().map(|&v| v as usize).collect()).collect(),
            pred_tables: t.preds.iter().map(|(_, d)| d.iter().map(|&v| v == 1).collect()).collect(),
        }
    }

    pub(crate) fn tables(&self) -> Tables {
        let sig = self.signature();
        Tables {
            size: self.size,
            consts: self.const_table.iter().map(|&v| v as u32).collect(),
            funcs: sig
                .functions()
                .iter()
                .zip(&self.fn_tables)
                .map(|(f, d)| (f.arity, d.iter().map(|&v| v as u32).collect()))
                .collect(),
            preds: sig
                .predicates()
                .iter()
                .zip(&self.pred_tables)
                .map(|(p, d)| (p.arity, d.iter().map(|&b| b as u8).collect()))
                .collect(),
        }
    }

    pub fn constant(&self, name: &str) -> Option<usize> {
        self.signature().constant_index(name).map(|i| self.const_table[i])
    }

    pub fn apply(&self, f: &str, args: &[usize]) -> Option<usize> {
        let i = self.signature().function_index(f)?;
        Some(self.fn_tables[i][compile::row_index(self.size, args.iter().copied())])
    }

    pub fn holds(&self, p: &str, args: &[usize]) -> Option<bool> {
        let i = self.signature().predicate_index(p)?;
        Some(self.pred_tables[i][compile::row_index(self.size, args.iter().copied())])
    }

    fn env(&self, assignment: &Assignment) -> Result<(Vec<String>, Vec<u32>), EvalError> {
        let mut names = Vec::new();
        let mut env = Vec::new();
        for (v, &value) in assignment {
            if value >= self.size {
                return Err(EvalError::OutOfDomain {
                    var: v.clone(),
                    value,
                    size: self.size,
                });
            }
            names.push(v.clone());
            env.push(value as u32);
        }
        Ok((names, env))
    }

    pub fn eval_term(&self, t: &Term, assignment: &Assignment) -> Result<usize, EvalError> {
        if let Some(v) = first_unassigned(t, assignment) {
            return Err(EvalError::UnboundVariable(v));
        }
        let (names, env) = self.env(assignment)?;
        let ct = compile_term(self.signature(), t, &names).map_err(EvalError::UnknownSymbol)?;
        Ok(self.tables().term(&ct, &env).expect("complete tables") as usize)
    }

    /// Value of a ground term.
    pub fn eval_ground(&self, t: &Term) -> Result<usize, EvalError> {
        match t {
            Term::Var(v) => Err(EvalError::UnboundVariable(v.clone())),
            Term::Const(c) => self.constant(c).ok_or_else(|| EvalError::UnknownSymbol(c.clone())),
            Term::Apply(f, args) => {
                let vals = args.iter().map(|a| self.eval_ground(a)).collect::<Result<Vec<_>, _>>()?;
                self.apply(f, &vals).ok_or_else(|| EvalError::UnknownSymbol(f.clone()))
            }
        }
    }

    pub fn eval_formula(&self, phi: &Formula, assignment: &Assignment) -> Result<bool, EvalError> {
        if let Some(v) = phi.free_vars().into_iter().find(|v| !assignment.contains_key(v)) {
            return Err(EvalError::UnboundVariable(v));
        }
        let (names, env) = self.env(assignment)?;
        let c = compile(self.signature(), phi, &names).map_err(EvalError::UnknownSymbol)?;
        let mut env = env;
        env.resize(c.slots, 0);
        Ok(self.tables().eval(&c.formula, &mut env) == Tri::True)
    }

    pub fn satisfies(&self, sentence: &Sentence) -> Result<bool, EvalError> {
        self.eval_formula(sentence, &Assignment::new())
    }

    /// The same tables viewed as a structure for `theory`, whose signature must match exactly.
    pub fn with_theory(&self, theory: Theory) -> Result<FiniteModel, ModelError> {
        if theory.signature != *self.signature() {
            return Err(ModelError::SignatureMismatch(theory.name));
        }
        Ok(FiniteModel {
            theory,
            ..self.clone()
        })
    }

    /// Canonical JSON text of the model; also its lexicographic tie-break key.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }
}

fn first_unassigned(t: &Term, assignment: &Assignment) -> Option<String> {
    let mut vars = std::collections::BTreeSet::new();
    t.collect_vars(&mut vars);
    vars.into_iter().find(|v| !assignment.contains_key(v))
}

#[derive(Serialize)]
struct NamedValue<'a> {
    name: &'a str,
    value: usize,
}

#[derive(Serialize)]
struct NamedTable<'a, T> {
    name: &'a str,
    arity: usize,
    table: &'a [T],
}

#[derive(Serialize)]
struct ModelView<'a> {
    size: usize,
    constants: Vec<NamedValue<'a>>,
    functions: Vec<NamedTable<'a, usize>>,
    predicates: Vec<NamedTable<'a, bool>>,
}

impl Serialize for FiniteModel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let sig = self.signature();
        ModelView {
            size: self.size,
            constants: sig
                .constants()
                .iter()
                .zip(&self.const_table)
                .map(|(name, &value)| NamedValue { name, value })
                .collect(),
            functions: sig
                .functions()
                .iter()
                .zip(&self.fn_tables)
                .map(|(f, t)| NamedTable {
                    name: &f.name,
                    arity: f.arity,
                    table: t,
                })
                .collect(),
            predicates: sig
                .predicates()
                .iter()
                .zip(&self.pred_tables)
                .map(|(p, t)| NamedTable {
                    name: &p.name,
                    arity: p.arity,
                    table: t,
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// Checks that every symbol of `sig` is interpreted by `model` with the same kind.
pub(crate) fn check_reduct(model: &FiniteModel, sig: &Signature) -> Result<(), ModelError> {
    let ms = model.signature();
    let names = sig
        .constants()
        .iter()
        .chain(sig.functions().iter().map(|f| &f.name))
        .chain(sig.predicates().iter().map(|p| &p.name));
    for n in names {
        if ms.kind_of(n) != sig.kind_of(n) {
            return Err(ModelError::SignatureMismatch(n.clone()));
        }
    }
    Ok(())
}

/// Checks every axiom of `t` in `m`, which may interpret extra symbols.
pub fn check_model(m: &FiniteModel, t: &Theory) -> Result<ModelCheck, ModelError> {
    check_reduct(m, &t.signature)?;
    let tables = m.tables();
    for (i, ax) in t.axioms.iter().enumerate() {
        let mut vars = Vec::new();
        let mut matrix = ax;
        while let Formula::Forall(v, b) = matrix {
            vars.push(v.clone());
            matrix = b;
        }
        let c = compile(m.signature(), matrix, &vars).map_err(ModelError::SignatureMismatch)?;
        let mut env = vec![0u32; c.slots.max(1)];
        let mut idx = vec![0usize; vars.len()];
        loop {
            for (slot, &v) in idx.iter().enumerate() {
                env[slot] = v as u32;
            }
            if tables.eval(&c.formula, &mut env) != Tri::True {
                return Ok(ModelCheck::Counterexample(Counterexample {
                    axiom_index: i,
                    axiom: ax.to_string(),
                    assignment: vars.iter().cloned().zip(idx.iter().copied()).collect(),
                }));
            }
            if !advance_tuple(&mut idx, m.size) {
                break;
            }
        }
    }
    Ok(ModelCheck::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parse::{parse_formula, parse_term};

    pub(crate) fn z2_model() -> FiniteModel {
        FiniteModel::new(fixtures::z2(), 2, vec![0, 1], vec![vec![0, 1, 1, 0]], vec![]).unwrap()
    }

    #[test]
    fn evaluates_ground_terms() {
        let m = z2_model();
        let t = parse_term(m.signature(), "mul(a,mul(a,a))").unwrap();
        assert_eq!(m.eval_ground(&t), Ok(1));
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let m = z2_model();
        let f = Formula::eq(Term::var("x"), Term::constant("e"));
        assert_eq!(m.eval_formula(&f, &Assignment::new()), Err(EvalError::UnboundVariable("x".into())));
        let mut asg = Assignment::new();
        asg.insert("x".into(), 0);
        assert_eq!(m.eval_formula(&f, &asg), Ok(true));
    }

    #[test]
    fn quantifiers_range_over_the_domain() {
        let m = z2_model();
        let sig = m.signature().clone();
        assert!(m.satisfies(&parse_formula(&sig, "forall x. mul(x,x) = e").unwrap()).unwrap());
        assert!(!m.satisfies(&parse_formula(&sig, "exists x. ~(mul(x,x) = e)").unwrap()).unwrap());
    }

    #[test]
    fn check_model_reports_counterexample() {
        let m = FiniteModel::new_unchecked(fixtures::monoid(), 2, vec![0, 1], vec![vec![0, 0, 0, 0]], vec![]).unwrap();
        let ModelCheck::Counterexample(c) = check_model(&m, &fixtures::monoid()).unwrap() else {
            panic!("constant table is not a monoid")
        };
        assert_eq!(c.axiom_index, 0);
        assert_eq!(c.assignment, vec![("x".to_string(), 1)]);
        assert!(matches!(
            FiniteModel::new(fixtures::monoid(), 2, vec![0, 1], vec![vec![0, 0, 0, 0]], vec![]),
            Err(ModelError::Counterexample(_))
        ));
    }

    #[test]
    fn signature_mismatch_is_reported() {
        let m = z2_model();
        assert!(matches!(check_model(&m, &fixtures::witness()), Err(ModelError::SignatureMismatch(_))));
    }

    #[test]
    fn json_lists_tables_in_declaration_order() {
        assert_eq!(
            z2_model().to_json(),
            r#"{"size":2,"constants":[{"name":"e","value":0},{"name":"a","value":1}],"functions":[{"name":"mul","arity":2,"table":[0,1,1,0]}],"predicates":[]}"#
        );
    }
}
