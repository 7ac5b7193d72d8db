//! Formulas compiled against a signature: symbols become table indices and
//! variables become environment slots. Evaluation is three-valued so that
//! partially filled tables can be used for pruning.

use crate::syntax::{Formula, Signature, Term};

pub(crate) const UNSET: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) enum CTerm {
    Var(usize),
    Const(usize),
    App(usize, Vec<CTerm>),
}

#[derive(Clone, Debug)]
pub(crate) enum CFormula {
    Eq(CTerm, CTerm),
    Pred(usize, Vec<CTerm>),
    Not(Box<CFormula>),
    And(Box<CFormula>, Box<CFormula>),
    Or(Box<CFormula>, Box<CFormula>),
    Implies(Box<CFormula>, Box<CFormula>),
    Forall(usize, Box<CFormula>),
    Exists(usize, Box<CFormula>),
}

/// A compiled formula and the number of environment slots it needs.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    pub formula: CFormula,
    pub slots: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tri {
    False,
    True,
    Unknown,
}

impl Tri {
    fn not(self) -> Tri {
        match self {
            Tri::False => Tri::True,
            Tri::True => Tri::False,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

struct Compiler<'a> {
    sig: &'a Signature,
    scope: Vec<String>,
    max_slots: usize,
}

impl Compiler<'_> {
    fn term(&self, t: &Term) -> Result<CTerm, String> {
        Ok(match t {
            Term::Var(v) => CTerm::Var(self.scope.iter().rposition(|s| s == v).ok_or_else(|| format!("unbound variable {v}"))?),
            Term::Const(c) => CTerm::Const(self.sig.constant_index(c).ok_or_else(|| format!("unknown constant {c}"))?),
            Term::Apply(f, args) => CTerm::App(
                self.sig.function_index(f).ok_or_else(|| format!("unknown function {f}"))?,
                args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?,
            ),
        })
    }

    fn bind(&mut self, v: &str, body: &Formula) -> Result<(usize, Box<CFormula>), String> {
        self.scope.push(v.to_string());
        let slot = self.scope.len() - 1;
        self.max_slots = self.max_slots.max(self.scope.len());
        let b = self.formula(body);
        self.scope.pop();
        Ok((slot, Box::new(b?)))
    }

    fn formula(&mut self, phi: &Formula) -> Result<CFormula, String> {
        Ok(match phi {
            Formula::Equal(l, r) => CFormula::Eq(self.term(l)?, self.term(r)?),
            Formula::Pred(p, args) => CFormula::Pred(
                self.sig.predicate_index(p).ok_or_else(|| format!("unknown predicate {p}"))?,
                args.iter().map(|a| self.term(a)).collect::<Result<_, _>>()?,
            ),
            Formula::Not(b) => CFormula::Not(Box::new(self.formula(b)?)),
            Formula::And(l, r) => CFormula::And(Box::new(self.formula(l)?), Box::new(self.formula(r)?)),
            Formula::Or(l, r) => CFormula::Or(Box::new(self.formula(l)?), Box::new(self.formula(r)?)),
            Formula::Implies(l, r) => CFormula::Implies(Box::new(self.formula(l)?), Box::new(self.formula(r)?)),
            Formula::Forall(v, b) => {
                let (s, b) = self.bind(v, b)?;
                CFormula::Forall(s, b)
            }
            Formula::Exists(v, b) => {
                let (s, b) = self.bind(v, b)?;
                CFormula::Exists(s, b)
            }
        })
    }
}

/// Compiles `phi` with `free` bound to slots `0..free.len()`.
pub(crate) fn compile(sig: &Signature, phi: &Formula, free: &[String]) -> Result<Compiled, String> {
    let mut c = Compiler {
        sig,
        scope: free.to_vec(),
        max_slots: free.len(),
    };
    let formula = c.formula(phi)?;
    Ok(Compiled {
        formula,
        slots: c.max_slots,
    })
}

pub(crate) fn compile_term(sig: &Signature, t: &Term, free: &[String]) -> Result<CTerm, String> {
    Compiler {
        sig,
        scope: free.to_vec(),
        max_slots: free.len(),
    }
    .term(t)
}

/// Interpretation tables, possibly partial (`UNSET` entries; predicates use 2 for unset).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Tables {
    pub size: usize,
    pub consts: Vec<u32>,
    pub funcs: Vec<(usize, Vec<u32>)>,
    pub preds: Vec<(usize, Vec<u8>)>,
}

pub(crate) fn row_index(size: usize, args: impl IntoIterator<Item = usize>) -> usize {
    args.into_iter().fold(0, |acc, a| acc * size + a)
}

impl Tables {
    pub fn empty(sig: &Signature, size: usize) -> Tables {
        Tables {
            size,
            consts: vec![UNSET; sig.constants().len()],
            funcs: sig
                .functions()
                .iter()
                .map(|f| (f.arity, vec![UNSET; size.pow(f.arity as u32)]))
                .collect(),
            preds: sig
                .predicates()
                .iter()
                .map(|p| (p.arity, vec![2; size.pow(p.arity as u32)]))
                .collect(),
        }
    }

    pub fn term(&self, t: &CTerm, env: &[u32]) -> Option<u32> {
        match t {
            CTerm::Var(s) => Some(env[*s]),
            CTerm::Const(i) => Some(self.consts[*i]).filter(|&v| v != UNSET),
            CTerm::App(f, args) => {
                let mut idx = 0usize;
                for a in args {
                    idx = idx * self.size + self.term(a, env)? as usize;
                }
                Some(self.funcs[*f].1[idx]).filter(|&v| v != UNSET)
            }
        }
    }

    pub fn eval(&self, phi: &CFormula, env: &mut [u32]) -> Tri {
        match phi {
            CFormula::Eq(l, r) => match (self.term(l, env), self.term(r, env)) {
                (Some(a), Some(b)) => {
                    if a == b {
                        Tri::True
                    } else {
                        Tri::False
                    }
                }
                _ => Tri::Unknown,
            },
            CFormula::Pred(p, args) => {
                let mut idx = 0usize;
                for a in args {
                    match self.term(a, env) {
                        Some(v) => idx = idx * self.size + v as usize,
                        None => return Tri::Unknown,
                    }
                }
                match self.preds[*p].1[idx] {
                    0 => Tri::False,
                    1 => Tri::True,
                    _ => Tri::Unknown,
                }
            }
            CFormula::Not(b) => self.eval(b, env).not(),
            CFormula::And(l, r) => match self.eval(l, env) {
                Tri::False => Tri::False,
                Tri::True => self.eval(r, env),
                Tri::Unknown => match self.eval(r, env) {
                    Tri::False => Tri::False,
                    _ => Tri::Unknown,
                },
            },
            CFormula::Or(l, r) => match self.eval(l, env) {
                Tri::True => Tri::True,
                Tri::False => self.eval(r, env),
                Tri::Unknown => match self.eval(r, env) {
                    Tri::True => Tri::True,
                    _ => Tri::Unknown,
                },
            },
            CFormula::Implies(l, r) => match self.eval(l, env) {
                Tri::False => Tri::True,
                Tri::True => self.eval(r, env),
                Tri::Unknown => match self.eval(r, env) {
                    Tri::True => Tri::True,
                    _ => Tri::Unknown,
                },
            },
            CFormula::Forall(s, b) => {
                let mut acc = Tri::True;
                for v in 0..self.size as u32 {
                    env[*s] = v;
                    match self.eval(b, env) {
                        Tri::False => return Tri::False,
                        Tri::Unknown => acc = Tri::Unknown,
                        Tri::True => {}
                    }
                }
                acc
            }
            CFormula::Exists(s, b) => {
                let mut acc = Tri::False;
                for v in 0..self.size as u32 {
                    env[*s] = v;
                    match self.eval(b, env) {
                        Tri::True => return Tri::True,
                        Tri::Unknown => acc = Tri::Unknown,
                        Tri::False => {}
                    }
                }
                acc
            }
        }
    }

    /// Evaluates a sentence.
    pub fn eval_closed(&self, c: &Compiled) -> Tri {
        let mut env = vec![0u32; c.slots];
        self.eval(&c.formula, &mut env)
    }
}
