//! Abstract syntax for single-sorted first-order logic with built-in equality.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A function or predicate symbol together with its arity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
        }
    }
}

/// Which namespace a declared name lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Constant,
    Function(usize),
    Predicate(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{0}` is declared more than once")]
    Duplicate(String),
    #[error("symbol `{0}` must have positive arity")]
    ZeroArity(String),
}

/// Constants, functions and predicates in declaration order.
///
/// Declaration order is the canonical order used by every enumeration
/// downstream (ground terms, sentences, model tables).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    constants: Vec<String>,
    functions: Vec<Symbol>,
    predicates: Vec<Symbol>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn functions(&self) -> &[Symbol] {
        &self.functions
    }

    pub fn predicates(&self) -> &[Symbol] {
        &self.predicates
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.kind_of(name).is_some()
    }

    pub fn kind_of(&self, name: &str) -> Option<SymbolKind> {
        if self.constants.iter().any(|c| c == name) {
            return Some(SymbolKind::Constant);
        }
        if let Some(f) = self.functions.iter().find(|f| f.name == name) {
            return Some(SymbolKind::Function(f.arity));
        }
        self.predicates
            .iter()
            .find(|p| p.name == name)
            .map(|p| SymbolKind::Predicate(p.arity))
    }

    pub fn constant_index(&self, name: &str) -> Option<usize> {
        self.constants.iter().position(|c| c == name)
    }

    pub fn function_index(&self, name: &str) -> Option<usize> {
        self.functions.iter().position(|f| f.name == name)
    }

    pub fn predicate_index(&self, name: &str) -> Option<usize> {
        self.predicates.iter().position(|p| p.name == name)
    }

    pub fn add_constant(&mut self, name: impl Into<String>) -> Result<(), SignatureError> {
        let name = name.into();
        self.check_fresh(&name)?;
        self.constants.push(name);
        Ok(())
    }

    pub fn add_function(&mut self, name: impl Into<String>, arity: usize) -> Result<(), SignatureError> {
        let name = name.into();
        self.check_fresh(&name)?;
        if arity == 0 {
            return Err(SignatureError::ZeroArity(name));
        }
        self.functions.push(Symbol::new(name, arity));
        Ok(())
    }

    pub fn add_predicate(&mut self, name: impl Into<String>, arity: usize) -> Result<(), SignatureError> {
        let name = name.into();
        self.check_fresh(&name)?;
        if arity == 0 {
            return Err(SignatureError::ZeroArity(name));
        }
        self.predicates.push(Symbol::new(name, arity));
        Ok(())
    }

    /// Builder-style variant of [`Signature::add_constant`] for fixtures and tests.
    pub fn with_constant(mut self, name: &str) -> Result<Self, SignatureError> {
        self.add_constant(name)?;
        Ok(self)
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Result<Self, SignatureError> {
        self.add_function(name, arity)?;
        Ok(self)
    }

    pub fn with_predicate(mut self, name: &str, arity: usize) -> Result<Self, SignatureError> {
        self.add_predicate(name, arity)?;
        Ok(self)
    }

    fn check_fresh(&self, name: &str) -> Result<(), SignatureError> {
        if self.is_declared(name) {
            Err(SignatureError::Duplicate(name.to_string()))
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
    Apply(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(name.to_string())
    }

    pub fn apply(f: &str, args: Vec<Term>) -> Term {
        Term::Apply(f.to_string(), args)
    }

    /// Constants have depth 0; an application is one deeper than its deepest argument.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::Apply(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::Apply(_, args) => 1 + args.iter().map(Term::node_count).sum::<usize>(),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::Apply(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains_var(&self, v: &str) -> bool {
        match self {
            Term::Var(x) => x == v,
            Term::Const(_) => false,
            Term::Apply(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Const(_) => {}
            Term::Apply(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn substitute(&self, v: &str, t: &Term) -> Term {
        match self {
            Term::Var(x) if x == v => t.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::Apply(f, args) => Term::Apply(f.clone(), args.iter().map(|a| a.substitute(v, t)).collect()),
        }
    }

    /// Pushes every subterm, children before parents.
    pub fn subterms_into<'a>(&'a self, out: &mut Vec<&'a Term>) {
        if let Term::Apply(_, args) = self {
            for a in args {
                a.subterms_into(out);
            }
        }
        out.push(self);
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) | Term::Const(x) => f.write_str(x),
            Term::Apply(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Equal(Term, Term),
    Pred(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

/// A formula without free variables.
pub type Sentence = Formula;

impl Formula {
    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Equal(l, r)
    }

    pub fn pred(p: &str, args: Vec<Term>) -> Formula {
        Formula::Pred(p.to_string(), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    /// AST node count: every term node, connective, atom and quantifier counts one.
    pub fn node_count(&self) -> usize {
        match self {
            Formula::Equal(l, r) => 1 + l.node_count() + r.node_count(),
            Formula::Pred(_, args) => 1 + args.iter().map(Term::node_count).sum::<usize>(),
            Formula::Not(b) | Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.node_count(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_vars(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free_vars(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let push_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            let mut vs = BTreeSet::new();
            t.collect_vars(&mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::Equal(l, r) => {
                push_term(l, bound, out);
                push_term(r, bound, out);
            }
            Formula::Pred(_, args) => args.iter().for_each(|a| push_term(a, bound, out)),
            Formula::Not(b) => b.collect_free_vars(bound, out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_free_vars(bound, out);
                r.collect_free_vars(bound, out);
            }
            Formula::Forall(v, b) | Formula::Exists(v, b) => {
                bound.push(v.clone());
                b.collect_free_vars(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free_var(&self, v: &str) -> bool {
        match self {
            Formula::Equal(l, r) => l.contains_var(v) || r.contains_var(v),
            Formula::Pred(_, args) => args.iter().any(|a| a.contains_var(v)),
            Formula::Not(b) => b.has_free_var(v),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => l.has_free_var(v) || r.has_free_var(v),
            Formula::Forall(x, b) | Formula::Exists(x, b) => x != v && b.has_free_var(v),
        }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Equal(..) | Formula::Pred(..) => true,
            Formula::Not(b) => b.is_quantifier_free(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.is_quantifier_free() && r.is_quantifier_free()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `v`.
    ///
    /// A binder whose variable occurs free in `t` is renamed to a fresh name first.
    pub fn substitute(&self, v: &str, t: &Term) -> Formula {
        let mut t_vars = BTreeSet::new();
        t.collect_vars(&mut t_vars);
        self.subst_inner(v, t, &t_vars)
    }

    fn subst_inner(&self, v: &str, t: &Term, t_vars: &BTreeSet<String>) -> Formula {
        match self {
            Formula::Equal(l, r) => Formula::Equal(l.substitute(v, t), r.substitute(v, t)),
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| a.substitute(v, t)).collect()),
            Formula::Not(b) => Formula::not(b.subst_inner(v, t, t_vars)),
            Formula::And(l, r) => Formula::and(l.subst_inner(v, t, t_vars), r.subst_inner(v, t, t_vars)),
            Formula::Or(l, r) => Formula::or(l.subst_inner(v, t, t_vars), r.subst_inner(v, t, t_vars)),
            Formula::Implies(l, r) => Formula::implies(l.subst_inner(v, t, t_vars), r.subst_inner(v, t, t_vars)),
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                let is_forall = matches!(self, Formula::Forall(..));
                let rebuild = |x: String, b: Formula| {
                    if is_forall {
                        Formula::Forall(x, Box::new(b))
                    } else {
                        Formula::Exists(x, Box::new(b))
                    }
                };
                if x == v || !b.has_free_var(v) {
                    return self.clone();
                }
                if t_vars.contains(x) {
                    let mut avoid = t_vars.clone();
                    avoid.extend(b.free_vars());
                    avoid.insert(v.to_string());
                    let fresh = fresh_name(x, &avoid);
                    let renamed = b.subst_inner(x, &Term::Var(fresh.clone()), &BTreeSet::from([fresh.clone()]));
                    rebuild(fresh, renamed.subst_inner(v, t, t_vars))
                } else {
                    rebuild(x.clone(), b.subst_inner(v, t, t_vars))
                }
            }
        }
    }

    /// Names of all constants, functions and predicates used.
    pub fn symbols(&self, out: &mut BTreeSet<String>) {
        fn term_syms(t: &Term, out: &mut BTreeSet<String>) {
            match t {
                Term::Var(_) => {}
                Term::Const(c) => {
                    out.insert(c.clone());
                }
                Term::Apply(f, args) => {
                    out.insert(f.clone());
                    args.iter().for_each(|a| term_syms(a, out));
                }
            }
        }
        match self {
            Formula::Equal(l, r) => {
                term_syms(l, out);
                term_syms(r, out);
            }
            Formula::Pred(p, args) => {
                out.insert(p.clone());
                args.iter().for_each(|a| term_syms(a, out));
            }
            Formula::Not(b) | Formula::Forall(_, b) | Formula::Exists(_, b) => b.symbols(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.symbols(out);
                r.symbols(out);
            }
        }
    }

    /// Equality of formulas up to renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        fn term_eq(a: &Term, b: &Term, env: &[(String, String)]) -> bool {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) => {
                    let lx = env.iter().rposition(|(l, _)| l == x);
                    let ry = env.iter().rposition(|(_, r)| r == y);
                    match (lx, ry) {
                        (Some(i), Some(j)) => i == j,
                        (None, None) => x == y,
                        _ => false,
                    }
                }
                (Term::Const(x), Term::Const(y)) => x == y,
                (Term::Apply(f, xs), Term::Apply(g, ys)) => {
                    f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, env))
                }
                _ => false,
            }
        }
        fn go(a: &Formula, b: &Formula, env: &mut Vec<(String, String)>) -> bool {
            match (a, b) {
                (Formula::Equal(l1, r1), Formula::Equal(l2, r2)) => term_eq(l1, l2, env) && term_eq(r1, r2, env),
                (Formula::Pred(p, xs), Formula::Pred(q, ys)) => {
                    p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| term_eq(x, y, env))
                }
                (Formula::Not(x), Formula::Not(y)) => go(x, y, env),
                (Formula::And(l1, r1), Formula::And(l2, r2))
                | (Formula::Or(l1, r1), Formula::Or(l2, r2))
                | (Formula::Implies(l1, r1), Formula::Implies(l2, r2)) => go(l1, l2, env) && go(r1, r2, env),
                (Formula::Forall(x, b1), Formula::Forall(y, b2)) | (Formula::Exists(x, b1), Formula::Exists(y, b2)) => {
                    env.push((x.clone(), y.clone()));
                    let ok = go(b1, b2, env);
                    env.pop();
                    ok
                }
                _ => false,
            }
        }
        go(self, other, &mut Vec::new())
    }
}

pub(crate) fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    (0..)
        .map(|i| format!("{base}{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded supply of names")
}

// Binding strength used when printing: larger binds tighter.
const PREC_QUANT: u8 = 0;
const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_UNARY: u8 = 4;

impl Formula {
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let open = match self {
            Formula::Forall(..) | Formula::Exists(..) => ctx > PREC_QUANT,
            Formula::Implies(..) => ctx > PREC_IMPLIES,
            Formula::Or(..) => ctx > PREC_OR,
            Formula::And(..) => ctx > PREC_AND,
            _ => false,
        };
        if open {
            f.write_str("(")?;
        }
        match self {
            Formula::Equal(l, r) => write!(f, "{l} = {r}")?,
            Formula::Pred(p, args) => {
                write!(f, "{p}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")?;
            }
            Formula::Not(b) => {
                f.write_str("~")?;
                match **b {
                    Formula::Equal(..) => {
                        write!(f, "(")?;
                        b.fmt_prec(f, PREC_QUANT)?;
                        write!(f, ")")?;
                    }
                    _ => b.fmt_prec(f, PREC_UNARY)?,
                }
            }
            Formula::And(l, r) => {
                l.fmt_prec(f, PREC_AND)?;
                f.write_str(" & ")?;
                r.fmt_prec(f, PREC_AND + 1)?;
            }
            Formula::Or(l, r) => {
                l.fmt_prec(f, PREC_OR)?;
                f.write_str(" | ")?;
                r.fmt_prec(f, PREC_OR + 1)?;
            }
            Formula::Implies(l, r) => {
                l.fmt_prec(f, PREC_IMPLIES + 1)?;
                f.write_str(" -> ")?;
                r.fmt_prec(f, PREC_IMPLIES)?;
            }
            Formula::Forall(v, b) => {
                write!(f, "forall {v}. ")?;
                b.fmt_prec(f, PREC_QUANT)?;
            }
            Formula::Exists(v, b) => {
                write!(f, "exists {v}. ")?;
                b.fmt_prec(f, PREC_QUANT)?;
            }
        }
        if open {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, PREC_QUANT)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WellFormedError {
    #[error("undeclared symbol `{0}`")]
    Undeclared(String),
    #[error("`{symbol}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("`{0}` is not a {1}")]
    WrongKind(String, &'static str),
    #[error("axiom `{0}` has free variables")]
    NotClosed(String),
}

impl Signature {
    pub fn check_term(&self, t: &Term) -> Result<(), WellFormedError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::Const(c) => match self.kind_of(c) {
                Some(SymbolKind::Constant) => Ok(()),
                Some(_) => Err(WellFormedError::WrongKind(c.clone(), "constant")),
                None => Err(WellFormedError::Undeclared(c.clone())),
            },
            Term::Apply(f, args) => {
                match self.kind_of(f) {
                    Some(SymbolKind::Function(n)) if n == args.len() => {}
                    Some(SymbolKind::Function(n)) => {
                        return Err(WellFormedError::ArityMismatch {
                            symbol: f.clone(),
                            expected: n,
                            found: args.len(),
                        })
                    }
                    Some(_) => return Err(WellFormedError::WrongKind(f.clone(), "function")),
                    None => return Err(WellFormedError::Undeclared(f.clone())),
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
        }
    }

    pub fn check_formula(&self, phi: &Formula) -> Result<(), WellFormedError> {
        match phi {
            Formula::Equal(l, r) => {
                self.check_term(l)?;
                self.check_term(r)
            }
            Formula::Pred(p, args) => {
                match self.kind_of(p) {
                    Some(SymbolKind::Predicate(n)) if n == args.len() => {}
                    Some(SymbolKind::Predicate(n)) => {
                        return Err(WellFormedError::ArityMismatch {
                            symbol: p.clone(),
                            expected: n,
                            found: args.len(),
                        })
                    }
                    Some(_) => return Err(WellFormedError::WrongKind(p.clone(), "predicate")),
                    None => return Err(WellFormedError::Undeclared(p.clone())),
                }
                args.iter().try_for_each(|a| self.check_term(a))
            }
            Formula::Not(b) | Formula::Forall(_, b) | Formula::Exists(_, b) => self.check_formula(b),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                self.check_formula(l)?;
                self.check_formula(r)
            }
        }
    }

    pub fn check_sentence(&self, phi: &Formula) -> Result<(), WellFormedError> {
        self.check_formula(phi)?;
        if phi.is_sentence() {
            Ok(())
        } else {
            Err(WellFormedError::NotClosed(phi.to_string()))
        }
    }
}

/// A named signature with an ordered list of axioms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Theory {
    pub name: String,
    pub signature: Signature,
    pub axioms: Vec<Sentence>,
}

impl Theory {
    pub fn new(name: impl Into<String>, signature: Signature, axioms: Vec<Sentence>) -> Result<Theory, WellFormedError> {
        axioms.iter().try_for_each(|a| signature.check_sentence(a))?;
        Ok(Theory {
            name: name.into(),
            signature,
            axioms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    #[test]
    fn substitute_single_occurrence() {
        let p = Formula::pred("P", vec![Term::var("x")]);
        assert_eq!(p.substitute("x", &c("c")), Formula::pred("P", vec![c("c")]));
    }

    #[test]
    fn substitute_leaves_bound_occurrence() {
        let p = Formula::forall("x", Formula::pred("P", vec![Term::var("x")]));
        assert_eq!(p.substitute("x", &c("c")), p);
    }

    #[test]
    fn substitute_respects_shadowing() {
        let aa = Term::apply("mul", vec![c("a"), c("a")]);
        let f = Formula::and(
            Formula::pred("Q", vec![Term::var("x")]),
            Formula::exists("x", Formula::pred("R", vec![Term::var("x")])),
        );
        let expected = Formula::and(
            Formula::pred("Q", vec![aa.clone()]),
            Formula::exists("x", Formula::pred("R", vec![Term::var("x")])),
        );
        assert_eq!(f.substitute("x", &aa), expected);
    }

    #[test]
    fn substitute_renames_to_avoid_capture() {
        // (forall y. R(x, y))[x := y] must not capture the substituted y.
        let f = Formula::forall("y", Formula::pred("R", vec![Term::var("x"), Term::var("y")]));
        let out = f.substitute("x", &Term::var("y"));
        match &out {
            Formula::Forall(b, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, Formula::pred("R", vec![Term::var("y"), Term::var(b)]));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn node_counts() {
        assert_eq!(Formula::eq(c("c"), c("c")).node_count(), 3);
        let ident = Formula::forall("x", Formula::eq(Term::apply("mul", vec![c("e"), Term::var("x")]), Term::var("x")));
        assert_eq!(ident.node_count(), 6);
    }

    #[test]
    fn alpha_equivalence() {
        let a = Formula::forall("x", Formula::eq(Term::var("x"), Term::var("x")));
        let b = Formula::forall("y", Formula::eq(Term::var("y"), Term::var("y")));
        let c2 = Formula::forall("y", Formula::eq(Term::var("y"), Term::var("x")));
        assert!(a.alpha_eq(&b));
        assert!(!a.alpha_eq(&c2));
    }

    #[test]
    fn display_parenthesizes_minimally() {
        let f = Formula::implies(
            Formula::and(Formula::eq(c("a"), c("b")), Formula::not(Formula::eq(c("a"), c("c")))),
            Formula::forall("x", Formula::eq(Term::var("x"), c("a"))),
        );
        assert_eq!(f.to_string(), "a = b & ~(a = c) -> (forall x. x = a)");
    }

    #[test]
    fn signature_rejects_duplicates_and_zero_arity() {
        let s = Signature::new().with_constant("e").unwrap();
        assert_eq!(s.clone().with_function("e", 2), Err(SignatureError::Duplicate("e".into())));
        assert_eq!(s.with_predicate("P", 0), Err(SignatureError::ZeroArity("P".into())));
    }
}
