//! Budgeted analytic tableau with congruence-closure branch closure.
//!
//! Formulas are put in negation normal form and expanded oldest-first. A
//! branch closes when its literals are inconsistent modulo equality: predicate
//! atoms are encoded as terms that are merged with a distinguished `true`
//! node, so a negative literal is just a disequality. Universal formulas are
//! instantiated over the branch's Herbrand terms once the queue drains; a
//! budget of expansion steps is shared by all branches.

use std::collections::{HashSet, VecDeque};

use crate::proof::cc::{CongruenceClosure, NodeId};
use crate::syntax::{Formula, Sentence, Signature, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Atom {
    Eq(Term, Term),
    Pred(String, Vec<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Nnf {
    Lit(bool, Atom),
    And(Box<Nnf>, Box<Nnf>),
    Or(Box<Nnf>, Box<Nnf>),
    Forall(String, Box<Nnf>),
    Exists(String, Box<Nnf>),
}

fn nnf(phi: &Formula, positive: bool) -> Nnf {
    match phi {
        Formula::Equal(l, r) => Nnf::Lit(positive, Atom::Eq(l.clone(), r.clone())),
        Formula::Pred(p, args) => Nnf::Lit(positive, Atom::Pred(p.clone(), args.clone())),
        Formula::Not(b) => nnf(b, !positive),
        Formula::And(l, r) if positive => Nnf::And(Box::new(nnf(l, true)), Box::new(nnf(r, true))),
        Formula::And(l, r) => Nnf::Or(Box::new(nnf(l, false)), Box::new(nnf(r, false))),
        Formula::Or(l, r) if positive => Nnf::Or(Box::new(nnf(l, true)), Box::new(nnf(r, true))),
        Formula::Or(l, r) => Nnf::And(Box::new(nnf(l, false)), Box::new(nnf(r, false))),
        Formula::Implies(l, r) if positive => Nnf::Or(Box::new(nnf(l, false)), Box::new(nnf(r, true))),
        Formula::Implies(l, r) => Nnf::And(Box::new(nnf(l, true)), Box::new(nnf(r, false))),
        Formula::Forall(v, b) if positive => Nnf::Forall(v.clone(), Box::new(nnf(b, true))),
        Formula::Forall(v, b) => Nnf::Exists(v.clone(), Box::new(nnf(b, false))),
        Formula::Exists(v, b) if positive => Nnf::Exists(v.clone(), Box::new(nnf(b, true))),
        Formula::Exists(v, b) => Nnf::Forall(v.clone(), Box::new(nnf(b, false))),
    }
}

impl Nnf {
    /// Replaces free `v` by the ground term `t`; no capture is possible.
    fn instantiate(&self, v: &str, t: &Term) -> Nnf {
        match self {
            Nnf::Lit(pol, Atom::Eq(l, r)) => Nnf::Lit(*pol, Atom::Eq(l.substitute(v, t), r.substitute(v, t))),
            Nnf::Lit(pol, Atom::Pred(p, args)) => {
                Nnf::Lit(*pol, Atom::Pred(p.clone(), args.iter().map(|a| a.substitute(v, t)).collect()))
            }
            Nnf::And(l, r) => Nnf::And(Box::new(l.instantiate(v, t)), Box::new(r.instantiate(v, t))),
            Nnf::Or(l, r) => Nnf::Or(Box::new(l.instantiate(v, t)), Box::new(r.instantiate(v, t))),
            Nnf::Forall(w, _) | Nnf::Exists(w, _) if w == v => self.clone(),
            Nnf::Forall(w, b) => Nnf::Forall(w.clone(), Box::new(b.instantiate(v, t))),
            Nnf::Exists(w, b) => Nnf::Exists(w.clone(), Box::new(b.instantiate(v, t))),
        }
    }
}

const TRUE_SYMBOL: &str = "$true";

#[derive(Clone)]
struct Universal {
    var: String,
    body: Nnf,
    used: usize,
}

#[derive(Clone)]
struct Branch {
    queue: VecDeque<Nnf>,
    universals: Vec<Universal>,
    herbrand: Vec<Term>,
    herbrand_seen: HashSet<Term>,
    cc: CongruenceClosure,
    diseqs: Vec<(NodeId, NodeId)>,
    true_node: NodeId,
}

impl Branch {
    fn add_herbrand(&mut self, t: &Term) {
        let mut subs = Vec::new();
        t.subterms_into(&mut subs);
        for s in subs {
            if !self.herbrand_seen.contains(s) {
                self.herbrand_seen.insert(s.clone());
                self.herbrand.push(s.clone());
            }
        }
    }

    fn atom_nodes(&mut self, atom: &Atom) -> (NodeId, NodeId) {
        match atom {
            Atom::Eq(l, r) => {
                self.add_herbrand(l);
                self.add_herbrand(r);
                (self.cc.add_term(l), self.cc.add_term(r))
            }
            Atom::Pred(p, args) => {
                args.iter().for_each(|a| self.add_herbrand(a));
                let n = self.cc.add_term(&Term::Apply(p.clone(), args.clone()));
                (n, self.true_node)
            }
        }
    }

    /// Adds a literal; returns true when the branch closes.
    fn add_literal(&mut self, positive: bool, atom: &Atom) -> bool {
        let (a, b) = self.atom_nodes(atom);
        if positive {
            self.cc.merge(a, b);
            self.diseqs.iter().any(|&(x, y)| self.cc.equivalent(x, y))
        } else if self.cc.equivalent(a, b) {
            true
        } else {
            self.diseqs.push((a, b));
            false
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableauOutcome {
    /// Every branch closed: the premises are unsatisfiable.
    Closed,
    /// Some branch saturated without closing.
    Open,
    /// The step budget ran out.
    Exhausted,
}

pub struct Tableau {
    budget: usize,
    steps: usize,
    params: usize,
}

impl Tableau {
    pub fn new(budget: usize) -> Self {
        Tableau {
            budget,
            steps: 0,
            params: 0,
        }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    fn fresh_param(&mut self) -> Term {
        let t = Term::constant(&format!("$sk{}", self.params));
        self.params += 1;
        t
    }

    /// Tries to close a tableau for `premises`, seeding the Herbrand terms with the constants of `sig`.
    pub fn refute(&mut self, sig: &Signature, premises: &[&Sentence]) -> TableauOutcome {
        let mut cc = CongruenceClosure::new();
        let true_node = cc.add_term(&Term::constant(TRUE_SYMBOL));
        let mut root = Branch {
            queue: premises.iter().map(|p| nnf(p, true)).collect(),
            universals: Vec::new(),
            herbrand: Vec::new(),
            herbrand_seen: HashSet::new(),
            cc,
            diseqs: Vec::new(),
            true_node,
        };
        for c in sig.constants() {
            root.add_herbrand(&Term::constant(c));
        }
        let mut stack = vec![root];
        while let Some(branch) = stack.pop() {
            match self.expand(branch, &mut stack) {
                TableauOutcome::Closed => {}
                other => return other,
            }
        }
        TableauOutcome::Closed
    }

    fn expand(&mut self, mut b: Branch, stack: &mut Vec<Branch>) -> TableauOutcome {
        loop {
            if self.steps >= self.budget {
                return TableauOutcome::Exhausted;
            }
            if let Some(f) = b.queue.pop_front() {
                self.steps += 1;
                match f {
                    Nnf::Lit(pol, atom) => {
                        if b.add_literal(pol, &atom) {
                            return TableauOutcome::Closed;
                        }
                    }
                    Nnf::And(l, r) => {
                        b.queue.push_back(*l);
                        b.queue.push_back(*r);
                    }
                    Nnf::Or(l, r) => {
                        let mut right = b.clone();
                        right.queue.push_back(*r);
                        stack.push(right);
                        b.queue.push_back(*l);
                    }
                    Nnf::Exists(v, body) => {
                        let p = self.fresh_param();
                        b.add_herbrand(&p);
                        b.queue.push_back(body.instantiate(&v, &p));
                    }
                    Nnf::Forall(var, body) => b.universals.push(Universal { var, body: *body, used: 0 }),
                }
                continue;
            }
            if b.universals.is_empty() {
                return TableauOutcome::Open;
            }
            if b.herbrand.is_empty() {
                let p = self.fresh_param();
                b.add_herbrand(&p);
            }
            // Instantiate every universal with every term it has not seen, oldest terms first.
            let mut progressed = false;
            for ti in 0..b.herbrand.len() {
                for u in b.universals.iter_mut() {
                    if u.used <= ti {
                        b.queue.push_back(u.body.instantiate(&u.var, &b.herbrand[ti]));
                        u.used = ti + 1;
                        progressed = true;
                    }
                }
            }
            if !progressed {
                return TableauOutcome::Open;
            }
        }
    }
}

/// Outcome of a budgeted proof attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProofVerdict {
    Proved,
    Refuted,
    Unknown { steps: usize },
}

impl ProofVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ProofVerdict::Proved => "proved",
            ProofVerdict::Refuted => "refuted",
            ProofVerdict::Unknown { .. } => "unknown",
        }
    }
}

/// True when `premises` close within `budget` steps.
pub fn refutes(sig: &Signature, premises: &[&Sentence], budget: usize) -> bool {
    Tableau::new(budget).refute(sig, premises) == TableauOutcome::Closed
}

/// Decides `theory |- goal` by refuting the negated goal, then `theory |- ~goal`
/// by refuting the goal. Each attempt gets its own `budget` of steps.
pub fn prove_from(sig: &Signature, axioms: &[Sentence], goal: &Sentence, budget: usize) -> ProofVerdict {
    let negated = Formula::not(goal.clone());
    let mut premises: Vec<&Sentence> = vec![&negated];
    premises.extend(axioms.iter());
    let mut first = Tableau::new(budget);
    if first.refute(sig, &premises) == TableauOutcome::Closed {
        return ProofVerdict::Proved;
    }
    premises[0] = goal;
    let mut second = Tableau::new(budget);
    if second.refute(sig, &premises) == TableauOutcome::Closed {
        return ProofVerdict::Refuted;
    }
    ProofVerdict::Unknown {
        steps: first.steps() + second.steps(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::parse::parse_formula;

    fn verdict(theory: &crate::syntax::Theory, goal: &str, budget: usize) -> ProofVerdict {
        let g = parse_formula(&theory.signature, goal).unwrap();
        prove_from(&theory.signature, &theory.axioms, &g, budget)
    }

    #[test]
    fn nnf_pushes_negation_through_quantifiers() {
        let sig = Signature::new().with_predicate("P", 1).unwrap();
        let f = parse_formula(&sig, "~(forall x. P(x) -> exists y. ~P(y))").unwrap();
        let expected = Nnf::Exists(
            "x".into(),
            Box::new(Nnf::And(
                Box::new(Nnf::Lit(true, Atom::Pred("P".into(), vec![Term::var("x")]))),
                Box::new(Nnf::Forall(
                    "y".into(),
                    Box::new(Nnf::Lit(true, Atom::Pred("P".into(), vec![Term::var("y")]))),
                )),
            )),
        );
        assert_eq!(nnf(&f, true), expected);
    }

    #[test]
    fn z2_refutes_collapse() {
        assert_eq!(verdict(&fixtures::z2(), "e = a", 200), ProofVerdict::Refuted);
    }

    #[test]
    fn z2_proves_square_identity() {
        assert_eq!(verdict(&fixtures::z2(), "mul(a, a) = e", 10), ProofVerdict::Proved);
        assert_eq!(verdict(&fixtures::z2(), "mul(e, a) = a", 50), ProofVerdict::Proved);
    }

    #[test]
    fn monoid_cannot_decide_generator_square() {
        assert!(matches!(verdict(&fixtures::monoid(), "a = mul(a, a)", 300), ProofVerdict::Unknown { .. }));
    }

    #[test]
    fn witness_existence_is_provable() {
        let w = fixtures::witness();
        assert_eq!(verdict(&w, "exists x. P(x)", 20), ProofVerdict::Proved);
        assert!(matches!(verdict(&w, "P(c)", 200), ProofVerdict::Unknown { .. }));
    }

    #[test]
    fn quantifier_reasoning_with_equality() {
        let sig = Signature::new()
            .with_constant("c")
            .unwrap()
            .with_function("f", 1)
            .unwrap()
            .with_predicate("P", 1)
            .unwrap();
        let axioms = vec![
            parse_formula(&sig, "forall x. P(x) -> P(f(x))").unwrap(),
            parse_formula(&sig, "P(c)").unwrap(),
            parse_formula(&sig, "f(f(c)) = c").unwrap(),
        ];
        let goal = parse_formula(&sig, "P(f(f(f(c))))").unwrap();
        assert_eq!(prove_from(&sig, &axioms, &goal, 500), ProofVerdict::Proved);
    }

    #[test]
    fn budget_is_respected() {
        let mut t = Tableau::new(5);
        let m = fixtures::monoid();
        let g = Formula::not(parse_formula(&m.signature, "a = mul(a, a)").unwrap());
        let premises: Vec<&Sentence> = std::iter::once(&g).chain(m.axioms.iter()).collect();
        assert_eq!(t.refute(&m.signature, &premises), TableauOutcome::Exhausted);
        assert_eq!(t.steps(), 5);
    }

    #[test]
    fn saturated_branch_is_open() {
        let sig = Signature::new().with_constant("c").unwrap().with_predicate("P", 1).unwrap();
        let p = parse_formula(&sig, "forall x. P(x)").unwrap();
        assert_eq!(Tableau::new(100).refute(&sig, &[&p]), TableauOutcome::Open);
    }
}
