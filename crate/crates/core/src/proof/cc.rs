//! Congruence closure over hash-consed ground terms.
//!
//! Nodes are interned by signature `(symbol, canonical child classes)`, so a
//! term congruent to an existing node is never duplicated. Merging walks the
//! use-list of the smaller class and re-canonicalizes parent signatures,
//! queueing any collisions as further merges.

use std::collections::HashMap;

use thiserror::Error;

use crate::syntax::Term;

pub type NodeId = usize;

#[derive(Clone, Debug)]
struct Node {
    sym: u32,
    children: Vec<NodeId>,
}

#[derive(Clone, Debug, Default)]
pub struct CongruenceClosure {
    symbols: HashMap<String, u32>,
    nodes: Vec<Node>,
    parent: Vec<NodeId>,
    size: Vec<u32>,
    uses: Vec<Vec<NodeId>>,
    table: HashMap<(u32, Vec<NodeId>), NodeId>,
    term_ids: HashMap<Term, NodeId>,
    pending: Vec<(NodeId, NodeId)>,
    merges: usize,
}

impl CongruenceClosure {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, name: &str) -> u32 {
        if let Some(&s) = self.symbols.get(name) {
            return s;
        }
        let s = self.symbols.len() as u32;
        self.symbols.insert(name.to_string(), s);
        s
    }

    pub fn find(&self, mut n: NodeId) -> NodeId {
        while self.parent[n] != n {
            n = self.parent[n];
        }
        n
    }

    /// Number of successful unions so far.
    pub fn merge_count(&self) -> usize {
        self.merges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    fn signature(&self, n: NodeId) -> (u32, Vec<NodeId>) {
        let node = &self.nodes[n];
        (node.sym, node.children.iter().map(|&c| self.find(c)).collect())
    }

    /// Adds `t` and all its subterms, returning its node.
    pub fn add_term(&mut self, t: &Term) -> NodeId {
        if let Some(&n) = self.term_ids.get(t) {
            return n;
        }
        let (name, args): (&str, &[Term]) = match t {
            Term::Var(v) => (v.as_str(), &[]),
            Term::Const(c) => (c.as_str(), &[]),
            Term::Apply(f, args) => (f.as_str(), args.as_slice()),
        };
        let children: Vec<NodeId> = args.iter().map(|a| self.add_term(a)).collect();
        let sym = self.intern(name);
        let n = self.add_node(sym, children);
        self.term_ids.insert(t.clone(), n);
        n
    }

    fn add_node(&mut self, sym: u32, children: Vec<NodeId>) -> NodeId {
        let key = (sym, children.iter().map(|&c| self.find(c)).collect::<Vec<_>>());
        if let Some(&existing) = self.table.get(&key) {
            return existing;
        }
        let n = self.nodes.len();
        for &root in &key.1 {
            if !self.uses[root].contains(&n) {
                self.uses[root].push(n);
            }
        }
        self.nodes.push(Node { sym, children });
        self.parent.push(n);
        self.size.push(1);
        self.uses.push(Vec::new());
        self.table.insert(key, n);
        n
    }

    /// The class of `t` if it is congruent to a known node, without adding anything.
    pub fn lookup(&self, t: &Term) -> Option<NodeId> {
        if let Some(&n) = self.term_ids.get(t) {
            return Some(self.find(n));
        }
        let (name, args): (&str, &[Term]) = match t {
            Term::Var(v) => (v.as_str(), &[]),
            Term::Const(c) => (c.as_str(), &[]),
            Term::Apply(f, args) => (f.as_str(), args.as_slice()),
        };
        let sym = *self.symbols.get(name)?;
        let children = args.iter().map(|a| self.lookup(a)).collect::<Option<Vec<_>>>()?;
        self.table.get(&(sym, children)).map(|&n| self.find(n))
    }

    /// The class of `name(args)` for argument classes `args`, if such a node exists.
    pub fn lookup_app(&self, name: &str, args: &[NodeId]) -> Option<NodeId> {
        let sym = *self.symbols.get(name)?;
        let children = args.iter().map(|&a| self.find(a)).collect();
        self.table.get(&(sym, children)).map(|&n| self.find(n))
    }

    pub fn merge(&mut self, a: NodeId, b: NodeId) {
        self.pending.push((a, b));
        while let Some((a, b)) = self.pending.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
            self.parent[small] = big;
            self.size[big] += self.size[small];
            self.merges += 1;
            let moved = std::mem::take(&mut self.uses[small]);
            for &p in &moved {
                let sig = self.signature(p);
                match self.table.get(&sig) {
                    Some(&q) => {
                        if self.find(q) != self.find(p) {
                            self.pending.push((p, q));
                        }
                    }
                    None => {
                        self.table.insert(sig, p);
                    }
                }
            }
            self.uses[big].extend(moved);
        }
    }

    pub fn merge_terms(&mut self, a: &Term, b: &Term) {
        let na = self.add_term(a);
        let nb = self.add_term(b);
        self.merge(na, nb);
    }

    pub fn equivalent(&self, a: NodeId, b: NodeId) -> bool {
        self.find(a) == self.find(b)
    }
}

/// The provable-equality partition of an ordered universe of ground terms.
///
/// The universe order is the canonical order: class ids are assigned by first
/// occurrence, so each class's representative is its earliest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub universe: Vec<Term>,
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    index: HashMap<Term, usize>,
}

impl Partition {
    /// Reads off the classes of `universe` from a closure that contains every universe term.
    pub fn from_closure(cc: &CongruenceClosure, universe: Vec<Term>) -> Partition {
        let mut root_class: HashMap<NodeId, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(universe.len());
        let mut representatives = Vec::new();
        let mut index = HashMap::with_capacity(universe.len());
        for (i, t) in universe.iter().enumerate() {
            let root = cc.lookup(t).expect("universe term present in closure");
            let next = root_class.len();
            let c = *root_class.entry(root).or_insert(next);
            if c == representatives.len() {
                representatives.push(i);
            }
            class_of.push(c);
            index.entry(t.clone()).or_insert(i);
        }
        Partition {
            universe,
            class_of,
            representatives,
            index,
        }
    }

    /// The partition with every term in its own class.
    pub fn discrete(universe: Vec<Term>) -> Partition {
        let cc = {
            let mut cc = CongruenceClosure::new();
            universe.iter().for_each(|t| {
                cc.add_term(t);
            });
            cc
        };
        Partition::from_closure(&cc, universe)
    }

    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn position(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn class_of_term(&self, t: &Term) -> Option<usize> {
        self.position(t).map(|i| self.class_of[i])
    }

    pub fn representative(&self, class: usize) -> &Term {
        &self.universe[self.representatives[class]]
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = &Term> {
        self.universe
            .iter()
            .zip(&self.class_of)
            .filter(move |(_, &c)| c == class)
            .map(|(t, _)| t)
    }

    /// Members of every class, in class order.
    pub fn classes(&self) -> Vec<Vec<&Term>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (t, &c) in self.universe.iter().zip(&self.class_of) {
            out[c].push(t);
        }
        out
    }

    pub fn same_class(&self, a: &Term, b: &Term) -> Option<bool> {
        Some(self.class_of_term(a)? == self.class_of_term(b)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("term `{0}` is outside the universe")]
    OutsideUniverse(String),
    #[error("term `{0}` is not ground")]
    NotGround(String),
}

/// Finest congruence on `universe` containing `equations`.
pub fn congruence_close(equations: &[(Term, Term)], universe: &[Term]) -> Result<Partition, CongruenceError> {
    let mut cc = CongruenceClosure::new();
    for t in universe {
        if !t.is_ground() {
            return Err(CongruenceError::NotGround(t.to_string()));
        }
        cc.add_term(t);
    }
    let members: std::collections::HashSet<&Term> = universe.iter().collect();
    for (l, r) in equations {
        for side in [l, r] {
            if !members.contains(side) {
                return Err(CongruenceError::OutsideUniverse(side.to_string()));
            }
        }
        cc.merge_terms(l, r);
    }
    Ok(Partition::from_closure(&cc, universe.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_ground_terms;
    use crate::syntax::Signature;

    fn c(n: &str) -> Term {
        Term::constant(n)
    }

    fn mul(a: Term, b: Term) -> Term {
        Term::apply("mul", vec![a, b])
    }

    fn monoid_sig() -> Signature {
        Signature::new()
            .with_constant("e")
            .unwrap()
            .with_constant("a")
            .unwrap()
            .with_function("mul", 2)
            .unwrap()
    }

    #[test]
    fn reflexivity_only() {
        let p = congruence_close(&[], &[c("c")]).unwrap();
        assert_eq!(p.num_classes(), 1);
        assert_eq!(p.representative(0), &c("c"));
    }

    #[test]
    fn collapsing_generators_collapses_products() {
        let universe = enumerate_ground_terms(&monoid_sig(), 1);
        let p = congruence_close(&[(c("e"), c("a"))], &universe).unwrap();
        assert_eq!(p.num_classes(), 2);
        assert_eq!(p.members(1).count(), 4);
        assert_eq!(p.universe.len(), 6);
    }

    #[test]
    fn outside_universe_is_an_error() {
        let err = congruence_close(&[(c("e"), c("b"))], &[c("e")]).unwrap_err();
        assert_eq!(err, CongruenceError::OutsideUniverse("b".into()));
    }

    #[test]
    fn congruence_propagates_upwards() {
        let mut cc = CongruenceClosure::new();
        let fa = cc.add_term(&Term::apply("f", vec![c("a")]));
        let fb = cc.add_term(&Term::apply("f", vec![c("b")]));
        let ffa = cc.add_term(&Term::apply("f", vec![Term::apply("f", vec![c("a")])]));
        let ffb = cc.add_term(&Term::apply("f", vec![Term::apply("f", vec![c("b")])]));
        assert!(!cc.equivalent(fa, fb));
        cc.merge_terms(&c("a"), &c("b"));
        assert!(cc.equivalent(fa, fb));
        assert!(cc.equivalent(ffa, ffb));
    }

    #[test]
    fn lookup_finds_congruent_unseen_terms() {
        let mut cc = CongruenceClosure::new();
        cc.add_term(&mul(c("e"), c("a")));
        cc.merge_terms(&c("a"), &c("e"));
        let probe = mul(c("a"), c("e"));
        assert_eq!(cc.lookup(&probe), cc.lookup(&mul(c("e"), c("a"))));
        assert_eq!(cc.lookup(&mul(c("a"), mul(c("a"), c("a")))), None);
    }

    #[test]
    fn representatives_are_first_members() {
        let universe = enumerate_ground_terms(&monoid_sig(), 1);
        let p = congruence_close(&[(mul(c("a"), c("a")), c("e"))], &universe).unwrap();
        assert_eq!(p.representative(p.class_of_term(&mul(c("a"), c("a"))).unwrap()), &c("e"));
        assert_eq!(p.num_classes(), 5);
    }
}
