//! Canonical enumeration of ground terms and of sentences.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::syntax::{Formula, Sentence, Signature, Term};

/// Compares ground terms by depth, then head symbol declaration order, then
/// children lexicographically. Symbols missing from `sig` sort after declared
/// ones, by name.
pub fn cmp_terms(sig: &Signature, a: &Term, b: &Term) -> Ordering {
    a.depth().cmp(&b.depth()).then_with(|| cmp_same_depth(sig, a, b))
}

fn head_rank(sig: &Signature, t: &Term) -> (u8, usize, String) {
    match t {
        Term::Const(c) => (0, sig.constant_index(c).unwrap_or(usize::MAX), c.clone()),
        Term::Var(v) => (1, 0, v.clone()),
        Term::Apply(f, _) => (2, sig.function_index(f).unwrap_or(usize::MAX), f.clone()),
    }
}

fn cmp_same_depth(sig: &Signature, a: &Term, b: &Term) -> Ordering {
    head_rank(sig, a).cmp(&head_rank(sig, b)).then_with(|| match (a, b) {
        (Term::Apply(_, xs), Term::Apply(_, ys)) => {
            for (x, y) in xs.iter().zip(ys) {
                let o = cmp_terms(sig, x, y);
                if o != Ordering::Equal {
                    return o;
                }
            }
            xs.len().cmp(&ys.len())
        }
        _ => Ordering::Equal,
    })
}

/// All ground terms of depth at most `depth`, in canonical order.
pub fn enumerate_ground_terms(sig: &Signature, depth: usize) -> Vec<Term> {
    if sig.constants().is_empty() {
        return Vec::new();
    }
    let mut terms: Vec<Term> = sig.constants().iter().map(|c| Term::Const(c.clone())).collect();
    // `level_start[d]` is the index of the first term of depth d.
    let mut level_start = vec![0usize];
    for d in 1..=depth {
        let prev_len = terms.len();
        let prev_level = level_start[d - 1];
        level_start.push(prev_len);
        let mut next = Vec::new();
        for f in sig.functions() {
            let mut idx = vec![0usize; f.arity];
            loop {
                if idx.iter().any(|&i| i >= prev_level) {
                    next.push(Term::Apply(f.name.clone(), idx.iter().map(|&i| terms[i].clone()).collect()));
                }
                if !advance_tuple(&mut idx, prev_len) {
                    break;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        terms.extend(next);
    }
    terms
}

/// Steps an odometer over `[0, bound)^n`, last position fastest. Returns
/// false after the final tuple.
pub(crate) fn advance_tuple(idx: &mut [usize], bound: usize) -> bool {
    for pos in (0..idx.len()).rev() {
        idx[pos] += 1;
        if idx[pos] < bound {
            return true;
        }
        idx[pos] = 0;
    }
    false
}

/// Names for bound variables by binder depth, skipping declared symbols.
pub(crate) fn bound_var_names(sig: &Signature, count: usize) -> Vec<String> {
    const BASE: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    let mut out = Vec::with_capacity(count);
    let mut i = 0usize;
    while out.len() < count {
        let candidate = if i < BASE.len() {
            BASE[i].to_string()
        } else {
            format!("x{i}")
        };
        if !sig.is_declared(&candidate) {
            out.push(candidate);
        }
        i += 1;
    }
    out
}

/// Memoized generator of terms and formulas of an exact node count with the
/// first `scope` bound variables available.
struct SentenceGen<'a> {
    sig: &'a Signature,
    vars: Vec<String>,
    terms: HashMap<(usize, usize), Vec<Term>>,
    formulas: HashMap<(usize, usize), Vec<Formula>>,
}

/// Compositions of `total` into `parts` positive summands, lexicographic.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if total < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=total - (parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cartesian<T: Clone>(lists: &[&Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(acc.len() * list.len());
        for prefix in &acc {
            for item in list.iter() {
                let mut v = prefix.clone();
                v.push(item.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

impl<'a> SentenceGen<'a> {
    fn new(sig: &'a Signature, budget: usize) -> Self {
        SentenceGen {
            sig,
            vars: bound_var_names(sig, budget / 2 + 1),
            terms: HashMap::new(),
            formulas: HashMap::new(),
        }
    }

    fn terms(&mut self, size: usize, scope: usize) -> Vec<Term> {
        if let Some(v) = self.terms.get(&(size, scope)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.extend(self.sig.constants().iter().map(|c| Term::Const(c.clone())));
            out.extend(self.vars[..scope].iter().map(|v| Term::Var(v.clone())));
        } else {
            for f in self.sig.functions().to_vec() {
                for comp in compositions(size - 1, f.arity) {
                    let lists: Vec<Vec<Term>> = comp.iter().map(|&s| self.terms(s, scope)).collect();
                    let refs: Vec<&Vec<Term>> = lists.iter().collect();
                    out.extend(cartesian(&refs).into_iter().map(|args| Term::Apply(f.name.clone(), args)));
                }
            }
        }
        self.terms.insert((size, scope), out.clone());
        out
    }

    fn formulas(&mut self, size: usize, scope: usize) -> Vec<Formula> {
        if let Some(v) = self.formulas.get(&(size, scope)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size >= 3 {
            // Equations oriented so the left side precedes the right in generation order.
            for ls in 1..=size - 2 {
                let rs = size - 1 - ls;
                if ls > rs {
                    break;
                }
                let lefts = self.terms(ls, scope);
                let rights = self.terms(rs, scope);
                for (i, l) in lefts.iter().enumerate() {
                    let start = if ls == rs { i } else { 0 };
                    for r in &rights[start..] {
                        out.push(Formula::Equal(l.clone(), r.clone()));
                    }
                }
            }
        }
        for p in self.sig.predicates().to_vec() {
            if size < 1 + p.arity {
                continue;
            }
            for comp in compositions(size - 1, p.arity) {
                let lists: Vec<Vec<Term>> = comp.iter().map(|&s| self.terms(s, scope)).collect();
                let refs: Vec<&Vec<Term>> = lists.iter().collect();
                out.extend(cartesian(&refs).into_iter().map(|args| Formula::Pred(p.name.clone(), args)));
            }
        }
        if size >= 2 {
            for body in self.formulas(size - 1, scope) {
                if !matches!(body, Formula::Not(_)) {
                    out.push(Formula::not(body));
                }
            }
        }
        if size >= 3 {
            for ctor in 0..3 {
                for ls in 1..=size - 2 {
                    let lefts = self.formulas(ls, scope);
                    let rights = self.formulas(size - 1 - ls, scope);
                    for l in &lefts {
                        for r in &rights {
                            out.push(match ctor {
                                0 => Formula::and(l.clone(), r.clone()),
                                1 => Formula::or(l.clone(), r.clone()),
                                _ => Formula::implies(l.clone(), r.clone()),
                            });
                        }
                    }
                }
            }
        }
        if size >= 2 && scope < self.vars.len() {
            let v = self.vars[scope].clone();
            let bodies: Vec<Formula> = self
                .formulas(size - 1, scope + 1)
                .into_iter()
                .filter(|b| b.has_free_var(&v))
                .collect();
            out.extend(bodies.iter().map(|b| Formula::Forall(v.clone(), Box::new(b.clone()))));
            out.extend(bodies.into_iter().map(|b| Formula::Exists(v.clone(), Box::new(b))));
        }
        self.formulas.insert((size, scope), out.clone());
        out
    }
}

/// Deterministic list of sentences with at most `size_budget` AST nodes.
///
/// Ground equations come first (by size), then every other sentence by size,
/// each group in generation order: equations, predicate atoms, negations,
/// conjunctions, disjunctions, implications, universal, existential.
/// Bound variables are named by binder depth, every quantifier binds a
/// variable that occurs in its body, equations are oriented, and double
/// negations are omitted, so the list has no syntactic or alpha duplicates.
pub fn enumerate_sentences(sig: &Signature, size_budget: usize) -> Vec<Sentence> {
    let mut gen = SentenceGen::new(sig, size_budget);
    let mut ground_eqs = Vec::new();
    let mut rest = Vec::new();
    for size in 1..=size_budget {
        for f in gen.formulas(size, 0) {
            match &f {
                Formula::Equal(l, r) if l.is_ground() && r.is_ground() => ground_eqs.push(f),
                _ => rest.push(f),
            }
        }
    }
    ground_eqs.extend(rest);
    ground_eqs
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

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
    fn no_functions_only_constants() {
        let sig = Signature::new().with_constant("c").unwrap();
        assert_eq!(enumerate_ground_terms(&sig, 3), vec![Term::constant("c")]);
    }

    #[test]
    fn monoid_depth_one() {
        let shown: Vec<String> = enumerate_ground_terms(&monoid_sig(), 1).iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, ["e", "a", "mul(e,e)", "mul(e,a)", "mul(a,e)", "mul(a,a)"]);
    }

    #[test]
    fn no_constants_no_terms() {
        let sig = Signature::new().with_function("f", 1).unwrap();
        assert!(enumerate_ground_terms(&sig, 5).is_empty());
    }

    #[test]
    fn canonical_order_is_sorted() {
        let sig = monoid_sig();
        let terms = enumerate_ground_terms(&sig, 2);
        for w in terms.windows(2) {
            assert_eq!(cmp_terms(&sig, &w[0], &w[1]), Ordering::Less, "{} !< {}", w[0], w[1]);
        }
    }

    #[test]
    fn sentence_budget_three_over_single_constant() {
        let sig = Signature::new().with_constant("c").unwrap();
        let s = enumerate_sentences(&sig, 3);
        assert_eq!(s, vec![Formula::eq(Term::constant("c"), Term::constant("c"))]);
    }

    #[test]
    fn budget_zero_is_empty() {
        assert!(enumerate_sentences(&monoid_sig(), 0).is_empty());
    }

    #[test]
    fn ground_equalities_precede_quantified() {
        let s = enumerate_sentences(&monoid_sig(), 5);
        let ea = Formula::eq(Term::constant("e"), Term::constant("a"));
        let pos_ea = s.iter().position(|f| *f == ea).expect("e = a enumerated");
        let first_forall = s.iter().position(|f| matches!(f, Formula::Forall(..))).unwrap();
        assert!(pos_ea < first_forall);
        let last_ground_eq = s
            .iter()
            .rposition(|f| matches!(f, Formula::Equal(l, r) if l.is_ground() && r.is_ground()))
            .unwrap();
        assert!(s[..=last_ground_eq].iter().all(|f| matches!(f, Formula::Equal(..))));
    }

    #[test]
    fn sentences_are_closed_within_budget_and_unique() {
        let sig = monoid_sig();
        let s = enumerate_sentences(&sig, 6);
        let mut seen = HashSet::new();
        for f in &s {
            assert!(f.is_sentence(), "{f}");
            assert!(f.node_count() <= 6);
            sig.check_sentence(f).unwrap();
            assert!(seen.insert(f.clone()), "duplicate {f}");
        }
    }

    #[test]
    fn compositions_are_lexicographic() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert!(compositions(1, 2).is_empty());
    }
}
