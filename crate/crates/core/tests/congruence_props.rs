//! Congruence closure agrees with a naive fixpoint on random inputs.

use std::collections::BTreeSet;

use proptest::prelude::*;

use henkin_core::proof::congruence_close;
use henkin_core::syntax::Term;

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![Just(Term::constant("a")), Just(Term::constant("b"))];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::apply("f", vec![t])),
            (inner.clone(), inner).prop_map(|(l, r)| Term::apply("g", vec![l, r])),
        ]
    })
}

fn subterm_closed(terms: &[Term]) -> Vec<Term> {
    fn walk(t: &Term, out: &mut Vec<Term>, seen: &mut BTreeSet<Term>) {
        if let Term::Apply(_, args) = t {
            args.iter().for_each(|a| walk(a, out, seen));
        }
        if seen.insert(t.clone()) {
            out.push(t.clone());
        }
    }
    let (mut out, mut seen) = (Vec::new(), BTreeSet::new());
    terms.iter().for_each(|t| walk(t, &mut out, &mut seen));
    out
}

/// Union-find closure recomputed from scratch until nothing changes.
fn naive_classes(universe: &[Term], equations: &[(usize, usize)]) -> Vec<usize> {
    let n = universe.len();
    let mut class: Vec<usize> = (0..n).collect();
    let relabel = |class: &mut Vec<usize>, from: usize, to: usize| {
        for c in class.iter_mut() {
            if *c == from {
                *c = to;
            }
        }
    };
    for &(i, j) in equations {
        let (ci, cj) = (class[i], class[j]);
        relabel(&mut class, ci, cj);
    }
    let index = |t: &Term| universe.iter().position(|u| u == t).unwrap();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if class[i] == class[j] {
                    continue;
                }
                if let (Term::Apply(f, xs), Term::Apply(g, ys)) = (&universe[i], &universe[j]) {
                    if f == g && xs.iter().zip(ys).all(|(x, y)| class[index(x)] == class[index(y)]) {
                        let (ci, cj) = (class[i], class[j]);
                        relabel(&mut class, ci, cj);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return class;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn matches_naive_closure(terms in prop::collection::vec(term(), 1..8), raw in prop::collection::vec((0usize..64, 0usize..64), 0..5)) {
        let universe = subterm_closed(&terms);
        let n = universe.len();
        let pairs: Vec<(usize, usize)> = raw.iter().map(|&(i, j)| (i % n, j % n)).collect();
        let equations: Vec<(Term, Term)> = pairs.iter().map(|&(i, j)| (universe[i].clone(), universe[j].clone())).collect();
        let partition = congruence_close(&equations, &universe).unwrap();
        let oracle = naive_classes(&universe, &pairs);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(partition.same_class(&universe[i], &universe[j]), Some(oracle[i] == oracle[j]));
            }
        }
    }

    #[test]
    fn classes_are_numbered_by_first_member(terms in prop::collection::vec(term(), 1..6), raw in prop::collection::vec((0usize..64, 0usize..64), 0..4)) {
        let universe = subterm_closed(&terms);
        let n = universe.len();
        let equations: Vec<(Term, Term)> = raw.iter().map(|&(i, j)| (universe[i % n].clone(), universe[j % n].clone())).collect();
        let partition = congruence_close(&equations, &universe).unwrap();
        let mut next = 0;
        for &c in &partition.class_of {
            prop_assert!(c <= next);
            if c == next {
                next += 1;
            }
        }
    }
}
