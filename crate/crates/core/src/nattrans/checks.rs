use std::collections::BTreeMap;

use super::eta::{class_name, EtaComponent, NatCandidate};
use super::report::{ratio, CheckReport};
use crate::enumerate::advance_tuple;
use crate::henkin::TermModel;
use crate::modelfind::{FiniteModel, ModelHom};
use crate::syntax::Term;
use crate::translation::TheoryTranslation;

/// Calls `visit` on every tuple of `arity` elements below `bound`.
fn for_tuples(arity: usize, bound: usize, mut visit: impl FnMut(&[usize])) {
    if bound == 0 && arity > 0 {
        return;
    }
    let mut args = vec![0; arity];
    loop {
        visit(&args);
        if !advance_tuple(&mut args, bound) {
            break;
        }
    }
}

fn applied(f: &TermModel, name: &str, args: &[usize]) -> String {
    let args: Vec<String> = args.iter().map(|&c| class_name(f, c)).collect();
    format!("{name}({})", args.join(","))
}

/// Constants, defined operation entries, and true predicate entries of the
/// term model are preserved by the map.
pub fn check_homomorphism(eta: &EtaComponent) -> CheckReport {
    let f = &eta.term_model;
    let g = &eta.finite_model;
    let sig = &f.expansion().signature;
    let n = f.num_classes();
    let mut witnesses = Vec::new();
    let (mut checked, mut total) = (0, 0);
    for c in sig.constants() {
        let class = f.class_of_term(&Term::constant(c)).expect("constants are in the universe");
        let value = g.constant(c).expect("same signature");
        if eta.map[class] != value {
            witnesses.push(vec![c.clone(), eta.map[class].to_string(), value.to_string()]);
        }
    }
    for op in &f.op_tables {
        for_tuples(op.arity, n, |args| {
            total += 1;
            let Some(r) = f.op(&op.name, args) else { return };
            checked += 1;
            let lhs = eta.map[r];
            let mapped: Vec<usize> = args.iter().map(|&c| eta.map[c]).collect();
            let rhs = g.apply(&op.name, &mapped).expect("same signature");
            if lhs != rhs {
                witnesses.push(vec![applied(f, &op.name, args), lhs.to_string(), rhs.to_string()]);
            }
        });
    }
    for p in &f.pred_tables {
        for_tuples(p.arity, n, |args| {
            total += 1;
            let Some(v) = f.pred(&p.name, args) else { return };
            checked += 1;
            let mapped: Vec<usize> = args.iter().map(|&c| eta.map[c]).collect();
            if v && g.holds(&p.name, &mapped) != Some(true) {
                witnesses.push(vec![applied(f, &p.name, args), "true".into(), "false".into()]);
            }
        });
    }
    CheckReport::from_witnesses("homomorphism", witnesses, ratio(checked, total))
}

/// Every element is the value of some term, and terms with equal values lie
/// in the same class. Witnesses are uncovered elements, or
/// `(t, s, shared value)` for terms from different classes.
pub fn check_canonical_representation(f: &TermModel, g: &FiniteModel) -> CheckReport {
    let mut first_term: BTreeMap<usize, (&Term, usize)> = BTreeMap::new();
    let mut merged: BTreeMap<(usize, usize), (&Term, &Term, usize)> = BTreeMap::new();
    let mut witnesses = Vec::new();
    for (t, &c) in f.universe().iter().zip(&f.partition.class_of) {
        let Ok(y) = g.eval_ground(t) else {
            witnesses.push(vec![t.to_string(), "undefined".into()]);
            continue;
        };
        let &mut (s, d) = first_term.entry(y).or_insert((t, c));
        if d != c {
            merged.entry((d, c)).or_insert((s, t, y));
        }
    }
    for y in 0..g.size {
        if !first_term.contains_key(&y) {
            witnesses.push(vec![y.to_string()]);
        }
    }
    for (s, t, y) in merged.into_values() {
        witnesses.push(vec![s.to_string(), t.to_string(), y.to_string()]);
    }
    CheckReport::from_witnesses("canonical_representation", witnesses, ratio(first_term.len(), g.size))
}

/// The inverse preserves constants, operations, and predicates in the other
/// direction; entries undefined in the term model are skipped.
pub fn check_inverse_homomorphism(eta: &EtaComponent, inverse: &[usize]) -> CheckReport {
    let f = &eta.term_model;
    let g = &eta.finite_model;
    let sig = g.signature();
    let mut witnesses = Vec::new();
    let (mut checked, mut total) = (0, 0);
    for (c, &y) in sig.constants().iter().zip(&g.const_table) {
        let class = f.class_of_term(&Term::constant(c)).expect("constants are in the universe");
        if inverse[y] != class {
            witnesses.push(vec![c.clone(), class_name(f, inverse[y]), class_name(f, class)]);
        }
    }
    for s in sig.functions() {
        for_tuples(s.arity, g.size, |args| {
            total += 1;
            let classes: Vec<usize> = args.iter().map(|&y| inverse[y]).collect();
            let Some(rhs) = f.op(&s.name, &classes) else { return };
            checked += 1;
            let lhs = inverse[g.apply(&s.name, args).expect("declared")];
            if lhs != rhs {
                witnesses.push(vec![format!("{}{args:?}", s.name), class_name(f, lhs), class_name(f, rhs)]);
            }
        });
    }
    for p in sig.predicates() {
        for_tuples(p.arity, g.size, |args| {
            total += 1;
            let classes: Vec<usize> = args.iter().map(|&y| inverse[y]).collect();
            let Some(v) = f.pred(&p.name, &classes) else { return };
            checked += 1;
            if g.holds(&p.name, args) == Some(true) && !v {
                witnesses.push(vec![format!("{}{args:?}", p.name), "true".into(), "false".into()]);
            }
        });
    }
    CheckReport::from_witnesses("inverse_homomorphism", witnesses, ratio(checked, total))
}

/// The candidate agrees with `eta` on every class. Witnesses are
/// `(class, candidate value, eta value)`.
pub fn check_rigidity(theta: &NatCandidate, eta: &EtaComponent) -> CheckReport {
    let f = &eta.term_model;
    let mut witnesses = Vec::new();
    if theta.map.len() != eta.map.len() {
        witnesses.push(vec![
            theta.description.clone(),
            format!("{} classes", theta.map.len()),
            format!("{} classes", eta.map.len()),
        ]);
    }
    for (c, (&t, &e)) in theta.map.iter().zip(&eta.map).enumerate() {
        if t != e {
            witnesses.push(vec![class_name(f, c), t.to_string(), e.to_string()]);
        }
    }
    CheckReport::from_witnesses("rigidity", witnesses, 1.0)
}

/// Duplicating a class and then mapping both copies agrees with mapping and
/// then duplicating, and binary self-application commutes with the map.
pub fn check_lawvere_square(f: &TermModel, g: &FiniteModel, eta: &EtaComponent) -> CheckReport {
    let mut witnesses = Vec::new();
    for c in 0..f.num_classes() {
        let across = (eta.map[c], eta.map[c]);
        let y = eta.map[c];
        if across != (y, y) {
            witnesses.push(vec![class_name(f, c), format!("{across:?}"), format!("{:?}", (y, y))]);
        }
    }
    let (mut checked, mut total) = (0, 0);
    for op in f.op_tables.iter().filter(|op| op.arity == 2) {
        for c in 0..f.num_classes() {
            total += 1;
            let Some(r) = f.op(&op.name, &[c, c]) else { continue };
            checked += 1;
            let y = eta.map[c];
            let rhs = g.apply(&op.name, &[y, y]).expect("same signature");
            if eta.map[r] != rhs {
                witnesses.push(vec![applied(f, &op.name, &[c, c]), eta.map[r].to_string(), rhs.to_string()]);
            }
        }
    }
    CheckReport::from_witnesses("lawvere_square", witnesses, ratio(checked, total))
}

/// The square `theta_dst . F(phi) = G(phi) . theta_src` over the classes of
/// `source`. Witnesses are `(class, left side, right side)`.
pub fn check_square(check: &str, source: &TermModel, theta_src: &[usize], theta_dst: &[usize], f_map: &[usize], g_map: &ModelHom) -> CheckReport {
    let mut witnesses = Vec::new();
    for c in 0..source.num_classes() {
        let lhs = theta_dst[f_map[c]];
        let rhs = g_map.apply(theta_src[c]);
        if lhs != rhs {
            witnesses.push(vec![class_name(source, c), lhs.to_string(), rhs.to_string()]);
        }
    }
    CheckReport::from_witnesses(check, witnesses, 1.0)
}

/// `f_map` is `F(phi)` from `map_term_model` and `g_map` is `G(phi)` from
/// `induced_hom`, both along `phi`.
pub fn check_naturality(phi: &TheoryTranslation, eta_src: &EtaComponent, eta_dst: &EtaComponent, f_map: &[usize], g_map: &ModelHom) -> CheckReport {
    debug_assert_eq!(eta_src.term_model.expansion().base.name, phi.source.name);
    check_square("naturality", &eta_src.term_model, &eta_src.map, &eta_dst.map, f_map, g_map)
}
