//! Bounded search for the lexicographically least finite model.
//!
//! Table cells are filled in serialization order (constants, then function
//! tables row-major, then predicate tables) trying values in ascending order,
//! so the first complete assignment found is the least one in that order.
//! After each assignment the axioms mentioning the assigned symbol are
//! re-evaluated three-valued; a definitely false axiom prunes the subtree.

use thiserror::Error;

use super::compile::{compile, CFormula, CTerm, Compiled, Tables, Tri};
use super::FiniteModel;
use crate::syntax::{Sentence, Signature, Theory};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelSearchError {
    #[error("no model of size at most {max_size}")]
    NotFoundWithinBound { max_size: usize },
}

#[derive(Clone, Copy, Debug)]
enum Cell {
    Const(usize),
    Func(usize, usize),
    Pred(usize, usize),
}

/// Sentences compiled once for repeated searches over one signature.
#[derive(Clone, Debug)]
pub(crate) struct Searcher {
    n_consts: usize,
    n_funcs: usize,
    n_symbols: usize,
    sentences: Vec<Compiled>,
    mentions: Vec<Vec<bool>>,
    nodes: u64,
}

fn mark_term(t: &CTerm, n_consts: usize, out: &mut [bool]) {
    match t {
        CTerm::Var(_) => {}
        CTerm::Const(i) => out[*i] = true,
        CTerm::App(f, args) => {
            out[n_consts + f] = true;
            args.iter().for_each(|a| mark_term(a, n_consts, out));
        }
    }
}

fn mark(phi: &CFormula, n_consts: usize, n_funcs: usize, out: &mut [bool]) {
    match phi {
        CFormula::Eq(l, r) => {
            mark_term(l, n_consts, out);
            mark_term(r, n_consts, out);
        }
        CFormula::Pred(p, args) => {
            out[n_consts + n_funcs + p] = true;
            args.iter().for_each(|a| mark_term(a, n_consts, out));
        }
        CFormula::Not(b) | CFormula::Forall(_, b) | CFormula::Exists(_, b) => mark(b, n_consts, n_funcs, out),
        CFormula::And(l, r) | CFormula::Or(l, r) | CFormula::Implies(l, r) => {
            mark(l, n_consts, n_funcs, out);
            mark(r, n_consts, n_funcs, out);
        }
    }
}

impl Searcher {
    pub fn new(sig: &Signature) -> Searcher {
        let n_consts = sig.constants().len();
        let n_funcs = sig.functions().len();
        Searcher {
            n_consts,
            n_funcs,
            n_symbols: n_consts + n_funcs + sig.predicates().len(),
            sentences: Vec::new(),
            mentions: Vec::new(),
            nodes: 0,
        }
    }

    pub fn with_sentences<'a>(sig: &Signature, sentences: impl IntoIterator<Item = &'a Sentence>) -> Searcher {
        let mut s = Searcher::new(sig);
        for phi in sentences {
            s.push(sig, phi);
        }
        s
    }

    pub fn push(&mut self, sig: &Signature, phi: &Sentence) {
        let c = compile(sig, phi, &[]).expect("sentence is well formed over the signature");
        let mut m = vec![false; self.n_symbols];
        mark(&c.formula, self.n_consts, self.n_funcs, &mut m);
        self.sentences.push(c);
        self.mentions.push(m);
    }

    pub fn pop(&mut self) {
        self.sentences.pop();
        self.mentions.pop();
    }

    /// Search nodes visited so far.
    #[allow(dead_code)]
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn cells(&self, tables: &Tables) -> Vec<(Cell, i64)> {
        let size = tables.size;
        // Largest element index among a cell's arguments.
        let arg_max = |arity: usize, mut idx: usize| {
            let mut m = -1i64;
            for _ in 0..arity {
                m = m.max((idx % size) as i64);
                idx /= size;
            }
            m
        };
        let mut cells: Vec<(Cell, i64)> = (0..self.n_consts).map(|c| (Cell::Const(c), -1)).collect();
        for (f, (arity, data)) in tables.funcs.iter().enumerate() {
            cells.extend((0..data.len()).map(|i| (Cell::Func(f, i), arg_max(*arity, i))));
        }
        for (p, (arity, data)) in tables.preds.iter().enumerate() {
            cells.extend((0..data.len()).map(|i| (Cell::Pred(p, i), arg_max(*arity, i))));
        }
        cells
    }

    fn root(&self, tables: &Tables) -> Option<Vec<usize>> {
        let mut pending = Vec::new();
        for (k, c) in self.sentences.iter().enumerate() {
            match tables.eval_closed(c) {
                Tri::False => return None,
                Tri::True => {}
                Tri::Unknown => pending.push(k),
            }
        }
        Some(pending)
    }

    /// The least model of the given size, if any.
    pub fn search(&mut self, sig: &Signature, size: usize) -> Option<Tables> {
        let mut tables = Tables::empty(sig, size);
        let cells = self.cells(&tables);
        let pending = self.root(&tables)?;
        let mut mode = Mode::First;
        self.dfs(&mut tables, &cells, 0, -1, &pending, &mut mode).then_some(tables)
    }

    /// Every model of the given size that the symmetry reduction keeps, in
    /// lexicographic order, or `None` once more than `limit` are found.
    pub fn collect(&mut self, sig: &Signature, size: usize, limit: usize) -> Option<Vec<Tables>> {
        let mut tables = Tables::empty(sig, size);
        let cells = self.cells(&tables);
        let Some(pending) = self.root(&tables) else {
            return Some(Vec::new());
        };
        let mut mode = Mode::Collect { limit, found: Vec::new() };
        if self.dfs(&mut tables, &cells, 0, -1, &pending, &mut mode) {
            return None;
        }
        match mode {
            Mode::Collect { found, .. } => Some(found),
            Mode::First => unreachable!(),
        }
    }

    /// Returns true to stop the search: on the first model, or on overflow when collecting.
    ///
    /// `mx` is the largest element mentioned so far by cell arguments or
    /// values. A cell may only take values up to `mx + 1`: elements above that
    /// are interchangeable, and the lexicographically least member of every
    /// isomorphism class respects this bound.
    fn dfs(&mut self, tables: &mut Tables, cells: &[(Cell, i64)], i: usize, mx: i64, pending: &[usize], mode: &mut Mode) -> bool {
        self.nodes += 1;
        let Some(&(cell, arg_max)) = cells.get(i) else {
            debug_assert!(pending.is_empty());
            return match mode {
                Mode::First => true,
                Mode::Collect { limit, found } => {
                    found.push(tables.clone());
                    found.len() > *limit
                }
            };
        };
        let mx = mx.max(arg_max);
        let (symbol, domain) = match cell {
            Cell::Const(c) => (c, tables.size.min((mx + 2) as usize)),
            Cell::Func(f, _) => (self.n_consts + f, tables.size.min((mx + 2) as usize)),
            Cell::Pred(p, _) => (self.n_consts + self.n_funcs + p, 2),
        };
        let mut next = Vec::with_capacity(pending.len());
        for v in 0..domain {
            match cell {
                Cell::Const(c) => tables.consts[c] = v as u32,
                Cell::Func(f, idx) => tables.funcs[f].1[idx] = v as u32,
                Cell::Pred(p, idx) => tables.preds[p].1[idx] = v as u8,
            }
            next.clear();
            let mut ok = true;
            for &k in pending {
                if !self.mentions[k][symbol] {
                    next.push(k);
                    continue;
                }
                match tables.eval_closed(&self.sentences[k]) {
                    Tri::False => {
                        ok = false;
                        break;
                    }
                    Tri::True => {}
                    Tri::Unknown => next.push(k),
                }
            }
            if ok {
                let snapshot = next.clone();
                let mx = match cell {
                    Cell::Pred(..) => mx,
                    _ => mx.max(v as i64),
                };
                if self.dfs(tables, cells, i + 1, mx, &snapshot, mode) {
                    return true;
                }
            }
        }
        match cell {
            Cell::Const(c) => tables.consts[c] = super::compile::UNSET,
            Cell::Func(f, idx) => tables.funcs[f].1[idx] = super::compile::UNSET,
            Cell::Pred(p, idx) => tables.preds[p].1[idx] = 2,
        }
        false
    }
}

enum Mode {
    First,
    Collect { limit: usize, found: Vec<Tables> },
}

/// All models of a theory up to a size bound, modulo the search's symmetry
/// reduction, ordered by size and then lexicographically. Every isomorphism
/// class is represented, and the least model of any extension of the theory
/// is a member.
#[derive(Clone, Debug)]
pub(crate) struct ModelPool {
    pub signature: Signature,
    pub models: Vec<Tables>,
}

impl ModelPool {
    /// `None` when more than `limit` models exist.
    pub fn enumerate(t: &Theory, max_size: usize, limit: usize) -> Option<ModelPool> {
        let mut s = Searcher::with_sentences(&t.signature, &t.axioms);
        let mut models = Vec::new();
        for size in 1..=max_size {
            models.extend(s.collect(&t.signature, size, limit.saturating_sub(models.len()))?);
            if models.len() > limit {
                return None;
            }
        }
        Some(ModelPool {
            signature: t.signature.clone(),
            models,
        })
    }

    /// Truth value of `sigma` in each model.
    pub fn truth(&self, sigma: &Sentence) -> Vec<bool> {
        let c = compile(&self.signature, sigma, &[]).expect("sentence is well formed over the signature");
        self.models.iter().map(|m| m.eval_closed(&c) == Tri::True).collect()
    }

    pub fn retain(&mut self, keep: &[bool]) {
        let mut it = keep.iter();
        self.models.retain(|_| *it.next().expect("one flag per model"));
    }
}

/// The lexicographically least model of `t` over sizes `1..=max_size`.
pub fn find_model(t: &Theory, max_size: usize) -> Result<FiniteModel, ModelSearchError> {
    find_model_from(t, 1, max_size)
}

/// Like [`find_model`], starting at `min_size`.
pub fn find_model_from(t: &Theory, min_size: usize, max_size: usize) -> Result<FiniteModel, ModelSearchError> {
    let mut s = Searcher::with_sentences(&t.signature, &t.axioms);
    for size in min_size.max(1)..=max_size {
        if let Some(tables) = s.search(&t.signature, size) {
            return Ok(FiniteModel::from_tables(t.clone(), &tables));
        }
    }
    Err(ModelSearchError::NotFoundWithinBound { max_size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modelfind::{check_model, ModelCheck};
    use crate::parse::parse_theory;

    #[test]
    fn z2_least_model_is_xor() {
        let m = find_model(&fixtures::z2(), 4).unwrap();
        assert_eq!(m.size, 2);
        assert_eq!(m.const_table, vec![0, 1]);
        assert_eq!(m.fn_tables, vec![vec![0, 1, 1, 0]]);
    }

    #[test]
    fn monoid_least_model_is_trivial() {
        let m = find_model(&fixtures::monoid(), 4).unwrap();
        assert_eq!(m.size, 1);
        assert_eq!(m.const_table, vec![0, 0]);
    }

    #[test]
    fn unsatisfiable_within_bound() {
        let t = parse_theory("theory Empty\nconst c\naxiom exists x. ~(x = x)\n").unwrap();
        assert_eq!(find_model(&t, 4), Err(ModelSearchError::NotFoundWithinBound { max_size: 4 }));
    }

    #[test]
    fn infinite_only_fixture_has_no_small_model() {
        assert_eq!(
            find_model(&fixtures::zf_stub(), 4),
            Err(ModelSearchError::NotFoundWithinBound { max_size: 4 })
        );
    }

    #[test]
    fn unreachable_fixture_needs_two_elements() {
        let m = find_model(&fixtures::unreachable(), 4).unwrap();
        assert_eq!(m.size, 2);
        assert_eq!(m.const_table, vec![0]);
        assert_eq!(m.pred_tables, vec![vec![true, false]]);
    }

    #[test]
    fn found_models_pass_the_checker() {
        for (_, text) in fixtures::THEORIES {
            let t = parse_theory(text).unwrap();
            if let Ok(m) = find_model(&t, 3) {
                assert_eq!(check_model(&m, &t), Ok(ModelCheck::Pass));
            }
        }
    }
}
