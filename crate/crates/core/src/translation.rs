//! Theory translations: arity-preserving symbol maps between signatures.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::parse::{content_lines, parse_identifier, split_keyword, ParseError};
use crate::proof::{prove, ProofVerdict};
use crate::syntax::{Formula, Sentence, Signature, SymbolKind, Term, Theory};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}: translation is declared for {declared}, but the loaded theory is `{loaded}`")]
    TheoryNameMismatch {
        line: usize,
        declared: String,
        loaded: String,
    },
    #[error("unmapped symbol {0}")]
    Unmapped(String),
    #[error("line {line}: `{source_symbol}` is not a symbol of the source theory")]
    UnknownSourceSymbol { line: usize, source_symbol: String },
    #[error("line {line}: unknown target symbol `{target}`")]
    UnknownTargetSymbol { line: usize, target: String },
    #[error("line {line}: arity drift mapping `{source_symbol}` ({source_kind}) to `{target}` ({target_kind})")]
    ArityDrift {
        line: usize,
        source_symbol: String,
        source_kind: String,
        target: String,
        target_kind: String,
    },
    #[error("line {line}: `{source_symbol}` is mapped twice")]
    DuplicateMapping { line: usize, source_symbol: String },
    #[error("symbol `{0}` has no image under the translation")]
    MissingImage(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("obligation not discharged: `{axiom}` translates to `{translated}`, which is {verdict} in the target")]
pub struct ObligationFailure {
    pub axiom: String,
    pub translated: String,
    pub verdict: String,
}

/// Name-to-name map; a single namespace suffices because symbol names are
/// distinct across constants, functions and predicates.
pub type SymbolMap = BTreeMap<String, String>;

fn kind_label(k: SymbolKind) -> String {
    match k {
        SymbolKind::Constant => "constant".into(),
        SymbolKind::Function(n) => format!("function/{n}"),
        SymbolKind::Predicate(n) => format!("predicate/{n}"),
    }
}

/// A morphism of theories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryTranslation {
    pub name: String,
    pub source: Theory,
    pub target: Theory,
    pub symbol_map: SymbolMap,
}

impl TheoryTranslation {
    /// Builds a translation after checking totality and arity preservation.
    pub fn new(name: impl Into<String>, source: Theory, target: Theory, symbol_map: SymbolMap) -> Result<Self, TranslationError> {
        for (src, tgt) in &symbol_map {
            let sk = source.signature.kind_of(src).ok_or_else(|| TranslationError::UnknownSourceSymbol {
                line: 0,
                source_symbol: src.clone(),
            })?;
            let tk = target
                .signature
                .kind_of(tgt)
                .ok_or_else(|| TranslationError::UnknownTargetSymbol { line: 0, target: tgt.clone() })?;
            if sk != tk {
                return Err(TranslationError::ArityDrift {
                    line: 0,
                    source_symbol: src.clone(),
                    source_kind: kind_label(sk),
                    target: tgt.clone(),
                    target_kind: kind_label(tk),
                });
            }
        }
        if let Some(missing) = declared_names(&source.signature).find(|n| !symbol_map.contains_key(*n)) {
            return Err(TranslationError::Unmapped(missing.clone()));
        }
        Ok(TheoryTranslation {
            name: name.into(),
            source,
            target,
            symbol_map,
        })
    }

    pub fn identity(theory: &Theory) -> Self {
        let map = declared_names(&theory.signature).map(|n| (n.clone(), n.clone())).collect();
        TheoryTranslation {
            name: format!("id_{}", theory.name),
            source: theory.clone(),
            target: theory.clone(),
            symbol_map: map,
        }
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &TheoryTranslation) -> Result<TheoryTranslation, TranslationError> {
        let map = self
            .symbol_map
            .iter()
            .map(|(s, t)| {
                other
                    .symbol_map
                    .get(t)
                    .map(|u| (s.clone(), u.clone()))
                    .ok_or_else(|| TranslationError::MissingImage(t.clone()))
            })
            .collect::<Result<SymbolMap, _>>()?;
        Ok(TheoryTranslation {
            name: format!("{};{}", self.name, other.name),
            source: self.source.clone(),
            target: other.target.clone(),
            symbol_map: map,
        })
    }

    pub fn map_symbol<'a>(&'a self, name: &str) -> Result<&'a str, TranslationError> {
        self.symbol_map
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| TranslationError::MissingImage(name.to_string()))
    }

    pub fn map_term(&self, t: &Term) -> Result<Term, TranslationError> {
        Ok(match t {
            Term::Var(v) => Term::Var(v.clone()),
            Term::Const(c) => Term::Const(self.map_symbol(c)?.to_string()),
            Term::Apply(f, args) => Term::Apply(
                self.map_symbol(f)?.to_string(),
                args.iter().map(|a| self.map_term(a)).collect::<Result<_, _>>()?,
            ),
        })
    }

    pub fn map_formula(&self, phi: &Formula) -> Result<Formula, TranslationError> {
        Ok(match phi {
            Formula::Equal(l, r) => Formula::Equal(self.map_term(l)?, self.map_term(r)?),
            Formula::Pred(p, args) => Formula::Pred(
                self.map_symbol(p)?.to_string(),
                args.iter().map(|a| self.map_term(a)).collect::<Result<_, _>>()?,
            ),
            Formula::Not(b) => Formula::not(self.map_formula(b)?),
            Formula::And(l, r) => Formula::and(self.map_formula(l)?, self.map_formula(r)?),
            Formula::Or(l, r) => Formula::or(self.map_formula(l)?, self.map_formula(r)?),
            Formula::Implies(l, r) => Formula::implies(self.map_formula(l)?, self.map_formula(r)?),
            Formula::Forall(v, b) => Formula::Forall(v.clone(), Box::new(self.map_formula(b)?)),
            Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(self.map_formula(b)?)),
        })
    }

    /// The translated source axioms, each of which must be provable in the target.
    pub fn obligations(&self) -> Vec<Sentence> {
        self.source
            .axioms
            .iter()
            .map(|a| self.map_formula(a).expect("translation is total on source symbols"))
            .collect()
    }

    /// Obligations that are not literally target axioms (up to bound-variable names).
    pub fn obligation_residue(&self) -> Vec<Sentence> {
        self.obligations()
            .into_iter()
            .filter(|o| !self.target.axioms.iter().any(|a| a.alpha_eq(o)))
            .collect()
    }

    /// Proves each residual obligation in the target within `budget` tableau steps.
    pub fn discharge_obligations(&self, budget: usize) -> Result<(), ObligationFailure> {
        let residue = self.obligation_residue();
        for (axiom, translated) in self.source.axioms.iter().zip(self.obligations()) {
            if !residue.contains(&translated) {
                continue;
            }
            match prove(&self.target, &translated, budget) {
                ProofVerdict::Proved => {}
                other => {
                    return Err(ObligationFailure {
                        axiom: axiom.to_string(),
                        translated: translated.to_string(),
                        verdict: other.label().to_string(),
                    })
                }
            }
        }
        Ok(())
    }
}

fn declared_names(sig: &Signature) -> impl Iterator<Item = &String> {
    sig.constants()
        .iter()
        .chain(sig.functions().iter().map(|f| &f.name))
        .chain(sig.predicates().iter().map(|p| &p.name))
}

/// Parses `translation <Name> : <Src> -> <Tgt>` followed by `map <sym> -> <sym>` lines.
pub fn parse_translation(text: &str, source: &Theory, target: &Theory) -> Result<TheoryTranslation, TranslationError> {
    let mut name = None;
    let mut map = SymbolMap::new();
    for (line, lead, content) in content_lines(text) {
        let (kw, rest, rest_col) = split_keyword(content, lead);
        match kw {
            "translation" => {
                if name.is_some() {
                    return Err(ParseError::syntax(line, lead + 1, "duplicate `translation` header").into());
                }
                let (n, src, tgt) = parse_header(rest, line, rest_col)?;
                for (declared, loaded) in [(&src, &source.name), (&tgt, &target.name)] {
                    if declared != loaded {
                        return Err(TranslationError::TheoryNameMismatch {
                            line,
                            declared: declared.clone(),
                            loaded: loaded.clone(),
                        });
                    }
                }
                name = Some(n);
            }
            _ if name.is_none() => {
                return Err(ParseError::syntax(line, lead + 1, "document must start with `translation <Name> : <Src> -> <Tgt>`").into());
            }
            "map" => {
                let (from, to) = parse_map_line(rest, line, rest_col)?;
                let sk = source
                    .signature
                    .kind_of(&from)
                    .ok_or_else(|| TranslationError::UnknownSourceSymbol {
                        line,
                        source_symbol: from.clone(),
                    })?;
                let tk = target
                    .signature
                    .kind_of(&to)
                    .ok_or_else(|| TranslationError::UnknownTargetSymbol { line, target: to.clone() })?;
                if sk != tk {
                    return Err(TranslationError::ArityDrift {
                        line,
                        source_symbol: from,
                        source_kind: kind_label(sk),
                        target: to,
                        target_kind: kind_label(tk),
                    });
                }
                if map.insert(from.clone(), to).is_some() {
                    return Err(TranslationError::DuplicateMapping { line, source_symbol: from });
                }
            }
            other => return Err(ParseError::syntax(line, lead + 1, format!("unknown directive `{other}`")).into()),
        }
    }
    let name = name.ok_or_else(|| ParseError::syntax(1, 1, "missing `translation` header"))?;
    TheoryTranslation::new(name, source.clone(), target.clone(), map)
}

fn parse_header(rest: &str, line: usize, col: usize) -> Result<(String, String, String), ParseError> {
    let bad = || ParseError::syntax(line, col + 1, format!("expected `<Name> : <Src> -> <Tgt>`, found `{rest}`"));
    let (name, arrow_part) = rest.split_once(':').ok_or_else(bad)?;
    let (src, tgt) = arrow_part.split_once("->").ok_or_else(bad)?;
    let name = parse_identifier(name.trim(), line, col)?;
    let src = parse_identifier(src.trim(), line, col)?;
    let tgt = parse_identifier(tgt.trim(), line, col)?;
    Ok((name, src, tgt))
}

fn parse_map_line(rest: &str, line: usize, col: usize) -> Result<(String, String), ParseError> {
    let (from, to) = rest
        .split_once("->")
        .ok_or_else(|| ParseError::syntax(line, col + 1, format!("expected `<sym> -> <sym>`, found `{rest}`")))?;
    Ok((parse_identifier(from.trim(), line, col)?, parse_identifier(to.trim(), line, col)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn identity_has_empty_residue() {
        let m = fixtures::monoid();
        let id = parse_translation(fixtures::MONOID_IDENTITY_TRANSLATION, &m, &m).unwrap();
        assert!(id.obligation_residue().is_empty());
        assert_eq!(id.symbol_map, TheoryTranslation::identity(&m).symbol_map);
    }

    #[test]
    fn monoid_to_z2_is_valid() {
        let phi = fixtures::monoid_to_z2();
        assert_eq!(phi.symbol_map["a"], "a");
        assert!(phi.obligation_residue().is_empty());
        phi.discharge_obligations(200).unwrap();
    }

    #[test]
    fn omitted_symbol_is_unmapped() {
        let text = "translation Bad : Monoid -> Z2\nmap e -> e\nmap mul -> mul\n";
        let err = parse_translation(text, &fixtures::monoid(), &fixtures::z2()).unwrap_err();
        assert_eq!(err, TranslationError::Unmapped("a".into()));
        assert_eq!(err.to_string(), "unmapped symbol a");
    }

    #[test]
    fn arity_drift_and_unknown_target() {
        let text = "translation Bad : Monoid -> Z2\nmap e -> mul\n";
        assert!(matches!(
            parse_translation(text, &fixtures::monoid(), &fixtures::z2()),
            Err(TranslationError::ArityDrift { line: 2, .. })
        ));
        let text = "translation Bad : Monoid -> Z2\nmap e -> nope\n";
        assert!(matches!(
            parse_translation(text, &fixtures::monoid(), &fixtures::z2()),
            Err(TranslationError::UnknownTargetSymbol { line: 2, .. })
        ));
    }

    #[test]
    fn violated_obligation_names_the_axiom() {
        // Z2 -> Monoid: `~(a = e)` is not provable in Monoid.
        let text = "translation Back : Z2 -> Monoid\nmap e -> e\nmap a -> a\nmap mul -> mul\n";
        let back = parse_translation(text, &fixtures::z2(), &fixtures::monoid()).unwrap();
        let err = back.discharge_obligations(300).unwrap_err();
        assert!(err.axiom == "mul(a,a) = e" || err.axiom == "~(a = e)", "{err}");
    }

    #[test]
    fn composition_maps_through() {
        let phi = fixtures::monoid_to_z2();
        let id = TheoryTranslation::identity(&fixtures::z2());
        let comp = phi.then(&id).unwrap();
        assert_eq!(comp.symbol_map, phi.symbol_map);
        assert_eq!(comp.target.name, "Z2");
    }
}
