//! Line-oriented theory documents and the formula concrete syntax.
//!
//! ```text
//! theory <Name>
//! const <name>
//! fn <name>/<arity>
//! pred <name>/<arity>
//! axiom <formula>
//! ```
//!
//! Formulas use `forall x. ...`, `exists x. ...`, the connectives `~ & | ->`
//! (tightest to loosest, `->` associating to the right), `=` and `f(t1,t2)`.
//! Quantifier bodies extend as far to the right as possible. `#` starts a
//! comment that runs to the end of the line.

use std::fmt;

use thiserror::Error;

use crate::syntax::{Formula, Signature, SignatureError, SymbolKind, Term, Theory};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UndeclaredSymbol(String),
    ArityMismatch { symbol: String, expected: usize, found: usize },
    Signature(SignatureError),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => f.write_str(m),
            ParseErrorKind::UndeclaredSymbol(s) => write!(f, "undeclared symbol `{s}`"),
            ParseErrorKind::ArityMismatch {
                symbol,
                expected,
                found,
            } => write!(f, "`{symbol}` expects {expected} argument(s), found {found}"),
            ParseErrorKind::Signature(e) => write!(f, "{e}"),
        }
    }
}

/// A diagnostic with 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }

    pub(crate) fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Self::new(line, column, ParseErrorKind::Syntax(msg.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    Tilde,
    Amp,
    Bar,
    Arrow,
    Slash,
    Number(usize),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Number(n) => write!(f, "`{n}`"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Tokens with their 1-based columns.
fn tokenize(text: &str, line: usize, col_offset: usize) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col_offset + i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '=' => Tok::Eq,
            '~' => Tok::Tilde,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '/' => Tok::Slash,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..=i].iter().collect();
                let n = s
                    .parse()
                    .map_err(|_| ParseError::syntax(line, col, format!("number `{s}` out of range")))?;
                Tok::Number(n)
            }
            c if is_ident_start(c) => {
                let start = i;
                while i + 1 < chars.len() && is_ident_char(chars[i + 1]) {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => return Err(ParseError::syntax(line, col, format!("unexpected character `{other}`"))),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct FormulaParser<'a> {
    sig: &'a Signature,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    end_col: usize,
    scope: Vec<String>,
}

impl<'a> FormulaParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::syntax(self.line, self.col(), msg)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(format!("expected {tok}, found {t}"))),
            None => Err(self.err(format!("expected {tok}, found end of line"))),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => Err(self.err(format!("expected identifier, found {t}"))),
            None => Err(self.err("expected identifier, found end of line")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        self.implication()
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ident(k)) if k == "forall" || k == "exists" => {
                let is_forall = k == "forall";
                self.pos += 1;
                let mut vars = vec![self.ident()?];
                while let Some(Tok::Ident(_)) = self.peek() {
                    vars.push(self.ident()?);
                }
                self.expect(Tok::Dot)?;
                let depth = self.scope.len();
                self.scope.extend(vars.iter().cloned());
                let body = self.formula();
                self.scope.truncate(depth);
                let mut body = body?;
                for v in vars.into_iter().rev() {
                    body = if is_forall {
                        Formula::Forall(v, Box::new(body))
                    } else {
                        Formula::Exists(v, Box::new(body))
                    };
                }
                Ok(body)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let col = self.col();
        if let Some(Tok::Ident(name)) = self.peek() {
            if !self.scope.contains(name) {
                if let Some(SymbolKind::Predicate(arity)) = self.sig.kind_of(name) {
                    let name = name.clone();
                    self.pos += 1;
                    let args = self.arguments()?;
                    if args.len() != arity {
                        return Err(ParseError::new(
                            self.line,
                            col,
                            ParseErrorKind::ArityMismatch {
                                symbol: name,
                                expected: arity,
                                found: args.len(),
                            },
                        ));
                    }
                    return Ok(Formula::Pred(name, args));
                }
            }
        }
        let lhs = self.term()?;
        self.expect(Tok::Eq)?;
        let rhs = self.term()?;
        Ok(Formula::Equal(lhs, rhs))
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let col = self.col();
        let name = self.ident()?;
        let has_args = self.peek() == Some(&Tok::LParen);
        if self.scope.contains(&name) {
            if has_args {
                return Err(ParseError::syntax(self.line, col, format!("variable `{name}` applied to arguments")));
            }
            return Ok(Term::Var(name));
        }
        match self.sig.kind_of(&name) {
            Some(SymbolKind::Constant) if !has_args => Ok(Term::Const(name)),
            Some(SymbolKind::Constant) => Err(ParseError::syntax(
                self.line,
                col,
                format!("constant `{name}` applied to arguments"),
            )),
            Some(SymbolKind::Function(arity)) => {
                let found = if has_args { self.arguments()? } else { Vec::new() };
                if found.len() != arity {
                    return Err(ParseError::new(
                        self.line,
                        col,
                        ParseErrorKind::ArityMismatch {
                            symbol: name,
                            expected: arity,
                            found: found.len(),
                        },
                    ));
                }
                Ok(Term::Apply(name, found))
            }
            Some(SymbolKind::Predicate(_)) => Err(ParseError::syntax(
                self.line,
                col,
                format!("predicate `{name}` used as a term"),
            )),
            None => Err(ParseError::new(self.line, col, ParseErrorKind::UndeclaredSymbol(name))),
        }
    }
}

/// Parses a single sentence over `sig`. Positions are reported on line 1.
pub fn parse_formula(sig: &Signature, text: &str) -> Result<Formula, ParseError> {
    parse_formula_at(sig, text, 1, 0)
}

pub(crate) fn parse_formula_at(sig: &Signature, text: &str, line: usize, col_offset: usize) -> Result<Formula, ParseError> {
    let toks = tokenize(text, line, col_offset)?;
    let mut p = FormulaParser {
        sig,
        toks,
        pos: 0,
        line,
        end_col: col_offset + text.chars().count() + 1,
        scope: Vec::new(),
    };
    let f = p.formula()?;
    if let Some(t) = p.peek() {
        return Err(p.err(format!("unexpected {t} after formula")));
    }
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(ParseError::new(line, col_offset + 1, ParseErrorKind::UndeclaredSymbol(v)));
    }
    Ok(f)
}

/// Parses a ground or open term in the scope of the given variables.
pub fn parse_term(sig: &Signature, text: &str) -> Result<Term, ParseError> {
    let toks = tokenize(text, 1, 0)?;
    let mut p = FormulaParser {
        sig,
        toks,
        pos: 0,
        line: 1,
        end_col: text.chars().count() + 1,
        scope: Vec::new(),
    };
    let t = p.term()?;
    if let Some(t) = p.peek() {
        return Err(p.err(format!("unexpected {t} after term")));
    }
    Ok(t)
}

/// One non-blank line with comments stripped: (line number, column of first char, text).
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let no_comment = raw.split('#').next().unwrap_or("");
        let trimmed = no_comment.trim_start();
        let lead = no_comment.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        (!trimmed.is_empty()).then_some((i + 1, lead, trimmed))
    })
}

/// Splits `keyword rest` returning the keyword and the rest with its column offset.
pub(crate) fn split_keyword(text: &str, lead: usize) -> (&str, &str, usize) {
    match text.find(char::is_whitespace) {
        Some(i) => {
            let rest = &text[i..];
            let trimmed = rest.trim_start();
            (&text[..i], trimmed, lead + i + (rest.len() - trimmed.len()))
        }
        None => (text, "", lead + text.len()),
    }
}

pub(crate) fn parse_identifier(text: &str, line: usize, col: usize) -> Result<String, ParseError> {
    let mut chars = text.chars();
    match chars.next() {
        Some(c) if is_ident_start(c) && chars.all(is_ident_char) => Ok(text.to_string()),
        _ => Err(ParseError::syntax(line, col + 1, format!("expected identifier, found `{text}`"))),
    }
}

fn parse_symbol_decl(text: &str, line: usize, col: usize) -> Result<(String, usize), ParseError> {
    let toks = tokenize(text, line, col)?;
    match toks.as_slice() {
        [(Tok::Ident(name), _), (Tok::Slash, _), (Tok::Number(n), _)] => Ok((name.clone(), *n)),
        _ => Err(ParseError::syntax(line, col + 1, format!("expected `<name>/<arity>`, found `{text}`"))),
    }
}

/// Parses a theory document.
pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    let mut name: Option<String> = None;
    let mut sig = Signature::new();
    let mut axiom_lines = Vec::new();
    let mut last_line = 1;

    // Declarations are collected first so axioms may precede the symbols they use.
    for (line, lead, content) in content_lines(text) {
        last_line = line;
        let (kw, rest, rest_col) = split_keyword(content, lead);
        let sig_err = |e: SignatureError| ParseError::new(line, rest_col + 1, ParseErrorKind::Signature(e));
        match kw {
            "theory" => {
                if name.is_some() {
                    return Err(ParseError::syntax(line, lead + 1, "duplicate `theory` header"));
                }
                name = Some(parse_identifier(rest, line, rest_col)?);
            }
            _ if name.is_none() => {
                return Err(ParseError::syntax(line, lead + 1, "document must start with `theory <Name>`"));
            }
            "const" => sig.add_constant(parse_identifier(rest, line, rest_col)?).map_err(sig_err)?,
            "fn" => {
                let (n, arity) = parse_symbol_decl(rest, line, rest_col)?;
                sig.add_function(n, arity).map_err(sig_err)?;
            }
            "pred" => {
                let (n, arity) = parse_symbol_decl(rest, line, rest_col)?;
                sig.add_predicate(n, arity).map_err(sig_err)?;
            }
            "axiom" => axiom_lines.push((line, rest_col, rest)),
            other => return Err(ParseError::syntax(line, lead + 1, format!("unknown directive `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| ParseError::syntax(last_line, 1, "missing `theory <Name>` header"))?;
    let axioms = axiom_lines
        .into_iter()
        .map(|(line, col, text)| parse_formula_at(&sig, text, line, col))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Theory {
        name,
        signature: sig,
        axioms,
    })
}

/// Renders a theory in the document format accepted by [`parse_theory`].
pub fn format_theory(t: &Theory) -> String {
    let mut out = format!("theory {}\n", t.name);
    for c in t.signature.constants() {
        out.push_str(&format!("const {c}\n"));
    }
    for f in t.signature.functions() {
        out.push_str(&format!("fn {}/{}\n", f.name, f.arity));
    }
    for p in t.signature.predicates() {
        out.push_str(&format!("pred {}/{}\n", p.name, p.arity));
    }
    for a in &t.axioms {
        out.push_str(&format!("axiom {a}\n"));
    }
    out
}
