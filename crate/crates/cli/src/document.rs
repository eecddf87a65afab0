//! The line-oriented grammar document format.
//!
//! ```text
//! # Catalan numbers
//! semiring Q
//! terminals a
//! variables X
//! start X
//! rule X -> a X X : 1
//! rule X -> a : 1
//! ```
//!
//! Directives may appear in any order; each of `semiring`, `terminals`,
//! `variables` and `start` exactly once. `eps` stands for the empty
//! right-hand side. Text after `#` is ignored.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use parikh_core::grammar::{Grammar, GrammarError, Rule, Symbol};
use parikh_core::{Natural, Rational, Semiring, SemiringKind, Tropical};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown directive `{word}`")]
    UnknownDirective { line: usize, word: String },
    #[error("line {line}: `{directive}` already given on line {first}")]
    RepeatedDirective {
        line: usize,
        directive: &'static str,
        first: usize,
    },
    #[error("missing `{0}` directive")]
    MissingDirective(&'static str),
    #[error("line {line}: unknown semiring `{name}` (expected Q, N or tropical)")]
    UnknownSemiring { line: usize, name: String },
    #[error("line {line}: `{name}` is not a valid symbol name")]
    InvalidName { line: usize, name: String },
    #[error("line {line}: `{name}` is declared more than once")]
    DuplicateSymbol { line: usize, name: String },
    #[error("line {line}: `{name}` is not a declared variable")]
    UnknownVariable { line: usize, name: String },
    #[error("line {line}: `{name}` is not a declared terminal or variable")]
    UndeclaredSymbol { line: usize, name: String },
    #[error("line {line}: `{text}` is not a weight in {semiring}")]
    MalformedWeight {
        line: usize,
        text: String,
        semiring: SemiringKind,
    },
    #[error("line {line}: same rule as line {first}")]
    DuplicateRule { line: usize, first: usize },
    #[error("the document has no rules")]
    MissingRules,
}

/// Weight syntax per semiring.
pub trait Weight: Semiring {
    fn parse_weight(text: &str) -> Option<Self>;
}

impl Weight for Rational {
    fn parse_weight(text: &str) -> Option<Self> {
        let ok = text
            .chars()
            .enumerate()
            .all(|(i, c)| c.is_ascii_digit() || c == '/' || (i == 0 && c == '-'));
        if !ok {
            return None;
        }
        Rational::from_str(text).ok()
    }
}

impl Weight for Natural {
    fn parse_weight(text: &str) -> Option<Self> {
        if text.is_empty() || !text.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        text.parse().ok().map(Natural)
    }
}

impl Weight for Tropical {
    fn parse_weight(text: &str) -> Option<Self> {
        if text == "inf" {
            return Some(Tropical::Infinity);
        }
        if text.is_empty() || !text.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        text.parse().ok().map(Tropical::Finite)
    }
}

/// A grammar over whichever semiring its document declares.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyGrammar {
    Rationals(Grammar<Rational>),
    Naturals(Grammar<Natural>),
    Tropical(Grammar<Tropical>),
}

impl AnyGrammar {
    pub fn kind(&self) -> SemiringKind {
        match self {
            AnyGrammar::Rationals(_) => SemiringKind::Rationals,
            AnyGrammar::Naturals(_) => SemiringKind::Naturals,
            AnyGrammar::Tropical(_) => SemiringKind::Tropical,
        }
    }

    pub fn terminals(&self) -> &[String] {
        match self {
            AnyGrammar::Rationals(g) => g.terminals(),
            AnyGrammar::Naturals(g) => g.terminals(),
            AnyGrammar::Tropical(g) => g.terminals(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            AnyGrammar::Rationals(g) => render(g),
            AnyGrammar::Naturals(g) => render(g),
            AnyGrammar::Tropical(g) => render(g),
        }
    }
}

impl From<Grammar<Rational>> for AnyGrammar {
    fn from(g: Grammar<Rational>) -> Self {
        AnyGrammar::Rationals(g)
    }
}

impl From<Grammar<Natural>> for AnyGrammar {
    fn from(g: Grammar<Natural>) -> Self {
        AnyGrammar::Naturals(g)
    }
}

impl From<Grammar<Tropical>> for AnyGrammar {
    fn from(g: Grammar<Tropical>) -> Self {
        AnyGrammar::Tropical(g)
    }
}

/// `[A-Za-z<][A-Za-z0-9_.|<>]*`, so that annotated and state names produced
/// by regularization read back.
fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '<')
        && chars.all(|c| c.is_ascii_alphanumeric() || "_.|<>".contains(c))
        && name != "eps"
}

struct RawRule<'a> {
    line: usize,
    lhs: &'a str,
    rhs: Vec<&'a str>,
    weight: &'a str,
}

#[derive(Default)]
struct Raw<'a> {
    semiring: Option<(usize, SemiringKind)>,
    terminals: Option<(usize, Vec<&'a str>)>,
    variables: Option<(usize, Vec<&'a str>)>,
    start: Option<(usize, &'a str)>,
    rules: Vec<RawRule<'a>>,
}

fn set_once<T>(slot: &mut Option<(usize, T)>, line: usize, directive: &'static str, value: T) -> Result<(), DocumentError> {
    if let Some((first, _)) = slot {
        return Err(DocumentError::RepeatedDirective {
            line,
            directive,
            first: *first,
        });
    }
    *slot = Some((line, value));
    Ok(())
}

fn scan(text: &str) -> Result<Raw<'_>, DocumentError> {
    let mut raw = Raw::default();
    for (i, full) in text.lines().enumerate() {
        let line = i + 1;
        let content = full.split('#').next().unwrap_or("").trim();
        let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match word {
            "" => {}
            "semiring" => {
                let kind = match rest {
                    "Q" => SemiringKind::Rationals,
                    "N" => SemiringKind::Naturals,
                    "tropical" => SemiringKind::Tropical,
                    other => {
                        return Err(DocumentError::UnknownSemiring {
                            line,
                            name: other.to_string(),
                        })
                    }
                };
                set_once(&mut raw.semiring, line, "semiring", kind)?;
            }
            "terminals" => set_once(&mut raw.terminals, line, "terminals", rest.split_whitespace().collect())?,
            "variables" => set_once(&mut raw.variables, line, "variables", rest.split_whitespace().collect())?,
            "start" => {
                let mut names = rest.split_whitespace();
                let (Some(name), None) = (names.next(), names.next()) else {
                    return Err(DocumentError::Syntax {
                        line,
                        message: "`start` takes exactly one variable".into(),
                    });
                };
                set_once(&mut raw.start, line, "start", name)?;
            }
            "rule" => raw.rules.push(scan_rule(line, rest)?),
            other => {
                return Err(DocumentError::UnknownDirective {
                    line,
                    word: other.to_string(),
                })
            }
        }
    }
    Ok(raw)
}

fn scan_rule(line: usize, rest: &str) -> Result<RawRule<'_>, DocumentError> {
    let syntax = |message: &str| DocumentError::Syntax {
        line,
        message: message.to_string(),
    };
    let (head, weight) = rest
        .rsplit_once(':')
        .ok_or_else(|| syntax("expected `rule <variable> -> <symbols> : <weight>`"))?;
    let (lhs, rhs) = head
        .split_once("->")
        .ok_or_else(|| syntax("expected `->` after the left-hand side"))?;
    let lhs = lhs.trim();
    if lhs.is_empty() || lhs.contains(char::is_whitespace) {
        return Err(syntax("the left-hand side must be a single variable"));
    }
    let mut rhs: Vec<&str> = rhs.split_whitespace().collect();
    match rhs.iter().position(|&s| s == "eps") {
        Some(_) if rhs.len() == 1 => rhs.clear(),
        Some(_) => return Err(syntax("`eps` must stand alone")),
        None if rhs.is_empty() => return Err(syntax("write `eps` for an empty right-hand side")),
        None => {}
    }
    let weight = weight.trim();
    if weight.is_empty() {
        return Err(syntax("missing weight after `:`"));
    }
    Ok(RawRule { line, lhs, rhs, weight })
}

fn declare<'a>(
    names: &[&'a str],
    line: usize,
    table: &mut HashMap<&'a str, (usize, bool)>,
    is_variable: bool,
) -> Result<Vec<String>, DocumentError> {
    let mut out = Vec::new();
    for (i, &name) in names.iter().enumerate() {
        if !valid_name(name) {
            return Err(DocumentError::InvalidName {
                line,
                name: name.to_string(),
            });
        }
        if table.insert(name, (i, is_variable)).is_some() {
            return Err(DocumentError::DuplicateSymbol {
                line,
                name: name.to_string(),
            });
        }
        out.push(name.to_string());
    }
    Ok(out)
}

fn build<S: Weight>(raw: &Raw<'_>) -> Result<Grammar<S>, DocumentError> {
    let (tline, terminals) = raw.terminals.as_ref().ok_or(DocumentError::MissingDirective("terminals"))?;
    let (vline, variables) = raw.variables.as_ref().ok_or(DocumentError::MissingDirective("variables"))?;
    let &(sline, start) = raw.start.as_ref().ok_or(DocumentError::MissingDirective("start"))?;
    let mut table = HashMap::new();
    let terminal_names = declare(terminals, *tline, &mut table, false)?;
    let variable_names = declare(variables, *vline, &mut table, true)?;
    if variable_names.is_empty() {
        return Err(DocumentError::Syntax {
            line: *vline,
            message: "at least one variable is required".into(),
        });
    }
    let variable = |line: usize, name: &str| match table.get(name) {
        Some(&(i, true)) => Ok(i),
        _ => Err(DocumentError::UnknownVariable {
            line,
            name: name.to_string(),
        }),
    };
    let start = variable(sline, start)?;
    if raw.rules.is_empty() {
        return Err(DocumentError::MissingRules);
    }
    let mut seen: HashMap<(usize, Vec<Symbol>), usize> = HashMap::new();
    let mut rules = Vec::new();
    for r in &raw.rules {
        let lhs = variable(r.line, r.lhs)?;
        let rhs = r
            .rhs
            .iter()
            .map(|&name| match table.get(name) {
                Some(&(i, true)) => Ok(Symbol::Variable(i)),
                Some(&(i, false)) => Ok(Symbol::Terminal(i)),
                None => Err(DocumentError::UndeclaredSymbol {
                    line: r.line,
                    name: name.to_string(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let weight = S::parse_weight(r.weight).ok_or_else(|| DocumentError::MalformedWeight {
            line: r.line,
            text: r.weight.to_string(),
            semiring: S::KIND,
        })?;
        if let Some(&first) = seen.get(&(lhs, rhs.clone())) {
            return Err(DocumentError::DuplicateRule { line: r.line, first });
        }
        seen.insert((lhs, rhs.clone()), r.line);
        rules.push(Rule { lhs, rhs, weight });
    }
    Grammar::new(terminal_names, variable_names, start, rules).map_err(|e| match e {
        GrammarError::DuplicateSymbol(name) => DocumentError::DuplicateSymbol { line: *vline, name },
        other => DocumentError::Syntax {
            line: 0,
            message: other.to_string(),
        },
    })
}

pub fn parse_document(text: &str) -> Result<AnyGrammar, DocumentError> {
    let raw = scan(text)?;
    let (_, kind) = raw.semiring.ok_or(DocumentError::MissingDirective("semiring"))?;
    Ok(match kind {
        SemiringKind::Rationals => AnyGrammar::Rationals(build(&raw)?),
        SemiringKind::Naturals => AnyGrammar::Naturals(build(&raw)?),
        SemiringKind::Tropical => AnyGrammar::Tropical(build(&raw)?),
    })
}

/// Parses a document that must be declared over `S`.
pub fn parse_as<S: Weight>(text: &str) -> Result<Grammar<S>, DocumentError> {
    let raw = scan(text)?;
    let (line, kind) = raw.semiring.ok_or(DocumentError::MissingDirective("semiring"))?;
    if kind != S::KIND {
        return Err(DocumentError::Syntax {
            line,
            message: format!("expected semiring {}, found {kind}", S::KIND),
        });
    }
    build(&raw)
}

/// The canonical document of `g`: declarations in order, one rule per line.
pub fn render<S: Semiring>(g: &Grammar<S>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "semiring {}", S::KIND);
    let _ = writeln!(out, "terminals {}", g.terminals().join(" "));
    let _ = writeln!(out, "variables {}", g.variables().join(" "));
    let _ = writeln!(out, "start {}", g.variables()[g.start()]);
    for r in g.rules() {
        let rhs: Vec<&str> = r.rhs.iter().map(|&s| g.symbol_name(s)).collect();
        let rhs = if rhs.is_empty() { "eps".to_string() } else { rhs.join(" ") };
        let _ = writeln!(out, "rule {} -> {} : {}", g.variables()[r.lhs], rhs, r.weight);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CATALAN: &str = "semiring Q\nterminals a\nvariables X\nstart X\nrule X -> a X X : 1\nrule X -> a : 1\n";

    #[test]
    fn catalan_round_trip() {
        let g = parse_document(CATALAN).unwrap();
        assert_eq!(g.kind(), SemiringKind::Rationals);
        assert_eq!(g.render(), CATALAN);
    }

    #[test]
    fn weights_per_semiring() {
        assert_eq!(Rational::parse_weight("-1/2"), Some(Rational::new((-1).into(), 2.into())));
        assert_eq!(Rational::parse_weight("1.5"), None);
        assert_eq!(Natural::parse_weight("-1"), None);
        assert_eq!(Natural::parse_weight("12"), Some(Natural::new(12)));
        assert_eq!(Tropical::parse_weight("inf"), Some(Tropical::Infinity));
        assert_eq!(Tropical::parse_weight("1/2"), None);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\nsemiring N   # naturals\nterminals a\nvariables S\nstart S\nrule S -> eps : 2\n";
        let AnyGrammar::Naturals(g) = parse_document(text).unwrap() else {
            panic!("wrong semiring")
        };
        assert!(g.rules()[0].rhs.is_empty());
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let bad = CATALAN.replace("a X X", "a X Y");
        assert_eq!(
            parse_document(&bad),
            Err(DocumentError::UndeclaredSymbol { line: 5, name: "Y".into() })
        );
        let bad = CATALAN.replace(": 1\nrule", ": x\nrule");
        assert!(matches!(parse_document(&bad), Err(DocumentError::MalformedWeight { line: 5, .. })));
        let bad = format!("{CATALAN}rule X -> a : 3\n");
        assert_eq!(parse_document(&bad), Err(DocumentError::DuplicateRule { line: 7, first: 6 }));
        let bad = CATALAN.replace("semiring Q", "semiring Z");
        assert!(matches!(parse_document(&bad), Err(DocumentError::UnknownSemiring { line: 1, .. })));
    }

    #[test]
    fn missing_rules() {
        let text = "semiring Q\nterminals a\nvariables X\nstart X\n";
        assert_eq!(parse_document(text), Err(DocumentError::MissingRules));
    }

    #[test]
    fn reserved_and_invalid_names() {
        let text = CATALAN.replace("variables X", "variables eps");
        assert!(matches!(parse_document(&text), Err(DocumentError::InvalidName { .. })));
        let text = CATALAN.replace("terminals a", "terminals a X");
        assert!(matches!(parse_document(&text), Err(DocumentError::DuplicateSymbol { .. })));
    }

    #[test]
    fn state_names_read_back() {
        assert!(valid_name("<X1.1.m|X2.0.e>"));
        assert!(valid_name("X.0.e"));
        assert!(!valid_name("1X"));
    }
}
