//! Concrete ASCII syntax.
//!
//! ```text
//! phi := "true" | "false" | PROP | NOM | "~" phi | "(" phi OP phi ")"
//!      | "<B>(" phi "," phi ")" | "[B](" phi "," phi ")"
//!      | "@" NOM phi | "E" phi | "A" phi | "C" phi
//! OP  := "&" | "|" | "->" | "<->"
//! ```
//!
//! Whitespace is insignificant. Parentheses around binary connectives may be
//! dropped; unary operators bind tightest, then `&`, `|`, `->` (right
//! associative) and `<->`. Redundant parentheses are accepted.

use super::{Formula, Sort};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Diamond,
    Box,
    LParen,
    RParen,
    Comma,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    At,
    True,
    False,
    E,
    A,
    C,
    Ident(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Diamond => "'<B>'".into(),
            Tok::Box => "'[B]'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Tilde => "'~'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Bar => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::DArrow => "'<->'".into(),
            Tok::At => "'@'".into(),
            Tok::True => "'true'".into(),
            Tok::False => "'false'".into(),
            Tok::E => "'E'".into(),
            Tok::A => "'A'".into(),
            Tok::C => "'C'".into(),
            Tok::Ident(s) => format!("identifier '{s}'"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let (tok, len) = if rest.starts_with("<B>") {
            (Tok::Diamond, 3)
        } else if rest.starts_with("[B]") {
            (Tok::Box, 3)
        } else if rest.starts_with("<->") {
            (Tok::DArrow, 3)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else {
            match c {
                b'(' => (Tok::LParen, 1),
                b')' => (Tok::RParen, 1),
                b',' => (Tok::Comma, 1),
                b'~' => (Tok::Tilde, 1),
                b'&' => (Tok::Amp, 1),
                b'|' => (Tok::Bar, 1),
                b'@' => (Tok::At, 1),
                b'E' => (Tok::E, 1),
                b'A' => (Tok::A, 1),
                b'C' => (Tok::C, 1),
                b'a'..=b'z' => {
                    let len = rest
                        .bytes()
                        .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                        .count();
                    let word = &rest[..len];
                    let tok = match word {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ => Tok::Ident(word.to_string()),
                    };
                    (tok, len)
                }
                _ => {
                    let ch = rest.chars().next().unwrap_or('?');
                    return Err(ParseError::new(i, format!("unexpected character '{ch}'")));
                }
            }
        };
        out.push((tok, i));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::new(self.offset(), format!("expected {wanted}, found {}", t.describe())),
            None => ParseError::new(self.end, format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn nominal(&mut self) -> Result<String, ParseError> {
        let offset = self.offset();
        match self.peek() {
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                match Sort::of(&name) {
                    Some(Sort::Nominal) => {
                        self.pos += 1;
                        Ok(name)
                    }
                    _ => Err(ParseError::new(
                        offset,
                        format!("'{name}' is not a nominal (nominals start with i, j, k or l)"),
                    )),
                }
            }
            _ => Err(self.unexpected("a nominal")),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.peek() == Some(&Tok::DArrow) {
            self.pos += 1;
            let rhs = self.implication()?;
            if self.peek() == Some(&Tok::DArrow) {
                return Err(ParseError::new(self.offset(), "chained '<->' needs parentheses"));
            }
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
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
        let offset = self.offset();
        let tok = match self.bump() {
            Some(t) => t,
            None => return Err(ParseError::new(self.end, "expected a formula, found end of input")),
        };
        match tok {
            Tok::True => Ok(Formula::Top),
            Tok::False => Ok(Formula::Bottom),
            Tok::Ident(name) => match Sort::of(&name) {
                Some(Sort::Prop) => Ok(Formula::Prop(name)),
                Some(Sort::Nominal) => Ok(Formula::Nominal(name)),
                None => Err(ParseError::new(
                    offset,
                    format!("'{name}' is neither a propositional variable (p..t) nor a nominal (i..l)"),
                )),
            },
            Tok::Tilde => Ok(Formula::not(self.unary()?)),
            Tok::E => Ok(Formula::exists(self.unary()?)),
            Tok::A => Ok(Formula::all(self.unary()?)),
            Tok::C => Ok(Formula::conv(self.unary()?)),
            Tok::At => {
                let name = self.nominal()?;
                Ok(Formula::at(&name, self.unary()?))
            }
            Tok::Diamond | Tok::Box => {
                self.expect(Tok::LParen)?;
                let a = self.iff()?;
                self.expect(Tok::Comma)?;
                let b = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(if tok == Tok::Diamond {
                    Formula::diamond(a, b)
                } else {
                    Formula::boxb(a, b)
                })
            }
            Tok::LParen => {
                let inner = self.iff()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => {
                self.pos -= 1;
                Err(ParseError::new(
                    offset,
                    format!("expected a formula, found {}", other.describe()),
                ))
            }
        }
    }
}

/// Parses a formula of the hybrid language.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = parser.iff()?;
    if parser.peek().is_some() {
        return Err(parser.unexpected("end of input"));
    }
    Ok(f)
}
