//! Standard translation into first-order logic over a ternary predicate `B`.
//!
//! Nominals become first-order variables (`i` ↦ `x_i`) so that frame
//! correspondents quantify over them; propositional variables become unary
//! predicates (`p` ↦ `P_p`). The text form is self-contained and re-parsed by
//! [`parse_fo`].

use std::fmt;

use thiserror::Error;

use super::Formula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoFormula {
    True,
    False,
    Eq(String, String),
    /// `B(x, y, z)`: `y` lies between `x` and `z`.
    Between(String, String, String),
    /// `P_name(var)`
    Pred(String, String),
    Not(Box<FoFormula>),
    And(Vec<FoFormula>),
    Or(Vec<FoFormula>),
    Implies(Box<FoFormula>, Box<FoFormula>),
    Iff(Box<FoFormula>, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
    Forall(String, Box<FoFormula>),
}

impl FoFormula {
    fn is_parenthesized(&self) -> bool {
        matches!(
            self,
            FoFormula::And(_) | FoFormula::Or(_) | FoFormula::Implies(..) | FoFormula::Iff(..)
        )
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, parts: &[FoFormula], op: &str) -> fmt::Result {
    write!(f, "(")?;
    for (n, part) in parts.iter().enumerate() {
        if n > 0 {
            write!(f, " {op} ")?;
        }
        write!(f, "{part}")?;
    }
    write!(f, ")")
}

fn write_body(f: &mut fmt::Formatter<'_>, body: &FoFormula) -> fmt::Result {
    match body {
        FoFormula::Exists(..) | FoFormula::Forall(..) => write!(f, "{body}"),
        b if b.is_parenthesized() => write!(f, "{b}"),
        b => write!(f, "({b})"),
    }
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoFormula::True => write!(f, "true"),
            FoFormula::False => write!(f, "false"),
            FoFormula::Eq(a, b) => write!(f, "{a} = {b}"),
            FoFormula::Between(a, b, c) => write!(f, "B({a},{b},{c})"),
            FoFormula::Pred(p, v) => write!(f, "P_{p}({v})"),
            FoFormula::Not(g) => {
                if matches!(**g, FoFormula::Eq(..)) {
                    write!(f, "¬({g})")
                } else {
                    write!(f, "¬{g}")
                }
            }
            FoFormula::And(parts) => write_joined(f, parts, "∧"),
            FoFormula::Or(parts) => write_joined(f, parts, "∨"),
            FoFormula::Implies(a, b) => write!(f, "({a} → {b})"),
            FoFormula::Iff(a, b) => write!(f, "({a} ↔ {b})"),
            FoFormula::Exists(v, body) => {
                write!(f, "∃{v}")?;
                write_body(f, body)
            }
            FoFormula::Forall(v, body) => {
                write!(f, "∀{v}")?;
                write_body(f, body)
            }
        }
    }
}

struct Fresh<'a> {
    next: usize,
    avoid: &'a str,
}

impl Fresh<'_> {
    fn pair(&mut self) -> (String, String) {
        loop {
            let (y, z) = if self.next == 0 {
                ("y".to_string(), "z".to_string())
            } else {
                (format!("y{}", self.next), format!("z{}", self.next))
            };
            self.next += 1;
            if y != self.avoid && z != self.avoid {
                return (y, z);
            }
        }
    }
}

fn nominal_var(i: &str) -> String {
    format!("x_{i}")
}

fn st(f: &Formula, x: &str, fresh: &mut Fresh) -> FoFormula {
    use Formula::*;
    match f {
        Top => FoFormula::True,
        Bottom => FoFormula::False,
        Prop(p) => FoFormula::Pred(p.clone(), x.to_string()),
        Nominal(i) => FoFormula::Eq(x.to_string(), nominal_var(i)),
        Not(g) => FoFormula::Not(Box::new(st(g, x, fresh))),
        And(a, b) => FoFormula::And(vec![st(a, x, fresh), st(b, x, fresh)]),
        Or(a, b) => FoFormula::Or(vec![st(a, x, fresh), st(b, x, fresh)]),
        Implies(a, b) => FoFormula::Implies(Box::new(st(a, x, fresh)), Box::new(st(b, x, fresh))),
        Iff(a, b) => FoFormula::Iff(Box::new(st(a, x, fresh)), Box::new(st(b, x, fresh))),
        DiamondB(a, b) => {
            let (y, z) = fresh.pair();
            let body = FoFormula::And(vec![
                FoFormula::Between(y.clone(), x.to_string(), z.clone()),
                st(a, &y, fresh),
                st(b, &z, fresh),
            ]);
            FoFormula::Exists(y, Box::new(FoFormula::Exists(z, Box::new(body))))
        }
        Conv(a) => st(&Formula::diamond((**a).clone(), (**a).clone()), x, fresh),
        BoxB(a, b) => {
            let (y, z) = fresh.pair();
            let body = FoFormula::Implies(
                Box::new(FoFormula::Between(y.clone(), x.to_string(), z.clone())),
                Box::new(FoFormula::Or(vec![st(a, &y, fresh), st(b, &z, fresh)])),
            );
            FoFormula::Forall(y, Box::new(FoFormula::Forall(z, Box::new(body))))
        }
        At(i, g) => st(g, &nominal_var(i), fresh),
        E(g) => {
            let (y, _) = fresh.pair();
            let body = st(g, &y, fresh);
            FoFormula::Exists(y, Box::new(body))
        }
        A(g) => {
            let (y, _) = fresh.pair();
            let body = st(g, &y, fresh);
            FoFormula::Forall(y, Box::new(body))
        }
    }
}

/// `ST_x(f)` with `x` given by `free_var`.
pub fn standard_translation(f: &Formula, free_var: &str) -> FoFormula {
    let mut fresh = Fresh {
        next: 0,
        avoid: free_var,
    };
    st(f, free_var, &mut fresh)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("first-order syntax error at offset {offset}: {message}")]
pub struct FoParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum FoTok {
    Exists,
    Forall,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Comma,
    Equals,
    Word(String),
}

fn fo_lex(text: &str) -> Result<Vec<(FoTok, usize)>, FoParseError> {
    let mut out = Vec::new();
    let mut iter = text.char_indices().peekable();
    while let Some(&(at, c)) = iter.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                iter.next();
                continue;
            }
            '∃' => FoTok::Exists,
            '∀' => FoTok::Forall,
            '¬' => FoTok::Not,
            '∧' => FoTok::And,
            '∨' => FoTok::Or,
            '→' => FoTok::Implies,
            '↔' => FoTok::Iff,
            '(' => FoTok::LParen,
            ')' => FoTok::RParen,
            ',' => FoTok::Comma,
            '=' => FoTok::Equals,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&(_, c)) = iter.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        iter.next();
                    } else {
                        break;
                    }
                }
                out.push((FoTok::Word(word), at));
                continue;
            }
            other => {
                return Err(FoParseError {
                    offset: at,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        iter.next();
        out.push((tok, at));
    }
    Ok(out)
}

struct FoParser {
    toks: Vec<(FoTok, usize)>,
    pos: usize,
    end: usize,
}

impl FoParser {
    fn err(&self, message: impl Into<String>) -> FoParseError {
        FoParseError {
            offset: self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&FoTok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn expect(&mut self, tok: FoTok) -> Result<(), FoParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {tok:?}")))
        }
    }

    fn word(&mut self) -> Result<String, FoParseError> {
        match self.peek() {
            Some(FoTok::Word(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => Err(self.err("expected a variable")),
        }
    }

    fn formula(&mut self) -> Result<FoFormula, FoParseError> {
        match self.peek().cloned() {
            Some(FoTok::Not) => {
                self.pos += 1;
                Ok(FoFormula::Not(Box::new(self.formula()?)))
            }
            Some(FoTok::Exists) | Some(FoTok::Forall) => {
                let is_exists = self.peek() == Some(&FoTok::Exists);
                self.pos += 1;
                let v = self.word()?;
                let body = Box::new(self.formula()?);
                Ok(if is_exists {
                    FoFormula::Exists(v, body)
                } else {
                    FoFormula::Forall(v, body)
                })
            }
            Some(FoTok::LParen) => {
                self.pos += 1;
                let first = self.formula()?;
                let op = match self.peek() {
                    Some(FoTok::RParen) => {
                        self.pos += 1;
                        return Ok(first);
                    }
                    Some(t @ (FoTok::And | FoTok::Or | FoTok::Implies | FoTok::Iff)) => t.clone(),
                    _ => return Err(self.err("expected a connective or ')'")),
                };
                let mut parts = vec![first];
                while self.peek() == Some(&op) {
                    self.pos += 1;
                    parts.push(self.formula()?);
                }
                self.expect(FoTok::RParen)?;
                match op {
                    FoTok::And => Ok(FoFormula::And(parts)),
                    FoTok::Or => Ok(FoFormula::Or(parts)),
                    _ if parts.len() != 2 => Err(self.err("'→' and '↔' are binary")),
                    _ => {
                        let b = parts.pop().unwrap();
                        let a = parts.pop().unwrap();
                        Ok(if op == FoTok::Implies {
                            FoFormula::Implies(Box::new(a), Box::new(b))
                        } else {
                            FoFormula::Iff(Box::new(a), Box::new(b))
                        })
                    }
                }
            }
            Some(FoTok::Word(w)) => {
                self.pos += 1;
                match w.as_str() {
                    "true" => return Ok(FoFormula::True),
                    "false" => return Ok(FoFormula::False),
                    _ => {}
                }
                if self.peek() == Some(&FoTok::LParen) {
                    self.pos += 1;
                    if w == "B" {
                        let a = self.word()?;
                        self.expect(FoTok::Comma)?;
                        let b = self.word()?;
                        self.expect(FoTok::Comma)?;
                        let c = self.word()?;
                        self.expect(FoTok::RParen)?;
                        return Ok(FoFormula::Between(a, b, c));
                    }
                    let name = w
                        .strip_prefix("P_")
                        .ok_or_else(|| self.err(format!("unknown predicate '{w}'")))?
                        .to_string();
                    let v = self.word()?;
                    self.expect(FoTok::RParen)?;
                    return Ok(FoFormula::Pred(name, v));
                }
                self.expect(FoTok::Equals)?;
                let rhs = self.word()?;
                Ok(FoFormula::Eq(w, rhs))
            }
            _ => Err(self.err("expected a formula")),
        }
    }
}

/// Parses the text produced by printing a [`FoFormula`].
pub fn parse_fo(text: &str) -> Result<FoFormula, FoParseError> {
    let toks = fo_lex(text)?;
    let mut parser = FoParser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = parser.formula()?;
    if parser.pos != parser.toks.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, FormulaGen};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn st_text(s: &str) -> String {
        standard_translation(&parse(s).unwrap(), "x").to_string()
    }

    #[test]
    fn diamond_of_a_proposition() {
        assert_eq!(st_text("<B>(p, p)"), "∃y∃z(B(y,x,z) ∧ P_p(y) ∧ P_p(z))");
    }

    #[test]
    fn nominal_is_equality() {
        assert_eq!(st_text("i"), "x = x_i");
    }

    #[test]
    fn top_is_true() {
        assert_eq!(st_text("true"), "true");
    }

    #[test]
    fn satisfaction_operator_moves_the_free_variable() {
        assert_eq!(st_text("@i <B>(j, k)"), "∃y∃z(B(y,x_i,z) ∧ y = x_j ∧ z = x_k)");
    }

    #[test]
    fn nested_modalities_use_fresh_variables() {
        assert_eq!(
            st_text("C C (i | j)"),
            "∃y∃z(B(y,x,z) ∧ ∃y1∃z1(B(y1,y,z1) ∧ (y1 = x_i ∨ y1 = x_j) ∧ (z1 = x_i ∨ z1 = x_j)) \
             ∧ ∃y2∃z2(B(y2,z,z2) ∧ (y2 = x_i ∨ y2 = x_j) ∧ (z2 = x_i ∨ z2 = x_j)))"
        );
    }

    #[test]
    fn global_modalities_and_box() {
        assert_eq!(st_text("E p"), "∃y(P_p(y))");
        assert_eq!(st_text("A ~p"), "∀y(¬P_p(y))");
        assert_eq!(st_text("[B](p, q)"), "∀y∀z(B(y,x,z) → (P_p(y) ∨ P_q(z)))");
        assert_eq!(st_text("~i"), "¬(x = x_i)");
    }

    #[test]
    fn fresh_names_avoid_the_free_variable() {
        let f = standard_translation(&parse("<B>(p, q)").unwrap(), "y");
        assert_eq!(f.to_string(), "∃y1∃z1(B(y1,y,z1) ∧ P_p(y1) ∧ P_q(z1))");
    }

    #[test]
    fn malformed_first_order_text() {
        assert!(parse_fo("∃y(P_p(y)").is_err());
        assert!(parse_fo("Q(x)").is_err());
        assert!(parse_fo("(a = b → c = d → e = f)").is_err());
    }

    proptest! {
        #[test]
        fn translation_output_reparses(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = FormulaGen::new(&["p", "q"], &["i", "j"]).max_depth(5).generate(&mut rng);
            let fo = standard_translation(&f, "x");
            let text = fo.to_string();
            prop_assert_eq!(parse_fo(&text).unwrap(), fo);
        }
    }
}
