use std::fmt;

use super::schema::{match_schema, schema, Logic, Rule};
use super::tautology::{is_tautology, MAX_ATOMS};
use super::ProofError;
use crate::syntax::{parse, Formula, Sort, Substitution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// An instance of a named schema; `CT` is any tautology.
    Axiom { name: String, subst: Option<Substitution> },
    Rule {
        rule: Rule,
        premises: Vec<usize>,
        subst: Option<Substitution>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    /// The number written in front of the line.
    pub label: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub logic: Logic,
    pub lines: Vec<ProofLine>,
}

fn syntax(line: usize, message: impl Into<String>) -> ProofError {
    ProofError::Syntax {
        line,
        message: message.into(),
    }
}

/// Splits at top-level commas, ignoring those inside brackets.
fn split_top(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Reads `{p:=<formula>, i:=j, ...}`.
pub fn parse_substitution(text: &str) -> Result<Substitution, String> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or("a substitution is written {p:=formula, i:=j}")?;
    let mut sigma = Substitution::new();
    if inner.trim().is_empty() {
        return Ok(sigma);
    }
    for part in split_top(inner) {
        let (name, value) = part
            .split_once(":=")
            .ok_or_else(|| format!("expected 'name:=value' in '{}'", part.trim()))?;
        let name = name.trim();
        let value = value.trim();
        let duplicate = sigma.props.contains_key(name) || sigma.noms.contains_key(name);
        if duplicate {
            return Err(format!("'{name}' substituted twice"));
        }
        match Sort::of(name) {
            Some(Sort::Prop) => {
                let f = parse(value).map_err(|e| format!("in substitution for {name}: {e}"))?;
                sigma.props.insert(name.to_string(), f);
            }
            Some(Sort::Nominal) => {
                if Sort::of(value) != Some(Sort::Nominal) {
                    return Err(format!(
                        "nominal '{name}' can only be replaced by a nominal, not '{value}'"
                    ));
                }
                sigma.noms.insert(name.to_string(), value.to_string());
            }
            None => return Err(format!("'{name}' is not a symbol")),
        }
    }
    Ok(sigma)
}

impl Derivation {
    pub fn new(logic: Logic) -> Derivation {
        Derivation {
            logic,
            lines: Vec::new(),
        }
    }

    /// Reads a proof file. Each line is
    ///
    /// ```text
    /// N. <formula> ; axiom NAME [{substitution}]
    /// N. <formula> ; RULE m [k] [{substitution}]
    /// ```
    ///
    /// with `#` comments and an optional `logic Bh` or `logic Bh+` line.
    pub fn parse(text: &str) -> Result<Derivation, ProofError> {
        let mut d = Derivation::default();
        let mut logic_seen = false;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("logic ") {
                if logic_seen || !d.lines.is_empty() {
                    return Err(syntax(line, "'logic' must come once, before the first line"));
                }
                d.logic = rest.parse().map_err(|e: ProofError| syntax(line, e.to_string()))?;
                logic_seen = true;
                continue;
            }
            let (label, rest) = content
                .split_once('.')
                .ok_or_else(|| syntax(line, "expected 'N. formula ; justification'"))?;
            let label: usize = label
                .trim()
                .parse()
                .map_err(|_| syntax(line, format!("'{}' is not a line number", label.trim())))?;
            if let Some(prev) = d.lines.last() {
                if label <= prev.label {
                    return Err(syntax(line, format!("line number {label} does not increase")));
                }
            }
            let (formula, just) = rest
                .split_once(';')
                .ok_or_else(|| syntax(line, "missing ';' before the justification"))?;
            let formula = parse(formula.trim()).map_err(|e| syntax(line, e.to_string()))?;
            let justification = parse_justification(just.trim()).map_err(|m| syntax(line, m))?;
            d.lines.push(ProofLine {
                label,
                formula,
                justification,
            });
        }
        Ok(d)
    }

    fn position(&self, label: usize) -> Option<usize> {
        self.lines.iter().position(|l| l.label == label)
    }

    /// Verifies the justification of the line at position `idx`.
    pub fn check_line(&self, idx: usize) -> Result<(), ProofError> {
        let line = &self.lines[idx];
        let at = line.label;
        match &line.justification {
            Justification::Axiom { name, subst } => {
                if name == "CT" {
                    return match is_tautology(&line.formula) {
                        Some(true) => Ok(()),
                        Some(false) => Err(ProofError::NotTautology { line: at }),
                        None => Err(ProofError::TooManyAtoms {
                            line: at,
                            max: MAX_ATOMS,
                        }),
                    };
                }
                let s = schema(name, self.logic)?;
                let ok = match subst {
                    Some(sigma) => sigma.apply(&s.template) == line.formula,
                    None => match_schema(&line.formula, &s.template).is_some(),
                };
                if ok {
                    Ok(())
                } else {
                    Err(ProofError::BadMatch {
                        line: at,
                        schema: s.name.to_string(),
                    })
                }
            }
            Justification::Rule { rule, premises, subst } => {
                if premises.len() != rule.premises() {
                    return Err(ProofError::PremiseCount {
                        line: at,
                        rule: *rule,
                        expected: rule.premises(),
                        found: premises.len(),
                    });
                }
                let mut cited = Vec::new();
                for &p in premises {
                    match self.position(p) {
                        Some(k) if k < idx => cited.push(&self.lines[k].formula),
                        Some(_) => return Err(ProofError::ForwardReference { line: at, cited: p }),
                        None if p >= at => return Err(ProofError::ForwardReference { line: at, cited: p }),
                        None => return Err(ProofError::MissingPremise { line: at, cited: p }),
                    }
                }
                check_rule(*rule, &cited, &line.formula, subst.as_ref(), at)
            }
        }
    }

    /// Checks every line in order and reports the first failure.
    pub fn check(&self) -> Result<(), ProofError> {
        (0..self.lines.len()).try_for_each(|k| self.check_line(k))
    }

    /// The formula proved by the last line.
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

pub fn check_derivation(d: &Derivation) -> Result<(), ProofError> {
    d.check()
}

fn parse_justification(text: &str) -> Result<Justification, String> {
    let (head, subst) = match text.find('{') {
        Some(k) => (text[..k].trim(), Some(parse_substitution(&text[k..])?)),
        None => (text, None),
    };
    let mut words = head.split_whitespace();
    let first = words.next().ok_or("missing justification")?;
    if first == "axiom" {
        let name = words.next().ok_or("missing axiom name")?;
        if words.next().is_some() {
            return Err("trailing input after the axiom name".into());
        }
        return Ok(Justification::Axiom {
            name: name.to_string(),
            subst,
        });
    }
    let rule: Rule = first.parse().map_err(|e: ProofError| e.to_string())?;
    let premises = words
        .map(|w| w.parse::<usize>().map_err(|_| format!("'{w}' is not a line number")))
        .collect::<Result<Vec<_>, _>>()?;
    if subst.is_some() && rule != Rule::Subst {
        return Err(format!("{rule} takes no substitution"));
    }
    Ok(Justification::Rule { rule, premises, subst })
}

fn shape(line: usize, rule: Rule, message: impl Into<String>) -> ProofError {
    ProofError::BadPremiseShape {
        line,
        rule,
        message: message.into(),
    }
}

fn side(line: usize, rule: Rule, message: impl Into<String>) -> ProofError {
    ProofError::SideCondition {
        line,
        rule,
        message: message.into(),
    }
}

fn check_rule(
    rule: Rule,
    premises: &[&Formula],
    conclusion: &Formula,
    subst: Option<&Substitution>,
    line: usize,
) -> Result<(), ProofError> {
    use Formula::*;
    let p = premises[0];
    match rule {
        Rule::Mp => {
            let fits =
                |imp: &Formula, ante: &Formula| matches!(imp, Implies(a, b) if **a == *ante && **b == *conclusion);
            if fits(premises[0], premises[1]) || fits(premises[1], premises[0]) {
                Ok(())
            } else {
                Err(shape(
                    line,
                    rule,
                    "no premise is an implication from the other to the conclusion",
                ))
            }
        }
        Rule::Nec1 | Rule::Nec2 => match conclusion {
            BoxB(a, b) if (rule == Rule::Nec1 && **a == *p) || (rule == Rule::Nec2 && **b == *p) => Ok(()),
            BoxB(..) => Err(shape(line, rule, "the premise is not the boxed argument")),
            _ => Err(shape(line, rule, "the conclusion is not a [B] formula")),
        },
        Rule::NecAt => match conclusion {
            At(_, g) if **g == *p => Ok(()),
            _ => Err(shape(line, rule, "the conclusion is not @i applied to the premise")),
        },
        Rule::Subst => {
            let ok = match subst {
                Some(sigma) => sigma.apply(p) == *conclusion,
                None => match_schema(conclusion, p).is_some(),
            };
            if ok {
                Ok(())
            } else {
                Err(ProofError::SubstitutionMismatch { line })
            }
        }
        Rule::Name => {
            let Implies(i, theta) = p else {
                return Err(shape(line, rule, "the premise is not an implication"));
            };
            let Nominal(i) = &**i else {
                return Err(shape(line, rule, "the antecedent of the premise is not a nominal"));
            };
            if **theta != *conclusion {
                return Err(shape(line, rule, "the conclusion is not the consequent of the premise"));
            }
            if theta.occurs(i) {
                return Err(side(line, rule, format!("nominal {i} occurs in the conclusion")));
            }
            Ok(())
        }
        Rule::Paste => check_paste(p, conclusion, line),
    }
}

/// Splits `a & b & c` grouped either way.
fn three_conjuncts(f: &Formula) -> Option<[&Formula; 3]> {
    use Formula::And;
    match f {
        And(ab, c) if matches!(**ab, And(..)) => {
            let And(a, b) = &**ab else { unreachable!() };
            Some([a, b, c])
        }
        And(a, bc) if matches!(**bc, And(..)) => {
            let And(b, c) = &**bc else { unreachable!() };
            Some([a, b, c])
        }
        _ => None,
    }
}

fn check_paste(premise: &Formula, conclusion: &Formula, line: usize) -> Result<(), ProofError> {
    use Formula::*;
    let rule = Rule::Paste;
    let bad = |m: &str| shape(line, rule, m);
    let Implies(ante, theta) = premise else {
        return Err(bad("the premise is not an implication"));
    };
    let [first, second, third] =
        three_conjuncts(ante).ok_or_else(|| bad("the antecedent of the premise is not a conjunction of three"))?;
    let At(i, d) = first else {
        return Err(bad("the first conjunct is not @i <B>(j, k)"));
    };
    let DiamondB(j, k) = &**d else {
        return Err(bad("the first conjunct is not @i <B>(j, k)"));
    };
    let (Nominal(j), Nominal(k)) = (&**j, &**k) else {
        return Err(bad("the first conjunct is not @i <B>(j, k)"));
    };
    let (At(j2, phi), At(k2, psi)) = (second, third) else {
        return Err(bad("the second and third conjuncts are not @j φ and @k ψ"));
    };
    if j2 != j || k2 != k {
        return Err(bad("the second and third conjuncts are not @j φ and @k ψ"));
    }
    let expected = Formula::implies(
        Formula::at(i, Formula::diamond((**phi).clone(), (**psi).clone())),
        (**theta).clone(),
    );
    if *conclusion != expected {
        return Err(shape(line, rule, format!("the conclusion should be {expected}")));
    }
    if i == j || i == k || j == k {
        return Err(side(
            line,
            rule,
            format!("nominals {i}, {j}, {k} are not pairwise different"),
        ));
    }
    for n in [j, k] {
        for (what, f) in [("φ", phi), ("ψ", psi), ("θ", theta)] {
            if f.occurs(n) {
                return Err(side(line, rule, format!("nominal {n} occurs in {what}")));
            }
        }
    }
    Ok(())
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom { name, subst } => {
                write!(f, "axiom {name}")?;
                if let Some(s) = subst {
                    write!(f, " {s}")?;
                }
                Ok(())
            }
            Justification::Rule { rule, premises, subst } => {
                write!(f, "{rule}")?;
                for p in premises {
                    write!(f, " {p}")?;
                }
                if let Some(s) = subst {
                    write!(f, " {s}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "logic {}", self.logic)?;
        for l in &self.lines {
            writeln!(f, "{}. {} ; {}", l.label, l.formula, l.justification)?;
        }
        Ok(())
    }
}
