//! The hybrid language with the binary betweenness modality.
//!
//! Formulas are built from `true`, `false`, propositional variables,
//! nominals, the Boolean connectives, `<B>(φ, ψ)` and its dual `[B](φ, ψ)`,
//! satisfaction operators `@i φ`, the global modalities `E`/`A` and the
//! convexity operator `C φ` (shorthand for `<B>(φ, φ)`).
//!
//! The sort of a symbol is fixed by its first letter: names starting with
//! `p`..`t` are propositional variables, names starting with `i`..`l` are
//! nominals. The two sorts can therefore never share a name.

mod builtin;
mod gen;
mod parse;
mod subst;
mod translate;

use std::collections::BTreeSet;
use std::fmt;

pub use builtin::{builtin, e_elimination, BUILTIN_NAMES};
pub use gen::FormulaGen;
pub use parse::{parse, ParseError};
pub use subst::Substitution;
pub use translate::{parse_fo, standard_translation, FoFormula, FoParseError};

/// Symbol sorts of the two-sorted hybrid language.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Prop,
    Nominal,
}

impl Sort {
    /// Sort of an identifier, or `None` if it is not a well-formed symbol.
    pub fn of(name: &str) -> Option<Sort> {
        let mut chars = name.chars();
        let sort = match chars.next()? {
            'p'..='t' => Sort::Prop,
            'i'..='l' => Sort::Nominal,
            _ => return None,
        };
        if name == "true" {
            return None;
        }
        if chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
            Some(sort)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    Prop(String),
    Nominal(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    DiamondB(Box<Formula>, Box<Formula>),
    BoxB(Box<Formula>, Box<Formula>),
    At(String, Box<Formula>),
    E(Box<Formula>),
    A(Box<Formula>),
    Conv(Box<Formula>),
}

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Formula::Prop(name.to_string())
    }

    pub fn nom(name: &str) -> Formula {
        Formula::Nominal(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::Implies(Box::new(f), Box::new(g))
    }

    pub fn iff(f: Formula, g: Formula) -> Formula {
        Formula::Iff(Box::new(f), Box::new(g))
    }

    pub fn diamond(f: Formula, g: Formula) -> Formula {
        Formula::DiamondB(Box::new(f), Box::new(g))
    }

    pub fn boxb(f: Formula, g: Formula) -> Formula {
        Formula::BoxB(Box::new(f), Box::new(g))
    }

    pub fn at(nominal: &str, f: Formula) -> Formula {
        Formula::At(nominal.to_string(), Box::new(f))
    }

    pub fn exists(f: Formula) -> Formula {
        Formula::E(Box::new(f))
    }

    pub fn all(f: Formula) -> Formula {
        Formula::A(Box::new(f))
    }

    pub fn conv(f: Formula) -> Formula {
        Formula::Conv(Box::new(f))
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Top | Bottom | Prop(_) | Nominal(_) => vec![],
            Not(f) | At(_, f) | E(f) | A(f) | Conv(f) => vec![f],
            And(f, g) | Or(f, g) | Implies(f, g) | Iff(f, g) | DiamondB(f, g) | BoxB(f, g) => {
                vec![f, g]
            }
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(Formula::depth).max().unwrap_or(0)
    }

    /// Propositional variables occurring in the formula.
    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out, &mut BTreeSet::new());
        out
    }

    /// Nominals occurring in the formula, including those under `@`.
    pub fn nominals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut BTreeSet::new(), &mut out);
        out
    }

    fn collect_symbols(&self, props: &mut BTreeSet<String>, noms: &mut BTreeSet<String>) {
        match self {
            Formula::Prop(p) => {
                props.insert(p.clone());
            }
            Formula::Nominal(i) => {
                noms.insert(i.clone());
            }
            Formula::At(i, f) => {
                noms.insert(i.clone());
                f.collect_symbols(props, noms);
            }
            _ => {
                for c in self.children() {
                    c.collect_symbols(props, noms);
                }
            }
        }
    }

    /// True iff `sym` (a propositional variable or a nominal) appears in the formula.
    pub fn occurs(&self, sym: &str) -> bool {
        match self {
            Formula::Prop(p) => p == sym,
            Formula::Nominal(i) => i == sym,
            Formula::At(i, f) => i == sym || f.occurs(sym),
            _ => self.children().into_iter().any(|c| c.occurs(sym)),
        }
    }

    /// A formula is pure when it contains no propositional variables.
    pub fn is_pure(&self) -> bool {
        match self {
            Formula::Prop(_) => false,
            _ => self.children().into_iter().all(Formula::is_pure),
        }
    }

    /// Rewrites `C`, `[B]` and `A` into `<B>`, `~` and `E`.
    ///
    /// `C φ` becomes `<B>(φ, φ)`, `[B](φ, ψ)` becomes `~<B>(~φ, ~ψ)` and
    /// `A φ` becomes `~E ~φ`. All other constructors are kept.
    pub fn expand_derived(&self) -> Formula {
        use Formula::*;
        match self {
            Top | Bottom | Prop(_) | Nominal(_) => self.clone(),
            Not(f) => Formula::not(f.expand_derived()),
            And(f, g) => Formula::and(f.expand_derived(), g.expand_derived()),
            Or(f, g) => Formula::or(f.expand_derived(), g.expand_derived()),
            Implies(f, g) => Formula::implies(f.expand_derived(), g.expand_derived()),
            Iff(f, g) => Formula::iff(f.expand_derived(), g.expand_derived()),
            DiamondB(f, g) => Formula::diamond(f.expand_derived(), g.expand_derived()),
            BoxB(f, g) => Formula::not(Formula::diamond(
                Formula::not(f.expand_derived()),
                Formula::not(g.expand_derived()),
            )),
            At(i, f) => Formula::at(i, f.expand_derived()),
            E(f) => Formula::exists(f.expand_derived()),
            A(f) => Formula::not(Formula::exists(Formula::not(f.expand_derived()))),
            Conv(f) => {
                let inner = f.expand_derived();
                Formula::diamond(inner.clone(), inner)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            Top => write!(f, "true"),
            Bottom => write!(f, "false"),
            Prop(p) => write!(f, "{p}"),
            Nominal(i) => write!(f, "{i}"),
            Not(g) => write!(f, "~{g}"),
            And(a, b) => write!(f, "({a} & {b})"),
            Or(a, b) => write!(f, "({a} | {b})"),
            Implies(a, b) => write!(f, "({a} -> {b})"),
            Iff(a, b) => write!(f, "({a} <-> {b})"),
            DiamondB(a, b) => write!(f, "<B>({a}, {b})"),
            BoxB(a, b) => write!(f, "[B]({a}, {b})"),
            At(i, g) => write!(f, "@{i} {g}"),
            E(g) => write!(f, "E {g}"),
            A(g) => write!(f, "A {g}"),
            Conv(g) => write!(f, "C {g}"),
        }
    }
}
