use std::fmt;
use std::str::FromStr;

use super::ProofError;
use crate::syntax::{builtin, parse, Formula, Substitution};

/// The two Hilbert systems; `BhPlus` adds the completeness axiom `D`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Logic {
    #[default]
    Bh,
    BhPlus,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Bh => "Bh",
            Logic::BhPlus => "Bh+",
        })
    }
}

impl FromStr for Logic {
    type Err = ProofError;

    fn from_str(s: &str) -> Result<Logic, ProofError> {
        match s.trim() {
            "Bh" => Ok(Logic::Bh),
            "Bh+" => Ok(Logic::BhPlus),
            other => Err(ProofError::UnknownLogic(other.to_string())),
        }
    }
}

/// Side conditions attached to inference rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideCondition {
    None,
    /// the nominal of the antecedent does not occur in the conclusion
    Name,
    /// the three nominals differ and the two pasted ones are fresh
    Paste,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Mp,
    Nec1,
    Nec2,
    NecAt,
    Subst,
    Name,
    Paste,
}

pub const RULES: &[Rule] = &[
    Rule::Mp,
    Rule::Nec1,
    Rule::Nec2,
    Rule::NecAt,
    Rule::Subst,
    Rule::Name,
    Rule::Paste,
];

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Mp => "MP",
            Rule::Nec1 => "Nec1",
            Rule::Nec2 => "Nec2",
            Rule::NecAt => "Nec@",
            Rule::Subst => "Subst",
            Rule::Name => "Name",
            Rule::Paste => "Paste",
        }
    }

    pub fn premises(self) -> usize {
        match self {
            Rule::Mp => 2,
            _ => 1,
        }
    }

    pub fn side_condition(self) -> SideCondition {
        match self {
            Rule::Name => SideCondition::Name,
            Rule::Paste => SideCondition::Paste,
            _ => SideCondition::None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = ProofError;

    fn from_str(s: &str) -> Result<Rule, ProofError> {
        let s = s.trim();
        let alias = match s {
            "NecAt" => "Nec@",
            other => other,
        };
        RULES
            .iter()
            .copied()
            .find(|r| r.name() == alias)
            .ok_or_else(|| ProofError::UnknownRule(s.to_string()))
    }
}

/// An axiom schema: every propositional variable of `template` stands for an
/// arbitrary formula and every nominal for an arbitrary nominal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub name: &'static str,
    pub template: Formula,
}

const BASE: &[(&str, &str)] = &[
    ("dual", "~<B>(p, q) <-> [B](~p, ~q)"),
    ("K1", "[B](p -> q, r) -> ([B](p, r) -> [B](q, r))"),
    ("K2", "[B](r, p -> q) -> ([B](r, p) -> [B](r, q))"),
    ("K@", "@i (p -> q) -> (@i p -> @i q)"),
    ("selfdual", "~@i p <-> @i ~p"),
    ("ref", "@i i"),
    ("intro", "i & p -> @i p"),
    ("back1", "<B>(@i p, q) -> @i p"),
    ("back2", "<B>(q, @i p) -> @i p"),
    ("agree", "@i @j p -> @j p"),
    ("sym", "@j i -> @i j"),
    ("nom", "@i j & @j p -> @i p"),
];

const SPECIFIC: &[&str] = &["HB1", "HB2", "HB3", "HB4", "HB5", "HB6", "HB7", "HB8p"];

/// Names of the axioms of `logic`, excluding the tautology schema `CT`.
pub fn axiom_names(logic: Logic) -> Vec<&'static str> {
    let mut names: Vec<&'static str> = BASE.iter().map(|(n, _)| *n).collect();
    names.extend_from_slice(SPECIFIC);
    if logic == Logic::BhPlus {
        names.push("D");
    }
    names
}

fn canonical(name: &str) -> &str {
    match name {
        "Kat" => "K@",
        "HB8'" => "HB8p",
        other => other,
    }
}

/// The schema called `name` in `logic`.
pub fn schema(name: &str, logic: Logic) -> Result<Schema, ProofError> {
    let name = canonical(name.trim());
    if let Some((n, text)) = BASE.iter().find(|(n, _)| *n == name) {
        return Ok(Schema {
            name: n,
            template: parse(text).expect("schema templates parse"),
        });
    }
    if let Some(n) = SPECIFIC.iter().find(|n| **n == name) {
        return Ok(Schema {
            name: n,
            template: builtin(n).expect("specific axioms are builtins"),
        });
    }
    if name == "D" {
        return match logic {
            Logic::BhPlus => Ok(Schema {
                name: "D",
                template: builtin("D").expect("D is a builtin"),
            }),
            Logic::Bh => Err(ProofError::NotInLogic {
                axiom: "D".into(),
                logic,
            }),
        };
    }
    Err(ProofError::UnknownAxiom(name.to_string()))
}

/// A substitution `σ` with `σ(template) = f`, if there is one.
///
/// Matching is purely syntactic: propositional variables of the template
/// match any subformula, nominals match nominals only, and repeated
/// variables must match identical subformulas.
pub fn match_schema(f: &Formula, template: &Formula) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    if unify(template, f, &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

fn bind_nom(sigma: &mut Substitution, i: &str, j: &str) -> bool {
    match sigma.noms.get(i) {
        Some(bound) => bound == j,
        None => {
            sigma.noms.insert(i.to_string(), j.to_string());
            true
        }
    }
}

fn unify(t: &Formula, f: &Formula, sigma: &mut Substitution) -> bool {
    use Formula::*;
    match (t, f) {
        (Prop(p), _) => match sigma.props.get(p) {
            Some(bound) => bound == f,
            None => {
                sigma.props.insert(p.clone(), f.clone());
                true
            }
        },
        (Nominal(i), Nominal(j)) => bind_nom(sigma, i, j),
        (Top, Top) | (Bottom, Bottom) => true,
        (Not(a), Not(b)) | (E(a), E(b)) | (A(a), A(b)) | (Conv(a), Conv(b)) => unify(a, b, sigma),
        (And(a1, a2), And(b1, b2))
        | (Or(a1, a2), Or(b1, b2))
        | (Implies(a1, a2), Implies(b1, b2))
        | (Iff(a1, a2), Iff(b1, b2))
        | (DiamondB(a1, a2), DiamondB(b1, b2))
        | (BoxB(a1, a2), BoxB(b1, b2)) => unify(a1, b1, sigma) && unify(a2, b2, sigma),
        (At(i, a), At(j, b)) => bind_nom(sigma, i, j) && unify(a, b, sigma),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::FormulaGen;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn reflexivity_instance() {
        let s = schema("ref", Logic::Bh).unwrap();
        assert_eq!(
            match_schema(&f("@i i"), &s.template),
            Some(Substitution::new().with_nom("i", "i"))
        );
        assert_eq!(
            match_schema(&f("@k k"), &s.template),
            Some(Substitution::new().with_nom("i", "k"))
        );
        assert_eq!(match_schema(&f("@k j"), &s.template), None);
    }

    #[test]
    fn duality_instance() {
        let s = schema("dual", Logic::Bh).unwrap();
        let sigma = match_schema(&f("~<B>(r, s & t) <-> [B](~r, ~(s & t))"), &s.template).unwrap();
        assert_eq!(
            sigma,
            Substitution::new().with_prop("p", f("r")).with_prop("q", f("s & t"))
        );
    }

    #[test]
    fn shape_mismatch() {
        let s = schema("intro", Logic::Bh).unwrap();
        assert_eq!(match_schema(&f("@i j"), &s.template), None);
        // nominal slots only take nominals
        assert_eq!(match_schema(&f("p & q -> @i q"), &s.template), None);
        // repeated slots must agree
        assert_eq!(match_schema(&f("i & q -> @j q"), &s.template), None);
    }

    #[test]
    fn library_contents() {
        assert_eq!(axiom_names(Logic::Bh).len(), 20);
        assert!(axiom_names(Logic::BhPlus).contains(&"D"));
        assert!(matches!(schema("D", Logic::Bh), Err(ProofError::NotInLogic { .. })));
        assert_eq!(schema("HB8'", Logic::Bh).unwrap().name, "HB8p");
        assert_eq!(schema("Kat", Logic::Bh).unwrap().name, "K@");
        assert!(schema("T", Logic::Bh).is_err());
        assert_eq!("Nec@".parse::<Rule>().unwrap(), Rule::NecAt);
        assert_eq!("Bh+".parse::<Logic>().unwrap(), Logic::BhPlus);
    }

    proptest! {
        #[test]
        fn matches_reproduce_the_candidate(seed in any::<u64>(), which in 0usize..21) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let names = axiom_names(Logic::BhPlus);
            let s = schema(names[which], Logic::BhPlus).unwrap();
            let gen = FormulaGen::new(&["p", "q"], &["i", "j", "k"]).max_depth(2);
            let mut sigma = Substitution::new();
            for p in s.template.props() {
                sigma = sigma.with_prop(&p, gen.generate(&mut rng));
            }
            for (k, i) in s.template.nominals().into_iter().enumerate() {
                sigma = sigma.with_nom(&i, ["i", "j", "k"][(seed as usize + k) % 3]);
            }
            let instance = sigma.apply(&s.template);
            let found = match_schema(&instance, &s.template).expect("instances match");
            prop_assert_eq!(found.apply(&s.template), instance);
        }

        #[test]
        fn matches_are_sound(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gen = FormulaGen::new(&["p", "q"], &["i", "j"]).max_depth(3);
            let a = gen.generate(&mut rng);
            let b = gen.generate(&mut rng);
            if let Some(sigma) = match_schema(&b, &a) {
                prop_assert_eq!(sigma.apply(&a), b);
            }
        }
    }
}
