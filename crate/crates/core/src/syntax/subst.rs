use std::collections::BTreeMap;
use std::fmt;

use super::Formula;

/// Uniform substitution: propositional variables go to formulas, nominals to nominals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub props: BTreeMap<String, Formula>,
    pub noms: BTreeMap<String, String>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prop(mut self, p: &str, f: Formula) -> Self {
        self.props.insert(p.to_string(), f);
        self
    }

    pub fn with_nom(mut self, i: &str, j: &str) -> Self {
        self.noms.insert(i.to_string(), j.to_string());
        self
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty() && self.noms.is_empty()
    }

    fn nominal<'a>(&'a self, i: &'a str) -> &'a str {
        self.noms.get(i).map(String::as_str).unwrap_or(i)
    }

    /// Simultaneous application; unmapped symbols are left alone.
    pub fn apply(&self, f: &Formula) -> Formula {
        use Formula::*;
        match f {
            Top | Bottom => f.clone(),
            Prop(p) => self.props.get(p).cloned().unwrap_or_else(|| f.clone()),
            Nominal(i) => Nominal(self.nominal(i).to_string()),
            Not(g) => Formula::not(self.apply(g)),
            And(a, b) => Formula::and(self.apply(a), self.apply(b)),
            Or(a, b) => Formula::or(self.apply(a), self.apply(b)),
            Implies(a, b) => Formula::implies(self.apply(a), self.apply(b)),
            Iff(a, b) => Formula::iff(self.apply(a), self.apply(b)),
            DiamondB(a, b) => Formula::diamond(self.apply(a), self.apply(b)),
            BoxB(a, b) => Formula::boxb(self.apply(a), self.apply(b)),
            At(i, g) => Formula::at(self.nominal(i), self.apply(g)),
            E(g) => Formula::exists(self.apply(g)),
            A(g) => Formula::all(self.apply(g)),
            Conv(g) => Formula::conv(self.apply(g)),
        }
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (p, f) in &self.props {
            out.props.insert(p.clone(), other.apply(f));
        }
        for (p, f) in &other.props {
            out.props.entry(p.clone()).or_insert_with(|| f.clone());
        }
        for (i, j) in &self.noms {
            out.noms.insert(i.clone(), other.nominal(j).to_string());
        }
        for (i, j) in &other.noms {
            out.noms.entry(i.clone()).or_insert_with(|| j.clone());
        }
        out
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .props
            .iter()
            .map(|(p, g)| format!("{p}:={g}"))
            .chain(self.noms.iter().map(|(i, j)| format!("{i}:={j}")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, FormulaGen};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn substituting_a_disjunction_of_nominals() {
        let s = Substitution::new().with_prop("p", f("i | j"));
        assert_eq!(s.apply(&f("C p")), f("C (i | j)"));
    }

    #[test]
    fn empty_substitution_is_identity() {
        let g = f("@i <B>(p, E q) -> [B](j, r)");
        assert_eq!(Substitution::new().apply(&g), g);
    }

    #[test]
    fn simultaneous_rewriting() {
        let s = Substitution::new().with_prop("p", f("q"));
        assert_eq!(s.apply(&f("<B>(p, q)")), f("<B>(q, q)"));
        let swap = Substitution::new()
            .with_prop("p", f("q"))
            .with_prop("q", f("p"))
            .with_nom("i", "j")
            .with_nom("j", "i");
        assert_eq!(swap.apply(&f("@i <B>(p, j) & q")), f("@j <B>(q, i) & p"));
    }

    #[test]
    fn display_lists_bindings() {
        let s = Substitution::new().with_prop("p", f("q & r")).with_nom("i", "k");
        assert_eq!(s.to_string(), "{p:=(q & r), i:=k}");
    }

    proptest! {
        #[test]
        fn composition_agrees_with_sequential_application(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let gen = FormulaGen::new(&["p", "q"], &["i", "j"]).max_depth(4);
            let body = gen.generate(&mut rng);
            // s1 introduces only r/k; s2 maps only r/k and p
            let small = FormulaGen::new(&["r"], &["k"]).max_depth(2);
            let s1 = Substitution::new()
                .with_prop("p", small.generate(&mut rng))
                .with_nom("i", "k");
            let s2 = Substitution::new()
                .with_prop("r", FormulaGen::new(&["s"], &["l"]).max_depth(2).generate(&mut rng))
                .with_nom("k", "l");
            let seq = s2.apply(&s1.apply(&body));
            let composed = s1.then(&s2).apply(&body);
            prop_assert_eq!(seq, composed);
        }
    }
}
