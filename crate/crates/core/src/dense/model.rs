use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::carrier::Carrier;
use super::linear_set::{between_image, LinearSet};
use super::surd::Surd;
use crate::syntax::{Formula, Sort};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DenseError {
    #[error("unbound propositional variable '{0}'")]
    UnboundProp(String),
    #[error("unbound nominal '{0}'")]
    UnboundNominal(String),
    #[error("nominal '{name}' is assigned {value}, which is not a member of {carrier}")]
    NominalOutsideCarrier {
        name: String,
        value: String,
        carrier: String,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("carrier {0} is not a bounded window of integers")]
    NotFinite(String),
}

fn syntax(line: usize, message: impl Into<String>) -> DenseError {
    DenseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Outcome of a global truth check; `witness` is a carrier point where the
/// formula fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseReport {
    pub holds: bool,
    pub witness: Option<Surd>,
}

/// A carrier with its order-induced betweenness, plus a valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseModel {
    carrier: Carrier,
    props: BTreeMap<String, LinearSet>,
    noms: BTreeMap<String, Surd>,
}

impl DenseModel {
    pub fn new(carrier: Carrier) -> DenseModel {
        DenseModel {
            carrier,
            props: BTreeMap::new(),
            noms: BTreeMap::new(),
        }
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn props(&self) -> &BTreeMap<String, LinearSet> {
        &self.props
    }

    pub fn noms(&self) -> &BTreeMap<String, Surd> {
        &self.noms
    }

    /// Sets `V(p)`; the set is re-read inside this model's carrier.
    pub fn set_prop(&mut self, p: &str, set: LinearSet) {
        let set = LinearSet::from_components(&self.carrier, set.components().to_vec());
        self.props.insert(p.to_string(), set);
    }

    pub fn with_prop(mut self, p: &str, set: LinearSet) -> DenseModel {
        self.set_prop(p, set);
        self
    }

    pub fn set_nom(&mut self, i: &str, value: Surd) -> Result<(), DenseError> {
        if !self.carrier.contains(&value) {
            return Err(DenseError::NominalOutsideCarrier {
                name: i.to_string(),
                value: value.to_string(),
                carrier: self.carrier.to_string(),
            });
        }
        self.noms.insert(i.to_string(), value);
        Ok(())
    }

    pub fn with_nom(mut self, i: &str, value: Surd) -> Result<DenseModel, DenseError> {
        self.set_nom(i, value)?;
        Ok(self)
    }

    /// Reads an assignment `name=value`, a set for a propositional variable
    /// or a number for a nominal.
    pub fn assign(&mut self, text: &str) -> Result<(), String> {
        let (name, value) = text
            .split_once(['=', ':'])
            .ok_or_else(|| format!("expected 'name=value' in '{text}'"))?;
        let name = name.trim();
        match Sort::of(name) {
            Some(Sort::Prop) => {
                let set = LinearSet::parse(&self.carrier, value)?;
                self.props.insert(name.to_string(), set);
                Ok(())
            }
            Some(Sort::Nominal) => {
                let x: Surd = value.trim().parse()?;
                self.set_nom(name, x).map_err(|e| e.to_string())
            }
            None => Err(format!("'{name}' is neither a propositional variable nor a nominal")),
        }
    }

    /// The set of carrier points where `f` is true.
    pub fn extension(&self, f: &Formula) -> Result<LinearSet, DenseError> {
        use Formula::*;
        let c = &self.carrier;
        let full = || LinearSet::full(c);
        let all_or_nothing = |b: bool| if b { full() } else { LinearSet::empty() };
        Ok(match f {
            Top => full(),
            Bottom => LinearSet::empty(),
            Prop(p) => self
                .props
                .get(p)
                .cloned()
                .ok_or_else(|| DenseError::UnboundProp(p.clone()))?,
            Nominal(i) => LinearSet::point(c, self.nominal(i)?.clone()),
            Not(g) => self.extension(g)?.complement(c),
            And(a, b) => self.extension(a)?.intersect(c, &self.extension(b)?),
            Or(a, b) => self.extension(a)?.union(c, &self.extension(b)?),
            Implies(a, b) => self.extension(a)?.complement(c).union(c, &self.extension(b)?),
            Iff(a, b) => {
                let x = self.extension(a)?;
                let y = self.extension(b)?;
                let both = x.intersect(c, &y);
                let neither = x.complement(c).intersect(c, &y.complement(c));
                both.union(c, &neither)
            }
            DiamondB(a, b) => between_image(c, &self.extension(a)?, &self.extension(b)?),
            BoxB(a, b) => {
                let x = self.extension(a)?.complement(c);
                let y = self.extension(b)?.complement(c);
                between_image(c, &x, &y).complement(c)
            }
            Conv(g) => {
                let x = self.extension(g)?;
                between_image(c, &x, &x)
            }
            At(i, g) => {
                let w = self.nominal(i)?.clone();
                all_or_nothing(self.extension(g)?.covers(&w))
            }
            E(g) => all_or_nothing(!self.extension(g)?.is_empty()),
            A(g) => all_or_nothing(self.extension(g)?.is_full(c)),
        })
    }

    fn nominal(&self, i: &str) -> Result<&Surd, DenseError> {
        self.noms
            .get(i)
            .ok_or_else(|| DenseError::UnboundNominal(i.to_string()))
    }

    /// Whether `f` is true at every carrier point.
    pub fn holds_everywhere(&self, f: &Formula) -> Result<DenseReport, DenseError> {
        let failing = self.extension(f)?.complement(&self.carrier);
        Ok(DenseReport {
            holds: failing.is_empty(),
            witness: failing.witness(&self.carrier),
        })
    }

    /// Reads the model file format:
    ///
    /// ```text
    /// carrier Q [0,1]
    /// V p: (0,1/2) {3/4}
    /// V i: 1/3
    /// ```
    pub fn parse(text: &str) -> Result<DenseModel, DenseError> {
        let mut carrier = None;
        let mut assignments = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("carrier") {
                if carrier.is_some() {
                    return Err(syntax(line, "carrier declared twice"));
                }
                carrier = Some(rest.parse::<Carrier>().map_err(|m| syntax(line, m))?);
            } else if let Some(rest) = content.strip_prefix("V ") {
                assignments.push((line, rest.to_string()));
            } else {
                return Err(syntax(line, format!("unrecognized line '{content}'")));
            }
        }
        let carrier = carrier.ok_or_else(|| syntax(1, "missing 'carrier' line"))?;
        let mut m = DenseModel::new(carrier);
        let mut seen = std::collections::BTreeSet::new();
        for (line, a) in assignments {
            let name = a.split([':', '=']).next().unwrap_or("").trim().to_string();
            if !seen.insert(name.clone()) {
                return Err(syntax(line, format!("'{name}' assigned twice")));
            }
            m.assign(&a).map_err(|msg| syntax(line, msg))?;
        }
        Ok(m)
    }
}

impl fmt::Display for DenseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "carrier {}", self.carrier)?;
        for (p, s) in &self.props {
            writeln!(f, "V {p}: {s}")?;
        }
        for (i, x) in &self.noms {
            writeln!(f, "V {i}: {x}")?;
        }
        Ok(())
    }
}
