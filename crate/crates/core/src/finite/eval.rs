use std::collections::{BTreeMap, BTreeSet};

use super::{FiniteError, FiniteModel, Frame3};
use crate::syntax::Formula;

/// Largest frame the bitset evaluator accepts.
pub const MAX_WORLDS: usize = 128;

/// Default cap on the number of valuations [`frame_valid_finite`] enumerates.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

type Set = u128;

fn bits(s: Set) -> impl Iterator<Item = usize> {
    let mut s = s;
    std::iter::from_fn(move || {
        if s == 0 {
            None
        } else {
            let k = s.trailing_zeros() as usize;
            s &= s - 1;
            Some(k)
        }
    })
}

fn to_set(ws: &BTreeSet<usize>, n: usize) -> Result<Set, FiniteError> {
    ws.iter().try_fold(0, |acc, &w| {
        if w >= n {
            Err(FiniteError::WorldOutOfRange { world: w, n })
        } else {
            Ok(acc | 1 << w)
        }
    })
}

/// A formula with its symbols replaced by slot indices.
enum Node {
    Top,
    Bottom,
    Prop(usize),
    Nominal(usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Diamond(Box<Node>, Box<Node>),
    BoxB(Box<Node>, Box<Node>),
    Conv(Box<Node>),
    At(usize, Box<Node>),
    E(Box<Node>),
    A(Box<Node>),
}

struct Compiled {
    props: Vec<String>,
    noms: Vec<String>,
    root: Node,
}

impl Compiled {
    fn new(f: &Formula) -> Compiled {
        let props: Vec<String> = f.props().into_iter().collect();
        let noms: Vec<String> = f.nominals().into_iter().collect();
        let root = Compiled::node(f, &props, &noms);
        Compiled { props, noms, root }
    }

    fn node(f: &Formula, props: &[String], noms: &[String]) -> Node {
        use Formula as F;
        let slot = |names: &[String], s: &String| names.iter().position(|x| x == s).expect("collected symbol");
        let b = |g: &Formula| Box::new(Compiled::node(g, props, noms));
        match f {
            F::Top => Node::Top,
            F::Bottom => Node::Bottom,
            F::Prop(p) => Node::Prop(slot(props, p)),
            F::Nominal(i) => Node::Nominal(slot(noms, i)),
            F::Not(g) => Node::Not(b(g)),
            F::And(x, y) => Node::And(b(x), b(y)),
            F::Or(x, y) => Node::Or(b(x), b(y)),
            F::Implies(x, y) => Node::Implies(b(x), b(y)),
            F::Iff(x, y) => Node::Iff(b(x), b(y)),
            F::DiamondB(x, y) => Node::Diamond(b(x), b(y)),
            F::BoxB(x, y) => Node::BoxB(b(x), b(y)),
            F::Conv(g) => Node::Conv(b(g)),
            F::At(i, g) => Node::At(slot(noms, i), b(g)),
            F::E(g) => Node::E(b(g)),
            F::A(g) => Node::A(b(g)),
        }
    }
}

/// `mids[x*n + y]` is the set of worlds strictly between `x` and `y`.
struct Evaluator {
    n: usize,
    full: Set,
    mids: Vec<Set>,
}

impl Evaluator {
    fn new(f: &Frame3) -> Result<Evaluator, FiniteError> {
        let n = f.worlds();
        if n > MAX_WORLDS {
            return Err(FiniteError::TooManyWorlds { n, max: MAX_WORLDS });
        }
        let mut mids = vec![0; n * n];
        for (x, y, z) in f.triples() {
            mids[x * n + z] |= 1 << y;
        }
        let full = if n == 128 { Set::MAX } else { (1 << n) - 1 };
        Ok(Evaluator { n, full, mids })
    }

    fn diamond(&self, a: Set, b: Set) -> Set {
        let mut acc = 0;
        for x in bits(a) {
            let row = &self.mids[x * self.n..(x + 1) * self.n];
            for y in bits(b) {
                acc |= row[y];
            }
        }
        acc
    }

    fn eval(&self, node: &Node, props: &[Set], noms: &[usize]) -> Set {
        let all_or_nothing = |b: bool| if b { self.full } else { 0 };
        match node {
            Node::Top => self.full,
            Node::Bottom => 0,
            Node::Prop(k) => props[*k],
            Node::Nominal(k) => 1 << noms[*k],
            Node::Not(g) => !self.eval(g, props, noms) & self.full,
            Node::And(a, b) => self.eval(a, props, noms) & self.eval(b, props, noms),
            Node::Or(a, b) => self.eval(a, props, noms) | self.eval(b, props, noms),
            Node::Implies(a, b) => (!self.eval(a, props, noms) | self.eval(b, props, noms)) & self.full,
            Node::Iff(a, b) => !(self.eval(a, props, noms) ^ self.eval(b, props, noms)) & self.full,
            Node::Diamond(a, b) => self.diamond(self.eval(a, props, noms), self.eval(b, props, noms)),
            Node::BoxB(a, b) => {
                let x = !self.eval(a, props, noms) & self.full;
                let y = !self.eval(b, props, noms) & self.full;
                !self.diamond(x, y) & self.full
            }
            Node::Conv(g) => {
                let x = self.eval(g, props, noms);
                self.diamond(x, x)
            }
            Node::At(k, g) => all_or_nothing(self.eval(g, props, noms) >> noms[*k] & 1 == 1),
            Node::E(g) => all_or_nothing(self.eval(g, props, noms) != 0),
            Node::A(g) => all_or_nothing(self.eval(g, props, noms) == self.full),
        }
    }
}

/// The worlds of `m` at which `f` is true.
pub fn extension_finite(m: &FiniteModel, f: &Formula) -> Result<BTreeSet<usize>, FiniteError> {
    let ev = Evaluator::new(&m.frame)?;
    let n = ev.n;
    let c = Compiled::new(f);
    let props = c
        .props
        .iter()
        .map(|p| {
            let ws = m.props.get(p).ok_or_else(|| FiniteError::UnboundProp(p.clone()))?;
            to_set(ws, n)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let noms = c
        .noms
        .iter()
        .map(|i| {
            let w = *m.noms.get(i).ok_or_else(|| FiniteError::UnboundNominal(i.clone()))?;
            if w >= n {
                Err(FiniteError::WorldOutOfRange { world: w, n })
            } else {
                Ok(w)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(bits(ev.eval(&c.root, &props, &noms)).collect())
}

/// Truth of `f` at world `w` of `m`.
pub fn eval_finite(m: &FiniteModel, f: &Formula, w: usize) -> Result<bool, FiniteError> {
    let n = m.frame.worlds();
    if w >= n {
        return Err(FiniteError::WorldOutOfRange { world: w, n });
    }
    Ok(extension_finite(m, f)?.contains(&w))
}

/// Outcome of a frame validity check; on failure `countermodel` holds the
/// first falsifying valuation found and `world` a world where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub holds: bool,
    pub countermodel: Option<FiniteModel>,
    pub world: Option<usize>,
    pub valuations: u64,
}

pub fn frame_valid_finite(f: &Frame3, phi: &Formula) -> Result<ValidityReport, FiniteError> {
    frame_valid_finite_with_budget(f, phi, DEFAULT_BUDGET)
}

/// Decides validity of `phi` on `f` by enumerating every nominal assignment
/// and, unless `phi` is pure, every valuation of its propositional variables.
///
/// Assignments are visited odometer-style with the alphabetically first
/// symbol changing fastest; nominal assignments form the outer loop.
pub fn frame_valid_finite_with_budget(f: &Frame3, phi: &Formula, budget: u64) -> Result<ValidityReport, FiniteError> {
    let n = f.worlds();
    if n == 0 {
        return Err(FiniteError::EmptyFrame);
    }
    let ev = Evaluator::new(f)?;
    let c = Compiled::new(phi);
    let (m, k) = (c.props.len(), c.noms.len());
    let needed = (n as u128)
        .checked_pow(k as u32)
        .and_then(|a| 1u128.checked_shl((n * m) as u32).and_then(|b| a.checked_mul(b)))
        .filter(|needed| *needed <= budget as u128);
    let Some(needed) = needed else {
        let shown = (n as u128)
            .saturating_pow(k as u32)
            .saturating_mul(1u128.checked_shl((n * m) as u32).unwrap_or(u128::MAX));
        return Err(FiniteError::BudgetExceeded { needed: shown, budget });
    };
    let prop_limit: Set = if m == 0 { 0 } else { ev.full };
    let mut noms = vec![0usize; k];
    let mut props = vec![0 as Set; m];
    let mut count = 0u64;
    loop {
        props.iter_mut().for_each(|p| *p = 0);
        loop {
            count += 1;
            let failing = !ev.eval(&c.root, &props, &noms) & ev.full;
            if failing != 0 {
                let world = failing.trailing_zeros() as usize;
                let mut model = FiniteModel::new(f.clone());
                model.props = c
                    .props
                    .iter()
                    .zip(&props)
                    .map(|(p, s)| (p.clone(), bits(*s).collect()))
                    .collect::<BTreeMap<_, _>>();
                model.noms = c.noms.iter().cloned().zip(noms.iter().copied()).collect();
                return Ok(ValidityReport {
                    holds: false,
                    countermodel: Some(model),
                    world: Some(world),
                    valuations: count,
                });
            }
            if !advance(&mut props, prop_limit) {
                break;
            }
        }
        if !advance_noms(&mut noms, n) {
            break;
        }
    }
    debug_assert_eq!(count as u128, needed);
    Ok(ValidityReport {
        holds: true,
        countermodel: None,
        world: None,
        valuations: count,
    })
}

fn advance(props: &mut [Set], limit: Set) -> bool {
    for p in props.iter_mut() {
        if *p == limit {
            *p = 0;
        } else {
            *p += 1;
            return true;
        }
    }
    false
}

fn advance_noms(noms: &mut [usize], n: usize) -> bool {
    for w in noms.iter_mut() {
        if *w + 1 == n {
            *w = 0;
        } else {
            *w += 1;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::OrderFrame;
    use crate::syntax::{builtin, parse};

    fn chain3() -> FiniteModel {
        FiniteModel::new(OrderFrame::chain(&[0, 1, 2]).to_betweenness())
            .with_nom("i", 0)
            .with_nom("j", 2)
            .with_nom("k", 1)
    }

    #[test]
    fn diamond_of_two_nominals() {
        let m = chain3();
        assert!(eval_finite(&m, &parse("<B>(i, j)").unwrap(), 1).unwrap());
        assert!(!eval_finite(&m, &parse("<B>(i, j)").unwrap(), 0).unwrap());
        assert!(eval_finite(&m, &Formula::Top, 2).unwrap());
    }

    #[test]
    fn satisfaction_reads_the_relation() {
        let m = chain3();
        for (a, b, c) in [("i", "j", "k"), ("j", "i", "k"), ("k", "i", "j"), ("k", "j", "i")] {
            let f = parse(&format!("@{a} <B>({b}, {c})")).unwrap();
            let expected = m.frame.has(m.noms[b], m.noms[a], m.noms[c]);
            for w in 0..3 {
                assert_eq!(eval_finite(&m, &f, w).unwrap(), expected, "{f} at {w}");
            }
        }
    }

    #[test]
    fn unbound_symbols_are_reported() {
        let m = chain3();
        assert_eq!(
            eval_finite(&m, &parse("p").unwrap(), 0),
            Err(FiniteError::UnboundProp("p".into()))
        );
        assert_eq!(
            eval_finite(&m, &parse("l").unwrap(), 0),
            Err(FiniteError::UnboundNominal("l".into()))
        );
        assert!(eval_finite(&m, &Formula::Top, 3).is_err());
    }

    #[test]
    fn single_reflexive_world_validates_outer_symmetry() {
        let f = Frame3::from_triples(1, [(0, 0, 0)]).unwrap();
        assert!(frame_valid_finite(&f, &builtin("HB2m").unwrap()).unwrap().holds);
    }

    #[test]
    fn one_sided_triple_breaks_outer_symmetry() {
        let f = Frame3::from_triples(3, [(0, 1, 2)]).unwrap();
        let r = frame_valid_finite(&f, &builtin("HB2m").unwrap()).unwrap();
        assert!(!r.holds);
        let m = r.countermodel.unwrap();
        assert_eq!(m.props["p"], BTreeSet::from([0]));
        assert_eq!(m.props["q"], BTreeSet::from([2]));
        assert_eq!(r.world, Some(1));
        assert!(!eval_finite(&m, &builtin("HB2m").unwrap(), 1).unwrap());
    }

    #[test]
    fn endpoints_falsify_the_serial_axiom() {
        let f = OrderFrame::chain(&[1, 0, 2]).to_betweenness();
        let r = frame_valid_finite(&f, &builtin("HB7").unwrap()).unwrap();
        assert_eq!(r.world, Some(1));
        assert_eq!(r.valuations, 1);
    }

    #[test]
    fn pure_formulas_skip_propositions() {
        let f = OrderFrame::chain(&[0, 1, 2, 3]).to_betweenness();
        let r = frame_valid_finite(&f, &builtin("HB4").unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!(r.valuations, 4u64.pow(4));
    }

    #[test]
    fn budget_guard() {
        let f = Frame3::new(6);
        let phi = parse("p & q & r & s -> p").unwrap();
        assert!(matches!(
            frame_valid_finite_with_budget(&f, &phi, 1000),
            Err(FiniteError::BudgetExceeded { budget: 1000, .. })
        ));
        assert_eq!(frame_valid_finite(&Frame3::new(0), &phi), Err(FiniteError::EmptyFrame));
        let big = Frame3::new(40);
        assert!(matches!(
            frame_valid_finite(&big, &parse("p | ~p").unwrap()),
            Err(FiniteError::BudgetExceeded { .. })
        ));
    }
}
