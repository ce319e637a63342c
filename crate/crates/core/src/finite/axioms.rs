use std::fmt;
use std::str::FromStr;

use super::{FiniteError, Frame3};

/// Result of checking a universally quantified sentence; `witness` assigns
/// the universal variables of the first violation in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl CheckReport {
    pub fn pass() -> CheckReport {
        CheckReport {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Vec<usize>) -> CheckReport {
        CheckReport {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// First-order conditions on betweenness frames.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    /// `B(x,y,z) → x,y,z pairwise distinct`
    B1,
    /// `B(x,y,z) → B(z,y,x)`
    B2,
    /// `B(x,y,z) → ¬B(x,z,y)`
    B3,
    /// `B(x,y,z) ∧ B(y,z,u) → B(x,y,u)`
    B4,
    /// `B(x,y,z) ∧ B(y,u,z) → B(x,y,u)`
    B5,
    /// distinct `x,y,z` → `B(x,y,z) ∨ B(x,z,y) ∨ B(y,x,z)`
    B6,
    /// `∀y ∃x,z B(x,y,z)`
    B7,
    /// `x ≠ z → ∃y B(x,y,z)`
    B8,
    /// `B(x,y,z) ∧ B(y,z,u) → B(x,z,u)`
    B4p,
    /// `B(x,y,z) ∧ B(y,u,z) → B(x,u,z)`
    B5p,
    /// distinct `x,y,z` → some permutation of them is in `B`
    B6six,
    /// `B(x,y,z) ∧ B(x,u,y) → B(x,u,z) ∧ B(u,y,z)`
    B5m,
    /// `B(a,x,y) ∧ B(a,x,w) → y = w ∨ B(x,w,y) ∨ B(x,y,w)`
    Proj1,
    /// `B(a,u,y) ∧ B(a,w,y) → u = w ∨ B(a,u,w) ∨ B(a,w,u)`
    Proj2,
    /// `w ≠ x → ∃u B(x,w,u) ∧ ∃v B(v,x,w)`
    Side,
    /// `B(x,a,y) ∧ B(x,b,y) ∧ B(a,u,b) → B(x,u,y)`
    DSound,
    /// `B(y,x,z) ∧ B(y0,y,y1) ∧ B(z0,z,z1)` → `x` lies between one of
    /// `y0, y1` and one of `z0, z1`
    Ccp,
}

pub const AXIOM_IDS: &[AxiomId] = &[
    AxiomId::B1,
    AxiomId::B2,
    AxiomId::B3,
    AxiomId::B4,
    AxiomId::B5,
    AxiomId::B6,
    AxiomId::B7,
    AxiomId::B8,
    AxiomId::B4p,
    AxiomId::B5p,
    AxiomId::B6six,
    AxiomId::B5m,
    AxiomId::Proj1,
    AxiomId::Proj2,
    AxiomId::Side,
    AxiomId::DSound,
    AxiomId::Ccp,
];

impl AxiomId {
    pub fn name(self) -> &'static str {
        use AxiomId::*;
        match self {
            B1 => "B1",
            B2 => "B2",
            B3 => "B3",
            B4 => "B4",
            B5 => "B5",
            B6 => "B6",
            B7 => "B7",
            B8 => "B8",
            B4p => "B4p",
            B5p => "B5p",
            B6six => "B6six",
            B5m => "B5m",
            Proj1 => "proj1",
            Proj2 => "proj2",
            Side => "side",
            DSound => "dsound",
            Ccp => "ccp",
        }
    }

    /// Names of the universally quantified variables, in quantifier order.
    pub fn variables(self) -> &'static [&'static str] {
        self.shape().vars
    }

    fn shape(self) -> Shape {
        use Atom::{Neq, B as Bt};
        use AxiomId::*;
        match self {
            B1 => Shape::new(&["x", "y", "z"], &[Bt(0, 1, 2)], |_, v| distinct(v[0], v[1], v[2])),
            B2 => Shape::new(&["x", "y", "z"], &[Bt(0, 1, 2)], |f, v| f.has(v[2], v[1], v[0])),
            B3 => Shape::new(&["x", "y", "z"], &[Bt(0, 1, 2)], |f, v| !f.has(v[0], v[2], v[1])),
            B4 => Shape::new(&["x", "y", "z", "u"], &[Bt(0, 1, 2), Bt(1, 2, 3)], |f, v| {
                f.has(v[0], v[1], v[3])
            }),
            B5 => Shape::new(&["x", "y", "z", "u"], &[Bt(0, 1, 2), Bt(1, 3, 2)], |f, v| {
                f.has(v[0], v[1], v[3])
            }),
            B6 => Shape::new(&["x", "y", "z"], &[Neq(0, 1), Neq(0, 2), Neq(1, 2)], |f, v| {
                let (x, y, z) = (v[0], v[1], v[2]);
                f.has(x, y, z) || f.has(x, z, y) || f.has(y, x, z)
            }),
            B7 => Shape::new(&["y"], &[], |f, v| {
                let n = f.worlds();
                (0..n).any(|x| (0..n).any(|z| f.has(x, v[0], z)))
            }),
            B8 => Shape::new(&["x", "z"], &[Neq(0, 1)], |f, v| {
                (0..f.worlds()).any(|y| f.has(v[0], y, v[1]))
            }),
            B4p => Shape::new(&["x", "y", "z", "u"], &[Bt(0, 1, 2), Bt(1, 2, 3)], |f, v| {
                f.has(v[0], v[2], v[3])
            }),
            B5p => Shape::new(&["x", "y", "z", "u"], &[Bt(0, 1, 2), Bt(1, 3, 2)], |f, v| {
                f.has(v[0], v[3], v[2])
            }),
            B6six => Shape::new(&["x", "y", "z"], &[Neq(0, 1), Neq(0, 2), Neq(1, 2)], |f, v| {
                let (x, y, z) = (v[0], v[1], v[2]);
                f.has(x, y, z) || f.has(x, z, y) || f.has(y, x, z) || f.has(y, z, x) || f.has(z, x, y) || f.has(z, y, x)
            }),
            B5m => Shape::new(&["x", "y", "z", "u"], &[Bt(0, 1, 2), Bt(0, 3, 1)], |f, v| {
                f.has(v[0], v[3], v[2]) && f.has(v[3], v[1], v[2])
            }),
            Proj1 => Shape::new(&["a", "x", "y", "w"], &[Bt(0, 1, 2), Bt(0, 1, 3)], |f, v| {
                let (x, y, w) = (v[1], v[2], v[3]);
                y == w || f.has(x, w, y) || f.has(x, y, w)
            }),
            Proj2 => Shape::new(&["a", "u", "y", "w"], &[Bt(0, 1, 2), Bt(0, 3, 2)], |f, v| {
                let (a, u, w) = (v[0], v[1], v[3]);
                u == w || f.has(a, u, w) || f.has(a, w, u)
            }),
            Side => Shape::new(&["x", "w"], &[Neq(0, 1)], |f, v| {
                let (x, w) = (v[0], v[1]);
                let n = f.worlds();
                (0..n).any(|u| f.has(x, w, u)) && (0..n).any(|u| f.has(u, x, w))
            }),
            DSound => Shape::new(
                &["x", "a", "y", "b", "u"],
                &[Bt(0, 1, 2), Bt(0, 3, 2), Bt(1, 4, 3)],
                |f, v| f.has(v[0], v[4], v[2]),
            ),
            Ccp => Shape::new(
                &["y", "x", "z", "y0", "y1", "z0", "z1"],
                &[Bt(0, 1, 2), Bt(3, 0, 4), Bt(5, 2, 6)],
                |f, v| {
                    let (x, y0, y1, z0, z1) = (v[1], v[3], v[4], v[5], v[6]);
                    f.has(y0, x, z0) || f.has(y0, x, z1) || f.has(y1, x, z0) || f.has(y1, x, z1)
                },
            ),
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = FiniteError;

    fn from_str(s: &str) -> Result<AxiomId, FiniteError> {
        let s = s.trim();
        AXIOM_IDS
            .iter()
            .copied()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FiniteError::UnknownAxiom(s.to_string()))
    }
}

fn distinct(x: usize, y: usize, z: usize) -> bool {
    x != y && y != z && x != z
}

#[derive(Clone, Copy)]
enum Atom {
    B(usize, usize, usize),
    Neq(usize, usize),
}

impl Atom {
    fn last_var(self) -> usize {
        match self {
            Atom::B(a, b, c) => a.max(b).max(c),
            Atom::Neq(a, b) => a.max(b),
        }
    }

    fn holds(self, f: &Frame3, v: &[usize]) -> bool {
        match self {
            Atom::B(a, b, c) => f.has(v[a], v[b], v[c]),
            Atom::Neq(a, b) => v[a] != v[b],
        }
    }
}

/// `∀ vars (premises → conclusion)`.
struct Shape {
    vars: &'static [&'static str],
    premises: &'static [Atom],
    conclusion: fn(&Frame3, &[usize]) -> bool,
}

impl Shape {
    fn new(
        vars: &'static [&'static str],
        premises: &'static [Atom],
        conclusion: fn(&Frame3, &[usize]) -> bool,
    ) -> Shape {
        Shape {
            vars,
            premises,
            conclusion,
        }
    }

    /// Depth-first over assignments in lexicographic order, abandoning a
    /// prefix as soon as a premise over its variables is false.
    fn first_violation(&self, f: &Frame3) -> Option<Vec<usize>> {
        let mut by_level: Vec<Vec<Atom>> = vec![Vec::new(); self.vars.len()];
        for a in self.premises {
            by_level[a.last_var()].push(*a);
        }
        let mut v = vec![0; self.vars.len()];
        if self.search(f, &by_level, &mut v, 0) {
            Some(v)
        } else {
            None
        }
    }

    fn search(&self, f: &Frame3, by_level: &[Vec<Atom>], v: &mut Vec<usize>, level: usize) -> bool {
        if level == v.len() {
            return !(self.conclusion)(f, v);
        }
        for w in 0..f.worlds() {
            v[level] = w;
            if by_level[level].iter().all(|a| a.holds(f, v)) && self.search(f, by_level, v, level + 1) {
                return true;
            }
        }
        false
    }
}

/// Evaluates the closed sentence `axiom` on `f` by exhaustive quantification.
pub fn check_axiom(f: &Frame3, axiom: AxiomId) -> CheckReport {
    match axiom.shape().first_violation(f) {
        Some(w) => CheckReport::fail(w),
        None => CheckReport::pass(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::OrderFrame;

    fn frame(n: usize, triples: &[(usize, usize, usize)]) -> Frame3 {
        Frame3::from_triples(n, triples.iter().copied()).unwrap()
    }

    #[test]
    fn degenerate_triples_fail_strictness() {
        let f = frame(2, &[(0, 0, 1), (1, 1, 0)]);
        assert_eq!(check_axiom(&f, AxiomId::B1), CheckReport::fail(vec![0, 0, 1]));
    }

    #[test]
    fn proper_triples_are_strict() {
        let mut triples = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    if distinct(x, y, z) {
                        triples.push((x, y, z));
                    }
                }
            }
        }
        assert!(check_axiom(&frame(3, &triples), AxiomId::B1).holds);
    }

    #[test]
    fn empty_relation_is_symmetric() {
        assert!(check_axiom(&Frame3::new(1), AxiomId::B2).holds);
        assert_eq!(check_axiom(&Frame3::new(1), AxiomId::B7), CheckReport::fail(vec![0]));
        assert!(check_axiom(&Frame3::new(1), AxiomId::B8).holds);
    }

    #[test]
    fn chains_satisfy_the_universal_axioms() {
        let f = OrderFrame::chain(&[2, 0, 3, 1, 4]).to_betweenness();
        use AxiomId::*;
        for a in [B1, B2, B3, B4, B5, B6, B4p, B5p, B6six, B5m, Proj1, Proj2, DSound, Ccp] {
            assert!(check_axiom(&f, a).holds, "{a}");
        }
        // the ends of a finite chain are never between
        assert_eq!(check_axiom(&f, B7), CheckReport::fail(vec![2]));
        assert_eq!(check_axiom(&f, Side), CheckReport::fail(vec![0, 2]));
        // adjacent elements have nothing between them
        assert_eq!(check_axiom(&f, B8), CheckReport::fail(vec![0, 2]));
    }

    #[test]
    fn witnesses_are_genuine_violations() {
        let f = frame(4, &[(0, 1, 2), (1, 2, 3), (0, 1, 3)]);
        assert!(check_axiom(&f, AxiomId::B4).holds);
        let r = check_axiom(&f, AxiomId::B4p);
        assert_eq!(r.witness, Some(vec![0, 1, 2, 3]));
        assert!(!f.has(0, 2, 3));
    }

    #[test]
    fn names_round_trip() {
        for a in AXIOM_IDS {
            assert_eq!(a.name().parse::<AxiomId>().unwrap(), *a);
        }
        assert!(matches!("B9".parse::<AxiomId>(), Err(FiniteError::UnknownAxiom(_))));
    }
}
