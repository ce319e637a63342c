use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::carrier::{Base, Carrier};
use super::surd::{Endpoint, Surd};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Point(Surd),
    /// The open interval `(l, u)`, `l < u`.
    Open(Endpoint, Endpoint),
}

impl Component {
    fn covers(&self, x: &Surd) -> bool {
        match self {
            Component::Point(p) => p == x,
            Component::Open(l, u) => {
                let e = Endpoint::Finite(x.clone());
                *l < e && e < *u
            }
        }
    }
}

/// A finite union of points and open intervals, read inside a carrier.
///
/// Values built through this module are canonical for their carrier:
/// components are sorted, disjoint and maximal, every point is a carrier
/// member, and over ℤ each run of consecutive integers `n..=m` is stored as
/// `{n}` or `(n-1, m+1)`. Two canonical sets over the same carrier are equal
/// as sets exactly when they are equal as values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearSet {
    comps: Vec<Component>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    In,
    Out,
    Void,
}

enum Cell {
    Point(Surd),
    Open(Endpoint, Endpoint),
}

type IntRange = (Option<BigInt>, Option<BigInt>);

fn int_surd(n: &BigInt) -> Surd {
    Surd::rational(BigRational::from_integer(n.clone()))
}

impl LinearSet {
    pub fn empty() -> LinearSet {
        LinearSet::default()
    }

    /// The whole carrier.
    pub fn full(c: &Carrier) -> LinearSet {
        LinearSet::sweep(c, Vec::new(), |_| true)
    }

    /// Canonical form of an arbitrary list of components.
    pub fn from_components(c: &Carrier, comps: Vec<Component>) -> LinearSet {
        let raw = LinearSet { comps };
        let bps = raw.breakpoints();
        LinearSet::sweep(c, bps, |x| raw.covers(x))
    }

    pub fn point(c: &Carrier, x: Surd) -> LinearSet {
        LinearSet::from_components(c, vec![Component::Point(x)])
    }

    pub fn open(c: &Carrier, l: Endpoint, u: Endpoint) -> LinearSet {
        if l >= u {
            return LinearSet::empty();
        }
        LinearSet::from_components(c, vec![Component::Open(l, u)])
    }

    pub fn components(&self) -> &[Component] {
        &self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// Geometric membership; meaningful for carrier members.
    pub fn covers(&self, x: &Surd) -> bool {
        self.comps.iter().any(|k| k.covers(x))
    }

    pub fn contains(&self, c: &Carrier, x: &Surd) -> bool {
        c.contains(x) && self.covers(x)
    }

    fn breakpoints(&self) -> Vec<Surd> {
        let mut out = Vec::new();
        for k in &self.comps {
            match k {
                Component::Point(p) => out.push(p.clone()),
                Component::Open(l, u) => {
                    out.extend(l.finite().cloned());
                    out.extend(u.finite().cloned());
                }
            }
        }
        out
    }

    /// Builds the canonical set `{x ∈ c : member(x)}` for a predicate that is
    /// constant on every cell cut out by `breakpoints`.
    fn sweep(c: &Carrier, mut bps: Vec<Surd>, member: impl Fn(&Surd) -> bool) -> LinearSet {
        bps.extend(c.breakpoints());
        bps.sort();
        bps.dedup();
        let mut cells = Vec::with_capacity(2 * bps.len() + 1);
        let mut lo = Endpoint::NegInf;
        for b in bps {
            let e = Endpoint::Finite(b.clone());
            cells.push(Cell::Open(lo, e.clone()));
            cells.push(Cell::Point(b));
            lo = e;
        }
        cells.push(Cell::Open(lo, Endpoint::PosInf));
        let status: Vec<Status> = cells
            .iter()
            .map(|cell| match cell {
                Cell::Point(x) if !c.contains(x) => Status::Void,
                Cell::Point(x) => {
                    if member(x) {
                        Status::In
                    } else {
                        Status::Out
                    }
                }
                Cell::Open(l, u) => {
                    if !c.meets_open(l, u) {
                        Status::Void
                    } else if member(&Endpoint::sample_between(l, u)) {
                        Status::In
                    } else {
                        Status::Out
                    }
                }
            })
            .collect();
        match c.base {
            Base::Z => LinearSet::emit_integer_runs(&cells, &status),
            Base::Q | Base::R => LinearSet::emit_runs(&cells, &status),
        }
    }

    fn emit_runs(cells: &[Cell], status: &[Status]) -> LinearSet {
        let mut comps = Vec::new();
        let mut run: Option<(usize, usize)> = None;
        let flush = |run: Option<(usize, usize)>, comps: &mut Vec<Component>| {
            let Some((first, last)) = run else { return };
            if first == last {
                if let Cell::Point(x) = &cells[first] {
                    comps.push(Component::Point(x.clone()));
                    return;
                }
            }
            let (lead, l) = match &cells[first] {
                Cell::Point(x) => (Some(x.clone()), Endpoint::Finite(x.clone())),
                Cell::Open(l, _) => (None, l.clone()),
            };
            let (trail, u) = match &cells[last] {
                Cell::Point(x) => (Some(x.clone()), Endpoint::Finite(x.clone())),
                Cell::Open(_, u) => (None, u.clone()),
            };
            comps.extend(lead.map(Component::Point));
            comps.push(Component::Open(l, u));
            comps.extend(trail.map(Component::Point));
        };
        for (i, s) in status.iter().enumerate() {
            match s {
                Status::In => {
                    run = Some(run.map_or((i, i), |(first, _)| (first, i)));
                }
                Status::Out => flush(run.take(), &mut comps),
                Status::Void => {}
            }
        }
        flush(run, &mut comps);
        LinearSet { comps }
    }

    fn emit_integer_runs(cells: &[Cell], status: &[Status]) -> LinearSet {
        let mut ranges: Vec<IntRange> = Vec::new();
        for (cell, s) in cells.iter().zip(status) {
            if *s != Status::In {
                continue;
            }
            let r: IntRange = match cell {
                Cell::Point(x) => {
                    let n = x.floor();
                    (Some(n.clone()), Some(n))
                }
                Cell::Open(l, u) => (l.finite().map(|x| x.floor() + 1), u.finite().map(|x| x.ceil() - 1)),
            };
            match ranges.last_mut() {
                Some(last) if matches!((&last.1, &r.0), (Some(hi), Some(lo)) if *lo == hi + 1) => last.1 = r.1,
                _ => ranges.push(r),
            }
        }
        let comps = ranges
            .into_iter()
            .map(|(lo, hi)| match (lo, hi) {
                (Some(a), Some(b)) if a == b => Component::Point(int_surd(&a)),
                (lo, hi) => Component::Open(
                    lo.map_or(Endpoint::NegInf, |a| Endpoint::Finite(int_surd(&(a - 1)))),
                    hi.map_or(Endpoint::PosInf, |b| Endpoint::Finite(int_surd(&(b + 1)))),
                ),
            })
            .collect();
        LinearSet { comps }
    }

    pub fn union(&self, c: &Carrier, other: &LinearSet) -> LinearSet {
        let mut bps = self.breakpoints();
        bps.extend(other.breakpoints());
        LinearSet::sweep(c, bps, |x| self.covers(x) || other.covers(x))
    }

    pub fn intersect(&self, c: &Carrier, other: &LinearSet) -> LinearSet {
        let mut bps = self.breakpoints();
        bps.extend(other.breakpoints());
        LinearSet::sweep(c, bps, |x| self.covers(x) && other.covers(x))
    }

    /// Complement relative to the carrier.
    pub fn complement(&self, c: &Carrier) -> LinearSet {
        LinearSet::sweep(c, self.breakpoints(), |x| !self.covers(x))
    }

    pub fn is_full(&self, c: &Carrier) -> bool {
        *self == LinearSet::full(c)
    }

    /// Greatest lower bound of the members, `None` when empty.
    pub fn inf(&self, c: &Carrier) -> Option<Endpoint> {
        Some(match self.comps.first()? {
            Component::Point(x) => Endpoint::Finite(x.clone()),
            Component::Open(Endpoint::Finite(l), _) if c.base == Base::Z => Endpoint::Finite(l.add_int(1)),
            Component::Open(l, _) => l.clone(),
        })
    }

    /// Least upper bound of the members, `None` when empty.
    pub fn sup(&self, c: &Carrier) -> Option<Endpoint> {
        Some(match self.comps.last()? {
            Component::Point(x) => Endpoint::Finite(x.clone()),
            Component::Open(_, Endpoint::Finite(u)) if c.base == Base::Z => Endpoint::Finite(u.add_int(-1)),
            Component::Open(_, u) => u.clone(),
        })
    }

    /// A canonical member: the first point, or a carrier member inside the
    /// first open component (its midpoint when that is a member).
    pub fn witness(&self, c: &Carrier) -> Option<Surd> {
        match self.comps.first()? {
            Component::Point(x) => Some(x.clone()),
            Component::Open(l, u) => c.member_between(l, u),
        }
    }

    /// Parses whitespace-separated components `{a, b}`, `(l,u)`, `[l,u]`,
    /// `[l,u)`, `(l,u]`; `{}` is the empty set.
    pub fn parse(c: &Carrier, text: &str) -> Result<LinearSet, String> {
        Ok(LinearSet::from_components(c, parse_components(text)?))
    }
}

/// Raw components of the set syntax, before canonicalization.
pub fn parse_components(text: &str) -> Result<Vec<Component>, String> {
    let mut comps = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.chars().next().unwrap_or(' ');
        let close_at = rest
            .find(['}', ')', ']'])
            .ok_or_else(|| format!("unterminated component in '{rest}'"))?;
        let close = rest[close_at..].chars().next().unwrap_or(' ');
        let inner = &rest[1..close_at];
        match (open, close) {
            ('{', '}') => {
                for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    comps.push(Component::Point(part.parse()?));
                }
            }
            ('(' | '[', ')' | ']') => {
                let (l, u) = inner
                    .split_once(',')
                    .ok_or_else(|| format!("expected 'l,u' in '{}'", &rest[..=close_at]))?;
                let l: Endpoint = l.parse()?;
                let u: Endpoint = u.parse()?;
                if l >= u {
                    return Err(format!("empty interval '{}'", &rest[..=close_at]));
                }
                for (closed, e, side) in [(open == '[', &l, "left"), (close == ']', &u, "right")] {
                    if closed {
                        let x = e
                            .finite()
                            .ok_or_else(|| format!("{side} end at infinity cannot be closed"))?;
                        comps.push(Component::Point(x.clone()));
                    }
                }
                comps.push(Component::Open(l, u));
            }
            _ => return Err(format!("malformed component '{}'", &rest[..=close_at])),
        }
        rest = rest[close_at + 1..].trim_start();
    }
    Ok(comps)
}

impl fmt::Display for LinearSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "{{}}");
        }
        for (n, k) in self.comps.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            match k {
                Component::Point(x) => write!(f, "{{{x}}}")?,
                Component::Open(l, u) => write!(f, "({l},{u})")?,
            }
        }
        Ok(())
    }
}

/// `{w : ∃x∈X ∃y∈Y (x < w < y ∨ y < w < x)}` inside the carrier, in closed form.
pub fn between_image(c: &Carrier, x: &LinearSet, y: &LinearSet) -> LinearSet {
    let (Some(ix), Some(sx), Some(iy), Some(sy)) = (x.inf(c), x.sup(c), y.inf(c), y.sup(c)) else {
        return LinearSet::empty();
    };
    let mut comps = Vec::new();
    if ix < sy {
        comps.push(Component::Open(ix, sy));
    }
    if iy < sx {
        comps.push(Component::Open(iy, sx));
    }
    LinearSet::from_components(c, comps)
}
