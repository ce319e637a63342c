use std::fmt;
use std::str::FromStr;

use super::surd::{Endpoint, Surd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Z,
    Q,
    R,
}

/// One end of a bounded carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bound {
    pub value: Surd,
    pub closed: bool,
}

/// The ordered universe of a dense model: ℤ, ℚ or ℝ, optionally cut down to an interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Carrier {
    pub base: Base,
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
}

impl Carrier {
    pub fn new(base: Base) -> Carrier {
        Carrier {
            base,
            lower: None,
            upper: None,
        }
    }

    pub fn integers() -> Carrier {
        Carrier::new(Base::Z)
    }

    pub fn rationals() -> Carrier {
        Carrier::new(Base::Q)
    }

    pub fn reals() -> Carrier {
        Carrier::new(Base::R)
    }

    pub fn bounded(base: Base, lower: Bound, upper: Bound) -> Carrier {
        Carrier {
            base,
            lower: Some(lower),
            upper: Some(upper),
        }
    }

    /// `base ∩ [lo, hi]`.
    pub fn closed(base: Base, lo: Surd, hi: Surd) -> Carrier {
        Carrier::bounded(
            base,
            Bound {
                value: lo,
                closed: true,
            },
            Bound {
                value: hi,
                closed: true,
            },
        )
    }

    pub fn in_base(&self, x: &Surd) -> bool {
        match self.base {
            Base::Z => x.is_integer(),
            Base::Q => x.is_rational(),
            Base::R => true,
        }
    }

    fn within_bounds(&self, x: &Surd) -> bool {
        let above = match &self.lower {
            None => true,
            Some(b) if b.closed => *x >= b.value,
            Some(b) => *x > b.value,
        };
        let below = match &self.upper {
            None => true,
            Some(b) if b.closed => *x <= b.value,
            Some(b) => *x < b.value,
        };
        above && below
    }

    pub fn contains(&self, x: &Surd) -> bool {
        self.in_base(x) && self.within_bounds(x)
    }

    /// Whether the open interval `(lo, hi)` meets the carrier.
    pub fn meets_open(&self, lo: &Endpoint, hi: &Endpoint) -> bool {
        self.member_between(lo, hi).is_some()
    }

    /// Finite bound values, for cell decompositions.
    pub fn breakpoints(&self) -> Vec<Surd> {
        self.lower
            .iter()
            .chain(self.upper.iter())
            .map(|b| b.value.clone())
            .collect()
    }

    /// A carrier member strictly inside `(lo, hi)`, chosen canonically:
    /// a closed lower bound if it qualifies, else a point of the clipped interior.
    pub fn member_between(&self, lo: &Endpoint, hi: &Endpoint) -> Option<Surd> {
        let inside = |v: &Surd| {
            let e = Endpoint::Finite(v.clone());
            *lo < e && e < *hi && self.in_base(v)
        };
        if let Some(b) = self.lower.as_ref().filter(|b| b.closed && inside(&b.value)) {
            return Some(b.value.clone());
        }
        let mut l = lo.clone();
        if let Some(b) = &self.lower {
            l = l.max(Endpoint::Finite(b.value.clone()));
        }
        let mut h = hi.clone();
        if let Some(b) = &self.upper {
            h = h.min(Endpoint::Finite(b.value.clone()));
        }
        if l < h {
            let interior = match self.base {
                Base::Z => Endpoint::integer_between(&l, &h).map(|n| Surd::rational(n.into())),
                Base::Q => Some(Surd::rational(Endpoint::rational_between(&l, &h))),
                Base::R => Some(Endpoint::sample_between(&l, &h)),
            };
            if interior.is_some() {
                return interior;
            }
        }
        self.upper
            .as_ref()
            .filter(|b| b.closed && inside(&b.value))
            .map(|b| b.value.clone())
    }

    /// Whether the carrier is a finite set of integers.
    pub fn is_finite(&self) -> bool {
        self.base == Base::Z && self.lower.is_some() && self.upper.is_some()
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            Base::Z => "Z",
            Base::Q => "Q",
            Base::R => "R",
        };
        write!(f, "{base}")?;
        if self.lower.is_none() && self.upper.is_none() {
            return Ok(());
        }
        let (open, lo) = match &self.lower {
            Some(b) => (if b.closed { '[' } else { '(' }, b.value.to_string()),
            None => ('(', "-inf".to_string()),
        };
        let (close, hi) = match &self.upper {
            Some(b) => (if b.closed { ']' } else { ')' }, b.value.to_string()),
            None => (')', "inf".to_string()),
        };
        write!(f, " {open}{lo},{hi}{close}")
    }
}

impl FromStr for Carrier {
    type Err = String;

    /// `Z`, `Q`, `R`, optionally followed by an interval such as `[0,1]` or `(0,inf)`.
    fn from_str(text: &str) -> Result<Carrier, String> {
        let text = text.trim();
        let (base, rest) = text.split_at(text.find(|c: char| !c.is_alphanumeric()).unwrap_or(text.len()));
        let base = match base {
            "Z" => Base::Z,
            "Q" => Base::Q,
            "R" => Base::R,
            other => return Err(format!("unknown carrier '{other}' (expected Z, Q or R)")),
        };
        let rest = rest.trim();
        if rest.is_empty() {
            return Ok(Carrier::new(base));
        }
        let lo_closed = match rest.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(format!("expected '[' or '(' in carrier bounds '{rest}'")),
        };
        let hi_closed = match rest.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(format!("expected ']' or ')' in carrier bounds '{rest}'")),
        };
        let inner = &rest[1..rest.len() - 1];
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected 'lo,hi' in carrier bounds '{rest}'"))?;
        let lo: Endpoint = lo.parse()?;
        let hi: Endpoint = hi.parse()?;
        if lo >= hi {
            return Err(format!("empty carrier interval '{rest}'"));
        }
        let bound = |e: Endpoint, closed: bool, side: &str| -> Result<Option<Bound>, String> {
            match e {
                Endpoint::Finite(value) => Ok(Some(Bound { value, closed })),
                _ if closed => Err(format!("{side} bound at infinity cannot be closed")),
                _ => Ok(None),
            }
        };
        Ok(Carrier {
            base,
            lower: bound(lo, lo_closed, "lower")?,
            upper: bound(hi, hi_closed, "upper")?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership() {
        let q01: Carrier = "Q [0,1]".parse().unwrap();
        assert!(q01.contains(&Surd::int(0)));
        assert!(q01.contains(&Surd::ratio(1, 2)));
        assert!(!q01.contains(&Surd::int(2)));
        assert!(!q01.contains(&"-1 + sqrt 2".parse().unwrap()));
        let z: Carrier = "Z".parse().unwrap();
        assert!(z.contains(&Surd::int(-7)));
        assert!(!z.contains(&Surd::ratio(1, 2)));
        assert!(Carrier::reals().contains(&Surd::sqrt(2)));
    }

    #[test]
    fn open_cells() {
        let z = Carrier::integers();
        let f = |x: i64| Endpoint::Finite(Surd::int(x));
        assert!(!z.meets_open(&f(0), &f(1)));
        assert!(z.meets_open(&f(0), &f(2)));
        let q01: Carrier = "Q (0,1]".parse().unwrap();
        assert!(!q01.meets_open(&f(1), &f(3)));
        assert!(q01.meets_open(&f(-3), &f(3)));
        assert_eq!(q01.member_between(&f(-3), &f(3)), Some(Surd::ratio(1, 2)));
        let q01c: Carrier = "Q [0,1]".parse().unwrap();
        assert_eq!(q01c.member_between(&f(-3), &f(3)), Some(Surd::int(0)));
        assert_eq!(q01c.member_between(&f(0), &f(3)), Some(Surd::ratio(1, 2)));
    }

    #[test]
    fn display_round_trip() {
        for text in ["Z", "Q [0,1]", "R (-inf,sqrt 2)", "Z [-8,8]", "Q (0,1]"] {
            let c: Carrier = text.parse().unwrap();
            assert_eq!(c.to_string(), text);
        }
        assert!("N".parse::<Carrier>().is_err());
        assert!("Q [1,0]".parse::<Carrier>().is_err());
        assert!("Q [-inf,0]".parse::<Carrier>().is_err());
    }
}
