use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact number `a + b·√d` with rational `a`, `b` and square-free `d`.
///
/// Rationals are stored with `b = 0` and `d = 1`, so two surds are equal
/// exactly when their coefficients are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `sign(x + y·√d)` by rational arithmetic only.
fn sign_of(x: &BigRational, y: &BigRational, d: u64) -> Ordering {
    let sx = x.cmp(&BigRational::zero());
    let sy = y.cmp(&BigRational::zero());
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    let lhs = x * x;
    let rhs = y * y * BigRational::from_integer(BigInt::from(d));
    if sx == Ordering::Greater {
        lhs.cmp(&rhs)
    } else {
        rhs.cmp(&lhs)
    }
}

impl Surd {
    /// `a + b·√d`; `d` must be square-free (it is ignored when `b = 0`).
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Surd, String> {
        if b.is_zero() {
            return Ok(Surd::rational(a));
        }
        if !is_square_free(d) {
            return Err(format!("radicand {d} is not a square-free integer > 1"));
        }
        Ok(Surd { a, b, d })
    }

    pub fn rational(a: BigRational) -> Surd {
        Surd {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn int(n: i64) -> Surd {
        Surd::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, m: i64) -> Surd {
        Surd::rational(BigRational::new(BigInt::from(n), BigInt::from(m)))
    }

    /// `√d`.
    pub fn sqrt(d: u64) -> Surd {
        Surd::new(BigRational::zero(), BigRational::one(), d).expect("square-free radicand")
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    /// The radicand, or `None` for a rational.
    pub fn radicand(&self) -> Option<u64> {
        (!self.is_rational()).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    /// The value as a rational, if it is one.
    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    fn common_d(&self, other: &Surd) -> u64 {
        match (self.radicand(), other.radicand()) {
            (Some(x), Some(y)) if x != y => {
                panic!("surds over different radicands: sqrt {x} and sqrt {y}")
            }
            (Some(x), _) | (_, Some(x)) => x,
            (None, None) => 1,
        }
    }

    fn build(a: BigRational, b: BigRational, d: u64) -> Surd {
        if b.is_zero() {
            Surd::rational(a)
        } else {
            Surd { a, b, d }
        }
    }

    /// # Panics
    /// If both operands are irrational over different radicands.
    pub fn add(&self, other: &Surd) -> Surd {
        let d = self.common_d(other);
        Surd::build(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        let d = self.common_d(other);
        Surd::build(&self.a - &other.a, &self.b - &other.b, d)
    }

    pub fn scale(&self, k: &BigRational) -> Surd {
        Surd::build(&self.a * k, &self.b * k, self.d)
    }

    pub fn add_int(&self, n: i64) -> Surd {
        self.add(&Surd::int(n))
    }

    pub fn midpoint(&self, other: &Surd) -> Surd {
        self.add(other).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// `⌊self⌋`.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.a.floor().to_integer();
        }
        // ⌊√(b²d)⌋ from an integer square root, then exact correction
        let r = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        let root = (r.numer() * r.denom()).sqrt() / r.denom();
        let guess = if self.b.is_positive() { root } else { -root - 1 };
        let mut n = self.a.floor().to_integer() + guess;
        let as_surd = |n: &BigInt| Surd::rational(BigRational::from_integer(n.clone()));
        while as_surd(&n) > *self {
            n -= 1;
        }
        while as_surd(&(&n + 1)) <= *self {
            n += 1;
        }
        n
    }

    /// `⌈self⌉`.
    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        if self.is_integer() {
            f
        } else {
            f + 1
        }
    }
}

impl Ord for Surd {
    /// # Panics
    /// If both operands are irrational over different radicands.
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.common_d(other);
        sign_of(&(&self.a - &other.a), &(&self.b - &other.b), d)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let coeff = |b: &BigRational| {
            if b.is_one() {
                String::new()
            } else {
                format!("{b} ")
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{}sqrt {}", coeff(&-self.b.clone()), self.d)
            } else {
                write!(f, "{}sqrt {}", coeff(&self.b), self.d)
            }
        } else if self.b.is_negative() {
            write!(f, "{} - {}sqrt {}", self.a, coeff(&-self.b.clone()), self.d)
        } else {
            write!(f, "{} + {}sqrt {}", self.a, coeff(&self.b), self.d)
        }
    }
}

fn parse_rational(text: &str) -> Result<BigRational, String> {
    let text = text.trim();
    let bad = || format!("'{text}' is not a rational number");
    match text.split_once('/') {
        Some((n, m)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let m = BigInt::from_str(m.trim()).map_err(|_| bad())?;
            if m.is_zero() {
                return Err(format!("zero denominator in '{text}'"));
            }
            Ok(BigRational::new(n, m))
        }
        None => BigInt::from_str(text).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

impl FromStr for Surd {
    type Err = String;

    /// Accepts `p/q`, `sqrt d`, `r/s sqrt d` and `p/q ± r/s sqrt d`.
    fn from_str(text: &str) -> Result<Surd, String> {
        let text = text.trim();
        let Some(pos) = text.find("sqrt") else {
            return parse_rational(text).map(Surd::rational);
        };
        let d: u64 = text[pos + 4..]
            .trim()
            .parse()
            .map_err(|_| format!("bad radicand in '{text}'"))?;
        let head = text[..pos].trim_end();
        // split the rational part from the coefficient at the last binary sign
        let split = head
            .char_indices()
            .rev()
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .find(|&i| {
                let before = head[..i].trim_end();
                !before.is_empty() && !before.ends_with(['+', '-', '/'])
            });
        let (a, coeff) = match split {
            Some(i) => (parse_rational(&head[..i])?, &head[i..]),
            None => (BigRational::zero(), head),
        };
        let coeff: String = coeff.chars().filter(|c| !c.is_whitespace()).collect();
        let b = match coeff.as_str() {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        if b.is_zero() {
            return Err(format!("zero coefficient of sqrt in '{text}'"));
        }
        Surd::new(a, b, d)
    }
}

/// A point of the extended line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    NegInf,
    Finite(Surd),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Surd> {
        match self {
            Endpoint::Finite(s) => Some(s),
            _ => None,
        }
    }

    /// A canonical finite number strictly between `lo < hi`: the midpoint,
    /// or one unit inside an infinite end.
    pub fn sample_between(lo: &Endpoint, hi: &Endpoint) -> Surd {
        match (lo, hi) {
            (Endpoint::Finite(l), Endpoint::Finite(u)) => l.midpoint(u),
            (Endpoint::Finite(l), _) => l.add_int(1),
            (_, Endpoint::Finite(u)) => u.add_int(-1),
            _ => Surd::int(0),
        }
    }

    /// The least integer strictly between `lo` and `hi`, if any.
    pub fn integer_between(lo: &Endpoint, hi: &Endpoint) -> Option<BigInt> {
        let n = match lo {
            Endpoint::Finite(l) => l.floor() + 1,
            Endpoint::NegInf => match hi {
                Endpoint::Finite(u) => u.ceil() - 1,
                _ => BigInt::zero(),
            },
            Endpoint::PosInf => return None,
        };
        let e = Endpoint::Finite(Surd::rational(BigRational::from_integer(n.clone())));
        (e < *hi).then_some(n)
    }

    /// A rational strictly between `lo < hi`: the midpoint when it is rational,
    /// an integer next to a finite end of a half-line, otherwise the first
    /// dyadic point above `lo` that lies below `hi`.
    pub fn rational_between(lo: &Endpoint, hi: &Endpoint) -> BigRational {
        let mid = Endpoint::sample_between(lo, hi);
        if let Some(r) = mid.to_rational() {
            return r.clone();
        }
        let (Endpoint::Finite(l), Endpoint::Finite(u)) = (lo, hi) else {
            let n = match (lo, hi) {
                (Endpoint::Finite(l), _) => l.floor() + 1,
                (_, Endpoint::Finite(u)) => u.ceil() - 1,
                _ => BigInt::zero(),
            };
            return BigRational::from_integer(n);
        };
        let mut scale = BigInt::one();
        loop {
            let k = BigRational::from_integer(scale.clone());
            let cand = BigRational::new(l.scale(&k).floor() + 1, scale.clone());
            if Surd::rational(cand.clone()) < *u {
                return cand;
            }
            scale *= 2;
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => write!(f, "-inf"),
            Endpoint::PosInf => write!(f, "inf"),
            Endpoint::Finite(s) => write!(f, "{s}"),
        }
    }
}

impl FromStr for Endpoint {
    type Err = String;

    fn from_str(text: &str) -> Result<Endpoint, String> {
        match text.trim() {
            "inf" | "+inf" => Ok(Endpoint::PosInf),
            "-inf" => Ok(Endpoint::NegInf),
            other => other.parse().map(Endpoint::Finite),
        }
    }
}
