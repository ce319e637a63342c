use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteError, MAX_WORLDS};
use crate::syntax::Sort;

/// A finite ternary frame on worlds `0..n`; `B(x, y, z)` reads "y lies between x and z".
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame3 {
    n: usize,
    rel: Vec<bool>,
}

impl Frame3 {
    pub fn new(n: usize) -> Frame3 {
        Frame3 {
            n,
            rel: vec![false; n * n * n],
        }
    }

    pub fn from_triples<I>(n: usize, triples: I) -> Result<Frame3, FiniteError>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let mut f = Frame3::new(n);
        for (x, y, z) in triples {
            for w in [x, y, z] {
                if w >= n {
                    return Err(FiniteError::WorldOutOfRange { world: w, n });
                }
            }
            f.insert(x, y, z);
        }
        Ok(f)
    }

    /// The frame whose triples are the set bits of `bits`, triples numbered
    /// lexicographically.
    pub fn from_bits(n: usize, bits: u64) -> Frame3 {
        let mut f = Frame3::new(n);
        for k in 0..(n * n * n).min(64) {
            f.rel[k] = bits >> k & 1 == 1;
        }
        f
    }

    pub fn worlds(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, x: usize, y: usize, z: usize) -> usize {
        (x * self.n + y) * self.n + z
    }

    #[inline]
    pub fn has(&self, x: usize, y: usize, z: usize) -> bool {
        self.rel[self.idx(x, y, z)]
    }

    pub fn insert(&mut self, x: usize, y: usize, z: usize) {
        let k = self.idx(x, y, z);
        self.rel[k] = true;
    }

    /// All triples in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.n;
        self.rel
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(move |(k, _)| (k / (n * n), k / n % n, k % n))
    }

    pub fn triple_count(&self) -> usize {
        self.rel.iter().filter(|b| **b).count()
    }

    /// Each of the `n³` triples independently with probability `density`.
    pub fn random(n: usize, density: Ratio<u32>, seed: u64) -> Frame3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Frame3::random_with(n, density, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(n: usize, density: Ratio<u32>, rng: &mut R) -> Frame3 {
        let (num, den) = (*density.numer(), *density.denom());
        assert!(num <= den, "density must lie in [0, 1]");
        let mut f = Frame3::new(n);
        for b in f.rel.iter_mut() {
            *b = rng.gen_ratio(num, den);
        }
        f
    }

    /// Reads `worlds N` and `B x y z` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Frame3, FiniteError> {
        Ok(FiniteModel::parse(text)?.frame)
    }
}

impl fmt::Debug for Frame3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Frame3")
            .field("worlds", &self.n)
            .field("triples", &self.triples().collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for Frame3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "worlds {}", self.n)?;
        for (x, y, z) in self.triples() {
            writeln!(f, "B {x} {y} {z}")?;
        }
        Ok(())
    }
}

/// A frame together with a valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModel {
    pub frame: Frame3,
    pub props: BTreeMap<String, BTreeSet<usize>>,
    pub noms: BTreeMap<String, usize>,
}

fn syntax(line: usize, message: impl Into<String>) -> FiniteError {
    FiniteError::Syntax {
        line,
        message: message.into(),
    }
}

impl FiniteModel {
    pub fn new(frame: Frame3) -> FiniteModel {
        FiniteModel {
            frame,
            props: BTreeMap::new(),
            noms: BTreeMap::new(),
        }
    }

    pub fn with_prop<I: IntoIterator<Item = usize>>(mut self, p: &str, worlds: I) -> FiniteModel {
        self.props.insert(p.to_string(), worlds.into_iter().collect());
        self
    }

    pub fn with_nom(mut self, i: &str, w: usize) -> FiniteModel {
        self.noms.insert(i.to_string(), w);
        self
    }

    /// Reads the model file format: a frame file plus `V p: w1 w2 ...` and
    /// `V i: w` lines, in any order.
    pub fn parse(text: &str) -> Result<FiniteModel, FiniteError> {
        let mut n: Option<(usize, usize)> = None;
        let mut triples = Vec::new();
        let mut vals: Vec<(usize, String, Vec<usize>)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut words = content.split_whitespace();
            let number = |w: Option<&str>| -> Result<usize, FiniteError> {
                let w = w.ok_or_else(|| syntax(line, "missing world number"))?;
                w.parse()
                    .map_err(|_| syntax(line, format!("'{w}' is not a world number")))
            };
            match words.next() {
                Some("worlds") => {
                    if n.is_some() {
                        return Err(syntax(line, "'worlds' declared twice"));
                    }
                    let worlds = number(words.next())?;
                    if worlds > MAX_WORLDS {
                        return Err(FiniteError::TooManyWorlds {
                            n: worlds,
                            max: MAX_WORLDS,
                        });
                    }
                    n = Some((worlds, line));
                }
                Some("B") => {
                    let t = (number(words.next())?, number(words.next())?, number(words.next())?);
                    triples.push((line, t));
                }
                Some("V") => {
                    let rest = content[1..].trim();
                    let (name, worlds) = rest
                        .split_once(':')
                        .ok_or_else(|| syntax(line, "expected 'V name: worlds'"))?;
                    let ws = worlds
                        .split_whitespace()
                        .map(|w| number(Some(w)))
                        .collect::<Result<Vec<_>, _>>()?;
                    vals.push((line, name.trim().to_string(), ws));
                    continue;
                }
                Some(other) => return Err(syntax(line, format!("unknown directive '{other}'"))),
                None => continue,
            }
            if words.next().is_some() {
                return Err(syntax(line, "trailing input"));
            }
        }
        let (n, _) = n.ok_or_else(|| syntax(1, "missing 'worlds N' line"))?;
        let mut frame = Frame3::new(n);
        for (line, (x, y, z)) in triples {
            if x.max(y).max(z) >= n {
                return Err(syntax(line, format!("world out of range (frame has {n} worlds)")));
            }
            frame.insert(x, y, z);
        }
        let mut m = FiniteModel::new(frame);
        for (line, name, ws) in vals {
            if let Some(w) = ws.iter().find(|w| **w >= n) {
                return Err(syntax(line, format!("world {w} out of range (frame has {n} worlds)")));
            }
            if m.props.contains_key(&name) || m.noms.contains_key(&name) {
                return Err(syntax(line, format!("'{name}' assigned twice")));
            }
            match Sort::of(&name) {
                Some(Sort::Prop) => {
                    m.props.insert(name, ws.into_iter().collect());
                }
                Some(Sort::Nominal) => {
                    let [w] = ws[..] else {
                        return Err(syntax(line, format!("nominal '{name}' needs exactly one world")));
                    };
                    m.noms.insert(name, w);
                }
                None => return Err(syntax(line, format!("'{name}' is not a symbol"))),
            }
        }
        Ok(m)
    }
}

impl fmt::Display for FiniteModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.frame)?;
        for (p, ws) in &self.props {
            write!(f, "V {p}:")?;
            for w in ws {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        for (i, w) in &self.noms {
            writeln!(f, "V {i}: {w}")?;
        }
        Ok(())
    }
}

/// A finite binary frame `x < y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderFrame {
    n: usize,
    lt: Vec<bool>,
}

impl OrderFrame {
    pub fn new(n: usize) -> OrderFrame {
        OrderFrame {
            n,
            lt: vec![false; n * n],
        }
    }

    /// The strict linear order listing `chain` from least to greatest.
    pub fn chain(chain: &[usize]) -> OrderFrame {
        let n = chain.iter().map(|w| w + 1).max().unwrap_or(0);
        let mut o = OrderFrame::new(n);
        for (k, &a) in chain.iter().enumerate() {
            for &b in &chain[k + 1..] {
                o.insert(a, b);
            }
        }
        o
    }

    pub fn worlds(&self) -> usize {
        self.n
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.lt[x * self.n + y]
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.lt[x * self.n + y] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n * n).filter(|k| self.lt[*k]).map(move |k| (k / n, k % n))
    }

    /// Worlds listed by the number of their predecessors; meaningful for
    /// linear orders.
    pub fn listing(&self) -> Vec<usize> {
        let mut ws: Vec<usize> = (0..self.n).collect();
        ws.sort_by_key(|&w| (0..self.n).filter(|&v| self.less(v, w)).count());
        ws
    }

    /// The induced strict betweenness: `B(x, y, z)` iff `x < y < z` or `z < y < x`.
    pub fn to_betweenness(&self) -> Frame3 {
        let n = self.n;
        let mut f = Frame3::new(n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if (self.less(x, y) && self.less(y, z)) || (self.less(z, y) && self.less(y, x)) {
                        f.insert(x, y, z);
                    }
                }
            }
        }
        f
    }
}

pub fn order_to_betweenness(o: &OrderFrame) -> Frame3 {
    o.to_betweenness()
}
