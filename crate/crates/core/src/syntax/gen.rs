use rand::Rng;

use super::Formula;

/// Seeded random formula generator over a fixed symbol set.
#[derive(Clone, Debug)]
pub struct FormulaGen {
    props: Vec<String>,
    noms: Vec<String>,
    max_depth: usize,
    global: bool,
    derived: bool,
}

impl FormulaGen {
    pub fn new(props: &[&str], noms: &[&str]) -> Self {
        FormulaGen {
            props: props.iter().map(|s| s.to_string()).collect(),
            noms: noms.iter().map(|s| s.to_string()).collect(),
            max_depth: 4,
            global: true,
            derived: true,
        }
    }

    pub fn max_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth.max(1);
        self
    }

    /// Whether `E` and `A` may appear.
    pub fn global(mut self, on: bool) -> Self {
        self.global = on;
        self
    }

    /// Whether `C`, `[B]` and `A` may appear.
    pub fn derived(mut self, on: bool) -> Self {
        self.derived = on;
        self
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        self.gen(rng, self.max_depth)
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        let total = 2 + self.props.len() + self.noms.len();
        let k = rng.gen_range(0..total);
        if k == 0 {
            Formula::Top
        } else if k == 1 {
            Formula::Bottom
        } else if k - 2 < self.props.len() {
            Formula::Prop(self.props[k - 2].clone())
        } else {
            Formula::Nominal(self.noms[k - 2 - self.props.len()].clone())
        }
    }

    fn gen<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Formula {
        if depth <= 1 || rng.gen_ratio(1, 4) {
            return self.leaf(rng);
        }
        let d = depth - 1;
        loop {
            let f = match rng.gen_range(0..14) {
                0 => Formula::not(self.gen(rng, d)),
                1 => Formula::and(self.gen(rng, d), self.gen(rng, d)),
                2 => Formula::or(self.gen(rng, d), self.gen(rng, d)),
                3 => Formula::implies(self.gen(rng, d), self.gen(rng, d)),
                4 => Formula::iff(self.gen(rng, d), self.gen(rng, d)),
                5 | 6 => Formula::diamond(self.gen(rng, d), self.gen(rng, d)),
                7 if self.derived => Formula::boxb(self.gen(rng, d), self.gen(rng, d)),
                8 if !self.noms.is_empty() => {
                    let i = &self.noms[rng.gen_range(0..self.noms.len())];
                    Formula::at(i, self.gen(rng, d))
                }
                9 if self.global => Formula::exists(self.gen(rng, d)),
                10 if self.global && self.derived => Formula::all(self.gen(rng, d)),
                11 | 12 if self.derived => Formula::conv(self.gen(rng, d)),
                13 => self.leaf(rng),
                _ => continue,
            };
            return f;
        }
    }
}
