use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::carrier::{Base, Carrier};
use super::linear_set::{Component, LinearSet};
use super::model::{DenseError, DenseModel};
use super::surd::{Endpoint, Surd};
use crate::syntax::Formula;

/// A falsifying model found by [`search_countermodel`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub trial: u64,
    pub model: DenseModel,
    pub witness: Surd,
}

/// Generator of representable valuations on a bounded lattice of numbers.
///
/// Numbers are halves in a window around the carrier (integers on ℤ); on ℝ
/// a third of them are shifted by `±√2`.
#[derive(Clone, Debug)]
pub struct ValuationGen {
    carrier: Carrier,
    lo: i64,
    hi: i64,
    max_components: usize,
}

impl ValuationGen {
    pub fn new(carrier: &Carrier) -> ValuationGen {
        let clamp = |s: &Surd, default: i64| s.floor().to_i64().unwrap_or(default).clamp(-1000, 1000);
        let lo = carrier.lower.as_ref().map_or(-6, |b| clamp(&b.value, -6) - 1);
        let hi = carrier.upper.as_ref().map_or(6, |b| clamp(&b.value, 6) + 2);
        ValuationGen {
            carrier: carrier.clone(),
            lo,
            hi: hi.max(lo + 2),
            max_components: 3,
        }
    }

    pub fn max_components(mut self, k: usize) -> ValuationGen {
        self.max_components = k;
        self
    }

    pub fn number<R: Rng + ?Sized>(&self, rng: &mut R) -> Surd {
        match self.carrier.base {
            Base::Z => Surd::int(rng.gen_range(self.lo..=self.hi)),
            Base::Q => Surd::ratio(rng.gen_range(2 * self.lo..=2 * self.hi), 2),
            Base::R => {
                let x = Surd::ratio(rng.gen_range(2 * self.lo..=2 * self.hi), 2);
                match rng.gen_range(0..6) {
                    0 => x.add(&Surd::sqrt(2)),
                    1 => x.sub(&Surd::sqrt(2)),
                    _ => x,
                }
            }
        }
    }

    fn endpoint<R: Rng + ?Sized>(&self, rng: &mut R, low_side: bool) -> Endpoint {
        if rng.gen_ratio(1, 8) {
            if low_side {
                Endpoint::NegInf
            } else {
                Endpoint::PosInf
            }
        } else {
            Endpoint::Finite(self.number(rng))
        }
    }

    pub fn set<R: Rng + ?Sized>(&self, rng: &mut R) -> LinearSet {
        let k = rng.gen_range(0..=self.max_components);
        let mut comps = Vec::with_capacity(k);
        for _ in 0..k {
            if rng.gen_bool(0.4) {
                comps.push(Component::Point(self.number(rng)));
            } else {
                let a = self.endpoint(rng, true);
                let b = self.endpoint(rng, false);
                if a != b {
                    comps.push(Component::Open(a.clone().min(b.clone()), a.max(b)));
                }
            }
        }
        LinearSet::from_components(&self.carrier, comps)
    }

    /// A carrier member, drawn from the lattice when possible.
    pub fn member<R: Rng + ?Sized>(&self, rng: &mut R) -> Surd {
        for _ in 0..64 {
            let x = self.number(rng);
            if self.carrier.contains(&x) {
                return x;
            }
        }
        LinearSet::full(&self.carrier)
            .witness(&self.carrier)
            .expect("carriers are nonempty")
    }

    /// A model interpreting every symbol of `f`.
    pub fn model_for<R: Rng + ?Sized>(&self, rng: &mut R, f: &Formula) -> DenseModel {
        let mut m = DenseModel::new(self.carrier.clone());
        for p in f.props() {
            m.set_prop(&p, self.set(rng));
        }
        for i in f.nominals() {
            m.set_nom(&i, self.member(rng)).expect("member of the carrier");
        }
        m
    }
}

/// The random stream of trial `trial` under the master `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws `trials` seeded valuations and returns the first model in which `f`
/// fails somewhere.
pub fn search_countermodel(
    carrier: &Carrier,
    f: &Formula,
    trials: u64,
    seed: u64,
) -> Result<Option<Countermodel>, DenseError> {
    let gen = ValuationGen::new(carrier);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let model = gen.model_for(&mut rng, f);
        let report = model.holds_everywhere(f)?;
        if let Some(witness) = report.witness {
            return Ok(Some(Countermodel { trial, model, witness }));
        }
    }
    Ok(None)
}

/// `n/2` as an exact number, for callers building lattices by hand.
pub fn half(n: i64) -> Surd {
    Surd::rational(BigRational::new(BigInt::from(n), BigInt::from(2)))
}
