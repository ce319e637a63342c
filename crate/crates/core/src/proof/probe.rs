use num_rational::Ratio;
use rand::Rng;

use super::schema::{schema, Logic};
use super::ProofError;
use crate::dense::{search_countermodel, trial_rng, Base, Carrier, Countermodel, DenseModel, LinearSet, Surd};
use crate::finite::{check_axiom, frame_valid_finite, AxiomId, Frame3, ValidityReport};

/// Number of random finite frames drawn by [`soundness_probe`].
pub const PROBE_FRAMES: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeCounterexample {
    Dense(Box<Countermodel>),
    Finite { frame: Frame3, report: ValidityReport },
}

/// `frames_checked` counts the random frames that fell in the axiom's frame
/// class and were checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub axiom: String,
    pub holds: bool,
    pub dense_trials: u64,
    pub frames_checked: u64,
    pub counterexample: Option<ProbeCounterexample>,
}

/// The first-order conditions a finite frame must meet before the axiom is
/// expected to be valid on it; `None` when no finite frame qualifies.
fn frame_class(axiom: &str) -> Option<&'static [AxiomId]> {
    use AxiomId::*;
    Some(match axiom {
        "HB1" => &[B1],
        "HB2" => &[B2],
        "HB3" => &[B3],
        "HB4" => &[B4, B4p],
        "HB5" => &[B5m],
        "HB6" => &[B6],
        "HB7" => &[B7],
        // density and completeness are only claimed on linear frames without
        // endpoints, which are never finite
        "HB8p" | "D" => return None,
        _ => &[],
    })
}

/// The valuation splitting the line at `√2`.
pub fn sqrt2_split(carrier: &Carrier) -> DenseModel {
    use crate::dense::Endpoint::*;
    let cut = Finite(Surd::sqrt(2));
    DenseModel::new(carrier.clone())
        .with_prop("p", LinearSet::open(carrier, NegInf, cut.clone()))
        .with_prop("q", LinearSet::open(carrier, cut, PosInf))
}

/// Looks for a falsifying instance of the axiom `name` on `carrier` under
/// `trials` seeded valuations and on [`PROBE_FRAMES`] seeded random frames of
/// its frame class. For `D` the `√2` split is tried before anything else.
pub fn soundness_probe(
    name: &str,
    logic: Logic,
    carrier: &Carrier,
    trials: u64,
    seed: u64,
) -> Result<ProbeReport, ProofError> {
    if name.trim() == "CT" {
        return Err(ProofError::NotProbeable("CT".into()));
    }
    let s = schema(name, logic)?;
    let mut report = ProbeReport {
        axiom: s.name.to_string(),
        holds: true,
        dense_trials: 0,
        frames_checked: 0,
        counterexample: None,
    };
    if s.name == "D" {
        let model = sqrt2_split(carrier);
        report.dense_trials += 1;
        if let Some(witness) = model.holds_everywhere(&s.template)?.witness {
            report.holds = false;
            report.counterexample = Some(ProbeCounterexample::Dense(Box::new(Countermodel {
                trial: 0,
                model,
                witness,
            })));
            return Ok(report);
        }
    }
    report.dense_trials += trials;
    if let Some(cm) = search_countermodel(carrier, &s.template, trials, seed)? {
        report.holds = false;
        report.dense_trials = report.dense_trials - trials + cm.trial + 1;
        report.counterexample = Some(ProbeCounterexample::Dense(Box::new(cm)));
        return Ok(report);
    }
    let Some(class) = frame_class(s.name) else {
        return Ok(report);
    };
    for k in 0..PROBE_FRAMES {
        let mut rng = trial_rng(seed ^ 0x5eed_f4a3, k);
        let n = rng.gen_range(1..=3);
        let density = Ratio::new(rng.gen_range(0..=4), 4);
        let frame = Frame3::random_with(n, density, &mut rng);
        if !class.iter().all(|a| check_axiom(&frame, *a).holds) {
            continue;
        }
        report.frames_checked += 1;
        let r = frame_valid_finite(&frame, &s.template)?;
        if !r.holds {
            report.holds = false;
            report.counterexample = Some(ProbeCounterexample::Finite { frame, report: r });
            return Ok(report);
        }
    }
    Ok(report)
}

/// The carrier named by `text`, defaulting to the rationals.
pub fn probe_carrier(text: Option<&str>) -> Result<Carrier, ProofError> {
    match text {
        None => Ok(Carrier::new(Base::Q)),
        Some(t) => t.parse().map_err(ProofError::BadCarrier),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::axiom_names;

    #[test]
    fn back_and_density_hold_on_the_rationals() {
        for name in ["back1", "HB8p", "nom"] {
            let r = soundness_probe(name, Logic::Bh, &Carrier::rationals(), 200, 1).unwrap();
            assert!(r.holds, "{name}: {r:?}");
        }
    }

    #[test]
    fn completeness_fails_on_the_rationals_at_the_root() {
        let r = soundness_probe("D", Logic::BhPlus, &Carrier::rationals(), 100, 1).unwrap();
        assert!(!r.holds);
        let Some(ProbeCounterexample::Dense(cm)) = r.counterexample else {
            panic!("a dense countermodel")
        };
        assert_eq!(cm.model, sqrt2_split(&Carrier::rationals()));
        assert_eq!(r.dense_trials, 1);
        let on_r = soundness_probe("D", Logic::BhPlus, &Carrier::reals(), 100, 1).unwrap();
        assert!(on_r.holds);
    }

    #[test]
    fn finite_frames_are_filtered_by_class() {
        let r = soundness_probe("HB4", Logic::Bh, &Carrier::rationals(), 20, 3).unwrap();
        assert!(r.holds && r.frames_checked > 0);
        let k = soundness_probe("K1", Logic::Bh, &Carrier::rationals(), 20, 3).unwrap();
        assert_eq!(k.frames_checked, PROBE_FRAMES);
        assert!(soundness_probe("CT", Logic::Bh, &Carrier::rationals(), 1, 1).is_err());
        assert_eq!(axiom_names(Logic::Bh).len(), 20);
    }

    #[test]
    fn the_serial_axiom_fails_on_a_bounded_carrier() {
        let c: Carrier = "Q [0,1]".parse().unwrap();
        let r = soundness_probe("HB7", Logic::Bh, &c, 10, 1).unwrap();
        assert!(!r.holds);
    }
}
