mod common;

use std::collections::{BTreeMap, BTreeSet};

use bhlogic::finite::{
    check_axiom, check_bounded_morphism, disjoint_union, eval_finite, extension_finite, frame_valid_finite,
    generated_subframe, AxiomId, Coord, FiniteModel, Frame3, MorphismSpec, AXIOM_IDS,
};
use bhlogic::syntax::{builtin, standard_translation, FoFormula, Formula, FormulaGen};
use common::{brute_axiom, brute_morphism, seeded_frame};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Truth of a first-order formula over a model, with `env` binding variables.
fn fo_holds(m: &FiniteModel, f: &FoFormula, env: &mut BTreeMap<String, usize>) -> bool {
    use FoFormula::*;
    let n = m.frame.worlds();
    match f {
        True => true,
        False => false,
        Eq(a, b) => env[a] == env[b],
        Between(a, b, c) => m.frame.has(env[a], env[b], env[c]),
        Pred(p, v) => m.props[p].contains(&env[v]),
        Not(g) => !fo_holds(m, g, env),
        And(parts) => parts.iter().all(|g| fo_holds(m, g, env)),
        Or(parts) => parts.iter().any(|g| fo_holds(m, g, env)),
        Implies(a, b) => !fo_holds(m, a, env) || fo_holds(m, b, env),
        Iff(a, b) => fo_holds(m, a, env) == fo_holds(m, b, env),
        Exists(v, body) | Forall(v, body) => {
            let saved = env.get(v).copied();
            let mut results = (0..n).map(|w| {
                env.insert(v.clone(), w);
                fo_holds(m, body, env)
            });
            let r = if matches!(f, Exists(..)) {
                results.any(|b| b)
            } else {
                results.all(|b| b)
            };
            match saved {
                Some(w) => env.insert(v.clone(), w),
                None => env.remove(v),
            };
            r
        }
    }
}

fn random_model(rng: &mut ChaCha8Rng, n: usize, props: &[&str], noms: &[&str]) -> FiniteModel {
    let mut m = FiniteModel::new(seeded_frame(n, rng.gen()));
    for p in props {
        let ws: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        m = m.with_prop(p, ws);
    }
    for i in noms {
        m = m.with_nom(i, rng.gen_range(0..n));
    }
    m
}

/// A formula without nominals or global modalities: named ones for small
/// `which`, random ones otherwise.
fn basic_formula(seed: u64, which: usize) -> Formula {
    match ["HB2m", "HB7", "convIdem", "densityTest"].get(which) {
        Some(name) => builtin(name).unwrap(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb45c);
            FormulaGen::new(&["p", "q"], &[])
                .max_depth(3)
                .global(false)
                .generate(&mut rng)
        }
    }
}

#[test]
fn hb4_and_hb5_define_strengthened_conditions() {
    let hb4 = builtin("HB4").unwrap();
    let hb5 = builtin("HB5").unwrap();
    let mut frames: Vec<Frame3> = (0..256).map(|b| Frame3::from_bits(2, b)).collect();
    frames.extend((0..4000u64).map(|s| seeded_frame(3 + (s % 2) as usize, s)));
    for f in &frames {
        let b4 = check_axiom(f, AxiomId::B4).holds && check_axiom(f, AxiomId::B4p).holds;
        assert_eq!(frame_valid_finite(f, &hb4).unwrap().holds, b4, "{f:?}");
        let b5 = check_axiom(f, AxiomId::B5m).holds;
        assert_eq!(frame_valid_finite(f, &hb5).unwrap().holds, b5, "{f:?}");
    }
}

#[test]
fn hb4_is_strictly_stronger_than_b4() {
    let f = Frame3::from_triples(4, [(0, 1, 2), (1, 2, 3), (0, 1, 3)]).unwrap();
    assert!(check_axiom(&f, AxiomId::B4).holds);
    assert!(!check_axiom(&f, AxiomId::B4p).holds);
    assert!(!frame_valid_finite(&f, &builtin("HB4").unwrap()).unwrap().holds);
}

#[test]
fn frame_conditions_agree_with_plain_quantification() {
    for s in 0..600u64 {
        let f = seeded_frame(1 + (s % 4) as usize, 500 + s);
        for ax in AXIOM_IDS {
            if *ax == AxiomId::Ccp && f.worlds() > 3 {
                continue;
            }
            assert_eq!(check_axiom(&f, *ax).holds, brute_axiom(&f, *ax), "{ax} on {f:?}");
        }
    }
}

#[test]
fn morphism_check_agrees_with_plain_quantification() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for s in 0..400u64 {
        let source = seeded_frame(1 + (s % 4) as usize, 2000 + s);
        let target = seeded_frame(1 + (s % 3) as usize, 3000 + s);
        let map: Vec<usize> = (0..source.worlds())
            .map(|_| rng.gen_range(0..target.worlds()))
            .collect();
        let spec = MorphismSpec {
            source: source.clone(),
            target: target.clone(),
            map: map.clone(),
            coord: Coord::Middle,
        };
        let r = check_bounded_morphism(&spec).unwrap();
        let (forth, back) = brute_morphism(&source, &target, &map);
        assert_eq!(r.forth.holds, forth);
        assert_eq!(r.back_failures, back);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extension_matches_the_standard_translation(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gen = FormulaGen::new(&["p", "q"], &["i", "j"]).max_depth(4).global(true).derived(true);
        let phi = gen.generate(&mut rng);
        let m = random_model(&mut rng, n, &["p", "q"], &["i", "j"]);
        let st = standard_translation(&phi, "x");
        let ext = extension_finite(&m, &phi).unwrap();
        for w in 0..n {
            let mut env: BTreeMap<String, usize> = m.noms.iter().map(|(i, v)| (format!("x_{i}"), *v)).collect();
            env.insert("x".into(), w);
            prop_assert_eq!(ext.contains(&w), fo_holds(&m, &st, &mut env), "{} at {}", phi, w);
            prop_assert_eq!(eval_finite(&m, &phi, w).unwrap(), ext.contains(&w));
        }
    }

    #[test]
    fn surjective_bounded_morphisms_preserve_validity(seed in any::<u64>(), which in 0usize..6) {
        let phi = basic_formula(seed, which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let source = seeded_frame(rng.gen_range(1..=4), rng.gen());
        let target = seeded_frame(rng.gen_range(1..=3), rng.gen());
        let map: Vec<usize> = (0..source.worlds()).map(|_| rng.gen_range(0..target.worlds())).collect();
        let r = check_bounded_morphism(&MorphismSpec { source: source.clone(), target: target.clone(), map, coord: Coord::Middle }).unwrap();
        if r.holds() && r.surjective && frame_valid_finite(&source, &phi).unwrap().holds {
            prop_assert!(frame_valid_finite(&target, &phi).unwrap().holds);
        }
    }

    #[test]
    fn generated_subframes_preserve_validity(seed in any::<u64>(), which in 0usize..6) {
        let phi = basic_formula(seed, which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let f = seeded_frame(n, rng.gen());
        let mut seeds: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
        seeds.insert(rng.gen_range(0..n));
        let (sub, incl) = generated_subframe(&f, &seeds, Coord::Middle).unwrap();
        prop_assert!(seeds.iter().all(|s| incl.contains(s)));
        // closure: a middle inside forces both ends inside
        for (x, y, z) in f.triples() {
            if incl.contains(&y) {
                prop_assert!(incl.contains(&x) && incl.contains(&z));
            }
        }
        if frame_valid_finite(&f, &phi).unwrap().holds {
            prop_assert!(frame_valid_finite(&sub, &phi).unwrap().holds);
        }
    }

    #[test]
    fn disjoint_unions_preserve_validity(seed in any::<u64>(), which in 0usize..6) {
        let phi = basic_formula(seed, which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = seeded_frame(rng.gen_range(1..=2), rng.gen());
        let b = seeded_frame(rng.gen_range(1..=2), rng.gen());
        let u = disjoint_union(&[a.clone(), b.clone()]);
        prop_assert_eq!(u.worlds(), a.worlds() + b.worlds());
        prop_assert_eq!(u.triple_count(), a.triple_count() + b.triple_count());
        if frame_valid_finite(&a, &phi).unwrap().holds && frame_valid_finite(&b, &phi).unwrap().holds {
            prop_assert!(frame_valid_finite(&u, &phi).unwrap().holds);
        }
    }
}
