use std::collections::BTreeSet;
use std::fmt;

use super::{
    check_axiom, check_bounded_morphism, disjoint_union, generated_subframe, AxiomId, Coord, FiniteError, Frame3,
    MorphismSpec, OrderFrame,
};
use crate::dense::{between_image, Carrier, Endpoint, LinearSet, Surd};

/// Names accepted by [`counterexample`]; `B4` also takes a window, `B4(N)`.
pub const COUNTEREXAMPLE_NAMES: &[&str] = &["B1", "B3", "B4", "B5", "B6", "B8"];

/// Window used for `B4` when none is given.
const DEFAULT_WINDOW: usize = 20;

/// The frames behind a non-definability argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// A bounded morphism whose source satisfies the axiom and whose target
    /// does not; the back condition may fail exactly on `exempt`.
    Morphism {
        spec: MorphismSpec,
        source_labels: Vec<String>,
        target_labels: Vec<String>,
        exempt: Vec<usize>,
    },
    /// Frames satisfying the axiom whose disjoint union does not.
    Union {
        parts: Vec<Frame3>,
        union: Frame3,
        labels: Vec<String>,
    },
    /// A dense carrier whose two `points` are between nothing, so they
    /// generate a subframe on their own, which fails the axiom.
    Subframe { carrier: Carrier, points: Vec<Surd> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub name: String,
    pub axiom: AxiomId,
    pub construction: Construction,
}

/// One line per verified fact.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verification {
    pub checks: Vec<(String, bool)>,
}

impl Verification {
    fn check(&mut self, what: impl Into<String>, ok: bool) {
        self.checks.push((what.into(), ok));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (what, ok) in &self.checks {
            writeln!(f, "{} {what}", if *ok { "ok  " } else { "FAIL" })?;
        }
        Ok(())
    }
}

fn labelled(labels: &[String], ws: &[usize]) -> String {
    let names: Vec<&str> = ws.iter().map(|w| labels[*w].as_str()).collect();
    format!("({})", names.join(","))
}

fn named(n: usize, letters: &[&str], suffix: &str) -> Vec<String> {
    letters.iter().take(n).map(|l| format!("{l}{suffix}")).collect()
}

/// Builds the construction refuting modal definability of `name`'s axiom.
pub fn counterexample(name: &str) -> Result<Counterexample, FiniteError> {
    let name = name.trim();
    let (base, window) = match name.split_once('(') {
        Some((b, rest)) => {
            let n = rest
                .strip_suffix(')')
                .and_then(|k| k.trim().parse::<usize>().ok())
                .ok_or_else(|| FiniteError::Invalid(format!("bad window in '{name}'")))?;
            (b.trim(), Some(n))
        }
        None => (name, None),
    };
    if window.is_some() && base != "B4" {
        return Err(FiniteError::Invalid(format!("only B4 takes a window, not '{base}'")));
    }
    let morphism = |axiom, source: Frame3, target: Frame3, map, sl, tl, exempt| Counterexample {
        name: name.to_string(),
        axiom,
        construction: Construction::Morphism {
            spec: MorphismSpec {
                source,
                target,
                map,
                coord: Coord::Middle,
            },
            source_labels: sl,
            target_labels: tl,
            exempt,
        },
    };
    let frame = |n, ts: &[(usize, usize, usize)]| Frame3::from_triples(n, ts.iter().copied()).expect("worlds in range");
    Ok(match base {
        "B1" => {
            let mut proper = Frame3::new(3);
            for x in 0..3 {
                for y in 0..3 {
                    for z in 0..3 {
                        if x != y && y != z && x != z {
                            proper.insert(x, y, z);
                        }
                    }
                }
            }
            morphism(
                AxiomId::B1,
                proper,
                frame(1, &[(0, 0, 0)]),
                vec![0; 3],
                named(3, &["a", "b", "c"], ""),
                vec!["w".into()],
                vec![],
            )
        }
        "B3" => morphism(
            AxiomId::B3,
            frame(2, &[(0, 0, 1), (1, 1, 0)]),
            frame(1, &[(0, 0, 0)]),
            vec![0, 0],
            named(2, &["x", "y"], ""),
            vec!["a".into()],
            vec![],
        ),
        "B4" => {
            let n = window.unwrap_or(DEFAULT_WINDOW);
            if n < 2 {
                return Err(FiniteError::Invalid("the B4 window must be at least 2".into()));
            }
            // x_k, y_k, z_k for k in 0..=n, then u_k for k in 1..=n
            let (x, y, z) = (|k: usize| k, |k: usize| n + 1 + k, |k: usize| 2 * (n + 1) + k);
            let u = |k: usize| 3 * (n + 1) + k - 1;
            let mut src = Frame3::new(4 * n + 3);
            for k in 0..=n {
                src.insert(x(k), y(k), z(k));
            }
            for k in 0..n {
                src.insert(y(k + 1), z(k), u(k + 1));
            }
            let mut map = vec![0; 4 * n + 3];
            let mut labels = vec![String::new(); 4 * n + 3];
            for k in 0..=n {
                for (letter, (w, image)) in ["x", "y", "z"].iter().zip([(x(k), 0), (y(k), 1), (z(k), 2)]) {
                    map[w] = image;
                    labels[w] = format!("{letter}{k}");
                }
            }
            for k in 1..=n {
                map[u(k)] = 3;
                labels[u(k)] = format!("u{k}");
            }
            morphism(
                AxiomId::B4,
                src,
                frame(4, &[(0, 1, 2), (1, 2, 3)]),
                map,
                labels,
                named(4, &["x", "y", "z", "u"], ""),
                vec![z(n)],
            )
        }
        "B5" => morphism(
            AxiomId::B5,
            // x0, y0, u0, z0, z1
            frame(5, &[(0, 1, 3), (1, 2, 4)]),
            // x, y, u, z
            frame(4, &[(0, 1, 3), (1, 2, 3)]),
            vec![0, 1, 2, 3, 3],
            vec!["x0".into(), "y0".into(), "u0".into(), "z0".into(), "z1".into()],
            named(4, &["x", "y", "u", "z"], ""),
            vec![],
        ),
        "B6" => {
            let part = frame(3, &[(0, 1, 2)]);
            let parts = vec![part.clone(), part];
            let union = disjoint_union(&parts);
            let mut labels = named(3, &["a", "b", "c"], "");
            labels.extend(named(3, &["a", "b", "c"], "'"));
            Counterexample {
                name: name.to_string(),
                axiom: AxiomId::B6six,
                construction: Construction::Union { parts, union, labels },
            }
        }
        "B8" => Counterexample {
            name: name.to_string(),
            axiom: AxiomId::B8,
            construction: Construction::Subframe {
                carrier: Carrier::closed(crate::dense::Base::Q, Surd::int(0), Surd::int(1)),
                points: vec![Surd::int(0), Surd::int(1)],
            },
        },
        other => return Err(FiniteError::Invalid(format!("no counterexample named '{other}'"))),
    })
}

impl Counterexample {
    /// Re-checks every claim of the construction.
    pub fn verify(&self) -> Result<Verification, FiniteError> {
        let mut v = Verification::default();
        let ax = self.axiom;
        match &self.construction {
            Construction::Morphism {
                spec,
                source_labels,
                target_labels,
                exempt,
            } => {
                let src = check_axiom(&spec.source, ax);
                v.check(format!("source frame satisfies {ax}"), src.holds);
                let tgt = check_axiom(&spec.target, ax);
                let at = tgt
                    .witness
                    .as_ref()
                    .map_or(String::new(), |w| format!(" at {}", labelled(target_labels, w)));
                v.check(format!("target frame violates {ax}{at}"), !tgt.holds);
                let r = check_bounded_morphism(spec)?;
                v.check("map is surjective", r.surjective);
                v.check("forth condition holds everywhere", r.forth.holds);
                if exempt.is_empty() {
                    v.check("back condition holds everywhere", r.back.holds);
                } else {
                    let names: Vec<&str> = exempt.iter().map(|w| source_labels[*w].as_str()).collect();
                    v.check(
                        format!("back condition fails exactly on {{{}}}", names.join(", ")),
                        r.back_failures == *exempt,
                    );
                }
            }
            Construction::Union { parts, union, labels } => {
                for (k, p) in parts.iter().enumerate() {
                    v.check(format!("part {} satisfies {ax}", k + 1), check_axiom(p, ax).holds);
                }
                let r = check_axiom(union, ax);
                let sizes: Vec<usize> = parts.iter().map(Frame3::worlds).collect();
                let part_of = |w: usize| {
                    let mut acc = 0;
                    sizes.iter().position(|s| {
                        acc += s;
                        w < acc
                    })
                };
                match r.witness {
                    Some(w) => {
                        let mixed = w.iter().map(|x| part_of(*x)).collect::<BTreeSet<_>>().len() > 1;
                        v.check(
                            format!("union violates {ax} at mixed triple {}", labelled(labels, &w)),
                            mixed,
                        );
                    }
                    None => v.check(format!("union violates {ax}"), false),
                }
            }
            Construction::Subframe { carrier, points } => {
                let full = LinearSet::full(carrier);
                let image = between_image(carrier, &full, &full);
                let interior = LinearSet::open(
                    carrier,
                    Endpoint::Finite(points[0].clone()),
                    Endpoint::Finite(points[1].clone()),
                );
                v.check(
                    format!("points strictly between members of {carrier} form {image}"),
                    image == interior,
                );
                let isolated = points.iter().all(|p| !image.covers(p));
                v.check(
                    format!("{} and {} are between no two points", points[0], points[1]),
                    isolated,
                );
                // the two points as a betweenness frame, closed under middles
                let pair = OrderFrame::chain(&[0, 1]).to_betweenness();
                let seeds: BTreeSet<usize> = [0, 1].into();
                let (sub, _) = generated_subframe(&pair, &seeds, Coord::Middle)?;
                let r = check_axiom(&sub, ax);
                let at = r.witness.as_ref().map_or(String::new(), |w| {
                    let names: Vec<String> = w.iter().map(|k| points[*k].to_string()).collect();
                    format!(" at ({})", names.join(","))
                });
                v.check(
                    format!("generated subframe {{{}, {}}} violates {ax}{at}", points[0], points[1]),
                    !r.holds,
                );
            }
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_construction_verifies() {
        for name in COUNTEREXAMPLE_NAMES {
            let c = counterexample(name).unwrap();
            let v = c.verify().unwrap();
            assert!(v.passed(), "{name}:\n{v}");
        }
    }

    #[test]
    fn asymmetry_bundle() {
        let c = counterexample("B3").unwrap();
        let Construction::Morphism { spec, .. } = &c.construction else {
            panic!("B3 is a morphism construction")
        };
        assert!(check_axiom(&spec.source, AxiomId::B3).holds);
        assert_eq!(check_axiom(&spec.target, AxiomId::B3).witness, Some(vec![0, 0, 0]));
        assert!(check_bounded_morphism(spec).unwrap().holds());
    }

    #[test]
    fn linearity_bundle_has_mixed_failures() {
        let c = counterexample("B6").unwrap();
        let Construction::Union { union, .. } = &c.construction else {
            panic!("B6 is a union construction")
        };
        assert_eq!(union.worlds(), 6);
        assert_eq!(union.triple_count(), 2);
        // a, b from the first copy and c' from the second
        let (a, b, c2) = (0, 1, 5);
        let perms = [(a, b, c2), (a, c2, b), (b, a, c2), (b, c2, a), (c2, a, b), (c2, b, a)];
        assert!(perms.iter().all(|&(x, y, z)| !union.has(x, y, z)));
        assert_eq!(check_axiom(union, AxiomId::B6six).witness, Some(vec![0, 1, 3]));
    }

    #[test]
    fn windowed_outer_transitivity() {
        let c = counterexample("B4(20)").unwrap();
        let Construction::Morphism {
            spec,
            exempt,
            source_labels,
            ..
        } = &c.construction
        else {
            panic!("B4 is a morphism construction")
        };
        let r = check_bounded_morphism(spec).unwrap();
        assert!(r.forth.holds);
        assert_eq!(r.back_failures, *exempt);
        assert_eq!(source_labels[exempt[0]], "z20");
        assert!(counterexample("B4(1)").is_err());
        assert!(counterexample("B4(3)").unwrap().verify().unwrap().passed());
    }

    #[test]
    fn unknown_names() {
        assert!(counterexample("B2").is_err());
        assert!(counterexample("B1(3)").is_err());
        assert!(counterexample("B4(x)").is_err());
    }
}
