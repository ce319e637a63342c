use std::fs;
use std::path::PathBuf;

use bhlogic::proof::{Derivation, ProofError, Rule};
use bhlogic::syntax::builtin;

fn corpus(name: &str) -> Derivation {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "corpus", "proofs", name].iter().collect();
    Derivation::parse(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn bridge_derivation_checks() {
    let d = corpus("bridge.bh");
    assert_eq!(d.check(), Ok(()));
    assert_eq!(d.conclusion(), Some(&builtin("bridge").unwrap()));
}

#[test]
fn name_violation_is_rejected() {
    match corpus("name_violation.bh").check() {
        Err(ProofError::SideCondition {
            line: 2,
            rule: Rule::Name,
            message,
        }) => {
            assert_eq!(message, "nominal j occurs in the conclusion")
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn paste_violation_is_rejected() {
    match corpus("paste_violation.bh").check() {
        Err(ProofError::SideCondition {
            line: 2,
            rule: Rule::Paste,
            message,
        }) => {
            assert_eq!(message, "nominal j occurs in θ")
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn appending_lines_keeps_earlier_verdicts() {
    let d = corpus("bridge.bh");
    for cut in 0..=d.lines.len() {
        let prefix = Derivation {
            logic: d.logic,
            lines: d.lines[..cut].to_vec(),
        };
        assert_eq!(prefix.check(), Ok(()), "prefix of {cut} lines");
    }
    let mut broken = corpus("bridge.bh");
    broken
        .lines
        .extend(corpus("name_violation.bh").lines.into_iter().map(|mut l| {
            l.label += 100;
            if let bhlogic::proof::Justification::Rule { premises, .. } = &mut l.justification {
                premises.iter_mut().for_each(|p| *p += 100);
            }
            l
        }));
    for k in 0..d.lines.len() {
        assert_eq!(broken.check_line(k), Ok(()));
    }
    assert!(broken.check().is_err());
}
