use super::{parse, Formula};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "HB1",
    "HB2",
    "HB3",
    "HB4",
    "HB5",
    "HB6",
    "HB7",
    "HB8",
    "HB2m",
    "HB8p",
    "bridge",
    "D",
    "densityTest",
    "convIdem",
    "Eelim",
];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        // B1: strictness
        "HB1" => "@i <B>(j, k) -> ~@i j & ~@i k & ~@k j",
        // B2: symmetry of the outer coordinates
        "HB2" => "<B>(i, j) -> <B>(j, i)",
        // B3: asymmetry on the second and third coordinates
        "HB3" => "@j <B>(i, k) -> ~@k <B>(i, j)",
        // B4: outer transitivity
        "HB4" => "@j <B>(i, k) & @k <B>(j, l) -> @j <B>(i, l) & @k <B>(i, l)",
        // B5: inner transitivity
        "HB5" => "@j <B>(i, k) & @l <B>(i, j) -> @l <B>(i, k) & @j <B>(l, k)",
        // B6: linearity
        "HB6" => "~@i j & ~@i k & ~@k j -> @j <B>(i, k) | @k <B>(i, j) | @i <B>(j, k)",
        // B7: no endpoints
        "HB7" => "<B>(true, true)",
        // B8: density, stated with the global modality
        "HB8" => "~@i j -> E <B>(i, j)",
        "HB2m" => "<B>(p, q) -> <B>(q, p)",
        // pure form of C p -> C C p
        "HB8p" => "<B>(i, j) -> C C (i | j)",
        "bridge" => "<B>(j, k) & @j p & @k q -> <B>(p, q)",
        // modal Dedekind completeness
        "D" => {
            "E C p & E C q & A (C p -> p) & A (C q -> q) & ~E (p & q) \
             -> E (<B>(p, q) & ~C p & ~C q)"
        }
        "densityTest" => "C p -> C C p",
        "convIdem" => "C C p -> C p",
        "Eelim" => "E p <-> <B>(p, true) | p",
        _ => return None,
    })
}

/// Named formulas of the betweenness logic, written with canonical symbols
/// (`p`, `q` for formula slots and `i`, `j`, `k`, `l` for nominals).
pub fn builtin(name: &str) -> Option<Formula> {
    source(name).map(|text| parse(text).expect("builtin formulas parse"))
}

/// `E φ <-> <B>(φ, true) | φ` for an arbitrary `φ`.
pub fn e_elimination(phi: &Formula) -> Formula {
    Formula::iff(
        Formula::exists(phi.clone()),
        Formula::or(Formula::diamond(phi.clone(), Formula::Top), phi.clone()),
    )
}
