use std::collections::BTreeMap;

use crate::syntax::Formula;

/// Most distinct atoms a tautology check will enumerate.
pub const MAX_ATOMS: usize = 24;

/// Whether `f` is a classical tautology when every maximal non-Boolean
/// subformula (variables, nominals, modal, `@`, `E`, `A` and `C` formulas)
/// is read as an independent propositional atom. `None` when there are more
/// than [`MAX_ATOMS`] atoms.
pub fn is_tautology(f: &Formula) -> Option<bool> {
    let mut atoms = BTreeMap::new();
    collect(f, &mut atoms);
    let n = atoms.len();
    if n > MAX_ATOMS {
        return None;
    }
    // 64 rows at a time: atom k < 6 follows a fixed bit pattern within a
    // block, atom k >= 6 is constant across the block
    const PATTERNS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    let rows = 1u64 << n;
    let valid = if n >= 6 { u64::MAX } else { (1u64 << rows) - 1 };
    let blocks = if n > 6 { 1u64 << (n - 6) } else { 1 };
    let mut values = vec![0u64; n];
    for block in 0..blocks {
        for (k, v) in values.iter_mut().enumerate() {
            *v = if k < 6 {
                PATTERNS[k]
            } else if block >> (k - 6) & 1 == 1 {
                u64::MAX
            } else {
                0
            };
        }
        if eval(f, &atoms, &values) & valid != valid {
            return Some(false);
        }
    }
    Some(true)
}

fn is_boolean(f: &Formula) -> bool {
    use Formula::*;
    matches!(f, Top | Bottom | Not(_) | And(..) | Or(..) | Implies(..) | Iff(..))
}

fn collect(f: &Formula, atoms: &mut BTreeMap<Formula, usize>) {
    if is_boolean(f) {
        for c in f.children() {
            collect(c, atoms);
        }
    } else {
        let next = atoms.len();
        atoms.entry(f.clone()).or_insert(next);
    }
}

fn eval(f: &Formula, atoms: &BTreeMap<Formula, usize>, values: &[u64]) -> u64 {
    use Formula::*;
    match f {
        Top => u64::MAX,
        Bottom => 0,
        Not(g) => !eval(g, atoms, values),
        And(a, b) => eval(a, atoms, values) & eval(b, atoms, values),
        Or(a, b) => eval(a, atoms, values) | eval(b, atoms, values),
        Implies(a, b) => !eval(a, atoms, values) | eval(b, atoms, values),
        Iff(a, b) => !(eval(a, atoms, values) ^ eval(b, atoms, values)),
        _ => values[atoms[f]],
    }
}
