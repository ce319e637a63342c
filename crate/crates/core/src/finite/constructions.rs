use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{CheckReport, FiniteError, Frame3};

/// Which coordinate of a triple is the point of evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Coord {
    First,
    #[default]
    Middle,
}

impl Coord {
    /// Reorders a triple as (distinguished, other, other).
    fn split(self, t: (usize, usize, usize)) -> (usize, usize, usize) {
        match self {
            Coord::First => t,
            Coord::Middle => (t.1, t.0, t.2),
        }
    }

    /// Inverse of [`Coord::split`].
    fn join(self, w: usize, a: usize, b: usize) -> (usize, usize, usize) {
        match self {
            Coord::First => (w, a, b),
            Coord::Middle => (a, w, b),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coord::First => "first",
            Coord::Middle => "middle",
        })
    }
}

impl FromStr for Coord {
    type Err = FiniteError;

    fn from_str(s: &str) -> Result<Coord, FiniteError> {
        match s.trim() {
            "first" => Ok(Coord::First),
            "middle" => Ok(Coord::Middle),
            other => Err(FiniteError::Invalid(format!("unknown coordinate '{other}'"))),
        }
    }
}

fn has(f: &Frame3, t: (usize, usize, usize)) -> bool {
    f.has(t.0, t.1, t.2)
}

/// The frames side by side, worlds of later frames shifted past earlier ones.
pub fn disjoint_union(fs: &[Frame3]) -> Frame3 {
    let total = fs.iter().map(Frame3::worlds).sum();
    let mut u = Frame3::new(total);
    let mut offset = 0;
    for f in fs {
        for (x, y, z) in f.triples() {
            u.insert(x + offset, y + offset, z + offset);
        }
        offset += f.worlds();
    }
    u
}

/// The least set of worlds containing `seeds` and closed under passing from
/// the distinguished coordinate of a triple to the other two, with the
/// relation restricted to it. The second component lists the original world
/// behind each new world.
pub fn generated_subframe(
    f: &Frame3,
    seeds: &BTreeSet<usize>,
    coord: Coord,
) -> Result<(Frame3, Vec<usize>), FiniteError> {
    let n = f.worlds();
    if let Some(&w) = seeds.iter().find(|w| **w >= n) {
        return Err(FiniteError::WorldOutOfRange { world: w, n });
    }
    let mut inside = vec![false; n];
    let mut stack: Vec<usize> = seeds.iter().copied().collect();
    for &w in &stack {
        inside[w] = true;
    }
    let mut from: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for t in f.triples() {
        let (w, a, b) = coord.split(t);
        from[w].push((a, b));
    }
    while let Some(w) = stack.pop() {
        for &(a, b) in &from[w] {
            for v in [a, b] {
                if !inside[v] {
                    inside[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    let incl: Vec<usize> = (0..n).filter(|w| inside[*w]).collect();
    let mut index = vec![usize::MAX; n];
    for (k, &w) in incl.iter().enumerate() {
        index[w] = k;
    }
    let mut sub = Frame3::new(incl.len());
    for (x, y, z) in f.triples() {
        if inside[x] && inside[y] && inside[z] {
            sub.insert(index[x], index[y], index[z]);
        }
    }
    Ok((sub, incl))
}

/// A candidate bounded morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    pub source: Frame3,
    pub target: Frame3,
    pub map: Vec<usize>,
    pub coord: Coord,
}

/// `forth` is witnessed by a source triple whose image is missing; `back` by
/// `(w, a′, b′)`, a source world and the other two target worlds of an
/// image triple that has no preimage through `w`. `back_failures` lists
/// every source world at which the back condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub forth: CheckReport,
    pub back: CheckReport,
    pub back_failures: Vec<usize>,
    pub surjective: bool,
}

impl MorphismReport {
    pub fn holds(&self) -> bool {
        self.forth.holds && self.back.holds
    }
}

pub fn check_bounded_morphism(spec: &MorphismSpec) -> Result<MorphismReport, FiniteError> {
    let (src, tgt, map, coord) = (&spec.source, &spec.target, &spec.map, spec.coord);
    if map.len() != src.worlds() {
        return Err(FiniteError::Invalid(format!(
            "map has {} entries for {} source worlds",
            map.len(),
            src.worlds()
        )));
    }
    if let Some(&w) = map.iter().find(|w| **w >= tgt.worlds()) {
        return Err(FiniteError::WorldOutOfRange {
            world: w,
            n: tgt.worlds(),
        });
    }
    let forth = src
        .triples()
        .find(|&(x, y, z)| !tgt.has(map[x], map[y], map[z]))
        .map_or_else(CheckReport::pass, |(x, y, z)| CheckReport::fail(vec![x, y, z]));

    // image pairs of the other two coordinates available at each source world
    let mut lifted: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); src.worlds()];
    for t in src.triples() {
        let (w, a, b) = coord.split(t);
        lifted[w].insert((map[a], map[b]));
    }
    let mut needed: Vec<Vec<(usize, usize)>> = vec![Vec::new(); tgt.worlds()];
    for t in tgt.triples() {
        let (w, a, b) = coord.split(t);
        needed[w].push((a, b));
    }
    let mut back = CheckReport::pass();
    let mut back_failures = Vec::new();
    for w in 0..src.worlds() {
        if let Some(&(a, b)) = needed[map[w]].iter().find(|p| !lifted[w].contains(p)) {
            if back.holds {
                back = CheckReport::fail(vec![w, a, b]);
            }
            back_failures.push(w);
        }
    }
    let image: BTreeSet<usize> = map.iter().copied().collect();
    Ok(MorphismReport {
        forth,
        back,
        back_failures,
        surjective: image.len() == tgt.worlds(),
    })
}

/// The ultrafilter extension of a finite frame, its points indexed by the
/// generator of the corresponding principal ultrafilter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeReport {
    pub frame: Frame3,
    pub iso: Vec<usize>,
    pub report: CheckReport,
}

/// `{w : some triple has w at coord and its other two coordinates in xs, ys}`.
pub fn m_relation(f: &Frame3, xs: &BTreeSet<usize>, ys: &BTreeSet<usize>, coord: Coord) -> BTreeSet<usize> {
    f.triples()
        .map(|t| coord.split(t))
        .filter(|(_, a, b)| xs.contains(a) && ys.contains(b))
        .map(|(w, _, _)| w)
        .collect()
}

/// Up to this many worlds the extension is computed from the definition,
/// ranging over all sets in each ultrafilter.
const UE_LITERAL_LIMIT: usize = 8;

/// Builds the ultrafilter extension of `f` and checks that sending each
/// world to its principal ultrafilter is an isomorphism.
///
/// With `coord` distinguished, `m(X, Y)` collects the worlds `w` with a
/// triple placing `w` at `coord` and the other two coordinates in `X` and
/// `Y`; the extension relates `(u, u1, u2)` when `m(X, Y) ∈ u` for all
/// `X ∈ u1`, `Y ∈ u2`. Every ultrafilter on a finite set is principal. Past
/// a few worlds only singletons are tried, which suffices because `m` is
/// monotone.
pub fn ultrafilter_extension_finite(f: &Frame3, coord: Coord) -> Result<UeReport, FiniteError> {
    let n = f.worlds();
    if n > 64 {
        return Err(FiniteError::TooManyWorlds { n, max: 64 });
    }
    let mut pairs: Vec<u64> = vec![0; n * n];
    for t in f.triples() {
        let (w, a, b) = coord.split(t);
        pairs[a * n + b] |= 1 << w;
    }
    // between[a*n + b]: intersection of m(X, Y) over X ∋ a, Y ∋ b
    let between: Vec<u64> = if n <= UE_LITERAL_LIMIT {
        let subsets = 1usize << n;
        // row[a][Y] = m({a}, Y)
        let mut row = vec![0u64; n * subsets];
        for a in 0..n {
            for y in 1..subsets {
                let low = y.trailing_zeros() as usize;
                row[a * subsets + y] = row[a * subsets + (y & (y - 1))] | pairs[a * n + low];
            }
        }
        let mut m = vec![0u64; subsets * subsets];
        for x in 1..subsets {
            let low = x.trailing_zeros() as usize;
            let rest = x & (x - 1);
            for y in 0..subsets {
                m[x * subsets + y] = m[rest * subsets + y] | row[low * subsets + y];
            }
        }
        let mut between = vec![u64::MAX; n * n];
        for x in 1..subsets {
            for y in 1..subsets {
                let v = m[x * subsets + y];
                for a in (0..n).filter(|a| x >> a & 1 == 1) {
                    for b in (0..n).filter(|b| y >> b & 1 == 1) {
                        between[a * n + b] &= v;
                    }
                }
            }
        }
        between
    } else {
        pairs.clone()
    };
    let mut ue = Frame3::new(n);
    for a in 0..n {
        for b in 0..n {
            let v = between[a * n + b];
            for w in (0..n).filter(|w| v >> w & 1 == 1) {
                let (x, y, z) = coord.join(w, a, b);
                ue.insert(x, y, z);
            }
        }
    }
    let iso: Vec<usize> = (0..n).collect();
    let mut report = CheckReport::pass();
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if f.has(x, y, z) != has(&ue, (iso[x], iso[y], iso[z])) {
                    report = CheckReport::fail(vec![x, y, z]);
                    break 'outer;
                }
            }
        }
    }
    Ok(UeReport { frame: ue, iso, report })
}

/// Outcome of the completeness check; `sets` are `X` and `Y` of a violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B9Report {
    pub holds: bool,
    pub sets: Option<(Vec<usize>, Vec<usize>)>,
}

pub fn check_b9_finite(f: &Frame3) -> Result<B9Report, FiniteError> {
    check_b9_finite_bounded(f, 12)
}

/// Checks that whenever some `w` has every `x ∈ X` between itself and every
/// `y ∈ Y`, some `u` lies between every `x ∈ X` and `y ∈ Y`.
///
/// For fixed `X` the admissible `Y` for `w` form the down-set of
/// `T_w = {y : ∀x∈X B(w,x,y)}` and the separated `Y` for `u` the down-set
/// of `C_u = {y : ∀x∈X B(x,u,y)}`, so the condition fails exactly when some
/// `T_w` lies inside no `C_u`; that `T_w` is then the reported `Y`.
pub fn check_b9_finite_bounded(f: &Frame3, bound: usize) -> Result<B9Report, FiniteError> {
    let n = f.worlds();
    if n > bound || n > 24 {
        return Err(FiniteError::TooManyWorlds { n, max: bound.min(24) });
    }
    let full: u32 = if n == 0 { 0 } else { (1 << n) - 1 };
    // outer[w*n + x] = {y : B(w,x,y)}, inner[x*n + u] = {y : B(x,u,y)}
    let mut outer = vec![0u32; n * n];
    let mut inner = vec![0u32; n * n];
    for (a, b, c) in f.triples() {
        outer[a * n + b] |= 1 << c;
        inner[a * n + b] |= 1 << c;
    }
    let to_vec = |s: u32| (0..n).filter(|k| s >> k & 1 == 1).collect::<Vec<_>>();
    for x_set in 0..=full {
        let xs = to_vec(x_set);
        let seps: Vec<u32> = (0..n)
            .map(|u| xs.iter().fold(full, |acc, &x| acc & inner[x * n + u]))
            .collect();
        for w in 0..n {
            let t = xs.iter().fold(full, |acc, &x| acc & outer[w * n + x]);
            if !seps.iter().any(|c| t & !c == 0) {
                return Ok(B9Report {
                    holds: false,
                    sets: Some((xs, to_vec(t))),
                });
            }
        }
    }
    Ok(B9Report {
        holds: true,
        sets: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::OrderFrame;

    fn set(ws: &[usize]) -> BTreeSet<usize> {
        ws.iter().copied().collect()
    }

    #[test]
    fn union_of_two_copies() {
        let a = Frame3::from_triples(3, [(0, 1, 2)]).unwrap();
        let u = disjoint_union(&[a.clone(), a.clone()]);
        assert_eq!(u.worlds(), 6);
        assert_eq!(u.triples().collect::<Vec<_>>(), vec![(0, 1, 2), (3, 4, 5)]);
        assert_eq!(disjoint_union(std::slice::from_ref(&a)), a);
        assert_eq!(disjoint_union(&[]), Frame3::new(0));
    }

    #[test]
    fn middle_generated_subframes() {
        let f = OrderFrame::chain(&[0, 1, 2]).to_betweenness();
        let (sub, incl) = generated_subframe(&f, &set(&[0]), Coord::Middle).unwrap();
        assert_eq!((sub, incl), (Frame3::new(1), vec![0]));
        let (sub, incl) = generated_subframe(&f, &set(&[1]), Coord::Middle).unwrap();
        assert_eq!((sub, incl), (f.clone(), vec![0, 1, 2]));
        let (sub, _) = generated_subframe(&f, &set(&[0, 1, 2]), Coord::Middle).unwrap();
        assert_eq!(sub, f);
    }

    #[test]
    fn first_coordinate_generation() {
        let f = Frame3::from_triples(4, [(0, 1, 2), (2, 3, 3)]).unwrap();
        let (_, incl) = generated_subframe(&f, &set(&[0]), Coord::First).unwrap();
        assert_eq!(incl, vec![0, 1, 2, 3]);
        let (_, incl) = generated_subframe(&f, &set(&[1]), Coord::First).unwrap();
        assert_eq!(incl, vec![1]);
        assert!(generated_subframe(&f, &set(&[4]), Coord::First).is_err());
    }

    #[test]
    fn identity_is_a_bounded_morphism() {
        let f = OrderFrame::chain(&[3, 1, 0, 2]).to_betweenness();
        for coord in [Coord::First, Coord::Middle] {
            let spec = MorphismSpec {
                source: f.clone(),
                target: f.clone(),
                map: vec![0, 1, 2, 3],
                coord,
            };
            let r = check_bounded_morphism(&spec).unwrap();
            assert!(r.holds() && r.surjective);
        }
    }

    #[test]
    fn morphism_failures_are_located() {
        let src = Frame3::from_triples(3, [(0, 1, 2)]).unwrap();
        let tgt = Frame3::from_triples(3, [(0, 1, 2), (2, 1, 0)]).unwrap();
        let id = vec![0, 1, 2];
        let spec = MorphismSpec {
            source: src.clone(),
            target: tgt.clone(),
            map: id.clone(),
            coord: Coord::Middle,
        };
        let r = check_bounded_morphism(&spec).unwrap();
        assert!(r.forth.holds);
        assert_eq!(r.back, CheckReport::fail(vec![1, 2, 0]));
        assert_eq!(r.back_failures, vec![1]);
        let flipped = MorphismSpec {
            source: tgt,
            target: src,
            map: id,
            coord: Coord::Middle,
        };
        assert_eq!(
            check_bounded_morphism(&flipped).unwrap().forth,
            CheckReport::fail(vec![2, 1, 0])
        );
    }

    #[test]
    fn ue_of_a_three_chain() {
        let f = OrderFrame::chain(&[0, 1, 2]).to_betweenness();
        let r = ultrafilter_extension_finite(&f, Coord::Middle).unwrap();
        assert!(r.report.holds);
        assert_eq!(r.frame, f);
        assert_eq!(m_relation(&f, &set(&[1]), &set(&[2]), Coord::First), set(&[0]));
        assert_eq!(m_relation(&f, &set(&[0]), &set(&[2]), Coord::Middle), set(&[1]));
        assert_eq!(m_relation(&f, &set(&[1]), &set(&[2]), Coord::Middle), set(&[]));
        let one = Frame3::from_triples(1, [(0, 0, 0)]).unwrap();
        assert_eq!(ultrafilter_extension_finite(&one, Coord::First).unwrap().frame, one);
    }

    /// Every ultrafilter on a set of at most three worlds, found by brute force
    /// over all families of subsets.
    fn ultrafilters(n: usize) -> Vec<Vec<usize>> {
        let subsets = 1usize << n;
        let full = subsets - 1;
        let mut out = Vec::new();
        for family in 0u64..1 << subsets {
            let has = |s: usize| family >> s & 1 == 1;
            let upward = (0..subsets).all(|a| (0..subsets).all(|b| !(has(a) && a & b == a) || has(b)));
            let meets = (0..subsets).all(|a| (0..subsets).all(|b| !(has(a) && has(b)) || has(a & b)));
            let ultra = (0..subsets).all(|a| has(a) != has(full & !a));
            if upward && meets && ultra && !has(0) {
                out.push((0..subsets).filter(|s| has(*s)).collect());
            }
        }
        out
    }

    #[test]
    fn ultrafilters_on_small_sets_are_principal() {
        for n in 1..=3 {
            let us = ultrafilters(n);
            assert_eq!(us.len(), n);
            for u in us {
                let generator = (0..n).find(|w| u.contains(&(1 << w))).unwrap();
                assert!(u.iter().all(|s| s >> generator & 1 == 1));
            }
        }
    }

    #[test]
    fn ue_agrees_between_literal_and_singleton_forms() {
        let f = Frame3::from_triples(9, [(0, 1, 2), (3, 4, 5), (8, 7, 6)]).unwrap();
        let r = ultrafilter_extension_finite(&f, Coord::Middle).unwrap();
        assert!(r.report.holds);
        for seed in 0..20 {
            let f = Frame3::random(5, num_rational::Ratio::new(1, 4), seed);
            for coord in [Coord::First, Coord::Middle] {
                let r = ultrafilter_extension_finite(&f, coord).unwrap();
                assert!(r.report.holds);
                assert_eq!(r.frame, f);
            }
        }
    }

    #[test]
    fn completeness_on_small_frames() {
        assert!(check_b9_finite(&Frame3::new(3)).unwrap().holds);
        // adjacent points of a finite chain have an outside point but nothing between
        let chain = OrderFrame::chain(&[0, 1, 2, 3]).to_betweenness();
        let r = check_b9_finite(&chain).unwrap();
        assert_eq!(r.sets, Some((vec![1], vec![2, 3])));
        assert!(!brute_b9(&chain));
        let f = Frame3::from_triples(3, [(1, 0, 2), (2, 0, 1)]).unwrap();
        let r = check_b9_finite(&f).unwrap();
        assert_eq!(r.holds, brute_b9(&f));
        assert!(check_b9_finite(&Frame3::new(13)).is_err());
    }

    /// B9 over every pair of subsets, straight from the definition.
    fn brute_b9(f: &Frame3) -> bool {
        let n = f.worlds();
        let members = |s: usize| (0..n).filter(move |k| s >> k & 1 == 1);
        (0..1usize << n).all(|x| {
            (0..1usize << n).all(|y| {
                let ante = (0..n).any(|w| members(x).all(|a| members(y).all(|b| f.has(w, a, b))));
                let cons = (0..n).any(|u| members(x).all(|a| members(y).all(|b| f.has(a, u, b))));
                !ante || cons
            })
        })
    }

    #[test]
    fn completeness_matches_the_definition() {
        for seed in 0..200 {
            let n = 1 + (seed % 4) as usize;
            let f = Frame3::random(n, num_rational::Ratio::new(1, 3), seed);
            let r = check_b9_finite(&f).unwrap();
            assert_eq!(r.holds, brute_b9(&f), "{f:?}");
            if let Some((x, y)) = r.sets {
                let ante = (0..n).any(|w| x.iter().all(|&a| y.iter().all(|&b| f.has(w, a, b))));
                let cons = (0..n).any(|u| x.iter().all(|&a| y.iter().all(|&b| f.has(a, u, b))));
                assert!(ante && !cons);
            }
        }
    }
}
