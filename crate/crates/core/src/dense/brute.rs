use num_traits::ToPrimitive;

use super::linear_set::{Component, LinearSet};
use super::model::{DenseError, DenseModel};
use super::surd::Surd;
use crate::syntax::Formula;

/// Extension by direct enumeration over a bounded integer carrier.
///
/// Every clause is read off the satisfaction definition point by point, so
/// this serves as an independent check of [`DenseModel::extension`].
pub fn brute_force_extension(m: &DenseModel, f: &Formula) -> Result<LinearSet, DenseError> {
    let c = m.carrier();
    let not_finite = || DenseError::NotFinite(c.to_string());
    if !c.is_finite() {
        return Err(not_finite());
    }
    let (lo, hi) = (
        c.lower.as_ref().ok_or_else(not_finite)?,
        c.upper.as_ref().ok_or_else(not_finite)?,
    );
    let first = lo.value.ceil().to_i64().ok_or_else(not_finite)? + i64::from(!lo.closed && lo.value.is_integer());
    let last = hi.value.floor().to_i64().ok_or_else(not_finite)? - i64::from(!hi.closed && hi.value.is_integer());
    let world: Vec<i64> = (first..=last).collect();
    let truth = eval(m, &world, f)?;
    let comps = world
        .iter()
        .zip(&truth)
        .filter(|(_, t)| **t)
        .map(|(n, _)| Component::Point(Surd::int(*n)))
        .collect();
    Ok(LinearSet::from_components(c, comps))
}

fn eval(m: &DenseModel, world: &[i64], f: &Formula) -> Result<Vec<bool>, DenseError> {
    use Formula::*;
    let n = world.len();
    let index_of = |i: &str| -> Result<usize, DenseError> {
        let x = m
            .noms()
            .get(i)
            .ok_or_else(|| DenseError::UnboundNominal(i.to_string()))?;
        Ok(world
            .iter()
            .position(|w| Surd::int(*w) == *x)
            .expect("nominal inside the window"))
    };
    let pointwise = |a: Vec<bool>, b: Vec<bool>, op: fn(bool, bool) -> bool| -> Vec<bool> {
        a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
    };
    // x < w < y or y < w < x, on window indices
    let between = |x: usize, w: usize, y: usize| (x < w && w < y) || (y < w && w < x);
    Ok(match f {
        Top => vec![true; n],
        Bottom => vec![false; n],
        Prop(p) => {
            let s = m.props().get(p).ok_or_else(|| DenseError::UnboundProp(p.clone()))?;
            world.iter().map(|w| s.covers(&Surd::int(*w))).collect()
        }
        Nominal(i) => {
            let k = index_of(i)?;
            (0..n).map(|w| w == k).collect()
        }
        Not(g) => eval(m, world, g)?.into_iter().map(|x| !x).collect(),
        And(a, b) => pointwise(eval(m, world, a)?, eval(m, world, b)?, |x, y| x && y),
        Or(a, b) => pointwise(eval(m, world, a)?, eval(m, world, b)?, |x, y| x || y),
        Implies(a, b) => pointwise(eval(m, world, a)?, eval(m, world, b)?, |x, y| !x || y),
        Iff(a, b) => pointwise(eval(m, world, a)?, eval(m, world, b)?, |x, y| x == y),
        DiamondB(a, b) => {
            let (ta, tb) = (eval(m, world, a)?, eval(m, world, b)?);
            (0..n)
                .map(|w| (0..n).any(|x| ta[x] && (0..n).any(|y| tb[y] && between(x, w, y))))
                .collect()
        }
        Conv(g) => {
            let t = eval(m, world, g)?;
            (0..n)
                .map(|w| (0..n).any(|x| t[x] && (0..n).any(|y| t[y] && between(x, w, y))))
                .collect()
        }
        BoxB(a, b) => {
            let (ta, tb) = (eval(m, world, a)?, eval(m, world, b)?);
            (0..n)
                .map(|w| (0..n).all(|x| (0..n).all(|y| !between(x, w, y) || ta[x] || tb[y])))
                .collect()
        }
        At(i, g) => {
            let k = index_of(i)?;
            vec![eval(m, world, g)?[k]; n]
        }
        E(g) => vec![eval(m, world, g)?.into_iter().any(|x| x); n],
        A(g) => vec![eval(m, world, g)?.into_iter().all(|x| x); n],
    })
}
