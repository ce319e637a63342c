#![allow(dead_code)]

use bhlogic::dense::{LinearSet, Surd};
use bhlogic::finite::{AxiomId, Frame3};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every tuple of `k` worlds out of `n`.
pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(k as u32).unwrap_or(0);
    (0..total).map(move |mut code| {
        let mut v = vec![0; k];
        for slot in v.iter_mut() {
            *slot = code % n;
            code /= n;
        }
        v
    })
}

fn exists(n: usize, mut p: impl FnMut(usize) -> bool) -> bool {
    (0..n).any(&mut p)
}

/// The frame condition `axiom`, evaluated by plain quantification over all
/// assignments of its variables.
pub fn brute_axiom(f: &Frame3, axiom: AxiomId) -> bool {
    use AxiomId::*;
    let n = f.worlds();
    let b = |x: usize, y: usize, z: usize| f.has(x, y, z);
    let all = |k: usize, p: &dyn Fn(&[usize]) -> bool| tuples(n, k).all(|v| p(&v));
    match axiom {
        B1 => all(3, &|v| {
            !b(v[0], v[1], v[2]) || (v[0] != v[1] && v[1] != v[2] && v[0] != v[2])
        }),
        B2 => all(3, &|v| !b(v[0], v[1], v[2]) || b(v[2], v[1], v[0])),
        B3 => all(3, &|v| !b(v[0], v[1], v[2]) || !b(v[0], v[2], v[1])),
        B4 => all(4, &|v| {
            !(b(v[0], v[1], v[2]) && b(v[1], v[2], v[3])) || b(v[0], v[1], v[3])
        }),
        B5 => all(4, &|v| {
            !(b(v[0], v[1], v[2]) && b(v[1], v[3], v[2])) || b(v[0], v[1], v[3])
        }),
        B6 => all(3, &|v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            x == y || y == z || x == z || b(x, y, z) || b(x, z, y) || b(y, x, z)
        }),
        B7 => (0..n).all(|y| exists(n, |x| exists(n, |z| b(x, y, z)))),
        B8 => all(2, &|v| v[0] == v[1] || exists(n, |y| b(v[0], y, v[1]))),
        B4p => all(4, &|v| {
            !(b(v[0], v[1], v[2]) && b(v[1], v[2], v[3])) || b(v[0], v[2], v[3])
        }),
        B5p => all(4, &|v| {
            !(b(v[0], v[1], v[2]) && b(v[1], v[3], v[2])) || b(v[0], v[3], v[2])
        }),
        B6six => all(3, &|v| {
            let (x, y, z) = (v[0], v[1], v[2]);
            x == y
                || y == z
                || x == z
                || [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)]
                    .iter()
                    .any(|t| b(t.0, t.1, t.2))
        }),
        B5m => all(4, &|v| {
            let (x, y, z, u) = (v[0], v[1], v[2], v[3]);
            !(b(x, y, z) && b(x, u, y)) || (b(x, u, z) && b(u, y, z))
        }),
        Proj1 => all(4, &|v| {
            let (a, x, y, w) = (v[0], v[1], v[2], v[3]);
            !(b(a, x, y) && b(a, x, w)) || y == w || b(x, w, y) || b(x, y, w)
        }),
        Proj2 => all(4, &|v| {
            let (a, u, y, w) = (v[0], v[1], v[2], v[3]);
            !(b(a, u, y) && b(a, w, y)) || u == w || b(a, u, w) || b(a, w, u)
        }),
        Side => all(2, &|v| {
            let (x, w) = (v[0], v[1]);
            x == w || (exists(n, |u| b(x, w, u)) && exists(n, |u| b(u, x, w)))
        }),
        DSound => all(5, &|v| {
            let (x, a, y, bb, u) = (v[0], v[1], v[2], v[3], v[4]);
            !(b(x, a, y) && b(x, bb, y) && b(a, u, bb)) || b(x, u, y)
        }),
        Ccp => all(7, &|v| {
            let (y, x, z, y0, y1, z0, z1) = (v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
            !(b(y, x, z) && b(y0, y, y1) && b(z0, z, z1))
                || b(y0, x, z0)
                || b(y0, x, z1)
                || b(y1, x, z0)
                || b(y1, x, z1)
        }),
    }
}

/// Forth and back for a map that evaluates at the middle coordinate.
pub fn brute_morphism(src: &Frame3, tgt: &Frame3, map: &[usize]) -> (bool, Vec<usize>) {
    let forth = src.triples().all(|(x, y, z)| tgt.has(map[x], map[y], map[z]));
    let m = tgt.worlds();
    let back_failures = (0..src.worlds())
        .filter(|&w| {
            !tuples(m, 2).all(|ab| {
                !tgt.has(ab[0], map[w], ab[1])
                    || src
                        .triples()
                        .any(|(a, v, b)| v == w && map[a] == ab[0] && map[b] == ab[1])
            })
        })
        .collect();
    (forth, back_failures)
}

/// Frames of `n` worlds whose triples appear independently with a density
/// drawn from eighths.
pub fn seeded_frame(n: usize, seed: u64) -> Frame3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = Ratio::new(rng.gen_range(0..=8), 8);
    Frame3::random_with(n, density, &mut rng)
}

/// The integers of `lo..=hi` lying in `s`.
pub fn integer_points(s: &LinearSet, lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|k| s.covers(&Surd::int(*k))).collect()
}

/// Points of `lo..=hi` strictly between a member of `xs` and one of `ys`.
pub fn pairwise_between(xs: &[i64], ys: &[i64], lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi)
        .filter(|w| {
            xs.iter()
                .any(|x| ys.iter().any(|y| (x < w && w < y) || (y < w && w < x)))
        })
        .collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}
