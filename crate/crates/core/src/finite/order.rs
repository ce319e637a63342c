use std::fmt;
use std::str::FromStr;

use super::{check_axiom, AxiomId, CheckReport, FiniteError, Frame3, OrderFrame};

/// Conditions on strict orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderAxiom {
    /// `x < y → ¬ y < x`
    L1,
    /// `x < y ∧ y < z → x < z`
    L2,
    /// `x ≠ y → x < y ∨ y < x`
    L3,
    /// `∀x ∃y,z  y < x < z`
    L4,
    /// `x < y → ∃z  x < z < y`
    L5,
}

impl fmt::Display for OrderAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for OrderAxiom {
    type Err = FiniteError;

    fn from_str(s: &str) -> Result<OrderAxiom, FiniteError> {
        Ok(match s.trim() {
            "L1" => OrderAxiom::L1,
            "L2" => OrderAxiom::L2,
            "L3" => OrderAxiom::L3,
            "L4" => OrderAxiom::L4,
            "L5" => OrderAxiom::L5,
            other => return Err(FiniteError::UnknownAxiom(other.to_string())),
        })
    }
}

pub fn check_order_axiom(o: &OrderFrame, axiom: OrderAxiom) -> CheckReport {
    let n = o.worlds();
    let lt = |x, y| o.less(x, y);
    let first = |vars: usize, bad: &dyn Fn(&[usize]) -> bool| -> CheckReport {
        let mut v = vec![0; vars];
        loop {
            if bad(&v) {
                return CheckReport::fail(v);
            }
            let mut k = vars;
            loop {
                if k == 0 {
                    return CheckReport::pass();
                }
                k -= 1;
                v[k] += 1;
                if v[k] < n {
                    break;
                }
                v[k] = 0;
            }
        }
    };
    if n == 0 {
        return CheckReport::pass();
    }
    match axiom {
        OrderAxiom::L1 => first(2, &|v| lt(v[0], v[1]) && lt(v[1], v[0])),
        OrderAxiom::L2 => first(3, &|v| lt(v[0], v[1]) && lt(v[1], v[2]) && !lt(v[0], v[2])),
        OrderAxiom::L3 => first(2, &|v| v[0] != v[1] && !lt(v[0], v[1]) && !lt(v[1], v[0])),
        OrderAxiom::L4 => first(1, &|v| !((0..n).any(|y| lt(y, v[0])) && (0..n).any(|z| lt(v[0], z)))),
        OrderAxiom::L5 => first(2, &|v| lt(v[0], v[1]) && !(0..n).any(|z| lt(v[0], z) && lt(z, v[1]))),
    }
}

/// Recovers the linear order inducing `f` in which `origin` precedes
/// `positive`.
///
/// A world lies on the positive side of `origin` when it is `positive`, lies
/// between `origin` and `positive`, or has `positive` between it and
/// `origin`; otherwise it has `origin` between it and `positive`. The result
/// is checked to induce `f` again.
pub fn betweenness_to_order(f: &Frame3, origin: usize, positive: usize) -> Result<OrderFrame, FiniteError> {
    let n = f.worlds();
    for w in [origin, positive] {
        if w >= n {
            return Err(FiniteError::WorldOutOfRange { world: w, n });
        }
    }
    if origin == positive {
        return Err(FiniteError::Invalid("the two reference worlds must differ".into()));
    }
    use AxiomId::*;
    for axiom in [B1, B2, B3, B4, B5, B6] {
        let r = check_axiom(f, axiom);
        if let Some(witness) = r.witness {
            return Err(FiniteError::Precondition {
                axiom: axiom.to_string(),
                witness,
            });
        }
    }
    let pos = |x: usize| x == positive || f.has(origin, positive, x) || f.has(origin, x, positive);
    let neg = |x: usize| f.has(x, origin, positive);
    let mut o = OrderFrame::new(n);
    for a in 0..n {
        for b in 0..n {
            let less = if a == b {
                false
            } else if a == origin {
                pos(b)
            } else if b == origin {
                neg(a)
            } else if pos(a) && pos(b) {
                f.has(origin, a, b)
            } else if neg(a) && neg(b) {
                f.has(a, b, origin)
            } else {
                neg(a) && pos(b)
            };
            if less {
                o.insert(a, b);
            }
        }
    }
    if o.to_betweenness() != *f {
        return Err(FiniteError::Invalid(
            "the frame is not the betweenness of any linear order".into(),
        ));
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All linear orders of `0..n`, as listings from least to greatest.
    fn listings(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in listings(n - 1) {
            for k in 0..=rest.len() {
                let mut l = rest.clone();
                l.insert(k, n - 1);
                out.push(l);
            }
        }
        out
    }

    #[test]
    fn recovers_a_three_chain() {
        let f = OrderFrame::chain(&[0, 1, 2]).to_betweenness();
        // the only orders of 0..3 inducing f with 0 before 1
        let matches: Vec<_> = listings(3)
            .into_iter()
            .map(|l| OrderFrame::chain(&l))
            .filter(|o| o.to_betweenness() == f && o.less(0, 1))
            .collect();
        assert_eq!(matches.len(), 1);
        assert_eq!(betweenness_to_order(&f, 0, 1).unwrap(), matches[0]);
        assert_eq!(betweenness_to_order(&f, 1, 0).unwrap(), OrderFrame::chain(&[2, 1, 0]));
    }

    #[test]
    fn two_worlds_without_betweenness() {
        let o = betweenness_to_order(&Frame3::new(2), 0, 1).unwrap();
        assert_eq!(o, OrderFrame::chain(&[0, 1]));
    }

    #[test]
    fn round_trip_on_all_small_orders() {
        for n in 2..=6 {
            for l in listings(n) {
                let o = OrderFrame::chain(&l);
                let f = o.to_betweenness();
                assert_eq!(betweenness_to_order(&f, l[0], l[1]).unwrap(), o);
                let dual: Vec<usize> = l.iter().rev().copied().collect();
                assert_eq!(betweenness_to_order(&f, l[1], l[0]).unwrap(), OrderFrame::chain(&dual));
            }
        }
    }

    #[test]
    fn refuses_non_betweenness_frames() {
        let f = Frame3::from_triples(3, [(0, 1, 2)]).unwrap();
        assert_eq!(
            betweenness_to_order(&f, 0, 1),
            Err(FiniteError::Precondition {
                axiom: "B2".into(),
                witness: vec![0, 1, 2]
            })
        );
        assert!(betweenness_to_order(&Frame3::new(2), 0, 0).is_err());
        // B1 to B6 hold but three worlds with no betweenness are not a chain
        assert!(matches!(
            betweenness_to_order(&Frame3::new(3), 0, 1),
            Err(FiniteError::Precondition { .. })
        ));
    }

    #[test]
    fn order_axioms() {
        let o = OrderFrame::chain(&[0, 1, 2]);
        for a in [OrderAxiom::L1, OrderAxiom::L2, OrderAxiom::L3] {
            assert!(check_order_axiom(&o, a).holds);
        }
        assert_eq!(check_order_axiom(&o, OrderAxiom::L4), CheckReport::fail(vec![0]));
        assert_eq!(check_order_axiom(&o, OrderAxiom::L5), CheckReport::fail(vec![0, 1]));
        assert_eq!(
            check_order_axiom(&OrderFrame::new(2), OrderAxiom::L3),
            CheckReport::fail(vec![0, 1])
        );
    }
}
