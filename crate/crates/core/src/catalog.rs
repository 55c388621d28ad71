//! Ready-made surfaces used by the examples, tests and the CLI fixtures.

use crate::model::{Leaf, Sign, TssSurface, ZeroCurve};
use crate::rational::Rational;

/// `44/7`, the usual rational stand-in for `2*pi`.
pub fn two_pi_approx() -> Rational {
    Rational::new(44.into(), 7.into())
}

/// `22/7`.
pub fn pi_approx() -> Rational {
    Rational::new(22.into(), 7.into())
}

fn leaf(id: &str, genus: u32, sign: Sign, volume: i64, free_boundary: u32) -> Leaf {
    Leaf {
        id: id.to_string(),
        genus,
        sign,
        volume: Rational::from_integer(volume.into()),
        free_boundary,
    }
}

fn curve(id: &str, period: Rational, neg: &str, pos: &str) -> ZeroCurve {
    ZeroCurve {
        id: id.to_string(),
        period,
        neg_leaf: neg.to_string(),
        pos_leaf: pos.to_string(),
    }
}

/// Sphere cut along the equator into a positive disc `N` and a negative disc `S`.
pub fn sphere_equator(period: Rational) -> TssSurface {
    TssSurface {
        closed: true,
        leaves: vec![
            leaf("N", 0, Sign::Plus, 1, 0),
            leaf("S", 0, Sign::Minus, -1, 0),
        ],
        curves: vec![curve("E", period, "S", "N")],
    }
}

/// Open cylinder `r in (-1, 1)` with `pi = r d_r ^ d_theta`: one zero curve
/// at `r = 0` between the negative half `Cm` and the positive half `Cp`.
pub fn cylinder_one_curve(period: Rational) -> TssSurface {
    TssSurface {
        closed: false,
        leaves: vec![
            leaf("Cm", 0, Sign::Minus, -3, 1),
            leaf("Cp", 0, Sign::Plus, 3, 1),
        ],
        curves: vec![curve("T", period, "Cm", "Cp")],
    }
}

/// Open cylinder `r in (-2, 2)` with `pi = (r^2 - 1) d_r ^ d_theta`: zero
/// curves `T1` at `r = -1` and `T2` at `r = 1`, with the negative annulus `L`
/// between them.
pub fn cylinder_two_curves(period_1: Rational, period_2: Rational) -> TssSurface {
    TssSurface {
        closed: false,
        leaves: vec![
            leaf("Mm", 0, Sign::Plus, 2, 1),
            leaf("L", 0, Sign::Minus, -1, 0),
            leaf("Mp", 0, Sign::Plus, 2, 1),
        ],
        curves: vec![
            curve("T1", period_1, "L", "Mm"),
            curve("T2", period_2, "L", "Mp"),
        ],
    }
}

/// Open cylinder cut by `n >= 1` parallel separating curves into leaves
/// `L0 .. Ln` with alternating signs, `L0` positive.
pub fn cylinder_chain(n: usize, period: Rational) -> TssSurface {
    assert!(n >= 1);
    let sign = |i: usize| if i.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
    let leaves = (0..=n)
        .map(|i| {
            let free = u32::from(i == 0) + u32::from(i == n);
            let v = if sign(i) == Sign::Plus { 1 } else { -1 };
            leaf(&format!("L{i}"), 0, sign(i), v, free)
        })
        .collect();
    let curves = (0..n)
        .map(|i| {
            let (a, b) = (format!("L{i}"), format!("L{}", i + 1));
            let (neg, pos) = if sign(i) == Sign::Minus { (a, b) } else { (b, a) };
            curve(&format!("T{i}"), period.clone(), &neg, &pos)
        })
        .collect();
    TssSurface {
        closed: false,
        leaves,
        curves,
    }
}

/// Torus cut by `n` (even, `>= 2`) parallel non-separating curves into `n`
/// annuli `L0 .. L{n-1}` with alternating signs.
pub fn torus_parallel(n: usize, period: Rational) -> TssSurface {
    assert!(n >= 2 && n.is_multiple_of(2), "sign alternation needs an even count");
    let sign = |i: usize| if i.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
    let leaves = (0..n)
        .map(|i| {
            let v = if sign(i) == Sign::Plus { 1 } else { -1 };
            leaf(&format!("L{i}"), 0, sign(i), v, 0)
        })
        .collect();
    let curves = (0..n)
        .map(|i| {
            let (a, b) = (format!("L{i}"), format!("L{}", (i + 1) % n));
            let (neg, pos) = if sign(i) == Sign::Minus { (a, b) } else { (b, a) };
            curve(&format!("T{i}"), period.clone(), &neg, &pos)
        })
        .collect();
    TssSurface {
        closed: true,
        leaves,
        curves,
    }
}

/// Closed genus-2 surface cut by one separating curve into two one-holed tori.
pub fn genus2_separating(period: Rational) -> TssSurface {
    TssSurface {
        closed: true,
        leaves: vec![
            leaf("A", 1, Sign::Plus, 1, 0),
            leaf("B", 1, Sign::Minus, -1, 0),
        ],
        curves: vec![curve("T", period, "B", "A")],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;

    #[test]
    fn catalog_surfaces_are_valid() {
        let p = two_pi_approx();
        let mut all = vec![
            sphere_equator(p.clone()),
            cylinder_one_curve(p.clone()),
            cylinder_two_curves(pi_approx(), pi_approx()),
            genus2_separating(p.clone()),
        ];
        all.extend((1..=6).map(|n| cylinder_chain(n, p.clone())));
        all.extend((1..=4).map(|k| torus_parallel(2 * k, p.clone())));
        for s in &all {
            let r = validate(s);
            assert!(r.is_valid(), "{s:?}: {r}");
        }
    }
}
