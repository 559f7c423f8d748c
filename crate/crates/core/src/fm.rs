//! Fourier–Motzkin elimination for small systems of linear inequalities over ℚ.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::algebra::Rational;

/// `coeffs · v >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint { coeffs, rhs }
    }

    pub fn holds(&self, v: &[Rational]) -> bool {
        crate::algebra::dot(&self.coeffs, v) >= self.rhs
    }
}

/// Scales so the largest absolute coefficient is 1, then keeps the tightest rhs
/// per normal direction.
fn simplify(cs: Vec<Constraint>) -> Vec<Constraint> {
    let mut best: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    let mut trivial = Vec::new();
    for c in cs {
        let m = c
            .coeffs
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        if m.is_zero() {
            trivial.push(c);
            continue;
        }
        let coeffs: Vec<Rational> = c.coeffs.iter().map(|x| x / &m).collect();
        let rhs = &c.rhs / &m;
        best.entry(coeffs)
            .and_modify(|r| {
                if rhs > *r {
                    *r = rhs.clone()
                }
            })
            .or_insert(rhs);
    }
    // Keep only the most violated trivial constraint (0 >= rhs).
    let worst = trivial.into_iter().max_by(|a, b| a.rhs.cmp(&b.rhs));
    best.into_iter()
        .map(|(coeffs, rhs)| Constraint { coeffs, rhs })
        .chain(worst)
        .collect()
}

fn eliminate(cs: &[Constraint], j: usize) -> Vec<Constraint> {
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for c in cs {
        if c.coeffs[j].is_positive() {
            pos.push(c);
        } else if c.coeffs[j].is_negative() {
            neg.push(c);
        } else {
            rest.push(c.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let a = &p.coeffs[j];
            let b = -&n.coeffs[j];
            let coeffs = p
                .coeffs
                .iter()
                .zip(&n.coeffs)
                .map(|(x, y)| x * &b + y * a)
                .collect();
            rest.push(Constraint {
                coeffs,
                rhs: &p.rhs * &b + &n.rhs * a,
            });
        }
    }
    simplify(rest)
}

/// Finds a feasible point, choosing each coordinate in turn as small as the
/// projected system allows (coordinates without a lower bound take min(0, upper)).
pub fn feasible_point(constraints: &[Constraint], k: usize) -> Option<Vec<Rational>> {
    let mut stages: Vec<Vec<Constraint>> = vec![simplify(constraints.to_vec())];
    for j in (0..k).rev() {
        let next = eliminate(stages.last().expect("stage"), j);
        stages.push(next);
    }
    stages.reverse();
    // stages[i] involves variables 0..i only.
    if stages[0].iter().any(|c| c.rhs.is_positive()) {
        return None;
    }
    let mut v: Vec<Rational> = vec![Rational::zero(); k];
    for i in 0..k {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for c in &stages[i + 1] {
            let a = &c.coeffs[i];
            if a.is_zero() {
                continue;
            }
            let partial = (0..i).fold(Rational::zero(), |s, l| s + &c.coeffs[l] * &v[l]);
            let bound = (&c.rhs - partial) / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|x| bound > *x) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|x| bound < *x) {
                hi = Some(bound);
            }
        }
        v[i] = match (lo, hi) {
            (Some(l), Some(h)) if l > h => return None,
            (Some(l), _) => l,
            (None, Some(h)) => h.min(Rational::zero()),
            (None, None) => Rational::zero(),
        };
    }
    constraints.iter().all(|c| c.holds(&v)).then_some(v)
}
