//! Dense univariate polynomials over ℤ and ℚ, coefficients low to high.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::Rational;

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<Rational>;

pub fn trim_z(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn trim_q(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn deg<T>(a: &[T]) -> usize {
    a.len().saturating_sub(1)
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if a.last().is_some_and(|l| l.is_negative()) {
        -c
    } else {
        c
    };
    trim_z(a.iter().map(|x| x / &sign).collect())
}

pub fn mul_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_z(out)
}

/// Exact quotient a / b over ℤ, if it exists.
pub fn div_exact_z(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let b = trim_z(b.to_vec());
    let mut r = trim_z(a.to_vec());
    if b.is_empty() {
        return None;
    }
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().expect("nonzero").clone();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    while !r.is_empty() && r.len() >= b.len() {
        let lr = r.last().expect("nonzero").clone();
        if !(&lr % &lb).is_zero() {
            return None;
        }
        let c = &lr / &lb;
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r = trim_z(r);
    }
    r.is_empty().then(|| trim_z(q))
}

pub fn to_q(a: &[BigInt]) -> QPoly {
    a.iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect()
}

/// Primitive integer polynomial proportional to a rational one.
pub fn from_q(a: &[Rational]) -> ZPoly {
    let l = crate::algebra::denominator_lcm(a);
    primitive(
        &a.iter()
            .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
            .collect::<Vec<_>>(),
    )
}

pub fn divrem_q(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let b = trim_q(b.to_vec());
    let mut r = trim_q(a.to_vec());
    let lb = b.last().expect("division by zero polynomial").clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while !r.is_empty() && r.len() >= b.len() {
        let c = r.last().expect("nonzero") / &lb;
        let shift = r.len() - b.len();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        r.pop();
        q[shift] = c;
        r = trim_q(r);
    }
    (trim_q(q), r)
}

pub fn monic_q(a: &[Rational]) -> QPoly {
    let l = a.last().expect("nonzero").clone();
    a.iter().map(|x| x / &l).collect()
}

pub fn gcd_q(a: &[Rational], b: &[Rational]) -> QPoly {
    let (mut a, mut b) = (trim_q(a.to_vec()), trim_q(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem_q(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic_q(&a)
    }
}

pub fn derivative_q(a: &[Rational]) -> QPoly {
    trim_q(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub fn sub_q(a: &[Rational], b: &[Rational]) -> QPoly {
    let len = a.len().max(b.len());
    trim_q(
        (0..len)
            .map(|k| {
                a.get(k).cloned().unwrap_or_else(Rational::zero)
                    - b.get(k).cloned().unwrap_or_else(Rational::zero)
            })
            .collect(),
    )
}

/// Yun's squarefree decomposition: pairs (primitive squarefree factor, multiplicity).
pub fn squarefree_z(f: &[BigInt]) -> Vec<(ZPoly, usize)> {
    let f = to_q(&trim_z(f.to_vec()));
    let mut out = Vec::new();
    if deg(&f) == 0 {
        return out;
    }
    let fp = derivative_q(&f);
    let a0 = gcd_q(&f, &fp);
    let mut b = divrem_q(&f, &a0).0;
    let c = divrem_q(&fp, &a0).0;
    let mut d = sub_q(&c, &derivative_q(&b));
    let mut i = 1;
    while deg(&b) > 0 {
        let a = gcd_q(&b, &d);
        if deg(&a) > 0 {
            out.push((from_q(&a), i));
        }
        b = divrem_q(&b, &a).0;
        let c = divrem_q(&d, &a).0;
        d = sub_q(&c, &derivative_q(&b));
        i += 1;
    }
    out
}
