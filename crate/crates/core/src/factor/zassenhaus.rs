//! Factorization in ℤ[x]: modular factorization, Hensel lifting, recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, PPoly};
use super::zpoly::{div_exact_z, mul_z, primitive, squarefree_z, trim_z, ZPoly};

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Upper limit on subset products tried during recombination.
const RECOMBINATION_LIMIT: usize = 1 << 16;

fn modm(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim_z(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn sym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim_z(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn add_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let len = a.len().max(b.len());
    modm(
        &(0..len)
            .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
            .collect::<Vec<_>>(),
        m,
    )
}

fn sub_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let len = a.len().max(b.len());
    modm(
        &(0..len)
            .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
            .collect::<Vec<_>>(),
        m,
    )
}

fn mul_m(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    modm(&mul_z(a, b), m)
}

/// Division by a monic polynomial modulo m.
fn divrem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = modm(a, m);
    if r.len() < h.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - h.len() + 1];
    while r.len() >= h.len() && !r.is_empty() {
        let c = r.last().expect("nonzero").clone();
        let shift = r.len() - h.len();
        for (j, y) in h.iter().enumerate() {
            r[shift + j] = (&r[shift + j] - &c * y).mod_floor(m);
        }
        q[shift] = c;
        r = trim_z(r);
    }
    (trim_z(q), r)
}

fn lift_z(a: &PPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let eg = a.mod_floor(m).extended_gcd(m);
    eg.x.mod_floor(m)
}

/// Quadratic Hensel lifting of f ≡ g·h (h monic) from p to `big` = p^(2^k).
fn hensel_pair(f: &ZPoly, g0: &PPoly, h0: &PPoly, p: u64, big: &BigInt) -> (ZPoly, ZPoly) {
    let (one, s0, t0) = modp::ext_gcd(g0, h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (lift_z(g0), lift_z(h0), lift_z(&s0), lift_z(&t0));
    let mut m = BigInt::from(p);
    while &m < big {
        let mm = &m * &m;
        let e = sub_m(f, &mul_z(&g, &h), &mm);
        let (q, r) = divrem_monic(&mul_z(&s, &e), &h, &mm);
        let g1 = add_m(&add_m(&g, &mul_z(&t, &e), &mm), &mul_z(&q, &g), &mm);
        let h1 = add_m(&h, &r, &mm);
        let b = sub_m(
            &add_m(&mul_z(&s, &g1), &mul_z(&t, &h1), &mm),
            &[BigInt::one()],
            &mm,
        );
        let (c, d) = divrem_monic(&mul_z(&s, &b), &h1, &mm);
        s = sub_m(&s, &d, &mm);
        t = sub_m(&sub_m(&t, &mul_z(&t, &b), &mm), &mul_z(&c, &g1), &mm);
        g = g1;
        h = h1;
        m = mm;
    }
    (g, h)
}

/// Lifts the monic modular factors of f to monic factors modulo `big`.
fn hensel_tree(f: &ZPoly, facs: &[PPoly], p: u64, big: &BigInt) -> Vec<ZPoly> {
    let lc = f.last().expect("nonzero").clone();
    if facs.len() == 1 {
        let inv = mod_inverse(&lc, big);
        return vec![modm(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), big)];
    }
    let k = facs.len() / 2;
    let lcp = modp::reduce_z(&[lc], p);
    let g0 = facs[..k].iter().fold(lcp, |acc, u| modp::mul(&acc, u, p));
    let h0 = facs[k..]
        .iter()
        .fold(vec![1u64], |acc, u| modp::mul(&acc, u, p));
    let (g, h) = hensel_pair(f, &g0, &h0, p, big);
    let mut out = hensel_tree(&g, &facs[..k], p, big);
    out.extend(hensel_tree(&h, &facs[k..], p, big));
    out
}

fn max_abs(f: &[BigInt]) -> BigInt {
    f.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Irreducible factors of a primitive squarefree polynomial, or `None` when
/// recombination would exceed the search budget.
pub fn factor_squarefree(f: &ZPoly, seed: u64) -> Option<Vec<ZPoly>> {
    let f = primitive(f);
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return Some(vec![f]);
    }
    let lc = f.last().expect("nonzero").clone();
    let mut best: Option<(u64, usize)> = None;
    let mut tried = 0;
    for &p in &PRIMES {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = modp::reduce_z(&f, p);
        if fp.len() != f.len() || !modp::is_squarefree(&fp, p) {
            continue;
        }
        let c = modp::count_factors(&fp, p);
        if best.is_none_or(|(_, bc)| c < bc) {
            best = Some((p, c));
        }
        tried += 1;
        if c == 1 || tried >= 6 {
            break;
        }
    }
    let (p, count) = best?;
    if count == 1 {
        return Some(vec![f]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let facs = modp::factor_monic(&modp::reduce_z(&f, p), p, &mut rng);
    let bound =
        BigInt::from(2) * lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * max_abs(&f);
    let mut big = BigInt::from(p);
    while big <= bound {
        big = &big * &big;
    }
    let lifted = hensel_tree(&f, &facs, p, &big);

    let mut remaining: Vec<ZPoly> = lifted;
    let mut cur = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    let mut budget = RECOMBINATION_LIMIT;
    while 2 * size <= remaining.len() {
        let mut found = None;
        for subset in combinations(remaining.len(), size) {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let lcc = cur.last().expect("nonzero").clone();
            let prod = subset
                .iter()
                .fold(vec![lcc], |acc, &i| mul_m(&acc, &remaining[i], &big));
            let cand = primitive(&sym(&prod, &big));
            if cand.len() > 1 {
                if let Some(q) = div_exact_z(&cur, &cand) {
                    found = Some((subset, cand, q));
                    break;
                }
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                cur = q;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
            }
            None => size += 1,
        }
    }
    out.push(primitive(&cur));
    out.sort();
    Some(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Complete factorization over ℤ up to content: (irreducible primitive factor, multiplicity).
pub fn factor_z(f: &ZPoly, seed: u64) -> Option<Vec<(ZPoly, usize)>> {
    let mut out = Vec::new();
    for (g, mult) in squarefree_z(f) {
        for h in factor_squarefree(&g, seed)? {
            out.push((h, mult));
        }
    }
    Some(out)
}
