//! Polynomials over F_p (p an odd prime below 2^31) and their factorization.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type PPoly = Vec<u64>;

pub fn trim(mut a: PPoly) -> PPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn reduce_z(a: &[BigInt], p: u64) -> PPoly {
    let pb = BigInt::from(p);
    trim(
        a.iter()
            .map(|c| ((c % &pb + &pb) % &pb).to_u64().expect("small"))
            .collect(),
    )
}

fn inv(a: u64, p: u64) -> u64 {
    pow_u(a, p - 2, p)
}

fn pow_u(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let len = a.len().max(b.len());
    trim(
        (0..len)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> PPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let li = inv(*b.last().expect("nonzero divisor"), p);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().expect("nonzero") * li % p;
        let shift = r.len() - b.len();
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - c * y % p) % p;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(a: &[u64], p: u64) -> PPoly {
    let li = inv(*a.last().expect("nonzero"), p);
    a.iter().map(|c| c * li % p).collect()
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> PPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(&a, p)
    }
}

/// Extended gcd: (g, s, t) with s·a + t·b = g monic.
pub fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (PPoly, PPoly, PPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let li = inv(*r0.last().expect("nonzero gcd"), p);
    let sc = |v: &[u64]| trim(v.iter().map(|c| c * li % p).collect());
    (sc(&r0), sc(&s0), sc(&t0))
}

pub fn derivative(a: &[u64], p: u64) -> PPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> PPoly {
    let mut r = vec![1u64];
    let mut b = divrem(base, m, p).1;
    for i in 0..e.bits() {
        if e.bit(i) {
            r = divrem(&mul(&r, &b, p), m, p).1;
        }
        b = divrem(&mul(&b, &b, p), m, p).1;
    }
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(PPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
            break;
        }
        h = powmod(&h, &BigUint::from(p), &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = divrem(&h, &f, p).1;
            out.push((g, d));
        }
    }
    out
}

/// Cantor–Zassenhaus splitting of a monic product of degree-d irreducibles.
pub fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: PPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() <= 1 {
            continue;
        }
        let b = sub(&powmod(&a, &e, f, p), &[1], p);
        let g = gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let q = monic(&divrem(f, &g, p).0, p);
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&q, d, p, rng));
            return out;
        }
    }
}

pub fn is_squarefree(f: &[u64], p: u64) -> bool {
    let df = derivative(f, p);
    !df.is_empty() && gcd(f, &df, p).len() == 1
}

pub fn count_factors(f: &[u64], p: u64) -> usize {
    distinct_degree(&monic(f, p), p)
        .iter()
        .map(|(g, d)| (g.len() - 1) / d)
        .sum()
}

pub fn factor_monic(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&monic(f, p), p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}
