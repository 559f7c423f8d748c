//! Irreducibility over ℚ for multivariate polynomials (Kronecker substitution
//! onto ℤ[t] factorization) and linear splittings of binary forms over a
//! number field.

mod modp;
mod zassenhaus;
mod zpoly;

pub use zassenhaus::factor_z;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{denominator_lcm, ExponentVector, Rational};
use crate::order::MonomialOrder;
use crate::polynomial::Polynomial;
use zpoly::{primitive, ZPoly};

/// Total degree above which irreducibility is not attempted.
pub const MAX_FACTOR_DEGREE: u64 = 24;
/// Largest univariate image degree attempted after Kronecker substitution.
const MAX_KRONECKER_DEGREE: u64 = 4000;
/// Largest number of univariate factors whose subsets are recombined.
const MAX_KRONECKER_FACTORS: usize = 16;
const SHIFT_ATTEMPTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// f = left · right with both factors nonconstant.
    Reducible(Polynomial, Polynomial),
    Unknown(String),
}

/// Exact quotient f / h in ℚ[x], if h divides f.
pub fn divide_exact(f: &Polynomial, h: &Polynomial) -> Option<Polynomial> {
    if h.is_zero() {
        return None;
    }
    let order = MonomialOrder::Lex;
    let (hl, hc) = h.leading_term(&order)?;
    let mut r = f.clone();
    let mut q = Polynomial::zero(f.vars());
    while let Some((rl, rc)) = r.leading_term(&order) {
        let shift = hl.quotient(&rl)?;
        let c = &rc / &hc;
        q = &q + &Polynomial::monomial(f.vars(), shift.clone(), c.clone());
        r = &r - &h.mul_term(&shift, &c);
    }
    Some(q)
}

fn radices(f: &Polynomial) -> Vec<u64> {
    (0..f.nvars()).map(|i| f.degree_in(i) as u64 + 1).collect()
}

fn kronecker_image(f: &Polynomial, radix: &[u64]) -> Option<ZPoly> {
    let l = denominator_lcm(f.terms().map(|(_, c)| c));
    let mut pairs = Vec::new();
    let mut maxdeg = 0u64;
    for (e, c) in f.terms() {
        let mut k = 0u64;
        let mut w = 1u64;
        for (&x, &r) in e.entries().iter().zip(radix) {
            k = k.checked_add((x as u64).checked_mul(w)?)?;
            w = w.checked_mul(r)?;
        }
        maxdeg = maxdeg.max(k);
        pairs.push((k, (c * Rational::from_integer(l.clone())).to_integer()));
    }
    if maxdeg > MAX_KRONECKER_DEGREE {
        return None;
    }
    let mut out = vec![BigInt::zero(); maxdeg as usize + 1];
    for (k, c) in pairs {
        out[k as usize] += c;
    }
    Some(out)
}

fn kronecker_inverse(g: &ZPoly, radix: &[u64], f: &Polynomial) -> Option<Polynomial> {
    let n = f.nvars();
    let mut terms = Vec::new();
    for (k, c) in g.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut k = k as u64;
        let mut e = vec![0u32; n];
        for (slot, &r) in e.iter_mut().zip(radix) {
            *slot = (k % r) as u32;
            k /= r;
        }
        if k != 0 {
            return None;
        }
        terms.push((ExponentVector::new(e), Rational::from_integer(c.clone())));
    }
    Some(Polynomial::from_terms(f.vars(), terms))
}

/// Homogenizes g (in all variables but `at` of f) back into f's ring.
fn rehomogenize(g: &Polynomial, f: &Polynomial, at: usize) -> Polynomial {
    let d = g.total_degree().unwrap_or(0) as u32;
    Polynomial::from_terms(
        f.vars(),
        g.terms()
            .map(|(e, c)| (e.with_inserted(at, d - e.degree() as u32), c.clone())),
    )
}

/// Decides irreducibility of f over ℚ.
pub fn rational_irreducibility(f: &Polynomial, seed: u64) -> Irreducibility {
    let n = f.nvars();
    let Some(d) = f.total_degree() else {
        return Irreducibility::Unknown("zero polynomial".into());
    };
    if d == 0 {
        return Irreducibility::Unknown("constant polynomial".into());
    }
    if d == 1 {
        return Irreducibility::Irreducible;
    }
    // Monomial content.
    let mins: Vec<u32> = (0..n)
        .map(|i| f.monomials().map(|e| e[i]).min().unwrap_or(0))
        .collect();
    if let Some(i) = mins.iter().position(|&m| m > 0) {
        let x = Polynomial::variable(f.vars(), i);
        let q = divide_exact(f, &x).expect("variable divides");
        return Irreducibility::Reducible(x, q);
    }
    if d > MAX_FACTOR_DEGREE {
        return Irreducibility::Unknown(format!("total degree {d} above {MAX_FACTOR_DEGREE}"));
    }
    if f.is_homogeneous() && n > 1 {
        // No variable divides f, so f is irreducible iff its affine chart is.
        let at = (0..n)
            .max_by_key(|&i| (f.degree_in(i), std::cmp::Reverse(i)))
            .expect("n > 1");
        let g = f.specialize(at, &Rational::one());
        return match rational_irreducibility(&g, seed) {
            Irreducibility::Reducible(h, _) => {
                let h = rehomogenize(&h, f, at);
                match divide_exact(f, &h) {
                    Some(q) => Irreducibility::Reducible(h, q),
                    None => Irreducibility::Unknown("affine factor failed to lift".into()),
                }
            }
            other => other,
        };
    }
    match kronecker_split(f, seed) {
        Ok(Some((h, q))) => return Irreducibility::Reducible(h, q),
        Ok(None) => return Irreducibility::Irreducible,
        Err(_) => {}
    }
    // Many spurious univariate factors: retry after a random translation,
    // which preserves the factorization pattern.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for _ in 0..SHIFT_ATTEMPTS {
        let shifts: Vec<i64> = (0..n)
            .map(|_| rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect();
        let forward: Vec<Polynomial> = (0..n)
            .map(|i| {
                &Polynomial::variable(f.vars(), i)
                    + &Polynomial::constant(f.vars(), Rational::from_integer(shifts[i].into()))
            })
            .collect();
        let back: Vec<Polynomial> = (0..n)
            .map(|i| {
                &Polynomial::variable(f.vars(), i)
                    - &Polynomial::constant(f.vars(), Rational::from_integer(shifts[i].into()))
            })
            .collect();
        let Ok(fs) = f.compose(&forward) else { break };
        match kronecker_split(&fs, seed) {
            Ok(Some((hs, _))) => {
                let Ok(h) = hs.compose(&back) else { break };
                if let Some(q) = divide_exact(f, &h) {
                    return Irreducibility::Reducible(h, q);
                }
                last = "translated factor failed to divide".into();
            }
            Ok(None) => return Irreducibility::Irreducible,
            Err(e) => last = e,
        }
    }
    Irreducibility::Unknown(last)
}

/// Searches for a proper factor of f from the Kronecker image factorization.
fn kronecker_split(
    f: &Polynomial,
    seed: u64,
) -> std::result::Result<Option<(Polynomial, Polynomial)>, String> {
    let radix = radices(f);
    let img = kronecker_image(f, &radix).ok_or("Kronecker image too large")?;
    let facs = factor_z(&primitive(&img), seed).ok_or("recombination budget exhausted")?;
    let mut list: Vec<ZPoly> = Vec::new();
    for (g, m) in facs {
        for _ in 0..m {
            list.push(g.clone());
        }
    }
    if list.len() <= 1 {
        return Ok(None);
    }
    if list.len() > MAX_KRONECKER_FACTORS {
        return Err("too many univariate factors".into());
    }
    let k = list.len();
    for mask in 1u32..(1u32 << k) - 1 {
        // Each split is seen twice; keep the half containing factor 0.
        if mask & 1 == 0 {
            continue;
        }
        let prod = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .fold(vec![BigInt::one()], |acc, i| zpoly::mul_z(&acc, &list[i]));
        let Some(h) = kronecker_inverse(&prod, &radix, f) else {
            continue;
        };
        if h.total_degree().unwrap_or(0) == 0 {
            continue;
        }
        if let Some(q) = divide_exact(f, &h) {
            if !q.is_constant() {
                return Ok(Some((h, q)));
            }
        }
    }
    Ok(None)
}

/// Element of ℚ[α]/(m(α)) as coefficients low to high.
pub type FieldElement = Vec<Rational>;

/// Witness that a binary form f(x, z) of degree d ≥ 2 has the linear factor
/// x − αz over ℚ(α), where m(α) = f(α, 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSplitting {
    pub minimal_polynomial: Vec<Rational>,
    pub x: usize,
    pub z: Option<usize>,
    /// Coefficients q_j of the cofactor Σ q_j x^j z^{d−1−j}.
    pub cofactor: Vec<FieldElement>,
}

fn field_reduce(a: &[Rational], m: &[Rational]) -> FieldElement {
    let mut r = zpoly::trim_q(a.to_vec());
    let dm = m.len() - 1;
    let lm = m.last().expect("modulus").clone();
    while r.len() > dm {
        let c = r.last().expect("nonzero") / &lm;
        let shift = r.len() - m.len();
        for (j, y) in m.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        r = zpoly::trim_q(r);
    }
    r
}

fn field_mul_alpha(a: &[Rational], m: &[Rational]) -> FieldElement {
    let mut v = vec![Rational::zero()];
    v.extend(a.iter().cloned());
    field_reduce(&v, m)
}

fn field_add(a: &[Rational], b: &[Rational]) -> FieldElement {
    zpoly::sub_q(a, &b.iter().map(|x| -x).collect::<Vec<_>>())
}

impl LinearSplitting {
    /// Builds the splitting when f is a binary form in two variables (or a
    /// univariate polynomial) of degree at least 2 with nonzero x^d coefficient.
    pub fn for_binary_form(f: &Polynomial) -> Option<Self> {
        let n = f.nvars();
        let used: Vec<usize> = (0..n).filter(|&i| f.degree_in(i) > 0).collect();
        let d = f.total_degree()? as usize;
        if d < 2 {
            return None;
        }
        let (x, z) = match used.as_slice() {
            [a] => (*a, None),
            [a, b] if f.is_homogeneous() => {
                // x must carry the pure power x^d.
                if f.monomials().any(|e| e[*a] as usize == d) {
                    (*a, Some(*b))
                } else if f.monomials().any(|e| e[*b] as usize == d) {
                    (*b, Some(*a))
                } else {
                    return None;
                }
            }
            _ => return None,
        };
        let mut c = vec![Rational::zero(); d + 1];
        for (e, coef) in f.terms() {
            c[e[x] as usize] += coef;
        }
        if c[d].is_zero() {
            return None;
        }
        let m = c.clone();
        let mut q: Vec<FieldElement> = vec![Vec::new(); d];
        q[d - 1] = vec![c[d].clone()];
        for j in (1..d).rev() {
            q[j - 1] = field_add(&[c[j].clone()], &field_mul_alpha(&q[j], &m));
        }
        Some(LinearSplitting {
            minimal_polynomial: m,
            x,
            z,
            cofactor: q,
        })
    }

    /// Recomputes (x − αz)·Q over ℚ(α) and compares it with f.
    pub fn replay(&self, f: &Polynomial) -> bool {
        let m = &self.minimal_polynomial;
        let d = self.cofactor.len();
        if d < 1 || m.len() != d + 1 || m.last().is_none_or(|c| c.is_zero()) {
            return false;
        }
        for i in 0..=d {
            let mut coef: FieldElement = Vec::new();
            if i >= 1 {
                coef = field_add(&coef, &self.cofactor[i - 1]);
            }
            if i < d {
                let t = field_mul_alpha(&self.cofactor[i], m);
                coef = field_add(&coef, &t.iter().map(|x| -x).collect::<Vec<_>>());
            }
            let coef = field_reduce(&coef, m);
            let mut e = vec![0u32; f.nvars()];
            e[self.x] = i as u32;
            if let Some(z) = self.z {
                e[z] = (d - i) as u32;
            }
            let target = f.coefficient(&ExponentVector::new(e));
            let ok = match coef.len() {
                0 => target.is_zero(),
                1 => coef[0] == target,
                _ => false,
            };
            if !ok {
                return false;
            }
        }
        // Every term of f must be accounted for.
        let expected = (0..=d).filter(|&i| {
            let mut e = vec![0u32; f.nvars()];
            e[self.x] = i as u32;
            if let Some(z) = self.z {
                e[z] = (d - i) as u32;
            }
            !f.coefficient(&ExponentVector::new(e)).is_zero()
        });
        expected.count() == f.num_terms()
    }

    /// Degree of the splitting field extension's defining polynomial.
    pub fn degree(&self) -> usize {
        self.minimal_polynomial.len() - 1
    }
}
