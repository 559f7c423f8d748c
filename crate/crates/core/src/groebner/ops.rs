//! Saturation, homogenization, ideal equality and homogeneity gradings.

use num_traits::{One, Zero};

use crate::algebra::{rat, ExponentVector, Rational, WeightMatrix};
use crate::error::{Error, Result};
use crate::fm::{feasible_point, Constraint};
use crate::linalg::{nullspace, primitive_integer};
use crate::order::MonomialOrder;
use crate::polynomial::Polynomial;

use super::{Caps, GroebnerContext, Ideal};

/// (I : g^∞) via t·g − 1 and elimination of t under a block order.
pub fn saturate(ideal: &Ideal, g: &Polynomial, caps: &Caps) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::pre("cannot saturate by zero"));
    }
    if g.vars() != ideal.vars() {
        return Err(Error::VariableMismatch);
    }
    if ideal.is_zero_ideal() || g.is_constant() {
        return Ok(ideal.clone());
    }
    let n = ideal.nvars();
    let t_name = ideal.vars().fresh_name("t");
    let ext = ideal.vars().inserted(n, &t_name);
    let map: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|f| f.embed(&ext, &map))
        .collect();
    let tg = &Polynomial::variable(&ext, n) * &g.embed(&ext, &map);
    gens.push(&tg - &Polynomial::one(&ext));
    let mut row = vec![Rational::zero(); n + 1];
    row[n] = rat(-1);
    let order = MonomialOrder::composite(WeightMatrix::from_row(row), MonomialOrder::DegRevLex)?;
    let ctx = GroebnerContext::new(&Ideal::new(&ext, gens)?, &order, caps)?;
    let kept = ctx
        .basis()
        .iter()
        .filter(|p| p.monomials().all(|e| e[n] == 0))
        .map(|p| p.specialize(n, &Rational::zero()))
        .collect();
    Ideal::new(ideal.vars(), kept)
}

/// (I : x_i^∞). With a positive grading making I homogeneous this uses a
/// reverse-lexicographic basis with x_i last and strips powers of x_i.
pub fn saturate_by_variable(
    ideal: &Ideal,
    i: usize,
    grading: Option<&[Rational]>,
    caps: &Caps,
) -> Result<Ideal> {
    let n = ideal.nvars();
    let Some(g) = grading else {
        return saturate(ideal, &Polynomial::variable(ideal.vars(), i), caps);
    };
    let mut unit = vec![Rational::zero(); n];
    unit[i] = Rational::one();
    let neg: Vec<Rational> = g.iter().map(|x| -x).collect();
    let m = WeightMatrix::new(vec![neg, unit])?;
    let order = MonomialOrder::composite(m, MonomialOrder::DegRevLex)?;
    let ctx = GroebnerContext::new(ideal, &order, caps)?;
    let gens = ctx
        .basis()
        .iter()
        .map(|p| {
            let k = p.monomials().map(|e| e[i]).min().unwrap_or(0);
            if k == 0 {
                return p.clone();
            }
            let mut shift = vec![0u32; n];
            shift[i] = k;
            let shift = ExponentVector::new(shift);
            Polynomial::from_terms(
                ideal.vars(),
                p.terms()
                    .map(|(e, c)| (shift.quotient(e).expect("divisible"), c.clone())),
            )
        })
        .collect();
    Ideal::new(ideal.vars(), gens)
}

/// (I : (x₁⋯xₙ)^∞), one variable at a time.
pub fn saturate_by_product(ideal: &Ideal, caps: &Caps) -> Result<Ideal> {
    if ideal.is_zero_ideal() {
        return Ok(ideal.clone());
    }
    let grading = positive_grading(ideal, caps)?;
    let mut cur = ideal.clone();
    for i in 0..ideal.nvars() {
        cur = saturate_by_variable(&cur, i, grading.as_deref(), caps)?;
        if cur.generators().iter().any(|g| g.is_constant()) {
            return Ok(Ideal::unit(ideal.vars()));
        }
    }
    Ok(cur)
}

/// Homogenization with a new first variable x₀, from a degrevlex basis.
pub fn homogenize(ideal: &Ideal, caps: &Caps) -> Result<Ideal> {
    let name = ideal.vars().fresh_name("x0");
    let ext = ideal.vars().inserted(0, &name);
    let map: Vec<usize> = (1..=ideal.nvars()).collect();
    if ideal.has_homogeneous_generators() {
        return Ideal::new(
            &ext,
            ideal
                .generators()
                .iter()
                .map(|g| g.embed(&ext, &map))
                .collect(),
        );
    }
    let ctx = GroebnerContext::new(ideal, &MonomialOrder::DegRevLex, caps)?;
    let gens = ctx
        .basis()
        .iter()
        .map(|g| {
            let d = g.total_degree().unwrap_or(0);
            Polynomial::from_terms(
                &ext,
                g.terms()
                    .map(|(e, c)| (e.with_inserted(0, (d - e.degree()) as u32), c.clone())),
            )
        })
        .collect();
    Ideal::new(&ext, gens)
}

/// Sets variable `at` to 1 in every generator and drops it.
pub fn dehomogenize(ideal: &Ideal, at: usize) -> Result<Ideal> {
    let vars = ideal.vars().removed(at);
    Ideal::new(
        &vars,
        ideal
            .generators()
            .iter()
            .map(|g| g.specialize(at, &Rational::one()))
            .collect(),
    )
}

/// Equality of ideals by comparing reduced degrevlex bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal, caps: &Caps) -> Result<bool> {
    if a.vars() != b.vars() {
        return Err(Error::VariableMismatch);
    }
    let ga = GroebnerContext::new(a, &MonomialOrder::DegRevLex, caps)?;
    let gb = GroebnerContext::new(b, &MonomialOrder::DegRevLex, caps)?;
    Ok(ga.basis() == gb.basis())
}

fn difference_rows(polys: &[Polynomial]) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for p in polys {
        let mut ms = p.monomials();
        if let Some(first) = ms.next() {
            for m in ms {
                rows.push(
                    m.entries()
                        .iter()
                        .zip(first.entries())
                        .map(|(a, b)| rat(*a as i64 - *b as i64))
                        .collect(),
                );
            }
        }
    }
    rows
}

/// Basis of {u : I is u-homogeneous}, read off the reduced degrevlex basis.
pub fn homogeneity_space(ideal: &Ideal, caps: &Caps) -> Result<Vec<Vec<Rational>>> {
    let ctx = GroebnerContext::new(ideal, &MonomialOrder::DegRevLex, caps)?;
    Ok(nullspace(&difference_rows(ctx.basis()), ideal.nvars()))
}

fn positive_in(space: &[Vec<Rational>], n: usize) -> Option<Vec<Rational>> {
    if space.is_empty() {
        return None;
    }
    let k = space.len();
    let cons: Vec<Constraint> = (0..n)
        .map(|i| {
            Constraint::new(
                space.iter().map(|l| l[i].clone()).collect(),
                Rational::one(),
            )
        })
        .collect();
    let c = feasible_point(&cons, k)?;
    let g: Vec<Rational> = (0..n)
        .map(|i| {
            space
                .iter()
                .zip(&c)
                .fold(Rational::zero(), |s, (l, ci)| s + &l[i] * ci)
        })
        .collect();
    Some(
        primitive_integer(&g)
            .into_iter()
            .map(Rational::from_integer)
            .collect(),
    )
}

/// A strictly positive grading for which the ideal is homogeneous, if any.
pub fn positive_grading(ideal: &Ideal, caps: &Caps) -> Result<Option<Vec<Rational>>> {
    let n = ideal.nvars();
    if ideal.has_homogeneous_generators() {
        return Ok(Some(vec![Rational::one(); n]));
    }
    if let Some(g) = positive_in(&nullspace(&difference_rows(ideal.generators()), n), n) {
        return Ok(Some(g));
    }
    Ok(positive_in(&homogeneity_space(ideal, caps)?, n))
}
