//! Rank-r initial forms and ideals, Gröbner-region tests, equivalence cones,
//! lineality spaces and rank-1 representatives.

use num_traits::{One, Zero};

use crate::algebra::{dot, rat, RankVector, Rational, WeightMatrix};
use crate::error::{Error, Result};
use crate::fm::{feasible_point, Constraint};
use crate::groebner::{
    dehomogenize, homogeneity_space, homogenize, ideal_equal, positive_grading, Caps,
    GroebnerContext, Ideal,
};
use crate::order::MonomialOrder;
use crate::polynomial::Polynomial;

/// Linear equalities and strict inequalities on ℚ^n.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeDescription {
    pub equalities: Vec<Vec<Rational>>,
    pub strict_inequalities: Vec<Vec<Rational>>,
}

impl ConeDescription {
    pub fn contains(&self, u: &[Rational]) -> bool {
        self.equalities.iter().all(|e| dot(e, u).is_zero())
            && self
                .strict_inequalities
                .iter()
                .all(|s| dot(s, u) > Rational::zero())
    }

    /// Rank-r version: equalities vanish on every row, strict forms are lex-positive.
    pub fn contains_matrix(&self, m: &WeightMatrix) -> bool {
        let apply = |f: &Vec<Rational>| RankVector(m.rows().iter().map(|r| dot(r, f)).collect());
        let zero = RankVector::zero(m.nrows());
        self.equalities.iter().all(|e| apply(e) == zero)
            && self.strict_inequalities.iter().all(|s| apply(s) > zero)
    }
}

pub fn initial_form(f: &Polynomial, m: &WeightMatrix) -> Result<Polynomial> {
    f.initial_form(m)
}

/// The composite order >_M refined by degrevlex when it can be used for
/// division on this ideal; `None` when the homogenization route is required.
pub fn admissible_order(
    ideal: &Ideal,
    m: &WeightMatrix,
    caps: &Caps,
) -> Result<Option<MonomialOrder>> {
    admissible_order_with(ideal, m, MonomialOrder::DegRevLex, caps)
}

pub(crate) fn admissible_order_with(
    ideal: &Ideal,
    m: &WeightMatrix,
    tiebreak: MonomialOrder,
    caps: &Caps,
) -> Result<Option<MonomialOrder>> {
    if m.ncols() != ideal.nvars() {
        return Err(Error::dim(ideal.nvars(), m.ncols()));
    }
    let order = MonomialOrder::composite(m.clone(), tiebreak)?;
    if order.is_well_ordered() || positive_grading(ideal, caps)?.is_some() {
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

/// in_M(I): initial forms of the reduced basis under >_M, or via the
/// homogenization identity in_{(0,M)}(I_h)|_{x₀=1} = in_M(I).
pub fn initial_ideal(ideal: &Ideal, m: &WeightMatrix, caps: &Caps) -> Result<Ideal> {
    if m.ncols() != ideal.nvars() {
        return Err(Error::dim(ideal.nvars(), m.ncols()));
    }
    if ideal.is_zero_ideal() {
        return Ok(ideal.clone());
    }
    match admissible_order(ideal, m, caps)? {
        Some(order) => {
            let ctx = GroebnerContext::new(ideal, &order, caps)?;
            let gens = ctx
                .basis()
                .iter()
                .map(|g| g.initial_form(m))
                .collect::<Result<Vec<_>>>()?;
            Ideal::new(ideal.vars(), gens)
        }
        None => {
            let h = homogenize(ideal, caps)?;
            let j = initial_ideal(&h, &m.with_zero_column(0), caps)?;
            dehomogenize(&j, 0)
        }
    }
}

/// in_{u_r}(…in_{u_1}(I)…), one rank-1 step at a time.
pub fn iterated_initial_ideal(ideal: &Ideal, rows: &[Vec<Rational>], caps: &Caps) -> Result<Ideal> {
    let mut cur = ideal.clone();
    for row in rows {
        cur = initial_ideal(&cur, &WeightMatrix::from_row(row.clone()), caps)?;
    }
    Ok(cur)
}

/// Whether in_>(in_M(g)) = in_>(g) for every g in the reduced basis G_>(I).
pub fn groebner_region_test(
    m: &WeightMatrix,
    ideal: &Ideal,
    order: &MonomialOrder,
    caps: &Caps,
) -> Result<bool> {
    if !order.is_well_ordered() {
        return Err(Error::pre("groebner_region_test needs a monomial order"));
    }
    if m.ncols() != ideal.nvars() {
        return Err(Error::dim(ideal.nvars(), m.ncols()));
    }
    let ctx = GroebnerContext::new(ideal, order, caps)?;
    for g in ctx.basis() {
        if g.initial_form(m)?.leading_monomial(order) != g.leading_monomial(order) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Description of {u : in_u(g) = in_M(g) for all g ∈ G_>(I)}.
pub fn equivalence_cone(
    m: &WeightMatrix,
    ideal: &Ideal,
    order: &MonomialOrder,
    caps: &Caps,
) -> Result<ConeDescription> {
    if !groebner_region_test(m, ideal, order, caps)? {
        return Err(Error::pre("M is not in the Gröbner region for this order"));
    }
    let ctx = GroebnerContext::new(ideal, order, caps)?;
    let mut cone = ConeDescription::default();
    for g in ctx.basis() {
        let init = g.initial_form(m)?;
        let lead = init.leading_monomial(order).expect("nonzero");
        let mut monos: Vec<_> = g.monomials().cloned().collect();
        monos.sort_by(|a, b| order.compare(b, a).expect("same length"));
        let diff = |e: &crate::algebra::ExponentVector| -> Vec<Rational> {
            e.entries()
                .iter()
                .zip(lead.entries())
                .map(|(a, b)| rat(*a as i64 - *b as i64))
                .collect()
        };
        for e in monos.iter().filter(|e| **e != lead) {
            if init.coefficient(e).is_zero() {
                cone.strict_inequalities.push(diff(e));
            } else {
                cone.equalities.push(diff(e));
            }
        }
    }
    Ok(cone)
}

/// Basis of the lineality space L(I).
pub fn lineality_space(ideal: &Ideal, caps: &Caps) -> Result<Vec<Vec<Rational>>> {
    homogeneity_space(ideal, caps)
}

/// u = vᵀM with v ≥ 0 the lexicographically smallest solution of
/// v·(w − β) ≥ 1 over non-minimal weights w of each reduced-basis element.
pub fn rank1_representative(ideal: &Ideal, m: &WeightMatrix, caps: &Caps) -> Result<Vec<Rational>> {
    if m.ncols() != ideal.nvars() {
        return Err(Error::dim(ideal.nvars(), m.ncols()));
    }
    let u = match admissible_order(ideal, m, caps)? {
        Some(order) => {
            let ctx = GroebnerContext::new(ideal, &order, caps)?;
            rank1_from_basis(ctx.basis(), m)?
        }
        None => {
            let h = homogenize(ideal, caps)?;
            let mut u = rank1_representative(&h, &m.with_zero_column(0), caps)?;
            u.remove(0);
            u
        }
    };
    let lhs = initial_ideal(ideal, &WeightMatrix::from_row(u.clone()), caps)?;
    let rhs = initial_ideal(ideal, m, caps)?;
    if !ideal_equal(&lhs, &rhs, caps)? {
        return Err(Error::Internal(
            "rank-1 representative failed verification".into(),
        ));
    }
    Ok(u)
}

fn rank1_from_basis(basis: &[Polynomial], m: &WeightMatrix) -> Result<Vec<Rational>> {
    let r = m.nrows();
    let mut cons: Vec<Constraint> = (0..r)
        .map(|k| {
            let mut c = vec![Rational::zero(); r];
            c[k] = Rational::one();
            Constraint::new(c, Rational::zero())
        })
        .collect();
    for g in basis {
        let ws: Vec<RankVector> = g.monomials().map(|e| m.weight_unchecked(e)).collect();
        let beta = ws.iter().min().expect("nonzero").clone();
        for w in ws.iter().filter(|w| **w != beta) {
            cons.push(Constraint::new(w.sub(&beta).0, Rational::one()));
        }
    }
    let v = feasible_point(&cons, r)
        .ok_or_else(|| Error::Internal("rank-1 feasibility system infeasible".into()))?;
    Ok((0..m.ncols())
        .map(|j| (0..r).fold(Rational::zero(), |s, k| s + &v[k] * &m.row(k)[j]))
        .collect())
}
