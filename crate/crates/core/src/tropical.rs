//! Tropical membership, prime-cone verification, desk-scale primality with
//! replayable certificates, and the contraction map ι.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ExponentVector, RankVector, Rational, WeightMatrix};
use crate::error::{Error, Result};
use crate::factor::{rational_irreducibility, Irreducibility, LinearSplitting};
use crate::groebner::{
    ideal_equal, positive_grading, saturate_by_product, Caps, GroebnerContext, Ideal,
};
use crate::initial::{groebner_region_test, initial_ideal};
use crate::linalg::lattice_is_saturated;
use crate::order::MonomialOrder;
use crate::polynomial::Polynomial;

/// Total degree bound for the monomial zero-divisor search.
pub const ZERO_DIVISOR_DEGREE: u32 = 6;
/// Number of candidate pairs tried by the zero-divisor search.
pub const ZERO_DIVISOR_PAIRS: usize = 200;
/// Box radius for the smooth rational point search.
const POINT_RADIUS: i64 = 2;
const POINT_BUDGET: usize = 20_000;

pub const GEOMETRIC_NOTE: &str =
    "primality is certified geometrically, over an algebraically closed base field";

/// Whether the ideal contains a monomial: (I : (x₁⋯xₙ)^∞) = ⟨1⟩.
pub fn contains_monomial(ideal: &Ideal, caps: &Caps) -> Result<bool> {
    if ideal.is_zero_ideal() {
        return Ok(false);
    }
    let sat = saturate_by_product(ideal, caps)?;
    Ok(GroebnerContext::new(&sat, &MonomialOrder::DegRevLex, caps)?.is_unit())
}

/// u ∈ T(I): in_u(I) contains no monomial.
pub fn in_tropical_variety(u: &[Rational], ideal: &Ideal, caps: &Caps) -> Result<bool> {
    in_tropical_variety_rank_r(&WeightMatrix::from_row(u.to_vec()), ideal, caps)
}

/// M ∈ T^r(I): in_M(I) contains no monomial.
pub fn in_tropical_variety_rank_r(m: &WeightMatrix, ideal: &Ideal, caps: &Caps) -> Result<bool> {
    Ok(!contains_monomial(&initial_ideal(ideal, m, caps)?, caps)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Primality {
    Prime,
    NotPrime,
    Unknown,
}

impl std::fmt::Display for Primality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Primality::Prime => "Prime",
            Primality::NotPrime => "NotPrime",
            Primality::Unknown => "Unknown",
        })
    }
}

/// Evidence attached to a primality verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The zero ideal of a polynomial ring.
    ZeroIdeal,
    /// The reduced basis consists of affine-linear polynomials.
    Linear,
    /// Principal, irreducible over ℚ and of degree one in `variable`.
    LinearInVariable {
        generator: Polynomial,
        variable: usize,
    },
    /// Principal, irreducible over ℚ, with a nonsingular rational point.
    SmoothRationalPoint {
        generator: Polynomial,
        point: Vec<Rational>,
    },
    /// Pure binomial basis with unit coefficients, a saturated exponent
    /// lattice and I = (I : (x₁⋯xₙ)^∞).
    Toric {
        lattice: Vec<Vec<BigInt>>,
    },
    UnitIdeal,
    /// left·right ∈ I while neither factor lies in I.
    ZeroDivisors {
        left: Polynomial,
        right: Polynomial,
    },
    /// The generator has a linear factor over a number field.
    NumberFieldSplitting {
        generator: Polynomial,
        splitting: LinearSplitting,
    },
    None {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimalityReport {
    pub verdict: Primality,
    pub certificate: Certificate,
}

impl PrimalityReport {
    fn new(verdict: Primality, certificate: Certificate) -> Self {
        PrimalityReport {
            verdict,
            certificate,
        }
    }

    fn unknown(reason: impl Into<String>) -> Self {
        Self::new(
            Primality::Unknown,
            Certificate::None {
                reason: reason.into(),
            },
        )
    }

    /// Re-checks the certificate against the ideal.
    pub fn replay(&self, ideal: &Ideal, caps: &Caps) -> Result<bool> {
        let ctx = GroebnerContext::new(ideal, &MonomialOrder::DegRevLex, caps)?;
        let principal = |g: &Polynomial| -> Result<bool> {
            Ok(ctx.basis().len() == 1
                && ctx.contains(g)?
                && ctx.basis()[0] == g.monic(&MonomialOrder::DegRevLex))
        };
        Ok(match (&self.verdict, &self.certificate) {
            (Primality::Prime, Certificate::ZeroIdeal) => ideal.is_zero_ideal(),
            (Primality::Prime, Certificate::Linear) => {
                !ctx.is_unit()
                    && ctx
                        .basis()
                        .iter()
                        .all(|g| g.total_degree().unwrap_or(0) <= 1)
            }
            (
                Primality::Prime,
                Certificate::LinearInVariable {
                    generator,
                    variable,
                },
            ) => {
                principal(generator)?
                    && generator.degree_in(*variable) == 1
                    && rational_irreducibility(generator, 0) == Irreducibility::Irreducible
            }
            (Primality::Prime, Certificate::SmoothRationalPoint { generator, point }) => {
                principal(generator)?
                    && is_smooth_zero(generator, point)
                    && rational_irreducibility(generator, 0) == Irreducibility::Irreducible
            }
            (Primality::Prime, Certificate::Toric { lattice }) => {
                toric_shape(&ctx).as_ref() == Some(lattice)
                    && lattice_is_saturated(lattice)
                    && ideal_equal(ideal, &saturate_by_product(ideal, caps)?, caps)?
            }
            (Primality::NotPrime, Certificate::UnitIdeal) => ctx.is_unit(),
            (Primality::NotPrime, Certificate::ZeroDivisors { left, right }) => {
                ctx.contains(&(left * right))? && !ctx.contains(left)? && !ctx.contains(right)?
            }
            (
                Primality::NotPrime,
                Certificate::NumberFieldSplitting {
                    generator,
                    splitting,
                },
            ) => principal(generator)? && splitting.replay(generator),
            (Primality::Unknown, Certificate::None { .. }) => true,
            _ => false,
        })
    }
}

/// Sound tri-state primality over an algebraically closed field of
/// characteristic zero.
pub fn is_prime_desk(ideal: &Ideal, caps: &Caps) -> Result<PrimalityReport> {
    use Primality::*;
    if ideal.is_zero_ideal() {
        return Ok(PrimalityReport::new(Prime, Certificate::ZeroIdeal));
    }
    let ctx = GroebnerContext::new(ideal, &MonomialOrder::DegRevLex, caps)?;
    if ctx.is_unit() {
        return Ok(PrimalityReport::new(NotPrime, Certificate::UnitIdeal));
    }
    if ctx
        .basis()
        .iter()
        .all(|g| g.total_degree().unwrap_or(0) <= 1)
    {
        return Ok(PrimalityReport::new(Prime, Certificate::Linear));
    }
    if let Some(lattice) = toric_shape(&ctx) {
        if lattice_is_saturated(&lattice)
            && ideal_equal(ideal, &saturate_by_product(ideal, caps)?, caps)?
        {
            return Ok(PrimalityReport::new(Prime, Certificate::Toric { lattice }));
        }
    }
    let mut reason = String::from("no certificate found");
    if let [f] = ctx.basis() {
        match principal_primality(f) {
            Ok(report) => return Ok(report),
            Err(r) => reason = r,
        }
    }
    if let Some((left, right)) = zero_divisor_search(&ctx)? {
        return Ok(PrimalityReport::new(
            NotPrime,
            Certificate::ZeroDivisors { left, right },
        ));
    }
    Ok(PrimalityReport::unknown(reason))
}

fn principal_primality(f: &Polynomial) -> std::result::Result<PrimalityReport, String> {
    use Primality::*;
    match rational_irreducibility(f, 0) {
        Irreducibility::Reducible(left, right) => Ok(PrimalityReport::new(
            NotPrime,
            Certificate::ZeroDivisors { left, right },
        )),
        Irreducibility::Unknown(r) => Err(r),
        Irreducibility::Irreducible => {
            if let Some(variable) = (0..f.nvars()).find(|&i| f.degree_in(i) == 1) {
                return Ok(PrimalityReport::new(
                    Prime,
                    Certificate::LinearInVariable {
                        generator: f.clone(),
                        variable,
                    },
                ));
            }
            if let Some(point) = smooth_rational_point(f) {
                return Ok(PrimalityReport::new(
                    Prime,
                    Certificate::SmoothRationalPoint {
                        generator: f.clone(),
                        point,
                    },
                ));
            }
            if let Some(splitting) = LinearSplitting::for_binary_form(f) {
                return Ok(PrimalityReport::new(
                    NotPrime,
                    Certificate::NumberFieldSplitting {
                        generator: f.clone(),
                        splitting,
                    },
                ));
            }
            Err("irreducible over ℚ; absolute irreducibility undecided".into())
        }
    }
}

/// Exponent differences of a basis of pure binomials x^a − c·x^b with c = ±1.
fn toric_shape(ctx: &GroebnerContext) -> Option<Vec<Vec<BigInt>>> {
    let mut lattice = Vec::new();
    for g in ctx.basis() {
        let terms: Vec<(&ExponentVector, &Rational)> = g.terms().collect();
        let [(a, ca), (b, cb)] = terms.as_slice() else {
            return None;
        };
        if (*ca + *cb).is_zero() || (*ca - *cb).is_zero() {
            lattice.push(
                a.entries()
                    .iter()
                    .zip(b.entries())
                    .map(|(x, y)| BigInt::from(*x as i64 - *y as i64))
                    .collect(),
            );
        } else {
            return None;
        }
    }
    Some(lattice)
}

/// Every basis element has at most two terms.
pub fn is_binomial(ideal: &Ideal, caps: &Caps) -> Result<bool> {
    let ctx = GroebnerContext::new(ideal, &MonomialOrder::DegRevLex, caps)?;
    Ok(ctx.basis().iter().all(|g| g.num_terms() <= 2))
}

fn zero_divisor_search(ctx: &GroebnerContext) -> Result<Option<(Polynomial, Polynomial)>> {
    for g in ctx.basis() {
        if let Irreducibility::Reducible(l, r) = rational_irreducibility(g, 0) {
            if !ctx.contains(&l)? && !ctx.contains(&r)? {
                return Ok(Some((l, r)));
            }
        }
    }
    let vars = ctx.vars();
    let monos: Vec<ExponentVector> = ctx
        .standard_monomials(ZERO_DIVISOR_DEGREE - 1)
        .into_iter()
        .filter(|e| !e.is_zero())
        .collect();
    let mut pairs: Vec<(u64, usize, usize)> = Vec::new();
    for i in 0..monos.len() {
        for j in i..monos.len() {
            let d = monos[i].degree() + monos[j].degree();
            if d <= ZERO_DIVISOR_DEGREE as u64 {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort();
    for &(_, i, j) in pairs.iter().take(ZERO_DIVISOR_PAIRS) {
        let prod = monos[i].checked_add(&monos[j])?;
        if !ctx.is_standard(&prod) {
            let l = Polynomial::monomial(vars, monos[i].clone(), Rational::one());
            let r = Polynomial::monomial(vars, monos[j].clone(), Rational::one());
            if ctx.contains(&(&l * &r))? {
                return Ok(Some((l, r)));
            }
        }
    }
    Ok(None)
}

fn evaluate_at(f: &Polynomial, point: &[Rational]) -> Rational {
    f.terms().fold(Rational::zero(), |acc, (e, c)| {
        let mut t = c.clone();
        for (x, &k) in point.iter().zip(e.entries()) {
            for _ in 0..k {
                t *= x;
            }
        }
        acc + t
    })
}

fn partial(f: &Polynomial, i: usize) -> Polynomial {
    Polynomial::from_terms(
        f.vars(),
        f.terms().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut v = e.entries().to_vec();
            v[i] -= 1;
            (
                ExponentVector::new(v),
                c * Rational::from_integer(e[i].into()),
            )
        }),
    )
}

fn is_smooth_zero(f: &Polynomial, point: &[Rational]) -> bool {
    point.len() == f.nvars()
        && evaluate_at(f, point).is_zero()
        && (0..f.nvars()).any(|i| !evaluate_at(&partial(f, i), point).is_zero())
}

/// A rational zero with nonvanishing gradient. For f irreducible over ℚ
/// this rules out a splitting into Galois-conjugate components, all of
/// which would pass through the point.
fn smooth_rational_point(f: &Polynomial) -> Option<Vec<Rational>> {
    let n = f.nvars();
    let side = (2 * POINT_RADIUS + 1) as usize;
    let total = side.checked_pow(n as u32)?.min(POINT_BUDGET);
    for idx in 0..total {
        let mut k = idx;
        let point: Vec<Rational> = (0..n)
            .map(|_| {
                let v = (k % side) as i64 - POINT_RADIUS;
                k /= side;
                Rational::from_integer(v.into())
            })
            .collect();
        if is_smooth_zero(f, &point) {
            return Some(point);
        }
    }
    None
}

/// Outcome of checking a candidate prime cone.
#[derive(Clone, Debug)]
pub struct PrimeConeReport {
    pub sample_points: Vec<Vec<Rational>>,
    /// Set only when every sample has the same initial ideal.
    pub common_initial_ideal: Option<Ideal>,
    pub monomial_free: bool,
    pub binomial: bool,
    pub primality: Primality,
    pub certificate: Option<Certificate>,
    pub in_groebner_region: bool,
    pub notes: Vec<String>,
}

/// Samples relative-interior points of cone(rays) + span(lineality) and
/// checks that they share one prime, monomial-free initial ideal.
pub fn verify_prime_cone(
    rays: &[Vec<Rational>],
    lineality: &[Vec<Rational>],
    ideal: &Ideal,
    samples: usize,
    seed: u64,
    caps: &Caps,
) -> Result<PrimeConeReport> {
    if rays.is_empty() {
        return Err(Error::pre("verify_prime_cone needs at least one ray"));
    }
    let n = ideal.nvars();
    if let Some(bad) = rays.iter().chain(lineality).find(|v| v.len() != n) {
        return Err(Error::dim(n, bad.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combine = |rc: &[i64], lc: &[i64]| -> Vec<Rational> {
        (0..n)
            .map(|j| {
                let a = rays.iter().zip(rc).fold(Rational::zero(), |s, (r, &c)| {
                    s + &r[j] * Rational::from_integer(c.into())
                });
                lineality
                    .iter()
                    .zip(lc)
                    .fold(a, |s, (l, &c)| s + &l[j] * Rational::from_integer(c.into()))
            })
            .collect()
    };
    let mut points = vec![combine(&vec![1; rays.len()], &vec![0; lineality.len()])];
    for _ in 1..samples.max(1) {
        let rc: Vec<i64> = rays.iter().map(|_| rng.gen_range(1..=5)).collect();
        let lc: Vec<i64> = lineality.iter().map(|_| rng.gen_range(-3..=3)).collect();
        points.push(combine(&rc, &lc));
    }
    let mut notes = Vec::new();
    let first = initial_ideal(ideal, &WeightMatrix::from_row(points[0].clone()), caps)?;
    let mut agree = true;
    for p in &points[1..] {
        let other = initial_ideal(ideal, &WeightMatrix::from_row(p.clone()), caps)?;
        if !ideal_equal(&first, &other, caps)? {
            agree = false;
            break;
        }
    }
    let in_groebner_region = if positive_grading(ideal, caps)?.is_some() {
        true
    } else {
        groebner_region_test(
            &WeightMatrix::from_row(points[0].clone()),
            ideal,
            &MonomialOrder::DegRevLex,
            caps,
        )?
    };
    if !agree {
        notes.push("not a single Gröbner-cone interior: sample initial ideals differ".into());
        return Ok(PrimeConeReport {
            sample_points: points,
            common_initial_ideal: None,
            monomial_free: false,
            binomial: false,
            primality: Primality::Unknown,
            certificate: None,
            in_groebner_region,
            notes,
        });
    }
    let monomial_free = !contains_monomial(&first, caps)?;
    let binomial = is_binomial(&first, caps)?;
    let report = is_prime_desk(&first, caps)?;
    notes.push(GEOMETRIC_NOTE.into());
    if let Certificate::None { reason } = &report.certificate {
        notes.push(reason.clone());
    }
    if !in_groebner_region {
        notes.push("relative interior sample lies outside the Gröbner region".into());
    }
    Ok(PrimeConeReport {
        sample_points: points,
        common_initial_ideal: Some(first),
        monomial_free,
        binomial,
        primality: report.verdict,
        certificate: Some(report.certificate),
        in_groebner_region,
        notes,
    })
}

/// v_M(f): lexicographic minimum of M·α over the support of the normal form
/// of f under >_M.
pub(crate) fn pushforward_value(
    ctx: &GroebnerContext,
    m: &WeightMatrix,
    f: &Polynomial,
) -> Result<Option<RankVector>> {
    let nf = ctx.normal_form(f)?;
    Ok(nf.monomials().map(|e| m.weight_unchecked(e)).min())
}

/// ι(M): column i is v_M(xᵢ).
pub fn contraction(m: &WeightMatrix, ideal: &Ideal, caps: &Caps) -> Result<WeightMatrix> {
    let n = ideal.nvars();
    if m.ncols() != n {
        return Err(Error::dim(n, m.ncols()));
    }
    let order = MonomialOrder::composite(m.clone(), MonomialOrder::DegRevLex)?;
    let ctx = GroebnerContext::new(ideal, &order, caps)?;
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let x = Polynomial::variable(ideal.vars(), i);
        match pushforward_value(&ctx, m, &x)? {
            Some(v) => cols.push(v),
            None => {
                return Err(Error::pre(format!(
                    "variable {} lies in the ideal",
                    ideal.vars().names()[i]
                )))
            }
        }
    }
    WeightMatrix::from_columns(&cols)
}
