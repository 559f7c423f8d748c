//! Weight quasivaluations on presented algebras and lowest-term valuations on
//! subalgebras: evaluation, subduction, Khovanskii bases, value semigroups.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{denominator_lcm, rat, ExponentVector, RankVector, Rational, WeightMatrix};
use crate::error::{Error, Result};
use crate::groebner::{ideal_equal, saturate_by_product, Caps, GroebnerContext, Ideal};
use crate::initial::{equivalence_cone, initial_ideal, rank1_representative, ConeDescription};
use crate::linalg::integer_kernel;
use crate::order::MonomialOrder;
use crate::polynomial::{Polynomial, Vars};
use crate::tropical::{in_tropical_variety_rank_r, is_prime_desk, pushforward_value, Primality};

/// Default number of subduction steps.
pub const DEFAULT_SUBDUCTION_CAP: usize = 10_000;
/// Node budget for solving one monomial-matching equation.
const MATCH_BUDGET: usize = 200_000;
/// Coefficient box for semigroup membership when no grading bounds it.
pub const SEMIGROUP_BOX: i64 = 32;

/// Values are vectors compared lexicographically (presentation mode) or by
/// the ambient monomial order (SAGBI mode).
pub type Value = RankVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Presentation,
    Sagbi,
}

/// Either the pushforward v_M on ℚ[x]/I, or the lowest-term valuation on the
/// subalgebra generated by a list of polynomials.
#[derive(Clone, Debug)]
pub struct ValuationContext {
    mode: Mode,
    ideal: Ideal,
    m: WeightMatrix,
    tiebreak: MonomialOrder,
    gb: Option<GroebnerContext>,
    generators: Vec<Polynomial>,
    ambient_order: Option<MonomialOrder>,
}

impl ValuationContext {
    /// v_M on ℚ[x]/I with a degrevlex tiebreak.
    pub fn presentation(ideal: &Ideal, m: &WeightMatrix, caps: &Caps) -> Result<Self> {
        Self::presentation_with(ideal, m, MonomialOrder::DegRevLex, caps)
    }

    pub fn presentation_with(
        ideal: &Ideal,
        m: &WeightMatrix,
        tiebreak: MonomialOrder,
        caps: &Caps,
    ) -> Result<Self> {
        if m.ncols() != ideal.nvars() {
            return Err(Error::dim(ideal.nvars(), m.ncols()));
        }
        let order = MonomialOrder::composite(m.clone(), tiebreak.clone())?;
        let gb = GroebnerContext::new(ideal, &order, caps)?;
        if gb.is_unit() {
            return Err(Error::pre("the unit ideal presents the zero algebra"));
        }
        let generators = (0..ideal.nvars())
            .map(|i| Polynomial::variable(ideal.vars(), i))
            .collect();
        Ok(ValuationContext {
            mode: Mode::Presentation,
            ideal: ideal.clone(),
            m: m.clone(),
            tiebreak,
            gb: Some(gb),
            generators,
            ambient_order: None,
        })
    }

    /// Lowest-term valuation on ℚ[generators] ⊂ ℚ[x] for a monomial order.
    pub fn sagbi(generators: &[Polynomial], ambient_order: &MonomialOrder) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::pre("no generators"))?;
        if !ambient_order.is_well_ordered() {
            return Err(Error::pre("the ambient order must be a monomial order"));
        }
        if generators.iter().any(|g| g.vars() != first.vars()) {
            return Err(Error::VariableMismatch);
        }
        if generators.iter().any(|g| g.is_zero()) {
            return Err(Error::pre("zero generator"));
        }
        let symbols = generator_symbols(generators.len());
        let cols: Vec<RankVector> = generators
            .iter()
            .map(|g| lowest_exponent(g, ambient_order).map(|e| RankVector(e.as_rationals())))
            .collect::<Result<_>>()?;
        Ok(ValuationContext {
            mode: Mode::Sagbi,
            ideal: Ideal::zero(&symbols),
            m: WeightMatrix::from_columns(&cols)?,
            tiebreak: ambient_order.clone(),
            gb: None,
            generators: generators.to_vec(),
            ambient_order: Some(ambient_order.clone()),
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// M in presentation mode; the generator value columns in SAGBI mode.
    pub fn matrix(&self) -> &WeightMatrix {
        &self.m
    }

    pub fn tiebreak(&self) -> &MonomialOrder {
        &self.tiebreak
    }

    pub fn groebner(&self) -> Option<&GroebnerContext> {
        self.gb.as_ref()
    }

    /// Algebra generators: the variables (presentation) or the SAGBI list.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn ambient_order(&self) -> Option<&MonomialOrder> {
        self.ambient_order.as_ref()
    }

    fn presentation_gb(&self) -> Result<&GroebnerContext> {
        self.gb
            .as_ref()
            .ok_or_else(|| Error::pre("operation needs a presentation-mode context"))
    }

    /// Value order: lexicographic, or the ambient monomial order.
    pub fn compare_values(&self, a: &Value, b: &Value) -> Ordering {
        match &self.ambient_order {
            None => a.cmp(b),
            Some(order) => {
                let (Some(x), Some(y)) = (to_exponent(a), to_exponent(b)) else {
                    return a.cmp(b);
                };
                order.compare(&x, &y).unwrap_or_else(|_| a.cmp(b))
            }
        }
    }

    /// v(f). Presentation mode: lexicographic minimum of M·α over the normal
    /// form. SAGBI mode: exponent of the lowest term of f.
    pub fn evaluate(&self, f: &Polynomial) -> Result<Value> {
        match self.mode {
            Mode::Presentation => {
                let gb = self.presentation_gb()?;
                if f.vars() != gb.vars() {
                    return Err(Error::VariableMismatch);
                }
                pushforward_value(gb, &self.m, f)?
                    .ok_or_else(|| Error::pre("f lies in the ideal; its value is undefined"))
            }
            Mode::Sagbi => {
                let order = self.ambient_order.as_ref().expect("sagbi order");
                if f.vars() != self.generators[0].vars() {
                    return Err(Error::VariableMismatch);
                }
                Ok(RankVector(lowest_exponent(f, order)?.as_rationals()))
            }
        }
    }

    /// Values of the algebra generators.
    pub fn generator_values(&self) -> Result<Vec<Value>> {
        self.generators.iter().map(|g| self.evaluate(g)).collect()
    }

    /// The contraction ι(M) (presentation mode).
    pub fn contraction(&self) -> Result<WeightMatrix> {
        self.presentation_gb()?;
        WeightMatrix::from_columns(&self.generator_values()?)
    }
}

pub fn evaluate(f: &Polynomial, ctx: &ValuationContext) -> Result<Value> {
    ctx.evaluate(f)
}

fn generator_symbols(m: usize) -> Vars {
    let names: Vec<String> = (1..=m).map(|i| format!("b{i}")).collect();
    Vars::new(&names)
}

fn lowest_exponent(f: &Polynomial, order: &MonomialOrder) -> Result<ExponentVector> {
    let mut it = f.monomials();
    let mut best = it
        .next()
        .ok_or_else(|| Error::pre("the zero polynomial has no value"))?;
    for e in it {
        if order.compare(e, best)? == Ordering::Less {
            best = e;
        }
    }
    Ok(best.clone())
}

fn lowest_term(f: &Polynomial, order: &MonomialOrder) -> Result<(ExponentVector, Rational)> {
    let e = lowest_exponent(f, order)?;
    let c = f.coefficient(&e);
    Ok((e, c))
}

fn to_exponent(v: &Value) -> Option<ExponentVector> {
    v.0.iter()
        .map(|x| {
            if x.is_integer() && !x.is_negative() {
                x.to_integer().to_u32()
            } else {
                None
            }
        })
        .collect::<Option<Vec<u32>>>()
        .map(ExponentVector::new)
}

/// Violations and strict superadditivity witnesses from randomized checks.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub pairs_checked: usize,
    pub violations: Vec<String>,
    pub strict_witnesses: Vec<StrictWitness>,
}

/// v(fg) ≻ v(f) + v(g).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictWitness {
    pub f: Polynomial,
    pub g: Polynomial,
    pub value_f: Value,
    pub value_g: Value,
    pub value_fg: Value,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn random_element(vars: &Vars, rng: &mut ChaCha8Rng, max_degree: u32) -> Polynomial {
    let n = vars.len();
    let nterms = rng.gen_range(1..=3);
    let terms = (0..nterms).map(|_| {
        let mut e = vec![0u32; n];
        let d = rng.gen_range(0..=max_degree);
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        let mut c = 0i64;
        while c == 0 {
            c = rng.gen_range(-3..=3);
        }
        (ExponentVector::new(e), rat(c))
    });
    Polynomial::from_terms(vars, terms)
}

/// Random nonzero algebra elements, as polynomials in the ring where `evaluate` applies.
fn random_algebra_element(
    ctx: &ValuationContext,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Polynomial>> {
    match ctx.mode {
        Mode::Presentation => {
            let f = random_element(ctx.ideal.vars(), rng, 3);
            Ok(if ctx.presentation_gb()?.contains(&f)? {
                None
            } else {
                Some(f)
            })
        }
        Mode::Sagbi => {
            let p = random_element(&generator_symbols(ctx.generators.len()), rng, 2);
            let f = p.compose(&ctx.generators)?;
            Ok(if f.is_zero() { None } else { Some(f) })
        }
    }
}

/// Checks v(f+g) ≽ min, v(fg) ≽ v(f)+v(g) and v(cf) = v(f) on generator
/// pairs and then on `trials` random pairs.
pub fn quasivaluation_axioms_check(
    ctx: &ValuationContext,
    trials: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(Polynomial, Polynomial)> = Vec::new();
    let gens = ctx.generators.clone();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            pairs.push((gens[i].clone(), gens[j].clone()));
        }
    }
    let mut attempts = 0;
    while pairs.len() < gens.len() * (gens.len() + 1) / 2 + trials && attempts < 20 * (trials + 1) {
        attempts += 1;
        if let (Some(f), Some(g)) = (
            random_algebra_element(ctx, &mut rng)?,
            random_algebra_element(ctx, &mut rng)?,
        ) {
            pairs.push((f, g));
        }
    }
    let mut report = AxiomReport::default();
    let in_algebra = |h: &Polynomial| -> Result<bool> {
        Ok(match ctx.mode {
            Mode::Presentation => !ctx.presentation_gb()?.contains(h)?,
            Mode::Sagbi => !h.is_zero(),
        })
    };
    for (f, g) in pairs {
        if !in_algebra(&f)? || !in_algebra(&g)? {
            continue;
        }
        report.pairs_checked += 1;
        let vf = ctx.evaluate(&f)?;
        let vg = ctx.evaluate(&g)?;
        let lower = if ctx.compare_values(&vf, &vg) == Ordering::Greater {
            vg.clone()
        } else {
            vf.clone()
        };
        let sum = &f + &g;
        if in_algebra(&sum)? {
            let vs = ctx.evaluate(&sum)?;
            if ctx.compare_values(&vs, &lower) == Ordering::Less {
                report
                    .violations
                    .push(format!("v({f} + {g}) = {vs} below min {lower}"));
            }
        }
        let prod = &f * &g;
        let vsum = vf.add(&vg);
        if in_algebra(&prod)? {
            let vp = ctx.evaluate(&prod)?;
            match ctx.compare_values(&vp, &vsum) {
                Ordering::Less => report
                    .violations
                    .push(format!("v(({f})·({g})) = {vp} below {vsum}")),
                Ordering::Greater => report.strict_witnesses.push(StrictWitness {
                    f: f.clone(),
                    g: g.clone(),
                    value_f: vf.clone(),
                    value_g: vg.clone(),
                    value_fg: vp,
                }),
                Ordering::Equal => {}
            }
        } else {
            // fg = 0 with f, g ≠ 0: v(fg) = ∞ strictly exceeds v(f) + v(g).
            report.strict_witnesses.push(StrictWitness {
                f: f.clone(),
                g: g.clone(),
                value_f: vf.clone(),
                value_g: vg.clone(),
                value_fg: vsum.clone(),
            });
        }
        let c = rat(rng.gen_range(1..=5)) * if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
        if ctx.evaluate(&f.scale(&c))? != vf {
            report
                .violations
                .push(format!("v({c}·({f})) differs from v({f})"));
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// v_M is a valuation iff in_M(I) is prime.
pub fn is_valuation(ctx: &ValuationContext, caps: &Caps) -> Result<Verdict> {
    if ctx.mode == Mode::Sagbi {
        return Ok(Verdict::Yes);
    }
    let init = initial_ideal(&ctx.ideal, &ctx.m, caps)?;
    Ok(match is_prime_desk(&init, caps)?.verdict {
        Primality::Prime => Verdict::Yes,
        Primality::NotPrime => Verdict::No,
        Primality::Unknown => Verdict::Unknown,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubductionOutcome {
    Exact,
    CapExceeded,
    /// The lowest piece is not a monomial in the generator values.
    Stuck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubductionStep {
    pub value: Value,
    /// Subtracted polynomial in the generator symbols.
    pub expression: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubductionTrace {
    pub steps: Vec<SubductionStep>,
    pub outcome: SubductionOutcome,
    pub residual: Polynomial,
    pub symbols: Vars,
}

impl SubductionTrace {
    /// Sum of all subtracted expressions.
    pub fn expression(&self) -> Polynomial {
        self.steps
            .iter()
            .fold(Polynomial::zero(&self.symbols), |acc, s| {
                &acc + &s.expression
            })
    }
}

/// Rewrites f by generator polynomials whose leading contribution matches
/// the current lowest piece, until nothing is left or the cap is reached.
pub fn subduction(f: &Polynomial, ctx: &ValuationContext, cap: usize) -> Result<SubductionTrace> {
    match ctx.mode {
        Mode::Presentation => presentation_subduction(f, ctx, cap),
        Mode::Sagbi => {
            let order = ctx.ambient_order.as_ref().expect("sagbi order");
            sagbi_subduction(f, &ctx.generators, order, cap)
        }
    }
}

fn presentation_subduction(
    f: &Polynomial,
    ctx: &ValuationContext,
    cap: usize,
) -> Result<SubductionTrace> {
    let gb = ctx.presentation_gb()?;
    let symbols = ctx.ideal.vars().clone();
    let mut cur = gb.normal_form(f)?;
    let mut steps = Vec::new();
    while !cur.is_zero() {
        if steps.len() >= cap {
            return Ok(SubductionTrace {
                steps,
                outcome: SubductionOutcome::CapExceeded,
                residual: cur,
                symbols,
            });
        }
        let value = cur
            .monomials()
            .map(|e| ctx.m.weight_unchecked(e))
            .min()
            .expect("nonzero");
        let slice = Polynomial::from_terms(
            &symbols,
            cur.terms()
                .filter(|(e, _)| ctx.m.weight_unchecked(e) == value)
                .map(|(e, c)| (e.clone(), c.clone())),
        );
        cur = &cur - &slice;
        steps.push(SubductionStep {
            value,
            expression: slice,
        });
    }
    Ok(SubductionTrace {
        steps,
        outcome: SubductionOutcome::Exact,
        residual: cur,
        symbols,
    })
}

/// Finds k ∈ ℕ^m with Σ kᵢ·valuesᵢ = target; generators with zero value are skipped.
fn match_monomial(
    target: &ExponentVector,
    values: &[ExponentVector],
) -> std::result::Result<Option<Vec<u32>>, ()> {
    fn rec(
        i: usize,
        rem: &mut Vec<u32>,
        values: &[ExponentVector],
        k: &mut Vec<u32>,
        budget: &mut usize,
    ) -> std::result::Result<bool, ()> {
        if rem.iter().all(|&x| x == 0) {
            return Ok(true);
        }
        if i == values.len() {
            return Ok(false);
        }
        if *budget == 0 {
            return Err(());
        }
        *budget -= 1;
        let v = values[i].entries();
        let max = if v.iter().all(|&x| x == 0) {
            0
        } else {
            v.iter()
                .zip(rem.iter())
                .filter(|(a, _)| **a > 0)
                .map(|(a, r)| r / a)
                .min()
                .unwrap_or(0)
        };
        for t in (0..=max).rev() {
            for (r, a) in rem.iter_mut().zip(v) {
                *r -= a * t;
            }
            k[i] = t;
            let found = rec(i + 1, rem, values, k, budget)?;
            for (r, a) in rem.iter_mut().zip(v) {
                *r += a * t;
            }
            if found {
                return Ok(true);
            }
        }
        k[i] = 0;
        Ok(false)
    }
    let mut rem = target.entries().to_vec();
    let mut k = vec![0u32; values.len()];
    let mut budget = MATCH_BUDGET;
    Ok(if rec(0, &mut rem, values, &mut k, &mut budget)? {
        Some(k)
    } else {
        None
    })
}

fn is_standard_graded(gens: &[Polynomial]) -> bool {
    gens.iter()
        .all(|g| g.is_homogeneous() && g.total_degree().unwrap_or(0) > 0)
}

fn sagbi_subduction(
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
    cap: usize,
) -> Result<SubductionTrace> {
    let symbols = generator_symbols(basis.len());
    let values: Vec<ExponentVector> = basis
        .iter()
        .map(|b| lowest_exponent(b, order))
        .collect::<Result<_>>()?;
    let leads: Vec<Rational> = basis
        .iter()
        .zip(&values)
        .map(|(b, e)| b.coefficient(e))
        .collect();
    // Homogeneous generators keep every step inside finitely many degrees.
    let cap = if is_standard_graded(basis) {
        usize::MAX
    } else {
        cap
    };
    let mut cur = f.clone();
    let mut steps = Vec::new();
    let mut powers: Vec<Vec<Polynomial>> = basis
        .iter()
        .map(|b| vec![Polynomial::one(b.vars()), b.clone()])
        .collect();
    while !cur.is_zero() {
        if steps.len() >= cap {
            return Ok(SubductionTrace {
                steps,
                outcome: SubductionOutcome::CapExceeded,
                residual: cur,
                symbols,
            });
        }
        let (e, c) = lowest_term(&cur, order)?;
        let k = match match_monomial(&e, &values) {
            Ok(Some(k)) => k,
            Ok(None) => {
                return Ok(SubductionTrace {
                    steps,
                    outcome: SubductionOutcome::Stuck,
                    residual: cur,
                    symbols,
                })
            }
            Err(()) => {
                return Ok(SubductionTrace {
                    steps,
                    outcome: SubductionOutcome::CapExceeded,
                    residual: cur,
                    symbols,
                })
            }
        };
        let mut scale = c.clone();
        let mut prod = Polynomial::one(f.vars());
        for (i, &ki) in k.iter().enumerate() {
            for _ in 0..ki {
                scale /= &leads[i];
            }
            while powers[i].len() <= ki as usize {
                let next = &powers[i][powers[i].len() - 1] * &basis[i];
                powers[i].push(next);
            }
            prod = &prod * &powers[i][ki as usize];
        }
        let sub = prod.scale(&scale);
        cur = &cur - &sub;
        let expression = Polynomial::monomial(&symbols, ExponentVector::new(k), scale);
        steps.push(SubductionStep {
            value: RankVector(e.as_rationals()),
            expression,
        });
    }
    Ok(SubductionTrace {
        steps,
        outcome: SubductionOutcome::Exact,
        residual: cur,
        symbols,
    })
}

/// A term of the standard-monomial expansion with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedTerm {
    pub monomial: ExponentVector,
    pub coefficient: Rational,
    pub weight: Value,
}

/// Standard-monomial expansion of f, sorted so the first weight is v(f).
pub fn vector_space_subduction(f: &Polynomial, ctx: &ValuationContext) -> Result<Vec<AdaptedTerm>> {
    let gb = ctx.presentation_gb()?;
    let nf = gb.normal_form(f)?;
    if nf.is_zero() {
        return Err(Error::pre("f lies in the ideal"));
    }
    let order = gb.effective_order().clone();
    let mut terms: Vec<AdaptedTerm> = nf
        .terms()
        .map(|(e, c)| AdaptedTerm {
            monomial: e.clone(),
            coefficient: c.clone(),
            weight: ctx.m.weight_unchecked(e),
        })
        .collect();
    terms.sort_by(|a, b| {
        a.weight.cmp(&b.weight).then_with(|| {
            order
                .compare(&b.monomial, &a.monomial)
                .expect("same length")
        })
    });
    Ok(terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KhovanskiiReport {
    pub holds: bool,
    pub diagnostics: Vec<String>,
}

/// Whether the generator images generate gr_v(A).
pub fn khovanskii_test(ctx: &ValuationContext, caps: &Caps) -> Result<KhovanskiiReport> {
    let mut diagnostics = Vec::new();
    match ctx.mode {
        Mode::Presentation => {
            // Without a prime initial ideal gr_v(A) is not a semigroup algebra
            // and the fixed-point criterion does not apply.
            match is_valuation(ctx, caps)? {
                Verdict::Yes => {}
                Verdict::No => {
                    diagnostics.push("in_M(I) is not prime: unsupported for non-valuations".into());
                    return Ok(KhovanskiiReport {
                        holds: false,
                        diagnostics,
                    });
                }
                Verdict::Unknown => {
                    diagnostics.push("primality of in_M(I) is undecided: unsupported".into());
                    return Ok(KhovanskiiReport {
                        holds: false,
                        diagnostics,
                    });
                }
            }
            let iota = match ctx.contraction() {
                Ok(c) => c,
                Err(Error::Precondition(msg)) => {
                    diagnostics.push(msg);
                    return Ok(KhovanskiiReport {
                        holds: false,
                        diagnostics,
                    });
                }
                Err(e) => return Err(e),
            };
            let fixed = iota == ctx.m;
            if !fixed {
                diagnostics.push(format!("contraction moves M:\n{iota}"));
            }
            let init = initial_ideal(&ctx.ideal, &ctx.m, caps)?;
            let ictx = GroebnerContext::new(&init, &MonomialOrder::DegRevLex, caps)?;
            let mut clean = true;
            for i in 0..ctx.ideal.nvars() {
                if ictx.contains(&Polynomial::variable(ctx.ideal.vars(), i))? {
                    clean = false;
                    diagnostics.push(format!(
                        "{} lies in the initial ideal",
                        ctx.ideal.vars().names()[i]
                    ));
                }
            }
            Ok(KhovanskiiReport {
                holds: fixed && clean,
                diagnostics,
            })
        }
        Mode::Sagbi => {
            let order = ctx.ambient_order.as_ref().expect("sagbi order");
            let (holds, residuals, diag) =
                sagbi_relations_subduce(&ctx.generators, order, caps, caps.max_subduction)?;
            diagnostics.extend(diag);
            if !residuals.is_empty() {
                diagnostics.push(format!(
                    "{} relation(s) leave a nonzero residual",
                    residuals.len()
                ));
            }
            Ok(KhovanskiiReport { holds, diagnostics })
        }
    }
}

/// Subducts every generator of I_B evaluated on the basis. Returns whether
/// all reduce to zero and the nonzero residuals of stuck subductions.
fn sagbi_relations_subduce(
    basis: &[Polynomial],
    order: &MonomialOrder,
    caps: &Caps,
    cap: usize,
) -> Result<(bool, Vec<Polynomial>, Vec<String>)> {
    let cols: Vec<RankVector> = basis
        .iter()
        .map(|b| lowest_exponent(b, order).map(|e| RankVector(e.as_rationals())))
        .collect::<Result<_>>()?;
    let symbols = generator_symbols(basis.len());
    let ib = toric_ideal(&cols, &symbols, caps)?;
    let gb = GroebnerContext::new(&ib, &MonomialOrder::DegRevLex, caps)?;
    let mut all = true;
    let mut residuals = Vec::new();
    let mut diagnostics = Vec::new();
    for g in gb.basis() {
        let image = g.compose(basis)?;
        if image.is_zero() {
            continue;
        }
        let trace = sagbi_subduction(&image, basis, order, cap)?;
        match trace.outcome {
            SubductionOutcome::Exact => {}
            SubductionOutcome::Stuck => {
                all = false;
                residuals.push(trace.residual);
            }
            SubductionOutcome::CapExceeded => {
                all = false;
                diagnostics.push(format!("subduction of {g} exceeded the cap"));
            }
        }
    }
    Ok((all, residuals, diagnostics))
}

/// Kernel of xᵢ ↦ t^{vᵢ} for the given value columns, in the given symbols.
pub fn toric_ideal(columns: &[RankVector], symbols: &Vars, caps: &Caps) -> Result<Ideal> {
    let m = columns.len();
    if symbols.len() != m {
        return Err(Error::dim(m, symbols.len()));
    }
    let r = columns.first().map(|c| c.len()).unwrap_or(0);
    if columns.iter().any(|c| c.len() != r) {
        return Err(Error::pre("value columns have different lengths"));
    }
    let rows: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            let l = denominator_lcm(columns.iter().map(|c| &c.0[i]));
            columns
                .iter()
                .map(|c| (&c.0[i] * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let kernel = integer_kernel(&rows, m);
    if kernel.is_empty() {
        return Ok(Ideal::zero(symbols));
    }
    let mut gens = Vec::new();
    for k in &kernel {
        let mut plus = vec![0u32; m];
        let mut minus = vec![0u32; m];
        for (i, x) in k.iter().enumerate() {
            let v = x.abs().to_u32().ok_or(Error::Overflow)?;
            if x.is_positive() {
                plus[i] = v;
            } else {
                minus[i] = v;
            }
        }
        gens.push(Polynomial::from_terms(
            symbols,
            [
                (ExponentVector::new(plus), Rational::one()),
                (ExponentVector::new(minus), -Rational::one()),
            ],
        ));
    }
    let lattice = Ideal::new(symbols, gens)?;
    let sat = saturate_by_product(&lattice, caps)?;
    Ok(GroebnerContext::new(&sat, &MonomialOrder::DegRevLex, caps)?.basis_ideal())
}

#[derive(Clone, Debug)]
pub struct CompletionReport {
    pub basis: Vec<Polynomial>,
    pub rounds: usize,
    pub complete: bool,
    /// Distinct generator values after each round, starting with the input.
    pub value_sets: Vec<BTreeSet<Value>>,
    pub diagnostics: Vec<String>,
}

/// Appends stuck subduction residuals of I_B relations until a round adds
/// nothing or `round_cap` rounds have run.
pub fn khovanskii_complete(
    generators: &[Polynomial],
    ctx: &ValuationContext,
    round_cap: usize,
    caps: &Caps,
) -> Result<CompletionReport> {
    let order = ctx
        .ambient_order
        .as_ref()
        .ok_or_else(|| Error::pre("completion needs a SAGBI-mode context"))?;
    let mut basis: Vec<Polynomial> = generators
        .iter()
        .map(|g| g.monic_lowest(order))
        .collect::<Result<_>>()?;
    let values_of = |b: &[Polynomial]| -> Result<BTreeSet<Value>> {
        b.iter()
            .map(|p| lowest_exponent(p, order).map(|e| RankVector(e.as_rationals())))
            .collect()
    };
    let mut value_sets = vec![values_of(&basis)?];
    let mut diagnostics = Vec::new();
    let mut rounds = 0;
    loop {
        if rounds >= round_cap {
            return Ok(CompletionReport {
                basis,
                rounds,
                complete: false,
                value_sets,
                diagnostics,
            });
        }
        rounds += 1;
        let (_, residuals, diag) =
            sagbi_relations_subduce(&basis, order, caps, caps.max_subduction)?;
        diagnostics.extend(diag.iter().map(|d| format!("round {rounds}: {d}")));
        let mut seen = value_sets.last().expect("nonempty").clone();
        let mut added = 0;
        for r in residuals {
            let r = r.monic_lowest(order)?;
            let v = RankVector(lowest_exponent(&r, order)?.as_rationals());
            if seen.insert(v) {
                basis.push(r);
                added += 1;
            }
        }
        value_sets.push(seen);
        if added == 0 {
            let complete = diag.is_empty();
            return Ok(CompletionReport {
                basis,
                rounds,
                complete,
                value_sets,
                diagnostics,
            });
        }
    }
}

trait MonicLowest: Sized {
    fn monic_lowest(&self, order: &MonomialOrder) -> Result<Self>;
}

impl MonicLowest for Polynomial {
    fn monic_lowest(&self, order: &MonomialOrder) -> Result<Self> {
        let (_, c) = lowest_term(self, order)?;
        Ok(self.scale(&c.recip()))
    }
}

/// Generators of S(A, v) with membership and level enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSemigroup {
    pub generators: Vec<Value>,
}

impl ValueSemigroup {
    /// Whether every generator has first coordinate −1.
    pub fn is_graded(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.0.first() == Some(&rat(-1)))
    }

    /// Distinct sums of exactly k generators.
    pub fn level(&self, k: usize) -> BTreeSet<Value> {
        let r = self.generators.first().map(|g| g.len()).unwrap_or(0);
        let mut cur: BTreeSet<Value> = BTreeSet::from([RankVector::zero(r)]);
        for _ in 0..k {
            cur = cur
                .iter()
                .flat_map(|v| self.generators.iter().map(move |g| v.add(g)))
                .collect();
        }
        cur
    }

    /// Exact membership. Graded semigroups: the level is −(first coordinate).
    /// Nonnegative generators: coefficients bounded by the target. Otherwise
    /// coefficients are searched in 0..=SEMIGROUP_BOX.
    pub fn contains(&self, v: &Value) -> bool {
        if self.generators.is_empty() {
            return v.0.iter().all(|x| x.is_zero());
        }
        if self.is_graded() {
            let Some(first) = v.0.first() else {
                return false;
            };
            let k = -first;
            if !k.is_integer() || k.is_negative() {
                return false;
            }
            let Some(k) = k.to_integer().to_usize() else {
                return false;
            };
            return self.level(k).contains(v);
        }
        let nonneg = self
            .generators
            .iter()
            .all(|g| g.0.iter().all(|x| !x.is_negative()));
        let mut rem = v.clone();
        self.search(0, &mut rem, nonneg)
    }

    fn search(&self, i: usize, rem: &mut Value, nonneg: bool) -> bool {
        if rem.0.iter().all(|x| x.is_zero()) {
            return true;
        }
        if i == self.generators.len() {
            return false;
        }
        if nonneg && rem.0.iter().any(|x| x.is_negative()) {
            return false;
        }
        let g = &self.generators[i];
        let bound = if nonneg {
            g.0.iter()
                .zip(&rem.0)
                .filter(|(a, _)| a.is_positive())
                .map(|(a, r)| (r / a).floor().to_integer().to_i64().unwrap_or(0))
                .min()
                .unwrap_or(0)
        } else {
            SEMIGROUP_BOX
        };
        let mut t = 0;
        loop {
            if self.search(i + 1, rem, nonneg) {
                return true;
            }
            if t >= bound {
                break;
            }
            *rem = rem.sub(g);
            t += 1;
        }
        *rem = rem.add(&g.scale(&rat(t)));
        false
    }
}

/// The value semigroup of a Khovanskii context: generated by the values of
/// the generators (the columns of ι(M) in presentation mode).
pub fn value_semigroup(ctx: &ValuationContext, caps: &Caps) -> Result<ValueSemigroup> {
    let report = khovanskii_test(ctx, caps)?;
    if !report.holds {
        return Err(Error::pre(format!(
            "not a Khovanskii basis: {}",
            report.diagnostics.join("; ")
        )));
    }
    Ok(ValueSemigroup {
        generators: ctx.generator_values()?,
    })
}

#[derive(Clone, Debug)]
pub struct PrimeConeFromValuation {
    pub u: Vec<Rational>,
    pub cone: ConeDescription,
    pub initial_ideal: Ideal,
    pub value_matrix: WeightMatrix,
    pub value_matrix_tropical: bool,
}

/// A rank-1 point u of the prime cone C_v with in_u(I) = in_M(I), the
/// equivalence cone around it, and the value matrix of the generators.
pub fn prime_cone_from_valuation(
    ctx: &ValuationContext,
    caps: &Caps,
) -> Result<PrimeConeFromValuation> {
    if is_valuation(ctx, caps)? != Verdict::Yes {
        return Err(Error::pre("the context is not a valuation"));
    }
    if ctx.mode != Mode::Presentation {
        return Err(Error::pre("prime cones need a presentation-mode context"));
    }
    let u = rank1_representative(&ctx.ideal, &ctx.m, caps)?;
    let um = WeightMatrix::from_row(u.clone());
    let init_u = initial_ideal(&ctx.ideal, &um, caps)?;
    let init_m = initial_ideal(&ctx.ideal, &ctx.m, caps)?;
    if !ideal_equal(&init_u, &init_m, caps)? {
        return Err(Error::Internal(
            "rank-1 point does not reproduce in_M(I)".into(),
        ));
    }
    let mut cone = None;
    for order in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
        match equivalence_cone(&um, &ctx.ideal, &order, caps) {
            Ok(c) => {
                cone = Some(c);
                break;
            }
            Err(Error::Precondition(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    let cone =
        cone.ok_or_else(|| Error::pre("u is outside the Gröbner region of degrevlex and lex"))?;
    let value_matrix = ctx.contraction()?;
    let value_matrix_tropical = in_tropical_variety_rank_r(&value_matrix, &ctx.ideal, caps)?;
    Ok(PrimeConeFromValuation {
        u,
        cone,
        initial_ideal: init_u,
        value_matrix,
        value_matrix_tropical,
    })
}

/// Every value attained by a standard monomial of degree ≤ bound is attained
/// by exactly one of them.
pub fn one_dim_leaves_check(ctx: &ValuationContext, degree_bound: u32) -> Result<bool> {
    let gb = ctx.presentation_gb()?;
    let mut seen = BTreeSet::new();
    for e in gb.standard_monomials(degree_bound) {
        if !seen.insert(ctx.m.weight_unchecked(&e)) {
            return Ok(false);
        }
    }
    Ok(true)
}
