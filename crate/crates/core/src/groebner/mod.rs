//! Reduced Gröbner bases by Buchberger's algorithm with Gebauer–Möller pair pruning.

mod ops;

pub use ops::{
    dehomogenize, homogeneity_space, homogenize, ideal_equal, positive_grading, saturate,
    saturate_by_product, saturate_by_variable,
};

use std::collections::VecDeque;

use num_traits::{One, Zero};

use crate::algebra::{ExponentVector, Rational};
use crate::error::{Error, Result};
use crate::order::{key_add, Key, KeyMap, MonomialOrder};
use crate::parse::parse_polynomial;
use crate::polynomial::{Polynomial, Vars};

/// Safety limits for the Buchberger loop and subduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_pairs: usize,
    pub max_degree: u64,
    pub max_subduction: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_pairs: 2000,
            max_degree: 64,
            max_subduction: 10_000,
        }
    }
}

/// An ideal of ℚ[x] given by generators; zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: Vars,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(vars: &Vars, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| g.vars() != vars) {
            return Err(Error::VariableMismatch);
        }
        Ok(Ideal {
            vars: vars.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn parse<S: AsRef<str>>(vars: &Vars, gens: &[S]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|g| parse_polynomial(g.as_ref(), vars))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(vars, gens)
    }

    pub fn zero(vars: &Vars) -> Self {
        Ideal {
            vars: vars.clone(),
            generators: Vec::new(),
        }
    }

    pub fn unit(vars: &Vars) -> Self {
        Ideal {
            vars: vars.clone(),
            generators: vec![Polynomial::one(vars)],
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Every generator is homogeneous for the standard grading.
    pub fn has_homogeneous_generators(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    key: Key,
    exp: ExponentVector,
    coef: Rational,
}

/// Polynomial with terms sorted ascending by order key; the leading term is last.
#[derive(Clone, Debug, Default)]
pub(crate) struct SortedPoly(Vec<Term>);

impl SortedPoly {
    pub(crate) fn from_poly(p: &Polynomial, km: &KeyMap) -> Self {
        let mut ts: Vec<Term> = p
            .terms()
            .map(|(e, c)| Term {
                key: km.key(e),
                exp: e.clone(),
                coef: c.clone(),
            })
            .collect();
        ts.sort_by(|a, b| a.key.cmp(&b.key));
        SortedPoly(ts)
    }

    pub(crate) fn to_poly(&self, vars: &Vars) -> Polynomial {
        Polynomial::from_terms(vars, self.0.iter().map(|t| (t.exp.clone(), t.coef.clone())))
    }

    fn lead(&self) -> Option<&Term> {
        self.0.last()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn monic(mut self) -> Self {
        if let Some(l) = self.0.last() {
            let inv = l.coef.recip();
            if !inv.is_one() {
                for t in &mut self.0 {
                    t.coef *= &inv;
                }
            }
        }
        self
    }

    /// self − c·x^shift·g.
    fn sub_shifted(
        &self,
        c: &Rational,
        shift: &ExponentVector,
        shift_key: &Key,
        g: &SortedPoly,
    ) -> SortedPoly {
        let mut out = Vec::with_capacity(self.0.len() + g.0.len());
        let mut a = self.0.iter().peekable();
        let mut b =
            g.0.iter()
                .map(|t| Term {
                    key: key_add(&t.key, shift_key),
                    exp: t.exp.add(shift),
                    coef: -(c * &t.coef),
                })
                .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.key.cmp(&y.key) {
                    std::cmp::Ordering::Less => out.push(a.next().expect("peeked").clone()),
                    std::cmp::Ordering::Greater => out.push(b.next().expect("peeked")),
                    std::cmp::Ordering::Equal => {
                        let x = a.next().expect("peeked");
                        let y = b.next().expect("peeked");
                        let s = &x.coef + &y.coef;
                        if !s.is_zero() {
                            out.push(Term {
                                key: y.key,
                                exp: y.exp,
                                coef: s,
                            });
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().expect("peeked").clone()),
                (None, Some(_)) => out.push(b.next().expect("peeked")),
                (None, None) => break,
            }
        }
        SortedPoly(out)
    }
}

/// Full reduction of `f` modulo `basis` (each element monic).
pub(crate) fn reduce(mut f: SortedPoly, basis: &[&SortedPoly], km: &KeyMap) -> SortedPoly {
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = f.lead() {
        let div = basis
            .iter()
            .find(|g| g.lead().is_some_and(|gl| gl.exp.divides(&lt.exp)));
        match div {
            Some(g) => {
                let gl = g.lead().expect("nonzero");
                let shift = gl.exp.quotient(&lt.exp).expect("divides");
                let shift_key = km.key(&shift);
                let c = &lt.coef / &gl.coef;
                f = f.sub_shifted(&c, &shift, &shift_key, g);
            }
            None => rem.push(f.0.pop().expect("lead")),
        }
    }
    rem.reverse();
    SortedPoly(rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: ExponentVector,
    key: Key,
}

struct Engine<'a> {
    km: &'a KeyMap,
    polys: Vec<SortedPoly>,
    alive: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Engine<'a> {
    fn lm(&self, i: usize) -> &ExponentVector {
        &self.polys[i].lead().expect("nonzero basis element").exp
    }

    fn alive_refs(&self) -> Vec<&SortedPoly> {
        self.polys
            .iter()
            .zip(&self.alive)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    fn update(&mut self, h: SortedPoly) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.alive.push(false);
        let lh = self.lm(hi).clone();
        let mut c: VecDeque<(usize, ExponentVector)> = (0..hi)
            .filter(|&g| self.alive[g])
            .map(|g| (g, lh.lcm(self.lm(g))))
            .collect();
        let mut d: Vec<(usize, ExponentVector)> = Vec::new();
        while let Some((g1, l1)) = c.pop_front() {
            let coprime = lh.coprime(self.lm(g1));
            let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                d.push((g1, l1));
            }
        }
        let e: Vec<(usize, ExponentVector)> = d
            .into_iter()
            .filter(|(g, _)| !lh.coprime(self.lm(*g)))
            .collect();
        let lms: Vec<ExponentVector> = (0..self.polys.len()).map(|i| self.lm(i).clone()).collect();
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lms[p.i].lcm(&lh) != p.lcm && lms[p.j].lcm(&lh) != p.lcm)
        });
        for (g, l) in e {
            let key = self.km.key(&l);
            self.pairs.push(Pair {
                i: g,
                j: hi,
                lcm: l,
                key,
            });
        }
        for g in 0..hi {
            if self.alive[g] && lh.divides(self.lm(g)) {
                self.alive[g] = false;
            }
        }
        self.alive[hi] = true;
    }

    fn spoly(&self, p: &Pair) -> SortedPoly {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let sf = self.lm(p.i).quotient(&p.lcm).expect("lcm");
        let sg = self.lm(p.j).quotient(&p.lcm).expect("lcm");
        let a = SortedPoly::default().sub_shifted(&-Rational::one(), &sf, &self.km.key(&sf), f);
        a.sub_shifted(&Rational::one(), &sg, &self.km.key(&sg), g)
    }
}

/// Reduced, monic Gröbner basis sorted by descending leading monomial.
pub(crate) fn groebner_sorted(
    gens: &[Polynomial],
    km: &KeyMap,
    caps: &Caps,
) -> Result<Vec<SortedPoly>> {
    let mut input: Vec<SortedPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SortedPoly::from_poly(g, km))
        .collect();
    input.sort_by(|a, b| {
        a.lead()
            .expect("nonzero")
            .key
            .cmp(&b.lead().expect("nonzero").key)
    });
    let mut eng = Engine {
        km,
        polys: Vec::new(),
        alive: Vec::new(),
        pairs: Vec::new(),
    };
    let unit = |n: usize| {
        let e = ExponentVector::zero(n);
        vec![SortedPoly(vec![Term {
            key: km.key(&e),
            exp: e,
            coef: Rational::one(),
        }])]
    };
    for f in input {
        let h = reduce(f, &eng.alive_refs(), km);
        if h.is_zero() {
            continue;
        }
        if h.lead().expect("nonzero").exp.is_zero() {
            return Ok(unit(h.lead().expect("nonzero").exp.len()));
        }
        eng.update(h.monic());
    }
    let mut processed = 0usize;
    while !eng.pairs.is_empty() {
        let idx = (0..eng.pairs.len())
            .min_by(|&a, &b| {
                let (p, q) = (&eng.pairs[a], &eng.pairs[b]);
                p.key.cmp(&q.key).then(p.j.cmp(&q.j)).then(p.i.cmp(&q.i))
            })
            .expect("nonempty");
        let pair = eng.pairs.swap_remove(idx);
        processed += 1;
        if processed > caps.max_pairs {
            return Err(Error::CapExceeded {
                what: "Buchberger pair",
                limit: caps.max_pairs,
            });
        }
        if pair.lcm.degree() > caps.max_degree {
            return Err(Error::CapExceeded {
                what: "Buchberger degree",
                limit: caps.max_degree as usize,
            });
        }
        let s = eng.spoly(&pair);
        let h = reduce(s, &eng.alive_refs(), km);
        if h.is_zero() {
            continue;
        }
        if h.lead().expect("nonzero").exp.is_zero() {
            return Ok(unit(h.lead().expect("nonzero").exp.len()));
        }
        eng.update(h.monic());
    }
    // Interreduce the minimal basis.
    let mut basis: Vec<SortedPoly> = eng
        .polys
        .into_iter()
        .zip(eng.alive)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    basis.sort_by(|a, b| {
        b.lead()
            .expect("nonzero")
            .key
            .cmp(&a.lead().expect("nonzero").key)
    });
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let mut g = basis[i].clone();
        let lt = g.0.pop().expect("nonzero");
        let others: Vec<&SortedPoly> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        let mut tail = reduce(g, &others, km);
        tail.0.push(lt);
        out.push(tail);
    }
    Ok(out)
}

/// An ideal together with its reduced Gröbner basis under a monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerContext {
    ideal: Ideal,
    order: MonomialOrder,
    effective: MonomialOrder,
    basis: Vec<Polynomial>,
    km: KeyMap,
    sorted: Vec<SortedPoly>,
}

impl GroebnerContext {
    /// Computes the reduced basis. A composite order whose matrix is not
    /// column-wise lex-nonpositive is accepted only for ideals homogeneous with
    /// respect to a positive grading g; the order is then refined as [−g; M].
    pub fn new(ideal: &Ideal, order: &MonomialOrder, caps: &Caps) -> Result<Self> {
        let effective = effective_order(ideal, order, caps)?;
        let n = ideal.nvars();
        let km = KeyMap::new(&effective, n)?;
        let sorted = groebner_sorted(ideal.generators(), &km, caps)?;
        let basis = sorted.iter().map(|s| s.to_poly(ideal.vars())).collect();
        Ok(GroebnerContext {
            ideal: ideal.clone(),
            order: order.clone(),
            effective,
            basis,
            km,
            sorted,
        })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn vars(&self) -> &Vars {
        self.ideal.vars()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// The well-ordered order actually used for division.
    pub fn effective_order(&self) -> &MonomialOrder {
        &self.effective
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn basis_ideal(&self) -> Ideal {
        Ideal {
            vars: self.vars().clone(),
            generators: self.basis.clone(),
        }
    }

    pub fn leading_monomials(&self) -> Vec<ExponentVector> {
        self.sorted
            .iter()
            .map(|s| s.lead().expect("nonzero").exp.clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.vars() != self.vars() {
            return Err(Error::VariableMismatch);
        }
        let refs: Vec<&SortedPoly> = self.sorted.iter().collect();
        Ok(reduce(SortedPoly::from_poly(f, &self.km), &refs, &self.km).to_poly(self.vars()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_standard(&self, e: &ExponentVector) -> bool {
        !self
            .sorted
            .iter()
            .any(|s| s.lead().expect("nonzero").exp.divides(e))
    }

    /// Standard monomials of total degree exactly `d`.
    pub fn standard_monomials_of_degree(&self, d: u32) -> Vec<ExponentVector> {
        monomials_of_degree(self.ideal.nvars(), d)
            .into_iter()
            .filter(|e| self.is_standard(e))
            .collect()
    }

    /// Standard monomials of total degree at most `bound`, by degree.
    pub fn standard_monomials(&self, bound: u32) -> Vec<ExponentVector> {
        (0..=bound)
            .flat_map(|d| self.standard_monomials_of_degree(d))
            .collect()
    }
}

pub fn buchberger(ideal: &Ideal, order: &MonomialOrder, caps: &Caps) -> Result<GroebnerContext> {
    GroebnerContext::new(ideal, order, caps)
}

pub fn normal_form(f: &Polynomial, ctx: &GroebnerContext) -> Result<Polynomial> {
    ctx.normal_form(f)
}

pub fn standard_monomials(ctx: &GroebnerContext, degree_bound: u32) -> Vec<ExponentVector> {
    ctx.standard_monomials(degree_bound)
}

fn effective_order(ideal: &Ideal, order: &MonomialOrder, caps: &Caps) -> Result<MonomialOrder> {
    if order.is_well_ordered() {
        return Ok(order.clone());
    }
    let MonomialOrder::Composite { matrix, tiebreak } = order else {
        unreachable!("only composite orders can fail")
    };
    match positive_grading(ideal, caps)? {
        Some(g) => {
            let neg: Vec<Rational> = g.iter().map(|x| -x).collect();
            MonomialOrder::composite(matrix.with_row_prefixed(neg)?, (**tiebreak).clone())
        }
        None => Err(Error::pre(
            "composite order is not a well-order and the ideal is not homogeneous for a positive grading",
        )),
    }
}

/// All exponent vectors of total degree d, lexicographically descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<ExponentVector> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(ExponentVector::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(ExponentVector::zero(0));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}
