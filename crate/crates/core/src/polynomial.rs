//! Sparse multivariate polynomials over ℚ on a named variable list.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, ExponentVector, Rational, WeightMatrix};
use crate::error::{Error, Result};
use crate::order::{KeyMap, MonomialOrder};

/// Ordered variable names, shared cheaply between polynomials.
#[derive(Clone, Debug)]
pub struct Vars(Arc<[String]>);

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(
            names
                .iter()
                .map(|s| s.as_ref().to_string())
                .collect::<Vec<_>>()
                .into(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    /// A name based on `base` not already in use.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        name
    }

    pub fn inserted(&self, at: usize, name: &str) -> Self {
        let mut v: Vec<String> = self.0.to_vec();
        v.insert(at, name.to_string());
        Vars(v.into())
    }

    pub fn removed(&self, at: usize) -> Self {
        let mut v: Vec<String> = self.0.to_vec();
        v.remove(at);
        Vars(v.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::monomial(vars, ExponentVector::zero(vars.len()), c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn monomial(vars: &Vars, exp: ExponentVector, c: Rational) -> Self {
        assert_eq!(
            exp.len(),
            vars.len(),
            "exponent length must match variable count"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn variable(vars: &Vars, i: usize) -> Self {
        Self::monomial(vars, ExponentVector::unit(vars.len(), i), Rational::one())
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms(
        vars: &Vars,
        terms: impl IntoIterator<Item = (ExponentVector, Rational)>,
    ) -> Self {
        let mut p = Polynomial::zero(vars);
        for (e, c) in terms {
            assert_eq!(
                e.len(),
                vars.len(),
                "exponent length must match variable count"
            );
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.degree()).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Homogeneous for the standard grading.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Polynomial::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.checked_add(e2)?, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, e: &ExponentVector, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.add(e), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading term under `order` (largest monomial).
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(ExponentVector, Rational)> {
        let km = KeyMap::new(order, self.nvars()).ok()?;
        self.terms
            .iter()
            .max_by(|a, b| km.key(a.0).cmp(&km.key(b.0)))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    /// Smallest term under `order`.
    pub fn trailing_term(&self, order: &MonomialOrder) -> Option<(ExponentVector, Rational)> {
        let km = KeyMap::new(order, self.nvars()).ok()?;
        self.terms
            .iter()
            .min_by(|a, b| km.key(a.0).cmp(&km.key(b.0)))
            .map(|(e, c)| (e.clone(), c.clone()))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<ExponentVector> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Divides by the coefficient of the leading monomial under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Makes the polynomial monic with respect to the lexicographically largest
    /// exponent of the canonical storage; handy for canonical comparisons.
    pub fn normalized(&self) -> Self {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Substitutes `images[i]` for variable i; images share a target variable list.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::dim(self.nvars(), images.len()));
        }
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .ok_or_else(|| Error::pre("no images"))?;
        if images.iter().any(|p| p.vars != target) {
            return Err(Error::VariableMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&target)]; images.len()];
        let mut out = Polynomial::zero(&target);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &k) in e.entries().iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `target`, sending variable i to `map[i]`.
    pub fn embed(&self, target: &Vars, map: &[usize]) -> Polynomial {
        let n = target.len();
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(e, c)| {
                let mut v = vec![0u32; n];
                for (i, &k) in e.entries().iter().enumerate() {
                    v[map[i]] += k;
                }
                (ExponentVector::new(v), c.clone())
            }),
        )
    }

    /// Sets variable `at` to `value` and removes it from the variable list.
    pub fn specialize(&self, at: usize, value: &Rational) -> Polynomial {
        let vars = self.vars.removed(at);
        Polynomial::from_terms(
            &vars,
            self.terms.iter().map(|(e, c)| {
                let mut coef = c.clone();
                for _ in 0..e[at] {
                    coef *= value;
                }
                (e.without(at), coef)
            }),
        )
    }

    /// Terms whose weight M·α is lexicographically minimal (the initial form).
    pub fn initial_form(&self, m: &WeightMatrix) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::pre("initial form of the zero polynomial"));
        }
        if m.ncols() != self.nvars() {
            return Err(Error::dim(self.nvars(), m.ncols()));
        }
        let weighted: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| (m.weight_unchecked(e), e, c))
            .collect();
        let min = weighted
            .iter()
            .map(|t| &t.0)
            .min()
            .expect("nonzero")
            .clone();
        Ok(Polynomial::from_terms(
            &self.vars,
            weighted
                .into_iter()
                .filter(|t| t.0 == min)
                .map(|(_, e, c)| (e.clone(), c.clone())),
        ))
    }

    /// Terms sorted by descending degrevlex: the display order.
    fn display_terms(&self) -> Vec<(&ExponentVector, &Rational)> {
        let km = KeyMap::new(&MonomialOrder::DegRevLex, self.nvars()).expect("degrevlex");
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by_key(|t| std::cmp::Reverse(km.key(t.0)));
        ts
    }

    pub fn format_monomial(vars: &Vars, e: &ExponentVector) -> String {
        let parts: Vec<String> = e
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    vars.names()[i].clone()
                } else {
                    format!("{}^{}", vars.names()[i], k)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.display_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if e.is_zero() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", Polynomial::format_monomial(&self.vars, e))?;
            } else {
                write!(f, "{a}*{}", Polynomial::format_monomial(&self.vars, e))?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        self.checked_add(rhs).expect("variable mismatch in +")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        self.checked_sub(rhs).expect("variable mismatch in -")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        self.checked_mul(rhs).expect("variable mismatch in *")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&rat(-1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}
