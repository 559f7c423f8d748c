//! Scalars, exponent vectors, value vectors and weight matrices.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar; always normalized with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n`, `-n` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational: {s:?}"),
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Least common multiple of the denominators of `xs`.
pub fn denominator_lcm<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::dim(self.len(), other.len()));
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| {
                a.checked_add(*b)
                    .filter(|s| *s <= i32::MAX as u32)
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<Vec<_>>>()
            .map(ExponentVector)
    }

    /// Panicking addition for internal use where lengths are known to agree.
    pub(crate) fn add(&self, other: &Self) -> Self {
        self.checked_add(other)
            .expect("exponent addition overflowed")
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other - self` when `self` divides `other`.
    pub fn quotient(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| b.checked_sub(*a))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn with_inserted(&self, at: usize, e: u32) -> Self {
        let mut v = self.0.clone();
        v.insert(at, e);
        ExponentVector(v)
    }

    pub(crate) fn without(&self, at: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(at);
        ExponentVector(v)
    }

    pub fn as_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|&e| rat(e as i64)).collect()
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

/// Element of ℚ^r under the lexicographic group order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RankVector(pub Vec<Rational>);

impl RankVector {
    pub fn zero(r: usize) -> Self {
        RankVector(vec![Rational::zero(); r])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RankVector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        RankVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RankVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RankVector(self.0.iter().map(|a| a * c).collect())
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// r×n rational matrix; column j weights variable j.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightMatrix {
    rows: Vec<Vec<Rational>>,
    ncols: usize,
}

impl WeightMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::pre("weight matrix needs at least one row"));
        };
        let ncols = first.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::dim(ncols, bad.len()));
        }
        Ok(WeightMatrix { rows, ncols })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    pub fn from_row(row: Vec<Rational>) -> Self {
        let ncols = row.len();
        WeightMatrix {
            rows: vec![row],
            ncols,
        }
    }

    /// Builds the matrix whose columns are `cols` (each of length r).
    pub fn from_columns(cols: &[RankVector]) -> Result<Self> {
        let r = cols
            .first()
            .map(|c| c.len())
            .ok_or_else(|| Error::pre("no columns"))?;
        let rows = (0..r)
            .map(|i| cols.iter().map(|c| c.0[i].clone()).collect())
            .collect();
        Self::new(rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> RankVector {
        RankVector(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn columns(&self) -> Vec<RankVector> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    /// M·α.
    pub fn weight(&self, alpha: &ExponentVector) -> Result<RankVector> {
        if alpha.len() != self.ncols {
            return Err(Error::dim(self.ncols, alpha.len()));
        }
        Ok(self.weight_unchecked(alpha))
    }

    pub(crate) fn weight_unchecked(&self, alpha: &ExponentVector) -> RankVector {
        RankVector(
            self.rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(alpha.entries())
                        .filter(|(_, &e)| e != 0)
                        .fold(Rational::zero(), |acc, (w, &e)| acc + w * rat(e as i64))
                })
                .collect(),
        )
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &WeightMatrix) -> Result<Self> {
        if self.ncols != other.ncols {
            return Err(Error::dim(self.ncols, other.ncols));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::new(rows)
    }

    pub fn with_row_prefixed(&self, row: Vec<Rational>) -> Result<Self> {
        WeightMatrix::from_row(row).stack(self)
    }

    /// Inserts a zero column at position `at`.
    pub fn with_zero_column(&self, at: usize) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.insert(at, Rational::zero());
                r
            })
            .collect();
        WeightMatrix {
            rows,
            ncols: self.ncols + 1,
        }
    }

    pub fn scale_row(&self, i: usize, c: &Rational) -> Self {
        let mut m = self.clone();
        for x in &mut m.rows[i] {
            *x *= c;
        }
        m
    }

    /// Every column is ≤ 0 in the lexicographic order on ℚ^r.
    pub fn columns_lex_nonpositive(&self) -> bool {
        (0..self.ncols).all(|j| self.column(j) <= RankVector::zero(self.nrows()))
    }

    /// Integer rows proportional (positively) to the rational rows.
    pub(crate) fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.rows
            .iter()
            .map(|row| {
                let l = denominator_lcm(row);
                row.iter()
                    .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Compares M·α with M·β lexicographically; may be `Equal` for α ≠ β.
pub fn weight_compare(
    m: &WeightMatrix,
    a: &ExponentVector,
    b: &ExponentVector,
) -> Result<Ordering> {
    Ok(m.weight(a)?.cmp(&m.weight(b)?))
}

pub fn weight_of_monomial(m: &WeightMatrix, alpha: &ExponentVector) -> Result<RankVector> {
    m.weight(alpha)
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}
