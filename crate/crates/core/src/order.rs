//! Monomial orders. Every order is realized as an integer matrix order:
//! the key of α is `K·α` and larger keys are larger monomials.

use std::cmp::Ordering;
use std::fmt;

use num_traits::ToPrimitive;

use crate::algebra::{ExponentVector, WeightMatrix};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MonomialOrder {
    /// x₁ > x₂ > … > xₙ, lexicographic.
    Lex,
    /// Total degree, then reverse lexicographic.
    DegRevLex,
    /// The composite order >_M: a lexicographically *smaller* M·α is the larger
    /// monomial (MIN convention), remaining ties go to `tiebreak`.
    Composite {
        matrix: WeightMatrix,
        tiebreak: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    pub fn composite(matrix: WeightMatrix, tiebreak: MonomialOrder) -> Result<Self> {
        if matches!(tiebreak, MonomialOrder::Composite { .. }) {
            return Err(Error::pre("composite tiebreak must be lex or degrevlex"));
        }
        Ok(MonomialOrder::Composite {
            matrix,
            tiebreak: Box::new(tiebreak),
        })
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "lex" => Ok(MonomialOrder::Lex),
            "degrevlex" | "grevlex" | "drl" => Ok(MonomialOrder::DegRevLex),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown order {other:?}"),
            }),
        }
    }

    pub fn matrix(&self) -> Option<&WeightMatrix> {
        match self {
            MonomialOrder::Composite { matrix, .. } => Some(matrix),
            _ => None,
        }
    }

    pub fn tiebreak(&self) -> &MonomialOrder {
        match self {
            MonomialOrder::Composite { tiebreak, .. } => tiebreak,
            other => other,
        }
    }

    /// True when the order is a well-order on monomials, so that division terminates.
    pub fn is_well_ordered(&self) -> bool {
        match self {
            MonomialOrder::Composite { matrix, .. } => matrix.columns_lex_nonpositive(),
            _ => true,
        }
    }

    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::dim(a.len(), b.len()));
        }
        let keys = KeyMap::new(self, a.len())?;
        Ok(keys.key(a).cmp(&keys.key(b)))
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Composite { matrix, tiebreak } => {
                write!(f, "composite({matrix}, {tiebreak})")
            }
        }
    }
}

pub fn compare(order: &MonomialOrder, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
    order.compare(a, b)
}

pub(crate) type Key = Vec<i128>;

/// Compiled integer matrix for an order on n variables.
#[derive(Clone, Debug)]
pub(crate) struct KeyMap {
    rows: Vec<Vec<i128>>,
}

impl KeyMap {
    pub(crate) fn new(order: &MonomialOrder, n: usize) -> Result<Self> {
        let mut rows = Vec::new();
        match order {
            MonomialOrder::Lex => {
                for i in 0..n {
                    let mut r = vec![0; n];
                    r[i] = 1;
                    rows.push(r);
                }
            }
            MonomialOrder::DegRevLex => {
                rows.push(vec![1; n]);
                for i in (0..n).rev() {
                    let mut r = vec![0; n];
                    r[i] = -1;
                    rows.push(r);
                }
            }
            MonomialOrder::Composite { matrix, tiebreak } => {
                if matrix.ncols() != n {
                    return Err(Error::dim(n, matrix.ncols()));
                }
                for row in matrix.integer_rows() {
                    let r = row
                        .iter()
                        .map(|x| (-x).to_i128().filter(|v| v.unsigned_abs() < (1u128 << 80)))
                        .collect::<Option<Vec<_>>>()
                        .ok_or(Error::Overflow)?;
                    rows.push(r);
                }
                rows.extend(KeyMap::new(tiebreak, n)?.rows);
            }
        }
        Ok(KeyMap { rows })
    }

    pub(crate) fn key(&self, a: &ExponentVector) -> Key {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(a.entries())
                    .filter(|(_, &e)| e != 0)
                    .map(|(w, &e)| w.checked_mul(e as i128).expect("order key overflow"))
                    .fold(0i128, |s, t| s.checked_add(t).expect("order key overflow"))
            })
            .collect()
    }
}

pub(crate) fn key_add(a: &Key, b: &Key) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}
