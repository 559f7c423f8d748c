//! Exact linear algebra over ℚ and ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of {x : rows·x = 0} in ℚ^n, one vector per free column.
pub fn nullspace(rows: &[Vec<Rational>], n: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let pivots = rref(&mut m);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of A x = b, if any.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map(|r| r.len()).unwrap_or(0);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            r.iter()
                .cloned()
                .chain(std::iter::once(bi.clone()))
                .collect()
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = m[i][n].clone();
    }
    Some(x)
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    det
}

/// Lattice basis of {x ∈ ℤ^n : A x = 0}, via unimodular column operations.
pub fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    // u is stored row-major as an n×n matrix; column operations act on its columns.
    let mut c = 0;
    for i in 0..m.len() {
        if c >= n {
            break;
        }
        for j in c + 1..n {
            if m[i][j].is_zero() {
                continue;
            }
            let a0 = m[i][c].clone();
            let b0 = m[i][j].clone();
            let eg = a0.extended_gcd(&b0);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let p = -(&b0 / &g);
            let q = &a0 / &g;
            let col_op = |mat: &mut Vec<Vec<BigInt>>| {
                for row in mat.iter_mut() {
                    let vc = row[c].clone();
                    let vj = row[j].clone();
                    row[c] = &x * &vc + &y * &vj;
                    row[j] = &p * &vc + &q * &vj;
                }
            };
            col_op(&mut m);
            col_op(&mut u);
        }
        if !m[i][c].is_zero() {
            c += 1;
        }
    }
    (c..n)
        .map(|j| (0..n).map(|i| u[i][j].clone()).collect())
        .collect()
}

/// Nonzero invariant factors of an integer matrix (Smith normal form diagonal).
pub fn smith_invariants(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nr = m.len();
    let nc = m.first().map(|r| r.len()).unwrap_or(0);
    let mut out = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        let mut clean = true;
        for i in t + 1..nr {
            let q = m[i][t].div_floor(&m[t][t]);
            if !q.is_zero() {
                for j in t..nc {
                    let s = &q * &m[t][j];
                    m[i][j] -= s;
                }
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..nc {
            let q = m[t][j].div_floor(&m[t][t]);
            if !q.is_zero() {
                for i in t..nr {
                    let s = &q * &m[i][t];
                    m[i][j] -= s;
                }
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // Divisibility condition: fold offending rows into the pivot row.
        let p = m[t][t].clone();
        if let Some((i, _)) = (t + 1..nr)
            .flat_map(|i| (t + 1..nc).map(move |j| (i, j)))
            .find(|&(i, j)| !(&m[i][j] % &p).is_zero())
        {
            for j in t..nc {
                let v = m[i][j].clone();
                m[t][j] += v;
            }
            continue;
        }
        out.push(p.abs());
        t += 1;
    }
    out
}

/// True when the lattice spanned by `gens` equals its saturation ℚL ∩ ℤ^n.
pub fn lattice_is_saturated(gens: &[Vec<BigInt>]) -> bool {
    smith_invariants(gens).iter().all(|d| d.is_one())
}

pub fn to_rational_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let l = crate::algebra::denominator_lcm(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}
