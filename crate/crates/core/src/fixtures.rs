//! Worked examples used by tests, benchmarks and the command line.

use crate::algebra::{rat, ExponentVector, Rational, WeightMatrix};
use crate::groebner::Ideal;
use crate::parse::parse_polynomial;
use crate::polynomial::{Polynomial, Vars};

fn ideal(names: &[&str], gens: &[&str]) -> Ideal {
    Ideal::parse(&Vars::new(names), gens).expect("fixture parses")
}

fn ints(rows: &[&[i64]]) -> WeightMatrix {
    WeightMatrix::from_ints(rows)
}

/// ⟨y²z − x³ + 7xz² − 2z³⟩ in ℚ[x, y, z].
pub fn elliptic() -> Ideal {
    ideal(&["x", "y", "z"], &["y^2*z - x^3 + 7*x*z^2 - 2*z^3"])
}

/// The rank-2 weighting whose rows span the prime cone of the elliptic curve.
pub fn elliptic_matrix() -> WeightMatrix {
    ints(&[&[-1, -1, -1], &[-2, -3, 0]])
}

/// Rays of the tropical curve of the elliptic ideal, modulo (1, 1, 1).
pub fn elliptic_rays() -> Vec<Vec<Rational>> {
    [[1, 0, 0], [0, 1, 0], [-2, -3, 0]]
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect()
}

pub fn elliptic_lineality() -> Vec<Vec<Rational>> {
    vec![vec![rat(1), rat(1), rat(1)]]
}

/// ⟨x² − y⟩ in ℚ[x, y].
pub fn parabola() -> Ideal {
    ideal(&["x", "y"], &["x^2 - y"])
}

/// The Plücker relation of Gr(2, 4).
pub fn grassmannian_24() -> Ideal {
    ideal(
        &["p12", "p13", "p14", "p23", "p24", "p34"],
        &["p12*p34 - p13*p24 + p14*p23"],
    )
}

/// Weight vector with 1 on p14 and 0 elsewhere.
pub fn grassmannian_24_weight() -> Vec<Rational> {
    [0, 0, 1, 0, 0, 0].iter().map(|&x| rat(x)).collect()
}

pub fn variables(prefix: &str, n: usize) -> Vars {
    let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    Vars::new(&names)
}

/// Elementary symmetric polynomials e₁, …, eₙ in x1, …, xn.
pub fn elementary_symmetric(n: usize) -> Vec<Polynomial> {
    let vars = variables("x", n);
    let mut out = Vec::new();
    for k in 1..=n {
        let mut e = Polynomial::zero(&vars);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == k {
                let mut exp = vec![0u32; n];
                for (i, slot) in exp.iter_mut().enumerate() {
                    *slot = mask >> i & 1;
                }
                e = &e + &Polynomial::monomial(&vars, ExponentVector::new(exp), rat(1));
            }
        }
        out.push(e);
    }
    out
}

/// Generators of the A₃-invariants of ℚ[x1, x2, x3]: e₁, e₂, e₃ and the
/// cyclic sum x1²x2 + x2²x3 + x3²x1.
pub fn alternating_invariants() -> Vec<Polynomial> {
    let vars = variables("x", 3);
    let mut gens = elementary_symmetric(3);
    gens.push(parse_polynomial("x1^2*x2 + x2^2*x3 + x3^2*x1", &vars).expect("fixture parses"));
    gens
}

/// The single generator x + x² of a subalgebra of ℚ[x].
pub fn shifted_square() -> Vec<Polynomial> {
    let vars = Vars::new(&["x"]);
    vec![parse_polynomial("x + x^2", &vars).expect("fixture parses")]
}

/// ⟨x1 + x2 − t1·t2⟩ in ℚ[x1, x2, t1, t2].
pub fn trace_algebra() -> Ideal {
    ideal(&["x1", "x2", "t1", "t2"], &["x1 + x2 - t1*t2"])
}

pub fn trace_algebra_lineality() -> Vec<Vec<Rational>> {
    vec![
        [-1, -1, 0, -1].iter().map(|&x| rat(x)).collect(),
        [-1, -1, -1, 0].iter().map(|&x| rat(x)).collect(),
    ]
}

/// Rays of the three maximal cones, in the order C1, C2, C3.
pub fn trace_algebra_rays() -> Vec<Vec<Rational>> {
    [[-2, -2, 0, 0], [0, 2, -1, -1], [2, 0, -1, -1]]
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect()
}

pub fn trace_algebra_matrix() -> WeightMatrix {
    ints(&[&[-1, -1, -1, 0], &[-1, -1, 0, -1], &[-2, -2, 0, 0]])
}
