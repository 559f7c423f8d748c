//! JSON encodings. Rationals are always strings ("p/q" or "n").

use khova_core::factor::LinearSplitting;
use khova_core::polyhedra::{Inequality, RationalPolyhedron};
use khova_core::tropical::Certificate;
use khova_core::{ExponentVector, Ideal, Polynomial, RankVector, Rational, WeightMatrix};
use serde_json::{json, Value};

pub fn q(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn qs(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

pub fn rows(rs: &[Vec<Rational>]) -> Value {
    Value::Array(rs.iter().map(|r| qs(r)).collect())
}

pub fn vector(v: &RankVector) -> Value {
    qs(&v.0)
}

pub fn exponent(e: &ExponentVector) -> Value {
    Value::Array(e.entries().iter().map(|&x| json!(x)).collect())
}

pub fn matrix(m: &WeightMatrix) -> Value {
    rows(m.rows())
}

pub fn poly(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

pub fn polys(ps: &[Polynomial]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

pub fn ideal(i: &Ideal) -> Value {
    polys(i.generators())
}

fn inequality(c: &Inequality) -> Value {
    json!({ "normal": qs(&c.normal), "rhs": q(&c.rhs) })
}

pub fn polyhedron(p: &RationalPolyhedron) -> Value {
    json!({
        "dimension": p.dim(),
        "vertices": rows(p.vertices()),
        "rays": rows(p.rays()),
        "lines": rows(p.lines()),
        "inequalities": p.inequalities().iter().map(inequality).collect::<Vec<_>>(),
        "equations": p.equations().iter().map(inequality).collect::<Vec<_>>(),
    })
}

fn splitting(s: &LinearSplitting) -> Value {
    json!({
        "minimal_polynomial": qs(&s.minimal_polynomial),
        "x": s.x,
        "z": s.z,
        "cofactor": s.cofactor.iter().map(|c| qs(c)).collect::<Vec<_>>(),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    match c {
        Certificate::ZeroIdeal => json!({ "kind": "ZeroIdeal" }),
        Certificate::Linear => json!({ "kind": "Linear" }),
        Certificate::LinearInVariable {
            generator,
            variable,
        } => {
            json!({ "kind": "LinearInVariable", "generator": poly(generator), "variable": variable })
        }
        Certificate::SmoothRationalPoint { generator, point } => {
            json!({ "kind": "SmoothRationalPoint", "generator": poly(generator), "point": qs(point) })
        }
        Certificate::Toric { lattice } => json!({
            "kind": "Toric",
            "lattice": lattice.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        Certificate::UnitIdeal => json!({ "kind": "UnitIdeal" }),
        Certificate::ZeroDivisors { left, right } => {
            json!({ "kind": "ZeroDivisors", "left": poly(left), "right": poly(right) })
        }
        Certificate::NumberFieldSplitting {
            generator,
            splitting: s,
        } => {
            json!({ "kind": "NumberFieldSplitting", "generator": poly(generator), "splitting": splitting(s) })
        }
        Certificate::None { reason } => json!({ "kind": "None", "reason": reason }),
    }
}
