//! Rational polyhedra by exact double description, and the polytopes attached
//! to a Khovanskii context: Newton-Okounkov cone and body, compactification
//! polytopes, Hilbert functions and Rees graded dimensions.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::algebra::{dot, rat, RankVector, Rational};
use crate::error::{Error, Result};
use crate::groebner::{Caps, GroebnerContext};
use crate::linalg::{determinant, integer_kernel, nullspace, primitive_integer, rank, rref, solve};
use crate::valuation::{khovanskii_test, Mode, ValuationContext, Value, ValueSemigroup};

/// Largest ambient dimension handled by the double description engine.
pub const MAX_DIMENSION: usize = 8;
/// Largest number of monomials enumerated in one degree.
pub const MAX_WINDOW_MONOMIALS: usize = 200_000;

/// `normal · x >= rhs`, or `normal · x = rhs` when used as an equation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Inequality {
    pub normal: Vec<Rational>,
    pub rhs: Rational,
}

impl Inequality {
    pub fn new(normal: Vec<Rational>, rhs: Rational) -> Self {
        Inequality { normal, rhs }
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        dot(&self.normal, x) >= self.rhs
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        dot(&self.normal, x) == self.rhs
    }
}

/// A polyhedron in ℚ^d kept in both representations: conv(vertices) +
/// cone(rays) + span(lines), and {x : inequalities, equations}.
///
/// Both representations are irredundant and canonical: rays, vertices and
/// inequalities are taken modulo the lineality space, scaled to primitive
/// integer vectors where a scale is free, and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolyhedron {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    rays: Vec<Vec<Rational>>,
    lines: Vec<Vec<Rational>>,
    inequalities: Vec<Inequality>,
    equations: Vec<Inequality>,
}

impl RationalPolyhedron {
    /// {x ∈ ℚ^dim : a·x ≥ b for each inequality, a·x = b for each equation}.
    pub fn from_h(
        dim: usize,
        inequalities: &[Inequality],
        equations: &[Inequality],
    ) -> Result<Self> {
        check_dim(dim)?;
        for c in inequalities.iter().chain(equations) {
            if c.normal.len() != dim {
                return Err(Error::dim(dim, c.normal.len()));
            }
        }
        let (vertices, rays, lines) = h_to_v(dim, inequalities, equations);
        Self::assemble(dim, vertices, rays, lines)
    }

    /// conv(vertices) + cone(rays) + span(lines).
    pub fn from_v(
        dim: usize,
        vertices: &[Vec<Rational>],
        rays: &[Vec<Rational>],
        lines: &[Vec<Rational>],
    ) -> Result<Self> {
        check_dim(dim)?;
        for v in vertices.iter().chain(rays).chain(lines) {
            if v.len() != dim {
                return Err(Error::dim(dim, v.len()));
            }
        }
        if vertices.is_empty() && !(rays.is_empty() && lines.is_empty()) {
            return Err(Error::pre("a nonempty polyhedron needs at least one point"));
        }
        let (ineqs, eqs) = v_to_h(dim, vertices, rays, lines);
        let (vertices, rays, lines) = h_to_v(dim, &ineqs, &eqs);
        Self::assemble(dim, vertices, rays, lines)
    }

    /// The polyhedral cone generated by `rays` (apex at the origin).
    pub fn cone(dim: usize, rays: &[Vec<Rational>]) -> Result<Self> {
        Self::from_v(dim, &[vec![Rational::zero(); dim]], rays, &[])
    }

    fn assemble(
        dim: usize,
        vertices: Vec<Vec<Rational>>,
        rays: Vec<Vec<Rational>>,
        lines: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Ok(RationalPolyhedron {
                dim,
                vertices,
                rays: Vec::new(),
                lines: Vec::new(),
                inequalities: vec![Inequality::new(
                    vec![Rational::zero(); dim],
                    Rational::one(),
                )],
                equations: Vec::new(),
            });
        }
        let (inequalities, equations) = v_to_h(dim, &vertices, &rays, &lines);
        Ok(RationalPolyhedron {
            dim,
            vertices,
            rays,
            lines,
            inequalities,
            equations,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.rays
    }

    pub fn lines(&self) -> &[Vec<Rational>] {
        &self.lines
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Inequality] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim
            && self.inequalities.iter().all(|c| c.holds(x))
            && self.equations.iter().all(|c| c.is_tight(x))
    }

    /// Strict satisfaction of every inequality, equations holding.
    pub fn in_relative_interior(&self, x: &[Rational]) -> bool {
        !self.is_empty()
            && x.len() == self.dim
            && self.inequalities.iter().all(|c| dot(&c.normal, x) > c.rhs)
            && self.equations.iter().all(|c| c.is_tight(x))
    }

    pub fn has_vertex(&self, x: &[Rational]) -> bool {
        self.vertices.iter().any(|v| v == x)
    }

    /// Affine dimension; −1 for the empty set.
    pub fn affine_dimension(&self) -> isize {
        if self.is_empty() {
            return -1;
        }
        let v0 = &self.vertices[0];
        let mut dirs: Vec<Vec<Rational>> = self.vertices[1..].iter().map(|v| sub(v, v0)).collect();
        dirs.extend(self.rays.iter().cloned());
        dirs.extend(self.lines.iter().cloned());
        rank(&dirs) as isize
    }

    /// Rebuilds the polyhedron from its V-representation.
    pub fn round_trip_from_v(&self) -> Result<Self> {
        if self.is_empty() {
            return Self::from_h(self.dim, &self.inequalities, &self.equations);
        }
        Self::from_v(self.dim, &self.vertices, &self.rays, &self.lines)
    }

    /// Rebuilds the polyhedron from its H-representation.
    pub fn round_trip_from_h(&self) -> Result<Self> {
        Self::from_h(self.dim, &self.inequalities, &self.equations)
    }

    /// c·P for c > 0.
    pub fn scaled(&self, c: &Rational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::pre("scaling factor must be positive"));
        }
        let verts: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * c).collect())
            .collect();
        Self::from_v(self.dim, &verts, &self.rays, &self.lines)
    }

    /// P ∩ {x : extra}.
    pub fn intersect(&self, extra: &[Inequality], extra_equations: &[Inequality]) -> Result<Self> {
        let mut ineqs = self.inequalities.clone();
        ineqs.extend_from_slice(extra);
        let mut eqs = self.equations.clone();
        eqs.extend_from_slice(extra_equations);
        Self::from_h(self.dim, &ineqs, &eqs)
    }

    /// P ∩ {x_coord = value}, with the coordinate dropped.
    pub fn slice(&self, coord: usize, value: &Rational) -> Result<Self> {
        if coord >= self.dim {
            return Err(Error::dim(self.dim, coord + 1));
        }
        let mut e = vec![Rational::zero(); self.dim];
        e[coord] = Rational::one();
        let cut = self.intersect(&[], &[Inequality::new(e, value.clone())])?;
        cut.drop_coordinate(coord)
    }

    /// Image under the projection forgetting one coordinate.
    pub fn drop_coordinate(&self, coord: usize) -> Result<Self> {
        if coord >= self.dim {
            return Err(Error::dim(self.dim, coord + 1));
        }
        let d = self.dim - 1;
        if self.is_empty() {
            let ineq = Inequality::new(vec![Rational::zero(); d], Rational::one());
            return Self::from_h(d, &[ineq], &[]);
        }
        let drop = |v: &Vec<Rational>| -> Vec<Rational> {
            v.iter()
                .enumerate()
                .filter(|(i, _)| *i != coord)
                .map(|(_, x)| x.clone())
                .collect()
        };
        let verts: Vec<_> = self.vertices.iter().map(drop).collect();
        let rays: Vec<_> = self
            .rays
            .iter()
            .map(drop)
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        let lines: Vec<_> = self
            .lines
            .iter()
            .map(drop)
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        Self::from_v(d, &verts, &rays, &lines)
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim > MAX_DIMENSION {
        return Err(Error::CapExceeded {
            what: "polyhedron dimension",
            limit: MAX_DIMENSION,
        });
    }
    Ok(())
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn axpy(y: &[Rational], t: &Rational, x: &[Rational]) -> Vec<Rational> {
    y.iter().zip(x).map(|(a, b)| a + t * b).collect()
}

fn unit(d: usize, i: usize) -> Vec<Rational> {
    (0..d)
        .map(|j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

fn primitive(v: &[Rational]) -> Vec<Rational> {
    primitive_integer(v)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

/// Canonical basis of span(vs): the nonzero rows of the reduced echelon form,
/// scaled to primitive integer vectors.
fn canonical_span(vs: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m = vs.to_vec();
    let pivots = rref(&mut m);
    m.truncate(pivots.len());
    m.iter().map(|r| primitive(r)).collect()
}

/// Orthogonal projection of v onto the complement of span(basis).
fn project_out(v: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    if basis.is_empty() {
        return v.to_vec();
    }
    let gram: Vec<Vec<Rational>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| dot(a, b)).collect())
        .collect();
    let rhs: Vec<Rational> = basis.iter().map(|a| dot(a, v)).collect();
    let c = solve(&gram, &rhs).expect("basis is independent");
    let mut out = v.to_vec();
    for (ci, b) in c.iter().zip(basis) {
        out = axpy(&out, &-ci, b);
    }
    out
}

/// Generators of the cone {x ∈ ℚ^d : h·x ≥ 0 for every row h}: a basis of
/// the lineality space and the extreme rays modulo it.
fn double_description(
    d: usize,
    rows: &[Vec<Rational>],
) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let mut lines: Vec<Vec<Rational>> = (0..d).map(|i| unit(d, i)).collect();
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    for (k, h) in rows.iter().enumerate() {
        if let Some(p) = lines.iter().position(|l| !dot(h, l).is_zero()) {
            let mut l0 = lines.remove(p);
            let mut s = dot(h, &l0);
            if s.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s = -s;
            }
            for v in lines.iter_mut().chain(rays.iter_mut()) {
                let t = dot(h, v) / &s;
                if !t.is_zero() {
                    *v = axpy(v, &-t, &l0);
                }
            }
            rays.push(primitive(&l0));
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| dot(h, r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            continue;
        }
        let zero_sets: Vec<BTreeSet<usize>> = rays
            .iter()
            .map(|r| (0..k).filter(|&j| dot(&rows[j], r).is_zero()).collect())
            .collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Vec<Rational>> = (0..rays.len())
            .filter(|&i| !vals[i].is_negative())
            .map(|i| rays[i].clone())
            .collect();
        for &p in &pos {
            for &n in &neg {
                let common: BTreeSet<usize> =
                    zero_sets[p].intersection(&zero_sets[n]).copied().collect();
                let adjacent =
                    (0..rays.len()).all(|i| i == p || i == n || !common.is_subset(&zero_sets[i]));
                if !adjacent {
                    continue;
                }
                let combo: Vec<Rational> = rays[n]
                    .iter()
                    .zip(&rays[p])
                    .map(|(rn, rp)| &vals[p] * rn - &vals[n] * rp)
                    .collect();
                next.push(primitive(&combo));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
    }
    let lines = canonical_span(&lines);
    let rays: BTreeSet<Vec<Rational>> = rays
        .iter()
        .map(|r| primitive(&project_out(r, &lines)))
        .collect();
    (
        lines,
        rays.into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect(),
    )
}

type VRep = (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Vec<Rational>>);

fn h_to_v(d: usize, inequalities: &[Inequality], equations: &[Inequality]) -> VRep {
    // Homogenize with t as coordinate 0: a·x ≥ b becomes −b t + a·x ≥ 0.
    let lift = |c: &Inequality, sign: i64| -> Vec<Rational> {
        let s = rat(sign);
        std::iter::once(-&c.rhs * &s)
            .chain(c.normal.iter().map(|a| a * &s))
            .collect()
    };
    let mut rows: Vec<Vec<Rational>> = vec![unit(d + 1, 0)];
    rows.extend(inequalities.iter().map(|c| lift(c, 1)));
    for e in equations {
        rows.push(lift(e, 1));
        rows.push(lift(e, -1));
    }
    let (hlines, hrays) = double_description(d + 1, &rows);
    let mut vertices = BTreeSet::new();
    let mut rays = Vec::new();
    for r in hrays {
        if r[0].is_zero() {
            rays.push(r[1..].to_vec());
        } else {
            vertices.insert(r[1..].iter().map(|x| x / &r[0]).collect::<Vec<_>>());
        }
    }
    if vertices.is_empty() {
        return (Vec::new(), Vec::new(), Vec::new());
    }
    let lines: Vec<Vec<Rational>> = hlines.iter().map(|l| l[1..].to_vec()).collect();
    let lines = canonical_span(&lines);
    let vertices: BTreeSet<Vec<Rational>> =
        vertices.iter().map(|v| project_out(v, &lines)).collect();
    let rays: BTreeSet<Vec<Rational>> = rays
        .iter()
        .map(|r| primitive(&project_out(r, &lines)))
        .collect();
    (
        vertices.into_iter().collect(),
        rays.into_iter().collect(),
        lines,
    )
}

fn v_to_h(
    d: usize,
    vertices: &[Vec<Rational>],
    rays: &[Vec<Rational>],
    lines: &[Vec<Rational>],
) -> (Vec<Inequality>, Vec<Inequality>) {
    // The dual cone {(c0, c) : c0 + c·v ≥ 0, c·r ≥ 0, c·l = 0} lists the valid
    // inequalities c·x ≥ −c0.
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    for v in vertices {
        gens.push(
            std::iter::once(Rational::one())
                .chain(v.iter().cloned())
                .collect(),
        );
    }
    for r in rays {
        gens.push(
            std::iter::once(Rational::zero())
                .chain(r.iter().cloned())
                .collect(),
        );
    }
    for l in lines {
        gens.push(
            std::iter::once(Rational::zero())
                .chain(l.iter().cloned())
                .collect(),
        );
        gens.push(
            std::iter::once(Rational::zero())
                .chain(l.iter().map(|x| -x))
                .collect(),
        );
    }
    let (dlines, drays) = double_description(d + 1, &gens);
    let to_ineq = |y: &[Rational]| Inequality::new(y[1..].to_vec(), -&y[0]);
    // Equations as the reduced echelon form of [c | c0].
    let eq_rows: Vec<Vec<Rational>> = dlines
        .iter()
        .map(|y| {
            y[1..]
                .iter()
                .chain(std::iter::once(&y[0]))
                .cloned()
                .collect()
        })
        .collect();
    let mut ech = eq_rows.clone();
    let piv = rref(&mut ech);
    ech.truncate(piv.len());
    let equations: Vec<Inequality> = ech
        .iter()
        .map(|row| {
            let y: Vec<Rational> = std::iter::once(row[d].clone())
                .chain(row[..d].iter().cloned())
                .collect();
            to_ineq(&primitive(&y))
        })
        .collect();
    let inequalities: BTreeSet<Inequality> = drays
        .iter()
        .filter(|y| y[1..].iter().any(|x| !x.is_zero()))
        .map(|y| to_ineq(y))
        .collect();
    (inequalities.into_iter().collect(), equations)
}

/// Lattice-normalized volume of a bounded polytope of affine dimension q:
/// q! times the Euclidean volume measured in a basis of the lattice ℤ^d ∩
/// (direction space). A lattice point has volume 1.
pub fn normalized_volume(poly: &RationalPolyhedron, lattice_dim: usize) -> Result<Rational> {
    if !poly.is_bounded() {
        return Err(Error::pre("normalized volume of an unbounded polyhedron"));
    }
    if poly.is_empty() {
        return Ok(Rational::zero());
    }
    let q = poly.affine_dimension() as usize;
    if q != lattice_dim {
        return Err(Error::pre(format!(
            "lattice dimension {lattice_dim} differs from the polytope dimension {q}"
        )));
    }
    if q == 0 {
        return Ok(Rational::one());
    }
    let local = lattice_coordinates(poly)?;
    let facets: Vec<BTreeSet<usize>> = local
        .inequalities()
        .iter()
        .map(|c| {
            (0..local.vertices().len())
                .filter(|&i| c.is_tight(&local.vertices()[i]))
                .collect()
        })
        .collect();
    let all: BTreeSet<usize> = (0..local.vertices().len()).collect();
    let mut total = Rational::zero();
    for simplex in pulling_triangulation(local.vertices(), &facets, &all, q) {
        let v0 = &local.vertices()[simplex[0]];
        let m: Vec<Vec<Rational>> = simplex[1..]
            .iter()
            .map(|&i| sub(&local.vertices()[i], v0))
            .collect();
        total += determinant(&m).abs();
    }
    Ok(total)
}

/// Euclidean volume in lattice coordinates: normalized volume / q!.
pub fn lattice_volume(poly: &RationalPolyhedron, lattice_dim: usize) -> Result<Rational> {
    let nv = normalized_volume(poly, lattice_dim)?;
    let fact = (1..=lattice_dim as i64).fold(Rational::one(), |a, k| a * rat(k));
    Ok(nv / fact)
}

/// The polytope rewritten in coordinates of a basis of ℤ^d ∩ (direction
/// space), with the first vertex at the origin.
fn lattice_coordinates(poly: &RationalPolyhedron) -> Result<RationalPolyhedron> {
    let d = poly.dim();
    let v0 = &poly.vertices()[0];
    let dirs: Vec<Vec<Rational>> = poly.vertices()[1..].iter().map(|v| sub(v, v0)).collect();
    let normals: Vec<Vec<_>> = nullspace(&dirs, d)
        .iter()
        .map(|n| primitive_integer(n))
        .collect();
    let basis: Vec<Vec<Rational>> = integer_kernel(&normals, d)
        .into_iter()
        .map(|b| b.into_iter().map(Rational::from_integer).collect())
        .collect();
    let q = basis.len();
    let a: Vec<Vec<Rational>> = (0..d)
        .map(|i| basis.iter().map(|b| b[i].clone()).collect())
        .collect();
    let coords: Vec<Vec<Rational>> = poly
        .vertices()
        .iter()
        .map(|v| {
            solve(&a, &sub(v, v0))
                .ok_or_else(|| Error::Internal("vertex outside its affine hull".into()))
        })
        .collect::<Result<_>>()?;
    RationalPolyhedron::from_v(q, &coords, &[], &[])
}

/// Pulling triangulation of a face (vertex index set of dimension k): cone
/// from its smallest vertex over the facets of the face that miss it.
fn pulling_triangulation(
    verts: &[Vec<Rational>],
    facets: &[BTreeSet<usize>],
    face: &BTreeSet<usize>,
    k: usize,
) -> Vec<Vec<usize>> {
    let v0 = *face.iter().next().expect("nonempty face");
    if k == 0 {
        return vec![vec![v0]];
    }
    let mut subfaces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for f in facets {
        let s: BTreeSet<usize> = face.intersection(f).copied().collect();
        if s.is_empty() || s.contains(&v0) || s == *face {
            continue;
        }
        if affine_rank(verts, &s) == k - 1 {
            subfaces.insert(s);
        }
    }
    let mut out = Vec::new();
    for s in &subfaces {
        for mut simplex in pulling_triangulation(verts, facets, s, k - 1) {
            simplex.insert(0, v0);
            out.push(simplex);
        }
    }
    out
}

fn affine_rank(verts: &[Vec<Rational>], s: &BTreeSet<usize>) -> usize {
    let mut it = s.iter();
    let Some(&first) = it.next() else { return 0 };
    let dirs: Vec<Vec<Rational>> = it.map(|&i| sub(&verts[i], &verts[first])).collect();
    rank(&dirs)
}

fn require_khovanskii(ctx: &ValuationContext, caps: &Caps) -> Result<Vec<Value>> {
    let report = khovanskii_test(ctx, caps)?;
    if !report.holds {
        return Err(Error::pre(format!(
            "not a Khovanskii basis: {}",
            report.diagnostics.join("; ")
        )));
    }
    ctx.generator_values()
}

/// Closed convex cone over the generator values (the columns of ι(M)).
pub fn newton_okounkov_cone(ctx: &ValuationContext, caps: &Caps) -> Result<RationalPolyhedron> {
    let values = require_khovanskii(ctx, caps)?;
    let r = values.first().map(|v| v.len()).unwrap_or(0);
    let rays: Vec<Vec<Rational>> = values.into_iter().map(|v| v.0).collect();
    RationalPolyhedron::cone(r, &rays)
}

/// Degree-one slice of the Newton-Okounkov cone, first coordinate dropped:
/// conv of the generator values without their first coordinate.
pub fn newton_okounkov_body(ctx: &ValuationContext, caps: &Caps) -> Result<RationalPolyhedron> {
    let values = require_khovanskii(ctx, caps)?;
    if values.is_empty() {
        return Err(Error::pre("no generators"));
    }
    if values.iter().any(|v| v.0.first() != Some(&rat(-1))) {
        return Err(Error::pre(
            "graded bodies need every generator value to have first coordinate -1",
        ));
    }
    let r = values[0].len();
    let points: Vec<Vec<Rational>> = values.iter().map(|v| v.0[1..].to_vec()).collect();
    RationalPolyhedron::from_v(r - 1, &points, &[], &[])
}

fn require_graded_presentation(ctx: &ValuationContext) -> Result<&GroebnerContext> {
    if ctx.mode() != Mode::Presentation {
        return Err(Error::pre("operation needs a presentation-mode context"));
    }
    if !ctx.ideal().generators().iter().all(|g| g.is_homogeneous()) {
        return Err(Error::pre("the ideal is not homogeneous"));
    }
    ctx.groebner()
        .ok_or_else(|| Error::pre("operation needs a presentation-mode context"))
}

fn check_window(n: usize, d: u32) -> Result<()> {
    // C(n + d − 1, d) monomials of degree d in n variables.
    let mut count: u128 = 1;
    for i in 1..=d as u128 {
        count = count * (n as u128 + i - 1) / i;
        if count > MAX_WINDOW_MONOMIALS as u128 {
            return Err(Error::CapExceeded {
                what: "degree window",
                limit: MAX_WINDOW_MONOMIALS,
            });
        }
    }
    Ok(())
}

/// H(i) = dim A_i for i = 0..=max_degree, by counting standard monomials.
pub fn hilbert_function(ctx: &ValuationContext, max_degree: u32) -> Result<Vec<usize>> {
    let gb = require_graded_presentation(ctx)?;
    check_window(ctx.ideal().nvars(), max_degree)?;
    Ok((0..=max_degree)
        .map(|d| gb.standard_monomials_of_degree(d).len())
        .collect())
}

/// Δ_{u,δ} = {r ≤ 0 : r ≥ δ} ∩ C together with the cone C, the value
/// semigroup and δ.
#[derive(Clone, Debug)]
pub struct CompactificationBody {
    pub delta: Vec<Rational>,
    pub cone: RationalPolyhedron,
    pub body: RationalPolyhedron,
    pub semigroup: ValueSemigroup,
}

impl CompactificationBody {
    /// {r ∈ C : Nδ ≤ r ≤ 0}, the region of the level-N piece of T_{u,δ}.
    pub fn level_region(&self, n: u32) -> Result<RationalPolyhedron> {
        clipped_cone(&self.cone, &self.delta, &rat(n as i64))
    }

    /// (N, r) ∈ T_{u,δ}: r ∈ S and r ≥ Nδ.
    pub fn in_t_semigroup(&self, n: u32, r: &Value) -> bool {
        r.len() == self.delta.len()
            && r.0
                .iter()
                .zip(&self.delta)
                .all(|(x, d)| *x >= d * rat(n as i64))
            && self.semigroup.contains(r)
    }
}

fn clipped_cone(
    cone: &RationalPolyhedron,
    delta: &[Rational],
    n: &Rational,
) -> Result<RationalPolyhedron> {
    let r = delta.len();
    let mut extra = Vec::new();
    for i in 0..r {
        let e = unit(r, i);
        extra.push(Inequality::new(
            e.iter().map(|x| -x).collect(),
            Rational::zero(),
        ));
        extra.push(Inequality::new(e, &delta[i] * n));
    }
    cone.intersect(&extra, &[])
}

fn checked_delta(cone: &RationalPolyhedron, delta: &[Rational]) -> Result<()> {
    if delta.len() != cone.dim() {
        return Err(Error::dim(cone.dim(), delta.len()));
    }
    if !cone.in_relative_interior(delta) {
        return Err(Error::pre(
            "δ is not in the relative interior of the Newton-Okounkov cone",
        ));
    }
    Ok(())
}

pub fn compactification_body(
    ctx: &ValuationContext,
    delta: &[Rational],
    caps: &Caps,
) -> Result<CompactificationBody> {
    let values = require_khovanskii(ctx, caps)?;
    let r = values.first().map(|v| v.len()).unwrap_or(0);
    let rays: Vec<Vec<Rational>> = values.iter().map(|v| v.0.clone()).collect();
    let cone = RationalPolyhedron::cone(r, &rays)?;
    checked_delta(&cone, delta)?;
    let body = clipped_cone(&cone, delta, &Rational::one())?;
    Ok(CompactificationBody {
        delta: delta.to_vec(),
        cone,
        body,
        semigroup: ValueSemigroup { generators: values },
    })
}

/// Δ̂_{u,δ} = {a ∈ ℝⁿ_{≥0} : (ιM) a ≥ δ}.
pub fn hat_polytope(
    ctx: &ValuationContext,
    delta: &[Rational],
    caps: &Caps,
) -> Result<RationalPolyhedron> {
    let values = require_khovanskii(ctx, caps)?;
    let n = values.len();
    let r = values.first().map(|v| v.len()).unwrap_or(0);
    let rays: Vec<Vec<Rational>> = values.iter().map(|v| v.0.clone()).collect();
    checked_delta(&RationalPolyhedron::cone(r, &rays)?, delta)?;
    let mut ineqs: Vec<Inequality> = (0..n)
        .map(|j| Inequality::new(unit(n, j), Rational::zero()))
        .collect();
    for i in 0..r {
        ineqs.push(Inequality::new(
            values.iter().map(|v| v.0[i].clone()).collect(),
            delta[i].clone(),
        ));
    }
    let p = RationalPolyhedron::from_h(n, &ineqs, &[])?;
    if !p.is_bounded() {
        return Err(Error::pre("Δ̂ is unbounded"));
    }
    Ok(p)
}

/// Graded dimensions of the Rees algebra pieces indexed by the rows in σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesTable {
    pub sigma: Vec<usize>,
    pub max_degree: u32,
    /// H(d) for d = 0..=max_degree.
    pub hilbert: Vec<usize>,
    /// For each degree, dim W_σ(r′) restricted to that degree, by r′.
    pub partitions: Vec<BTreeMap<Vec<Rational>, usize>>,
    pub entries: Vec<ReesEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesEntry {
    pub level: Vec<Rational>,
    /// dim W_σ(r′) within the degree window.
    pub w_dim: usize,
    /// dim F_σ(r′) within the degree window (componentwise ≥ r′).
    pub f_dim: usize,
}

impl ReesTable {
    /// Σ_{r′} dim W_σ(r′) in degree d equals H(d) for every degree.
    pub fn partition_identity(&self) -> bool {
        self.partitions
            .iter()
            .zip(&self.hilbert)
            .all(|(p, h)| p.values().sum::<usize>() == *h)
    }
}

/// Counts standard monomials (an adapted basis) of degree ≤ max_degree by
/// their values on the rows in σ.
pub fn rees_graded_dims(
    ctx: &ValuationContext,
    sigma: &[usize],
    levels: &[Vec<Rational>],
    max_degree: u32,
) -> Result<ReesTable> {
    let gb = require_graded_presentation(ctx)?;
    let m = ctx.matrix();
    if sigma.windows(2).any(|w| w[0] >= w[1]) || sigma.iter().any(|&i| i >= m.nrows()) {
        return Err(Error::pre(
            "σ must list distinct row indices in increasing order",
        ));
    }
    if let Some(l) = levels.iter().find(|l| l.len() != sigma.len()) {
        return Err(Error::dim(sigma.len(), l.len()));
    }
    check_window(ctx.ideal().nvars(), max_degree)?;
    let mut hilbert = Vec::new();
    let mut partitions = Vec::new();
    for d in 0..=max_degree {
        let std = gb.standard_monomials_of_degree(d);
        let mut part: BTreeMap<Vec<Rational>, usize> = BTreeMap::new();
        for e in &std {
            let w: RankVector = m.weight(e)?;
            *part
                .entry(sigma.iter().map(|&i| w.0[i].clone()).collect())
                .or_default() += 1;
        }
        hilbert.push(std.len());
        partitions.push(part);
    }
    let entries = levels
        .iter()
        .map(|level| {
            let mut w_dim = 0;
            let mut f_dim = 0;
            for part in &partitions {
                for (key, c) in part {
                    if key == level {
                        w_dim += c;
                    }
                    if key.iter().zip(level).all(|(a, b)| a >= b) {
                        f_dim += c;
                    }
                }
            }
            ReesEntry {
                level: level.clone(),
                w_dim,
                f_dim,
            }
        })
        .collect();
    Ok(ReesTable {
        sigma: sigma.to_vec(),
        max_degree,
        hilbert,
        partitions,
        entries,
    })
}
