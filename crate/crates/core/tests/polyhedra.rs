use std::collections::BTreeSet;

use khova_core::fixtures;
use khova_core::polyhedra::*;
use khova_core::valuation::*;
use khova_core::*;
use num_traits::Zero;
use proptest::prelude::*;

fn caps() -> Caps {
    Caps::default()
}

fn q(n: i64) -> Rational {
    rat(n)
}

fn qv(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}

fn elliptic_ctx() -> ValuationContext {
    ValuationContext::presentation(&fixtures::elliptic(), &fixtures::elliptic_matrix(), &caps())
        .unwrap()
}

fn grassmannian_ctx() -> ValuationContext {
    let mut second = vec![0i64; 6];
    second[2] = 1;
    let m = WeightMatrix::from_ints(&[&[-1; 6], &second]);
    ValuationContext::presentation(&fixtures::grassmannian_24(), &m, &caps()).unwrap()
}

fn line_ctx() -> ValuationContext {
    let v = Vars::new(&["x"]);
    ValuationContext::presentation(
        &Ideal::zero(&v),
        &WeightMatrix::from_ints(&[&[-1]]),
        &caps(),
    )
    .unwrap()
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Twice the area of the convex hull of integer points (monotone chain).
fn twice_hull_area(points: &[(i64, i64)]) -> i64 {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    let n = hull.len();
    (0..n)
        .map(|i| hull[i].0 * hull[(i + 1) % n].1 - hull[(i + 1) % n].0 * hull[i].1)
        .sum::<i64>()
        .abs()
}

#[test]
fn elliptic_newton_okounkov_cone() {
    let cone = newton_okounkov_cone(&elliptic_ctx(), &caps()).unwrap();
    assert_eq!(cone.vertices(), &[qv(&[0, 0])]);
    assert_eq!(cone.rays(), &[qv(&[-1, -3]), qv(&[-1, 0])]);
    assert!(cone.lines().is_empty());
    // cone{(−1,0),(−1,−3)} = {r₂ ≤ 0, r₂ ≥ 3r₁}.
    for a in -6..=6 {
        for b in -6..=6 {
            let expected = b <= 0 && b >= 3 * a;
            assert_eq!(cone.contains(&qv(&[a, b])), expected, "({a},{b})");
        }
    }
    assert!(cone.contains(&qv(&[-1, -2])));
}

#[test]
fn elliptic_newton_okounkov_body() {
    let body = newton_okounkov_body(&elliptic_ctx(), &caps()).unwrap();
    assert_eq!(body.vertices(), &[qv(&[-3]), qv(&[0])]);
    assert!(body.is_bounded());
    assert_eq!(normalized_volume(&body, 1).unwrap(), q(3));
    assert_eq!(lattice_volume(&body, 1).unwrap(), q(3));
}

#[test]
fn single_generator_gives_ray_and_point() {
    let ctx = line_ctx();
    let cone = newton_okounkov_cone(&ctx, &caps()).unwrap();
    assert_eq!(cone.rays(), &[qv(&[-1])]);
    let body = newton_okounkov_body(&ctx, &caps()).unwrap();
    assert_eq!(body.dim(), 0);
    assert_eq!(body.vertices().len(), 1);
    assert_eq!(normalized_volume(&body, 0).unwrap(), q(1));
}

#[test]
fn grassmannian_rank_two_cone_and_body() {
    let ctx = grassmannian_ctx();
    let values = ctx.generator_values().unwrap();
    let cols: Vec<(i64, i64)> = values
        .iter()
        .map(|v| {
            (
                v.0[0].to_integer().try_into().unwrap(),
                v.0[1].to_integer().try_into().unwrap(),
            )
        })
        .collect();
    // Every column has first coordinate −1, so the 2-d hull is spanned by the
    // columns with extreme second coordinate.
    assert!(cols.iter().all(|c| c.0 == -1));
    let cone = newton_okounkov_cone(&ctx, &caps()).unwrap();
    let (mn, mx) = (
        cols.iter().map(|c| c.1).min().unwrap(),
        cols.iter().map(|c| c.1).max().unwrap(),
    );
    let expected: BTreeSet<Vec<Rational>> = [qv(&[-1, mn]), qv(&[-1, mx])].into_iter().collect();
    let got: BTreeSet<Vec<Rational>> = cone.rays().iter().cloned().collect();
    assert_eq!(got, expected);
    let body = newton_okounkov_body(&ctx, &caps()).unwrap();
    assert_eq!(body.vertices(), &[qv(&[mn]), qv(&[mx])]);
    assert_eq!(normalized_volume(&body, 1).unwrap(), q(mx - mn));
}

#[test]
fn volume_normalization_anchors() {
    let simplex =
        RationalPolyhedron::from_v(2, &[qv(&[0, 0]), qv(&[1, 0]), qv(&[0, 1])], &[], &[]).unwrap();
    assert_eq!(normalized_volume(&simplex, 2).unwrap(), q(1));
    assert_eq!(lattice_volume(&simplex, 2).unwrap(), rat_frac(1, 2));
    let point = RationalPolyhedron::from_v(3, &[qv(&[1, 2, 3])], &[], &[]).unwrap();
    assert_eq!(normalized_volume(&point, 0).unwrap(), q(1));
    let cube: Vec<Vec<Rational>> = (0..8)
        .map(|m| qv(&[(m & 1) as i64, ((m >> 1) & 1) as i64, ((m >> 2) & 1) as i64]))
        .collect();
    let cube = RationalPolyhedron::from_v(3, &cube, &[], &[]).unwrap();
    assert_eq!(cube.inequalities().len(), 6);
    assert_eq!(normalized_volume(&cube, 3).unwrap(), q(6));
    // Segment from (0,0) to (2,4) has lattice length 2.
    let seg = RationalPolyhedron::from_v(2, &[qv(&[0, 0]), qv(&[2, 4])], &[], &[]).unwrap();
    assert_eq!(normalized_volume(&seg, 1).unwrap(), q(2));
    // A tilted lattice triangle in ℝ³ inside the plane x+y+z=1.
    let tri = RationalPolyhedron::from_v(
        3,
        &[qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])],
        &[],
        &[],
    )
    .unwrap();
    assert_eq!(tri.equations().len(), 1);
    assert_eq!(normalized_volume(&tri, 2).unwrap(), q(1));
    assert!(normalized_volume(&tri, 3).is_err());
    let ray = RationalPolyhedron::cone(1, &[qv(&[1])]).unwrap();
    assert!(matches!(
        normalized_volume(&ray, 1),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn dimension_cap() {
    let v = vec![Rational::zero(); 9];
    assert!(matches!(
        RationalPolyhedron::from_v(9, &[v], &[], &[]),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn lineality_and_empty_sets() {
    // Half-plane x ≥ 1 in ℝ².
    let hp = RationalPolyhedron::from_h(2, &[Inequality::new(qv(&[1, 0]), q(1))], &[]).unwrap();
    assert_eq!(hp.lines(), &[qv(&[0, 1])]);
    assert_eq!(hp.rays(), &[qv(&[1, 0])]);
    assert_eq!(hp.vertices(), &[qv(&[1, 0])]);
    assert_eq!(hp.round_trip_from_v().unwrap(), hp);
    let empty = RationalPolyhedron::from_h(
        1,
        &[
            Inequality::new(qv(&[1]), q(1)),
            Inequality::new(qv(&[-1]), q(0)),
        ],
        &[],
    )
    .unwrap();
    assert!(empty.is_empty());
    assert_eq!(empty.affine_dimension(), -1);
}

#[test]
fn elliptic_hilbert_function() {
    let h = hilbert_function(&elliptic_ctx(), 10).unwrap();
    // Plane cubic: C(i+2,2) − C(i−1,2).
    let oracle: Vec<usize> = (0..=10)
        .map(|i| (binom(i + 2, 2) - binom(i - 1, 2)) as usize)
        .collect();
    assert_eq!(h, oracle);
    assert_eq!(&h[..5], &[1, 3, 6, 9, 12]);
}

#[test]
fn zero_ideal_hilbert_function() {
    let v = Vars::new(&["x", "y"]);
    let ctx = ValuationContext::presentation(
        &Ideal::zero(&v),
        &WeightMatrix::from_ints(&[&[-1, -1]]),
        &caps(),
    )
    .unwrap();
    let h = hilbert_function(&ctx, 6).unwrap();
    assert_eq!(h, (0..=6).map(|i| i + 1).collect::<Vec<usize>>());
}

#[test]
fn grassmannian_hilbert_function() {
    let h = hilbert_function(&grassmannian_ctx(), 3).unwrap();
    // Principal quadric in 6 variables: C(d+5,5) − C(d+3,5).
    let oracle: Vec<usize> = (0..=3)
        .map(|d| (binom(d + 5, 5) - binom(d + 3, 5)) as usize)
        .collect();
    assert_eq!(h, oracle);
    assert_eq!((h[1], h[2]), (6, 20));
}

#[test]
fn hilbert_rejects_inhomogeneous_ideal() {
    let ctx = ValuationContext::presentation(
        &fixtures::parabola(),
        &WeightMatrix::from_ints(&[&[1, 2]]),
        &caps(),
    )
    .unwrap();
    assert!(matches!(
        hilbert_function(&ctx, 3),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn elliptic_hilbert_matches_semigroup_levels() {
    let ctx = elliptic_ctx();
    assert!(one_dim_leaves_check(&ctx, 8).unwrap());
    let s = value_semigroup(&ctx, &caps()).unwrap();
    let h = hilbert_function(&ctx, 8).unwrap();
    for i in 1..=8usize {
        assert_eq!(s.level(i).len(), h[i], "level {i}");
        assert_eq!(rat(h[i] as i64) / rat(i as i64), q(3));
    }
}

fn elliptic_delta() -> Vec<Rational> {
    qv(&[-1, -1])
}

#[test]
fn elliptic_compactification_body() {
    let cb = compactification_body(&elliptic_ctx(), &elliptic_delta(), &caps()).unwrap();
    let expected: BTreeSet<Vec<Rational>> = [
        qv(&[0, 0]),
        qv(&[-1, -1]),
        vec![rat_frac(-1, 3), rat(-1)],
        qv(&[-1, 0]),
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<Vec<Rational>> = cb.body.vertices().iter().cloned().collect();
    assert_eq!(got, expected);
    // Halfspace transcription on a grid of step 1/6.
    for a in -9..=3 {
        for b in -9..=3 {
            let (x, y) = (rat_frac(a, 6), rat_frac(b, 6));
            let expected = x <= Rational::zero()
                && y <= Rational::zero()
                && x >= rat(-1)
                && y >= rat(-1)
                && y >= &x * rat(3);
            assert_eq!(
                cb.body.contains(&[x.clone(), y.clone()]),
                expected,
                "({x},{y})"
            );
        }
    }
    assert!(cb.body.is_bounded());
    assert!(cb.body.has_vertex(&qv(&[0, 0])));
    assert_eq!(cb.body.round_trip_from_v().unwrap(), cb.body);
    assert_eq!(cb.body.round_trip_from_h().unwrap(), cb.body);
}

#[test]
fn delta_on_a_ray_is_rejected() {
    let ctx = elliptic_ctx();
    assert!(matches!(
        compactification_body(&ctx, &qv(&[-1, 0]), &caps()),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        hat_polytope(&ctx, &qv(&[-1, -3]), &caps()),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        compactification_body(&ctx, &qv(&[1, 1]), &caps()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn compactification_slices() {
    let ctx = elliptic_ctx();
    let cb = compactification_body(&ctx, &elliptic_delta(), &caps()).unwrap();
    // Level-1 slice = NO body clipped at δ₂ = −1.
    let slice = cb.body.slice(0, &rat(-1)).unwrap();
    let body = newton_okounkov_body(&ctx, &caps()).unwrap();
    let clipped = body
        .intersect(&[Inequality::new(qv(&[1]), rat(-1))], &[])
        .unwrap();
    assert_eq!(slice, clipped);
    assert_eq!(slice.vertices(), &[qv(&[-1]), qv(&[0])]);
    for n in 1..=4u32 {
        assert_eq!(
            cb.level_region(n).unwrap(),
            cb.body.scaled(&rat(n as i64)).unwrap(),
            "N = {n}"
        );
    }
}

#[test]
fn t_semigroup_membership() {
    let cb = compactification_body(&elliptic_ctx(), &elliptic_delta(), &caps()).unwrap();
    assert!(cb.in_t_semigroup(1, &RankVector::from_ints(&[-1, 0])));
    assert!(!cb.in_t_semigroup(1, &RankVector::from_ints(&[-1, -2])));
    assert!(cb.in_t_semigroup(2, &RankVector::from_ints(&[-2, -2])));
    assert!(cb.in_t_semigroup(0, &RankVector::from_ints(&[0, 0])));
    // (−1,−1) lies in the region but is not a value.
    assert!(!cb.in_t_semigroup(1, &RankVector::from_ints(&[-1, -1])));
}

#[test]
fn elliptic_hat_polytope() {
    let hat = hat_polytope(&elliptic_ctx(), &elliptic_delta(), &caps()).unwrap();
    assert!(hat.is_bounded());
    assert!(hat.has_vertex(&qv(&[0, 0, 0])));
    for a in 0..=6 {
        for b in 0..=6 {
            for c in 0..=6 {
                let x = [rat_frac(a, 6), rat_frac(b, 6), rat_frac(c, 6)];
                let expected = a + b + c <= 6 && 2 * a + 3 * b <= 6;
                assert_eq!(hat.contains(&x), expected, "{a} {b} {c}");
            }
        }
    }
    assert!(!hat.contains(&qv(&[-1, 0, 0])));
    assert_eq!(hat.round_trip_from_v().unwrap(), hat);
}

#[test]
fn one_variable_hat_polytope() {
    let hat = hat_polytope(&line_ctx(), &qv(&[-1]), &caps()).unwrap();
    assert_eq!(hat.vertices(), &[qv(&[0]), qv(&[1])]);
}

#[test]
fn elliptic_rees_dims() {
    let ctx = elliptic_ctx();
    let t = rees_graded_dims(&ctx, &[0, 1], &[qv(&[-1, -2]), qv(&[-2, -4])], 4).unwrap();
    assert_eq!(t.entries[0].w_dim, 1);
    // Among standard monomials only x² has value (−2,−4).
    assert_eq!(t.entries[1].w_dim, 1);
    assert!(t.partition_identity());
    let h = hilbert_function(&ctx, 4).unwrap();
    for sigma in [vec![], vec![0], vec![1], vec![0, 1]] {
        let t = rees_graded_dims(&ctx, &sigma, &[], 4).unwrap();
        assert_eq!(t.hilbert, h);
        for (d, part) in t.partitions.iter().enumerate() {
            assert_eq!(
                part.values().sum::<usize>(),
                h[d],
                "σ = {sigma:?}, degree {d}"
            );
        }
    }
    let empty = rees_graded_dims(&ctx, &[], &[vec![]], 4).unwrap();
    assert_eq!(empty.entries[0].w_dim, h.iter().sum::<usize>());
    let f = rees_graded_dims(&ctx, &[0], &[qv(&[-1])], 4).unwrap();
    assert_eq!(f.entries[0].f_dim, 4);
    assert_eq!(f.entries[0].w_dim, 3);
    assert!(rees_graded_dims(&ctx, &[1, 0], &[], 2).is_err());
}

fn small_points(d: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, d), 1..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn v_h_round_trip(points in small_points(3)) {
        let pts: Vec<Vec<Rational>> = points.iter().map(|p| qv(p)).collect();
        let p = RationalPolyhedron::from_v(3, &pts, &[], &[]).unwrap();
        prop_assert_eq!(p.round_trip_from_h().unwrap(), p.clone());
        prop_assert_eq!(p.round_trip_from_v().unwrap(), p.clone());
        for x in &pts {
            prop_assert!(p.contains(x));
        }
        for v in p.vertices() {
            prop_assert!(pts.contains(v));
        }
    }

    #[test]
    fn cone_round_trip(rays in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..6)) {
        let rs: Vec<Vec<Rational>> = rays.iter().map(|r| qv(r)).collect();
        let c = RationalPolyhedron::cone(3, &rs).unwrap();
        prop_assert_eq!(c.round_trip_from_h().unwrap(), c.clone());
        for r in &rs {
            prop_assert!(c.contains(r));
        }
        for ineq in c.inequalities() {
            prop_assert!(ineq.rhs.is_zero());
        }
    }

    #[test]
    fn planar_volume_matches_shoelace(points in prop::collection::vec((-4i64..=4, -4i64..=4), 3..9)) {
        let pts: Vec<Vec<Rational>> = points.iter().map(|&(a, b)| qv(&[a, b])).collect();
        let p = RationalPolyhedron::from_v(2, &pts, &[], &[]).unwrap();
        let area2 = twice_hull_area(&points);
        if p.affine_dimension() == 2 {
            prop_assert_eq!(normalized_volume(&p, 2).unwrap(), rat(area2));
        } else {
            prop_assert_eq!(area2, 0);
        }
    }

    #[test]
    fn box_cuts_have_tight_vertices(cuts in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), -4i64..=2), 0..5)) {
        let mut ineqs = Vec::new();
        for i in 0..3 {
            let mut e = vec![0i64; 3];
            e[i] = 1;
            ineqs.push(Inequality::new(qv(&e), rat(-2)));
            e[i] = -1;
            ineqs.push(Inequality::new(qv(&e), rat(-2)));
        }
        for (n, b) in &cuts {
            ineqs.push(Inequality::new(qv(n), rat(*b)));
        }
        let p = RationalPolyhedron::from_h(3, &ineqs, &[]).unwrap();
        prop_assert!(p.is_bounded());
        for v in p.vertices() {
            prop_assert!(ineqs.iter().all(|c| c.holds(v)));
            let tight: Vec<Vec<Rational>> = ineqs.iter().filter(|c| c.is_tight(v)).map(|c| c.normal.clone()).collect();
            prop_assert_eq!(khova_core::linalg::rank(&tight), 3);
        }
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let x = qv(&[a, b, c]);
                    prop_assert_eq!(p.contains(&x), ineqs.iter().all(|i| i.holds(&x)));
                }
            }
        }
    }
}
