use khova_core::fixtures;
use khova_core::groebner::ideal_equal;
use khova_core::initial::initial_ideal;
use khova_core::tropical::*;
use khova_core::*;
use proptest::prelude::*;

fn vars(names: &[&str]) -> Vars {
    Vars::new(names)
}

fn p(s: &str, v: &Vars) -> Polynomial {
    parse_polynomial(s, v).unwrap()
}

fn q(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x)).collect()
}

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn monomial_containment() {
    let v = vars(&["x", "y", "z"]);
    assert!(!contains_monomial(&Ideal::parse(&v, &["y^2*z - x^3"]).unwrap(), &caps()).unwrap());
    assert!(contains_monomial(&Ideal::parse(&v, &["x^2"]).unwrap(), &caps()).unwrap());
    // (x − y) + (x + y) = 2x.
    let i = Ideal::parse(&v, &["x - y", "x + y"]).unwrap();
    let ctx = GroebnerContext::new(&i, &MonomialOrder::DegRevLex, &caps()).unwrap();
    assert!(ctx.contains(&p("x", &v)).unwrap());
    assert!(contains_monomial(&i, &caps()).unwrap());
    assert!(!contains_monomial(&Ideal::zero(&v), &caps()).unwrap());
}

#[test]
fn elliptic_tropical_membership() {
    let i = fixtures::elliptic();
    assert!(in_tropical_variety(&q(&[-2, -3, 0]), &i, &caps()).unwrap());
    assert!(in_tropical_variety(&q(&[1, 1, 1]), &i, &caps()).unwrap());
    // Weights y²z:−5, x³:0, xz²:−10, z³:−15 leave the single term −2z³.
    assert!(!in_tropical_variety(&q(&[0, 0, -5]), &i, &caps()).unwrap());
    assert!(in_tropical_variety_rank_r(&fixtures::elliptic_matrix(), &i, &caps()).unwrap());
    assert!(
        !in_tropical_variety_rank_r(&WeightMatrix::from_ints(&[&[0, 0, -5]]), &i, &caps()).unwrap()
    );
    let z = Ideal::zero(i.vars());
    assert!(
        in_tropical_variety_rank_r(&WeightMatrix::from_ints(&[&[3, -1, 2]]), &z, &caps()).unwrap()
    );
}

#[test]
fn elliptic_prime_cone_report() {
    let i = fixtures::elliptic();
    let v = i.vars().clone();
    let lin = fixtures::elliptic_lineality();
    let r = verify_prime_cone(&[q(&[-2, -3, 0])], &lin, &i, 4, 11, &caps()).unwrap();
    let common = r.common_initial_ideal.clone().unwrap();
    let expected = Ideal::parse(&v, &["y^2*z - x^3"]).unwrap();
    assert!(ideal_equal(&common, &expected, &caps()).unwrap());
    assert!(r.monomial_free);
    assert!(r.binomial);
    assert_eq!(r.primality, Primality::Prime);
    assert!(r.in_groebner_region);
    assert!(r.notes.iter().any(|n| n == GEOMETRIC_NOTE));
    assert_eq!(r.sample_points.len(), 4);
    assert_eq!(r.sample_points[0], q(&[-2, -3, 0]));

    // The stacked ray matrix is tropical as well.
    let stacked = WeightMatrix::new(vec![q(&[-2, -3, 0])]).unwrap();
    assert!(in_tropical_variety_rank_r(&stacked, &i, &caps()).unwrap());
}

#[test]
fn elliptic_non_prime_rays_replay() {
    let i = fixtures::elliptic();
    let lin = fixtures::elliptic_lineality();
    for (ray, form) in [
        (q(&[1, 0, 0]), "y^2*z - 2*z^3"),
        (q(&[0, 1, 0]), "-x^3 + 7*x*z^2 - 2*z^3"),
    ] {
        let r = verify_prime_cone(&[ray], &lin, &i, 3, 5, &caps()).unwrap();
        let common = r.common_initial_ideal.clone().unwrap();
        let expected = Ideal::parse(i.vars(), &[form]).unwrap();
        assert!(ideal_equal(&common, &expected, &caps()).unwrap());
        assert!(r.monomial_free);
        assert_eq!(r.primality, Primality::NotPrime);
        let report = PrimalityReport {
            verdict: r.primality,
            certificate: r.certificate.clone().unwrap(),
        };
        assert!(report.replay(&common, &caps()).unwrap());
    }
}

#[test]
fn grassmannian_toric_initial_ideal() {
    let i = fixtures::grassmannian_24();
    let r = verify_prime_cone(
        &[fixtures::grassmannian_24_weight()],
        &[],
        &i,
        3,
        1,
        &caps(),
    )
    .unwrap();
    let common = r.common_initial_ideal.clone().unwrap();
    // Brute force: weights of p12p34, p13p24, p14p23 are 0, 0, 1.
    let expected = Ideal::parse(i.vars(), &["p12*p34 - p13*p24"]).unwrap();
    assert!(ideal_equal(&common, &expected, &caps()).unwrap());
    assert!(r.binomial);
    assert_eq!(r.primality, Primality::Prime);
    assert!(matches!(r.certificate, Some(Certificate::Toric { .. })));
}

#[test]
fn desk_primality_examples() {
    let v = vars(&["x", "y", "z"]);
    let cusp = Ideal::parse(&v, &["y^2*z - x^3"]).unwrap();
    // Degree one in z with coprime coefficients y² and x³: irreducible.
    let r = is_prime_desk(&cusp, &caps()).unwrap();
    assert_eq!(r.verdict, Primality::Prime);
    assert!(r.replay(&cusp, &caps()).unwrap());

    let sq = Ideal::parse(&v, &["x^2"]).unwrap();
    let r = is_prime_desk(&sq, &caps()).unwrap();
    assert_eq!(r.verdict, Primality::NotPrime);
    assert!(r.replay(&sq, &caps()).unwrap());

    let w = vars(&["p12", "p13", "p24", "p34"]);
    let toric = Ideal::parse(&w, &["p12*p34 - p13*p24"]).unwrap();
    let r = is_prime_desk(&toric, &caps()).unwrap();
    assert_eq!(r.verdict, Primality::Prime);
    match &r.certificate {
        Certificate::Toric { lattice } => {
            assert_eq!(lattice.len(), 1);
            assert!(linalg::lattice_is_saturated(lattice));
        }
        other => panic!("{other:?}"),
    }
    assert!(r.replay(&toric, &caps()).unwrap());

    // Non-saturated lattice: x² − y² = (x − y)(x + y).
    let split = Ideal::parse(&v, &["x^2 - y^2"]).unwrap();
    let r = is_prime_desk(&split, &caps()).unwrap();
    assert_eq!(r.verdict, Primality::NotPrime);
    assert!(r.replay(&split, &caps()).unwrap());

    // A monomial zero divisor in a non-principal ideal.
    let mixed = Ideal::parse(&v, &["x*y", "x*z - y^2"]).unwrap();
    let r = is_prime_desk(&mixed, &caps()).unwrap();
    assert_eq!(r.verdict, Primality::NotPrime);
    assert!(r.replay(&mixed, &caps()).unwrap());

    assert_eq!(
        is_prime_desk(&Ideal::unit(&v), &caps()).unwrap().verdict,
        Primality::NotPrime
    );
    assert_eq!(
        is_prime_desk(&Ideal::zero(&v), &caps()).unwrap().verdict,
        Primality::Prime
    );
    let lin = Ideal::parse(&v, &["x - y", "z + 1"]).unwrap();
    assert_eq!(
        is_prime_desk(&lin, &caps()).unwrap().verdict,
        Primality::Prime
    );

    // Irreducible over ℚ but x² + y² = (x + iy)(x − iy).
    let circle = Ideal::parse(&v, &["x^2 + y^2"]).unwrap();
    let r = is_prime_desk(&circle, &caps()).unwrap();
    assert_eq!(r.verdict, Primality::NotPrime);
    assert!(r.replay(&circle, &caps()).unwrap());

    // Smooth rational point (1, 0, 1) on x² + y² − z².
    let cone = Ideal::parse(&v, &["x^2 + y^2 - z^2"]).unwrap();
    let r = is_prime_desk(&cone, &caps()).unwrap();
    assert_eq!(r.verdict, Primality::Prime);
    assert!(matches!(
        r.certificate,
        Certificate::SmoothRationalPoint { .. }
    ));
    assert!(r.replay(&cone, &caps()).unwrap());
}

#[test]
fn forged_certificates_fail_replay() {
    let v = vars(&["x", "y", "z"]);
    let i = Ideal::parse(&v, &["y^2*z - x^3"]).unwrap();
    let forged = PrimalityReport {
        verdict: Primality::NotPrime,
        certificate: Certificate::ZeroDivisors {
            left: p("y", &v),
            right: p("y*z", &v),
        },
    };
    assert!(!forged.replay(&i, &caps()).unwrap());
    let wrong_kind = PrimalityReport {
        verdict: Primality::Prime,
        certificate: Certificate::UnitIdeal,
    };
    assert!(!wrong_kind.replay(&i, &caps()).unwrap());
}

/// max over representatives x + (x − y²)·h of the minimal M-weight.
fn best_representative_weight(m: &WeightMatrix) -> RankVector {
    let v = vars(&["x", "y"]);
    let f = p("x - y^2", &v);
    let x = p("x", &v);
    let mut best: Option<RankVector> = None;
    let monos = ["1", "x", "y", "x^2", "x*y", "y^2"];
    for a in -1i64..=1 {
        for mono in monos {
            let h = p(mono, &v).scale(&rat(a));
            let r = &x + &(&f * &h);
            if let Some(w) = r.monomials().map(|e| m.weight(e).unwrap()).min() {
                if best.as_ref().is_none_or(|b| w > *b) {
                    best = Some(w);
                }
            }
        }
    }
    best.unwrap()
}

#[test]
fn contraction_examples() {
    let v = vars(&["x", "y"]);
    let i = Ideal::parse(&v, &["x - y^2"]).unwrap();
    let m = WeightMatrix::from_ints(&[&[0, 1]]);
    let c = contraction(&m, &i, &caps()).unwrap();
    assert_eq!(c, WeightMatrix::from_ints(&[&[2, 1]]));
    assert_eq!(c.column(0), best_representative_weight(&m));
    assert_eq!(contraction(&c, &i, &caps()).unwrap(), c);

    let e = fixtures::elliptic();
    let m = fixtures::elliptic_matrix();
    assert_eq!(contraction(&m, &e, &caps()).unwrap(), m);

    let z = Ideal::zero(&v);
    let m = WeightMatrix::from_ints(&[&[3, -2], &[1, 5]]);
    assert_eq!(contraction(&m, &z, &caps()).unwrap(), m);
}

#[test]
fn trace_algebra_initial_forms_are_recorded() {
    let i = fixtures::trace_algebra();
    let rays = fixtures::trace_algebra_rays();
    let lin = fixtures::trace_algebra_lineality();
    let forms: Vec<String> = rays
        .iter()
        .map(|r| {
            initial_ideal(&i, &WeightMatrix::from_row(r.clone()), &caps())
                .unwrap()
                .generators()[0]
                .to_string()
        })
        .collect();
    // Under the minimum convention the first ray picks x1 + x2; the other two
    // rays give t1*t2, a monomial, so only the first cone is tropical.
    assert_eq!(forms, ["x1 + x2", "t1*t2", "t1*t2"]);
    let r = verify_prime_cone(&rays[..1], &lin, &i, 3, 2, &caps()).unwrap();
    assert!(r.monomial_free);
    assert_eq!(r.primality, Primality::Prime);
    for ray in &rays[1..] {
        let r = verify_prime_cone(std::slice::from_ref(ray), &lin, &i, 3, 2, &caps()).unwrap();
        assert!(!r.monomial_free);
        assert!(!in_tropical_variety(ray, &i, &caps()).unwrap());
    }
}

type GeneratorTerms = Vec<Vec<(Vec<u32>, i64)>>;

fn homogeneous_ideal() -> impl Strategy<Value = (usize, GeneratorTerms)> {
    (2usize..=3).prop_flat_map(|n| {
        let term = (prop::collection::vec(0u32..=2, n), -3i64..=3);
        (
            Just(n),
            prop::collection::vec(prop::collection::vec(term, 1..=3), 1..=2),
        )
    })
}

fn build_homogeneous(n: usize, gens: &[Vec<(Vec<u32>, i64)>]) -> Option<Ideal> {
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
    let v = Vars::new(&names);
    let mut polys = Vec::new();
    for g in gens {
        let d = g.iter().map(|(e, _)| e.iter().sum::<u32>()).max()?;
        let terms = g.iter().filter(|(e, _)| e.iter().sum::<u32>() == d);
        let f = Polynomial::from_terms(
            &v,
            terms.map(|(e, c)| (ExponentVector::new(e.clone()), rat(*c))),
        );
        if f.total_degree().unwrap_or(0) > 0 {
            polys.push(f);
        }
    }
    Ideal::new(&v, polys).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn contraction_is_idempotent(
        (n, gens) in homogeneous_ideal(),
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=2),
    ) {
        let Some(i) = build_homogeneous(n, &gens) else { return Ok(()) };
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r[..n].iter().map(|&x| rat(x)).collect()).collect();
        let m = WeightMatrix::new(rows).unwrap();
        match contraction(&m, &i, &caps()) {
            Ok(c) => prop_assert_eq!(contraction(&c, &i, &caps()).unwrap(), c),
            Err(Error::Precondition(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn tropical_matrices_are_fixed(
        (n, gens) in homogeneous_ideal(),
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=2),
    ) {
        let Some(i) = build_homogeneous(n, &gens) else { return Ok(()) };
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r[..n].iter().map(|&x| rat(x)).collect()).collect();
        let m = WeightMatrix::new(rows).unwrap();
        if in_tropical_variety_rank_r(&m, &i, &caps()).unwrap() {
            prop_assert_eq!(contraction(&m, &i, &caps()).unwrap(), m);
        }
    }
}
