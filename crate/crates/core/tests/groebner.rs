use khova_core::groebner::{dehomogenize, homogenize, ideal_equal, saturate};
use khova_core::*;
use num_traits::Zero;

fn vars(names: &[&str]) -> Vars {
    Vars::new(names)
}

fn p(s: &str, v: &Vars) -> Polynomial {
    parse_polynomial(s, v).unwrap()
}

#[test]
fn principal_cubic_is_its_own_basis() {
    let v = vars(&["x", "y", "z"]);
    let i = Ideal::parse(&v, &["y^2*z - x^3 + 7*x*z^2 - 2*z^3"]).unwrap();
    let g = GroebnerContext::new(&i, &MonomialOrder::DegRevLex, &Caps::default()).unwrap();
    assert_eq!(g.basis().len(), 1);
    let f = &i.generators()[0];
    assert_eq!(g.basis()[0], f.monic(&MonomialOrder::DegRevLex));
}

#[test]
fn lex_elimination_gives_quartic_in_y() {
    let v = vars(&["x", "y"]);
    let i = Ideal::parse(&v, &["x^2 - y", "y^2 - x"]).unwrap();
    let g = GroebnerContext::new(&i, &MonomialOrder::Lex, &Caps::default()).unwrap();
    let target = p("y^4 - y", &v);
    assert!(g.basis().contains(&target));
    // Rational roots 0 and 1 of the eliminant.
    for r in [0i64, 1] {
        let val = target.specialize(1, &rat(r));
        assert!(val.is_zero());
    }
}

#[test]
fn plucker_relation_is_principal() {
    let v = vars(&["p12", "p13", "p14", "p23", "p24", "p34"]);
    let i = Ideal::parse(&v, &["p12*p34 - p13*p24 + p14*p23"]).unwrap();
    let g = GroebnerContext::new(&i, &MonomialOrder::DegRevLex, &Caps::default()).unwrap();
    assert_eq!(g.basis().len(), 1);
}

#[test]
fn composite_normal_form_of_x_cubed() {
    let v = vars(&["x", "y", "z"]);
    let i = Ideal::parse(&v, &["y^2*z - x^3 + 7*x*z^2 - 2*z^3"]).unwrap();
    let m = WeightMatrix::from_ints(&[&[-1, -1, -1], &[-2, -3, 0]]);
    let order = MonomialOrder::composite(m, MonomialOrder::Lex).unwrap();
    let g = GroebnerContext::new(&i, &order, &Caps::default()).unwrap();
    assert_eq!(
        g.leading_monomials(),
        vec![ExponentVector::new(vec![3, 0, 0])]
    );
    // x³ ≡ y²z + 7xz² − 2z³ modulo the cubic.
    let nf = g.normal_form(&p("x^3", &v)).unwrap();
    assert_eq!(nf, p("y^2*z + 7*x*z^2 - 2*z^3", &v));
}

#[test]
fn standard_monomial_counts_of_cubic() {
    let v = vars(&["x", "y", "z"]);
    let i = Ideal::parse(&v, &["y^2*z - x^3 + 7*x*z^2 - 2*z^3"]).unwrap();
    let m = WeightMatrix::from_ints(&[&[-1, -1, -1], &[-2, -3, 0]]);
    let order = MonomialOrder::composite(m, MonomialOrder::Lex).unwrap();
    let g = GroebnerContext::new(&i, &order, &Caps::default()).unwrap();
    assert_eq!(g.standard_monomials_of_degree(1).len(), 3);
    assert_eq!(g.standard_monomials_of_degree(2).len(), 6);
    let z = GroebnerContext::new(&Ideal::zero(&v), &order, &Caps::default()).unwrap();
    assert_eq!(z.standard_monomials(2).len(), 10);
}

#[test]
fn saturation_examples() {
    let caps = Caps::default();
    let v = vars(&["x", "y"]);
    let s = saturate(&Ideal::parse(&v, &["x*y"]).unwrap(), &p("y", &v), &caps).unwrap();
    assert!(ideal_equal(&s, &Ideal::parse(&v, &["x"]).unwrap(), &caps).unwrap());
    let s = saturate(&Ideal::parse(&v, &["x^2"]).unwrap(), &p("x", &v), &caps).unwrap();
    assert!(ideal_equal(&s, &Ideal::unit(&v), &caps).unwrap());
    let w = vars(&["x", "y", "z"]);
    let i = Ideal::parse(&w, &["y^2*z - x^3"]).unwrap();
    let s = saturate(&i, &p("x*y*z", &w), &caps).unwrap();
    assert!(ideal_equal(&s, &i, &caps).unwrap());
}

#[test]
fn homogenization_examples() {
    let caps = Caps::default();
    let v = vars(&["x", "y"]);
    let h = homogenize(&Ideal::parse(&v, &["x^2 - y"]).unwrap(), &caps).unwrap();
    let hv = h.vars().clone();
    assert_eq!(hv.names()[0], "x0");
    assert!(ideal_equal(&h, &Ideal::parse(&hv, &["x^2 - y*x0"]).unwrap(), &caps).unwrap());
    let back = dehomogenize(&h, 0).unwrap();
    assert!(ideal_equal(&back, &Ideal::parse(&v, &["x^2 - y"]).unwrap(), &caps).unwrap());
    let u = vars(&["x"]);
    let h = homogenize(&Ideal::parse(&u, &["x - 1"]).unwrap(), &caps).unwrap();
    assert!(ideal_equal(&h, &Ideal::parse(h.vars(), &["x - x0"]).unwrap(), &caps).unwrap());
}

#[test]
fn ideal_equality_examples() {
    let caps = Caps::default();
    let v = vars(&["x", "y"]);
    let a = Ideal::parse(&v, &["x", "y"]).unwrap();
    let b = Ideal::parse(&v, &["y", "x + y"]).unwrap();
    assert!(ideal_equal(&a, &b, &caps).unwrap());
    let c = Ideal::parse(&v, &["x^2"]).unwrap();
    let d = Ideal::parse(&v, &["x"]).unwrap();
    assert!(!ideal_equal(&c, &d, &caps).unwrap());
}

#[test]
fn non_well_ordered_composite_needs_grading() {
    let v = vars(&["x", "y"]);
    let m = WeightMatrix::from_ints(&[&[1, 3]]);
    let order = MonomialOrder::composite(m, MonomialOrder::DegRevLex).unwrap();
    let ok = Ideal::parse(&v, &["x^2 - y"]).unwrap();
    let g = GroebnerContext::new(&ok, &order, &Caps::default()).unwrap();
    assert_eq!(g.leading_monomials(), vec![ExponentVector::new(vec![2, 0])]);
    let bad = Ideal::parse(&v, &["x^2 - y - 1"]).unwrap();
    assert!(matches!(
        GroebnerContext::new(&bad, &order, &Caps::default()),
        Err(Error::Precondition(_))
    ));
    let _ = Rational::zero();
}

mod properties {
    use khova_core::*;
    use proptest::prelude::*;

    type Terms = Vec<(Vec<u32>, i64)>;

    fn generators() -> impl Strategy<Value = Vec<Terms>> {
        let term = (prop::collection::vec(0u32..=3, 3), -3i64..=3);
        prop::collection::vec(prop::collection::vec(term, 1..=3), 1..=3)
    }

    fn element() -> impl Strategy<Value = Terms> {
        prop::collection::vec((prop::collection::vec(0u32..=4, 3), -5i64..=5), 0..=5)
    }

    fn vars() -> Vars {
        Vars::new(&["x", "y", "z"])
    }

    fn poly(v: &Vars, terms: &Terms) -> Polynomial {
        Polynomial::from_terms(
            v,
            terms
                .iter()
                .map(|(e, c)| (ExponentVector::new(e.clone()), rat(*c))),
        )
    }

    fn ideal(gens: &[Terms]) -> Ideal {
        let v = vars();
        let polys = gens
            .iter()
            .map(|g| {
                let kept: Terms = g
                    .iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= 3)
                    .cloned()
                    .collect();
                poly(&v, &kept)
            })
            .collect();
        Ideal::new(&v, polys).unwrap()
    }

    fn context(i: &Ideal, lex: bool) -> Option<GroebnerContext> {
        let order = if lex {
            MonomialOrder::Lex
        } else {
            MonomialOrder::DegRevLex
        };
        match GroebnerContext::new(i, &order, &Caps::default()) {
            Ok(g) => Some(g),
            Err(Error::CapExceeded { .. }) => None,
            Err(e) => panic!("{e}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn s_polynomials_reduce_to_zero(gens in generators(), lex in any::<bool>()) {
            let i = ideal(&gens);
            let Some(g) = context(&i, lex) else { return Ok(()) };
            let order = g.effective_order().clone();
            let basis = g.basis();
            for (a, f) in basis.iter().enumerate() {
                for h in &basis[a + 1..] {
                    let (ef, cf) = f.leading_term(&order).unwrap();
                    let (eh, ch) = h.leading_term(&order).unwrap();
                    let l = ef.lcm(&eh);
                    let s = &f.mul_term(&ef.quotient(&l).unwrap(), &(rat(1) / cf)) - &h.mul_term(&eh.quotient(&l).unwrap(), &(rat(1) / ch));
                    prop_assert!(g.normal_form(&s).unwrap().is_zero());
                }
            }
            for f in i.generators() {
                prop_assert!(g.contains(f).unwrap());
            }
        }

        #[test]
        fn normal_form_is_idempotent_and_linear(gens in generators(), a in element(), b in element(), lex in any::<bool>()) {
            let i = ideal(&gens);
            let Some(g) = context(&i, lex) else { return Ok(()) };
            let v = vars();
            let (a, b) = (poly(&v, &a), poly(&v, &b));
            let na = g.normal_form(&a).unwrap();
            prop_assert_eq!(g.normal_form(&na).unwrap(), na.clone());
            prop_assert!(na.monomials().all(|e| g.is_standard(e)));
            prop_assert!(g.contains(&(&a - &na)).unwrap());
            let nb = g.normal_form(&b).unwrap();
            prop_assert_eq!(g.normal_form(&(&a + &b)).unwrap(), &na + &nb);
        }

        #[test]
        fn basis_ignores_generator_order(gens in generators(), lex in any::<bool>()) {
            let i = ideal(&gens);
            let mut reversed = i.generators().to_vec();
            reversed.reverse();
            let j = Ideal::new(i.vars(), reversed).unwrap();
            let (Some(g), Some(h)) = (context(&i, lex), context(&j, lex)) else { return Ok(()) };
            prop_assert_eq!(g.basis(), h.basis());
        }
    }
}
