use std::cmp::Ordering;

use khova_core::algebra::parse_rational;
use khova_core::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn xyz() -> Vars {
    Vars::new(&["x", "y", "z"])
}

fn p(s: &str, v: &Vars) -> Polynomial {
    parse_polynomial(s, v).unwrap()
}

fn e(xs: &[u32]) -> ExponentVector {
    ExponentVector::new(xs.to_vec())
}

fn elliptic_m() -> WeightMatrix {
    WeightMatrix::from_ints(&[&[-1, -1, -1], &[-2, -3, 0]])
}

#[test]
fn parse_examples() {
    let v = xyz();
    let f = p("y^2*z - x^3 + 7*x*z^2 - 2*z^3", &v);
    assert_eq!(f.num_terms(), 4);
    assert_eq!(f.coefficient(&e(&[1, 0, 2])), rat(7));
    assert_eq!(f.coefficient(&e(&[3, 0, 0])), rat(-1));
    assert!(p("0", &v).is_zero());
    assert!(p("x - (x)", &Vars::new(&["x"])).is_zero());
    assert_eq!(
        p("1/2*x - 3/4", &v).coefficient(&e(&[0, 0, 0])),
        rat_frac(-3, 4)
    );
    assert_eq!(p(" x *y ^ 2 ", &v), p("x*y^2", &v));
}

#[test]
fn parse_errors_carry_positions() {
    let v = xyz();
    assert!(matches!(
        parse_polynomial("x + w", &v),
        Err(Error::Parse { pos: 4, .. })
    ));
    assert!(matches!(
        parse_polynomial("x^-2", &v),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        parse_polynomial("x + * y", &v),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        parse_polynomial("1/0*x", &v),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn rationals_are_reduced() {
    let r = parse_rational("-6/4").unwrap();
    assert_eq!(r, rat_frac(-3, 2));
    assert_eq!(*r.denom(), BigInt::from(2));
    assert_eq!(rat_frac(4, -8), rat_frac(-1, 2));
}

#[test]
fn arithmetic_examples() {
    let v = Vars::new(&["x", "y"]);
    let prod = poly_arith(&p("x + y", &v), &p("x - y", &v), ArithOp::Mul).unwrap();
    assert_eq!(prod, p("x^2 - y^2", &v));
    let f = p("3*x^2 - 1/2*y", &v);
    assert_eq!(
        poly_arith(&f, &Polynomial::one(&v), ArithOp::Mul).unwrap(),
        f
    );
    assert!(poly_arith(&f, &f, ArithOp::Sub).unwrap().is_zero());
    let other = Polynomial::one(&Vars::new(&["a", "b"]));
    assert_eq!(
        poly_arith(&f, &other, ArithOp::Add),
        Err(Error::VariableMismatch)
    );
}

#[test]
fn square_of_binomial_matches_expansion() {
    let v = xyz();
    let g = p("y^2*z - x^3", &v);
    let sq = poly_arith(&g, &g, ArithOp::Mul).unwrap();
    // Term-by-term: (a − b)² with a = y²z, b = x³.
    let terms = [
        (e(&[0, 4, 2]), rat(1)),
        (e(&[3, 2, 1]), rat(-2)),
        (e(&[6, 0, 0]), rat(1)),
    ];
    assert_eq!(sq, Polynomial::from_terms(&v, terms));
    assert_eq!(sq, p("y^4*z^2 - 2*x^3*y^2*z + x^6", &v));
}

#[test]
fn weight_examples() {
    let m = elliptic_m();
    assert_eq!(
        weight_of_monomial(&m, &e(&[0, 2, 1])).unwrap(),
        RankVector::from_ints(&[-3, -6])
    );
    assert_eq!(
        weight_of_monomial(&m, &e(&[1, 0, 2])).unwrap(),
        RankVector::from_ints(&[-3, -2])
    );
    assert_eq!(
        weight_of_monomial(&m, &e(&[0, 0, 0])).unwrap(),
        RankVector::zero(2)
    );
    assert!(matches!(
        weight_of_monomial(&m, &e(&[1, 1])),
        Err(Error::Dimension { .. })
    ));
}

#[test]
fn comparison_examples() {
    assert_eq!(
        compare(&MonomialOrder::Lex, &e(&[1, 0]), &e(&[0, 1])).unwrap(),
        Ordering::Greater
    );
    assert_eq!(
        compare(&MonomialOrder::DegRevLex, &e(&[2, 0]), &e(&[1, 1])).unwrap(),
        Ordering::Greater
    );
    let m = WeightMatrix::from_ints(&[&[-2, -3, 0]]);
    let (y2z, x3) = (e(&[0, 2, 1]), e(&[3, 0, 0]));
    assert_eq!(weight_compare(&m, &y2z, &x3).unwrap(), Ordering::Equal);
    let composite = MonomialOrder::composite(m, MonomialOrder::Lex).unwrap();
    assert_eq!(compare(&composite, &y2z, &x3).unwrap(), Ordering::Less);
    assert!(matches!(
        compare(&MonomialOrder::Lex, &e(&[1]), &e(&[1, 0])),
        Err(Error::Dimension { .. })
    ));
}

/// Degree first, then the smaller last differing exponent is larger.
fn textbook_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[test]
fn degrevlex_matches_textbook_table() {
    for n in [2usize, 3] {
        let mut monos = Vec::new();
        for d in 0..=3u32 {
            monos.extend(khova_core::groebner::monomials_of_degree(n, d));
        }
        for a in &monos {
            for b in &monos {
                assert_eq!(
                    compare(&MonomialOrder::DegRevLex, a, b).unwrap(),
                    textbook_degrevlex(a.entries(), b.entries()),
                    "{a:?} vs {b:?}"
                );
            }
        }
    }
}

#[test]
fn exponent_overflow_fails_loudly() {
    // Exponents are capped at 2^31 - 1.
    let big = e(&[i32::MAX as u32, 0]);
    assert_eq!(big.checked_add(&e(&[1, 0])), Err(Error::Overflow));
    assert_eq!(
        big.checked_add(&e(&[0, 1])).unwrap(),
        e(&[i32::MAX as u32, 1])
    );
}

fn exps(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..6, n)
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..=3)
}

fn to_matrix(rows: &[Vec<i64>]) -> WeightMatrix {
    WeightMatrix::new(
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect(),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn fraction_sum_identity(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let lhs = (rat_frac(a, b) + rat_frac(c, d)) * rat(b * d);
        prop_assert_eq!(lhs, rat(a * d + c * b));
    }

    #[test]
    fn weights_are_additive(rows in matrix(3), a in exps(3), b in exps(3)) {
        let m = to_matrix(&rows);
        let (a, b) = (ExponentVector::new(a), ExponentVector::new(b));
        let sum = weight_of_monomial(&m, &a.checked_add(&b).unwrap()).unwrap();
        prop_assert_eq!(sum, weight_of_monomial(&m, &a).unwrap().add(&weight_of_monomial(&m, &b).unwrap()));
    }

    #[test]
    fn composite_is_a_monomial_order(rows in matrix(3), a in exps(3), b in exps(3), c in exps(3)) {
        let order = MonomialOrder::composite(to_matrix(&rows), MonomialOrder::DegRevLex).unwrap();
        let (a, b, c) = (ExponentVector::new(a), ExponentVector::new(b), ExponentVector::new(c));
        let ab = compare(&order, &a, &b).unwrap();
        prop_assert_eq!(ab, compare(&order, &b, &a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        let bc = compare(&order, &b, &c).unwrap();
        if ab == bc && ab != Ordering::Equal {
            prop_assert_eq!(compare(&order, &a, &c).unwrap(), ab);
        }
        let shifted = compare(&order, &a.checked_add(&c).unwrap(), &b.checked_add(&c).unwrap()).unwrap();
        prop_assert_eq!(shifted, ab);
    }

    #[test]
    fn positive_row_scaling_keeps_weight_comparison(
        rows in matrix(3), a in exps(3), b in exps(3), row in 0usize..3, num in 1i64..7, den in 1i64..7,
    ) {
        let m = to_matrix(&rows);
        let row = row % m.nrows();
        let (a, b) = (ExponentVector::new(a), ExponentVector::new(b));
        let scaled = m.scale_row(row, &rat_frac(num, den));
        prop_assert_eq!(weight_compare(&scaled, &a, &b).unwrap(), weight_compare(&m, &a, &b).unwrap());
    }

    #[test]
    fn format_parse_round_trip(terms in prop::collection::vec((exps(3), -9i64..=9, 1i64..5), 0..6)) {
        let v = xyz();
        let f = Polynomial::from_terms(&v, terms.iter().map(|(x, n, d)| (ExponentVector::new(x.clone()), rat_frac(*n, *d))));
        let text = f.to_string();
        let g = parse_polynomial(&text, &v).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(g.to_string(), text);
        prop_assert!(f.terms().all(|(_, c)| *c != rat(0)));
    }
}
