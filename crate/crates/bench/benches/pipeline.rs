use criterion::{black_box, criterion_group, criterion_main, Criterion};
use khova_core::fixtures;
use khova_core::initial::{initial_ideal, iterated_initial_ideal};
use khova_core::polyhedra::{
    hilbert_function, newton_okounkov_body, normalized_volume, RationalPolyhedron,
};
use khova_core::tropical::verify_prime_cone;
use khova_core::valuation::{khovanskii_test, subduction, ValuationContext};
use khova_core::{parse_polynomial, rat, Caps, GroebnerContext, Ideal, MonomialOrder, Vars};

fn groebner(c: &mut Criterion) {
    let caps = Caps::default();
    let v = Vars::new(&["x", "y", "z", "w"]);
    let cubic = Ideal::parse(&v, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]).unwrap();
    c.bench_function("buchberger/twisted_cubic_lex", |b| {
        b.iter(|| GroebnerContext::new(black_box(&cubic), &MonomialOrder::Lex, &caps).unwrap())
    });
    let gr = fixtures::grassmannian_24();
    c.bench_function("buchberger/grassmannian_degrevlex", |b| {
        b.iter(|| GroebnerContext::new(black_box(&gr), &MonomialOrder::DegRevLex, &caps).unwrap())
    });
}

fn initial(c: &mut Criterion) {
    let caps = Caps::default();
    let ideal = fixtures::elliptic();
    let m = fixtures::elliptic_matrix();
    c.bench_function("initial/elliptic_rank2", |b| {
        b.iter(|| initial_ideal(black_box(&ideal), &m, &caps).unwrap())
    });
    c.bench_function("initial/elliptic_iterated", |b| {
        b.iter(|| iterated_initial_ideal(black_box(&ideal), m.rows(), &caps).unwrap())
    });
    let rays = vec![vec![rat(-2), rat(-3), rat(0)]];
    let lin = fixtures::elliptic_lineality();
    c.bench_function("tropical/verify_prime_cone", |b| {
        b.iter(|| verify_prime_cone(&rays, &lin, black_box(&ideal), 3, 7, &caps).unwrap())
    });
}

fn valuation(c: &mut Criterion) {
    let caps = Caps::default();
    let ctx =
        ValuationContext::presentation(&fixtures::elliptic(), &fixtures::elliptic_matrix(), &caps)
            .unwrap();
    c.bench_function("valuation/khovanskii_elliptic", |b| {
        b.iter(|| khovanskii_test(black_box(&ctx), &caps).unwrap())
    });
    let gens = fixtures::elementary_symmetric(3);
    let sym = ValuationContext::sagbi(&gens, &MonomialOrder::Lex).unwrap();
    let f = parse_polynomial(
        "x1^3*x2 + x1*x2^3 + x1^3*x3 + x1*x3^3 + x2^3*x3 + x2*x3^3",
        gens[0].vars(),
    )
    .unwrap();
    c.bench_function("valuation/subduction_symmetric", |b| {
        b.iter(|| subduction(black_box(&f), &sym, 1000).unwrap())
    });
}

fn polyhedra(c: &mut Criterion) {
    let caps = Caps::default();
    let ctx =
        ValuationContext::presentation(&fixtures::elliptic(), &fixtures::elliptic_matrix(), &caps)
            .unwrap();
    c.bench_function("polyhedra/no_body_volume", |b| {
        b.iter(|| {
            let body = newton_okounkov_body(black_box(&ctx), &caps).unwrap();
            normalized_volume(&body, 1).unwrap()
        })
    });
    c.bench_function("polyhedra/hilbert_elliptic_12", |b| {
        b.iter(|| hilbert_function(black_box(&ctx), 12).unwrap())
    });
    let cube: Vec<Vec<_>> = (0..16)
        .map(|m: i64| (0..4).map(|i| rat((m >> i) & 1)).collect())
        .collect();
    c.bench_function("polyhedra/tesseract_round_trip", |b| {
        b.iter(|| {
            let p = RationalPolyhedron::from_v(4, black_box(&cube), &[], &[]).unwrap();
            normalized_volume(&p, 4).unwrap()
        })
    });
}

criterion_group!(benches, groebner, initial, valuation, polyhedra);
criterion_main!(benches);
