//! Invariants and worked examples over the built-in catalog.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use algdet::algebra::{
    base_change, catalog, catalog_in, catalog_names, direct_product, tensor_product, AlgebraHom, HomKind,
};
use algdet::engine::{
    cayley_hamilton, char_data, compose, degree_of_algebraicity, determinant, discriminant, invert_element,
    minimal_polynomial, relative_determinant, trace, unimodular_equation,
};
use algdet::matrix::PolyMatrix;
use algdet::upoly::UPoly;
use algdet::{Algebra, AnyAlgebra, Error, Field, FpPoly, MPoly, PrimeField, QAlgebra, QPoly, Rationals};

fn q(name: &str) -> QAlgebra {
    match catalog(name).unwrap() {
        AnyAlgebra::Rational(a) => a,
        AnyAlgebra::Prime(_) => panic!("{name} is not over QQ"),
    }
}

fn v<F: Field>(a: &Algebra<F>, name: &str) -> MPoly<F> {
    MPoly::named(a.field(), a.vars(), name)
}

fn k<F: Field>(a: &Algebra<F>, c: i64) -> MPoly<F> {
    MPoly::from_i64(a.field(), a.vars(), c)
}

fn matrix<F: Field>(a: &Algebra<F>, rows: &[&[i64]]) -> PolyMatrix<F> {
    let n = rows.len();
    PolyMatrix::new(n, n, rows.iter().flat_map(|r| r.iter().map(|&c| k(a, c))).collect()).unwrap()
}

/// Inverts random elements with small integer coordinates and multiplies back.
fn check_inverses<F: Field>(a: &Algebra<F>, samples: usize, seed: u64) -> usize {
    let cd = char_data(a).unwrap();
    let fr = a.frame();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inverted = 0;
    for _ in 0..samples {
        let coords = (0..a.dim()).map(|_| k(a, rng.gen_range(-4..=4))).collect();
        let x = a.element(coords).unwrap();
        let det = compose(&cd.det, x.coords(), a.vars()).unwrap();
        match invert_element(a, &cd, &x) {
            Ok(inv) => {
                assert_eq!(inv.denominator, det);
                let unit_times = fr.scale(&fr.unit(), &inv.denominator);
                assert_eq!(fr.multiply(&x, &inv.numerator).unwrap(), unit_times, "{}", a.name());
                assert_eq!(fr.multiply(&inv.numerator, &x).unwrap(), unit_times, "{}", a.name());
                inverted += 1;
            }
            Err(Error::NotInvertible) => assert!(det.is_zero(), "{}: det {det}", a.name()),
            Err(e) => panic!("{}: {e}", a.name()),
        }
    }
    inverted
}

#[test]
fn inverses_round_trip_over_q_and_f5() {
    let f5 = PrimeField::new(5).unwrap();
    for name in ["quaternion", "matrix:2", "dim2", "dim3nc", "group:C3", "exterior:2", "split:3"] {
        let a = q(name);
        assert!(check_inverses(&a, 50, 1) > 0, "{name}");
        let b = a.reduce(&f5).unwrap();
        check_inverses(&b, 50, 2);
    }
}

#[test]
fn quaternion_inverse_with_unit_parameters() {
    let h = q("quaternion");
    let f = Rationals;
    let h = h.specialize(&[("al", f.from_i64(-1)), ("be", f.from_i64(-1))]).unwrap();
    let cd = char_data(&h).unwrap();
    let fr = h.frame();
    let x = fr.add(&fr.unit(), &fr.basis(1));
    let inv = invert_element(&h, &cd, &x).unwrap().to_element(fr).unwrap();
    let half = QPoly::constant(&f, h.vars(), f.inv(&f.from_i64(2)).unwrap());
    let expect = fr.scale(&fr.sub(&fr.unit(), &fr.basis(1)), &half);
    assert_eq!(inv, expect);
    // a^2 + b^2 + c^2 + d^2 - 1
    let sphere = ["a", "b", "c", "d"].iter().fold(k(&h, -1), |acc, n| &acc + &v(&h, n).pow(2));
    assert_eq!(unimodular_equation(&cd), sphere);
}

#[test]
fn cayley_hamilton_factorization_on_catalog() {
    for name in catalog_names() {
        let (ok, d, n, psi_deg) = match catalog(name).unwrap() {
            AnyAlgebra::Rational(a) => ch_parts(&a),
            AnyAlgebra::Prime(a) => ch_parts(&a),
        };
        assert!(ok, "{name}: CH != psi * P");
        assert_eq!(psi_deg, n - d, "{name}");
    }
}

fn ch_parts<F: Field>(a: &Algebra<F>) -> (bool, usize, usize, usize) {
    let cd = char_data(a).unwrap();
    let ch = cayley_hamilton(a, &cd).unwrap();
    let lr = a.frame().left_regular_matrix(&a.universal_element()).unwrap();
    let direct = lr.charpoly().unwrap();
    let ok = ch.ch == direct && ch.psi.mul(&cd.minpoly) == ch.ch;
    (ok, cd.degree, a.dim(), ch.psi.degree().unwrap())
}

#[test]
fn quaternion_regular_representation_squares_the_norm_form() {
    let h = q("quaternion");
    let cd = char_data(&h).unwrap();
    let ch = cayley_hamilton(&h, &cd).unwrap();
    assert_eq!(ch.ch, cd.minpoly.pow(2));
    assert_eq!(cd.minpoly.coeff(1).unwrap(), &-(&v(&h, "a") * &k(&h, 2)));
    let dim3 = q("dim3nc");
    let cd = char_data(&dim3).unwrap();
    assert_eq!(cayley_hamilton(&dim3, &cd).unwrap().psi.degree(), Some(1));
    let s2 = q("split:2");
    let cd = char_data(&s2).unwrap();
    let ch = cayley_hamilton(&s2, &cd).unwrap();
    assert_eq!(ch.ch, cd.minpoly);
    assert_eq!(ch.psi, UPoly::new(vec![k(&s2, 1)]));
}

#[test]
fn relative_determinant_of_projection_is_pulled_back_first_factor() {
    for (l, r) in [("quaternion", "split:2"), ("dim2", "group:C2"), ("dim3nc", "split:1"), ("matrix:2", "galois-quadratic")] {
        let (a, b) = (q(l), q(r));
        let p = direct_product(&a, &b).unwrap();
        let pa = &p.algebra;
        // f = projection onto the second factor
        let images: Vec<Vec<QPoly>> = (0..pa.dim())
            .map(|i| (0..b.dim()).map(|j| k(pa, (i >= a.dim() && i - a.dim() == j) as i64)).collect())
            .collect();
        let f = AlgebraHom::new(pa, &b, images, HomKind::Homomorphism).unwrap_or_else(|e| panic!("{l} x {r}: {e}"));
        let rel = relative_determinant(&f).unwrap();
        assert_eq!(rel, p.pull_left(&determinant(&a).unwrap()).unwrap(), "{l} x {r}");
    }
}

#[test]
fn identity_map_has_trivial_relative_determinant() {
    for name in ["quaternion", "matrix:2", "dim3comm"] {
        let a = q(name);
        let rel = relative_determinant(&AlgebraHom::identity(&a)).unwrap();
        assert!(rel.is_one(), "{name}: {rel}");
    }
}

#[test]
fn group_c2_is_split_after_idempotent_base_change() {
    let s2 = q("split:2");
    let c2 = q("group:C2");
    let bc = base_change(&s2, &matrix(&s2, &[&[1, 1], &[1, -1]])).unwrap();
    let table = |a: &QAlgebra| -> Vec<String> {
        a.frame().table().iter().flatten().map(|e| e.to_string()).collect()
    };
    assert_eq!(table(&bc.algebra), table(&c2));
    let renamed = bc.algebra.with_coordinates(&["r".into(), "s".into()]).unwrap();
    assert_eq!(determinant(&renamed).unwrap().to_string(), determinant(&c2).unwrap().to_string());
    assert_eq!(determinant(&c2).unwrap(), &v(&c2, "r").pow(2) - &v(&c2, "s").pow(2));
}

#[test]
fn split_swap_exchanges_idempotents() {
    let s2 = q("split:2");
    let bc = base_change(&s2, &matrix(&s2, &[&[0, 1], &[1, 0]])).unwrap();
    assert_eq!(bc.algebra.frame().table(), s2.frame().table());
}

#[test]
fn discriminant_scales_by_square_of_transition_determinant() {
    for name in ["quaternion", "dim2", "dim3nc", "group:C3", "matrix:2"] {
        let a = q(name);
        let n = a.dim();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { if i == n - 1 { 3 } else { 1 } } else { (j > i) as i64 * (i as i64 + 1) }).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = matrix(&a, &refs);
        let bc = base_change(&a, &m).unwrap();
        let d0 = discriminant(&a, &char_data(&a).unwrap()).unwrap();
        let d1 = discriminant(&bc.algebra, &char_data(&bc.algebra).unwrap()).unwrap();
        let scaled = &d0 * &k(&a, 9);
        assert_eq!(d1.rename_into(a.vars()).unwrap(), scaled, "{name}");
    }
}

#[test]
fn discriminant_examples() {
    let d2 = q("dim2");
    let disc = discriminant(&d2, &char_data(&d2).unwrap()).unwrap();
    assert_eq!(disc, &v(&d2, "a").pow(2) + &(&v(&d2, "b") * &k(&d2, 4)));
    let h = q("quaternion");
    let disc = discriminant(&h, &char_data(&h).unwrap()).unwrap();
    assert_eq!(disc, &(&v(&h, "al").pow(2) * &v(&h, "be").pow(2)) * &k(&h, -16));
}

#[test]
fn traces_and_split_determinants() {
    let m2 = q("matrix:2");
    assert_eq!(trace(&m2).unwrap(), &v(&m2, "t1") + &v(&m2, "t4"));
    for n in 1..=4 {
        let s = q(&format!("split:{n}"));
        let expect = (1..=n).fold(k(&s, 1), |acc, i| &acc * &v(&s, &format!("t{i}")));
        assert_eq!(determinant(&s).unwrap(), expect);
    }
    let e2 = q("exterior:2");
    assert_eq!(trace(&e2).unwrap(), &v(&e2, "t0") * &k(&e2, 2));
}

#[test]
fn cyclic_group_algebra_matches_circulant_determinant() {
    let c3 = q("group:C3");
    let c = c3.coord_names();
    let (r, s, t) = (v(&c3, &c[0]), v(&c3, &c[1]), v(&c3, &c[2]));
    // det [[r, t, s], [s, r, t], [t, s, r]]
    let expect = &(&(&r.pow(3) + &s.pow(3)) + &t.pow(3)) - &(&(&r * &s) * &(&t * &k(&c3, 3)));
    assert_eq!(determinant(&c3).unwrap(), expect);
}

#[test]
fn unimodular_equations() {
    let s2 = q("split:2");
    assert_eq!(unimodular_equation(&char_data(&s2).unwrap()), &(&v(&s2, "t1") * &v(&s2, "t2")) - &k(&s2, 1));
    let m2 = q("matrix:2");
    let sl2 = &(&(&v(&m2, "t1") * &v(&m2, "t4")) - &(&v(&m2, "t2") * &v(&m2, "t3"))) - &k(&m2, 1);
    assert_eq!(unimodular_equation(&char_data(&m2).unwrap()), sl2);
}

#[test]
fn tensor_products() {
    let m2 = q("matrix:2");
    let t = tensor_product(&m2, &m2).unwrap().algebra;
    assert_eq!(t.dim(), 16);
    assert!(t.validate().is_ok());
    assert_eq!(degree_of_algebraicity(&t).unwrap(), 4);
    let one = q("split:1");
    for name in ["quaternion", "dim3nc"] {
        let a = q(name);
        let t = tensor_product(&a, &one).unwrap().algebra;
        let table = |x: &QAlgebra| -> Vec<String> {
            x.frame().table().iter().flatten().map(|e| e.to_string()).collect()
        };
        assert_eq!(table(&t), table(&a), "{name}");
        assert!(tensor_product(&a, &q("group:C2")).unwrap().algebra.validate().is_ok());
    }
}

#[test]
fn opposite_is_an_involution() {
    for name in catalog_names() {
        match catalog(name).unwrap() {
            AnyAlgebra::Rational(a) => assert_eq!(a.opposite().opposite(), a),
            AnyAlgebra::Prime(a) => assert_eq!(a.opposite().opposite(), a),
        }
    }
    let h = q("quaternion");
    let op = h.opposite();
    let fr = op.frame();
    let ij = fr.multiply(&fr.basis(1), &fr.basis(2)).unwrap();
    assert_eq!(ij, fr.scale(&fr.basis(3), &k(&op, -1)));
    assert_eq!(q("dim3comm").opposite().frame(), q("dim3comm").frame());
}

#[test]
fn products_validate_and_add_dimensions() {
    let p = direct_product(&q("matrix:2"), &q("quaternion")).unwrap();
    assert!(p.algebra.validate().is_ok());
    assert_eq!(p.algebra.dim(), 8);
    let s = direct_product(&q("split:1"), &q("split:1")).unwrap().algebra;
    assert_eq!(determinant(&s).unwrap().num_terms(), 1);
    assert_eq!(degree_of_algebraicity(&s).unwrap(), 2);
}

#[test]
fn minimal_polynomial_of_dim2_element() {
    let a = q("dim2");
    let mp = minimal_polynomial(a.frame(), &a.universal_element()).unwrap();
    assert_eq!(mp.render("T"), "T^2 - (2*r + a*s)*T + (r^2 + a*r*s - b*s^2)");
}

#[test]
fn exterior_algebra_in_characteristic_two_drops_degree() {
    // In characteristic 2 the odd and even parts commute, so
    // (alpha - t0)^2 = 0 and the determinant is t0^2 for every r.
    let f2 = PrimeField::new(2).unwrap();
    let e3 = catalog_in(&f2, "exterior:3").unwrap();
    let fr = e3.frame();
    let alpha = e3.universal_element();
    let nil = fr.sub(&alpha, &fr.scale(&fr.unit(), &v(&e3, "t0")));
    assert!(fr.multiply(&nil, &nil).unwrap().is_zero());
    assert_eq!(degree_of_algebraicity(&e3).unwrap(), 2);
    assert_eq!(determinant(&e3).unwrap(), FpPoly::named(&f2, e3.vars(), "t0").pow(2));
    // over QQ and GF(3) the square does not vanish and the degree is 3
    assert_eq!(degree_of_algebraicity(&q("exterior:3")).unwrap(), 3);
    let f3 = PrimeField::new(3).unwrap();
    assert_eq!(degree_of_algebraicity(&catalog_in(&f3, "exterior:3").unwrap()).unwrap(), 3);
}

#[test]
fn boolean_algebra_elements_are_idempotent() {
    let f2 = PrimeField::new(2).unwrap();
    let b = catalog_in(&f2, "boolean2").unwrap();
    let fr = b.frame();
    let x = b.universal_element();
    let sq = fr.multiply(&x, &x).unwrap();
    // x^2 = x as functions on F_2-points: t_i^2 = t_i
    let fold = |e: &algdet::Element<PrimeField>| -> Vec<FpPoly> {
        e.coords()
            .iter()
            .map(|c| {
                let mut acc = FpPoly::zero(&f2, b.vars());
                for (m, coef) in c.terms() {
                    let exps: Vec<u32> = m.exponents(b.vars()).iter().map(|&e| e.min(1)).collect();
                    acc = &acc + &FpPoly::from_terms(&f2, b.vars(), [(exps, *coef)]);
                }
                acc
            })
            .collect()
    };
    assert_eq!(fold(&sq), fold(&x));
}

fn full_suite<F: Field>(a: &Algebra<F>) {
    use algdet::engine::{check_suite, CheckMode, Property};
    let exact = [
        Property::Annihilation,
        Property::Homogeneity,
        Property::Opposite,
        Property::BaseChange(None),
        Property::UnitDet,
    ];
    for p in &exact {
        let v = check_suite(a, p, CheckMode::Exact, 2).unwrap();
        assert!(v.pass, "{} {}: {v}", a.name(), p.name());
    }
    let mode = CheckMode::default_for(a.dim(), 20, 1);
    let v = check_suite(a, &Property::Mult, mode, 2).unwrap();
    assert!(v.pass, "{} mult: {v}", a.name());
    assert_eq!(v.log10_failure_bound.is_some(), a.dim() > 4, "{}", a.name());
}

fn degree_and_unit<F: Field>(a: &Algebra<F>) {
    assert!(a.validate().is_ok(), "{}", a.name());
    let cd = char_data(a).unwrap();
    assert_eq!(cd.degree, degree_of_algebraicity(a).unwrap(), "{}", a.name());
    assert!(cd.degree <= a.dim());
    let at_unit = compose(&cd.det, a.unit().coords(), a.vars()).unwrap();
    assert!(at_unit.is_one(), "{}: det(1) = {at_unit}", a.name());
    // P(alpha) = 0
    let fr = a.frame();
    assert!(fr.eval_upoly(&cd.minpoly, &a.universal_element()).unwrap().is_zero());
}

#[test]
fn identity_suite_on_every_catalog_algebra() {
    for name in catalog_names() {
        match catalog(name).unwrap() {
            AnyAlgebra::Rational(a) => full_suite(&a),
            AnyAlgebra::Prime(a) => full_suite(&a),
        }
    }
}

#[test]
fn degree_unit_and_annihilation_on_every_catalog_algebra() {
    for name in catalog_names() {
        match catalog(name).unwrap() {
            AnyAlgebra::Rational(a) => degree_and_unit(&a),
            AnyAlgebra::Prime(a) => degree_and_unit(&a),
        }
    }
}

fn engine_outputs<F: Field>(a: &Algebra<F>) -> Vec<String> {
    let cd = char_data(a).unwrap();
    vec![
        cd.degree.to_string(),
        cd.det.to_string(),
        cd.trace.to_string(),
        discriminant(a, &cd).unwrap().to_string(),
    ]
}

#[test]
fn serialization_preserves_engine_outputs() {
    use algdet::format::{parse_algebra, serialize_any};
    let outputs = |a: &AnyAlgebra| match a {
        AnyAlgebra::Rational(a) => engine_outputs(a),
        AnyAlgebra::Prime(a) => engine_outputs(a),
    };
    for name in catalog_names() {
        let a = catalog(name).unwrap();
        let b = parse_algebra(&serialize_any(&a)).unwrap();
        assert_eq!(outputs(&a), outputs(&b), "{name}");
    }
}

#[test]
fn construction_dimensions() {
    let names = ["split:1", "dim2", "quaternion", "group:C3"];
    for l in names {
        for r in names {
            let (a, b) = (q(l), q(r));
            assert_eq!(direct_product(&a, &b).unwrap().algebra.dim(), a.dim() + b.dim());
            let t = tensor_product(&a, &b).unwrap().algebra;
            assert_eq!(t.dim(), a.dim() * b.dim());
            assert!(t.validate().is_ok(), "{l} (x) {r}");
        }
    }
}
