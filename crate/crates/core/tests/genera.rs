use rigidity_core::algebra::{binomial, int, rat, CycNumber, Field, LaurentPoly, NilPoly, Rational, Ring, YFunction};
use rigidity_core::genera::{
    chern_character, cusp_values, dirac_cusp_series, index, level_n_loop, level_y, loop_signature, twisted_index,
    twisted_series, BundleExpr, GenusKind, Scalar, YParam,
};
use rigidity_core::spaces::SpaceModel;
use rigidity_core::Error;

fn cp(n: u32) -> SpaceModel {
    SpaceModel::cp(n).unwrap()
}

fn k3() -> SpaceModel {
    SpaceModel::hypersurface(2, 4).unwrap()
}

fn q(s: Scalar) -> Rational {
    s.as_rational().expect("rational")
}

fn poly(m: &SpaceModel, cs: &[Rational]) -> NilPoly<Rational> {
    let x = m.class::<Rational>(&[1]);
    let mut acc = NilPoly::zero(m.ring());
    for c in cs.iter().rev() {
        acc = acc.mul(&x).add(&NilPoly::scalar(m.ring(), c.clone()));
    }
    acc
}

#[test]
fn chern_character_of_tangent_bundles() {
    let m = cp(2);
    let ch = chern_character(&m, &BundleExpr::Tangent, 0).unwrap();
    assert_eq!(ch[0], poly(&m, &[int(2), int(3), rat(3, 2)]));
    let ch = chern_character(&m, &BundleExpr::TangentComplexified, 0).unwrap();
    assert_eq!(ch[0], poly(&m, &[int(4), int(0), int(3)]));
    let ch = chern_character(&m, &BundleExpr::Line(vec![0]), 0).unwrap();
    assert_eq!(ch[0], NilPoly::one(m.ring()));
}

#[test]
fn classical_genera_of_cp2() {
    let m = cp(2);
    assert_eq!(q(index(&m, &GenusKind::Signature).unwrap()), int(1));
    assert_eq!(q(index(&m, &GenusKind::AHat).unwrap()), rat(-1, 8));
    assert_eq!(q(index(&m, &GenusKind::Todd).unwrap()), int(1));
    assert_eq!(q(index(&m, &GenusKind::Euler).unwrap()), int(3));
}

#[test]
fn chi_y_of_projective_spaces() {
    for n in 1..=5 {
        let v = index(&cp(n), &GenusKind::ChiY(YParam::Formal)).unwrap();
        let expected = LaurentPoly::from_coeffs((0..=n).map(|k| int(if k % 2 == 0 { 1 } else { -1 })).collect());
        assert_eq!(v, Scalar::Y(YFunction::from_poly(expected)), "n = {n}");
    }
}

#[test]
fn k3_invariants() {
    let m = k3();
    assert_eq!(q(index(&m, &GenusKind::Todd).unwrap()), int(2));
    assert_eq!(q(index(&m, &GenusKind::Signature).unwrap()), int(-16));
    assert_eq!(q(index(&m, &GenusKind::AHat).unwrap()), int(2));
    assert_eq!(q(index(&m, &GenusKind::Euler).unwrap()), int(24));
}

#[test]
fn oriented_spheres() {
    let s = SpaceModel::even_sphere(2).unwrap();
    assert_eq!(q(index(&s, &GenusKind::Signature).unwrap()), int(0));
    assert_eq!(q(index(&s, &GenusKind::Euler).unwrap()), int(2));
    assert!(matches!(index(&s, &GenusKind::Todd), Err(Error::Precondition(_))));
    let l = loop_signature(&s, 3).unwrap();
    assert!(l.coeffs().iter().all(Ring::is_zero));
}

#[test]
fn point_is_normalized() {
    let p = SpaceModel::point();
    for g in [GenusKind::Signature, GenusKind::AHat, GenusKind::Todd, GenusKind::Euler] {
        assert_eq!(q(index(&p, &g).unwrap()), int(1));
    }
    assert_eq!(q(index(&p, &GenusKind::ChiY(YParam::Formal)).unwrap()), int(1));
}

#[test]
fn riemann_roch_on_projective_space() {
    for n in 1..=6u32 {
        let m = cp(n);
        for k in -8i64..=8 {
            let v = q(twisted_index(&m, &GenusKind::Todd, &BundleExpr::Line(vec![k])).unwrap());
            // χ(O(k)) = C(n+k, n), read as a polynomial in k
            let mut num = int(1);
            for j in 1..=n as i64 {
                num *= int(k + j);
            }
            let expected = num / Rational::from_integer(rigidity_core::algebra::factorial(n));
            assert_eq!(v, expected, "n = {n}, k = {k}");
            if k >= 0 {
                assert_eq!(v, Rational::from_integer(binomial(n as i64 + k, n)));
            }
        }
    }
}

#[test]
fn roots_of_the_canonical_bundle_kill_todd() {
    let m = cp(5);
    for a in 1..=2 {
        let v = twisted_index(&m, &GenusKind::Todd, &BundleExpr::KRoot { n: 3, alpha: a }).unwrap();
        assert!(v.is_zero());
    }
    for n in 1..=7u32 {
        for big_n in 2..=(n as i64 + 1) {
            if (n as i64 + 1) % big_n != 0 {
                continue;
            }
            for a in 1..big_n {
                let v = twisted_index(&cp(n), &GenusKind::Todd, &BundleExpr::KRoot { n: big_n, alpha: a }).unwrap();
                assert!(v.is_zero(), "cp({n}) K^({a}/{big_n})");
            }
        }
    }
    let err = twisted_index(&cp(2), &GenusKind::Todd, &BundleExpr::KRoot { n: 2, alpha: 1 }).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn trivial_twist_is_the_index() {
    for m in [cp(2), cp(3), k3()] {
        for g in [GenusKind::Signature, GenusKind::Todd, GenusKind::AHat] {
            let a = twisted_index(&m, &g, &BundleExpr::Line(vec![0])).unwrap();
            assert_eq!(a, index(&m, &g).unwrap());
        }
    }
}

#[test]
fn loop_signature_low_coefficients() {
    let m = cp(2);
    let l = loop_signature(&m, 2).unwrap();
    assert_eq!(l.coeff(0).clone(), int(1));
    let t = q(twisted_index(&m, &GenusKind::Signature, &BundleExpr::TangentComplexified).unwrap());
    assert_eq!(l.coeff(1).clone(), int(2) * t);
    for m in [cp(1), cp(3), k3()] {
        let l = loop_signature(&m, 1).unwrap();
        assert_eq!(l.coeff(0).clone(), q(index(&m, &GenusKind::Signature).unwrap()));
        let t = q(twisted_index(&m, &GenusKind::Signature, &BundleExpr::TangentComplexified).unwrap());
        assert_eq!(l.coeff(1).clone(), int(2) * t);
    }
}

#[test]
fn dirac_cusp_expansion() {
    let m = k3();
    let d = dirac_cusp_series(&m, 2).unwrap();
    assert_eq!(d.coeff(0).clone(), int(2));
    let tc = BundleExpr::TangentComplexified;
    let a1 = q(twisted_index(&m, &GenusKind::AHat, &tc).unwrap());
    assert_eq!(d.coeff(1).clone(), -a1);
    let r2 = BundleExpr::Sum(vec![BundleExpr::ext(2, tc.clone()), tc.clone()]);
    let a2 = q(twisted_index(&m, &GenusKind::AHat, &r2).unwrap());
    assert_eq!(d.coeff(2).clone(), a2);

    assert_eq!(dirac_cusp_series(&cp(3), 0).unwrap().coeff(0).clone(), int(0));
    match dirac_cusp_series(&cp(2), 1) {
        Err(Error::Precondition(msg)) => assert!(msg.contains("spin condition failed: c1 = 3x"), "{msg}"),
        other => panic!("expected spin failure, got {other:?}"),
    }
}

#[test]
fn level_two_is_the_loop_signature() {
    for m in [k3(), cp(1), cp(3)] {
        let a = level_n_loop(&m, 2, 3).unwrap();
        let b = loop_signature(&m, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(a.coeff(k).clone().as_rational(), Some(b.coeff(k).clone()), "{} q^{k}", m.name());
        }
    }
}

#[test]
fn level_n_leading_coefficients() {
    let m = cp(5);
    let l = level_n_loop(&m, 3, 0).unwrap();
    let chi = index(&m, &GenusKind::chi_y_at_root(3, 1)).unwrap();
    assert_eq!(Scalar::Cyc(l.coeff(0).clone()), chi);

    let l = level_n_loop(&m, 6, 1).unwrap();
    let y = level_y(6, 1);
    let g = GenusKind::ChiY(YParam::Value(y.clone()));
    // R₁ = (1+y) T* + (1+y⁻¹) T, evaluated term by term
    let cot = q_cyc(twisted_index(&m, &g, &BundleExpr::TangentDual).unwrap());
    let tan = q_cyc(twisted_index(&m, &g, &BundleExpr::Tangent).unwrap());
    let one = CycNumber::one();
    let expected = one.add(&y).mul(&cot).add(&one.add(&y.inv()).mul(&tan));
    assert_eq!(l.coeff(1).clone(), expected);
}

fn q_cyc(s: Scalar) -> CycNumber {
    match s {
        Scalar::Cyc(c) => c,
        other => panic!("expected a cyclotomic value, got {other:?}"),
    }
}

#[test]
fn cusp_values_examples() {
    let c = cusp_values(&cp(5), 6).unwrap();
    assert!(c.kroot.iter().all(Ring::is_zero));
    assert_eq!(c.chi_y.len(), 5);

    let c = cusp_values(&k3(), 2).unwrap();
    assert_eq!(c.kroot, vec![int(2)]);
    assert_eq!(c.chi_y[0].as_rational(), Some(int(-16)));

    let c = cusp_values(&cp(1), 2).unwrap();
    assert_eq!(c.kroot, vec![int(0)]);
    assert_eq!(c.chi_y[0].as_rational(), Some(int(0)));

    assert!(matches!(cusp_values(&cp(2), 2), Err(Error::Precondition(_))));
}

#[test]
fn multiplicativity_on_products() {
    let kinds = [GenusKind::Signature, GenusKind::AHat, GenusKind::Todd, GenusKind::ChiY(YParam::Formal)];
    for (a, b) in [(1, 1), (1, 2), (2, 3)] {
        let (ma, mb) = (cp(a), cp(b));
        let p = SpaceModel::product(&ma, &mb).unwrap();
        for g in &kinds {
            let (x, y, z) = (index(&ma, g).unwrap(), index(&mb, g).unwrap(), index(&p, g).unwrap());
            match (x, y, z) {
                (Scalar::Rational(x), Scalar::Rational(y), Scalar::Rational(z)) => assert_eq!(x * y, z),
                (Scalar::Y(x), Scalar::Y(y), Scalar::Y(z)) => assert_eq!(x.mul(&y), z),
                other => panic!("mixed scalar kinds {other:?}"),
            }
        }
    }
}

#[test]
fn twisted_series_of_virtual_bundles() {
    // Λ²T on CP² is K⁻¹ = O(3): χ = 10
    let m = cp(2);
    let v = twisted_series(&m, &GenusKind::Todd, &BundleExpr::ext(2, BundleExpr::Tangent), 0).unwrap();
    assert_eq!(q(v[0].clone()), int(10));
    // ExtPower of a virtual tangent bundle goes through the series expansion
    let v = twisted_index(&k3(), &GenusKind::Todd, &BundleExpr::ext(2, BundleExpr::Tangent)).unwrap();
    assert_eq!(q(v), int(2));
}

#[test]
fn chi_y_at_minus_one_is_the_euler_characteristic() {
    let minus_one = GenusKind::ChiY(YParam::Value(CycNumber::rational(int(-1))));
    for m in [cp(1), cp(2), cp(5), k3(), SpaceModel::product(&cp(1), &cp(2)).unwrap()] {
        let chi = m.euler_characteristic().unwrap();
        assert_eq!(q(index(&m, &minus_one).unwrap()), chi, "{}", m.name());
        // the same value at y = -ζ_2^0 in a larger cyclotomic field
        let v = index(&m, &GenusKind::chi_y_at_root(2, 0)).unwrap();
        assert_eq!(q(v), chi);
    }
    // χ_{-1}(M, L) = rank(L)·χ(M)
    let v = twisted_index(&cp(3), &minus_one, &BundleExpr::Line(vec![2])).unwrap();
    assert_eq!(q(v), int(4));
}
