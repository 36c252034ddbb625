use rigidity_core::algebra::{int, LaurentPoly, Rational, RationalFunction, Ring, YFunction};
use rigidity_core::equivariant::{
    equiv_index, equivariant_integral, h2_witness, higher_vanishing_check, limit_at_cusp, linear_cp_action, local_data,
    local_datum, local_limits, rigidity_report, sigma_fixed_set, structure_checks, Character, EquivClass, Level,
    LoopFamily, SigmaComponent, Spec, Verdict,
};
use rigidity_core::genera::{index, BundleExpr, GenusKind, Scalar, YParam};
use rigidity_core::spaces::SpaceModel;

fn u_rf(num: &[(i64, i64)], den: &[(i64, i64)]) -> RationalFunction<Rational> {
    let p = |t: &[(i64, i64)]| LaurentPoly::from_terms(t.iter().map(|&(e, c)| (e, int(c))));
    RationalFunction::new(p(num), p(den))
}

fn chi_y() -> Spec {
    Spec::Genus(GenusKind::ChiY(YParam::Formal))
}

fn one_minus_y() -> Scalar {
    Scalar::Y(YFunction::from_poly(LaurentPoly::from_terms([(0, int(1)), (1, int(-1))])))
}

#[test]
fn local_data_at_an_isolated_point() {
    let a = linear_cp_action(&[0, 1]).unwrap();
    let sig = local_datum(&a, 0, &Spec::Genus(GenusKind::Signature), 0).unwrap();
    assert_eq!(sig.coeffs[0], Character::Rational(u_rf(&[(0, 1), (-1, 1)], &[(0, 1), (-1, -1)])));

    let ahat = local_datum(&a, 0, &Spec::Genus(GenusKind::AHat), 0).unwrap();
    assert_eq!(ahat.cover, 2);
    assert_eq!(ahat.coeffs[0], Character::Rational(u_rf(&[(0, 1)], &[(1, 1), (-1, -1)])));

    let chi = local_datum(&a, 0, &chi_y(), 0).unwrap();
    let y = YFunction::var();
    let num = LaurentPoly::from_terms([(0, YFunction::constant(int(1))), (-1, y)]);
    let den = LaurentPoly::from_terms([(0, YFunction::constant(int(1))), (-1, YFunction::constant(int(-1)))]);
    assert_eq!(chi.coeffs[0], Character::Y(RationalFunction::new(num, den)));
}

#[test]
fn characters_of_the_rotated_sphere() {
    let a = linear_cp_action(&[0, 1]).unwrap();
    let s = equiv_index(&a, &Spec::Genus(GenusKind::Signature), 0).unwrap();
    assert_eq!(s.coeffs[0].as_constant(), Some(Scalar::Rational(int(0))));
    let c = equiv_index(&a, &chi_y(), 0).unwrap();
    assert_eq!(c.coeffs[0].as_constant(), Some(one_minus_y()));
    let h = equiv_index(&a, &Spec::Genus(GenusKind::AHat), 0).unwrap();
    assert!(h.coeffs[0].is_zero());
}

#[test]
fn signature_rigidity_on_projective_spaces() {
    for w in [vec![0, 1, 2], vec![0, 0, 1], vec![0, 1, 2, 3], vec![2, -1, 0, 5, 5], vec![0, 1, 3, 4, 7, 9]] {
        let a = linear_cp_action(&w).unwrap();
        let r = rigidity_report(&a, &Spec::Genus(GenusKind::Signature), 0).unwrap();
        assert!(r.rigid(), "{w:?}");
        let expected = if w.len() % 2 == 1 { 1 } else { 0 };
        assert_eq!(r.coefficients[0].value, Some(Scalar::Rational(int(expected))));
    }
}

#[test]
fn level_two_rigidity_on_cp3() {
    let a = linear_cp_action(&[0, 1, 2, 3]).unwrap();
    let r = rigidity_report(&a, &Spec::Loop(LoopFamily::Signature), 3).unwrap();
    assert_eq!(r.coefficients.len(), 4);
    assert!(r.rigid());
}

#[test]
fn twisted_signature_is_not_rigid() {
    let a = linear_cp_action(&[0, 1, 2]).unwrap();
    let spec = Spec::Twisted(GenusKind::Signature, BundleExpr::TangentComplexified);
    let r = rigidity_report(&a, &spec, 0).unwrap();
    assert!(!r.coefficients[0].constant);
    assert!(!r.rigid());
}

#[test]
fn cusp_limits() {
    let sig = Spec::Genus(GenusKind::Signature);
    let a = linear_cp_action(&[0, 0, 1]).unwrap();
    assert_eq!(local_limits(&a, &sig).unwrap(), vec![Scalar::Rational(int(0)), Scalar::Rational(int(1))]);
    assert_eq!(limit_at_cusp(&a, &sig).unwrap(), Scalar::Rational(int(1)));
    let a = linear_cp_action(&[0, 1]).unwrap();
    assert_eq!(local_limits(&a, &sig).unwrap(), vec![Scalar::Rational(int(1)), Scalar::Rational(int(-1))]);
    assert_eq!(limit_at_cusp(&a, &sig).unwrap(), Scalar::Rational(int(0)));
    let a = linear_cp_action(&[0, 1, 2]).unwrap();
    assert_eq!(limit_at_cusp(&a, &sig).unwrap(), Scalar::Rational(int(1)));
}

#[test]
fn localization_integrals() {
    let a = linear_cp_action(&[0, 1]).unwrap();
    let r = equivariant_integral(&a, &EquivClass::Const(int(1))).unwrap();
    assert!(r.total.is_zero());

    let a = linear_cp_action(&[0, 0, 1]).unwrap();
    let v = h2_witness(&a).unwrap();
    assert_eq!(v, EquivClass::Prod(vec![EquivClass::Hyperplane { lift: 0 }; 2]));
    let r = equivariant_integral(&a, &v).unwrap();
    assert_eq!(r.total, LaurentPoly::constant(int(1)));
    assert!(r.local[0].is_zero());
    assert!(!r.local[1].is_zero());

    for w in [vec![0, 1, 1, 3, 3, 3], vec![5, 0, 2, 0], vec![0, 1, 2, 3]] {
        let a = linear_cp_action(&w).unwrap();
        let r = equivariant_integral(&a, &h2_witness(&a).unwrap()).unwrap();
        assert!(!r.total.is_zero(), "{w:?}");
        let l = r.local.len();
        assert!(r.local[..l - 1].iter().all(|f| f.is_zero()), "{w:?}");
    }
}

#[test]
fn sigma_fixed_sets() {
    let a = linear_cp_action(&[0, 0, 0, 1, 1, 1]).unwrap();
    let s = sigma_fixed_set(&a, 2).unwrap();
    assert_eq!(s.codim, 6);
    assert_eq!(s.components, vec![SigmaComponent { residue: 0, size: 3 }, SigmaComponent { residue: 1, size: 3 }]);

    let a = linear_cp_action(&[0, 1, 2, 3]).unwrap();
    let s = sigma_fixed_set(&a, 2).unwrap();
    assert_eq!((s.components.len(), s.codim), (2, 4));
    assert!(s.components.iter().all(|c| c.size == 2));

    let a = linear_cp_action(&[0, 0, 1, 1, 2, 2]).unwrap();
    let s = sigma_fixed_set(&a, 3).unwrap();
    assert_eq!((s.components.len(), s.codim), (3, 8));
}

#[test]
fn higher_vanishing_instances() {
    let a = linear_cp_action(&[0, 0, 0, 1, 1, 1]).unwrap();
    let r = higher_vanishing_check(&a, 2, Level::Two).unwrap();
    assert_eq!((r.verdict.clone(), r.codim, r.r), (Verdict::Pass, 6, Some(1)));
    assert_eq!(r.checks.len(), 2);

    let a = linear_cp_action(&[0, 0, 1, 1, 2, 2]).unwrap();
    let r = higher_vanishing_check(&a, 3, Level::Two).unwrap();
    assert_eq!((r.verdict.clone(), r.codim, r.r), (Verdict::Pass, 8, Some(1)));

    let a = linear_cp_action(&[0, 0, 0, 1, 1, 1]).unwrap();
    let r = higher_vanishing_check(&a, 2, Level::N(3)).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.checks.len(), 1);

    let a = linear_cp_action(&[0, 1, 2]).unwrap();
    let r = higher_vanishing_check(&a, 2, Level::Two).unwrap();
    assert!(matches!(r.verdict, Verdict::NotApplicable(_)));
}

#[test]
fn structure_theorem_instances() {
    for (w, comps) in [(vec![0, 0, 1], 2), (vec![0, 1, 2, 3], 4), (vec![0, 0, 1, 1], 2)] {
        let a = linear_cp_action(&w).unwrap();
        assert_eq!(a.components().len(), comps);
        let s = structure_checks(&a).unwrap();
        assert!(s.passes());
        assert_eq!(s.rank_sum, s.rank);
    }
}

#[test]
fn euler_character_is_the_fixed_point_count() {
    let a = linear_cp_action(&[0, 0, 1, 4]).unwrap();
    let e = equiv_index(&a, &Spec::Genus(GenusKind::Euler), 0).unwrap();
    assert_eq!(e.coeffs[0].as_constant(), Some(Scalar::Rational(int(4))));
}

#[test]
fn kroot_characters_vanish() {
    let a = linear_cp_action(&[0, 1, 2, 3, 4, 5]).unwrap();
    for alpha in 1..3 {
        let spec = Spec::Twisted(GenusKind::Todd, BundleExpr::KRoot { n: 3, alpha });
        let v = equiv_index(&a, &spec, 0).unwrap();
        assert_eq!(v.cover, 6);
        assert!(v.coeffs[0].is_zero());
    }
}

#[test]
fn local_data_sum_to_the_index() {
    let a = linear_cp_action(&[0, 2, 2, 5]).unwrap();
    let spec = Spec::Genus(GenusKind::Todd);
    let parts = local_data(&a, &spec, 0).unwrap();
    assert_eq!(parts.len(), 3);
    let total = equiv_index(&a, &spec, 0).unwrap();
    assert_eq!(total.coeffs[0].as_constant(), Some(index(&SpaceModel::cp(3).unwrap(), &GenusKind::Todd).unwrap()));
}

#[test]
fn chi_y_character_at_minus_one() {
    let spec = Spec::Genus(GenusKind::ChiY(YParam::Value(rigidity_core::algebra::CycNumber::rational(int(-1)))));
    for w in [vec![0, 1], vec![0, 1, 1, 4], vec![-2, 0, 3]] {
        let a = linear_cp_action(&w).unwrap();
        let r = rigidity_report(&a, &spec, 0).unwrap();
        assert!(r.rigid(), "{w:?}");
        assert_eq!(r.coefficients[0].value.as_ref().unwrap().as_rational(), Some(int(w.len() as i64)));
    }
}
