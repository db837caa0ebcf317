//! Property tests for the algebraic invariants: multiplicativity of
//! characters, valuation additivity, Weyl symmetry, filtration monotonicity.

use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;
use symlift_core::char_eval::principal_char_gl2;
use symlift_core::characters::{ComplexChar, PAdicChar, QuasiCharacter, RealChar};
use symlift_core::padic::PAdicField;
use symlift_core::phase::Phase;
use symlift_core::quadext::{AlphaTag, QuadExt};
use symlift_core::sampling::Sampler;
use symlift_core::torus::{
    filtration_member, weyl_discriminant, BuildingPoint, Gl2Matrix, SplitCoords, TorusElement,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn complex_char_multiplicative(
        l in -5i64..=5,
        s in -1.0f64..1.0,
        r1 in 0.3f64..2.0, a1 in 0.0f64..6.28,
        r2 in 0.3f64..2.0, a2 in 0.0f64..6.28,
    ) {
        let chi = ComplexChar { l, t: Complex64::new(0.0, s) };
        let x = Complex64::from_polar(r1, a1);
        let y = Complex64::from_polar(r2, a2);
        let lhs = chi.eval(x * y).unwrap();
        let rhs = chi.eval(x).unwrap() * chi.eval(y).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn real_char_multiplicative(
        sign in prop::bool::ANY,
        s in -1.0f64..1.0,
        x in (-100.0f64..100.0).prop_filter("away from zero", |v| v.abs() > 0.01),
        y in (-100.0f64..100.0).prop_filter("away from zero", |v| v.abs() > 0.01),
    ) {
        let chi = RealChar { sign: if sign { 1 } else { -1 }, t: Complex64::new(0.0, s) };
        let lhs = chi.eval(x * y).unwrap();
        let rhs = chi.eval(x).unwrap() * chi.eval(y).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn phase_group_laws(n1 in -40i64..40, d1 in 1i64..40, n2 in -40i64..40, d2 in 1i64..40, k in -6i64..6) {
        let a = Phase::new(n1, d1);
        let b = Phase::new(n2, d2);
        let prod = a.mul(&b).value();
        prop_assert!((prod - a.value() * b.value()).norm() < 1e-12);
        let pk = a.pow(k).value();
        let direct = (0..k.abs()).fold(Complex64::new(1.0, 0.0), |acc, _| acc * a.value());
        let direct = if k < 0 { direct.conj() } else { direct };
        prop_assert!((pk - direct).norm() < 1e-12);
    }

    #[test]
    fn weyl_discriminant_permutation_invariant(
        a in 0.3f64..3.0, b in -3.0f64..-0.3, c in 3.5f64..6.0,
        swap in 0usize..6,
    ) {
        let coords = vec![a, b, c];
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let p = perms[swap];
        let permuted: Vec<f64> = p.iter().map(|&i| coords[i]).collect();
        let d1 = weyl_discriminant(&TorusElement::Split(SplitCoords::Real(coords))).unwrap();
        let d2 = weyl_discriminant(&TorusElement::Split(SplitCoords::Real(permuted))).unwrap();
        prop_assert!((d1 - d2).abs() < 1e-10 * (1.0 + d1.abs()));
    }

    #[test]
    fn principal_gl2_weyl_symmetric(
        s1 in -1.0f64..1.0, s2 in -1.0f64..1.0,
        x in 0.3f64..3.0, y in -3.0f64..-0.3,
    ) {
        let chi1 = QuasiCharacter::Real(RealChar { sign: 1, t: Complex64::new(0.0, s1) });
        let chi2 = QuasiCharacter::Real(RealChar { sign: -1, t: Complex64::new(0.0, s2) });
        let t12 = TorusElement::Split(SplitCoords::Real(vec![x, y]));
        let t21 = TorusElement::Split(SplitCoords::Real(vec![y, x]));
        let a = principal_char_gl2(&chi1, &chi2, &t12).unwrap();
        let b = principal_char_gl2(&chi1, &chi2, &t21).unwrap();
        prop_assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn filtration_membership_monotone(
        entries in prop::array::uniform4(0i64..729),
        r2 in 1i64..8,
    ) {
        let field = PAdicField::new(3, 1, 6).unwrap();
        let e = |n: i64| field.ring_from_i64(n);
        let g = Gl2Matrix::new(
            field.clone(),
            [[e(entries[0]), e(entries[1])], [e(entries[2]), e(entries[3])]],
        );
        for point in [BuildingPoint::X0, BuildingPoint::XI] {
            let r = Rational64::new(r2, 2);
            if filtration_member(point, r, &g) == Ok(true) {
                for s2 in 0..r2 {
                    prop_assert_eq!(
                        filtration_member(point, Rational64::new(s2, 2), &g),
                        Ok(true)
                    );
                }
            }
        }
    }
}

/// p-adic multiplicativity: 500 seeded pairs per domain, exact phases.
#[test]
fn padic_char_multiplicative_seeded() {
    let field = PAdicField::new(5, 1, 6).unwrap();
    let mut s = Sampler::for_check(7, "property_padic_multiplicativity");
    // base field
    for _ in 0..500 {
        let QuasiCharacter::PAdic(chi) = s.padic_char_base(&field) else {
            unreachable!()
        };
        let x = s.padic_unit(&field);
        let y = s.padic_unit(&field);
        let xy = field.elt_mul(&x, &y);
        let lhs = chi.eval_base_phase(&xy).unwrap();
        let rhs = chi
            .eval_base_phase(&x)
            .unwrap()
            .mul(&chi.eval_base_phase(&y).unwrap());
        assert_eq!(lhs, rhs);
    }
    // both extension types
    for alpha in [AlphaTag::Eps, AlphaTag::Pi] {
        let ext = QuadExt::new(field.clone(), alpha).unwrap();
        for _ in 0..500 {
            let chi = s.padic_char_ext(&ext);
            let x = s.quadext_unit(&ext);
            let y = s.quadext_unit(&ext);
            let xy = ext.mul(&x, &y);
            let lhs = chi.eval_ext_phase(&xy).unwrap();
            let rhs = chi
                .eval_ext_phase(&x)
                .unwrap()
                .mul(&chi.eval_ext_phase(&y).unwrap());
            assert_eq!(lhs, rhs, "alpha {alpha:?}");
        }
    }
}

/// ord(xy) = ord(x) + ord(y) and N(x) = x·x^σ on seeded extension elements.
#[test]
fn quadext_norm_and_ord_seeded() {
    let field = PAdicField::new(3, 1, 6).unwrap();
    let mut s = Sampler::for_check(11, "property_quadext_norm");
    use rand::Rng;
    for alpha in [AlphaTag::Eps, AlphaTag::Pi, AlphaTag::EpsPi] {
        let ext = QuadExt::new(field.clone(), alpha).unwrap();
        for _ in 0..200 {
            let mut x = s.quadext_unit(&ext);
            let mut y = s.quadext_unit(&ext);
            let vx = s.rng().gen_range(-2..3);
            let vy = s.rng().gen_range(-2..3);
            x = ext.mul(&x, &ext.pow(&ext.uniformizer(), vx).unwrap());
            y = ext.mul(&y, &ext.pow(&ext.uniformizer(), vy).unwrap());
            let xy = ext.mul(&x, &y);
            assert_eq!(
                ext.ord_e(&xy).unwrap(),
                ext.ord_e(&x).unwrap() + ext.ord_e(&y).unwrap()
            );
            let n = ext.norm(&x);
            let prod = ext.mul(&x, &ext.galois_conj(&x));
            assert!(ext.elt_eq(&prod, &ext.embed_base(&n)), "alpha {alpha:?}");
        }
    }
}

/// Characters of a PAdicChar built as a pullback along the norm agree with
/// composing the base character with the norm, everywhere sampled.
#[test]
fn pullback_commutes_with_norm_seeded() {
    use symlift_core::characters::char_pullback_norm;
    let field = PAdicField::new(3, 1, 6).unwrap();
    let mut s = Sampler::for_check(13, "property_pullback");
    for alpha in [AlphaTag::Eps, AlphaTag::Pi] {
        let ext = QuadExt::new(field.clone(), alpha).unwrap();
        for _ in 0..100 {
            let QuasiCharacter::PAdic(mut xi) = s.padic_char_base(&field) else {
                unreachable!()
            };
            if alpha.is_ramified() {
                // depth ≥ 1 pulls back to conductor 2, which only has a
                // symbolic representation on ramified extensions
                xi = PAdicChar::depth_zero(xi.domain.clone(), xi.teich, xi.unif);
            }
            let theta = char_pullback_norm(&xi, &ext).unwrap();
            let x = s.quadext_unit(&ext);
            let lhs = theta.eval_ext_phase(&x).unwrap();
            let rhs = xi.eval_base_phase(&ext.norm(&x)).unwrap();
            assert_eq!(lhs, rhs, "alpha {alpha:?}");
        }
    }
}

/// Rotation/split discrete-series support: zero exactly on negative
/// determinant split classes.
#[test]
fn discrete_char_support() {
    use symlift_core::char_eval::discrete_char;
    let mut s = Sampler::for_check(17, "property_discrete_support");
    use rand::Rng;
    for _ in 0..200 {
        let l = s.rng().gen_range(1..=6);
        let t = Complex64::new(0.0, s.rng().gen_range(-1.0..1.0));
        let a = s.rng().gen_range(0.2..3.0);
        let b = -s.rng().gen_range(0.2..3.0);
        let v = discrete_char(l, t, &TorusElement::Split(SplitCoords::Real(vec![a, b]))).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }
}

/// The whole tower over a base field with composite residue cardinality
/// (q = 9 = 3², polynomial ring arithmetic): characters stay multiplicative,
/// the discriminant-depth law holds, and the trace oracle closes.
#[test]
fn composite_residue_field_q9() {
    use symlift_core::params::{decomposition_trace_check, GroupToken, LParameter};
    use symlift_core::torus::{d_plus, weyl_discriminant_ord};

    let field = PAdicField::new(3, 2, 5).unwrap();
    assert_eq!(field.q, 9);
    let mut s = Sampler::for_check(31, "property_q9");

    // character multiplicativity on F^× (exact phases)
    for _ in 0..100 {
        let QuasiCharacter::PAdic(chi) = s.padic_char_base(&field) else {
            unreachable!()
        };
        let x = s.padic_unit(&field);
        let y = s.padic_unit(&field);
        let lhs = chi.eval_base_phase(&field.elt_mul(&x, &y)).unwrap();
        let rhs = chi
            .eval_base_phase(&x)
            .unwrap()
            .mul(&chi.eval_base_phase(&y).unwrap());
        assert_eq!(lhs, rhs);
    }

    // D = q^{−2d⁺} over the unramified quadratic extension of F_9
    let ext = QuadExt::new(field.clone(), AlphaTag::Eps).unwrap();
    assert_eq!(ext.q_e, 81);
    for _ in 0..50 {
        let g = s.padic_elliptic(&ext);
        let (Ok(ord), Ok(dp)) = (weyl_discriminant_ord(&g), d_plus(&g)) else {
            continue;
        };
        assert_eq!(ord, dp * 2);
    }

    // trace oracle for an induced parameter over E/F with q = 9
    let theta = s.padic_char_ext(&ext);
    let phi = LParameter::PAdicInduced {
        ext: ext.clone(),
        theta,
    };
    let tokens = vec![
        GroupToken::PAdicWeil(s.quadext_unit(&ext)),
        GroupToken::PAdicLambdaTilde,
    ];
    for n in 1..=5 {
        for r in decomposition_trace_check(&phi, n, &tokens).unwrap() {
            assert!(r.abs_err < 1e-12, "n = {n}: {}", r.abs_err);
        }
    }

    // norm compatibility of the generator tower: N(g_E) = g_F
    let ge = ext.elt_teich(1);
    assert!(field.elt_eq(&ext.norm(&ge), &field.elt_teich(1)));
}

/// Closed form of the induced trace at the λ̃ token: 0 in odd degree,
/// θ(λ_E)^{n/2} in even degree.
#[test]
fn lambda_tilde_token_closed_form() {
    use symlift_core::params::{matrix_model, sym_power_matrix, GroupToken, LParameter};

    let field = PAdicField::new(5, 1, 6).unwrap();
    for alpha in [AlphaTag::Eps, AlphaTag::Pi, AlphaTag::EpsPi] {
        let ext = QuadExt::new(field.clone(), alpha).unwrap();
        let mut s = Sampler::for_check(37, "property_lambda_tilde");
        let theta = s.padic_char_ext(&ext);
        let phi = LParameter::PAdicInduced {
            ext: ext.clone(),
            theta: theta.clone(),
        };
        let c = theta.eval_ext_phase(&ext.lambda_e()).unwrap();
        for n in 1..=6usize {
            let m = matrix_model(&phi, &GroupToken::PAdicLambdaTilde).unwrap();
            let tr = sym_power_matrix(&m, n).trace();
            if n % 2 == 1 {
                assert!(tr.norm() < 1e-14, "odd degree vanishes ({alpha:?})");
            } else {
                let expect = c.pow((n / 2) as i64).value();
                assert!(
                    (tr - expect).norm() < 1e-12,
                    "even degree is θ(λ_E)^{{n/2}} ({alpha:?})"
                );
            }
        }
    }
}
