use proptest::prelude::*;
use splitcat_core::jordan::{
    chi, chi_inv, luders, matrix_sqrt_psd, omega, zeta, zeta_full, zeta_full_inv, Matrix2,
};
use splitcat_core::splitq::CLASSIFY_TOLERANCE;
use splitcat_core::{ChromaticState, Classification, Effect, S0Element, SplitQuaternion};

fn quat() -> impl Strategy<Value = SplitQuaternion> {
    prop::array::uniform4(-3.0..3.0f64).prop_map(|c| SplitQuaternion::from_array(c).unwrap())
}

fn s0() -> impl Strategy<Value = S0Element> {
    prop::array::uniform3(-3.0..3.0f64).prop_map(|[a, b, c]| S0Element::new(a, b, c).unwrap())
}

/// Strictly time-like with positive scalar part, bounded away from the cone.
fn time_like() -> impl Strategy<Value = S0Element> {
    (0.05..4.0f64, 0.0..0.99f64, 0.0..std::f64::consts::TAU)
        .prop_map(|(p0, r, a)| S0Element::new(p0, p0 * r * a.cos(), p0 * r * a.sin()).unwrap())
}

fn effect() -> impl Strategy<Value = Effect> {
    (0.05..=1.0f64, 0.0..=0.95f64, 0.0..std::f64::consts::TAU)
        .prop_map(|(e0, s, a)| Effect::new(e0, e0 * s * a.cos(), e0 * s * a.sin()).unwrap())
}

fn state() -> impl Strategy<Value = ChromaticState> {
    (0.0..=1.0f64, 0.0..std::f64::consts::TAU)
        .prop_map(|(r, a)| ChromaticState::new(r * a.cos(), r * a.sin()).unwrap())
}

fn scale(q: SplitQuaternion) -> f64 {
    1.0 + q.euclid_sq()
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in quat(), b in quat(), c in quat()) {
        let lhs = (a * b) * c;
        let rhs = a * (b * c);
        prop_assert!(lhs.max_abs_diff(rhs) < 1e-11 * scale(a) * scale(b) * scale(c));
    }

    #[test]
    fn matrix_map_is_a_homomorphism(a in quat(), b in quat()) {
        let lhs = zeta_full(a * b);
        let rhs = zeta_full(a) * zeta_full(b);
        prop_assert!(lhs.max_abs_diff(rhs) < 1e-12 * scale(a) * scale(b));
        prop_assert!(zeta_full_inv(zeta_full(a)).unwrap().max_abs_diff(a) < 1e-14 * scale(a));
    }

    #[test]
    fn norm_is_multiplicative(a in quat(), b in quat()) {
        let lhs = (a * b).norm_sq();
        let rhs = a.norm_sq() * b.norm_sq();
        prop_assert!((lhs - rhs).abs() < 1e-11 * scale(a) * scale(b));
        prop_assert!((zeta_full(a).det() - a.norm_sq()).abs() < 1e-12 * scale(a));
    }

    #[test]
    fn conjugation_reverses_products(a in quat(), b in quat()) {
        let lhs = (a * b).conjugate();
        let rhs = b.conjugate() * a.conjugate();
        prop_assert!(lhs.max_abs_diff(rhs) < 1e-12 * scale(a) * scale(b));
        let n = a * a.conjugate();
        prop_assert!(n.max_abs_diff(SplitQuaternion::scalar(a.norm_sq()).unwrap()) < 1e-12 * scale(a));
    }

    #[test]
    fn inverse_is_two_sided(a in quat()) {
        match a.classify() {
            Classification::LightLike => prop_assert!(a.inverse().is_err()),
            _ => {
                let inv = a.inverse().unwrap();
                let tol = 1e-10 * scale(a) * scale(inv);
                prop_assert!((a * inv).max_abs_diff(SplitQuaternion::ONE) < tol);
                prop_assert!((inv * a).max_abs_diff(SplitQuaternion::ONE) < tol);
            }
        }
    }

    #[test]
    fn classification_follows_norm_sign(a in quat()) {
        let n = a.norm_sq();
        let eps = CLASSIFY_TOLERANCE * scale(a).max(1.0);
        let expected = if n > eps {
            Classification::TimeLike
        } else if n < -eps {
            Classification::SpaceLike
        } else {
            Classification::LightLike
        };
        prop_assert_eq!(a.classify(), expected);
    }

    #[test]
    fn jordan_product_is_commutative_and_closed(a in s0(), b in s0()) {
        let ab = a.jordan_product(b);
        prop_assert!(ab.max_abs_diff(b.jordan_product(a)) == 0.0);
        let half = (a * b + b * a) * 0.5;
        prop_assert!(half.q3().abs() < 1e-12 * scale(a.into()) * scale(b.into()));
        prop_assert!(zeta(ab).max_abs_diff(zeta(a).jordan(zeta(b))) < 1e-12 * scale(a.into()) * scale(b.into()));
        prop_assert!(chi(zeta(ab)).unwrap().max_abs_diff(omega(a).jordan(omega(b))) < 1e-12 * scale(a.into()) * scale(b.into()));
    }

    #[test]
    fn spin_factor_maps_are_inverse(a in s0()) {
        let m = zeta(a);
        prop_assert!(chi(m).unwrap().max_abs_diff(omega(a)) < 1e-15 * scale(a.into()));
        prop_assert!(chi_inv(omega(a)).max_abs_diff(m) < 1e-15 * scale(a.into()));
    }

    #[test]
    fn sqrt_is_principal(p in time_like()) {
        let r = p.sqrt().unwrap();
        prop_assert!(r.q0() > 0.0);
        prop_assert_eq!(r.classify(), Classification::TimeLike);
        prop_assert!((r.norm_sq() - p.norm_sq().sqrt()).abs() < 1e-12 * (1.0 + p.q0()));
        let ri = p.inv_sqrt().unwrap();
        prop_assert!((r * ri).max_abs_diff(SplitQuaternion::ONE) < 1e-10);
        prop_assert!((ri.to_full() * (p * ri)).max_abs_diff(SplitQuaternion::ONE) < 1e-10);
    }

    #[test]
    fn polar_form_reconstructs(p in time_like()) {
        let polar = p.polar().unwrap();
        prop_assert!(polar.reconstruct().max_abs_diff(p) < 1e-12 * (1.0 + p.q0()));
        prop_assert!(polar.theta >= 0.0);
        prop_assert!((polar.cosh_theta.powi(2) - polar.sinh_theta.powi(2) - 1.0).abs() < 1e-9 * polar.cosh_theta.powi(2));
    }

    #[test]
    fn sandwich_stays_in_s0_and_preserves_cone(a in time_like(), q in time_like()) {
        let out = S0Element::sandwich(a, q);
        prop_assert!(S0Element::sandwich_k_residual(a, q) < 1e-12 * scale(a.into()).powi(2) * scale(q.into()));
        prop_assert!(out.in_positive_cone(1e-12));
        let expected = a.norm_sq().powi(2) * q.norm_sq();
        prop_assert!((out.norm_sq() - expected).abs() < 1e-10 * scale(a.into()).powi(2) * scale(q.into()));
    }

    #[test]
    fn luders_matches_sandwich(e in effect(), s in state()) {
        let m = luders(e, s).unwrap();
        let q = S0Element::sandwich(e.to_s0().sqrt().unwrap(), s.to_s0());
        prop_assert!(zeta(q).max_abs_diff(m) < 1e-10);
        prop_assert!(m.trace() >= 0.0);
        prop_assert!(m.det() >= -1e-12);
    }

    #[test]
    fn matrix_square_root_squares_back(a in 0.0..3.0f64, c in 0.0..3.0f64, t in -1.0..1.0f64) {
        let b = t * (a * c).sqrt();
        let m = Matrix2::symmetric(a, b, c);
        let r = matrix_sqrt_psd(m).unwrap();
        prop_assert!((r * r).max_abs_diff(m) < 1e-9);
        prop_assert!(r.max_abs_diff(r.transpose()) < 1e-15);
    }
}
