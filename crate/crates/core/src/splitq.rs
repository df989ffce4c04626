//! Split-quaternion arithmetic.
//!
//! A split-quaternion is `q0 + q1 i + q2 j + q3 k` with `i² = j² = 1`,
//! `k = ij = -ji` and therefore `k² = -1`. The squared norm
//! `q0² - q1² - q2² + q3²` is indefinite, which splits the algebra into
//! space-like, light-like and time-like elements.
//!
//! [`S0Element`] is the three-dimensional subspace `q3 = 0`. With the
//! symmetrised product `(qr + rq) / 2` it is a Jordan algebra, and its
//! positivity domain (`q0 >= 0`, `q0² >= q1² + q2²`) is the cone in which
//! colours live.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Relative zero tolerance used to decide whether `N²(q)` vanishes.
pub const CLASSIFY_TOLERANCE: f64 = 1e-12;

fn check_finite(values: &[f64], what: &'static str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Threshold below which `|N²|` counts as zero for a value of the given
/// squared Euclidean size.
fn light_like_threshold(euclid_sq: f64) -> f64 {
    CLASSIFY_TOLERANCE * euclid_sq.max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    SpaceLike,
    LightLike,
    TimeLike,
}

/// An element of the split-quaternion algebra.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SplitQuaternion {
    q0: f64,
    q1: f64,
    q2: f64,
    q3: f64,
}

impl SplitQuaternion {
    pub const ZERO: Self = Self::raw(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::raw(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::raw(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::raw(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::raw(0.0, 0.0, 0.0, 1.0);

    const fn raw(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Self { q0, q1, q2, q3 }
    }

    /// Builds `q0 + q1 i + q2 j + q3 k`, rejecting NaN and infinities.
    pub fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Result<Self> {
        check_finite(&[q0, q1, q2, q3], "split-quaternion")?;
        Ok(Self::raw(q0, q1, q2, q3))
    }

    pub fn from_array(c: [f64; 4]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn scalar(s: f64) -> Result<Self> {
        Self::new(s, 0.0, 0.0, 0.0)
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }
    pub fn q1(&self) -> f64 {
        self.q1
    }
    pub fn q2(&self) -> f64 {
        self.q2
    }
    pub fn q3(&self) -> f64 {
        self.q3
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q0, self.q1, self.q2, self.q3]
    }

    /// Vector part `q1 i + q2 j + q3 k`.
    pub fn vector_part(self) -> Self {
        Self::raw(0.0, self.q1, self.q2, self.q3)
    }

    pub fn conjugate(self) -> Self {
        Self::raw(self.q0, -self.q1, -self.q2, -self.q3)
    }

    /// `N²(q) = q q* = q0² - q1² - q2² + q3²`.
    pub fn norm_sq(self) -> f64 {
        self.q0 * self.q0 - self.q1 * self.q1 - self.q2 * self.q2 + self.q3 * self.q3
    }

    /// Squared Euclidean length of the coefficient vector.
    pub fn euclid_sq(self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    pub fn classify(self) -> Classification {
        let n2 = self.norm_sq();
        if n2.abs() <= light_like_threshold(self.euclid_sq()) {
            Classification::LightLike
        } else if n2 > 0.0 {
            Classification::TimeLike
        } else {
            Classification::SpaceLike
        }
    }

    /// `q* / N²(q)`; light-like elements are zero divisors and have no inverse.
    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sq();
        if n2.abs() <= light_like_threshold(self.euclid_sq()) {
            return Err(Error::LightLikeNotInvertible(n2));
        }
        Ok(self.conjugate() * (1.0 / n2))
    }

    /// Drops the `k` coefficient.
    pub fn project_s0(self) -> S0Element {
        S0Element::raw(self.q0, self.q1, self.q2)
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        let a = self.to_array();
        let b = other.to_array();
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

impl Mul for SplitQuaternion {
    type Output = Self;

    fn mul(self, r: Self) -> Self {
        let q = self;
        Self::raw(
            q.q0 * r.q0 + q.q1 * r.q1 + q.q2 * r.q2 - q.q3 * r.q3,
            q.q0 * r.q1 + q.q1 * r.q0 - q.q2 * r.q3 + q.q3 * r.q2,
            q.q0 * r.q2 + q.q2 * r.q0 + q.q1 * r.q3 - q.q3 * r.q1,
            q.q0 * r.q3 + q.q3 * r.q0 + q.q1 * r.q2 - q.q2 * r.q1,
        )
    }
}

impl Mul<f64> for SplitQuaternion {
    type Output = Self;

    fn mul(self, s: f64) -> Self {
        Self::raw(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }
}

impl Add for SplitQuaternion {
    type Output = Self;

    fn add(self, r: Self) -> Self {
        Self::raw(self.q0 + r.q0, self.q1 + r.q1, self.q2 + r.q2, self.q3 + r.q3)
    }
}

impl Sub for SplitQuaternion {
    type Output = Self;

    fn sub(self, r: Self) -> Self {
        Self::raw(self.q0 - r.q0, self.q1 - r.q1, self.q2 - r.q2, self.q3 - r.q3)
    }
}

impl Neg for SplitQuaternion {
    type Output = Self;

    fn neg(self) -> Self {
        Self::raw(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

impl fmt::Display for SplitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.q0, self.q1, self.q2, self.q3)
    }
}

/// A split-quaternion with vanishing `k` coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct S0Element {
    q0: f64,
    q1: f64,
    q2: f64,
}

impl S0Element {
    pub const ZERO: Self = Self::raw(0.0, 0.0, 0.0);
    pub const ONE: Self = Self::raw(1.0, 0.0, 0.0);
    pub const I: Self = Self::raw(0.0, 1.0, 0.0);
    pub const J: Self = Self::raw(0.0, 0.0, 1.0);

    pub(crate) const fn raw(q0: f64, q1: f64, q2: f64) -> Self {
        Self { q0, q1, q2 }
    }

    pub fn new(q0: f64, q1: f64, q2: f64) -> Result<Self> {
        check_finite(&[q0, q1, q2], "S0 element")?;
        Ok(Self::raw(q0, q1, q2))
    }

    pub fn scalar(s: f64) -> Result<Self> {
        Self::new(s, 0.0, 0.0)
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }
    pub fn q1(&self) -> f64 {
        self.q1
    }
    pub fn q2(&self) -> f64 {
        self.q2
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.q0, self.q1, self.q2]
    }

    /// Embedding into the full algebra (`q3 = 0`).
    pub fn to_full(self) -> SplitQuaternion {
        SplitQuaternion::raw(self.q0, self.q1, self.q2, 0.0)
    }

    pub fn conjugate(self) -> Self {
        Self::raw(self.q0, -self.q1, -self.q2)
    }

    pub fn norm_sq(self) -> f64 {
        self.to_full().norm_sq()
    }

    pub fn classify(self) -> Classification {
        self.to_full().classify()
    }

    /// Euclidean length of the chromatic (vector) part.
    pub fn vector_norm(self) -> f64 {
        self.q1.hypot(self.q2)
    }

    /// Whether the element lies in the closed positivity cone, with an
    /// absolute slack on both conditions.
    pub fn in_positive_cone(self, slack: f64) -> bool {
        self.q0 >= -slack && self.vector_norm() <= self.q0 + slack
    }

    /// Jordan product `(qr + rq) / 2`. The `k` components of `qr` and `rq`
    /// are opposite, so the result is again in the subspace.
    pub fn jordan_product(self, r: Self) -> Self {
        let (a, b) = (self.to_full(), r.to_full());
        ((a * b + b * a) * 0.5).project_s0()
    }

    /// Polar decomposition `p = N(p) (cosh θ + u sinh θ)` of a time-like
    /// element with positive scalar part.
    pub fn polar(self) -> Result<PolarForm> {
        let (n, r) = self.time_like_norm()?;
        let cosh_theta = self.q0 / n;
        let sinh_theta = r / n;
        let axis = if r > 0.0 {
            Some([self.q1 / r, self.q2 / r])
        } else {
            None
        };
        Ok(PolarForm {
            n,
            theta: sinh_theta.asinh(),
            cosh_theta,
            sinh_theta,
            axis,
        })
    }

    /// The unique square root `√N (cosh(θ/2) + u sinh(θ/2))`.
    pub fn sqrt(self) -> Result<Self> {
        let polar = self.polar()?;
        let (ch, sh) = polar.half_angle();
        let root_n = polar.n.sqrt();
        let [u1, u2] = polar.axis.unwrap_or([0.0, 0.0]);
        Ok(Self::raw(root_n * ch, root_n * sh * u1, root_n * sh * u2))
    }

    /// `p^{-1/2} = (cosh(θ/2) - u sinh(θ/2)) / √N`.
    pub fn inv_sqrt(self) -> Result<Self> {
        let polar = self.polar()?;
        let (ch, sh) = polar.half_angle();
        let inv_root_n = 1.0 / polar.n.sqrt();
        let [u1, u2] = polar.axis.unwrap_or([0.0, 0.0]);
        Ok(Self::raw(
            inv_root_n * ch,
            -inv_root_n * sh * u1,
            -inv_root_n * sh * u2,
        ))
    }

    /// The conjugation-free sandwich `a q a`.
    pub fn sandwich(a: Self, q: Self) -> Self {
        let a = a.to_full();
        (a * q.to_full() * a).project_s0()
    }

    /// `k` coefficient of `a q a` computed in the full algebra; zero up to
    /// rounding for any `a, q` in the subspace.
    pub fn sandwich_k_residual(a: Self, q: Self) -> f64 {
        let a = a.to_full();
        (a * q.to_full() * a).q3()
    }

    /// Returns `(N(p), |v_p|)` after checking the element is strictly
    /// time-like with positive scalar part.
    fn time_like_norm(self) -> Result<(f64, f64)> {
        let n2 = self.norm_sq();
        if self.classify() != Classification::TimeLike {
            return Err(Error::NotTimeLike(n2));
        }
        if self.q0 <= 0.0 {
            return Err(Error::NegativeScalarPart(self.q0));
        }
        let r = self.vector_norm();
        // (q0 - r)(q0 + r) keeps relative accuracy close to the cone.
        let n = ((self.q0 - r) * (self.q0 + r)).sqrt();
        Ok((n, r))
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        self.to_full().max_abs_diff(other.to_full())
    }
}

impl Mul for S0Element {
    type Output = SplitQuaternion;

    fn mul(self, r: Self) -> SplitQuaternion {
        self.to_full() * r.to_full()
    }
}

impl Mul<f64> for S0Element {
    type Output = Self;

    fn mul(self, s: f64) -> Self {
        Self::raw(self.q0 * s, self.q1 * s, self.q2 * s)
    }
}

impl Add for S0Element {
    type Output = Self;

    fn add(self, r: Self) -> Self {
        Self::raw(self.q0 + r.q0, self.q1 + r.q1, self.q2 + r.q2)
    }
}

impl Sub for S0Element {
    type Output = Self;

    fn sub(self, r: Self) -> Self {
        Self::raw(self.q0 - r.q0, self.q1 - r.q1, self.q2 - r.q2)
    }
}

impl From<S0Element> for SplitQuaternion {
    fn from(q: S0Element) -> Self {
        q.to_full()
    }
}

impl fmt::Display for S0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j", self.q0, self.q1, self.q2)
    }
}

/// `p = n (cosh θ + u sinh θ)` with `u = u1 i + u2 j` a unit space-like axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub n: f64,
    /// Hyperbolic angle, `θ >= 0`.
    pub theta: f64,
    pub cosh_theta: f64,
    pub sinh_theta: f64,
    /// `None` when the element is a pure scalar and the axis is undefined.
    pub axis: Option<[f64; 2]>,
}

impl PolarForm {
    /// `(cosh(θ/2), sinh(θ/2))` from `cosh θ` and `sinh θ`, without going
    /// through `θ` itself.
    pub fn half_angle(&self) -> (f64, f64) {
        let ch = ((self.cosh_theta + 1.0) * 0.5).sqrt();
        let sh = self.sinh_theta / (2.0 * ch);
        (ch, sh)
    }

    /// `n (cosh θ + u sinh θ)`.
    pub fn reconstruct(&self) -> S0Element {
        let [u1, u2] = self.axis.unwrap_or([0.0, 0.0]);
        S0Element::raw(
            self.n * self.cosh_theta,
            self.n * self.sinh_theta * u1,
            self.n * self.sinh_theta * u2,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(q0: f64, q1: f64, q2: f64, q3: f64) -> SplitQuaternion {
        SplitQuaternion::new(q0, q1, q2, q3).unwrap()
    }

    fn s0(q0: f64, q1: f64, q2: f64) -> S0Element {
        S0Element::new(q0, q1, q2).unwrap()
    }

    fn close(a: S0Element, b: S0Element, tol: f64) -> bool {
        a.max_abs_diff(b) <= tol
    }

    #[test]
    fn basis_products() {
        use SplitQuaternion as Q;
        assert_eq!(Q::I * Q::J, Q::K);
        assert_eq!(Q::J * Q::I, -Q::K);
        assert_eq!(Q::I * Q::I, Q::ONE);
        assert_eq!(Q::J * Q::J, Q::ONE);
        assert_eq!(Q::K * Q::K, -Q::ONE);
        assert_eq!(Q::K * Q::J, Q::I);
        assert_eq!(Q::J * Q::K, -Q::I);
        assert_eq!(Q::I * Q::K, Q::J);
        assert_eq!(Q::K * Q::I, -Q::J);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(SplitQuaternion::new(f64::NAN, 0.0, 0.0, 0.0).is_err());
        assert!(S0Element::new(0.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn conjugate_and_norm() {
        assert_eq!(sq(1.0, 1.0, 0.0, 0.0).conjugate(), sq(1.0, -1.0, 0.0, 0.0));
        assert_eq!(SplitQuaternion::K.conjugate(), -SplitQuaternion::K);
        assert_eq!(SplitQuaternion::K.norm_sq(), 1.0);
        assert_eq!(SplitQuaternion::I.norm_sq(), -1.0);
        assert_eq!(sq(1.0, 1.0, 0.0, 0.0).norm_sq(), 0.0);
        let q = sq(0.3, -1.2, 2.5, 0.7);
        assert_eq!((q * q.conjugate()).q0(), q.norm_sq());
    }

    #[test]
    fn classification() {
        assert_eq!(SplitQuaternion::K.classify(), Classification::TimeLike);
        assert_eq!(SplitQuaternion::I.classify(), Classification::SpaceLike);
        assert_eq!(sq(1.0, 1.0, 0.0, 0.0).classify(), Classification::LightLike);
        // Tolerance scales with magnitude.
        assert_eq!(sq(1e6, 1e6, 1e-3, 0.0).classify(), Classification::LightLike);
        assert_eq!(sq(1.0, 0.0, 0.0, 0.0).classify(), Classification::TimeLike);
    }

    #[test]
    fn inverse() {
        assert_eq!(
            SplitQuaternion::scalar(2.0).unwrap().inverse().unwrap(),
            sq(0.5, 0.0, 0.0, 0.0)
        );
        assert_eq!(SplitQuaternion::K.inverse().unwrap(), -SplitQuaternion::K);
        assert!(matches!(
            sq(1.0, 1.0, 0.0, 0.0).inverse(),
            Err(Error::LightLikeNotInvertible(_))
        ));
        let q = sq(0.4, 2.0, -1.0, 0.5);
        let one = q * q.inverse().unwrap();
        assert!(one.max_abs_diff(SplitQuaternion::ONE) < 1e-12);
    }

    #[test]
    fn jordan_product_examples() {
        let q = s0(0.3, -0.2, 0.9);
        assert_eq!(S0Element::ONE.jordan_product(q), q);
        assert_eq!(S0Element::I.jordan_product(S0Element::J), S0Element::ZERO);
    }

    #[test]
    fn polar_examples() {
        let p = S0Element::ONE.polar().unwrap();
        assert_eq!((p.n, p.theta, p.axis), (1.0, 0.0, None));

        let p = s0(1.25, 0.75, 0.0).polar().unwrap();
        assert!((p.n - 1.0).abs() < 1e-15);
        assert!((p.cosh_theta - 1.25).abs() < 1e-15);
        assert!((p.sinh_theta - 0.75).abs() < 1e-15);
        assert_eq!(p.axis, Some([1.0, 0.0]));
        assert!((p.theta.cosh() - 1.25).abs() < 1e-14);

        let p = s0(2.0, 0.0, 0.0).polar().unwrap();
        assert_eq!((p.n, p.theta, p.axis), (2.0, 0.0, None));

        let q = s0(0.8, -0.3, 0.45);
        assert!(close(q.polar().unwrap().reconstruct(), q, 1e-15));
    }

    #[test]
    fn polar_errors() {
        assert!(matches!(s0(0.5, 1.0, 0.0).polar(), Err(Error::NotTimeLike(_))));
        assert!(matches!(s0(1.0, 1.0, 0.0).polar(), Err(Error::NotTimeLike(_))));
        assert!(matches!(
            s0(-1.0, 0.2, 0.0).polar(),
            Err(Error::NegativeScalarPart(_))
        ));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(S0Element::ONE.sqrt().unwrap(), S0Element::ONE);
        assert_eq!(s0(4.0, 0.0, 0.0).sqrt().unwrap(), s0(2.0, 0.0, 0.0));
        let r = 1.0 / (2.0 * 2f64.sqrt());
        let root = s0(1.25, 0.75, 0.0).sqrt().unwrap();
        assert!(close(root, s0(3.0 * r, r, 0.0), 1e-15));
        // Squaring the closed form by hand: (9/8 + 1/8) + 2 (3/8) i.
        assert!(close((root * root).project_s0(), s0(1.25, 0.75, 0.0), 1e-15));
    }

    #[test]
    fn inv_sqrt_examples() {
        assert_eq!(S0Element::ONE.inv_sqrt().unwrap(), S0Element::ONE);
        assert_eq!(s0(4.0, 0.0, 0.0).inv_sqrt().unwrap(), s0(0.5, 0.0, 0.0));
        let r = 1.0 / (2.0 * 2f64.sqrt());
        let p = s0(1.25, 0.75, 0.0);
        let inv = p.inv_sqrt().unwrap();
        assert!(close(inv, s0(3.0 * r, -r, 0.0), 1e-15));
        let one = inv * p.sqrt().unwrap();
        assert!(one.max_abs_diff(SplitQuaternion::ONE) < 1e-15);
        assert!(matches!(
            s0(1.0, 0.6, 0.8).inv_sqrt(),
            Err(Error::NotTimeLike(_))
        ));
    }

    #[test]
    fn sandwich_examples() {
        let q = s0(0.7, 0.1, -0.3);
        assert_eq!(S0Element::sandwich(S0Element::ONE, q), q);
        let two = S0Element::sandwich(s0(2f64.sqrt(), 0.0, 0.0), S0Element::ONE);
        assert!(close(two, s0(2.0, 0.0, 0.0), 1e-15));
    }

    #[test]
    fn commuting_sandwich_is_identity() {
        let p = s0(0.9, 0.3, 0.4);
        let a = p.inv_sqrt().unwrap();
        let one = S0Element::sandwich(a, p);
        assert!(close(one, S0Element::ONE, 1e-14));
    }
}
