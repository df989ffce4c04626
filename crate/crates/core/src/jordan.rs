//! Matrix and spin-factor pictures of the `S0` Jordan algebra.
//!
//! Three isomorphic Jordan algebras carry the same colour measurement:
//!
//! * real symmetric 2×2 matrices, where states are density matrices and an
//!   observer is an effect `0 <= η <= Id`, and a measurement is the Lüders
//!   map `η^{1/2} ρ η^{1/2}`;
//! * the spin factor `R ⊕ R²`, where the same measurement is a normalised
//!   Lorentz boost of 2+1 Minkowski space;
//! * the split-quaternion subspace [`S0Element`], where it is the sandwich
//!   `p^{1/2} q p^{1/2}`.
//!
//! `zeta` maps split-quaternions to matrices, `chi` maps symmetric matrices
//! to spin vectors, and `omega = chi ∘ zeta` on `S0`. Everything here is
//! computed by a route independent of [`crate::splitq`] so the module can
//! serve as an oracle for it.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};
use crate::splitq::{S0Element, SplitQuaternion};

/// Symmetry tolerance for 2×2 matrices.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Eigenvalues above `-PSD_TOLERANCE` are clamped to zero.
pub const PSD_TOLERANCE: f64 = 1e-10;
/// Velocities with `|v| >= 1 - LIGHT_CONE_MARGIN` are rejected.
pub const LIGHT_CONE_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub m00: f64,
    pub m01: f64,
    pub m10: f64,
    pub m11: f64,
}

impl Matrix2 {
    pub const IDENTITY: Self = Self::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    /// Real Pauli matrix `diag(1, -1)`.
    pub const SIGMA1: Self = Self::new(1.0, 0.0, 0.0, -1.0);
    /// Real Pauli matrix `[[0, 1], [1, 0]]`.
    pub const SIGMA2: Self = Self::new(0.0, 1.0, 1.0, 0.0);

    pub const fn new(m00: f64, m01: f64, m10: f64, m11: f64) -> Self {
        Self { m00, m01, m10, m11 }
    }

    pub fn symmetric(a: f64, b: f64, c: f64) -> Self {
        Self::new(a, b, b, c)
    }

    pub fn transpose(self) -> Self {
        Self::new(self.m00, self.m10, self.m01, self.m11)
    }

    pub fn trace(self) -> f64 {
        self.m00 + self.m11
    }

    pub fn det(self) -> f64 {
        self.m00 * self.m11 - self.m01 * self.m10
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.m00 * s, self.m01 * s, self.m10 * s, self.m11 * s)
    }

    /// Symmetrised product `(AB + BA) / 2`.
    pub fn jordan(self, other: Self) -> Self {
        (self * other + other * self).scale(0.5)
    }

    pub fn check_symmetric(self) -> Result<()> {
        let gap = (self.m01 - self.m10).abs();
        if gap <= SYMMETRY_TOLERANCE {
            Ok(())
        } else {
            Err(Error::NotSymmetric(gap))
        }
    }

    pub fn max_abs_diff(self, o: Self) -> f64 {
        [
            self.m00 - o.m00,
            self.m01 - o.m01,
            self.m10 - o.m10,
            self.m11 - o.m11,
        ]
        .iter()
        .fold(0.0, |m, d| m.max(d.abs()))
    }
}

impl Mul for Matrix2 {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.m00 * b.m00 + a.m01 * b.m10,
            a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10,
            a.m10 * b.m01 + a.m11 * b.m11,
        )
    }
}

impl Add for Matrix2 {
    type Output = Self;

    fn add(self, b: Self) -> Self {
        Self::new(
            self.m00 + b.m00,
            self.m01 + b.m01,
            self.m10 + b.m10,
            self.m11 + b.m11,
        )
    }
}

impl Sub for Matrix2 {
    type Output = Self;

    fn sub(self, b: Self) -> Self {
        self + b.scale(-1.0)
    }
}

/// Dense `N×N` matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareMatrix<const N: usize>(pub [[f64; N]; N]);

pub type Matrix3 = SquareMatrix<3>;
pub type Matrix4 = SquareMatrix<4>;

impl<const N: usize> SquareMatrix<N> {
    pub fn zeros() -> Self {
        Self([[0.0; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = 1.0;
        }
        m
    }

    pub fn diagonal(d: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = d[i];
        }
        m
    }

    pub fn from_columns(cols: [[f64; N]; N]) -> Self {
        Self(cols).transpose()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                t.0[j][i] = self.0[i][j];
            }
        }
        t
    }

    pub fn apply(&self, v: [f64; N]) -> [f64; N] {
        let mut out = [0.0; N];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                m = m.max((self.0[i][j] - other.0[i][j]).abs());
            }
        }
        m
    }
}

impl<const N: usize> Mul for SquareMatrix<N> {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] = (0..N).map(|k| self.0[i][k] * b.0[k][j]).sum();
            }
        }
        out
    }
}

impl<const N: usize> Index<(usize, usize)> for SquareMatrix<N> {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for SquareMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

/// Element `(α, v)` of the spin factor `R ⊕ R²`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinVector {
    pub alpha: f64,
    pub v1: f64,
    pub v2: f64,
}

impl SpinVector {
    pub const fn new(alpha: f64, v1: f64, v2: f64) -> Self {
        Self { alpha, v1, v2 }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.alpha, self.v1, self.v2]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// `(α, v) ∘ (β, w) = (αβ + <v, w>, αw + βv)`.
    pub fn jordan(self, o: Self) -> Self {
        Self::new(
            self.alpha * o.alpha + self.v1 * o.v1 + self.v2 * o.v2,
            self.alpha * o.v1 + o.alpha * self.v1,
            self.alpha * o.v2 + o.alpha * self.v2,
        )
    }

    /// Minkowski form `α² - |v|²`.
    pub fn minkowski_sq(self) -> f64 {
        self.alpha * self.alpha - self.v1 * self.v1 - self.v2 * self.v2
    }

    /// Membership in the closed future light cone with absolute slack.
    pub fn in_future_cone(self, slack: f64) -> bool {
        self.alpha >= -slack && self.v1.hypot(self.v2) <= self.alpha + slack
    }

    pub fn max_abs_diff(self, o: Self) -> f64 {
        (self.alpha - o.alpha)
            .abs()
            .max((self.v1 - o.v1).abs())
            .max((self.v2 - o.v2).abs())
    }
}

/// Rebit state with chromatic vector `(s1, s2)`, `|s| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChromaticState {
    s1: f64,
    s2: f64,
}

impl ChromaticState {
    pub fn new(s1: f64, s2: f64) -> Result<Self> {
        if !(s1.is_finite() && s2.is_finite()) {
            return Err(Error::NonFinite("chromatic state"));
        }
        if s1 * s1 + s2 * s2 > 1.0 + 1e-12 {
            return Err(Error::InvalidState(format!(
                "|(s1, s2)| = {} exceeds 1",
                s1.hypot(s2)
            )));
        }
        Ok(Self { s1, s2 })
    }

    pub fn s1(&self) -> f64 {
        self.s1
    }
    pub fn s2(&self) -> f64 {
        self.s2
    }

    /// `(1 + s1 i + s2 j) / 2`.
    pub fn to_s0(self) -> S0Element {
        S0Element::raw(0.5, 0.5 * self.s1, 0.5 * self.s2)
    }
}

/// Effect `(e0, e1, e2)` with `0 <= e0 <= 1` and `e1² + e2² <= e0²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Effect {
    e0: f64,
    e1: f64,
    e2: f64,
}

impl Effect {
    pub fn new(e0: f64, e1: f64, e2: f64) -> Result<Self> {
        if !(e0.is_finite() && e1.is_finite() && e2.is_finite()) {
            return Err(Error::NonFinite("effect"));
        }
        if !(0.0..=1.0).contains(&e0) {
            return Err(Error::InvalidEffect(format!("e0 = {e0} outside [0, 1]")));
        }
        if e1.hypot(e2) > e0 * (1.0 + 1e-12) {
            return Err(Error::InvalidEffect(format!(
                "|(e1, e2)| = {} exceeds e0 = {e0}",
                e1.hypot(e2)
            )));
        }
        Ok(Self { e0, e1, e2 })
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }
    pub fn e1(&self) -> f64 {
        self.e1
    }
    pub fn e2(&self) -> f64 {
        self.e2
    }

    /// Chromatic vector `v_e = (e1, e2) / e0`; zero for the null effect.
    pub fn velocity(&self) -> [f64; 2] {
        if self.e0 == 0.0 {
            [0.0, 0.0]
        } else {
            [self.e1 / self.e0, self.e2 / self.e0]
        }
    }

    /// `p_e = e0 + e1 i + e2 j`.
    pub fn to_s0(self) -> S0Element {
        S0Element::raw(self.e0, self.e1, self.e2)
    }

    /// Rapidity `artanh |v_e|`.
    pub fn rapidity(&self) -> f64 {
        let [v1, v2] = self.velocity();
        v1.hypot(v2).atanh()
    }
}

pub fn zeta(q: S0Element) -> Matrix2 {
    Matrix2::symmetric(q.q0() + q.q1(), q.q2(), q.q0() - q.q1())
}

pub fn zeta_full(q: SplitQuaternion) -> Matrix2 {
    Matrix2::new(
        q.q0() + q.q1(),
        q.q2() + q.q3(),
        q.q2() - q.q3(),
        q.q0() - q.q1(),
    )
}

/// Inverse of [`zeta`] on symmetric matrices.
pub fn zeta_inv(m: Matrix2) -> Result<S0Element> {
    m.check_symmetric()?;
    S0Element::new(
        0.5 * (m.m00 + m.m11),
        0.5 * (m.m00 - m.m11),
        0.5 * (m.m01 + m.m10),
    )
}

/// Inverse of [`zeta_full`]; total on 2×2 matrices.
pub fn zeta_full_inv(m: Matrix2) -> Result<SplitQuaternion> {
    SplitQuaternion::new(
        0.5 * (m.m00 + m.m11),
        0.5 * (m.m00 - m.m11),
        0.5 * (m.m01 + m.m10),
        0.5 * (m.m01 - m.m10),
    )
}

/// `[[α + v1, v2], [v2, α - v1]] ↦ (α, v1, v2)`.
pub fn chi(m: Matrix2) -> Result<SpinVector> {
    m.check_symmetric()?;
    Ok(SpinVector::new(
        0.5 * (m.m00 + m.m11),
        0.5 * (m.m00 - m.m11),
        0.5 * (m.m01 + m.m10),
    ))
}

pub fn chi_inv(v: SpinVector) -> Matrix2 {
    Matrix2::symmetric(v.alpha + v.v1, v.v2, v.alpha - v.v1)
}

pub fn omega(q: S0Element) -> SpinVector {
    SpinVector::new(q.q0(), q.q1(), q.q2())
}

pub fn density_from_state(s: ChromaticState) -> Matrix2 {
    Matrix2::symmetric(1.0 + s.s1, s.s2, 1.0 - s.s1).scale(0.5)
}

pub fn effect_matrix(e: Effect) -> Matrix2 {
    Matrix2::symmetric(e.e0 + e.e1, e.e2, e.e0 - e.e1)
}

/// Principal square root of a symmetric positive semidefinite 2×2 matrix
/// via its closed-form eigendecomposition.
pub fn matrix_sqrt_psd(m: Matrix2) -> Result<Matrix2> {
    m.check_symmetric()?;
    let b = 0.5 * (m.m01 + m.m10);
    let mean = 0.5 * (m.m00 + m.m11);
    let half_gap = 0.5 * (m.m00 - m.m11);
    let radius = half_gap.hypot(b);
    let clamp = |lambda: f64| -> Result<f64> {
        if lambda >= 0.0 {
            Ok(lambda)
        } else if lambda >= -PSD_TOLERANCE {
            Ok(0.0)
        } else {
            Err(Error::NotPsd(lambda))
        }
    };
    let l_max = clamp(mean + radius)?;
    let l_min = clamp(mean - radius)?;
    // Eigenvector of l_max is (cos φ, sin φ) with tan 2φ = 2b / (m00 - m11).
    let phi = 0.5 * b.atan2(half_gap);
    let (s, c) = phi.sin_cos();
    let (r_max, r_min) = (l_max.sqrt(), l_min.sqrt());
    Ok(Matrix2::symmetric(
        r_max * c * c + r_min * s * s,
        (r_max - r_min) * c * s,
        r_max * s * s + r_min * c * c,
    ))
}

/// Lüders operation `η_e^{1/2} ρ_s η_e^{1/2}`.
pub fn luders(e: Effect, s: ChromaticState) -> Result<Matrix2> {
    let root = matrix_sqrt_psd(effect_matrix(e))?;
    Ok(root * density_from_state(s) * root)
}

/// Lorentz factor `1 / √(1 - |v|²)`.
pub fn gamma(v1: f64, v2: f64) -> Result<f64> {
    let speed = v1.hypot(v2);
    if !(speed < 1.0 - LIGHT_CONE_MARGIN) {
        return Err(Error::LightLikeVelocity(speed));
    }
    Ok(1.0 / ((1.0 - speed) * (1.0 + speed)).sqrt())
}

/// Boost of `R ⊕ R²` with velocity `v`:
/// `[[γ, γ vᵀ], [γ v, Id + γ²/(1+γ) v vᵀ]]`.
pub fn boost_matrix(v1: f64, v2: f64) -> Result<Matrix3> {
    let g = gamma(v1, v2)?;
    let k = g * g / (1.0 + g);
    Ok(SquareMatrix([
        [g, g * v1, g * v2],
        [g * v1, 1.0 + k * v1 * v1, k * v1 * v2],
        [g * v2, k * v1 * v2, 1.0 + k * v2 * v2],
    ]))
}

/// Minkowski metric `diag(1, -1, -1)`.
pub fn minkowski_metric() -> Matrix3 {
    SquareMatrix::diagonal([1.0, -1.0, -1.0])
}

/// Measurement outcome as a normalised boost:
/// `(e0 / γ) B(v_e) (1, s1, s2)ᵀ / 2`.
pub fn boost_measure(e: Effect, s: ChromaticState) -> Result<SpinVector> {
    if e.e0 == 0.0 {
        return Ok(SpinVector::default());
    }
    let [v1, v2] = e.velocity();
    let g = gamma(v1, v2)?;
    let b = boost_matrix(v1, v2)?;
    let out = b.apply([0.5, 0.5 * s.s1, 0.5 * s.s2]);
    let scale = e.e0 / g;
    Ok(SpinVector::new(out[0] * scale, out[1] * scale, out[2] * scale))
}

/// `ι(q) = (q0, q1, q2, q3)`.
pub fn iota(q: SplitQuaternion) -> [f64; 4] {
    q.to_array()
}

fn basis_quaternion(index: usize) -> SplitQuaternion {
    [
        SplitQuaternion::ONE,
        SplitQuaternion::I,
        SplitQuaternion::J,
        SplitQuaternion::K,
    ][index]
}

/// Matrix (standard basis `1, i, j, k`) of a linear map on the algebra,
/// assembled column by column.
pub fn linear_map_matrix(f: impl Fn(SplitQuaternion) -> SplitQuaternion) -> Matrix4 {
    let cols: [[f64; 4]; 4] = std::array::from_fn(|c| iota(f(basis_quaternion(c))));
    SquareMatrix::from_columns(cols)
}

/// Left multiplication `q ↦ a q`.
pub fn left_mul_matrix(a: SplitQuaternion) -> Matrix4 {
    linear_map_matrix(|q| a * q)
}

/// Right multiplication `q ↦ q a`.
pub fn right_mul_matrix(a: SplitQuaternion) -> Matrix4 {
    linear_map_matrix(|q| q * a)
}

/// Orthonormal adapted basis `(1, u, w, k)` as columns, with `u` the unit
/// axis of `a` and `w = u2 i - u1 j` completing the chromatic plane. A
/// scalar `a` has no axis and gets `u = i`.
pub fn adapted_basis(axis: Option<[f64; 2]>) -> Matrix4 {
    let [u1, u2] = axis.unwrap_or([1.0, 0.0]);
    SquareMatrix::from_columns([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, u1, u2, 0.0],
        [0.0, u2, -u1, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Hyperbolic rotation `[[cosh ϑ, sinh ϑ], [sinh ϑ, cosh ϑ]]` placed in the
/// upper-left (`upper = true`) or lower-right 2×2 block of `Id₄`.
pub fn hyperbolic_block(theta: f64, upper: bool) -> Matrix4 {
    let mut m = Matrix4::identity();
    let o = if upper { 0 } else { 2 };
    let (ch, sh) = (theta.cosh(), theta.sinh());
    m[(o, o)] = ch;
    m[(o, o + 1)] = sh;
    m[(o + 1, o)] = sh;
    m[(o + 1, o + 1)] = ch;
    m
}

fn unit_polar(a: S0Element) -> Result<crate::splitq::PolarForm> {
    let polar = a.polar()?;
    if (polar.n - 1.0).abs() > 1e-9 {
        return Err(Error::NotUnit(polar.n));
    }
    Ok(polar)
}

/// Matrix of `q ↦ a q a` in the adapted basis of a unit time-like `a`.
/// Equals `blockdiag(H_ϑ, Id₂)` with `ϑ` twice the polar angle of `a`: a
/// boost of the `(1, u)` plane that fixes `w` and `k`.
pub fn sandwich_matrix_r4(a: S0Element) -> Result<Matrix4> {
    let polar = unit_polar(a)?;
    let a = a.to_full();
    let p = adapted_basis(polar.axis);
    Ok(p.transpose() * linear_map_matrix(|q| a * q * a) * p)
}

/// Matrix of the conjugation `q ↦ a* q a` in the same adapted basis; equals
/// `blockdiag(Id₂, H_ϑ)`, a boost of the `(w, k)` plane.
pub fn conjugate_sandwich_matrix_r4(a: S0Element) -> Result<Matrix4> {
    let polar = unit_polar(a)?;
    let a = a.to_full();
    let a_conj = a.conjugate();
    let p = adapted_basis(polar.axis);
    Ok(p.transpose() * linear_map_matrix(|q| a_conj * q * a) * p)
}
