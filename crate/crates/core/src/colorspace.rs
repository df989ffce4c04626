//! Linear RGB, the HCV hexcone and its hue-remapped variants, and the
//! embedding of HCV colours into the positivity cone of `S0`.

use std::f64::consts::{FRAC_PI_3, PI, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::jordan::Effect;
use crate::splitq::S0Element;

/// Relative margin on `C / V` below which an illuminant still counts as
/// strictly time-like.
pub const ILLUMINANT_CONE_MARGIN: f64 = 1e-9;
/// Minimum illuminant value.
pub const ILLUMINANT_MIN_VALUE: f64 = 1e-9;
/// Relative slack when mapping cone points back to HCV.
pub const CONE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RgbPixel {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl RgbPixel {
    pub const fn new(r: f64, g: f64, b: f64) -> Self {
        Self { r, g, b }
    }

    pub const fn gray(v: f64) -> Self {
        Self::new(v, v, v)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.r, self.g, self.b]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        Self::new(f(self.r), f(self.g), f(self.b))
    }

    pub fn zip_with(self, o: Self, f: impl Fn(f64, f64) -> f64) -> Self {
        Self::new(f(self.r, o.r), f(self.g, o.g), f(self.b, o.b))
    }

    pub fn max_channel(self) -> f64 {
        self.r.max(self.g).max(self.b)
    }

    pub fn min_channel(self) -> f64 {
        self.r.min(self.g).min(self.b)
    }

    pub fn is_finite(self) -> bool {
        self.r.is_finite() && self.g.is_finite() && self.b.is_finite()
    }

    pub fn max_abs_diff(self, o: Self) -> f64 {
        (self.r - o.r)
            .abs()
            .max((self.g - o.g).abs())
            .max((self.b - o.b).abs())
    }
}

/// Hue (radians, `[0, 2π)`), chroma and value in the HCV hexcone.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HcvPixel {
    pub h: f64,
    pub c: f64,
    pub v: f64,
}

impl HcvPixel {
    pub const fn new(h: f64, c: f64, v: f64) -> Self {
        Self { h, c, v }
    }
}

/// Hexcone decomposition: `V = max`, `C = max - min`, hexagonal hue with
/// red at 0. Achromatic pixels get `h = 0`.
pub fn rgb_to_hcv(p: RgbPixel) -> HcvPixel {
    let max = p.max_channel();
    let min = p.min_channel();
    let c = max - min;
    if c <= 0.0 {
        return HcvPixel::new(0.0, 0.0, max);
    }
    let sector = if max == p.r {
        ((p.g - p.b) / c).rem_euclid(6.0)
    } else if max == p.g {
        (p.b - p.r) / c + 2.0
    } else {
        (p.r - p.g) / c + 4.0
    };
    let h = (sector * FRAC_PI_3).rem_euclid(TAU);
    HcvPixel::new(h, c, max)
}

pub fn hcv_to_rgb(p: HcvPixel) -> RgbPixel {
    let c = p.c;
    let sector = p.h.rem_euclid(TAU) / FRAC_PI_3;
    let x = c * (1.0 - ((sector % 2.0) - 1.0).abs());
    let m = p.v - c;
    let (r, g, b) = match sector as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    RgbPixel::new(r + m, g + m, b + m)
}

/// Piece `y = y0 + b t + c t²` with `t = x - x0`, valid on `[x0, x1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticPiece {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticPiece {
    /// Quadratic through three points, in Newton form about the first.
    pub fn through(p0: (f64, f64), p1: (f64, f64), p2: (f64, f64)) -> Self {
        let d01 = (p1.1 - p0.1) / (p1.0 - p0.0);
        let d12 = (p2.1 - p1.1) / (p2.0 - p1.0);
        let c = (d12 - d01) / (p2.0 - p0.0);
        Self {
            x0: p0.0,
            x1: p2.0,
            y0: p0.1,
            b: d01 - c * (p1.0 - p0.0),
            c,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let t = x - self.x0;
        self.y0 + t * (self.b + self.c * t)
    }

    pub fn slope(&self, x: f64) -> f64 {
        self.b + 2.0 * self.c * (x - self.x0)
    }

    pub fn y1(&self) -> f64 {
        self.eval(self.x1)
    }

    /// Root of `eval(x) = y` on the increasing branch, in the form that
    /// avoids cancellation for `b > 0`.
    pub fn solve(&self, y: f64) -> f64 {
        let d = y - self.y0;
        let disc = (self.b * self.b + 4.0 * self.c * d).max(0.0);
        self.x0 + 2.0 * d / (self.b + disc.sqrt())
    }
}

/// Five anchors of the piecewise remap, red fixed and green opposite red.
pub const F2_ANCHORS: [(f64, f64); 5] = [
    (0.0, 0.0),
    (FRAC_PI_3, 2.0 * FRAC_PI_3),
    (2.0 * FRAC_PI_3, PI),
    (4.0 * FRAC_PI_3, 5.0 * FRAC_PI_3),
    (TAU, TAU),
];

/// Three anchors interpolated by the parabola `f1`.
pub const F1_ANCHORS: [(f64, f64); 3] = [(0.0, 0.0), (2.0 * FRAC_PI_3, PI), (TAU, TAU)];

fn f2_pieces() -> [QuadraticPiece; 2] {
    let a = F2_ANCHORS;
    [
        QuadraticPiece::through(a[0], a[1], a[2]),
        QuadraticPiece::through(a[2], a[3], a[4]),
    ]
}

/// Reconfiguration of the hue circle. The remapped hue of an HCV hue `H`
/// is `f⁻¹(H)`; converting back applies `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HueRemap {
    Identity,
    /// Parabola `(7x - 3x²/(2π)) / 4`.
    F1,
    /// Two Lagrange quadratics through [`F2_ANCHORS`].
    F2([QuadraticPiece; 2]),
}

impl HueRemap {
    pub fn f2() -> Self {
        HueRemap::F2(f2_pieces())
    }

    pub fn all() -> [HueRemap; 3] {
        [HueRemap::Identity, HueRemap::F1, HueRemap::f2()]
    }

    pub fn name(&self) -> &'static str {
        match self {
            HueRemap::Identity => "hcv",
            HueRemap::F1 => "h1cv",
            HueRemap::F2(_) => "h2cv",
        }
    }

    pub fn forward(&self, x: f64) -> Result<f64> {
        let x = reduce_hue(x)?;
        Ok(match self {
            HueRemap::Identity => x,
            HueRemap::F1 => 0.25 * (7.0 * x - 3.0 / TAU * x * x),
            HueRemap::F2(pieces) => {
                let piece = if x <= pieces[0].x1 { &pieces[0] } else { &pieces[1] };
                piece.eval(x)
            }
        })
    }

    pub fn inverse(&self, y: f64) -> Result<f64> {
        let y = reduce_hue(y)?;
        Ok(match self {
            HueRemap::Identity => y,
            // π (7 - √(49 - 24y/π)) / 3, rationalised.
            HueRemap::F1 => 8.0 * y / (7.0 + (49.0 - 24.0 * y / PI).max(0.0).sqrt()),
            HueRemap::F2(pieces) => {
                let piece = if y <= pieces[0].y1() { &pieces[0] } else { &pieces[1] };
                piece.solve(y)
            }
        })
    }

    /// Hue `H ↦ f⁻¹(H)` applied to an HCV pixel.
    pub fn to_remapped(&self, p: HcvPixel) -> Result<HcvPixel> {
        Ok(HcvPixel::new(self.inverse(p.h)?, p.c, p.v))
    }

    pub fn from_remapped(&self, p: HcvPixel) -> Result<HcvPixel> {
        Ok(HcvPixel::new(self.forward(p.h)?, p.c, p.v))
    }
}

impl fmt::Display for HueRemap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HueRemap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hcv" | "identity" => Ok(HueRemap::Identity),
            "h1cv" | "f1" => Ok(HueRemap::F1),
            "h2cv" | "f2" => Ok(HueRemap::f2()),
            _ => Err(Error::UnknownCat(s.to_string())),
        }
    }
}

/// Keeps `[0, 2π]` as is and wraps anything else periodically.
fn reduce_hue(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::DomainError(x));
    }
    if (0.0..=TAU).contains(&x) {
        Ok(x)
    } else {
        Ok(x.rem_euclid(TAU))
    }
}

/// `q = V + C cos H i + C sin H j`.
pub fn hcv_to_s0(p: HcvPixel) -> S0Element {
    let (s, c) = p.h.sin_cos();
    S0Element::raw(p.v, p.c * c, p.c * s)
}

/// Inverse of [`hcv_to_s0`] on the positivity cone.
pub fn s0_to_hcv(q: S0Element) -> Result<HcvPixel> {
    let v = q.q0();
    let c = q.vector_norm();
    if v < 0.0 || c > v * (1.0 + CONE_SLACK) {
        return Err(Error::OutsideCone { q0: v, chroma: c });
    }
    let h = if c > 0.0 {
        q.q2().atan2(q.q1()).rem_euclid(TAU)
    } else {
        0.0
    };
    Ok(HcvPixel::new(h, c.min(v), v))
}

/// Effect `(V, C cos H, C sin H)` of an illuminant; it must be strictly
/// inside the cone so that `p_e^{-1/2}` exists.
pub fn effect_from_illuminant(l: HcvPixel) -> Result<Effect> {
    if !(l.v > ILLUMINANT_MIN_VALUE) {
        return Err(Error::DegenerateIlluminant(format!(
            "value {} is not positive",
            l.v
        )));
    }
    if !(l.c < l.v * (1.0 - ILLUMINANT_CONE_MARGIN)) {
        return Err(Error::DegenerateIlluminant(format!(
            "chroma {} reaches value {} (light-like effect)",
            l.c, l.v
        )));
    }
    let (s, c) = l.h.sin_cos();
    Effect::new(l.v, l.c * c, l.c * s)
}

pub fn srgb_to_linear(x: f64) -> f64 {
    if x <= 0.04045 {
        x / 12.92
    } else {
        ((x + 0.055) / 1.055).powf(2.4)
    }
}

pub fn linear_to_srgb(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    if x <= 0.0031308 {
        x * 12.92
    } else {
        1.055 * x.powf(1.0 / 2.4) - 0.055
    }
}

pub fn srgb_decode(rgb: [u8; 3]) -> RgbPixel {
    RgbPixel::new(
        srgb_to_linear(f64::from(rgb[0]) / 255.0),
        srgb_to_linear(f64::from(rgb[1]) / 255.0),
        srgb_to_linear(f64::from(rgb[2]) / 255.0),
    )
}

pub fn srgb_encode(p: RgbPixel) -> [u8; 3] {
    let enc = |x: f64| (linear_to_srgb(x) * 255.0).round() as u8;
    [enc(p.r), enc(p.g), enc(p.b)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hcv_anchors() {
        assert_eq!(rgb_to_hcv(RgbPixel::new(1.0, 0.0, 0.0)), HcvPixel::new(0.0, 1.0, 1.0));
        assert_eq!(rgb_to_hcv(RgbPixel::gray(0.5)), HcvPixel::new(0.0, 0.0, 0.5));
        let blue = rgb_to_hcv(RgbPixel::new(0.0, 0.0, 1.0));
        assert!((blue.h - 4.0 * PI / 3.0).abs() < 1e-15);
        assert_eq!((blue.c, blue.v), (1.0, 1.0));
        let green = rgb_to_hcv(RgbPixel::new(0.0, 1.0, 0.0));
        assert!((green.h - 2.0 * PI / 3.0).abs() < 1e-15);
        let magenta = rgb_to_hcv(RgbPixel::new(1.0, 0.0, 1.0));
        assert!((magenta.h - 5.0 * PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn hcv_round_trip() {
        for p in [
            RgbPixel::new(0.2, 0.7, 0.4),
            RgbPixel::new(0.9, 0.1, 0.5),
            RgbPixel::new(0.3, 0.3, 0.8),
            RgbPixel::new(1.0, 0.99, 0.0),
            RgbPixel::new(0.6, 0.2, 0.2),
        ] {
            let back = hcv_to_rgb(rgb_to_hcv(p));
            assert!(back.max_abs_diff(p) < 1e-12, "{p:?} -> {back:?}");
        }
    }

    #[test]
    fn f1_examples() {
        let f = HueRemap::F1;
        assert_eq!(f.forward(0.0).unwrap(), 0.0);
        assert!((f.forward(TAU).unwrap() - TAU).abs() < 1e-12);
        assert!((f.forward(2.0 * PI / 3.0).unwrap() - PI).abs() < 1e-12);
        assert!((f.forward(PI).unwrap() - 11.0 * PI / 8.0).abs() < 1e-12);
        assert!((f.inverse(PI).unwrap() - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((f.inverse(TAU).unwrap() - TAU).abs() < 1e-12);
        assert!((f.inverse(11.0 * PI / 8.0).unwrap() - PI).abs() < 1e-12);
    }

    #[test]
    fn f1_inverse_matches_textbook_root() {
        for k in 0..=100 {
            let y = TAU * f64::from(k) / 100.0;
            let textbook = PI * (7.0 - (49.0 - 24.0 * y / PI).sqrt()) / 3.0;
            assert!((HueRemap::F1.inverse(y).unwrap() - textbook).abs() < 1e-12);
        }
    }

    #[test]
    fn f2_pieces_and_anchors() {
        let [a, b] = f2_pieces();
        // y = 5x/2 - 3x²/(2π) on the first piece.
        assert!((a.b - 2.5).abs() < 1e-15);
        assert!((a.c + 3.0 / TAU).abs() < 1e-15);
        assert!((b.b - 1.25).abs() < 1e-15);
        assert!((b.c + 3.0 / (8.0 * PI)).abs() < 1e-15);
        let f = HueRemap::f2();
        for (x, y) in F2_ANCHORS {
            assert!((f.forward(x).unwrap() - y).abs() < 1e-12);
            assert!((f.inverse(y).unwrap() - x).abs() < 1e-12);
        }
    }

    #[test]
    fn periodic_extension_and_domain() {
        let f = HueRemap::F1;
        let a = f.forward(0.5).unwrap();
        assert!((f.forward(0.5 + TAU).unwrap() - a).abs() < 1e-12);
        assert!((f.forward(0.5 - TAU).unwrap() - a).abs() < 1e-12);
        assert!(matches!(f.forward(f64::NAN), Err(Error::DomainError(_))));
        assert!(matches!(HueRemap::f2().inverse(f64::INFINITY), Err(Error::DomainError(_))));
    }

    #[test]
    fn s0_embedding() {
        let q = hcv_to_s0(HcvPixel::new(1.234, 0.0, 0.7));
        assert_eq!(q, S0Element::new(0.7, 0.0, 0.0).unwrap());
        let q = hcv_to_s0(HcvPixel::new(0.0, 0.3, 0.8));
        assert_eq!(q, S0Element::new(0.8, 0.3, 0.0).unwrap());
        let q = hcv_to_s0(HcvPixel::new(PI / 2.0, 0.3, 0.8));
        assert!(q.max_abs_diff(S0Element::new(0.8, 0.0, 0.3).unwrap()) < 1e-16);

        assert_eq!(
            s0_to_hcv(S0Element::new(0.7, 0.0, 0.0).unwrap()).unwrap(),
            HcvPixel::new(0.0, 0.0, 0.7)
        );
        assert_eq!(
            s0_to_hcv(S0Element::new(0.8, 0.3, 0.0).unwrap()).unwrap(),
            HcvPixel::new(0.0, 0.3, 0.8)
        );
        assert!(matches!(
            s0_to_hcv(S0Element::new(0.5, 0.6, 0.0).unwrap()),
            Err(Error::OutsideCone { .. })
        ));
        assert!(s0_to_hcv(S0Element::new(-0.1, 0.0, 0.0).unwrap()).is_err());
    }

    #[test]
    fn illuminant_effects() {
        let e = effect_from_illuminant(HcvPixel::new(2.0, 0.0, 1.0)).unwrap();
        assert_eq!((e.e0(), e.e1(), e.e2()), (1.0, 0.0, 0.0));
        let e = effect_from_illuminant(HcvPixel::new(0.0, 0.2, 0.9)).unwrap();
        assert_eq!((e.e0(), e.e1(), e.e2()), (0.9, 0.2, 0.0));
        assert!(matches!(
            effect_from_illuminant(HcvPixel::new(0.0, 0.9, 0.9)),
            Err(Error::DegenerateIlluminant(_))
        ));
        assert!(matches!(
            effect_from_illuminant(HcvPixel::new(0.0, 0.0, 0.0)),
            Err(Error::DegenerateIlluminant(_))
        ));
    }

    #[test]
    fn srgb_transfer() {
        assert_eq!(srgb_decode([0, 0, 0]), RgbPixel::gray(0.0));
        assert_eq!(srgb_decode([255, 255, 255]), RgbPixel::gray(1.0));
        let mid = srgb_decode([128, 128, 128]);
        // ((128/255 + 0.055) / 1.055)^2.4
        assert!((mid.r - 0.215_860_500_113_899_26).abs() < 1e-12);
        assert_eq!(srgb_encode(mid), [128, 128, 128]);
        for v in 0..=255u8 {
            assert_eq!(srgb_encode(srgb_decode([v, v, v])), [v, v, v]);
        }
        assert_eq!(srgb_encode(RgbPixel::new(1.5, -0.2, 0.0)), [255, 0, 0]);
    }
}
