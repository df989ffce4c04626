//! Chromatic adaptation transforms.
//!
//! The split-CAT embeds each pixel in the `S0` cone and applies the boost
//! `q ↦ p_e^{-1/2} q p_e^{-1/2}`, where `p_e` is the effect of the
//! illuminant. The illuminant itself is sent to `1`, i.e. to white with
//! unit value. The von Kries baseline divides each RGB channel by the
//! illuminant. Both finish with a global clip normalisation.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::colorspace::{
    effect_from_illuminant, hcv_to_rgb, hcv_to_s0, rgb_to_hcv, s0_to_hcv, HcvPixel, HueRemap,
    RgbPixel,
};
use crate::error::{Error, Result};
use crate::jordan::Effect;
use crate::splitq::S0Element;

/// Channels of a von Kries illuminant must exceed this value.
pub const VON_KRIES_MIN_CHANNEL: f64 = 1e-6;

/// Row-major linear RGB raster.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<RgbPixel>,
}

impl Image {
    pub fn new(width: usize, height: usize, pixels: Vec<RgbPixel>) -> Result<Self> {
        if width == 0 || height == 0 || pixels.len() != width * height {
            return Err(Error::DimensionMismatch {
                width,
                height,
                got: pixels.len(),
            });
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, p: RgbPixel) -> Result<Self> {
        Self::new(width, height, vec![p; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[RgbPixel] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [RgbPixel] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<RgbPixel> {
        self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> RgbPixel {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, p: RgbPixel) {
        self.pixels[y * self.width + x] = p;
    }

    /// Largest channel value over the whole image.
    pub fn max_value(&self) -> f64 {
        self.pixels
            .iter()
            .map(|p| p.max_channel())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn map_pixels(&self, f: impl Fn(RgbPixel) -> RgbPixel + Sync) -> Self {
        Self {
            width: self.width,
            height: self.height,
            pixels: self.pixels.par_iter().map(|&p| f(p)).collect(),
        }
    }

    fn try_map_pixels(&self, f: impl Fn(RgbPixel) -> Result<RgbPixel> + Sync) -> Result<Self> {
        let pixels = self
            .pixels
            .par_iter()
            .map(|&p| f(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            width: self.width,
            height: self.height,
            pixels,
        })
    }
}

/// Illuminant estimate in either representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Illuminant {
    Rgb(RgbPixel),
    Hcv(HcvPixel),
}

impl Illuminant {
    pub fn to_rgb(self) -> RgbPixel {
        match self {
            Illuminant::Rgb(p) => p,
            Illuminant::Hcv(p) => hcv_to_rgb(p),
        }
    }

    pub fn to_hcv(self) -> HcvPixel {
        match self {
            Illuminant::Rgb(p) => rgb_to_hcv(p),
            Illuminant::Hcv(p) => p,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatKind {
    VonKries,
    Split(HueRemap),
}

impl CatKind {
    pub fn all() -> [CatKind; 4] {
        [
            CatKind::VonKries,
            CatKind::Split(HueRemap::Identity),
            CatKind::Split(HueRemap::F1),
            CatKind::Split(HueRemap::f2()),
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            CatKind::VonKries => "vonkries",
            CatKind::Split(HueRemap::Identity) => "split-hcv",
            CatKind::Split(HueRemap::F1) => "split-h1cv",
            CatKind::Split(HueRemap::F2(_)) => "split-h2cv",
        }
    }

    /// White-balances `img` for the given illuminant.
    pub fn apply(&self, img: &Image, illuminant: Illuminant) -> Result<Image> {
        match self {
            CatKind::VonKries => von_kries(img, illuminant.to_rgb()),
            CatKind::Split(remap) => split_cat(img, illuminant.to_hcv(), *remap),
        }
    }
}

impl fmt::Display for CatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vonkries" | "von-kries" => Ok(CatKind::VonKries),
            "split-hcv" => Ok(CatKind::Split(HueRemap::Identity)),
            "split-h1cv" => Ok(CatKind::Split(HueRemap::F1)),
            "split-h2cv" => Ok(CatKind::Split(HueRemap::f2())),
            _ => Err(Error::UnknownCat(s.to_string())),
        }
    }
}

/// A split-CAT prepared for one illuminant.
#[derive(Debug, Clone, Copy)]
pub struct SplitCat {
    remap: HueRemap,
    effect: Effect,
    inv_sqrt: S0Element,
}

impl SplitCat {
    /// The illuminant hue is remapped like every pixel before the effect is
    /// built.
    pub fn new(illuminant: HcvPixel, remap: HueRemap) -> Result<Self> {
        let effect = effect_from_illuminant(remap.to_remapped(illuminant)?)?;
        let inv_sqrt = effect.to_s0().inv_sqrt()?;
        Ok(Self {
            remap,
            effect,
            inv_sqrt,
        })
    }

    pub fn effect(&self) -> Effect {
        self.effect
    }

    pub fn remap(&self) -> HueRemap {
        self.remap
    }

    /// `p_e^{-1/2}`.
    pub fn inv_sqrt(&self) -> S0Element {
        self.inv_sqrt
    }

    /// Adapts one HCV colour; the result is not clipped.
    pub fn adapt_hcv(&self, p: HcvPixel) -> Result<HcvPixel> {
        if p.v == 0.0 && p.c == 0.0 {
            return Ok(p);
        }
        let q = hcv_to_s0(self.remap.to_remapped(p)?);
        let adapted = s0_to_hcv(S0Element::sandwich(self.inv_sqrt, q))?;
        self.remap.from_remapped(adapted)
    }

    pub fn adapt_pixel(&self, p: RgbPixel) -> Result<RgbPixel> {
        Ok(hcv_to_rgb(self.adapt_hcv(rgb_to_hcv(p))?))
    }

    /// Per-pixel adaptation without the final clip normalisation.
    pub fn apply_unclipped(&self, img: &Image) -> Result<Image> {
        img.try_map_pixels(|p| self.adapt_pixel(p))
    }

    pub fn apply(&self, img: &Image) -> Result<Image> {
        Ok(clip_normalize(&self.apply_unclipped(img)?))
    }
}

/// Split-quaternion CAT in the HCV space selected by `remap`.
pub fn split_cat(img: &Image, illuminant: HcvPixel, remap: HueRemap) -> Result<Image> {
    SplitCat::new(illuminant, remap)?.apply(img)
}

/// Checks a von Kries illuminant.
pub fn von_kries_gains(illuminant: RgbPixel) -> Result<RgbPixel> {
    if !(illuminant.min_channel() > VON_KRIES_MIN_CHANNEL) {
        return Err(Error::DegenerateIlluminant(format!(
            "RGB illuminant ({}, {}, {}) has a channel <= {VON_KRIES_MIN_CHANNEL}",
            illuminant.r, illuminant.g, illuminant.b
        )));
    }
    Ok(illuminant.map(|c| 1.0 / c))
}

/// Channelwise division by the illuminant, then clip normalisation.
pub fn von_kries(img: &Image, illuminant: RgbPixel) -> Result<Image> {
    Ok(clip_normalize(&von_kries_unclipped(img, illuminant)?))
}

pub fn von_kries_unclipped(img: &Image, illuminant: RgbPixel) -> Result<Image> {
    von_kries_gains(illuminant)?;
    Ok(img.map_pixels(|p| p.zip_with(illuminant, |x, l| x / l)))
}

/// Divides the whole image by its largest channel value when that exceeds 1.
pub fn clip_normalize(img: &Image) -> Image {
    let max = img.max_value();
    if max > 1.0 {
        let inv = 1.0 / max;
        img.map_pixels(|p| p.map(|x| x * inv))
    } else {
        img.clone()
    }
}
