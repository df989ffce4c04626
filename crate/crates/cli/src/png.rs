//! PNG ↔ linear RGB.

use std::path::Path;

use anyhow::{bail, Context, Result};
use image::{DynamicImage, ImageBuffer, Rgb};
use splitcat_core::colorspace::{linear_to_srgb, srgb_to_linear};
use splitcat_core::{Image, RgbPixel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BitDepth {
    Eight,
    Sixteen,
}

impl BitDepth {
    fn max_code(self) -> f64 {
        match self {
            BitDepth::Eight => 255.0,
            BitDepth::Sixteen => 65535.0,
        }
    }

    pub fn from_bits(bits: u8) -> Result<Self> {
        match bits {
            8 => Ok(BitDepth::Eight),
            16 => Ok(BitDepth::Sixteen),
            _ => bail!("unsupported bit depth {bits}; use 8 or 16"),
        }
    }
}

fn decode(code: f64, max: f64, srgb: bool) -> f64 {
    let v = code / max;
    if srgb {
        srgb_to_linear(v)
    } else {
        v
    }
}

fn encode(v: f64, max: f64, srgb: bool) -> f64 {
    let v = if srgb { linear_to_srgb(v) } else { v.clamp(0.0, 1.0) };
    (v * max).round()
}

/// Reads an 8- or 16-bit PNG; alpha is dropped.
pub fn read(path: &Path, srgb: bool) -> Result<(Image, BitDepth)> {
    let dynamic = image::open(path).with_context(|| format!("reading {}", path.display()))?;
    let (width, height) = (dynamic.width() as usize, dynamic.height() as usize);
    let (depth, codes): (BitDepth, Vec<f64>) = match dynamic {
        DynamicImage::ImageLuma8(_) | DynamicImage::ImageLumaA8(_) | DynamicImage::ImageRgb8(_) | DynamicImage::ImageRgba8(_) => {
            (BitDepth::Eight, dynamic.into_rgb8().into_raw().into_iter().map(f64::from).collect())
        }
        DynamicImage::ImageLuma16(_) | DynamicImage::ImageLumaA16(_) | DynamicImage::ImageRgb16(_) | DynamicImage::ImageRgba16(_) => {
            (BitDepth::Sixteen, dynamic.into_rgb16().into_raw().into_iter().map(f64::from).collect())
        }
        other => bail!("{}: unsupported pixel format {:?}", path.display(), other.color()),
    };
    let max = depth.max_code();
    let pixels = codes
        .chunks_exact(3)
        .map(|c| RgbPixel::new(decode(c[0], max, srgb), decode(c[1], max, srgb), decode(c[2], max, srgb)))
        .collect();
    let img = Image::new(width, height, pixels).with_context(|| format!("decoding {}", path.display()))?;
    Ok((img, depth))
}

/// Writes an RGB PNG at the given depth; values are clamped to `[0, 1]`.
pub fn write(path: &Path, img: &Image, depth: BitDepth, srgb: bool) -> Result<()> {
    let (w, h) = (u32::try_from(img.width())?, u32::try_from(img.height())?);
    let max = depth.max_code();
    let codes = img
        .pixels()
        .iter()
        .flat_map(|p| p.to_array())
        .map(|v| encode(v, max, srgb));
    let result = match depth {
        BitDepth::Eight => {
            let raw: Vec<u8> = codes.map(|c| c as u8).collect();
            ImageBuffer::<Rgb<u8>, _>::from_raw(w, h, raw)
                .context("buffer size")?
                .save(path)
        }
        BitDepth::Sixteen => {
            let raw: Vec<u16> = codes.map(|c| c as u16).collect();
            ImageBuffer::<Rgb<u16>, _>::from_raw(w, h, raw)
                .context("buffer size")?
                .save(path)
        }
    };
    result.with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip_at_both_depths() {
        for srgb in [false, true] {
            for depth in [BitDepth::Eight, BitDepth::Sixteen] {
                let max = depth.max_code();
                for code in [0.0, 1.0, 17.0, 128.0, 254.0, max] {
                    assert_eq!(encode(decode(code, max, srgb), max, srgb), code);
                }
            }
        }
    }

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let pixels = (0..12)
            .map(|i| RgbPixel::new(f64::from(i) / 11.0, 0.5, 1.0 - f64::from(i) / 11.0))
            .collect();
        let img = Image::new(4, 3, pixels).unwrap();
        for depth in [BitDepth::Eight, BitDepth::Sixteen] {
            let path = dir.path().join("x.png");
            write(&path, &img, depth, true).unwrap();
            let (back, d) = read(&path, true).unwrap();
            assert_eq!(d, depth);
            let step = if depth == BitDepth::Eight { 0.01 } else { 1e-4 };
            for (a, b) in back.pixels().iter().zip(img.pixels()) {
                assert!(a.max_abs_diff(*b) < step);
            }
        }
    }
}
