//! Synthetic checker images for evaluation without a camera dataset.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cat::Image;
use crate::colorspace::RgbPixel;
use crate::error::Result;
use crate::eval::{BenchmarkChecker, CheckerLayout};

/// Geometry of a rendered chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartGeometry {
    pub patch: usize,
    pub gap: usize,
    pub margin: usize,
    /// Pixels trimmed from each patch edge when building the layout.
    pub inset: usize,
    /// Linear gray level of the chart surround.
    pub background: f64,
}

impl Default for ChartGeometry {
    fn default() -> Self {
        Self {
            patch: 24,
            gap: 6,
            margin: 8,
            inset: 4,
            background: 0.18,
        }
    }
}

impl ChartGeometry {
    pub fn width(&self) -> usize {
        2 * self.margin + 6 * self.patch + 5 * self.gap
    }

    pub fn height(&self) -> usize {
        2 * self.margin + 4 * self.patch + 3 * self.gap
    }

    pub fn layout(&self) -> Result<CheckerLayout> {
        CheckerLayout::grid((self.margin, self.margin), self.patch, self.gap, self.inset)
    }
}

/// Renders the benchmark patches lit by a diagonal `cast`
/// (`pixel = reference ⊙ cast`). Returns the image and its layout.
pub fn render_chart(
    reference: &BenchmarkChecker,
    cast: RgbPixel,
    geometry: &ChartGeometry,
) -> Result<(Image, CheckerLayout)> {
    let mut img = Image::filled(
        geometry.width(),
        geometry.height(),
        RgbPixel::gray(geometry.background).zip_with(cast, |a, b| a * b),
    )?;
    let step = geometry.patch + geometry.gap;
    for (i, &colour) in reference.patches().iter().enumerate() {
        let x0 = geometry.margin + (i % 6) * step;
        let y0 = geometry.margin + (i / 6) * step;
        let lit = colour.zip_with(cast, |a, b| a * b);
        for y in y0..y0 + geometry.patch {
            for x in x0..x0 + geometry.patch {
                img.set(x, y, lit);
            }
        }
    }
    Ok((img, geometry.layout()?))
}

/// Adds uniform noise in `[-amplitude, amplitude]` to every channel.
pub fn add_noise(img: &Image, amplitude: f64, seed: u64) -> Image {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = img.clone();
    if amplitude > 0.0 {
        for p in out.pixels_mut() {
            p.r += rng.random_range(-amplitude..=amplitude);
            p.g += rng.random_range(-amplitude..=amplitude);
            p.b += rng.random_range(-amplitude..=amplitude);
        }
    }
    out
}

/// Clamps to `[0, 1]` and rounds to `bits`-bit code values, as storing the
/// image in an integer file would.
pub fn quantize(img: &Image, bits: u32) -> Image {
    let levels = f64::from((1u32 << bits) - 1);
    img.map_pixels(|p| p.map(|c| (c.clamp(0.0, 1.0) * levels).round() / levels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::extract_patches;

    fn checker() -> BenchmarkChecker {
        let text: String = (1..=24)
            .map(|i| format!("{i} {} 0.5 {}\n", f64::from(i) / 30.0, 1.0 - f64::from(i) / 30.0))
            .collect();
        BenchmarkChecker::parse(&text).unwrap()
    }

    #[test]
    fn rendered_patches_are_recovered() {
        let reference = checker();
        let cast = RgbPixel::new(0.9, 0.7, 0.5);
        let (img, layout) = render_chart(&reference, cast, &ChartGeometry::default()).unwrap();
        let patches = extract_patches(&img, &layout).unwrap();
        for (p, r) in patches.iter().zip(reference.patches()) {
            assert!(p.max_abs_diff(r.zip_with(cast, |a, b| a * b)) < 1e-12);
        }
    }

    #[test]
    fn noise_is_seeded() {
        let img = Image::filled(4, 4, RgbPixel::gray(0.5)).unwrap();
        assert_eq!(add_noise(&img, 0.01, 7), add_noise(&img, 0.01, 7));
        assert_ne!(add_noise(&img, 0.01, 7), add_noise(&img, 0.01, 8));
        assert_eq!(add_noise(&img, 0.0, 7), img);
    }

    #[test]
    fn quantize_levels() {
        let img = Image::filled(1, 1, RgbPixel::new(0.5, 1.2, -0.1)).unwrap();
        let q = quantize(&img, 8).get(0, 0);
        assert_eq!(q, RgbPixel::new(128.0 / 255.0, 1.0, 0.0));
    }
}
