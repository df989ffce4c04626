//! Fixtures shared by the benchmarks.

use splitcat_core::selftest::{random_effect, random_state, random_time_like, rng};
use splitcat_core::synth::{quantize, render_chart, ChartGeometry};
use splitcat_core::{BenchmarkChecker, ChromaticState, CheckerLayout, Effect, Image, RgbPixel, S0Element};

pub const SEED: u64 = 7;

pub fn time_like_batch(n: usize) -> Vec<S0Element> {
    let mut r = rng(SEED);
    (0..n).map(|_| random_time_like(&mut r)).collect()
}

pub fn measurement_batch(n: usize) -> Vec<(Effect, ChromaticState)> {
    let mut r = rng(SEED);
    (0..n).map(|_| (random_effect(&mut r, 0.95), random_state(&mut r))).collect()
}

/// Benchmark checker with a smooth spread of colours.
pub fn checker() -> BenchmarkChecker {
    let patches: Vec<RgbPixel> = (0..24)
        .map(|i| {
            let t = f64::from(i) / 23.0;
            RgbPixel::new(0.05 + 0.9 * t, 0.5 + 0.4 * (6.0 * t).sin(), 0.95 - 0.9 * t)
        })
        .collect();
    BenchmarkChecker::from_patches(&patches).expect("24 finite patches")
}

/// 16-bit synthetic chart under a warm cast, with its layout.
pub fn cast_chart() -> (Image, CheckerLayout) {
    let (img, layout) = render_chart(&checker(), RgbPixel::new(0.95, 0.78, 0.52), &ChartGeometry::default())
        .expect("valid geometry");
    (quantize(&img, 16), layout)
}

/// Flat-field image of the given size filled with a ramp.
pub fn ramp(width: usize, height: usize) -> Image {
    let pixels = (0..width * height)
        .map(|i| {
            let t = i as f64 / (width * height) as f64;
            RgbPixel::new(t, 1.0 - t, 0.5 * t + 0.25)
        })
        .collect();
    Image::new(width, height, pixels).expect("matching buffer")
}
