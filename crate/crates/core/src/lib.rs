//! Split-quaternion colour measurement and the split-CAT white balance.
//!
//! * [`splitq`]: split-quaternion algebra, polar form and square roots.
//! * [`jordan`]: matrix, spin-factor and Minkowski pictures of the same
//!   Jordan algebra, used as independent oracles.
//! * [`colorspace`]: RGB ↔ HCV, hue remaps and the cone embedding.
//! * [`cat`]: split-CAT and von Kries adaptation.
//! * [`eval`]: colour-checker scoring with CIE94 and CIEDE2000.
//! * [`synth`], [`selftest`]: synthetic charts and seeded self-checks.

pub mod cat;
pub mod colorspace;
pub mod error;
pub mod eval;
pub mod jordan;
pub mod selftest;
pub mod splitq;
pub mod synth;

pub use cat::{clip_normalize, split_cat, von_kries, CatKind, Illuminant, Image, SplitCat};
pub use colorspace::{HcvPixel, HueRemap, RgbPixel};
pub use error::{Error, Result};
pub use eval::{BenchmarkChecker, CheckerLayout, EvalReport, LabColor, MetricKind};
pub use jordan::{ChromaticState, Effect, Matrix2, Matrix3, Matrix4, SpinVector};
pub use splitq::{Classification, PolarForm, S0Element, SplitQuaternion};
