//! Colour-checker evaluation: patch extraction, CIELAB, ΔE metrics and the
//! per-dataset averaging protocol.
//!
//! Every corrected image is compared patch by patch with a benchmark
//! checker, the 24 per-patch differences are averaged, and the per-image
//! distances are averaged again over the dataset.

use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::cat::{CatKind, Illuminant, Image};
use crate::colorspace::{rgb_to_hcv, HcvPixel, RgbPixel};
use crate::error::{Error, Result};

pub const PATCH_COUNT: usize = 24;
/// 1-based index of the white patch on the standard chart.
pub const WHITE_PATCH: usize = 19;
/// Fraction dropped from each end of every channel before averaging.
pub const TRIM_FRACTION: f64 = 0.1;

/// Linear sRGB (D65) to CIE XYZ.
const RGB_TO_XYZ: [[f64; 3]; 3] = [
    [0.412_456_4, 0.357_576_1, 0.180_437_5],
    [0.212_672_9, 0.715_152_2, 0.072_175_0],
    [0.019_333_9, 0.119_192_0, 0.950_304_1],
];

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LabColor {
    pub l: f64,
    pub a: f64,
    pub b: f64,
}

impl LabColor {
    pub const fn new(l: f64, a: f64, b: f64) -> Self {
        Self { l, a, b }
    }

    pub fn chroma(&self) -> f64 {
        self.a.hypot(self.b)
    }
}

/// D65 reference white, taken as the image of RGB `(1, 1, 1)` so that the
/// neutral axis maps exactly onto `a = b = 0`.
fn reference_white() -> [f64; 3] {
    RGB_TO_XYZ.map(|row| row.iter().sum())
}

fn lab_f(t: f64) -> f64 {
    const DELTA: f64 = 6.0 / 29.0;
    if t > DELTA * DELTA * DELTA {
        t.cbrt()
    } else {
        t / (3.0 * DELTA * DELTA) + 4.0 / 29.0
    }
}

/// Linear sRGB → XYZ (D65) → CIELAB.
pub fn rgb_to_lab(p: RgbPixel) -> LabColor {
    let rgb = p.to_array();
    let xyz = RGB_TO_XYZ.map(|row| row.iter().zip(rgb.iter()).map(|(m, c)| m * c).sum::<f64>());
    let white = reference_white();
    let fx = lab_f(xyz[0] / white[0]);
    let fy = lab_f(xyz[1] / white[1]);
    let fz = lab_f(xyz[2] / white[2]);
    LabColor::new(116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricKind {
    Cie94,
    Ciede2000,
}

impl MetricKind {
    pub fn all() -> [MetricKind; 2] {
        [MetricKind::Cie94, MetricKind::Ciede2000]
    }

    pub fn name(&self) -> &'static str {
        match self {
            MetricKind::Cie94 => "cie94",
            MetricKind::Ciede2000 => "ciede2000",
        }
    }

    fn label(&self) -> &'static str {
        match self {
            MetricKind::Cie94 => "CIE 1994",
            MetricKind::Ciede2000 => "CIEDE 2000",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cie94" | "cie1994" => Ok(MetricKind::Cie94),
            "ciede2000" | "de2000" => Ok(MetricKind::Ciede2000),
            other => Err(Error::UnknownMetric(other.to_string())),
        }
    }
}

/// Colour difference of `sample` from `reference`.
pub fn delta_e(kind: MetricKind, reference: LabColor, sample: LabColor) -> f64 {
    match kind {
        MetricKind::Cie94 => cie94(reference, sample),
        MetricKind::Ciede2000 => ciede2000(reference, sample),
    }
}

/// CIE 1994 with graphic-arts weights (`kL = 1`, `K1 = 0.045`,
/// `K2 = 0.015`); chroma weights use the reference colour.
pub fn cie94(reference: LabColor, sample: LabColor) -> f64 {
    let c1 = reference.chroma();
    let c2 = sample.chroma();
    let dl = reference.l - sample.l;
    let dc = c1 - c2;
    let da = reference.a - sample.a;
    let db = reference.b - sample.b;
    let dh_sq = (da * da + db * db - dc * dc).max(0.0);
    let sc = 1.0 + 0.045 * c1;
    let sh = 1.0 + 0.015 * c1;
    (dl * dl + (dc / sc).powi(2) + dh_sq / (sh * sh)).sqrt()
}

/// CIEDE2000 with unit parametric factors.
pub fn ciede2000(x: LabColor, y: LabColor) -> f64 {
    const POW25_7: f64 = 6_103_515_625.0;
    let c_mean = 0.5 * (x.chroma() + y.chroma());
    let c7 = c_mean.powi(7);
    let g = 0.5 * (1.0 - (c7 / (c7 + POW25_7)).sqrt());

    let prime = |lab: LabColor| {
        let a = (1.0 + g) * lab.a;
        let c = a.hypot(lab.b);
        let h = if c == 0.0 {
            0.0
        } else {
            lab.b.atan2(a).to_degrees().rem_euclid(360.0)
        };
        (c, h)
    };
    let (c1, h1) = prime(x);
    let (c2, h2) = prime(y);

    let dl = y.l - x.l;
    let dc = c2 - c1;
    let chroma_product = c1 * c2;
    let dh_angle = if chroma_product == 0.0 {
        0.0
    } else {
        let d = h2 - h1;
        if d > 180.0 {
            d - 360.0
        } else if d < -180.0 {
            d + 360.0
        } else {
            d
        }
    };
    let dh = 2.0 * chroma_product.sqrt() * (dh_angle.to_radians() * 0.5).sin();

    let l_mean = 0.5 * (x.l + y.l);
    let cp_mean = 0.5 * (c1 + c2);
    let h_mean = if chroma_product == 0.0 {
        h1 + h2
    } else if (h1 - h2).abs() <= 180.0 {
        0.5 * (h1 + h2)
    } else if h1 + h2 < 360.0 {
        0.5 * (h1 + h2 + 360.0)
    } else {
        0.5 * (h1 + h2 - 360.0)
    };

    let cos_deg = |d: f64| d.to_radians().cos();
    let t = 1.0 - 0.17 * cos_deg(h_mean - 30.0)
        + 0.24 * cos_deg(2.0 * h_mean)
        + 0.32 * cos_deg(3.0 * h_mean + 6.0)
        - 0.20 * cos_deg(4.0 * h_mean - 63.0);
    let d_theta = 30.0 * (-((h_mean - 275.0) / 25.0).powi(2)).exp();
    let cp7 = cp_mean.powi(7);
    let rc = 2.0 * (cp7 / (cp7 + POW25_7)).sqrt();
    let l50 = (l_mean - 50.0).powi(2);
    let sl = 1.0 + 0.015 * l50 / (20.0 + l50).sqrt();
    let sc = 1.0 + 0.045 * cp_mean;
    let sh = 1.0 + 0.015 * cp_mean * t;
    let rt = -(2.0 * d_theta).to_radians().sin() * rc;

    let (tl, tc, th) = (dl / sl, dc / sc, dh / sh);
    (tl * tl + tc * tc + th * th + rt * tc * th).max(0.0).sqrt()
}

/// Half-open pixel rectangle `[x0, x1) × [y0, y1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Roi {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl Roi {
    pub fn new(x0: usize, y0: usize, x1: usize, y1: usize) -> Self {
        Self { x0, y0, x1, y1 }
    }

    pub fn area(&self) -> usize {
        self.x1.saturating_sub(self.x0) * self.y1.saturating_sub(self.y0)
    }

    fn overlaps(&self, o: &Roi) -> bool {
        self.x0 < o.x1 && o.x0 < self.x1 && self.y0 < o.y1 && o.y0 < self.y1
    }
}

/// 24 regions of interest in row-major chart order (4 rows × 6 columns).
#[derive(Debug, Clone, PartialEq)]
pub struct CheckerLayout {
    regions: Vec<Roi>,
    white_index: usize,
}

impl CheckerLayout {
    pub fn new(regions: Vec<Roi>, white_index: usize) -> Result<Self> {
        if regions.len() != PATCH_COUNT {
            return Err(Error::InvalidLayout(format!(
                "expected {PATCH_COUNT} regions, got {}",
                regions.len()
            )));
        }
        if !(1..=PATCH_COUNT).contains(&white_index) {
            return Err(Error::InvalidLayout(format!(
                "white patch index {white_index} outside 1..={PATCH_COUNT}"
            )));
        }
        for (i, r) in regions.iter().enumerate() {
            if r.area() == 0 {
                return Err(Error::InvalidLayout(format!("region {} is empty", i + 1)));
            }
            if let Some(j) = regions[..i].iter().position(|o| o.overlaps(r)) {
                return Err(Error::InvalidLayout(format!(
                    "regions {} and {} overlap",
                    j + 1,
                    i + 1
                )));
            }
        }
        Ok(Self {
            regions,
            white_index,
        })
    }

    /// Regular 6×4 grid: patches of `patch` pixels separated by `gap`,
    /// starting at `origin`, each region shrunk by `inset` on every side.
    pub fn grid(origin: (usize, usize), patch: usize, gap: usize, inset: usize) -> Result<Self> {
        if 2 * inset >= patch {
            return Err(Error::InvalidLayout("inset swallows the patch".into()));
        }
        let regions = (0..PATCH_COUNT)
            .map(|i| {
                let x = origin.0 + (i % 6) * (patch + gap);
                let y = origin.1 + (i / 6) * (patch + gap);
                Roi::new(x + inset, y + inset, x + patch - inset, y + patch - inset)
            })
            .collect();
        Self::new(regions, WHITE_PATCH)
    }

    pub fn regions(&self) -> &[Roi] {
        &self.regions
    }

    pub fn white_index(&self) -> usize {
        self.white_index
    }

    /// Parses `index x0 y0 x1 y1` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut slots: Vec<Option<Roi>> = vec![None; PATCH_COUNT];
        for (line_no, fields) in data_lines(text) {
            let nums = parse_fields::<usize>(&fields, 5, line_no)?;
            let idx = patch_slot(nums[0], line_no)?;
            if slots[idx].is_some() {
                return Err(parse_err(line_no, format!("duplicate patch index {}", nums[0])));
            }
            slots[idx] = Some(Roi::new(nums[1], nums[2], nums[3], nums[4]));
        }
        let regions = collect_slots(slots)?;
        Self::new(regions, WHITE_PATCH)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# index x0 y0 x1 y1 (half-open pixel rectangles)\n");
        for (i, r) in self.regions.iter().enumerate() {
            let _ = writeln!(out, "{} {} {} {} {}", i + 1, r.x0, r.y0, r.x1, r.y1);
        }
        out
    }
}

/// Reference checker colours in linear RGB.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkChecker {
    patches: Vec<RgbPixel>,
    checksum: String,
}

impl BenchmarkChecker {
    /// Parses `index r g b` lines; `#` starts a comment. The SHA-256 of the
    /// text is kept for reports.
    pub fn parse(text: &str) -> Result<Self> {
        let mut slots: Vec<Option<RgbPixel>> = vec![None; PATCH_COUNT];
        for (line_no, fields) in data_lines(text) {
            if fields.len() != 4 {
                return Err(parse_err(line_no, format!("expected 4 fields, got {}", fields.len())));
            }
            let idx_raw = fields[0]
                .parse::<usize>()
                .map_err(|e| parse_err(line_no, format!("bad index `{}`: {e}", fields[0])))?;
            let rgb = parse_fields::<f64>(&fields[1..], 3, line_no)?;
            if rgb.iter().any(|c| !c.is_finite()) {
                return Err(parse_err(line_no, "non-finite channel".into()));
            }
            let idx = patch_slot(idx_raw, line_no)?;
            if slots[idx].is_some() {
                return Err(parse_err(line_no, format!("duplicate patch index {idx_raw}")));
            }
            slots[idx] = Some(RgbPixel::new(rgb[0], rgb[1], rgb[2]));
        }
        let patches = collect_slots(slots)?;
        Ok(Self {
            patches,
            checksum: hex::encode(Sha256::digest(text.as_bytes())),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_text(path)?)
    }

    pub fn patches(&self) -> &[RgbPixel] {
        &self.patches
    }

    /// Hex SHA-256 of the source text.
    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    pub fn lab(&self) -> Vec<LabColor> {
        self.patches.iter().map(|&p| rgb_to_lab(p)).collect()
    }

    /// Builds a checker from in-memory colours; the checksum is that of
    /// [`Self::to_text`].
    pub fn from_patches(patches: &[RgbPixel]) -> Result<Self> {
        if patches.len() != PATCH_COUNT {
            return Err(Error::InvalidLayout(format!(
                "expected {PATCH_COUNT} patches, got {}",
                patches.len()
            )));
        }
        Self::parse(&format_patches(patches))
    }

    /// Every patch divided channelwise by the white patch, which becomes
    /// exactly `(1, 1, 1)`.
    pub fn white_normalized(&self) -> Result<Self> {
        let white = self.patches[WHITE_PATCH - 1];
        if !(white.min_channel() > 0.0) {
            return Err(Error::DegenerateIlluminant(format!(
                "white patch ({}, {}, {}) has a non-positive channel",
                white.r, white.g, white.b
            )));
        }
        let scaled: Vec<RgbPixel> =
            self.patches.iter().map(|p| p.zip_with(white, |a, w| a / w)).collect();
        Self::from_patches(&scaled)
    }

    /// Lossless text form; parsing it gives back the same colours.
    pub fn to_text(&self) -> String {
        format_patches(&self.patches)
    }
}

fn format_patches(patches: &[RgbPixel]) -> String {
    let mut out = String::from("# index r g b (linear RGB)\n");
    for (i, p) in patches.iter().enumerate() {
        let _ = writeln!(out, "{} {:?} {:?} {:?}", i + 1, p.r, p.g, p.b);
    }
    out
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn parse_err(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

/// Non-comment, non-blank lines split on whitespace, with 1-based numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn parse_fields<T: FromStr>(fields: &[&str], n: usize, line: usize) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    if fields.len() != n {
        return Err(parse_err(line, format!("expected {n} fields, got {}", fields.len())));
    }
    fields
        .iter()
        .map(|f| f.parse::<T>().map_err(|e| parse_err(line, format!("bad value `{f}`: {e}"))))
        .collect()
}

fn patch_slot(index: usize, line: usize) -> Result<usize> {
    if (1..=PATCH_COUNT).contains(&index) {
        Ok(index - 1)
    } else {
        Err(parse_err(line, format!("patch index {index} outside 1..={PATCH_COUNT}")))
    }
}

fn collect_slots<T>(slots: Vec<Option<T>>) -> Result<Vec<T>> {
    let missing: Vec<String> = slots
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_none())
        .map(|(i, _)| (i + 1).to_string())
        .collect();
    if !missing.is_empty() {
        return Err(Error::InvalidLayout(format!(
            "missing patch indices: {}",
            missing.join(", ")
        )));
    }
    Ok(slots.into_iter().flatten().collect())
}

/// Mean after dropping `TRIM_FRACTION` of the samples at each end.
fn trimmed_mean(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let cut = (values.len() as f64 * TRIM_FRACTION).floor() as usize;
    let kept = &values[cut..values.len() - cut];
    kept.iter().sum::<f64>() / kept.len() as f64
}

/// Per-region, per-channel trimmed mean of linear RGB.
pub fn extract_patches(img: &Image, layout: &CheckerLayout) -> Result<Vec<RgbPixel>> {
    layout
        .regions()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if r.x1 > img.width() || r.y1 > img.height() {
                return Err(Error::RegionOutOfBounds {
                    index: i + 1,
                    x0: r.x0,
                    y0: r.y0,
                    x1: r.x1,
                    y1: r.y1,
                    width: img.width(),
                    height: img.height(),
                });
            }
            let n = r.area();
            let mut channels = [
                Vec::with_capacity(n),
                Vec::with_capacity(n),
                Vec::with_capacity(n),
            ];
            for y in r.y0..r.y1 {
                for x in r.x0..r.x1 {
                    let p = img.get(x, y);
                    channels[0].push(p.r);
                    channels[1].push(p.g);
                    channels[2].push(p.b);
                }
            }
            let [mut r_, mut g_, mut b_] = channels;
            Ok(RgbPixel::new(
                trimmed_mean(&mut r_),
                trimmed_mean(&mut g_),
                trimmed_mean(&mut b_),
            ))
        })
        .collect()
}

/// Mean per-patch ΔE between extracted patches and the benchmark.
pub fn checker_distance(
    patches: &[RgbPixel],
    reference: &BenchmarkChecker,
    kind: MetricKind,
) -> Result<f64> {
    if patches.len() != PATCH_COUNT {
        return Err(Error::InvalidLayout(format!(
            "expected {PATCH_COUNT} patches, got {}",
            patches.len()
        )));
    }
    let total: f64 = reference
        .patches()
        .iter()
        .zip(patches)
        .map(|(&r, &p)| delta_e(kind, rgb_to_lab(r), rgb_to_lab(p)))
        .sum();
    Ok(total / PATCH_COUNT as f64)
}

pub fn dataset_average(scores: &[f64]) -> Result<f64> {
    if scores.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(scores.iter().sum::<f64>() / scores.len() as f64)
}

/// Linear RGB of the white patch.
pub fn white_patch_rgb(img: &Image, layout: &CheckerLayout) -> Result<RgbPixel> {
    Ok(extract_patches(img, layout)?[layout.white_index() - 1])
}

/// Ground-truth illuminant from the white patch, in HCV.
pub fn estimate_illuminant_white_patch(img: &Image, layout: &CheckerLayout) -> Result<HcvPixel> {
    Ok(rgb_to_hcv(white_patch_rgb(img, layout)?))
}

/// One `(image, cat, metric)` score.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreRow {
    pub image: String,
    pub cat: CatKind,
    pub metric: MetricKind,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub image: String,
    pub cat: Option<CatKind>,
    pub message: String,
}

/// Scores and failures for one image.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ImageOutcome {
    pub rows: Vec<ScoreRow>,
    pub failures: Vec<Failure>,
}

/// Estimates the illuminant from the white patch, corrects with each CAT,
/// re-extracts the patches and scores them. A CAT that fails is recorded and
/// the others still run.
pub fn evaluate_image(
    name: &str,
    img: &Image,
    layout: &CheckerLayout,
    reference: &BenchmarkChecker,
    cats: &[CatKind],
    metrics: &[MetricKind],
) -> ImageOutcome {
    let mut outcome = ImageOutcome::default();
    let white = match white_patch_rgb(img, layout) {
        Ok(w) => w,
        Err(e) => {
            outcome.failures.push(Failure {
                image: name.to_string(),
                cat: None,
                message: e.to_string(),
            });
            return outcome;
        }
    };
    for &cat in cats {
        let scored = cat
            .apply(img, Illuminant::Rgb(white))
            .and_then(|corrected| extract_patches(&corrected, layout))
            .and_then(|patches| {
                metrics
                    .iter()
                    .map(|&m| checker_distance(&patches, reference, m).map(|s| (m, s)))
                    .collect::<Result<Vec<_>>>()
            });
        match scored {
            Ok(scores) => outcome.rows.extend(scores.into_iter().map(|(metric, score)| ScoreRow {
                image: name.to_string(),
                cat,
                metric,
                score,
            })),
            Err(e) => outcome.failures.push(Failure {
                image: name.to_string(),
                cat: Some(cat),
                message: e.to_string(),
            }),
        }
    }
    outcome
}

/// Result of evaluating a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub benchmark_checksum: String,
    pub images: Vec<String>,
    pub cats: Vec<CatKind>,
    pub metrics: Vec<MetricKind>,
    pub rows: Vec<ScoreRow>,
    pub failures: Vec<Failure>,
}

impl EvalReport {
    /// Evaluates every image (in parallel); rows keep the input order.
    pub fn run(
        images: &[(String, Image)],
        layout: &CheckerLayout,
        reference: &BenchmarkChecker,
        cats: &[CatKind],
        metrics: &[MetricKind],
    ) -> Self {
        let outcomes: Vec<ImageOutcome> = images
            .par_iter()
            .map(|(name, img)| evaluate_image(name, img, layout, reference, cats, metrics))
            .collect();
        let mut report = Self {
            benchmark_checksum: reference.checksum().to_string(),
            images: images.iter().map(|(n, _)| n.clone()).collect(),
            cats: cats.to_vec(),
            metrics: metrics.to_vec(),
            rows: Vec::new(),
            failures: Vec::new(),
        };
        for o in outcomes {
            report.rows.extend(o.rows);
            report.failures.extend(o.failures);
        }
        report
    }

    /// Adds failures found before evaluation (e.g. unreadable inputs).
    pub fn with_failures(mut self, failures: Vec<Failure>) -> Self {
        self.failures.extend(failures);
        self
    }

    pub fn scores(&self, cat: CatKind, metric: MetricKind) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.cat == cat && r.metric == metric)
            .map(|r| r.score)
            .collect()
    }

    /// Dataset average for one cell of the summary table.
    pub fn average(&self, cat: CatKind, metric: MetricKind) -> Result<f64> {
        dataset_average(&self.scores(cat, metric))
    }

    /// `image,cat,metric,score` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("image,cat,metric,score\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{:.6}", r.image, r.cat, r.metric, r.score);
        }
        out
    }

    /// Per-image table followed by the dataset averages (rows = metrics,
    /// columns = CATs).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "benchmark sha256: {}", self.benchmark_checksum);
        let _ = writeln!(out, "images: {}", self.images.len());
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<24} {:<12} {:<10} {:>10}", "image", "cat", "metric", "score");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<24} {:<12} {:<10} {:>10.4}",
                r.image,
                r.cat.name(),
                r.metric.name(),
                r.score
            );
        }
        let _ = writeln!(out);
        let _ = write!(out, "{:<12}", "metric");
        for c in &self.cats {
            let _ = write!(out, " {:>11}", c.name());
        }
        let _ = writeln!(out);
        for m in &self.metrics {
            let _ = write!(out, "{:<12}", m.label());
            for &c in &self.cats {
                match self.average(c, *m) {
                    Ok(v) => {
                        let _ = write!(out, " {v:>11.4}");
                    }
                    Err(_) => {
                        let _ = write!(out, " {:>11}", "n/a");
                    }
                }
            }
            let _ = writeln!(out);
        }
        if !self.failures.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "failures:");
            for f in &self.failures {
                let cat = f.cat.map(|c| c.name()).unwrap_or("-");
                let _ = writeln!(out, "  {} [{}]: {}", f.image, cat, f.message);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lab_anchors() {
        let w = rgb_to_lab(RgbPixel::gray(1.0));
        assert!((w.l - 100.0).abs() < 1e-9 && w.a.abs() < 1e-9 && w.b.abs() < 1e-9);
        assert_eq!(rgb_to_lab(RgbPixel::gray(0.0)), LabColor::new(0.0, 0.0, 0.0));
        let g = rgb_to_lab(RgbPixel::gray(0.5));
        assert!(g.a.abs() < 0.01 && g.b.abs() < 0.01);
        // 116 * 0.5^(1/3) - 16
        assert!((g.l - 76.069_261_014_155_57).abs() < 1e-9);
    }

    #[test]
    fn metric_identity_and_names() {
        let x = LabColor::new(40.0, 12.0, -30.0);
        for k in MetricKind::all() {
            assert_eq!(delta_e(k, x, x), 0.0);
            assert_eq!(k.name().parse::<MetricKind>().unwrap(), k);
        }
        assert!("din99".parse::<MetricKind>().is_err());
    }

    #[test]
    fn ciede2000_neutral_pair() {
        let d = ciede2000(LabColor::new(50.0, 0.0, 0.0), LabColor::new(51.0, 0.0, 0.0));
        // S_L = 1 + 0.015 * 0.25 / sqrt(20.25)
        let sl = 1.0 + 0.015 * 0.25 / 4.5;
        assert!((d - 1.0 / sl).abs() < 1e-12);
    }

    #[test]
    fn cie94_pure_lightness_difference() {
        let d = cie94(LabColor::new(50.0, 10.0, 10.0), LabColor::new(53.0, 10.0, 10.0));
        assert!((d - 3.0).abs() < 1e-12);
    }

    #[test]
    fn layout_grid_and_text() {
        let layout = CheckerLayout::grid((4, 4), 10, 2, 2).unwrap();
        assert_eq!(layout.regions()[0], Roi::new(6, 6, 12, 12));
        assert_eq!(layout.regions()[7], Roi::new(18, 18, 24, 24));
        assert_eq!(CheckerLayout::parse(&layout.to_text()).unwrap(), layout);
        assert_eq!(layout.white_index(), 19);
    }

    #[test]
    fn layout_validation() {
        let mut regions: Vec<Roi> = CheckerLayout::grid((0, 0), 10, 0, 0).unwrap().regions().to_vec();
        regions[3] = regions[2];
        assert!(matches!(CheckerLayout::new(regions, 19), Err(Error::InvalidLayout(_))));
        assert!(CheckerLayout::new(vec![], 19).is_err());
        let text = "1 0 0 2 2\n";
        assert!(matches!(CheckerLayout::parse(text), Err(Error::InvalidLayout(_))));
        assert!(matches!(
            CheckerLayout::parse("1 0 0 2\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            CheckerLayout::parse("# header\n25 0 0 2 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn benchmark_parse() {
        let mut text = String::from("# comment\n");
        for i in 1..=24 {
            text.push_str(&format!("{i} 0.{i:02} 0.5 0.25  # patch {i}\n"));
        }
        let b = BenchmarkChecker::parse(&text).unwrap();
        assert_eq!(b.patches().len(), 24);
        assert_eq!(b.patches()[10], RgbPixel::new(0.11, 0.5, 0.25));
        assert_eq!(b.checksum().len(), 64);
        let again = BenchmarkChecker::parse(&b.to_text()).unwrap();
        assert_eq!(again.patches(), b.patches());
        assert!(BenchmarkChecker::parse("1 0.1 0.2\n").is_err());
        assert!(BenchmarkChecker::parse(&text.replace("24 0.24", "23 0.24")).is_err());
    }

    #[test]
    fn dataset_average_examples() {
        assert_eq!(dataset_average(&[5.0]).unwrap(), 5.0);
        assert_eq!(dataset_average(&[2.0, 4.0]).unwrap(), 3.0);
        assert_eq!(dataset_average(&[]), Err(Error::EmptyDataset));
    }

    #[test]
    fn benchmark_text_round_trips() {
        let patches: Vec<RgbPixel> = (0..24)
            .map(|i| RgbPixel::new(0.1 + f64::from(i) / 37.0, 1.0 / 3.0, 0.7 - f64::from(i) / 41.0))
            .collect();
        let b = BenchmarkChecker::from_patches(&patches).unwrap();
        assert_eq!(b.patches(), &patches[..]);
        let again = BenchmarkChecker::parse(&b.to_text()).unwrap();
        assert_eq!(again, b);
        let w = b.white_normalized().unwrap();
        assert_eq!(w.patches()[WHITE_PATCH - 1], RgbPixel::gray(1.0));
        assert!(BenchmarkChecker::from_patches(&patches[..3]).is_err());
    }

    #[test]
    fn trimmed_mean_drops_extremes() {
        let mut v: Vec<f64> = (0..20).map(|_| 0.5).collect();
        v[3] = 100.0;
        v[7] = -100.0;
        assert_eq!(trimmed_mean(&mut v), 0.5);
    }
}
