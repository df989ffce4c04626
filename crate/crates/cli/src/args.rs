use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use splitcat_core::{CatKind, HcvPixel, MetricKind, RgbPixel};

#[derive(Debug, Parser)]
#[command(name = "splitcat", version, about = "Split-quaternion white balance and colour-checker evaluation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// White-balance one PNG image.
    Wb(WbArgs),
    /// Score CATs on colour-checker images against a benchmark.
    Eval(EvalArgs),
    /// Run the seeded consistency suites.
    Selftest(SelftestArgs),
    /// Render a synthetic colour-checker PNG under a diagonal cast.
    Chart(ChartArgs),
}

/// How 8/16-bit code values relate to linear RGB.
#[derive(Debug, Clone, Copy, Default, Args)]
#[group(multiple = false)]
pub struct Gamma {
    /// Input and output PNGs are sRGB-encoded.
    #[arg(long)]
    pub assume_srgb: bool,
    /// Input and output PNGs hold linear RGB (default).
    #[arg(long)]
    pub assume_linear: bool,
}

impl Gamma {
    pub fn srgb(&self) -> bool {
        self.assume_srgb
    }
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct IlluminantSource {
    /// Illuminant as hue (radians), chroma, value.
    #[arg(long, value_name = "H,C,V", value_parser = parse_hcv)]
    pub illuminant_hcv: Option<HcvPixel>,
    /// Illuminant as linear RGB.
    #[arg(long, value_name = "R,G,B", value_parser = parse_rgb)]
    pub illuminant_rgb: Option<RgbPixel>,
    /// Estimate the illuminant from the white patch of this checker layout.
    #[arg(long, value_name = "FILE")]
    pub layout: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WbArgs {
    #[arg(long, value_parser = parse_cat)]
    pub cat: CatKind,
    #[command(flatten)]
    pub illuminant: IlluminantSource,
    #[command(flatten)]
    pub gamma: Gamma,
    pub input: PathBuf,
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_name = "FILE")]
    pub layout: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub benchmark: PathBuf,
    #[arg(long, value_delimiter = ',', value_parser = parse_metric, default_value = "cie94,ciede2000")]
    pub metrics: Vec<MetricKind>,
    #[arg(
        long = "cat",
        value_delimiter = ',',
        value_parser = parse_cat,
        default_value = "vonkries,split-hcv,split-h1cv,split-h2cv"
    )]
    pub cats: Vec<CatKind>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the `image,cat,metric,score` rows to this file.
    #[arg(long, value_name = "FILE")]
    pub csv_out: Option<PathBuf>,
    #[command(flatten)]
    pub gamma: Gamma,
    #[arg(required = true)]
    pub images: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = splitcat_core::selftest::DEFAULT_SEED)]
    pub seed: u64,
    /// Offset injected into one computation route; exercises the failure path.
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub inject_fault: f64,
}

#[derive(Debug, Args)]
pub struct ChartArgs {
    #[arg(long, value_name = "FILE")]
    pub benchmark: PathBuf,
    /// Diagonal cast multiplied into every patch.
    #[arg(long, value_name = "R,G,B", value_parser = parse_rgb, default_value = "1,1,1")]
    pub cast: RgbPixel,
    /// Uniform noise amplitude added before quantisation.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u8).range(8..=16))]
    pub bits: u8,
    /// Write the matching checker layout here.
    #[arg(long, value_name = "FILE")]
    pub layout_out: Option<PathBuf>,
    #[command(flatten)]
    pub gamma: Gamma,
    pub output: PathBuf,
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part.parse::<f64>().map_err(|e| format!("`{part}`: {e}"))?;
        if !slot.is_finite() {
            return Err(format!("`{part}` is not finite"));
        }
    }
    Ok(out)
}

fn parse_hcv(s: &str) -> Result<HcvPixel, String> {
    let [h, c, v] = parse_triple(s)?;
    Ok(HcvPixel::new(h, c, v))
}

fn parse_rgb(s: &str) -> Result<RgbPixel, String> {
    parse_triple(s).map(RgbPixel::from_array)
}

fn parse_cat(s: &str) -> Result<CatKind, String> {
    s.parse().map_err(|e: splitcat_core::Error| e.to_string())
}

fn parse_metric(s: &str) -> Result<MetricKind, String> {
    s.parse().map_err(|e: splitcat_core::Error| e.to_string())
}
