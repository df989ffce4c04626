use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};
use splitcat_core::cat::{von_kries_gains, SplitCat};
use splitcat_core::eval::{estimate_illuminant_white_patch, Failure};
use splitcat_core::selftest::{self, SelfTestConfig};
use splitcat_core::synth::{add_noise, quantize, render_chart, ChartGeometry};
use splitcat_core::{BenchmarkChecker, CatKind, CheckerLayout, EvalReport, HcvPixel, Illuminant, Image};

use crate::args::{ChartArgs, EvalArgs, Format, IlluminantSource, SelftestArgs, WbArgs};
use crate::png::{self, BitDepth};

fn resolve_illuminant(source: &IlluminantSource, img: &Image) -> Result<Illuminant> {
    if let Some(hcv) = source.illuminant_hcv {
        return Ok(Illuminant::Hcv(hcv));
    }
    if let Some(rgb) = source.illuminant_rgb {
        return Ok(Illuminant::Rgb(rgb));
    }
    let path = source.layout.as_ref().context("no illuminant source given")?;
    let layout = CheckerLayout::load(path)?;
    Ok(Illuminant::Hcv(estimate_illuminant_white_patch(img, &layout)?))
}

/// Human-readable parameters of the correction that `wb` applies.
fn describe(cat: CatKind, illuminant: Illuminant) -> Result<String> {
    let mut out = String::new();
    let hcv: HcvPixel = illuminant.to_hcv();
    let rgb = illuminant.to_rgb();
    writeln!(out, "cat: {cat}")?;
    writeln!(out, "illuminant hcv: h={:.6} c={:.6} v={:.6}", hcv.h, hcv.c, hcv.v)?;
    writeln!(out, "illuminant rgb: r={:.6} g={:.6} b={:.6}", rgb.r, rgb.g, rgb.b)?;
    match cat {
        CatKind::VonKries => {
            let g = von_kries_gains(rgb)?;
            writeln!(out, "gains: r={:.6} g={:.6} b={:.6}", g.r, g.g, g.b)?;
        }
        CatKind::Split(remap) => {
            let split = SplitCat::new(hcv, remap)?;
            let e = split.effect();
            let p = e.to_s0();
            writeln!(out, "effect: e0={:.6} e1={:.6} e2={:.6}", e.e0(), e.e1(), e.e2())?;
            writeln!(out, "rapidity: {:.6}", e.rapidity())?;
            writeln!(out, "norm: {:.6}", p.norm_sq().max(0.0).sqrt())?;
        }
    }
    Ok(out)
}

pub fn wb(args: &WbArgs) -> Result<ExitCode> {
    let srgb = args.gamma.srgb();
    let (img, depth) = png::read(&args.input, srgb)?;
    let illuminant = resolve_illuminant(&args.illuminant, &img)?;
    print!("{}", describe(args.cat, illuminant)?);
    let out = args.cat.apply(&img, illuminant)?;
    png::write(&args.output, &out, depth, srgb)?;
    Ok(ExitCode::SUCCESS)
}

pub fn eval(args: &EvalArgs) -> Result<ExitCode> {
    let layout = CheckerLayout::load(&args.layout)?;
    let reference = BenchmarkChecker::load(&args.benchmark)?;
    let srgb = args.gamma.srgb();
    let mut images = Vec::new();
    let mut unreadable = Vec::new();
    for path in &args.images {
        let name = path.display().to_string();
        match png::read(path, srgb) {
            Ok((img, _)) => images.push((name, img)),
            Err(e) => unreadable.push(Failure {
                image: name,
                cat: None,
                message: format!("{e:#}"),
            }),
        }
    }
    let report = EvalReport::run(&images, &layout, &reference, &args.cats, &args.metrics)
        .with_failures(unreadable);
    match args.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Csv => print!("{}", report.to_csv()),
    }
    if let Some(path) = &args.csv_out {
        fs::write(path, report.to_csv()).with_context(|| format!("writing {}", path.display()))?;
    }
    if report.failures.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else {
        for f in &report.failures {
            let cat = f.cat.map(|c| c.name()).unwrap_or("-");
            eprintln!("failed: {} [{cat}]: {}", f.image, f.message);
        }
        Ok(ExitCode::FAILURE)
    }
}

pub fn selftest(args: &SelftestArgs) -> Result<ExitCode> {
    let report = selftest::run(&SelfTestConfig {
        seed: args.seed,
        fault: args.inject_fault,
        ..SelfTestConfig::default()
    });
    println!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

pub fn chart(args: &ChartArgs) -> Result<ExitCode> {
    let reference = BenchmarkChecker::load(&args.benchmark)?;
    let (img, layout) = render_chart(&reference, args.cast, &ChartGeometry::default())?;
    let img = add_noise(&img, args.noise, args.seed);
    let depth = BitDepth::from_bits(args.bits)?;
    png::write(&args.output, &quantize(&img, u32::from(args.bits)), depth, args.gamma.srgb())?;
    if let Some(path) = &args.layout_out {
        fs::write(path, layout.to_text()).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("chart: {}x{} cast={},{},{}", img.width(), img.height(), args.cast.r, args.cast.g, args.cast.b);
    Ok(ExitCode::SUCCESS)
}
