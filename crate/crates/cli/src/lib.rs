//! Command implementations behind the `cavityfit` binary.
//!
//! Each command renders its output to a `String`; the binary decides whether
//! it goes to stdout or a file. Nothing here reads the clock or the locale,
//! so identical inputs give byte-identical output.

pub mod plot;

use std::fs::File;
use std::path::PathBuf;

use anyhow::{Context, Result};
use cavityfit_core::numfmt::format_sig;
use cavityfit_core::{
    chi, compare_models, derive_reff, derive_rows, emit_table, fit_model, parse_corpus,
    predicted_lifetime_ns, reference_corpus, CavityModel, ConstantMode, Corpus, LifetimeNs,
    RadialIntegralNm, RateConstant, RefractiveIndex, TableFormat, WavelengthNm, WeightScheme,
};
use clap::{Args, Parser, Subcommand};

pub use plot::{render_svg, PlotSpec};

/// Environment variable selecting the rate prefactor (`paper` or `precise`).
pub const CONSTANT_ENV: &str = "CAVITYFIT_CONSTANT";

#[derive(Debug, Parser)]
#[command(
    name = "cavityfit",
    version,
    about = "Local-field corrections to 5d-4f radiative lifetimes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Local-field factor chi(n) for one cavity model.
    Chi(ChiArgs),
    /// Radiative lifetime predicted from an effective radial integral.
    Lifetime(LifetimeArgs),
    /// Effective radial integral implied by a measured lifetime.
    Reff(ReffArgs),
    /// Per-host table with chi factors and derived radial integrals.
    Table(TableArgs),
    /// Weighted least-squares fit of r_eff^2 for one or both models.
    Fit(FitArgs),
    /// SVG figure of r_eff^2 * chi against n with both fitted models.
    Plot(PlotArgs),
}

fn parse_model(s: &str) -> Result<CavityModel, String> {
    s.parse()
        .map_err(|_| format!("`{s}` is not one of vacuum, virtual, real"))
}

fn parse_scheme(s: &str) -> Result<WeightScheme, String> {
    s.parse()
        .map_err(|_| format!("`{s}` is not one of relative, uniform, inverse"))
}

fn parse_format(s: &str) -> Result<TableFormat, String> {
    s.parse()
        .map_err(|_| format!("`{s}` is not one of csv, json"))
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    /// Cavity model: vacuum, virtual or real.
    #[arg(long, value_parser = parse_model)]
    pub model: CavityModel,
    /// Refractive index of the host (>= 1).
    #[arg(long, allow_negative_numbers = true)]
    pub n: f64,
}

#[derive(Debug, Args)]
pub struct LifetimeArgs {
    /// Cavity model: vacuum, virtual or real.
    #[arg(long, value_parser = parse_model)]
    pub model: CavityModel,
    /// Refractive index of the host (>= 1).
    #[arg(long, allow_negative_numbers = true)]
    pub n: f64,
    /// Effective radial integral in nm.
    #[arg(long = "reff-nm", allow_negative_numbers = true)]
    pub reff_nm: f64,
    /// Mean emission wavelength in nm.
    #[arg(long = "lambda-nm", allow_negative_numbers = true)]
    pub lambda_nm: f64,
}

#[derive(Debug, Args)]
pub struct ReffArgs {
    /// Cavity model: vacuum, virtual or real.
    #[arg(long, value_parser = parse_model)]
    pub model: CavityModel,
    /// Refractive index of the host (>= 1).
    #[arg(long, allow_negative_numbers = true)]
    pub n: f64,
    /// Measured radiative lifetime in ns.
    #[arg(long = "tau-ns", allow_negative_numbers = true)]
    pub tau_ns: f64,
    /// Mean emission wavelength in nm.
    #[arg(long = "lambda-nm", allow_negative_numbers = true)]
    pub lambda_nm: f64,
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Corpus CSV: host,source,tau_ns,lambda_nm,n[,rel_uncertainty]
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Use the built-in Ce3+ reference table.
    #[arg(long)]
    pub reference: bool,
}

impl Source {
    pub fn load(&self) -> Result<Corpus> {
        match &self.input {
            Some(path) => {
                let file =
                    File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
                parse_corpus(file, path.display().to_string())
                    .with_context(|| format!("reading {}", path.display()))
            }
            None => Ok(reference_corpus()),
        }
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub source: Source,
    /// Output format: csv or json.
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    pub format: TableFormat,
    /// Write to this file instead of stdout.
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub source: Source,
    /// Weights: relative (1/y^2), uniform, or inverse (1/y).
    #[arg(long, default_value = "relative", value_parser = parse_scheme)]
    pub scheme: WeightScheme,
    /// Keep rows with n = 1 in the fit.
    #[arg(long)]
    pub include_vacuum: bool,
    /// Cavity model to fit when --compare is absent.
    #[arg(long, value_parser = parse_model, default_value = "virtual", conflicts_with = "compare")]
    pub model: CavityModel,
    /// Fit both cavity models and report the better one.
    #[arg(long)]
    pub compare: bool,
    /// Write to this file instead of stdout.
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub source: Source,
    /// Weights: relative (1/y^2), uniform, or inverse (1/y).
    #[arg(long, default_value = "relative", value_parser = parse_scheme)]
    pub scheme: WeightScheme,
    /// Fit and draw rows with n = 1 as well.
    #[arg(long)]
    pub include_vacuum: bool,
    /// Write to this file instead of stdout.
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Left edge of the n axis.
    #[arg(long, default_value_t = 1.0)]
    pub x_min: f64,
    /// Right edge of the n axis.
    #[arg(long, default_value_t = 2.3)]
    pub x_max: f64,
    /// Points per model curve.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// Half-height of error bars as a fraction of each value.
    #[arg(long, default_value_t = 0.10)]
    pub error_bar_fraction: f64,
    /// Figure width in px.
    #[arg(long, default_value_t = 800)]
    pub width: u32,
    /// Figure height in px.
    #[arg(long, default_value_t = 600)]
    pub height: u32,
}

impl PlotArgs {
    pub fn spec(&self) -> PlotSpec {
        PlotSpec {
            x_min: self.x_min,
            x_max: self.x_max,
            curve_samples: self.samples,
            error_bar_fraction: self.error_bar_fraction,
            width_px: self.width,
            height_px: self.height,
        }
    }
}

/// Rate constant selected by `CAVITYFIT_CONSTANT`; unset means `paper`.
pub fn constant_from_env() -> Result<RateConstant, String> {
    match std::env::var(CONSTANT_ENV) {
        Ok(value) => value
            .parse::<ConstantMode>()
            .map(cavityfit_core::emission_rate_constant)
            .map_err(|_| format!("{CONSTANT_ENV}=`{value}` is not one of paper, precise")),
        Err(_) => Ok(RateConstant::ROUNDED),
    }
}

/// Where a command's output should go.
#[derive(Debug)]
pub struct Rendered {
    pub text: String,
    pub output: Option<PathBuf>,
}

pub fn run(command: &Command, c: RateConstant) -> Result<Rendered> {
    let stdout = |text: String| Rendered { text, output: None };
    match command {
        Command::Chi(a) => {
            let n = RefractiveIndex::new(a.n)?;
            Ok(stdout(format!(
                "{}\n",
                format_sig(chi(a.model, n).value(), 6)
            )))
        }
        Command::Lifetime(a) => {
            let tau = predicted_lifetime_ns(
                c,
                RadialIntegralNm::new(a.reff_nm)?,
                WavelengthNm::new(a.lambda_nm)?,
                a.model,
                RefractiveIndex::new(a.n)?,
            )?;
            Ok(stdout(format!("{}\n", format_sig(tau.value(), 6))))
        }
        Command::Reff(a) => {
            let reff = derive_reff(
                c,
                LifetimeNs::new(a.tau_ns)?,
                WavelengthNm::new(a.lambda_nm)?,
                a.model,
                RefractiveIndex::new(a.n)?,
            )?;
            Ok(stdout(format!("{}\n", format_sig(reff.value(), 6))))
        }
        Command::Table(a) => {
            let rows = derive_rows(c, &a.source.load()?)?;
            Ok(Rendered {
                text: emit_table(&rows, a.format)?,
                output: a.output.clone(),
            })
        }
        Command::Fit(a) => {
            let rows = derive_rows(c, &a.source.load()?)?;
            let mut text = if a.compare {
                serde_json::to_string_pretty(&compare_models(&rows, a.scheme, a.include_vacuum)?)?
            } else {
                serde_json::to_string_pretty(&fit_model(
                    &rows,
                    a.model,
                    a.scheme,
                    a.include_vacuum,
                )?)?
            };
            text.push('\n');
            Ok(Rendered {
                text,
                output: a.output.clone(),
            })
        }
        Command::Plot(a) => {
            let spec = a.spec();
            spec.validate()?;
            let rows = derive_rows(c, &a.source.load()?)?;
            let virtual_fit = fit_model(
                &rows,
                CavityModel::VirtualCavity,
                a.scheme,
                a.include_vacuum,
            )?;
            let real_fit = fit_model(&rows, CavityModel::RealCavity, a.scheme, a.include_vacuum)?;
            let shown: Vec<_> = rows
                .into_iter()
                .filter(|r| a.include_vacuum || !r.is_vacuum())
                .collect();
            Ok(Rendered {
                text: render_svg(&shown, &virtual_fit, &real_fit, &spec)?,
                output: a.output.clone(),
            })
        }
    }
}
