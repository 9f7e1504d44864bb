//! Weighted least-squares estimation of r_eff² and model comparison.
//!
//! For a cavity law χ(n) the model is y = a·χ(n) with a = r_eff², linear in
//! the single parameter, so the minimizer of Σ wᵢ (yᵢ − a·χᵢ)² is
//!
//! ```text
//! a = Σ wᵢ χᵢ yᵢ / Σ wᵢ χᵢ²
//! ```
//!
//! Sums are accumulated after sorting the points on (χ, y), so results do
//! not depend on input row order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cavity::CavityModel;
use crate::corpus::DerivedRow;
use crate::error::{Error, Result};
use crate::units::RadialIntegralNm;

pub const MIN_POINTS: usize = 2;

/// Relative difference below which two weighted RSS values count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightScheme {
    /// wᵢ = 1/yᵢ²: equal relative uncertainty on every point.
    #[default]
    #[serde(rename = "relative")]
    Relative,
    /// wᵢ = 1
    #[serde(rename = "uniform")]
    Uniform,
    /// wᵢ = 1/yᵢ
    #[serde(rename = "inverse")]
    InverseValue,
}

impl WeightScheme {
    pub const ALL: [WeightScheme; 3] = [
        WeightScheme::Relative,
        WeightScheme::Uniform,
        WeightScheme::InverseValue,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WeightScheme::Relative => "relative",
            WeightScheme::Uniform => "uniform",
            WeightScheme::InverseValue => "inverse",
        }
    }

    #[inline]
    pub fn weight(self, y: f64) -> f64 {
        match self {
            WeightScheme::Relative => 1.0 / (y * y),
            WeightScheme::Uniform => 1.0,
            WeightScheme::InverseValue => 1.0 / y,
        }
    }
}

impl fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WeightScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "relative" => Ok(WeightScheme::Relative),
            "uniform" => Ok(WeightScheme::Uniform),
            "inverse" => Ok(WeightScheme::InverseValue),
            other => Err(Error::validation(
                "weight scheme",
                format!("`{other}` is not one of relative, uniform, inverse"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub model: CavityModel,
    #[serde(rename = "reff_nm")]
    pub reff: RadialIntegralNm,
    #[serde(rename = "reff_sq_nm2")]
    pub reff_sq: f64,
    pub weighted_rss: f64,
    pub n_points: usize,
    pub scheme: WeightScheme,
    #[serde(rename = "include_vacuum")]
    pub included_vacuum_rows: bool,
    /// Every point has the same χ, so the fit cannot tell models apart.
    #[serde(skip)]
    pub non_discriminating: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelComparison {
    #[serde(rename = "virtual")]
    pub virtual_fit: FitResult,
    #[serde(rename = "real")]
    pub real_fit: FitResult,
    pub winner: CavityModel,
    /// Loser RSS over winner RSS; infinite when the winner fits exactly.
    pub rss_ratio: f64,
}

impl ModelComparison {
    pub fn fit(&self, model: CavityModel) -> Option<&FitResult> {
        match model {
            CavityModel::VirtualCavity => Some(&self.virtual_fit),
            CavityModel::RealCavity => Some(&self.real_fit),
            CavityModel::Vacuum => None,
        }
    }
}

fn collect_points(
    rows: &[DerivedRow],
    model: CavityModel,
    include_vacuum: bool,
) -> Result<Vec<(f64, f64)>> {
    let mut points = Vec::with_capacity(rows.len());
    for row in rows {
        if row.is_vacuum() && !include_vacuum {
            continue;
        }
        let y = row.y_measured;
        if !(y.is_finite() && y > 0.0) {
            return Err(Error::validation(
                "y_nm2",
                format!("{}: {y} must be finite and positive", row.base.host),
            ));
        }
        points.push((row.chi(model).value(), y));
    }
    if points.len() < MIN_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_POINTS,
            found: points.len(),
        });
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Ok(points)
}

/// Fits y = r_eff²·χ_model(n) by weighted least squares.
pub fn fit_model(
    rows: &[DerivedRow],
    model: CavityModel,
    scheme: WeightScheme,
    include_vacuum: bool,
) -> Result<FitResult> {
    if model == CavityModel::Vacuum {
        return Err(Error::InvalidModel(model));
    }
    let points = collect_points(rows, model, include_vacuum)?;

    let (num, den) = points.iter().fold((0.0, 0.0), |(num, den), &(chi, y)| {
        let w = scheme.weight(y);
        (num + w * chi * y, den + w * chi * chi)
    });
    let reff_sq = num / den;
    let reff = RadialIntegralNm::new(reff_sq.sqrt())?;

    let weighted_rss = points
        .iter()
        .map(|&(chi, y)| {
            let r = y - reff_sq * chi;
            scheme.weight(y) * r * r
        })
        .sum::<f64>();

    let first_chi = points[0].0;
    let non_discriminating = points
        .iter()
        .all(|&(chi, _)| (chi - first_chi).abs() <= TIE_TOLERANCE * first_chi);

    Ok(FitResult {
        model,
        reff,
        reff_sq,
        weighted_rss,
        n_points: points.len(),
        scheme,
        included_vacuum_rows: include_vacuum,
        non_discriminating,
    })
}

/// Fits both cavity laws to the same rows and picks the smaller weighted RSS.
pub fn compare_models(
    rows: &[DerivedRow],
    scheme: WeightScheme,
    include_vacuum: bool,
) -> Result<ModelComparison> {
    let virtual_fit = fit_model(rows, CavityModel::VirtualCavity, scheme, include_vacuum)?;
    let real_fit = fit_model(rows, CavityModel::RealCavity, scheme, include_vacuum)?;
    let (rv, rr) = (virtual_fit.weighted_rss, real_fit.weighted_rss);
    if (rv - rr).abs() <= TIE_TOLERANCE * rv.max(rr) {
        return Err(Error::Tie { rss: rv });
    }
    let (winner, lo, hi) = if rv < rr {
        (CavityModel::VirtualCavity, rv, rr)
    } else {
        (CavityModel::RealCavity, rr, rv)
    };
    let rss_ratio = if lo == 0.0 { f64::INFINITY } else { hi / lo };
    Ok(ModelComparison {
        virtual_fit,
        real_fit,
        winner,
        rss_ratio,
    })
}
