//! Local-field enhancement factors χ(n).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Refractive index of the host; a single non-dispersive value per material.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct RefractiveIndex(f64);

impl RefractiveIndex {
    pub const VACUUM: RefractiveIndex = RefractiveIndex(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::validation(
                "refractive index",
                format!("{value} is not finite"),
            ));
        }
        if value < 1.0 {
            return Err(Error::validation(
                "refractive index",
                format!("n = {value} is below 1"),
            ));
        }
        Ok(RefractiveIndex(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_vacuum(self) -> bool {
        self.0 == 1.0
    }
}

impl TryFrom<f64> for RefractiveIndex {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<RefractiveIndex> for f64 {
    fn from(n: RefractiveIndex) -> f64 {
        n.0
    }
}

/// Dimensionless enhancement of the vacuum emission rate; always ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct ChiFactor(f64);

impl ChiFactor {
    pub const ONE: ChiFactor = ChiFactor(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 1.0 {
            return Err(Error::validation(
                "chi factor",
                format!("{value} must be finite and >= 1"),
            ));
        }
        Ok(ChiFactor(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CavityModel {
    #[serde(rename = "vacuum")]
    Vacuum,
    /// Lorentz local field.
    #[serde(rename = "virtual")]
    VirtualCavity,
    /// Emitter in an empty spherical cavity.
    #[serde(rename = "real")]
    RealCavity,
}

impl CavityModel {
    pub const ALL: [CavityModel; 3] = [
        CavityModel::Vacuum,
        CavityModel::VirtualCavity,
        CavityModel::RealCavity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CavityModel::Vacuum => "vacuum",
            CavityModel::VirtualCavity => "virtual",
            CavityModel::RealCavity => "real",
        }
    }

    pub fn chi(self, n: RefractiveIndex) -> ChiFactor {
        chi(self, n)
    }
}

impl fmt::Display for CavityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CavityModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "vacuum" => Ok(CavityModel::Vacuum),
            "virtual" => Ok(CavityModel::VirtualCavity),
            "real" => Ok(CavityModel::RealCavity),
            other => Err(Error::validation(
                "cavity model",
                format!("`{other}` is not one of vacuum, virtual, real"),
            )),
        }
    }
}

/// χ(n) for the given model:
///
/// * vacuum: 1
/// * virtual cavity: n·[(n²+2)/3]²
/// * real cavity: n·[3n²/(2n²+1)]²
///
/// Both nontrivial laws equal 1 at n = 1 and increase monotonically.
pub fn chi(model: CavityModel, n: RefractiveIndex) -> ChiFactor {
    let n = n.value();
    let n2 = n * n;
    let value = match model {
        CavityModel::Vacuum => 1.0,
        CavityModel::VirtualCavity => {
            let lorentz = (n2 + 2.0) / 3.0;
            n * lorentz * lorentz
        }
        CavityModel::RealCavity => {
            let cavity = 3.0 * n2 / (2.0 * n2 + 1.0);
            n * cavity * cavity
        }
    };
    // Rounding can land a hair under 1 only at n = 1 exactly.
    ChiFactor(value.max(1.0))
}
