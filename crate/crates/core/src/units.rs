//! Dimension-tagged scalars and the emission-rate prefactor.
//!
//! Every quantity that crosses a public API boundary is wrapped in a newtype
//! carrying its unit in the type name. Constructors validate; once a value
//! exists it is finite and positive, so downstream kernels are infallible.
//!
//! The unit convention for the rate kernel is fixed: radial integrals in nm,
//! wavenumbers in cm⁻¹, rates in s⁻¹. Lifetimes are carried in ns.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lifetimes and wavelengths below this magnitude (in their own units) are
/// rejected instead of producing astronomically large rates.
pub const MIN_DIVISOR_MAGNITUDE: f64 = 1e-6;

/// nm per cm; also the numerator of ν̄[cm⁻¹] = 10⁷ / λ[nm].
pub const NM_PER_CM: f64 = 1e7;

pub const NS_PER_S: f64 = 1e9;

fn check_positive(field: &'static str, value: f64, min: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::validation(field, format!("{value} is not finite")));
    }
    if value <= 0.0 {
        return Err(Error::validation(
            field,
            format!("{value} must be positive"),
        ));
    }
    if value < min {
        return Err(Error::validation(
            field,
            format!("{value} is below the minimum magnitude {min}"),
        ));
    }
    Ok(value)
}

macro_rules! positive_quantity {
    ($(#[$meta:meta])* $name:ident, $field:literal, $unit:literal, $min:expr) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
        #[serde(try_from = "f64", into = "f64")]
        pub struct $name(f64);

        impl $name {
            pub const UNIT: &'static str = $unit;

            pub fn new(value: f64) -> Result<Self> {
                check_positive($field, value, $min).map(Self)
            }

            #[inline]
            pub fn value(self) -> f64 {
                self.0
            }
        }

        impl TryFrom<f64> for $name {
            type Error = Error;

            fn try_from(value: f64) -> Result<Self> {
                Self::new(value)
            }
        }

        impl From<$name> for f64 {
            fn from(q: $name) -> f64 {
                q.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{} {}", self.0, $unit)
            }
        }
    };
}

positive_quantity!(
    /// Vacuum emission wavelength.
    WavelengthNm,
    "wavelength (nm)",
    "nm",
    MIN_DIVISOR_MAGNITUDE
);

positive_quantity!(
    /// Emission wavenumber ν̄.
    WavenumberInvCm,
    "wavenumber (cm^-1)",
    "cm^-1",
    0.0
);

positive_quantity!(
    /// Measured (radiative) lifetime.
    LifetimeNs,
    "lifetime (ns)",
    "ns",
    MIN_DIVISOR_MAGNITUDE
);

positive_quantity!(
    /// Effective ⟨5d|r|4f⟩ radial integral.
    RadialIntegralNm,
    "radial integral (nm)",
    "nm",
    0.0
);

impl WavelengthNm {
    pub fn to_wavenumber(self) -> WavenumberInvCm {
        wavelength_to_wavenumber(self)
    }
}

impl WavenumberInvCm {
    pub fn to_wavelength(self) -> WavelengthNm {
        WavelengthNm(NM_PER_CM / self.0)
    }
}

/// ν̄ = 10⁷ / λ. Wavelengths are taken as vacuum values.
pub fn wavelength_to_wavenumber(lambda: WavelengthNm) -> WavenumberInvCm {
    WavenumberInvCm(NM_PER_CM / lambda.0)
}

/// Elementary charge in esu (statcoulomb), from the exact SI charge and c.
pub const ELEMENTARY_CHARGE_ESU: f64 = 1.602_176_634e-19 * 2.997_924_58e9;

/// Planck constant in erg·s.
pub const PLANCK_ERG_S: f64 = 6.626_070_15e-27;

/// Prefactor of the total d→f rate, 1/τ = C·χ·ν̄³·r², in s⁻¹·nm⁻²·cm³.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct RateConstant(f64);

impl RateConstant {
    /// The rounded published prefactor, used by default so tabulated values
    /// are reproduced with the same arithmetic.
    pub const ROUNDED: RateConstant = RateConstant(4.34e-4);

    /// Allowed relative deviation from [`RateConstant::ROUNDED`].
    pub const TOLERANCE: f64 = 2e-3;

    pub fn new(value: f64) -> Result<Self> {
        let rel = (value - Self::ROUNDED.0).abs() / Self::ROUNDED.0;
        if !value.is_finite() || rel >= Self::TOLERANCE {
            return Err(Error::validation(
                "rate constant",
                format!("{value:e} deviates from 4.34e-4 by more than 0.2%"),
            ));
        }
        Ok(RateConstant(value))
    }

    /// 64π⁴e²/(5h) in Gaussian units, with the radial integral rescaled
    /// from cm² to nm².
    pub fn precise() -> Self {
        let pi4 = std::f64::consts::PI.powi(4);
        let cgs = 64.0 * pi4 * ELEMENTARY_CHARGE_ESU.powi(2) / (5.0 * PLANCK_ERG_S);
        let nm2_per_cm2 = 1.0 / (NM_PER_CM * NM_PER_CM);
        RateConstant(cgs * nm2_per_cm2)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for RateConstant {
    fn default() -> Self {
        Self::ROUNDED
    }
}

/// Which value of the rate prefactor to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstantMode {
    #[default]
    Paper,
    Precise,
}

impl ConstantMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstantMode::Paper => "paper",
            ConstantMode::Precise => "precise",
        }
    }
}

impl FromStr for ConstantMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "paper" => Ok(ConstantMode::Paper),
            "precise" => Ok(ConstantMode::Precise),
            other => Err(Error::validation(
                "constant mode",
                format!("`{other}` is not one of paper, precise"),
            )),
        }
    }
}

impl fmt::Display for ConstantMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn emission_rate_constant(mode: ConstantMode) -> RateConstant {
    match mode {
        ConstantMode::Paper => RateConstant::ROUNDED,
        ConstantMode::Precise => RateConstant::precise(),
    }
}
