//! Electric-dipole emission-rate kernel.
//!
//! The total 5d→4f rate uses a single mean emission wavenumber ν̄ and an
//! effective radial integral:
//!
//! ```text
//! 1/τ = C · χ · ν̄³ · r_eff²      [s⁻¹; nm, cm⁻¹]
//! ```
//!
//! A single I→F line carries the same prefactor scaled by 5/3, since the
//! total-rate prefactor divides by 5 where the per-line one divides by 3.

use serde::{Deserialize, Serialize};

use crate::cavity::{chi, CavityModel, ChiFactor, RefractiveIndex};
use crate::error::{Error, Result};
use crate::units::{
    wavelength_to_wavenumber, LifetimeNs, RadialIntegralNm, RateConstant, WavelengthNm,
    WavenumberInvCm, NS_PER_S,
};

const LINE_TO_TOTAL: f64 = 5.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct EmissionRatePerSec(f64);

impl EmissionRatePerSec {
    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn lifetime_ns(self) -> Result<LifetimeNs> {
        LifetimeNs::new(NS_PER_S / self.0)
    }
}

/// |μ_IF|/e for one transition, in nm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct DipoleLengthNm(f64);

impl DipoleLengthNm {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::validation(
                "dipole length (nm)",
                format!("{value} must be finite and positive"),
            ));
        }
        Ok(DipoleLengthNm(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for DipoleLengthNm {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<DipoleLengthNm> for f64 {
    fn from(d: DipoleLengthNm) -> f64 {
        d.0
    }
}

fn checked_rate(value: f64) -> Result<EmissionRatePerSec> {
    if value.is_finite() && value > 0.0 {
        Ok(EmissionRatePerSec(value))
    } else {
        Err(Error::validation(
            "emission rate",
            format!("{value:e} is not a finite positive rate"),
        ))
    }
}

/// Rate of a single electric-dipole line I→F.
pub fn transition_rate(
    c: RateConstant,
    r_if: DipoleLengthNm,
    nu: WavenumberInvCm,
    chi: ChiFactor,
) -> Result<EmissionRatePerSec> {
    let r = r_if.value();
    checked_rate(LINE_TO_TOTAL * c.value() * chi.value() * nu.value().powi(3) * r * r)
}

/// Total d→f rate summed over final states at mean wavenumber ν̄.
pub fn total_rate(
    c: RateConstant,
    r_eff: RadialIntegralNm,
    nu_bar: WavenumberInvCm,
    chi: ChiFactor,
) -> Result<EmissionRatePerSec> {
    let r = r_eff.value();
    checked_rate(c.value() * chi.value() * nu_bar.value().powi(3) * r * r)
}

pub fn predicted_lifetime_ns(
    c: RateConstant,
    r_eff: RadialIntegralNm,
    lambda: WavelengthNm,
    model: CavityModel,
    n: RefractiveIndex,
) -> Result<LifetimeNs> {
    total_rate(c, r_eff, wavelength_to_wavenumber(lambda), chi(model, n))?.lifetime_ns()
}

/// r_eff²·χ implied by a measured lifetime at wavelength λ. Independent of
/// the cavity model.
pub fn measured_strength_nm2(c: RateConstant, tau: LifetimeNs, lambda: WavelengthNm) -> f64 {
    let nu = wavelength_to_wavenumber(lambda).value();
    NS_PER_S / (tau.value() * c.value() * nu * nu * nu)
}

/// Inverts [`predicted_lifetime_ns`] for the effective radial integral.
pub fn derive_reff(
    c: RateConstant,
    tau: LifetimeNs,
    lambda: WavelengthNm,
    model: CavityModel,
    n: RefractiveIndex,
) -> Result<RadialIntegralNm> {
    let strength = measured_strength_nm2(c, tau, lambda);
    RadialIntegralNm::new((strength / chi(model, n).value()).sqrt())
}
