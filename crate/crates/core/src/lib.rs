//! Local-field corrections to spontaneous-emission lifetimes of emitters in
//! dielectric hosts.
//!
//! The crate is organized bottom-up:
//!
//! * [`units`]: dimension-tagged scalars and the rate prefactor
//! * [`cavity`]: χ(n) for the vacuum, virtual-cavity and real-cavity laws
//! * [`radiative`]: emission rates, predicted lifetimes and their inversion
//! * [`corpus`]: host records, CSV ingestion, the built-in Ce³⁺ table
//! * [`fit`]: weighted least squares for r_eff² and model comparison
//!
//! ```
//! use cavityfit_core::{derive_rows, reference_corpus, compare_models, RateConstant, WeightScheme, CavityModel};
//!
//! let rows = derive_rows(RateConstant::ROUNDED, &reference_corpus()).unwrap();
//! let cmp = compare_models(&rows, WeightScheme::Relative, false).unwrap();
//! assert_eq!(cmp.winner, CavityModel::VirtualCavity);
//! ```

pub mod cavity;
pub mod corpus;
pub mod error;
pub mod fit;
pub mod numfmt;
pub mod radiative;
pub mod units;

pub use cavity::{chi, CavityModel, ChiFactor, RefractiveIndex};
pub use corpus::{
    derive_rows, emit_table, parse_corpus, reference_corpus, Corpus, DerivedRow, HostRecord,
    TableFormat,
};
pub use error::{Error, Result};
pub use fit::{compare_models, fit_model, FitResult, ModelComparison, WeightScheme};
pub use radiative::{
    derive_reff, measured_strength_nm2, predicted_lifetime_ns, total_rate, transition_rate,
    DipoleLengthNm, EmissionRatePerSec,
};
pub use units::{
    emission_rate_constant, wavelength_to_wavenumber, ConstantMode, LifetimeNs, RadialIntegralNm,
    RateConstant, WavelengthNm, WavenumberInvCm,
};
