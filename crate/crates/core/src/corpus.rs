//! Host-material records, CSV ingestion, the built-in reference table and
//! derived per-row quantities.
//!
//! Input schema (header row required, `#` lines are comments):
//!
//! ```text
//! host,source,tau_ns,lambda_nm,n[,rel_uncertainty]
//! ```
//!
//! Table output appends `nu_bar_invcm,chi_virtual,chi_real,reff_nm,y_nm2`.

use std::io::Read;

use serde::Serialize;

use crate::cavity::{chi, CavityModel, ChiFactor, RefractiveIndex};
use crate::error::{Error, Result};
use crate::numfmt::format_sig;
use crate::radiative::measured_strength_nm2;
use crate::units::{
    wavelength_to_wavenumber, LifetimeNs, RadialIntegralNm, RateConstant, WavelengthNm,
    WavenumberInvCm,
};

pub const DEFAULT_REL_UNCERTAINTY: f64 = 0.10;

pub const INPUT_COLUMNS: [&str; 6] = [
    "host",
    "source",
    "tau_ns",
    "lambda_nm",
    "n",
    "rel_uncertainty",
];
pub const DERIVED_COLUMNS: [&str; 5] = [
    "nu_bar_invcm",
    "chi_virtual",
    "chi_real",
    "reff_nm",
    "y_nm2",
];

pub const REFERENCE_PROVENANCE: &str = "builtin:ce3-5d4f-reference";

/// One measured host: lifetime of the lowest 5d level, peak emission
/// wavelength and refractive index. Labels are stored trimmed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HostRecord {
    pub host: String,
    pub source: String,
    pub tau_ns: LifetimeNs,
    pub lambda_nm: WavelengthNm,
    pub n: RefractiveIndex,
    /// Fractional lifetime uncertainty; only drives error bars and weights.
    pub rel_uncertainty: f64,
}

impl HostRecord {
    pub fn new(
        host: impl Into<String>,
        source: impl Into<String>,
        tau_ns: f64,
        lambda_nm: f64,
        n: f64,
    ) -> Result<Self> {
        Self::with_uncertainty(host, source, tau_ns, lambda_nm, n, DEFAULT_REL_UNCERTAINTY)
    }

    pub fn with_uncertainty(
        host: impl Into<String>,
        source: impl Into<String>,
        tau_ns: f64,
        lambda_nm: f64,
        n: f64,
        rel_uncertainty: f64,
    ) -> Result<Self> {
        let host = host.into().trim().to_owned();
        if host.is_empty() {
            return Err(Error::validation("host", "host name is empty"));
        }
        if !(rel_uncertainty > 0.0 && rel_uncertainty < 1.0) {
            return Err(Error::validation(
                "rel_uncertainty",
                format!("{rel_uncertainty} is outside (0, 1)"),
            ));
        }
        Ok(HostRecord {
            host,
            source: source.into().trim().to_owned(),
            tau_ns: LifetimeNs::new(tau_ns)?,
            lambda_nm: WavelengthNm::new(lambda_nm)?,
            n: RefractiveIndex::new(n)?,
            rel_uncertainty,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub rows: Vec<HostRecord>,
    pub provenance: String,
}

impl Corpus {
    pub fn new(rows: Vec<HostRecord>, provenance: impl Into<String>) -> Self {
        Corpus {
            rows,
            provenance: provenance.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Serializes the records in the input schema. Numbers use the shortest
    /// representation that parses back to the same `f64`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(INPUT_COLUMNS)?;
        for r in &self.rows {
            w.write_record([
                r.host.clone(),
                r.source.clone(),
                r.tau_ns.value().to_string(),
                r.lambda_nm.value().to_string(),
                r.n.value().to_string(),
                r.rel_uncertainty.to_string(),
            ])?;
        }
        finish_csv(w)
    }
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8 from utf-8 input"))
}

struct Columns {
    host: usize,
    source: usize,
    tau: usize,
    lambda: usize,
    n: usize,
    rel: Option<usize>,
}

impl Columns {
    fn locate(headers: &csv::StringRecord) -> Result<Self> {
        if headers.is_empty() || headers.iter().all(|h| h.trim().is_empty()) {
            return Err(Error::Schema("missing header row".into()));
        }
        let find = |name: &str| headers.iter().position(|h| h.trim() == name);
        let require = |name: &str| {
            find(name).ok_or_else(|| Error::Schema(format!("missing column `{name}`")))
        };
        Ok(Columns {
            host: require("host")?,
            source: require("source")?,
            tau: require("tau_ns")?,
            lambda: require("lambda_nm")?,
            n: require("n")?,
            rel: find("rel_uncertainty"),
        })
    }
}

/// Reads a corpus in the input CSV schema. Row order is preserved.
pub fn parse_corpus<R: Read>(reader: R, provenance: impl Into<String>) -> Result<Corpus> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let cols = Columns::locate(rdr.headers()?)?;

    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|cell| cell.is_empty()) {
            continue;
        }
        let cell = |idx: usize, name: &str| -> Result<&str> {
            record.get(idx).ok_or_else(|| Error::Row {
                line,
                message: format!("missing value for `{name}`"),
            })
        };
        let number = |idx: usize, name: &str| -> Result<f64> {
            let text = cell(idx, name)?;
            text.parse::<f64>().map_err(|_| Error::Row {
                line,
                message: format!("`{name}` value `{text}` is not a number"),
            })
        };
        let rel = match cols.rel.and_then(|i| record.get(i)) {
            None | Some("") => DEFAULT_REL_UNCERTAINTY,
            Some(_) => number(cols.rel.unwrap(), "rel_uncertainty")?,
        };
        let rec = HostRecord::with_uncertainty(
            cell(cols.host, "host")?,
            cell(cols.source, "source")?,
            number(cols.tau, "tau_ns")?,
            number(cols.lambda, "lambda_nm")?,
            number(cols.n, "n")?,
            rel,
        )
        .map_err(|e| match e {
            Error::Validation { field, message } => Error::Validation {
                field,
                message: format!("line {line}: {message}"),
            },
            other => other,
        })?;
        rows.push(rec);
    }
    Ok(Corpus::new(rows, provenance))
}

// host, source, tau (ns), lambda (nm), n
const REFERENCE_ROWS: [(&str, &str, f64, f64, f64); 24] = [
    ("LaF3", "Lyu1991", 19.0, 292.0, 1.6),
    ("LaF3", "Ped1992", 21.0, 300.0, 1.6),
    ("YAG", "Lyu1991", 59.1, 550.0, 1.9),
    ("YAG", "Ham1989", 65.0, 550.0, 1.9),
    ("CaF2", "Mir1996", 40.0, 330.0, 1.43),
    ("YAlO3", "Lyu1991", 17.1, 362.0, 1.98),
    ("YLiF4", "Lyu1991", 35.7, 320.0, 1.49),
    ("Gd2SiO5", "Pid2003", 56.0, 430.0, 1.89),
    ("Lu2SiO5", "Pid2003", 40.0, 420.0, 1.81),
    ("Lu2SiO5", "Suz1993", 32.0, 400.0, 1.81),
    ("Lu2SiO5", "Suz1993", 54.0, 480.0, 1.81),
    ("LuAlO3", "Pid2003", 18.0, 365.0, 1.94),
    ("Lu2Si2O7", "Pid2003", 38.0, 385.0, 1.74),
    ("Li-Al-B glass", "Das1998", 38.0, 360.0, 1.528),
    ("Sr2B5O9Br", "Dot1999", 38.0, 390.0, 1.65),
    ("Sr2B5O9Br", "Dot1999", 29.0, 355.0, 1.65),
    ("LiSrAlF6", "Mar1994", 28.0, 292.0, 1.41),
    ("LiCaAlF6", "Mar1994", 25.0, 290.0, 1.45),
    ("CaS", "Hos1980", 36.0, 562.0, 2.12),
    ("SrGa2S4", "Hos1980", 20.0, 455.0, 2.17),
    ("BaF2", "Woj2000", 30.0, 320.0, 1.475),
    ("Ca2Al2SiO7", "Yam2002", 40.0, 410.0, 1.68),
    ("YPO4", "Lar2001", 23.0, 345.0, 1.75),
    ("Free ion", "Zha2001", 30.0, 201.0, 1.0),
];

/// Ce³⁺ lowest-5d lifetimes in 23 hosts plus the free ion.
pub fn reference_corpus() -> Corpus {
    let rows = REFERENCE_ROWS
        .iter()
        .map(|&(host, source, tau, lambda, n)| {
            HostRecord::new(host, source, tau, lambda, n).expect("reference rows are valid")
        })
        .collect();
    Corpus::new(rows, REFERENCE_PROVENANCE)
}

/// A record with the quantities derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedRow {
    pub base: HostRecord,
    pub nu_bar: WavenumberInvCm,
    pub chi_virtual: ChiFactor,
    pub chi_real: ChiFactor,
    /// r_eff under the virtual-cavity law (equal to vacuum at n = 1).
    pub reff_virtual: RadialIntegralNm,
    /// r_eff²·χ in nm², computed from (τ, ν̄) alone.
    pub y_measured: f64,
}

impl DerivedRow {
    pub fn from_record(c: RateConstant, base: HostRecord) -> Result<Self> {
        let nu_bar = wavelength_to_wavenumber(base.lambda_nm);
        let chi_virtual = chi(CavityModel::VirtualCavity, base.n);
        let chi_real = chi(CavityModel::RealCavity, base.n);
        let y_measured = measured_strength_nm2(c, base.tau_ns, base.lambda_nm);
        if !(y_measured.is_finite() && y_measured > 0.0) {
            return Err(Error::validation(
                "y_nm2",
                format!(
                    "{}: measured strength {y_measured:e} is not finite",
                    base.host
                ),
            ));
        }
        let reff_virtual = RadialIntegralNm::new((y_measured / chi_virtual.value()).sqrt())?;
        Ok(DerivedRow {
            base,
            nu_bar,
            chi_virtual,
            chi_real,
            reff_virtual,
            y_measured,
        })
    }

    pub fn chi(&self, model: CavityModel) -> ChiFactor {
        match model {
            CavityModel::Vacuum => ChiFactor::ONE,
            CavityModel::VirtualCavity => self.chi_virtual,
            CavityModel::RealCavity => self.chi_real,
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.base.n.is_vacuum()
    }
}

pub fn derive_rows(c: RateConstant, corpus: &Corpus) -> Result<Vec<DerivedRow>> {
    corpus
        .rows
        .iter()
        .cloned()
        .map(|r| DerivedRow::from_record(c, r))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::validation(
                "format",
                format!("`{other}` is not one of csv, json"),
            )),
        }
    }
}

/// Three significant figures; the exact identity χ = 1 prints as `1`.
fn format_chi(chi: ChiFactor) -> String {
    if chi == ChiFactor::ONE {
        "1".to_owned()
    } else {
        format_sig(chi.value(), 3)
    }
}

#[derive(Serialize)]
struct JsonRow<'a> {
    host: &'a str,
    source: &'a str,
    tau_ns: f64,
    lambda_nm: f64,
    n: f64,
    rel_uncertainty: f64,
    nu_bar_invcm: f64,
    chi_virtual: f64,
    chi_real: f64,
    reff_nm: f64,
    y_nm2: f64,
}

/// Renders derived rows. CSV rounds χ and r_eff to three significant
/// figures; JSON keeps full precision.
pub fn emit_table(rows: &[DerivedRow], format: TableFormat) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::validation("rows", "nothing to emit"));
    }
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(INPUT_COLUMNS.iter().chain(DERIVED_COLUMNS.iter()))?;
            for r in rows {
                let b = &r.base;
                w.write_record([
                    b.host.clone(),
                    b.source.clone(),
                    b.tau_ns.value().to_string(),
                    b.lambda_nm.value().to_string(),
                    b.n.value().to_string(),
                    b.rel_uncertainty.to_string(),
                    format_sig(r.nu_bar.value(), 6),
                    format_chi(r.chi_virtual),
                    format_chi(r.chi_real),
                    format_sig(r.reff_virtual.value(), 3),
                    format_sig(r.y_measured, 6),
                ])?;
            }
            finish_csv(w)
        }
        TableFormat::Json => {
            let out: Vec<JsonRow<'_>> = rows
                .iter()
                .map(|r| JsonRow {
                    host: &r.base.host,
                    source: &r.base.source,
                    tau_ns: r.base.tau_ns.value(),
                    lambda_nm: r.base.lambda_nm.value(),
                    n: r.base.n.value(),
                    rel_uncertainty: r.base.rel_uncertainty,
                    nu_bar_invcm: r.nu_bar.value(),
                    chi_virtual: r.chi_virtual.value(),
                    chi_real: r.chi_real.value(),
                    reff_nm: r.reff_virtual.value(),
                    y_nm2: r.y_measured,
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&out)?;
            text.push('\n');
            Ok(text)
        }
    }
}
