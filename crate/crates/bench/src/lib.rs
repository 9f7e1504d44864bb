//! Fixtures shared by the criterion benchmarks.

use cavityfit_core::{chi, CavityModel, DerivedRow, HostRecord, RateConstant, RefractiveIndex};

/// `len` rows on a virtual-cavity law with a deterministic ±20% ripple,
/// spread over n ∈ [1.4, 2.2].
pub fn synthetic_rows(len: usize) -> Vec<DerivedRow> {
    let c = RateConstant::ROUNDED;
    (0..len)
        .map(|i| {
            let t = i as f64 / len.max(2).saturating_sub(1) as f64;
            let n = 1.4 + 0.8 * t;
            let lambda = 280.0 + 300.0 * ((i * 7) % 11) as f64 / 10.0;
            let ripple = 1.0 + 0.2 * ((i as f64) * 1.7).sin();
            let y = 8e-4
                * chi(CavityModel::VirtualCavity, RefractiveIndex::new(n).unwrap()).value()
                * ripple;
            let nu = 1e7 / lambda;
            let tau = 1e9 / (y * c.value() * nu * nu * nu);
            let rec = HostRecord::new(format!("bench-{i}"), "bench", tau, lambda, n).unwrap();
            DerivedRow::from_record(c, rec).unwrap()
        })
        .collect()
}
