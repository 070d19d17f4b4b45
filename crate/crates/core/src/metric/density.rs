use num_bigint::BigInt;
use serde::Serialize;

use super::RationalInterval;
use crate::error::{Error, Result};
use crate::rational::{clamp_unit, harmonic, rat, serde_rational, Rational};
use crate::symseq::SymbolicPoint;

/// Symbol disagreements of a pair on a finite prefix, with the running
/// extremes of `D_n / n` over `n ∈ [N_min, N]`.
#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub horizon: usize,
    pub burn_in: usize,
    /// Prefix length actually scanned (`horizon + lookahead`).
    pub scanned: usize,
    /// `D_N = |{i < N : x_i != y_i}|`
    pub disagreements: u64,
    #[serde(with = "serde_rational")]
    pub density: Rational,
    pub min_density_at: usize,
    #[serde(with = "serde_rational")]
    pub min_density: Rational,
    pub max_density_at: usize,
    #[serde(with = "serde_rational")]
    pub max_density: Rational,
    #[serde(skip)]
    positions: Vec<u64>,
}

impl DensityReport {
    /// `D_n` for any `n <= scanned`.
    pub fn disagreements_before(&self, n: usize) -> Result<u64> {
        if n > self.scanned {
            return Err(Error::invalid(format!("density data covers {} symbols, {n} requested", self.scanned)));
        }
        Ok(self.positions.partition_point(|&p| p < n as u64) as u64)
    }

    pub fn positions(&self) -> &[u64] {
        &self.positions
    }
}

/// Exact disagreement counts on the first `n` symbols; the scan continues
/// `lookahead` symbols further so that window-based bounds can be derived.
pub fn disagreement_density(
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    n: usize,
    burn_in: usize,
    lookahead: usize,
) -> Result<DensityReport> {
    if n == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    let scanned = n + lookahead;
    let positions: Vec<u64> = x.with_pair_prefix(y, scanned, |a, b| {
        a.iter().zip(b).enumerate().filter(|(_, (p, q))| p != q).map(|(i, _)| i as u64).collect()
    })?;
    let from = burn_in.clamp(1, n);
    let mut d = 0u64;
    let mut next = 0usize;
    let (mut min_at, mut max_at) = (0usize, 0usize);
    let (mut min_d, mut max_d) = (0u64, 0u64);
    for k in 1..=n {
        while next < positions.len() && positions[next] < k as u64 {
            d += 1;
            next += 1;
        }
        if k < from {
            continue;
        }
        // d/k vs best/at, cross-multiplied
        if min_at == 0 || u128::from(d) * (min_at as u128) < u128::from(min_d) * (k as u128) {
            min_at = k;
            min_d = d;
        }
        if max_at == 0 || u128::from(d) * (max_at as u128) > u128::from(max_d) * (k as u128) {
            max_at = k;
            max_d = d;
        }
    }
    Ok(DensityReport {
        horizon: n,
        burn_in,
        scanned,
        disagreements: d,
        density: rat(d.into(), n as u128),
        min_density_at: min_at,
        min_density: rat(min_d.into(), min_at as u128),
        max_density_at: max_at,
        max_density: rat(max_d.into(), max_at as u128),
        positions,
    })
}

/// Brackets `S_N` using only disagreement counts.
///
/// Every disagreement index contributes exactly 1, so `S_N ≥ D_N / N`. Each
/// index whose window holds a disagreement is charged to its next
/// disagreement `j < N + W - 1`, and the indices charged to one `j` have
/// distinct offsets below `W`, so they sum to at most `H_W`. The rest
/// contribute at most `1/(W+1)` each:
/// `S_N ≤ min(1, H_W · D_{N+W-1} / N + 1/(W+1))`.
pub fn average_bound_from_density(report: &DensityReport, window: usize) -> Result<RationalInterval> {
    if window == 0 {
        return Err(Error::invalid("window must be at least 1"));
    }
    let n = report.horizon;
    let d_ahead = report.disagreements_before(n + window - 1)?;
    let lo = rat(report.disagreements.into(), n as u128);
    let hi = harmonic(window as u64) * Rational::from_integer(BigInt::from(d_ahead)) / Rational::from_integer(BigInt::from(n))
        + rat(1, window as u128 + 1);
    RationalInterval::new(lo, clamp_unit(hi))
}
