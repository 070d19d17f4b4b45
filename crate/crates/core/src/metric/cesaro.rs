use std::cmp::Ordering;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::RationalInterval;
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};
use crate::symseq::SymbolicPoint;

/// Per-index first-disagreement offsets of a pair, `gaps[i] = m` when the
/// first disagreement of `σ^i x, σ^i y` sits at offset `m < window`, and
/// `gaps[i] = window` when the window is disagreement-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTrace {
    window: usize,
    gaps: Vec<u32>,
}

impl DistanceTrace {
    pub fn from_gaps(window: usize, gaps: Vec<u32>) -> Result<Self> {
        if window == 0 || window >= u32::MAX as usize {
            return Err(Error::invalid("window out of range"));
        }
        if gaps.iter().any(|&g| g as usize > window) {
            return Err(Error::invalid("gap larger than window"));
        }
        Ok(DistanceTrace { window, gaps })
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    /// Offset of the first disagreement at index `i`, if within the window.
    pub fn gap(&self, i: usize) -> Option<usize> {
        let g = self.gaps[i] as usize;
        (g < self.window).then_some(g)
    }

    pub fn disagrees_at(&self, i: usize) -> bool {
        self.gaps[i] == 0
    }

    pub fn term(&self, i: usize) -> RationalInterval {
        let w = self.window as u128;
        match self.gap(i) {
            Some(m) => {
                let v = Rational::new(1.into(), BigInt::from(m as u128 + 1));
                RationalInterval::new_unchecked(v.clone(), v)
            }
            None => RationalInterval::new_unchecked(Rational::zero(), Rational::new(1.into(), BigInt::from(w + 1))),
        }
    }
}

/// Single forward pass over the first `n + window - 1` symbols of both
/// points. Every index is resolved exactly once: either by a disagreement
/// within its window or by its window running out. O(n + window).
pub fn distance_trace(x: &SymbolicPoint, y: &SymbolicPoint, n: usize, window: usize) -> Result<DistanceTrace> {
    if n == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    if window == 0 || window >= u32::MAX as usize {
        return Err(Error::invalid("window must be in 1..2^32-1"));
    }
    let span = n + window - 1;
    let gaps = x.with_pair_prefix(y, span, |a, b| {
        let mut gaps = vec![window as u32; n];
        let mut pending = 0usize;
        for j in 0..span {
            if a[j] != b[j] {
                for (i, g) in gaps.iter_mut().enumerate().take(j.min(n - 1) + 1).skip(pending) {
                    *g = (j - i) as u32;
                }
                pending = j + 1;
            }
            // windows ending at j without a disagreement stay at `window`
            if pending + window <= j + 1 {
                pending = j + 2 - window;
            }
            if pending >= n {
                break;
            }
        }
        gaps
    })?;
    Ok(DistanceTrace { window, gaps })
}

/// Cumulative numerators over the common denominator `lcm(1..=window+1)`.
#[derive(Clone, Debug)]
enum Sums {
    Narrow { unit: Vec<u128>, lo: Vec<u128> },
    Wide { unit: Vec<BigUint>, lo: Vec<BigUint> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Lo,
    Hi,
}

/// Indices `n` attaining the extremes of `S_n.lo` / `S_n.hi` over a range;
/// ties resolve to the smallest `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesExtremes {
    pub min_lo: usize,
    pub min_hi: usize,
    pub max_lo: usize,
    pub max_hi: usize,
}

/// `S_n = (1/n) Σ_{i<n} d(σ^i x, σ^i y)` for `n = 1..=N`, each bracketed by
/// an exact rational interval.
///
/// Scans labelled liminf/limsup range over `n ∈ [N_min, N]`; nothing here
/// claims to bound the true limits.
#[derive(Clone, Debug)]
pub struct CesaroSeries {
    trace: DistanceTrace,
    burn_in: usize,
    denominator: BigUint,
    sums: Sums,
    /// `slack[n]` = number of `i < n` whose window was disagreement-free.
    slack: Vec<u64>,
}

pub fn cesaro(x: &SymbolicPoint, y: &SymbolicPoint, n: usize, window: usize, burn_in: usize) -> Result<CesaroSeries> {
    Ok(CesaroSeries::from_trace(distance_trace(x, y, n, window)?, burn_in))
}

impl CesaroSeries {
    pub fn from_trace(trace: DistanceTrace, burn_in: usize) -> Self {
        let window = trace.window;
        let n = trace.len();
        let denominator = (1..=window as u64 + 1).fold(BigUint::from(1u8), |acc, k| acc.lcm(&BigUint::from(k)));
        let mut slack = Vec::with_capacity(n + 1);
        slack.push(0u64);
        for &g in &trace.gaps {
            slack.push(slack.last().unwrap() + u64::from(g as usize == window));
        }
        let narrow = (&denominator * BigUint::from(n as u64 + 1)).to_u128().is_some();
        let sums = if narrow {
            let l = denominator.to_u128().unwrap();
            let unit: Vec<u128> = (1..=window as u128 + 1).map(|k| l / k).collect();
            let mut lo = Vec::with_capacity(n + 1);
            lo.push(0u128);
            let mut acc = 0u128;
            for &g in &trace.gaps {
                if (g as usize) < window {
                    acc += unit[g as usize];
                }
                lo.push(acc);
            }
            Sums::Narrow { unit, lo }
        } else {
            let unit: Vec<BigUint> = (1..=window as u64 + 1).map(|k| &denominator / BigUint::from(k)).collect();
            let mut lo = Vec::with_capacity(n + 1);
            lo.push(BigUint::zero());
            let mut acc = BigUint::zero();
            for &g in &trace.gaps {
                if (g as usize) < window {
                    acc += &unit[g as usize];
                }
                lo.push(acc.clone());
            }
            Sums::Wide { unit, lo }
        };
        CesaroSeries { trace, burn_in, denominator, sums, slack }
    }

    pub fn horizon(&self) -> usize {
        self.trace.len()
    }

    pub fn window(&self) -> usize {
        self.trace.window
    }

    pub fn burn_in(&self) -> usize {
        self.burn_in
    }

    pub fn trace(&self) -> &DistanceTrace {
        &self.trace
    }

    /// The liminf/limsup scan range `[N_min, N]`, clamped to be nonempty.
    pub fn scan_range(&self) -> (usize, usize) {
        let n = self.horizon();
        (self.burn_in.clamp(1, n), n)
    }

    fn numerator(&self, side: Side, n: usize) -> BigUint {
        match &self.sums {
            Sums::Narrow { unit, lo } => {
                let v = lo[n] + if side == Side::Hi { u128::from(self.slack[n]) * unit[self.window()] } else { 0 };
                BigUint::from(v)
            }
            Sums::Wide { unit, lo } => {
                if side == Side::Hi {
                    &lo[n] + &unit[self.window()] * BigUint::from(self.slack[n])
                } else {
                    lo[n].clone()
                }
            }
        }
    }

    /// `S_n` for `1 <= n <= N`.
    pub fn interval(&self, n: usize) -> RationalInterval {
        assert!((1..=self.horizon()).contains(&n), "n = {n} outside 1..={}", self.horizon());
        let den = BigInt::from(&self.denominator * BigUint::from(n as u64));
        let lo = Rational::new(BigInt::from(self.numerator(Side::Lo, n)), den.clone());
        let hi = Rational::new(BigInt::from(self.numerator(Side::Hi, n)), den);
        RationalInterval::new_unchecked(lo, hi)
    }

    fn cmp(&self, side: Side, a: usize, b: usize) -> Ordering {
        match &self.sums {
            Sums::Narrow { unit, lo } => {
                let num = |n: usize| lo[n] + if side == Side::Hi { u128::from(self.slack[n]) * unit[self.window()] } else { 0 };
                cmp_limbs(&mul_wide(num(a), b as u64), &mul_wide(num(b), a as u64))
            }
            Sums::Wide { .. } => {
                (self.numerator(side, a) * BigUint::from(b as u64)).cmp(&(self.numerator(side, b) * BigUint::from(a as u64)))
            }
        }
    }

    pub fn extremes(&self, from: usize, to: usize) -> SeriesExtremes {
        assert!(1 <= from && from <= to && to <= self.horizon(), "bad range {from}..={to}");
        let mut e = SeriesExtremes { min_lo: from, min_hi: from, max_lo: from, max_hi: from };
        for n in from + 1..=to {
            if self.cmp(Side::Lo, n, e.min_lo) == Ordering::Less {
                e.min_lo = n;
            }
            if self.cmp(Side::Hi, n, e.min_hi) == Ordering::Less {
                e.min_hi = n;
            }
            if self.cmp(Side::Lo, n, e.max_lo) == Ordering::Greater {
                e.max_lo = n;
            }
            if self.cmp(Side::Hi, n, e.max_hi) == Ordering::Greater {
                e.max_hi = n;
            }
        }
        e
    }

    /// `(n, S_n.hi)` minimizing the upper bound over `[N_min, N]`.
    pub fn liminf_hi(&self) -> (usize, Rational) {
        let (a, b) = self.scan_range();
        let n = self.extremes(a, b).min_hi;
        (n, self.interval(n).hi().clone())
    }

    /// `(n, S_n.lo)` maximizing the lower bound over `[N_min, N]`.
    pub fn limsup_lo(&self) -> (usize, Rational) {
        let (a, b) = self.scan_range();
        let n = self.extremes(a, b).max_lo;
        (n, self.interval(n).lo().clone())
    }

    /// Number of `i < n` with `x_i != y_i`.
    pub fn disagreements(&self, n: usize) -> usize {
        self.trace.gaps[..n].iter().filter(|&&g| g == 0).count()
    }

    /// RFC-4180 CSV with columns `n,S_lo,S_hi,D_n,density`, one row per `n`
    /// or per roughly 10%-spaced `n` when `log_spaced`.
    pub fn write_csv<W: Write>(&self, mut out: W, log_spaced: bool) -> Result<()> {
        out.write_all(b"n,S_lo,S_hi,D_n,density\r\n")?;
        let rows = csv_rows(self.horizon(), log_spaced);
        let mut d = 0usize;
        let mut i = 0usize;
        for n in rows {
            while i < n {
                d += usize::from(self.trace.gaps[i] == 0);
                i += 1;
            }
            let s = self.interval(n);
            let density = Rational::new(BigInt::from(d), BigInt::from(n));
            write!(
                out,
                "{},{},{},{},{}\r\n",
                n,
                fmt_rational(s.lo()),
                fmt_rational(s.hi()),
                d,
                fmt_rational(&density)
            )?;
        }
        out.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_rows(horizon: usize, log_spaced: bool) -> Vec<usize> {
    if !log_spaced {
        return (1..=horizon).collect();
    }
    let mut rows = Vec::new();
    let mut n = 1usize;
    while n < horizon {
        rows.push(n);
        n = (n + 1).max(n + n / 10);
    }
    rows.push(horizon);
    rows
}

/// `a · b` as a 192-bit little-endian limb triple.
fn mul_wide(a: u128, b: u64) -> [u64; 3] {
    let (a0, a1) = (a as u64 as u128, a >> 64);
    let b = b as u128;
    let p0 = a0 * b;
    let p1 = a1 * b + (p0 >> 64);
    [p0 as u64, p1 as u64, (p1 >> 64) as u64]
}

fn cmp_limbs(a: &[u64; 3], b: &[u64; 3]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}
