//! The shift-space metric `d(x,y) = 1/(m+1)`, `m` the first index where
//! `x` and `y` disagree, evaluated from finite windows as exact rational
//! intervals; Cesàro averages of orbit distances; disagreement densities.

mod cesaro;
mod density;

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::symseq::SymbolicPoint;

pub use cesaro::{cesaro, distance_trace, CesaroSeries, DistanceTrace, SeriesExtremes};
pub use density::{average_bound_from_density, disagreement_density, DensityReport};

pub const DEFAULT_WINDOW: usize = 64;
pub const DEFAULT_BURN_IN: usize = 16;

/// A closed interval `[lo, hi] ⊆ [0, 1]` with exact endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo < Rational::zero() || hi > Rational::one() || lo > hi {
            return Err(Error::invalid(format!("interval [{lo}, {hi}] not within [0,1]")));
        }
        Ok(RationalInterval { lo, hi })
    }

    pub(crate) fn new_unchecked(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        RationalInterval { lo, hi }
    }

    pub fn exact(v: Rational) -> Result<Self> {
        Self::new(v.clone(), v)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for RationalInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RationalInterval", 2)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.end()
    }
}

/// `d(σ^i x, σ^i y)` from the window of offsets `0..window`.
///
/// A first disagreement at offset `m < window` gives the exact value
/// `1/(m+1)`; a disagreement-free window gives `[0, 1/(window+1)]`.
pub fn point_distance(
    x: &SymbolicPoint,
    y: &SymbolicPoint,
    at: usize,
    window: usize,
) -> Result<RationalInterval> {
    if window == 0 {
        return Err(Error::invalid("window must be at least 1"));
    }
    let first = x.with_pair_prefix(y, at + window, |a, b| {
        a[at..].iter().zip(&b[at..]).position(|(p, q)| p != q)
    })?;
    Ok(match first {
        Some(m) => RationalInterval::new_unchecked(rat(1, m as u128 + 1), rat(1, m as u128 + 1)),
        None => RationalInterval::new_unchecked(Rational::zero(), rat(1, window as u128 + 1)),
    })
}
