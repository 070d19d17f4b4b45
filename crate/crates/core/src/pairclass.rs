//! Finite-horizon classification of a pair against the six pair notions:
//! proximal, asymptotic, Li-Yorke and their mean (Cesàro) versions.
//!
//! Every flag is three-valued. `Holds` and `Fails` are certified by the
//! exact interval bounds carried along; `Undecided` means the interval slack
//! straddles the threshold.
//!
//! Conventions, with `S_n` the Cesàro interval, `d_i` the pointwise interval,
//! `ε` the tolerance, `η` the modulus and `[L, N]` the late window
//! (`L = max(⌈3N/4⌉, N_min)`):
//!
//! * mean proximal: `min_{N_min ≤ n ≤ N} S_n.hi ≤ ε` holds,
//!   `min S_n.lo > ε` fails.
//! * mean asymptotic: `max_{L ≤ n ≤ N} S_n.hi ≤ ε` holds, `max S_n.lo > ε`
//!   fails.
//! * limsup side: `max_{L ≤ n ≤ N} S_n.lo ≥ η` holds, `max S_n.hi < η` fails.
//!   Mean Li-Yorke is mean proximal AND limsup side (Kleene).
//! * proximal: `min_{i < N} d_i.hi ≤ ε` holds, `min d_i.lo > ε` fails.
//! * asymptotic: let `t` be the entry of the tube, the least index with
//!   `d_i.hi ≤ ε` for every `i ∈ [t, N)`. Holds when `t ≤ L` and the late
//!   averages have caught up (`max_{L ≤ n ≤ N} S_n.lo ≤ ε`); fails when some
//!   late index has `d_i.lo > ε`.
//! * Li-Yorke: proximal AND a late index with `d_i.lo ≥ η`.
//!
//! A zero modulus drops the threshold: the limsup sides then hold as soon as
//! a late lower bound is positive.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{cesaro, CesaroSeries, RationalInterval, DEFAULT_BURN_IN, DEFAULT_WINDOW};
use crate::rational::{rat, serde_rational, Rational};
use crate::symseq::SymbolicPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl Verdict {
    /// Kleene conjunction.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fails, _) | (_, Verdict::Fails) => Verdict::Fails,
            (Verdict::Holds, Verdict::Holds) => Verdict::Holds,
            _ => Verdict::Undecided,
        }
    }

    fn decide(holds: bool, fails: bool) -> Verdict {
        debug_assert!(!(holds && fails));
        if holds {
            Verdict::Holds
        } else if fails {
            Verdict::Fails
        } else {
            Verdict::Undecided
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Fails => "FAILS",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

/// Which sequence a certificate refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// The Cesàro average `S_n`, indexed by `n`.
    Cesaro,
    /// The orbit distance `d(σ^i x, σ^i y)`, indexed by `i`.
    Distance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub quantity: Quantity,
    pub index: usize,
    pub bound: RationalInterval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagVerdict {
    pub verdict: Verdict,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyParams {
    pub horizon: usize,
    pub window: usize,
    pub burn_in: usize,
    #[serde(with = "serde_rational")]
    pub tolerance: Rational,
    /// Zero disables the threshold on the limsup sides.
    #[serde(with = "serde_rational")]
    pub modulus: Rational,
}

impl ClassifyParams {
    /// Defaults: `W = 64`, `N_min = 16`, `ε = 1/16`, `η = 1/4`.
    pub fn new(horizon: usize) -> Self {
        ClassifyParams {
            horizon,
            window: DEFAULT_WINDOW,
            burn_in: DEFAULT_BURN_IN,
            tolerance: rat(1, 16),
            modulus: rat(1, 4),
        }
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = window;
        self
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    pub fn with_tolerance(mut self, tolerance: Rational) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_modulus(mut self, modulus: Rational) -> Self {
        self.modulus = modulus;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.window == 0 {
            return Err(Error::invalid("window must be at least 1"));
        }
        if self.burn_in == 0 {
            return Err(Error::invalid("burn-in must be at least 1"));
        }
        if self.horizon < self.burn_in {
            return Err(Error::invalid(format!(
                "horizon {} is below the burn-in {}",
                self.horizon, self.burn_in
            )));
        }
        if self.tolerance <= Rational::zero() || self.tolerance >= Rational::one() {
            return Err(Error::invalid(format!("tolerance {} must lie in (0, 1)", self.tolerance)));
        }
        if self.modulus > Rational::one() || self.modulus < Rational::zero() {
            return Err(Error::invalid(format!("modulus {} must lie in [0, 1]", self.modulus)));
        }
        if !self.modulus.is_zero() && self.modulus <= self.tolerance {
            return Err(Error::ModulusNotAboveTolerance);
        }
        Ok(())
    }

    /// First `n` of the late window, `max(⌈3N/4⌉, N_min)`.
    pub fn late_start(&self) -> usize {
        (3 * self.horizon).div_ceil(4).max(self.burn_in).min(self.horizon)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairVerdict {
    pub horizon: usize,
    pub window: usize,
    pub burn_in: usize,
    pub late_start: usize,
    #[serde(with = "serde_rational")]
    pub tolerance: Rational,
    #[serde(with = "serde_rational")]
    pub modulus: Rational,
    pub proximal: FlagVerdict,
    pub asymptotic: FlagVerdict,
    pub li_yorke: FlagVerdict,
    pub mean_proximal: FlagVerdict,
    pub mean_asymptotic: FlagVerdict,
    /// The limsup side `D_η` on its own.
    pub mean_limsup: FlagVerdict,
    pub mean_li_yorke: FlagVerdict,
    /// `S_n` with the smallest upper bound over `[N_min, N]`.
    pub liminf_hi: Certificate,
    /// `S_n` with the largest lower bound over the late window.
    pub limsup_lo: Certificate,
}

impl PairVerdict {
    /// The six flags in hierarchy order, for tabulation.
    pub fn flags(&self) -> [(&'static str, Verdict); 6] {
        [
            ("proximal", self.proximal.verdict),
            ("asymptotic", self.asymptotic.verdict),
            ("mean_proximal", self.mean_proximal.verdict),
            ("mean_asymptotic", self.mean_asymptotic.verdict),
            ("li_yorke", self.li_yorke.verdict),
            ("mean_li_yorke", self.mean_li_yorke.verdict),
        ]
    }

    /// Hierarchy implications this verdict violates; empty when consistent.
    pub fn hierarchy_violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let holds = |f: &FlagVerdict| f.verdict == Verdict::Holds;
        let fails = |f: &FlagVerdict| f.verdict == Verdict::Fails;
        if holds(&self.asymptotic) && fails(&self.mean_asymptotic) {
            out.push("asymptotic => mean_asymptotic");
        }
        if holds(&self.mean_asymptotic) && fails(&self.mean_proximal) {
            out.push("mean_asymptotic => mean_proximal");
        }
        if holds(&self.mean_proximal) && fails(&self.proximal) {
            out.push("mean_proximal => proximal");
        }
        if holds(&self.mean_li_yorke) && (!holds(&self.mean_proximal) || !holds(&self.mean_limsup)) {
            out.push("mean_li_yorke => mean_proximal and limsup");
        }
        out
    }
}

/// Classifies `(x, y)` on the first `params.horizon` orbit steps.
pub fn classify(x: &SymbolicPoint, y: &SymbolicPoint, params: &ClassifyParams) -> Result<PairVerdict> {
    params.validate()?;
    let series = cesaro(x, y, params.horizon, params.window, params.burn_in)?;
    classify_series(&series, params)
}

/// Same as [`classify`] from an already computed series, which must match
/// the horizon, window and burn-in of `params`.
pub fn classify_series(series: &CesaroSeries, params: &ClassifyParams) -> Result<PairVerdict> {
    params.validate()?;
    if series.horizon() != params.horizon || series.window() != params.window || series.burn_in() != params.burn_in {
        return Err(Error::invalid("series does not match the classification parameters"));
    }
    let n = params.horizon;
    let eps = &params.tolerance;
    let eta = &params.modulus;
    let late = params.late_start();
    let cert_s = |k: usize| Certificate { quantity: Quantity::Cesaro, index: k, bound: series.interval(k) };
    let trace = series.trace();
    let cert_d = |i: usize| Certificate { quantity: Quantity::Distance, index: i, bound: trace.term(i) };

    let all = series.extremes(params.burn_in, n);
    let tail = series.extremes(late, n);

    let mean_proximal = {
        let h = cert_s(all.min_hi);
        let f = cert_s(all.min_lo);
        let holds = h.bound.hi() <= eps;
        let fails = f.bound.lo() > eps;
        flag(holds, fails, h, f)
    };
    let mean_asymptotic = {
        let h = cert_s(tail.max_hi);
        let f = cert_s(tail.max_lo);
        let holds = h.bound.hi() <= eps;
        let fails = f.bound.lo() > eps;
        flag(holds, fails, h, f)
    };
    let mean_limsup = {
        let h = cert_s(tail.max_lo);
        let f = cert_s(tail.max_hi);
        limsup_flag(h, f, eta)
    };
    let mean_li_yorke = conjunction(&mean_proximal, &mean_limsup);

    // Pointwise extremes come straight from the gaps: d_i.hi = 1/(g+1) with
    // g = W on slack indices, d_i.lo = d_i.hi off slack and 0 on slack.
    let gaps = trace.gaps();
    let w = params.window as u32;
    let arg_by = |range: std::ops::Range<usize>, better: &dyn Fn(u32, u32) -> bool| {
        let mut best = range.start;
        for i in range {
            if better(gaps[i], gaps[best]) {
                best = i;
            }
        }
        best
    };
    let key_lo = |g: u32| if g == w { u32::MAX } else { g };
    let min_hi_i = arg_by(0..n, &|a, b| a > b);
    let min_lo_i = arg_by(0..n, &|a, b| key_lo(a) > key_lo(b));
    let late_i = late.min(n - 1);
    let max_lo_i = arg_by(late_i..n, &|a, b| key_lo(a) < key_lo(b));
    let max_hi_i = arg_by(late_i..n, &|a, b| a < b);

    let proximal = {
        let h = cert_d(min_hi_i);
        let f = cert_d(min_lo_i);
        let holds = h.bound.hi() <= eps;
        let fails = f.bound.lo() > eps;
        flag(holds, fails, h, f)
    };
    let li_yorke_limsup = limsup_flag(cert_d(max_lo_i), cert_d(max_hi_i), eta);
    let li_yorke = conjunction(&proximal, &li_yorke_limsup);

    let asymptotic = {
        let entry = (0..n).rev().find(|&i| trace.term(i).hi() > eps).map_or(0, |i| i + 1);
        let f = cert_d(max_lo_i);
        let fails = f.bound.lo() > eps;
        let mut certificates = Vec::new();
        let mut holds = false;
        if entry <= late_i {
            let caught_up = cert_s(tail.max_lo);
            holds = caught_up.bound.lo() <= eps;
            certificates.push(cert_d(entry));
            certificates.push(caught_up);
        }
        let verdict = Verdict::decide(holds, fails);
        if verdict != Verdict::Holds {
            certificates.push(f);
        }
        FlagVerdict { verdict, certificates }
    };

    Ok(PairVerdict {
        horizon: n,
        window: params.window,
        burn_in: params.burn_in,
        late_start: late,
        tolerance: eps.clone(),
        modulus: eta.clone(),
        proximal,
        asymptotic,
        li_yorke,
        mean_proximal,
        mean_asymptotic,
        mean_limsup,
        mean_li_yorke,
        liminf_hi: cert_s(all.min_hi),
        limsup_lo: cert_s(tail.max_lo),
    })
}

fn flag(holds: bool, fails: bool, hold_cert: Certificate, fail_cert: Certificate) -> FlagVerdict {
    let verdict = Verdict::decide(holds, fails);
    let certificates = match verdict {
        Verdict::Holds => vec![hold_cert],
        Verdict::Fails => vec![fail_cert],
        Verdict::Undecided => vec![hold_cert, fail_cert],
    };
    FlagVerdict { verdict, certificates }
}

/// `best_lo` carries the largest lower bound, `best_hi` the largest upper
/// bound over the late window.
fn limsup_flag(best_lo: Certificate, best_hi: Certificate, eta: &Rational) -> FlagVerdict {
    let (holds, fails) = if eta.is_zero() {
        (best_lo.bound.lo() > eta, best_hi.bound.hi().is_zero())
    } else {
        (best_lo.bound.lo() >= eta, best_hi.bound.hi() < eta)
    };
    flag(holds, fails, best_lo, best_hi)
}

fn conjunction(a: &FlagVerdict, b: &FlagVerdict) -> FlagVerdict {
    let verdict = a.verdict.and(b.verdict);
    let certificates = match verdict {
        Verdict::Fails if a.verdict == Verdict::Fails => a.certificates.clone(),
        Verdict::Fails => b.certificates.clone(),
        _ => a.certificates.iter().chain(&b.certificates).cloned().collect(),
    };
    FlagVerdict { verdict, certificates }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symseq::{periodic_point, Symbol, Word};

    fn zero() -> SymbolicPoint {
        SymbolicPoint::fixed(Symbol::ZERO, 2).unwrap()
    }

    fn one() -> SymbolicPoint {
        SymbolicPoint::fixed(Symbol::ONE, 2).unwrap()
    }

    #[test]
    fn kleene_and() {
        use Verdict::*;
        assert_eq!(Holds.and(Holds), Holds);
        assert_eq!(Holds.and(Undecided), Undecided);
        assert_eq!(Undecided.and(Fails), Fails);
        assert_eq!(Fails.and(Holds), Fails);
    }

    #[test]
    fn diagonal_pair() {
        let x = periodic_point(&Word::from_digits("011").unwrap()).unwrap();
        let v = classify(&x, &x.clone(), &ClassifyParams::new(200)).unwrap();
        assert_eq!(v.mean_asymptotic.verdict, Verdict::Holds);
        assert_eq!(v.mean_li_yorke.verdict, Verdict::Fails);
        assert_eq!(v.asymptotic.verdict, Verdict::Holds);
        assert_eq!(v.li_yorke.verdict, Verdict::Fails);
        assert!(v.hierarchy_violations().is_empty());
    }

    #[test]
    fn opposite_fixed_points() {
        let v = classify(&zero(), &one(), &ClassifyParams::new(100)).unwrap();
        assert_eq!(v.mean_proximal.verdict, Verdict::Fails);
        assert_eq!(v.mean_limsup.verdict, Verdict::Holds);
        assert_eq!(v.mean_li_yorke.verdict, Verdict::Fails);
        assert_eq!(v.proximal.verdict, Verdict::Fails);
        assert_eq!(v.asymptotic.verdict, Verdict::Fails);
        let v = classify(&zero(), &one(), &ClassifyParams::new(100).with_modulus(rat(1, 1))).unwrap();
        assert_eq!(v.mean_limsup.verdict, Verdict::Holds);
    }

    #[test]
    fn modulus_must_exceed_tolerance() {
        let p = ClassifyParams::new(100).with_modulus(rat(1, 16));
        let err = classify(&zero(), &one(), &p).unwrap_err();
        assert_eq!(err.to_string(), "modulus must exceed tolerance");
        assert!(classify(&zero(), &one(), &ClassifyParams::new(8)).is_err());
        let v = classify(&zero(), &one(), &ClassifyParams::new(100).with_modulus(Rational::zero())).unwrap();
        assert_eq!(v.mean_limsup.verdict, Verdict::Holds);
    }

    #[test]
    fn eventually_equal_pair_is_asymptotic() {
        let a = SymbolicPoint::tail(Word::from_digits("1111").unwrap(), Symbol::ZERO, 2).unwrap();
        let v = classify(&a, &zero(), &ClassifyParams::new(400)).unwrap();
        assert_eq!(v.asymptotic.verdict, Verdict::Holds);
        assert_eq!(v.mean_asymptotic.verdict, Verdict::Holds);
        assert_eq!(v.mean_proximal.verdict, Verdict::Holds);
        assert_eq!(v.proximal.verdict, Verdict::Holds);
    }

    #[test]
    fn certificates_replay() {
        let x = periodic_point(&Word::from_digits("0001").unwrap()).unwrap();
        let y = periodic_point(&Word::from_digits("0100").unwrap()).unwrap();
        let v = classify(&x, &y, &ClassifyParams::new(300)).unwrap();
        let s = cesaro(&x, &y, 300, 64, 16).unwrap();
        for f in [&v.mean_proximal, &v.mean_asymptotic, &v.mean_li_yorke, &v.proximal, &v.asymptotic] {
            for c in &f.certificates {
                let replay = match c.quantity {
                    Quantity::Cesaro => s.interval(c.index),
                    Quantity::Distance => s.trace().term(c.index),
                };
                assert_eq!(replay, c.bound);
            }
        }
    }

    #[test]
    fn verdict_json_layout() {
        let v = classify(&zero(), &one(), &ClassifyParams::new(32)).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert!(json.starts_with(r#"{"horizon":32,"window":64,"burn_in":16,"late_start":24,"tolerance":"1/16","modulus":"1/4","#));
        assert!(json.contains(r#""mean_proximal":{"verdict":"FAILS","certificates":[{"quantity":"cesaro","index":16,"bound":{"lo":"1","hi":"1"}}]}"#));
    }
}
