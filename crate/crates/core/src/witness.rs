//! Finite witness searches: mean-sensitivity witnesses inside a cylinder,
//! the periodic-anchor mean-proximal pairs, and greedy mean Li-Yorke sets.
//!
//! Every search works on an explicit, ordered candidate pool and reports
//! everything it tried.

use num_traits::Zero;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::tail_witness;
use crate::error::{Error, Result};
use crate::metric::{cesaro, CesaroSeries};
use crate::pairclass::{classify, classify_series, Certificate, ClassifyParams, PairVerdict, Quantity, Verdict};
use crate::rational::{serde_rational, Rational};
use crate::symseq::{Symbol, SymbolicPoint};

/// A labelled pool member.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub label: String,
    pub point: SymbolicPoint,
}

impl Candidate {
    pub fn new(label: impl Into<String>, point: SymbolicPoint) -> Self {
        Candidate { label: label.into(), point }
    }
}

/// Start offsets `s ∈ [1, limit)` where `x` re-enters its own depth-`c`
/// cylinder, i.e. `x_{s..s+c} = x_{0..c}`.
pub fn reentry_shifts(x: &SymbolicPoint, c: usize, limit: usize) -> Result<Vec<u64>> {
    if c == 0 {
        return Err(Error::invalid("cylinder depth must be at least 1"));
    }
    x.with_prefix(limit + c, |p| {
        let v = &p[..c];
        (1..limit).filter(|&s| &p[s..s + c] == v).map(|s| s as u64).collect()
    })
}

/// `(n, S_n)` with the largest lower bound over the late window.
fn late_limsup(series: &CesaroSeries, params: &ClassifyParams) -> Certificate {
    let n = series.extremes(params.late_start(), params.horizon).max_lo;
    Certificate { quantity: Quantity::Cesaro, index: n, bound: series.interval(n) }
}

#[derive(Clone, Debug, Serialize)]
pub struct SensitivityParams {
    pub depth: usize,
    pub classify: ClassifyParams,
    #[serde(with = "serde_rational")]
    pub target: Rational,
    /// How many re-entering shifts of `x` join the pool, earliest first.
    pub reentries: usize,
    /// Only `x` and its re-entering shifts, no tail witnesses.
    pub self_only: bool,
    /// Extra re-entering shifts sampled with this seed.
    pub seed: Option<u64>,
    pub sampled: usize,
}

impl SensitivityParams {
    pub fn new(depth: usize, classify: ClassifyParams, target: Rational) -> Self {
        SensitivityParams { depth, classify, target, reentries: 8, self_only: false, seed: None, sampled: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateScore {
    pub label: String,
    pub limsup_lo: Certificate,
}

/// Outcome of a sensitivity search; `found` is false when no candidate
/// reached the target at this horizon.
#[derive(Clone, Debug, Serialize)]
pub struct SensitivityWitness {
    pub base: String,
    pub depth: usize,
    pub horizon: usize,
    pub window: usize,
    #[serde(with = "serde_rational")]
    pub target: Rational,
    pub found: bool,
    pub witness: Option<String>,
    #[serde(with = "serde_rational")]
    pub limsup_lo: Rational,
    pub certificate: Option<Certificate>,
    pub tried: Vec<CandidateScore>,
    #[serde(skip)]
    pub witness_point: Option<SymbolicPoint>,
}

/// The pool searched by [`find_sensitivity_witness`]: `v·a^∞` for each
/// symbol `a` with `v = prefix(x, c)`, then re-entering shifts of `x`.
pub fn sensitivity_pool(x: &SymbolicPoint, params: &SensitivityParams) -> Result<Vec<Candidate>> {
    let c = params.depth;
    let n = params.classify.horizon;
    let mut pool = Vec::new();
    if params.self_only {
        pool.push(Candidate::new(x.label(), x.clone()));
    } else {
        for a in 0..x.alphabet_size() {
            let a = Symbol(a as u8);
            pool.push(Candidate::new(format!("prefix(x,{c})·{a}^∞"), tail_witness(x, c, a)?));
        }
    }
    let shifts = reentry_shifts(x, c, n)?;
    let mut chosen: Vec<u64> = shifts.iter().copied().take(params.reentries).collect();
    if let Some(seed) = params.seed {
        let rest = &shifts[chosen.len()..];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picks: Vec<usize> = sample(&mut rng, rest.len(), params.sampled.min(rest.len())).into_vec();
        picks.sort_unstable();
        chosen.extend(picks.into_iter().map(|i| rest[i]));
    }
    for s in chosen {
        pool.push(Candidate::new(format!("σ^{s} x"), x.shift(s)));
    }
    Ok(pool)
}

/// Searches the depth-`c` cylinder around `x` for `y` with late
/// `S_n(x, y).lo ≥ target`, returning the best candidate either way.
pub fn find_sensitivity_witness(x: &SymbolicPoint, params: &SensitivityParams) -> Result<SensitivityWitness> {
    params.classify.validate()?;
    let pool = sensitivity_pool(x, params)?;
    search_pool(x, pool, params)
}

/// [`find_sensitivity_witness`] over a caller-supplied pool; members outside
/// the cylinder are rejected.
pub fn search_pool(x: &SymbolicPoint, pool: Vec<Candidate>, params: &SensitivityParams) -> Result<SensitivityWitness> {
    let cp = &params.classify;
    let c = params.depth;
    let head = x.prefix(c)?;
    for cand in &pool {
        if cand.point.prefix(c)? != head {
            return Err(Error::invalid(format!("candidate {} leaves the depth-{c} cylinder", cand.label)));
        }
    }
    let scores = pool
        .par_iter()
        .map(|cand| {
            let s = cesaro(x, &cand.point, cp.horizon, cp.window, cp.burn_in)?;
            Ok(late_limsup(&s, cp))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<usize> = None;
    for (i, s) in scores.iter().enumerate() {
        if best.is_none_or(|b| s.bound.lo() > scores[b].bound.lo()) {
            best = Some(i);
        }
    }
    let best_cert = best.map(|b| scores[b].clone());
    let limsup_lo = best_cert.as_ref().map_or_else(Rational::zero, |c| c.bound.lo().clone());
    let found = best_cert.is_some() && limsup_lo >= params.target;
    Ok(SensitivityWitness {
        base: x.label(),
        depth: c,
        horizon: cp.horizon,
        window: cp.window,
        target: params.target.clone(),
        found,
        witness: best.map(|b| pool[b].label.clone()),
        limsup_lo,
        certificate: best_cert,
        witness_point: best.map(|b| pool[b].point.clone()),
        tried: pool
            .iter()
            .zip(scores)
            .map(|(cand, limsup_lo)| CandidateScore { label: cand.label.clone(), limsup_lo })
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivedPair {
    pub n1: u64,
    pub n2: u64,
    pub j: u64,
    pub verdict: PairVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnchorReport {
    pub period: usize,
    pub anchor: PairVerdict,
    /// `(σ^{n1·t+j} x, σ^{n2·t+j} x)` for `n1 < n2 ≤ max_multiple`, `j < t`.
    pub derived: Vec<DerivedPair>,
}

/// Classifies `(x, p)` for a point `p` of period `t`, plus the derived pairs
/// along the residue classes of `t`.
pub fn mean_proximal_anchor(
    x: &SymbolicPoint,
    p: &SymbolicPoint,
    period: usize,
    max_multiple: u64,
    params: &ClassifyParams,
) -> Result<AnchorReport> {
    if period == 0 {
        return Err(Error::invalid("period must be at least 1"));
    }
    let checked = params.horizon + params.window;
    let periodic = p.with_prefix(checked + period, |s| (0..checked).all(|i| s[i] == s[i + period]))?;
    if !periodic {
        return Err(Error::NotPeriodic { period, checked });
    }
    let anchor = classify(x, p, params)?;
    let t = period as u64;
    let mut jobs = Vec::new();
    for j in 0..t {
        for n1 in 0..=max_multiple {
            for n2 in n1 + 1..=max_multiple {
                jobs.push((n1, n2, j));
            }
        }
    }
    let derived = jobs
        .into_par_iter()
        .map(|(n1, n2, j)| {
            let verdict = classify(&x.shift(n1 * t + j), &x.shift(n2 * t + j), params)?;
            Ok(DerivedPair { n1, n2, j, verdict })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AnchorReport { period, anchor, derived })
}

#[derive(Clone, Debug, Serialize)]
pub struct PoolPair {
    pub i: usize,
    pub j: usize,
    pub verdict: PairVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScrambledSetReport {
    pub requested: usize,
    pub achieved: usize,
    /// Every off-diagonal pair among `selected` is mean Li-Yorke at horizon.
    pub success: bool,
    pub horizon: usize,
    #[serde(with = "serde_rational")]
    pub modulus: Rational,
    pub pool: Vec<String>,
    /// Pool indices that coincide with an earlier member on the horizon.
    pub duplicates: Vec<usize>,
    pub selected: Vec<usize>,
    /// Verdicts for every pair of distinct pool members.
    pub pairs: Vec<PoolPair>,
}

impl ScrambledSetReport {
    pub fn verdict(&self, i: usize, j: usize) -> Option<&PairVerdict> {
        let (i, j) = (i.min(j), i.max(j));
        self.pairs.iter().find(|p| p.i == i && p.j == j).map(|p| &p.verdict)
    }
}

/// Tail depths scanned by [`build_scrambled_candidates`], deepest first:
/// `3N/4, N/2, N/4, N/32, 14, 1`. Tails at depths `c < c'` share
/// `prefix(x, c)`, and late in the horizon they differ on about `c' − c`
/// indices, so quarter spacing keeps neighbours at least `1/4` apart.
pub fn default_scramble_depths(horizon: usize) -> Vec<usize> {
    let mut depths = vec![3 * horizon / 4, horizon / 2, horizon / 4, horizon / 32, 14, 1];
    depths.retain(|&c| c >= 1);
    depths.dedup();
    depths
}

/// Tail witnesses `v·a^∞` (`a ≠ 0`, `v = prefix(x, c)`) for each depth in
/// the given order, then re-entries of `x` into deep cylinders of `p`: the
/// earliest `s` with `x_{s..s+c} = p_{0..c}` for each `c` in
/// `reentry_depths`.
pub fn scrambled_pool(
    x: &SymbolicPoint,
    p: &SymbolicPoint,
    depths: &[usize],
    reentry_depths: &[usize],
    horizon: usize,
) -> Result<Vec<Candidate>> {
    let mut pool = Vec::new();
    for &c in depths {
        for a in 1..x.alphabet_size() {
            let a = Symbol(a as u8);
            pool.push(Candidate::new(format!("prefix(x,{c})·{a}^∞"), tail_witness(x, c, a)?));
        }
    }
    for &c in reentry_depths {
        let target = p.prefix(c)?;
        let hit = x.with_prefix(horizon + c, |s| (0..horizon).find(|&i| s[i..i + c] == *target.symbols()))?;
        if let Some(s) = hit {
            pool.push(Candidate::new(format!("σ^{s} x"), x.shift(s as u64)));
        }
    }
    Ok(pool)
}

/// Greedy selection of up to `m` pool members that are pairwise mean
/// Li-Yorke at horizon, scanning the pool in order.
pub fn build_scrambled_set(pool: &[Candidate], m: usize, params: &ClassifyParams) -> Result<ScrambledSetReport> {
    if m < 2 {
        return Err(Error::invalid("a scrambled set needs m ≥ 2"));
    }
    params.validate()?;
    let prefix_len = params.horizon + params.window;
    let mut duplicates = Vec::new();
    let mut distinct: Vec<usize> = Vec::new();
    for (i, cand) in pool.iter().enumerate() {
        let mut dup = false;
        for &k in &distinct {
            if cand.point.agrees_with(&pool[k].point, prefix_len)? {
                dup = true;
                break;
            }
        }
        if dup {
            duplicates.push(i);
        } else {
            distinct.push(i);
        }
    }
    let jobs: Vec<(usize, usize)> = distinct
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| distinct[a + 1..].iter().map(move |&j| (i, j)))
        .collect();
    let pairs = jobs
        .into_par_iter()
        .map(|(i, j)| {
            let s = cesaro(&pool[i].point, &pool[j].point, params.horizon, params.window, params.burn_in)?;
            Ok(PoolPair { i, j, verdict: classify_series(&s, params)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = ScrambledSetReport {
        requested: m,
        achieved: 0,
        success: false,
        horizon: params.horizon,
        modulus: params.modulus.clone(),
        pool: pool.iter().map(|c| c.label.clone()).collect(),
        duplicates,
        selected: Vec::new(),
        pairs,
    };
    let mut selected: Vec<usize> = Vec::new();
    for &i in &distinct {
        if selected.len() == m {
            break;
        }
        let compatible = selected
            .iter()
            .all(|&k| report.verdict(k, i).is_some_and(|v| v.mean_li_yorke.verdict == Verdict::Holds));
        if compatible {
            selected.push(i);
        }
    }
    report.achieved = selected.len();
    report.success = selected.len() >= m;
    report.selected = selected;
    Ok(report)
}

/// [`scrambled_pool`] followed by [`build_scrambled_set`].
pub fn build_scrambled_candidates(
    x: &SymbolicPoint,
    p: &SymbolicPoint,
    m: usize,
    params: &ClassifyParams,
) -> Result<ScrambledSetReport> {
    let pool = scrambled_pool(x, p, &default_scramble_depths(params.horizon), &[16, 64], params.horizon)?;
    build_scrambled_set(&pool, m, params)
}
