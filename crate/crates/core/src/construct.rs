//! Exact builders for the standard fixtures.
//!
//! The example sequence is the limit of the stage words
//!
//! ```text
//! w_1 = 0
//! w_k = w_{k-1} 0^{n_k} v_1 0^k v_1 1^k  v_2 0^k v_2 1^k ... v_m 0^k v_m 1^k
//! ```
//!
//! where `v_1, ..., v_m` enumerate `Pow(w_{k-1})` in canonical order (length,
//! then lexicographic) and `n_k` is the least integer with
//! `n_k ≥ |w_k|(1 - 1/k)`. The constraint mentions `|w_k|`, which itself
//! contains `0^{n_k}`; writing `t_k` for the length of the `v`-block, the
//! inequality `n k ≥ (|w_{k-1}| + n + t_k)(k - 1)` simplifies to
//! `n ≥ (k - 1)(|w_{k-1}| + t_k)`, so the minimal padding has that closed
//! form and `|w_k| = k (|w_{k-1}| + t_k)`.
//!
//! Stage lengths explode through `|Pow(w_{k-1})|`: `|w_2| = 14`,
//! `|w_3| = 2364`, `|w_4| = 12_416_173_792`. Stage 5 would need the
//! distinct-subword statistics of `w_4`, which is out of reach, so exact
//! statistics stop at stage 4 and the lazy point is defined on `[0, |w_4|)`.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symseq::{subwords, SubwordIndex, SubwordSet, Symbol, SymbolSource, SymbolicPoint, Word};

/// Stages above this need `--force`.
pub const DEFAULT_STAGE_CAP: u32 = 8;

/// Largest stage word the lazy example point keeps fully in memory; the
/// following stage is streamed from it.
const MATERIALIZE_LIMIT: u128 = 1 << 24;

/// Smallest `n` with `n·k ≥ (before + n + tail)(k − 1)`, i.e.
/// `(k − 1)(before + tail)`.
pub fn min_padding(k: u32, before: u128, tail: u128) -> u128 {
    assert!(k >= 2, "padding is defined from stage 2 on");
    u128::from(k - 1) * (before + tail)
}

/// One stage `w_k` of the example construction, fully materialized.
#[derive(Clone, Debug, Serialize)]
pub struct ExampleBuild {
    pub k: u32,
    pub word: Word,
    /// `n_k`; zero for `k = 1`.
    pub padding: u128,
    /// `A_k = Pow(w_{k-1})`; absent for `k = 1`.
    #[serde(skip)]
    pub subwords: Option<SubwordSet>,
    /// Length of the `v_1 0^k v_1 1^k ...` block.
    pub tail_len: u128,
}

impl ExampleBuild {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.word.count(Symbol::ONE)
    }
}

/// Exact counts for stage `k`, derived without materializing `w_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StageStats {
    pub k: u32,
    /// `|w_k|`
    pub len: u128,
    /// Number of 1s in `w_k`.
    pub ones: u128,
    /// `n_k` (0 at stage 1).
    pub padding: u128,
    /// `|A_k|` (0 at stage 1).
    pub subword_count: u128,
    pub subword_len_total: u128,
    pub subword_ones_total: u128,
    /// `t_k`, length of the `v`-block.
    pub tail_len: u128,
}

impl StageStats {
    fn first() -> Self {
        StageStats {
            k: 1,
            len: 1,
            ones: 0,
            padding: 0,
            subword_count: 0,
            subword_len_total: 0,
            subword_ones_total: 0,
            tail_len: 0,
        }
    }

    /// Stage `k` from the previous word's distinct-subword statistics.
    fn next(prev: &StageStats, index: &SubwordIndex) -> Result<Self> {
        let k = prev.k + 1;
        let st = index.stats(Symbol::ONE);
        let kk = u128::from(k);
        let overflow = || Error::StageCapacity { stage: k, reason: "counts overflow 128 bits".into() };
        let tail_len = st
            .total_len
            .checked_mul(2)
            .and_then(|a| st.count.checked_mul(2 * kk).and_then(|b| a.checked_add(b)))
            .ok_or_else(overflow)?;
        let tail_ones = 2 * st.symbol_count + kk * st.count;
        let padding = min_padding(k, prev.len, tail_len);
        Ok(StageStats {
            k,
            len: prev.len + padding + tail_len,
            ones: prev.ones + tail_ones,
            padding,
            subword_count: st.count,
            subword_len_total: st.total_len,
            subword_ones_total: st.symbol_count,
            tail_len,
        })
    }

    /// `n_k · k ≥ |w_k| · (k − 1)`, in exact integers.
    pub fn padding_holds(&self) -> bool {
        self.k < 2 || self.padding * u128::from(self.k) >= self.len * u128::from(self.k - 1)
    }

    /// `ones(w_k) / |w_k| ≤ 1/k`, cross-multiplied.
    pub fn ones_fraction_holds(&self) -> bool {
        self.ones * u128::from(self.k) <= self.len
    }
}

fn append_block(word: &mut Word, k: u32, set: &SubwordSet) {
    for v in set.iter() {
        word.extend_from_slice(v.symbols());
        word.extend_repeat(Symbol::ZERO, k as usize);
        word.extend_from_slice(v.symbols());
        word.extend_repeat(Symbol::ONE, k as usize);
    }
}

/// Builds `w_1, ..., w_k`, failing once a stage word exceeds `budget`.
pub fn example_stages(k: u32, budget: u64) -> Result<Vec<ExampleBuild>> {
    if k == 0 {
        return Err(Error::invalid("stages start at k = 1"));
    }
    let mut out = vec![ExampleBuild {
        k: 1,
        word: Word::from_digits("0").unwrap(),
        padding: 0,
        subwords: None,
        tail_len: 0,
    }];
    let mut stats = StageStats::first();
    for stage in 2..=k {
        let prev = &out.last().unwrap().word;
        let index = SubwordIndex::new(prev.symbols());
        stats = StageStats::next(&stats, &index)?;
        if stats.len > u128::from(budget) {
            return Err(Error::BudgetExceeded {
                requested: u64::try_from(stats.len).unwrap_or(u64::MAX),
                budget,
            });
        }
        let set = index.subword_set();
        let mut word = prev.clone();
        word.extend_repeat(Symbol::ZERO, stats.padding as usize);
        append_block(&mut word, stage, &set);
        debug_assert_eq!(word.len() as u128, stats.len);
        out.push(ExampleBuild {
            k: stage,
            word,
            padding: stats.padding,
            subwords: Some(set),
            tail_len: stats.tail_len,
        });
    }
    Ok(out)
}

/// `w_k`, deterministic and reproducible.
pub fn example_stage(k: u32, budget: u64) -> Result<ExampleBuild> {
    Ok(example_stages(k, budget)?.pop().unwrap())
}

/// Exact statistics for stages `1..=k`. Stage `k` needs `w_{k-1}` in memory,
/// which limits this to `k ≤ 4` in practice.
pub fn stage_stats(k: u32, budget: u64) -> Result<Vec<StageStats>> {
    if k == 0 {
        return Err(Error::invalid("stages start at k = 1"));
    }
    let mut out = vec![StageStats::first()];
    let mut word = Word::from_digits("0").unwrap();
    for stage in 2..=k {
        let prev = *out.last().unwrap();
        if prev.len > u128::from(budget).min(u128::from(u32::MAX - 1)) {
            return Err(Error::StageCapacity {
                stage,
                reason: format!(
                    "needs the distinct-subword statistics of w_{} ({} symbols)",
                    stage - 1,
                    prev.len
                ),
            });
        }
        if word.len() as u128 != prev.len {
            word = example_stage(stage - 1, budget)?.word;
        }
        let index = SubwordIndex::new(word.symbols());
        let next = StageStats::next(&prev, &index)?;
        if next.len <= u128::from(budget) && stage < k {
            let set = index.subword_set();
            word.extend_repeat(Symbol::ZERO, next.padding as usize);
            append_block(&mut word, stage, &set);
        }
        out.push(next);
    }
    Ok(out)
}

/// Symbol at `offset` of the `v`-block of stage `k`, streamed from the
/// subword index of `w_{k-1}`.
#[derive(Debug)]
struct StreamedBlock {
    k: u32,
    index: SubwordIndex,
    /// (subword length, count, block offset of the first unit)
    groups: Vec<(usize, u64, u128)>,
}

impl StreamedBlock {
    fn new(k: u32, index: SubwordIndex) -> Self {
        let mut groups = Vec::new();
        let mut offset = 0u128;
        for (len, &count) in index.count_by_length().iter().enumerate() {
            if count > 0 {
                groups.push((len, count, offset));
                offset += u128::from(count) * (2 * len as u128 + 2 * u128::from(k));
            }
        }
        StreamedBlock { k, index, groups }
    }

    fn fill(&self, mut offset: u128, out: &mut [Symbol]) {
        let k = self.k as usize;
        let mut cache: Option<(usize, Vec<u32>)> = None;
        let mut written = 0;
        while written < out.len() {
            let g = self.groups.partition_point(|&(_, _, start)| start <= offset) - 1;
            let (len, _, start) = self.groups[g];
            let unit = 2 * len + 2 * k;
            let rel = offset - start;
            let j = (rel / unit as u128) as usize;
            let mut r = (rel % unit as u128) as usize;
            if cache.as_ref().map(|c| c.0) != Some(len) {
                cache = Some((len, self.index.starts_of_length(len)));
            }
            let s = cache.as_ref().unwrap().1[j] as usize;
            let v = &self.index.text()[s..s + len];
            // unit layout: v | 0^k | v | 1^k
            let segments: [(usize, Option<&[Symbol]>, Symbol); 4] = [
                (len, Some(v), Symbol::ZERO),
                (k, None, Symbol::ZERO),
                (len, Some(v), Symbol::ZERO),
                (k, None, Symbol::ONE),
            ];
            let mut seg_start = 0;
            for (seg_len, word, fill) in segments {
                let seg_end = seg_start + seg_len;
                if r < seg_end && written < out.len() {
                    let from = r - seg_start;
                    let n = (seg_end - r).min(out.len() - written);
                    let dst = &mut out[written..written + n];
                    match word {
                        Some(v) => dst.copy_from_slice(&v[from..from + n]),
                        None => dst.fill(fill),
                    }
                    written += n;
                    r += n;
                    offset += n as u128;
                }
                seg_start = seg_end;
            }
        }
    }
}

#[derive(Debug)]
struct ExampleLayout {
    /// `w_m`, the last fully materialized stage.
    head: Vec<Symbol>,
    /// Stage `m + 1`: its padding, total length and streamed block.
    padding: u128,
    end: u128,
    block: StreamedBlock,
}

/// Source of the example point `x = lim w_k`, valid on `[0, |w_{m+1}|)`
/// where `w_m` is the last stage small enough to hold in memory.
#[derive(Debug)]
pub struct ExampleSource {
    materialize_limit: u128,
    layout: OnceLock<ExampleLayout>,
}

impl Default for ExampleSource {
    fn default() -> Self {
        ExampleSource { materialize_limit: MATERIALIZE_LIMIT, layout: OnceLock::new() }
    }
}

impl ExampleSource {
    /// Keeps stages up to length `limit` in memory and streams the next.
    pub fn with_materialize_limit(limit: u128) -> Self {
        ExampleSource { materialize_limit: limit, layout: OnceLock::new() }
    }

    fn layout(&self) -> &ExampleLayout {
        self.layout.get_or_init(|| {
            let mut head = Word::from_digits("0").unwrap();
            let mut stats = StageStats::first();
            loop {
                let index = SubwordIndex::new(head.symbols());
                let next = StageStats::next(&stats, &index).expect("stage counts fit in 128 bits");
                if next.len > self.materialize_limit {
                    return ExampleLayout {
                        head: head.into_symbols(),
                        padding: next.padding,
                        end: next.len,
                        block: StreamedBlock::new(next.k, index),
                    };
                }
                let set = index.subword_set();
                head.extend_repeat(Symbol::ZERO, next.padding as usize);
                append_block(&mut head, next.k, &set);
                stats = next;
            }
        })
    }

    /// Length of the prefix this source can produce.
    pub fn defined_len(&self) -> u128 {
        self.layout().end
    }

    /// Occurrences of `symbol` in `x_{0..end}`, streamed in parallel chunks
    /// without materializing the prefix.
    pub fn count_in_prefix(&self, end: u64, symbol: Symbol) -> Result<u64> {
        const CHUNK: u64 = 1 << 22;
        let chunks: Vec<u64> = (0..end.div_ceil(CHUNK)).collect();
        chunks
            .par_iter()
            .map(|&c| {
                let start = c * CHUNK;
                let mut buf = vec![Symbol::ZERO; (end - start).min(CHUNK) as usize];
                self.fill(start, &mut buf)?;
                Ok(buf.iter().filter(|&&s| s == symbol).count() as u64)
            })
            .sum()
    }
}

impl SymbolSource for ExampleSource {
    fn alphabet_size(&self) -> u16 {
        2
    }

    fn fill(&self, start: u64, out: &mut [Symbol]) -> Result<()> {
        let layout = self.layout();
        let start = u128::from(start);
        let end = start + out.len() as u128;
        if end > layout.end {
            return Err(Error::StageCapacity {
                stage: layout.block.k + 1,
                reason: format!("the example point is only constructed on its first {} symbols", layout.end),
            });
        }
        let head_len = layout.head.len() as u128;
        let pad_end = head_len + layout.padding;
        let mut pos = start;
        let mut idx = 0usize;
        while idx < out.len() {
            if pos < head_len {
                let n = ((head_len - pos) as usize).min(out.len() - idx);
                out[idx..idx + n].copy_from_slice(&layout.head[pos as usize..pos as usize + n]);
                idx += n;
                pos += n as u128;
            } else if pos < pad_end {
                let n = ((pad_end - pos).min((out.len() - idx) as u128)) as usize;
                out[idx..idx + n].fill(Symbol::ZERO);
                idx += n;
                pos += n as u128;
            } else {
                layout.block.fill(pos - pad_end, &mut out[idx..]);
                idx = out.len();
            }
        }
        Ok(())
    }

    fn label(&self) -> String {
        "example".into()
    }
}

/// The example point `x = lim w_k` as a lazy point.
pub fn example_point() -> SymbolicPoint {
    SymbolicPoint::new(ExampleSource::default())
}

/// `v·a^∞` with `v = prefix(x, c)`.
pub fn tail_witness(x: &SymbolicPoint, c: usize, tail: Symbol) -> Result<SymbolicPoint> {
    if c == 0 {
        return Err(Error::invalid("cylinder depth must be at least 1"));
    }
    let v = x.prefix(c)?;
    Ok(SymbolicPoint::tail(v, tail, x.alphabet_size())?.with_budget(x.budget()))
}

/// `(v·0^∞, v·1^∞)` with `v = prefix(x, c)`.
pub fn tail_witnesses(x: &SymbolicPoint, c: usize) -> Result<(SymbolicPoint, SymbolicPoint)> {
    Ok((tail_witness(x, c, Symbol::ZERO)?, tail_witness(x, c, Symbol::ONE)?))
}

/// Gap rule for [`delta_example`]: `g(1) = first_gap` and
/// `g(k) = k · Σ_{j<k} (g(j) + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaExampleParams {
    pub first_gap: u64,
}

impl Default for DeltaExampleParams {
    fn default() -> Self {
        DeltaExampleParams { first_gap: 1 }
    }
}

impl DeltaExampleParams {
    /// `g(1), g(2), ...` until the positions leave `u64`.
    pub fn gaps(&self) -> Vec<u64> {
        let mut gaps = vec![self.first_gap];
        let mut total = self.first_gap + 1;
        for k in 2u64.. {
            let Some(g) = k.checked_mul(total) else { break };
            let Some(t) = total.checked_add(g).and_then(|t| t.checked_add(1)) else { break };
            gaps.push(g);
            total = t;
        }
        gaps
    }
}

/// `0^{g(1)} 1 0^{g(2)} 1 0^{g(3)} 1 ...`
#[derive(Debug, Clone)]
pub struct DeltaSource {
    params: DeltaExampleParams,
    /// Index of the `k`-th 1.
    ones: Vec<u64>,
}

impl DeltaSource {
    pub fn new(params: DeltaExampleParams) -> Self {
        let mut ones = Vec::new();
        let mut pos = 0u64;
        for g in params.gaps() {
            pos += g;
            ones.push(pos);
            pos += 1;
        }
        DeltaSource { params, ones }
    }

    pub fn one_positions(&self) -> &[u64] {
        &self.ones
    }
}

impl SymbolSource for DeltaSource {
    fn alphabet_size(&self) -> u16 {
        2
    }

    fn fill(&self, start: u64, out: &mut [Symbol]) -> Result<()> {
        out.fill(Symbol::ZERO);
        let end = start + out.len() as u64;
        let first = self.ones.partition_point(|&p| p < start);
        for &p in self.ones[first..].iter().take_while(|&&p| p < end) {
            out[(p - start) as usize] = Symbol::ONE;
        }
        Ok(())
    }

    fn label(&self) -> String {
        if self.params == DeltaExampleParams::default() {
            "delta".into()
        } else {
            format!("delta(g1={})", self.params.first_gap)
        }
    }
}

pub fn delta_example(params: DeltaExampleParams) -> SymbolicPoint {
    SymbolicPoint::new(DeltaSource::new(params))
}

/// Canonical listing of `Pow(w)` used by the construction.
pub fn stage_subwords(w: &Word) -> Result<SubwordSet> {
    subwords(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symseq::DEFAULT_PREFIX_BUDGET;

    /// Smallest n with n·k ≥ (before + n + tail)(k − 1), by search.
    fn padding_by_search(k: u128, before: u128, tail: u128) -> u128 {
        (0..).find(|&n| n * k >= (before + n + tail) * (k - 1)).unwrap()
    }

    #[test]
    fn padding_examples() {
        assert_eq!(padding_by_search(2, 1, 6), 7);
        assert_eq!(min_padding(2, 1, 6), 7);
        assert_eq!(min_padding(2, 0, 0), 0);
        for (k, before, tail) in [(3, 14, 774), (4, 5, 9), (7, 100, 3), (5, 0, 1)] {
            assert_eq!(min_padding(k, before, tail), padding_by_search(k.into(), before, tail));
        }
        let w3 = example_stage(3, DEFAULT_PREFIX_BUDGET).unwrap();
        assert_eq!(w3.padding, 2 * (14 + w3.tail_len));
    }

    #[test]
    fn first_stages() {
        let s1 = example_stage(1, DEFAULT_PREFIX_BUDGET).unwrap();
        assert_eq!(s1.word.to_string(), "0");
        let s2 = example_stage(2, DEFAULT_PREFIX_BUDGET).unwrap();
        // A_2 = {0}; block = 0·00·0·11
        let mut hand = "0".to_string();
        hand.push_str(&"0".repeat(7));
        hand.push('0');
        hand.push_str("00");
        hand.push('0');
        hand.push_str("11");
        assert_eq!(s2.word.to_string(), hand);
        assert_eq!(s2.word.to_string(), format!("{}11", "0".repeat(12)));
        assert_eq!((s2.len(), s2.padding, s2.tail_len), (14, 7, 6));
        assert_eq!(s2.subwords.as_ref().unwrap().len(), 1);
    }

    #[test]
    fn stages_extend_and_respect_bounds() {
        let stages = example_stages(3, DEFAULT_PREFIX_BUDGET).unwrap();
        for pair in stages.windows(2) {
            assert!(pair[1].word.symbols().starts_with(pair[0].word.symbols()));
        }
        for s in &stages {
            let (k, len) = (u128::from(s.k), s.len() as u128);
            assert!(s.padding * k >= len * (k - 1));
            assert!(s.ones() as u128 * k <= len);
        }
        assert_eq!(stages[2].len(), 2364);
        assert_eq!(stages[2].subwords.as_ref().unwrap().len(), 38);
    }

    #[test]
    fn stats_agree_with_materialized_words() {
        let stats = stage_stats(3, DEFAULT_PREFIX_BUDGET).unwrap();
        let stages = example_stages(3, DEFAULT_PREFIX_BUDGET).unwrap();
        for (st, b) in stats.iter().zip(&stages) {
            assert_eq!(st.len, b.len() as u128);
            assert_eq!(st.ones, b.ones() as u128);
            assert_eq!(st.padding, b.padding);
        }
    }

    #[test]
    fn stage_four_counts() {
        let stats = stage_stats(4, DEFAULT_PREFIX_BUDGET).unwrap();
        let s4 = stats[3];
        assert_eq!(s4.subword_count, 1_533_246);
        assert_eq!(s4.len, 12_416_173_792);
        assert_eq!(s4.ones, 313_812_116);
        assert!(s4.padding_holds() && s4.ones_fraction_holds());
        assert!(matches!(example_stage(4, DEFAULT_PREFIX_BUDGET), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(stage_stats(5, DEFAULT_PREFIX_BUDGET), Err(Error::StageCapacity { stage: 5, .. })));
    }

    #[test]
    fn builds_are_deterministic() {
        let a = example_stage(3, DEFAULT_PREFIX_BUDGET).unwrap();
        let b = example_stage(3, DEFAULT_PREFIX_BUDGET).unwrap();
        assert_eq!(a.word, b.word);
    }

    #[test]
    fn example_point_prefixes() {
        let x = example_point();
        assert_eq!(x.prefix(1).unwrap().to_string(), "0");
        assert_eq!(x.prefix(14).unwrap().to_string(), "00000000000011");
        let w3 = example_stage(3, DEFAULT_PREFIX_BUDGET).unwrap();
        assert_eq!(x.prefix(2364).unwrap(), w3.word);
        // the stage-4 padding follows w_3
        assert_eq!(x.prefix(100_000).unwrap().count(Symbol::ONE), w3.ones());
    }

    #[test]
    fn streamed_stage_matches_materialized() {
        let src = ExampleSource::with_materialize_limit(100);
        assert_eq!(src.defined_len(), 2364);
        let x = SymbolicPoint::new(src);
        let w3 = example_stage(3, DEFAULT_PREFIX_BUDGET).unwrap();
        assert_eq!(x.prefix(2364).unwrap(), w3.word);
        assert!(matches!(x.prefix(2365), Err(Error::StageCapacity { .. })));
        // random-access fills agree with the sequential prefix
        let shifted = x.shift(2000).prefix(364).unwrap();
        assert_eq!(shifted.symbols(), &w3.word.symbols()[2000..]);
    }

    #[test]
    fn streamed_counts() {
        let src = ExampleSource::with_materialize_limit(100);
        assert_eq!(src.count_in_prefix(2364, Symbol::ONE).unwrap(), 194);
        assert_eq!(src.count_in_prefix(14, Symbol::ONE).unwrap(), 2);
        assert!(src.count_in_prefix(2365, Symbol::ONE).is_err());
    }

    #[test]
    fn stage_four_block_starts_with_first_subword() {
        let src = ExampleSource::default();
        let start = 2364 + 9_312_130_344u64;
        let mut out = vec![Symbol::ZERO; 10];
        src.fill(start, &mut out).unwrap();
        assert_eq!(Word::new(out).to_string(), "0000001111");
    }

    #[test]
    fn tail_witness_examples() {
        let x = example_point();
        let (a, b) = tail_witnesses(&x, 1).unwrap();
        assert_eq!(a.prefix(6).unwrap().to_string(), "000000");
        assert_eq!(b.prefix(6).unwrap().to_string(), "011111");
        let (a, b) = tail_witnesses(&x, 14).unwrap();
        assert_eq!(a.prefix(14).unwrap().to_string(), "00000000000011");
        assert_eq!(b.prefix(14).unwrap().to_string(), "00000000000011");
        let (pa, pb) = (a.prefix(200).unwrap(), b.prefix(200).unwrap());
        assert!((14..200).all(|i| pa.symbols()[i] != pb.symbols()[i]));
    }

    #[test]
    fn delta_fixture() {
        let p = DeltaExampleParams::default();
        assert_eq!(&p.gaps()[..5], &[1, 4, 21, 116, 730]);
        let x = delta_example(p);
        assert!(x.prefix(2).unwrap().to_string().starts_with("01"));
        let p150 = x.prefix(150).unwrap();
        let ones_at: Vec<usize> = (0..150).filter(|&i| p150.symbols()[i] == Symbol::ONE).collect();
        assert_eq!(ones_at, [1, 6, 28, 145]);
        let ones = x.prefix(100_000).unwrap().count(Symbol::ONE);
        assert_eq!(ones, 7);
        assert!(ones * 100 <= 100_000);
        let blocks_done = DeltaSource::new(p).one_positions().iter().filter(|&&q| q < 100_000).count();
        assert!(ones <= blocks_done);
    }
}
