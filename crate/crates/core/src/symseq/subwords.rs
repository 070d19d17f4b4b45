use serde::Serialize;

use super::{Symbol, Word};
use crate::error::{Error, Result};

/// `Pow(w)`: every distinct nonempty contiguous subword of `source`, ordered
/// by length, then lexicographically by symbol code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubwordSet {
    pub words: Vec<Word>,
    pub source: Word,
}

impl SubwordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }
}

/// Aggregate counts over the distinct subwords of a text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SubwordStats {
    /// Number of distinct nonempty subwords.
    pub count: u128,
    /// Sum of their lengths.
    pub total_len: u128,
    /// Sum over subwords of the occurrences of the tallied symbol.
    pub symbol_count: u128,
}

/// Suffix array with adjacent LCPs over a text.
///
/// A distinct subword of length `l` corresponds to exactly one suffix-array
/// slot `p` with `lcp[p] < l <= |suffix(sa[p])|`: the lexicographically
/// first suffix it prefixes. Scanning slots in order therefore enumerates the
/// length-`l` subwords in lexicographic order.
#[derive(Clone, Debug)]
pub struct SubwordIndex {
    text: Vec<Symbol>,
    sa: Vec<u32>,
    lcp: Vec<u32>,
}

impl SubwordIndex {
    pub fn new(text: &[Symbol]) -> Self {
        assert!(text.len() < u32::MAX as usize, "text too long for a 32-bit suffix array");
        let sa = suffix_array(text);
        let lcp = kasai(text, &sa);
        SubwordIndex { text: text.to_vec(), sa, lcp }
    }

    pub fn text(&self) -> &[Symbol] {
        &self.text
    }

    fn slots(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.text.len();
        self.sa
            .iter()
            .zip(&self.lcp)
            .map(move |(&s, &l)| (s as usize, l as usize, n - s as usize))
    }

    /// Number of distinct subwords of each length; index 0 is always 0.
    pub fn count_by_length(&self) -> Vec<u64> {
        let n = self.text.len();
        let mut diff = vec![0i64; n + 2];
        for (_, lcp, suffix_len) in self.slots() {
            if suffix_len > lcp {
                diff[lcp + 1] += 1;
                diff[suffix_len + 1] -= 1;
            }
        }
        let mut out = Vec::with_capacity(n + 1);
        let mut acc = 0i64;
        for d in diff.iter().take(n + 1) {
            acc += d;
            out.push(acc as u64);
        }
        out
    }

    /// Start positions (in the text) of the distinct subwords of length
    /// `len`, in lexicographic order.
    pub fn starts_of_length(&self, len: usize) -> Vec<u32> {
        if len == 0 {
            return Vec::new();
        }
        self.slots()
            .filter(|&(_, lcp, suffix_len)| lcp < len && len <= suffix_len)
            .map(|(s, _, _)| s as u32)
            .collect()
    }

    pub fn stats(&self, tally: Symbol) -> SubwordStats {
        let n = self.text.len();
        // occ[j] = occurrences of `tally` in text[..j]; cum[j] = Σ_{t<=j} occ[t]
        let mut occ = Vec::with_capacity(n + 1);
        occ.push(0u128);
        for &s in &self.text {
            let last = *occ.last().unwrap();
            occ.push(last + u128::from(s == tally));
        }
        let mut cum = Vec::with_capacity(n + 1);
        let mut acc = 0u128;
        for &o in &occ {
            acc += o;
            cum.push(acc);
        }
        let mut st = SubwordStats::default();
        for (s, lcp, suffix_len) in self.slots() {
            if suffix_len <= lcp {
                continue;
            }
            let (a, b) = (lcp as u128, suffix_len as u128);
            st.count += b - a;
            st.total_len += (b * (b + 1) - a * (a + 1)) / 2;
            // Σ_{l=a+1}^{b} (occ[s+l] - occ[s])
            st.symbol_count += (cum[s + suffix_len] - cum[s + lcp]) - (b - a) * occ[s];
        }
        st
    }

    pub fn subword_set(&self) -> SubwordSet {
        let n = self.text.len();
        let mut words = Vec::new();
        for len in 1..=n {
            for s in self.starts_of_length(len) {
                let s = s as usize;
                words.push(Word::from(&self.text[s..s + len]));
            }
        }
        SubwordSet { words, source: Word::from(&self.text[..]) }
    }
}

/// Computes `Pow(w)` in canonical order.
pub fn subwords(w: &Word) -> Result<SubwordSet> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(SubwordIndex::new(w.symbols()).subword_set())
}

/// Prefix doubling, O(n log² n).
fn suffix_array(text: &[Symbol]) -> Vec<u32> {
    let n = text.len();
    let mut sa: Vec<u32> = (0..n as u32).collect();
    let mut rank: Vec<u32> = text.iter().map(|s| u32::from(s.0)).collect();
    let mut next = vec![0u32; n];
    let mut k = 1usize;
    if n <= 1 {
        return sa;
    }
    loop {
        let key = |i: u32, rank: &[u32]| {
            let i = i as usize;
            let second = if i + k < n { rank[i + k] + 1 } else { 0 };
            (rank[i], second)
        };
        sa.sort_unstable_by_key(|&i| key(i, &rank));
        next[sa[0] as usize] = 0;
        for w in 1..n {
            let bump = u32::from(key(sa[w - 1], &rank) != key(sa[w], &rank));
            next[sa[w] as usize] = next[sa[w - 1] as usize] + bump;
        }
        std::mem::swap(&mut rank, &mut next);
        if rank[sa[n - 1] as usize] as usize == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// `lcp[p]` = longest common prefix of suffixes `sa[p-1]` and `sa[p]`; `lcp[0] = 0`.
fn kasai(text: &[Symbol], sa: &[u32]) -> Vec<u32> {
    let n = text.len();
    let mut rank = vec![0usize; n];
    for (p, &s) in sa.iter().enumerate() {
        rank[s as usize] = p;
    }
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1] as usize;
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h as u32;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}
