//! Empirical measures of orbit prefixes and the diagnostics built on them.
//!
//! Weak* closeness is proxied by total variation on the length-`L` cylinders.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};
use crate::symseq::{Symbol, SymbolicPoint, Word};

pub const DEFAULT_CYLINDER: usize = 3;

fn check(n: usize, l: usize) -> Result<()> {
    if n == 0 || l == 0 {
        return Err(Error::invalid("horizon and cylinder length must be at least 1"));
    }
    Ok(())
}

/// Frequencies of the length-`L` words `x_{i..i+L}` for `i < N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalMeasure {
    length: usize,
    horizon: usize,
    counts: BTreeMap<Word, u64>,
}

impl EmpiricalMeasure {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn count(&self, w: &Word) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn freq(&self, w: &Word) -> Rational {
        rat(self.count(w).into(), self.horizon as u128)
    }

    /// Support in lexicographic order with occurrence counts.
    pub fn counts(&self) -> impl Iterator<Item = (&Word, u64)> {
        self.counts.iter().map(|(w, &c)| (w, c))
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> Rational {
        let sum: u64 = self.counts.values().sum();
        rat(sum.into(), self.horizon as u128)
    }

    /// Drops the last symbol of every word.
    pub fn marginal(&self) -> Result<EmpiricalMeasure> {
        if self.length < 2 {
            return Err(Error::invalid("cannot marginalize below length 1"));
        }
        let mut counts = BTreeMap::new();
        for (w, &c) in &self.counts {
            let head = Word::from(&w.symbols()[..self.length - 1]);
            *counts.entry(head).or_insert(0) += c;
        }
        Ok(EmpiricalMeasure { length: self.length - 1, horizon: self.horizon, counts })
    }
}

impl Serialize for EmpiricalMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EmpiricalMeasure", 3)?;
        st.serialize_field("length", &self.length)?;
        st.serialize_field("horizon", &self.horizon)?;
        st.serialize_field("frequencies", &FreqTable(&self.counts, self.horizon))?;
        st.end()
    }
}

struct FreqTable<'a>(&'a BTreeMap<Word, u64>, usize);

impl Serialize for FreqTable<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (w, &c) in self.0 {
            m.serialize_entry(&w.to_string(), &rat(c.into(), self.1 as u128).to_string())?;
        }
        m.end()
    }
}

pub fn empirical(x: &SymbolicPoint, n: usize, l: usize) -> Result<EmpiricalMeasure> {
    check(n, l)?;
    let counts = x.with_prefix(n + l - 1, |p| {
        let mut h: HashMap<&[Symbol], u64> = HashMap::new();
        for win in p.windows(l) {
            *h.entry(win).or_insert(0) += 1;
        }
        h.into_iter().map(|(w, c)| (Word::from(w), c)).collect()
    })?;
    Ok(EmpiricalMeasure { length: l, horizon: n, counts })
}

/// Frequencies of the pair windows `(x_{i..i+L}, y_{i..i+L})` for `i < N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductEmpiricalMeasure {
    length: usize,
    horizon: usize,
    counts: BTreeMap<(Word, Word), u64>,
}

impl ProductEmpiricalMeasure {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn freq(&self, u: &Word, v: &Word) -> Rational {
        let c = self.counts.get(&(u.clone(), v.clone())).copied().unwrap_or(0);
        rat(c.into(), self.horizon as u128)
    }

    pub fn counts(&self) -> impl Iterator<Item = (&(Word, Word), u64)> {
        self.counts.iter().map(|(k, &c)| (k, c))
    }

    pub fn total(&self) -> Rational {
        let sum: u64 = self.counts.values().sum();
        rat(sum.into(), self.horizon as u128)
    }

    /// Mass on pairs `(u, u)`.
    pub fn diagonal_mass(&self) -> Rational {
        let sum: u64 = self.counts.iter().filter(|((u, v), _)| u == v).map(|(_, &c)| c).sum();
        rat(sum.into(), self.horizon as u128)
    }
}

impl Serialize for ProductEmpiricalMeasure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProductEmpiricalMeasure", 4)?;
        st.serialize_field("length", &self.length)?;
        st.serialize_field("horizon", &self.horizon)?;
        st.serialize_field("diagonal_mass", &self.diagonal_mass().to_string())?;
        let pairs: BTreeMap<String, String> = self
            .counts
            .iter()
            .map(|((u, v), &c)| (format!("{u},{v}"), rat(c.into(), self.horizon as u128).to_string()))
            .collect();
        st.serialize_field("frequencies", &pairs)?;
        st.end()
    }
}

pub fn product_empirical(x: &SymbolicPoint, y: &SymbolicPoint, n: usize, l: usize) -> Result<ProductEmpiricalMeasure> {
    check(n, l)?;
    let counts = x.with_pair_prefix(y, n + l - 1, |a, b| {
        let mut h: HashMap<(&[Symbol], &[Symbol]), u64> = HashMap::new();
        for (u, v) in a.windows(l).zip(b.windows(l)) {
            *h.entry((u, v)).or_insert(0) += 1;
        }
        h.into_iter().map(|((u, v), c)| ((Word::from(u), Word::from(v)), c)).collect()
    })?;
    Ok(ProductEmpiricalMeasure { length: l, horizon: n, counts })
}

/// `(1/2) Σ_u |m1(u) − m2(u)|`.
pub fn tv_distance(m1: &EmpiricalMeasure, m2: &EmpiricalMeasure) -> Result<Rational> {
    if m1.length != m2.length {
        return Err(Error::MismatchedLength(m1.length, m2.length));
    }
    // Σ |c1/N1 − c2/N2| = Σ |c1·N2 − c2·N1| / (N1·N2)
    let (n1, n2) = (m1.horizon as u128, m2.horizon as u128);
    let mut sum = BigInt::zero();
    let mut add = |c1: u64, c2: u64| {
        let (a, b) = (u128::from(c1) * n2, u128::from(c2) * n1);
        sum += BigInt::from(a.abs_diff(b));
    };
    for (w, &c1) in &m1.counts {
        add(c1, m2.count(w));
    }
    for (w, &c2) in &m2.counts {
        if !m1.counts.contains_key(w) {
            add(0, c2);
        }
    }
    Ok(Rational::new(sum, BigInt::from(2u8) * BigInt::from(n1) * BigInt::from(n2)))
}

/// Largest pairwise total variation among the empirical measures of
/// `points`.
pub fn unique_ergodicity_diagnostic(points: &[SymbolicPoint], n: usize, l: usize) -> Result<Rational> {
    if points.len() < 2 {
        return Err(Error::invalid("need at least two points"));
    }
    let measures = points.iter().map(|p| empirical(p, n, l)).collect::<Result<Vec<_>>>()?;
    let mut worst = Rational::zero();
    for (i, a) in measures.iter().enumerate() {
        for b in &measures[i + 1..] {
            worst = worst.max(tv_distance(a, b)?);
        }
    }
    Ok(worst)
}

/// `1 − freq(s^L)`: empirical mass outside the cylinder of the fixed point
/// `s^∞`.
pub fn delta_fixpoint_diagnostic(x: &SymbolicPoint, n: usize, l: usize, fixed: Symbol) -> Result<Rational> {
    check(n, l)?;
    fixed.check(x.alphabet_size())?;
    let inside = x.with_prefix(n + l - 1, |p| {
        let mut run = 0usize;
        let mut inside = 0u64;
        for (i, &s) in p.iter().enumerate() {
            run = if s == fixed { run + 1 } else { 0 };
            if i + 1 >= l && run >= l {
                inside += 1;
            }
        }
        inside
    })?;
    Ok(Rational::one() - rat(inside.into(), n as u128))
}

/// Fraction of `i < N` with `x_{i..i+L} = y_{i..i+L}`.
pub fn diagonal_mass(x: &SymbolicPoint, y: &SymbolicPoint, n: usize, l: usize) -> Result<Rational> {
    check(n, l)?;
    let equal = x.with_pair_prefix(y, n + l - 1, |a, b| {
        let mut run = 0usize;
        let mut equal = 0u64;
        for (i, (p, q)) in a.iter().zip(b).enumerate() {
            run = if p == q { run + 1 } else { 0 };
            if i + 1 >= l && run >= l {
                equal += 1;
            }
        }
        equal
    })?;
    Ok(rat(equal.into(), n as u128))
}
