use std::fmt;
use std::sync::{Arc, RwLock};

use super::{check_alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Default cap on the number of symbols a single point may materialize.
pub const DEFAULT_PREFIX_BUDGET: u64 = 1 << 30;

/// A deterministic rule producing the symbol at any index of a one-sided
/// sequence. Implementations must be pure functions of the index.
pub trait SymbolSource: Send + Sync + fmt::Debug {
    fn alphabet_size(&self) -> u16;

    /// Writes the symbols at indices `start .. start + out.len()`.
    fn fill(&self, start: u64, out: &mut [Symbol]) -> Result<()>;

    /// Length if the source is finite (file-backed data); `None` for points
    /// of the full one-sided shift.
    fn finite_len(&self) -> Option<u64> {
        None
    }

    fn label(&self) -> String;
}

/// `w w w ...`
#[derive(Debug, Clone)]
pub struct Periodic {
    word: Word,
    alphabet: u16,
}

impl Periodic {
    pub fn new(word: Word, alphabet: u16) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        check_alphabet(alphabet)?;
        for &s in word.symbols() {
            s.check(alphabet)?;
        }
        Ok(Periodic { word, alphabet })
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }
}

impl SymbolSource for Periodic {
    fn alphabet_size(&self) -> u16 {
        self.alphabet
    }

    fn fill(&self, start: u64, out: &mut [Symbol]) -> Result<()> {
        let w = self.word.symbols();
        let mut j = (start % w.len() as u64) as usize;
        for slot in out.iter_mut() {
            *slot = w[j];
            j += 1;
            if j == w.len() {
                j = 0;
            }
        }
        Ok(())
    }

    fn label(&self) -> String {
        if self.word.len() == 1 {
            format!("fixed:{}", self.word)
        } else {
            format!("periodic:{}", self.word)
        }
    }
}

/// `v a a a ...`
#[derive(Debug, Clone)]
pub struct TailPoint {
    head: Word,
    tail: Symbol,
    alphabet: u16,
}

impl TailPoint {
    pub fn new(head: Word, tail: Symbol, alphabet: u16) -> Result<Self> {
        check_alphabet(alphabet)?;
        tail.check(alphabet)?;
        for &s in head.symbols() {
            s.check(alphabet)?;
        }
        Ok(TailPoint { head, tail, alphabet })
    }
}

impl SymbolSource for TailPoint {
    fn alphabet_size(&self) -> u16 {
        self.alphabet
    }

    fn fill(&self, start: u64, out: &mut [Symbol]) -> Result<()> {
        let head = self.head.symbols();
        for (i, slot) in (start..).zip(out.iter_mut()) {
            *slot = head.get(i as usize).copied().unwrap_or(self.tail);
        }
        Ok(())
    }

    fn label(&self) -> String {
        format!("tail(c={},sym={})", self.head.len(), self.tail)
    }
}

/// A finite block of data, e.g. read from a `.sym` file. Indices past the
/// end are an error.
#[derive(Debug, Clone)]
pub struct FiniteSequence {
    symbols: Arc<[Symbol]>,
    alphabet: u16,
    label: String,
}

impl FiniteSequence {
    pub fn new(symbols: Vec<Symbol>, alphabet: u16, label: impl Into<String>) -> Result<Self> {
        check_alphabet(alphabet)?;
        for &s in &symbols {
            s.check(alphabet)?;
        }
        Ok(FiniteSequence { symbols: symbols.into(), alphabet, label: label.into() })
    }
}

impl SymbolSource for FiniteSequence {
    fn alphabet_size(&self) -> u16 {
        self.alphabet
    }

    fn fill(&self, start: u64, out: &mut [Symbol]) -> Result<()> {
        let len = self.symbols.len() as u64;
        let end = start + out.len() as u64;
        if end > len {
            return Err(Error::SequenceTooShort { index: end - 1, len });
        }
        out.copy_from_slice(&self.symbols[start as usize..end as usize]);
        Ok(())
    }

    fn finite_len(&self) -> Option<u64> {
        Some(self.symbols.len() as u64)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Adapts a closure `index -> symbol`.
pub struct FnSource<F> {
    f: F,
    alphabet: u16,
    label: String,
}

impl<F: Fn(u64) -> Symbol + Send + Sync> FnSource<F> {
    pub fn new(f: F, alphabet: u16, label: impl Into<String>) -> Result<Self> {
        check_alphabet(alphabet)?;
        Ok(FnSource { f, alphabet, label: label.into() })
    }
}

impl<F> fmt::Debug for FnSource<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnSource").field("label", &self.label).finish()
    }
}

impl<F: Fn(u64) -> Symbol + Send + Sync> SymbolSource for FnSource<F> {
    fn alphabet_size(&self) -> u16 {
        self.alphabet
    }

    fn fill(&self, start: u64, out: &mut [Symbol]) -> Result<()> {
        for (i, slot) in (start..).zip(out.iter_mut()) {
            *slot = (self.f)(i).check(self.alphabet)?;
        }
        Ok(())
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// A lazily generated one-sided sequence, `σ^s` of the sequence its source
/// describes. The materialized prefix is cached in contiguous memory and
/// grows geometrically up to the prefix budget.
///
/// Clones share the cache. Readers may run concurrently once a prefix is
/// materialized; growing the cache takes the write lock.
#[derive(Clone)]
pub struct SymbolicPoint {
    source: Arc<dyn SymbolSource>,
    origin_shift: u64,
    budget: u64,
    cache: Arc<RwLock<Vec<Symbol>>>,
}

impl fmt::Debug for SymbolicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolicPoint")
            .field("label", &self.label())
            .field("materialized", &self.materialized())
            .finish()
    }
}

impl SymbolicPoint {
    pub fn new(source: impl SymbolSource + 'static) -> Self {
        Self::from_arc(Arc::new(source))
    }

    pub fn from_arc(source: Arc<dyn SymbolSource>) -> Self {
        SymbolicPoint {
            source,
            origin_shift: 0,
            budget: DEFAULT_PREFIX_BUDGET,
            cache: Arc::default(),
        }
    }

    /// `a^∞`, a fixed point of the shift.
    pub fn fixed(symbol: Symbol, alphabet: u16) -> Result<Self> {
        Ok(Self::new(Periodic::new(Word::new(vec![symbol]), alphabet)?))
    }

    pub fn tail(head: Word, tail: Symbol, alphabet: u16) -> Result<Self> {
        Ok(Self::new(TailPoint::new(head, tail, alphabet)?))
    }

    /// A finite data sequence (indices beyond its end fail).
    pub fn finite(symbols: Vec<Symbol>, alphabet: u16, label: impl Into<String>) -> Result<Self> {
        Ok(Self::new(FiniteSequence::new(symbols, alphabet, label)?))
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn origin_shift(&self) -> u64 {
        self.origin_shift
    }

    pub fn alphabet_size(&self) -> u16 {
        self.source.alphabet_size()
    }

    pub fn source(&self) -> &Arc<dyn SymbolSource> {
        &self.source
    }

    pub fn label(&self) -> String {
        match self.origin_shift {
            0 => self.source.label(),
            s => format!("shift({},{})", self.source.label(), s),
        }
    }

    pub fn materialized(&self) -> usize {
        self.cache.read().map(|c| c.len()).unwrap_or(0)
    }

    /// `σ^s` of this point. Shares the generator, not the cache.
    pub fn shift(&self, s: u64) -> SymbolicPoint {
        if s == 0 {
            return self.clone();
        }
        SymbolicPoint {
            source: Arc::clone(&self.source),
            origin_shift: self.origin_shift + s,
            budget: self.budget,
            cache: Arc::default(),
        }
    }

    fn ensure(&self, n: usize) -> Result<()> {
        if self.materialized() >= n {
            return Ok(());
        }
        if n as u64 > self.budget {
            return Err(Error::BudgetExceeded { requested: n as u64, budget: self.budget });
        }
        let mut cache = self.cache.write().expect("symbol cache poisoned");
        let have = cache.len();
        if have >= n {
            return Ok(());
        }
        let mut target = n.max(have.saturating_mul(2)).min(self.budget as usize).max(n);
        if let Some(len) = self.source.finite_len() {
            let avail = len.saturating_sub(self.origin_shift) as usize;
            target = target.min(avail).max(n);
        }
        cache.resize(target, Symbol::ZERO);
        if let Err(e) = self.source.fill(self.origin_shift + have as u64, &mut cache[have..]) {
            cache.truncate(have);
            return Err(e);
        }
        Ok(())
    }

    /// Runs `f` on the first `n` symbols without copying them.
    pub fn with_prefix<R>(&self, n: usize, f: impl FnOnce(&[Symbol]) -> R) -> Result<R> {
        self.ensure(n)?;
        let cache = self.cache.read().expect("symbol cache poisoned");
        Ok(f(&cache[..n]))
    }

    pub fn prefix(&self, n: usize) -> Result<Word> {
        self.with_prefix(n, |s| Word::from(s))
    }

    pub fn symbol_at(&self, i: u64) -> Result<Symbol> {
        let n = usize::try_from(i + 1).map_err(|_| Error::invalid("index overflow"))?;
        self.with_prefix(n, |p| p[n - 1])
    }

    /// Runs `f` on the first `n` symbols of both points. Safe when the two
    /// handles share a cache.
    pub fn with_pair_prefix<R>(
        &self,
        other: &SymbolicPoint,
        n: usize,
        f: impl FnOnce(&[Symbol], &[Symbol]) -> R,
    ) -> Result<R> {
        self.ensure(n)?;
        other.ensure(n)?;
        if Arc::ptr_eq(&self.cache, &other.cache) {
            let cache = self.cache.read().expect("symbol cache poisoned");
            return Ok(f(&cache[..n], &cache[..n]));
        }
        let a = self.cache.read().expect("symbol cache poisoned");
        let b = other.cache.read().expect("symbol cache poisoned");
        Ok(f(&a[..n], &b[..n]))
    }

    /// Whether the two points agree on their first `n` symbols.
    pub fn agrees_with(&self, other: &SymbolicPoint, n: usize) -> Result<bool> {
        let theirs = other.prefix(n)?;
        self.with_prefix(n, |a| a == theirs.symbols())
    }
}

/// Repeats `w` forever; the result is fixed by `σ^{|w|}`.
pub fn periodic_point(w: &Word) -> Result<SymbolicPoint> {
    Ok(SymbolicPoint::new(Periodic::new(w.clone(), w.min_alphabet())?))
}

/// `σ^s x`
pub fn shift(x: &SymbolicPoint, s: u64) -> SymbolicPoint {
    x.shift(s)
}
