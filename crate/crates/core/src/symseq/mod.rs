//! Alphabets, finite words, subword enumeration and lazily materialized
//! one-sided symbolic points `x ∈ 𝒜^ℤ₊` with the shift action.

mod point;
mod subwords;
mod symfile;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use point::{
    periodic_point, shift, FiniteSequence, FnSource, Periodic, SymbolSource, SymbolicPoint,
    TailPoint, DEFAULT_PREFIX_BUDGET,
};
pub use subwords::{subwords, SubwordIndex, SubwordSet, SubwordStats};
pub use symfile::{read_sym, read_sym_file, write_sym, write_sym_file};

/// A symbol code; an index into an alphabet of at most 256 symbols.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[repr(transparent)]
pub struct Symbol(pub u8);

impl Symbol {
    pub const ZERO: Symbol = Symbol(0);
    pub const ONE: Symbol = Symbol(1);

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn check(self, alphabet: u16) -> Result<Self> {
        if u16::from(self.0) < alphabet {
            Ok(self)
        } else {
            Err(Error::SymbolOutOfRange { symbol: self.0, alphabet })
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            c @ 0..=9 => write!(f, "{}", char::from(b'0' + c)),
            c => write!(f, "<{c}>"),
        }
    }
}

pub fn check_alphabet(size: u16) -> Result<u16> {
    if (2..=256).contains(&size) {
        Ok(size)
    } else {
        Err(Error::BadAlphabet(size))
    }
}

/// A finite string of symbols. The empty word is allowed as a value;
/// operations that cannot accept it say so.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `s^n`
    pub fn repeat(symbol: Symbol, n: usize) -> Self {
        Word(vec![symbol; n])
    }

    /// Parses an ASCII digit string such as `"011"`.
    pub fn from_digits(s: &str) -> Result<Self> {
        s.bytes()
            .map(|b| match b {
                b'0'..=b'9' => Ok(Symbol(b - b'0')),
                _ => Err(Error::invalid(format!("word {s:?}: expected ASCII digits"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn from_codes(codes: &[u8]) -> Self {
        Word(codes.iter().copied().map(Symbol).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn count(&self, symbol: Symbol) -> usize {
        self.0.iter().filter(|&&s| s == symbol).count()
    }

    /// Smallest alphabet that contains every symbol of the word (at least 2).
    pub fn min_alphabet(&self) -> u16 {
        self.0.iter().map(|s| u16::from(s.0) + 1).max().unwrap_or(0).max(2)
    }

    pub fn push(&mut self, symbol: Symbol) {
        self.0.push(symbol);
    }

    pub fn extend_from_slice(&mut self, symbols: &[Symbol]) {
        self.0.extend_from_slice(symbols);
    }

    pub fn extend_repeat(&mut self, symbol: Symbol, n: usize) {
        self.0.resize(self.0.len() + n, symbol);
    }
}

impl From<&[Symbol]> for Word {
    fn from(s: &[Symbol]) -> Self {
        Word(s.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{s}"))
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Views a symbol slice as raw codes.
pub fn as_codes(symbols: &[Symbol]) -> &[u8] {
    // SAFETY: Symbol is repr(transparent) over u8.
    unsafe { std::slice::from_raw_parts(symbols.as_ptr().cast::<u8>(), symbols.len()) }
}

/// Views raw codes as symbols.
pub fn as_symbols(codes: &[u8]) -> &[Symbol] {
    // SAFETY: Symbol is repr(transparent) over u8.
    unsafe { std::slice::from_raw_parts(codes.as_ptr().cast::<Symbol>(), codes.len()) }
}
