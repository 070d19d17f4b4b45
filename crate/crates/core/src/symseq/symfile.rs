//! `.sym` sequence files: a header line `SYM1 <alphabet-size> <length>\n`
//! followed by `length` raw bytes, one symbol code per byte.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::{as_codes, as_symbols, check_alphabet, Symbol};
use crate::error::{Error, Result};

pub fn write_sym<W: Write>(mut out: W, alphabet: u16, symbols: &[Symbol]) -> Result<()> {
    check_alphabet(alphabet)?;
    if let Some(bad) = symbols.iter().find(|s| u16::from(s.0) >= alphabet) {
        return Err(Error::SymbolOutOfRange { symbol: bad.0, alphabet });
    }
    writeln!(out, "SYM1 {} {}", alphabet, symbols.len())?;
    out.write_all(as_codes(symbols))?;
    out.flush()?;
    Ok(())
}

pub fn read_sym<R: Read>(input: R) -> Result<(u16, Vec<Symbol>)> {
    let mut input = BufReader::new(input);
    let mut header = Vec::new();
    input.read_until(b'\n', &mut header)?;
    if header.last() != Some(&b'\n') {
        return Err(Error::Format("missing header line".into()));
    }
    let header = std::str::from_utf8(&header[..header.len() - 1])
        .map_err(|_| Error::Format("header is not ASCII".into()))?;
    let fields: Vec<&str> = header.split(' ').collect();
    let [magic, alphabet, len] = fields[..] else {
        return Err(Error::Format(format!("bad header {header:?}")));
    };
    if magic != "SYM1" {
        return Err(Error::Format(format!("bad magic {magic:?}")));
    }
    let alphabet: u16 =
        alphabet.parse().map_err(|_| Error::Format(format!("bad alphabet size {alphabet:?}")))?;
    check_alphabet(alphabet)?;
    let len: usize = len.parse().map_err(|_| Error::Format(format!("bad length {len:?}")))?;
    let mut body = Vec::with_capacity(len);
    input.by_ref().take(len as u64).read_to_end(&mut body)?;
    if body.len() != len {
        return Err(Error::Format(format!("expected {len} symbols, found {}", body.len())));
    }
    let mut extra = [0u8; 1];
    if input.read(&mut extra)? != 0 {
        return Err(Error::Format("trailing bytes after body".into()));
    }
    if let Some(&bad) = body.iter().find(|&&b| u16::from(b) >= alphabet) {
        return Err(Error::SymbolOutOfRange { symbol: bad, alphabet });
    }
    Ok((alphabet, as_symbols(&body).to_vec()))
}

pub fn read_sym_file(path: impl AsRef<Path>) -> Result<(u16, Vec<Symbol>)> {
    read_sym(File::open(path)?)
}

pub fn write_sym_file(path: impl AsRef<Path>, alphabet: u16, symbols: &[Symbol]) -> Result<()> {
    write_sym(std::io::BufWriter::new(File::create(path)?), alphabet, symbols)
}
