//! Point specs: `example`, `delta`, `fixed:<s>`, `periodic:<word>`, or a path
//! to a `.sym` file.

use std::path::Path;

use meanchaos::construct::{delta_example, example_point, DeltaExampleParams};
use meanchaos::symseq::{periodic_point, read_sym_file, Symbol, SymbolicPoint, Word};
use meanchaos::Error;

use crate::CliError;

pub fn parse_point(spec: &str, budget: u64) -> Result<SymbolicPoint, CliError> {
    let point = match spec {
        "example" => example_point(),
        "delta" => delta_example(DeltaExampleParams::default()),
        _ => {
            if let Some(s) = spec.strip_prefix("fixed:") {
                let code: u8 = s.parse().map_err(|_| CliError::usage(format!("bad fixed symbol in {spec:?}")))?;
                let alphabet = (u16::from(code) + 1).max(2);
                SymbolicPoint::fixed(Symbol(code), alphabet)?
            } else if let Some(w) = spec.strip_prefix("periodic:") {
                let word = Word::from_digits(w).map_err(|e| CliError::usage(format!("{spec:?}: {e}")))?;
                if word.is_empty() {
                    return Err(CliError::usage("periodic word must be nonempty"));
                }
                periodic_point(&word)?
            } else if spec.ends_with(".sym") || Path::new(spec).is_file() {
                let (alphabet, symbols) = read_sym_file(spec).map_err(|e| match e {
                    Error::Io(io) => CliError::Io(format!("{spec}: {io}")),
                    other => CliError::Io(format!("{spec}: {other}")),
                })?;
                SymbolicPoint::finite(symbols, alphabet, spec)?
            } else {
                return Err(CliError::usage(format!(
                    "unknown point {spec:?} (expected example, delta, fixed:<s>, periodic:<word> or a .sym file)"
                )));
            }
        }
    };
    Ok(point.with_budget(budget))
}
