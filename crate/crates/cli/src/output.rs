use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Everything needed to rerun a command: the subcommand, every parameter
/// value actually used (defaults included) and the resolved points.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub parameters: Value,
    pub points: Vec<PointInfo>,
}

#[derive(Debug, Serialize)]
pub struct PointInfo {
    pub spec: String,
    pub label: String,
}

impl Manifest {
    pub fn new(command: impl Into<String>, parameters: Value) -> Self {
        Manifest {
            tool: "meanchaos",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            parameters,
            points: Vec::new(),
        }
    }

    pub fn point(mut self, spec: &str, label: String) -> Self {
        self.points.push(PointInfo { spec: spec.to_string(), label });
        self
    }
}

/// RFC-4180 rows with CRLF line ends.
#[derive(Default)]
pub struct Csv {
    buf: Vec<u8>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut csv = Csv::default();
        csv.row(header);
        csv
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) {
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                self.buf.push(b',');
            }
            let f = f.as_ref();
            if f.contains([',', '"', '\r', '\n']) {
                self.buf.push(b'"');
                self.buf.extend_from_slice(f.replace('"', "\"\"").as_bytes());
                self.buf.push(b'"');
            } else {
                self.buf.extend_from_slice(f.as_bytes());
            }
        }
        self.buf.extend_from_slice(b"\r\n");
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf
    }
}

/// Writes `bytes` to a temporary file next to `path`, then renames it over
/// `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

pub fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn pretty(v: &impl Serialize) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("serializable output");
    out.push(b'\n');
    out
}

/// Emits a result. JSON embeds the manifest; CSV gets it on stderr when
/// printed, and every file written with `--out` gets a sidecar manifest.
pub fn emit(
    format: Format,
    out: Option<&Path>,
    manifest: &Manifest,
    json_result: &impl Serialize,
    csv: impl FnOnce() -> Csv,
) -> Result<(), CliError> {
    let body = match format {
        Format::Json => pretty(&json!({"manifest": manifest, "result": json_result})),
        Format::Csv => csv().into_bytes(),
    };
    match out {
        Some(path) => {
            write_atomic(path, &body)?;
            write_atomic(&sidecar(path), &pretty(manifest))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&body).and_then(|_| stdout.flush()).map_err(|e| CliError::Io(format!("stdout: {e}")))?;
            if format == Format::Csv {
                let mut stderr = std::io::stderr().lock();
                stderr.write_all(&pretty(manifest)).map_err(|e| CliError::Io(format!("stderr: {e}")))?;
            }
        }
    }
    Ok(())
}
