//! Compression-complexity baselines.
//!
//! Compressed size in bits is an independent approximation of information
//! content, so the measures can be sanity-checked against a built-in
//! deflate-family codec and, when installed, external 7z-family and
//! zpaq-family tools driven through command templates. A tool that is not
//! installed yields a skip note, never a zero measurement.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, ExitStatus, Stdio};
use std::time::{Duration, Instant};

use flate2::write::DeflateEncoder;
use flate2::Compression;
use serde::Serialize;
use thiserror::Error;

use crate::error::MeasureError;
use crate::measures::{measure_with_options, MeasureReport};
use crate::pattern::Pattern;
use crate::spectrum::SpectrumOptions;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);
pub const DEFAULT_7Z_TEMPLATE: &str = "7z a -t7z -mx=9 -bso0 -bsp0 {output} {input}";
pub const DEFAULT_ZPAQ_TEMPLATE: &str = "zpaq a {output} {input} -m5";

/// Inputs below this many bits are annotated as overhead-dominated: the
/// archive framing outweighs the payload.
pub const TINY_INPUT_BITS: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BackendId {
    ZipFamily,
    SevenZFamily,
    ZpaqFamily,
    Custom(String),
}

impl BackendId {
    pub fn as_str(&self) -> &str {
        match self {
            BackendId::ZipFamily => "zip-family",
            BackendId::SevenZFamily => "7z-family",
            BackendId::ZpaqFamily => "zpaq-family",
            BackendId::Custom(name) => name,
        }
    }
}

impl std::fmt::Display for BackendId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for BackendId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone)]
enum BackendKind {
    BuiltinDeflate,
    External { template: String },
}

/// One compression backend: the built-in codec or an external command.
#[derive(Debug, Clone)]
pub struct CompressorBackend {
    id: BackendId,
    kind: BackendKind,
    timeout: Duration,
}

impl CompressorBackend {
    /// The built-in deflate codec, pinned to its maximum compression level.
    pub fn builtin_deflate() -> Self {
        CompressorBackend {
            id: BackendId::ZipFamily,
            kind: BackendKind::BuiltinDeflate,
            timeout: DEFAULT_TIMEOUT,
        }
    }

    /// 7z-family adapter; `template` overrides the default command.
    pub fn seven_z(template: Option<String>) -> Self {
        CompressorBackend {
            id: BackendId::SevenZFamily,
            kind: BackendKind::External {
                template: template.unwrap_or_else(|| DEFAULT_7Z_TEMPLATE.to_string()),
            },
            timeout: DEFAULT_TIMEOUT,
        }
    }

    /// zpaq-family adapter; `template` overrides the default command.
    pub fn zpaq(template: Option<String>) -> Self {
        CompressorBackend {
            id: BackendId::ZpaqFamily,
            kind: BackendKind::External {
                template: template.unwrap_or_else(|| DEFAULT_ZPAQ_TEMPLATE.to_string()),
            },
            timeout: DEFAULT_TIMEOUT,
        }
    }

    /// Arbitrary external command. The template must mention `{input}` and
    /// `{output}` and is split on whitespace (no shell involved).
    pub fn custom(name: &str, template: String) -> Self {
        CompressorBackend {
            id: BackendId::Custom(name.to_string()),
            kind: BackendKind::External { template },
            timeout: DEFAULT_TIMEOUT,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn id(&self) -> &BackendId {
        &self.id
    }

    /// Checks whether the backend can run, and fetches the tool's version
    /// banner when it can.
    pub fn probe(&self) -> Availability {
        match &self.kind {
            BackendKind::BuiltinDeflate => Availability::Available {
                version: Some(format!("flate2 deflate, level {}", Compression::best().level())),
            },
            BackendKind::External { template } => match template_argv(template) {
                Err(reason) => Availability::Missing { reason },
                Ok(argv) => match find_program(&argv[0]) {
                    None => Availability::Missing {
                        reason: format!("program '{}' not found on PATH", argv[0]),
                    },
                    Some(path) => Availability::Available {
                        version: probe_version(&path, version_probe_cap(self.timeout)),
                    },
                },
            },
        }
    }
}

#[derive(Debug, Clone)]
pub enum Availability {
    Available { version: Option<String> },
    Missing { reason: String },
}

/// A single compression measurement.
#[derive(Debug, Clone, Serialize)]
pub struct CompressionResult {
    pub backend: BackendId,
    pub input_bits: u64,
    pub output_bits: u64,
    /// `output_bits / input_bits`; 0 for empty input.
    pub ratio: f64,
    /// True when `output_bits` includes archive/container framing (external
    /// tools); the built-in codec reports the raw stream size.
    pub container_overhead_included: bool,
    /// True when the input is so small that framing dominates the result.
    pub overhead_dominated: bool,
    pub backend_version: Option<String>,
}

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("backend {backend} unavailable: {reason}")]
    Unavailable { backend: BackendId, reason: String },

    #[error("backend {backend} failed (status {status:?}):\n{transcript}")]
    Failed { backend: BackendId, status: Option<i32>, transcript: String },

    #[error("backend {backend} timed out after {secs}s:\n{transcript}")]
    TimedOut { backend: BackendId, secs: f64, transcript: String },

    #[error("baseline I/O failure")]
    Io(#[from] std::io::Error),
}

/// Compresses `data` with `backend` and reports the size in bits.
///
/// The built-in codec is deterministic at its pinned level; external results
/// carry the tool's version banner.
pub fn compression_complexity(
    data: &[u8],
    backend: &CompressorBackend,
) -> Result<CompressionResult, BaselineError> {
    let input_bits = data.len() as u64 * 8;
    match &backend.kind {
        BackendKind::BuiltinDeflate => {
            let mut encoder = DeflateEncoder::new(Vec::new(), Compression::best());
            encoder.write_all(data)?;
            let compressed = encoder.finish()?;
            Ok(result_from_sizes(
                backend.id.clone(),
                input_bits,
                compressed.len() as u64 * 8,
                false,
                Some(format!("flate2 deflate, level {}", Compression::best().level())),
            ))
        }
        BackendKind::External { template } => {
            run_external(backend, template, data, input_bits)
        }
    }
}

fn result_from_sizes(
    backend: BackendId,
    input_bits: u64,
    output_bits: u64,
    container_overhead_included: bool,
    backend_version: Option<String>,
) -> CompressionResult {
    CompressionResult {
        backend,
        input_bits,
        output_bits,
        ratio: if input_bits > 0 { output_bits as f64 / input_bits as f64 } else { 0.0 },
        container_overhead_included,
        overhead_dominated: input_bits < TINY_INPUT_BITS,
        backend_version,
    }
}

fn template_argv(template: &str) -> Result<Vec<String>, String> {
    let argv: Vec<String> = template.split_whitespace().map(str::to_string).collect();
    if argv.is_empty() {
        return Err("empty command template".to_string());
    }
    if !template.contains("{input}") || !template.contains("{output}") {
        return Err("command template must mention {input} and {output}".to_string());
    }
    Ok(argv)
}

fn find_program(name: &str) -> Option<PathBuf> {
    let candidate = PathBuf::from(name);
    if candidate.components().count() > 1 {
        return candidate.is_file().then_some(candidate);
    }
    let paths = std::env::var_os("PATH")?;
    std::env::split_paths(&paths).map(|dir| dir.join(name)).find(|p| p.is_file())
}

fn version_probe_cap(backend_timeout: Duration) -> Duration {
    backend_timeout.min(Duration::from_secs(5))
}

/// Runs the bare program to capture its banner line. Bounded: a tool that
/// hangs without arguments is killed and simply reports no version.
fn probe_version(program: &PathBuf, timeout: Duration) -> Option<String> {
    let dir = tempfile::tempdir().ok()?;
    let stdout_path = dir.path().join("stdout");
    let stderr_path = dir.path().join("stderr");
    let mut cmd = Command::new(program);
    cmd.stdin(Stdio::null())
        .stdout(std::fs::File::create(&stdout_path).ok()?)
        .stderr(std::fs::File::create(&stderr_path).ok()?);
    wait_with_timeout(cmd, timeout).ok()??;
    let stdout = std::fs::read(&stdout_path).unwrap_or_default();
    let text = if stdout.is_empty() {
        std::fs::read(&stderr_path).unwrap_or_default()
    } else {
        stdout
    };
    String::from_utf8_lossy(&text)
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .map(|l| l.chars().take(120).collect())
}

fn run_external(
    backend: &CompressorBackend,
    template: &str,
    data: &[u8],
    input_bits: u64,
) -> Result<CompressionResult, BaselineError> {
    let argv = template_argv(template).map_err(|reason| BaselineError::Unavailable {
        backend: backend.id.clone(),
        reason,
    })?;
    let program = find_program(&argv[0]).ok_or_else(|| BaselineError::Unavailable {
        backend: backend.id.clone(),
        reason: format!("program '{}' not found on PATH", argv[0]),
    })?;
    let version = probe_version(&program, version_probe_cap(backend.timeout));

    let dir = tempfile::tempdir()?;
    let input_path = dir.path().join("input.dat");
    let output_path = dir.path().join("output.bin");
    std::fs::write(&input_path, data)?;
    let stdout_path = dir.path().join("stdout.log");
    let stderr_path = dir.path().join("stderr.log");

    let mut cmd = Command::new(&program);
    for arg in &argv[1..] {
        cmd.arg(
            arg.replace("{input}", &input_path.to_string_lossy())
                .replace("{output}", &output_path.to_string_lossy()),
        );
    }
    cmd.stdin(Stdio::null())
        .stdout(std::fs::File::create(&stdout_path)?)
        .stderr(std::fs::File::create(&stderr_path)?);

    let rendered = argv.join(" ");
    let status = wait_with_timeout(cmd, backend.timeout)?;
    let transcript = || {
        let stdout = std::fs::read_to_string(&stdout_path).unwrap_or_default();
        let stderr = std::fs::read_to_string(&stderr_path).unwrap_or_default();
        format!("$ {rendered}\nstdout:\n{stdout}\nstderr:\n{stderr}")
    };

    let status = match status {
        None => {
            return Err(BaselineError::TimedOut {
                backend: backend.id.clone(),
                secs: backend.timeout.as_secs_f64(),
                transcript: transcript(),
            })
        }
        Some(s) => s,
    };
    if !status.success() {
        return Err(BaselineError::Failed {
            backend: backend.id.clone(),
            status: status.code(),
            transcript: transcript(),
        });
    }
    let output_len = std::fs::metadata(&output_path)
        .map_err(|_| BaselineError::Failed {
            backend: backend.id.clone(),
            status: status.code(),
            transcript: format!("{}\n(no output file was produced)", transcript()),
        })?
        .len();

    Ok(result_from_sizes(backend.id.clone(), input_bits, output_len * 8, true, version))
}

fn wait_with_timeout(mut cmd: Command, timeout: Duration) -> std::io::Result<Option<ExitStatus>> {
    let mut child = cmd.spawn()?;
    let deadline = Instant::now() + timeout;
    loop {
        if let Some(status) = child.try_wait()? {
            return Ok(Some(status));
        }
        if Instant::now() >= deadline {
            let _ = child.kill();
            let _ = child.wait();
            return Ok(None);
        }
        std::thread::sleep(Duration::from_millis(15));
    }
}

/// The byte payload a pattern presents to a compressor: binary patterns over
/// {'0','1'} are packed to real bits (MSB-first, final byte zero-padded),
/// everything else is the concatenated canonical symbol bytes.
pub fn pattern_payload(pattern: &Pattern) -> Vec<u8> {
    let symbols = pattern.alphabet().symbols();
    let binary = !pattern.is_empty()
        && symbols.iter().all(|s| s.as_bytes() == b"0" || s.as_bytes() == b"1");
    if !binary {
        return pattern.canonical_bytes();
    }
    let mut out = Vec::with_capacity(pattern.len().div_ceil(8));
    let mut acc = 0u8;
    let mut filled = 0u8;
    for symbol in pattern.iter() {
        acc = (acc << 1) | u8::from(symbol.as_bytes() == b"1");
        filled += 1;
        if filled == 8 {
            out.push(acc);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push(acc << (8 - filled));
    }
    out
}

/// One backend's contribution to a comparison table.
#[derive(Debug)]
pub struct BackendOutcome {
    pub backend: BackendId,
    pub result: Result<CompressionResult, BaselineError>,
}

/// Measures plus compression baselines for one pattern.
#[derive(Debug)]
pub struct CompareReport {
    pub measures: MeasureReport,
    /// Bits handed to the compressors (packed size for binary patterns).
    pub input_bits: u64,
    pub outcomes: Vec<BackendOutcome>,
}

/// Runs every backend against the pattern's payload and bundles the results
/// with the information measures. Outcomes are ordered by backend id, so the
/// report is deterministic regardless of the input order.
pub fn compare(pattern: &Pattern, backends: &[CompressorBackend]) -> CompareReport {
    compare_with_options(pattern, backends, &SpectrumOptions::default())
        .expect("observed alphabet is always valid")
}

/// [`compare`] with a declared alphabet and/or scale cap for the measures.
pub fn compare_with_options(
    pattern: &Pattern,
    backends: &[CompressorBackend],
    options: &SpectrumOptions,
) -> Result<CompareReport, MeasureError> {
    let measures = measure_with_options(pattern, options)?;
    let payload = pattern_payload(pattern);
    let mut sorted: Vec<&CompressorBackend> = backends.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let outcomes = sorted
        .into_iter()
        .map(|backend| BackendOutcome {
            backend: backend.id.clone(),
            result: compression_complexity(&payload, backend),
        })
        .collect();
    Ok(CompareReport { measures, input_bits: payload.len() as u64 * 8, outcomes })
}
