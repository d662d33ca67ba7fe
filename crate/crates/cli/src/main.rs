//! infometer: multi-scale information content of discrete patterns.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use infometer_core::baselines::{
    compare_with_options, pattern_payload, Availability, CompressorBackend,
};
use infometer_core::corpus::{self, FixtureId, GeneratorKind, GeneratorSpec};
use infometer_core::ingest::{ingest_file, NewlinePolicy, SymbolMode, SymbolizationPolicy};
use infometer_core::{
    analyze_spectra, measure_with_options, MeasureReport, Pattern, SpectrumKind, SpectrumOptions,
};

use config::Config;
use output::{
    compare_record, compare_to_csv, compare_to_table, record_to_csv, record_to_json,
    sensitivity_to_table, spectrum_rows, spectrum_rows_to_csv, spectrum_rows_to_json, InputInfo,
    MeasuresInfo, OutputRecord, PolicyInfo, SensitivityRecord, SensitivityRow, SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(name = "infometer", version, about = "Multi-scale Shannon information measurement")]
struct Cli {
    /// Config file (key = value) for backend templates and thresholds
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Print provenance details (tool and backend versions) to stderr
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Measure a file or fixture: I_MAX, I_S, I_SSM and relatives
    Analyze(AnalyzeArgs),
    /// Dump the information spectra as long-form plot data
    Spectrum(SpectrumArgs),
    /// Compare the measures against compression baselines
    Compare(CompareArgs),
    /// Show how one substituted character inflates SSM information
    DemoSensitivity(DemoArgs),
    /// List or export the embedded example patterns
    Fixture(FixtureArgs),
    /// Emit a deterministic generated pattern
    Generate(GenerateArgs),
}

#[derive(Args)]
struct InputArgs {
    /// File to read, or fixture:ID for an embedded pattern
    input: String,

    /// How bytes become symbols: bit, byte, utf8-char, or token:W
    #[arg(long)]
    symbol: Option<String>,

    /// Line-break handling: keep, strip, or lf
    #[arg(long)]
    newline: Option<NewlineArg>,

    /// Declared alphabet size K (at least the observed count)
    #[arg(long)]
    declared_alphabet: Option<usize>,

    /// Cap the number of scanned scales (log-spaced subsample)
    #[arg(long)]
    max_scales: Option<usize>,

    /// Permit full spectra on inputs above the size guard
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum NewlineArg {
    Keep,
    Strip,
    Lf,
}

impl From<NewlineArg> for NewlinePolicy {
    fn from(value: NewlineArg) -> Self {
        match value {
            NewlineArg::Keep => NewlinePolicy::Keep,
            NewlineArg::Strip => NewlinePolicy::StripAll,
            NewlineArg::Lf => NewlinePolicy::NormalizeToLf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Embed the spectrum dump in the record
    #[arg(long)]
    spectrum: bool,

    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Comma-separated kinds: raw, maximal, normalized
    #[arg(long, default_value = "raw,maximal,normalized")]
    kinds: String,

    /// Output format (long-form rows either way)
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,

    /// Report per-scale block operations and timings on stderr
    #[arg(long)]
    timings: bool,

    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Comma-separated backends: zip, 7z, zpaq, custom
    #[arg(long, default_value = "zip,7z,zpaq")]
    backends: String,

    /// Output format; omit for the aligned text tables
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    /// Output format; omit for the text table
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct FixtureArgs {
    #[command(subcommand)]
    action: FixtureCmd,
}

#[derive(Subcommand)]
enum FixtureCmd {
    /// List the embedded fixtures
    List,
    /// Write a fixture's exact content
    Export {
        /// Fixture id, e.g. X_A or T3a
        id: String,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenerateArgs {
    /// Generator kind
    #[arg(long, value_enum)]
    kind: GenKind,

    /// Alphabet as a string of characters, e.g. "01"
    #[arg(long)]
    alphabet: String,

    /// Pattern length in symbols
    #[arg(long)]
    length: usize,

    /// RNG seed
    #[arg(long, default_value = "0")]
    seed: u64,

    /// Period string for the repeat kinds
    #[arg(long)]
    period: Option<String>,

    /// Substitution probability for repeat-errors
    #[arg(long)]
    error_rate: Option<f64>,

    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    UniformRandom,
    Repeat,
    RepeatErrors,
    Ramp,
}

enum CliError {
    /// Usage or input problems: exit 2.
    Input(String),
    /// A violated internal invariant: exit 3.
    Internal(String),
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => err.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = Config::load(cli.config.as_deref()).map_err(CliError::Input)?;
    if cli.verbose {
        eprintln!("infometer {}", env!("CARGO_PKG_VERSION"));
    }
    match cli.command {
        Cmd::Analyze(args) => cmd_analyze(args, &config, cli.verbose),
        Cmd::Spectrum(args) => cmd_spectrum(args, &config),
        Cmd::Compare(args) => cmd_compare(args, &config, cli.verbose),
        Cmd::DemoSensitivity(args) => cmd_demo_sensitivity(args),
        Cmd::Fixture(args) => cmd_fixture(args),
        Cmd::Generate(args) => cmd_generate(args),
    }
}

/// A pattern plus the provenance the output records report.
struct ResolvedInput {
    pattern: Pattern,
    source: String,
    source_bytes: u64,
    dropped_symbols: u64,
    symbol_desc: String,
    newline_desc: String,
    declared_alphabet: Option<usize>,
}

impl ResolvedInput {
    fn input_info(&self) -> InputInfo {
        InputInfo {
            source: self.source.clone(),
            source_bytes: self.source_bytes,
            dropped_symbols: self.dropped_symbols,
        }
    }

    fn policy_info(&self) -> PolicyInfo {
        PolicyInfo {
            symbol: self.symbol_desc.clone(),
            newline: self.newline_desc.clone(),
            declared_alphabet: self.declared_alphabet,
        }
    }
}

fn parse_symbol_mode(text: &str) -> Result<SymbolMode, CliError> {
    match text {
        "bit" => Ok(SymbolMode::Bit),
        "byte" => Ok(SymbolMode::Byte),
        "utf8-char" => Ok(SymbolMode::Utf8Char),
        other => match other.strip_prefix("token:") {
            Some(width) => {
                let width: usize = width
                    .parse()
                    .map_err(|_| CliError::input(format!("bad token width in --symbol {other}")))?;
                if width == 0 {
                    return Err(CliError::input("token width must be at least 1"));
                }
                Ok(SymbolMode::TokenWidth(width))
            }
            None => Err(CliError::input(format!(
                "unknown --symbol '{other}' (expected bit, byte, utf8-char, or token:W)"
            ))),
        },
    }
}

fn resolve_input(args: &InputArgs, config: &Config) -> Result<ResolvedInput, CliError> {
    if let Some(id_text) = args.input.strip_prefix("fixture:") {
        let id: FixtureId =
            id_text.parse().map_err(|e| CliError::input(format!("{e} (try `infometer fixture list`)")))?;
        let record = corpus::fixture_record(id);
        if let Some(symbol) = &args.symbol {
            if symbol != record.unit.as_str() {
                eprintln!(
                    "note: fixture {id} is measured in its own unit ({}); --symbol {symbol} ignored",
                    record.unit.as_str()
                );
            }
        }
        return Ok(ResolvedInput {
            pattern: corpus::fixture(id),
            source: format!("fixture:{id}"),
            source_bytes: record.content.len() as u64,
            dropped_symbols: 0,
            symbol_desc: record.unit.as_str().to_string(),
            newline_desc: "keep".to_string(),
            declared_alphabet: args.declared_alphabet,
        });
    }

    let mode = match &args.symbol {
        Some(text) => parse_symbol_mode(text)?,
        None => {
            eprintln!("warning: --symbol not given; defaulting to byte mode");
            SymbolMode::Byte
        }
    };
    let mut policy = SymbolizationPolicy::new(mode);
    if let Some(newline) = args.newline {
        policy = policy.with_newline(newline.into());
    }
    if let Some(k) = args.declared_alphabet {
        policy = policy.with_declared_alphabet(k);
    }

    let metadata = std::fs::metadata(&args.input)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", args.input)))?;
    if metadata.len() > config.large_threshold_bytes
        && !args.allow_large
        && args.max_scales.is_none()
    {
        return Err(CliError::input(format!(
            "{} is {} bytes (> {} guard); full spectra are quadratic in symbol touches, pass --allow-large or --max-scales",
            args.input,
            metadata.len(),
            config.large_threshold_bytes
        )));
    }

    let report = ingest_file(&args.input, &policy)
        .map_err(|e| CliError::input(format!("{e}")))?;
    Ok(ResolvedInput {
        pattern: report.pattern,
        source: args.input.clone(),
        source_bytes: report.source_bytes as u64,
        dropped_symbols: report.dropped_symbols as u64,
        symbol_desc: policy.mode.to_string(),
        newline_desc: policy.newline.to_string(),
        declared_alphabet: args.declared_alphabet,
    })
}

fn spectrum_options(input: &InputArgs) -> SpectrumOptions {
    SpectrumOptions {
        declared_alphabet: input.declared_alphabet,
        max_scales: input.max_scales,
    }
}

/// Internal consistency check; a failure here is a bug, not bad input.
fn validate_report(report: &MeasureReport) -> Result<(), CliError> {
    let fine = report.i_ssm <= report.i_shannon + 1e-6
        && report.i_shannon <= report.i_max + 1e-6
        && report.i_ssm >= -1e-9
        && report.i_shannon_rel.is_finite()
        && report.i_ssm_rel.is_finite();
    if fine {
        Ok(())
    } else {
        Err(CliError::Internal(format!("measure report violates the ordering chain: {report:?}")))
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs, config: &Config, _verbose: bool) -> Result<(), CliError> {
    let resolved = resolve_input(&args.input, config)?;
    let options = spectrum_options(&args.input);
    let report = measure_with_options(&resolved.pattern, &options)
        .map_err(|e| CliError::input(e.to_string()))?;
    validate_report(&report)?;

    let spectrum = if args.spectrum {
        let set = analyze_spectra(&resolved.pattern, &options)
            .map_err(|e| CliError::input(e.to_string()))?;
        Some(spectrum_rows(
            &set,
            &[SpectrumKind::Raw, SpectrumKind::Maximal, SpectrumKind::Normalized],
        ))
    } else {
        None
    };

    let record = OutputRecord {
        schema_version: SCHEMA_VERSION,
        input: resolved.input_info(),
        policy: resolved.policy_info(),
        measures: MeasuresInfo::from(&report),
        spectrum,
    };
    let text = match args.format {
        Format::Json => record_to_json(&record),
        Format::Csv => record_to_csv(&record),
    };
    emit(&text, args.out.as_ref())
}

fn parse_kinds(text: &str) -> Result<Vec<SpectrumKind>, CliError> {
    let mut kinds = Vec::new();
    for part in text.split(',') {
        let kind = match part.trim() {
            "raw" => SpectrumKind::Raw,
            "maximal" => SpectrumKind::Maximal,
            "normalized" => SpectrumKind::Normalized,
            other => {
                return Err(CliError::input(format!(
                    "unknown spectrum kind '{other}' (expected raw, maximal, normalized)"
                )))
            }
        };
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    if kinds.is_empty() {
        return Err(CliError::input("--kinds must name at least one spectrum"));
    }
    Ok(kinds)
}

fn cmd_spectrum(args: SpectrumArgs, config: &Config) -> Result<(), CliError> {
    let kinds = parse_kinds(&args.kinds)?;
    let resolved = resolve_input(&args.input, config)?;
    if resolved.pattern.len() < 2 {
        return Err(CliError::input(format!(
            "{}: pattern has {} symbols; a spectrum needs at least 2",
            resolved.source,
            resolved.pattern.len()
        )));
    }
    if resolved.pattern.alphabet_size() < 2 {
        return Err(CliError::input(format!(
            "{}: single-symbol alphabet; every spectrum value is zero and no minimum is meaningful",
            resolved.source
        )));
    }
    let set = analyze_spectra(&resolved.pattern, &spectrum_options(&args.input))
        .map_err(|e| CliError::input(e.to_string()))?;
    if args.timings {
        for stat in &set.stats {
            eprintln!(
                "scale {:>8}: {:>10} block ops, {:>12} ns",
                stat.scale, stat.block_ops, stat.nanos
            );
        }
    }
    let rows = spectrum_rows(&set, &kinds);
    let text = match args.format {
        Format::Csv => spectrum_rows_to_csv(&rows),
        Format::Json => spectrum_rows_to_json(&rows),
    };
    emit(&text, args.out.as_ref())
}

fn parse_backends(text: &str, config: &Config) -> Result<Vec<CompressorBackend>, CliError> {
    let mut backends = Vec::new();
    for part in text.split(',') {
        let backend = match part.trim() {
            "zip" | "zip-family" => CompressorBackend::builtin_deflate(),
            "7z" | "7z-family" => CompressorBackend::seven_z(config.seven_z_cmd.clone()),
            "zpaq" | "zpaq-family" => CompressorBackend::zpaq(config.zpaq_cmd.clone()),
            "custom" | "custom-command" => match &config.custom_cmd {
                Some(template) => CompressorBackend::custom("custom-command", template.clone()),
                None => {
                    return Err(CliError::input(
                        "backend 'custom' needs custom_cmd in the config file",
                    ))
                }
            },
            other => {
                return Err(CliError::input(format!(
                    "unknown backend '{other}' (expected zip, 7z, zpaq, custom)"
                )))
            }
        };
        backends.push(backend.with_timeout(config.timeout));
    }
    if backends.is_empty() {
        return Err(CliError::input("--backends must name at least one backend"));
    }
    Ok(backends)
}

fn cmd_compare(args: CompareArgs, config: &Config, verbose: bool) -> Result<(), CliError> {
    let backends = parse_backends(&args.backends, config)?;
    let resolved = resolve_input(&args.input, config)?;
    let options = spectrum_options(&args.input);
    if verbose {
        for backend in &backends {
            match backend.probe() {
                Availability::Available { version } => eprintln!(
                    "backend {}: available ({})",
                    backend.id(),
                    version.as_deref().unwrap_or("version unknown")
                ),
                Availability::Missing { reason } => {
                    eprintln!("backend {}: missing ({reason})", backend.id())
                }
            }
        }
    }
    let payload_bits = pattern_payload(&resolved.pattern).len() as u64 * 8;
    if payload_bits < infometer_core::baselines::TINY_INPUT_BITS {
        eprintln!(
            "note: payload is only {payload_bits} bits; compressed sizes are overhead-dominated below {} bits",
            infometer_core::baselines::TINY_INPUT_BITS
        );
    }
    let report = compare_with_options(&resolved.pattern, &backends, &options)
        .map_err(|e| CliError::input(e.to_string()))?;
    validate_report(&report.measures)?;
    let record = compare_record(resolved.input_info(), resolved.policy_info(), &report);
    let text = match args.format {
        Some(Format::Json) => {
            let mut t = serde_json::to_string_pretty(&record).expect("record serializes");
            t.push('\n');
            t
        }
        Some(Format::Csv) => compare_to_csv(&record),
        None => compare_to_table(&record),
    };
    emit(&text, args.out.as_ref())
}

fn cmd_demo_sensitivity(args: DemoArgs) -> Result<(), CliError> {
    let mut rows = Vec::new();
    for id in [FixtureId::T3Clean, FixtureId::T3Corrupt] {
        let record = corpus::fixture_record(id);
        let report = infometer_core::measure(&corpus::fixture(id));
        validate_report(&report)?;
        rows.push(SensitivityRow {
            fixture: id.to_string(),
            content: record.content.to_string(),
            computed_i_ssm_exact: report.i_ssm,
            computed_i_ssm_bits: report.i_ssm_bits(),
            argmin_scale: report.argmin_scale,
            reference_i_ssm_bits: record.reference_ssm.expect("sensitivity rows carry references"),
        });
    }
    let record = SensitivityRecord {
        schema_version: SCHEMA_VERSION,
        corrupt_over_clean: rows[1].computed_i_ssm_exact / rows[0].computed_i_ssm_exact,
        rows,
    };
    let text = match args.format {
        Some(Format::Json) => {
            let mut t = serde_json::to_string_pretty(&record).expect("record serializes");
            t.push('\n');
            t
        }
        Some(Format::Csv) => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in &record.rows {
                writer.serialize(row).expect("csv row serializes");
            }
            String::from_utf8(writer.into_inner().expect("flushed")).expect("utf8")
        }
        None => sensitivity_to_table(&record),
    };
    emit(&text, None)
}

fn cmd_fixture(args: FixtureArgs) -> Result<(), CliError> {
    match args.action {
        FixtureCmd::List => {
            println!("{:<6} {:<10} {:>8}  description", "id", "unit", "symbols");
            for f in corpus::all_fixtures() {
                println!(
                    "{:<6} {:<10} {:>8}  {}",
                    f.id.as_str(),
                    f.unit.as_str(),
                    corpus::fixture(f.id).len(),
                    f.description
                );
            }
            Ok(())
        }
        FixtureCmd::Export { id, out } => {
            let id: FixtureId = id
                .parse()
                .map_err(|e| CliError::input(format!("{e} (try `infometer fixture list`)")))?;
            let content = corpus::fixture_record(id).content;
            match out {
                Some(path) => std::fs::write(&path, content)
                    .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
                None => {
                    print!("{content}");
                    Ok(())
                }
            }
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let kind = match args.kind {
        GenKind::UniformRandom => GeneratorKind::UniformRandom,
        GenKind::Ramp => GeneratorKind::Ramp,
        GenKind::Repeat => GeneratorKind::Repeat {
            period: args
                .period
                .clone()
                .ok_or_else(|| CliError::input("--kind repeat needs --period"))?,
        },
        GenKind::RepeatErrors => GeneratorKind::RepeatWithErrors {
            period: args
                .period
                .clone()
                .ok_or_else(|| CliError::input("--kind repeat-errors needs --period"))?,
            error_rate: args
                .error_rate
                .ok_or_else(|| CliError::input("--kind repeat-errors needs --error-rate"))?,
        },
    };
    let spec = GeneratorSpec {
        kind,
        alphabet: args.alphabet.chars().collect(),
        length: args.length,
        seed: args.seed,
    };
    let pattern = corpus::generate(&spec).map_err(|e| CliError::input(e.to_string()))?;
    let bytes = pattern.canonical_bytes();
    match args.out {
        Some(path) => std::fs::write(&path, bytes)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let text = String::from_utf8(bytes).expect("generator symbols are chars");
            print!("{text}");
            Ok(())
        }
    }
}
