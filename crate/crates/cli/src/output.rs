//! Output records and their JSON / CSV / table renderings.
//!
//! Data output is deterministic: identical inputs and flags produce
//! byte-identical bytes. Integer-rounded bits appear next to the
//! full-precision `*_exact` fields, so tables stay readable without losing
//! testability.

use infometer_core::baselines::{BaselineError, CompareReport};
use infometer_core::{MeasureReport, SpectrumKind, SpectrumSet};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub source: String,
    pub source_bytes: u64,
    pub dropped_symbols: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PolicyInfo {
    pub symbol: String,
    pub newline: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_alphabet: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasuresInfo {
    pub n: usize,
    pub k: usize,
    pub i_max_bits: u64,
    pub i_shannon_bits: u64,
    pub i_ssm_bits: u64,
    pub argmin_scale: usize,
    pub i_max_bits_exact: f64,
    pub i_shannon_bits_exact: f64,
    pub i_ssm_bits_exact: f64,
    pub i_shannon_rel: f64,
    pub i_ssm_rel: f64,
}

impl From<&MeasureReport> for MeasuresInfo {
    fn from(report: &MeasureReport) -> Self {
        MeasuresInfo {
            n: report.n,
            k: report.k,
            i_max_bits: report.i_max_bits(),
            i_shannon_bits: report.i_shannon_bits(),
            i_ssm_bits: report.i_ssm_bits(),
            argmin_scale: report.argmin_scale,
            i_max_bits_exact: report.i_max,
            i_shannon_bits_exact: report.i_shannon,
            i_ssm_bits_exact: report.i_ssm,
            i_shannon_rel: report.i_shannon_rel,
            i_ssm_rel: report.i_ssm_rel,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub scale: usize,
    pub kind: &'static str,
    pub bits: f64,
    pub is_min: bool,
}

/// The analyze record: everything known about one input.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub input: InputInfo,
    pub policy: PolicyInfo,
    pub measures: MeasuresInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<SpectrumRow>>,
}

/// Long-form spectrum rows for the requested kinds, with the normalized
/// minimum marked.
pub fn spectrum_rows(set: &SpectrumSet, kinds: &[SpectrumKind]) -> Vec<SpectrumRow> {
    let argmin = set.normalized.min_entry().map(|(scale, _)| scale);
    let mut rows = Vec::new();
    for kind in kinds {
        let spectrum = match kind {
            SpectrumKind::Raw => &set.raw,
            SpectrumKind::Maximal => &set.maximal,
            SpectrumKind::Normalized => &set.normalized,
        };
        for (scale, bits) in spectrum.iter() {
            rows.push(SpectrumRow {
                scale,
                kind: kind.as_str(),
                bits,
                is_min: *kind == SpectrumKind::Normalized && Some(scale) == argmin,
            });
        }
    }
    rows
}

pub fn record_to_json(record: &OutputRecord) -> String {
    let mut text = serde_json::to_string_pretty(record).expect("record serializes");
    text.push('\n');
    text
}

/// Flat CSV row mirroring the scalar fields of [`OutputRecord`].
#[derive(Serialize)]
struct RecordCsvRow<'a> {
    schema_version: u32,
    source: &'a str,
    source_bytes: u64,
    dropped_symbols: u64,
    symbol: &'a str,
    newline: &'a str,
    declared_alphabet: Option<usize>,
    n: usize,
    k: usize,
    i_max_bits: u64,
    i_shannon_bits: u64,
    i_ssm_bits: u64,
    argmin_scale: usize,
    i_max_bits_exact: f64,
    i_shannon_bits_exact: f64,
    i_ssm_bits_exact: f64,
    i_shannon_rel: f64,
    i_ssm_rel: f64,
}

pub fn record_to_csv(record: &OutputRecord) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .serialize(RecordCsvRow {
            schema_version: record.schema_version,
            source: &record.input.source,
            source_bytes: record.input.source_bytes,
            dropped_symbols: record.input.dropped_symbols,
            symbol: &record.policy.symbol,
            newline: &record.policy.newline,
            declared_alphabet: record.policy.declared_alphabet,
            n: record.measures.n,
            k: record.measures.k,
            i_max_bits: record.measures.i_max_bits,
            i_shannon_bits: record.measures.i_shannon_bits,
            i_ssm_bits: record.measures.i_ssm_bits,
            argmin_scale: record.measures.argmin_scale,
            i_max_bits_exact: record.measures.i_max_bits_exact,
            i_shannon_bits_exact: record.measures.i_shannon_bits_exact,
            i_ssm_bits_exact: record.measures.i_ssm_bits_exact,
            i_shannon_rel: record.measures.i_shannon_rel,
            i_ssm_rel: record.measures.i_ssm_rel,
        })
        .expect("csv row serializes");
    let mut text = String::from_utf8(writer.into_inner().expect("flushed")).expect("utf8");
    if let Some(rows) = &record.spectrum {
        text.push('\n');
        text.push_str(&spectrum_rows_to_csv(rows));
    }
    text
}

pub fn spectrum_rows_to_csv(rows: &[SpectrumRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).expect("csv row serializes");
    }
    String::from_utf8(writer.into_inner().expect("flushed")).expect("utf8")
}

pub fn spectrum_rows_to_json(rows: &[SpectrumRow]) -> String {
    let mut text = serde_json::to_string_pretty(rows).expect("rows serialize");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// Comparison report
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct CompareBackendInfo {
    pub backend: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_bits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub container_overhead_included: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub overhead_dominated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub version: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CompareRecord {
    pub schema_version: u32,
    pub input: InputInfo,
    pub policy: PolicyInfo,
    pub measures: MeasuresInfo,
    pub payload_bits: u64,
    pub backends: Vec<CompareBackendInfo>,
}

pub fn compare_record(
    input: InputInfo,
    policy: PolicyInfo,
    report: &CompareReport,
) -> CompareRecord {
    let i_max = report.measures.i_max;
    let backends = report
        .outcomes
        .iter()
        .map(|outcome| match &outcome.result {
            Ok(result) => CompareBackendInfo {
                backend: outcome.backend.to_string(),
                status: "ok",
                output_bits: Some(result.output_bits),
                relative: Some(if i_max > 0.0 { result.output_bits as f64 / i_max } else { 0.0 }),
                ratio: Some(result.ratio),
                container_overhead_included: Some(result.container_overhead_included),
                overhead_dominated: Some(result.overhead_dominated),
                version: result.backend_version.clone(),
                skip_reason: None,
            },
            Err(err) => CompareBackendInfo {
                backend: outcome.backend.to_string(),
                status: "skipped",
                output_bits: None,
                relative: None,
                ratio: None,
                container_overhead_included: None,
                overhead_dominated: None,
                version: None,
                skip_reason: Some(skip_summary(err)),
            },
        })
        .collect();
    CompareRecord {
        schema_version: SCHEMA_VERSION,
        input,
        policy,
        measures: MeasuresInfo::from(&report.measures),
        payload_bits: report.input_bits,
        backends,
    }
}

fn skip_summary(err: &BaselineError) -> String {
    // First line only; full transcripts stay in the error display.
    err.to_string().lines().next().unwrap_or("skipped").to_string()
}

/// The two human tables: absolute bits, then relative percentages.
pub fn compare_to_table(record: &CompareRecord) -> String {
    let mut out = String::new();
    let m = &record.measures;
    out.push_str(&format!(
        "input: {}  (n={}, k={}, payload {} bits)\n\n",
        record.input.source, m.n, m.k, record.payload_bits
    ));
    out.push_str("measure            bits\n");
    out.push_str(&format!("{:<18} {:>10}\n", "I_MAX", m.i_max_bits));
    out.push_str(&format!("{:<18} {:>10}\n", "I_S", m.i_shannon_bits));
    out.push_str(&format!("{:<18} {:>10}\n", "I_SSM", m.i_ssm_bits));
    for b in &record.backends {
        match b.output_bits {
            Some(bits) => {
                let mut notes = Vec::new();
                if b.overhead_dominated == Some(true) {
                    notes.push("overhead-dominated");
                }
                if b.container_overhead_included == Some(true) {
                    notes.push("container included");
                }
                let annotation =
                    if notes.is_empty() { String::new() } else { format!("  ({})", notes.join(", ")) };
                out.push_str(&format!("{:<18} {:>10}{annotation}\n", b.backend, bits));
            }
            None => out.push_str(&format!(
                "{:<18} {:>10}  [skipped: {}]\n",
                b.backend,
                "-",
                b.skip_reason.as_deref().unwrap_or("unavailable")
            )),
        }
    }

    out.push_str("\nmeasure            relative%\n");
    let percent = |rel: f64| format!("{:.0}", rel * 100.0);
    out.push_str(&format!("{:<18} {:>10}\n", "I_S", percent(m.i_shannon_rel)));
    out.push_str(&format!("{:<18} {:>10}\n", "I_SSM", percent(m.i_ssm_rel)));
    for b in &record.backends {
        match b.relative {
            Some(rel) => out.push_str(&format!("{:<18} {:>10}\n", b.backend, percent(rel))),
            None => out.push_str(&format!("{:<18} {:>10}\n", b.backend, "-")),
        }
    }
    out
}

#[derive(Serialize)]
struct CompareCsvRow<'a> {
    source: &'a str,
    measure: &'a str,
    bits: Option<u64>,
    relative: Option<f64>,
    status: &'a str,
    note: &'a str,
}

type CompareRowTuple<'a> = (String, Option<u64>, Option<f64>, &'a str, &'a str);

pub fn compare_to_csv(record: &CompareRecord) -> String {
    let m = &record.measures;
    let mut rows: Vec<CompareRowTuple<'_>> = vec![
        ("I_MAX".into(), Some(m.i_max_bits), Some(1.0), "ok", ""),
        ("I_S".into(), Some(m.i_shannon_bits), Some(m.i_shannon_rel), "ok", ""),
        ("I_SSM".into(), Some(m.i_ssm_bits), Some(m.i_ssm_rel), "ok", ""),
    ];
    for b in &record.backends {
        rows.push((
            b.backend.clone(),
            b.output_bits,
            b.relative,
            b.status,
            b.skip_reason.as_deref().unwrap_or(""),
        ));
    }
    let mut writer = csv::Writer::from_writer(Vec::new());
    for (measure, bits, relative, status, note) in &rows {
        writer
            .serialize(CompareCsvRow {
                source: &record.input.source,
                measure,
                bits: *bits,
                relative: *relative,
                status,
                note,
            })
            .expect("csv row serializes");
    }
    String::from_utf8(writer.into_inner().expect("flushed")).expect("utf8")
}

// ---------------------------------------------------------------------------
// Sensitivity demo
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct SensitivityRow {
    pub fixture: String,
    pub content: String,
    pub computed_i_ssm_exact: f64,
    pub computed_i_ssm_bits: u64,
    pub argmin_scale: usize,
    pub reference_i_ssm_bits: u64,
}

#[derive(Debug, Serialize)]
pub struct SensitivityRecord {
    pub schema_version: u32,
    pub rows: Vec<SensitivityRow>,
    /// Computed I_SSM of the corrupted string over the clean one.
    pub corrupt_over_clean: f64,
}

pub fn sensitivity_to_table(record: &SensitivityRecord) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<32} {:>14} {:>10} {:>7} {:>11}\n",
        "pattern", "computed bits", "(rounded)", "scale", "reference"
    ));
    for row in &record.rows {
        out.push_str(&format!(
            "{:<32} {:>14.4} {:>10} {:>7} {:>11}\n",
            row.content,
            row.computed_i_ssm_exact,
            row.computed_i_ssm_bits,
            row.argmin_scale,
            row.reference_i_ssm_bits
        ));
    }
    out.push_str(&format!(
        "\none substitution inflates the measured content by {:.3}x\n",
        record.corrupt_over_clean
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use infometer_core::corpus::{fixture, FixtureId};
    use infometer_core::{analyze_spectra, measure, SpectrumOptions};

    fn record_for(id: FixtureId) -> OutputRecord {
        let p = fixture(id);
        let report = measure(&p);
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            input: InputInfo {
                source: format!("fixture:{id}"),
                source_bytes: p.len() as u64,
                dropped_symbols: 0,
            },
            policy: PolicyInfo {
                symbol: "bit".into(),
                newline: "keep".into(),
                declared_alphabet: None,
            },
            measures: MeasuresInfo::from(&report),
            spectrum: None,
        }
    }

    #[test]
    fn json_and_csv_carry_the_same_numbers() {
        let record = record_for(FixtureId::XA);
        let json = record_to_json(&record);
        let csv_text = record_to_csv(&record);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["measures"]["i_ssm_bits"], 40);
        let line = csv_text.lines().nth(1).unwrap();
        assert!(line.contains(",40,"), "csv line: {line}");
        // The exact field appears verbatim in both.
        let exact = parsed["measures"]["i_ssm_bits_exact"].to_string();
        assert!(csv_text.contains(&exact), "{exact} missing from csv");
    }

    #[test]
    fn argmin_marker_lands_on_the_normalized_minimum() {
        let p = fixture(FixtureId::XB);
        let set = analyze_spectra(&p, &SpectrumOptions::default()).unwrap();
        let rows = spectrum_rows(&set, &[SpectrumKind::Raw, SpectrumKind::Normalized]);
        let marked: Vec<&SpectrumRow> = rows.iter().filter(|r| r.is_min).collect();
        assert_eq!(marked.len(), 1);
        assert_eq!(marked[0].scale, 2);
        assert_eq!(marked[0].kind, "normalized");
        assert_eq!(marked[0].bits, 2.0);
    }
}
