//! CSV and JSON-manifest serialization.
//!
//! The CSV schema is fixed: header [`CSV_HEADER`], one row per record, every
//! float printed with 17 significant digits (`{:.16e}`) so the payload
//! round-trips bitwise, LF line endings on every platform. Manifests are
//! single JSON documents describing each cell of a sweep or figure run:
//! parameters, output file, flags, and any captured error.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::Kernel;
use crate::experiments::{FigureConfig, RunResult, SweepCell, SweepSpec, TimeGrid};
use crate::modes::SystemParams;
use crate::quantifiers::CorrelationRecord;

/// The one and only CSV header.
pub const CSV_HEADER: &str = "t,N1,N2,E_N,S_ab,S_ba,dS,purity,nu_min_raw";

/// Renders records as a CSV payload (header + rows, LF endings).
pub fn csv_string(records: &[CorrelationRecord]) -> String {
    let mut out = String::with_capacity(32 + records.len() * 230);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let mut row = String::with_capacity(230);
        for (i, v) in [
            r.t, r.n1, r.n2, r.e_n, r.s_ab, r.s_ba, r.d_s, r.purity, r.nu_min_raw,
        ]
        .into_iter()
        .enumerate()
        {
            if i > 0 {
                row.push(',');
            }
            row.push_str(&format!("{v:.16e}"));
        }
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// Writes records to `path` in the fixed CSV schema.
pub fn write_csv(path: &Path, records: &[CorrelationRecord]) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(csv_string(records).as_bytes())?;
    Ok(())
}

/// Parses a CSV payload in the fixed schema back into records.
pub fn parse_csv(payload: &str) -> Result<Vec<CorrelationRecord>> {
    let mut lines = payload.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => {
            return Err(Error::Csv {
                line: 1,
                reason: format!(
                    "expected header `{CSV_HEADER}`, found `{}`",
                    other.unwrap_or("")
                ),
            })
        }
    }
    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::Csv {
                line: line_no,
                reason: format!("expected 9 fields, found {}", fields.len()),
            });
        }
        let mut v = [0.0f64; 9];
        for (slot, field) in v.iter_mut().zip(&fields) {
            *slot = field.parse::<f64>().map_err(|e| Error::Csv {
                line: line_no,
                reason: format!("bad float `{field}`: {e}"),
            })?;
        }
        records.push(CorrelationRecord {
            t: v[0],
            n1: v[1],
            n2: v[2],
            e_n: v[3],
            s_ab: v[4],
            s_ba: v[5],
            d_s: v[6],
            purity: v[7],
            nu_min_raw: v[8],
        });
    }
    Ok(records)
}

/// Reads a CSV file in the fixed schema.
pub fn read_csv(path: &Path) -> Result<Vec<CorrelationRecord>> {
    parse_csv(&fs::read_to_string(path)?)
}

/// One cell of a sweep manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestCell {
    /// The axis value of this cell.
    pub value: f64,
    /// Full parameters, when the cell parameters validated.
    pub params: Option<SystemParams>,
    /// CSV file written for this cell, when it ran to completion.
    pub output_file: Option<String>,
    /// Milburn aliasing flag of the completed run.
    pub resonance_edge_case: Option<bool>,
    /// Captured failure, when the cell did not complete.
    pub error: Option<String>,
}

/// Single JSON document describing a parameter sweep and its outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepManifest {
    pub axis: String,
    pub kernel: Kernel,
    pub base: SystemParams,
    pub grid: TimeGrid,
    pub cells: Vec<ManifestCell>,
}

impl SweepManifest {
    /// Assembles the manifest from evaluated cells and the file names their
    /// CSVs were written to (`None` for failed cells).
    pub fn from_cells(
        spec: &SweepSpec,
        kernel: Kernel,
        cells: &[SweepCell],
        files: &[Option<String>],
    ) -> Self {
        assert_eq!(cells.len(), files.len(), "one file slot per cell");
        SweepManifest {
            axis: spec.axis.to_string(),
            kernel,
            base: spec.base,
            grid: spec.grid,
            cells: cells
                .iter()
                .zip(files)
                .map(|(cell, file)| match &cell.outcome {
                    Ok(run) => ManifestCell {
                        value: cell.value,
                        params: Some(run.params),
                        output_file: file.clone(),
                        resonance_edge_case: Some(run.flags.resonance_edge_case),
                        error: None,
                    },
                    Err(e) => ManifestCell {
                        value: cell.value,
                        params: None,
                        output_file: None,
                        resonance_edge_case: None,
                        error: Some(e.to_string()),
                    },
                })
                .collect(),
        }
    }
}

/// One cell of a figure manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureManifestCell {
    pub label: String,
    pub params: SystemParams,
    pub kernel: Kernel,
    pub grid: TimeGrid,
    pub output_file: String,
    pub resonance_edge_case: bool,
}

/// Single JSON document describing a figure-preset run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureManifest {
    pub preset: String,
    pub cells: Vec<FigureManifestCell>,
}

impl FigureManifest {
    pub fn from_runs(preset: &str, runs: &[(FigureConfig, RunResult, String)]) -> Self {
        FigureManifest {
            preset: preset.to_string(),
            cells: runs
                .iter()
                .map(|(cfg, run, file)| FigureManifestCell {
                    label: cfg.label.clone(),
                    params: cfg.params,
                    kernel: cfg.kernel,
                    grid: cfg.grid,
                    output_file: file.clone(),
                    resonance_edge_case: run.flags.resonance_edge_case,
                })
                .collect(),
        }
    }
}

/// Writes any serializable manifest as pretty JSON with a trailing newline.
pub fn write_manifest<T: Serialize>(path: &Path, manifest: &T) -> Result<()> {
    let mut payload = serde_json::to_string_pretty(manifest)?;
    payload.push('\n');
    fs::write(path, payload)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::Kernel;
    use crate::experiments::{parameter_sweep, time_series, SweepAxis};

    fn sample_records() -> Vec<CorrelationRecord> {
        let grid = TimeGrid::from_duration(5.0, 21).unwrap();
        let params = SystemParams::new(1.0, 0.5, 0.3, 100.0).unwrap();
        time_series(params, &grid, Kernel::Milburn).unwrap().records
    }

    #[test]
    fn csv_round_trips_bitwise() {
        let records = sample_records();
        let payload = csv_string(&records);
        let back = parse_csv(&payload).unwrap();
        assert_eq!(records.len(), back.len());
        for (a, b) in records.iter().zip(&back) {
            assert_eq!(a, b, "round-trip must be bitwise exact");
        }
    }

    #[test]
    fn csv_layout_is_fixed() {
        let records = sample_records();
        let payload = csv_string(&records);
        let mut lines = payload.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let first = lines.next().unwrap();
        assert_eq!(first.split(',').count(), 9);
        // 17 significant digits: mantissa `d.dddddddddddddddd`.
        assert!(first.split(',').all(|f| f.contains('e')));
        assert!(!payload.contains('\r'));
        assert!(payload.ends_with('\n'));
    }

    #[test]
    fn csv_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.csv");
        let records = sample_records();
        write_csv(&path, &records).unwrap();
        let back = read_csv(&path).unwrap();
        assert_eq!(records, back);
    }

    #[test]
    fn malformed_csv_is_rejected_with_line_numbers() {
        assert!(matches!(
            parse_csv("nope\n"),
            Err(Error::Csv { line: 1, .. })
        ));
        let missing_field = format!("{CSV_HEADER}\n1.0,2.0\n");
        assert!(matches!(
            parse_csv(&missing_field),
            Err(Error::Csv { line: 2, .. })
        ));
        let bad_float = format!("{CSV_HEADER}\n0,0,0,0,0,0,0,x,0\n");
        assert!(matches!(
            parse_csv(&bad_float),
            Err(Error::Csv { line: 2, .. })
        ));
    }

    #[test]
    fn sweep_manifest_captures_errors_and_files() {
        let spec = SweepSpec {
            base: SystemParams::new(1.0, 0.5, 0.2, 100.0).unwrap(),
            axis: SweepAxis::Coupling,
            values: vec![0.2, 0.6],
            grid: TimeGrid::from_duration(2.0, 5).unwrap(),
        };
        let cells = parameter_sweep(&spec, Kernel::Milburn).unwrap();
        let files = vec![Some("cell-0.csv".to_string()), None];
        let manifest = SweepManifest::from_cells(&spec, Kernel::Milburn, &cells, &files);
        assert_eq!(manifest.cells.len(), 2);
        assert_eq!(manifest.cells[0].output_file.as_deref(), Some("cell-0.csv"));
        assert!(manifest.cells[0].error.is_none());
        assert!(manifest.cells[1].output_file.is_none());
        let msg = manifest.cells[1].error.as_deref().unwrap();
        assert!(msg.contains("omega1*omega2"), "got: {msg}");

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("manifest.json");
        write_manifest(&path, &manifest).unwrap();
        let back: SweepManifest =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(manifest, back);
    }
}
