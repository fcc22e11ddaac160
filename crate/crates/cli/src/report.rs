//! Machine-readable run reports.

use std::path::Path;

use addrengine_core::baseline::{
    comparison_rows, count_hardware_accesses, count_software_accesses, saving,
    REFERENCE_HW_PER_PIXEL, REFERENCE_SW_PER_PIXEL,
};
use addrengine_core::engine::counters::Counters;
use addrengine_core::engine::timing::TimingReport;
use addrengine_core::engine::{FetchAudit, InputTransferRecord, OutputTransferRecord, RunOutput};
use anyhow::{Context, Result};
use serde::Serialize;

use crate::config::EffectiveConfig;

/// Report of one `run` invocation.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub config: EffectiveConfig,
    /// Present when the engine simulator executed the run.
    pub counters: Option<Counters>,
    pub timing: Option<TimingReport>,
    pub fetch_audit: Option<FetchAudit>,
    pub bank_violations: Option<u64>,
    pub input_transfer: Option<InputTransferRecord>,
    pub output_transfer: Option<OutputTransferRecord>,
    pub sad: u64,
    pub sad_saturated: bool,
    pub table: Vec<TableEntry>,
    /// Visit count for segment runs.
    pub visited: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct TableEntry {
    pub id: u16,
    pub count: u64,
    pub y_sum: u64,
}

impl RunReport {
    pub fn new(config: EffectiveConfig) -> Self {
        Self {
            config,
            counters: None,
            timing: None,
            fetch_audit: None,
            bank_violations: None,
            input_transfer: None,
            output_transfer: None,
            sad: 0,
            sad_saturated: false,
            table: Vec::new(),
            visited: None,
        }
    }

    pub fn with_engine_output(mut self, out: &RunOutput) -> Self {
        self.counters = Some(out.counters);
        self.timing = Some(out.timing);
        self.fetch_audit = Some(out.fetch_audit);
        self.bank_violations = Some(out.bank_violations);
        self.input_transfer = Some(out.input_transfer);
        self.output_transfer = Some(out.output_transfer);
        self.set_side(&out.side);
        self
    }

    pub fn set_side(&mut self, side: &addrengine_core::scan::ScanSide) {
        self.sad = side.sad.sum;
        self.sad_saturated = side.sad.saturated;
        self.table = side
            .table
            .iter()
            .map(|(id, rec)| TableEntry { id, count: rec.count, y_sum: rec.y_sum })
            .collect();
    }
}

/// One row of the access-count comparison report.
#[derive(Debug, Serialize)]
pub struct ComparisonReportRow {
    pub label: String,
    pub software: u64,
    pub hardware: u64,
    pub saving_vs_software_pct: u64,
    pub saving_vs_hardware_pct: u64,
    /// Engine-measured event count, when the simulator confirmed the row.
    pub measured: Option<u64>,
    pub matches_reference: bool,
}

/// The full access-count comparison.
#[derive(Debug, Serialize)]
pub struct ComparisonReport {
    pub width: usize,
    pub height: usize,
    pub rows: Vec<ComparisonReportRow>,
    pub all_match: bool,
}

/// Builds the four-row comparison for the given dimensions, checking each
/// count against the frozen per-pixel reference costs.
pub fn comparison_report(width: usize, height: usize) -> ComparisonReport {
    let pixels = (width * height) as u64;
    let mut rows = Vec::new();
    let mut all_match = true;
    for (row, &sw_per_px) in comparison_rows().iter().zip(REFERENCE_SW_PER_PIXEL.iter()) {
        let software = count_software_accesses(row.mode, &row.mask, row.channels, width, height);
        let hardware = count_hardware_accesses(width, height);
        let s = saving(software, hardware).expect("hardware count is positive");
        let matches_reference =
            software == sw_per_px * pixels && hardware == REFERENCE_HW_PER_PIXEL * pixels;
        all_match &= matches_reference;
        rows.push(ComparisonReportRow {
            label: row.label.to_string(),
            software,
            hardware,
            saving_vs_software_pct: s.vs_software_pct(),
            saving_vs_hardware_pct: s.vs_hardware_pct(),
            measured: None,
            matches_reference,
        });
    }
    ComparisonReport { width, height, rows, all_match }
}

/// Report of one `timing` invocation.
#[derive(Debug, Serialize)]
pub struct TimingRunReport {
    pub config: EffectiveConfig,
    pub timing: TimingReport,
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let json = serde_json::to_string_pretty(value)?;
    std::fs::write(path, json).with_context(|| format!("writing report {}", path.display()))
}
