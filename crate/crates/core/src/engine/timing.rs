//! Transfer/compute overlap schedule model.
//!
//! The report answers how a run's bus traffic and pixel production line up
//! in time, with everything in cycles of the single 66 MHz clock domain
//! shared by the bus and the engine:
//!
//! * input transfer: one word per cycle over the whole input word sequence;
//! * production: one pixel per cycle from the moment a pixel's trailing
//!   neighborhood line is on the board (per-line gating against the strip
//!   schedule), or from the end of the input transfer for runs that cannot
//!   start early;
//! * output release: the host may begin draining the run once the first
//!   result block (half the image) has been produced — from then on the
//!   1 word/cycle outbound stream can never underrun the equally fast
//!   OIM-to-bank drain that started earlier;
//! * `compute_only_cycles` is the bus-idle window between the end of the
//!   input transfer and that release point, and `non_overlap_ratio` is its
//!   share of the input transfer time.
//!
//! The release accounting counts production at the pipeline's design rate
//! of one pixel per cycle. For the worst case — an inter run that must wait
//! for both images — the window is therefore exactly half the image's
//! pixels against four bus words per pixel: a ratio of 1/8. See the README
//! for the full derivation.

use core::fmt;

use alloc::vec::Vec;

use crate::mask::ScanOrder;

use super::plc::PIPELINE_STAGES;
use super::strip::StripError;
use super::transfer::TransferPlan;

/// Clock and rate constants of the modeled platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TimingConfig {
    /// Shared engine / host-bus clock.
    pub clock_hz: u64,
    /// Peak host bus throughput in 32-bit words per cycle.
    pub bus_words_per_cycle: u64,
    /// Per-bank transfer rate implied by the clock and the 32-bit port.
    pub bank_bytes_per_second: u64,
    /// Unstalled pipeline throughput in pixels per cycle.
    pub pixels_per_cycle: u64,
    /// Fraction of the result image in the first output block, as a
    /// numerator/denominator pair.
    pub release_fraction: (u64, u64),
}

impl Default for TimingConfig {
    fn default() -> Self {
        Self {
            clock_hz: 66_000_000,
            bus_words_per_cycle: 1,
            bank_bytes_per_second: 264_000_000,
            pixels_per_cycle: 1,
            release_fraction: (1, 2),
        }
    }
}

/// Error from inconsistent timing constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimingError {
    /// clock * 4 bytes must equal the per-bank byte rate.
    BandwidthMismatch { clock_hz: u64, bank_bytes_per_second: u64 },
    BadReleaseFraction { num: u64, den: u64 },
    Strip(StripError),
}

impl fmt::Display for TimingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimingError::BandwidthMismatch { clock_hz, bank_bytes_per_second } => write!(
                f,
                "clock {clock_hz} Hz x 4 bytes != bank rate {bank_bytes_per_second} B/s"
            ),
            TimingError::BadReleaseFraction { num, den } => {
                write!(f, "release fraction {num}/{den} is not in (0, 1]")
            }
            TimingError::Strip(e) => write!(f, "{e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TimingError {}

impl From<StripError> for TimingError {
    fn from(e: StripError) -> Self {
        TimingError::Strip(e)
    }
}

impl TimingConfig {
    /// Internal consistency: the 32-bit bank port at the shared clock.
    pub fn validate(&self) -> Result<(), TimingError> {
        if self.clock_hz * 4 != self.bank_bytes_per_second {
            return Err(TimingError::BandwidthMismatch {
                clock_hz: self.clock_hz,
                bank_bytes_per_second: self.bank_bytes_per_second,
            });
        }
        let (num, den) = self.release_fraction;
        if num == 0 || den == 0 || num > den {
            return Err(TimingError::BadReleaseFraction { num, den });
        }
        Ok(())
    }
}

/// Geometry and scheduling constraints of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunShape {
    pub width: usize,
    pub height: usize,
    pub scan: ScanOrder,
    /// Input images transferred (1 intra, 2 inter).
    pub inputs: usize,
    /// Trailing reach of the neighborhood along the scan's line axis: how
    /// many lines ahead of the current line a pixel needs.
    pub line_reach: usize,
    /// Processing may not begin until every input word is on the board.
    pub hold_until_input_complete: bool,
}

/// Cycle accounting of one run under the schedule model.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TimingReport {
    pub total_cycles: u64,
    /// Bus-busy cycles: input plus output words.
    pub transfer_cycles: u64,
    pub input_transfer_cycles: u64,
    pub output_transfer_cycles: u64,
    /// Bus-idle window between input completion and output release.
    pub compute_only_cycles: u64,
    /// Production still running past the input transfer (pipeline fill plus
    /// the final strip residue).
    pub processing_tail_cycles: u64,
    pub output_start_cycle: u64,
    pub processing_end_cycle: u64,
    /// Share of pixel production that overlapped the input transfer.
    pub overlap_fraction: f64,
    /// compute_only_cycles / input_transfer_cycles.
    pub non_overlap_ratio: f64,
}

/// Computes the schedule-model report for a run shape.
pub fn timing_report(cfg: &TimingConfig, shape: &RunShape) -> Result<TimingReport, TimingError> {
    cfg.validate()?;
    let (lines, line_len) = match shape.scan {
        ScanOrder::Horizontal => (shape.height, shape.width),
        ScanOrder::Vertical => (shape.width, shape.height),
    };
    let pixels = (shape.width * shape.height) as u64;
    if pixels == 0 {
        return Ok(TimingReport::default());
    }

    let plan = TransferPlan::new(shape.inputs, lines, line_len)?;
    let input_end = plan.input_complete_cycle() / cfg.bus_words_per_cycle;
    let hold = if shape.hold_until_input_complete { input_end } else { 0 };

    // Per-line production start: a line's pixels flow at the design rate
    // once its trailing neighborhood line is on the board.
    let mut line_start = Vec::with_capacity(lines);
    let mut prev_end = hold;
    for line in 0..lines {
        let need = (line + shape.line_reach).min(lines - 1);
        let avail = plan.line_available_all(need);
        let start = prev_end.max(hold.max(avail));
        line_start.push(start);
        prev_end = start + line_len as u64 / cfg.pixels_per_cycle;
    }

    // Production completion cycle of the k-th pixel (1-based).
    let prod_time = |k: u64| -> u64 {
        let line = ((k - 1) / line_len as u64) as usize;
        let within = (k - 1) % line_len as u64;
        line_start[line] + (within + 1) / cfg.pixels_per_cycle
    };
    // Pixels produced at or before cycle t.
    let produced_by = |t: u64| -> u64 {
        line_start
            .iter()
            .map(|&s| t.saturating_sub(s).min(line_len as u64) * cfg.pixels_per_cycle)
            .sum()
    };

    let (rel_num, rel_den) = cfg.release_fraction;
    let release_pixel = (pixels * rel_num).div_ceil(rel_den);
    let output_start = input_end.max(prod_time(release_pixel));
    let compute_only = output_start - input_end;

    let processing_end = prod_time(pixels) + (PIPELINE_STAGES as u64 - 1);
    let output_words = 2 * pixels;
    let output_end = output_start + output_words / cfg.bus_words_per_cycle;

    let overlap_fraction = produced_by(input_end) as f64 / pixels as f64;
    let non_overlap_ratio = if input_end == 0 {
        0.0
    } else {
        compute_only as f64 / input_end as f64
    };

    Ok(TimingReport {
        total_cycles: processing_end.max(output_end),
        transfer_cycles: input_end + output_words / cfg.bus_words_per_cycle,
        input_transfer_cycles: input_end,
        output_transfer_cycles: output_words / cfg.bus_words_per_cycle,
        compute_only_cycles: compute_only,
        processing_tail_cycles: processing_end.saturating_sub(input_end),
        output_start_cycle: output_start,
        processing_end_cycle: processing_end,
        overlap_fraction,
        non_overlap_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cif_inter_worst() -> RunShape {
        RunShape {
            width: 352,
            height: 288,
            scan: ScanOrder::Horizontal,
            inputs: 2,
            line_reach: 0,
            hold_until_input_complete: true,
        }
    }

    #[test]
    fn default_config_is_consistent() {
        TimingConfig::default().validate().unwrap();
    }

    #[test]
    fn bandwidth_mismatch_rejected() {
        let cfg = TimingConfig { clock_hz: 100_000_000, ..Default::default() };
        assert!(matches!(cfg.validate(), Err(TimingError::BandwidthMismatch { .. })));
    }

    #[test]
    fn worst_case_inter_hits_twelve_and_a_half_percent() {
        let report = timing_report(&TimingConfig::default(), &cif_inter_worst()).unwrap();
        assert_eq!(report.input_transfer_cycles, 405_504);
        // Half the image at one pixel per cycle.
        assert_eq!(report.compute_only_cycles, 50_688);
        assert!((report.non_overlap_ratio - 0.125).abs() < f64::EPSILON);
        assert_eq!(report.overlap_fraction, 0.0);
    }

    #[test]
    fn intra_is_transfer_bound() {
        let shape = RunShape {
            width: 352,
            height: 288,
            scan: ScanOrder::Horizontal,
            inputs: 1,
            line_reach: 1,
            hold_until_input_complete: false,
        };
        let report = timing_report(&TimingConfig::default(), &shape).unwrap();
        assert_eq!(report.input_transfer_cycles, 202_752);
        // Output release needs no bus-idle compute window.
        assert_eq!(report.compute_only_cycles, 0);
        // Tail: the lines gated by the final strip's arrival (the current
        // line plus the one-line mask reach) plus pipeline fill.
        assert_eq!(report.processing_tail_cycles, 2 * 352 + 3);
        assert!(report.overlap_fraction > 0.99);
    }

    #[test]
    fn zero_frame_reports_all_zero() {
        let shape = RunShape {
            width: 0,
            height: 0,
            scan: ScanOrder::Horizontal,
            inputs: 1,
            line_reach: 0,
            hold_until_input_complete: false,
        };
        let report = timing_report(&TimingConfig::default(), &shape).unwrap();
        assert_eq!(report, TimingReport::default());
    }

    #[test]
    fn ratio_is_frame_size_independent_for_worst_case() {
        for (w, h) in [(176, 144), (352, 288), (160, 160)] {
            let shape = RunShape { width: w, height: h, ..cif_inter_worst() };
            let report = timing_report(&TimingConfig::default(), &shape).unwrap();
            assert!(
                (report.non_overlap_ratio - 0.125).abs() < 1e-9,
                "{w}x{h}: {}",
                report.non_overlap_ratio
            );
        }
    }
}
