//! Analytic model of memory accesses: software baseline vs engine.
//!
//! The software convention assumes a sliding-window scan: one read per
//! neighborhood pixel newly required at each step, one write per output
//! channel. The engine convention is two events per output pixel — one
//! parallel neighborhood load plus one result write — independent of mask
//! and channel count, because the hardware fetches the whole neighborhood
//! column in a single cycle.

use core::fmt;

use crate::kernel::ChannelSet;
use crate::mask::NeighborhoodMask;

/// Addressing mode, as far as access counting is concerned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CountMode {
    Inter,
    Intra,
}

/// Per-pixel software reads: pixels newly entering the window per scan step.
/// Inter reads one new pixel from each frame; intra reads the mask's leading
/// column.
pub fn software_reads_per_pixel(mode: CountMode, mask: &NeighborhoodMask) -> u64 {
    match mode {
        CountMode::Inter => 2,
        CountMode::Intra => mask.new_pixels_per_step() as u64,
    }
}

/// Total software-solution memory accesses for a full frame.
pub fn count_software_accesses(
    mode: CountMode,
    mask: &NeighborhoodMask,
    out_channels: ChannelSet,
    width: usize,
    height: usize,
) -> u64 {
    let per_pixel = software_reads_per_pixel(mode, mask) + out_channels.len() as u64;
    per_pixel * width as u64 * height as u64
}

/// Total engine memory access events for a full frame: one neighborhood
/// load event plus one write event per output pixel.
pub fn count_hardware_accesses(width: usize, height: usize) -> u64 {
    2 * width as u64 * height as u64
}

/// Access-count comparison between the software and hardware conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Saving {
    pub software: u64,
    pub hardware: u64,
}

/// Error from a degenerate comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroHardwareCount;

impl fmt::Display for ZeroHardwareCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hardware access count is zero")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ZeroHardwareCount {}

/// Both readings of the saving: relative to the software count and relative
/// to the hardware count.
pub fn saving(software: u64, hardware: u64) -> Result<Saving, ZeroHardwareCount> {
    if hardware == 0 {
        return Err(ZeroHardwareCount);
    }
    Ok(Saving { software, hardware })
}

impl Saving {
    /// (sw - hw) / sw as a fraction.
    pub fn vs_software(&self) -> f64 {
        if self.software == 0 {
            0.0
        } else {
            (self.software - self.hardware) as f64 / self.software as f64
        }
    }

    /// (sw - hw) / hw as a fraction.
    pub fn vs_hardware(&self) -> f64 {
        (self.software - self.hardware) as f64 / self.hardware as f64
    }

    /// Exact test: (sw - hw) / sw == num / den.
    pub fn vs_software_is_exactly(&self, num: u64, den: u64) -> bool {
        (self.software - self.hardware) as u128 * den as u128 == self.software as u128 * num as u128
    }

    /// Exact test: (sw - hw) / hw == num / den.
    pub fn vs_hardware_is_exactly(&self, num: u64, den: u64) -> bool {
        (self.software - self.hardware) as u128 * den as u128 == self.hardware as u128 * num as u128
    }

    /// Percentage points, rounded to the nearest integer.
    pub fn vs_software_pct(&self) -> u64 {
        if self.software == 0 {
            return 0;
        }
        ((self.software - self.hardware) * 200 + self.software) / (2 * self.software)
    }

    pub fn vs_hardware_pct(&self) -> u64 {
        ((self.software - self.hardware) * 200 + self.hardware) / (2 * self.hardware)
    }
}

/// One row of the access-count comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub label: &'static str,
    pub mode: CountMode,
    pub mask: NeighborhoodMask,
    pub channels: ChannelSet,
}

/// The four standard comparison configurations: inter Y, intra CON_0 Y,
/// intra CON_8 Y, intra CON_8 YUV.
pub fn comparison_rows() -> [ComparisonRow; 4] {
    [
        ComparisonRow {
            label: "Inter Y->Y",
            mode: CountMode::Inter,
            mask: NeighborhoodMask::con_0(),
            channels: ChannelSet::Y,
        },
        ComparisonRow {
            label: "Intra CON_0 Y->Y",
            mode: CountMode::Intra,
            mask: NeighborhoodMask::con_0(),
            channels: ChannelSet::Y,
        },
        ComparisonRow {
            label: "Intra CON_8 Y->Y",
            mode: CountMode::Intra,
            mask: NeighborhoodMask::con_8(),
            channels: ChannelSet::Y,
        },
        ComparisonRow {
            label: "Intra CON_8 YUV->YUV",
            mode: CountMode::Intra,
            mask: NeighborhoodMask::con_8(),
            channels: ChannelSet::YUV,
        },
    ]
}

/// Reference per-pixel software costs for the four comparison rows, frozen
/// from the published comparison (CIF totals 304128 / 202752 / 405504 /
/// 608256 at 101376 pixels).
pub const REFERENCE_SW_PER_PIXEL: [u64; 4] = [3, 2, 4, 6];

/// Reference per-pixel hardware cost: two events per output pixel.
pub const REFERENCE_HW_PER_PIXEL: u64 = 2;

#[cfg(test)]
mod tests {
    use super::*;

    const CIF: (usize, usize) = (352, 288);

    #[test]
    fn cif_software_counts() {
        let con0 = NeighborhoodMask::con_0();
        let con8 = NeighborhoodMask::con_8();
        assert_eq!(
            count_software_accesses(CountMode::Inter, &con0, ChannelSet::Y, CIF.0, CIF.1),
            304_128
        );
        assert_eq!(
            count_software_accesses(CountMode::Intra, &con0, ChannelSet::Y, CIF.0, CIF.1),
            202_752
        );
        assert_eq!(
            count_software_accesses(CountMode::Intra, &con8, ChannelSet::Y, CIF.0, CIF.1),
            405_504
        );
        assert_eq!(
            count_software_accesses(CountMode::Intra, &con8, ChannelSet::YUV, CIF.0, CIF.1),
            608_256
        );
    }

    #[test]
    fn hardware_counts() {
        assert_eq!(count_hardware_accesses(CIF.0, CIF.1), 202_752);
        assert_eq!(count_hardware_accesses(176, 144), 50_688);
        assert_eq!(count_hardware_accesses(16, 16), 512);
    }

    #[test]
    fn savings_match_reference_rows() {
        let s = saving(304_128, 202_752).unwrap();
        assert!(s.vs_software_is_exactly(1, 3));
        assert_eq!(s.vs_software_pct(), 33);

        let s = saving(202_752, 202_752).unwrap();
        assert!(s.vs_software_is_exactly(0, 1));
        assert!(s.vs_hardware_is_exactly(0, 1));

        let s = saving(405_504, 202_752).unwrap();
        assert!(s.vs_software_is_exactly(1, 2));
        assert_eq!(s.vs_software_pct(), 50);

        let s = saving(608_256, 202_752).unwrap();
        assert!(s.vs_hardware_is_exactly(2, 1));
        assert_eq!(s.vs_hardware_pct(), 200);
    }

    #[test]
    fn zero_hardware_is_an_error() {
        assert_eq!(saving(10, 0).unwrap_err(), ZeroHardwareCount);
    }

    #[test]
    fn software_cost_is_frame_size_independent_per_pixel() {
        let con8 = NeighborhoodMask::con_8();
        let cif = count_software_accesses(CountMode::Intra, &con8, ChannelSet::Y, 352, 288);
        let qcif = count_software_accesses(CountMode::Intra, &con8, ChannelSet::Y, 176, 144);
        assert_eq!(cif * (176 * 144), qcif * (352 * 288));
    }

    #[test]
    fn reference_per_pixel_costs() {
        let rows = comparison_rows();
        for (row, &expected) in rows.iter().zip(REFERENCE_SW_PER_PIXEL.iter()) {
            let per_px = software_reads_per_pixel(row.mode, &row.mask) + row.channels.len() as u64;
            assert_eq!(per_px, expected, "{}", row.label);
        }
    }
}
