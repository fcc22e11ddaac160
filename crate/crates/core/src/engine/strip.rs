//! Sixteen-line strips: the unit of host transfer and double buffering.

use alloc::vec::Vec;
use core::fmt;

use crate::frame::Frame;
use crate::mask::ScanOrder;

/// Lines per strip. Sixteen covers the nine-line worst-case neighborhood,
/// is a power of two, and divides the standard image sizes.
pub const STRIP_LINES: usize = 16;

/// Double-buffer role a strip is transferred into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Block {
    A,
    B,
}

/// One 16-line slice of the scanned image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Strip {
    pub index: usize,
    /// First scan line covered (rows for horizontal scans, columns for
    /// vertical ones).
    pub first_line: usize,
    pub line_count: usize,
    pub block: Block,
}

/// Error from strip planning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripError {
    NotDivisible { extent: usize },
}

impl fmt::Display for StripError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StripError::NotDivisible { extent } => {
                write!(f, "scan extent {extent} is not divisible by {STRIP_LINES} lines")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for StripError {}

/// Splits `extent` scan lines into consecutive 16-line strips targeting
/// alternating blocks.
pub fn plan_strips(extent: usize) -> Result<Vec<Strip>, StripError> {
    if !extent.is_multiple_of(STRIP_LINES) {
        return Err(StripError::NotDivisible { extent });
    }
    Ok((0..extent / STRIP_LINES)
        .map(|index| Strip {
            index,
            first_line: index * STRIP_LINES,
            line_count: STRIP_LINES,
            block: if index % 2 == 0 { Block::A } else { Block::B },
        })
        .collect())
}

/// Scan extent in lines: image height for horizontal scans, width for
/// vertical ones.
pub fn scan_extent(frame: &Frame, scan: ScanOrder) -> usize {
    match scan {
        ScanOrder::Horizontal => frame.height(),
        ScanOrder::Vertical => frame.width(),
    }
}

/// Strip plan for a frame in the given scan order.
pub fn plan_frame_strips(frame: &Frame, scan: ScanOrder) -> Result<Vec<Strip>, StripError> {
    plan_strips(scan_extent(frame, scan))
}
