//! Neighborhood masks and scan orders.
//!
//! A mask is a set of (dy, dx) offsets around the pixel being processed.
//! The engine's line memories bound the usable vertical span to nine lines,
//! so that limit is enforced at construction time.

use alloc::vec::Vec;
use core::fmt;

/// Maximum number of lines a neighborhood may span.
pub const MAX_LINE_SPAN: usize = 9;

/// Direction an image is swept in.
///
/// Horizontal: rows top to bottom, pixels left to right within a row.
/// Vertical: columns left to right, pixels top to bottom within a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ScanOrder {
    #[default]
    Horizontal,
    Vertical,
}

/// A set of (dy, dx) neighborhood offsets.
///
/// Offsets are kept sorted by dy then dx, which fixes the expansion order
/// used by segment scans.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NeighborhoodMask {
    offsets: Vec<(i8, i8)>,
}

/// Errors from mask construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaskError {
    /// Vertical span exceeds [`MAX_LINE_SPAN`] lines.
    SpanTooLarge { span: usize },
    /// A mask must contain at least one offset.
    Empty,
}

impl fmt::Display for MaskError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaskError::SpanTooLarge { span } => {
                write!(f, "mask spans {span} lines, maximum is {MAX_LINE_SPAN}")
            }
            MaskError::Empty => write!(f, "mask has no offsets"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for MaskError {}

impl NeighborhoodMask {
    /// Mask from arbitrary offsets. Duplicates are dropped; offsets are
    /// sorted (dy, then dx).
    pub fn new(mut offsets: Vec<(i8, i8)>) -> Result<Self, MaskError> {
        if offsets.is_empty() {
            return Err(MaskError::Empty);
        }
        offsets.sort_unstable();
        offsets.dedup();
        let mask = Self { offsets };
        let span = mask.line_span();
        if span > MAX_LINE_SPAN {
            return Err(MaskError::SpanTooLarge { span });
        }
        Ok(mask)
    }

    /// The one-pixel neighborhood: just (0, 0).
    pub fn con_0() -> Self {
        Self { offsets: alloc::vec![(0, 0)] }
    }

    /// The full 3x3 block centered on the pixel.
    pub fn con_8() -> Self {
        let mut offsets = Vec::with_capacity(9);
        for dy in -1..=1 {
            for dx in -1..=1 {
                offsets.push((dy, dx));
            }
        }
        Self { offsets }
    }

    /// Offsets sorted by (dy, dx).
    pub fn offsets(&self) -> &[(i8, i8)] {
        &self.offsets
    }

    pub fn contains(&self, dy: i8, dx: i8) -> bool {
        self.offsets.binary_search(&(dy, dx)).is_ok()
    }

    pub fn min_dy(&self) -> i8 {
        self.offsets.iter().map(|o| o.0).min().unwrap_or(0)
    }

    pub fn max_dy(&self) -> i8 {
        self.offsets.iter().map(|o| o.0).max().unwrap_or(0)
    }

    pub fn min_dx(&self) -> i8 {
        self.offsets.iter().map(|o| o.1).min().unwrap_or(0)
    }

    pub fn max_dx(&self) -> i8 {
        self.offsets.iter().map(|o| o.1).max().unwrap_or(0)
    }

    /// Vertical extent in lines (max dy - min dy + 1).
    pub fn line_span(&self) -> usize {
        (self.max_dy() - self.min_dy()) as usize + 1
    }

    /// Horizontal extent in pixels.
    pub fn column_span(&self) -> usize {
        (self.max_dx() - self.min_dx()) as usize + 1
    }

    /// Extent along the scan's line axis: dy span for horizontal scans,
    /// dx span for vertical ones.
    pub fn span_across_scan(&self, scan: ScanOrder) -> usize {
        match scan {
            ScanOrder::Horizontal => self.line_span(),
            ScanOrder::Vertical => self.column_span(),
        }
    }

    /// Number of pixels newly entering the window per one-step advance of
    /// the scan: the count of offsets in the leading column (dx == max dx).
    /// This is the per-step read cost of a sliding-window software scan.
    pub fn new_pixels_per_step(&self) -> usize {
        let leading = self.max_dx();
        self.offsets.iter().filter(|o| o.1 == leading).count()
    }
}
