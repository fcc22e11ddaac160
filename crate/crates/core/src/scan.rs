//! The four pixel addressing schemes, implemented in plain software.
//!
//! These scans are the reference semantics: the engine simulator must
//! produce bit-identical frames for the modes it supports. Neighborhoods
//! are clamped to the frame (edge replication), outputs never feed back
//! into the neighborhoods of the same pass, and segment expansion is a
//! FIFO breadth-first sweep so every result is deterministic.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::frame::Frame;
use crate::kernel::{Channel, Kernel, SideEffect, Window};
use crate::mask::{NeighborhoodMask, ScanOrder};
use crate::table::IndexedTable;

/// Side state a scan accumulates while it runs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ScanSide {
    pub sad: crate::kernel::SadAccumulator,
    pub table: IndexedTable,
}

impl ScanSide {
    pub fn apply(&mut self, side: Option<SideEffect>) {
        match side {
            Some(SideEffect::Sad(d)) => self.sad.add(d),
            Some(SideEffect::Table(id, rec)) => self.table.accumulate(id, &rec),
            None => {}
        }
    }
}

/// Result of a full-frame scan: the output frame plus accumulated side data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutput {
    pub frame: Frame,
    pub side: ScanSide,
}

/// Criteria controlling segment expansion: a neighbor joins the segment when
/// its selected channel differs from the pixel it is reached from by at most
/// `threshold`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SegmentCriteria {
    pub channel: Channel,
    pub threshold: u16,
    pub seeds: Vec<(usize, usize)>,
}

/// Errors from scan preconditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanError {
    DimensionMismatch { a: (usize, usize), b: (usize, usize) },
    Kernel(crate::kernel::KernelError),
    EmptySeeds,
    SeedOutOfBounds { x: usize, y: usize },
}

impl fmt::Display for ScanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanError::DimensionMismatch { a, b } => {
                write!(f, "frame dimensions differ: {}x{} vs {}x{}", a.0, a.1, b.0, b.1)
            }
            ScanError::Kernel(e) => write!(f, "{e}"),
            ScanError::EmptySeeds => write!(f, "segment scan needs at least one seed"),
            ScanError::SeedOutOfBounds { x, y } => write!(f, "seed ({x},{y}) outside frame"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScanError {}

impl From<crate::kernel::KernelError> for ScanError {
    fn from(e: crate::kernel::KernelError) -> Self {
        ScanError::Kernel(e)
    }
}

/// Fills `w` with the clamped neighborhood of (x, y).
pub(crate) fn fill_window(w: &mut Window, src: &Frame, mask: &NeighborhoodMask, x: usize, y: usize) {
    let min_dy = mask.min_dy() as isize;
    let min_dx = mask.min_dx() as isize;
    for r in 0..w.rows() {
        for c in 0..w.cols() {
            let p = src.pixel_clamped(x as isize + min_dx + c as isize, y as isize + min_dy + r as isize);
            w.set_cell(r, c, p);
        }
    }
}

/// Positions of a frame in the given scan order.
fn positions(width: usize, height: usize, scan: ScanOrder) -> impl Iterator<Item = (usize, usize)> {
    let (outer, inner) = match scan {
        ScanOrder::Horizontal => (height, width),
        ScanOrder::Vertical => (width, height),
    };
    (0..outer).flat_map(move |o| {
        (0..inner).map(move |i| match scan {
            ScanOrder::Horizontal => (i, o),
            ScanOrder::Vertical => (o, i),
        })
    })
}

/// Intra addressing: every output pixel is the kernel applied to the
/// neighborhood of the same position in `src`.
pub fn intra_scan(
    src: &Frame,
    mask: &NeighborhoodMask,
    scan: ScanOrder,
    kernel: &Kernel,
) -> Result<ScanOutput, ScanError> {
    kernel.validate(false, mask)?;
    let mut out = src.clone();
    let mut side = ScanSide::default();
    let mut window = Window::for_mask(mask);
    for (x, y) in positions(src.width(), src.height(), scan) {
        fill_window(&mut window, src, mask, x, y);
        let r = kernel.apply_intra(mask, &window);
        out.set_pixel(x, y, r.out_pixel);
        side.apply(r.side);
    }
    Ok(ScanOutput { frame: out, side })
}

/// Inter addressing: every output pixel is the kernel applied to the
/// same-position pixels of two frames.
pub fn inter_scan(a: &Frame, b: &Frame, kernel: &Kernel) -> Result<ScanOutput, ScanError> {
    if !a.same_dimensions(b) {
        return Err(ScanError::DimensionMismatch {
            a: (a.width(), a.height()),
            b: (b.width(), b.height()),
        });
    }
    kernel.validate(true, &NeighborhoodMask::con_0())?;
    let mut out = a.clone();
    let mut side = ScanSide::default();
    for y in 0..a.height() {
        for x in 0..a.width() {
            let r = kernel.apply_inter(a.pixel(x, y), b.pixel(x, y));
            out.set_pixel(x, y, r.out_pixel);
            side.apply(r.side);
        }
    }
    Ok(ScanOutput { frame: out, side })
}

/// Result of a segment scan: the output frame, side data, and the order in
/// which pixels were processed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentOutput {
    pub frame: Frame,
    pub side: ScanSide,
    pub visit_order: Vec<(usize, usize)>,
}

/// Segment addressing: breadth-first expansion from the seed set.
///
/// Each dequeued pixel is processed exactly as in [`intra_scan`]; its
/// not-yet-seen mask neighbors that satisfy `crit` (tested against the pixel
/// they are reached from, once, at enqueue time) are appended to the FIFO.
/// Neighbors are tried in the mask's fixed (dy, dx) order, which makes the
/// visit order deterministic and nondecreasing in hop distance.
pub fn segment_scan(
    src: &Frame,
    crit: &SegmentCriteria,
    mask: &NeighborhoodMask,
    kernel: &Kernel,
) -> Result<SegmentOutput, ScanError> {
    kernel.validate(false, mask)?;
    if crit.seeds.is_empty() {
        return Err(ScanError::EmptySeeds);
    }
    for &(x, y) in &crit.seeds {
        if !src.contains(x, y) {
            return Err(ScanError::SeedOutOfBounds { x, y });
        }
    }

    let mut out = src.clone();
    let mut side = ScanSide::default();
    let mut window = Window::for_mask(mask);
    let mut seen = vec![false; src.pixel_count()];
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut visit_order = Vec::new();

    for &(x, y) in &crit.seeds {
        if !seen[y * src.width() + x] {
            seen[y * src.width() + x] = true;
            queue.push_back((x, y));
        }
    }

    while let Some((x, y)) = queue.pop_front() {
        fill_window(&mut window, src, mask, x, y);
        let r = kernel.apply_intra(mask, &window);
        out.set_pixel(x, y, r.out_pixel);
        side.apply(r.side);
        visit_order.push((x, y));

        let here = src.pixel(x, y).channel(crit.channel);
        for &(dy, dx) in mask.offsets() {
            if (dy, dx) == (0, 0) {
                continue;
            }
            let nx = x as isize + dx as isize;
            let ny = y as isize + dy as isize;
            if nx < 0 || ny < 0 || nx as usize >= src.width() || ny as usize >= src.height() {
                continue;
            }
            let (nx, ny) = (nx as usize, ny as usize);
            if seen[ny * src.width() + nx] {
                continue;
            }
            let there = src.pixel(nx, ny).channel(crit.channel);
            if here.abs_diff(there) <= crit.threshold {
                seen[ny * src.width() + nx] = true;
                queue.push_back((nx, ny));
            }
        }
    }

    Ok(SegmentOutput { frame: out, side, visit_order })
}
