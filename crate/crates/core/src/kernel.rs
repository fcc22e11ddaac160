//! Pixel-processing sub-functions.
//!
//! Kernels are the per-pixel operations a scan or the engine's process unit
//! executes: channel differences, SAD accumulation, morphological gradient,
//! integer FIR filtering, homogeneity tests and segment histograms. All of
//! them are pure functions of their inputs; side data (SAD sums, table
//! contributions) is returned as an explicit effect for the owning scan to
//! apply.
//!
//! Channel arithmetic saturates to the channel width. FIR coefficients are
//! integer numerators over a common positive divisor; rounding is half away
//! from zero, so results are bit-exact everywhere.

use alloc::vec::Vec;
use core::fmt;

use crate::mask::NeighborhoodMask;
use crate::pixel::Pixel;
use crate::table::TableRecord;

/// One of the five pixel channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Channel {
    Y,
    U,
    V,
    Alfa,
    Aux,
}

impl Channel {
    pub const ALL: [Channel; 5] = [Channel::Y, Channel::U, Channel::V, Channel::Alfa, Channel::Aux];

    /// Maximum representable value of the channel.
    pub const fn max_value(self) -> u16 {
        match self {
            Channel::Y | Channel::U | Channel::V => 0xFF,
            Channel::Alfa | Channel::Aux => 0xFFFF,
        }
    }

    const fn bit(self) -> u8 {
        match self {
            Channel::Y => 1,
            Channel::U => 1 << 1,
            Channel::V => 1 << 2,
            Channel::Alfa => 1 << 3,
            Channel::Aux => 1 << 4,
        }
    }
}

impl Pixel {
    /// Channel value widened to u16.
    #[inline]
    pub fn channel(&self, c: Channel) -> u16 {
        match c {
            Channel::Y => self.y as u16,
            Channel::U => self.u as u16,
            Channel::V => self.v as u16,
            Channel::Alfa => self.alfa,
            Channel::Aux => self.aux,
        }
    }

    /// Stores `value` into channel `c`, saturating to the channel width.
    #[inline]
    pub fn set_channel(&mut self, c: Channel, value: u16) {
        match c {
            Channel::Y => self.y = value.min(0xFF) as u8,
            Channel::U => self.u = value.min(0xFF) as u8,
            Channel::V => self.v = value.min(0xFF) as u8,
            Channel::Alfa => self.alfa = value,
            Channel::Aux => self.aux = value,
        }
    }
}

/// A subset of the five channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChannelSet(u8);

impl ChannelSet {
    pub const EMPTY: ChannelSet = ChannelSet(0);
    pub const Y: ChannelSet = ChannelSet(1);
    pub const YUV: ChannelSet = ChannelSet(0b111);
    pub const ALL: ChannelSet = ChannelSet(0b1_1111);

    pub const fn single(c: Channel) -> Self {
        ChannelSet(c.bit())
    }

    pub const fn with(self, c: Channel) -> Self {
        ChannelSet(self.0 | c.bit())
    }

    pub const fn contains(self, c: Channel) -> bool {
        self.0 & c.bit() != 0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_superset(self, other: ChannelSet) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn iter(self) -> impl Iterator<Item = Channel> {
        Channel::ALL.into_iter().filter(move |c| self.contains(*c))
    }
}

impl FromIterator<Channel> for ChannelSet {
    fn from_iter<T: IntoIterator<Item = Channel>>(iter: T) -> Self {
        iter.into_iter().fold(ChannelSet::EMPTY, ChannelSet::with)
    }
}

/// Integer FIR coefficient grid aligned to a mask's bounding box.
///
/// `weights[r * cols + c]` multiplies the pixel at offset
/// `(min_dy + r, min_dx + c)`; the weighted sum is divided by `divisor`
/// with half-away-from-zero rounding.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FirFilter {
    rows: usize,
    cols: usize,
    weights: Vec<i32>,
    divisor: i32,
}

impl FirFilter {
    pub fn new(rows: usize, cols: usize, weights: Vec<i32>, divisor: i32) -> Result<Self, KernelError> {
        if weights.len() != rows * cols {
            return Err(KernelError::FirShapeMismatch {
                expected: rows * cols,
                actual: weights.len(),
            });
        }
        if divisor <= 0 {
            return Err(KernelError::FirDivisorNotPositive { divisor });
        }
        Ok(Self { rows, cols, weights, divisor })
    }

    /// Delta filter: 1 at the given cell, 0 elsewhere. Identity when the
    /// cell is the mask anchor.
    pub fn delta(rows: usize, cols: usize, at_row: usize, at_col: usize) -> Self {
        let mut weights = alloc::vec![0; rows * cols];
        weights[at_row * cols + at_col] = 1;
        Self { rows, cols, weights, divisor: 1 }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn divisor(&self) -> i32 {
        self.divisor
    }

    #[inline]
    fn weight(&self, r: usize, c: usize) -> i32 {
        self.weights[r * self.cols + c]
    }
}

/// Division with half-away-from-zero rounding; `d` must be positive.
#[inline]
fn div_round_half_away(n: i64, d: i64) -> i64 {
    debug_assert!(d > 0);
    if n >= 0 {
        (2 * n + d) / (2 * d)
    } else {
        (2 * n - d) / (2 * d)
    }
}

/// The operation a kernel performs.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum KernelOp {
    /// Center pixel passthrough.
    Identity,
    /// Per-channel absolute difference of two frames.
    Diff,
    /// Sum of absolute differences accumulated as side data.
    SadAccumulate,
    /// Per-channel max - min over the neighborhood.
    MorphGradient,
    /// Integer FIR filter over the neighborhood.
    Fir(FirFilter),
    /// Per-segment count and Y sum accumulated into the indexed table.
    Histogram,
    /// 255 where every neighbor is within `threshold` of the center on all
    /// of Y, U, V; 0 elsewhere.
    Homogeneity { threshold: u8 },
}

impl KernelOp {
    pub fn name(&self) -> &'static str {
        match self {
            KernelOp::Identity => "identity",
            KernelOp::Diff => "diff",
            KernelOp::SadAccumulate => "sad-accumulate",
            KernelOp::MorphGradient => "morph-gradient",
            KernelOp::Fir(_) => "fir",
            KernelOp::Histogram => "histogram",
            KernelOp::Homogeneity { .. } => "homogeneity",
        }
    }

    /// Whether the op consumes two frames (inter addressing) rather than a
    /// neighborhood within one frame.
    pub fn is_inter(&self) -> bool {
        matches!(self, KernelOp::Diff | KernelOp::SadAccumulate)
    }

    /// Whether the op writes fresh channel values (as opposed to
    /// passthrough ops that only produce side data).
    pub fn produces_channels(&self) -> bool {
        matches!(
            self,
            KernelOp::Diff | KernelOp::MorphGradient | KernelOp::Fir(_) | KernelOp::Homogeneity { .. }
        )
    }
}

/// A channel-selective pixel operation descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Kernel {
    pub op: KernelOp,
    pub in_channels: ChannelSet,
    pub out_channels: ChannelSet,
}

/// Errors from kernel construction and validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelError {
    FirShapeMismatch { expected: usize, actual: usize },
    FirDivisorNotPositive { divisor: i32 },
    /// FIR grid does not match the mask's bounding box.
    FirMaskMismatch { grid: (usize, usize), mask: (usize, usize) },
    /// A frame-producing op needs at least one output channel.
    NoOutputChannels,
    /// in_channels must cover out_channels for channel-wise ops.
    InputsMissing,
    /// Op not usable with the requested addressing mode.
    ModeMismatch { op: &'static str, inter: bool },
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::FirShapeMismatch { expected, actual } => {
                write!(f, "FIR weight count {actual} does not match grid size {expected}")
            }
            KernelError::FirDivisorNotPositive { divisor } => {
                write!(f, "FIR divisor must be positive, got {divisor}")
            }
            KernelError::FirMaskMismatch { grid, mask } => {
                write!(f, "FIR grid {}x{} does not match mask span {}x{}", grid.0, grid.1, mask.0, mask.1)
            }
            KernelError::NoOutputChannels => write!(f, "frame-producing op has no output channels"),
            KernelError::InputsMissing => write!(f, "in_channels does not cover out_channels"),
            KernelError::ModeMismatch { op, inter } => {
                let mode = if *inter { "inter" } else { "intra" };
                write!(f, "kernel '{op}' not usable with {mode} addressing")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for KernelError {}

impl Kernel {
    pub fn new(op: KernelOp, in_channels: ChannelSet, out_channels: ChannelSet) -> Self {
        Self { op, in_channels, out_channels }
    }

    /// Kernel computing on the given channels (inputs == outputs).
    pub fn on_channels(op: KernelOp, channels: ChannelSet) -> Self {
        Self::new(op, channels, channels)
    }

    /// Checks op/channel/mask consistency for the given addressing style.
    pub fn validate(&self, inter: bool, mask: &NeighborhoodMask) -> Result<(), KernelError> {
        let op_inter = self.op.is_inter();
        let mode_ok = match self.op {
            KernelOp::Identity => true,
            _ => op_inter == inter,
        };
        if !mode_ok {
            return Err(KernelError::ModeMismatch { op: self.op.name(), inter });
        }
        if self.op.produces_channels() {
            if self.out_channels.is_empty() {
                return Err(KernelError::NoOutputChannels);
            }
            if !self.in_channels.is_superset(self.out_channels) {
                return Err(KernelError::InputsMissing);
            }
        }
        if let KernelOp::Fir(fir) = &self.op {
            let span = (mask.line_span(), mask.column_span());
            if (fir.rows(), fir.cols()) != span {
                return Err(KernelError::FirMaskMismatch {
                    grid: (fir.rows(), fir.cols()),
                    mask: span,
                });
            }
        }
        Ok(())
    }
}

/// Side data a kernel emits in addition to its output pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideEffect {
    /// SAD contribution for this pixel position.
    Sad(u64),
    /// Indexed-table contribution keyed by segment id.
    Table(u16, TableRecord),
}

/// Output of one kernel application: the result pixel plus optional side
/// data. Channels outside the kernel's out set are copied from the source
/// center pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelResult {
    pub out_pixel: Pixel,
    pub side: Option<SideEffect>,
}

impl KernelResult {
    fn plain(out_pixel: Pixel) -> Self {
        Self { out_pixel, side: None }
    }
}

/// Saturating SAD accumulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SadAccumulator {
    pub sum: u64,
    pub saturated: bool,
}

impl SadAccumulator {
    pub fn add(&mut self, delta: u64) {
        match self.sum.checked_add(delta) {
            Some(s) => self.sum = s,
            None => {
                self.sum = u64::MAX;
                self.saturated = true;
            }
        }
    }
}

/// A neighborhood window: the mask's bounding box worth of pixels, in image
/// orientation, with the anchor marking the center pixel's cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    rows: usize,
    cols: usize,
    anchor_row: usize,
    anchor_col: usize,
    pixels: Vec<Pixel>,
}

impl Window {
    /// Empty window shaped for `mask`.
    pub fn for_mask(mask: &NeighborhoodMask) -> Self {
        let rows = mask.line_span();
        let cols = mask.column_span();
        Self {
            rows,
            cols,
            anchor_row: (-mask.min_dy()) as usize,
            anchor_col: (-mask.min_dx()) as usize,
            pixels: alloc::vec![Pixel::default(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Grid cell (r, c), r and c relative to the bounding box origin.
    #[inline]
    pub fn cell(&self, r: usize, c: usize) -> Pixel {
        self.pixels[r * self.cols + c]
    }

    #[inline]
    pub fn set_cell(&mut self, r: usize, c: usize, p: Pixel) {
        self.pixels[r * self.cols + c] = p;
    }

    /// Pixel at mask offset (dy, dx).
    #[inline]
    pub fn at_offset(&self, dy: i8, dx: i8) -> Pixel {
        let r = (self.anchor_row as isize + dy as isize) as usize;
        let c = (self.anchor_col as isize + dx as isize) as usize;
        self.cell(r, c)
    }

    /// The center (offset (0,0)) pixel.
    #[inline]
    pub fn center(&self) -> Pixel {
        self.at_offset(0, 0)
    }

    /// Shifts the grid one cell left (toward smaller dx), dropping the first
    /// column; the caller then fills the freed trailing column.
    pub fn shift_columns(&mut self) {
        for r in 0..self.rows {
            for c in 0..self.cols - 1 {
                self.pixels[r * self.cols + c] = self.pixels[r * self.cols + c + 1];
            }
        }
    }

    /// Shifts the grid one cell up (toward smaller dy), dropping the first
    /// row; the caller then fills the freed trailing row.
    pub fn shift_rows(&mut self) {
        self.pixels.copy_within(self.cols.., 0);
    }
}

/// Per-channel absolute difference of two pixels on the selected channels;
/// unselected channels come from `a`.
pub fn k_diff(a: Pixel, b: Pixel, channels: ChannelSet) -> KernelResult {
    let mut out = a;
    for c in channels.iter() {
        out.set_channel(c, a.channel(c).abs_diff(b.channel(c)));
    }
    KernelResult::plain(out)
}

/// Adds the selected channels' absolute differences to `running`.
pub fn k_sad_accumulate(a: Pixel, b: Pixel, channels: ChannelSet, running: &mut SadAccumulator) {
    let mut delta = 0u64;
    for c in channels.iter() {
        delta += a.channel(c).abs_diff(b.channel(c)) as u64;
    }
    running.add(delta);
}

/// Per-channel max - min over the mask's cells.
pub fn k_morph_gradient(mask: &NeighborhoodMask, w: &Window, channels: ChannelSet) -> KernelResult {
    let mut out = w.center();
    for c in channels.iter() {
        let mut lo = u16::MAX;
        let mut hi = 0u16;
        for &(dy, dx) in mask.offsets() {
            let v = w.at_offset(dy, dx).channel(c);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        out.set_channel(c, hi - lo);
    }
    KernelResult::plain(out)
}

/// Integer FIR over the mask's cells, rounded half away from zero and
/// clamped to the channel range.
pub fn k_fir(mask: &NeighborhoodMask, w: &Window, fir: &FirFilter, channels: ChannelSet) -> KernelResult {
    let mut out = w.center();
    let min_dy = mask.min_dy();
    let min_dx = mask.min_dx();
    for c in channels.iter() {
        let mut sum = 0i64;
        for &(dy, dx) in mask.offsets() {
            let r = (dy - min_dy) as usize;
            let col = (dx - min_dx) as usize;
            sum += fir.weight(r, col) as i64 * w.at_offset(dy, dx).channel(c) as i64;
        }
        let v = div_round_half_away(sum, fir.divisor() as i64).clamp(0, c.max_value() as i64);
        out.set_channel(c, v as u16);
    }
    KernelResult::plain(out)
}

/// True when the two pixels differ by at most `threshold` on each of Y, U, V.
pub fn k_homogeneity(center: Pixel, neighbor: Pixel, threshold: u8) -> bool {
    let dy = center.y.abs_diff(neighbor.y);
    let du = center.u.abs_diff(neighbor.u);
    let dv = center.v.abs_diff(neighbor.v);
    dy.max(du).max(dv) <= threshold
}

/// Table contribution for the center pixel: count 1 and its Y value under
/// the pixel's segment id.
pub fn k_histogram(center: Pixel) -> (u16, TableRecord) {
    (center.alfa, TableRecord { count: 1, y_sum: center.y as u64, ..Default::default() })
}

impl Kernel {
    /// Applies an intra-style kernel to a neighborhood window.
    pub fn apply_intra(&self, mask: &NeighborhoodMask, w: &Window) -> KernelResult {
        match &self.op {
            KernelOp::Identity => KernelResult::plain(w.center()),
            KernelOp::MorphGradient => k_morph_gradient(mask, w, self.out_channels),
            KernelOp::Fir(fir) => k_fir(mask, w, fir, self.out_channels),
            KernelOp::Histogram => {
                let (id, rec) = k_histogram(w.center());
                KernelResult { out_pixel: w.center(), side: Some(SideEffect::Table(id, rec)) }
            }
            KernelOp::Homogeneity { threshold } => {
                let center = w.center();
                let uniform = mask
                    .offsets()
                    .iter()
                    .all(|&(dy, dx)| k_homogeneity(center, w.at_offset(dy, dx), *threshold));
                let mut out = center;
                for c in self.out_channels.iter() {
                    out.set_channel(c, if uniform { 0xFF } else { 0 });
                }
                KernelResult::plain(out)
            }
            KernelOp::Diff | KernelOp::SadAccumulate => {
                unreachable!("inter kernel applied to intra neighborhood")
            }
        }
    }

    /// Applies an inter-style kernel to same-position pixels of two frames.
    pub fn apply_inter(&self, a: Pixel, b: Pixel) -> KernelResult {
        match &self.op {
            KernelOp::Identity => KernelResult::plain(a),
            KernelOp::Diff => k_diff(a, b, self.out_channels),
            KernelOp::SadAccumulate => {
                let mut delta = SadAccumulator::default();
                k_sad_accumulate(a, b, self.in_channels, &mut delta);
                KernelResult { out_pixel: a, side: Some(SideEffect::Sad(delta.sum)) }
            }
            _ => unreachable!("intra kernel applied to inter pixel pair"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window_from(mask: &NeighborhoodMask, values: &[u8]) -> Window {
        let mut w = Window::for_mask(mask);
        assert_eq!(values.len(), w.rows() * w.cols());
        for r in 0..w.rows() {
            for c in 0..w.cols() {
                w.set_cell(r, c, Pixel::gray(values[r * w.cols() + c]));
            }
        }
        w
    }

    #[test]
    fn diff_of_equal_pixels_is_zero() {
        let p = Pixel::new(10, 20, 30, 40, 50);
        let r = k_diff(p, p, ChannelSet::YUV);
        assert_eq!(r.out_pixel, p.with_yuv(0, 0, 0));
    }

    #[test]
    fn diff_forced_arithmetic() {
        let a = Pixel::gray(200);
        let b = Pixel::gray(50);
        assert_eq!(k_diff(a, b, ChannelSet::Y).out_pixel.y, 150);
    }

    #[test]
    fn sad_two_pixel_example() {
        let mut acc = SadAccumulator::default();
        k_sad_accumulate(Pixel::gray(0), Pixel::gray(255), ChannelSet::Y, &mut acc);
        k_sad_accumulate(Pixel::gray(255), Pixel::gray(0), ChannelSet::Y, &mut acc);
        assert_eq!(acc.sum, 510);
        assert!(!acc.saturated);
    }

    #[test]
    fn sad_saturates_with_flag() {
        let mut acc = SadAccumulator { sum: u64::MAX - 10, saturated: false };
        acc.add(100);
        assert_eq!(acc.sum, u64::MAX);
        assert!(acc.saturated);
    }

    #[test]
    fn morph_gradient_constant_is_zero() {
        let mask = NeighborhoodMask::con_8();
        let w = window_from(&mask, &[7; 9]);
        assert_eq!(k_morph_gradient(&mask, &w, ChannelSet::Y).out_pixel.y, 0);
    }

    #[test]
    fn morph_gradient_zero_to_eight() {
        let mask = NeighborhoodMask::con_8();
        let w = window_from(&mask, &[0, 1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(k_morph_gradient(&mask, &w, ChannelSet::Y).out_pixel.y, 8);
    }

    #[test]
    fn fir_delta_is_identity() {
        let mask = NeighborhoodMask::con_8();
        let fir = FirFilter::delta(3, 3, 1, 1);
        let w = window_from(&mask, &[9, 9, 9, 9, 42, 9, 9, 9, 9]);
        assert_eq!(k_fir(&mask, &w, &fir, ChannelSet::Y).out_pixel.y, 42);
    }

    #[test]
    fn fir_rounding_half_away_from_zero() {
        assert_eq!(div_round_half_away(3, 2), 2);
        assert_eq!(div_round_half_away(-3, 2), -2);
        assert_eq!(div_round_half_away(1, 2), 1);
        assert_eq!(div_round_half_away(-1, 2), -1);
        assert_eq!(div_round_half_away(2, 4), 1);
        assert_eq!(div_round_half_away(10, 4), 3);
    }

    #[test]
    fn fir_clamps_negative_to_zero() {
        let mask = NeighborhoodMask::new(alloc::vec![(0, -1), (0, 0), (0, 1)]).unwrap();
        let fir = FirFilter::new(1, 3, alloc::vec![-1, 0, 1], 1).unwrap();
        let w = window_from(&mask, &[200, 100, 0]);
        assert_eq!(k_fir(&mask, &w, &fir, ChannelSet::Y).out_pixel.y, 0);
    }

    #[test]
    fn homogeneity_cases() {
        let p = Pixel::new(10, 10, 10, 0, 0);
        assert!(k_homogeneity(p, p, 0));
        let q = Pixel::new(15, 10, 10, 0, 0);
        assert!(!k_homogeneity(p, q, 4));
        assert!(k_homogeneity(p, q, 5));
    }

    #[test]
    fn histogram_keyed_by_alfa() {
        let p = Pixel::new(9, 0, 0, 3, 0);
        let (id, rec) = k_histogram(p);
        assert_eq!(id, 3);
        assert_eq!(rec.count, 1);
        assert_eq!(rec.y_sum, 9);
    }

    #[test]
    fn channel_isolation() {
        let mask = NeighborhoodMask::con_8();
        let mut w = Window::for_mask(&mask);
        for r in 0..3 {
            for c in 0..3 {
                w.set_cell(r, c, Pixel::new((r * 3 + c) as u8, 11, 22, 333, 444));
            }
        }
        let k = Kernel::on_channels(KernelOp::MorphGradient, ChannelSet::Y);
        let out = k.apply_intra(&mask, &w).out_pixel;
        let center = w.center();
        assert_eq!(out.u, center.u);
        assert_eq!(out.v, center.v);
        assert_eq!(out.alfa, center.alfa);
        assert_eq!(out.aux, center.aux);
    }

    #[test]
    fn validate_rejects_mode_mismatch() {
        let mask = NeighborhoodMask::con_0();
        let k = Kernel::on_channels(KernelOp::Diff, ChannelSet::Y);
        assert!(k.validate(true, &mask).is_ok());
        assert_eq!(
            k.validate(false, &mask).unwrap_err(),
            KernelError::ModeMismatch { op: "diff", inter: false }
        );
    }

    #[test]
    fn validate_rejects_fir_shape_mismatch() {
        let mask = NeighborhoodMask::con_8();
        let fir = FirFilter::new(1, 3, alloc::vec![-1, 0, 1], 1).unwrap();
        let k = Kernel::on_channels(KernelOp::Fir(fir), ChannelSet::Y);
        assert_eq!(
            k.validate(false, &mask).unwrap_err(),
            KernelError::FirMaskMismatch { grid: (1, 3), mask: (3, 3) }
        );
    }

    impl Pixel {
        fn with_yuv(mut self, y: u8, u: u8, v: u8) -> Pixel {
            self.y = y;
            self.u = u;
            self.v = v;
            self
        }
    }
}
