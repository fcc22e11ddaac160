//! Row-major pixel frames.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::pixel::Pixel;

/// Standard frame geometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FrameTag {
    /// 176 x 144.
    Qcif,
    /// 352 x 288.
    Cif,
    Custom,
}

pub const QCIF_WIDTH: usize = 176;
pub const QCIF_HEIGHT: usize = 144;
pub const CIF_WIDTH: usize = 352;
pub const CIF_HEIGHT: usize = 288;

/// A frame of [`Pixel`]s stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Frame {
    width: usize,
    height: usize,
    data: Vec<Pixel>,
}

/// Errors from frame construction and indexed access.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameError {
    /// Pixel data length does not equal width * height.
    DataLengthMismatch { expected: usize, actual: usize },
    /// Coordinate outside the frame.
    OutOfBounds { x: usize, y: usize, width: usize, height: usize },
}

impl fmt::Display for FrameError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameError::DataLengthMismatch { expected, actual } => {
                write!(f, "pixel data length {actual} does not match width*height {expected}")
            }
            FrameError::OutOfBounds { x, y, width, height } => {
                write!(f, "pixel ({x},{y}) outside {width}x{height} frame")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FrameError {}

impl Frame {
    /// All-zero frame of the given size.
    pub fn new(width: usize, height: usize) -> Self {
        Self { width, height, data: vec![Pixel::default(); width * height] }
    }

    /// Frame from existing row-major pixel data.
    pub fn from_pixels(width: usize, height: usize, data: Vec<Pixel>) -> Result<Self, FrameError> {
        if data.len() != width * height {
            return Err(FrameError::DataLengthMismatch {
                expected: width * height,
                actual: data.len(),
            });
        }
        Ok(Self { width, height, data })
    }

    pub fn qcif() -> Self {
        Self::new(QCIF_WIDTH, QCIF_HEIGHT)
    }

    pub fn cif() -> Self {
        Self::new(CIF_WIDTH, CIF_HEIGHT)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.data.len()
    }

    pub fn tag(&self) -> FrameTag {
        match (self.width, self.height) {
            (QCIF_WIDTH, QCIF_HEIGHT) => FrameTag::Qcif,
            (CIF_WIDTH, CIF_HEIGHT) => FrameTag::Cif,
            _ => FrameTag::Custom,
        }
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.width && y < self.height
    }

    /// Pixel at (x, y). Panics if out of bounds.
    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> Pixel {
        debug_assert!(self.contains(x, y));
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set_pixel(&mut self, x: usize, y: usize, p: Pixel) {
        debug_assert!(self.contains(x, y));
        self.data[y * self.width + x] = p;
    }

    /// Pixel at (x, y) with both coordinates clamped into the frame.
    /// Edge replication for neighborhood borders.
    #[inline]
    pub fn pixel_clamped(&self, x: isize, y: isize) -> Pixel {
        let cx = x.clamp(0, self.width as isize - 1) as usize;
        let cy = y.clamp(0, self.height as isize - 1) as usize;
        self.pixel(cx, cy)
    }

    pub fn pixels(&self) -> &[Pixel] {
        &self.data
    }

    pub fn pixels_mut(&mut self) -> &mut [Pixel] {
        &mut self.data
    }

    /// Memory footprint of the packed representation: 8 bytes per pixel.
    pub fn byte_size(&self) -> u64 {
        frame_byte_size(self.width, self.height)
    }

    pub fn same_dimensions(&self, other: &Frame) -> bool {
        self.width == other.width && self.height == other.height
    }
}

/// Packed byte size of a width x height frame (two 32-bit words per pixel).
pub fn frame_byte_size(width: usize, height: usize) -> u64 {
    width as u64 * height as u64 * 8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qcif_byte_size() {
        assert_eq!(Frame::qcif().byte_size(), 202_752);
    }

    #[test]
    fn cif_byte_size() {
        assert_eq!(Frame::cif().byte_size(), 811_008);
    }

    #[test]
    fn cif_is_four_qcif() {
        assert_eq!(Frame::qcif().byte_size() * 4, Frame::cif().byte_size());
    }

    #[test]
    fn empty_frame_byte_size() {
        assert_eq!(frame_byte_size(0, 0), 0);
    }

    #[test]
    fn tags() {
        assert_eq!(Frame::qcif().tag(), FrameTag::Qcif);
        assert_eq!(Frame::cif().tag(), FrameTag::Cif);
        assert_eq!(Frame::new(160, 160).tag(), FrameTag::Custom);
    }

    #[test]
    fn from_pixels_checks_length() {
        let err = Frame::from_pixels(4, 4, vec![Pixel::default(); 15]).unwrap_err();
        assert_eq!(err, FrameError::DataLengthMismatch { expected: 16, actual: 15 });
    }

    #[test]
    fn clamped_access_replicates_edges() {
        let mut f = Frame::new(2, 2);
        f.set_pixel(0, 0, Pixel::gray(9));
        assert_eq!(f.pixel_clamped(-3, -3), Pixel::gray(9));
        assert_eq!(f.pixel_clamped(0, 0), Pixel::gray(9));
    }
}
