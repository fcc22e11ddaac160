//! Matrix register: the neighborhood grid feeding stage 3.

use crate::kernel::Window;
use crate::mask::NeighborhoodMask;
use crate::pixel::Pixel;

/// Largest bounding box the register can hold.
pub const MAX_MATRIX_DIM: usize = 9;

/// Register grid sized to the active mask's bounding box. A LOAD fills the
/// whole grid from scratch; a SHIFT slides it one step along the scan and
/// inserts the newly fetched column (or row, for vertical scans).
#[derive(Debug, Clone)]
pub struct MatrixRegister {
    window: Window,
}

impl MatrixRegister {
    pub fn new(mask: &NeighborhoodMask) -> Self {
        let w = Window::for_mask(mask);
        debug_assert!(w.rows() <= MAX_MATRIX_DIM && w.cols() <= MAX_MATRIX_DIM);
        Self { window: w }
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn rows(&self) -> usize {
        self.window.rows()
    }

    pub fn cols(&self) -> usize {
        self.window.cols()
    }

    /// Fills every cell. `fill(r, c)` supplies the pixel for grid cell
    /// (r, c) of the bounding box.
    pub fn load(&mut self, mut fill: impl FnMut(usize, usize) -> Pixel) {
        for r in 0..self.window.rows() {
            for c in 0..self.window.cols() {
                self.window.set_cell(r, c, fill(r, c));
            }
        }
    }

    /// Horizontal-scan SHIFT: slides columns left and fills the trailing
    /// column from `fill(r)`.
    pub fn shift_columns(&mut self, mut fill: impl FnMut(usize) -> Pixel) {
        self.window.shift_columns();
        let last = self.window.cols() - 1;
        for r in 0..self.window.rows() {
            self.window.set_cell(r, last, fill(r));
        }
    }

    /// Vertical-scan SHIFT: slides rows up and fills the trailing row from
    /// `fill(c)`.
    pub fn shift_rows(&mut self, mut fill: impl FnMut(usize) -> Pixel) {
        self.window.shift_rows();
        let last = self.window.rows() - 1;
        for c in 0..self.window.cols() {
            self.window.set_cell(last, c, fill(c));
        }
    }
}
