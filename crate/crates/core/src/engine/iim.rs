//! Input intermediate memory: line FIFOs between the ZBT banks and the
//! process unit.
//!
//! Sixteen line blocks, each with a lower and an upper bank (32 embedded
//! memory blocks in the hardware). Every resident line is independently
//! readable, so a neighborhood column spanning up to nine lines comes back
//! in a single cycle. In inter mode the structure splits into two FIFOs of
//! eight lines, one per input image.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::pixel::Pixel;

/// Line blocks in the structure.
pub const IIM_LINE_BLOCKS: usize = 16;

/// Banks per line block (lower and upper pixel halves).
pub const IIM_BANKS_PER_BLOCK: usize = 2;

/// Total embedded memory blocks.
pub const IIM_TOTAL_BLOCKS: usize = IIM_LINE_BLOCKS * IIM_BANKS_PER_BLOCK;

/// Lines per FIFO in inter mode.
pub const INTER_FIFO_LINES: usize = 8;

/// One buffered image line.
#[derive(Debug, Clone)]
struct LineSlot {
    line: usize,
    pixels: Vec<Pixel>,
    loaded: usize,
    ready: bool,
}

/// FIFO of whole lines for one input image.
#[derive(Debug, Clone)]
struct LineFifo {
    capacity: usize,
    slots: VecDeque<LineSlot>,
    next_line: usize,
}

impl LineFifo {
    fn slot(&self, line: usize) -> Option<&LineSlot> {
        let front = self.slots.front()?.line;
        if line < front {
            return None;
        }
        self.slots.get(line - front)
    }
}

/// Outcome of a neighborhood column fetch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fetch {
    /// All spanned lines resident; the column was produced in one cycle.
    Column,
    /// A spanned line is not resident yet; the system must halt.
    Stall { input: usize, missing_line: usize },
}

/// The input intermediate memory.
#[derive(Debug, Clone)]
pub struct Iim {
    fifos: Vec<LineFifo>,
    line_len: usize,
    line_count: usize,
}

impl Iim {
    /// Single 16-line FIFO for intra addressing.
    pub fn new_intra(line_len: usize, line_count: usize) -> Self {
        Self {
            fifos: vec![LineFifo { capacity: IIM_LINE_BLOCKS, slots: VecDeque::new(), next_line: 0 }],
            line_len,
            line_count,
        }
    }

    /// Two 8-line FIFOs, one per input image, for inter addressing.
    pub fn new_inter(line_len: usize, line_count: usize) -> Self {
        let fifo = || LineFifo { capacity: INTER_FIFO_LINES, slots: VecDeque::new(), next_line: 0 };
        Self { fifos: vec![fifo(), fifo()], line_len, line_count }
    }

    pub fn inputs(&self) -> usize {
        self.fifos.len()
    }

    pub fn line_len(&self) -> usize {
        self.line_len
    }

    /// FULL flag of one FIFO.
    pub fn is_full(&self, input: usize) -> bool {
        self.fifos[input].slots.len() >= self.fifos[input].capacity
    }

    /// EMPTY flag of one FIFO.
    pub fn is_empty(&self, input: usize) -> bool {
        self.fifos[input].slots.is_empty()
    }

    /// Whether a line is fully loaded and readable.
    pub fn resident(&self, input: usize, line: usize) -> bool {
        matches!(self.fifos[input].slot(line), Some(s) if s.ready)
    }

    /// Next line the transmission unit should load for `input`, if the FIFO
    /// has room and the image has lines left.
    pub fn begin_line(&mut self, input: usize) -> Option<usize> {
        if self.is_full(input) {
            return None;
        }
        let fifo = &mut self.fifos[input];
        if fifo.next_line >= self.line_count {
            return None;
        }
        let line = fifo.next_line;
        fifo.next_line += 1;
        fifo.slots.push_back(LineSlot {
            line,
            pixels: vec![Pixel::default(); self.line_len],
            loaded: 0,
            ready: false,
        });
        Some(line)
    }

    /// Stores the next sequential pixel of a loading line. Marks the line
    /// ready once full; returns true in that case.
    pub fn store_pixel(&mut self, input: usize, line: usize, pixel: Pixel) -> bool {
        let front = self.fifos[input].slots.front().map(|s| s.line).unwrap_or(0);
        let slot = self.fifos[input]
            .slots
            .get_mut(line - front)
            .expect("storing into a line without a slot");
        debug_assert_eq!(slot.line, line);
        debug_assert!(!slot.ready);
        let at = slot.loaded;
        slot.pixels[at] = pixel;
        slot.loaded += 1;
        if slot.loaded == slot.pixels.len() {
            slot.ready = true;
        }
        slot.ready
    }

    /// Pixel of a resident line.
    #[inline]
    pub fn pixel(&self, input: usize, line: usize, pos: usize) -> Pixel {
        let slot = self.fifos[input].slot(line).expect("line not buffered");
        debug_assert!(slot.ready, "line {line} read before fully loaded");
        slot.pixels[pos]
    }

    /// Checks the clamped line span [lo, hi] and, when resident, copies one
    /// pixel per spanned line at clamped position `pos` into `out`. This is
    /// the single-cycle neighborhood column access.
    pub fn fetch_column(
        &self,
        input: usize,
        lo: usize,
        hi: usize,
        pos: usize,
        out: &mut [Pixel],
    ) -> Fetch {
        debug_assert!(hi < self.line_count && lo <= hi);
        for line in lo..=hi {
            if !self.resident(input, line) {
                return Fetch::Stall { input, missing_line: line };
            }
        }
        let pos = pos.min(self.line_len - 1);
        for (i, line) in (lo..=hi).enumerate() {
            out[i] = self.pixel(input, line, pos);
        }
        Fetch::Column
    }

    /// Checks residency of the clamped span without reading.
    pub fn span_resident(&self, input: usize, lo: usize, hi: usize) -> Result<(), usize> {
        for line in lo..=hi {
            if !self.resident(input, line) {
                return Err(line);
            }
        }
        Ok(())
    }

    /// Drops buffered lines below `line` (no longer reachable by any future
    /// neighborhood).
    pub fn evict_below(&mut self, input: usize, line: usize) {
        let fifo = &mut self.fifos[input];
        while matches!(fifo.slots.front(), Some(s) if s.line < line && s.ready) {
            fifo.slots.pop_front();
        }
    }
}
