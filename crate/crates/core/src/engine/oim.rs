//! Output intermediate memory.
//!
//! Same 16-line structure as the IIM, used purely as a rate buffer: the
//! process unit delivers one pixel per cycle but the ZBT result bank accepts
//! one 32-bit word per cycle, half the production rate. When the buffer
//! fills, the pixel level controller is halted until the drain catches up.

use alloc::collections::VecDeque;

use crate::pixel::{pack_pixel, Pixel};

use super::iim::IIM_LINE_BLOCKS;

/// The output intermediate memory.
#[derive(Debug, Clone)]
pub struct Oim {
    capacity_pixels: usize,
    queue: VecDeque<Pixel>,
    pending_upper: Option<u32>,
    drained_pixels: u64,
}

impl Oim {
    /// Capacity of 16 lines of `line_len` pixels.
    pub fn new(line_len: usize) -> Self {
        Self {
            capacity_pixels: IIM_LINE_BLOCKS * line_len,
            queue: VecDeque::new(),
            pending_upper: None,
            drained_pixels: 0,
        }
    }

    pub fn capacity_pixels(&self) -> usize {
        self.capacity_pixels
    }

    /// Pixels buffered, including one mid-drain.
    pub fn occupancy(&self) -> usize {
        self.queue.len() + self.pending_upper.is_some() as usize
    }

    /// FULL flag: a push this cycle would exceed capacity.
    pub fn is_full(&self) -> bool {
        self.occupancy() >= self.capacity_pixels
    }

    /// EMPTY flag.
    pub fn is_empty(&self) -> bool {
        self.queue.is_empty() && self.pending_upper.is_none()
    }

    /// Accepts one result pixel from the process unit.
    pub fn push(&mut self, p: Pixel) {
        debug_assert!(!self.is_full(), "push into full OIM");
        self.queue.push_back(p);
    }

    /// Produces the next 32-bit word for the ZBT result bank: lower word
    /// first, then the upper word of the same pixel. Returns the word and
    /// whether it completed a pixel.
    pub fn drain_word(&mut self) -> Option<(u32, bool)> {
        if let Some(upper) = self.pending_upper.take() {
            self.drained_pixels += 1;
            return Some((upper, true));
        }
        let pixel = self.queue.pop_front()?;
        let words = pack_pixel(pixel);
        self.pending_upper = Some(words.upper);
        Some((words.lower, false))
    }

    /// Pixels fully written back to bank memory.
    pub fn drained_pixels(&self) -> u64 {
        self.drained_pixels
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_words_per_pixel_lower_first() {
        let mut oim = Oim::new(8);
        oim.push(Pixel::new(0x11, 0x22, 0x33, 0xAABB, 0xCCDD));
        let (w0, done0) = oim.drain_word().unwrap();
        let (w1, done1) = oim.drain_word().unwrap();
        assert_eq!((w0, done0), (0x0033_2211, false));
        assert_eq!((w1, done1), (0xCCDD_AABB, true));
        assert!(oim.is_empty());
        assert_eq!(oim.drained_pixels(), 1);
    }

    #[test]
    fn hundred_pixels_take_two_hundred_drain_steps() {
        let mut oim = Oim::new(16);
        for i in 0..100 {
            oim.push(Pixel::gray(i as u8));
        }
        let mut steps = 0;
        while oim.drain_word().is_some() {
            steps += 1;
        }
        assert_eq!(steps, 200);
    }

    #[test]
    fn empty_drains_nothing() {
        let mut oim = Oim::new(16);
        assert!(oim.drain_word().is_none());
    }

    #[test]
    fn full_flag_counts_mid_drain_pixel() {
        let mut oim = Oim::new(1); // capacity 16 pixels
        for i in 0..16 {
            oim.push(Pixel::gray(i));
        }
        assert!(oim.is_full());
        let _ = oim.drain_word().unwrap(); // lower word out, pixel still occupies
        assert!(oim.is_full());
        let _ = oim.drain_word().unwrap();
        assert!(!oim.is_full());
    }
}
