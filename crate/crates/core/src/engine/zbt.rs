//! On-board ZBT bank memory and its address layout.
//!
//! Six independent banks of 256K 32-bit words, one read-write port each.
//! Input images store a pixel's two words at the same address of a bank
//! pair (banks 0/1 for input slot 0, banks 2/3 for slot 1), so any pixel is
//! reachable in one memory cycle. Results go to banks 4 and 5: the first
//! half of the image sequentially (lower word, then upper) into bank 4, the
//! second half into bank 5, so the host reads pixel data properly ordered
//! and the result bank switch happens exactly once.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Number of independent banks.
pub const BANK_COUNT: usize = 6;

/// Words per bank: 1 MB of 32-bit words.
pub const BANK_WORDS: usize = 262_144;

/// (lower, upper) bank pair per input slot.
pub const INPUT_BANKS: [(u8, u8); 2] = [(0, 1), (2, 3)];

/// Bank holding the first half of the result image.
pub const RESULT_BANK_A: u8 = 4;

/// Bank holding the second half of the result image.
pub const RESULT_BANK_B: u8 = 5;

/// Bank memory contents.
#[derive(Debug, Clone)]
pub struct ZbtMemory {
    banks: Vec<Vec<u32>>,
}

impl ZbtMemory {
    pub fn new() -> Self {
        Self { banks: vec![vec![0u32; BANK_WORDS]; BANK_COUNT] }
    }

    #[inline]
    pub fn read(&self, bank: u8, address: u32) -> u32 {
        self.banks[bank as usize][address as usize]
    }

    #[inline]
    pub fn write(&mut self, bank: u8, address: u32, word: u32) {
        self.banks[bank as usize][address as usize] = word;
    }
}

impl Default for ZbtMemory {
    fn default() -> Self {
        Self::new()
    }
}

/// Address layout for one run: frame geometry plus the result-half split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZbtLayout {
    pub width: usize,
    pub height: usize,
}

/// Errors from address mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddressError {
    OutOfRange { x: usize, y: usize, width: usize, height: usize },
    BadSlot { slot: usize },
    /// Frame does not fit the per-bank word budget.
    LayoutOverflow { required_words: usize, bank_words: usize },
}

impl fmt::Display for AddressError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AddressError::OutOfRange { x, y, width, height } => {
                write!(f, "({x},{y}) outside {width}x{height} input image")
            }
            AddressError::BadSlot { slot } => write!(f, "input slot {slot} does not exist"),
            AddressError::LayoutOverflow { required_words, bank_words } => {
                write!(f, "frame needs {required_words} words per bank, banks hold {bank_words}")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AddressError {}

impl ZbtLayout {
    pub fn new(width: usize, height: usize) -> Result<Self, AddressError> {
        let required = width * height;
        if required > BANK_WORDS {
            return Err(AddressError::LayoutOverflow { required_words: required, bank_words: BANK_WORDS });
        }
        Ok(Self { width, height })
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    /// Pixels in the first result half (Res_block_A / bank 4).
    pub fn result_half(&self) -> usize {
        self.pixel_count().div_ceil(2)
    }

    /// Banks and word address of input pixel (x, y) in the given slot. The
    /// lower and upper pixel words live at the same address of the slot's
    /// bank pair.
    pub fn map_input_address(&self, x: usize, y: usize, slot: usize) -> Result<(u8, u8, u32), AddressError> {
        if slot >= INPUT_BANKS.len() {
            return Err(AddressError::BadSlot { slot });
        }
        if x >= self.width || y >= self.height {
            return Err(AddressError::OutOfRange { x, y, width: self.width, height: self.height });
        }
        let (lower, upper) = INPUT_BANKS[slot];
        Ok((lower, upper, (y * self.width + x) as u32))
    }

    /// Bank and word address of one result word. `pixel_index` is the
    /// pixel's position in host readback order; `upper` selects the second
    /// word of the pair.
    pub fn map_result_word(&self, pixel_index: usize, upper: bool) -> (u8, u32) {
        let half = self.result_half();
        let (bank, local) = if pixel_index < half {
            (RESULT_BANK_A, pixel_index)
        } else {
            (RESULT_BANK_B, pixel_index - half)
        };
        (bank, (2 * local + upper as usize) as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_maps_to_bank_pair_zero() {
        let l = ZbtLayout::new(352, 288).unwrap();
        assert_eq!(l.map_input_address(0, 0, 0).unwrap(), (0, 1, 0));
    }

    #[test]
    fn row_major_step() {
        let l = ZbtLayout::new(352, 288).unwrap();
        assert_eq!(l.map_input_address(1, 0, 0).unwrap(), (0, 1, 1));
        assert_eq!(l.map_input_address(0, 1, 0).unwrap(), (0, 1, 352));
    }

    #[test]
    fn second_slot_uses_other_bank_pair() {
        let l = ZbtLayout::new(176, 144).unwrap();
        assert_eq!(l.map_input_address(5, 3, 1).unwrap(), (2, 3, 3 * 176 + 5));
    }

    #[test]
    fn out_of_range_rejected() {
        let l = ZbtLayout::new(16, 16).unwrap();
        assert!(matches!(l.map_input_address(16, 0, 0), Err(AddressError::OutOfRange { .. })));
        assert!(matches!(l.map_input_address(0, 0, 2), Err(AddressError::BadSlot { slot: 2 })));
    }

    #[test]
    fn addresses_follow_the_row_major_index() {
        let l = ZbtLayout::new(352, 288).unwrap();
        // Cheap xorshift-driven sample against the independent index form.
        let mut state = 0x2545_F491_4F6C_DD1Du64;
        for _ in 0..1000 {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let x = (state % 352) as usize;
            let y = ((state >> 16) % 288) as usize;
            let slot = (state >> 40) as usize % 2;
            let (lower, upper, addr) = l.map_input_address(x, y, slot).unwrap();
            assert_eq!(addr as usize, y * 352 + x);
            assert_eq!((lower, upper), INPUT_BANKS[slot]);
        }
    }

    #[test]
    fn oversized_frame_rejected() {
        assert!(matches!(
            ZbtLayout::new(1024, 1024),
            Err(AddressError::LayoutOverflow { .. })
        ));
    }

    #[test]
    fn result_words_sequential_per_half() {
        let l = ZbtLayout::new(352, 288).unwrap();
        let half = l.result_half();
        assert_eq!(half, 50_688);
        assert_eq!(l.map_result_word(0, false), (RESULT_BANK_A, 0));
        assert_eq!(l.map_result_word(0, true), (RESULT_BANK_A, 1));
        assert_eq!(l.map_result_word(half - 1, true), (RESULT_BANK_A, (2 * half - 1) as u32));
        assert_eq!(l.map_result_word(half, false), (RESULT_BANK_B, 0));
    }
}
