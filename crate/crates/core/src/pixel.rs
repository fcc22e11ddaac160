//! The 64-bit pixel and its packed two-word memory representation.
//!
//! A pixel carries five channels: 8 bits each for Y, U, V and 16 bits each
//! for the Alfa (segment label) and Aux fields. The 32-bit memory width of
//! the ZBT banks means every pixel occupies two words; [`pack_pixel`] and
//! [`unpack_pixel`] fix the exact bit placement used everywhere.

use core::fmt;

/// One video pixel: full-resolution luminance, chrominance and two 16-bit
/// side fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Pixel {
    pub y: u8,
    pub u: u8,
    pub v: u8,
    /// Segment / alpha field.
    pub alfa: u16,
    /// Auxiliary field.
    pub aux: u16,
}

impl Pixel {
    pub const fn new(y: u8, u: u8, v: u8, alfa: u16, aux: u16) -> Self {
        Self { y, u, v, alfa, aux }
    }

    /// Pixel carrying only a luma value; every other channel zero.
    pub const fn gray(y: u8) -> Self {
        Self::new(y, 0, 0, 0, 0)
    }
}

/// The two 32-bit words one pixel occupies in bank memory.
///
/// Layout: `lower` holds Y in bits 0-7, U in 8-15, V in 16-23; bits 24-31
/// are padding and always zero. `upper` holds Alfa in bits 0-15 and Aux in
/// bits 16-31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WordPair {
    pub lower: u32,
    pub upper: u32,
}

/// Mask of the padding bits in the lower word.
const LOWER_PAD_MASK: u32 = 0xFF00_0000;

/// Errors from word-level pixel decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PixelError {
    /// Lower word has nonzero padding bits (24-31).
    MalformedWord { lower: u32 },
}

impl fmt::Display for PixelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PixelError::MalformedWord { lower } => {
                write!(f, "malformed lower word {lower:#010x}: padding bits 24-31 set")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PixelError {}

/// Packs a pixel into its two-word memory representation.
pub fn pack_pixel(p: Pixel) -> WordPair {
    WordPair {
        lower: p.y as u32 | (p.u as u32) << 8 | (p.v as u32) << 16,
        upper: p.alfa as u32 | (p.aux as u32) << 16,
    }
}

/// Inverse of [`pack_pixel`]. Rejects lower words with nonzero padding bits.
pub fn unpack_pixel(w: WordPair) -> Result<Pixel, PixelError> {
    if w.lower & LOWER_PAD_MASK != 0 {
        return Err(PixelError::MalformedWord { lower: w.lower });
    }
    Ok(Pixel {
        y: w.lower as u8,
        u: (w.lower >> 8) as u8,
        v: (w.lower >> 16) as u8,
        alfa: w.upper as u16,
        aux: (w.upper >> 16) as u16,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_pixel_packs_to_zero_words() {
        assert_eq!(pack_pixel(Pixel::default()), WordPair { lower: 0, upper: 0 });
    }

    #[test]
    fn y_lands_in_lowest_byte() {
        let p = Pixel::new(0xFF, 0, 0, 0, 0);
        assert_eq!(pack_pixel(p), WordPair { lower: 0x0000_00FF, upper: 0 });
    }

    #[test]
    fn field_placement() {
        let p = Pixel::new(0x11, 0x22, 0x33, 0xAABB, 0xCCDD);
        let w = pack_pixel(p);
        assert_eq!(w.lower, 0x0033_2211);
        assert_eq!(w.upper, 0xCCDD_AABB);
    }

    #[test]
    fn zero_words_unpack_to_zero_pixel() {
        assert_eq!(unpack_pixel(WordPair::default()).unwrap(), Pixel::default());
    }

    #[test]
    fn padding_bit_rejected() {
        let w = WordPair { lower: 1 << 30, upper: 0 };
        assert_eq!(unpack_pixel(w), Err(PixelError::MalformedWord { lower: 1 << 30 }));
    }
}
