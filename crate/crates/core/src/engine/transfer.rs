//! Host-to-board input transfer schedule.
//!
//! The host bus moves one 32-bit word per cycle. Images travel as 16-line
//! strips in scan order; with two inputs the strips of both images
//! interleave (strip 0 of image 0, strip 0 of image 1, strip 1 of image 0,
//! ...) so the dual inter FIFOs can fill in step. The schedule is static:
//! every strip and every line has a known completion cycle given by prefix
//! sums over the word sequence.

use alloc::vec::Vec;

use super::strip::{plan_strips, Strip, StripError, STRIP_LINES};

/// One bus burst: a strip of one input image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferSegment {
    pub input: usize,
    pub strip: Strip,
    /// Index of the segment's first word in the global bus sequence.
    pub start_word: u64,
    pub words: u64,
}

impl TransferSegment {
    /// First cycle at which the whole strip is in bank memory. Word `w` is
    /// on the bus during cycle `w`, so the data is usable from `w + 1`.
    pub fn complete_cycle(&self) -> u64 {
        self.start_word + self.words
    }
}

/// Reference to one scheduled bus word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordRef {
    pub input: usize,
    /// Scan line the word belongs to.
    pub line: usize,
    /// Pixel position within the line.
    pub pos: usize,
    /// False for the lower pixel word, true for the upper.
    pub upper: bool,
}

/// The complete input transfer schedule.
#[derive(Debug, Clone)]
pub struct TransferPlan {
    segments: Vec<TransferSegment>,
    inputs: usize,
    line_len: usize,
    extent: usize,
    words_total: u64,
}

impl TransferPlan {
    /// Plans the transfer of `inputs` images of `extent` scan lines of
    /// `line_len` pixels each.
    pub fn new(inputs: usize, extent: usize, line_len: usize) -> Result<Self, StripError> {
        let strips = plan_strips(extent)?;
        let words_per_segment = (STRIP_LINES * line_len * 2) as u64;
        let mut segments = Vec::with_capacity(strips.len() * inputs);
        let mut start_word = 0;
        for strip in &strips {
            for input in 0..inputs {
                segments.push(TransferSegment { input, strip: *strip, start_word, words: words_per_segment });
                start_word += words_per_segment;
            }
        }
        Ok(Self {
            segments,
            inputs,
            line_len,
            extent,
            words_total: start_word,
        })
    }

    pub fn segments(&self) -> &[TransferSegment] {
        &self.segments
    }

    pub fn words_total(&self) -> u64 {
        self.words_total
    }

    /// Cycle from which every input word is in bank memory.
    pub fn input_complete_cycle(&self) -> u64 {
        self.words_total
    }

    /// First cycle at which strip `strip_index` of `input` is fully stored.
    pub fn strip_available_cycle(&self, input: usize, strip_index: usize) -> u64 {
        self.segments[strip_index * self.inputs + input].complete_cycle()
    }

    /// First cycle at which scan line `line` of `input` is fully stored.
    pub fn line_available_cycle(&self, input: usize, line: usize) -> u64 {
        let seg = &self.segments[(line / STRIP_LINES) * self.inputs + input];
        let line_in_strip = (line - seg.strip.first_line) as u64;
        seg.start_word + (line_in_strip + 1) * 2 * self.line_len as u64
    }

    /// First cycle at which scan line `line` is stored for every input.
    pub fn line_available_all(&self, line: usize) -> u64 {
        (0..self.inputs)
            .map(|i| self.line_available_cycle(i, line))
            .max()
            .unwrap_or(0)
    }

    /// What the bus carries as word `w`.
    pub fn word_at(&self, w: u64) -> WordRef {
        let words_per_segment = (STRIP_LINES * self.line_len * 2) as u64;
        let seg = &self.segments[(w / words_per_segment) as usize];
        let local = w - seg.start_word;
        let pixel = (local / 2) as usize;
        WordRef {
            input: seg.input,
            line: seg.strip.first_line + pixel / self.line_len,
            pos: pixel % self.line_len,
            upper: local % 2 == 1,
        }
    }

    pub fn extent(&self) -> usize {
        self.extent
    }

    pub fn line_len(&self) -> usize {
        self.line_len
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }
}
