//! Frame file formats.
//!
//! Raw-planar carries all five channels losslessly: five consecutive
//! row-major planes — Y, U, V one byte per pixel, then Alfa and Aux two
//! bytes per pixel little-endian (7 bytes per pixel on disk). Binary
//! portable graymaps (P5, 8-bit) carry the Y channel only; the other
//! channels are zeroed on load.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use addrengine_core::{Frame, Pixel};

/// On-disk frame encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameFormat {
    RawPlanar,
    Graymap,
}

impl FrameFormat {
    /// Picks the format from a file extension: `.pgm` is a graymap,
    /// everything else raw-planar.
    pub fn from_path(path: &Path) -> FrameFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("pgm") => FrameFormat::Graymap,
            _ => FrameFormat::RawPlanar,
        }
    }
}

/// Errors from frame file IO.
#[derive(Debug)]
pub enum FormatError {
    Io(io::Error),
    /// File length does not match the declared dimensions.
    SizeMismatch { expected: u64, actual: u64 },
    MalformedHeader(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Io(e) => write!(f, "{e}"),
            FormatError::SizeMismatch { expected, actual } => {
                write!(f, "file holds {actual} bytes, dimensions require {expected}")
            }
            FormatError::MalformedHeader(what) => write!(f, "malformed header: {what}"),
        }
    }
}

impl std::error::Error for FormatError {}

impl From<io::Error> for FormatError {
    fn from(e: io::Error) -> Self {
        FormatError::Io(e)
    }
}

/// Bytes per pixel of the raw-planar encoding.
const RAW_PLANAR_BYTES_PER_PIXEL: u64 = 7;

/// Loads a frame, inferring the format from the extension. Raw-planar needs
/// the declared dimensions; graymaps carry their own.
pub fn load_frame(path: &Path, declared: Option<(usize, usize)>) -> Result<Frame, FormatError> {
    match FrameFormat::from_path(path) {
        FrameFormat::Graymap => load_graymap(path),
        FrameFormat::RawPlanar => {
            let (w, h) = declared.ok_or_else(|| {
                FormatError::MalformedHeader("raw-planar input needs --size".into())
            })?;
            load_raw_planar(path, w, h)
        }
    }
}

/// Saves a frame, inferring the format from the extension.
pub fn save_frame(frame: &Frame, path: &Path) -> Result<(), FormatError> {
    match FrameFormat::from_path(path) {
        FrameFormat::Graymap => save_graymap(frame, path),
        FrameFormat::RawPlanar => save_raw_planar(frame, path),
    }
}

pub fn load_raw_planar(path: &Path, width: usize, height: usize) -> Result<Frame, FormatError> {
    let bytes = fs::read(path)?;
    let n = width * height;
    let expected = n as u64 * RAW_PLANAR_BYTES_PER_PIXEL;
    if bytes.len() as u64 != expected {
        return Err(FormatError::SizeMismatch { expected, actual: bytes.len() as u64 });
    }
    let (y, rest) = bytes.split_at(n);
    let (u, rest) = rest.split_at(n);
    let (v, rest) = rest.split_at(n);
    let (alfa, aux) = rest.split_at(2 * n);
    let pixels = (0..n)
        .map(|i| {
            Pixel::new(
                y[i],
                u[i],
                v[i],
                u16::from_le_bytes([alfa[2 * i], alfa[2 * i + 1]]),
                u16::from_le_bytes([aux[2 * i], aux[2 * i + 1]]),
            )
        })
        .collect();
    Ok(Frame::from_pixels(width, height, pixels).expect("plane sizes add up"))
}

pub fn save_raw_planar(frame: &Frame, path: &Path) -> Result<(), FormatError> {
    let n = frame.pixel_count();
    let mut bytes = Vec::with_capacity(n * RAW_PLANAR_BYTES_PER_PIXEL as usize);
    for p in frame.pixels() {
        bytes.push(p.y);
    }
    for p in frame.pixels() {
        bytes.push(p.u);
    }
    for p in frame.pixels() {
        bytes.push(p.v);
    }
    for p in frame.pixels() {
        bytes.extend_from_slice(&p.alfa.to_le_bytes());
    }
    for p in frame.pixels() {
        bytes.extend_from_slice(&p.aux.to_le_bytes());
    }
    fs::write(path, bytes)?;
    Ok(())
}

pub fn load_graymap(path: &Path) -> Result<Frame, FormatError> {
    let bytes = fs::read(path)?;
    let mut cursor = 0usize;

    let mut token = |bytes: &[u8]| -> Result<String, FormatError> {
        // Skip whitespace and '#' comments.
        loop {
            while cursor < bytes.len() && bytes[cursor].is_ascii_whitespace() {
                cursor += 1;
            }
            if cursor < bytes.len() && bytes[cursor] == b'#' {
                while cursor < bytes.len() && bytes[cursor] != b'\n' {
                    cursor += 1;
                }
                continue;
            }
            break;
        }
        let start = cursor;
        while cursor < bytes.len() && !bytes[cursor].is_ascii_whitespace() {
            cursor += 1;
        }
        if start == cursor {
            return Err(FormatError::MalformedHeader("unexpected end of header".into()));
        }
        Ok(String::from_utf8_lossy(&bytes[start..cursor]).into_owned())
    };

    if token(&bytes)? != "P5" {
        return Err(FormatError::MalformedHeader("not a binary graymap (P5)".into()));
    }
    let parse = |t: String| -> Result<usize, FormatError> {
        t.parse().map_err(|_| FormatError::MalformedHeader(format!("bad number '{t}'")))
    };
    let width = parse(token(&bytes)?)?;
    let height = parse(token(&bytes)?)?;
    let maxval = parse(token(&bytes)?)?;
    if maxval == 0 || maxval > 255 {
        return Err(FormatError::MalformedHeader(format!("unsupported maxval {maxval}")));
    }
    // Single whitespace byte separates header and raster.
    cursor += 1;

    let n = width * height;
    let available = bytes.len().saturating_sub(cursor);
    if available != n {
        return Err(FormatError::SizeMismatch { expected: n as u64, actual: available as u64 });
    }
    let pixels = bytes[cursor..].iter().map(|&y| Pixel::gray(y)).collect();
    Ok(Frame::from_pixels(width, height, pixels).expect("raster length checked"))
}

pub fn save_graymap(frame: &Frame, path: &Path) -> Result<(), FormatError> {
    let mut out = fs::File::create(path)?;
    write!(out, "P5\n{} {}\n255\n", frame.width(), frame.height())?;
    let raster: Vec<u8> = frame.pixels().iter().map(|p| p.y).collect();
    out.write_all(&raster)?;
    Ok(())
}
