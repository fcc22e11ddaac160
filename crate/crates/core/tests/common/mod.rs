//! Shared helpers for the integration tests.
#![allow(dead_code)] // each test binary uses its own subset

use addrengine_core::{Frame, Pixel};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_pixel(rng: &mut ChaCha8Rng) -> Pixel {
    Pixel::new(rng.gen(), rng.gen(), rng.gen(), rng.gen(), rng.gen())
}

pub fn random_frame(rng: &mut ChaCha8Rng, width: usize, height: usize) -> Frame {
    let pixels = (0..width * height).map(|_| random_pixel(rng)).collect();
    Frame::from_pixels(width, height, pixels).unwrap()
}

/// Division with half-away-from-zero rounding, written differently from the
/// library's formulation so it can serve as an oracle.
pub fn round_half_away_oracle(n: i64, d: i64) -> i64 {
    assert!(d > 0);
    let negative = n < 0;
    let a = n.unsigned_abs();
    let d = d as u64;
    let mut q = a / d;
    if 2 * (a % d) >= d {
        q += 1;
    }
    if negative {
        -(q as i64)
    } else {
        q as i64
    }
}
