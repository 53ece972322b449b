use super::{to_pixel, RawImage8};
use crate::{Error, Result};

fn hash(x: u64, y: u64) -> u64 {
    // splitmix64 finalizer over the packed coordinates
    let mut z = (x << 32 ^ y).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic grayscale test card: a smooth diagonal gradient, a
/// tilted bright bar, a dark disk with a hard rim, and a textured patch of
/// fine stripes plus hash noise in the lower right.
///
/// Only integer and basic floating arithmetic is used, so the output is
/// identical on every platform.
pub fn synthetic_test_image(rows: usize, cols: usize) -> Result<RawImage8> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument(format!(
            "image dimensions must be positive, got {rows}x{cols}"
        )));
    }
    let (h, w) = (rows as f64, cols as f64);
    let mut pixels = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let (y, x) = (r as f64 / h, c as f64 / w);
            let mut v = 40.0 + 120.0 * (0.6 * x + 0.4 * y) + 30.0 * (x - 0.5) * (x - 0.5);

            // bar along the line y = 0.35 x + 0.15
            let d = (y - 0.35 * x - 0.15).abs();
            if d < 0.05 && x < 0.7 {
                v += 70.0;
            }

            let (dy, dx) = (y - 0.65, x - 0.3);
            if dy * dy + dx * dx < 0.03 {
                v -= 60.0;
            }

            if y > 0.55 && x > 0.55 {
                let stripes = if (r + 2 * c) % 6 < 3 { 25.0 } else { -25.0 };
                let noise = (hash(r as u64, c as u64) % 41) as f64 - 20.0;
                v += stripes + noise;
            }
            pixels.push(to_pixel(v));
        }
    }
    RawImage8::new(rows, cols, pixels)
}
