//! Image carriers, coefficient containers and display mosaics.

mod container;
mod mosaic;
mod pgm;
mod synthetic;

pub use container::{
    read_coefficients, read_field, write_coefficients, write_field, CoefficientFile,
    COEFF_MAGIC_ORBITAL, COEFF_MAGIC_STANDARD, FIELD_MAGIC,
};
pub use mosaic::{normalize_band, render_mosaic, BandKind, MosaicLayout, Rect};
pub use pgm::{read_pgm, write_pgm};
pub use synthetic::synthetic_test_image;

use crate::{Error, Image, Result};

/// 8-bit grayscale raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawImage8 {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl RawImage8 {
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidArgument(format!(
                "image dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if rows * cols != pixels.len() {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} image needs {} pixels, got {}",
                rows * cols,
                pixels.len()
            )));
        }
        Ok(Self { rows, cols, pixels })
    }

    pub fn filled(rows: usize, cols: usize, value: u8) -> Self {
        Self {
            rows,
            cols,
            pixels: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.pixels[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.pixels[r * self.cols + c] = v;
    }

    pub fn to_image(&self) -> Image {
        Image::from_fn(self.rows, self.cols, |r, c| f64::from(self.get(r, c)))
    }

    /// Copies `tile` into this image with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, tile: &RawImage8, r0: usize, c0: usize) {
        for r in 0..tile.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.pixels[dst..dst + tile.cols]
                .copy_from_slice(&tile.pixels[r * tile.cols..(r + 1) * tile.cols]);
        }
    }
}

/// Rounds half away from zero and clamps to `0..=255`.
pub fn to_pixel(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Rounds every sample to an 8-bit pixel.
pub fn quantize(img: &Image) -> RawImage8 {
    RawImage8 {
        rows: img.rows(),
        cols: img.cols(),
        pixels: img.as_slice().iter().map(|&v| to_pixel(v)).collect(),
    }
}
