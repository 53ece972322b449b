use super::{to_pixel, RawImage8};
use crate::decomposition::Decomposition;
use crate::{Error, Matrix, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandKind {
    Approx,
    Detail,
}

/// Maps a band to 8-bit display values.
///
/// Approximation bands are stretched affinely from `[min, max]` to
/// `[0, 255]`; detail bands are mapped symmetrically, `0 -> 128` with scale
/// `127 / max|v|`. Flat bands of either kind render as uniform 128.
pub fn normalize_band(band: &Matrix, kind: BandKind) -> RawImage8 {
    let vals = band.as_slice();
    let pixels: Vec<u8> = match kind {
        BandKind::Approx => {
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if hi > lo {
                let scale = 255.0 / (hi - lo);
                vals.iter().map(|&v| to_pixel((v - lo) * scale)).collect()
            } else {
                vec![128; vals.len()]
            }
        }
        BandKind::Detail => {
            let peak = band.max_abs();
            if peak > 0.0 {
                let scale = 127.0 / peak;
                vals.iter().map(|&v| to_pixel(128.0 + v * scale)).collect()
            } else {
                vec![128; vals.len()]
            }
        }
    };
    RawImage8::new(band.rows(), band.cols(), pixels).expect("band shape is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub row: usize,
    pub col: usize,
    pub rows: usize,
    pub cols: usize,
}

/// Nested-quadrant placement. At level `j` (1 = finest) the region is the
/// top-left `rows/2^(j-1) x cols/2^(j-1)` block: first detail band top
/// right, second bottom left, `hh` bottom right. The deepest approximation
/// sits in the top-left corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MosaicLayout {
    rows: usize,
    cols: usize,
    levels: usize,
    approx: Rect,
    // details[j][band], j = 0 finest
    details: Vec<[Rect; 3]>,
}

impl MosaicLayout {
    pub fn new(rows: usize, cols: usize, levels: usize) -> Result<Self> {
        crate::dwt::check_divisible(rows, cols, levels)?;
        let details = (1..=levels)
            .map(|j| {
                let (h, w) = (rows >> j, cols >> j);
                [
                    Rect {
                        row: 0,
                        col: w,
                        rows: h,
                        cols: w,
                    },
                    Rect {
                        row: h,
                        col: 0,
                        rows: h,
                        cols: w,
                    },
                    Rect {
                        row: h,
                        col: w,
                        rows: h,
                        cols: w,
                    },
                ]
            })
            .collect();
        Ok(Self {
            rows,
            cols,
            levels,
            approx: Rect {
                row: 0,
                col: 0,
                rows: rows >> levels,
                cols: cols >> levels,
            },
            details,
        })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn approx_rect(&self) -> Rect {
        self.approx
    }

    /// Rectangle of detail band `band` (0..3) at `level` (1 = finest).
    pub fn detail_rect(&self, level: usize, band: usize) -> Rect {
        self.details[level - 1][band]
    }

    pub fn rects(&self) -> Vec<Rect> {
        std::iter::once(self.approx)
            .chain(self.details.iter().flatten().copied())
            .collect()
    }

    /// How many rectangles cover each pixel, row-major.
    pub fn coverage(&self) -> Vec<u32> {
        let mut counts = vec![0u32; self.rows * self.cols];
        for r in self.rects() {
            for y in r.row..r.row + r.rows {
                for x in r.col..r.col + r.cols {
                    counts[y * self.cols + x] += 1;
                }
            }
        }
        counts
    }
}

pub fn render_mosaic<D: Decomposition + ?Sized>(p: &D, layout: &MosaicLayout) -> Result<RawImage8> {
    if p.levels() != layout.levels() {
        return Err(Error::Structure(format!(
            "pyramid has {} levels, layout has {}",
            p.levels(),
            layout.levels()
        )));
    }
    if p.image_shape() != layout.shape() {
        return Err(Error::Structure(format!(
            "pyramid reconstructs to {:?}, layout is {:?}",
            p.image_shape(),
            layout.shape()
        )));
    }
    let (rows, cols) = layout.shape();
    let mut out = RawImage8::filled(rows, cols, 0);
    let place = |out: &mut RawImage8, m: &Matrix, rect: Rect, kind| -> Result<()> {
        if m.shape() != (rect.rows, rect.cols) {
            return Err(Error::Structure(format!(
                "band is {}x{}, slot is {}x{}",
                m.rows(),
                m.cols(),
                rect.rows,
                rect.cols
            )));
        }
        out.paste(&normalize_band(m, kind), rect.row, rect.col);
        Ok(())
    };
    place(&mut out, p.approx(), layout.approx_rect(), BandKind::Approx)?;
    for j in 0..p.levels() {
        for (b, m) in p.detail_bands(j).into_iter().enumerate() {
            place(&mut out, m, layout.detail_rect(j + 1, b), BandKind::Detail)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dwt::decompose;
    use crate::filters::get_filter;
    use crate::orbital::orbital_decompose;

    #[test]
    fn detail_normalization() {
        let zero = normalize_band(&Matrix::zeros(3, 2), BandKind::Detail);
        assert!(zero.pixels().iter().all(|&p| p == 128));
        let m = Matrix::from_rows(&[vec![-2.0, 2.0]]).unwrap();
        assert_eq!(normalize_band(&m, BandKind::Detail).pixels(), &[1, 255]);
        let m = Matrix::from_rows(&[vec![-1.0, 0.5, 0.0]]).unwrap();
        assert_eq!(
            normalize_band(&m, BandKind::Detail).pixels(),
            &[1, 192, 128]
        );
    }

    #[test]
    fn approx_normalization() {
        let m = Matrix::from_rows(&[vec![-1.0, 0.0, 1.0]]).unwrap();
        // 0 maps to 127.5, rounded away from zero
        assert_eq!(
            normalize_band(&m, BandKind::Approx).pixels(),
            &[0, 128, 255]
        );
        let flat = normalize_band(&Matrix::filled(2, 2, 9.0), BandKind::Approx);
        assert!(flat.pixels().iter().all(|&p| p == 128));
    }

    #[test]
    fn scaling_keeps_extremal_positions() {
        let m = Matrix::from_fn(4, 5, |r, c| ((r * 7 + c * 3) % 11) as f64 - 4.5);
        let argext = |img: &RawImage8| {
            let px = img.pixels();
            let min = px.iter().enumerate().min_by_key(|(_, v)| **v).unwrap().0;
            let max = px.iter().enumerate().max_by_key(|(_, v)| **v).unwrap().0;
            (min, max)
        };
        let base = argext(&normalize_band(&m, BandKind::Detail));
        for c in [0.01, 3.0, 1e6] {
            assert_eq!(
                argext(&normalize_band(&m.map(|v| v * c), BandKind::Detail)),
                base
            );
        }
    }

    #[test]
    fn layout_tiles_exactly() {
        for (rows, cols, levels) in [(8, 8, 1), (64, 32, 3), (16, 48, 4)] {
            let layout = MosaicLayout::new(rows, cols, levels).unwrap();
            assert!(layout.coverage().iter().all(|&c| c == 1));
            assert_eq!(layout.rects().len(), 1 + 3 * levels);
        }
        assert!(MosaicLayout::new(6, 8, 2).is_err());
    }

    #[test]
    fn one_level_mosaic() {
        let fb = get_filter("haar").unwrap();
        let img = Matrix::from_fn(8, 8, |r, c| (r * 8 + c) as f64);
        let p = decompose(&img, &fb, 1).unwrap();
        let layout = MosaicLayout::new(8, 8, 1).unwrap();
        let m = render_mosaic(&p, &layout).unwrap();
        assert_eq!((m.rows(), m.cols()), (8, 8));
        let ll = normalize_band(&p.approx, BandKind::Approx);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(m.get(r, c), ll.get(r, c));
            }
        }
    }

    #[test]
    fn constant_image_mosaic() {
        let fb = get_filter("haar").unwrap();
        let p = orbital_decompose(&Matrix::filled(16, 16, 40.0), &fb, 2).unwrap();
        let m = render_mosaic(&p, &MosaicLayout::new(16, 16, 2).unwrap()).unwrap();
        assert!(m.pixels().iter().all(|&v| v == 128));
    }

    #[test]
    fn level_mismatch() {
        let fb = get_filter("haar").unwrap();
        let p = decompose(&Matrix::zeros(8, 8), &fb, 1).unwrap();
        let layout = MosaicLayout::new(8, 8, 2).unwrap();
        assert!(matches!(
            render_mosaic(&p, &layout),
            Err(Error::Structure(_))
        ));
    }
}
