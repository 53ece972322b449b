//! Periodic 1D and separable 2D discrete wavelet transforms.
//!
//! Analysis is circular convolution with `lo_d`/`hi_d` keeping the
//! even-indexed outputs:
//!
//! ```text
//! approx[k] = sum_m lo_d[m] * x[(2k - m) mod N]
//! detail[k] = sum_m hi_d[m] * x[(2k - m) mod N]
//! ```
//!
//! Synthesis upsamples, convolves with `lo_r`/`hi_r` and advances by
//! `L - 1` samples, which makes it the exact transpose (hence inverse) of
//! analysis for orthonormal banks.
//!
//! Subband naming: the first letter is the filter applied along x (within a
//! row, across columns), the second along y (down a column). `lh` is
//! lowpass in x and highpass in y, so it responds to variation down the
//! columns.

use crate::filters::FilterBank;
use crate::{Error, Image, Matrix, Parallelism, Result};

fn check_signal(len: usize) -> Result<()> {
    if len < 2 || !len.is_multiple_of(2) {
        return Err(Error::SignalLength(len));
    }
    Ok(())
}

fn analyze_into(signal: &[f64], fb: &FilterBank, approx: &mut [f64], detail: &mut [f64]) {
    let n = signal.len() as isize;
    let lo = fb.lo_d();
    let hi = fb.hi_d();
    for k in 0..approx.len() {
        let (mut a, mut d) = (0.0, 0.0);
        for m in 0..lo.len() {
            let idx = (2 * k as isize - m as isize).rem_euclid(n) as usize;
            a += lo[m] * signal[idx];
            d += hi[m] * signal[idx];
        }
        approx[k] = a;
        detail[k] = d;
    }
}

fn synthesize_into(approx: &[f64], detail: &[f64], fb: &FilterBank, out: &mut [f64]) {
    let n = out.len() as isize;
    let lo = fb.lo_r();
    let hi = fb.hi_r();
    let advance = lo.len() as isize - 1;
    for (i, x) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for j in 0..lo.len() {
            // only even upsampled positions carry samples
            let pos = (i as isize + advance - j as isize).rem_euclid(n) as usize;
            if pos.is_multiple_of(2) {
                acc += lo[j] * approx[pos / 2] + hi[j] * detail[pos / 2];
            }
        }
        *x = acc;
    }
}

/// One level of periodic analysis. The signal must have even length ≥ 2;
/// it may be shorter than the filter.
pub fn analyze_1d(signal: &[f64], fb: &FilterBank) -> Result<(Vec<f64>, Vec<f64>)> {
    check_signal(signal.len())?;
    let half = signal.len() / 2;
    let mut approx = vec![0.0; half];
    let mut detail = vec![0.0; half];
    analyze_into(signal, fb, &mut approx, &mut detail);
    Ok((approx, detail))
}

pub fn synthesize_1d(approx: &[f64], detail: &[f64], fb: &FilterBank) -> Result<Vec<f64>> {
    if approx.len() != detail.len() {
        return Err(Error::LengthMismatch {
            what: "approx vs detail",
            left: approx.len(),
            right: detail.len(),
        });
    }
    if approx.is_empty() {
        return Err(Error::SignalLength(0));
    }
    let mut out = vec![0.0; 2 * approx.len()];
    synthesize_into(approx, detail, fb, &mut out);
    Ok(out)
}

/// The four subbands of one level of 2D analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct SubbandSet {
    pub ll: Matrix,
    pub lh: Matrix,
    pub hl: Matrix,
    pub hh: Matrix,
}

impl SubbandSet {
    pub fn new(ll: Matrix, lh: Matrix, hl: Matrix, hh: Matrix) -> Result<Self> {
        let s = Self { ll, lh, hl, hh };
        s.check_shape()?;
        Ok(s)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        let z = Matrix::zeros(rows, cols);
        Self {
            ll: z.clone(),
            lh: z.clone(),
            hl: z.clone(),
            hh: z,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        self.ll.shape()
    }

    pub fn check_shape(&self) -> Result<()> {
        let s = self.ll.shape();
        for (name, m) in [("lh", &self.lh), ("hl", &self.hl), ("hh", &self.hh)] {
            if m.shape() != s {
                return Err(Error::ShapeMismatch(format!(
                    "{name} is {}x{}, ll is {}x{}",
                    m.rows(),
                    m.cols(),
                    s.0,
                    s.1
                )));
            }
        }
        Ok(())
    }

    pub fn energy(&self) -> f64 {
        self.ll.energy() + self.lh.energy() + self.hl.energy() + self.hh.energy()
    }
}

/// Applies 1D analysis to every row, returning (lowpass, highpass) halves.
fn analyze_rows(img: &Matrix, fb: &FilterBank, par: Parallelism) -> (Matrix, Matrix) {
    let (rows, cols) = img.shape();
    let half = cols / 2;
    let mut low = vec![0.0; rows * half];
    let mut high = vec![0.0; rows * half];
    // both outputs are written row by row through one interleaved buffer
    let mut both = vec![0.0; rows * cols];
    par.for_each_chunk_mut(&mut both, cols, |r, chunk| {
        let (a, d) = chunk.split_at_mut(half);
        analyze_into(img.row(r), fb, a, d);
    });
    for r in 0..rows {
        low[r * half..(r + 1) * half].copy_from_slice(&both[r * cols..r * cols + half]);
        high[r * half..(r + 1) * half].copy_from_slice(&both[r * cols + half..(r + 1) * cols]);
    }
    (
        Matrix::from_raw(rows, half, low),
        Matrix::from_raw(rows, half, high),
    )
}

fn synthesize_rows(low: &Matrix, high: &Matrix, fb: &FilterBank, par: Parallelism) -> Matrix {
    let (rows, half) = low.shape();
    let cols = 2 * half;
    let mut out = vec![0.0; rows * cols];
    par.for_each_chunk_mut(&mut out, cols, |r, chunk| {
        synthesize_into(low.row(r), high.row(r), fb, chunk);
    });
    Matrix::from_raw(rows, cols, out)
}

pub fn analyze_2d(img: &Image, fb: &FilterBank) -> Result<SubbandSet> {
    analyze_2d_with(img, fb, Parallelism::default())
}

/// Rows first, then columns of both row outputs.
pub fn analyze_2d_with(img: &Image, fb: &FilterBank, par: Parallelism) -> Result<SubbandSet> {
    let (rows, cols) = img.shape();
    if rows < 2 || cols < 2 || rows % 2 != 0 || cols % 2 != 0 {
        return Err(Error::OddDimension { rows, cols });
    }
    let (row_low, row_high) = analyze_rows(img, fb, par);
    // column passes run as row passes on the transposes
    let (ll_t, lh_t) = analyze_rows(&row_low.transpose(), fb, par);
    let (hl_t, hh_t) = analyze_rows(&row_high.transpose(), fb, par);
    Ok(SubbandSet {
        ll: ll_t.transpose(),
        lh: lh_t.transpose(),
        hl: hl_t.transpose(),
        hh: hh_t.transpose(),
    })
}

pub fn synthesize_2d(sb: &SubbandSet, fb: &FilterBank) -> Result<Image> {
    synthesize_2d_with(sb, fb, Parallelism::default())
}

/// Columns first, then rows: the reverse of [`analyze_2d_with`].
pub fn synthesize_2d_with(sb: &SubbandSet, fb: &FilterBank, par: Parallelism) -> Result<Image> {
    sb.check_shape()?;
    let row_low = synthesize_rows(&sb.ll.transpose(), &sb.lh.transpose(), fb, par).transpose();
    let row_high = synthesize_rows(&sb.hl.transpose(), &sb.hh.transpose(), fb, par).transpose();
    Ok(synthesize_rows(&row_low, &row_high, fb, par))
}

/// Detail bands of one pyramid level.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailBands {
    pub lh: Matrix,
    pub hl: Matrix,
    pub hh: Matrix,
}

/// Multi-level decomposition. `details[0]` is the finest level; the coarse
/// approximation is stored once, at the deepest level.
#[derive(Debug, Clone, PartialEq)]
pub struct Pyramid {
    pub approx: Matrix,
    pub details: Vec<DetailBands>,
}

impl Pyramid {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    /// Shape of the image this pyramid reconstructs to.
    pub fn image_shape(&self) -> (usize, usize) {
        let scale = 1usize << self.levels();
        (self.approx.rows() * scale, self.approx.cols() * scale)
    }

    /// Checks that level `j` has half the shape of level `j-1`.
    pub fn validate(&self) -> Result<()> {
        if self.details.is_empty() {
            return Err(Error::Structure("pyramid has no levels".into()));
        }
        let (mut rows, mut cols) = self.approx.shape();
        for (j, d) in self.details.iter().enumerate().rev() {
            for (name, m) in [("lh", &d.lh), ("hl", &d.hl), ("hh", &d.hh)] {
                if m.shape() != (rows, cols) {
                    return Err(Error::Structure(format!(
                        "level {} {name} is {}x{}, expected {rows}x{cols}",
                        j + 1,
                        m.rows(),
                        m.cols()
                    )));
                }
            }
            rows *= 2;
            cols *= 2;
        }
        Ok(())
    }

    pub fn energy(&self) -> f64 {
        self.approx.energy()
            + self
                .details
                .iter()
                .map(|d| d.lh.energy() + d.hl.energy() + d.hh.energy())
                .sum::<f64>()
    }
}

pub(crate) fn check_divisible(rows: usize, cols: usize, levels: usize) -> Result<()> {
    if levels == 0 {
        return Err(Error::InvalidArgument("levels must be at least 1".into()));
    }
    if levels >= usize::BITS as usize {
        return Err(Error::InvalidArgument(format!(
            "levels = {levels} is too large"
        )));
    }
    let step = 1usize << levels;
    for (dim, size) in [("rows", rows), ("cols", cols)] {
        if size % step != 0 {
            return Err(Error::NotDivisible { dim, size, levels });
        }
    }
    Ok(())
}

pub fn decompose(img: &Image, fb: &FilterBank, levels: usize) -> Result<Pyramid> {
    decompose_with(img, fb, levels, Parallelism::default())
}

pub fn decompose_with(
    img: &Image,
    fb: &FilterBank,
    levels: usize,
    par: Parallelism,
) -> Result<Pyramid> {
    check_divisible(img.rows(), img.cols(), levels)?;
    let mut details = Vec::with_capacity(levels);
    let mut current = img.clone();
    for _ in 0..levels {
        let sb = analyze_2d_with(&current, fb, par)?;
        details.push(DetailBands {
            lh: sb.lh,
            hl: sb.hl,
            hh: sb.hh,
        });
        current = sb.ll;
    }
    Ok(Pyramid {
        approx: current,
        details,
    })
}

pub fn reconstruct(p: &Pyramid, fb: &FilterBank) -> Result<Image> {
    reconstruct_with(p, fb, Parallelism::default())
}

pub fn reconstruct_with(p: &Pyramid, fb: &FilterBank, par: Parallelism) -> Result<Image> {
    p.validate()?;
    let mut current = p.approx.clone();
    for d in p.details.iter().rev() {
        let sb = SubbandSet {
            ll: current,
            lh: d.lh.clone(),
            hl: d.hl.clone(),
            hh: d.hh.clone(),
        };
        current = synthesize_2d_with(&sb, fb, par)?;
    }
    Ok(current)
}
