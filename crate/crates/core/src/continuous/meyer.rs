//! Meyer spectra and their periodized time-domain samples.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{DaughterParams, Grid1D, SampledWavelet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeyerKind {
    Wavelet,
    Scaling,
    /// Positive-frequency half of the wavelet, scaled by √2.
    AnalyticWavelet,
}

impl MeyerKind {
    pub fn is_real(self) -> bool {
        !matches!(self, MeyerKind::AnalyticWavelet)
    }

    /// Largest |ω| where the mother spectrum is non-zero.
    pub fn band_edge(self) -> f64 {
        match self {
            MeyerKind::Scaling => 4.0 * PI / 3.0,
            _ => 8.0 * PI / 3.0,
        }
    }

    /// Smallest |ω| where the mother spectrum is non-zero.
    pub fn band_start(self) -> f64 {
        match self {
            MeyerKind::Scaling => 0.0,
            _ => 2.0 * PI / 3.0,
        }
    }
}

/// `t -> ψ((t - shift) / scale) / √|scale|` applied to the mother of `kind`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeyerOrigin {
    pub kind: MeyerKind,
    pub scale: f64,
    pub shift: f64,
}

impl MeyerOrigin {
    pub fn mother(kind: MeyerKind) -> Self {
        Self {
            kind,
            scale: 1.0,
            shift: 0.0,
        }
    }

    /// Origin of the daughter `p` of this function.
    pub fn compose(self, p: DaughterParams) -> Self {
        Self {
            kind: self.kind,
            scale: self.scale * p.a,
            shift: p.b + p.a * self.shift,
        }
    }

    pub fn spectrum(&self, omega: f64) -> Complex64 {
        let a = self.scale;
        a.abs().sqrt() * meyer_spectrum(self.kind, a * omega) * Complex64::cis(-omega * self.shift)
    }

    pub fn band_edge(&self) -> f64 {
        self.kind.band_edge() / self.scale.abs()
    }
}

/// Auxiliary polynomial `x^4 (35 - 84x + 70x^2 - 20x^3)`, clipped to `[0, 1]`.
pub fn meyer_nu(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    x.powi(4) * (35.0 - 84.0 * x + 70.0 * x * x - 20.0 * x.powi(3))
}

fn wavelet_magnitude(w: f64) -> f64 {
    let w = w.abs();
    if !(2.0 * PI / 3.0..=8.0 * PI / 3.0).contains(&w) {
        0.0
    } else if w <= 4.0 * PI / 3.0 {
        (FRAC_PI_2 * meyer_nu(3.0 * w / (2.0 * PI) - 1.0)).sin()
    } else {
        (FRAC_PI_2 * meyer_nu(3.0 * w / (4.0 * PI) - 1.0)).cos()
    }
}

/// Fourier transform `∫ f(t) e^{-iωt} dt` of the Meyer mother function.
///
/// The wavelet carries the phase `e^{iω/2}`, which centres it at `t = -1/2`.
pub fn meyer_spectrum(kind: MeyerKind, omega: f64) -> Complex64 {
    match kind {
        MeyerKind::Scaling => {
            let w = omega.abs();
            let m = if w <= 2.0 * PI / 3.0 {
                1.0
            } else if w <= 4.0 * PI / 3.0 {
                (FRAC_PI_2 * meyer_nu(3.0 * w / (2.0 * PI) - 1.0)).cos()
            } else {
                0.0
            };
            Complex64::new(m, 0.0)
        }
        MeyerKind::Wavelet => wavelet_magnitude(omega) * Complex64::cis(omega / 2.0),
        MeyerKind::AnalyticWavelet => {
            if omega > 0.0 {
                SQRT_2 * wavelet_magnitude(omega) * Complex64::cis(omega / 2.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
    }
}

/// Samples the periodic function whose Fourier series coefficients are
/// `spectrum(ω_k) / T` on `ω_k = 2πk/T`, `T = n·dt`, `k ∈ [-n/2, n/2)`.
///
/// For a band-limited function whose support fits under the Nyquist
/// frequency this is the exact sum of its `T`-periodic copies, so means
/// and energies on the grid match the continuous ones.
pub(crate) fn synthesize(
    grid: &Grid1D,
    real: bool,
    spectrum: impl Fn(f64) -> Complex64,
) -> Vec<Complex64> {
    let n = grid.n;
    let span = grid.period();
    let mut buf: Vec<Complex64> = (0..n)
        .map(|m| {
            let w = grid.frequency(m);
            spectrum(w) * Complex64::cis(w * grid.t0)
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    for z in &mut buf {
        *z /= span;
        if real {
            z.im = 0.0;
        }
    }
    buf
}

fn check_nyquist(grid: &Grid1D, edge: f64) -> Result<()> {
    let nyquist = PI / grid.dt;
    if edge >= nyquist {
        return Err(Error::GridTooSmall(format!(
            "step {} resolves |ω| < {nyquist:.6}, spectrum reaches {edge:.6}",
            grid.dt
        )));
    }
    Ok(())
}

pub(crate) const MIN_POINTS: usize = 16;
pub(crate) const MIN_HALF_SPAN: f64 = 8.0;

/// Samples the Meyer mother function of `kind` on `grid`.
///
/// Requires at least 16 points, a span covering `[-8, 8]`, and a step
/// fine enough to resolve the whole spectrum.
pub fn meyer_sample(kind: MeyerKind, grid: &Grid1D) -> Result<SampledWavelet> {
    if grid.n < MIN_POINTS {
        return Err(Error::GridTooSmall(format!(
            "need at least {MIN_POINTS} points, got {}",
            grid.n
        )));
    }
    if grid.t0 > -MIN_HALF_SPAN || grid.t0 + grid.period() < MIN_HALF_SPAN {
        return Err(Error::GridTooSmall(format!(
            "grid [{}, {}) does not cover [-{MIN_HALF_SPAN}, {MIN_HALF_SPAN}]",
            grid.t0,
            grid.t0 + grid.period()
        )));
    }
    sample_origin(MeyerOrigin::mother(kind), grid)
}

pub(crate) fn sample_origin(origin: MeyerOrigin, grid: &Grid1D) -> Result<SampledWavelet> {
    check_nyquist(grid, origin.band_edge())?;
    let values = synthesize(grid, origin.kind.is_real(), |w| origin.spectrum(w));
    Ok(SampledWavelet {
        grid: *grid,
        values,
        origin: Some(origin),
    })
}

/// Discrete-time Fourier estimate `Σ x_n e^{-iω t_n} dt` of a sampled
/// function, zero outside the source Nyquist band.
fn dtft(w: &SampledWavelet, omega: f64) -> Complex64 {
    if omega.abs() >= PI / w.grid.dt {
        return Complex64::new(0.0, 0.0);
    }
    let g = &w.grid;
    let step = Complex64::cis(-omega * g.dt);
    let mut phase = Complex64::cis(-omega * g.t0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &x) in w.values.iter().enumerate() {
        if i % 64 == 0 {
            // re-anchor the recurrence to keep rounding drift bounded
            phase = Complex64::cis(-omega * g.point(i));
        }
        acc += x * phase;
        phase *= step;
    }
    acc * g.dt
}

/// Samples `t -> w((t - b)/a) / √|a|` on `grid`.
///
/// Meyer-derived inputs are resynthesized from their exact spectrum, other
/// inputs by band-limited interpolation through their sampled spectrum.
pub fn daughter(w: &SampledWavelet, p: DaughterParams, grid: &Grid1D) -> Result<SampledWavelet> {
    if p.a == 0.0 {
        return Err(Error::ZeroScale);
    }
    if let Some(origin) = w.origin {
        return sample_origin(origin.compose(p), grid);
    }
    if p.a == 1.0 && p.b == 0.0 && *grid == w.grid {
        return Ok(w.clone());
    }
    let real = w.values.iter().all(|z| z.im == 0.0);
    let scale = p.a.abs().sqrt();
    let values = synthesize(grid, real, |omega| {
        scale * dtft(w, p.a * omega) * Complex64::cis(-omega * p.b)
    });
    Ok(SampledWavelet {
        grid: *grid,
        values,
        origin: None,
    })
}
