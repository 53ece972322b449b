//! Numerical checks on sampled two-scale fields.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{FieldOrigin, Grid1D, SampledField2D, SampledWavelet};
use crate::metrics::MetricsReport;
use crate::{Error, Result};

pub const PROP1_TOLERANCE: f64 = 1e-6;
pub const PROP2_TOLERANCE: f64 = 1e-3;
/// Relative gap allowed between the direct and separable admissibility values.
pub const PROP3_CROSS_TOLERANCE: f64 = 0.05;

/// Zero marginals: `∫ f dx` for every `y`, `∫ f dy` for every `x`, and the
/// double integral.
pub fn verify_prop1(field: &SampledField2D) -> MetricsReport {
    let n = field.n();
    let dt = field.grid().dt;
    let zero = Complex64::new(0.0, 0.0);
    let mut col_sums = vec![zero; n];
    let mut worst_row = 0.0f64;
    let mut total = zero;
    for i in 0..n {
        let row = &field.values()[i * n..(i + 1) * n];
        let s: Complex64 = row.iter().sum();
        worst_row = worst_row.max((s * dt).norm());
        total += s;
        for (c, v) in col_sums.iter_mut().zip(row) {
            *c += v;
        }
    }
    let worst_col = col_sums.iter().map(|s| (s * dt).norm()).fold(0.0, f64::max);
    let mut r = MetricsReport::new();
    r.check("prop1.integral_dx", worst_col, PROP1_TOLERANCE);
    r.check("prop1.integral_dy", worst_row, PROP1_TOLERANCE);
    r.check(
        "prop1.integral_dxdy",
        (total * dt * dt).norm(),
        PROP1_TOLERANCE,
    );
    r
}

/// Neumaier-compensated sum; plain summation of ~10^7 squares loses more
/// digits than the quadrature itself.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Unit energy `∫∫ |f|² dx dy = 1`.
pub fn verify_prop2(field: &SampledField2D) -> MetricsReport {
    let dt = field.grid().dt;
    let e = compensated_sum(field.values().iter().map(Complex64::norm_sqr)) * dt * dt;
    let mut r = MetricsReport::new();
    r.record("prop2.energy", e);
    r.check("prop2.energy_error", (e - 1.0).abs(), PROP2_TOLERANCE);
    r
}

/// `F(u, v) ≈ ∫∫ f(x, y) e^{-i(ux + vy)} dx dy` on the DFT frequency grid,
/// up to a unit-modulus phase set by the grid origin.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumField2D {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl SpectrumField2D {
    /// Angular frequency of bin `m` on either axis.
    pub fn frequency(&self, m: usize) -> f64 {
        self.grid.frequency(m)
    }

    pub fn frequency_step(&self) -> f64 {
        self.grid.frequency_step()
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

fn fft_rows(data: &mut [Complex64], n: usize) {
    let fft = FftPlanner::new().plan_fft_forward(n);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    for row in data.chunks_mut(n) {
        fft.process_with_scratch(row, &mut scratch);
    }
}

fn transpose_square(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in i + 1..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

pub fn spectrum_2d(field: &SampledField2D) -> SpectrumField2D {
    let n = field.n();
    let dt = field.grid().dt;
    let mut data = field.values().to_vec();
    fft_rows(&mut data, n);
    transpose_square(&mut data, n);
    fft_rows(&mut data, n);
    transpose_square(&mut data, n);
    for z in &mut data {
        *z *= dt * dt;
    }
    SpectrumField2D {
        grid: *field.grid(),
        values: data,
    }
}

/// `Σ g(u, v) / (|u|·|v|) du dv` over all bins off the `u = 0` and `v = 0`
/// lines.
fn admissibility_sum(grid: &Grid1D, g: impl Fn(usize, usize) -> f64) -> f64 {
    let n = grid.n;
    let dw = grid.frequency_step();
    let mut acc = 0.0;
    for i in 1..n {
        let u = grid.frequency(i).abs();
        for j in 1..n {
            acc += g(i, j) / (u * grid.frequency(j).abs());
        }
    }
    acc * dw * dw
}

/// Admissibility `∫∫ |F(u,v)|² / (|u||v|) du dv < ∞` from the 2D DFT.
///
/// When the field remembers its Meyer daughters, the value is compared
/// with the cross-term-free separable form
/// `½(|Ψ₁(-u)|²|Ψ₂(v)|² + |Ψ₂(u)|²|Ψ₁(-v)|²)`.
pub fn verify_prop3(field: &SampledField2D) -> Result<MetricsReport> {
    let n = field.n();
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let spec = spectrum_2d(field);
    let grid = *field.grid();
    let direct = admissibility_sum(&grid, |i, j| spec.values[i * n + j].norm_sqr());
    let mut r = MetricsReport::new();
    r.check("prop3.admissibility", direct, f64::INFINITY);
    if let Some(FieldOrigin::Hh { first, second }) = field.origin() {
        let freqs = grid.frequencies();
        let s1m: Vec<Complex64> = freqs.iter().map(|&w| first.spectrum(-w)).collect();
        let s2: Vec<Complex64> = freqs.iter().map(|&w| second.spectrum(w)).collect();
        let full = admissibility_sum(&grid, |i, j| {
            ((s1m[i].conj() * s2[j] - s2[i] * s1m[j].conj()) * FRAC_1_SQRT_2).norm_sqr()
        });
        let separable = admissibility_sum(&grid, |i, j| {
            0.5 * (s1m[i].norm_sqr() * s2[j].norm_sqr() + s2[i].norm_sqr() * s1m[j].norm_sqr())
        });
        r.record("prop3.spectral_full", full);
        r.record("prop3.separable", separable);
        let rel = if separable > 0.0 {
            (direct - separable).abs() / separable
        } else if direct == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        r.check("prop3.cross_check_rel", rel, PROP3_CROSS_TOLERANCE);
    }
    Ok(r)
}

/// Fraction of the sampled spectral energy of `w` at `|ω|` outside
/// `[lo, hi]`.
pub fn spectral_mass_outside(w: &SampledWavelet, lo: f64, hi: f64) -> f64 {
    let g = w.grid();
    let mut buf = w.values().to_vec();
    FftPlanner::new().plan_fft_forward(g.n).process(&mut buf);
    let mut inside = 0.0;
    let mut outside = 0.0;
    for (m, z) in buf.iter().enumerate() {
        let a = g.frequency(m).abs();
        if a >= lo && a <= hi {
            inside += z.norm_sqr();
        } else {
            outside += z.norm_sqr();
        }
    }
    let total = inside + outside;
    if total == 0.0 {
        0.0
    } else {
        outside / total
    }
}
