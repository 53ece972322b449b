//! Sampled Meyer functions, their anti-symmetric two-scale fields, and
//! numerical checks of the fields' zero-mean, unit-energy and
//! admissibility properties.
//!
//! All functions live on a uniform periodic grid `t_j = t0 + j·dt`,
//! `j < n`. Samples are produced spectrally, so a grid wider than the
//! essential support gives quadrature sums accurate to rounding.

mod meyer;
mod verify;

pub use meyer::{daughter, meyer_nu, meyer_sample, meyer_spectrum, MeyerKind, MeyerOrigin};
pub use verify::{
    spectral_mass_outside, spectrum_2d, verify_prop1, verify_prop2, verify_prop3, SpectrumField2D,
    PROP1_TOLERANCE, PROP2_TOLERANCE, PROP3_CROSS_TOLERANCE,
};

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::{Error, Parallelism, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub t0: f64,
    pub dt: f64,
    pub n: usize,
}

impl Grid1D {
    pub fn new(t0: f64, dt: f64, n: usize) -> Result<Self> {
        if !t0.is_finite() || !dt.is_finite() || dt <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "grid needs finite t0 and dt > 0, got t0={t0} dt={dt}"
            )));
        }
        if n < 2 {
            return Err(Error::GridTooSmall(format!(
                "need at least 2 points, got {n}"
            )));
        }
        Ok(Self { t0, dt, n })
    }

    /// Grid of `n = 2·half_span/dt` points starting at `-half_span`.
    pub fn symmetric(half_span: f64, dt: f64) -> Result<Self> {
        let n = (2.0 * half_span / dt).round();
        if !(n >= 2.0 && n < u32::MAX as f64) {
            return Err(Error::InvalidArgument(format!(
                "span {half_span} with step {dt} gives no usable grid"
            )));
        }
        Self::new(-half_span, dt, n as usize)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.point(i)).collect()
    }

    /// Period `n·dt` of the sampled functions.
    pub fn period(&self) -> f64 {
        self.n as f64 * self.dt
    }

    /// Angular frequency of DFT bin `m`, in the usual FFT ordering.
    pub fn frequency(&self, m: usize) -> f64 {
        let k = if m < self.n.div_ceil(2) {
            m as f64
        } else {
            m as f64 - self.n as f64
        };
        2.0 * PI * k / self.period()
    }

    pub fn frequency_step(&self) -> f64 {
        2.0 * PI / self.period()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n).map(|m| self.frequency(m)).collect()
    }
}

/// Samples of a scaling function or wavelet on a [`Grid1D`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledWavelet {
    grid: Grid1D,
    values: Vec<Complex64>,
    origin: Option<MeyerOrigin>,
}

impl SampledWavelet {
    /// Wraps arbitrary samples. Daughters of such a function are obtained by
    /// band-limited interpolation.
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        check_values(&values, grid.n, "samples")?;
        Ok(Self {
            grid,
            values,
            origin: None,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// The analytic Meyer function these samples represent, if known.
    pub fn origin(&self) -> Option<MeyerOrigin> {
        self.origin
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    /// `Σ values·dt`.
    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() * self.grid.dt
    }

    /// `Σ |values|²·dt`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(Complex64::norm_sqr).sum::<f64>() * self.grid.dt
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DaughterParams {
    pub a: f64,
    pub b: f64,
}

impl DaughterParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a == 0.0 {
            return Err(Error::ZeroScale);
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "daughter parameters must be finite, got a={a} b={b}"
            )));
        }
        Ok(Self { a, b })
    }
}

/// How a field was built, kept so the admissibility check can compare
/// against the analytic spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldOrigin {
    /// `(ψ₁*(x)ψ₂(y) - ψ₂(x)ψ₁*(y))/√2`.
    Hh {
        first: MeyerOrigin,
        second: MeyerOrigin,
    },
}

/// Square complex field `values[i·n + j] = f(x_i, y_j)` over one grid
/// shared by both axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField2D {
    grid: Grid1D,
    values: Vec<Complex64>,
    origin: Option<FieldOrigin>,
}

impl SampledField2D {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        let n = grid.n;
        check_values(
            &values,
            n.checked_mul(n)
                .ok_or_else(|| Error::GridTooSmall("grid too large".into()))?,
            "field values",
        )?;
        Ok(Self {
            grid,
            values,
            origin: None,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn origin(&self) -> Option<FieldOrigin> {
        self.origin
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.grid.n + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |f(x, y) + f(y, x)|` over the grid.
    pub fn antisymmetry_residual(&self) -> f64 {
        self.pair_residual(|a, b| (a + b).norm())
    }

    /// `max |f(x, y) - f(y, x)|` over the grid.
    pub fn symmetry_residual(&self) -> f64 {
        self.pair_residual(|a, b| (a - b).norm())
    }

    fn pair_residual(&self, f: impl Fn(Complex64, Complex64) -> f64) -> f64 {
        let n = self.grid.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max(f(self.get(i, j), self.get(j, i)));
            }
        }
        worst
    }

    /// Multiplies every value by `c`. The result no longer has an origin.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|z| z * c).collect(),
            origin: None,
        }
    }

    /// Adds `c` to every value. The result no longer has an origin.
    pub fn offset(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            values: self.values.iter().map(|z| z + c).collect(),
            origin: None,
        }
    }
}

fn check_values(values: &[Complex64], expected: usize, what: &str) -> Result<()> {
    if values.len() != expected {
        return Err(Error::ShapeMismatch(format!(
            "expected {expected} {what}, got {}",
            values.len()
        )));
    }
    if !values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidArgument(format!("{what} must be finite")));
    }
    Ok(())
}

fn check_same_grid(a: &Grid1D, b: &Grid1D) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch(format!("{a:?} vs {b:?}")));
    }
    Ok(())
}

/// `Σ u·v*·dt`.
pub fn inner_product(u: &SampledWavelet, v: &SampledWavelet) -> Result<Complex64> {
    check_same_grid(&u.grid, &v.grid)?;
    let s: Complex64 = u
        .values
        .iter()
        .zip(&v.values)
        .map(|(x, y)| x * y.conj())
        .sum();
    Ok(s * u.grid.dt)
}

/// `⟨ψ_{p1}, ψ_{p2}⟩` with both daughters sampled on the grid of `w`.
pub fn inner_product_daughters(
    w: &SampledWavelet,
    p1: DaughterParams,
    p2: DaughterParams,
) -> Result<Complex64> {
    let d1 = daughter(w, p1, &w.grid)?;
    let d2 = daughter(w, p2, &w.grid)?;
    inner_product(&d1, &d2)
}

fn outer_field(
    grid: Grid1D,
    par: Parallelism,
    f: impl Fn(usize, usize) -> Complex64 + Sync + Send,
) -> Vec<Complex64> {
    let n = grid.n;
    let mut values = vec![Complex64::new(0.0, 0.0); n * n];
    par.for_each_chunk_mut(&mut values, n, |i, row| {
        for (j, v) in row.iter_mut().enumerate() {
            *v = f(i, j);
        }
    });
    values
}

/// Anti-symmetric two-scale field
/// `(ψ*_{a1,b}(x)·ψ_{a2,b}(y) - ψ_{a2,b}(x)·ψ*_{a1,b}(y)) / √2`.
///
/// Identically zero for a real wavelet with `a1 = a2`.
pub fn orbital_field_hh(
    w: &SampledWavelet,
    a1: f64,
    a2: f64,
    b: f64,
    grid: &Grid1D,
) -> Result<SampledField2D> {
    orbital_field_hh_with(w, a1, a2, b, grid, Parallelism::default())
}

pub fn orbital_field_hh_with(
    w: &SampledWavelet,
    a1: f64,
    a2: f64,
    b: f64,
    grid: &Grid1D,
    par: Parallelism,
) -> Result<SampledField2D> {
    let d1 = daughter(w, DaughterParams::new(a1, b)?, grid)?;
    let d2 = daughter(w, DaughterParams::new(a2, b)?, grid)?;
    let (p, q) = (&d1.values, &d2.values);
    let values = outer_field(*grid, par, |i, j| {
        (p[i].conj() * q[j] - q[i] * p[j].conj()) * FRAC_1_SQRT_2
    });
    let origin = match (d1.origin, d2.origin) {
        (Some(first), Some(second)) => Some(FieldOrigin::Hh { first, second }),
        _ => None,
    };
    Ok(SampledField2D {
        grid: *grid,
        values,
        origin,
    })
}

/// `(φ(x)·ψ(y) - ψ(x)·φ(y)) / √2`.
pub fn orbital_field_lh(phi: &SampledWavelet, psi: &SampledWavelet) -> Result<SampledField2D> {
    check_same_grid(&phi.grid, &psi.grid)?;
    let (p, q) = (&phi.values, &psi.values);
    let values = outer_field(phi.grid, Parallelism::default(), |i, j| {
        (p[i] * q[j] - q[i] * p[j]) * FRAC_1_SQRT_2
    });
    Ok(SampledField2D {
        grid: phi.grid,
        values,
        origin: None,
    })
}

/// `(φ*(x)·φ(y) + φ*(y)·φ(x)) / √2`, which is `√2·φ(x)·φ(y)` for real φ.
pub fn orbital_field_ll(phi: &SampledWavelet) -> Result<SampledField2D> {
    let p = &phi.values;
    let values = outer_field(phi.grid, Parallelism::default(), |i, j| {
        (p[i].conj() * p[j] + p[j].conj() * p[i]) * FRAC_1_SQRT_2
    });
    Ok(SampledField2D {
        grid: phi.grid,
        values,
        origin: None,
    })
}
