//! Named numeric checks, subband energies, PSNR and energy-compaction
//! curves for comparing the standard and orbital decompositions.

use std::fmt::Write as _;

use crate::decomposition::Decomposition;
use crate::filters::FilterBank;
use crate::imageio::quantize;
use crate::{Error, Image, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct MetricEntry {
    pub name: String,
    pub value: f64,
    pub tolerance: Option<f64>,
    pub pass: Option<bool>,
}

/// Ordered list of named values. Names are unique within a report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricsReport {
    entries: Vec<MetricEntry>,
}

impl MetricsReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends an entry. Panics if `name` is already present.
    pub fn push(
        &mut self,
        name: impl Into<String>,
        value: f64,
        tolerance: Option<f64>,
        pass: Option<bool>,
    ) {
        let name = name.into();
        assert!(self.get(&name).is_none(), "duplicate report entry `{name}`");
        self.entries.push(MetricEntry {
            name,
            value,
            tolerance,
            pass,
        });
    }

    /// Appends a residual that passes iff `value < tolerance` (NaN fails).
    pub fn check(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        self.push(name, value, Some(tolerance), Some(value < tolerance));
    }

    /// Appends a value with no pass/fail judgement.
    pub fn record(&mut self, name: impl Into<String>, value: f64) {
        self.push(name, value, None, None);
    }

    /// Appends every entry of `other` unchanged.
    pub fn extend(&mut self, other: MetricsReport) {
        for e in other.entries {
            self.push(e.name, e.value, e.tolerance, e.pass);
        }
    }

    /// Appends every entry of `other` with `prefix.` prepended to its name.
    pub fn extend_prefixed(&mut self, prefix: &str, other: MetricsReport) {
        for e in other.entries {
            self.push(format!("{prefix}.{}", e.name), e.value, e.tolerance, e.pass);
        }
    }

    pub fn entries(&self) -> &[MetricEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&MetricEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// True iff no entry carries `pass = false`.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass != Some(false))
    }

    pub fn failures(&self) -> impl Iterator<Item = &MetricEntry> {
        self.entries.iter().filter(|e| e.pass == Some(false))
    }

    /// One `name=value tol=... pass=...` line per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let tol = e.tolerance.map_or_else(|| "none".to_string(), fmt_num);
            let pass = e.pass.map_or("none", |p| if p { "true" } else { "false" });
            let _ = writeln!(out, "{}={} tol={tol} pass={pass}", e.name, fmt_num(e.value));
        }
        out
    }

    /// `name,value,tolerance,pass` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,value,tolerance,pass\n");
        for e in &self.entries {
            let tol = e.tolerance.map_or_else(String::new, fmt_num);
            let pass = e.pass.map_or("", |p| if p { "true" } else { "false" });
            let _ = writeln!(out, "{},{},{tol},{pass}", e.name, fmt_num(e.value));
        }
        out
    }
}

/// Shortest round-trip scientific notation; `inf`/`-inf`/`NaN` spelled out.
pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// One entry per band (`L{level}.{band}`, deepest level first, the coarse
/// approximation under the deepest level) followed by `total`, summed in
/// entry order.
pub fn subband_energy<D: Decomposition + ?Sized>(p: &D) -> MetricsReport {
    let mut report = MetricsReport::new();
    let mut total = 0.0;
    for band in p.bands() {
        let e = band.matrix.energy();
        total += e;
        report.record(band.label(), e);
    }
    report.record("total", total);
    report
}

/// Peak signal-to-noise ratio against peak 255, in dB. Identical images give
/// `f64::INFINITY`.
pub fn psnr(a: &Image, b: &Image) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let sse: f64 = a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    if sse == 0.0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse / a.len() as f64;
    Ok(20.0 * (255.0 / mse.sqrt()).log10())
}

/// Number of coefficients kept for a fraction of `total`.
pub fn kept_count(fraction: f64, total: usize) -> usize {
    ((fraction * total as f64).ceil() as usize).min(total)
}

/// Zeroes all but the `keep` largest-magnitude coefficients. Ties at the
/// threshold keep the coefficient that comes first in scan order
/// (coarse to fine, row-major).
pub fn threshold_largest<D: Decomposition + Clone>(p: &D, keep: usize) -> D {
    let coeffs: Vec<f64> = p
        .bands()
        .iter()
        .flat_map(|b| b.matrix.as_slice().iter().copied())
        .collect();
    let mut order: Vec<usize> = (0..coeffs.len()).collect();
    // stable sort: equal magnitudes stay in scan order
    order.sort_by(|&i, &j| coeffs[j].abs().total_cmp(&coeffs[i].abs()));
    let mut kept = vec![false; coeffs.len()];
    for &i in order.iter().take(keep) {
        kept[i] = true;
    }
    let mut out = p.clone();
    let mut idx = 0;
    out.for_each_band_mut(|m| {
        for v in m.as_mut_slice() {
            if !kept[idx] {
                *v = 0.0;
            }
            idx += 1;
        }
    });
    out
}

/// PSNR after global magnitude thresholding, for each kept fraction.
///
/// Reconstructions are rounded to 8-bit pixels before comparison against
/// the rounded full reconstruction, so keeping everything reports
/// `f64::INFINITY`.
pub fn compaction_curve<D: Decomposition + Clone>(
    p: &D,
    fb: &FilterBank,
    keep_fractions: &[f64],
) -> Result<MetricsReport> {
    if keep_fractions.is_empty() {
        return Err(Error::InvalidArgument("empty keep-fraction list".into()));
    }
    for w in keep_fractions.windows(2) {
        if w[0] > w[1] {
            return Err(Error::InvalidArgument(format!(
                "keep fractions must be sorted ascending ({} > {})",
                w[0], w[1]
            )));
        }
    }
    if let Some(f) = keep_fractions.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
        return Err(Error::InvalidArgument(format!(
            "keep fraction {f} outside (0, 1]"
        )));
    }
    let reference = quantize(&p.reconstruct_image(fb)?).to_image();
    let total = p.coefficient_count();
    let mut report = MetricsReport::new();
    for &f in keep_fractions {
        let thresholded = threshold_largest(p, kept_count(f, total));
        let approx = quantize(&thresholded.reconstruct_image(fb)?).to_image();
        report.record(format!("psnr@{f}"), psnr(&reference, &approx)?);
    }
    Ok(report)
}
