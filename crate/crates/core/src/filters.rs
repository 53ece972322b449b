//! Orthonormal two-channel filter banks.
//!
//! Lowpass taps for every supported family ship in `data/filters.txt`
//! (one record per family: `name L tap0 ... tapL-1`). The three other
//! filters are derived from the lowpass:
//!
//! ```text
//! hi_d[n] = (-1)^n * lo_d[L-1-n]
//! lo_r[n] = lo_d[L-1-n]
//! hi_r[n] = hi_d[L-1-n]
//! ```

use std::sync::OnceLock;

use crate::metrics::MetricsReport;
use crate::{Error, Result};

/// Tolerance used by [`validate_filter`] for every invariant.
pub const FILTER_TOLERANCE: f64 = 1e-10;

const TABLE: &str = include_str!("../data/filters.txt");

#[derive(Debug, Clone, PartialEq)]
pub struct FilterBank {
    name: String,
    lo_d: Vec<f64>,
    hi_d: Vec<f64>,
    lo_r: Vec<f64>,
    hi_r: Vec<f64>,
}

impl FilterBank {
    /// Builds a bank from an analysis lowpass filter. No orthonormality
    /// check is made here; see [`validate_filter`].
    pub fn from_lowpass(name: impl Into<String>, lo_d: Vec<f64>) -> Result<Self> {
        let hi_d = qmf_highpass(&lo_d)?;
        let lo_r: Vec<f64> = lo_d.iter().rev().copied().collect();
        let hi_r: Vec<f64> = hi_d.iter().rev().copied().collect();
        Ok(Self {
            name: name.into(),
            lo_d,
            hi_d,
            lo_r,
            hi_r,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.lo_d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo_d.is_empty()
    }

    pub fn lo_d(&self) -> &[f64] {
        &self.lo_d
    }

    pub fn hi_d(&self) -> &[f64] {
        &self.hi_d
    }

    pub fn lo_r(&self) -> &[f64] {
        &self.lo_r
    }

    pub fn hi_r(&self) -> &[f64] {
        &self.hi_r
    }
}

/// Quadrature-mirror highpass: `g[n] = (-1)^n * lo[L-1-n]`.
pub fn qmf_highpass(lo: &[f64]) -> Result<Vec<f64>> {
    let len = lo.len();
    if len < 2 || !len.is_multiple_of(2) {
        return Err(Error::FilterLength(len));
    }
    Ok((0..len)
        .map(|n| {
            let v = lo[len - 1 - n];
            if n % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect())
}

fn table() -> &'static [FilterBank] {
    static BANKS: OnceLock<Vec<FilterBank>> = OnceLock::new();
    BANKS.get_or_init(|| parse_table(TABLE).expect("bundled filter table is well-formed"))
}

/// Parses a coefficient table. Blank lines and `#` comments are skipped.
pub fn parse_table(text: &str) -> Result<Vec<FilterBank>> {
    let mut banks = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::FilterTable { line: line_no, msg };
        let mut fields = line.split_whitespace();
        let name = fields.next().ok_or_else(|| bad("missing name".into()))?;
        let len: usize = fields
            .next()
            .ok_or_else(|| bad("missing tap count".into()))?
            .parse()
            .map_err(|e| bad(format!("bad tap count: {e}")))?;
        let taps = fields
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| bad(format!("bad tap `{t}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if taps.len() != len {
            return Err(bad(format!("declared {len} taps, found {}", taps.len())));
        }
        banks.push(FilterBank::from_lowpass(name, taps).map_err(|e| bad(e.to_string()))?);
    }
    Ok(banks)
}

/// Renders banks in the table format, taps at 17 significant digits.
pub fn format_table(banks: &[FilterBank]) -> String {
    let mut out = String::new();
    for fb in banks {
        out.push_str(fb.name());
        out.push(' ');
        out.push_str(&fb.len().to_string());
        for t in fb.lo_d() {
            out.push_str(&format!(" {t:.16e}"));
        }
        out.push('\n');
    }
    out
}

/// Names of every bundled family, in table order.
pub fn supported_names() -> Vec<&'static str> {
    table().iter().map(|fb| fb.name()).collect()
}

pub fn get_filter(name: &str) -> Result<FilterBank> {
    table()
        .iter()
        .find(|fb| fb.name() == name)
        .cloned()
        .ok_or_else(|| Error::UnknownWavelet(name.to_string()))
}

/// Measures every filter-bank invariant; `passed()` on the report is true
/// iff each residual is below [`FILTER_TOLERANCE`].
pub fn validate_filter(fb: &FilterBank) -> MetricsReport {
    let tol = FILTER_TOLERANCE;
    let lo = fb.lo_d();
    let hi = fb.hi_d();
    let len = lo.len();
    let mut report = MetricsReport::new();

    let shape_ok = len >= 2
        && len.is_multiple_of(2)
        && hi.len() == len
        && fb.lo_r().len() == len
        && fb.hi_r().len() == len;
    report.push("length", len as f64, None, Some(shape_ok));

    let lo_sum: f64 = lo.iter().sum();
    report.check(
        "lowpass_sum",
        (lo_sum - std::f64::consts::SQRT_2).abs(),
        tol,
    );
    let hi_sum: f64 = hi.iter().sum();
    report.check("highpass_sum", hi_sum.abs(), tol);

    let shifted_dot = |a: &[f64], b: &[f64], shift: usize| -> f64 {
        a.iter().skip(shift).zip(b).map(|(x, y)| x * y).sum()
    };
    let mut ortho: f64 = 0.0;
    let mut cross: f64 = 0.0;
    for shift in (0..len).step_by(2) {
        let delta = if shift == 0 { 1.0 } else { 0.0 };
        ortho = ortho.max((shifted_dot(lo, lo, shift) - delta).abs());
        ortho = ortho.max((shifted_dot(hi, hi, shift) - delta).abs());
        cross = cross.max(shifted_dot(lo, hi, shift).abs());
        cross = cross.max(shifted_dot(hi, lo, shift).abs());
    }
    report.check("orthonormality", ortho, tol);
    report.check("cross_orthogonality", cross, tol);

    let qmf = match qmf_highpass(lo) {
        Ok(g) if g.len() == hi.len() => max_abs_diff(&g, hi),
        _ => f64::INFINITY,
    };
    report.check("quadrature_mirror", qmf, tol);

    let rev = |v: &[f64]| v.iter().rev().copied().collect::<Vec<_>>();
    let synthesis = if shape_ok {
        max_abs_diff(&rev(lo), fb.lo_r()).max(max_abs_diff(&rev(hi), fb.hi_r()))
    } else {
        f64::INFINITY
    };
    report.check("synthesis_reversal", synthesis, tol);
    report
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn haar_is_analytic() {
        let fb = get_filter("haar").unwrap();
        assert_eq!(fb.lo_d(), &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert_eq!(fb.hi_d(), &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
        let report = validate_filter(&fb);
        assert!(report.passed());
        for e in report.entries().iter().filter(|e| e.tolerance.is_some()) {
            assert!(e.value < 1e-12, "{} = {}", e.name, e.value);
        }
    }

    #[test]
    fn sym4_has_eight_taps() {
        let fb = get_filter("sym4").unwrap();
        assert_eq!(fb.len(), 8);
        let sum: f64 = fb.lo_d().iter().sum();
        assert!((sum - std::f64::consts::SQRT_2).abs() < 1e-10);
        assert!(validate_filter(&fb).passed());
    }

    #[test]
    fn unknown_name_is_reported() {
        let err = get_filter("sym99").unwrap_err();
        assert_eq!(err, Error::UnknownWavelet("sym99".into()));
        assert!(err.to_string().contains("sym99"));
    }

    #[test]
    fn qmf_examples() {
        let h = FRAC_1_SQRT_2;
        assert_eq!(qmf_highpass(&[h, h]).unwrap(), vec![h, -h]);
        assert_eq!(
            qmf_highpass(&[1.0, 2.0, 3.0, 4.0]).unwrap(),
            vec![4.0, -3.0, 2.0, -1.0]
        );
        assert_eq!(qmf_highpass(&[h]), Err(Error::FilterLength(1)));
        assert_eq!(qmf_highpass(&[]), Err(Error::FilterLength(0)));
    }

    #[test]
    fn unnormalized_filter_fails() {
        let fb = FilterBank::from_lowpass("bad", vec![1.0, 1.0]).unwrap();
        let report = validate_filter(&fb);
        assert!(!report.passed());
        let sum = report.get("lowpass_sum").unwrap();
        assert!((sum.value - (2.0 - std::f64::consts::SQRT_2)).abs() < 1e-15);
        assert_eq!(sum.pass, Some(false));
    }

    #[test]
    fn every_bundled_filter_validates() {
        let names = supported_names();
        assert_eq!(names.len(), 1 + 9 + 7);
        for name in names {
            let fb = get_filter(name).unwrap();
            let report = validate_filter(&fb);
            assert!(report.passed(), "{name}:\n{}", report.to_text());
            let g = qmf_highpass(fb.lo_d()).unwrap();
            assert!(max_abs_diff(&g, fb.hi_d()) <= 1e-15);
        }
    }

    #[test]
    fn supported_family_names() {
        for n in 2..=10 {
            assert_eq!(get_filter(&format!("db{n}")).unwrap().len(), 2 * n);
        }
        for n in 2..=8 {
            assert_eq!(get_filter(&format!("sym{n}")).unwrap().len(), 2 * n);
        }
        assert!(get_filter("db1").is_err());
        assert!(get_filter("db11").is_err());
        assert!(get_filter("sym9").is_err());
    }

    #[test]
    fn get_filter_is_pure() {
        let a = get_filter("db7").unwrap();
        let b = get_filter("db7").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn table_round_trips_through_formatter() {
        let banks = parse_table(TABLE).unwrap();
        let again = parse_table(&format_table(&banks)).unwrap();
        assert_eq!(banks, again);
    }

    #[test]
    fn malformed_table_lines() {
        assert!(matches!(
            parse_table("db2 4 1 2 3"),
            Err(Error::FilterTable { line: 1, .. })
        ));
        assert!(matches!(
            parse_table("# c\nx 3 1 2 3"),
            Err(Error::FilterTable { line: 2, .. })
        ));
        assert!(matches!(
            parse_table("x 2 1 nope"),
            Err(Error::FilterTable { line: 1, .. })
        ));
    }
}
