//! Binary coefficient and field containers.
//!
//! Coefficient file (`OWC1` standard, `OWO1` orbital), all integers and
//! floats little-endian:
//!
//! ```text
//! magic     4 bytes
//! rows      u32    image rows
//! cols      u32    image cols
//! levels    u32
//! name_len  u8
//! name      name_len bytes, ASCII filter name
//! bands     f64 * (rows * cols), in scan order:
//!           deepest ll, then per level from deepest to finest the three
//!           detail bands (lh, hl, hh | a_hat, s_hat, hh), each row-major
//! ```
//!
//! Field file (`OWF1`): magic, `t0: f64`, `dt: f64`, `n: u32`, then `n * n`
//! complex samples as interleaved `(re, im)` f64 pairs, row-major.

use num_complex::Complex64;

use crate::continuous::{Grid1D, SampledField2D};
use crate::decomposition::{AnyPyramid, Decomposition};
use crate::dwt::{check_divisible, DetailBands, Pyramid};
use crate::orbital::{OrbitalDetailBands, OrbitalPyramid};
use crate::{Error, Matrix, Result};

pub const COEFF_MAGIC_STANDARD: &[u8; 4] = b"OWC1";
pub const COEFF_MAGIC_ORBITAL: &[u8; 4] = b"OWO1";
pub const FIELD_MAGIC: &[u8; 4] = b"OWF1";

/// A decoded coefficient container.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFile {
    pub filter: String,
    pub pyramid: AnyPyramid,
}

pub fn write_coefficients<D: Decomposition + ?Sized>(p: &D, filter: &str) -> Result<Vec<u8>> {
    let name = filter.as_bytes();
    if name.len() > u8::MAX as usize || !filter.is_ascii() {
        return Err(Error::InvalidArgument(format!(
            "filter name `{filter}` must be ASCII and at most 255 bytes"
        )));
    }
    let (rows, cols) = p.image_shape();
    let to_u32 = |v: usize, what: &str| {
        u32::try_from(v).map_err(|_| Error::InvalidArgument(format!("{what} {v} exceeds u32")))
    };
    let magic = match p.scheme() {
        crate::Scheme::Standard => COEFF_MAGIC_STANDARD,
        crate::Scheme::Orbital => COEFF_MAGIC_ORBITAL,
    };
    let mut out = Vec::with_capacity(17 + name.len() + rows * cols * 8);
    out.extend_from_slice(magic);
    out.extend_from_slice(&to_u32(rows, "rows")?.to_le_bytes());
    out.extend_from_slice(&to_u32(cols, "cols")?.to_le_bytes());
    out.extend_from_slice(&to_u32(p.levels(), "levels")?.to_le_bytes());
    out.push(name.len() as u8);
    out.extend_from_slice(name);
    for band in p.bands() {
        for v in band.matrix.as_slice() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    Ok(out)
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let available = self.bytes.len() - self.pos;
        if available < n {
            return Err(Error::TruncatedData {
                offset: self.bytes.len(),
                expected: n - available,
            });
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }

    fn f64(&mut self) -> Result<f64> {
        let at = self.pos;
        let v = f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes"));
        if !v.is_finite() {
            return Err(Error::MalformedHeader {
                offset: at,
                msg: "non-finite value".into(),
            });
        }
        Ok(v)
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            data.push(self.f64()?);
        }
        Matrix::from_vec(rows, cols, data)
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.bytes.len() {
            return Err(Error::MalformedHeader {
                offset: self.pos,
                msg: format!("{} trailing bytes", self.bytes.len() - self.pos),
            });
        }
        Ok(())
    }
}

pub fn read_coefficients(bytes: &[u8]) -> Result<CoefficientFile> {
    let mut rd = Reader { bytes, pos: 0 };
    let magic = rd.take(4).map_err(|_| Error::MalformedHeader {
        offset: 0,
        msg: "missing magic".into(),
    })?;
    let orbital = match magic {
        m if m == COEFF_MAGIC_STANDARD => false,
        m if m == COEFF_MAGIC_ORBITAL => true,
        other => {
            return Err(Error::UnsupportedFormat {
                offset: 0,
                magic: String::from_utf8_lossy(other).into_owned(),
            })
        }
    };
    let rows = rd.u32()? as usize;
    let cols = rd.u32()? as usize;
    let levels_at = rd.pos;
    let levels = rd.u32()? as usize;
    if rows == 0 || cols == 0 {
        return Err(Error::MalformedHeader {
            offset: 4,
            msg: format!("empty image {rows}x{cols}"),
        });
    }
    check_divisible(rows, cols, levels).map_err(|e| Error::MalformedHeader {
        offset: levels_at,
        msg: e.to_string(),
    })?;
    let name_len = rd.take(1)?[0] as usize;
    let name_at = rd.pos;
    let name = std::str::from_utf8(rd.take(name_len)?)
        .ok()
        .filter(|s| s.is_ascii())
        .ok_or_else(|| Error::MalformedHeader {
            offset: name_at,
            msg: "filter name is not ASCII".into(),
        })?
        .to_string();

    let (mut r, mut c) = (rows >> levels, cols >> levels);
    let approx = rd.matrix(r, c)?;
    let mut bands = Vec::with_capacity(levels);
    for _ in 0..levels {
        bands.push([rd.matrix(r, c)?, rd.matrix(r, c)?, rd.matrix(r, c)?]);
        r *= 2;
        c *= 2;
    }
    rd.finish()?;
    // stored deepest first
    bands.reverse();
    let pyramid = if orbital {
        AnyPyramid::Orbital(OrbitalPyramid {
            approx,
            details: bands
                .into_iter()
                .map(|[a_hat, s_hat, hh]| OrbitalDetailBands { a_hat, s_hat, hh })
                .collect(),
        })
    } else {
        AnyPyramid::Standard(Pyramid {
            approx,
            details: bands
                .into_iter()
                .map(|[lh, hl, hh]| DetailBands { lh, hl, hh })
                .collect(),
        })
    };
    Ok(CoefficientFile {
        filter: name,
        pyramid,
    })
}

pub fn write_field(field: &SampledField2D) -> Result<Vec<u8>> {
    let g = field.grid();
    let n = u32::try_from(g.n)
        .map_err(|_| Error::InvalidArgument(format!("grid size {} exceeds u32", g.n)))?;
    let mut out = Vec::with_capacity(24 + field.values().len() * 16);
    out.extend_from_slice(FIELD_MAGIC);
    out.extend_from_slice(&g.t0.to_le_bytes());
    out.extend_from_slice(&g.dt.to_le_bytes());
    out.extend_from_slice(&n.to_le_bytes());
    for z in field.values() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    Ok(out)
}

pub fn read_field(bytes: &[u8]) -> Result<SampledField2D> {
    let mut rd = Reader { bytes, pos: 0 };
    let magic = rd.take(4).map_err(|_| Error::MalformedHeader {
        offset: 0,
        msg: "missing magic".into(),
    })?;
    if magic != FIELD_MAGIC {
        return Err(Error::UnsupportedFormat {
            offset: 0,
            magic: String::from_utf8_lossy(magic).into_owned(),
        });
    }
    let t0 = rd.f64()?;
    let dt_at = rd.pos;
    let dt = rd.f64()?;
    let n = rd.u32()? as usize;
    let grid = Grid1D::new(t0, dt, n).map_err(|e| Error::MalformedHeader {
        offset: dt_at,
        msg: e.to_string(),
    })?;
    let count = n.checked_mul(n).ok_or_else(|| Error::MalformedHeader {
        offset: dt_at + 8,
        msg: "grid size overflows".into(),
    })?;
    if (bytes.len() - rd.pos) / 16 < count {
        return Err(Error::TruncatedData {
            offset: bytes.len(),
            expected: count * 16 - (bytes.len() - rd.pos),
        });
    }
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        let re = rd.f64()?;
        let im = rd.f64()?;
        values.push(Complex64::new(re, im));
    }
    rd.finish()?;
    SampledField2D::new(grid, values)
}
