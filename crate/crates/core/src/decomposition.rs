//! A common view over standard and orbital pyramids.

use std::fmt;
use std::str::FromStr;

use crate::dwt::{self, Pyramid};
use crate::filters::FilterBank;
use crate::orbital::{self, OrbitalPyramid};
use crate::{Error, Image, Matrix, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    Standard,
    Orbital,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Standard => "standard",
            Scheme::Orbital => "orbital",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Scheme::Standard),
            "orbital" => Ok(Scheme::Orbital),
            other => Err(Error::InvalidArgument(format!("unknown scheme `{other}`"))),
        }
    }
}

/// A named coefficient band in scan order.
#[derive(Debug, Clone, Copy)]
pub struct Band<'a> {
    /// 1-based level, 1 being the finest.
    pub level: usize,
    pub name: &'static str,
    pub matrix: &'a Matrix,
}

impl Band<'_> {
    pub fn label(&self) -> String {
        format!("L{}.{}", self.level, self.name)
    }

    pub fn is_approx(&self) -> bool {
        self.name == "ll"
    }
}

/// Shared structure of [`Pyramid`] and [`OrbitalPyramid`]: one coarse
/// approximation plus three detail bands per level.
pub trait Decomposition {
    fn scheme(&self) -> Scheme;
    fn levels(&self) -> usize;
    fn approx(&self) -> &Matrix;
    /// Detail bands of `level` (0 = finest), in storage order.
    fn detail_bands(&self, level: usize) -> [&Matrix; 3];
    fn for_each_band_mut(&mut self, f: impl FnMut(&mut Matrix))
    where
        Self: Sized;
    fn reconstruct_image(&self, fb: &FilterBank) -> Result<Image>;

    fn detail_names(&self) -> [&'static str; 3] {
        match self.scheme() {
            Scheme::Standard => ["lh", "hl", "hh"],
            Scheme::Orbital => ["a_hat", "s_hat", "hh"],
        }
    }

    fn image_shape(&self) -> (usize, usize) {
        let scale = 1usize << self.levels();
        (self.approx().rows() * scale, self.approx().cols() * scale)
    }

    /// Bands coarse to fine: the deepest `ll`, then each level's three
    /// detail bands from the deepest level up to level 1.
    fn bands(&self) -> Vec<Band<'_>> {
        let levels = self.levels();
        let mut out = vec![Band {
            level: levels,
            name: "ll",
            matrix: self.approx(),
        }];
        let names = self.detail_names();
        for j in (0..levels).rev() {
            for (name, matrix) in names.into_iter().zip(self.detail_bands(j)) {
                out.push(Band {
                    level: j + 1,
                    name,
                    matrix,
                });
            }
        }
        out
    }

    fn coefficient_count(&self) -> usize {
        self.bands().iter().map(|b| b.matrix.len()).sum()
    }

    fn energy(&self) -> f64 {
        self.bands().iter().map(|b| b.matrix.energy()).sum()
    }
}

impl Decomposition for Pyramid {
    fn scheme(&self) -> Scheme {
        Scheme::Standard
    }

    fn levels(&self) -> usize {
        self.details.len()
    }

    fn approx(&self) -> &Matrix {
        &self.approx
    }

    fn detail_bands(&self, level: usize) -> [&Matrix; 3] {
        let d = &self.details[level];
        [&d.lh, &d.hl, &d.hh]
    }

    fn for_each_band_mut(&mut self, mut f: impl FnMut(&mut Matrix)) {
        f(&mut self.approx);
        for d in self.details.iter_mut().rev() {
            f(&mut d.lh);
            f(&mut d.hl);
            f(&mut d.hh);
        }
    }

    fn reconstruct_image(&self, fb: &FilterBank) -> Result<Image> {
        dwt::reconstruct(self, fb)
    }
}

impl Decomposition for OrbitalPyramid {
    fn scheme(&self) -> Scheme {
        Scheme::Orbital
    }

    fn levels(&self) -> usize {
        self.details.len()
    }

    fn approx(&self) -> &Matrix {
        &self.approx
    }

    fn detail_bands(&self, level: usize) -> [&Matrix; 3] {
        let d = &self.details[level];
        [&d.a_hat, &d.s_hat, &d.hh]
    }

    fn for_each_band_mut(&mut self, mut f: impl FnMut(&mut Matrix)) {
        f(&mut self.approx);
        for d in self.details.iter_mut().rev() {
            f(&mut d.a_hat);
            f(&mut d.s_hat);
            f(&mut d.hh);
        }
    }

    fn reconstruct_image(&self, fb: &FilterBank) -> Result<Image> {
        orbital::orbital_reconstruct(self, fb)
    }
}

/// Either kind of pyramid, as read back from a coefficient container.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPyramid {
    Standard(Pyramid),
    Orbital(OrbitalPyramid),
}

impl AnyPyramid {
    pub fn decompose(img: &Image, fb: &FilterBank, levels: usize, scheme: Scheme) -> Result<Self> {
        Ok(match scheme {
            Scheme::Standard => AnyPyramid::Standard(dwt::decompose(img, fb, levels)?),
            Scheme::Orbital => AnyPyramid::Orbital(orbital::orbital_decompose(img, fb, levels)?),
        })
    }

    fn inner(&self) -> &dyn DynView {
        match self {
            AnyPyramid::Standard(p) => p,
            AnyPyramid::Orbital(p) => p,
        }
    }
}

// object-safe subset used for delegation
trait DynView {
    fn scheme(&self) -> Scheme;
    fn levels(&self) -> usize;
    fn approx(&self) -> &Matrix;
    fn detail_bands(&self, level: usize) -> [&Matrix; 3];
    fn reconstruct_image(&self, fb: &FilterBank) -> Result<Image>;
}

impl<T: Decomposition> DynView for T {
    fn scheme(&self) -> Scheme {
        Decomposition::scheme(self)
    }
    fn levels(&self) -> usize {
        Decomposition::levels(self)
    }
    fn approx(&self) -> &Matrix {
        Decomposition::approx(self)
    }
    fn detail_bands(&self, level: usize) -> [&Matrix; 3] {
        Decomposition::detail_bands(self, level)
    }
    fn reconstruct_image(&self, fb: &FilterBank) -> Result<Image> {
        Decomposition::reconstruct_image(self, fb)
    }
}

impl Decomposition for AnyPyramid {
    fn scheme(&self) -> Scheme {
        self.inner().scheme()
    }

    fn levels(&self) -> usize {
        self.inner().levels()
    }

    fn approx(&self) -> &Matrix {
        self.inner().approx()
    }

    fn detail_bands(&self, level: usize) -> [&Matrix; 3] {
        self.inner().detail_bands(level)
    }

    fn for_each_band_mut(&mut self, f: impl FnMut(&mut Matrix)) {
        match self {
            AnyPyramid::Standard(p) => p.for_each_band_mut(f),
            AnyPyramid::Orbital(p) => p.for_each_band_mut(f),
        }
    }

    fn reconstruct_image(&self, fb: &FilterBank) -> Result<Image> {
        self.inner().reconstruct_image(fb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::get_filter;

    #[test]
    fn scan_order_is_coarse_to_fine() {
        let fb = get_filter("haar").unwrap();
        let p = dwt::decompose(&Matrix::zeros(8, 8), &fb, 2).unwrap();
        let labels: Vec<String> = p.bands().iter().map(Band::label).collect();
        assert_eq!(
            labels,
            ["L2.ll", "L2.lh", "L2.hl", "L2.hh", "L1.lh", "L1.hl", "L1.hh"]
        );
        let op = orbital::orbitalize_pyramid(&p).unwrap();
        let labels: Vec<String> = op.bands().iter().map(Band::label).collect();
        assert_eq!(
            labels,
            ["L2.ll", "L2.a_hat", "L2.s_hat", "L2.hh", "L1.a_hat", "L1.s_hat", "L1.hh"]
        );
        assert_eq!(op.coefficient_count(), 64);
    }

    #[test]
    fn mutation_visits_in_scan_order() {
        let fb = get_filter("haar").unwrap();
        let mut p = dwt::decompose(&Matrix::zeros(4, 4), &fb, 2).unwrap();
        let mut k = 0.0;
        p.for_each_band_mut(|m| {
            for v in m.as_mut_slice() {
                *v = k;
                k += 1.0;
            }
        });
        let flat: Vec<f64> = p
            .bands()
            .iter()
            .flat_map(|b| b.matrix.as_slice().to_vec())
            .collect();
        assert_eq!(flat, (0..16).map(f64::from).collect::<Vec<_>>());
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("orbital".parse::<Scheme>().unwrap(), Scheme::Orbital);
        assert_eq!(Scheme::Standard.to_string(), "standard");
        assert!("other".parse::<Scheme>().is_err());
    }
}
