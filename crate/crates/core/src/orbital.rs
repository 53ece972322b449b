//! Orbital recombination of detail subbands.
//!
//! Each level's `(lh, hl)` pair is rotated by 45 degrees into an
//! anti-symmetric channel `a_hat = (lh - hl)/√2` and a symmetric channel
//! `s_hat = (lh + hl)/√2`. The rotation is orthonormal, so energy is
//! preserved coefficientwise and the inverse is the transpose.
//! `ll` and `hh` pass through unchanged.
//!
//! Swapping `lh` and `hl` negates `a_hat` and leaves `s_hat` fixed, the
//! discrete counterpart of a function that changes sign when its two
//! arguments are exchanged.

use std::f64::consts::SQRT_2;

use crate::dwt::{self, DetailBands, Pyramid, SubbandSet};
use crate::filters::FilterBank;
use crate::{Error, Image, Matrix, Parallelism, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitalSubbandSet {
    pub ll_hat: Matrix,
    pub a_hat: Matrix,
    pub s_hat: Matrix,
    pub hh_hat: Matrix,
}

impl OrbitalSubbandSet {
    pub fn check_shape(&self) -> Result<()> {
        let s = self.ll_hat.shape();
        for (name, m) in [
            ("a_hat", &self.a_hat),
            ("s_hat", &self.s_hat),
            ("hh_hat", &self.hh_hat),
        ] {
            if m.shape() != s {
                return Err(Error::ShapeMismatch(format!(
                    "{name} is {}x{}, ll_hat is {}x{}",
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
        self.ll_hat.energy() + self.a_hat.energy() + self.s_hat.energy() + self.hh_hat.energy()
    }
}

/// Rotated detail bands of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitalDetailBands {
    pub a_hat: Matrix,
    pub s_hat: Matrix,
    pub hh: Matrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitalPyramid {
    pub approx: Matrix,
    pub details: Vec<OrbitalDetailBands>,
}

impl OrbitalPyramid {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn image_shape(&self) -> (usize, usize) {
        let scale = 1usize << self.levels();
        (self.approx.rows() * scale, self.approx.cols() * scale)
    }

    pub fn energy(&self) -> f64 {
        self.approx.energy()
            + self
                .details
                .iter()
                .map(|d| d.a_hat.energy() + d.s_hat.energy() + d.hh.energy())
                .sum::<f64>()
    }
}

fn rotate(lh: &Matrix, hl: &Matrix) -> Result<(Matrix, Matrix)> {
    let a_hat = lh.zip_map(hl, |p, q| (p - q) / SQRT_2)?;
    let s_hat = lh.zip_map(hl, |p, q| (p + q) / SQRT_2)?;
    Ok((a_hat, s_hat))
}

fn unrotate(a_hat: &Matrix, s_hat: &Matrix) -> Result<(Matrix, Matrix)> {
    let lh = s_hat.zip_map(a_hat, |s, a| (s + a) / SQRT_2)?;
    let hl = s_hat.zip_map(a_hat, |s, a| (s - a) / SQRT_2)?;
    Ok((lh, hl))
}

pub fn orbitalize(sb: &SubbandSet) -> Result<OrbitalSubbandSet> {
    sb.check_shape()?;
    let (a_hat, s_hat) = rotate(&sb.lh, &sb.hl)?;
    Ok(OrbitalSubbandSet {
        ll_hat: sb.ll.clone(),
        a_hat,
        s_hat,
        hh_hat: sb.hh.clone(),
    })
}

pub fn deorbitalize(osb: &OrbitalSubbandSet) -> Result<SubbandSet> {
    osb.check_shape()?;
    let (lh, hl) = unrotate(&osb.a_hat, &osb.s_hat)?;
    Ok(SubbandSet {
        ll: osb.ll_hat.clone(),
        lh,
        hl,
        hh: osb.hh_hat.clone(),
    })
}

fn orbitalize_details(d: &DetailBands) -> Result<OrbitalDetailBands> {
    let (a_hat, s_hat) = rotate(&d.lh, &d.hl)?;
    Ok(OrbitalDetailBands {
        a_hat,
        s_hat,
        hh: d.hh.clone(),
    })
}

/// Applies the rotation to every level of a standard pyramid.
pub fn orbitalize_pyramid(p: &Pyramid) -> Result<OrbitalPyramid> {
    p.validate()?;
    Ok(OrbitalPyramid {
        approx: p.approx.clone(),
        details: p
            .details
            .iter()
            .map(orbitalize_details)
            .collect::<Result<_>>()?,
    })
}

pub fn deorbitalize_pyramid(op: &OrbitalPyramid) -> Result<Pyramid> {
    let details = op
        .details
        .iter()
        .map(|d| {
            if d.hh.shape() != d.a_hat.shape() {
                return Err(Error::Structure("hh and a_hat shapes differ".into()));
            }
            let (lh, hl) =
                unrotate(&d.a_hat, &d.s_hat).map_err(|e| Error::Structure(e.to_string()))?;
            Ok(DetailBands {
                lh,
                hl,
                hh: d.hh.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let p = Pyramid {
        approx: op.approx.clone(),
        details,
    };
    p.validate()?;
    Ok(p)
}

pub fn orbital_decompose(img: &Image, fb: &FilterBank, levels: usize) -> Result<OrbitalPyramid> {
    orbital_decompose_with(img, fb, levels, Parallelism::default())
}

pub fn orbital_decompose_with(
    img: &Image,
    fb: &FilterBank,
    levels: usize,
    par: Parallelism,
) -> Result<OrbitalPyramid> {
    orbitalize_pyramid(&dwt::decompose_with(img, fb, levels, par)?)
}

pub fn orbital_reconstruct(op: &OrbitalPyramid, fb: &FilterBank) -> Result<Image> {
    orbital_reconstruct_with(op, fb, Parallelism::default())
}

pub fn orbital_reconstruct_with(
    op: &OrbitalPyramid,
    fb: &FilterBank,
    par: Parallelism,
) -> Result<Image> {
    dwt::reconstruct_with(&deorbitalize_pyramid(op)?, fb, par)
}
