use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::cmatrix::CMatrix;
use super::roots::{roots_with, RootOptions};
use super::Character;
use crate::error::{Error, Result};
use crate::lpmat::{char_poly, LaurentMatrix, UPoly};

/// Numerical tolerances shared by the spectral routines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Root residual relative to `1 + max|c_i|`.
    pub root_residual: f64,
    /// Relative agreement between root-based and power-based spectral radii.
    pub cross_check: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { root_residual: 1e-10, cross_check: 1e-6 }
    }
}

/// Something with a spectrum at every character: a Laurent matrix (kept
/// with its exact characteristic polynomial) or a bare `u`-polynomial.
#[derive(Clone, Debug)]
pub enum SpectralObject {
    Matrix { matrix: LaurentMatrix, charpoly: UPoly },
    Poly(UPoly),
}

impl SpectralObject {
    pub fn from_matrix(matrix: LaurentMatrix) -> Result<Self> {
        let charpoly = char_poly(&matrix)?;
        Ok(SpectralObject::Matrix { matrix, charpoly })
    }

    pub fn from_upoly(p: UPoly) -> Result<Self> {
        if p.degree().is_none_or(|d| d == 0) {
            return Err(Error::DegenerateDegree);
        }
        Ok(SpectralObject::Poly(p))
    }

    pub fn num_vars(&self) -> usize {
        self.polynomial().num_vars()
    }

    pub fn polynomial(&self) -> &UPoly {
        match self {
            SpectralObject::Matrix { charpoly, .. } => charpoly,
            SpectralObject::Poly(p) => p,
        }
    }

    pub fn matrix(&self) -> Option<&LaurentMatrix> {
        match self {
            SpectralObject::Matrix { matrix, .. } => Some(matrix),
            SpectralObject::Poly(_) => None,
        }
    }
}

/// Spectrum of an object at one character.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub character: Character,
    /// Roots of the specialized polynomial, by descending modulus.
    pub eigenvalues: Vec<Complex64>,
    pub eigenvalue_moduli: Vec<f64>,
    pub rho: f64,
    /// `rho` minus the second-largest modulus; 0 for a single eigenvalue.
    pub gamma: f64,
}

pub fn specialize_matrix(m: &LaurentMatrix, chi: &Character) -> Result<CMatrix> {
    let data = m
        .indexed_entries()
        .map(|(_, p)| p.eval_character(chi))
        .collect::<Result<Vec<_>>>()?;
    Ok(CMatrix::from_vec(m.dim(), data))
}

pub fn specialize_upoly(p: &UPoly, chi: &Character) -> Result<Vec<Complex64>> {
    p.specialize(chi)
}

/// Drops leading coefficients that vanish at the character up to the
/// rounding error of their evaluation.
pub(crate) fn trim_vanishing(p: &UPoly, mut coeffs: Vec<Complex64>) -> Vec<Complex64> {
    while let Some(last) = coeffs.last() {
        let exact = &p.coeffs()[coeffs.len() - 1];
        let abs_sum = exact.abs_coeffs().coefficient_sum().to_f64().unwrap_or(f64::INFINITY);
        let tol = 8.0 * f64::EPSILON * abs_sum * exact.len().max(1) as f64;
        if last.norm() <= tol {
            coeffs.pop();
        } else {
            break;
        }
    }
    coeffs
}

fn report(chi: &Character, mut eigenvalues: Vec<Complex64>) -> SpectrumReport {
    super::roots::sort_roots(&mut eigenvalues);
    let eigenvalue_moduli: Vec<f64> = eigenvalues.iter().map(|z| z.norm()).collect();
    let rho = eigenvalue_moduli[0];
    let gamma = eigenvalue_moduli.get(1).map_or(0.0, |second| (rho - second).max(0.0));
    SpectrumReport { character: chi.clone(), eigenvalues, eigenvalue_moduli, rho, gamma }
}

/// Specializes the characteristic polynomial at `chi` and takes its roots.
/// For matrices the spectral radius is cross-checked against Gelfand's
/// formula on the specialized matrix.
pub fn spectrum(obj: &SpectralObject, chi: &Character, tol: &Tolerances) -> Result<SpectrumReport> {
    let p = obj.polynomial();
    if chi.num_vars() != p.num_vars() {
        return Err(Error::VarCountMismatch { left: p.num_vars(), right: chi.num_vars() });
    }
    let coeffs = trim_vanishing(p, p.specialize(chi)?);
    let opts = RootOptions { residual_tol: tol.root_residual, ..RootOptions::default() };
    let eig = roots_with(&coeffs, &opts)?;
    let rep = report(chi, eig);
    if let Some(m) = obj.matrix() {
        let cm = specialize_matrix(m, chi)?;
        let power = cm.spectral_radius();
        let slack = tol.cross_check * rep.rho.max(power) + 1e-9 * cm.frobenius_norm();
        if !((rep.rho - power).abs() <= slack) {
            return Err(Error::CrossCheck { roots: rep.rho, power });
        }
    }
    Ok(rep)
}

/// Spectral radius of a specialized matrix by Gelfand's formula alone.
pub fn spectral_radius_at(m: &LaurentMatrix, chi: &Character) -> Result<f64> {
    Ok(specialize_matrix(m, chi)?.spectral_radius())
}
