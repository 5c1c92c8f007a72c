//! Specialization at characters of the torus `Hom(H, S^1)`, spectra, grid
//! scans and the contraction certificate.

mod certificate;
mod character;
mod cmatrix;
pub mod roots;
mod scan;
mod spectrum;

pub use certificate::{gap_certificate, spread_condition};
pub use character::{root_of_unity, torsion_characters, Character, Turn};
pub use cmatrix::CMatrix;
pub use scan::{format_sig12, grid_character, rho_scan, FailedPoint, ScanOptions, ScanReport};
pub(crate) use spectrum::trim_vanishing;
pub use spectrum::{
    specialize_matrix, specialize_upoly, spectral_radius_at, spectrum, SpectralObject,
    SpectrumReport, Tolerances,
};
