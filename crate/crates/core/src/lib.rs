//! Spectral data of square matrices over integral Laurent polynomial rings
//! `Z[t_1^±1, …, t_h^±1]`: Perron–Frobenius certification, exact
//! characteristic polynomials, specialization at characters of the torus,
//! spectral-radius scans, braid representations and Teichmüller-polynomial
//! utilities.

pub mod braid;
pub mod charvariety;
pub mod cli;
pub mod error;
pub mod fiberpoly;
pub mod json;
pub mod laurent;
pub mod lpmat;

pub use charvariety::{Character, Turn};
pub use error::{Error, ErrorKind, Result};
pub use laurent::{LaurentPoly, UnitMonomial};
pub use lpmat::{LaurentMatrix, UPoly};
