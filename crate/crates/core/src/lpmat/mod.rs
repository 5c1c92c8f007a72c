//! Square matrices over the Laurent ring, their characteristic polynomials
//! and Perron–Frobenius certification.

mod charpoly;
mod pf;
mod upoly;

pub use charpoly::char_poly;
pub use pf::{primitivity, uniform_spread_exponent, wielandt_bound, PfReport};
pub use upoly::UPoly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::laurent::{LaurentPoly, UnitMonomial};
use crate::error::{Error, Result};

/// An `n×n` matrix of Laurent polynomials in `num_vars` variables, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    dim: usize,
    num_vars: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn from_rows(num_vars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            for p in row {
                if p.num_vars() != num_vars {
                    return Err(Error::VarCountMismatch { left: num_vars, right: p.num_vars() });
                }
                entries.push(p);
            }
        }
        Ok(LaurentMatrix { dim, num_vars, entries })
    }

    /// Integer matrix viewed over `Z[H]` with `num_vars` variables.
    pub fn from_integers(num_vars: usize, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&c| LaurentPoly::constant(num_vars, c)).collect())
            .collect();
        Self::from_rows(num_vars, rows)
    }

    pub fn identity(dim: usize, num_vars: usize) -> Self {
        Self::scalar(dim, &LaurentPoly::one(num_vars))
    }

    pub fn zero(dim: usize, num_vars: usize) -> Self {
        LaurentMatrix { dim, num_vars, entries: vec![LaurentPoly::zero(num_vars); dim * dim] }
    }

    pub fn scalar(dim: usize, p: &LaurentPoly) -> Self {
        let mut m = Self::zero(dim, p.num_vars());
        for i in 0..dim {
            m.entries[i * dim + i] = p.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: LaurentPoly) {
        assert_eq!(p.num_vars(), self.num_vars);
        self.entries[row * self.dim + col] = p;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly]> {
        self.entries.chunks(self.dim)
    }

    /// Entries with their `(row, col)` positions, row major.
    pub fn indexed_entries(&self) -> impl Iterator<Item = ((usize, usize), &LaurentPoly)> {
        let n = self.dim;
        self.entries.iter().enumerate().map(move |(k, p)| ((k / n, k % n), p))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.num_vars != other.num_vars {
            return Err(Error::VarCountMismatch { left: self.num_vars, right: other.num_vars });
        }
        Ok(())
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.dim;
        let mut out = Self::zero(n, self.num_vars);
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentPoly::zero(self.num_vars);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.entries[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(LaurentMatrix { dim: self.dim, num_vars: self.num_vars, entries })
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        LaurentMatrix {
            dim: self.dim,
            num_vars: self.num_vars,
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    /// `k`-th power by binary powering; `k` must be positive.
    pub fn mat_pow(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Argument("matrix power exponent must be at least 1".into()));
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mat_mul(&base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mat_mul(&base)?;
        }
        Ok(acc.expect("k >= 1"))
    }

    pub fn trace(&self) -> LaurentPoly {
        (0..self.dim).fold(LaurentPoly::zero(self.num_vars), |acc, i| &acc + self.get(i, i))
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n, self.num_vars);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Applies `t_j ↦ images[j]` to every entry.
    pub fn substitute_units(&self, images: &[UnitMonomial]) -> Result<Self> {
        let entries =
            self.entries.iter().map(|p| p.substitute_units(images)).collect::<Result<Vec<_>>>()?;
        let num_vars = entries[0].num_vars();
        Ok(LaurentMatrix { dim: self.dim, num_vars, entries })
    }

    /// Determinant, read off the characteristic polynomial.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        let cp = char_poly(self)?;
        let c0 = cp.coeff(0);
        Ok(if self.dim.is_multiple_of(2) { c0 } else { -&c0 })
    }

    /// Exact inverse over `Z[H]` via Cayley–Hamilton; requires a unit
    /// determinant.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let cp = char_poly(self)?;
        let c0 = cp.coeff(0);
        let unit = c0.as_unit().ok_or_else(|| Error::NonUnitDeterminant { det: c0.to_string() })?;
        // M^{-1} = -(M^{n-1} + c_{n-1} M^{n-2} + ... + c_1 I) / c_0
        let mut acc = Self::identity(n, self.num_vars);
        for k in (1..n).rev() {
            acc = acc.mat_mul(self)?.add(&Self::scalar(n, &cp.coeff(k)))?;
        }
        let factor = -&unit.inverse().to_poly();
        Ok(acc.scale(&factor))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim, self.num_vars)
    }

    /// Maximum absolute coefficient over all entries.
    pub fn max_abs_coefficient(&self) -> BigInt {
        let mut best = BigInt::zero();
        for p in &self.entries {
            for (_, c) in p.terms() {
                let a = c.abs();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, p) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentMatrix[{}x{}; {} vars]{}", self.dim, self.dim, self.num_vars, self)
    }
}
