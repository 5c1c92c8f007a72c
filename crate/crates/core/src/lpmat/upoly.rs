use std::fmt;

use num_complex::Complex64;

use crate::charvariety::Character;
use crate::error::{Error, Result};
use crate::laurent::{default_variable_names, LaurentPoly, UnitMonomial};

/// A polynomial in the distinguished variable `u` with coefficients in
/// `Z[H]`, stored lowest degree first with a nonzero leading coefficient.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    num_vars: usize,
    coeffs: Vec<LaurentPoly>,
}

impl UPoly {
    pub fn new(num_vars: usize, coeffs: Vec<LaurentPoly>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.num_vars() != num_vars) {
            return Err(Error::VarCountMismatch { left: num_vars, right: bad.num_vars() });
        }
        let mut p = UPoly { num_vars, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn zero(num_vars: usize) -> Self {
        UPoly { num_vars, coeffs: Vec::new() }
    }

    /// `u - root`.
    pub fn linear(root: &LaurentPoly) -> Self {
        UPoly { num_vars: root.num_vars(), coeffs: vec![-root, LaurentPoly::one(root.num_vars())] }
    }

    /// Integer polynomial `Σ c_k u^k` in a ring with `num_vars` variables.
    pub fn from_integers(num_vars: usize, coeffs: &[i64]) -> Self {
        let coeffs = coeffs.iter().map(|&c| LaurentPoly::constant(num_vars, c)).collect();
        UPoly::new(num_vars, coeffs).expect("consistent variable count")
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(LaurentPoly::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    /// Coefficient of `u^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> LaurentPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(|| LaurentPoly::zero(self.num_vars))
    }

    pub fn leading(&self) -> Option<&LaurentPoly> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == LaurentPoly::one(self.num_vars))
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarCountMismatch { left: self.num_vars, right: other.num_vars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        UPoly::new(self.num_vars, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UPoly { num_vars: self.num_vars, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UPoly::zero(self.num_vars));
        }
        let mut coeffs =
            vec![LaurentPoly::zero(self.num_vars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UPoly::new(self.num_vars, coeffs)
    }

    /// Multiplies every coefficient by `p`.
    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * p).collect();
        UPoly::new(self.num_vars, coeffs).expect("same variables")
    }

    pub fn mul_unit(&self, unit: &UnitMonomial) -> Self {
        UPoly {
            num_vars: self.num_vars,
            coeffs: self.coeffs.iter().map(|c| c.mul_unit(unit)).collect(),
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift_u(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![LaurentPoly::zero(self.num_vars); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { num_vars: self.num_vars, coeffs }
    }

    /// Horner evaluation at `u = x ∈ Z[H]`.
    pub fn eval_u(&self, x: &LaurentPoly) -> LaurentPoly {
        self.coeffs.iter().rev().fold(LaurentPoly::zero(self.num_vars), |acc, c| &(&acc * x) + c)
    }

    /// Division with remainder by a divisor whose leading coefficient is a
    /// unit of `Z[H]`; returns `(quotient, remainder)` with
    /// `deg remainder < deg divisor`.
    pub fn div_rem_unit_leading(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_vars(divisor)?;
        let dlead = divisor.leading().ok_or(Error::ZeroPolynomial("division"))?;
        let unit = dlead
            .as_unit()
            .ok_or_else(|| Error::NonUnitLeading(dlead.to_string()))?;
        let inv = unit.inverse();
        let dd = divisor.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![LaurentPoly::zero(self.num_vars); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let q = rem.leading().unwrap().mul_unit(&inv);
            let shift = rd - dd;
            rem = rem.sub(&divisor.scale(&q).shift_u(shift))?;
            quot[shift] = q;
        }
        Ok((UPoly::new(self.num_vars, quot)?, rem))
    }

    /// Pseudo-division: returns `(q, r, e)` with
    /// `lc(divisor)^e · self = q · divisor + r` and `deg r < deg divisor`.
    pub fn pseudo_div_rem(&self, divisor: &Self) -> Result<(Self, Self, u32)> {
        self.check_vars(divisor)?;
        let dlead = divisor.leading().ok_or(Error::ZeroPolynomial("pseudo-division"))?.clone();
        let dd = divisor.degree().unwrap();
        let mut rem = self.clone();
        let mut quot = UPoly::zero(self.num_vars);
        let mut e = 0u32;
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let lr = rem.leading().unwrap().clone();
            let shift = rd - dd;
            let mono = UPoly::new(self.num_vars, {
                let mut v = vec![LaurentPoly::zero(self.num_vars); shift];
                v.push(lr);
                v
            })?;
            rem = rem.scale(&dlead).sub(&mono.mul(divisor)?)?;
            quot = quot.scale(&dlead).add(&mono)?;
            e += 1;
        }
        Ok((quot, rem, e))
    }

    /// Coefficients specialized at a character, lowest degree first.
    pub fn specialize(&self, chi: &Character) -> Result<Vec<Complex64>> {
        self.coeffs.iter().map(|c| c.eval_character(chi)).collect()
    }

    /// Coefficients specialized on the positive real locus `t_j ↦ exp(xi_j)`.
    pub fn specialize_positive(&self, xi: &[f64]) -> Result<Vec<f64>> {
        self.coeffs.iter().map(|c| c.eval_positive(xi)).collect()
    }

    /// Spread in `t_var` across all terms of all coefficients: zero exactly
    /// when some unit multiple of the polynomial is free of `t_var`.
    pub fn spread_in(&self, var: usize) -> Result<u64> {
        if var >= self.num_vars {
            return Err(Error::VarIndexOutOfRange { index: var, num_vars: self.num_vars });
        }
        let ranges: Vec<(i64, i64)> =
            self.coeffs.iter().filter_map(|c| c.exponent_range(var)).collect();
        let lo = ranges.iter().map(|r| r.0).min().ok_or(Error::ZeroPolynomial("spread"))?;
        let hi = ranges.iter().map(|r| r.1).max().unwrap();
        Ok((hi - lo) as u64)
    }

    pub fn substitute_units(&self, images: &[UnitMonomial]) -> Result<Self> {
        let coeffs =
            self.coeffs.iter().map(|c| c.substitute_units(images)).collect::<Result<Vec<_>>>()?;
        let num_vars = images.first().map(|u| u.num_vars()).unwrap_or(0);
        UPoly::new(num_vars, coeffs)
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        UPolyDisplay { poly: self, names: Some(names) }
    }
}

struct UPolyDisplay<'a> {
    poly: &'a UPoly,
    names: Option<&'a [String]>,
}

impl fmt::Display for UPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return write!(f, "0");
        }
        let default_names = default_variable_names(p.num_vars);
        let names = self.names.unwrap_or(&default_names);
        let mut first = true;
        for (k, c) in p.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.display_with(names).to_string();
            let single = c.len() == 1;
            match k {
                0 => write!(f, "{cs}")?,
                _ => {
                    let upow = if k == 1 { "u".to_string() } else { format!("u^{k}") };
                    if c.as_constant().is_some_and(|x| x == 1.into()) {
                        write!(f, "{upow}")?
                    } else if single {
                        write!(f, "{cs}*{upow}")?
                    } else {
                        write!(f, "({cs})*{upow}")?
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        UPolyDisplay { poly: self, names: None }.fmt(f)
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly[{}]({})", self.num_vars, self)
    }
}
