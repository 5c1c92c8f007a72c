//! Sparse multivariate Laurent polynomials with integer coefficients.
//!
//! A [`LaurentPoly`] is an element of `Z[t_1^±1, ..., t_h^±1]`. Terms are kept
//! in a `BTreeMap` keyed by exponent vector, so iteration (and therefore
//! serialization and `Display`) follows lexicographic order on exponents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::charvariety::Character;
use crate::error::{Error, Result};

pub type Exponents = Vec<i64>;

/// An element of `Z[H]` stored as exponent vector -> nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

/// A unit `±t^a` of the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitMonomial {
    pub sign: i8,
    pub exponents: Exponents,
}

impl UnitMonomial {
    pub fn one(num_vars: usize) -> Self {
        UnitMonomial { sign: 1, exponents: vec![0; num_vars] }
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn inverse(&self) -> Self {
        UnitMonomial { sign: self.sign, exponents: self.exponents.iter().map(|e| -e).collect() }
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::monomial(self.exponents.clone(), BigInt::from(self.sign))
    }

    pub fn is_one(&self) -> bool {
        self.sign == 1 && self.exponents.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for UnitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl LaurentPoly {
    pub fn zero(num_vars: usize) -> Self {
        LaurentPoly { num_vars, terms: BTreeMap::new() }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, BigInt::one())
    }

    pub fn constant(num_vars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; num_vars], c)
    }

    /// `c * t^exponents`; the variable count is the length of `exponents`.
    pub fn monomial(exponents: Exponents, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut p = Self::zero(exponents.len());
        if !c.is_zero() {
            p.terms.insert(exponents, c);
        }
        p
    }

    /// The variable `t_index` raised to `power`.
    pub fn var_pow(num_vars: usize, index: usize, power: i64) -> Self {
        let mut e = vec![0; num_vars];
        e[index] = power;
        Self::monomial(e, 1)
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        Self::var_pow(num_vars, index, 1)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::VarCountMismatch { left: num_vars, right: e.len() });
            }
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The constant term, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::VarCountMismatch { left: self.num_vars, right: other.num_vars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.num_vars);
        }
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.num_vars, "shift length");
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn mul_unit(&self, unit: &UnitMonomial) -> Self {
        let s = self.shift(&unit.exponents);
        if unit.sign < 0 {
            -&s
        } else {
            s
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.num_vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exponent range `(min, max)` of one variable over all terms.
    pub fn exponent_range(&self, var: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e[var]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Highest minus lowest exponent of `var`.
    pub fn spread(&self, var: usize) -> Result<u64> {
        if var >= self.num_vars {
            return Err(Error::VarIndexOutOfRange { index: var, num_vars: self.num_vars });
        }
        let (lo, hi) = self.exponent_range(var).ok_or(Error::ZeroPolynomial("spread"))?;
        Ok((hi - lo) as u64)
    }

    /// Nonzero with every coefficient strictly positive.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.terms.values().any(|c| c.is_negative())
    }

    /// Replaces every coefficient by its absolute value.
    pub fn abs_coeffs(&self) -> Self {
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.abs())).collect(),
        }
    }

    /// Value at the trivial character: the sum of the coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `Some(±t^a)` if this polynomial is a unit of the Laurent ring.
    pub fn as_unit(&self) -> Option<UnitMonomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.is_one() {
            Some(UnitMonomial { sign: 1, exponents: e.clone() })
        } else if (-c).is_one() {
            Some(UnitMonomial { sign: -1, exponents: e.clone() })
        } else {
            None
        }
    }

    /// Splits `p = μ·q` with `μ` a unit, every variable of `q` having minimal
    /// exponent 0 and the leading (lexicographically largest) coefficient of
    /// `q` positive.
    pub fn unit_normal_form(&self) -> Result<(UnitMonomial, LaurentPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("unit normal form"));
        }
        let mins: Exponents =
            (0..self.num_vars).map(|v| self.exponent_range(v).unwrap().0).collect();
        let neg: Exponents = mins.iter().map(|m| -m).collect();
        let mut q = self.shift(&neg);
        let sign = if q.leading_term().unwrap().1.is_negative() { -1 } else { 1 };
        if sign < 0 {
            q = -&q;
        }
        Ok((UnitMonomial { sign, exponents: mins }, q))
    }

    /// Equal up to multiplication by a unit.
    pub fn associates(&self, other: &Self) -> bool {
        match (self.unit_normal_form(), other.unit_normal_form()) {
            (Ok((_, a)), Ok((_, b))) => a == b,
            _ => self.is_zero() && other.is_zero(),
        }
    }

    /// Substitutes `t_j ↦ images[j]`, a unit monomial in a (possibly
    /// different) set of variables.
    pub fn substitute_units(&self, images: &[UnitMonomial]) -> Result<Self> {
        if images.len() != self.num_vars {
            return Err(Error::VarCountMismatch { left: self.num_vars, right: images.len() });
        }
        let target = images.first().map(|u| u.num_vars()).unwrap_or(0);
        if images.iter().any(|u| u.num_vars() != target) {
            return Err(Error::Argument("substitution images disagree on variable count".into()));
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0i64; target];
            let mut negative = false;
            for (k, img) in e.iter().zip(images) {
                for (slot, x) in ne.iter_mut().zip(&img.exponents) {
                    *slot += k * x;
                }
                if img.sign < 0 && k.rem_euclid(2) == 1 {
                    negative = !negative;
                }
            }
            out.add_term(ne, if negative { -c } else { c.clone() });
        }
        Ok(out)
    }

    /// Exact quotient `self / divisor` in `Z[H]`, or `None` if the division
    /// does not go through.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if self.num_vars != divisor.num_vars || divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.num_vars));
        }
        if let Some(u) = divisor.as_unit() {
            return Some(self.mul_unit(&u.inverse()));
        }
        // Degrees per variable add under multiplication, so every quotient
        // term lies in this box.
        let n = self.num_vars;
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for v in 0..n {
            let (pl, ph) = self.exponent_range(v).unwrap();
            let (dl, dh) = divisor.exponent_range(v).unwrap();
            lo[v] = pl - dl;
            hi[v] = ph - dh;
            if lo[v] > hi[v] {
                return None;
            }
        }
        let (dlead_e, dlead_c) = divisor.leading_term().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero(n);
        while let Some((re, rc)) = rem.leading_term() {
            let (q, r) = rc.div_rem(dlead_c);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponents = re.iter().zip(dlead_e).map(|(a, b)| a - b).collect();
            if qe.iter().enumerate().any(|(v, &x)| x < lo[v] || x > hi[v]) {
                return None;
            }
            let term = Self::monomial(qe.clone(), q.clone());
            rem = &rem - &(&term * divisor);
            quot.add_term(qe, q);
        }
        Some(quot)
    }

    /// Evaluates at a character `t_j ↦ exp(2πi·turn_j)`.
    pub fn eval_character(&self, chi: &Character) -> Result<Complex64> {
        if chi.num_vars() != self.num_vars {
            return Err(Error::VarCountMismatch { left: self.num_vars, right: chi.num_vars() });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let cf = c.to_f64().filter(|x| x.is_finite()).ok_or_else(|| {
                Error::Range(format!("coefficient {c} does not fit in a double"))
            })?;
            acc += chi.monomial_value(e) * cf;
        }
        Ok(acc)
    }

    /// Evaluates on the positive real locus `t_j ↦ exp(xi_j)`.
    pub fn eval_positive(&self, xi: &[f64]) -> Result<f64> {
        if xi.len() != self.num_vars {
            return Err(Error::VarCountMismatch { left: self.num_vars, right: xi.len() });
        }
        let mut acc = 0.0f64;
        for (e, c) in &self.terms {
            let log: f64 = e.iter().zip(xi).map(|(&k, &x)| k as f64 * x).sum();
            let cf = c.to_f64().unwrap_or(f64::INFINITY);
            let term = cf * log.exp();
            if !term.is_finite() {
                return Err(Error::Range(format!("term {c}*t^{e:?} overflows at xi = {xi:?}")));
            }
            acc += term;
        }
        if !acc.is_finite() {
            return Err(Error::Range(format!("sum overflows at xi = {xi:?}")));
        }
        Ok(acc)
    }

    /// Renders with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names: Some(names) }
    }
}

struct PolyDisplay<'a> {
    poly: &'a LaurentPoly,
    names: Option<&'a [String]>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly;
        if p.is_zero() {
            return write!(f, "0");
        }
        let default_names = default_variable_names(p.num_vars);
        let names = self.names.unwrap_or(&default_names);
        for (i, (e, c)) in p.terms.iter().enumerate() {
            let mut mono = String::new();
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(&names[v]);
                if k != 1 {
                    mono.push_str(&format!("^{k}"));
                }
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// `t` for one variable, `t1..th` otherwise.
pub fn default_variable_names(num_vars: usize) -> Vec<String> {
    if num_vars == 1 {
        vec!["t".to_string()]
    } else {
        (1..=num_vars).map(|i| format!("t{i}")).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay { poly: self, names: None }.fmt(f)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.num_vars, self)
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.num_vars.cmp(&other.num_vars).then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}

// Operator forms panic on a variable-count mismatch; the `checked_*` methods
// report it instead.
impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly add")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly sub")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly mul")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}
