//! Teichmüller polynomials from transition matrices, divisibility by the
//! Alexander polynomial, and the dilatation on the positive real locus.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charvariety::{roots, trim_vanishing, Character, Turn};
use crate::error::{Error, Result};
use crate::lpmat::{char_poly, LaurentMatrix, UPoly};

/// Number of random torsion characters used to corroborate divisibility.
pub const CORROBORATION_SAMPLES: usize = 25;
/// Largest denominator of a sampled torsion coordinate.
pub const CORROBORATION_MAX_ORDER: i64 = 24;
/// Relative residual `|T_χ(r)| / Σ|c_i||r|^i` accepted at each root `r` of `A_χ`.
pub const CORROBORATION_TOL: f64 = 1e-8;

/// Edge and vertex transition matrices with the derived Teichmüller polynomial.
#[derive(Clone, Debug)]
pub struct FiberedFaceData {
    pub p_e: LaurentMatrix,
    pub p_v: LaurentMatrix,
    pub theta: UPoly,
    pub alexander: Option<UPoly>,
}

impl FiberedFaceData {
    pub fn new(p_e: LaurentMatrix, p_v: LaurentMatrix, alexander: Option<UPoly>) -> Result<Self> {
        let theta = teichmuller(&p_e, &p_v)?;
        Ok(FiberedFaceData { p_e, p_v, theta, alexander })
    }
}

/// `θ = char(P_E) / char(P_V)`; the division must be exact.
pub fn teichmuller(p_e: &LaurentMatrix, p_v: &LaurentMatrix) -> Result<UPoly> {
    if p_e.num_vars() != p_v.num_vars() {
        return Err(Error::VarCountMismatch { left: p_e.num_vars(), right: p_v.num_vars() });
    }
    let ce = char_poly(p_e)?;
    let cv = char_poly(p_v)?;
    let (q, r) = ce.div_rem_unit_leading(&cv)?;
    if !r.is_zero() {
        return Err(Error::NotDivisible { remainder: r.to_string() });
    }
    Ok(q)
}

/// One sampled character of the divisibility corroboration.
#[derive(Clone, Debug, PartialEq)]
pub struct CorroborationSample {
    pub character: Character,
    /// Largest relative residual of `T_χ` over the roots of `A_χ`.
    pub worst_residual: f64,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct DivisibilityReport {
    /// The exact verdict.
    pub divides: bool,
    /// `Q` with `T = μ·u^k·A·Q` when `divides`, after removing powers of `u`.
    pub quotient: Option<UPoly>,
    pub samples: Vec<CorroborationSample>,
    pub diagnostic: Option<String>,
}

impl DivisibilityReport {
    pub fn corroborated(&self) -> bool {
        self.samples.iter().all(|s| s.passed)
    }
}

/// Removes the largest power of `u` dividing `p`.
fn strip_u(p: &UPoly) -> (UPoly, usize) {
    let k = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let coeffs = p.coeffs()[k..].to_vec();
    (UPoly::new(p.num_vars(), coeffs).expect("same variables"), k)
}

/// Exact test of `A | T` in `Z[H][u]` up to units, counting `u` as a unit.
fn exact_quotient(a: &UPoly, t: &UPoly) -> Result<(Option<UPoly>, Option<String>)> {
    let (a, _) = strip_u(a);
    let (t, _) = strip_u(t);
    let lead = a.leading().expect("nonzero").clone();
    if lead.as_unit().is_some() {
        let (q, r) = t.div_rem_unit_leading(&a)?;
        return Ok(if r.is_zero() {
            (Some(q), None)
        } else {
            (None, Some(format!("remainder {r}")))
        });
    }
    // lc^e T = Q A + R; A | T iff R = 0 and lc^e divides every coefficient of Q
    let (q, r, e) = t.pseudo_div_rem(&a)?;
    if !r.is_zero() {
        return Ok((None, Some(format!("pseudo-remainder {r}"))));
    }
    let scale = lead.pow(e);
    let mut coeffs = Vec::with_capacity(q.coeffs().len());
    for (k, c) in q.coeffs().iter().enumerate() {
        match c.div_exact(&scale) {
            Some(x) => coeffs.push(x),
            None => {
                return Ok((
                    None,
                    Some(format!(
                        "pseudo-quotient coefficient of u^{k} is not divisible by ({lead})^{e}"
                    )),
                ))
            }
        }
    }
    Ok((Some(UPoly::new(a.num_vars(), coeffs)?), None))
}

fn sample_characters(num_vars: usize, seed: u64) -> Vec<Character> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..CORROBORATION_SAMPLES)
        .map(|_| {
            let turns = (0..num_vars)
                .map(|_| {
                    let q = rng.random_range(1..=CORROBORATION_MAX_ORDER);
                    Turn::rational(rng.random_range(0..q), q)
                })
                .collect();
            Character::new(turns).expect("rational turns are valid")
        })
        .collect()
}

fn corroborate(a: &UPoly, t: &UPoly, chi: Character) -> Result<CorroborationSample> {
    let ac = trim_vanishing(a, a.specialize(&chi)?);
    let tc = t.specialize(&chi)?;
    let mut worst = 0.0f64;
    if ac.len() >= 2 {
        for r in roots::roots(&ac)? {
            let value = roots::eval(&tc, r).norm();
            let scale: f64 = tc.iter().rev().fold(0.0, |acc, c| acc * r.norm() + c.norm());
            let rel = if scale == 0.0 { 0.0 } else { value / scale };
            worst = worst.max(rel);
        }
    }
    Ok(CorroborationSample { character: chi, worst_residual: worst, passed: worst <= CORROBORATION_TOL })
}

/// Decides whether `T = μ·A·Q` for a unit `μ` (a signed monomial in the
/// `t_i` and `u`) and some `Q`, by exact (pseudo-)division. The verdict is
/// corroborated at [`CORROBORATION_SAMPLES`] random torsion characters drawn
/// from `seed`: every root of `A_χ` must be a root of `T_χ`.
pub fn divides_up_to_unit(a: &UPoly, t: &UPoly, seed: u64) -> Result<DivisibilityReport> {
    if a.num_vars() != t.num_vars() {
        return Err(Error::VarCountMismatch { left: a.num_vars(), right: t.num_vars() });
    }
    if a.is_zero() {
        return Err(Error::ZeroPolynomial("divisibility by"));
    }
    let (quotient, diagnostic) = if t.is_zero() {
        (Some(UPoly::zero(t.num_vars())), None)
    } else {
        exact_quotient(a, t)?
    };
    let samples = sample_characters(a.num_vars(), seed)
        .into_par_iter()
        .map(|chi| corroborate(a, t, chi))
        .collect::<Result<Vec<_>>>()?;
    Ok(DivisibilityReport { divides: quotient.is_some(), quotient, samples, diagnostic })
}

/// Whether `θ` depends on a variable, up to units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableDependence {
    pub var: usize,
    /// Spread of `θ` in the variable across all `u`-coefficients.
    pub spread: u64,
    pub dependent: bool,
}

/// Reports, per variable, whether `θ` depends on it. A unit multiple of `θ`
/// is free of `t_i` exactly when the spread in `t_i` over all terms is zero;
/// genuine Teichmüller polynomials depend on every variable.
pub fn validate_theta(theta: &UPoly) -> Result<Vec<VariableDependence>> {
    if theta.is_zero() {
        return Err(Error::ZeroPolynomial("validation"));
    }
    (0..theta.num_vars())
        .map(|var| {
            let spread = theta.spread_in(var)?;
            Ok(VariableDependence { var, spread, dependent: spread >= 1 })
        })
        .collect()
}

/// Largest real root of `θ` specialized at `t_j ↦ exp(ξ_j)`, refined by
/// bisection when it is a sign change.
pub fn dilatation(theta: &UPoly, xi: &[f64]) -> Result<f64> {
    if theta.num_vars() != xi.len() {
        return Err(Error::VarCountMismatch { left: theta.num_vars(), right: xi.len() });
    }
    let mut coeffs = theta.specialize_positive(xi)?;
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    while coeffs.last().is_some_and(|c| c.abs() <= 8.0 * f64::EPSILON * scale) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(Error::DegenerateDegree);
    }
    let complex: Vec<Complex64> = coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let best = roots::roots(&complex)?
        .into_iter()
        .filter(|z| z.im.abs() <= 1e-8 * z.norm().max(1.0) && z.re >= 0.0)
        .map(|z| z.re)
        .reduce(f64::max)
        .ok_or(Error::NoRealRoot)?;
    Ok(refine_real_root(&coeffs, best))
}

fn eval_real(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn refine_real_root(coeffs: &[f64], x: f64) -> f64 {
    let delta = 1e-6 * x.abs().max(1.0);
    let (mut lo, mut hi) = ((x - delta).max(0.0), x + delta);
    let (flo, fhi) = (eval_real(coeffs, lo), eval_real(coeffs, hi));
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    if flo.signum() == fhi.signum() {
        return x;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval_real(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
