//! Simultaneous root finding for complex univariate polynomials.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Tuning for [`roots_with`].
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Required residual `|p(r)| <= residual_tol · (1 + max|c_i|) · max(1,|r|)^deg`.
    pub residual_tol: f64,
    pub max_iterations: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { residual_tol: 1e-10, max_iterations: 1000 }
    }
}

/// Evaluates `p` and `p'` at `z` (coefficients lowest degree first).
fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Rounding-error bound `Σ |c_i| |z|^i` for Horner evaluation at `z`.
fn magnitude(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// All complex roots with multiplicity, using the default options.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    roots_with(coeffs, &RootOptions::default())
}

/// All complex roots of `Σ coeffs[k] u^k` with multiplicity.
///
/// Exact zero roots are split off first. The rest are found by the
/// Aberth–Ehrlich iteration started on the circle of radius
/// `1 + max |c_i / c_deg|`, then clusters that sit on a multiple root are
/// replaced by their centroid. Roots come back sorted by descending modulus,
/// ties by ascending argument in `[0, 2π)`.
pub fn roots_with(coeffs: &[Complex64], opts: &RootOptions) -> Result<Vec<Complex64>> {
    if coeffs.len() < 2 || coeffs.last().is_none_or(|c| *c == Complex64::new(0.0, 0.0)) {
        return Err(Error::DegenerateDegree);
    }
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::Range("non-finite polynomial coefficient".into()));
    }
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coeffs[zeros..];
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    let n = reduced.len() - 1;
    if n == 1 {
        out.push(-reduced[0] / reduced[1]);
    } else if n > 1 {
        let mut z = aberth(reduced, opts.max_iterations)?;
        merge_multiple_roots(reduced, &mut z);
        out.extend(z);
    }

    let scale = 1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let deg = (coeffs.len() - 1) as i32;
    for r in &out {
        let allowed = opts.residual_tol * scale * r.norm().max(1.0).powi(deg);
        let residual = eval(coeffs, *r).norm();
        if !(residual <= allowed) {
            return Err(Error::RootsNoConvergence { iterations: opts.max_iterations, residual });
        }
    }
    sort_roots(&mut out);
    Ok(out)
}

fn aberth(coeffs: &[Complex64], max_iterations: usize) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let radius = 1.0 + coeffs[..n].iter().map(|c| (c / lead).norm()).fold(0.0, f64::max);
    // A fixed, non-symmetric phase keeps real polynomials from pinning
    // conjugate pairs of iterates.
    const PHASE: f64 = 0.4;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + PHASE))
        .collect();
    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < max_iterations && done.iter().any(|d| !d) {
        iterations += 1;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let zk = z[k];
            let (p, dp) = horner_with_derivative(coeffs, zk);
            if p.norm() <= 4.0 * EPS * magnitude(coeffs, zk) {
                done[k] = true;
                continue;
            }
            let ratio = if dp.norm() == 0.0 {
                // stationary point: nudge instead of dividing by zero
                Complex64::new(EPS.sqrt() * zk.norm().max(1.0), 0.0)
            } else {
                p / dp
            };
            let repulsion: Complex64 =
                (0..n).filter(|&j| j != k).map(|j| (zk - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                return Err(Error::RootsNoConvergence { iterations, residual: f64::INFINITY });
            }
            z[k] = zk - step;
            if step.norm() <= 2.0 * EPS * z[k].norm() {
                done[k] = true;
            }
        }
    }
    Ok(z)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect()
}

/// Replaces each tight cluster of `m` iterates by the nearby root of
/// `p^(m-1)` when that point is itself a root of `p` to working precision.
/// An `m`-fold root of `p` is a simple root of `p^(m-1)`, so Newton's method
/// on the derivative recovers it far more accurately than the iterates.
fn merge_multiple_roots(coeffs: &[Complex64], z: &mut [Complex64]) {
    let n = z.len();
    let mut cluster: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        c[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let tol = 1e-4 * z[i].norm().max(z[j].norm()).max(1.0);
            if (z[i] - z[j]).norm() <= tol {
                let (a, b) = (find(&mut cluster, i), find(&mut cluster, j));
                if a != b {
                    cluster[b] = a;
                }
            }
        }
    }
    for root in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| find(&mut cluster, i) == root).collect();
        if members.len() < 2 {
            continue;
        }
        let mut q = coeffs.to_vec();
        for _ in 1..members.len() {
            q = derivative(&q);
        }
        let mut x: Complex64 =
            members.iter().map(|&i| z[i]).sum::<Complex64>() / members.len() as f64;
        for _ in 0..50 {
            let (v, dv) = horner_with_derivative(&q, x);
            if dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            x -= step;
            if step.norm() <= 2.0 * EPS * x.norm() {
                break;
            }
        }
        if eval(coeffs, x).norm() <= 8.0 * EPS * magnitude(coeffs, x) {
            for &i in &members {
                z[i] = x;
            }
        }
    }
}

fn arg_0_2pi(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

/// Descending modulus, ties broken by ascending argument in `[0, 2π)`.
pub fn sort_roots(z: &mut [Complex64]) {
    z.sort_by(|a, b| {
        b.norm().total_cmp(&a.norm()).then_with(|| arg_0_2pi(*a).total_cmp(&arg_0_2pi(*b)))
    });
}
