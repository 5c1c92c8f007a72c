use super::LaurentMatrix;
use crate::error::{Error, Result};

/// Outcome of the Perron–Frobenius (primitivity) test. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfReport {
    pub primitive: bool,
    /// Least `k` with every entry of `M^k` nonzero with positive coefficients.
    pub exponent: Option<usize>,
    /// An entry that is still zero at the Wielandt bound.
    pub failure_witness: Option<(usize, usize)>,
}

/// `(n-1)^2 + 1`, the largest possible exponent of a primitive `n×n` matrix.
pub fn wielandt_bound(n: usize) -> usize {
    (n - 1) * (n - 1) + 1
}

fn check_nonnegative(m: &LaurentMatrix) -> Result<()> {
    match m.indexed_entries().find(|(_, p)| p.has_negative_coefficient()) {
        Some(((i, j), _)) => Err(Error::MixedSign { row: i + 1, col: j + 1 }),
        None => Ok(()),
    }
}

fn bool_mul(a: &[bool], b: &[bool], n: usize) -> Vec<bool> {
    let mut out = vec![false; n * n];
    for i in 0..n {
        for k in 0..n {
            if !a[i * n + k] {
                continue;
            }
            for j in 0..n {
                out[i * n + j] |= b[k * n + j];
            }
        }
    }
    out
}

/// Decides primitivity from the support pattern. With nonnegative
/// coefficients no cancellation can occur, so the pattern of `M^k` is the
/// boolean `k`-th power of the pattern of `M`.
pub fn primitivity(m: &LaurentMatrix) -> Result<PfReport> {
    check_nonnegative(m)?;
    let n = m.dim();
    let pattern: Vec<bool> = m.indexed_entries().map(|(_, p)| !p.is_zero()).collect();
    let bound = wielandt_bound(n);
    let mut power = pattern.clone();
    for k in 1..=bound {
        if k > 1 {
            power = bool_mul(&power, &pattern, n);
        }
        if power.iter().all(|&b| b) {
            return Ok(PfReport { primitive: true, exponent: Some(k), failure_witness: None });
        }
    }
    let idx = power.iter().position(|&b| !b).expect("some entry is zero");
    Ok(PfReport {
        primitive: false,
        exponent: None,
        failure_witness: Some((idx / n + 1, idx % n + 1)),
    })
}

/// Exponent range of one variable per entry, `None` for zero entries.
type Span = Option<(i64, i64)>;

fn span_mul(a: &[Span], b: &[Span], n: usize) -> Vec<Span> {
    let mut out: Vec<Span> = vec![None; n * n];
    for i in 0..n {
        for k in 0..n {
            let Some((alo, ahi)) = a[i * n + k] else { continue };
            for j in 0..n {
                let Some((blo, bhi)) = b[k * n + j] else { continue };
                let cell = &mut out[i * n + j];
                *cell = Some(match *cell {
                    None => (alo + blo, ahi + bhi),
                    Some((lo, hi)) => (lo.min(alo + blo), hi.max(ahi + bhi)),
                });
            }
        }
    }
    out
}

/// Least `k <= 3·((n-1)^2 + 1)` such that every entry of `M^k` is nonzero
/// with spread at least one in `var`.
///
/// Only exponent ranges are tracked: for positive entries the extreme
/// exponents of a product are sums of extreme exponents (min-plus and
/// max-plus products), again because nothing cancels.
pub fn uniform_spread_exponent(m: &LaurentMatrix, var: usize) -> Result<usize> {
    if var >= m.num_vars() {
        return Err(Error::VarIndexOutOfRange { index: var, num_vars: m.num_vars() });
    }
    let report = primitivity(m)?;
    if let Some((row, col)) = report.failure_witness {
        return Err(Error::NotPrimitive { row, col });
    }
    let n = m.dim();
    let spans: Vec<Span> = m.indexed_entries().map(|(_, p)| p.exponent_range(var)).collect();
    let bound = 3 * wielandt_bound(n);
    let mut power = spans.clone();
    for k in 1..=bound {
        if k > 1 {
            power = span_mul(&power, &spans, n);
        }
        if power.iter().all(|s| matches!(s, Some((lo, hi)) if hi > lo)) {
            return Ok(k);
        }
    }
    Err(Error::SpreadNeverUniform { var, bound })
}
