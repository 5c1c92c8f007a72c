use num_traits::ToPrimitive;

use super::Character;
use crate::error::{Error, Result};
use crate::lpmat::LaurentMatrix;

/// Contraction constant `C = max_ij |χ(m_ij)| / φ₀(m_ij)` for a matrix with
/// positive-coefficient entries.
///
/// By the triangle inequality `|χ(M^n)_ij| <= C^n φ₀(M^n)_ij` for all `n`,
/// so `ρ(χ(M)) <= C·ρ(φ₀(M))`. `C < 1` needs every entry to have two terms
/// that `χ` sends to different points of the circle.
pub fn gap_certificate(m: &LaurentMatrix, chi: &Character) -> Result<f64> {
    if chi.num_vars() != m.num_vars() {
        return Err(Error::VarCountMismatch { left: m.num_vars(), right: chi.num_vars() });
    }
    let mut c = 0.0f64;
    for ((i, j), p) in m.indexed_entries() {
        if p.is_zero() {
            return Err(Error::ZeroEntry { row: i + 1, col: j + 1 });
        }
        if p.has_negative_coefficient() {
            return Err(Error::MixedSign { row: i + 1, col: j + 1 });
        }
        let base = p
            .coefficient_sum()
            .to_f64()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::Range(format!("coefficient sum of entry ({},{})", i + 1, j + 1)))?;
        let ratio = p.eval_character(chi)?.norm() / base;
        c = c.max(ratio.min(1.0));
    }
    Ok(c)
}

/// Whether some variable with a nontrivial coordinate of `chi` gives every
/// entry spread at least one. Without it `C = 1` is possible.
pub fn spread_condition(m: &LaurentMatrix, chi: &Character) -> bool {
    chi.turns().iter().enumerate().any(|(v, turn)| {
        !turn.is_zero()
            && m.indexed_entries().all(|(_, p)| p.spread(v).is_ok_and(|s| s >= 1))
    })
}
