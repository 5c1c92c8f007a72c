use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{LaurentMatrix, UPoly};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Characteristic polynomial `det(u·I - M)` by the Faddeev–LeVerrier
/// recurrence
///
/// ```text
/// N_1 = I,            c_{n-1} = -tr(M N_1)
/// N_k = M N_{k-1} + c_{n-k+1} I,   c_{n-k} = -tr(M N_k) / k
/// ```
///
/// The division by `k` is over the rationals; the result is always integral,
/// and a nonzero remainder is reported as an [`Error::Integrality`].
pub fn char_poly(m: &LaurentMatrix) -> Result<UPoly> {
    let n = m.dim();
    let h = m.num_vars();
    let mut coeffs = vec![LaurentPoly::zero(h); n + 1];
    coeffs[n] = LaurentPoly::one(h);
    let mut aux = LaurentMatrix::identity(n, h);
    for k in 1..=n {
        if k > 1 {
            aux = m.mat_mul(&aux)?.add(&LaurentMatrix::scalar(n, &coeffs[n - k + 1]))?;
        }
        let tr = m.mat_mul(&aux)?.trace();
        coeffs[n - k] = -&divide_by_integer(&tr, k).ok_or(Error::Integrality { step: k })?;
    }
    UPoly::new(h, coeffs)
}

fn divide_by_integer(p: &LaurentPoly, k: usize) -> Option<LaurentPoly> {
    let k = BigInt::from(k);
    let terms = p
        .terms()
        .map(|(e, c)| {
            let (q, r) = c.div_rem(&k);
            r.is_zero().then(|| (e.clone(), q))
        })
        .collect::<Option<Vec<_>>>()?;
    LaurentPoly::from_terms(p.num_vars(), terms).ok()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::lpmat::tests::{c, m1, t};

    /// Laplace expansion along the first row over `Z[H][u]`; fine for n <= 5.
    pub(crate) fn cofactor_det(rows: &[Vec<UPoly>]) -> UPoly {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = UPoly::zero(rows[0][0].num_vars());
        for j in 0..n {
            if rows[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<UPoly>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()
                })
                .collect();
            let term = rows[0][j].mul(&cofactor_det(&minor)).unwrap();
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) }.unwrap();
        }
        acc
    }

    /// `det(u I - M)` by cofactor expansion.
    pub(crate) fn charpoly_by_cofactors(m: &LaurentMatrix) -> UPoly {
        let n = m.dim();
        let h = m.num_vars();
        let rows: Vec<Vec<UPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut coeffs = vec![-m.get(i, j)];
                        if i == j {
                            coeffs.push(LaurentPoly::one(h));
                        }
                        UPoly::new(h, coeffs).unwrap()
                    })
                    .collect()
            })
            .collect();
        cofactor_det(&rows)
    }

    #[test]
    fn examples() {
        let m = LaurentMatrix::from_integers(1, &[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(char_poly(&m).unwrap(), UPoly::from_integers(1, &[1, -3, 1]));
        assert_eq!(charpoly_by_cofactors(&m), UPoly::from_integers(1, &[1, -3, 1]));
        let i2 = LaurentMatrix::identity(2, 1);
        assert_eq!(char_poly(&i2).unwrap(), UPoly::from_integers(1, &[1, -2, 1]));
        let m = m1(vec![vec![c(0), t(1)], vec![t(-1), c(1)]]);
        assert_eq!(char_poly(&m).unwrap(), UPoly::from_integers(1, &[-1, -1, 1]));
    }

    #[test]
    fn agrees_with_cofactor_expansion() {
        let m = m1(vec![
            vec![&t(1) + &c(2), t(-1), c(-3)],
            vec![c(1), &t(2) - &c(1), t(1)],
            vec![&t(-1) + &t(1), c(0), c(5)],
        ]);
        assert_eq!(char_poly(&m).unwrap(), charpoly_by_cofactors(&m));
    }
}
