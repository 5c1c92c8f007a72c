//! Braid words and their Burau and Gassner images.

use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, UnitMonomial};
use crate::lpmat::LaurentMatrix;

/// A word in the Artin generators of the braid group on `strands` strands.
/// Letter `k` is `σ_k`, letter `-k` is `σ_k^{-1}`; letters apply left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::TooFewStrands(strands));
        }
        for &l in &letters {
            let k = l.unsigned_abs() as usize;
            if l == 0 || k >= strands {
                return Err(Error::GeneratorOutOfRange { index: k, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Concatenation `self` then `other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// The inverse braid: reversed word with every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    /// `perm[p]` is the final position (0-based) of the strand starting at `p`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let k = l.unsigned_abs() as usize - 1;
            at.swap(k, k + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().iter().enumerate().all(|(i, &p)| i == p)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        write!(f, "{}", tokens.join(" "))
    }
}

/// Parses whitespace-separated tokens `s<k>` and `s<k>^-1`.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord> {
    if strands < 2 {
        return Err(Error::TooFewStrands(strands));
    }
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        let bad = || Error::BraidToken(token.to_string());
        let body = token.strip_prefix('s').ok_or_else(bad)?;
        let (index, inverse) = match body.strip_suffix("^-1") {
            Some(index) => (index, true),
            None => (body, false),
        };
        if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let k: usize = index.parse().map_err(|_| bad())?;
        if k == 0 || k >= strands {
            return Err(Error::GeneratorOutOfRange { index: k, strands });
        }
        letters.push(if inverse { -(k as i32) } else { k as i32 });
    }
    BraidWord::new(strands, letters)
}

/// Variable convention applied on top of the standard reduced Burau matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BurauConvention {
    /// `σ_i` acts by `-t` on the `i`-th basis vector (the textbook form).
    Standard,
    /// The standard matrices after `t ↦ -t`.
    SignFlipped,
}

/// The convention used by [`reduced_burau`] and [`gassner`]. With it the
/// braid `σ_1 σ_2^{-1}` on three strands has characteristic polynomial
/// `u^2 - (1 + t + t^-1) u + 1`.
pub const BURAU_CONVENTION: BurauConvention = BurauConvention::SignFlipped;

fn sign_substitution(num_vars: usize) -> Vec<UnitMonomial> {
    (0..num_vars)
        .map(|j| {
            let mut exponents = vec![0; num_vars];
            exponents[j] = 1;
            let sign = match BURAU_CONVENTION {
                BurauConvention::Standard => 1,
                BurauConvention::SignFlipped => -1,
            };
            UnitMonomial { sign, exponents }
        })
        .collect()
}

/// Standard reduced Burau image of `σ_{k+1}` on `n` strands: the identity
/// except column `k`, which holds `t` above, `-t` on and `1` below the diagonal.
fn standard_generator(n: usize, k: usize) -> LaurentMatrix {
    let t = LaurentPoly::var(1, 0);
    let mut m = LaurentMatrix::identity(n - 1, 1);
    m.set(k, k, -&t);
    if k >= 1 {
        m.set(k - 1, k, t);
    }
    if k + 1 < n - 1 {
        m.set(k + 1, k, LaurentPoly::one(1));
    }
    m
}

fn fold_word(
    dim: usize,
    num_vars: usize,
    mut letters: impl Iterator<Item = Result<LaurentMatrix>>,
) -> Result<LaurentMatrix> {
    letters.try_fold(LaurentMatrix::identity(dim, num_vars), |acc, m| acc.mat_mul(&m?))
}

/// Reduced Burau image, a `(n-1)×(n-1)` matrix over `Z[t^±1]`, under
/// [`BURAU_CONVENTION`]. Inverse letters use the exact inverse.
pub fn reduced_burau(w: &BraidWord) -> Result<LaurentMatrix> {
    let n = w.strands;
    let flip = sign_substitution(1);
    let mut gens = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let g = standard_generator(n, k).substitute_units(&flip)?;
        let inv = g.inverse()?;
        gens.push((g, inv));
    }
    let letters = w.letters.iter().map(|&l| {
        let (g, inv) = &gens[l.unsigned_abs() as usize - 1];
        Ok(if l > 0 { g.clone() } else { inv.clone() })
    });
    fold_word(n - 1, 1, letters)
}

/// Unreduced colored Burau image of `σ_{k+1}` when the strand at position
/// `k + 1` carries variable `t_a`: the block `[[1 - t_a, t_a], [1, 0]]`.
fn colored_generator(n: usize, k: usize, a: usize) -> LaurentMatrix {
    let ta = LaurentPoly::var(n, a);
    let mut m = LaurentMatrix::identity(n, n);
    m.set(k, k, &LaurentPoly::one(n) - &ta);
    m.set(k, k + 1, ta);
    m.set(k + 1, k, LaurentPoly::one(n));
    m.set(k + 1, k + 1, LaurentPoly::zero(n));
    m
}

/// Restriction of an unreduced image to the invariant sum-zero row space,
/// in the basis `e_j - e_{j+1}`.
fn reduce(m: &LaurentMatrix) -> LaurentMatrix {
    let n = m.dim();
    let h = m.num_vars();
    let mut r = LaurentMatrix::zero(n - 1, h);
    for j in 0..n - 1 {
        let mut acc = LaurentPoly::zero(h);
        for k in 0..n - 1 {
            acc = &acc + &(m.get(j, k) - m.get(j + 1, k));
            r.set(j, k, acc.clone());
        }
    }
    r
}

/// Reduced Gassner image of a pure braid, a `(n-1)×(n-1)` matrix over
/// `Z[t_1^±1, …, t_n^±1]` where `t_i` belongs to the strand starting at
/// position `i`. Setting every `t_i` to `t` gives [`reduced_burau`].
pub fn gassner(w: &BraidWord) -> Result<LaurentMatrix> {
    let n = w.strands;
    let perm = w.permutation();
    if perm.iter().enumerate().any(|(i, &p)| i != p) {
        let one_line: Vec<String> = perm.iter().map(|p| (p + 1).to_string()).collect();
        return Err(Error::NotPure(format!("[{}]", one_line.join(" "))));
    }
    let mut at: Vec<usize> = (0..n).collect();
    let mut acc = LaurentMatrix::identity(n, n);
    for &l in &w.letters {
        let k = l.unsigned_abs() as usize - 1;
        let step = if l > 0 {
            colored_generator(n, k, at[k + 1])
        } else {
            // σ^{-1} undoes σ taken from the coloring after the swap
            colored_generator(n, k, at[k]).inverse()?
        };
        acc = acc.mat_mul(&step)?;
        at.swap(k, k + 1);
    }
    reduce(&acc).substitute_units(&sign_substitution(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpmat::{char_poly, UPoly};

    fn word(s: &str, n: usize) -> BraidWord {
        parse_braid(s, n).unwrap()
    }

    fn all_to_t(n: usize) -> Vec<UnitMonomial> {
        vec![UnitMonomial { sign: 1, exponents: vec![1] }; n]
    }

    #[test]
    fn parse_examples() {
        assert_eq!(word("s1 s2^-1", 3).letters(), &[1, -2]);
        assert_eq!(word("s1^-1 s1", 3).letters(), &[-1, 1]);
        assert!(matches!(
            parse_braid("s4", 3),
            Err(Error::GeneratorOutOfRange { index: 4, strands: 3 })
        ));
        assert!(matches!(parse_braid("x1", 3), Err(Error::BraidToken(_))));
        assert!(matches!(parse_braid("s1^2", 3), Err(Error::BraidToken(_))));
        assert!(matches!(parse_braid("s0", 3), Err(Error::GeneratorOutOfRange { .. })));
        assert_eq!(word("", 3).letters(), &[] as &[i32]);
        assert_eq!(word("s1 s2^-1", 3).to_string(), "s1 s2^-1");
    }

    #[test]
    fn standard_generators_for_three_strands() {
        let t = LaurentPoly::var(1, 0);
        let s1 = standard_generator(3, 0);
        assert_eq!(*s1.get(0, 0), -&t);
        assert_eq!(*s1.get(1, 0), LaurentPoly::one(1));
        assert!(s1.get(0, 1).is_zero());
        let s2 = standard_generator(3, 1);
        assert_eq!(*s2.get(0, 1), t);
        assert_eq!(*s2.get(1, 1), -&t);
        assert_eq!(standard_generator(2, 0).dim(), 1);
    }

    #[test]
    fn calibration_identity() {
        let t = |k| LaurentPoly::var_pow(1, 0, k);
        let mid = &(&LaurentPoly::one(1) + &t(1)) + &t(-1);
        let target = UPoly::new(1, vec![LaurentPoly::one(1), -&mid, LaurentPoly::one(1)]).unwrap();
        let cp = char_poly(&reduced_burau(&word("s1 s2^-1", 3)).unwrap()).unwrap();
        assert_eq!(cp, target);
    }

    #[test]
    fn braid_relations() {
        assert!(reduced_burau(&word("", 3)).unwrap().is_identity());
        for n in 3..=6 {
            for i in 1..n - 1 {
                let a = reduced_burau(&word(&format!("s{i} s{} s{i}", i + 1), n)).unwrap();
                let b = reduced_burau(&word(&format!("s{} s{i} s{}", i + 1, i + 1), n)).unwrap();
                assert_eq!(a, b, "n={n} i={i}");
            }
            for i in 1..n {
                for j in i + 2..n {
                    let a = reduced_burau(&word(&format!("s{i} s{j}"), n)).unwrap();
                    let b = reduced_burau(&word(&format!("s{j} s{i}"), n)).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn colored_braid_relation() {
        // the colored images form a groupoid representation, so the braid
        // relation holds for the tracked colorings
        for n in 3..=5 {
            let a = word("s1 s2 s1", n);
            let b = word("s2 s1 s2", n);
            let colored = |w: &BraidWord| {
                let mut at: Vec<usize> = (0..n).collect();
                let mut acc = LaurentMatrix::identity(n, n);
                for &l in w.letters() {
                    let k = l as usize - 1;
                    acc = acc.mat_mul(&colored_generator(n, k, at[k + 1])).unwrap();
                    at.swap(k, k + 1);
                }
                acc
            };
            assert_eq!(colored(&a), colored(&b));
        }
    }

    #[test]
    fn gassner_examples() {
        assert!(gassner(&word("", 3)).unwrap().is_identity());
        assert!(matches!(gassner(&word("s1 s2^-1", 3)), Err(Error::NotPure(p)) if p == "[3 1 2]"));
        let w = word("s1 s1", 3);
        let g = gassner(&w).unwrap();
        assert_eq!(g.num_vars(), 3);
        assert_eq!(g.substitute_units(&all_to_t(3)).unwrap(), reduced_burau(&w).unwrap());
        let w = word("s2 s1 s1 s2^-1 s2^-1 s2^-1", 3);
        assert_eq!(
            gassner(&w).unwrap().substitute_units(&all_to_t(3)).unwrap(),
            reduced_burau(&w).unwrap()
        );
    }
}
