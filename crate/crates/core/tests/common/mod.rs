//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use laurent_spectra::braid::BraidWord;
use laurent_spectra::lpmat::{primitivity, uniform_spread_exponent};
use laurent_spectra::{LaurentMatrix, LaurentPoly};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial with up to `max_terms` terms, coefficients in
/// `[-c, c] \ {0}` (or `[1, c]` when `positive`), exponents in `[-e, e]`.
pub fn poly(rng: &mut ChaCha8Rng, h: usize, max_terms: usize, c: i64, e: i64, positive: bool) -> LaurentPoly {
    let terms = rng.random_range(1..=max_terms);
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let exps: Vec<i64> = (0..h).map(|_| rng.random_range(-e..=e)).collect();
        let mut coeff = rng.random_range(1..=c);
        if !positive && rng.random_bool(0.5) {
            coeff = -coeff;
        }
        out.push((exps, coeff));
    }
    LaurentPoly::from_terms(h, out).unwrap()
}

pub fn nonzero_poly(rng: &mut ChaCha8Rng, h: usize, max_terms: usize, c: i64, e: i64, positive: bool) -> LaurentPoly {
    loop {
        let p = poly(rng, h, max_terms, c, e, positive);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn matrix(rng: &mut ChaCha8Rng, n: usize, h: usize, density: f64, positive: bool) -> LaurentMatrix {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.random_bool(density) {
                        poly(rng, h, 3, 3, 2, positive)
                    } else {
                        LaurentPoly::zero(h)
                    }
                })
                .collect()
        })
        .collect();
    LaurentMatrix::from_rows(h, rows).unwrap()
}

/// A primitive positive-coefficient matrix together with its uniform-spread
/// exponent in variable 0.
pub fn primitive_matrix(rng: &mut ChaCha8Rng, n: usize, h: usize) -> (LaurentMatrix, usize) {
    loop {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.random_bool(0.7) {
                            nonzero_poly(rng, h, 2, 2, 1, true)
                        } else {
                            LaurentPoly::zero(h)
                        }
                    })
                    .collect()
            })
            .collect();
        let m = LaurentMatrix::from_rows(h, rows).unwrap();
        if !primitivity(&m).unwrap().primitive {
            continue;
        }
        if let Ok(k) = uniform_spread_exponent(&m, 0) {
            return (m, k);
        }
    }
}

/// Random word of at most `max_len` letters.
pub fn word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.random_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let k = rng.random_range(1..n as i32);
            if rng.random_bool(0.5) { k } else { -k }
        })
        .collect();
    BraidWord::new(n, letters).unwrap()
}

/// Random pure braid of at most `max_len` letters: a product of conjugates
/// `x σ_i^{±2} x^{-1}`.
pub fn pure_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> BraidWord {
    let mut w = BraidWord::identity(n).unwrap();
    loop {
        let x = word(rng, n, 2);
        let k = rng.random_range(1..n as i32);
        let s = if rng.random_bool(0.5) { k } else { -k };
        let piece = x
            .concat(&BraidWord::new(n, vec![s, s]).unwrap())
            .unwrap()
            .concat(&x.inverse())
            .unwrap();
        if w.letters().len() + piece.letters().len() > max_len {
            return w;
        }
        w = w.concat(&piece).unwrap();
        if rng.random_bool(0.3) {
            return w;
        }
    }
}

/// Minimum over pairings of the largest distance between matched entries.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    fn go(a: &[Complex64], b: &mut Vec<Complex64>, i: usize, worst: f64, best: &mut f64) {
        if worst >= *best {
            return;
        }
        if i == a.len() {
            *best = worst;
            return;
        }
        for j in i..b.len() {
            b.swap(i, j);
            go(a, b, i + 1, worst.max((a[i] - b[i]).norm()), best);
            b.swap(i, j);
        }
    }
    let mut best = f64::INFINITY;
    go(a, &mut b.to_vec(), 0, 0.0, &mut best);
    best
}
