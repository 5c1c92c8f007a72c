//! Property tests for the library invariants.

mod common;

use laurent_spectra::braid::{gassner, reduced_burau, BraidWord};
use laurent_spectra::charvariety::{
    gap_certificate, roots, specialize_matrix, spectrum, Character, SpectralObject, Tolerances, Turn,
};
use laurent_spectra::fiberpoly::{dilatation, divides_up_to_unit, teichmuller, validate_theta};
use laurent_spectra::lpmat::{char_poly, primitivity, uniform_spread_exponent};
use laurent_spectra::{LaurentMatrix, LaurentPoly, UPoly, UnitMonomial};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_character(rng: &mut ChaCha8Rng, h: usize) -> Character {
    Character::new((0..h).map(|_| Turn::decimal(rng.random_range(0.0..1.0))).collect()).unwrap()
}

fn random_torsion(rng: &mut ChaCha8Rng, h: usize, max_order: i64) -> Character {
    let turns = (0..h)
        .map(|_| {
            let q = rng.random_range(1..=max_order);
            Turn::rational(rng.random_range(0..q), q)
        })
        .collect();
    Character::new(turns).unwrap()
}

mod laurent {
    use super::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn evaluation_is_a_ring_homomorphism(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let h = rng.random_range(1..=3);
            let p = common::poly(&mut rng, h, 5, 6, 4, false);
            let q = common::poly(&mut rng, h, 5, 6, 4, false);
            let chi = random_character(&mut rng, h);
            let lhs = (&p * &q).eval_character(&chi).unwrap();
            let rhs = p.eval_character(&chi).unwrap() * q.eval_character(&chi).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()), "{lhs} vs {rhs}");
        }

        #[test]
        fn spread_is_additive_under_products(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let h = rng.random_range(1..=3);
            let p = common::nonzero_poly(&mut rng, h, 5, 6, 4, false);
            let q = common::nonzero_poly(&mut rng, h, 5, 6, 4, false);
            let pq = &p * &q;
            for v in 0..h {
                prop_assert_eq!(pq.spread(v).unwrap(), p.spread(v).unwrap() + q.spread(v).unwrap());
            }
        }

        #[test]
        fn positive_sums_of_products_spread_at_least_each_factor(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let h = rng.random_range(1..=3);
            let len = rng.random_range(1..=4);
            let ps: Vec<_> = (0..len).map(|_| common::nonzero_poly(&mut rng, h, 4, 5, 3, true)).collect();
            let qs: Vec<_> = (0..len).map(|_| common::nonzero_poly(&mut rng, h, 4, 5, 3, true)).collect();
            let sum = ps.iter().zip(&qs).fold(LaurentPoly::zero(h), |acc, (p, q)| &acc + &(p * q));
            for v in 0..h {
                let floor = ps.iter().chain(&qs).map(|p| p.spread(v).unwrap()).max().unwrap();
                prop_assert!(sum.spread(v).unwrap() >= floor);
            }
        }

        #[test]
        fn triangle_inequality(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let h = rng.random_range(1..=3);
            let p = common::poly(&mut rng, h, 6, 9, 5, false);
            let chi = random_character(&mut rng, h);
            let lhs = p.eval_character(&chi).unwrap().norm();
            let rhs = p.abs_coeffs().eval_character(&Character::trivial(h)).unwrap().re;
            prop_assert!(lhs <= rhs + 1e-10);
        }

        #[test]
        fn unit_normal_form_is_idempotent(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let h = rng.random_range(1..=3);
            let p = common::nonzero_poly(&mut rng, h, 5, 6, 4, false);
            let (unit, q) = p.unit_normal_form().unwrap();
            prop_assert_eq!(&q.mul_unit(&unit), &p);
            let (again, q2) = q.unit_normal_form().unwrap();
            prop_assert!(again.is_one());
            prop_assert_eq!(q2, q);
        }
    }
}

mod lpmat {
    use super::*;

    /// Determinant by cofactor expansion along the first row.
    fn cofactor_det(rows: &[Vec<LaurentPoly>], h: usize) -> LaurentPoly {
        let n = rows.len();
        if n == 0 {
            return LaurentPoly::one(h);
        }
        let mut det = LaurentPoly::zero(h);
        for j in 0..n {
            if rows[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<LaurentPoly>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let term = &rows[0][j] * &cofactor_det(&minor, h);
            det = if j % 2 == 0 { &det + &term } else { &det - &term };
        }
        det
    }

    fn rows_of(m: &LaurentMatrix) -> Vec<Vec<LaurentPoly>> {
        m.rows().map(|r| r.to_vec()).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn constant_term_is_signed_determinant(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(1..=5);
            let h = rng.random_range(1..=2);
            let m = common::matrix(&mut rng, n, h, 0.6, false);
            let det = cofactor_det(&rows_of(&m), h);
            let signed = if n % 2 == 0 { det } else { -&det };
            prop_assert_eq!(char_poly(&m).unwrap().coeff(0), signed);
        }

        #[test]
        fn subleading_coefficient_is_minus_trace(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(1..=5);
            let h = rng.random_range(1..=2);
            let m = common::matrix(&mut rng, n, h, 0.6, false);
            let cp = char_poly(&m).unwrap();
            prop_assert!(cp.is_monic());
            prop_assert_eq!(cp.coeff(n - 1), -&m.trace());
        }

        #[test]
        fn powers_add(seed in any::<u64>(), a in 1u32..=6, b in 1u32..=6) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(1..=3);
            let h = rng.random_range(1..=2);
            let m = common::matrix(&mut rng, n, h, 0.6, false);
            let lhs = m.mat_pow(a + b).unwrap();
            let rhs = m.mat_pow(a).unwrap().mat_mul(&m.mat_pow(b).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn primitivity_exponent_is_a_certificate(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(1..=5);
            let h = rng.random_range(1..=2);
            let m = common::matrix(&mut rng, n, h, 0.5, true);
            let report = primitivity(&m).unwrap();
            if report.primitive {
                let k = report.exponent.unwrap();
                prop_assert!(k <= (n - 1) * (n - 1) + 1);
                let mk = m.mat_pow(k as u32).unwrap();
                prop_assert!(mk.indexed_entries().all(|(_, p)| p.is_positive()));
            } else {
                prop_assert!(report.failure_witness.is_some());
            }
        }
    }
}

mod charvariety {
    use super::*;

    /// Perron–Frobenius eigenvalue of a nonnegative matrix by power iteration,
    /// stopped once the normalized iterate is stationary.
    fn power_iteration(m: &LaurentMatrix) -> f64 {
        let n = m.dim();
        let origin = vec![0.0; m.num_vars()];
        let a: Vec<f64> = m.indexed_entries().map(|(_, p)| p.eval_positive(&origin).unwrap()).collect();
        let mut v = vec![1.0 / n as f64; n];
        let mut lambda = 0.0;
        for _ in 0..1_000_000 {
            let w: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a[i * n + j] * v[j]).sum()).collect();
            lambda = w.iter().sum::<f64>();
            let next: Vec<f64> = w.iter().map(|x| x / lambda).collect();
            let moved = next.iter().zip(&v).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            v = next;
            if moved <= 1e-15 {
                break;
            }
        }
        lambda
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn mirrored_characters_have_equal_radius(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(1..=4);
            let h = rng.random_range(1..=2);
            let m = common::matrix(&mut rng, n, h, 0.7, false);
            let obj = SpectralObject::from_matrix(m).unwrap();
            prop_assume!(!obj.polynomial().coeffs().iter().skip(1).all(|c| c.is_zero()));
            let chi = random_torsion(&mut rng, h, 64);
            let tol = Tolerances::default();
            let a = spectrum(&obj, &chi, &tol).unwrap().rho;
            let b = spectrum(&obj, &chi.conjugate(), &tol).unwrap().rho;
            prop_assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }

        #[test]
        fn specialized_roots_have_small_residuals(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(1..=4);
            let h = rng.random_range(1..=2);
            let m = common::matrix(&mut rng, n, h, 0.7, false);
            let chi = random_character(&mut rng, h);
            let coeffs = char_poly(&m).unwrap().specialize(&chi).unwrap();
            let scale = 1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
            for r in roots::roots(&coeffs).unwrap() {
                let residual = roots::eval(&coeffs, r).norm();
                prop_assert!(residual <= 1e-10 * scale, "|p({r})| = {residual:e}");
            }
        }

        #[test]
        fn trivial_radius_is_the_perron_frobenius_eigenvalue(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(1..=5);
            let h = rng.random_range(1..=2);
            let m = common::matrix(&mut rng, n, h, 0.6, true);
            prop_assume!(primitivity(&m).unwrap().primitive);
            let expect = power_iteration(&m);
            let obj = SpectralObject::from_matrix(m).unwrap();
            let rho = spectrum(&obj, &Character::trivial(h), &Tolerances::default()).unwrap().rho;
            prop_assert!((rho - expect).abs() <= 1e-8 * expect.max(1.0), "{rho} vs {expect}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn entrywise_contraction_certificate(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(1..=4);
            let h = rng.random_range(1..=2);
            let (m, k) = common::primitive_matrix(&mut rng, n, h);
            let mk = m.mat_pow(k as u32).unwrap();
            // non-torsion with independent coordinates
            let turns = [rng.random_range(0.05..0.95), rng.random_range(0.05..0.95)];
            let chi = Character::new(turns[..h].iter().map(|&x| Turn::decimal(x)).collect()).unwrap();
            let cert = gap_certificate(&mk, &chi).unwrap();
            prop_assert!(cert <= 1.0);
            let chi_m = specialize_matrix(&mk, &chi).unwrap();
            let triv_m = specialize_matrix(&mk, &Character::trivial(h)).unwrap();
            let (mut a, mut b) = (chi_m.clone(), triv_m.clone());
            for power in 1..=6 {
                for i in 0..n {
                    for j in 0..n {
                        let base = b.get(i, j).re;
                        prop_assert!(a.get(i, j).norm() <= cert.powi(power) * base + 1e-9 * base.max(1.0));
                    }
                }
                a = a.mul(&chi_m);
                b = b.mul(&triv_m);
            }
            let obj = SpectralObject::from_matrix(mk).unwrap();
            let tol = Tolerances::default();
            let rho_chi = spectrum(&obj, &chi, &tol).unwrap().rho;
            let rho_0 = spectrum(&obj, &Character::trivial(h), &tol).unwrap().rho;
            prop_assert!(rho_chi <= cert * rho_0 + 1e-9 * rho_0.max(1.0));
        }
    }

    #[test]
    fn b3_radius_is_continuous_on_a_fine_grid() {
        let t = |k| LaurentPoly::var_pow(1, 0, k);
        let mid = &(&LaurentPoly::one(1) + &t(1)) + &t(-1);
        let p = UPoly::new(1, vec![LaurentPoly::one(1), -&mid, LaurentPoly::one(1)]).unwrap();
        let obj = SpectralObject::from_upoly(p).unwrap();
        let tol = Tolerances::default();
        let g = 1024;
        let rho: Vec<f64> = (0..=g)
            .map(|k| spectrum(&obj, &Character::new(vec![Turn::rational(k, g)]).unwrap(), &tol).unwrap().rho)
            .collect();
        let (k, worst) = rho
            .windows(2)
            .map(|w| (w[0] - w[1]).abs())
            .enumerate()
            .fold((0, 0.0), |best, (k, d)| if d > best.1 { (k, d) } else { best });
        // closed form: the larger root modulus of u^2 - (1 + 2cos 2πs) u + 1
        let closed = |s: f64| {
            let b = 1.0 + 2.0 * (2.0 * std::f64::consts::PI * s).cos();
            if b * b >= 4.0 { (b.abs() + (b * b - 4.0).sqrt()) / 2.0 } else { 1.0 }
        };
        let expect = (closed(k as f64 / g as f64) - closed((k + 1) as f64 / g as f64)).abs();
        assert!(
            worst < 0.02,
            "max adjacent difference {worst} between turns {k}/{g} and {}/{g} (closed form {expect})",
            k + 1
        );
    }
}

mod braid {
    use super::*;

    fn generator(n: usize, k: i32) -> BraidWord {
        BraidWord::new(n, vec![k]).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn burau_is_a_homomorphism(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(2..=6);
            let u = common::word(&mut rng, n, 12);
            let v = common::word(&mut rng, n, 12);
            let lhs = reduced_burau(&u.concat(&v).unwrap()).unwrap();
            let rhs = reduced_burau(&u).unwrap().mat_mul(&reduced_burau(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn burau_of_inverse_word_is_the_inverse(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(2..=6);
            let w = common::word(&mut rng, n, 12);
            let product = reduced_burau(&w).unwrap().mat_mul(&reduced_burau(&w.inverse()).unwrap()).unwrap();
            prop_assert!(product.is_identity());
        }

        #[test]
        fn burau_determinant_is_a_unit(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(2..=6);
            let w = common::word(&mut rng, n, 12);
            prop_assert!(reduced_burau(&w).unwrap().determinant().unwrap().as_unit().is_some());
        }

        #[test]
        fn gassner_specializes_to_burau(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let n = rng.random_range(2..=5);
            let w = common::pure_word(&mut rng, n, 16);
            let images = vec![UnitMonomial { sign: 1, exponents: vec![1] }; n];
            let specialized = gassner(&w).unwrap().substitute_units(&images).unwrap();
            prop_assert_eq!(specialized, reduced_burau(&w).unwrap());
        }
    }

    #[test]
    fn braid_relations_up_to_six_strands() {
        for n in 2..=6 {
            let rep = |letters: Vec<i32>| reduced_burau(&BraidWord::new(n, letters).unwrap()).unwrap();
            for i in 1..n as i32 {
                for j in 1..n as i32 {
                    if (i - j).abs() == 1 {
                        assert_eq!(rep(vec![i, j, i]), rep(vec![j, i, j]), "n = {n}, {i} {j}");
                    } else if i != j {
                        assert_eq!(rep(vec![i, j]), rep(vec![j, i]), "n = {n}, {i} {j}");
                    }
                }
                let g = generator(n, i);
                assert!(reduced_burau(&g.concat(&g.inverse()).unwrap()).unwrap().is_identity());
            }
        }
    }
}

mod fiberpoly {
    use super::*;

    /// `[[A, B], [0, V]]` with random blocks, so `char(P_E) = char(A)·char(V)`.
    fn block_triangular(rng: &mut ChaCha8Rng, h: usize) -> (LaurentMatrix, LaurentMatrix, LaurentMatrix) {
        let a_dim = rng.random_range(1..=3);
        let v_dim = rng.random_range(1..=2);
        let a = common::matrix(rng, a_dim, h, 0.7, false);
        let b = common::matrix(rng, a_dim.max(v_dim), h, 0.5, false);
        let v = common::matrix(rng, v_dim, h, 0.7, false);
        let n = a_dim + v_dim;
        let mut pe = LaurentMatrix::zero(n, h);
        for i in 0..a_dim {
            for j in 0..a_dim {
                pe.set(i, j, a.get(i, j).clone());
            }
            for j in 0..v_dim {
                pe.set(i, a_dim + j, b.get(i, j).clone());
            }
        }
        for i in 0..v_dim {
            for j in 0..v_dim {
                pe.set(a_dim + i, a_dim + j, v.get(i, j).clone());
            }
        }
        (pe, v, a)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn teichmuller_quotient_times_divisor_is_exact(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let h = rng.random_range(1..=2);
            let (pe, pv, _) = block_triangular(&mut rng, h);
            let theta = teichmuller(&pe, &pv).unwrap();
            prop_assert_eq!(theta.mul(&char_poly(&pv).unwrap()).unwrap(), char_poly(&pe).unwrap());
        }

        #[test]
        fn divisor_roots_are_roots_of_the_multiple(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let h = rng.random_range(1..=2);
            let (pe, _, a) = block_triangular(&mut rng, h);
            let a_poly = char_poly(&a).unwrap();
            let t_poly = char_poly(&pe).unwrap();
            prop_assert!(divides_up_to_unit(&a_poly, &t_poly, seed).unwrap().divides);
            for _ in 0..4 {
                let chi = random_torsion(&mut rng, h, 12);
                let a_roots = roots::roots(&a_poly.specialize(&chi).unwrap()).unwrap();
                let t_roots = roots::roots(&t_poly.specialize(&chi).unwrap()).unwrap();
                for r in a_roots {
                    let d = t_roots.iter().map(|s| (r - s).norm()).fold(f64::INFINITY, f64::min);
                    prop_assert!(d <= 1e-8, "root {r} of A at {chi} is {d:e} from the roots of T");
                }
            }
        }

        #[test]
        fn theta_from_uniformly_spread_matrices_depends_on_every_variable(seed in any::<u64>()) {
            let mut rng = common::rng(seed);
            let h = rng.random_range(1..=2);
            let n = rng.random_range(2..=4);
            let (m, _) = common::primitive_matrix(&mut rng, n, h);
            prop_assume!((0..h).all(|v| uniform_spread_exponent(&m, v).is_ok()));
            // repeating a row makes det(P_E) = 0, so char(P_E) is divisible by u = char([[0]])
            let mut pe = m.clone();
            for j in 0..n {
                pe.set(n - 1, j, m.get(0, j).clone());
            }
            prop_assume!(uniform_spread_exponent(&pe, 0).is_ok());
            prop_assume!((0..h).all(|v| uniform_spread_exponent(&pe, v).is_ok()));
            let pv = LaurentMatrix::zero(1, h);
            let theta = teichmuller(&pe, &pv).unwrap();
            prop_assert!(validate_theta(&theta).unwrap().iter().all(|d| d.dependent));
        }
    }

    #[test]
    fn b3_dilatation_increases_along_the_ray() {
        let t = |k| LaurentPoly::var_pow(1, 0, k);
        let mid = &(&LaurentPoly::one(1) + &t(1)) + &t(-1);
        let p = UPoly::new(1, vec![LaurentPoly::one(1), -&mid, LaurentPoly::one(1)]).unwrap();
        let values: Vec<f64> = (0..16).map(|k| dilatation(&p, &[k as f64 * 0.5]).unwrap()).collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]), "{values:?}");
        let probes: Vec<f64> = [2.0, 4.0, 8.0].iter().map(|&x| dilatation(&p, &[x]).unwrap()).collect();
        assert!(probes[0] < probes[1] && probes[1] < probes[2]);
    }
}
