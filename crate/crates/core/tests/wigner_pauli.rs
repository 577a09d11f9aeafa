use monopole_core::halfint::{h, HalfInt};
use monopole_core::pauli::*;
use monopole_core::quadrature::SphereGrid;
use monopole_core::wigner::*;
use num_complex::Complex;
use num_rational::Ratio;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Wigner's sum in plain floating point.
fn d_oracle(tj: i64, ta: i64, tb: i64, theta: f64) -> f64 {
    let f = |n: i64| (1..=n).map(|x| x as f64).product::<f64>();
    let (j_a, j_b) = ((tj + ta) / 2, (tj + tb) / 2);
    let (jm_a, jm_b) = ((tj - ta) / 2, (tj - tb) / 2);
    let pre = (f(j_a) * f(jm_a) * f(j_b) * f(jm_b)).sqrt();
    let b_minus_a = (tb - ta) / 2;
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut acc = 0.0;
    for k in 0..=tj {
        let dens = [j_b - k, k, k - b_minus_a, jm_a - k];
        if dens.iter().any(|&x| x < 0) {
            continue;
        }
        let sign = if (k - b_minus_a).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let pc = tj - 2 * k + b_minus_a;
        let ps = 2 * k - b_minus_a;
        acc += sign * c.powi(pc as i32) * s.powi(ps as i32) / dens.iter().map(|&x| f(x)).product::<f64>();
    }
    pre * acc
}

fn index_triples(max_tj: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for tj in 0..=max_tj {
        for ta in (-tj..=tj).step_by(2) {
            for tb in (-tj..=tj).step_by(2) {
                out.push((tj, ta, tb));
            }
        }
    }
    out
}

#[test]
fn little_d_matches_float_sum() {
    for (tj, ta, tb) in index_triples(9) {
        let d = little_d(HalfInt::from_twice(tj), HalfInt::from_twice(ta), HalfInt::from_twice(tb)).unwrap();
        for i in 0..13 {
            let th = 0.05 + i as f64 * 0.25;
            let want = d_oracle(tj, ta, tb, th);
            assert!((d.eval(th) - want).abs() < 1e-12, "d^{tj}/2_{ta}/2,{tb}/2 at {th}");
        }
    }
}

#[test]
fn exact_norm_is_four_pi_over_dimension() {
    for (tj, ta, tb) in index_triples(8) {
        let n = d_norm_exact(HalfInt::from_twice(tj), HalfInt::from_twice(ta), HalfInt::from_twice(tb)).unwrap();
        assert_eq!(n, Ratio::new(2.into(), (tj + 1).into()));
    }
}

#[test]
fn quantization_progression() {
    for tk in -10i64..=10 {
        let k = HalfInt::from_twice(tk);
        let q = spinor_quantization(k, 6);
        let jm = if tk == 0 { 1 } else { tk.abs() - 1 };
        assert!(q.valid);
        assert_eq!(q.j_min.twice_value(), jm);
        assert_eq!(q.free, tk == 0);
        let want: Vec<i64> = (0..6).map(|i| jm + 2 * i).collect();
        assert_eq!(q.j_list.iter().map(|x| x.twice_value()).collect::<Vec<_>>(), want);
        // each member carries both doublet charges
        for &j in &q.j_list {
            for lam in [k - HalfInt::HALF, k + HalfInt::HALF] {
                if lam.abs() <= j {
                    assert!(is_allowed(lam, j).unwrap().allowed);
                }
            }
        }
    }
    for (n, d) in [(1, 3), (3, 10), (-2, 5)] {
        assert!(spinor_quantization_rational(Ratio::new(n, d), 3).is_err());
    }
    assert_eq!(spinor_quantization_rational(Ratio::new(-3, 2), 2).unwrap().j_min, h(2));
}

#[test]
fn closed_form_agrees_with_derivative_oracle() {
    for tl in -8i64..=8 {
        for tj in 0i64..=12 {
            let v = is_allowed(HalfInt::from_twice(tl), HalfInt::from_twice(tj)).unwrap();
            assert_eq!(v.allowed, v.derivative_is_zero, "2lam={tl} 2j={tj}");
            // integer exponents j +- lam
            let direct = (tj + tl) % 2 == 0 && tl.abs() <= tj;
            assert_eq!(v.allowed, direct);
        }
    }
}

#[test]
fn rational_charges_never_pass() {
    for (n, d) in [(1, 3), (2, 5), (7, 4), (-5, 6)] {
        for tj in 0..=8 {
            let v = is_allowed_rational(Ratio::new(n, d), HalfInt::from_twice(tj)).unwrap();
            assert!(!v.allowed && !v.derivative_is_zero);
            assert_eq!(v.reason, CriterionReason::LambdaNotHalfInteger);
        }
    }
}

const DISALLOWED: [(i64, i64); 10] = [(1, 2), (1, 0), (0, 1), (2, 1), (-1, 2), (3, 2), (0, 3), (4, 2), (-3, 4), (2, 5)];

#[test]
fn annihilation_split() {
    let grid = SphereGrid::<f64>::new(24, 8).unwrap();
    for tl in -4i64..=4 {
        for tj in 0i64..=8 {
            let (l, j) = (HalfInt::from_twice(tl), HalfInt::from_twice(tj));
            if is_allowed(l, j).unwrap().allowed {
                let r = annihilation_residual(l, j, &grid).unwrap();
                assert!(r < 1e-8, "lam={l} j={j}: {r}");
            }
        }
    }
    for (tl, tj) in DISALLOWED {
        let (l, j) = (HalfInt::from_twice(tl), HalfInt::from_twice(tj));
        assert!(!is_allowed(l, j).unwrap().allowed);
        let r = annihilation_residual(l, j, &grid).unwrap();
        assert!(r > 1e-3, "lam={l} j={j}: {r}");
    }
}

#[test]
fn verdict_ignores_grid() {
    for (nt, np) in [(8, 8), (16, 4), (24, 12)] {
        let grid = SphereGrid::<f64>::new(nt, np).unwrap();
        for (tl, tj) in [(1, 1), (2, 4), (1, 2), (0, 3)] {
            let (l, j) = (HalfInt::from_twice(tl), HalfInt::from_twice(tj));
            let allowed = is_allowed(l, j).unwrap().allowed;
            let r = annihilation_residual(l, j, &grid).unwrap();
            assert_eq!(allowed, r < 1e-8);
        }
    }
}

#[test]
fn phi_modes_are_orthonormal() {
    let grid = SphereGrid::<f64>::new(10, 16).unwrap();
    for tl in -4i64..=4 {
        let lam = HalfInt::from_twice(tl);
        let mut modes = Vec::new();
        let mut tj = tl.abs();
        while tj <= 7 {
            for tm in (-tj..=tj).step_by(2) {
                let (j, m) = (HalfInt::from_twice(tj), HalfInt::from_twice(tm));
                let f = phi_exact(lam, j, m).unwrap().theta.compile::<f64>();
                let s = inv_sqrt_pi::<f64>();
                let vals: Vec<Complex<f64>> = grid
                    .points()
                    .map(|(t, p)| Complex::from_polar(1.0, m.to_f64() * p) * (f.eval(t) * s))
                    .collect();
                modes.push(vals);
            }
            tj += 2;
        }
        let w: Vec<f64> = grid
            .theta_weights()
            .iter()
            .flat_map(|&wt| std::iter::repeat_n(wt * grid.phi_weight(), grid.n_phi()))
            .collect();
        for (a, fa) in modes.iter().enumerate() {
            for (b, fb) in modes.iter().enumerate() {
                let g: Complex<f64> = fa.iter().zip(fb).zip(&w).map(|((x, y), &wi)| x.conj() * y * wi).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g - want).norm() < 1e-10, "lam={lam} ({a},{b}): {g}");
            }
        }
    }
}

#[test]
fn phi_matches_big_d() {
    for (lam, j, m) in [(h(1), h(3), h(-1)), (h(-2), h(4), h(2)), (h(0), h(2), h(0))] {
        for (t, p) in [(0.3, 1.0), (2.0, -0.4)] {
            let a = phi_jm(lam, j, m, t, p).unwrap();
            let b = phi_exact(lam, j, m).unwrap().eval(t, p) * inv_sqrt_pi::<f64>();
            assert!((a - b).norm() < 1e-13);
            let sign = (j - m).neg_one_pow().unwrap() as f64;
            let raw = big_d(j, -m, lam, p, t, 0.0).unwrap() * sign * sphere_norm::<f64>(j);
            assert!((a - raw).norm() < 1e-13);
        }
    }
    assert!(phi_jm(h(1), h(2), h(0), 0.5, 0.5).is_err());
}

#[test]
fn recursions_over_spinor_corpus() {
    let thetas: Vec<f64> = (1..16).map(|i| PI * i as f64 / 16.0).collect();
    for tk in -6i64..=6 {
        let k = HalfInt::from_twice(tk);
        let mut j = j_min(k);
        while j.twice_value() <= 9 {
            for tm in (-j.twice_value()..=j.twice_value()).step_by(2) {
                let m = HalfInt::from_twice(tm);
                let r = recursion_residual(j, m, k, &thetas).unwrap();
                assert!(r < 1e-10, "j={j} m={m} k={k}: {r}");
            }
            j = j + HalfInt::ONE;
        }
    }
}

proptest! {
    #[test]
    fn rows_are_unit_vectors(tj in 0i64..=12, row in 0i64..=12, theta in 0.0f64..PI) {
        let row = row.min(tj);
        let j = HalfInt::from_twice(tj);
        let a = HalfInt::from_twice(-tj + 2 * row);
        let mut sum = 0.0;
        for tb in (-tj..=tj).step_by(2) {
            let d = little_d(j, a, HalfInt::from_twice(tb)).unwrap().eval(theta);
            sum += d * d;
        }
        prop_assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn d_symmetries(tj in 0i64..=10, ia in 0i64..=10, ib in 0i64..=10, theta in 0.0f64..PI) {
        let (ia, ib) = (ia.min(tj), ib.min(tj));
        let j = HalfInt::from_twice(tj);
        let a = HalfInt::from_twice(-tj + 2 * ia);
        let b = HalfInt::from_twice(-tj + 2 * ib);
        let d = little_d(j, a, b).unwrap().eval(theta);
        let swapped = little_d(j, b, a).unwrap().eval(theta);
        let sign = (a - b).neg_one_pow().unwrap() as f64;
        prop_assert!((d - sign * swapped).abs() < 1e-12);
        let negated = little_d(j, -b, -a).unwrap().eval(theta);
        prop_assert!((d - negated).abs() < 1e-12);
    }

    #[test]
    fn halfint_sum_difference(a in -100_000i64..100_000, b in -100_000i64..100_000) {
        let (x, y) = (HalfInt::from_twice(a), HalfInt::from_twice(b));
        prop_assert_eq!((x + y) - y, x);
        prop_assert_eq!((x + y).twice_value(), a + b);
    }

    #[test]
    fn verdict_is_pure(tl in -8i64..=8, tj in 0i64..=12) {
        let (l, j) = (HalfInt::from_twice(tl), HalfInt::from_twice(tj));
        prop_assert_eq!(is_allowed(l, j).unwrap(), is_allowed(l, j).unwrap());
        let list = allowed_j(l, 8).unwrap();
        prop_assert_eq!(list.contains(&j), is_allowed(l, j).unwrap().allowed);
    }
}

#[test]
fn single_precision_smoke() {
    let d = little_d(h(3), h(1), h(-1)).unwrap();
    let x = d.eval(0.9f32);
    assert!((x as f64 - d_oracle(3, 1, -1, 0.9)).abs() < 1e-5);
    let grid = SphereGrid::<f32>::new(16, 8).unwrap();
    assert!(annihilation_residual(h(1), h(1), &grid).unwrap() < 1e-3);
}
