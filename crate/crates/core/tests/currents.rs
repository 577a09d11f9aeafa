use monopole_core::currents::*;
use monopole_core::field::{Gauge, ModeTerm};
use monopole_core::gauge::gauge_transform;
use monopole_core::halfint::{h, HalfInt};
use monopole_core::harmonics::MonopoleMode;
use monopole_core::pauli::j_min;
use monopole_core::quadrature::SphereGrid;
use monopole_core::radial::MetricProfile;
use num_complex::Complex;
use std::f64::consts::PI;

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    Complex::new(re, im)
}

fn corpus() -> Vec<(HalfInt, HalfInt, HalfInt)> {
    let mut out = Vec::new();
    for tk in -4i64..=4 {
        let k = HalfInt::from_twice(tk);
        let mut j = j_min(k);
        while j.twice_value() <= 7 {
            for tm in (-j.twice_value()..=j.twice_value()).step_by(2) {
                out.push((j, HalfInt::from_twice(tm), k));
            }
            j = j + HalfInt::ONE;
        }
    }
    out
}

fn generic(j: HalfInt, m: HalfInt, k: HalfInt) -> MonopoleMode<f64> {
    let probe = ModeTerm::<f64> { j, m, k, f: [c(0.0, 0.0); 4] };
    let vals = [c(0.6, -0.2), c(0.1, 0.9), c(-0.7, 0.3), c(0.4, 0.4)];
    let mut f = [c(0.0, 0.0); 4];
    for i in 0..4 {
        if probe.populated(i) {
            f[i] = vals[i];
        }
    }
    MonopoleMode::new(j, m, k, f).unwrap()
}

fn thetas() -> Vec<f64> {
    (1..20).map(|i| PI * i as f64 / 20.0).collect()
}

/// `Psi^dagger gamma^0 gamma^a Psi` with explicit 4x4 matrices.
fn oracle_bilinear(v: &[C], a: usize) -> f64 {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let sig: [[[C; 2]; 2]; 4] = [
        [[one, z], [z, one]],
        [[z, one], [one, z]],
        [[z, -i], [i, z]],
        [[one, z], [z, -one]],
    ];
    // gamma^0 = [[0, I], [I, 0]], gamma^a = [[0, -s_a], [s_a, 0]]
    let mut g0ga = [[z; 4]; 4];
    for r in 0..2 {
        for col in 0..2 {
            if a == 0 {
                g0ga[r][col] = sig[0][r][col];
                g0ga[r + 2][col + 2] = sig[0][r][col];
            } else {
                g0ga[r][col] = sig[a][r][col];
                g0ga[r + 2][col + 2] = -sig[a][r][col];
            }
        }
    }
    let mut acc = c(0.0, 0.0);
    for r in 0..4 {
        for col in 0..4 {
            acc += v[r].conj() * g0ga[r][col] * v[col];
        }
    }
    assert!(acc.im.abs() < 1e-12);
    acc.re
}

#[test]
fn printed_bilinears_match_gamma_matrices() {
    let metric = MetricProfile::spherical();
    let r = 0.6;
    let (nu, mu) = metric.exponents(r).unwrap();
    for (j, m, k) in corpus() {
        let mode = generic(j, m, k);
        let field = mode.to_field().unwrap();
        for th in thetas() {
            let ph = 0.7;
            let j_mode = current_of_mode(&mode, &metric, r, th, Normalization::Stripped).unwrap();
            let v = field.eval(th, ph);
            let e = [(-nu / 2.0).exp(), 1.0 / r, 1.0 / (r * th.sin()), (-mu / 2.0).exp()];
            let want = FourCurrent {
                jt: e[0] * oracle_bilinear(&v, 0),
                jtheta: e[1] * oracle_bilinear(&v, 1),
                jphi: e[2] * oracle_bilinear(&v, 2),
                jr: e[3] * oracle_bilinear(&v, 3),
            };
            assert!(j_mode.max_diff(&want) < 1e-12, "j={j} m={m} k={k}");
            let j_field = current_of_field(&field, &metric, r, th, ph, Normalization::Stripped).unwrap();
            assert!(j_field.max_diff(&want) < 1e-12);
            assert!(j_mode.jt >= 0.0);
            let full = current_of_mode(&mode, &metric, r, th, Normalization::Full).unwrap();
            assert!(full.max_diff(&j_mode.scale((-(nu + mu) / 2.0).exp() / (r * r))) < 1e-12);
        }
    }
}

#[test]
fn real_amplitudes_have_no_azimuthal_current() {
    let metric = MetricProfile::flat();
    let (f1, f2) = (c(0.3, 0.0), c(-0.5, 0.0));
    let mode = MonopoleMode::new(h(3), h(1), h(2), [f1, f2, f1.conj(), f2.conj()]).unwrap();
    for th in thetas() {
        assert!(current_of_mode(&mode, &metric, 1.0, th, Normalization::Stripped).unwrap().jphi.abs() < 1e-15);
    }
}

#[test]
fn fixed_parity_modes() {
    let metric = MetricProfile::lobachevski();
    for (j, m, k) in corpus() {
        if !k.is_zero() && j == j_min(k) {
            continue;
        }
        for delta in [1i8, -1] {
            let mode = MonopoleMode::with_parity(j, m, k, c(0.6, 0.2), c(-0.3, 0.7), delta).unwrap();
            let mc = ModeCurrent::new(&mode).unwrap();
            for th in thetas() {
                let cur = mc.at(&metric, 1.3, th, Normalization::Stripped).unwrap();
                assert!(cur.jtheta.abs() < 1e-12, "j={j} k={k}");
                let d_lo = monopole_core::wigner::little_d(j, -m, k - h(1)).unwrap().eval(th);
                let d_hi = monopole_core::wigner::little_d(j, -m, k + h(1)).unwrap().eval(th);
                let b = mc.bilinears(th);
                let shape = (d_lo * d_lo + d_hi * d_hi) * (mode.f[0].norm_sqr() + mode.f[2].norm_sqr());
                assert!((b[0] - shape).abs() < 1e-12);
                let phi_shape = 4.0 * d_lo * d_hi * (mode.f[0].conj() * mode.f[1]).im;
                assert!((b[3] - phi_shape).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn minimal_modes_carry_no_transverse_current() {
    let metric = MetricProfile::flat();
    for (j, m, k) in corpus() {
        if k.is_zero() || j != j_min(k) {
            continue;
        }
        let mode = generic(j, m, k);
        let sigma = if k.is_negative() { k + h(1) } else { k - h(1) };
        for th in thetas() {
            let cur = current_of_mode(&mode, &metric, 0.8, th, Normalization::Stripped).unwrap();
            assert!(cur.jtheta.abs() < 1e-12 && cur.jphi.abs() < 1e-12, "j={j} k={k}");
            let d = monopole_core::wigner::little_d(j, -m, sigma).unwrap().eval(th);
            let amp = if k.is_negative() {
                mode.f[1].norm_sqr() + mode.f[3].norm_sqr()
            } else {
                mode.f[0].norm_sqr() + mode.f[2].norm_sqr()
            };
            assert!((cur.jt - d * d * amp).abs() < 1e-12);
        }
    }
}

#[test]
fn azimuthal_current_survives_above_jmin() {
    let metric = MetricProfile::flat();
    let mode = MonopoleMode::with_parity(h(3), h(1), h(2), c(0.6, 0.2), c(-0.3, 0.7), 1).unwrap();
    let worst = thetas()
        .into_iter()
        .map(|th| current_of_mode(&mode, &metric, 1.0, th, Normalization::Stripped).unwrap().jphi.abs())
        .fold(0.0, f64::max);
    assert!(worst > 1e-3, "{worst}");
}

#[test]
fn currents_are_gauge_invariant() {
    let metric = MetricProfile::flat();
    for (j, m, k) in corpus() {
        let field = generic(j, m, k).to_field().unwrap();
        for g in [Gauge::D, Gauge::WyN, Gauge::WyS] {
            let moved = gauge_transform(&field, g).unwrap();
            for th in [0.3, 1.2, 2.5] {
                for ph in [0.0, 1.9, 4.4] {
                    let a = current_of_field(&field, &metric, 1.0, th, ph, Normalization::Stripped).unwrap();
                    let b = current_of_field(&moved, &metric, 1.0, th, ph, Normalization::Stripped).unwrap();
                    assert!(a.max_diff(&b) < 1e-12);
                }
            }
        }
    }
}

#[test]
fn charge_integrals() {
    let grid = SphereGrid::new(12, 4).unwrap();
    let metric = MetricProfile::flat();
    for (j, m, k) in corpus() {
        let d_norm = 4.0 * PI / (2.0 * j.to_f64() + 1.0);
        if !k.is_zero() && j == j_min(k) {
            let mode = generic(j, m, k);
            let amp: f64 = mode.f.iter().map(|x| x.norm_sqr()).sum();
            let q = total_charge(&mode, &metric, 1.0, &grid).unwrap();
            assert!((q - d_norm * amp).abs() < 1e-12);
            continue;
        }
        let mode = MonopoleMode::with_parity(j, m, k, c(0.6, 0.2), c(-0.3, 0.7), 1).unwrap();
        let q = total_charge(&mode, &metric, 1.0, &grid).unwrap();
        let expect = 2.0 * d_norm * (mode.f[0].norm_sqr() + mode.f[2].norm_sqr());
        assert!((q - expect).abs() < 1e-12, "j={j} m={m} k={k}: {q} vs {expect}");
        // normalized angular part: the D-norm factor drops out, leaving a k-independent value
        let q_norm = q / d_norm;
        assert!((q_norm - 2.0 * (0.4 + 0.58)).abs() < 1e-12);
        // m enters through phases only
        let other = MonopoleMode::with_parity(j, -m, k, c(0.6, 0.2), c(-0.3, 0.7), 1).unwrap();
        assert!((total_charge(&other, &metric, 1.0, &grid).unwrap() - q).abs() < 1e-12);
    }
}
