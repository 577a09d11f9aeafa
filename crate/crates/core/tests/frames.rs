use monopole_core::field::{Frame, ModeTerm, SpinorField};
use monopole_core::frames::*;
use monopole_core::halfint::{h, HalfInt};
use monopole_core::quadrature::SphereGrid;
use num_complex::Complex;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

type C = Complex<f64>;

fn random_kvec(rng: &mut ChaCha8Rng) -> [C; 4] {
    [(); 4].map(|_| C::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
}

fn kvec_strategy() -> impl Strategy<Value = [C; 4]> {
    prop::array::uniform4((-1.5f64..1.5, -1.5f64..1.5)).prop_map(|a| a.map(|(re, im)| C::new(re, im)))
}

fn nonsingular(k: &[C; 4]) -> bool {
    (k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3]).norm() > 1e-2
}

#[test]
fn random_lorentz_matrices_preserve_metric() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 100 {
        let k = random_kvec(&mut rng);
        if !nonsingular(&k) {
            continue;
        }
        let l = sl2c_to_lorentz(k).unwrap();
        assert!(l.metric_defect() < 1e-10, "{:?}", k);
        done += 1;
    }
}

#[test]
fn singular_parameters_are_rejected() {
    let (o, z, i) = (C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 1.0));
    assert!(sl2c_to_lorentz([o, z, z, o]).is_err());
    assert!(sl2c_to_lorentz([z, i, o, z]).is_err());
}

#[test]
fn schrodinger_frame_gives_spherical_tetrad() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let (t, p) = (rng.gen_range(0.01..PI - 0.01), rng.gen_range(0.0..2.0 * PI));
        let tetrad = spherical_tetrad(t, p);
        for sign in [1, -1] {
            let l = lorentz_of(&schrodinger_b(t, p, sign)).unwrap();
            assert!(l.max_diff(&tetrad) < 1e-12);
        }
        // rows of the tetrad are orthonormal in the Euclidean sense
        let m = tetrad.m;
        for a in 1..4 {
            for b in 1..4 {
                let dot: f64 = (1..4).map(|c| m[a][c] * m[b][c]).sum();
                assert!((dot - if a == b { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        // e_r is the radial unit vector
        let rhat = [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
        for c in 0..3 {
            assert!((m[3][c + 1] - rhat[c]).abs() < 1e-14);
        }
    }
}

#[test]
fn schrodinger_frame_is_unimodular_and_unitary() {
    for (t, p) in [(0.2, 0.1), (1.4, 3.3), (2.9, 5.9)] {
        let b = schrodinger_b(t, p, 1);
        assert!((b.det() - 1.0).norm() < 1e-14);
        let one = SpinFrameMatrix::new([[C::new(1.0, 0.0), C::new(0.0, 0.0)], [C::new(0.0, 0.0), C::new(1.0, 0.0)]]);
        assert!(b.mul(&b.dagger()).max_diff(&one) < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lorentz_map_is_a_homomorphism(a in kvec_strategy(), b in kvec_strategy()) {
        prop_assume!(nonsingular(&a) && nonsingular(&b));
        let (ma, mb) = (SpinFrameMatrix::from_kvec(a), SpinFrameMatrix::from_kvec(b));
        let ab = ma.mul(&mb);
        prop_assume!(nonsingular(&ab.kvec()));
        let l_ab = lorentz_of(&ab).unwrap();
        let prod = lorentz_of(&ma).unwrap().mul(&lorentz_of(&mb).unwrap());
        let scale = 1.0 + prod.m.iter().flatten().fold(0.0f64, |x, y| x.max(y.abs()));
        prop_assert!(l_ab.max_diff(&prod) < 1e-10 * scale);
    }

    #[test]
    fn opposite_spin_matrices_share_a_lorentz_image(a in kvec_strategy()) {
        prop_assume!(nonsingular(&a));
        let neg = a.map(|x| -x);
        prop_assert_eq!(sl2c_to_lorentz(a).unwrap(), sl2c_to_lorentz(neg).unwrap());
    }

    #[test]
    fn kvec_round_trip(a in kvec_strategy()) {
        let back = SpinFrameMatrix::from_kvec(a).kvec();
        for i in 0..4 {
            prop_assert!((back[i] - a[i]).norm() < 1e-14);
        }
    }
}

/// `Y_lm` from an associated Legendre recursion, Condon-Shortley phase.
fn ylm(l: i64, m: i64, theta: f64, phi: f64) -> C {
    if m.abs() > l {
        return C::new(0.0, 0.0);
    }
    let am = m.abs();
    let x = theta.cos();
    let mut pmm = 1.0;
    let s = (1.0 - x * x).sqrt();
    for i in 1..=am {
        pmm *= -((2 * i - 1) as f64) * s;
    }
    let p = if l == am {
        pmm
    } else {
        let mut a = pmm;
        let mut b = x * (2 * am + 1) as f64 * pmm;
        for ll in (am + 2)..=l {
            let c = (x * (2 * ll - 1) as f64 * b - (ll + am - 1) as f64 * a) / (ll - am) as f64;
            a = b;
            b = c;
        }
        b
    };
    let f = |n: i64| (1..=n).map(|v| v as f64).product::<f64>();
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * f(l - am) / f(l + am)).sqrt();
    let y = C::from_polar(norm * p, am as f64 * phi);
    if m < 0 {
        y.conj() * if am % 2 == 0 { 1.0 } else { -1.0 }
    } else {
        y
    }
}

/// Spherical spinor from Clebsch-Gordan coupling of `Y_l` with spin 1/2.
fn omega_oracle(tj: i64, tm: i64, plus: bool, theta: f64, phi: f64) -> [C; 2] {
    let (mu, md) = ((tm - 1) / 2, (tm + 1) / 2);
    if plus {
        let l = (tj + 1) / 2;
        let d = (2 * l + 1) as f64;
        let a = -((l as f64 - tm as f64 / 2.0 + 0.5) / d).sqrt();
        let b = ((l as f64 + tm as f64 / 2.0 + 0.5) / d).sqrt();
        [ylm(l, mu, theta, phi) * a, ylm(l, md, theta, phi) * b]
    } else {
        let l = (tj - 1) / 2;
        let d = (2 * l + 1) as f64;
        let a = ((l as f64 + tm as f64 / 2.0 + 0.5) / d).sqrt();
        let b = ((l as f64 - tm as f64 / 2.0 + 0.5) / d).sqrt();
        [ylm(l, mu, theta, phi) * a, ylm(l, md, theta, phi) * b]
    }
}

#[test]
fn spherical_spinors_match_clebsch_gordan_up_to_phase() {
    let grid = SphereGrid::<f64>::new(12, 12).unwrap();
    for tj in (1..=7).step_by(2) {
        for tm in (-tj..=tj).step_by(2) {
            for (branch, plus) in [(OmegaBranch::Plus, true), (OmegaBranch::Minus, false)] {
                let (j, m) = (HalfInt::from_twice(tj), HalfInt::from_twice(tm));
                let pts: Vec<(f64, f64)> = grid.points().collect();
                let ours: Vec<[C; 2]> = pts.iter().map(|&(t, p)| omega_spinor(j, m, branch, t, p).unwrap()).collect();
                let want: Vec<[C; 2]> = pts.iter().map(|&(t, p)| omega_oracle(tj, tm, plus, t, p)).collect();
                let (mut num, mut den) = (C::new(0.0, 0.0), 0.0);
                for (a, b) in ours.iter().zip(&want) {
                    num += b[0].conj() * a[0] + b[1].conj() * a[1];
                    den += b[0].norm_sqr() + b[1].norm_sqr();
                }
                let phase = num / den;
                assert!((phase.norm() - 1.0).abs() < 1e-10, "j={j} m={m} {branch:?}: {phase}");
                for (a, b) in ours.iter().zip(&want) {
                    for i in 0..2 {
                        assert!((a[i] - phase * b[i]).norm() < 1e-10);
                    }
                }
            }
        }
    }
}

#[test]
fn frame_changes_invert() {
    let term = ModeTerm::new(h(3), h(1), h(2), [C::new(0.4, 0.1), C::new(-0.2, 0.6), C::new(0.3, 0.0), C::new(0.0, -0.5)]).unwrap();
    let psi = SpinorField::from_mode(term).unwrap();
    let grid = SphereGrid::new(8, 8).unwrap();
    let pauli = weyl_to_pauli(&psi).unwrap();
    assert_eq!(pauli.frame, Frame::Pauli);
    assert!(weyl_to_pauli(&pauli).is_err());
    let back = pauli_to_weyl(&pauli).unwrap();
    assert!(back.distance(&psi, &grid).unwrap() < 1e-14);
    // the Cartesian blocks are B^{-1} applied to the spherical blocks
    let cart = to_cartesian(&psi).unwrap();
    assert!(to_cartesian(&cart).is_err());
    for (t, p) in grid.points() {
        let v = psi.eval(t, p);
        let w = cart.eval(t, p);
        let bi = schrodinger_b(t, p, 1).dagger();
        for blk in 0..2 {
            let want = bi.apply([v[2 * blk], v[2 * blk + 1]]);
            assert!((w[2 * blk] - want[0]).norm() < 1e-12 && (w[2 * blk + 1] - want[1]).norm() < 1e-12);
        }
    }
}
