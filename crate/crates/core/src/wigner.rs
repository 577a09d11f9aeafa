//! Wigner d- and D-functions, the `Phi^lambda_{jm}` family and the theta recursions.
//!
//! Convention: `D^j_{a,b}(phi, theta, psi) = e^{-i a phi} d^j_{a,b}(theta) e^{-i b psi}`
//! with `d^{1/2}_{1/2,1/2} = cos(theta/2)` and `d^{1/2}_{1/2,-1/2} = -sin(theta/2)`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::pauli;
use crate::poly::RationalPoly;
use crate::scalar::{cis, Real};
use crate::theta::{factorial, sqrt_rational, SqrtRational, ThetaFunction};

/// Indices `(j, m, lam)` of `Phi^lam_{jm}` / `D^j_{-m, lam}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AngularMode {
    pub j: HalfInt,
    pub m: HalfInt,
    pub lam: HalfInt,
}

impl AngularMode {
    pub fn new(j: HalfInt, m: HalfInt, lam: HalfInt) -> Result<Self> {
        check_indices(j, -m, lam)?;
        Ok(AngularMode { j, m, lam })
    }
}

/// Validates `|a|, |b| <= j` and `j - a`, `j - b` integral.
pub fn check_indices(j: HalfInt, a: HalfInt, b: HalfInt) -> Result<()> {
    if j.is_negative() {
        return Err(Error::NegativeJ(j));
    }
    if a.abs() > j || b.abs() > j || !(j - a).is_integer() || !(j - b).is_integer() {
        return Err(Error::InvalidIndices(format!("d^{j}_{{{a},{b}}}")));
    }
    Ok(())
}

/// Whether `d^j_{a,b}` exists.
pub fn indices_valid(j: HalfInt, a: HalfInt, b: HalfInt) -> bool {
    check_indices(j, a, b).is_ok()
}

fn fact(n: HalfInt) -> BigInt {
    factorial(n.as_integer().expect("integral factorial argument"))
}

/// Exact closed form of `d^j_{a,b}(theta)`.
pub fn little_d(j: HalfInt, a: HalfInt, b: HalfInt) -> Result<ThetaFunction> {
    check_indices(j, a, b)?;
    // Wigner's sum with m' = a, m = b; all exponents in doubled units
    let m_minus_mp = (b - a).as_integer().unwrap();
    let s_min = m_minus_mp.max(0);
    let s_max = (j + b).as_integer().unwrap().min((j - a).as_integer().unwrap());
    let two_j = j.twice_value();
    let p_min = (a + b).twice_value().abs() / 2;
    let q_min = (a - b).twice_value().abs() / 2;
    let mut poly = RationalPoly::zero();
    for s in s_min..=s_max {
        let p = two_j + m_minus_mp - 2 * s;
        let q = -m_minus_mp + 2 * s;
        debug_assert_eq!((p - p_min) % 2, 0);
        let den = fact(j + b - HalfInt::int(s))
            * factorial(s)
            * fact(a - b + HalfInt::int(s))
            * fact(j - a - HalfInt::int(s));
        let sign = if (s - m_minus_mp).rem_euclid(2) == 0 { 1 } else { -1 };
        let coef = BigRational::new(BigInt::from(sign), den);
        let shape = &RationalPoly::one_plus_c_pow(((p - p_min) / 2) as u32)
            * &RationalPoly::one_minus_c_pow(((q - q_min) / 2) as u32);
        poly = &poly + &shape.scale(&coef);
    }
    let f = fact(j + a) * fact(j - a) * fact(j + b) * fact(j - b);
    let square = BigRational::new(f, BigInt::one() << (two_j as usize));
    Ok(ThetaFunction::new(
        HalfInt::from_twice(q_min),
        HalfInt::from_twice(p_min),
        poly,
        SqrtRational::sqrt_of(square, 1),
    ))
}

/// `D^j_{a,b}(phi, theta, psi) = e^{-i a phi} d^j_{a,b}(theta) e^{-i b psi}`.
pub fn big_d<T: Real>(j: HalfInt, a: HalfInt, b: HalfInt, phi: T, theta: T, psi: T) -> Result<Complex<T>> {
    let d = little_d(j, a, b)?.eval(theta);
    Ok(cis(-(a.to_real::<T>() * phi + b.to_real::<T>() * psi)) * d)
}

/// Normalization making `sqrt((2j+1)/4pi) D^j` unit-norm on the sphere.
pub fn sphere_norm<T: Real>(j: HalfInt) -> T {
    ((T::lit(2.0) * j.to_real::<T>() + T::one()) / (T::lit(4.0) * T::PI())).sqrt()
}

/// Unit-normalized `Phi^lam_{jm}(theta, phi) = (-1)^{j-m} sqrt((2j+1)/4pi) D^j_{-m,lam}(phi, theta, 0)`.
pub fn phi_jm<T: Real>(lam: HalfInt, j: HalfInt, m: HalfInt, theta: T, phi: T) -> Result<Complex<T>> {
    let verdict = pauli::is_allowed(lam, j)?;
    if !verdict.allowed {
        return Err(Error::Disallowed { lam, j });
    }
    check_indices(j, -m, lam)?;
    let sign = T::lit((j - m).neg_one_pow().unwrap() as f64);
    Ok(big_d(j, -m, lam, phi, theta, T::zero())? * (sign * sphere_norm::<T>(j)))
}

/// Exact `Phi^lam_{jm}` as `e^{i m phi}` times a theta closed form, for repeated evaluation.
pub fn phi_exact(lam: HalfInt, j: HalfInt, m: HalfInt) -> Result<PhasedTheta> {
    if !pauli::is_allowed(lam, j)?.allowed {
        return Err(Error::Disallowed { lam, j });
    }
    let d = little_d(j, -m, lam)?;
    let sign = BigRational::from_integer(BigInt::from((j - m).neg_one_pow().unwrap()));
    let norm = BigRational::new(BigInt::from(j.twice_value() + 1), BigInt::from(4));
    // the 1/sqrt(pi) is applied at evaluation time by the caller
    Ok(PhasedTheta { phase: m, theta: d.scale(&sign).scale_sqrt(&SqrtRational::sqrt_of(norm, 1)) })
}

/// `1/sqrt(pi)`, the factor left out of [`phi_exact`].
pub fn inv_sqrt_pi<T: Real>() -> T {
    T::one() / T::PI().sqrt()
}

/// A function `e^{i phase phi} theta_part(theta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhasedTheta {
    pub phase: HalfInt,
    pub theta: ThetaFunction,
}

impl PhasedTheta {
    pub fn eval<T: Real>(&self, theta: T, phi: T) -> Complex<T> {
        cis(self.phase.to_real::<T>() * phi) * self.theta.eval(theta)
    }

    pub fn is_zero(&self) -> bool {
        self.theta.is_zero()
    }

    /// Applies `J_± = e^{±i phi} [±d/dtheta + i cot(theta) d/dphi + lam/sin(theta)]` exactly.
    pub fn ladder(&self, lam: HalfInt, raise: bool) -> PhasedTheta {
        let n = self.phase.to_ratio();
        let t = &self.theta;
        let d = t.d_theta();
        let d = if raise { d } else { -d };
        // i cot * (i n) = -n cot
        let cot_term = (&ThetaFunction::cot() * t).scale(&-n);
        let csc_term = (&ThetaFunction::csc() * t).scale(&lam.to_ratio());
        let sum = d
            .try_add(&cot_term)
            .and_then(|x| x.try_add(&csc_term))
            .expect("ladder terms share one surd class");
        let shift = if raise { HalfInt::ONE } else { -HalfInt::ONE };
        PhasedTheta { phase: self.phase + shift, theta: sum }
    }
}

/// Highest-weight `e^{ij phi} sin^j(theta) ((1+c)/(1-c))^{lam/2}`, unnormalized.
pub fn highest_weight(lam: HalfInt, j: HalfInt) -> Result<PhasedTheta> {
    if !pauli::is_allowed(lam, j)?.allowed {
        return Err(Error::Disallowed { lam, j });
    }
    // exponents (j - lam)/2 on (1-c), (j + lam)/2 on (1+c)
    let alpha = HalfInt::from_twice((j - lam).twice_value() / 2);
    let beta = HalfInt::from_twice((j + lam).twice_value() / 2);
    Ok(PhasedTheta { phase: j, theta: ThetaFunction::power(alpha, beta) })
}

/// `Phi^lam_{jm}` obtained by `j - m` exact lowering steps from the highest weight,
/// up to a global constant.
pub fn ladder_construct(lam: HalfInt, j: HalfInt, m: HalfInt) -> Result<PhasedTheta> {
    let mut f = highest_weight(lam, j)?;
    if m.abs() > j || !(j - m).is_integer() {
        return Err(Error::InvalidIndices(format!("m = {m} for j = {j}")));
    }
    let steps = (j - m).as_integer().unwrap();
    for _ in 0..steps {
        f = f.ladder(lam, false);
    }
    Ok(f)
}

/// Coefficients of the theta recursions linking `D_{k±1/2}` (`D_s = D^j_{-m,s}`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Recursion<T> {
    /// `d D_{k+1/2} = a D_{k-1/2} - b D_{k+3/2}`, `d D_{k-1/2} = c D_{k-3/2} - a D_{k+1/2}`
    /// and the matching `(-m - s cos)/sin` relations.
    Full { a: T, b: T, c: T },
    /// `j = |k| - 1/2`: only one of `D_{k±1/2}` exists. For `k > 0`,
    /// `d D_{k-1/2} = coef D_{k-3/2}` and `(-m-(k-1/2)cos)/sin D_{k-1/2} = -coef D_{k-3/2}`
    /// with `coef = sqrt(2k-1)/2`; for `k < 0` the mirror relations
    /// `d D_{k+1/2} = -coef D_{k+3/2}`, `(-m-(k+1/2)cos)/sin D_{k+1/2} = -coef D_{k+3/2}`.
    Degenerate { coef: T, positive_k: bool },
}

pub fn theta_recursions<T: Real>(j: HalfInt, m: HalfInt, k: HalfInt) -> Result<Recursion<T>> {
    let half = HalfInt::HALF;
    let j_min = k.abs() - half;
    if j < j_min || j.is_negative() || !(j - k - half).is_integer() || m.abs() > j || !(j - m).is_integer() {
        return Err(Error::InvalidIndices(format!("recursion j={j}, m={m}, k={k}")));
    }
    let q = |x: HalfInt| x.to_real::<T>();
    let quarter = T::lit(0.5);
    if j == j_min {
        if k.is_zero() {
            return Err(Error::NoJminState);
        }
        let coef = quarter * (T::lit(2.0) * q(k.abs()) - T::one()).sqrt();
        return Ok(Recursion::Degenerate { coef, positive_k: !k.is_negative() });
    }
    let jh = q(j) + T::lit(0.5);
    let kk = q(k);
    let a = quarter * (jh * jh - kk * kk).sqrt();
    let b = quarter * (q(j - k - half) * q(j + k + HalfInt::from_twice(3))).max(T::zero()).sqrt();
    let c = quarter * (q(j + k - half) * q(j - k + HalfInt::from_twice(3))).max(T::zero()).sqrt();
    Ok(Recursion::Full { a, b, c })
}

/// `d^j_{-m, s}(theta)` or zero when the lower index is out of range.
pub fn d_or_zero(j: HalfInt, m: HalfInt, s: HalfInt) -> ThetaFunction {
    little_d(j, -m, s).unwrap_or_else(|_| ThetaFunction::zero())
}

/// Max residual of the recursion identities at the given theta nodes,
/// using exact theta derivatives.
pub fn recursion_residual<T: Real>(j: HalfInt, m: HalfInt, k: HalfInt, thetas: &[T]) -> Result<T> {
    let rec = theta_recursions::<T>(j, m, k)?;
    let h = HalfInt::HALF;
    let d = |s: HalfInt| d_or_zero(j, m, s);
    let (dm3, dm1, dp1, dp3) = (d(k - h - HalfInt::ONE), d(k - h), d(k + h), d(k + h + HalfInt::ONE));
    let (ddm1, ddp1) = (dm1.d_theta(), dp1.d_theta());
    let mm = m.to_real::<T>();
    let mut worst = T::zero();
    for &t in thetas {
        let (s, co) = (t.sin(), t.cos());
        let ang = |sig: HalfInt| (-mm - sig.to_real::<T>() * co) / s;
        let vals = match rec {
            Recursion::Full { a, b, c } => [
                ddp1.eval(t) - (a * dm1.eval(t) - b * dp3.eval(t)),
                ang(k + h) * dp1.eval(t) - (-a * dm1.eval(t) - b * dp3.eval(t)),
                ddm1.eval(t) - (c * dm3.eval(t) - a * dp1.eval(t)),
                ang(k - h) * dm1.eval(t) - (-c * dm3.eval(t) - a * dp1.eval(t)),
            ],
            Recursion::Degenerate { coef, positive_k: true } => [
                ddm1.eval(t) - coef * dm3.eval(t),
                ang(k - h) * dm1.eval(t) + coef * dm3.eval(t),
                T::zero(),
                T::zero(),
            ],
            Recursion::Degenerate { coef, positive_k: false } => [
                ddp1.eval(t) + coef * dp3.eval(t),
                ang(k + h) * dp1.eval(t) + coef * dp3.eval(t),
                T::zero(),
                T::zero(),
            ],
        };
        worst = vals.iter().fold(worst, |w, v| w.max(v.abs()));
    }
    Ok(worst)
}

/// Exact `∫_{-1}^{1} [d^j_{a,b}]^2 dc`, returned as a rational.
pub fn d_norm_exact(j: HalfInt, a: HalfInt, b: HalfInt) -> Result<BigRational> {
    let d = little_d(j, a, b)?;
    let sq = &d * &d;
    let (integral, overall) = sq
        .integrate_polynomial()
        .expect("squared d-function has integral exponents");
    // the overall factor of a square is rational
    let root = sqrt_rational(overall.square()).expect("perfect square");
    Ok(integral * root * BigRational::from_integer(BigInt::from(i64::from(overall.sign()))))
}



#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::d1_central8;
    use crate::halfint::h;
    use crate::quadrature::{gauss_legendre, SphereGrid};

    fn all_pairs(j: HalfInt) -> Vec<HalfInt> {
        (0..=j.twice_value()).map(|i| HalfInt::from_twice(-j.twice_value() + 2 * i)).collect()
    }

    #[test]
    fn small_values() {
        assert!((little_d(h(0), h(0), h(0)).unwrap().eval(1.1f64) - 1.0).abs() < 1e-15);
        let v = little_d(h(1), h(1), h(1)).unwrap().eval(std::f64::consts::FRAC_PI_2);
        assert!((v - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let v = little_d(h(1), h(1), h(-1)).unwrap().eval(0.8f64);
        assert!((v + 0.4f64.sin()).abs() < 1e-15);
        let t = 0.9f64;
        let d1 = little_d(h(2), h(2), h(0)).unwrap().eval(t);
        assert!((d1 + t.sin() / 2f64.sqrt()).abs() < 1e-14);
        assert!(little_d(h(1), h(3), h(1)).is_err());
        assert!(little_d(h(2), h(1), h(0)).is_err());
    }

    #[test]
    fn big_d_example() {
        let v = big_d(h(1), h(1), h(1), 0.3f64, std::f64::consts::FRAC_PI_2, 0.0).unwrap();
        let e = cis(-0.15f64) * 0.5f64.sqrt();
        assert!((v - e).norm() < 1e-15);
    }

    #[test]
    fn norms_exact_and_quadrature() {
        let nodes = gauss_legendre::<f64>(40).unwrap();
        for tj in 0..=7 {
            let j = HalfInt::from_twice(tj);
            for &a in &all_pairs(j) {
                for &b in &all_pairs(j) {
                    let exact = d_norm_exact(j, a, b).unwrap();
                    let expect = BigRational::new(2.into(), BigInt::from(tj + 1));
                    assert_eq!(exact, expect, "j={j} a={a} b={b}");
                    let d = little_d(j, a, b).unwrap();
                    let q: f64 = nodes.iter().map(|&(x, w)| w * d.eval(x.acos()).powi(2)).sum();
                    assert!((q - 2.0 / (tj as f64 + 1.0)).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn rows_are_unitary() {
        for tj in 0..=6 {
            let j = HalfInt::from_twice(tj);
            for &a in &all_pairs(j) {
                let s: f64 = all_pairs(j).iter().map(|&b| little_d(j, a, b).unwrap().eval(1.3f64).powi(2)).sum();
                assert!((s - 1.0).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn phi_normalization() {
        let g = SphereGrid::<f64>::new(24, 16).unwrap();
        let c = phi_jm(h(0), h(0), h(0), 0.4f64, 1.0).unwrap();
        assert!((c.re - 1.0 / (4.0 * std::f64::consts::PI).sqrt()).abs() < 1e-15);
        for (lam, j, m) in [(h(1), h(1), h(-1)), (h(2), h(4), h(0)), (h(-3), h(5), h(1))] {
            let n = g.integrate(|t, p| Complex::from(phi_jm(lam, j, m, t, p).unwrap().norm_sqr()));
            assert!((n.re - 1.0).abs() < 1e-12);
            let e = phi_exact(lam, j, m).unwrap();
            let v = e.eval(0.7f64, 0.2) * inv_sqrt_pi::<f64>();
            assert!((v - phi_jm(lam, j, m, 0.7, 0.2).unwrap()).norm() < 1e-14);
        }
        assert!(matches!(phi_jm(h(1), h(0), h(0), 0.3f64, 0.0), Err(Error::Disallowed { .. })));
    }

    #[test]
    fn gram_matrix_is_identity() {
        let g = SphereGrid::<f64>::new(16, 16).unwrap();
        for tl in -3..=3 {
            let lam = HalfInt::from_twice(tl);
            let mut modes = Vec::new();
            let mut j = lam.abs();
            while j <= h(7) {
                for m in all_pairs(j) {
                    modes.push((j, m));
                }
                j = j + HalfInt::ONE;
            }
            let pts: Vec<(f64, f64)> = g.points().collect();
            let samples: Vec<Vec<Complex<f64>>> = modes
                .iter()
                .map(|&(j, m)| {
                    let f = phi_exact(lam, j, m).unwrap();
                    let ct = f.theta.compile::<f64>();
                    pts.iter().map(|&(t, p)| cis(m.to_f64() * p) * ct.eval(t) * inv_sqrt_pi::<f64>()).collect()
                })
                .collect();
            let w = |i: usize| g.theta_weights()[i / g.phi().len()] * g.phi_weight();
            for (a, sa) in samples.iter().enumerate() {
                for (b, sb) in samples.iter().enumerate() {
                    let v: Complex<f64> = (0..pts.len()).map(|i| sa[i].conj() * sb[i] * w(i)).sum();
                    let (j1, m1) = modes[a];
                    let (j2, m2) = modes[b];
                    let e = if a == b { 1.0 } else { 0.0 };
                    assert!((v - e).norm() < 1e-12, "lam={lam} ({j1},{m1}) ({j2},{m2})");
                }
            }
        }
    }

    #[test]
    fn ladder_matches_phi_with_opposite_lambda() {
        let pts = [(0.4f64, 0.3f64), (1.1, 2.0), (2.3, -1.2)];
        for (lam, j) in [(h(1), h(1)), (h(1), h(3)), (h(2), h(2)), (h(-2), h(4)), (h(3), h(5))] {
            for m in all_pairs(j) {
                let f = ladder_construct(lam, j, m).unwrap();
                let ratios: Vec<Complex<f64>> = pts
                    .iter()
                    .map(|&(t, p)| f.eval(t, p) / phi_jm(-lam, j, m, t, p).unwrap())
                    .collect();
                for r in &ratios[1..] {
                    assert!((r - ratios[0]).norm() < 1e-10 * ratios[0].norm());
                }
            }
            let bottom = ladder_construct(lam, j, -j).unwrap();
            assert!(bottom.ladder(lam, false).is_zero());
        }
    }

    #[test]
    fn recursion_coefficients() {
        match theta_recursions::<f64>(h(2), h(0), h(1)).unwrap() {
            Recursion::Full { a, .. } => assert!((a - 0.5 * 2f64.sqrt()).abs() < 1e-15),
            _ => panic!(),
        }
        match theta_recursions::<f64>(h(3), h(1), h(0)).unwrap() {
            Recursion::Full { a, b, c } => {
                let r3 = 0.75f64.sqrt();
                assert!((a - 1.0).abs() < 1e-15 && (b - r3).abs() < 1e-15 && (c - r3).abs() < 1e-15)
            }
            _ => panic!(),
        }
        assert!(theta_recursions::<f64>(h(1), h(1), h(4)).is_err());
    }

    #[test]
    fn recursions_hold() {
        let thetas: Vec<f64> = (1..20).map(|i| i as f64 * 0.157).collect();
        for tk in -5..=5 {
            let k = HalfInt::from_twice(tk);
            let mut j = if k.is_zero() { h(1) } else { k.abs() - HalfInt::HALF };
            while j <= h(9) {
                for m in all_pairs(j) {
                    let r = recursion_residual(j, m, k, &thetas).unwrap();
                    assert!(r < 1e-12, "j={j} m={m} k={k}: {r}");
                }
                j = j + HalfInt::ONE;
            }
        }
    }

    #[test]
    fn exact_derivative_matches_finite_difference() {
        let d = little_d(h(5), h(1), h(-3)).unwrap();
        let dd = d.d_theta();
        for t in [0.3f64, 1.0, 2.5] {
            let fd = d1_central8(|x| d.eval(x), t, 1e-3);
            assert!((fd - dd.eval(t)).abs() < 1e-8);
        }
    }
}
