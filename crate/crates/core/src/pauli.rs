//! The Pauli criterion, Dirac charge quantization and the allowed-j ladder.

use num_complex::Complex;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::fd::d1_central8;
use crate::halfint::HalfInt;
use crate::poly::RationalPoly;
use crate::quadrature::SphereGrid;
use crate::scalar::{cis, Real};
use crate::theta::ThetaFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriterionReason {
    LambdaNotHalfInteger,
    ExponentsNotNonnegIntegers,
    Ok,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CriterionVerdict {
    pub allowed: bool,
    pub reason: CriterionReason,
    /// Exact verdict on `(d/dc)^{2j+1} [(1+c)^{j+lam} (1-c)^{j-lam}] == 0`.
    pub derivative_is_zero: bool,
}

/// Decides whether `Phi^lam_{j,-j}` built by lowering is annihilated by `J_-`.
///
/// Closed form: `j + lam` and `j - lam` must both be non-negative integers.
/// The oracle differentiates `(1+c)^{j+lam} (1-c)^{j-lam}` exactly, `2j + 1` times.
pub fn is_allowed(lam: HalfInt, j: HalfInt) -> Result<CriterionVerdict> {
    if j.is_negative() {
        return Err(Error::NegativeJ(j));
    }
    let allowed = (j + lam).is_nonneg_integer() && (j - lam).is_nonneg_integer();
    Ok(CriterionVerdict {
        allowed,
        reason: if allowed { CriterionReason::Ok } else { CriterionReason::ExponentsNotNonnegIntegers },
        derivative_is_zero: derivative_oracle(lam, j),
    })
}

/// Same criterion for an arbitrary rational `lam`.
pub fn is_allowed_rational(lam: Ratio<i64>, j: HalfInt) -> Result<CriterionVerdict> {
    match HalfInt::from_ratio(lam) {
        Ok(l) => is_allowed(l, j),
        Err(_) if j.is_negative() => Err(Error::NegativeJ(j)),
        // non-half-integer exponents never produce a polynomial
        Err(_) => Ok(CriterionVerdict {
            allowed: false,
            reason: CriterionReason::LambdaNotHalfInteger,
            derivative_is_zero: false,
        }),
    }
}

fn derivative_oracle(lam: HalfInt, j: HalfInt) -> bool {
    let order = j.twice_value() as usize + 1;
    let (p, q) = (j + lam, j - lam);
    if p.is_nonneg_integer() && q.is_nonneg_integer() {
        let expanded = &RationalPoly::one_plus_c_pow(p.as_integer().unwrap() as u32)
            * &RationalPoly::one_minus_c_pow(q.as_integer().unwrap() as u32);
        return expanded.derivative_n(order).is_zero();
    }
    // half-odd or negative exponents: differentiate the closed form exactly
    let mut f = ThetaFunction::power(q, p);
    for _ in 0..order {
        f = f.d_cos();
        if f.is_zero() {
            return true;
        }
    }
    f.is_zero()
}

/// `|lam|, |lam| + 1, ...` (`count` values).
pub fn allowed_j(lam: HalfInt, count: usize) -> Result<Vec<HalfInt>> {
    if count == 0 {
        return Err(Error::Domain("count must be at least 1".into()));
    }
    Ok((0..count as i64).map(|i| lam.abs() + HalfInt::int(i)).collect())
}

/// Allowed `j` for `allowed_j` given a rational `lam`; rejects non-half-integers.
pub fn allowed_j_rational(lam: Ratio<i64>, count: usize) -> Result<Vec<HalfInt>> {
    allowed_j(HalfInt::from_ratio(lam)?, count)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantization {
    pub valid: bool,
    pub j_min: HalfInt,
    pub j_list: Vec<HalfInt>,
    /// `k = 0` is the free electron, admitted for continuity with the monopole family.
    pub free: bool,
}

/// Smallest `j` for the spinor doublet at charge `k = eg`.
pub fn j_min(k: HalfInt) -> HalfInt {
    if k.is_zero() {
        HalfInt::HALF
    } else {
        k.abs() - HalfInt::HALF
    }
}

/// Dirac quantization for the doublet `lam = k ± 1/2`: `j = j_min, j_min + 1, ...`.
pub fn spinor_quantization(k: HalfInt, count: usize) -> Quantization {
    let jm = j_min(k);
    Quantization {
        valid: true,
        j_min: jm,
        j_list: (0..count as i64).map(|i| jm + HalfInt::int(i)).collect(),
        free: k.is_zero(),
    }
}

/// Rational-charge entry point: non-half-integer `eg` is rejected.
pub fn spinor_quantization_rational(k: Ratio<i64>, count: usize) -> Result<Quantization> {
    let k = HalfInt::from_ratio(k).map_err(|_| Error::NotQuantized(k.to_string()))?;
    Ok(spinor_quantization(k, count))
}

/// The lowest-weight function `Phi^lam_{j,-j}` of the lowering construction,
/// up to normalization, evaluated directly from its closed form. Defined for
/// disallowed pairs too (away from the poles).
pub fn lowest_weight_closed_form<T: Real>(lam: HalfInt, j: HalfInt) -> impl Fn(T, T) -> Complex<T> {
    let q = {
        let mut f = ThetaFunction::power(j - lam, j + lam);
        for _ in 0..j.twice_value() {
            f = f.d_cos();
        }
        f
    };
    let e1 = (j + lam).to_real::<T>() * T::lit(0.5);
    let e2 = (j - lam).to_real::<T>() * T::lit(0.5);
    let jr = j.to_real::<T>();
    move |theta: T, phi: T| {
        let half = theta * T::lit(0.5);
        let two = T::lit(2.0);
        // sin^j (theta) ((1-c)/(1+c))^{lam/2} = (1-c)^{(j+lam)/2} (1+c)^{(j-lam)/2}
        let w = (two * half.sin().powi(2)).powf(e1) * (two * half.cos().powi(2)).powf(e2);
        cis(-jr * phi) * (w * q.eval(theta))
    }
}

/// Grid max-norm of `J_- Phi^lam_{j,-j}` relative to `max |Phi^lam_{j,-j}|`.
///
/// The theta derivative is an eighth-order finite difference, independent of
/// the exact derivative used by the oracle.
pub fn annihilation_residual<T: Real>(lam: HalfInt, j: HalfInt, grid: &SphereGrid<T>) -> Result<T> {
    if j.is_negative() {
        return Err(Error::NegativeJ(j));
    }
    let f = lowest_weight_closed_form::<T>(lam, j);
    let h = T::lit(1e-3).min(grid.theta()[0] * T::lit(0.2));
    let jr = j.to_real::<T>();
    let lr = lam.to_real::<T>();
    let mut num = T::zero();
    let mut den = T::zero();
    for (t, p) in grid.points() {
        let v = f(t, p);
        let dv = d1_central8(|x| f(x, p), t, h);
        let (s, co) = (t.sin(), t.cos());
        // J_- = e^{-i phi}[-d_theta + i cot d_phi + lam/sin], d_phi -> -i j
        let jm = cis(-p) * (-dv + v * (jr * co / s + lr / s));
        num = num.max(jm.norm());
        den = den.max(v.norm());
    }
    Ok(if den > T::zero() { num / den } else { num })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfint::h;

    #[test]
    fn verdict_examples() {
        let v = is_allowed(h(1), h(1)).unwrap();
        assert!(v.allowed && v.derivative_is_zero && v.reason == CriterionReason::Ok);
        let v = is_allowed(h(1), h(0)).unwrap();
        assert!(!v.allowed && !v.derivative_is_zero);
        let v = is_allowed(h(2), h(6)).unwrap();
        assert!(v.allowed && v.derivative_is_zero);
        assert!(is_allowed(h(1), h(-2)).is_err());
        let v = is_allowed_rational(Ratio::new(1, 3), h(2)).unwrap();
        assert_eq!(v.reason, CriterionReason::LambdaNotHalfInteger);
    }

    #[test]
    fn allowed_j_lists() {
        assert_eq!(allowed_j(h(-3), 3).unwrap(), vec![h(3), h(5), h(7)]);
        assert_eq!(allowed_j(h(0), 3).unwrap(), vec![h(0), h(2), h(4)]);
        assert!(allowed_j_rational(Ratio::new(7, 10), 3).is_err());
        assert!(allowed_j(h(1), 0).is_err());
    }

    #[test]
    fn quantization_examples() {
        let q = spinor_quantization(h(2), 3);
        assert_eq!(q.j_min, h(1));
        assert_eq!(q.j_list, vec![h(1), h(3), h(5)]);
        assert_eq!(spinor_quantization(h(1), 1).j_min, h(0));
        let free = spinor_quantization(h(0), 2);
        assert!(free.free);
        assert_eq!(free.j_list, vec![h(1), h(3)]);
        assert!(spinor_quantization_rational(Ratio::new(1, 3), 2).is_err());
    }

    #[test]
    fn annihilation_examples() {
        let g = SphereGrid::<f64>::new(24, 8).unwrap();
        assert!(annihilation_residual(h(1), h(1), &g).unwrap() < 1e-8);
        assert!(annihilation_residual(h(2), h(4), &g).unwrap() < 1e-8);
        assert!(annihilation_residual(h(1), h(2), &g).unwrap() > 1e-3);
    }
}
