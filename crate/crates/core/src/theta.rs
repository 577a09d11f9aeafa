//! Exact closed forms `overall * (1-c)^alpha * (1+c)^beta * p(c)` in `c = cos(theta)`.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::halfint::HalfInt;
use crate::poly::RationalPoly;
use crate::scalar::{ratio_to_f64, Real};

/// `sign * sqrt(square)`: closed under products, exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    sign: i8,
    square: BigRational,
}

impl SqrtRational {
    pub fn one() -> Self {
        SqrtRational { sign: 1, square: BigRational::one() }
    }

    pub fn zero() -> Self {
        SqrtRational { sign: 0, square: BigRational::zero() }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        SqrtRational { sign: if q.is_negative() { -1 } else { 1 }, square: q * q }
    }

    /// `sign * sqrt(square)`; `square` must be non-negative.
    pub fn sqrt_of(square: BigRational, sign: i8) -> Self {
        assert!(!square.is_negative(), "square must be non-negative");
        if square.is_zero() || sign == 0 {
            return Self::zero();
        }
        SqrtRational { sign: sign.signum(), square }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn square(&self) -> &BigRational {
        &self.square
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * ratio_to_f64(&self.square).sqrt()
    }

    pub fn to_real<T: Real>(&self) -> T {
        T::lit(self.to_f64())
    }
}

impl Mul for &SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        let sign = self.sign * rhs.sign;
        if sign == 0 {
            return SqrtRational::zero();
        }
        SqrtRational { sign, square: &self.square * &rhs.square }
    }
}

impl Neg for SqrtRational {
    type Output = SqrtRational;
    fn neg(self) -> SqrtRational {
        SqrtRational { sign: -self.sign, square: self.square }
    }
}

/// `overall * (1 - c)^alpha * (1 + c)^beta * poly(c)` with `c = cos(theta)`.
///
/// Evaluation goes through `1 - c = 2 sin^2(theta/2)` and
/// `1 + c = 2 cos^2(theta/2)`, so half-integer exponents are well defined on
/// `[0, pi]`. Negative exponents are allowed (poles at `theta = 0, pi`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaFunction {
    pub alpha: HalfInt,
    pub beta: HalfInt,
    pub poly: RationalPoly,
    pub overall: SqrtRational,
}

impl ThetaFunction {
    pub fn new(alpha: HalfInt, beta: HalfInt, poly: RationalPoly, overall: SqrtRational) -> Self {
        ThetaFunction { alpha, beta, poly, overall }.normalized()
    }

    pub fn zero() -> Self {
        ThetaFunction {
            alpha: HalfInt::ZERO,
            beta: HalfInt::ZERO,
            poly: RationalPoly::zero(),
            overall: SqrtRational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::constant(&BigRational::one())
    }

    pub fn constant(q: &BigRational) -> Self {
        Self::new(HalfInt::ZERO, HalfInt::ZERO, RationalPoly::one(), SqrtRational::from_rational(q))
    }

    /// `(1-c)^alpha (1+c)^beta`.
    pub fn power(alpha: HalfInt, beta: HalfInt) -> Self {
        Self::new(alpha, beta, RationalPoly::one(), SqrtRational::one())
    }

    /// `sin(theta) = (1-c)^{1/2} (1+c)^{1/2}`.
    pub fn sin() -> Self {
        Self::power(HalfInt::HALF, HalfInt::HALF)
    }

    /// `1 / sin(theta)`.
    pub fn csc() -> Self {
        Self::power(-HalfInt::HALF, -HalfInt::HALF)
    }

    /// `cot(theta)`.
    pub fn cot() -> Self {
        Self::new(-HalfInt::HALF, -HalfInt::HALF, RationalPoly::x(), SqrtRational::one())
    }

    pub fn cos() -> Self {
        Self::new(HalfInt::ZERO, HalfInt::ZERO, RationalPoly::x(), SqrtRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() || self.overall.is_zero()
    }

    /// Moves factors of `(1-c)` and `(1+c)` out of the polynomial.
    pub fn normalized(mut self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        while let Some(q) = self.poly.div_one_minus_c() {
            self.poly = q;
            self.alpha = self.alpha + HalfInt::ONE;
        }
        while let Some(q) = self.poly.div_one_plus_c() {
            self.poly = q;
            self.beta = self.beta + HalfInt::ONE;
        }
        // keep the leading rational magnitude inside `overall`
        let lead = self.poly.coeffs().last().cloned().unwrap();
        let inv = BigRational::one() / &lead;
        self.poly = self.poly.scale(&inv);
        self.overall = &self.overall * &SqrtRational::from_rational(&lead);
        self
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        out.overall = &out.overall * &SqrtRational::from_rational(q);
        out.normalized()
    }

    pub fn scale_sqrt(&self, s: &SqrtRational) -> Self {
        let mut out = self.clone();
        out.overall = &out.overall * s;
        out.normalized()
    }

    /// Exact `d/dtheta`.
    pub fn d_theta(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // d/dtheta = -sin(theta) d/dc
        let a = self.alpha.to_ratio();
        let b = self.beta.to_ratio();
        let one_plus = RationalPoly::from_i64(&[1, 1]);
        let one_minus = RationalPoly::from_i64(&[1, -1]);
        let sin2 = RationalPoly::from_i64(&[1, 0, -1]);
        let p = &self.poly;
        let term1 = (&one_plus * p).scale(&a);
        let term2 = (&one_minus * p).scale(&b);
        let term3 = &sin2 * &p.derivative();
        let poly = &(&term1 - &term2) - &term3;
        Self::new(
            self.alpha - HalfInt::HALF,
            self.beta - HalfInt::HALF,
            poly,
            self.overall.clone(),
        )
    }

    /// Exact `d/dc`.
    pub fn d_cos(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let a = self.alpha.to_ratio();
        let b = self.beta.to_ratio();
        let p = &self.poly;
        let term1 = (&RationalPoly::from_i64(&[1, 1]) * p).scale(&-a);
        let term2 = (&RationalPoly::from_i64(&[1, -1]) * p).scale(&b);
        let term3 = &RationalPoly::from_i64(&[1, 0, -1]) * &p.derivative();
        let poly = &(&term1 + &term2) + &term3;
        Self::new(
            self.alpha - HalfInt::ONE,
            self.beta - HalfInt::ONE,
            poly,
            self.overall.clone(),
        )
    }

    /// Exact sum when both terms share the surd class of `overall`;
    /// `None` otherwise.
    pub fn try_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        let da = self.alpha - other.alpha;
        let db = self.beta - other.beta;
        if !da.is_integer() || !db.is_integer() {
            return None;
        }
        // other.overall = ±ratio * sqrt(self square) for a rational ratio
        let ratio = sqrt_rational(&(other.overall.square() / self.overall.square()))?;
        let alpha = self.alpha.min(other.alpha);
        let beta = self.beta.min(other.beta);
        let lift = |f: &Self, scale: &BigRational| -> RationalPoly {
            let pa = (f.alpha - alpha).as_integer().unwrap() as u32;
            let pb = (f.beta - beta).as_integer().unwrap() as u32;
            let p = &(&RationalPoly::one_minus_c_pow(pa) * &RationalPoly::one_plus_c_pow(pb)) * &f.poly;
            let p = p.scale(scale);
            if f.overall.sign() < 0 { -p } else { p }
        };
        let poly = &lift(self, &BigRational::one()) + &lift(other, &ratio);
        let overall = SqrtRational::sqrt_of(self.overall.square().clone(), 1);
        Some(Self::new(alpha, beta, poly, overall))
    }

    /// Value at `theta` (radians).
    pub fn eval<T: Real>(&self, theta: T) -> T {
        if self.is_zero() {
            return T::zero();
        }
        let half = theta * T::lit(0.5);
        let s = half.sin();
        let co = half.cos();
        let two = T::lit(2.0);
        let one_minus = two * s * s;
        let one_plus = two * co * co;
        let pw = |base: T, e: HalfInt| -> T {
            match e.as_integer() {
                Some(0) => T::one(),
                Some(n) => base.powi(n as i32),
                None => base.powf(e.to_real()),
            }
        };
        self.overall.to_real::<T>() * pw(one_minus, self.alpha) * pw(one_plus, self.beta) * self.poly.eval(theta.cos())
    }

    /// Floating-point copy for repeated evaluation.
    pub fn compile<T: Real>(&self) -> CompiledTheta<T> {
        CompiledTheta {
            alpha: self.alpha,
            beta: self.beta,
            overall: self.overall.to_real(),
            coeffs: self.poly.coeffs().iter().map(T::from_ratio).collect(),
        }
    }

    /// Exact `∫_{-1}^{1} f(c) dc` when both exponents are non-negative integers.
    pub fn integrate_polynomial(&self) -> Option<(BigRational, SqrtRational)> {
        let a = self.alpha.as_integer().filter(|&a| a >= 0)? as u32;
        let b = self.beta.as_integer().filter(|&b| b >= 0)? as u32;
        let p = &(&RationalPoly::one_minus_c_pow(a) * &RationalPoly::one_plus_c_pow(b)) * &self.poly;
        Some((p.integrate_symmetric(), self.overall.clone()))
    }
}

impl Mul for &ThetaFunction {
    type Output = ThetaFunction;
    fn mul(self, rhs: &ThetaFunction) -> ThetaFunction {
        if self.is_zero() || rhs.is_zero() {
            return ThetaFunction::zero();
        }
        ThetaFunction::new(
            self.alpha + rhs.alpha,
            self.beta + rhs.beta,
            &self.poly * &rhs.poly,
            &self.overall * &rhs.overall,
        )
    }
}

impl Neg for ThetaFunction {
    type Output = ThetaFunction;
    fn neg(mut self) -> ThetaFunction {
        self.overall = -self.overall;
        self
    }
}

impl fmt::Display for ThetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sign = if self.overall.sign() < 0 { "-" } else { "" };
        write!(
            f,
            "{sign}sqrt({}) (1-c)^({}) (1+c)^({}) [{}]",
            self.overall.square(),
            self.alpha,
            self.beta,
            self.poly
        )
    }
}

/// Exact square root of a rational, when it is a perfect square.
pub fn sqrt_rational(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

pub(crate) fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// A [`ThetaFunction`] with its coefficients rounded to `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompiledTheta<T> {
    alpha: HalfInt,
    beta: HalfInt,
    overall: T,
    coeffs: Vec<T>,
}

impl<T: Real> CompiledTheta<T> {
    pub fn eval(&self, theta: T) -> T {
        if self.coeffs.is_empty() {
            return T::zero();
        }
        let half = theta * T::lit(0.5);
        let (s, co) = (half.sin(), half.cos());
        let two = T::lit(2.0);
        let pw = |base: T, e: HalfInt| match e.as_integer() {
            Some(0) => T::one(),
            Some(n) => base.powi(n as i32),
            None => base.powf(e.to_real()),
        };
        let c = theta.cos();
        let p = self.coeffs.iter().rev().fold(T::zero(), |acc, &a| acc * c + a);
        self.overall * pw(two * s * s, self.alpha) * pw(two * co * co, self.beta) * p
    }
}
