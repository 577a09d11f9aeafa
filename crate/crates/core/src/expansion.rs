//! Closed-form angular functions `sum e^{i q phi} (1-c)^alpha (1+c)^beta p(c)`
//! with floating-point polynomial coefficients. Differentiation, trigonometric
//! factors and the reflection `(theta, phi) -> (pi - theta, phi + pi)` act exactly
//! on the representation.

use num_complex::Complex;
use num_traits::Zero;

use crate::halfint::HalfInt;
use crate::scalar::{cis, Real};
use crate::theta::ThetaFunction;

type Poly<T> = Vec<Complex<T>>;

fn poly_add<T: Real>(a: &mut Poly<T>, b: &[Complex<T>]) {
    if a.len() < b.len() {
        a.resize(b.len(), Complex::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += *y;
    }
}

fn poly_scale<T: Real>(a: &[Complex<T>], s: Complex<T>) -> Poly<T> {
    a.iter().map(|x| x * s).collect()
}

/// Multiplies by `c` (`shift`) or by `1 ± c`.
fn poly_mul_c<T: Real>(a: &[Complex<T>]) -> Poly<T> {
    let mut out = vec![Complex::zero()];
    out.extend_from_slice(a);
    out
}

fn poly_mul_linear<T: Real>(a: &[Complex<T>], sign: T) -> Poly<T> {
    let mut out = a.to_vec();
    out.push(Complex::zero());
    for (i, x) in a.iter().enumerate() {
        out[i + 1] += x * sign;
    }
    out
}

fn poly_derivative<T: Real>(a: &[Complex<T>]) -> Poly<T> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, x)| x * T::from_usize(i).unwrap())
        .collect()
}

fn poly_eval<T: Real>(a: &[Complex<T>], c: T) -> Complex<T> {
    a.iter().rev().fold(Complex::zero(), |acc, x| acc * c + x)
}

/// One term `e^{i phase phi} (1-c)^alpha (1+c)^beta p(c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Block<T> {
    pub phase: HalfInt,
    pub alpha: HalfInt,
    pub beta: HalfInt,
    pub poly: Vec<Complex<T>>,
}

impl<T: Real> Block<T> {
    pub fn from_theta(phase: HalfInt, f: &ThetaFunction, coef: Complex<T>) -> Self {
        let scale = coef * f.overall.to_real::<T>();
        Block {
            phase,
            alpha: f.alpha,
            beta: f.beta,
            poly: f.poly.coeffs().iter().map(|q| scale * T::from_ratio(q)).collect(),
        }
    }

    pub fn eval(&self, theta: T, phi: T) -> Complex<T> {
        let half = theta * T::lit(0.5);
        let (s, co) = (half.sin(), half.cos());
        let two = T::lit(2.0);
        let pw = |base: T, e: HalfInt| match e.as_integer() {
            Some(0) => T::one(),
            Some(n) => base.powi(n as i32),
            None => base.powf(e.to_real()),
        };
        let radial = pw(two * s * s, self.alpha) * pw(two * co * co, self.beta);
        cis(self.phase.to_real::<T>() * phi) * poly_eval(&self.poly, theta.cos()) * radial
    }

    fn key(&self) -> (HalfInt, i64, i64) {
        (self.phase, self.alpha.twice_value().rem_euclid(2), self.beta.twice_value().rem_euclid(2))
    }

    /// Rewrites with smaller exponents `(alpha, beta)`; both differences must be integers.
    fn lowered(&self, alpha: HalfInt, beta: HalfInt) -> Self {
        let mut p = self.poly.clone();
        for _ in 0..(self.alpha - alpha).as_integer().unwrap() {
            p = poly_mul_linear(&p, -T::one());
        }
        for _ in 0..(self.beta - beta).as_integer().unwrap() {
            p = poly_mul_linear(&p, T::one());
        }
        Block { phase: self.phase, alpha, beta, poly: p }
    }
}

/// A finite sum of [`Block`]s, merged by phase and exponent class.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Expansion<T> {
    blocks: Vec<Block<T>>,
}

impl<T: Real> Expansion<T> {
    pub fn zero() -> Self {
        Expansion { blocks: Vec::new() }
    }

    pub fn from_block(b: Block<T>) -> Self {
        let mut e = Self::zero();
        e.push(b);
        e
    }

    pub fn from_theta(phase: HalfInt, f: &ThetaFunction, coef: Complex<T>) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        Self::from_block(Block::from_theta(phase, f, coef))
    }

    pub fn blocks(&self) -> &[Block<T>] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn push(&mut self, b: Block<T>) {
        if b.poly.is_empty() {
            return;
        }
        match self.blocks.iter_mut().find(|x| x.key() == b.key()) {
            Some(existing) => {
                let alpha = existing.alpha.min(b.alpha);
                let beta = existing.beta.min(b.beta);
                let mut merged = existing.lowered(alpha, beta);
                poly_add(&mut merged.poly, &b.lowered(alpha, beta).poly);
                *existing = merged;
            }
            None => self.blocks.push(b),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for b in &other.blocks {
            out.push(b.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|b| Block { poly: poly_scale(&b.poly, s), ..b.clone() })
    }

    fn map<F: Fn(&Block<T>) -> Block<T>>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for b in &self.blocks {
            out.push(f(b));
        }
        out
    }

    pub fn eval(&self, theta: T, phi: T) -> Complex<T> {
        self.blocks.iter().fold(Complex::zero(), |acc, b| acc + b.eval(theta, phi))
    }

    pub fn d_phi(&self) -> Self {
        self.map(|b| Block {
            poly: poly_scale(&b.poly, Complex::new(T::zero(), b.phase.to_real())),
            ..b.clone()
        })
    }

    pub fn d_theta(&self) -> Self {
        // d/dtheta = -sin d/dc, sin = (1-c)^{1/2} (1+c)^{1/2}
        self.map(|b| {
            let a = b.alpha.to_real::<T>();
            let bb = b.beta.to_real::<T>();
            let mut q = poly_scale(&poly_mul_linear(&b.poly, T::one()), Complex::from(a));
            poly_add(&mut q, &poly_scale(&poly_mul_linear(&b.poly, -T::one()), Complex::from(-bb)));
            let dp = poly_derivative(&b.poly);
            let one_minus_c2 = poly_mul_linear(&poly_mul_linear(&dp, T::one()), -T::one());
            poly_add(&mut q, &poly_scale(&one_minus_c2, Complex::from(-T::one())));
            Block {
                phase: b.phase,
                alpha: b.alpha - HalfInt::HALF,
                beta: b.beta - HalfInt::HALF,
                poly: q,
            }
        })
    }

    pub fn mul_cos_theta(&self) -> Self {
        self.map(|b| Block { poly: poly_mul_c(&b.poly), ..b.clone() })
    }

    pub fn mul_csc(&self) -> Self {
        self.map(|b| Block { alpha: b.alpha - HalfInt::HALF, beta: b.beta - HalfInt::HALF, ..b.clone() })
    }

    pub fn mul_cot(&self) -> Self {
        self.mul_csc().mul_cos_theta()
    }

    /// Multiplies by `e^{i n phi}`.
    pub fn shift_phase(&self, n: HalfInt) -> Self {
        self.map(|b| Block { phase: b.phase + n, ..b.clone() })
    }

    pub fn mul_cos_phi(&self) -> Self {
        let h = Complex::from(T::lit(0.5));
        self.shift_phase(HalfInt::ONE).scale(h).add(&self.shift_phase(-HalfInt::ONE).scale(h))
    }

    pub fn mul_sin_phi(&self) -> Self {
        let h = Complex::new(T::zero(), -T::lit(0.5));
        self.shift_phase(HalfInt::ONE).scale(h).sub(&self.shift_phase(-HalfInt::ONE).scale(h))
    }

    /// Multiplies by `coef e^{i phase phi} (1-c)^alpha (1+c)^beta`.
    pub fn mul_monomial(&self, phase: HalfInt, alpha: HalfInt, beta: HalfInt, coef: Complex<T>) -> Self {
        self.map(|b| Block {
            phase: b.phase + phase,
            alpha: b.alpha + alpha,
            beta: b.beta + beta,
            poly: poly_scale(&b.poly, coef),
        })
    }

    /// `f(pi - theta, phi + pi)`.
    pub fn reflect(&self) -> Self {
        self.map(|b| {
            let ph = cis(T::PI() * b.phase.to_real());
            let poly = b
                .poly
                .iter()
                .enumerate()
                .map(|(i, x)| if i % 2 == 0 { x * ph } else { -x * ph })
                .collect();
            Block { phase: b.phase, alpha: b.beta, beta: b.alpha, poly }
        })
    }
}
