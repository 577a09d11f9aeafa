//! Spinor fields on the sphere, tagged with frame, tetrad, gauge and charge index.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::expansion::Expansion;
use crate::fd::d1_central8;
use crate::halfint::HalfInt;
use crate::pauli::j_min;
use crate::quadrature::SphereGrid;
use crate::scalar::{cis, Real};
use crate::wigner::little_d;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Frame {
    Weyl,
    Pauli,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tetrad {
    Spherical,
    Cartesian,
}

/// Vector-potential choice: `A_phi = g cos`, `g (cos - 1)`, `g (cos - 1)` north, `g (cos + 1)` south.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gauge {
    S,
    D,
    WyN,
    WyS,
}

impl Gauge {
    /// `w` in `A_phi = g (cos - w)`.
    pub fn weight(self) -> i64 {
        match self {
            Gauge::S => 0,
            Gauge::D | Gauge::WyN => 1,
            Gauge::WyS => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gauge::S => "S",
            Gauge::D => "D",
            Gauge::WyN => "WY_N",
            Gauge::WyS => "WY_S",
        }
    }
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One basis state `(f1 D_{k-1/2}, f2 D_{k+1/2}, f3 D_{k-1/2}, f4 D_{k+1/2})`
/// with `D_s = e^{i m phi} d^j_{-m,s}(theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeTerm<T> {
    pub j: HalfInt,
    pub m: HalfInt,
    pub k: HalfInt,
    pub f: [Complex<T>; 4],
}

impl<T: Real> ModeTerm<T> {
    pub fn new(j: HalfInt, m: HalfInt, k: HalfInt, f: [Complex<T>; 4]) -> Result<Self> {
        let jm = j_min(k);
        if j < jm {
            return Err(Error::BelowJmin { j, j_min: jm, k });
        }
        if !(j - k - HalfInt::HALF).is_integer() || m.abs() > j || !(j - m).is_integer() {
            return Err(Error::InvalidIndices(format!("j={j}, m={m}, k={k}")));
        }
        let mode = ModeTerm { j, m, k, f };
        for (i, fi) in f.iter().enumerate() {
            if !mode.populated(i) && !fi.is_zero() {
                return Err(Error::InvalidIndices(format!(
                    "component {} is absent for j = {j}, k = {k}",
                    i + 1
                )));
            }
        }
        Ok(mode)
    }

    /// Lower index of the D-function carried by component `i` (0-based).
    pub fn sigma(&self, i: usize) -> HalfInt {
        if i.is_multiple_of(2) {
            self.k - HalfInt::HALF
        } else {
            self.k + HalfInt::HALF
        }
    }

    pub fn populated(&self, i: usize) -> bool {
        self.sigma(i).abs() <= self.j
    }

    pub fn is_jmin(&self) -> bool {
        self.j == j_min(self.k) && !self.k.is_zero()
    }

    pub fn expansion(&self) -> Vec<Expansion<T>> {
        (0..4)
            .map(|i| match little_d(self.j, -self.m, self.sigma(i)) {
                Ok(d) if !self.f[i].is_zero() => Expansion::from_theta(self.m, &d, self.f[i]),
                _ => Expansion::zero(),
            })
            .collect()
    }
}

pub type FreeFn<T> = Arc<dyn Fn(T, T) -> Complex<T> + Send + Sync>;

/// One field component: a closed-form expansion or a free-form function.
#[derive(Clone)]
pub enum Comp<T> {
    Analytic(Expansion<T>),
    Free(FreeFn<T>),
}

impl<T> fmt::Debug for Comp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comp::Analytic(_) => f.write_str("Analytic"),
            Comp::Free(_) => f.write_str("Free"),
        }
    }
}

impl<T: Real> Comp<T> {
    pub fn zero() -> Self {
        Comp::Analytic(Expansion::zero())
    }

    pub fn eval(&self, theta: T, phi: T) -> Complex<T> {
        match self {
            Comp::Analytic(e) => e.eval(theta, phi),
            Comp::Free(f) => f(theta, phi),
        }
    }

    fn free(&self) -> FreeFn<T> {
        match self {
            Comp::Analytic(e) => {
                let e = e.clone();
                Arc::new(move |t, p| e.eval(t, p))
            }
            Comp::Free(f) => f.clone(),
        }
    }

    fn lift<A, F>(&self, exact: A, numeric: F) -> Self
    where
        A: Fn(&Expansion<T>) -> Expansion<T>,
        F: Fn(FreeFn<T>) -> FreeFn<T>,
    {
        match self {
            Comp::Analytic(e) => Comp::Analytic(exact(e)),
            Comp::Free(f) => Comp::Free(numeric(f.clone())),
        }
    }

    fn pointwise<G: Fn(T, T) -> Complex<T> + Send + Sync + 'static>(f: FreeFn<T>, g: G) -> FreeFn<T> {
        Arc::new(move |t, p| f(t, p) * g(t, p))
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Comp::Analytic(a), Comp::Analytic(b)) => Comp::Analytic(a.add(b)),
            _ => {
                let (f, g) = (self.free(), other.free());
                Comp::Free(Arc::new(move |t, p| f(t, p) + g(t, p)))
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.lift(|e| e.scale(s), |f| Arc::new(move |t, p| f(t, p) * s))
    }

    pub fn d_theta(&self, h: T) -> Self {
        self.lift(Expansion::d_theta, |f| Arc::new(move |t, p| d1_central8(|x| f(x, p), t, h)))
    }

    pub fn d_phi(&self, h: T) -> Self {
        self.lift(Expansion::d_phi, |f| Arc::new(move |t, p| d1_central8(|x| f(t, x), p, h)))
    }

    pub fn mul_cot(&self) -> Self {
        self.lift(Expansion::mul_cot, |f| Self::pointwise(f, |t: T, _| Complex::from(t.cos() / t.sin())))
    }

    pub fn mul_csc(&self) -> Self {
        self.lift(Expansion::mul_csc, |f| Self::pointwise(f, |t: T, _| Complex::from(T::one() / t.sin())))
    }

    pub fn mul_cos_theta(&self) -> Self {
        self.lift(Expansion::mul_cos_theta, |f| Self::pointwise(f, |t: T, _| Complex::from(t.cos())))
    }

    pub fn mul_cos_phi(&self) -> Self {
        self.lift(Expansion::mul_cos_phi, |f| Self::pointwise(f, |_, p: T| Complex::from(p.cos())))
    }

    pub fn mul_sin_phi(&self) -> Self {
        self.lift(Expansion::mul_sin_phi, |f| Self::pointwise(f, |_, p: T| Complex::from(p.sin())))
    }

    pub fn shift_phase(&self, n: HalfInt) -> Self {
        let x = n.to_real::<T>();
        self.lift(|e| e.shift_phase(n), move |f| Self::pointwise(f, move |_, p: T| cis(x * p)))
    }

    /// Multiplies by `coef e^{i phase phi} (1-c)^alpha (1+c)^beta`.
    pub fn mul_monomial(&self, phase: HalfInt, alpha: HalfInt, beta: HalfInt, coef: Complex<T>) -> Self {
        let (ph, a, b) = (phase.to_real::<T>(), alpha.to_real::<T>(), beta.to_real::<T>());
        self.lift(
            |e| e.mul_monomial(phase, alpha, beta, coef),
            move |f| {
                Self::pointwise(f, move |t: T, p: T| {
                    let c = t.cos();
                    cis(ph * p) * coef * (T::one() - c).powf(a) * (T::one() + c).powf(b)
                })
            },
        )
    }

    /// `f(pi - theta, phi + pi)`.
    pub fn reflect(&self) -> Self {
        self.lift(Expansion::reflect, |f| Arc::new(move |t, p| f(T::PI() - t, p + T::PI())))
    }
}

/// A 2- or 4-component spinor field on the sphere.
#[derive(Debug, Clone)]
pub struct SpinorField<T> {
    pub comps: Vec<Comp<T>>,
    pub frame: Frame,
    pub tetrad: Tetrad,
    pub gauge: Gauge,
    pub k: HalfInt,
    /// Basis states the field was assembled from, in the Schwinger gauge.
    pub modes: Option<Vec<ModeTerm<T>>>,
    /// Finite-difference step for free-form components.
    pub fd_step: T,
}

impl<T: Real> SpinorField<T> {
    /// Weyl-frame, spherical-tetrad, Schwinger-gauge superposition of basis states.
    pub fn from_modes(modes: &[ModeTerm<T>]) -> Result<Self> {
        let first = modes.first().ok_or_else(|| Error::Domain("no modes".into()))?;
        let k = first.k;
        if modes.iter().any(|m| m.k != k) {
            return Err(Error::Domain("modes with different k".into()));
        }
        let mut comps = vec![Expansion::zero(); 4];
        for mode in modes {
            for (c, e) in comps.iter_mut().zip(mode.expansion()) {
                *c = c.add(&e);
            }
        }
        Ok(SpinorField {
            comps: comps.into_iter().map(Comp::Analytic).collect(),
            frame: Frame::Weyl,
            tetrad: Tetrad::Spherical,
            gauge: Gauge::S,
            k,
            modes: Some(modes.to_vec()),
            fd_step: T::lit(1e-3),
        })
    }

    pub fn from_mode(mode: ModeTerm<T>) -> Result<Self> {
        Self::from_modes(&[mode])
    }

    /// Free-form field from component functions.
    pub fn from_fns(comps: Vec<FreeFn<T>>, frame: Frame, tetrad: Tetrad, gauge: Gauge, k: HalfInt) -> Result<Self> {
        if comps.len() != 2 && comps.len() != 4 {
            return Err(Error::Domain(format!("{} components", comps.len())));
        }
        Ok(SpinorField {
            comps: comps.into_iter().map(Comp::Free).collect(),
            frame,
            tetrad,
            gauge,
            k,
            modes: None,
            fd_step: T::lit(1e-3),
        })
    }

    /// Same tags, new components; the mode list is dropped.
    pub fn with_comps(&self, comps: Vec<Comp<T>>) -> Self {
        SpinorField { comps, modes: None, ..self.clone() }
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_analytic(&self) -> bool {
        self.comps.iter().all(|c| matches!(c, Comp::Analytic(_)))
    }

    /// Converts every component to free form, forcing finite differences.
    pub fn to_free(&self) -> Self {
        let comps = self.comps.iter().map(|c| Comp::Free(c.free())).collect();
        SpinorField { comps, ..self.clone() }
    }

    pub fn eval(&self, theta: T, phi: T) -> Vec<Complex<T>> {
        self.comps.iter().map(|c| c.eval(theta, phi)).collect()
    }

    /// Samples, theta-major, one vector of components per node.
    pub fn sample(&self, grid: &SphereGrid<T>) -> Vec<Vec<Complex<T>>> {
        grid.points().map(|(t, p)| self.eval(t, p)).collect()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = self.with_comps(self.comps.iter().map(|c| c.scale(s)).collect());
        out.modes = self.modes.as_ref().map(|ms| {
            ms.iter()
                .map(|m| ModeTerm { f: m.f.map(|x| x * s), ..*m })
                .collect()
        });
        out
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Domain("component counts differ".into()));
        }
        if (self.frame, self.tetrad, self.gauge) != (other.frame, other.tetrad, other.gauge) {
            return Err(Error::TagMismatch {
                expected: format!("{:?}/{:?}/{}", self.frame, self.tetrad, self.gauge),
                found: format!("{:?}/{:?}/{}", other.frame, other.tetrad, other.gauge),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_comps(self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex::new(-T::one(), T::zero())))
    }

    pub fn max_abs(&self, grid: &SphereGrid<T>) -> T {
        self.sample(grid)
            .iter()
            .flatten()
            .fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// Entrywise max distance on the grid.
    pub fn distance(&self, other: &Self, grid: &SphereGrid<T>) -> Result<T> {
        self.check_compatible(other)?;
        Ok(max_diff(&self.sample(grid), &other.sample(grid)))
    }

    /// Quadrature inner product `<self, other>` summed over components.
    pub fn inner(&self, other: &Self, grid: &SphereGrid<T>) -> Complex<T> {
        grid.integrate(|t, p| {
            self.eval(t, p)
                .iter()
                .zip(other.eval(t, p))
                .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
        })
    }
}

pub(crate) fn max_diff<T: Real>(a: &[Vec<Complex<T>>], b: &[Vec<Complex<T>>]) -> T {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(T::zero(), |m, (x, y)| m.max((x - y).norm()))
}
