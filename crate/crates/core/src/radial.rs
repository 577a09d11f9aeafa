//! Radial systems: the flat four-component system, its parity reduction, the
//! `j_min` closed forms, curved spherically symmetric backgrounds and the
//! spherical/Lobachevski `chi` solutions.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fd::d1_central8;
use crate::halfint::HalfInt;
use crate::ops::nu;
use crate::scalar::Real;

pub type State4<T> = [Complex<T>; 4];
pub type State2<T> = [Complex<T>; 2];

#[derive(Debug, Clone, PartialEq)]
pub enum Amplitudes<T> {
    /// `(f1, f2, f3, f4)` per radius.
    Full(Vec<State4<T>>),
    /// `(f, g)` per radius, with `f = (f1+f2)/sqrt2`, `g = (f1-f2)/(i sqrt2)`.
    Reduced(Vec<State2<T>>),
}

/// Sampled radial amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialState<T> {
    pub r: Vec<T>,
    pub amps: Amplitudes<T>,
    pub eps: T,
    pub mass: T,
    pub nu: T,
    pub delta: Option<i8>,
}

impl<T: Real> RadialState<T> {
    /// The four amplitudes at sample `i` (expanded when reduced).
    pub fn full_at(&self, i: usize) -> Result<State4<T>> {
        match &self.amps {
            Amplitudes::Full(v) => Ok(v[i]),
            Amplitudes::Reduced(v) => {
                let d = self.delta.ok_or_else(|| Error::InvalidParity("reduced state without delta".into()))?;
                parity_expand(v[i], d)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }
}

/// Flat four-component system solved for the derivatives:
/// `f1' = i eps f1 - nu/r f2 - i m f3`, `f2' = -i eps f2 - nu/r f1 + i m f4`,
/// `f3' = -i eps f3 - nu/r f4 + i m f1`, `f4' = i eps f4 - nu/r f3 - i m f2`.
pub fn flat_rhs_nu<T: Real>(nu: T, eps: T, m: T, r: T, y: &State4<T>) -> Result<State4<T>> {
    if r <= T::zero() {
        return Err(Error::NonPositiveRadius(r.to_f64().unwrap_or(f64::NAN)));
    }
    let i = Complex::new(T::zero(), T::one());
    let (ie, im, n) = (i * eps, i * m, nu / r);
    Ok([
        ie * y[0] - y[1] * n - im * y[2],
        -ie * y[1] - y[0] * n + im * y[3],
        -ie * y[2] - y[3] * n + im * y[0],
        ie * y[3] - y[2] * n - im * y[1],
    ])
}

/// [`flat_rhs_nu`] with `nu = sqrt((j+1/2)^2 - k^2)`.
pub fn flat_rhs<T: Real>(k: HalfInt, j: HalfInt, eps: T, m: T, r: T, y: &State4<T>) -> Result<State4<T>> {
    flat_rhs_nu(nu::<T>(j, k), eps, m, r, y)
}

fn check_delta(delta: i8) -> Result<()> {
    match delta {
        1 | -1 => Ok(()),
        _ => Err(Error::InvalidParity(format!("delta = {delta}"))),
    }
}

/// `(f1..f4) -> (f, g)`; the input must satisfy `f4 = delta f1`, `f3 = delta f2`.
pub fn parity_reduce<T: Real>(y: &State4<T>, delta: i8) -> Result<State2<T>> {
    check_delta(delta)?;
    let d = T::from_i8(delta).unwrap();
    let scale = y.iter().fold(T::zero(), |m, v| m.max(v.norm())).max(T::one());
    let tol = T::lit(1e3) * T::eps() * scale;
    if (y[3] - y[0] * d).norm() > tol || (y[2] - y[1] * d).norm() > tol {
        return Err(Error::InvalidParity("state is not delta-constrained".into()));
    }
    let s = T::FRAC_1_SQRT_2();
    let i = Complex::new(T::zero(), T::one());
    Ok([(y[0] + y[1]) * s, (y[0] - y[1]) * s / i])
}

/// Inverse of [`parity_reduce`].
pub fn parity_expand<T: Real>(fg: State2<T>, delta: i8) -> Result<State4<T>> {
    check_delta(delta)?;
    let d = T::from_i8(delta).unwrap();
    let s = T::FRAC_1_SQRT_2();
    let i = Complex::new(T::zero(), T::one());
    let f1 = (fg[0] + i * fg[1]) * s;
    let f2 = (fg[0] - i * fg[1]) * s;
    Ok([f1, f2, f2 * d, f1 * d])
}

/// Reduced pair: `f' = -nu/r f - (eps + delta m) g`, `g' = nu/r g + (eps - delta m) f`.
pub fn reduced_rhs<T: Real>(nu: T, delta: i8, eps: T, m: T, r: T, y: &State2<T>) -> Result<State2<T>> {
    flat_metric_rhs(nu, delta, eps, m, r, y, T::zero(), T::zero())
}

#[allow(clippy::too_many_arguments)]
fn flat_metric_rhs<T: Real>(nu: T, delta: i8, eps: T, m: T, r: T, y: &State2<T>, nu_m: T, mu_m: T) -> Result<State2<T>> {
    check_delta(delta)?;
    if r <= T::zero() {
        return Err(Error::NonPositiveRadius(r.to_f64().unwrap_or(f64::NAN)));
    }
    let dm = T::from_i8(delta).unwrap() * m;
    let e = eps * (-nu_m * T::lit(0.5)).exp();
    let s = (mu_m * T::lit(0.5)).exp();
    Ok([
        (-y[0] * (nu / r) - y[1] * (e + dm)) * s,
        (y[1] * (nu / r) + y[0] * (e - dm)) * s,
    ])
}

/// Metric exponents `nu(r)`, `mu(r)` of `dS^2 = e^nu dt^2 - e^mu dr^2 - r^2 dOmega^2`.
#[derive(Clone)]
pub struct MetricProfile<T> {
    pub name: String,
    pub nu: Arc<dyn Fn(T) -> T + Send + Sync>,
    pub mu: Arc<dyn Fn(T) -> T + Send + Sync>,
    pub chi_map: Option<Geometry>,
    /// Open upper bound of the radial domain, if any.
    pub r_max: Option<T>,
}

impl<T: Real> fmt::Debug for MetricProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MetricProfile({})", self.name)
    }
}

impl<T: Real> MetricProfile<T> {
    pub fn flat() -> Self {
        MetricProfile {
            name: "flat".into(),
            nu: Arc::new(|_| T::zero()),
            mu: Arc::new(|_| T::zero()),
            chi_map: None,
            r_max: None,
        }
    }

    /// `e^mu = 1/(1 - r^2)`, `r = sin chi`.
    pub fn spherical() -> Self {
        MetricProfile {
            name: "spherical".into(),
            nu: Arc::new(|_| T::zero()),
            mu: Arc::new(|r: T| -(T::one() - r * r).ln()),
            chi_map: Some(Geometry::Spherical),
            r_max: Some(T::one()),
        }
    }

    /// `e^mu = 1/(1 + r^2)`, `r = sinh chi`.
    pub fn lobachevski() -> Self {
        MetricProfile {
            name: "lobachevski".into(),
            nu: Arc::new(|_| T::zero()),
            mu: Arc::new(|r: T| -(T::one() + r * r).ln()),
            chi_map: Some(Geometry::Lobachevski),
            r_max: None,
        }
    }

    pub fn custom<N, M>(name: &str, nu: N, mu: M) -> Self
    where
        N: Fn(T) -> T + Send + Sync + 'static,
        M: Fn(T) -> T + Send + Sync + 'static,
    {
        MetricProfile { name: name.into(), nu: Arc::new(nu), mu: Arc::new(mu), chi_map: None, r_max: None }
    }

    /// `(nu(r), mu(r))`, rejecting points where the metric degenerates.
    pub fn exponents(&self, r: T) -> Result<(T, T)> {
        if r <= T::zero() {
            return Err(Error::NonPositiveRadius(r.to_f64().unwrap_or(f64::NAN)));
        }
        if self.r_max.is_some_and(|rm| r >= rm) {
            return Err(Error::NonPositiveMetric(r.to_f64().unwrap_or(f64::NAN)));
        }
        let (n, m) = ((self.nu)(r), (self.mu)(r));
        if !n.is_finite() || !m.is_finite() {
            return Err(Error::NonPositiveMetric(r.to_f64().unwrap_or(f64::NAN)));
        }
        Ok((n, m))
    }

    /// `sqrt(-det g) / (r^2 sin theta) = e^{(nu+mu)/2}`.
    pub fn volume_factor(&self, r: T) -> Result<T> {
        let (n, m) = self.exponents(r)?;
        Ok(((n + m) * T::lit(0.5)).exp())
    }
}

/// Curved reduced pair:
/// `f' = e^{mu/2} [-nu_a/r f - (eps e^{-nu/2} + delta m) g]`,
/// `g' = e^{mu/2} [ nu_a/r g + (eps e^{-nu/2} - delta m) f]`.
#[allow(clippy::too_many_arguments)]
pub fn curved_rhs<T: Real>(
    metric: &MetricProfile<T>,
    k: HalfInt,
    j: HalfInt,
    delta: i8,
    eps: T,
    m: T,
    r: T,
    y: &State2<T>,
) -> Result<State2<T>> {
    let (n, mu) = metric.exponents(r)?;
    flat_metric_rhs(nu::<T>(j, k), delta, eps, m, r, y, n, mu)
}

/// `j_min` pair on a curved background. For `k > 0` the state is `(f1, f3)`:
/// `eps e^{-nu/2} f1 + i e^{-mu/2} f1' - m f3 = 0`,
/// `eps e^{-nu/2} f3 - i e^{-mu/2} f3' - m f1 = 0`; for `k < 0` it is `(f4, f2)`.
pub fn curved_jmin_rhs<T: Real>(metric: &MetricProfile<T>, k: HalfInt, eps: T, m: T, r: T, y: &State2<T>) -> Result<State2<T>> {
    if k.abs() < HalfInt::HALF {
        return Err(Error::NoJminState);
    }
    let (n, mu) = metric.exponents(r)?;
    let e = eps * (-n * T::lit(0.5)).exp();
    let s = (mu * T::lit(0.5)).exp();
    let mi = Complex::new(T::zero(), -T::one());
    Ok([mi * s * (y[1] * m - y[0] * e), mi * s * (y[1] * e - y[0] * m)])
}

/// Sample radii and the states reached there.
pub type Trajectory<T, const N: usize> = (Vec<T>, Vec<[Complex<T>; N]>);

/// Classical fourth-order Runge-Kutta with `n` equal steps from `r0` to `r1`.
pub fn rk4<T: Real, const N: usize, F>(rhs: F, r0: T, r1: T, n: usize, y0: [Complex<T>; N]) -> Result<Trajectory<T, N>>
where
    F: Fn(T, &[Complex<T>; N]) -> Result<[Complex<T>; N]>,
{
    if n == 0 {
        return Err(Error::Domain("at least one step".into()));
    }
    let h = (r1 - r0) / T::from_usize(n).unwrap();
    let half = T::lit(0.5);
    let axpy = |y: &[Complex<T>; N], k: &[Complex<T>; N], s: T| -> [Complex<T>; N] {
        let mut out = *y;
        for (o, kk) in out.iter_mut().zip(k) {
            *o += kk * s;
        }
        out
    };
    let mut rs = Vec::with_capacity(n + 1);
    let mut ys = Vec::with_capacity(n + 1);
    let mut y = y0;
    rs.push(r0);
    ys.push(y);
    for step in 0..n {
        let r = r0 + h * T::from_usize(step).unwrap();
        let k1 = rhs(r, &y)?;
        let k2 = rhs(r + h * half, &axpy(&y, &k1, h * half))?;
        let k3 = rhs(r + h * half, &axpy(&y, &k2, h * half))?;
        let k4 = rhs(r + h, &axpy(&y, &k3, h))?;
        for i in 0..N {
            y[i] += (k1[i] + k2[i] * T::lit(2.0) + k3[i] * T::lit(2.0) + k4[i]) * (h / T::lit(6.0));
        }
        rs.push(r0 + h * T::from_usize(step + 1).unwrap());
        ys.push(y);
    }
    Ok((rs, ys))
}

/// RK4 solution of the flat four-component system.
#[allow(clippy::too_many_arguments)]
pub fn solve_flat<T: Real>(k: HalfInt, j: HalfInt, eps: T, m: T, r0: T, r1: T, n: usize, y0: State4<T>) -> Result<RadialState<T>> {
    let nu_v = nu::<T>(j, k);
    let (r, ys) = rk4(|r, y| flat_rhs_nu(nu_v, eps, m, r, y), r0, r1, n, y0)?;
    Ok(RadialState { r, amps: Amplitudes::Full(ys), eps, mass: m, nu: nu_v, delta: None })
}

/// RK4 solution of the parity-reduced pair on a (possibly curved) background.
#[allow(clippy::too_many_arguments)]
pub fn solve_reduced<T: Real>(
    metric: &MetricProfile<T>,
    k: HalfInt,
    j: HalfInt,
    delta: i8,
    eps: T,
    m: T,
    r0: T,
    r1: T,
    n: usize,
    y0: State2<T>,
) -> Result<RadialState<T>> {
    let (r, ys) = rk4(|r, y| curved_rhs(metric, k, j, delta, eps, m, r, y), r0, r1, n, y0)?;
    Ok(RadialState { r, amps: Amplitudes::Reduced(ys), eps, mass: m, nu: nu::<T>(j, k), delta: Some(delta) })
}

/// Observed order `log2(|y_n - y_2n| / |y_2n - y_4n|)` of the end-point value.
pub fn convergence_order<T: Real, const N: usize, F>(rhs: F, r0: T, r1: T, n: usize, y0: [Complex<T>; N]) -> Result<T>
where
    F: Fn(T, &[Complex<T>; N]) -> Result<[Complex<T>; N]>,
{
    let end = |steps: usize| -> Result<[Complex<T>; N]> { Ok(*rk4(&rhs, r0, r1, steps, y0)?.1.last().unwrap()) };
    let (a, b, c) = (end(n)?, end(2 * n)?, end(4 * n)?);
    let dist = |x: &[Complex<T>; N], y: &[Complex<T>; N]| x.iter().zip(y).fold(T::zero(), |m, (p, q)| m.max((p - q).norm()));
    Ok((dist(&a, &b) / dist(&b, &c)).log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum JminBranch {
    /// `exp(-sqrt(m^2 - eps^2) r)`, requires `|eps| < m`.
    Decaying,
    /// `exp(+sqrt(m^2 - eps^2) r)`.
    Growing,
}

/// Closed-form `j_min` solution `f = exp(kappa r)` and its partner amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct JminSolution<T> {
    pub k: HalfInt,
    pub kappa: Complex<T>,
    /// `(eps + i kappa) / m`: partner amplitude per unit primary amplitude.
    pub partner: Complex<T>,
    pub state: RadialState<T>,
}

impl<T: Real> JminSolution<T> {
    pub fn primary(&self, r: T) -> Complex<T> {
        (self.kappa * r).exp()
    }

    /// `(primary, partner)` at `r`: `(f1, f3)` for `k > 0`, `(f4, f2)` for `k < 0`.
    pub fn pair(&self, r: T) -> State2<T> {
        let p = self.primary(r);
        [p, p * self.partner]
    }
}

/// `f'' + (eps^2 - m^2) f = 0` with `f3 = (eps f1 + i f1')/m` (`k > 0`) or
/// `f2 = (eps f4 + i f4')/m` (`k < 0`).
pub fn jmin_solve<T: Real>(k: HalfInt, eps: T, m: T, r: &[T], branch: JminBranch) -> Result<JminSolution<T>> {
    if k.abs() < HalfInt::HALF {
        return Err(Error::NoJminState);
    }
    if r.iter().any(|&x| x <= T::zero()) {
        return Err(Error::NonPositiveRadius(0.0));
    }
    let disc = m * m - eps * eps;
    if branch == JminBranch::Decaying && disc <= T::zero() {
        return Err(Error::NoBoundBranch);
    }
    if m == T::zero() {
        return Err(Error::ZeroMass);
    }
    let root = Complex::new(disc, T::zero()).sqrt();
    let kappa = match branch {
        JminBranch::Decaying => -root,
        JminBranch::Growing => root,
    };
    let i = Complex::new(T::zero(), T::one());
    let partner = (i * kappa + eps) / m;
    let mut sol = JminSolution {
        k,
        kappa,
        partner,
        state: RadialState {
            r: r.to_vec(),
            amps: Amplitudes::Full(Vec::new()),
            eps,
            mass: m,
            nu: T::zero(),
            delta: None,
        },
    };
    let amps = r
        .iter()
        .map(|&x| {
            let [p, q] = sol.pair(x);
            let z = Complex::zero();
            if k.is_negative() {
                [z, q, z, p]
            } else {
                [p, z, q, z]
            }
        })
        .collect();
    sol.state.amps = Amplitudes::Full(amps);
    Ok(sol)
}

/// Oscillatory or degenerate exponents for `eps >= m`: `kappa = ± i sqrt(eps^2 - m^2)`.
pub fn jmin_solve_with_kappa<T: Real>(k: HalfInt, eps: T, m: T, r: &[T], sign: i8) -> Result<JminSolution<T>> {
    if m == T::zero() {
        return Err(Error::ZeroMass);
    }
    let disc = m * m - eps * eps;
    let root = Complex::new(disc, T::zero()).sqrt();
    let kappa = if sign >= 0 { root } else { -root };
    let mut sol = jmin_solve(k, eps, m, r, JminBranch::Growing)?;
    let i = Complex::new(T::zero(), T::one());
    sol.kappa = kappa;
    sol.partner = (i * kappa + eps) / m;
    let amps = r
        .iter()
        .map(|&x| {
            let [p, q] = sol.pair(x);
            let z = Complex::zero();
            if k.is_negative() {
                [z, q, z, p]
            } else {
                [p, z, q, z]
            }
        })
        .collect();
    sol.state.amps = Amplitudes::Full(amps);
    Ok(sol)
}

/// Max relative residual of the first-order flat `j_min` pair, derivatives by finite differences.
pub fn jmin_first_order_residual<T: Real>(sol: &JminSolution<T>, r: &[T]) -> T {
    let i = Complex::new(T::zero(), T::one());
    let (eps, m) = (sol.state.eps, sol.state.mass);
    let h = T::lit(1e-3);
    let mut worst = T::zero();
    for &x in r {
        let [p, q] = sol.pair(x);
        let dp = d1_central8(|y| sol.pair(y)[0], x, h);
        let dq = d1_central8(|y| sol.pair(y)[1], x, h);
        let e1 = p * eps + i * dp - q * m;
        let e2 = q * eps - i * dq - p * m;
        let scale = p.norm().max(q.norm());
        worst = worst.max(e1.norm().max(e2.norm()) / scale);
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    /// `r = sin chi`, `chi` in `[0, pi]` (`[0, pi/2]` for the elliptic model).
    Spherical,
    /// `r = sinh chi`, `chi >= 0`.
    Lobachevski,
}

/// `f(chi) = exp(sign sqrt(m^2 - eps^2) chi)` and the radius it sits at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedForm<T> {
    pub value: Complex<T>,
    pub kappa: Complex<T>,
    pub r: T,
}

pub fn closed_geometry<T: Real>(geometry: Geometry, eps: T, m: T, chi: T, sign: i8, elliptic: bool) -> Result<ClosedForm<T>> {
    let upper = match (geometry, elliptic) {
        (Geometry::Spherical, false) => Some(T::PI()),
        (Geometry::Spherical, true) => Some(T::FRAC_PI_2()),
        (Geometry::Lobachevski, _) => None,
    };
    if chi < T::zero() || upper.is_some_and(|u| chi > u) {
        return Err(Error::Domain(format!("chi = {} outside the {geometry:?} range", chi.to_f64().unwrap_or(f64::NAN))));
    }
    let root = Complex::new(m * m - eps * eps, T::zero()).sqrt();
    let kappa = if sign >= 0 { root } else { -root };
    let r = match geometry {
        Geometry::Spherical => chi.sin(),
        Geometry::Lobachevski => chi.sinh(),
    };
    Ok(ClosedForm { value: (kappa * chi).exp(), kappa, r })
}

/// `max |f'' - (m^2 - eps^2) f| / |f|` with `f'' = kappa^2 f` substituted.
pub fn chi_equation_residual<T: Real>(geometry: Geometry, eps: T, m: T, chis: &[T], sign: i8) -> Result<T> {
    let mut worst = T::zero();
    for &chi in chis {
        let cf = closed_geometry(geometry, eps, m, chi, sign, false)?;
        let second = cf.kappa * cf.kappa * cf.value;
        let res = second - cf.value * (m * m - eps * eps);
        worst = worst.max(res.norm() / cf.value.norm());
    }
    Ok(worst)
}

/// Residual of the printed form `f'' + (m^2 - eps^2) f = 0` for the same closed form.
pub fn chi_equation_residual_printed<T: Real>(geometry: Geometry, eps: T, m: T, chis: &[T], sign: i8) -> Result<T> {
    let mut worst = T::zero();
    for &chi in chis {
        let cf = closed_geometry(geometry, eps, m, chi, sign, false)?;
        let res = cf.kappa * cf.kappa * cf.value + cf.value * (m * m - eps * eps);
        worst = worst.max(res.norm() / cf.value.norm());
    }
    Ok(worst)
}

/// Residual of the curved `j_min` second-order equation
/// `[(-i eps e^{-nu/2} - e^{-mu/2} d_r)(-i eps e^{-nu/2} + e^{-mu/2} d_r) + m^2] f = 0`
/// for `f(r) = exp(kappa chi(r))`, with `r`-derivatives by finite differences.
pub fn curved_chi_residual<T: Real>(metric: &MetricProfile<T>, eps: T, m: T, rs: &[T], sign: i8) -> Result<T> {
    let geometry = metric
        .chi_map
        .ok_or_else(|| Error::Domain(format!("{} has no chi map", metric.name)))?;
    let chi_of = move |r: T| match geometry {
        Geometry::Spherical => r.asin(),
        Geometry::Lobachevski => r.asinh(),
    };
    let root = Complex::new(m * m - eps * eps, T::zero()).sqrt();
    let kappa = if sign >= 0 { root } else { -root };
    let f = move |r: T| (kappa * chi_of(r)).exp();
    let i = Complex::new(T::zero(), T::one());
    let h = T::lit(1e-3);
    let mut worst = T::zero();
    for &r in rs {
        let (n, _) = metric.exponents(r)?;
        let e = eps * (-n * T::lit(0.5)).exp();
        let em = |x: T| -> Complex<T> {
            let (_, mu) = metric.exponents(x).unwrap();
            Complex::from((-mu * T::lit(0.5)).exp())
        };
        // inner(x) = (-i e + e^{-mu/2} d_r) f
        let inner = |x: T| -i * e * f(x) + em(x) * d1_central8(f, x, h);
        let outer = -i * e * inner(r) - em(r) * d1_central8(inner, r, h) + f(r) * (m * m);
        worst = worst.max(outer.norm() / f(r).norm());
    }
    Ok(worst)
}

/// Which radial prefactor multiplies `Phi` in `Psi = F(r) Phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prefactor {
    /// `e^{-nu/4} / r`, which removes the divergence term.
    Derived,
    /// `e^{-(nu+mu)/4} / r`.
    Printed,
}

/// `F'/F + (1/2) e^{mu/2} (1/sqrt(-g)) d_r (sqrt(-g) e^{-mu/2})` at each radius,
/// i.e. the first-order term left in the radial operator after `Psi = F Phi`.
/// All derivatives are finite differences of the metric data.
pub fn divergence_leftover<T: Real>(metric: &MetricProfile<T>, which: Prefactor, rs: &[T]) -> Result<Vec<T>> {
    let h = T::lit(1e-4);
    let sqrt_g = |r: T| -> T { metric.volume_factor(r).unwrap() * r * r };
    let e3 = |r: T| -> T { (-(metric.mu)(r) * T::lit(0.5)).exp() };
    let log_f = |r: T| -> T {
        let (n, mu) = ((metric.nu)(r), (metric.mu)(r));
        match which {
            Prefactor::Derived => -n * T::lit(0.25) - r.ln(),
            Prefactor::Printed => -(n + mu) * T::lit(0.25) - r.ln(),
        }
    };
    rs.iter()
        .map(|&r| {
            metric.exponents(r)?;
            let div = d1_central8(|x| sqrt_g(x) * e3(x), r, h) / sqrt_g(r);
            Ok(d1_central8(log_f, r, h) + T::lit(0.5) * div / e3(r))
        })
        .collect()
}
