//! Dirac current `J^alpha = Psi-bar gamma^alpha Psi` of monopole modes in the
//! diagonal tetrad `e_(0) = e^{-nu/2} d_t`, `e_(3) = e^{-mu/2} d_r`,
//! `e_(1) = d_theta / r`, `e_(2) = d_phi / (r sin theta)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::{Frame, SpinorField, Tetrad};
use crate::halfint::HalfInt;
use crate::harmonics::MonopoleMode;
use crate::quadrature::SphereGrid;
use crate::radial::MetricProfile;
use crate::scalar::Real;
use crate::theta::CompiledTheta;
use crate::wigner::little_d;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FourCurrent<T> {
    pub jt: T,
    pub jr: T,
    pub jtheta: T,
    pub jphi: T,
}

impl<T: Real> FourCurrent<T> {
    pub fn scale(self, s: T) -> Self {
        FourCurrent { jt: self.jt * s, jr: self.jr * s, jtheta: self.jtheta * s, jphi: self.jphi * s }
    }

    pub fn max_diff(&self, o: &Self) -> T {
        (self.jt - o.jt)
            .abs()
            .max((self.jr - o.jr).abs())
            .max((self.jtheta - o.jtheta).abs())
            .max((self.jphi - o.jphi).abs())
    }
}

/// Whether the common factor `r^{-2} e^{-(nu+mu)/2}` is included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    Stripped,
    Full,
}

/// Tetrad factors `(e^t_(0), e^r_(3), e^theta_(1), e^phi_(2))` and the common prefactor.
fn tetrad<T: Real>(metric: &MetricProfile<T>, r: T, theta: T, norm: Normalization) -> Result<([T; 4], T)> {
    let (nu, mu) = metric.exponents(r)?;
    let half = T::lit(0.5);
    let e = [(-nu * half).exp(), (-mu * half).exp(), T::one() / r, T::one() / (r * theta.sin())];
    let pre = match norm {
        Normalization::Stripped => T::one(),
        Normalization::Full => (-(nu + mu) * half).exp() / (r * r),
    };
    Ok((e, pre))
}

/// Per-mode `d_{k-1/2}`, `d_{k+1/2}` compiled for repeated evaluation.
#[derive(Debug, Clone)]
pub struct ModeCurrent<T> {
    f: [Complex<T>; 4],
    d_lo: Option<CompiledTheta<T>>,
    d_hi: Option<CompiledTheta<T>>,
}

impl<T: Real> ModeCurrent<T> {
    pub fn new(mode: &MonopoleMode<T>) -> Result<Self> {
        let s = mode.sigmas();
        let compile = |sigma: HalfInt| -> Result<Option<CompiledTheta<T>>> {
            if sigma.abs() > mode.j {
                Ok(None)
            } else {
                Ok(Some(little_d(mode.j, -mode.m, sigma)?.compile()))
            }
        };
        Ok(ModeCurrent { f: mode.f, d_lo: compile(s[0])?, d_hi: compile(s[1])? })
    }

    /// Bilinears with the `d`-functions, before tetrad factors.
    pub fn bilinears(&self, theta: T) -> [T; 4] {
        let dl = self.d_lo.as_ref().map_or(T::zero(), |d| d.eval(theta));
        let dh = self.d_hi.as_ref().map_or(T::zero(), |d| d.eval(theta));
        let [f1, f2, f3, f4] = self.f;
        let two = T::lit(2.0);
        let jt = dl * dl * (f1.norm_sqr() + f3.norm_sqr()) + dh * dh * (f4.norm_sqr() + f2.norm_sqr());
        let jr = dl * dl * (f1.norm_sqr() - f3.norm_sqr()) + dh * dh * (f4.norm_sqr() - f2.norm_sqr());
        // f* g + f g* = 2 Re(f* g); -i (f* g - f g*) = 2 Im(f* g)
        let a = f1.conj() * f2;
        let b = f3.conj() * f4;
        let jth = two * (a.re - b.re) * dl * dh;
        let jph = two * (a.im - b.im) * dl * dh;
        [jt, jr, jth, jph]
    }

    pub fn at(&self, metric: &MetricProfile<T>, r: T, theta: T, norm: Normalization) -> Result<FourCurrent<T>> {
        let (e, pre) = tetrad(metric, r, theta, norm)?;
        let b = self.bilinears(theta);
        Ok(FourCurrent { jt: e[0] * b[0], jr: e[1] * b[1], jtheta: e[2] * b[2], jphi: e[3] * b[3] }.scale(pre))
    }
}

/// The four current components of a mode at radius `r` and angle `theta`.
pub fn current_of_mode<T: Real>(
    mode: &MonopoleMode<T>,
    metric: &MetricProfile<T>,
    r: T,
    theta: T,
    norm: Normalization,
) -> Result<FourCurrent<T>> {
    ModeCurrent::new(mode)?.at(metric, r, theta, norm)
}

/// `Psi^dagger gamma^0 gamma^a Psi` from the sampled field, contracted with the tetrad.
pub fn current_of_field<T: Real>(
    psi: &SpinorField<T>,
    metric: &MetricProfile<T>,
    r: T,
    theta: T,
    phi: T,
    norm: Normalization,
) -> Result<FourCurrent<T>> {
    if psi.frame != Frame::Weyl || psi.tetrad != Tetrad::Spherical || psi.len() != 4 {
        return Err(Error::TagMismatch { expected: "Weyl/Spherical bispinor".into(), found: format!("{:?}/{:?}", psi.frame, psi.tetrad) });
    }
    let v = psi.eval(theta, phi);
    let (e, pre) = tetrad(metric, r, theta, norm)?;
    let two = T::lit(2.0);
    // gamma^0 gamma^a = diag(sigma_a, -sigma_a) in the Weyl frame
    let jt = v.iter().map(|x| x.norm_sqr()).fold(T::zero(), |a, b| a + b);
    let jr = v[0].norm_sqr() - v[1].norm_sqr() - v[2].norm_sqr() + v[3].norm_sqr();
    let a = v[0].conj() * v[1];
    let b = v[2].conj() * v[3];
    let jth = two * (a.re - b.re);
    let jph = two * (a.im - b.im);
    Ok(FourCurrent { jt: e[0] * jt, jr: e[1] * jr, jtheta: e[2] * jth, jphi: e[3] * jph }.scale(pre))
}

/// `∫ J^t dOmega` at radius `r` (stripped normalization).
pub fn total_charge<T: Real>(mode: &MonopoleMode<T>, metric: &MetricProfile<T>, r: T, grid: &SphereGrid<T>) -> Result<T> {
    let mc = ModeCurrent::new(mode)?;
    let mut acc = T::zero();
    for (&th, &w) in grid.theta().iter().zip(grid.theta_weights()) {
        acc += w * mc.at(metric, r, th, Normalization::Stripped)?.jt;
    }
    // no phi dependence
    Ok(acc * grid.phi_weight() * T::from_usize(grid.n_phi()).unwrap())
}
