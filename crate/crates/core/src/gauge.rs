//! Monopole potentials in the Schwinger, Dirac and Wu-Yang gauges, gauge
//! transformations of fields and operators, Maxwell consistency.
//!
//! Only `A_phi` is populated; `k = eg` with `hbar c / e` absorbed, so the
//! potential for a field of charge index `k` uses `g = k`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fd::d1_central8;
use crate::field::{Gauge, SpinorField};
use crate::halfint::HalfInt;
use crate::ops::{apply_K, apply_j_gauged, apply_parity, eigen_fit, ParityOp, ParityVerdict};
use crate::quadrature::SphereGrid;
use crate::radial::MetricProfile;
use crate::scalar::{cis, Real};

/// Default half-width of the Wu-Yang overlap around the equator.
pub const WY_OVERLAP: f64 = 0.2;

/// `A_phi(theta) = g (a0 + a1 cos theta)` on an optional theta patch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugePotential<T> {
    pub gauge: Gauge,
    pub g_charge: T,
    /// Constant and `cos theta` coefficients, in units of `g`.
    pub coeffs: [T; 2],
    /// Open theta interval the patch covers; `None` for global gauges.
    pub region: Option<(T, T)>,
}

impl<T: Real> GaugePotential<T> {
    pub fn new(gauge: Gauge, g_charge: T) -> Self {
        Self::with_overlap(gauge, g_charge, T::lit(WY_OVERLAP))
    }

    /// Wu-Yang patches extend `eps` past the equator.
    pub fn with_overlap(gauge: Gauge, g_charge: T, eps: T) -> Self {
        let half_pi = T::FRAC_PI_2();
        let one = T::one();
        let (coeffs, region) = match gauge {
            Gauge::S => ([T::zero(), one], None),
            Gauge::D => ([-one, one], None),
            Gauge::WyN => ([-one, one], Some((T::neg_infinity(), half_pi + eps))),
            Gauge::WyS => ([one, one], Some((half_pi - eps, T::infinity()))),
        };
        GaugePotential { gauge, g_charge, coeffs, region }
    }

    pub fn contains(&self, theta: T) -> bool {
        match self.region {
            None => true,
            Some((lo, hi)) => theta > lo && theta < hi,
        }
    }

    pub fn a_phi(&self, theta: T) -> Result<T> {
        if !self.contains(theta) {
            return Err(Error::OutsidePatch { patch: self.gauge.name(), theta: theta.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(self.g_charge * (self.coeffs[0] + self.coeffs[1] * theta.cos()))
    }
}

/// `A_phi` of `gauge` at `theta`, with the default Wu-Yang overlap.
pub fn potential<T: Real>(gauge: Gauge, g_charge: T, theta: T) -> Result<T> {
    GaugePotential::new(gauge, g_charge).a_phi(theta)
}

/// `2 eg` must be an integer for `e^{i n eg phi}` to be single-valued.
pub fn check_quantized<T: Real>(eg: T) -> Result<HalfInt> {
    let twice = eg * T::lit(2.0);
    let n = twice.round();
    if (twice - n).abs() > T::lit(1e-12) * T::one().max(twice.abs()) {
        return Err(Error::NotQuantized(format!("{eg}")));
    }
    Ok(HalfInt::from_twice(n.to_i64().unwrap_or(0)))
}

/// Relative transition function `S(phi) = e^{i (w_to - w_from) eg phi}`.
pub fn transition_function<T: Real>(eg: T, from: Gauge, to: Gauge) -> Result<impl Fn(T) -> Complex<T>> {
    check_quantized(eg)?;
    let w = T::from_i64(to.weight() - from.weight()).unwrap();
    Ok(move |phi: T| cis(w * eg * phi))
}

/// `|S(phi + 2 pi) - S(phi)|` maximized over `n` sample angles; no quantization check.
pub fn periodicity_defect<T: Real>(eg: T, from: Gauge, to: Gauge, n: usize) -> T {
    let w = T::from_i64(to.weight() - from.weight()).unwrap();
    let s = |phi: T| cis(w * eg * phi);
    (0..n)
        .map(|i| T::TAU() * T::from_usize(i).unwrap() / T::from_usize(n.max(1)).unwrap())
        .map(|p| (s(p + T::TAU()) - s(p)).norm())
        .fold(T::zero(), T::max)
}

/// `-i S d_phi S^{-1}` at `phi` by finite differences.
pub fn potential_shift<T: Real>(eg: T, from: Gauge, to: Gauge, phi: T) -> Result<T> {
    let s = transition_function(eg, from, to)?;
    let inv = |p: T| s(p).inv();
    let d: Complex<T> = d1_central8(inv, phi, T::lit(1e-2));
    Ok((Complex::new(T::zero(), -T::one()) * s(phi) * d).re)
}

/// Re-expresses `field` in gauge `to` by the phase `e^{i (w_to - w_from) k phi}`.
///
/// `HalfInt` charge indices are quantized by construction; real charges go
/// through [`check_quantized`] first.
pub fn gauge_transform<T: Real>(field: &SpinorField<T>, to: Gauge) -> Result<SpinorField<T>> {
    let shift = HalfInt::from_twice(field.k.twice_value() * (to.weight() - field.gauge.weight()));
    let mut out = field.clone();
    out.comps = field.comps.iter().map(|c| c.shift_phase(shift)).collect();
    out.gauge = to;
    Ok(out)
}

/// Shape of `J_i`, `K`, `N` in one gauge, with `w` the gauge weight:
/// `J_{1,2} = l_{1,2} + (trig phi / sin) (i sigma^{12} - k (1 - w cos))`,
/// `J_3 = l_3 - w k`, `K = -i g^0 g^3 (i g^1 d_t + g^2 (i d_p + w k + (i sigma^{12} - k) cos)/sin)`,
/// `N = e^{i w k (2 phi + pi)} N^S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatorForms {
    pub gauge: Gauge,
    pub weight: i64,
}

impl OperatorForms {
    /// Constant added to `l_3`.
    pub fn j3_shift<T: Real>(&self, k: HalfInt) -> T {
        -T::from_i64(self.weight).unwrap() * k.to_real::<T>()
    }

    /// `J_3` reduces to `-i d_phi`.
    pub fn j3_is_plain_derivative(&self) -> bool {
        self.weight == 0
    }

    /// `i sigma^{12} - k (1 - w cos theta)` for the spin weight `s`.
    pub fn transverse_bracket<T: Real>(&self, s: T, k: HalfInt, theta: T) -> T {
        let w = T::from_i64(self.weight).unwrap();
        s - k.to_real::<T>() * (T::one() - w * theta.cos())
    }

    /// Constant next to `i d_phi` inside `K`.
    pub fn k_phi_shift<T: Real>(&self, k: HalfInt) -> T {
        T::from_i64(self.weight).unwrap() * k.to_real::<T>()
    }

    /// Prefactor relating `N` to the Schwinger-gauge `N`.
    pub fn n_factor<T: Real>(&self, k: HalfInt, phi: T) -> Complex<T> {
        let w = T::from_i64(self.weight).unwrap();
        cis(w * k.to_real::<T>() * (T::lit(2.0) * phi + T::PI()))
    }

    pub fn describe(&self) -> String {
        let w = match self.weight {
            0 => String::new(),
            1 => " - k".into(),
            -1 => " + k".into(),
            n => format!(" - {n}k"),
        };
        let bracket = match self.weight {
            0 => "i s12 - k".to_string(),
            1 => "i s12 - k(1 - cos)".into(),
            -1 => "i s12 - k(1 + cos)".into(),
            n => format!("i s12 - k(1 - {n} cos)"),
        };
        format!(
            "{}: J1 = l1 + cos(phi)/sin ({bracket}), J2 = l2 + sin(phi)/sin ({bracket}), J3 = l3{w}",
            self.gauge.name()
        )
    }

    /// `J_i` on a field already expressed in this gauge.
    pub fn apply_j<T: Real>(&self, i: usize, psi: &SpinorField<T>) -> Result<SpinorField<T>> {
        self.require(psi)?;
        apply_j_gauged(i, psi)
    }

    fn require<T: Real>(&self, psi: &SpinorField<T>) -> Result<()> {
        if psi.gauge != self.gauge {
            return Err(Error::TagMismatch { expected: self.gauge.name().into(), found: psi.gauge.name().into() });
        }
        Ok(())
    }
}

pub fn transformed_operators(gauge: Gauge) -> OperatorForms {
    OperatorForms { gauge, weight: gauge.weight() }
}

/// Eigenvalues of `J_3`, `K`, `N` measured on a field, with the worst fit residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenTriple<T> {
    pub m: Complex<T>,
    pub k_value: Complex<T>,
    pub n: ParityVerdict<T>,
    pub residual: T,
}

/// Measures `(m, K, N)` in the gauge carried by `psi`.
pub fn eigen_triple<T: Real>(psi: &SpinorField<T>, grid: &SphereGrid<T>) -> Result<EigenTriple<T>> {
    let forms = transformed_operators(psi.gauge);
    let j3 = forms.apply_j(3, psi)?;
    let (m, rm) = eigen_fit(psi, &j3, grid);
    let kr = apply_K(psi.k, psi, grid)?;
    let (kv, rk) = eigen_fit(psi, &kr.field, grid);
    let par = apply_parity(ParityOp::N, psi, grid)?;
    Ok(EigenTriple { m, k_value: kv, n: par.verdict, residual: rm.max(rk).max(par.residual) })
}

/// Max over theta nodes and sample radii of `|(1/sqrt(-g)) d_theta (sqrt(-g) F^{theta phi})| r^4 / |g|`
/// for `A_phi = g (a0 + a1 cos theta + a2 cos^2 theta)`.
pub fn maxwell_residual_poly<T: Real>(metric: &MetricProfile<T>, g_charge: T, a: [T; 3], grid: &SphereGrid<T>) -> Result<T> {
    let h = T::lit(1e-2);
    // F_{theta phi} = d_theta A_phi = -g sin (a1 + 2 a2 cos)
    let f_low = |th: T| -g_charge * th.sin() * (a[1] + T::lit(2.0) * a[2] * th.cos());
    let r_scale = metric.r_max.unwrap_or(T::one());
    let mut worst = T::zero();
    for i in 0..6 {
        let r = r_scale * T::lit(0.25 + 0.12 * i as f64);
        let vol = metric.volume_factor(r)?;
        let r2 = r * r;
        let flux = |th: T| {
            let s = th.sin();
            let f_up = f_low(th) / (r2 * r2 * s * s);
            vol * r2 * s * f_up
        };
        for &th in grid.theta() {
            let div: T = d1_central8(flux, th, h);
            // in units of g / r^4, the natural size of the divergence
            let res = div / (vol * r2 * th.sin()) * r2 * r2;
            worst = worst.max(res.abs());
        }
    }
    let scale = g_charge.abs().max(T::eps());
    Ok(worst / scale)
}

/// Maxwell residual of the Schwinger potential `A_phi = g cos theta`.
pub fn maxwell_residual<T: Real>(metric: &MetricProfile<T>, g_charge: T, grid: &SphereGrid<T>) -> Result<T> {
    maxwell_residual_poly(metric, g_charge, [T::zero(), T::one(), T::zero()], grid)
}
