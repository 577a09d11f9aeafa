//! Angular operators on spinor fields: `J^k_i`, `Sigma^k`, `K`, `Pi`, `N`.
//!
//! Weyl spherical-tetrad conventions: `i sigma^{12} = diag(1/2, -1/2, 1/2, -1/2)`,
//! `gamma^0 = [[0, I], [I, 0]]`, `gamma^k = [[0, -s_k], [s_k, 0]]`.

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Comp, Frame, Gauge, ModeTerm, SpinorField, Tetrad};
use crate::halfint::HalfInt;
use crate::pauli::j_min;
use crate::quadrature::SphereGrid;
use crate::scalar::{cis, Real};

/// Operator output with the deviation from the expected pattern (zero when none applies).
#[derive(Debug, Clone)]
pub struct OperatorResult<T> {
    pub field: SpinorField<T>,
    pub residual: T,
    pub eigenvalue: Option<Complex<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityOp {
    Pi,
    N,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParityVerdict<T> {
    Eigen(Complex<T>),
    /// The transformed function is not proportional to the input (or leaves its state space).
    NoEigenvector,
}

#[derive(Debug, Clone)]
pub struct ParityResult<T> {
    /// `None` when the image falls outside the field's state space.
    pub field: Option<SpinorField<T>>,
    pub verdict: ParityVerdict<T>,
    pub residual: T,
}

type CompMap<T> = fn(&Comp<T>) -> Comp<T>;

fn spin_weight<T: Real>(i: usize) -> T {
    if i.is_multiple_of(2) {
        T::lit(0.5)
    } else {
        T::lit(-0.5)
    }
}

fn require_spherical<T: Real>(psi: &SpinorField<T>) -> Result<()> {
    if psi.tetrad != Tetrad::Spherical || psi.frame != Frame::Weyl {
        return Err(Error::TagMismatch {
            expected: "Weyl/Spherical".into(),
            found: format!("{:?}/{:?}", psi.frame, psi.tetrad),
        });
    }
    Ok(())
}

fn require_gauge<T: Real>(psi: &SpinorField<T>, g: Gauge) -> Result<()> {
    if psi.gauge != g {
        return Err(Error::TagMismatch { expected: g.name().into(), found: psi.gauge.name().into() });
    }
    Ok(())
}

fn re<T: Real>(x: T) -> Complex<T> {
    Complex::from(x)
}

fn im<T: Real>(x: T) -> Complex<T> {
    Complex::new(T::zero(), x)
}

/// `J^k_i` in the gauge carried by the field tag:
/// `J_{1,2} = l_{1,2} + (s - k) trig/sin + w k cot trig`, `J_3 = l_3 - w k`.
pub fn apply_j_gauged<T: Real>(i: usize, psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    require_spherical(psi)?;
    if !(1..=3).contains(&i) {
        return Err(Error::Domain(format!("J_{i}")));
    }
    let k = psi.k.to_real::<T>();
    let wk = T::from_i64(psi.gauge.weight()).unwrap() * k;
    let h = psi.fd_step;
    let one = T::one();
    let comps = psi
        .comps
        .iter()
        .enumerate()
        .map(|(a, f)| {
            let s = spin_weight::<T>(a);
            let dt = f.d_theta(h);
            let dp = f.d_phi(h);
            match i {
                3 => dp.scale(im(-one)).sub(&f.scale(re(wk))),
                _ => {
                    let (trig_t, trig_c): (CompMap<T>, CompMap<T>) =
                        if i == 1 { (Comp::mul_sin_phi, Comp::mul_cos_phi) } else { (Comp::mul_cos_phi, Comp::mul_sin_phi) };
                    let sign = if i == 1 { one } else { -one };
                    // l_1 = i(sin d_t + cot cos d_p), l_2 = i(-cos d_t + cot sin d_p)
                    let l = trig_t(&dt).scale(im(sign)).add(&trig_c(&dp.mul_cot()).scale(im(one)));
                    let extra = trig_c(&f.mul_csc()).scale(re(s - k)).add(&trig_c(&f.mul_cot()).scale(re(wk)));
                    l.add(&extra)
                }
            }
        })
        .collect();
    Ok(psi.with_comps(comps))
}

/// `J^k_i` on a Schwinger-gauge field (`k = 0` gives the free operators).
#[allow(non_snake_case)]
pub fn apply_J<T: Real>(i: usize, psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    require_gauge(psi, Gauge::S)?;
    apply_j_gauged(i, psi)
}

fn gamma1<T: Real>(c: &[Comp<T>]) -> Vec<Comp<T>> {
    let m1 = re(-T::one());
    vec![c[3].scale(m1), c[2].scale(m1), c[1].clone(), c[0].clone()]
}

fn gamma2<T: Real>(c: &[Comp<T>]) -> Vec<Comp<T>> {
    let i = im(T::one());
    vec![c[3].scale(i), c[2].scale(-i), c[1].scale(-i), c[0].scale(i)]
}

/// `Sigma^k = i gamma^1 d_theta + gamma^2 (i d_phi + w k + (i sigma^{12} - k) cos) / sin`.
pub fn sigma_gauged<T: Real>(psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    require_spherical(psi)?;
    if psi.len() != 4 {
        return Err(Error::Domain("Sigma needs a bispinor".into()));
    }
    let h = psi.fd_step;
    let k = psi.k.to_real::<T>();
    let wk = T::from_i64(psi.gauge.weight()).unwrap() * k;
    let dt: Vec<Comp<T>> = psi.comps.iter().map(|f| f.d_theta(h).scale(im(T::one()))).collect();
    let inner: Vec<Comp<T>> = psi
        .comps
        .iter()
        .enumerate()
        .map(|(a, f)| {
            f.d_phi(h)
                .scale(im(T::one()))
                .add(&f.scale(re(wk)))
                .add(&f.mul_cos_theta().scale(re(spin_weight::<T>(a) - k)))
                .mul_csc()
        })
        .collect();
    let comps = gamma1(&dt).iter().zip(gamma2(&inner)).map(|(a, b)| a.add(&b)).collect();
    Ok(psi.with_comps(comps))
}

/// `nu = sqrt((j + 1/2)^2 - k^2)`.
pub fn nu<T: Real>(j: HalfInt, k: HalfInt) -> T {
    let a = j.to_real::<T>() + T::lit(0.5);
    let kk = k.to_real::<T>();
    (a * a - kk * kk).max(T::zero()).sqrt()
}

fn mode_pattern<T: Real>(psi: &SpinorField<T>, f: impl Fn(&ModeTerm<T>) -> [Complex<T>; 4]) -> Option<SpinorField<T>> {
    let modes = psi.modes.as_ref()?;
    let mapped: Vec<ModeTerm<T>> = modes.iter().map(|m| ModeTerm { f: f(m), ..*m }).collect();
    let mut out = SpinorField::from_modes(&mapped).ok()?;
    out = gauge_phase(&out, psi.gauge);
    Some(out)
}

/// Multiplies a Schwinger-gauge field by `e^{i w k phi}` and retags it.
pub fn gauge_phase<T: Real>(psi: &SpinorField<T>, g: Gauge) -> SpinorField<T> {
    let shift = HalfInt::from_twice(psi.k.twice_value() * g.weight());
    let mut out = psi.clone();
    out.comps = psi.comps.iter().map(|c| c.shift_phase(shift)).collect();
    out.gauge = g;
    out
}

fn check_modes<T: Real>(k: HalfInt, psi: &SpinorField<T>) -> Result<()> {
    if psi.k != k {
        return Err(Error::TagMismatch { expected: format!("k = {k}"), found: format!("k = {}", psi.k) });
    }
    if let Some(ms) = &psi.modes {
        for m in ms {
            if m.j < j_min(k) {
                return Err(Error::BelowJmin { j: m.j, j_min: j_min(k), k });
            }
        }
    }
    Ok(())
}

/// Least-squares eigenvalue of `out ≈ lambda psi` and the relative max residual.
pub fn eigen_fit<T: Real>(psi: &SpinorField<T>, out: &SpinorField<T>, grid: &SphereGrid<T>) -> (Complex<T>, T) {
    let a = psi.sample(grid);
    let b = out.sample(grid);
    let mut num = Complex::zero();
    let mut den = T::zero();
    for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
        num += x.conj() * y;
        den += x.norm_sqr();
    }
    if den == T::zero() {
        return (Complex::zero(), b.iter().flatten().fold(T::zero(), |m, v| m.max(v.norm())));
    }
    let lam = num / den;
    let scale = a.iter().flatten().fold(T::zero(), |m, v| m.max(v.norm()));
    let res = a
        .iter()
        .flatten()
        .zip(b.iter().flatten())
        .fold(T::zero(), |m, (x, y)| m.max((y - x * lam).norm()));
    (lam, res / scale)
}

/// `Sigma^k Psi`; for basis-built fields the residual is the max entrywise distance to
/// `i nu (-f4 D_{k-1/2}, f3 D_{k+1/2}, f2 D_{k-1/2}, -f1 D_{k+1/2})`.
pub fn apply_sigma<T: Real>(k: HalfInt, psi: &SpinorField<T>, grid: &SphereGrid<T>) -> Result<OperatorResult<T>> {
    check_modes(k, psi)?;
    let field = sigma_gauged(psi)?;
    let expected = mode_pattern(psi, |m| {
        let n = im(nu::<T>(m.j, m.k));
        [-n * m.f[3], n * m.f[2], n * m.f[1], -n * m.f[0]]
    });
    let residual = match &expected {
        Some(e) => field.distance(e, grid)?,
        None => T::zero(),
    };
    Ok(OperatorResult { field, residual, eigenvalue: None })
}

/// `K = -i gamma^0 gamma^3 Sigma^k`; on basis-built fields the residual is measured against
/// `-nu (f4 D_{k-1/2}, f3 D_{k+1/2}, f2 D_{k-1/2}, f1 D_{k+1/2})`.
#[allow(non_snake_case)]
pub fn apply_K<T: Real>(k: HalfInt, psi: &SpinorField<T>, grid: &SphereGrid<T>) -> Result<OperatorResult<T>> {
    check_modes(k, psi)?;
    let s = sigma_gauged(psi)?;
    let i = im(T::one());
    let d = [-i, i, i, -i];
    let field = s.with_comps(s.comps.iter().zip(d).map(|(c, x)| c.scale(x)).collect());
    let expected = mode_pattern(psi, |m| {
        let n = re(-nu::<T>(m.j, m.k));
        [n * m.f[3], n * m.f[2], n * m.f[1], n * m.f[0]]
    });
    let (lam, fit) = eigen_fit(psi, &field, grid);
    let residual = match &expected {
        Some(e) => field.distance(e, grid)?,
        None => fit,
    };
    let eigenvalue = if fit < T::lit(1e-6) { Some(lam) } else { None };
    Ok(OperatorResult { field, residual, eigenvalue })
}

fn pi_sph<T: Real>(c: &[Comp<T>]) -> Vec<Comp<T>> {
    let m1 = re(-T::one());
    c.iter().rev().map(|x| x.scale(m1)).collect()
}

/// `pi`: flips the charge index of every basis state; `None` if a populated
/// component leaves the allowed index range.
pub fn flip_charge<T: Real>(psi: &SpinorField<T>) -> Result<Option<SpinorField<T>>> {
    let modes = psi
        .modes
        .as_ref()
        .ok_or_else(|| Error::Domain("the charge flip needs a basis-built field".into()))?;
    let mut flipped = Vec::with_capacity(modes.len());
    for m in modes {
        match ModeTerm::new(m.j, m.m, -m.k, m.f) {
            Ok(t) => flipped.push(t),
            Err(_) => return Ok(None),
        }
    }
    let mut out = SpinorField::from_modes(&flipped)?;
    out.fd_step = psi.fd_step;
    Ok(Some(out))
}

/// `Pi = Pi_sph (x) P` for `k = 0`; `N = pi (x) Pi_sph (x) P` for any `k`.
pub fn apply_parity<T: Real>(which: ParityOp, psi: &SpinorField<T>, grid: &SphereGrid<T>) -> Result<ParityResult<T>> {
    require_spherical(psi)?;
    if psi.len() != 4 {
        return Err(Error::Domain("parity needs a bispinor".into()));
    }
    let image = match which {
        ParityOp::Pi => {
            if !psi.k.is_zero() {
                return Err(Error::ParityNotConserved(psi.k));
            }
            let refl: Vec<Comp<T>> = psi.comps.iter().map(Comp::reflect).collect();
            Some(psi.with_comps(pi_sph(&refl)))
        }
        ParityOp::N => {
            let base = if psi.gauge == Gauge::S { psi.clone() } else { strip_gauge(psi)? };
            match flip_charge(&base)? {
                None => None,
                Some(f) => {
                    let refl: Vec<Comp<T>> = f.comps.iter().map(Comp::reflect).collect();
                    let mut out = base.with_comps(pi_sph(&refl));
                    out.k = psi.k;
                    Some(gauge_phase(&out, psi.gauge))
                }
            }
        }
    };
    Ok(match image {
        None => ParityResult { field: None, verdict: ParityVerdict::NoEigenvector, residual: T::zero() },
        Some(f) => {
            let (lam, res) = eigen_fit(psi, &f, grid);
            let verdict = if res < T::lit(1e-8) { ParityVerdict::Eigen(lam) } else { ParityVerdict::NoEigenvector };
            ParityResult { field: Some(f), verdict, residual: res }
        }
    })
}

fn strip_gauge<T: Real>(psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    let modes = psi
        .modes
        .as_ref()
        .ok_or_else(|| Error::Domain("N needs a basis-built field".into()))?;
    let mut out = SpinorField::from_modes(modes)?;
    out.fd_step = psi.fd_step;
    Ok(out)
}

/// `N = delta (-1)^{j+1}` with `(-1)^x = e^{i pi x}`.
pub fn n_eigenvalue<T: Real>(delta: i8, j: HalfInt) -> Complex<T> {
    cis(T::PI() * (j + HalfInt::ONE).to_real::<T>()) * T::from_i8(delta).unwrap()
}

/// `P D^j_{-m,s} = phase * D^j_{-m,-s}`: returns the phase `e^{i pi j}` and `-s`.
pub fn parity_flip_d<T: Real>(j: HalfInt, m: HalfInt, sigma: HalfInt) -> Result<(Complex<T>, HalfInt)> {
    crate::wigner::check_indices(j, -m, sigma)?;
    Ok((cis(T::PI() * j.to_real::<T>()), -sigma))
}

/// `[J_a, J_b] Psi`.
pub fn commutator<T: Real>(a: usize, b: usize, psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    let ab = apply_j_gauged(a, &apply_j_gauged(b, psi)?)?;
    let ba = apply_j_gauged(b, &apply_j_gauged(a, psi)?)?;
    ab.sub(&ba)
}

/// Max over cyclic `(a, b, c)` of `|[J_a, J_b] Psi - i J_c Psi|` on the grid.
pub fn su2_residual<T: Real>(psi: &SpinorField<T>, grid: &SphereGrid<T>) -> Result<T> {
    let mut worst = T::zero();
    for (a, b, c) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let lhs = commutator(a, b, psi)?;
        let rhs = apply_j_gauged(c, psi)?.scale(im(T::one()));
        worst = worst.max(lhs.distance(&rhs, grid)?);
    }
    Ok(worst)
}

/// `J^2 Psi`.
pub fn casimir<T: Real>(psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    let mut acc: Option<SpinorField<T>> = None;
    for i in 1..=3 {
        let t = apply_j_gauged(i, &apply_j_gauged(i, psi)?)?;
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t)?,
        });
    }
    Ok(acc.unwrap())
}

/// Max of `|[K, J_i] Psi|` over `i`.
pub fn k_commutator_residual<T: Real>(psi: &SpinorField<T>, grid: &SphereGrid<T>) -> Result<T> {
    let k_op = |f: &SpinorField<T>| -> Result<SpinorField<T>> {
        let s = sigma_gauged(f)?;
        let i = im(T::one());
        Ok(s.with_comps(s.comps.iter().zip([-i, i, i, -i]).map(|(c, x)| c.scale(x)).collect()))
    };
    let mut worst = T::zero();
    for i in 1..=3 {
        let a = k_op(&apply_j_gauged(i, psi)?)?;
        let b = apply_j_gauged(i, &k_op(psi)?)?;
        worst = worst.max(a.distance(&b, grid)?);
    }
    Ok(worst)
}

/// Random superposition of `n_modes` basis states with `j <= j_min + extra`,
/// with uniform complex amplitudes in the unit square.
pub fn random_band_limited<T: Real, R: Rng>(k: HalfInt, n_modes: usize, extra: i64, rng: &mut R) -> Result<SpinorField<T>> {
    let jm = j_min(k);
    let mut modes = Vec::with_capacity(n_modes);
    for _ in 0..n_modes {
        let j = jm + HalfInt::int(rng.gen_range(0..=extra));
        let steps = j.twice_value();
        let m = HalfInt::from_twice(-steps + 2 * rng.gen_range(0..=steps));
        let mut f = [Complex::zero(); 4];
        for (i, x) in f.iter_mut().enumerate() {
            let probe = ModeTerm::<T> { j, m, k, f: [Complex::zero(); 4] };
            if probe.populated(i) {
                *x = Complex::new(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0)));
            }
        }
        modes.push(ModeTerm::new(j, m, k, f)?);
    }
    SpinorField::from_modes(&modes)
}
