//! Monopole wave substitutions, spinor monopole harmonics `xi^(1,2)`, the
//! Cartesian `j_min` assembly and the Pauli-frame two-block solutions.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{ModeTerm, SpinorField};
use crate::frames::helicity_spinors;
use crate::halfint::HalfInt;
use crate::ops::n_eigenvalue;
use crate::pauli::j_min;
use crate::quadrature::gauss_legendre;
use crate::radial::RadialState;
use crate::scalar::{cis, Real};
use crate::theta::CompiledTheta;
use crate::wigner::{big_d, check_indices, little_d};

/// `Psi^k_{jm}` with angular part `(f1 D_{k-1/2}, f2 D_{k+1/2}, f3 D_{k-1/2}, f4 D_{k+1/2})`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonopoleMode<T> {
    pub j: HalfInt,
    pub m: HalfInt,
    pub k: HalfInt,
    pub f: [Complex<T>; 4],
    /// `delta` with `f4 = delta f1`, `f3 = delta f2`.
    pub parity: Option<i8>,
    pub radial: Option<RadialState<T>>,
}

impl<T: Real> MonopoleMode<T> {
    /// Rejects `j < j_min(k)` and amplitudes in components whose `D` does not exist.
    pub fn new(j: HalfInt, m: HalfInt, k: HalfInt, f: [Complex<T>; 4]) -> Result<Self> {
        ModeTerm::new(j, m, k, f)?;
        Ok(MonopoleMode { j, m, k, f, parity: None, radial: None })
    }

    /// Fixed-`N` state built from `(f1, f2)`.
    pub fn with_parity(j: HalfInt, m: HalfInt, k: HalfInt, f1: Complex<T>, f2: Complex<T>, delta: i8) -> Result<Self> {
        check_delta(delta)?;
        if !k.is_zero() && j == j_min(k) {
            return Err(Error::UseJminAssembly { j, k });
        }
        let d = T::from_i8(delta).unwrap();
        let mut mode = Self::new(j, m, k, [f1, f2, f2 * d, f1 * d])?;
        mode.parity = Some(delta);
        Ok(mode)
    }

    /// Amplitudes taken from sample `i` of a radial solution.
    pub fn from_radial(j: HalfInt, m: HalfInt, k: HalfInt, state: RadialState<T>, i: usize) -> Result<Self> {
        if i >= state.len() {
            return Err(Error::Domain(format!("sample {i} of {}", state.len())));
        }
        let mut mode = Self::new(j, m, k, state.full_at(i)?)?;
        mode.parity = state.delta;
        mode.radial = Some(state);
        Ok(mode)
    }

    pub fn is_jmin(&self) -> bool {
        !self.k.is_zero() && self.j == j_min(self.k)
    }

    /// Lower `D` indices of the four components.
    pub fn sigmas(&self) -> [HalfInt; 4] {
        let (lo, hi) = (self.k - HalfInt::HALF, self.k + HalfInt::HALF);
        [lo, hi, lo, hi]
    }

    pub fn term(&self) -> ModeTerm<T> {
        ModeTerm { j: self.j, m: self.m, k: self.k, f: self.f }
    }

    pub fn n_value(&self) -> Option<Complex<T>> {
        self.parity.filter(|_| !self.is_jmin()).map(|d| n_eigenvalue(d, self.j))
    }

    /// Weyl-frame, spherical-tetrad, Schwinger-gauge field.
    pub fn to_field(&self) -> Result<SpinorField<T>> {
        SpinorField::from_mode(self.term())
    }
}

fn check_delta(delta: i8) -> Result<()> {
    if delta == 1 || delta == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParity(format!("delta = {delta}")))
    }
}

/// Angular column of the mode at `(theta, phi)`.
pub fn build_psi<T: Real>(mode: &MonopoleMode<T>, theta: T, phi: T) -> Result<[Complex<T>; 4]> {
    let mut out = [Complex::zero(); 4];
    for (i, s) in mode.sigmas().into_iter().enumerate() {
        if s.abs() <= mode.j {
            out[i] = mode.f[i] * big_d(mode.j, -mode.m, s, phi, theta, T::zero())?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Xi {
    /// `chi_- D_{k+1/2} + chi_+ D_{k-1/2}`
    First,
    /// `chi_- D_{k+1/2} - chi_+ D_{k-1/2}`
    Second,
}

impl Xi {
    fn sign<T: Real>(self) -> T {
        match self {
            Xi::First => T::one(),
            Xi::Second => -T::one(),
        }
    }
}

fn check_xi(j: HalfInt, m: HalfInt, k: HalfInt) -> Result<()> {
    if j < k.abs() + HalfInt::HALF {
        if !k.is_zero() && j == j_min(k) {
            return Err(Error::UseJminAssembly { j, k });
        }
        return Err(Error::BelowJmin { j, j_min: j_min(k), k });
    }
    check_indices(j, -m, k + HalfInt::HALF)?;
    check_indices(j, -m, k - HalfInt::HALF)
}

/// `xi^(1,2)` as the helicity-spinor combination, without normalization.
pub fn xi_combination<T: Real>(which: Xi, j: HalfInt, m: HalfInt, k: HalfInt, theta: T, phi: T) -> Result<[Complex<T>; 2]> {
    check_xi(j, m, k)?;
    let (cp, cm) = helicity_spinors(theta, phi);
    let dp = big_d(j, -m, k + HalfInt::HALF, phi, theta, T::zero())?;
    let dm = big_d(j, -m, k - HalfInt::HALF, phi, theta, T::zero())?;
    let s = which.sign::<T>();
    Ok([0, 1].map(|i| cm[i] * dp + cp[i] * dm * s))
}

/// `xi^(1,2)` written out entrywise in half-angle trigonometry.
pub fn xi_explicit<T: Real>(which: Xi, j: HalfInt, m: HalfInt, k: HalfInt, theta: T, phi: T) -> Result<[Complex<T>; 2]> {
    check_xi(j, m, k)?;
    let half = T::lit(0.5);
    let (s, c) = ((theta * half).sin(), (theta * half).cos());
    let lo = cis(-phi * half);
    let hi = cis(phi * half);
    let e = cis(m.to_real::<T>() * phi);
    let dp = little_d(j, -m, k + HalfInt::HALF)?.eval(theta);
    let dm = little_d(j, -m, k - HalfInt::HALF)?.eval(theta);
    let sg = which.sign::<T>();
    Ok([
        e * (lo * (-s) * dp + lo * c * dm * sg),
        e * (hi * c * dp + hi * s * dm * sg),
    ])
}

/// `xi^(1,2)` with its `d`-functions compiled to floating point.
#[derive(Debug, Clone)]
pub struct XiHarmonic<T> {
    pub which: Xi,
    pub j: HalfInt,
    pub m: HalfInt,
    pub k: HalfInt,
    d_plus: CompiledTheta<T>,
    d_minus: CompiledTheta<T>,
    /// Divides the bare combination; one for the unnormalized form.
    scale: T,
}

impl<T: Real> XiHarmonic<T> {
    pub fn bare(which: Xi, j: HalfInt, m: HalfInt, k: HalfInt) -> Result<Self> {
        check_xi(j, m, k)?;
        Ok(XiHarmonic {
            which,
            j,
            m,
            k,
            d_plus: little_d(j, -m, k + HalfInt::HALF)?.compile(),
            d_minus: little_d(j, -m, k - HalfInt::HALF)?.compile(),
            scale: T::one(),
        })
    }

    /// Unit-normalized on the sphere.
    pub fn normalized(which: Xi, j: HalfInt, m: HalfInt, k: HalfInt) -> Result<Self> {
        let mut x = Self::bare(which, j, m, k)?;
        x.scale = x.quadrature_norm()?;
        Ok(x)
    }

    /// `sqrt(∫ |xi|^2 dOmega)` of the current scaling, by Gauss-Legendre in `cos theta`.
    pub fn quadrature_norm(&self) -> Result<T> {
        let n = (self.j.twice_value() as usize) + 4;
        let mut acc = T::zero();
        for (x, w) in gauss_legendre::<T>(n)? {
            let v = self.eval(x.acos(), T::zero());
            acc += w * (v[0].norm_sqr() + v[1].norm_sqr());
        }
        Ok((acc * T::TAU()).sqrt())
    }

    pub fn eval(&self, theta: T, phi: T) -> [Complex<T>; 2] {
        let (cp, cm) = helicity_spinors(theta, phi);
        let e = cis(self.m.to_real::<T>() * phi);
        let dp = e * self.d_plus.eval(theta);
        let dm = e * self.d_minus.eval(theta) * self.which.sign::<T>();
        [0, 1].map(|i| (cm[i] * dp + cp[i] * dm) / self.scale)
    }
}

/// Norm of the bare combination.
pub fn xi_norm<T: Real>(which: Xi, j: HalfInt, k: HalfInt) -> Result<T> {
    XiHarmonic::<T>::bare(which, j, j, k)?.quadrature_norm()
}

/// Unit-normalized spinor monopole harmonic.
pub fn xi_harmonic<T: Real>(which: Xi, j: HalfInt, m: HalfInt, k: HalfInt, theta: T, phi: T) -> Result<[Complex<T>; 2]> {
    Ok(XiHarmonic::normalized(which, j, m, k)?.eval(theta, phi))
}

/// Cartesian-tetrad, Pauli-frame `j_min` column. `f_pair` is `(f1, f3)` for
/// `k > 0` and `(f2, f4)` for `k < 0`.
pub fn jmin_assembly<T: Real>(k: HalfInt, m: HalfInt, f_pair: [Complex<T>; 2], theta: T, phi: T) -> Result<[Complex<T>; 4]> {
    if k.is_zero() {
        return Err(Error::NoJminState);
    }
    let j = j_min(k);
    let (cp, cm) = helicity_spinors(theta, phi);
    let (chi, sigma) = if k.is_negative() { (cm, k + HalfInt::HALF) } else { (cp, k - HalfInt::HALF) };
    let d = big_d(j, -m, sigma, phi, theta, T::zero())?;
    let r = T::FRAC_1_SQRT_2();
    let up = (f_pair[0] + f_pair[1]) * d * r;
    let dn = (f_pair[0] - f_pair[1]) * d * r;
    Ok([chi[0] * up, chi[1] * up, chi[0] * dn, chi[1] * dn])
}

/// `(f, g) = ((f1 + f2)/sqrt2, (f1 - f2)/(i sqrt2))`.
pub fn reduced_amplitudes<T: Real>(f1: Complex<T>, f2: Complex<T>) -> (Complex<T>, Complex<T>) {
    let r = T::FRAC_1_SQRT_2();
    ((f1 + f2) * r, (f1 - f2) * r / Complex::<T>::i())
}

/// Cartesian Pauli-frame blocks of a fixed-`N` mode, with unnormalized `xi`:
/// `N = delta (-1)^{j+1}`, `delta = +1`: `(f xi1, -i g xi2)`;
/// `delta = -1`: `(-i g xi2, f xi1)`.
pub fn pauli_frame_solutions<T: Real>(
    mode: &MonopoleMode<T>,
    n_value: Complex<T>,
    theta: T,
    phi: T,
) -> Result<[[Complex<T>; 2]; 2]> {
    if mode.j == j_min(mode.k) && !mode.k.is_zero() {
        return Err(Error::UseJminAssembly { j: mode.j, k: mode.k });
    }
    let tol = T::lit(1e-9);
    let delta = if (n_value - n_eigenvalue::<T>(1, mode.j)).norm() < tol {
        1
    } else if (n_value - n_eigenvalue::<T>(-1, mode.j)).norm() < tol {
        -1
    } else {
        return Err(Error::InvalidParity(format!("{n_value}")));
    };
    let (f, g) = reduced_amplitudes(mode.f[0], mode.f[1]);
    let x1 = xi_combination(Xi::First, mode.j, mode.m, mode.k, theta, phi)?;
    let x2 = xi_combination(Xi::Second, mode.j, mode.m, mode.k, theta, phi)?;
    let mig = -Complex::<T>::i() * g;
    Ok(if delta == 1 {
        [x1.map(|v| v * f), x2.map(|v| v * mig)]
    } else {
        [x2.map(|v| v * mig), x1.map(|v| v * f)]
    })
}
