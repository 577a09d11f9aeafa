//! Spin frames and tetrads: the Schrödinger matrix `B(theta, phi)`, the
//! SL(2,C) to Lorentz map, helicity spinors, spherical spinors and the
//! Weyl to Pauli change of spinor basis.
//!
//! Conventions: `eta = diag(+,-,-,-)`, `B(k) = k_0 I + k_i sigma_i`,
//! `eps_{0123} = +1`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Comp, Frame, SpinorField, Tetrad};
use crate::halfint::HalfInt;
use crate::scalar::{cis, Real};
use crate::wigner::{big_d, check_indices};

/// A real 4x4 matrix `L[b][a]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzMatrix<T> {
    pub m: [[T; 4]; 4],
}

impl<T: Real> LorentzMatrix<T> {
    pub fn identity() -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = T::one();
        }
        LorentzMatrix { m }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..4).fold(T::zero(), |s, k| s + self.m[i][k] * o.m[k][j]);
            }
        }
        LorentzMatrix { m }
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.m[j][i];
            }
        }
        LorentzMatrix { m }
    }

    /// `max |L^T eta L - eta|`.
    pub fn metric_defect(&self) -> T {
        let eta = metric::<T>();
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                let v = (0..4).fold(T::zero(), |s, k| s + self.m[k][i] * eta[k] * self.m[k][j]);
                let e = if i == j { eta[i] } else { T::zero() };
                worst = worst.max((v - e).abs());
            }
        }
        worst
    }

    pub fn max_diff(&self, o: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - o.m[i][j]).abs());
            }
        }
        worst
    }
}

fn metric<T: Real>() -> [T; 4] {
    [T::one(), -T::one(), -T::one(), -T::one()]
}

/// A 2x2 complex matrix acting on two-component spinors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinFrameMatrix<T> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> SpinFrameMatrix<T> {
    pub fn new(m: [[Complex<T>; 2]; 2]) -> Self {
        SpinFrameMatrix { m }
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = [[Complex::zero(); 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.m[i][0] * o.m[0][j] + self.m[i][1] * o.m[1][j];
            }
        }
        SpinFrameMatrix { m }
    }

    pub fn dagger(&self) -> Self {
        let m = &self.m;
        SpinFrameMatrix { m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]] }
    }

    pub fn apply(&self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        [self.m[0][0] * v[0] + self.m[0][1] * v[1], self.m[1][0] * v[0] + self.m[1][1] * v[1]]
    }

    pub fn column(&self, j: usize) -> [Complex<T>; 2] {
        [self.m[0][j], self.m[1][j]]
    }

    /// `k_a = tr(sigma_a B) / 2` with `sigma_0 = I`.
    pub fn kvec(&self) -> [Complex<T>; 4] {
        let m = &self.m;
        let half = T::lit(0.5);
        let i = Complex::new(T::zero(), T::one());
        [
            (m[0][0] + m[1][1]) * half,
            (m[0][1] + m[1][0]) * half,
            (m[0][1] - m[1][0]) * i * half,
            (m[0][0] - m[1][1]) * half,
        ]
    }

    pub fn from_kvec(k: [Complex<T>; 4]) -> Self {
        let i = Complex::new(T::zero(), T::one());
        SpinFrameMatrix { m: [[k[0] + k[3], k[1] - i * k[2]], [k[1] + i * k[2], k[0] - k[3]]] }
    }

    pub fn max_diff(&self, o: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - o.m[i][j]).norm());
            }
        }
        worst
    }
}

fn levi(idx: [usize; 4]) -> i32 {
    let mut v = idx;
    let mut sign = 1;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if v[i] == v[j] {
                return 0;
            }
            if v[i] > v[j] {
                v.swap(i, j);
                sign = -sign;
            }
        }
    }
    sign
}

/// `L_b^a = dbar_b^c [-delta_c^a k^n k*_n + k_c k^{a*} + k*_c k^a + i eps^{anm}_c k_n k*_m]`.
///
/// `kvec` is rescaled to unit determinant; a singular `B(k)` is rejected.
pub fn sl2c_to_lorentz<T: Real>(kvec: [Complex<T>; 4]) -> Result<LorentzMatrix<T>> {
    let det = kvec[0] * kvec[0] - kvec[1] * kvec[1] - kvec[2] * kvec[2] - kvec[3] * kvec[3];
    if det.norm() < T::eps() {
        return Err(Error::Singular);
    }
    let s = det.sqrt();
    let k: [Complex<T>; 4] = kvec.map(|x| x / s);
    let eta = metric::<T>();
    let ku: [Complex<T>; 4] = [k[0], -k[1], -k[2], -k[3]];
    let kk = (0..4).fold(Complex::zero(), |acc, n| acc + ku[n] * k[n].conj());
    let i = Complex::new(T::zero(), T::one());
    let mut m = [[T::zero(); 4]; 4];
    for c in 0..4 {
        for a in 0..4 {
            let mut v = k[c] * ku[a].conj() + k[c].conj() * ku[a];
            if a == c {
                v -= kk;
            }
            let mut e = Complex::zero();
            for n in 0..4 {
                for mm in 0..4 {
                    let sgn = levi([a, n, mm, c]);
                    if sgn != 0 {
                        e += k[n] * k[mm].conj() * T::from_i32(sgn).unwrap();
                    }
                }
            }
            // lowering c and eps_{0123} = +1 combine to -eta_cc
            v += i * e * (-eta[c]);
            m[c][a] = eta[c] * v.re;
        }
    }
    Ok(LorentzMatrix { m })
}

/// `L(B)` for a spin-frame matrix.
pub fn lorentz_of<T: Real>(b: &SpinFrameMatrix<T>) -> Result<LorentzMatrix<T>> {
    sl2c_to_lorentz(b.kvec())
}

/// The Cartesian-to-spherical spin frame, `sign = ±1`.
pub fn schrodinger_b<T: Real>(theta: T, phi: T, sign: i8) -> SpinFrameMatrix<T> {
    let (c, s) = ((theta * T::lit(0.5)).cos(), (theta * T::lit(0.5)).sin());
    let (p, q) = (cis(phi * T::lit(0.5)), cis(-phi * T::lit(0.5)));
    let sg = T::from_i8(sign.signum()).unwrap();
    SpinFrameMatrix { m: [[p * c * sg, q * s * sg], [-p * s * sg, q * c * sg]] }
}

/// Rows are the Cartesian components of `(e_t, e_theta, e_phi, e_r)`.
pub fn spherical_tetrad<T: Real>(theta: T, phi: T) -> LorentzMatrix<T> {
    let (st, ct, sp, cp) = (theta.sin(), theta.cos(), phi.sin(), phi.cos());
    let (o, z) = (T::one(), T::zero());
    LorentzMatrix {
        m: [[o, z, z, z], [z, ct * cp, ct * sp, -st], [z, -sp, cp, z], [z, st * cp, st * sp, ct]],
    }
}

/// `(chi_{+1/2}, chi_{-1/2})`, the columns of `B^{-1}`.
pub fn helicity_spinors<T: Real>(theta: T, phi: T) -> ([Complex<T>; 2], [Complex<T>; 2]) {
    let bi = schrodinger_b(theta, phi, 1).dagger();
    (bi.column(0), bi.column(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaBranch {
    /// `l = j + 1/2`
    Plus,
    /// `l = j - 1/2`
    Minus,
}

/// `Omega^{j±1/2}_{jm} = (-1)^{m+1/2} sqrt((2j+1)/8pi) [±chi_+ D_{-1/2} + chi_- D_{+1/2}]`.
pub fn omega_spinor<T: Real>(j: HalfInt, m: HalfInt, branch: OmegaBranch, theta: T, phi: T) -> Result<[Complex<T>; 2]> {
    let h = HalfInt::HALF;
    check_indices(j, -m, h)?;
    let sign = T::from_i64((m + h).neg_one_pow().unwrap()).unwrap();
    let norm = ((T::lit(2.0) * j.to_real::<T>() + T::one()) / (T::lit(8.0) * T::PI())).sqrt();
    let dm = big_d(j, -m, -h, phi, theta, T::zero())?;
    let dp = big_d(j, -m, h, phi, theta, T::zero())?;
    let (cp, cm) = helicity_spinors(theta, phi);
    let pm = if branch == OmegaBranch::Plus { T::one() } else { -T::one() };
    Ok([0, 1].map(|i| (cp[i] * dm * pm + cm[i] * dp) * (sign * norm)))
}

/// `(xi, eta) -> ((xi + eta)/sqrt2, (xi - eta)/sqrt2)`.
pub fn weyl_to_pauli<T: Real>(psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    if psi.frame != Frame::Weyl {
        return Err(Error::TagMismatch { expected: "Weyl".into(), found: format!("{:?}", psi.frame) });
    }
    let mut out = mix_halves(psi)?;
    out.frame = Frame::Pauli;
    Ok(out)
}

/// Inverse of [`weyl_to_pauli`].
pub fn pauli_to_weyl<T: Real>(psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    if psi.frame != Frame::Pauli {
        return Err(Error::TagMismatch { expected: "Pauli".into(), found: format!("{:?}", psi.frame) });
    }
    let mut out = mix_halves(psi)?;
    out.frame = Frame::Weyl;
    Ok(out)
}

fn mix_halves<T: Real>(psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    if psi.len() != 4 {
        return Err(Error::Domain("frame change needs a bispinor".into()));
    }
    let r = Complex::from(T::FRAC_1_SQRT_2());
    let c = &psi.comps;
    let comps = vec![
        c[0].add(&c[2]).scale(r),
        c[1].add(&c[3]).scale(r),
        c[0].sub(&c[2]).scale(r),
        c[1].sub(&c[3]).scale(r),
    ];
    Ok(psi.with_comps(comps))
}

/// Spherical to Cartesian tetrad: each two-component block is multiplied by `B^{-1}`.
pub fn to_cartesian<T: Real>(psi: &SpinorField<T>) -> Result<SpinorField<T>> {
    if psi.tetrad != Tetrad::Spherical {
        return Err(Error::TagMismatch { expected: "Spherical".into(), found: format!("{:?}", psi.tetrad) });
    }
    let h = HalfInt::HALF;
    let z = HalfInt::ZERO;
    let r = Complex::from(T::FRAC_1_SQRT_2());
    // cos(theta/2) = (1+c)^{1/2}/sqrt2, sin(theta/2) = (1-c)^{1/2}/sqrt2
    let cos_m = |f: &Comp<T>| f.mul_monomial(-h, z, h, r);
    let sin_m = |f: &Comp<T>| f.mul_monomial(-h, h, z, r);
    let cos_p = |f: &Comp<T>| f.mul_monomial(h, z, h, r);
    let sin_p = |f: &Comp<T>| f.mul_monomial(h, h, z, r);
    let mut comps = Vec::with_capacity(psi.len());
    for blk in psi.comps.chunks(2) {
        let (a, b) = (&blk[0], &blk[1]);
        // B^{-1} = [[cos e^{-i phi/2}, -sin e^{-i phi/2}], [sin e^{i phi/2}, cos e^{i phi/2}]]
        comps.push(cos_m(a).sub(&sin_m(b)));
        comps.push(sin_p(a).add(&cos_p(b)));
    }
    let mut out = psi.with_comps(comps);
    out.tetrad = Tetrad::Cartesian;
    Ok(out)
}
