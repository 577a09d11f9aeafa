//! Gauss-Legendre rules and the pole-free sphere grid.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// nodes in ascending order.
pub fn gauss_legendre<T: Real>(n: usize) -> Result<Vec<(T, T)>> {
    if n == 0 {
        return Err(Error::EmptyQuadrature);
    }
    let one = T::one();
    let two = T::lit(2.0);
    let nf = T::from_usize(n).unwrap();
    let mut out = vec![(T::zero(), T::zero()); n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root
        let k = T::from_usize(i).unwrap();
        let mut x = (T::PI() * (k + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= T::eps() * T::lit(4.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != T::zero() {
            dp = d;
        }
        let w = two / ((one - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    if n % 2 == 1 {
        out[n / 2].0 = T::zero();
    }
    Ok(out)
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf = T::from_usize(k).unwrap();
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::from_usize(n).unwrap();
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Tensor grid on the sphere: Gauss-Legendre in `cos(theta)`, uniform in `phi`.
///
/// Theta nodes are ascending in theta and symmetric about `pi/2`; no node
/// sits on a pole.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid<T> {
    theta: Vec<T>,
    cos_theta: Vec<T>,
    theta_weights: Vec<T>,
    phi: Vec<T>,
    phi_weight: T,
}

impl<T: Real> SphereGrid<T> {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 1 {
            return Err(Error::GridTooSmall { axis: "theta", min: 1, got: n_theta });
        }
        if n_phi < 2 || !n_phi.is_multiple_of(2) {
            return Err(Error::GridTooSmall { axis: "phi (even)", min: 2, got: n_phi });
        }
        // descending c == ascending theta
        let rule = gauss_legendre::<T>(n_theta)?;
        let (cos_theta, theta_weights): (Vec<T>, Vec<T>) = rule.into_iter().rev().unzip();
        let theta = cos_theta.iter().map(|c| c.acos()).collect();
        let two_pi = T::PI() * T::lit(2.0);
        let dphi = two_pi / T::from_usize(n_phi).unwrap();
        let phi = (0..n_phi).map(|j| T::from_usize(j).unwrap() * dphi).collect();
        Ok(SphereGrid { theta, cos_theta, theta_weights, phi, phi_weight: dphi })
    }

    pub fn theta(&self) -> &[T] {
        &self.theta
    }

    pub fn cos_theta(&self) -> &[T] {
        &self.cos_theta
    }

    pub fn theta_weights(&self) -> &[T] {
        &self.theta_weights
    }

    pub fn phi(&self) -> &[T] {
        &self.phi
    }

    pub fn phi_weight(&self) -> T {
        self.phi_weight
    }

    pub fn n_theta(&self) -> usize {
        self.theta.len()
    }

    pub fn n_phi(&self) -> usize {
        self.phi.len()
    }

    /// All `(theta, phi)` nodes, theta-major.
    pub fn points(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.theta.iter().flat_map(move |&t| self.phi.iter().map(move |&p| (t, p)))
    }

    /// Index of the node reached by `(theta, phi) -> (pi - theta, phi + pi)`.
    pub fn reflected(&self, i_theta: usize, i_phi: usize) -> (usize, usize) {
        let n = self.n_phi();
        (self.n_theta() - 1 - i_theta, (i_phi + n / 2) % n)
    }

    /// `∫ f dΩ` with `dΩ = sin(theta) dtheta dphi`.
    pub fn integrate<F: Fn(T, T) -> Complex<T>>(&self, f: F) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for (t, w) in self.theta.iter().zip(&self.theta_weights) {
            let mut row = Complex::new(T::zero(), T::zero());
            for &p in &self.phi {
                row += f(*t, p);
            }
            acc += row * (*w * self.phi_weight);
        }
        acc
    }

    /// Max of `|f|` over the nodes.
    pub fn max_abs<F: Fn(T, T) -> T>(&self, f: F) -> T {
        self.points().map(|(t, p)| f(t, p)).fold(T::zero(), T::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn quad(n: usize, f: impl Fn(f64) -> f64) -> f64 {
        gauss_legendre::<f64>(n).unwrap().iter().map(|(x, w)| w * f(*x)).sum()
    }

    #[test]
    fn midpoint_rule() {
        let r = gauss_legendre::<f64>(1).unwrap();
        assert_eq!(r, vec![(0.0, 2.0)]);
        assert!(gauss_legendre::<f64>(0).is_err());
    }

    #[test]
    fn small_rules() {
        assert_abs_diff_eq!(quad(2, |x| x * x), 2.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(quad(32, |x| x.powi(63)), 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(quad(32, |x| x.powi(62)), 2.0 / 63.0, epsilon = 1e-13);
        let w: f64 = gauss_legendre::<f64>(57).unwrap().iter().map(|p| p.1).sum();
        assert_abs_diff_eq!(w, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn single_precision_rule() {
        let r = gauss_legendre::<f32>(8).unwrap();
        let s: f32 = r.iter().map(|(x, w)| w * x * x).sum();
        assert!((s - 2.0 / 3.0).abs() < 1e-5);
    }

    #[test]
    fn sphere_grid_properties() {
        let g = SphereGrid::<f64>::new(16, 12).unwrap();
        let area = g.integrate(|_, _| Complex::new(1.0, 0.0));
        assert_abs_diff_eq!(area.re, 4.0 * std::f64::consts::PI, epsilon = 1e-12);
        for &t in g.theta() {
            assert!(t > 0.0 && t < std::f64::consts::PI);
        }
        for i in 0..16 {
            let (ri, _) = g.reflected(i, 0);
            assert_abs_diff_eq!(g.theta()[ri], std::f64::consts::PI - g.theta()[i], epsilon = 1e-12);
        }
        assert!(SphereGrid::<f64>::new(4, 7).is_err());
    }
}
