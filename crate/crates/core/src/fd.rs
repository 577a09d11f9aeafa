//! Finite-difference derivatives used on free-form fields and as oracles.

use std::ops::{Add, Mul, Sub};

use crate::scalar::Real;

const CENTRAL8: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];

/// Eighth-order central first derivative of `f` at `x` with step `h`.
pub fn d1_central8<T, V, F>(f: F, x: T, h: T) -> V
where
    T: Real,
    V: Copy + Add<Output = V> + Sub<Output = V> + Mul<T, Output = V>,
    F: Fn(T) -> V,
{
    let mut acc: Option<V> = None;
    for (i, &w) in CENTRAL8.iter().enumerate() {
        let k = T::from_usize(i + 1).unwrap();
        let term = (f(x + k * h) - f(x - k * h)) * T::lit(w);
        acc = Some(match acc {
            Some(a) => a + term,
            None => term,
        });
    }
    acc.unwrap() * (T::one() / h)
}

/// Second derivative as the derivative of the derivative.
pub fn d2_central8<T, F>(f: F, x: T, h: T) -> T
where
    T: Real,
    F: Fn(T) -> T,
{
    d1_central8(|y| d1_central8(&f, y, h), x, h)
}
