//! Spin-1/2 particle in the field of an Abelian magnetic monopole, in the
//! tetrad formalism with Wigner D-functions: exact `d^j_{a,b}(theta)`, the
//! Pauli criterion and charge quantization, generalized angular momentum,
//! spinor monopole harmonics, radial systems on flat and curved backgrounds,
//! Dirac currents and the Schwinger/Dirac/Wu-Yang gauge dictionary.
//!
//! Numerics are generic over [`scalar::Real`] (`f32`, `f64`); exact objects
//! ([`HalfInt`], [`RationalPoly`], [`ThetaFunction`], [`SqrtRational`]) are
//! scalar-free.

pub mod currents;
pub mod error;
pub mod expansion;
pub mod fd;
pub mod field;
pub mod frames;
pub mod gauge;
pub mod halfint;
pub mod harmonics;
pub mod ops;
pub mod pauli;
pub mod poly;
pub mod quadrature;
pub mod radial;
pub mod scalar;
pub mod theta;
pub mod wigner;

pub use error::{Error, Result};
pub use field::{Frame, Gauge, Tetrad};
pub use halfint::HalfInt;
pub use poly::RationalPoly;
pub use scalar::Real;
pub use theta::{SqrtRational, ThetaFunction};

pub type SphereGrid64 = quadrature::SphereGrid<f64>;
pub type SpinorField64 = field::SpinorField<f64>;
pub type MonopoleMode64 = harmonics::MonopoleMode<f64>;
pub type MetricProfile64 = radial::MetricProfile<f64>;
pub type RadialState64 = radial::RadialState<f64>;
pub type FourCurrent64 = currents::FourCurrent<f64>;
pub type LorentzMatrix64 = frames::LorentzMatrix<f64>;
pub type SpinFrameMatrix64 = frames::SpinFrameMatrix<f64>;
pub type SphereGrid32 = quadrature::SphereGrid<f32>;
pub type SpinorField32 = field::SpinorField<f32>;
