pub mod error;
pub mod group_ring;
pub mod groups;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
/// Elements of the rational group ring.
pub type QRingElement = group_ring::RingElement<Rational>;
pub mod resolutions;

/// Resolutions with exact rational entries.
pub type QResolution = resolutions::Resolution<Rational>;
pub mod lp_complex;

/// Chains with double-precision coefficients.
pub type Chain = lp_complex::ChainVector<f64>;
/// Cochains with double-precision coefficients.
pub type Cochain = lp_complex::CochainVector<f64>;
/// Truncated spaces with double-precision exponents.
pub type Space = lp_complex::TruncatedSpace<f64>;
pub mod homotopy_lab;

/// Exact bar cochains.
pub type QCochain = homotopy_lab::EquivariantCochain<Rational>;
pub mod vanishing_lab;
pub mod cli;
