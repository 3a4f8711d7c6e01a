//! Numerical workbench for commutative hypergroup algebras.
//!
//! Builds finite (and truncated infinite) commutative hypergroups from
//! structure constants, computes their harmonic analysis (Haar weights,
//! characters, Plancherel weights, Fourier transform, ideal lattice),
//! constructs approximate and exact diagonals of the convolution algebra, and
//! renders amenability verdicts for the built-in example families.
//!
//! The numerical core is generic over the scalar type through the
//! [`scalar::Real`] trait; the aliases at the crate root fix `f64`, which is
//! what the CLI and the acceptance suite use.
#![allow(clippy::needless_range_loop)]

pub mod amenability;
pub mod element;
pub mod error;
pub mod families;
pub mod ideals;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod spectra;
pub mod table;

pub use error::{Error, Result};
pub use scalar::Real;

/// Default axiom tolerance for `f64` tables.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default RNG seed threaded into the character solver.
pub const DEFAULT_SEED: u64 = 42;

/// Concrete `f64` specializations.
pub type Hypergroup = table::HypergroupTable<f64>;
pub type Raw = table::RawHypergroup<f64>;
pub type Element = element::AlgebraElement<f64>;
pub type Tensor = element::TensorElement<f64>;
pub type Dual = spectra::CharacterTable<f64>;
pub type Coeffs = spectra::FourierCoeffs<f64>;
pub type Quadrature = families::QuadratureRule<f64>;
pub type Report = amenability::AmenabilityReport<f64>;
