//! Builders for the example families: Dunkl–Ramirez truncations, polynomial
//! hypergroups via quadrature linearization, conjugacy-class hypergroups of
//! finite groups, and Gauss–Jacobi rules for the compact dual model.

mod dunkl_ramirez;
mod groups;
mod polynomial;
mod quadrature;

pub use dunkl_ramirez::{
    dunkl_ramirez, dunkl_ramirez_character, dunkl_ramirez_plancherel, DunklRamirezDual,
};
pub use groups::{builtin_group, conjugacy_hypergroup, GroupTable};
pub use polynomial::{
    default_node_count, jacobi_haar_closed, jacobi_polynomial_hypergroup, polynomial_hypergroup,
    PolynomialHypergroup, PolynomialRecurrence,
};
pub use quadrature::{gauss_jacobi_rule, QuadratureRule};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A point of the character space of a discrete family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharacterPoint<T: Real> {
    /// A point of `[-1, 1]` for polynomial hypergroups.
    Continuous(T),
    /// A point of the discrete character space.
    Discrete(usize),
    /// The compactification point (the constant character for the
    /// Dunkl–Ramirez dual).
    Infinity,
}

/// Lazily evaluated structure constants of a (truncated) infinite discrete
/// hypergroup, with per-family closed forms for Haar weights, characters and
/// Plancherel atom masses.
#[derive(Debug)]
pub enum StructureOracle<T: Real> {
    Polynomial(Arc<PolynomialHypergroup<T>>),
    DunklRamirezDual(DunklRamirezDual<T>),
}

impl<T: Real> StructureOracle<T> {
    pub fn label(&self) -> String {
        match self {
            Self::Polynomial(p) => p.label().to_string(),
            Self::DunklRamirezDual(d) => format!("dunkl-ramirez-dual(a={})", d.parameter()),
        }
    }

    /// Structure row `delta_m * delta_n` as `(k, mass)` pairs.
    pub fn constants(&self, m: usize, n: usize) -> Result<Vec<(usize, T)>> {
        match self {
            Self::Polynomial(p) => Ok(p.constants(m, n)?.as_ref().clone()),
            Self::DunklRamirezDual(d) => Ok(d.constants(m, n)),
        }
    }

    /// Discrete Haar weight `h(n)` (normalized `h(identity) = 1`).
    pub fn haar(&self, n: usize) -> Result<T> {
        match self {
            Self::Polynomial(p) => p.haar(n),
            Self::DunklRamirezDual(d) => Ok(d.haar(n)),
        }
    }

    /// Character value `alpha_point(n)` where a closed form exists.
    pub fn character(&self, point: CharacterPoint<T>, n: usize) -> Result<T> {
        match (self, point) {
            (Self::Polynomial(p), CharacterPoint::Continuous(x)) => Ok(p.character(x, n)),
            (Self::DunklRamirezDual(d), CharacterPoint::Discrete(x)) => Ok(d.character(Some(x), n)),
            (Self::DunklRamirezDual(d), CharacterPoint::Infinity) => Ok(d.character(None, n)),
            _ => Err(Error::NoCharacterEvaluator(format!(
                "{} does not evaluate characters at {point:?}",
                self.label()
            ))),
        }
    }

    /// Plancherel atom mass at the character: zero for the absolutely
    /// continuous orthogonality measures of polynomial hypergroups, the Haar
    /// mass of `H_a` for the Dunkl–Ramirez dual.
    pub fn plancherel_atom(&self, point: CharacterPoint<T>) -> Result<T> {
        match (self, point) {
            (Self::Polynomial(_), CharacterPoint::Continuous(_)) => Ok(T::zero()),
            (Self::DunklRamirezDual(d), CharacterPoint::Discrete(x)) => {
                Ok(d.plancherel_atom(Some(x)))
            }
            (Self::DunklRamirezDual(d), CharacterPoint::Infinity) => Ok(d.plancherel_atom(None)),
            _ => Err(Error::NoCharacterEvaluator(format!(
                "{} has no atom evaluator at {point:?}",
                self.label()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_dispatch() {
        let poly = StructureOracle::Polynomial(Arc::new(
            jacobi_polynomial_hypergroup(0.0f64, 0.0, 8).unwrap(),
        ));
        assert_eq!(
            poly.character(CharacterPoint::Continuous(1.0), 5).unwrap(),
            1.0
        );
        assert_eq!(
            poly.plancherel_atom(CharacterPoint::Continuous(0.3))
                .unwrap(),
            0.0
        );
        assert!(poly.character(CharacterPoint::Discrete(1), 1).is_err());

        let dual = StructureOracle::DunklRamirezDual(DunklRamirezDual::new(0.4f64).unwrap());
        assert_eq!(dual.character(CharacterPoint::Infinity, 17).unwrap(), 1.0);
        assert!(dual.plancherel_atom(CharacterPoint::Discrete(2)).unwrap() > 0.0);
        assert!(dual.character(CharacterPoint::Continuous(0.5), 1).is_err());
        let row = dual.constants(3, 3).unwrap();
        let sum: f64 = row.iter().map(|&(_, p)| p).sum();
        assert!((sum - 1.0).abs() < 1e-14);
    }
}
