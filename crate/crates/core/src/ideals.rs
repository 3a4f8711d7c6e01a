//! Ideal lattice of a finite commutative hypergroup algebra.
//!
//! Every closed ideal is the span of a subset of the dual, so ideals are
//! represented by their dual index sets; the characters themselves form the
//! basis. Hulls, minimal ideals and explicit ideal identities follow from the
//! Fourier layer.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_complex::Complex;

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalar::{c_zero, real, Real};
use crate::spectra::{fourier, inverse_fourier, CharacterTable, FourierCoeffs};

/// Relative threshold used by [`hull`] by default: coefficients below
/// `1e-9 * ||f^||_inf` count as zero.
pub const DEFAULT_HULL_REL_TOL: f64 = 1e-9;

/// An ideal `I_P = span{ alpha_i : i in P }`, described by its dual set.
#[derive(Debug, Clone)]
pub struct IdealDescriptor<T: Real> {
    dual: Arc<CharacterTable<T>>,
    dual_set: BTreeSet<usize>,
}

impl<T: Real> IdealDescriptor<T> {
    pub fn dual(&self) -> &Arc<CharacterTable<T>> {
        &self.dual
    }

    pub fn dual_set(&self) -> &BTreeSet<usize> {
        &self.dual_set
    }

    pub fn dimension(&self) -> usize {
        self.dual_set.len()
    }

    /// Basis characters `{ alpha_i : i in P }` as algebra elements.
    pub fn basis(&self) -> Vec<AlgebraElement<T>> {
        self.dual_set
            .iter()
            .map(|&i| self.dual.character(i))
            .collect()
    }

    /// Membership test: `f` lies in the ideal when its Fourier coefficients
    /// vanish off the dual set.
    pub fn contains(&self, f: &AlgebraElement<T>, tol: T) -> Result<bool> {
        let hat = fourier(&self.dual, f)?;
        Ok((0..self.dual.len()).all(|i| self.dual_set.contains(&i) || hat.value(i).norm() <= tol))
    }
}

/// The ideal spanned by the characters indexed by `P`.
pub fn ideal_from_dual_subset<T: Real>(
    dual: &Arc<CharacterTable<T>>,
    subset: impl IntoIterator<Item = usize>,
) -> Result<IdealDescriptor<T>> {
    let dual_set: BTreeSet<usize> = subset.into_iter().collect();
    if let Some(&max) = dual_set.iter().next_back() {
        if max >= dual.len() {
            return Err(Error::IndexOutOfRange {
                index: max,
                size: dual.len(),
            });
        }
    }
    Ok(IdealDescriptor {
        dual: Arc::clone(dual),
        dual_set,
    })
}

/// The hull of `f`: indices where the Fourier transform is nonzero, at a
/// threshold relative to `||f^||_inf`.
pub fn hull<T: Real>(
    dual: &Arc<CharacterTable<T>>,
    f: &AlgebraElement<T>,
    rel_tol: T,
) -> Result<BTreeSet<usize>> {
    let hat = fourier(dual, f)?;
    let sup = hat
        .values()
        .iter()
        .map(|z| z.norm())
        .fold(T::zero(), |a, b| a.max(b));
    let threshold = sup * rel_tol;
    Ok((0..dual.len())
        .filter(|&i| hat.value(i).norm() > threshold)
        .collect())
}

/// Hull at the default relative threshold.
pub fn hull_default<T: Real>(
    dual: &Arc<CharacterTable<T>>,
    f: &AlgebraElement<T>,
) -> Result<BTreeSet<usize>> {
    hull(dual, f, real(DEFAULT_HULL_REL_TOL))
}

/// All minimal ideals: one per character, each one-dimensional.
pub fn minimal_ideals<T: Real>(dual: &Arc<CharacterTable<T>>) -> Vec<IdealDescriptor<T>> {
    (0..dual.len())
        .map(|i| IdealDescriptor {
            dual: Arc::clone(dual),
            dual_set: std::iter::once(i).collect(),
        })
        .collect()
}

/// The identity of `I_P`: `u_P = inverse Fourier of the indicator of P`, so
/// `u_P * g = g` for every `g` in the ideal and `u_P` is idempotent.
pub fn ideal_identity<T: Real>(
    dual: &Arc<CharacterTable<T>>,
    subset: &BTreeSet<usize>,
) -> Result<AlgebraElement<T>> {
    if subset.is_empty() {
        return Err(Error::EmptyDualSubset);
    }
    if let Some(&max) = subset.iter().next_back() {
        if max >= dual.len() {
            return Err(Error::IndexOutOfRange {
                index: max,
                size: dual.len(),
            });
        }
    }
    let values = (0..dual.len())
        .map(|i| {
            if subset.contains(&i) {
                Complex::new(T::one(), T::zero())
            } else {
                c_zero()
            }
        })
        .collect();
    let coeffs = FourierCoeffs::from_values(dual, values)?;
    Ok(inverse_fourier(&coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::character_table;
    use crate::table::cyclic_group_table;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn dual_of_zn(n: usize) -> Arc<CharacterTable<f64>> {
        let base = Arc::new(cyclic_group_table(n).unwrap());
        Arc::new(character_table(&base, 1e-10, 42).unwrap())
    }

    #[test]
    fn empty_and_full_subsets() {
        let dual = dual_of_zn(4);
        let zero = ideal_from_dual_subset(&dual, []).unwrap();
        assert_eq!(zero.dimension(), 0);
        let full = ideal_from_dual_subset(&dual, 0..4).unwrap();
        assert_eq!(full.dimension(), 4);
        let u_all = ideal_identity(&dual, full.dual_set()).unwrap();
        let u = AlgebraElement::unit(dual.base());
        for x in 0..4 {
            assert!((u_all.value(x) - u.value(x)).norm() < 1e-12);
        }
    }

    #[test]
    fn z2_span_of_sign_character() {
        let dual = dual_of_zn(2);
        let ideal = ideal_from_dual_subset(&dual, [1]).unwrap();
        assert_eq!(ideal.dimension(), 1);
        let basis = ideal.basis();
        assert!((basis[0].value(0).re - 1.0).abs() < 1e-12);
        assert!((basis[0].value(1).re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn hull_of_unit_is_everything() {
        let dual = dual_of_zn(5);
        let u = AlgebraElement::unit(dual.base());
        let h = hull_default(&dual, &u).unwrap();
        assert_eq!(h.len(), 5);
    }

    #[test]
    fn hull_of_character_is_singleton() {
        let dual = dual_of_zn(5);
        for i in 0..5 {
            let h = hull_default(&dual, &dual.character(i)).unwrap();
            assert_eq!(h, std::iter::once(i).collect());
        }
    }

    #[test]
    fn hull_of_zero_is_empty() {
        let dual = dual_of_zn(3);
        let zero = AlgebraElement::from_real(dual.base(), &[0.0; 3]).unwrap();
        assert!(hull_default(&dual, &zero).unwrap().is_empty());
    }

    #[test]
    fn minimal_ideals_are_one_dimensional_and_disjoint() {
        let dual = dual_of_zn(6);
        let ideals = minimal_ideals(&dual);
        assert_eq!(ideals.len(), 6);
        for (i, ideal) in ideals.iter().enumerate() {
            assert_eq!(ideal.dimension(), 1);
            assert!(ideal.dual_set().contains(&i));
        }
    }

    #[test]
    fn ideal_identity_acts_as_identity_and_is_idempotent() {
        let dual = dual_of_zn(5);
        let subset: BTreeSet<usize> = [1, 3].into_iter().collect();
        let u_p = ideal_identity(&dual, &subset).unwrap();

        for j in 0..5 {
            let alpha = dual.character(j);
            let prod = u_p.convolve(&alpha).unwrap();
            if subset.contains(&j) {
                for x in 0..5 {
                    assert!((prod.value(x) - alpha.value(x)).norm() < 1e-10);
                }
            } else {
                for x in 0..5 {
                    assert!(prod.value(x).norm() < 1e-10);
                }
            }
        }

        let upup = u_p.convolve(&u_p).unwrap();
        for x in 0..5 {
            assert!((upup.value(x) - u_p.value(x)).norm() < 1e-10);
        }
    }

    #[test]
    fn singleton_identity_is_scaled_character() {
        let dual = dual_of_zn(4);
        let subset: BTreeSet<usize> = std::iter::once(2).collect();
        let u_p = ideal_identity(&dual, &subset).unwrap();
        for x in 0..4 {
            let want = dual.value(2, x) * dual.plancherel_weight(2);
            assert!((u_p.value(x) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn empty_subset_is_an_error() {
        let dual = dual_of_zn(3);
        assert!(matches!(
            ideal_identity(&dual, &BTreeSet::new()),
            Err(Error::EmptyDualSubset)
        ));
    }

    #[test]
    fn generated_ideal_equals_hull_span() {
        // The ideal generated by f has Fourier support exactly hull(f).
        let dual = dual_of_zn(6);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = AlgebraElement::random(dual.base(), &mut rng);
        let h = hull_default(&dual, &f).unwrap();
        let ideal = ideal_from_dual_subset(&dual, h.iter().copied()).unwrap();

        // f * e_x stays inside I_hull(f) for every basis vector e_x.
        for x in 0..6 {
            let g = AlgebraElement::indicator(dual.base(), x).unwrap();
            let fg = f.convolve(&g).unwrap();
            assert!(ideal.contains(&fg, 1e-10).unwrap());
        }
        // Each alpha_i with i in hull(f) is reached: f * alpha_i = f^(i) alpha_i != 0.
        let hat = fourier(&dual, &f).unwrap();
        for &i in &h {
            let alpha = dual.character(i);
            let fa = f.convolve(&alpha).unwrap();
            assert!(hat.value(i).norm() > 0.0);
            for x in 0..6 {
                assert!((fa.value(x) - alpha.value(x) * hat.value(i)).norm() < 1e-10);
            }
        }
    }
}
