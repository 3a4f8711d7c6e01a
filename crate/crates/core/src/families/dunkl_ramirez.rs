//! The compact countable family `H_a` on `N_0 union {infinity}`
//! (`0 < a <= 1/2`): min-convolution off the diagonal, geometric spreading on
//! it, with the point at infinity as identity. Truncations lump the geometric
//! tail onto the identity cell so every row stays an exact probability
//! vector, and the first `N` characters of the truncation coincide with the
//! closed-form characters of the full family.
//!
//! The discrete dual of `H_a` lives on `N_0` with max-convolution; it is
//! exposed as [`DunklRamirezDual`] with closed-form structure constants,
//! characters and Plancherel atoms.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::table::{default_tolerance, HypergroupTable, RawHypergroup};

fn check_parameter<T: Real>(a: T) -> Result<()> {
    let half = T::one() / (T::one() + T::one());
    if !(a > T::zero() && a <= half) {
        return Err(Error::ParameterOutOfRange(format!(
            "dunkl-ramirez parameter must satisfy 0 < a <= 1/2 (got {a})"
        )));
    }
    Ok(())
}

/// Truncation of `H_a` to `{0..N-1} union {identity}`: element `N` plays the
/// compactification point. Requires `N >= 2`; the result passes the axiom
/// checker at the default tolerance.
///
/// Row layout: `p(n,m) = delta_min(n,m)` for distinct `n,m < N`; the diagonal
/// row `p(n,n)` keeps its masses `(1-2a)/(1-a)` at `n` and `a^k` at `n+k`
/// while the tail `a^{N-n}/(1-a)` is lumped onto the identity.
pub fn dunkl_ramirez<T: Real>(a: T, truncation: usize) -> Result<HypergroupTable<T>> {
    check_parameter(a)?;
    if truncation < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "truncation size must be at least 2 (got {truncation})"
        )));
    }
    let n_trunc = truncation;
    let size = n_trunc + 1;
    let identity = n_trunc;
    let one = T::one();

    let label = format!("H_a(a={a}, N={n_trunc})");
    let mut raw = RawHypergroup::new(size, identity, (0..size).collect(), label)?;

    for n in 0..n_trunc {
        // identity row/column
        raw.set_symmetric_row(n, identity, vec![(n, one)])?;
        // min-convolution off the diagonal
        for m in (n + 1)..n_trunc {
            raw.set_symmetric_row(n, m, vec![(n, one)])?;
        }
        // diagonal spreading with the lumped tail
        let mut row = Vec::new();
        let head = (one - a - a) / (one - a);
        if head > T::zero() {
            row.push((n, head));
        }
        let mut power = one;
        for k in 1..(n_trunc - n) {
            power *= a;
            row.push((n + k, power));
        }
        // tail = a^{N-n} / (1-a)
        row.push((identity, power * a / (one - a)));
        raw.set_row(n, n, row)?;
    }
    raw.set_row(identity, identity, vec![(identity, one)])?;

    raw.validate(default_tolerance())
}

/// Closed-form character of `H_a` (and of its truncations, for `k` below the
/// truncation size): `chi_0 = 1`; for `k >= 1`, `chi_k` vanishes on
/// `{0..k-2}`, takes `-a/(1-a)` at `k-1`, and `1` from `k` on (including the
/// identity).
pub fn dunkl_ramirez_character<T: Real>(a: T, k: usize, at_identity: bool, n: usize) -> T {
    if at_identity || k == 0 || n >= k {
        T::one()
    } else if n + 1 == k {
        -a / (T::one() - a)
    } else {
        T::zero()
    }
}

/// Plancherel weight of `H_a` at the k-th character: `1` at the constant
/// character, `(1-a)/a^k` for `k >= 1`.
pub fn dunkl_ramirez_plancherel<T: Real>(a: T, k: usize) -> T {
    if k == 0 {
        return T::one();
    }
    let mut w = T::one() - a;
    for _ in 0..k {
        w /= a;
    }
    w
}

/// The discrete dual hypergroup of `H_a` on `N_0`: identity element 0,
/// max-convolution off the diagonal, geometric backspreading on it.
#[derive(Debug, Clone)]
pub struct DunklRamirezDual<T: Real> {
    a: T,
}

impl<T: Real> DunklRamirezDual<T> {
    pub fn new(a: T) -> Result<Self> {
        check_parameter(a)?;
        Ok(Self { a })
    }

    pub fn parameter(&self) -> T {
        self.a
    }

    /// Structure row `delta_m * delta_n`, finitely supported.
    ///
    /// Distinct points: `delta_max(m,n)`. The diagonal row `delta_m * delta_m`
    /// has mass `(1-2a)/(1-a)` at `m`, `a^{m-l}` at `1 <= l <= m-1`, and
    /// `a^m/(1-a)` at `0`.
    pub fn constants(&self, m: usize, n: usize) -> Vec<(usize, T)> {
        let one = T::one();
        let a = self.a;
        if m != n {
            return vec![(m.max(n), one)];
        }
        if m == 0 {
            return vec![(0, one)];
        }
        let mut row = Vec::with_capacity(m + 1);
        // ascending support order: 0, 1, .., m
        let mut a_pow_m = one;
        for _ in 0..m {
            a_pow_m *= a;
        }
        row.push((0, a_pow_m / (one - a)));
        let mut mass = a_pow_m;
        for l in 1..m {
            mass /= a; // a^{m-l}
            row.push((l, mass));
        }
        let head = (one - a - a) / (one - a);
        if head > T::zero() {
            row.push((m, head));
        }
        row
    }

    /// Discrete Haar weight `h(0) = 1`, `h(k) = (1-a)/a^k`, which is also
    /// the Plancherel weight sequence of `H_a`.
    pub fn haar(&self, k: usize) -> T {
        dunkl_ramirez_plancherel(self.a, k)
    }

    /// Character indexed by a point of `H_a`: evaluation `psi_x(k) = chi_k(x)`
    /// for finite `x`, and the constant character for the point at infinity
    /// (`x = None`).
    pub fn character(&self, x: Option<usize>, k: usize) -> T {
        match x {
            None => T::one(),
            Some(x) => dunkl_ramirez_character(self.a, k, false, x),
        }
    }

    /// Plancherel atom of the discrete dual at the character `psi_x`: the
    /// Haar mass of `H_a` at `x`, which is `(1-a) a^x` for finite `x` and `0`
    /// at infinity.
    pub fn plancherel_atom(&self, x: Option<usize>) -> T {
        match x {
            None => T::zero(),
            Some(x) => {
                let mut mass = T::one() - self.a;
                for _ in 0..x {
                    mass *= self.a;
                }
                mass
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    #[test]
    fn parameter_validation() {
        assert!(dunkl_ramirez::<f64>(0.0, 4).is_err());
        assert!(dunkl_ramirez::<f64>(0.6, 4).is_err());
        assert!(dunkl_ramirez::<f64>(0.3, 1).is_err());
        assert!(dunkl_ramirez::<f64>(0.5, 2).is_ok());
    }

    #[test]
    fn half_parameter_kills_diagonal_head() {
        // a = 1/2: (1-2a)/(1-a) = 0, so delta_n * delta_n has no mass at n.
        let table = dunkl_ramirez::<f64>(0.5, 6).unwrap();
        for n in 0..6 {
            assert!(table.row(n, n).iter().all(|&(z, _)| z != n));
        }
    }

    #[test]
    fn min_convolution_off_diagonal() {
        let table = dunkl_ramirez::<f64>(0.4, 8).unwrap();
        assert_eq!(table.row(2, 5), &[(2, 1.0)]);
        assert_eq!(table.row(5, 2), &[(2, 1.0)]);
        assert_eq!(table.row(3, 8), &[(3, 1.0)]); // identity action
    }

    #[test]
    fn lumped_tail_mass() {
        // N = 16, row n = 14: tail = a^2/(1-a).
        let a = 0.4;
        let table = dunkl_ramirez::<f64>(a, 16).unwrap();
        let row = table.row(14, 14);
        let tail = row.iter().find(|&&(z, _)| z == 16).unwrap().1;
        assert!((tail - a * a / (1.0 - a)).abs() < 1e-15);
        let sum: f64 = row.iter().map(|&(_, p)| p).sum();
        assert!((sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn axioms_pass_at_default_tolerance() {
        for &(a, n) in &[(0.3, 8usize), (0.5, 8), (0.4, 16), (0.25, 5)] {
            let table = dunkl_ramirez::<f64>(a, n).unwrap();
            let report = table.check_axioms(1e-12);
            assert!(report.pass(), "a={a} N={n}: {report:?}");
        }
    }

    #[test]
    fn haar_is_geometric_with_lumped_remainder() {
        // w(n) = (1-a) a^n for n < N, w(N) = a^N.
        let a = 0.5;
        let table = dunkl_ramirez::<f64>(a, 4).unwrap();
        for n in 0..4 {
            let want = 0.5f64.powi(n as i32 + 1);
            assert!((table.weight(n) - want).abs() < 1e-14, "w({n})");
        }
        assert!((table.weight(4) - 0.0625).abs() < 1e-14);
    }

    #[test]
    fn closed_form_characters_are_characters_of_the_truncation() {
        let a = 0.4;
        let n_trunc = 8;
        let table = Arc::new(dunkl_ramirez::<f64>(a, n_trunc).unwrap());
        // chi_k as a vector over {0..N-1, identity}.
        for k in 0..n_trunc {
            let chi: Vec<f64> = (0..=n_trunc)
                .map(|x| dunkl_ramirez_character(a, k, x == n_trunc, x))
                .collect();
            let mut residual: f64 = 0.0;
            for x in 0..=n_trunc {
                for y in 0..=n_trunc {
                    let mut acc = 0.0;
                    for &(z, p) in table.row(x, y) {
                        acc += chi[z] * p;
                    }
                    residual = residual.max((acc - chi[x] * chi[y]).abs());
                }
            }
            assert!(residual < 1e-14, "chi_{k} residual {residual}");
        }
    }

    #[test]
    fn dual_rows_are_probability_vectors() {
        let dual = DunklRamirezDual::new(0.35f64).unwrap();
        for m in 0..8 {
            for n in 0..8 {
                let row = dual.constants(m, n);
                let sum: f64 = row.iter().map(|&(_, p)| p).sum();
                assert!((sum - 1.0).abs() < 1e-14, "({m},{n}) sums to {sum}");
                assert!(row.iter().all(|&(_, p)| p >= 0.0));
                assert_eq!(row, dual.constants(n, m));
            }
        }
    }

    #[test]
    fn dual_haar_matches_support_formula() {
        // h(k) = 1 / p(k,k)({0}) for genuinely discrete hypergroups.
        let dual = DunklRamirezDual::new(0.4f64).unwrap();
        for k in 1..10 {
            let row = dual.constants(k, k);
            let p0 = row.iter().find(|&&(z, _)| z == 0).unwrap().1;
            assert!((dual.haar(k) - 1.0 / p0).abs() < 1e-9 * dual.haar(k));
        }
        assert_eq!(dual.haar(0), 1.0);
    }

    #[test]
    fn dual_characters_are_multiplicative() {
        // psi_x(m) psi_x(n) = sum_l p(m,n)({l}) psi_x(l) for every point x.
        let dual = DunklRamirezDual::new(0.3f64).unwrap();
        for x in [Some(0), Some(1), Some(4), Some(7), None] {
            for m in 0..7 {
                for n in 0..7 {
                    let lhs = dual.character(x, m) * dual.character(x, n);
                    let rhs: f64 = dual
                        .constants(m, n)
                        .iter()
                        .map(|&(l, p)| p * dual.character(x, l))
                        .sum();
                    assert!((lhs - rhs).abs() < 1e-14, "x={x:?} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn dual_characters_vanish_at_infinity_except_constant() {
        let dual = DunklRamirezDual::new(0.45f64).unwrap();
        // psi_x is finitely supported for finite x ...
        for x in 0..6 {
            for k in (x + 2)..12 {
                assert_eq!(dual.character(Some(x), k), 0.0);
            }
            assert!(dual.plancherel_atom(Some(x)) > 0.0);
        }
        // ... while the constant character never decays and has no atom.
        assert_eq!(dual.character(None, 1000), 1.0);
        assert_eq!(dual.plancherel_atom(None), 0.0);
    }
}
