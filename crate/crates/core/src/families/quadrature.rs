//! Gauss–Jacobi quadrature for the normalized measure
//! `dpi(x) = c (1-x)^alpha (1+x)^beta dx` on `[-1, 1]`, `c` chosen so the
//! total mass is 1.
//!
//! Nodes and weights come from the Golub–Welsch construction: eigenvalues of
//! the symmetric tridiagonal Jacobi matrix and squared first components of
//! its unit eigenvectors. Normalizing the measure to unit mass makes the
//! weights exactly those squared components, so no Gamma-function mass
//! constant is needed.

use crate::error::{Error, Result};
use crate::linalg::symmetric_tridiagonal_eigen;
use crate::scalar::{real, Real};

/// A quadrature rule for the normalized Jacobi measure.
#[derive(Debug, Clone)]
pub struct QuadratureRule<T: Real> {
    nodes: Vec<T>,
    weights: Vec<T>,
    degree_exact: usize,
    alpha: T,
    beta: T,
}

impl<T: Real> QuadratureRule<T> {
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest polynomial degree integrated exactly (`2m - 1` for `m` nodes).
    pub fn degree_exact(&self) -> usize {
        self.degree_exact
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    /// `integral of f dpi` over `[-1, 1]`.
    pub fn integrate<F: Fn(T) -> T>(&self, f: F) -> T {
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(&x, &w)| f(x) * w)
            .fold(T::zero(), |a, b| a + b)
    }

    /// Dot product of per-node values with the weights.
    pub fn integrate_values(&self, values: &[T]) -> T {
        debug_assert_eq!(values.len(), self.nodes.len());
        values
            .iter()
            .zip(self.weights.iter())
            .map(|(&v, &w)| v * w)
            .fold(T::zero(), |a, b| a + b)
    }
}

/// Monic Jacobi recurrence coefficients `(a_k, b_k)`:
/// `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}` (Gautschi's r_jacobi, with the
/// separate `k = 1` off-diagonal so the Chebyshev case `alpha+beta = -1`
/// stays regular).
fn monic_recurrence<T: Real>(alpha: T, beta: T, k: usize) -> (T, T) {
    let two = real::<T>(2.0);
    let four = real::<T>(4.0);
    let s = alpha + beta;
    if k == 0 {
        let a0 = (beta - alpha) / (s + two);
        return (a0, T::zero());
    }
    let kf = real::<T>(k as f64);
    let denom = (two * kf + s) * (two * kf + s + two);
    let a = (beta * beta - alpha * alpha) / denom;
    let b = if k == 1 {
        four * (alpha + T::one()) * (beta + T::one())
            / ((s + two) * (s + two) * (s + two + T::one()))
    } else {
        let t = two * kf + s;
        four * kf * (kf + alpha) * (kf + beta) * (kf + s)
            / (t * t * (t + T::one()) * (t - T::one()))
    };
    (a, b)
}

/// Builds an `m`-node Gauss–Jacobi rule; exact to degree `2m - 1`, weights
/// positive and summing to 1.
pub fn gauss_jacobi_rule<T: Real>(alpha: T, beta: T, m: usize) -> Result<QuadratureRule<T>> {
    let params_ok = alpha > -T::one() && beta > -T::one();
    if !params_ok {
        return Err(Error::ParameterOutOfRange(format!(
            "jacobi parameters must satisfy alpha, beta > -1 (got {alpha}, {beta})"
        )));
    }
    if m == 0 {
        return Err(Error::ParameterOutOfRange(
            "node count must be positive".into(),
        ));
    }

    let mut diag = Vec::with_capacity(m);
    let mut off = Vec::with_capacity(m.saturating_sub(1));
    for k in 0..m {
        let (a, b) = monic_recurrence(alpha, beta, k);
        diag.push(a);
        if k > 0 {
            off.push(b.sqrt());
        }
    }

    let pairs = symmetric_tridiagonal_eigen(&diag, &off);
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    for (lambda, first) in pairs {
        nodes.push(lambda);
        weights.push(first * first);
    }
    // The squared first components already sum to 1; renormalize to remove
    // rounding drift.
    let total: T = weights.iter().copied().fold(T::zero(), |a, b| a + b);
    for w in weights.iter_mut() {
        *w /= total;
    }

    Ok(QuadratureRule {
        nodes,
        weights,
        degree_exact: 2 * m - 1,
        alpha,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_mass() {
        for (a, b) in [(0.0, 0.0), (1.0, 0.0), (2.0, 1.0), (-0.5, -0.5)] {
            let rule = gauss_jacobi_rule::<f64>(a, b, 12).unwrap();
            assert!((rule.integrate(|_| 1.0) - 1.0).abs() < 1e-15);
            assert!(rule.weights().iter().all(|&w| w > 0.0));
            assert!(rule.nodes().iter().all(|&x| (-1.0..=1.0).contains(&x)));
        }
    }

    #[test]
    fn legendre_even_moments() {
        // Closed-form moments of the normalized Lebesgue measure on [-1,1]:
        // integral x^{2k} = 1/(2k+1).
        let rule = gauss_jacobi_rule::<f64>(0.0, 0.0, 8).unwrap();
        for k in 0..=7 {
            let got = rule.integrate(|x| x.powi(2 * k));
            let want = 1.0 / (2.0 * k as f64 + 1.0);
            assert!(
                (got - want).abs() < 1e-14,
                "moment 2k={k} got {got} want {want}"
            );
        }
        // Degree 14 with m = 8 (exact to 15).
        let got = rule.integrate(|x| x.powi(14));
        assert!((got - 1.0 / 15.0).abs() < 1e-14);
        // Odd moments vanish.
        assert!(rule.integrate(|x| x.powi(7)).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_t6_norm() {
        // integral T_6(x)^2 dpi = 1/2 under the normalized Chebyshev measure.
        let rule = gauss_jacobi_rule::<f64>(-0.5, -0.5, 10).unwrap();
        let t6 = |x: f64| {
            let theta = x.clamp(-1.0, 1.0).acos();
            (6.0 * theta).cos()
        };
        let got = rule.integrate(|x| t6(x) * t6(x));
        assert!((got - 0.5).abs() < 1e-13, "got {got}");
    }

    #[test]
    fn single_node_rule() {
        let rule = gauss_jacobi_rule::<f64>(0.0, 0.0, 1).unwrap();
        assert_eq!(rule.len(), 1);
        assert!(rule.nodes()[0].abs() < 1e-15);
        assert!((rule.weights()[0] - 1.0).abs() < 1e-15);
        assert_eq!(rule.degree_exact(), 1);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(gauss_jacobi_rule::<f64>(-1.0, 0.0, 4).is_err());
        assert!(gauss_jacobi_rule::<f64>(0.0, -1.5, 4).is_err());
        assert!(gauss_jacobi_rule::<f64>(0.0, 0.0, 0).is_err());
    }

    #[test]
    fn jacobi_21_first_moment() {
        // For (alpha, beta) = (2, 1): mean of the normalized measure is
        // (beta - alpha)/(alpha + beta + 2) = -1/5 (the first monic
        // recurrence coefficient).
        let rule = gauss_jacobi_rule::<f64>(2.0, 1.0, 6).unwrap();
        let got = rule.integrate(|x| x);
        assert!((got + 0.2).abs() < 1e-14, "got {got}");
    }
}
