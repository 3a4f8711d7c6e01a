//! Polynomial hypergroups on the nonnegative integers, built from orthogonal
//! polynomial families normalized at 1.
//!
//! With `R_n(1) = 1`, products expand as `R_m R_n = sum_k g(m,n;k) R_k` with
//! nonnegative linearization coefficients for the supported parameter range;
//! the `g` rows are the structure constants of a discrete hypergroup and the
//! Haar weights are `h(n) = 1 / integral R_n^2 dpi`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

/// Cached linearization row: `(k, g(m,n;k))` pairs.
type LinearizationRow<T> = Arc<Vec<(usize, T)>>;

use super::quadrature::{gauss_jacobi_rule, QuadratureRule};

/// Negative linearization mass below this magnitude is treated as
/// floating-point dust and clamped; anything larger is an error.
const NEGATIVITY_TOL: f64 = 1e-12;

/// Three-term recurrence defining a polynomial family normalized at 1.
#[derive(Debug, Clone)]
pub enum PolynomialRecurrence<T: Real> {
    /// Jacobi polynomials `P_n^{(alpha,beta)} / P_n^{(alpha,beta)}(1)` with
    /// `alpha >= beta > -1`, `alpha + beta + 1 >= 0`.
    Jacobi { alpha: T, beta: T },
    /// Explicit coefficients: `R_{n+1} = (a_n x + b_n) R_n - c_n R_{n-1}`,
    /// with `R_0 = 1` and `R_1 = a_0 x + b_0`.
    Explicit { coeffs: Vec<(T, T, T)> },
}

impl<T: Real> PolynomialRecurrence<T> {
    pub fn jacobi(alpha: T, beta: T) -> Result<Self> {
        if !(alpha >= beta && beta > -T::one() && alpha + beta + T::one() >= T::zero()) {
            return Err(Error::ParameterOutOfRange(format!(
                "jacobi family needs alpha >= beta > -1 and alpha+beta+1 >= 0 (got {alpha}, {beta})"
            )));
        }
        Ok(Self::Jacobi { alpha, beta })
    }

    /// The Chebyshev family (`alpha = beta = -1/2`): `R_n = T_n`.
    pub fn chebyshev() -> Self {
        Self::Jacobi {
            alpha: real(-0.5),
            beta: real(-0.5),
        }
    }

    /// Jacobi parameters when this is a Jacobi family.
    pub fn jacobi_parameters(&self) -> Option<(T, T)> {
        match self {
            Self::Jacobi { alpha, beta } => Some((*alpha, *beta)),
            Self::Explicit { .. } => None,
        }
    }

    /// Evaluates `R_0(x) .. R_{n_max}(x)`.
    pub fn evaluate(&self, x: T, n_max: usize) -> Vec<T> {
        match self {
            Self::Jacobi { alpha, beta } => jacobi_normalized(*alpha, *beta, x, n_max),
            Self::Explicit { coeffs } => {
                assert!(
                    coeffs.len() >= n_max,
                    "explicit recurrence holds {} terms, need {}",
                    coeffs.len(),
                    n_max
                );
                let mut out = Vec::with_capacity(n_max + 1);
                out.push(T::one());
                if n_max >= 1 {
                    let (a0, b0, _) = coeffs[0];
                    out.push(a0 * x + b0);
                }
                for n in 1..n_max {
                    let (a, b, c) = coeffs[n];
                    let next = (a * x + b) * out[n] - out[n - 1] * c;
                    out.push(next);
                }
                out
            }
        }
    }
}

/// Standard Jacobi recurrence, then division by `P_n(1) = (alpha+1)_n / n!`.
fn jacobi_normalized<T: Real>(alpha: T, beta: T, x: T, n_max: usize) -> Vec<T> {
    let one = T::one();
    let two = real::<T>(2.0);
    let s = alpha + beta;

    let mut p = Vec::with_capacity(n_max + 1);
    p.push(one);
    if n_max >= 1 {
        // P_1 = (alpha - beta)/2 + (1 + (alpha+beta)/2) x
        p.push((alpha - beta) / two + (one + s / two) * x);
    }
    for n in 1..n_max {
        let nf = real::<T>(n as f64);
        let t = two * nf + s;
        let lead = two * (nf + one) * (nf + s + one) * t;
        let mid = (t + one) * (t * (t + two) * x + alpha * alpha - beta * beta);
        let tail = two * (nf + alpha) * (nf + beta) * (t + two);
        p.push((mid * p[n] - tail * p[n - 1]) / lead);
    }

    // Normalize by the value at 1, computed by its running product so large
    // degrees stay finite.
    let mut k_n = one;
    for (n, item) in p.iter_mut().enumerate() {
        if n >= 1 {
            let nf = real::<T>(n as f64);
            k_n = k_n * (alpha + nf) / nf;
        }
        *item /= k_n;
    }
    p
}

/// Closed-form Haar weight of the Jacobi polynomial hypergroup:
/// `h(0) = 1`,
/// `h(n) = (2n+alpha+beta+1) (alpha+beta+1)_n (alpha+1)_n /
///         ((alpha+beta+1) n! (beta+1)_n)`.
///
/// Errors at the singular boundary `alpha + beta + 1 = 0` (Chebyshev), where
/// the quadrature route must be used instead.
pub fn jacobi_haar_closed<T: Real>(alpha: T, beta: T, n: usize) -> Result<T> {
    let s = alpha + beta + T::one();
    if s <= T::zero() {
        return Err(Error::ParameterOutOfRange(
            "closed-form Haar weight is singular at alpha+beta+1 = 0; use the quadrature route"
                .into(),
        ));
    }
    if n == 0 {
        return Ok(T::one());
    }
    // Accumulate the Pochhammer quotient factor by factor: each term is O(1)
    // so there is no intermediate overflow even for large n.
    let mut product = T::one();
    for j in 0..n {
        let jf = real::<T>(j as f64);
        product = product * (s + jf) * (alpha + T::one() + jf)
            / ((T::one() + jf) * (beta + T::one() + jf));
    }
    let two_n = real::<T>(2.0 * n as f64);
    Ok((two_n + s) / s * product)
}

/// Lazily evaluated structure constants of a polynomial hypergroup, valid for
/// products with `m + n <= degree_bound`.
#[derive(Debug)]
pub struct PolynomialHypergroup<T: Real> {
    recurrence: PolynomialRecurrence<T>,
    quadrature: QuadratureRule<T>,
    degree_bound: usize,
    /// `poly_at_nodes[n][j] = R_n(x_j)`.
    poly_at_nodes: Vec<Vec<T>>,
    haar: Vec<T>,
    cache: RwLock<HashMap<(usize, usize), LinearizationRow<T>>>,
    label: String,
}

/// Builds the structure oracle; the quadrature rule must be exact at least to
/// degree `2*degree_bound + 2`.
pub fn polynomial_hypergroup<T: Real>(
    recurrence: PolynomialRecurrence<T>,
    degree_bound: usize,
    quadrature: QuadratureRule<T>,
) -> Result<PolynomialHypergroup<T>> {
    let needed = 2 * degree_bound + 2;
    if quadrature.degree_exact() < needed {
        return Err(Error::InsufficientQuadrature {
            needed,
            available: quadrature.degree_exact(),
        });
    }

    let label = match recurrence.jacobi_parameters() {
        Some((a, b)) => format!("jacobi({a},{b})"),
        None => "explicit-recurrence".into(),
    };

    // R_n at all nodes, transposed to polynomial-major for cheap row scans.
    let node_values: Vec<Vec<T>> = quadrature
        .nodes()
        .iter()
        .map(|&x| recurrence.evaluate(x, degree_bound))
        .collect();
    let poly_at_nodes: Vec<Vec<T>> = (0..=degree_bound)
        .map(|n| node_values.iter().map(|row| row[n]).collect())
        .collect();

    let mut haar = Vec::with_capacity(degree_bound + 1);
    for n in 0..=degree_bound {
        let norm_sq = quadrature
            .integrate_values(&poly_at_nodes[n].iter().map(|&v| v * v).collect::<Vec<_>>());
        if norm_sq <= T::zero() {
            return Err(Error::SingularInvariance(format!(
                "quadrature norm of R_{n} is not positive"
            )));
        }
        haar.push(T::one() / norm_sq);
    }

    Ok(PolynomialHypergroup {
        recurrence,
        quadrature,
        degree_bound,
        poly_at_nodes,
        haar,
        cache: RwLock::new(HashMap::new()),
        label,
    })
}

/// Default node count used by the builders: `2N + 16`.
pub fn default_node_count(degree_bound: usize) -> usize {
    2 * degree_bound + 16
}

/// Convenience constructor for the Jacobi family with the default rule.
pub fn jacobi_polynomial_hypergroup<T: Real>(
    alpha: T,
    beta: T,
    degree_bound: usize,
) -> Result<PolynomialHypergroup<T>> {
    let rec = PolynomialRecurrence::jacobi(alpha, beta)?;
    let quad = gauss_jacobi_rule(alpha, beta, default_node_count(degree_bound))?;
    polynomial_hypergroup(rec, degree_bound, quad)
}

impl<T: Real> PolynomialHypergroup<T> {
    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn recurrence(&self) -> &PolynomialRecurrence<T> {
        &self.recurrence
    }

    pub fn quadrature(&self) -> &QuadratureRule<T> {
        &self.quadrature
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Haar weight `h(n) = 1 / integral R_n^2 dpi` (quadrature route).
    pub fn haar(&self, n: usize) -> Result<T> {
        self.haar.get(n).copied().ok_or_else(|| {
            Error::ParameterOutOfRange(format!("degree {n} exceeds bound {}", self.degree_bound))
        })
    }

    /// Character value `R_n(x)`; defined for every real `x`, chiefly used on
    /// `[-1, 1]`.
    pub fn character(&self, x: T, n: usize) -> T {
        self.recurrence.evaluate(x, n)[n]
    }

    /// Linearization row `g(m,n;k)` for `|m-n| <= k <= m+n`, as `(k, mass)`
    /// pairs. Rows are probability vectors; write-once cached per `(m,n)`.
    pub fn constants(&self, m: usize, n: usize) -> Result<LinearizationRow<T>> {
        let key = (m.min(n), m.max(n));
        if key.1 + key.0 > self.degree_bound {
            return Err(Error::ParameterOutOfRange(format!(
                "product degree {} exceeds bound {}",
                key.0 + key.1,
                self.degree_bound
            )));
        }
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }

        let (m, n) = key;
        let lo = n - m;
        let hi = n + m;
        let mut row = Vec::with_capacity(hi - lo + 1);
        let prod: Vec<T> = self.poly_at_nodes[m]
            .iter()
            .zip(self.poly_at_nodes[n].iter())
            .map(|(&a, &b)| a * b)
            .collect();
        let neg_tol = real::<T>(NEGATIVITY_TOL);
        let mut sum = T::zero();
        for k in lo..=hi {
            let triple: Vec<T> = prod
                .iter()
                .zip(self.poly_at_nodes[k].iter())
                .map(|(&p, &r)| p * r)
                .collect();
            let mut g = self.quadrature.integrate_values(&triple) * self.haar[k];
            if g < T::zero() {
                if g < -neg_tol {
                    return Err(Error::NegativeLinearization {
                        m,
                        n,
                        k,
                        value: g.to_f64().unwrap_or(f64::NAN),
                    });
                }
                g = T::zero();
            }
            sum += g;
            row.push((k, g));
        }
        let row_tol = real::<T>(1e-10).max(T::epsilon() * real(1e6));
        if (sum - T::one()).abs() > row_tol {
            return Err(Error::InsufficientQuadrature {
                needed: 2 * (m + n) + 2,
                available: self.quadrature.degree_exact(),
            });
        }
        // Renormalize away clamping dust and rounding drift.
        for entry in row.iter_mut() {
            entry.1 /= sum;
        }
        row.retain(|&(_, g)| g != T::zero());

        let row = Arc::new(row);
        let mut cache = self.cache.write().expect("cache lock");
        let entry = cache.entry(key).or_insert_with(|| Arc::clone(&row));
        Ok(Arc::clone(entry))
    }
}
