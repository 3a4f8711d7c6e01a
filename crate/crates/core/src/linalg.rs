//! Small dense linear algebra kernels: a cyclic Jacobi eigensolver for
//! Hermitian matrices and Gaussian elimination with partial pivoting.
//!
//! Matrix sizes in this crate stay in the low hundreds, so the quadratic
//! storage and cubic work of the classical algorithms are a good trade for
//! their accuracy and determinism (fixed sweep order, no blocking, no
//! platform-dependent reductions).

use num_complex::Complex;

use crate::scalar::{c_zero, real, Real, C};

/// Eigendecomposition of a Hermitian matrix: `a = V diag(values) V^H`.
///
/// Eigenvalues are sorted ascending; `vectors[k]` is the unit eigenvector for
/// `values[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<C<T>>>,
}

/// Diagonalizes a Hermitian `n x n` matrix given in row-major order.
///
/// Cyclic Jacobi with complex (phase + real rotation) eliminations. Converges
/// quadratically; the sweep cap is generous and only reachable for inputs that
/// are not Hermitian to working precision.
pub fn hermitian_eigen<T: Real>(matrix: &[C<T>], n: usize) -> HermitianEigen<T> {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    let mut a = matrix.to_vec();
    let mut v = identity_matrix(n);

    if n > 1 {
        let fro = frobenius(&a);
        let off_tol = fro * T::epsilon() * real(1e-2);
        for _sweep in 0..64 {
            if off_diagonal_norm(&a, n) <= off_tol {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate_pair(&mut a, &mut v, n, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[i * n + i].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("NaN eigenvalue"));

    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    HermitianEigen { values, vectors }
}

/// One Jacobi elimination of the (p, q) entry.
fn rotate_pair<T: Real>(a: &mut [C<T>], v: &mut [C<T>], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == T::zero() {
        return;
    }

    // Phase similarity so the pivot entry becomes real: scale column q by
    // conj(u) and row q by u; accumulate the column scaling into v.
    let u = apq / r;
    let uc = u.conj();
    for i in 0..n {
        a[i * n + q] *= uc;
    }
    for j in 0..n {
        a[q * n + j] *= u;
    }
    for i in 0..n {
        v[i * n + q] *= uc;
    }

    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let bpq = a[p * n + q].re;
    if bpq == T::zero() {
        return;
    }

    // Real 2x2 rotation zeroing the now-real pivot (Golub & Van Loan 8.4).
    let tau = (aqq - app) / (bpq + bpq);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let (cc, cs) = (Complex::new(c, T::zero()), Complex::new(s, T::zero()));

    for i in 0..n {
        let aip = a[i * n + p];
        let aiq = a[i * n + q];
        a[i * n + p] = aip * cc - aiq * cs;
        a[i * n + q] = aip * cs + aiq * cc;
    }
    for j in 0..n {
        let apj = a[p * n + j];
        let aqj = a[q * n + j];
        a[p * n + j] = apj * cc - aqj * cs;
        a[q * n + j] = apj * cs + aqj * cc;
    }
    for i in 0..n {
        let vip = v[i * n + p];
        let viq = v[i * n + q];
        v[i * n + p] = vip * cc - viq * cs;
        v[i * n + q] = vip * cs + viq * cc;
    }

    // Keep the eliminated pair and the diagonal exactly clean.
    a[p * n + q] = c_zero();
    a[q * n + p] = c_zero();
    a[p * n + p].im = T::zero();
    a[q * n + q].im = T::zero();
}

fn identity_matrix<T: Real>(n: usize) -> Vec<C<T>> {
    let mut v = vec![c_zero(); n * n];
    for i in 0..n {
        v[i * n + i] = Complex::new(T::one(), T::zero());
    }
    v
}

fn frobenius<T: Real>(a: &[C<T>]) -> T {
    a.iter()
        .map(|z| z.norm_sqr())
        .fold(T::zero(), |acc, x| acc + x)
        .sqrt()
}

fn off_diagonal_norm<T: Real>(a: &[C<T>], n: usize) -> T {
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a real symmetric tridiagonal matrix, returning the
/// ascending eigenvalues paired with the first component of each unit
/// eigenvector (all Golub–Welsch needs).
pub fn symmetric_tridiagonal_eigen<T: Real>(diag: &[T], off: &[T]) -> Vec<(T, T)> {
    let n = diag.len();
    assert_eq!(off.len(), n.saturating_sub(1));
    let mut a = vec![c_zero(); n * n];
    for i in 0..n {
        a[i * n + i] = Complex::new(diag[i], T::zero());
        if i + 1 < n {
            a[i * n + i + 1] = Complex::new(off[i], T::zero());
            a[(i + 1) * n + i] = Complex::new(off[i], T::zero());
        }
    }
    let eig = hermitian_eigen(&a, n);
    eig.values
        .iter()
        .zip(eig.vectors.iter())
        .map(|(&lambda, vec)| (lambda, vec[0].re.hypot(vec[0].im)))
        .collect()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
///
/// `a` is `n x n` row-major and is consumed as scratch. Returns `None` when a
/// pivot falls below `n * eps * max_initial_entry` (numerically singular).
pub fn solve_dense<T: Real>(mut a: Vec<T>, mut b: Vec<T>, n: usize) -> Option<Vec<T>> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let scale = a.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    let pivot_tol = scale * T::epsilon() * real(n as f64);

    for col in 0..n {
        let mut piv = col;
        for row in (col + 1)..n {
            if a[row * n + col].abs() > a[piv * n + col].abs() {
                piv = row;
            }
        }
        if a[piv * n + col].abs() <= pivot_tol {
            return None;
        }
        if piv != col {
            for j in 0..n {
                a.swap(col * n + j, piv * n + j);
            }
            b.swap(col, piv);
        }
        let d = a[col * n + col];
        for row in (col + 1)..n {
            let factor = a[row * n + col] / d;
            if factor != T::zero() {
                for j in col..n {
                    let t = a[col * n + j] * factor;
                    a[row * n + j] -= t;
                }
                b[row] = b[row] - b[col] * factor;
            }
        }
    }

    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for j in (row + 1)..n {
            acc -= a[row * n + j] * x[j];
        }
        x[row] = acc / a[row * n + row];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reconstruct(eig: &HermitianEigen<f64>, n: usize) -> Vec<C<f64>> {
        let mut out = vec![c_zero::<f64>(); n * n];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    out[i * n + j] += eig.vectors[k][i] * eig.vectors[k][j].conj() * eig.values[k];
                }
            }
        }
        out
    }

    #[test]
    fn real_symmetric_2x2() {
        let a: Vec<C<f64>> = vec![
            Complex::new(2.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(2.0, 0.0),
        ];
        let eig = hermitian_eigen(&a, 2);
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_pauli_y() {
        // [[0, -i], [i, 0]] has eigenvalues -1, 1.
        let a: Vec<C<f64>> = vec![
            Complex::new(0.0, 0.0),
            Complex::new(0.0, -1.0),
            Complex::new(0.0, 1.0),
            Complex::new(0.0, 0.0),
        ];
        let eig = hermitian_eigen(&a, 2);
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_roundtrip() {
        let n = 24;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut a = vec![c_zero::<f64>(); n * n];
        for i in 0..n {
            a[i * n + i] = Complex::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let z = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                a[i * n + j] = z;
                a[j * n + i] = z.conj();
            }
        }
        let eig = hermitian_eigen(&a, n);
        let back = reconstruct(&eig, n);
        let mut max_err: f64 = 0.0;
        for (x, y) in a.iter().zip(back.iter()) {
            max_err = max_err.max((x - y).norm());
        }
        assert!(max_err < 1e-12, "reconstruction error {max_err}");

        // Orthonormality of the eigenbasis.
        for p in 0..n {
            for q in 0..n {
                let dot: C<f64> = (0..n)
                    .map(|i| eig.vectors[p][i].conj() * eig.vectors[q][i])
                    .sum();
                let want = if p == q { 1.0 } else { 0.0 };
                assert!((dot.norm() - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn tridiagonal_matches_dense() {
        // Jacobi matrix of Legendre polynomials, n = 5.
        let diag = vec![0.0; 5];
        let off: Vec<f64> = (1..5)
            .map(|k| {
                let k = k as f64;
                (k * k / ((2.0 * k - 1.0) * (2.0 * k + 1.0))).sqrt()
            })
            .collect();
        let pairs = symmetric_tridiagonal_eigen(&diag, &off);
        // Gauss-Legendre nodes for m=5 are symmetric and include 0.
        assert!(pairs[2].0.abs() < 1e-14);
        assert!((pairs[0].0 + pairs[4].0).abs() < 1e-14);
        let wsum: f64 = pairs.iter().map(|(_, f)| f * f).sum();
        assert!((wsum - 1.0).abs() < 1e-13);
    }

    #[test]
    fn dense_solve_and_singular() {
        let a = vec![2.0f64, 1.0, 1.0, 3.0];
        let x = solve_dense(a, vec![5.0, 10.0], 2).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14);
        assert!((x[1] - 3.0).abs() < 1e-14);

        let singular = vec![1.0f64, 2.0, 2.0, 4.0];
        assert!(solve_dense(singular, vec![1.0, 2.0], 2).is_none());
    }

    #[test]
    fn trivial_sizes() {
        let eig = hermitian_eigen::<f64>(&[Complex::new(3.5, 0.0)], 1);
        assert_eq!(eig.values, vec![3.5]);
        assert_eq!(eig.vectors[0][0], Complex::new(1.0, 0.0));
    }

    #[test]
    fn generic_over_f32() {
        let a = vec![
            Complex::new(2.0f32, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(2.0, 0.0),
        ];
        let eig = hermitian_eigen(&a, 2);
        assert!((eig.values[0] - 1.0).abs() < 1e-5);
        assert!((eig.values[1] - 3.0).abs() < 1e-5);
    }
}
