//! Harmonic analysis of a finite commutative hypergroup: characters,
//! Plancherel weights, Fourier transform and its inverse.
//!
//! Characters are found by joint diagonalization of the commuting translation
//! operators. Conjugating `T_x` by `diag(sqrt(w))` yields a commuting family
//! of real normal matrices closed under transposition; a Hermitian matrix
//! built from a seeded random combination of the family generically has
//! simple spectrum, and its eigenvectors are joint eigenvectors. Character
//! values are recovered as Rayleigh quotients; on normal matrices the
//! Rayleigh quotient error is second order in the eigenvector error, so the
//! huge Plancherel weights of truncated families come out to near machine
//! precision.

use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::element::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::scalar::{c_zero, real, Real, C};
use crate::table::HypergroupTable;

/// Eigenvalue gap below which a random combination is considered collided and
/// redrawn.
const GAP_TOL: f64 = 1e-8;
/// Redraw attempts before falling back to recursive subspace splitting.
const MAX_REDRAWS: usize = 8;

/// The dual object of a finite commutative hypergroup.
#[derive(Debug, Clone)]
pub struct CharacterTable<T: Real> {
    base: Arc<HypergroupTable<T>>,
    /// `chars[i][x]` is the value of the i-th character at the point x.
    chars: Vec<Vec<C<T>>>,
    norms_sq: Vec<T>,
    plancherel: Vec<T>,
    /// Per-character multiplicativity defect
    /// `max_{x,y} |sum_z p(x,y)({z}) a(z) - a(x) a(y)|`.
    residuals: Vec<T>,
    real_dual: bool,
    seed: u64,
}

impl<T: Real> CharacterTable<T> {
    pub fn base(&self) -> &Arc<HypergroupTable<T>> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    /// Value `alpha_i(x)`.
    pub fn value(&self, i: usize, x: usize) -> C<T> {
        self.chars[i][x]
    }

    pub fn character_values(&self, i: usize) -> &[C<T>] {
        &self.chars[i]
    }

    /// The i-th character as an algebra element.
    pub fn character(&self, i: usize) -> AlgebraElement<T> {
        AlgebraElement::new(&self.base, self.chars[i].clone()).expect("character length")
    }

    /// `||alpha_i||_2^2` under the unit-mass Haar weights.
    pub fn norm_sq(&self, i: usize) -> T {
        self.norms_sq[i]
    }

    pub fn norms_sq(&self) -> &[T] {
        &self.norms_sq
    }

    /// Plancherel weight `pi_i = 1 / ||alpha_i||_2^2`.
    pub fn plancherel_weight(&self, i: usize) -> T {
        self.plancherel[i]
    }

    /// All Plancherel weights, indexed like the characters.
    pub fn plancherel_weights(&self) -> &[T] {
        &self.plancherel
    }

    pub fn residual(&self, i: usize) -> T {
        self.residuals[i]
    }

    pub fn residuals(&self) -> &[T] {
        &self.residuals
    }

    /// True when every character is real within the construction tolerance.
    pub fn is_real_dual(&self) -> bool {
        self.real_dual
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Computes all `n` characters of a validated table, canonically ordered
/// (constant character first, then lexicographically by rounded values).
/// Deterministic for a fixed seed.
pub fn character_table<T: Real>(
    base: &Arc<HypergroupTable<T>>,
    tol: T,
    seed: u64,
) -> Result<CharacterTable<T>> {
    let n = base.size();
    let ops = translation_family(base);
    let vectors = joint_eigenvectors(&ops, n, seed)?;

    // Rayleigh quotients against every conjugated translation operator.
    let mut chars: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for v in &vectors {
        let mut alpha = vec![c_zero(); n];
        for (x, op) in ops.iter().enumerate() {
            alpha[x] = rayleigh(op, v, n);
        }
        // alpha(e) = 1 holds automatically (T_e = I); renormalize anyway.
        let at_e = alpha[base.identity()];
        for a in alpha.iter_mut() {
            *a /= at_e;
        }
        chars.push(alpha);
    }

    sort_canonically(&mut chars, base.identity());

    let mut norms_sq = Vec::with_capacity(n);
    let mut plancherel = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    let mut max_residual = T::zero();
    let mut real_dual = true;
    for alpha in &chars {
        let mut nrm = T::zero();
        for x in 0..n {
            nrm += base.weight(x) * alpha[x].norm_sqr();
            if alpha[x].im.abs() > tol {
                real_dual = false;
            }
        }
        norms_sq.push(nrm);
        plancherel.push(T::one() / nrm);

        let mut res = T::zero();
        for x in 0..n {
            for y in 0..n {
                let mut acc: C<T> = c_zero();
                for &(z, p) in base.row(x, y) {
                    acc += alpha[z] * p;
                }
                res = res.max((acc - alpha[x] * alpha[y]).norm());
            }
        }
        residuals.push(res);
        max_residual = max_residual.max(res);
    }

    if max_residual > tol {
        return Err(Error::Diagonalization {
            retries: MAX_REDRAWS,
            residual: max_residual.to_f64().unwrap_or(f64::NAN),
        });
    }

    Ok(CharacterTable {
        base: Arc::clone(base),
        chars,
        norms_sq,
        plancherel,
        residuals,
        real_dual,
        seed,
    })
}

/// Builds the conjugated translation family `S_x = D^{1/2} T_x D^{-1/2}`,
/// `S_x[y][t] = sqrt(w(y)/w(t)) p(x,y)({t})`, stored dense row-major.
fn translation_family<T: Real>(base: &HypergroupTable<T>) -> Vec<Vec<T>> {
    let n = base.size();
    let sqrt_w: Vec<T> = (0..n).map(|x| base.weight(x).sqrt()).collect();
    (0..n)
        .map(|x| {
            let mut m = vec![T::zero(); n * n];
            for y in 0..n {
                for &(t, p) in base.row(x, y) {
                    m[y * n + t] = p * sqrt_w[y] / sqrt_w[t];
                }
            }
            m
        })
        .collect()
}

fn rayleigh<T: Real>(op: &[T], v: &[C<T>], n: usize) -> C<T> {
    let mut acc: C<T> = c_zero();
    for y in 0..n {
        let mut row = c_zero();
        for t in 0..n {
            let m = op[y * n + t];
            if m != T::zero() {
                row += v[t] * m;
            }
        }
        acc += v[y].conj() * row;
    }
    acc
}

/// A Hermitian random combination of the family: independent coefficients on
/// the symmetric and antisymmetric parts keep eigenvalue collisions confined
/// to genuinely equal characters.
fn hermitian_combination<T: Real>(ops: &[Vec<T>], n: usize, rng: &mut ChaCha8Rng) -> Vec<C<T>> {
    let mut m = vec![c_zero(); n * n];
    for op in ops {
        let c = real::<T>(rng.gen_range(-1.0..1.0));
        let d = real::<T>(rng.gen_range(-1.0..1.0));
        let half = real::<T>(0.5);
        for i in 0..n {
            for j in 0..n {
                let s = op[i * n + j];
                let st = op[j * n + i];
                let sym = (s + st) * half;
                let asym = (s - st) * half;
                m[i * n + j] += Complex::new(c * sym, d * asym);
            }
        }
    }
    m
}

/// Finds a joint orthonormal eigenbasis of the commuting family.
fn joint_eigenvectors<T: Real>(ops: &[Vec<T>], n: usize, seed: u64) -> Result<Vec<Vec<C<T>>>> {
    if n == 1 {
        return Ok(vec![vec![Complex::new(T::one(), T::zero())]]);
    }
    let gap_tol = real::<T>(GAP_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _attempt in 0..MAX_REDRAWS {
        let m = hermitian_combination(ops, n, &mut rng);
        let eig = hermitian_eigen(&m, n);
        let simple = eig
            .values
            .windows(2)
            .all(|w| (w[1] - w[0]).abs() >= gap_tol);
        if simple {
            return Ok(eig.vectors);
        }
    }

    // Fallback: recursive splitting of clustered eigenspaces. The restriction
    // of the commuting family to an eigenspace cluster is again a commuting
    // family, so fresh random combinations separate it from the inside.
    let full_basis: Vec<Vec<C<T>>> = (0..n)
        .map(|k| {
            let mut v = vec![c_zero(); n];
            v[k] = Complex::new(T::one(), T::zero());
            v
        })
        .collect();
    split_subspace(ops, n, full_basis, &mut rng, 0)
}

fn split_subspace<T: Real>(
    ops: &[Vec<T>],
    n: usize,
    basis: Vec<Vec<C<T>>>,
    rng: &mut ChaCha8Rng,
    depth: usize,
) -> Result<Vec<Vec<C<T>>>> {
    let dim = basis.len();
    if dim <= 1 {
        return Ok(basis);
    }
    if depth > 32 {
        return Err(Error::Diagonalization {
            retries: MAX_REDRAWS,
            residual: f64::NAN,
        });
    }
    let gap_tol = real::<T>(GAP_TOL);

    // Restrict each operator to the subspace: B_x = V^H S_x V.
    let restricted: Vec<Vec<C<T>>> = ops
        .iter()
        .map(|op| {
            let mut sv: Vec<Vec<C<T>>> = Vec::with_capacity(dim);
            for v in &basis {
                let mut out = vec![c_zero(); n];
                for y in 0..n {
                    let mut acc: C<T> = c_zero();
                    for t in 0..n {
                        let m = op[y * n + t];
                        if m != T::zero() {
                            acc += v[t] * m;
                        }
                    }
                    out[y] = acc;
                }
                sv.push(out);
            }
            let mut b = vec![c_zero(); dim * dim];
            for i in 0..dim {
                for j in 0..dim {
                    let mut acc: C<T> = c_zero();
                    for y in 0..n {
                        acc += basis[i][y].conj() * sv[j][y];
                    }
                    b[i * dim + j] = acc;
                }
            }
            b
        })
        .collect();

    let mut m = vec![c_zero(); dim * dim];
    for b in &restricted {
        let c = real::<T>(rng.gen_range(-1.0..1.0));
        let d = real::<T>(rng.gen_range(-1.0..1.0));
        let half = real::<T>(0.5);
        for i in 0..dim {
            for j in 0..dim {
                let s = b[i * dim + j];
                let st = b[j * dim + i].conj();
                let sym = (s + st) * half;
                let asym = (s - st) * half;
                m[i * dim + j] = m[i * dim + j] + sym * c + asym * Complex::new(T::zero(), d);
            }
        }
    }
    let eig = hermitian_eigen(&m, dim);

    // Map eigenvectors back to the ambient space.
    let lifted: Vec<Vec<C<T>>> = eig
        .vectors
        .iter()
        .map(|u| {
            let mut v = vec![c_zero(); n];
            for (i, &ui) in u.iter().enumerate() {
                for y in 0..n {
                    v[y] += basis[i][y] * ui;
                }
            }
            v
        })
        .collect();

    // Group still-clustered eigenvalues and recurse on each cluster.
    let mut out = Vec::with_capacity(dim);
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && (eig.values[end] - eig.values[end - 1]).abs() < gap_tol {
            end += 1;
        }
        if end - start == 1 {
            out.push(lifted[start].clone());
        } else {
            let cluster = lifted[start..end].to_vec();
            out.extend(split_subspace(ops, n, cluster, rng, depth + 1)?);
        }
        start = end;
    }
    Ok(out)
}

/// Constant character first, then ascending lexicographic order of rounded
/// `(re, im)` value sequences; makes output reproducible across runs.
fn sort_canonically<T: Real>(chars: &mut Vec<Vec<C<T>>>, _identity: usize) {
    let key = |alpha: &Vec<C<T>>| -> Vec<(i64, i64)> {
        alpha
            .iter()
            .map(|z| {
                let re = (z.re.to_f64().unwrap_or(f64::NAN) * 1e9).round();
                let im = (z.im.to_f64().unwrap_or(f64::NAN) * 1e9).round();
                (re as i64, im as i64)
            })
            .collect()
    };
    let const_dist = |alpha: &Vec<C<T>>| -> T {
        alpha
            .iter()
            .map(|z| (*z - Complex::new(T::one(), T::zero())).norm())
            .fold(T::zero(), |a, b| a.max(b))
    };
    let const_idx = (0..chars.len())
        .min_by(|&i, &j| {
            const_dist(&chars[i])
                .partial_cmp(&const_dist(&chars[j]))
                .expect("NaN in character values")
        })
        .expect("nonempty character list");
    let constant = chars.remove(const_idx);
    chars.sort_by_key(key);
    chars.insert(0, constant);
}

/// Fourier coefficients of an element against a character table.
#[derive(Debug, Clone)]
pub struct FourierCoeffs<T: Real> {
    dual: Arc<CharacterTable<T>>,
    values: Vec<C<T>>,
}

impl<T: Real> FourierCoeffs<T> {
    /// Wraps explicit coefficients (used e.g. for dual-side indicators).
    pub fn from_values(dual: &Arc<CharacterTable<T>>, values: Vec<C<T>>) -> Result<Self> {
        if values.len() != dual.len() {
            return Err(Error::DimensionMismatch(format!(
                "coefficient count {} does not match dual size {}",
                values.len(),
                dual.len()
            )));
        }
        Ok(Self {
            dual: Arc::clone(dual),
            values,
        })
    }

    pub fn dual(&self) -> &Arc<CharacterTable<T>> {
        &self.dual
    }

    pub fn values(&self) -> &[C<T>] {
        &self.values
    }

    pub fn value(&self, i: usize) -> C<T> {
        self.values[i]
    }
}

/// Fourier transform `f^(alpha_i) = sum_x w(x) f(x) conj(alpha_i(x))`.
pub fn fourier<T: Real>(
    dual: &Arc<CharacterTable<T>>,
    f: &AlgebraElement<T>,
) -> Result<FourierCoeffs<T>> {
    if !(Arc::ptr_eq(dual.base(), f.base()) || dual.base().as_ref() == f.base().as_ref()) {
        return Err(Error::DualMismatch);
    }
    let base = dual.base();
    let n = base.size();
    let values = (0..dual.len())
        .map(|i| {
            let mut acc: C<T> = c_zero();
            for x in 0..n {
                acc += f.value(x) * dual.value(i, x).conj() * base.weight(x);
            }
            acc
        })
        .collect();
    Ok(FourierCoeffs {
        dual: Arc::clone(dual),
        values,
    })
}

/// Inverse transform `f(x) = sum_i pi_i f^(alpha_i) alpha_i(x)`.
pub fn inverse_fourier<T: Real>(coeffs: &FourierCoeffs<T>) -> AlgebraElement<T> {
    let dual = &coeffs.dual;
    let base = dual.base();
    let n = base.size();
    let mut out = vec![c_zero(); n];
    for i in 0..dual.len() {
        let scale = coeffs.values[i] * dual.plancherel_weight(i);
        for (x, o) in out.iter_mut().enumerate() {
            *o += dual.value(i, x) * scale;
        }
    }
    AlgebraElement::new(base, out).expect("length matches base")
}

/// Two-variable transform of a tensor element:
/// `F^(alpha_i, alpha_j) = sum_{x,y} w(x) w(y) F(x,y) conj(alpha_i(x) alpha_j(y))`.
///
/// Returned row-major over `(i, j)`.
pub fn tensor_fourier<T: Real>(
    dual1: &Arc<CharacterTable<T>>,
    dual2: &Arc<CharacterTable<T>>,
    f: &crate::element::TensorElement<T>,
) -> Result<Vec<C<T>>> {
    let (b1, b2) = f.bases();
    if !(Arc::ptr_eq(dual1.base(), b1) || dual1.base().as_ref() == b1.as_ref())
        || !(Arc::ptr_eq(dual2.base(), b2) || dual2.base().as_ref() == b2.as_ref())
    {
        return Err(Error::DualMismatch);
    }
    let (n1, n2) = (b1.size(), b2.size());
    let (m1, m2) = (dual1.len(), dual2.len());

    // Sandwich: first transform rows against dual2, then columns against dual1.
    let mut half: Vec<C<T>> = vec![c_zero(); n1 * m2];
    for x in 0..n1 {
        for j in 0..m2 {
            let mut acc: C<T> = c_zero();
            for y in 0..n2 {
                acc += f.value(x, y) * dual2.value(j, y).conj() * b2.weight(y);
            }
            half[x * m2 + j] = acc;
        }
    }
    let mut out = vec![c_zero(); m1 * m2];
    for i in 0..m1 {
        for j in 0..m2 {
            let mut acc: C<T> = c_zero();
            for x in 0..n1 {
                acc += half[x * m2 + j] * dual1.value(i, x).conj() * b1.weight(x);
            }
            out[i * m2 + j] = acc;
        }
    }
    Ok(out)
}
