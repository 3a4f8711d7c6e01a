//! Finite commutative hypergroups as validated structure-constant tables.
//!
//! A hypergroup on points `{0..n-1}` is specified by probability rows
//! `p(x,y)` (the mass the product of `x` and `y` places on each `z`), an
//! involution permutation, and an identity element. [`RawHypergroup`] holds
//! unvalidated data; [`HypergroupTable`] is the validated form carrying Haar
//! weights and is immutable afterwards.

use crate::error::{AxiomFailure, Error, Result};
use crate::linalg::solve_dense;
use crate::scalar::{real, Real};

/// One structure row `p(x,y)`: `(z, mass)` pairs sorted by `z`, zeros omitted.
pub type SparseRow<T> = Vec<(usize, T)>;

/// Maximum absolute defect of each hypergroup axiom over all index
/// combinations, plus the tolerance the pass flags were computed at.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport<T: Real> {
    /// Row defects: `|row sum - 1|` and any negative mass.
    pub probability: T,
    /// `max |p(x,y)(z) - p(y,x)(z)|`.
    pub commutativity: T,
    /// `max |p(e,x) - point mass at x|`.
    pub identity: T,
    /// Mass at the identity off the involution pairing; a diagonal pair with
    /// no identity mass at all reports `1`.
    pub support: T,
    /// `max |sum_w p(x,y)(w) p(w,z)(v) - sum_w p(y,z)(w) p(x,w)(v)|`.
    pub associativity: T,
    pub tolerance: T,
}

impl<T: Real> AxiomReport<T> {
    pub fn pass_probability(&self) -> bool {
        self.probability <= self.tolerance
    }
    pub fn pass_commutativity(&self) -> bool {
        self.commutativity <= self.tolerance
    }
    pub fn pass_identity(&self) -> bool {
        self.identity <= self.tolerance
    }
    pub fn pass_support(&self) -> bool {
        self.support <= self.tolerance
    }
    pub fn pass_associativity(&self) -> bool {
        self.associativity <= self.tolerance
    }

    pub fn pass(&self) -> bool {
        self.pass_probability()
            && self.pass_commutativity()
            && self.pass_identity()
            && self.pass_support()
            && self.pass_associativity()
    }

    pub fn max_residual(&self) -> T {
        self.probability
            .max(self.commutativity)
            .max(self.identity)
            .max(self.support)
            .max(self.associativity)
    }

    pub(crate) fn to_failure(&self) -> AxiomFailure {
        AxiomFailure {
            probability: self.probability.to_f64().unwrap_or(f64::NAN),
            commutativity: self.commutativity.to_f64().unwrap_or(f64::NAN),
            identity: self.identity.to_f64().unwrap_or(f64::NAN),
            support: self.support.to_f64().unwrap_or(f64::NAN),
            associativity: self.associativity.to_f64().unwrap_or(f64::NAN),
            tolerance: self.tolerance.to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Default axiom tolerance for the scalar type: `1e-12` for `f64`, loosened
/// proportionally for coarser types.
pub fn default_tolerance<T: Real>() -> T {
    real::<T>(1e-12).max(T::epsilon() * real(4096.0))
}

/// Unvalidated structure data. Construct, fill rows, then [`validate`].
///
/// [`validate`]: RawHypergroup::validate
#[derive(Debug, Clone, PartialEq)]
pub struct RawHypergroup<T: Real> {
    size: usize,
    identity: usize,
    involution: Vec<usize>,
    rows: Vec<SparseRow<T>>,
    label: String,
}

impl<T: Real> RawHypergroup<T> {
    /// Creates an empty table skeleton. The involution must be an involutive
    /// permutation fixing the identity; rows start empty.
    pub fn new(
        size: usize,
        identity: usize,
        involution: Vec<usize>,
        label: impl Into<String>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::DimensionMismatch("size must be positive".into()));
        }
        if identity >= size {
            return Err(Error::IndexOutOfRange {
                index: identity,
                size,
            });
        }
        if involution.len() != size {
            return Err(Error::InvalidStructure {
                field: "involution".into(),
                message: format!("length {} does not match size {}", involution.len(), size),
            });
        }
        let mut seen = vec![false; size];
        for (x, &ix) in involution.iter().enumerate() {
            if ix >= size {
                return Err(Error::IndexOutOfRange { index: ix, size });
            }
            if seen[ix] {
                return Err(Error::InvalidStructure {
                    field: "involution".into(),
                    message: format!("value {ix} repeated; not a permutation"),
                });
            }
            seen[ix] = true;
            if involution[ix] != x {
                return Err(Error::InvalidStructure {
                    field: "involution".into(),
                    message: format!("not involutive at {x}"),
                });
            }
        }
        if involution[identity] != identity {
            return Err(Error::InvalidStructure {
                field: "involution".into(),
                message: "identity is not fixed".into(),
            });
        }
        Ok(Self {
            size,
            identity,
            involution,
            rows: vec![Vec::new(); size * size],
            label: label.into(),
        })
    }

    /// Builds from a dense `n x n x n` tensor, entry `(x,y,z)` at
    /// `(x*n + y)*n + z`. Exact zeros are dropped; negative or otherwise
    /// malformed masses are kept so validation can report them.
    pub fn from_dense_tensor(
        size: usize,
        identity: usize,
        involution: Vec<usize>,
        tensor: &[T],
        label: impl Into<String>,
    ) -> Result<Self> {
        if tensor.len() != size * size * size {
            return Err(Error::DimensionMismatch(format!(
                "tensor has {} entries, expected {}",
                tensor.len(),
                size * size * size
            )));
        }
        let mut raw = Self::new(size, identity, involution, label)?;
        for x in 0..size {
            for y in 0..size {
                let base = (x * size + y) * size;
                let row: SparseRow<T> = (0..size)
                    .filter(|&z| tensor[base + z] != T::zero())
                    .map(|z| (z, tensor[base + z]))
                    .collect();
                raw.rows[x * size + y] = row;
            }
        }
        Ok(raw)
    }

    pub fn size(&self) -> usize {
        self.size
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn involution(&self, x: usize) -> usize {
        self.involution[x]
    }
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn row(&self, x: usize, y: usize) -> &[(usize, T)] {
        &self.rows[x * self.size + y]
    }

    /// Sets a single row; entries are sorted and exact zeros dropped.
    pub fn set_row(&mut self, x: usize, y: usize, mut entries: SparseRow<T>) -> Result<()> {
        if x >= self.size || y >= self.size {
            return Err(Error::IndexOutOfRange {
                index: x.max(y),
                size: self.size,
            });
        }
        for &(z, _) in &entries {
            if z >= self.size {
                return Err(Error::IndexOutOfRange {
                    index: z,
                    size: self.size,
                });
            }
        }
        entries.retain(|&(_, p)| p != T::zero());
        entries.sort_by_key(|&(z, _)| z);
        self.rows[x * self.size + y] = entries;
        Ok(())
    }

    /// Sets `p(x,y)` and `p(y,x)` to the same entries, keeping commutativity
    /// exact by construction.
    pub fn set_symmetric_row(&mut self, x: usize, y: usize, entries: SparseRow<T>) -> Result<()> {
        self.set_row(x, y, entries)?;
        if x != y {
            let copy = self.rows[x * self.size + y].clone();
            self.rows[y * self.size + x] = copy;
        }
        Ok(())
    }

    /// Copies every present row `(x,y)` onto an absent `(y,x)`.
    pub fn mirror_missing_rows(&mut self) {
        for x in 0..self.size {
            for y in 0..self.size {
                if x != y
                    && !self.rows[x * self.size + y].is_empty()
                    && self.rows[y * self.size + x].is_empty()
                {
                    let copy = self.rows[x * self.size + y].clone();
                    self.rows[y * self.size + x] = copy;
                }
            }
        }
    }

    /// Computes the maximum defect of each axiom. Deterministic: fixed loop
    /// order, no data-dependent reductions.
    pub fn axiom_report(&self, tolerance: T) -> AxiomReport<T> {
        let n = self.size;
        let e = self.identity;

        let mut probability = T::zero();
        for row in &self.rows {
            let mut sum = T::zero();
            for &(_, p) in row {
                sum += p;
                if p < T::zero() {
                    probability = probability.max(-p);
                }
            }
            probability = probability.max((sum - T::one()).abs());
        }

        let mut commutativity = T::zero();
        for x in 0..n {
            for y in (x + 1)..n {
                commutativity = commutativity.max(row_distance(self.row(x, y), self.row(y, x)));
            }
        }

        let mut identity = T::zero();
        for x in 0..n {
            let mut saw_x = false;
            for &(z, p) in self.row(e, x) {
                if z == x {
                    saw_x = true;
                    identity = identity.max((p - T::one()).abs());
                } else {
                    identity = identity.max(p.abs());
                }
            }
            if !saw_x {
                identity = identity.max(T::one());
            }
        }

        let mut support = T::zero();
        for x in 0..n {
            let xt = self.involution[x];
            for y in 0..n {
                let mass_at_e = self
                    .row(x, y)
                    .iter()
                    .find(|&&(z, _)| z == e)
                    .map(|&(_, p)| p)
                    .unwrap_or_else(T::zero);
                if y == xt {
                    if mass_at_e <= T::zero() {
                        support = support.max(T::one());
                    }
                } else {
                    support = support.max(mass_at_e.abs());
                }
            }
        }

        let mut associativity = T::zero();
        let mut lhs = vec![T::zero(); n];
        let mut rhs = vec![T::zero(); n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for v in lhs.iter_mut() {
                        *v = T::zero();
                    }
                    for v in rhs.iter_mut() {
                        *v = T::zero();
                    }
                    for &(w, pw) in self.row(x, y) {
                        for &(v, pv) in self.row(w, z) {
                            lhs[v] += pw * pv;
                        }
                    }
                    for &(w, pw) in self.row(y, z) {
                        for &(v, pv) in self.row(x, w) {
                            rhs[v] += pw * pv;
                        }
                    }
                    for v in 0..n {
                        associativity = associativity.max((lhs[v] - rhs[v]).abs());
                    }
                }
            }
        }

        AxiomReport {
            probability,
            commutativity,
            identity,
            support,
            associativity,
            tolerance,
        }
    }

    /// Validates all axioms at `tolerance` and computes Haar weights. Failures
    /// are reported, never repaired.
    pub fn validate(self, tolerance: T) -> Result<HypergroupTable<T>> {
        let report = self.axiom_report(tolerance);
        if !report.pass() {
            return Err(Error::AxiomViolation(report.to_failure()));
        }
        let haar = solve_haar(&self)?;
        Ok(HypergroupTable { raw: self, haar })
    }
}

fn row_distance<T: Real>(a: &[(usize, T)], b: &[(usize, T)]) -> T {
    let mut d = T::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(za, pa)), Some(&(zb, pb))) => {
                if za == zb {
                    d = d.max((pa - pb).abs());
                    i += 1;
                    j += 1;
                } else if za < zb {
                    d = d.max(pa.abs());
                    i += 1;
                } else {
                    d = d.max(pb.abs());
                    j += 1;
                }
            }
            (Some(&(_, pa)), None) => {
                d = d.max(pa.abs());
                i += 1;
            }
            (None, Some(&(_, pb))) => {
                d = d.max(pb.abs());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    d
}

/// Solves the left-invariance fixed point `sum_x w(x) p(y,x)({z}) = w(z)` for
/// the unique probability vector `w` (unit-mass Haar).
///
/// The stacked system over all `y` is reduced by averaging the per-`y`
/// stochastic operators and pinning total mass 1; the full per-`y` residual is
/// verified afterwards, so the reduction cannot hide an invalid input.
fn solve_haar<T: Real>(raw: &RawHypergroup<T>) -> Result<Vec<T>> {
    let n = raw.size();
    if n == 1 {
        return Ok(vec![T::one()]);
    }
    let nf = real::<T>(n as f64);

    // avg[z][x] = mean over y of p(y,x)({z})
    let mut avg = vec![T::zero(); n * n];
    for y in 0..n {
        for x in 0..n {
            for &(z, p) in raw.row(y, x) {
                avg[z * n + x] += p / nf;
            }
        }
    }
    // (avg - I) w = 0 with the last equation replaced by sum(w) = 1.
    let mut a = avg;
    for i in 0..n {
        a[i * n + i] -= T::one();
    }
    for x in 0..n {
        a[(n - 1) * n + x] = T::one();
    }
    let mut b = vec![T::zero(); n];
    b[n - 1] = T::one();

    let mut w = solve_dense(a, b, n).ok_or_else(|| {
        Error::SingularInvariance("invariance operator has no unique fixed vector".into())
    })?;

    let res_tol = T::epsilon() * real(f64::max(1e4, n as f64 * 100.0));
    // Entries below the elimination's absolute accuracy may come out as
    // negative dust; clamp those and let the refinement below regrow them.
    // Anything more negative signals a genuinely invalid input.
    let dust =
        T::epsilon() * real::<T>(1e3 * n as f64) * w.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    for wx in w.iter_mut() {
        if *wx < -dust {
            return Err(Error::SingularInvariance(format!(
                "invariant vector has negative entry {:e}",
                wx.to_f64().unwrap_or(f64::NAN)
            )));
        }
        *wx = wx.max(T::zero());
    }

    // The elimination pins the solution to absolute accuracy only, which
    // leaves large relative errors in entries far below 1. A Perron vector of
    // a nonnegative operator is a fixed point of positive combinations, so
    // power refinement restores componentwise relative accuracy.
    let rel_target = T::epsilon() * real(8.0);
    let mut scratch = vec![T::zero(); n];
    for _ in 0..(64 * n + 64) {
        for v in scratch.iter_mut() {
            *v = T::zero();
        }
        for y in 0..n {
            for x in 0..n {
                let wx = w[x];
                for &(z, p) in raw.row(y, x) {
                    scratch[z] += p * wx;
                }
            }
        }
        let total: T = scratch.iter().copied().sum();
        let mut rel_change = T::zero();
        for (wi, si) in w.iter_mut().zip(scratch.iter()) {
            let next = *si / total;
            if next > T::zero() {
                rel_change = rel_change.max(((next - *wi) / next).abs());
            }
            *wi = next;
        }
        if rel_change < rel_target {
            break;
        }
    }
    for &wx in &w {
        if wx <= T::zero() {
            return Err(Error::SingularInvariance(format!(
                "invariant vector has non-positive entry {:e}",
                wx.to_f64().unwrap_or(f64::NAN)
            )));
        }
    }
    // Full invariance residual over every y.
    let mut residual = T::zero();
    for y in 0..n {
        for z in 0..n {
            let mut acc = -w[z];
            for x in 0..n {
                for &(zz, p) in raw.row(y, x) {
                    if zz == z {
                        acc += w[x] * p;
                    }
                }
            }
            residual = residual.max(acc.abs());
        }
    }
    if residual > res_tol {
        return Err(Error::SingularInvariance(format!(
            "invariance residual {:e} exceeds {:e}",
            residual.to_f64().unwrap_or(f64::NAN),
            res_tol.to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(w)
}

/// A validated finite commutative hypergroup. Immutable; safe to share across
/// threads (wrap in `Arc` to attach elements and duals).
#[derive(Debug, Clone, PartialEq)]
pub struct HypergroupTable<T: Real> {
    raw: RawHypergroup<T>,
    /// Unit-mass Haar weights (compact normalization).
    haar: Vec<T>,
}

impl<T: Real> HypergroupTable<T> {
    pub fn size(&self) -> usize {
        self.raw.size
    }
    pub fn identity(&self) -> usize {
        self.raw.identity
    }
    pub fn involution(&self, x: usize) -> usize {
        self.raw.involution[x]
    }
    pub fn label(&self) -> &str {
        &self.raw.label
    }
    pub fn raw(&self) -> &RawHypergroup<T> {
        &self.raw
    }

    pub fn row(&self, x: usize, y: usize) -> &[(usize, T)] {
        self.raw.row(x, y)
    }

    /// Unit-mass Haar weight of `x` (`sum_x w(x) = 1`).
    pub fn weight(&self, x: usize) -> T {
        self.haar[x]
    }

    pub fn weights(&self) -> &[T] {
        &self.haar
    }

    /// Discrete normalization `h(x) = w(x) / w(e)`, so `h(e) = 1`.
    pub fn discrete_weights(&self) -> Vec<T> {
        let we = self.haar[self.raw.identity];
        self.haar.iter().map(|&w| w / we).collect()
    }

    /// Re-runs the axiom checker (always succeeds on a validated table at the
    /// validation tolerance, but callers may probe tighter ones).
    pub fn check_axioms(&self, tolerance: T) -> AxiomReport<T> {
        self.raw.axiom_report(tolerance)
    }

    /// Dense translation operator `T_x` as an `n x n` row-major matrix:
    /// `T_x[y][t] = p(x,y)({t})`.
    pub fn translation_matrix(&self, x: usize) -> Vec<T> {
        let n = self.size();
        let mut m = vec![T::zero(); n * n];
        for y in 0..n {
            for &(t, p) in self.row(x, y) {
                m[y * n + t] = p;
            }
        }
        m
    }

    /// Cartesian product hypergroup; element `(x1, x2)` has index
    /// `x1 * other.size() + x2`. The result is re-validated.
    pub fn product(&self, other: &Self, tolerance: T) -> Result<Self> {
        let (n1, n2) = (self.size(), other.size());
        let n = n1 * n2;
        let identity = self.identity() * n2 + other.identity();
        let involution: Vec<usize> = (0..n)
            .map(|i| self.involution(i / n2) * n2 + other.involution(i % n2))
            .collect();
        let label = format!("{} x {}", self.label(), other.label());
        let mut raw = RawHypergroup::new(n, identity, involution, label)?;
        for x1 in 0..n1 {
            for y1 in 0..n1 {
                for x2 in 0..n2 {
                    for y2 in 0..n2 {
                        let mut row =
                            Vec::with_capacity(self.row(x1, y1).len() * other.row(x2, y2).len());
                        for &(z1, p1) in self.row(x1, y1) {
                            for &(z2, p2) in other.row(x2, y2) {
                                row.push((z1 * n2 + z2, p1 * p2));
                            }
                        }
                        raw.set_row(x1 * n2 + x2, y1 * n2 + y2, row)?;
                    }
                }
            }
        }
        raw.validate(tolerance)
    }
}

/// Validates raw structure constants into a hypergroup table.
///
/// `tensor` is dense `n x n x n` row-major; validation failures carry the
/// axiom report.
pub fn build_hypergroup<T: Real>(
    size: usize,
    identity: usize,
    involution: Vec<usize>,
    tensor: &[T],
    tolerance: T,
    label: impl Into<String>,
) -> Result<HypergroupTable<T>> {
    RawHypergroup::from_dense_tensor(size, identity, involution, tensor, label)?.validate(tolerance)
}

/// The `n`-element cyclic group as a hypergroup table (point masses at
/// `x + y mod n`). Handy fixture; the general group path lives in `families`.
pub fn cyclic_group_table<T: Real>(n: usize) -> Result<HypergroupTable<T>> {
    let involution: Vec<usize> = (0..n).map(|x| (n - x) % n).collect();
    let mut raw = RawHypergroup::new(n, 0, involution, format!("Z_{n}"))?;
    for x in 0..n {
        for y in 0..n {
            raw.set_row(x, y, vec![((x + y) % n, T::one())])?;
        }
    }
    raw.validate(default_tolerance())
}
