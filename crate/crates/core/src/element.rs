//! Elements of the measure algebra `L^1(K)` and of the tensor square
//! `L^1(K x K)`, with translation, convolution, involution and the
//! coordinate embeddings.
//!
//! All integrals use the unit-mass Haar weights `w`, so the algebra unit is
//! the function `u` with `u(x) = [x = e] / w(e)` and `u^ = 1` on the dual.

use std::sync::Arc;

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::{c_zero, Real, C};
use crate::table::HypergroupTable;

/// An element of `L^1(K)`: one complex coefficient (function value) per point.
#[derive(Debug, Clone)]
pub struct AlgebraElement<T: Real> {
    base: Arc<HypergroupTable<T>>,
    coeffs: Vec<C<T>>,
}

/// Coordinate for [`AlgebraElement::embed`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl<T: Real> AlgebraElement<T> {
    pub fn new(base: &Arc<HypergroupTable<T>>, coeffs: Vec<C<T>>) -> Result<Self> {
        if coeffs.len() != base.size() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coefficients, base size is {}",
                coeffs.len(),
                base.size()
            )));
        }
        Ok(Self {
            base: Arc::clone(base),
            coeffs,
        })
    }

    pub fn from_real(base: &Arc<HypergroupTable<T>>, values: &[T]) -> Result<Self> {
        Self::new(
            base,
            values.iter().map(|&x| Complex::new(x, T::zero())).collect(),
        )
    }

    /// The algebra unit `u = delta_e / w(e)`; satisfies `u * f = f` and
    /// `u^ = 1`.
    pub fn unit(base: &Arc<HypergroupTable<T>>) -> Self {
        let mut coeffs = vec![c_zero(); base.size()];
        let e = base.identity();
        coeffs[e] = Complex::new(T::one() / base.weight(e), T::zero());
        Self {
            base: Arc::clone(base),
            coeffs,
        }
    }

    /// Indicator function of the point `x`.
    pub fn indicator(base: &Arc<HypergroupTable<T>>, x: usize) -> Result<Self> {
        if x >= base.size() {
            return Err(Error::IndexOutOfRange {
                index: x,
                size: base.size(),
            });
        }
        let mut coeffs = vec![c_zero(); base.size()];
        coeffs[x] = Complex::new(T::one(), T::zero());
        Ok(Self {
            base: Arc::clone(base),
            coeffs,
        })
    }

    /// Element with independent uniform `[-1,1]` real and imaginary parts.
    pub fn random<R: Rng>(base: &Arc<HypergroupTable<T>>, rng: &mut R) -> Self {
        let coeffs = (0..base.size())
            .map(|_| {
                Complex::new(
                    T::from_f64(rng.gen_range(-1.0..1.0)).unwrap(),
                    T::from_f64(rng.gen_range(-1.0..1.0)).unwrap(),
                )
            })
            .collect();
        Self {
            base: Arc::clone(base),
            coeffs,
        }
    }

    pub fn base(&self) -> &Arc<HypergroupTable<T>> {
        &self.base
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    pub fn value(&self, x: usize) -> C<T> {
        self.coeffs[x]
    }

    fn same_base(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.base, &other.base) || self.base == other.base
    }

    /// Translation `(T_x f)(y) = sum_t p(x,y)({t}) f(t)`.
    pub fn translate(&self, x: usize) -> Result<Self> {
        let n = self.base.size();
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, size: n });
        }
        let mut out = vec![c_zero(); n];
        for y in 0..n {
            let mut acc: C<T> = c_zero();
            for &(t, p) in self.base.row(x, y) {
                acc += self.coeffs[t] * p;
            }
            out[y] = acc;
        }
        Ok(Self {
            base: Arc::clone(&self.base),
            coeffs: out,
        })
    }

    /// Convolution `(f * g)(x) = sum_y w(y) f(y) (T_{y~} g)(x)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if !self.same_base(other) {
            return Err(Error::BaseMismatch);
        }
        let n = self.base.size();
        let mut out = vec![c_zero(); n];
        for y in 0..n {
            let fy = self.coeffs[y];
            if fy == c_zero() {
                continue;
            }
            let scale = fy * self.base.weight(y);
            let yt = self.base.involution(y);
            for x in 0..n {
                let mut acc: C<T> = c_zero();
                for &(t, p) in self.base.row(yt, x) {
                    acc += other.coeffs[t] * p;
                }
                out[x] += scale * acc;
            }
        }
        Ok(Self {
            base: Arc::clone(&self.base),
            coeffs: out,
        })
    }

    /// Involution `f*(x) = conj(f(x~))`; an anti-linear algebra involution.
    pub fn involute(&self) -> Self {
        let coeffs = (0..self.base.size())
            .map(|x| self.coeffs[self.base.involution(x)].conj())
            .collect();
        Self {
            base: Arc::clone(&self.base),
            coeffs,
        }
    }

    /// `pi_1(f)(x,y) = f(x) u(y)` (Left) or `pi_2(f)(x,y) = u(x) f(y)`
    /// (Right); an isometric algebra homomorphism into `L^1(K x K)`.
    pub fn embed(&self, side: Side) -> TensorElement<T> {
        let unit = Self::unit(&self.base);
        match side {
            Side::Left => TensorElement::tensor(self, &unit),
            Side::Right => TensorElement::tensor(&unit, self),
        }
    }

    /// Weighted L1 norm `sum_x w(x) |f(x)|`.
    pub fn norm_l1(&self) -> T {
        (0..self.base.size())
            .map(|x| self.base.weight(x) * self.coeffs[x].norm())
            .fold(T::zero(), |a, b| a + b)
    }

    /// Weighted squared L2 norm `sum_x w(x) |f(x)|^2`.
    pub fn norm_l2_sq(&self) -> T {
        (0..self.base.size())
            .map(|x| self.base.weight(x) * self.coeffs[x].norm_sqr())
            .fold(T::zero(), |a, b| a + b)
    }

    /// Weighted inner product `<f, g> = sum_x w(x) f(x) conj(g(x))`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        if !self.same_base(other) {
            return Err(Error::BaseMismatch);
        }
        let mut acc: C<T> = c_zero();
        for x in 0..self.base.size() {
            acc += self.coeffs[x] * other.coeffs[x].conj() * self.base.weight(x);
        }
        Ok(acc)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if !self.same_base(other) {
            return Err(Error::BaseMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Self {
            base: Arc::clone(&self.base),
            coeffs,
        })
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        if !self.same_base(other) {
            return Err(Error::BaseMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(Self {
            base: Arc::clone(&self.base),
            coeffs,
        })
    }

    pub fn scaled(&self, factor: C<T>) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| a * factor).collect();
        Self {
            base: Arc::clone(&self.base),
            coeffs,
        }
    }
}

/// An element of `L^1(K1 x K2)` as a coefficient matrix over `(x, y)`.
#[derive(Debug, Clone)]
pub struct TensorElement<T: Real> {
    base1: Arc<HypergroupTable<T>>,
    base2: Arc<HypergroupTable<T>>,
    /// Row-major: entry `(x, y)` at `x * base2.size() + y`.
    coeffs: Vec<C<T>>,
}

impl<T: Real> TensorElement<T> {
    pub fn new(
        base1: &Arc<HypergroupTable<T>>,
        base2: &Arc<HypergroupTable<T>>,
        coeffs: Vec<C<T>>,
    ) -> Result<Self> {
        if coeffs.len() != base1.size() * base2.size() {
            return Err(Error::DimensionMismatch(format!(
                "tensor element has {} coefficients, expected {}",
                coeffs.len(),
                base1.size() * base2.size()
            )));
        }
        Ok(Self {
            base1: Arc::clone(base1),
            base2: Arc::clone(base2),
            coeffs,
        })
    }

    /// Elementary tensor `g (x) h`.
    pub fn tensor(g: &AlgebraElement<T>, h: &AlgebraElement<T>) -> Self {
        let (n1, n2) = (g.base.size(), h.base.size());
        let mut coeffs = vec![c_zero(); n1 * n2];
        for x in 0..n1 {
            for y in 0..n2 {
                coeffs[x * n2 + y] = g.coeffs[x] * h.coeffs[y];
            }
        }
        Self {
            base1: Arc::clone(&g.base),
            base2: Arc::clone(&h.base),
            coeffs,
        }
    }

    pub fn bases(&self) -> (&Arc<HypergroupTable<T>>, &Arc<HypergroupTable<T>>) {
        (&self.base1, &self.base2)
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    pub fn value(&self, x: usize, y: usize) -> C<T> {
        self.coeffs[x * self.base2.size() + y]
    }

    /// L1 norm against the product Haar weights.
    pub fn norm_l1(&self) -> T {
        let n2 = self.base2.size();
        let mut acc = T::zero();
        for x in 0..self.base1.size() {
            let wx = self.base1.weight(x);
            for y in 0..n2 {
                acc += wx * self.base2.weight(y) * self.coeffs[x * n2 + y].norm();
            }
        }
        acc
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        if self.coeffs.len() != other.coeffs.len() {
            return Err(Error::BaseMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(&a, &b)| a - b)
            .collect();
        Ok(Self {
            base1: Arc::clone(&self.base1),
            base2: Arc::clone(&self.base2),
            coeffs,
        })
    }

    /// The convolution map `pi : L^1(K x K) -> L^1(K)`, extending
    /// `g (x) h -> g * h` bilinearly:
    /// `pi(F)(z) = sum_{x,y} F(x,y) w(x) p(x~, z)({y})`.
    ///
    /// Requires both coordinates over the same base.
    pub fn convolution_map(&self) -> Result<AlgebraElement<T>> {
        if !(Arc::ptr_eq(&self.base1, &self.base2) || self.base1 == self.base2) {
            return Err(Error::BaseMismatch);
        }
        let n = self.base1.size();
        let mut out = vec![c_zero(); n];
        for x in 0..n {
            let wx = self.base1.weight(x);
            let xt = self.base1.involution(x);
            for z in 0..n {
                let mut acc: C<T> = c_zero();
                for &(y, p) in self.base1.row(xt, z) {
                    acc += self.coeffs[x * n + y] * p;
                }
                out[z] += acc * wx;
            }
        }
        AlgebraElement::new(&self.base1, out)
    }

    /// Left module action `f . F = pi_1(f) * F` (product-hypergroup
    /// convolution, evaluated without materializing the product table).
    pub fn act_left(&self, f: &AlgebraElement<T>) -> Result<Self> {
        if !(Arc::ptr_eq(&f.base, &self.base1) || f.base == self.base1) {
            return Err(Error::BaseMismatch);
        }
        let (n1, n2) = (self.base1.size(), self.base2.size());
        let mut out = vec![c_zero(); n1 * n2];
        for x in 0..n1 {
            let scale = f.coeffs[x] * self.base1.weight(x);
            if scale == c_zero() {
                continue;
            }
            let xt = self.base1.involution(x);
            for z1 in 0..n1 {
                let mut partial: Vec<C<T>> = vec![c_zero(); n2];
                for &(t, p) in self.base1.row(xt, z1) {
                    for z2 in 0..n2 {
                        partial[z2] += self.coeffs[t * n2 + z2] * p;
                    }
                }
                for z2 in 0..n2 {
                    out[z1 * n2 + z2] += partial[z2] * scale;
                }
            }
        }
        Self::new(&self.base1, &self.base2, out)
    }

    /// Right module action `F . f = F * pi_2(f)`.
    pub fn act_right(&self, f: &AlgebraElement<T>) -> Result<Self> {
        if !(Arc::ptr_eq(&f.base, &self.base2) || f.base == self.base2) {
            return Err(Error::BaseMismatch);
        }
        let (n1, n2) = (self.base1.size(), self.base2.size());
        let mut out = vec![c_zero(); n1 * n2];
        for y in 0..n2 {
            let scale = f.coeffs[y] * self.base2.weight(y);
            if scale == c_zero() {
                continue;
            }
            let yt = self.base2.involution(y);
            for z2 in 0..n2 {
                for &(t, p) in self.base2.row(yt, z2) {
                    for z1 in 0..n1 {
                        out[z1 * n2 + z2] += self.coeffs[z1 * n2 + t] * p * scale;
                    }
                }
            }
        }
        Self::new(&self.base1, &self.base2, out)
    }

    /// Reinterprets this tensor element as an element of a materialized
    /// product table (index layout `x * n2 + y` must match).
    pub fn flatten(&self, product: &Arc<HypergroupTable<T>>) -> Result<AlgebraElement<T>> {
        if product.size() != self.coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "product table size {} does not match tensor size {}",
                product.size(),
                self.coeffs.len()
            )));
        }
        AlgebraElement::new(product, self.coeffs.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::cyclic_group_table;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2() -> Arc<HypergroupTable<f64>> {
        Arc::new(cyclic_group_table(2).unwrap())
    }

    #[test]
    fn identity_translation_is_identity() {
        let base = z2();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = AlgebraElement::random(&base, &mut rng);
        let tf = f.translate(base.identity()).unwrap();
        for x in 0..2 {
            assert!((tf.value(x) - f.value(x)).norm() < 1e-15);
        }
    }

    #[test]
    fn z2_translation_swaps() {
        let base = z2();
        let f = AlgebraElement::new(&base, vec![Complex::new(3.0, 0.0), Complex::new(5.0, 0.0)])
            .unwrap();
        let tf = f.translate(1).unwrap();
        assert_eq!(tf.value(0), Complex::new(5.0, 0.0));
        assert_eq!(tf.value(1), Complex::new(3.0, 0.0));
    }

    #[test]
    fn unit_law() {
        let base = Arc::new(cyclic_group_table::<f64>(5).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = AlgebraElement::random(&base, &mut rng);
        let u = AlgebraElement::unit(&base);
        let uf = u.convolve(&f).unwrap();
        let fu = f.convolve(&u).unwrap();
        for x in 0..5 {
            assert!((uf.value(x) - f.value(x)).norm() < 1e-14);
            assert!((fu.value(x) - f.value(x)).norm() < 1e-14);
        }
    }

    #[test]
    fn group_convolution_matches_brute_force() {
        // Independent oracle: (f*g)(x) = (1/n) sum_y f(y) g(y^{ -1} x).
        let n = 6;
        let base = Arc::new(cyclic_group_table::<f64>(n).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = AlgebraElement::random(&base, &mut rng);
        let g = AlgebraElement::random(&base, &mut rng);
        let fg = f.convolve(&g).unwrap();
        for x in 0..n {
            let mut acc = c_zero::<f64>();
            for y in 0..n {
                let inv_y_x = (x + n - y) % n;
                acc += f.value(y) * g.value(inv_y_x);
            }
            acc /= n as f64;
            assert!((fg.value(x) - acc).norm() < 1e-14);
        }
    }

    #[test]
    fn involution_is_involutive_and_antimultiplicative() {
        let base = Arc::new(cyclic_group_table::<f64>(5).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = AlgebraElement::random(&base, &mut rng);
        let g = AlgebraElement::random(&base, &mut rng);

        let ff = f.involute().involute();
        for x in 0..5 {
            assert!((ff.value(x) - f.value(x)).norm() < 1e-15);
        }

        let lhs = f.convolve(&g).unwrap().involute();
        let rhs = g.involute().convolve(&f.involute()).unwrap();
        for x in 0..5 {
            assert!((lhs.value(x) - rhs.value(x)).norm() < 1e-13);
        }
    }

    #[test]
    fn real_symmetric_fixed_by_involution() {
        let base = z2();
        let f = AlgebraElement::from_real(&base, &[1.5, -0.5]).unwrap();
        let fi = f.involute();
        for x in 0..2 {
            assert_eq!(fi.value(x), f.value(x));
        }
    }

    #[test]
    fn embeddings_are_isometric_homomorphisms() {
        let base = Arc::new(cyclic_group_table::<f64>(4).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = AlgebraElement::random(&base, &mut rng);
        let g = AlgebraElement::random(&base, &mut rng);

        for side in [Side::Left, Side::Right] {
            let ef = f.embed(side);
            assert!((ef.norm_l1() - f.norm_l1()).abs() < 1e-13);

            let efg = f.convolve(&g).unwrap().embed(side);
            let ef_eg = match side {
                Side::Left => ef.act_left(&g).unwrap(),
                Side::Right => ef.act_right(&g).unwrap(),
            };
            // pi_i(f) * pi_i(g) equals the action of g on pi_i(f) because
            // pi_1(g) * F = (g tensor u) * F and F = f tensor u here.
            let diff = efg.minus(&ef_eg).unwrap();
            assert!(diff.norm_l1() < 1e-13);
        }

        let u = AlgebraElement::unit(&base);
        let uu = u.embed(Side::Left);
        // unit embeds to the unit of the product algebra: delta_(e,e)/w(e)^2
        let e = base.identity();
        let expect = 1.0 / (base.weight(e) * base.weight(e));
        assert!((uu.value(e, e).re - expect).abs() < 1e-12);
    }

    #[test]
    fn convolution_map_agrees_with_convolution_on_tensors() {
        let base = Arc::new(cyclic_group_table::<f64>(4).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = AlgebraElement::random(&base, &mut rng);
        let g = AlgebraElement::random(&base, &mut rng);
        let t = TensorElement::tensor(&f, &g);
        let pi_t = t.convolution_map().unwrap();
        let fg = f.convolve(&g).unwrap();
        for x in 0..4 {
            assert!((pi_t.value(x) - fg.value(x)).norm() < 1e-13);
        }
    }

    #[test]
    fn module_actions_match_flattened_product_convolution() {
        let base = Arc::new(cyclic_group_table::<f64>(3).unwrap());
        let product = Arc::new(base.product(&base, 1e-12).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = AlgebraElement::random(&base, &mut rng);
        let m = {
            let a = AlgebraElement::random(&base, &mut rng);
            let b = AlgebraElement::random(&base, &mut rng);
            TensorElement::tensor(&a, &b)
        };

        let left = m.act_left(&f).unwrap();
        let oracle = f
            .embed(Side::Left)
            .flatten(&product)
            .unwrap()
            .convolve(&m.flatten(&product).unwrap())
            .unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert!((left.value(x, y) - oracle.value(x * 3 + y)).norm() < 1e-13);
            }
        }

        let right = m.act_right(&f).unwrap();
        let oracle = m
            .flatten(&product)
            .unwrap()
            .convolve(&f.embed(Side::Right).flatten(&product).unwrap())
            .unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert!((right.value(x, y) - oracle.value(x * 3 + y)).norm() < 1e-13);
            }
        }
    }
}
