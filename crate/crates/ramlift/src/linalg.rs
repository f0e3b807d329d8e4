//! Small dense matrices over exact rings, the division-free Berkowitz
//! characteristic polynomial, exact rank over fields, and a float Hermitian
//! eigensolve fallback.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Zero};

use crate::cyclo::Cyclo;

/// Commutative ring operations, enough for Berkowitz and determinants.
pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(*o).expect("i128 overflow")
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(*o).expect("i128 overflow")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(*o).expect("i128 overflow")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl<T: crate::cyclo::Scalar> Ring for Cyclo<T> {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn add(&self, o: &Self) -> Self {
        Cyclo::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Cyclo::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Cyclo::mul(self, o)
    }
    fn neg(&self) -> Self {
        Cyclo::neg(self)
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
}

/// Fields add exact division; used for rank computations.
pub trait Field: Ring {
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        <BigRational as One>::one() / self.clone()
    }
}

impl Field for Cyclo<BigRational> {
    fn inv(&self) -> Self {
        Cyclo::inv(self).expect("inverse of zero")
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<R> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<R>,
}

impl<R: Ring> Mat<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut R {
        &mut self.data[i * self.cols + j]
    }

    pub fn matmul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let p = a.mul(b);
                    *out.at_mut(i, j) = out.at(i, j).add(&p);
                }
            }
        }
        out
    }

    pub fn add_mat(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).add(o.at(i, j)))
    }

    pub fn sub_mat(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).sub(o.at(i, j)))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Mat<S> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.at(rows[i], cols[j]).clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl<R: Ring> Mat<R> {
    /// Determinant via Berkowitz (division-free, works over any ring).
    pub fn det(&self) -> R {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        let cp = charpoly_berkowitz(self);
        // det(xI - A) at x = 0 is (-1)^n det(A)
        let c0 = cp[0].clone();
        if n % 2 == 0 {
            c0
        } else {
            c0.neg()
        }
    }
}

/// Coefficients of det(xI - A), lowest degree first (length n+1, monic).
///
/// Berkowitz's method: iterate over leading principal submatrices, combining
/// with lower-triangular Toeplitz matrices built from the walk sums
/// R A^k C of the border row R and column C. Division-free, O(n^4) ring ops.
pub fn charpoly_berkowitz<R: Ring>(a: &Mat<R>) -> Vec<R> {
    assert!(a.is_square());
    let n = a.rows;
    if n == 0 {
        return vec![R::one()];
    }
    // c holds the char poly of the current leading principal submatrix,
    // highest degree first.
    let mut c = vec![R::one(), a.at(0, 0).neg()];
    for m in 1..n {
        // Border of the (m+1)x(m+1) leading principal submatrix.
        let prev = m; // previous size
        // q[0] = 1, q[1] = -a_mm, q[k] = -(R A^{k-2} C) for k = 2..=m+1
        let mut q = Vec::with_capacity(m + 2);
        q.push(R::one());
        q.push(a.at(m, m).neg());
        // v = C (column above the diagonal entry), iterate v <- A_prev v
        let mut v: Vec<R> = (0..prev).map(|i| a.at(i, m).clone()).collect();
        for _ in 0..prev {
            // dot R . v
            let mut dot = R::zero();
            for j in 0..prev {
                if !a.at(m, j).is_zero() && !v[j].is_zero() {
                    dot = dot.add(&a.at(m, j).mul(&v[j]));
                }
            }
            q.push(dot.neg());
            if q.len() == m + 2 {
                break;
            }
            // v <- A_prev v
            let mut nv = vec![R::zero(); prev];
            for i in 0..prev {
                for j in 0..prev {
                    if !a.at(i, j).is_zero() && !v[j].is_zero() {
                        nv[i] = nv[i].add(&a.at(i, j).mul(&v[j]));
                    }
                }
            }
            v = nv;
        }
        while q.len() < m + 2 {
            q.push(R::zero());
        }
        // c_new = T(q) * c, Toeplitz product = polynomial-style convolution
        let mut c_new = vec![R::zero(); m + 2];
        for (i, qi) in q.iter().enumerate() {
            if qi.is_zero() {
                continue;
            }
            for (j, cj) in c.iter().enumerate() {
                if i + j < m + 2 && !cj.is_zero() {
                    c_new[i + j] = c_new[i + j].add(&qi.mul(cj));
                }
            }
        }
        c = c_new;
    }
    c.reverse();
    c
}

/// Exact rank over a field by Gaussian elimination.
pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let mut piv = None;
        for r in row..rows {
            if !a.at(r, col).is_zero() {
                piv = Some(r);
                break;
            }
        }
        let Some(p) = piv else { continue };
        // swap rows p and row
        if p != row {
            for j in 0..cols {
                a.data.swap(p * cols + j, row * cols + j);
            }
        }
        let inv = a.at(row, col).inv();
        for r in (row + 1)..rows {
            if a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col).mul(&inv);
            for j in col..cols {
                let s = factor.mul(a.at(row, j));
                *a.at_mut(r, j) = a.at(r, j).sub(&s);
            }
        }
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// Complex float matrices (tolerance-based checks only)
// ---------------------------------------------------------------------------

/// Dense complex float matrix for the unitary / Peter-Weyl / eigensolve side.
#[derive(Clone, Debug)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }

    pub fn matmul(&self, o: &CMat) -> CMat {
        assert_eq!(self.cols, o.rows);
        let mut out = CMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..o.cols {
                    *out.at_mut(i, j) += a * o.at(k, j);
                }
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i)).sum()
    }

    pub fn max_abs_diff(&self, o: &CMat) -> f64 {
        self.data
            .iter()
            .zip(&o.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Distance from unitarity: max |(M* M - I)_{ij}|.
    pub fn unitarity_residual(&self) -> f64 {
        let p = self.conj_transpose().matmul(self);
        p.max_abs_diff(&CMat::identity(self.rows))
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.max_abs_diff(&self.conj_transpose())
    }

    /// Numerical rank with pivot tolerance.
    pub fn rank_tol(&self, tol: f64) -> usize {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            // partial pivot
            let mut best = row;
            for r in row..rows {
                if a.at(r, col).norm() > a.at(best, col).norm() {
                    best = r;
                }
            }
            if row >= rows || a.at(best, col).norm() <= tol {
                continue;
            }
            if best != row {
                for j in 0..cols {
                    a.data.swap(best * cols + j, row * cols + j);
                }
            }
            let piv = a.at(row, col);
            for r in (row + 1)..rows {
                let factor = a.at(r, col) / piv;
                if factor.norm() == 0.0 {
                    continue;
                }
                for j in col..cols {
                    let s = factor * a.at(row, j);
                    *a.at_mut(r, j) -= s;
                }
            }
            rank += 1;
            row += 1;
        }
        rank
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Realifies H = A + iB to
    /// the symmetric [[A, -B], [B, A]] (doubled spectrum) and keeps one copy.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        assert!(self.rows == self.cols);
        let n = self.rows;
        if n == 0 {
            return vec![];
        }
        let big = nalgebra::DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
            let (bi, ii) = (i / n, i % n);
            let (bj, jj) = (j / n, j % n);
            let z = self.at(ii, jj);
            match (bi, bj) {
                (0, 0) | (1, 1) => z.re,
                (0, 1) => -z.im,
                _ => z.im,
            }
        });
        let sym = (&big + big.transpose()) * 0.5;
        let eig = nalgebra::linalg::SymmetricEigen::new(sym);
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        // spectrum is doubled; keep every other one
        vals.into_iter().step_by(2).collect()
    }
}
