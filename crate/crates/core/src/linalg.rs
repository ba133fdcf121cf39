//! Dense complex linear algebra for small Hermitian matrices.
//!
//! Matrices here are at most a few dozen rows, so everything is a plain
//! row-major `Vec` and the eigensolver is cyclic complex Jacobi, which is
//! slow but accurate to a few ulps in every eigenpair.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Real;

pub type C<T> = Complex<T>;

/// Rectangular complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<C<T>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_real_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C::new(d, T::zero());
        }
        m
    }

    /// `v v*` for a column vector `v`.
    pub fn outer(v: &[C<T>]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C<T>]) {
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(C::new(s, T::zero()))
    }

    pub fn trace(&self) -> C<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).fold(C::zero(), |a, b| a + b)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest absolute value of the imaginary parts.
    pub fn max_abs_imag(&self) -> T {
        self.data.iter().map(|z| z.im.abs()).fold(T::zero(), T::max)
    }

    pub fn mat_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(C::zero(), |acc, j| acc + self[(i, j)] * v[j]))
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Principal `k x k` leading block.
    pub fn leading_block(&self, k: usize) -> Self {
        Self::from_fn(k, k, |i, j| self[(i, j)])
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    /// Serialization helper: rows of `[re, im]` pairs.
    pub fn to_pairs(&self) -> Vec<Vec<[T; 2]>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect()
    }

    pub fn from_pairs(pairs: &[Vec<[T; 2]>]) -> Result<Self> {
        Self::from_rows(
            pairs.iter().map(|row| row.iter().map(|p| C::new(p[0], p[1])).collect()).collect(),
        )
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = &self.data[i * self.cols + j];
                write!(f, "({:?}, {:?}) ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<T: Real> Serialize for ComplexMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for ComplexMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<Vec<[T; 2]>>::deserialize(d)?;
        Self::from_pairs(&pairs).map_err(D::Error::custom)
    }
}

/// Square complex matrix equal to its own adjoint.
///
/// Construction symmetrizes the input, so the stored entries are exactly
/// Hermitian.
#[derive(Clone, PartialEq)]
pub struct HermitianMatrix<T>(ComplexMatrix<T>);

impl<T: Real> HermitianMatrix<T> {
    /// Symmetrizes `(M + M*) / 2`. Fails if `M` is not square.
    pub fn from_matrix(m: ComplexMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidInput(format!(
                "Hermitian matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let half = T::c(0.5);
        let n = m.rows();
        let sym = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C::new(m[(i, i)].re, T::zero())
            } else {
                (m[(i, j)] + m[(j, i)].conj()).scale(half)
            }
        });
        Ok(Self(sym))
    }

    /// Like [`from_matrix`](Self::from_matrix) but also checks the input was
    /// Hermitian to within `1e-12 * scale`.
    pub fn try_from_matrix(m: ComplexMatrix<T>) -> Result<Self> {
        let scale = T::one().max(m.frobenius_norm());
        let asym = m.max_abs_diff(&m.adjoint());
        if asym > T::c(1e-12) * scale {
            return Err(Error::InvalidInput(format!(
                "matrix is not Hermitian (asymmetry {:e})",
                asym.to_f64_lossy()
            )));
        }
        Self::from_matrix(m)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(ComplexMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn diagonal(diag: &[T]) -> Self {
        Self(ComplexMatrix::from_real_diagonal(diag))
    }

    /// `r w w*`.
    pub fn rank_one(r: T, w: &[C<T>]) -> Self {
        let mut m = ComplexMatrix::outer(w).scale_real(r);
        for i in 0..w.len() {
            m[(i, i)].im = T::zero();
        }
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.0
    }

    pub fn trace(&self) -> T {
        self.0.trace().re
    }

    pub fn frobenius_norm(&self) -> T {
        self.0.frobenius_norm()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn scale(&self, s: T) -> Self {
        Self(self.0.scale_real(s))
    }

    /// `U A U*`.
    pub fn conjugate_by(&self, u: &ComplexMatrix<T>) -> Self {
        Self::from_matrix(&(u * &self.0) * &u.adjoint()).expect("square")
    }

    /// `A - c I`.
    pub fn shift(&self, c: T) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.rows() {
            m[(i, i)].re = m[(i, i)].re - c;
        }
        Self(m)
    }
}

impl<T: fmt::Debug> fmt::Debug for HermitianMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.0)
    }
}

impl<T: Real> Serialize for HermitianMatrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for HermitianMatrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = ComplexMatrix::deserialize(d)?;
        Self::try_from_matrix(m).map_err(D::Error::custom)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted non-increasing; column `j` of `vectors` is the unit
/// eigenvector for `values[j]`, rotated so that its largest-modulus entry is
/// real and positive (lowest index wins ties).
#[derive(Clone, Debug)]
pub struct Spectrum<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> Spectrum<T> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, j: usize) -> Vec<C<T>> {
        self.vectors.column(j)
    }

    /// Spectral radius of the decomposed matrix.
    pub fn norm(&self) -> T {
        self.values.iter().map(|v| v.abs()).fold(T::zero(), T::max)
    }

    /// Minimum distance from `values[j]` to the other eigenvalues.
    pub fn gap(&self, j: usize) -> T {
        self.values
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, &v)| (v - self.values[j]).abs())
            .fold(T::infinity(), T::min)
    }

    /// `lambda_j` counts as simple when separated from its neighbours by more
    /// than `1e-8 * max(1, |A|)`.
    pub fn simplicity_tol(&self) -> T {
        T::c(1e-8) * T::one().max(self.norm())
    }

    pub fn is_simple(&self, j: usize) -> bool {
        self.gap(j) > self.simplicity_tol()
    }

    /// `U diag(lambda) U*`.
    pub fn reconstruct(&self) -> HermitianMatrix<T> {
        let d = ComplexMatrix::from_real_diagonal(&self.values);
        HermitianMatrix::from_matrix(&(&self.vectors * &d) * &self.vectors.adjoint())
            .expect("square")
    }
}

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition by cyclic complex Jacobi rotations.
pub fn eig_hermitian<T: Real>(a: &HermitianMatrix<T>) -> Result<Spectrum<T>> {
    let n = a.dim();
    let mut m = a.matrix().clone();
    let mut v = ComplexMatrix::<T>::identity(n);
    let norm = m.frobenius_norm();
    let eps = T::epsilon();
    let mut converged = n <= 1 || norm.is_zero();
    let mut off = T::zero();
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag <= T::min_positive_value() {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // skip rotations that cannot change the diagonal at working precision
                if sweeps > 3
                    && mag * T::c(1e-2) * eps <= eps * eps * (app.abs() + aqq.abs())
                {
                    m[(p, q)] = C::zero();
                    m[(q, p)] = C::zero();
                    continue;
                }
                let phase = apq / C::new(mag, T::zero());
                let theta = (aqq - app) / (T::c(2.0) * mag);
                let t = theta.signum() / (theta.abs() + (T::one() + theta * theta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let cc = C::new(c, T::zero());
                let ss = C::new(s, T::zero());
                let phase_c = phase.conj();
                // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on rows/cols (p, q)
                let jpp = cc;
                let jpq = ss;
                let jqp = -ss * phase_c;
                let jqq = cc * phase_c;
                // M <- M J
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * jpp + mkq * jqp;
                    m[(k, q)] = mkp * jpq + mkq * jqq;
                }
                // M <- J* M
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = jpp.conj() * mpk + jqp.conj() * mqk;
                    m[(q, k)] = jpq.conj() * mpk + jqq.conj() * mqk;
                }
                m[(p, q)] = C::zero();
                m[(q, p)] = C::zero();
                m[(p, p)].im = T::zero();
                m[(q, q)].im = T::zero();
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
        off = T::zero();
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    off = off + m[(p, q)].norm_sqr();
                }
            }
        }
        off = off.sqrt();
        converged = off <= eps * eps.sqrt() * norm || off <= T::min_positive_value();
    }
    if !converged {
        return Err(Error::NonConvergence {
            sweeps,
            off_norm: off.to_f64_lossy(),
            norm: norm.to_f64_lossy(),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m[(j, j)].re.partial_cmp(&m[(i, i)].re).unwrap_or(std::cmp::Ordering::Equal)
    });
    let values: Vec<T> = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut u = v.column(src);
        normalize_phase(&mut u);
        vectors.set_column(col, &u);
    }
    Ok(Spectrum { values, vectors })
}

/// Rotates `u` so its largest-modulus entry is real positive.
pub fn normalize_phase<T: Real>(u: &mut [C<T>]) {
    let mut best = 0;
    let mut best_mod = T::zero();
    for (k, z) in u.iter().enumerate() {
        let r = z.norm();
        if r > best_mod * (T::one() + T::c(1e-12)) + T::min_positive_value() {
            best = k;
            best_mod = r;
        }
    }
    if best_mod.is_zero() {
        return;
    }
    let phase = u[best].conj() / C::new(best_mod, T::zero());
    for z in u.iter_mut() {
        *z = *z * phase;
    }
    u[best].im = T::zero();
}

/// Orthogonal projection onto the eigenspace of `values[j]` (0-based).
pub fn spectral_projection<T: Real>(s: &Spectrum<T>, j: usize) -> Result<HermitianMatrix<T>> {
    if j >= s.dim() {
        return Err(Error::IndexOutOfRange {
            detail: format!("eigenvalue index {j} for dimension {}", s.dim()),
        });
    }
    if !s.is_simple(j) {
        return Err(Error::DegenerateEigenvalue {
            index: j,
            gap: s.gap(j).to_f64_lossy(),
            tol: s.simplicity_tol().to_f64_lossy(),
        });
    }
    Ok(HermitianMatrix::rank_one(T::one(), &s.vector(j)))
}

/// `exp(i t E) = I + (e^{it} - 1) E` for a projection `E`.
pub fn unitary_exp_projection<T: Real>(e: &HermitianMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    let m = e.matrix();
    let defect = (&(m * m) - m).frobenius_norm();
    if defect > T::c(1e-10) {
        return Err(Error::NotAProjection { defect: defect.to_f64_lossy() });
    }
    let factor = C::from_polar(T::one(), t) - C::one();
    Ok(&ComplexMatrix::identity(e.dim()) + &m.scale(factor))
}

/// Singular values (unsorted order is not guaranteed; returned descending)
/// by one-sided Jacobi on the columns.
pub fn singular_values<T: Real>(a: &ComplexMatrix<T>) -> Vec<T> {
    let mut m = a.clone();
    let cols = m.cols();
    let rows = m.rows();
    let eps = T::epsilon();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = C::zero();
                for k in 0..rows {
                    alpha = alpha + m[(k, p)].norm_sqr();
                    beta = beta + m[(k, q)].norm_sqr();
                    gamma = gamma + m[(k, p)].conj() * m[(k, q)];
                }
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || g <= T::min_positive_value() {
                    continue;
                }
                rotated = true;
                let phase = (gamma / C::new(g, T::zero())).conj();
                let zeta = (beta - alpha) / (T::c(2.0) * g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for k in 0..rows {
                    let ap = m[(k, p)];
                    let aq = m[(k, q)] * phase;
                    m[(k, p)] = ap.scale(c) - aq.scale(s);
                    m[(k, q)] = ap.scale(s) + aq.scale(c);
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> =
        (0..cols).map(|j| (0..rows).map(|k| m[(k, j)].norm_sqr()).sum::<T>().sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// Numerical rank with threshold `rel_tol * max(1, sigma_max)`.
pub fn numerical_rank<T: Real>(a: &ComplexMatrix<T>, rel_tol: T) -> usize {
    let sv = singular_values(a);
    let scale = sv.first().copied().unwrap_or(T::zero()).max(T::one());
    sv.iter().filter(|&&s| s > rel_tol * scale).count()
}

/// Hermitian inner product `(a, b) = sum_k a_k conj(b_k)`, linear in `a`.
pub fn inner<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    a.iter().zip(b).fold(C::zero(), |acc, (x, y)| acc + *x * y.conj())
}

pub fn vec_norm<T: Real>(v: &[C<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

pub fn normalized<T: Real>(v: &[C<T>]) -> Vec<C<T>> {
    let n = vec_norm(v);
    v.iter().map(|z| z.unscale(n)).collect()
}

/// Orthonormal basis of the real vector space of `d x d` Hermitian matrices
/// for the inner product `Re Tr(XY)`; the first `d^2 - 1` elements are
/// traceless and the last is `I / sqrt(d)`.
pub fn hermitian_basis<T: Real>(d: usize) -> Vec<HermitianMatrix<T>> {
    let mut basis = Vec::with_capacity(d * d);
    let r2 = T::c(std::f64::consts::FRAC_1_SQRT_2);
    for p in 0..d {
        for q in (p + 1)..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym[(p, q)] = C::new(r2, T::zero());
            sym[(q, p)] = C::new(r2, T::zero());
            basis.push(HermitianMatrix(sym));
            let mut anti = ComplexMatrix::zeros(d, d);
            anti[(p, q)] = C::new(T::zero(), -r2);
            anti[(q, p)] = C::new(T::zero(), r2);
            basis.push(HermitianMatrix(anti));
        }
    }
    for l in 1..d {
        let lf = T::from_usize_lossy(l);
        let norm = (lf * (lf + T::one())).sqrt();
        let mut diag = vec![T::zero(); d];
        for x in diag.iter_mut().take(l) {
            *x = T::one() / norm;
        }
        diag[l] = -lf / norm;
        basis.push(HermitianMatrix::diagonal(&diag));
    }
    basis.push(HermitianMatrix::diagonal(&vec![T::one() / T::from_usize_lossy(d).sqrt(); d]));
    basis
}

/// Unitary matrix from Gram-Schmidt on the columns of `m` (assumed full
/// rank), with the diagonal of the triangular factor made positive.
pub fn orthonormalize_columns<T: Real>(m: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let n = m.cols();
    let mut q = ComplexMatrix::zeros(m.rows(), n);
    let mut basis: Vec<Vec<C<T>>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = m.column(j);
        for _ in 0..2 {
            for b in &basis {
                let proj = inner(&v, b);
                for (x, y) in v.iter_mut().zip(b) {
                    *x = *x - *y * proj;
                }
            }
        }
        let v = normalized(&v);
        q.set_column(j, &v);
        basis.push(v);
    }
    q
}
