//! Gel'fand-MacPherson duality check and the Hitchin-Hamiltonian
//! experiments in the Euclidean (`m = 1`) model.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, ComplexMatrix, HermitianMatrix, C};
use crate::polygon::{Edge, Polygon, SideLengths};
use crate::reconstruction::sample_polygon;
use crate::scalar::Real;
use crate::spectral::raw_action_values;

/// `(m+1) x n` matrix with columns `sqrt(r_j) w_j`.
pub fn polygon_to_matrix<T: Real>(p: &Polygon<T>) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(p.m() + 1, p.n(), |i, j| {
        let e = p.edge(j);
        e.w[i].scale(e.r.sqrt())
    })
}

/// Eigenvalues of the leading `k x k` blocks of `N* N`, for `k = 1..=n`.
pub fn gt_block_values<T: Real>(n_mat: &ComplexMatrix<T>) -> Result<Vec<Vec<T>>> {
    let gram = &n_mat.adjoint() * n_mat;
    (1..=gram.rows())
        .map(|k| Ok(eig_hermitian(&HermitianMatrix::from_matrix(gram.leading_block(k))?)?.values))
        .collect()
}

/// Comparison of block eigenvalues with the diagonal spectra.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub gamma: Vec<Vec<f64>>,
    pub lambda: Vec<Vec<f64>>,
    pub max_deviation: f64,
}

/// `gamma_k` against `lambda_{k-1}`, both zero padded to a common length.
pub fn duality_report<T: Real>(p: &Polygon<T>) -> Result<DualityReport> {
    let gamma = gt_block_values(&polygon_to_matrix(p))?;
    let lambda = raw_action_values(p);
    let mut dev = T::zero();
    for (k, g) in gamma.iter().enumerate() {
        let l = lambda.row(k);
        for idx in 0..g.len().max(l.len()) {
            let a = g.get(idx).copied().unwrap_or_else(T::zero);
            let b = l.get(idx).copied().unwrap_or_else(T::zero);
            dev = dev.max((a - b).abs());
        }
    }
    let to64 = |v: &[T]| v.iter().map(|x| x.to_f64_lossy()).collect();
    Ok(DualityReport {
        gamma: gamma.iter().map(|g| to64(g)).collect(),
        lambda: lambda.rows().iter().map(|l| to64(l)).collect(),
        max_deviation: dev.to_f64_lossy(),
    })
}

pub type Vec3<T> = [T; 3];

pub fn dot<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm3<T: Real>(a: &Vec3<T>) -> T {
    dot(a, a).sqrt()
}

fn add3<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// `x^ = 1/2 [[x1, x2 + i x3], [x2 - i x3, -x1]]`, so that
/// `(x cross y)^ = i [x^, y^]` and `x . y = 2 Tr(x^ y^)`.
pub fn hat<T: Real>(x: &Vec3<T>) -> ComplexMatrix<T> {
    let h = T::c(0.5);
    let z = T::zero();
    ComplexMatrix::from_rows(vec![
        vec![C::new(h * x[0], z), C::new(h * x[1], h * x[2])],
        vec![C::new(h * x[1], -h * x[2]), C::new(-h * x[0], z)],
    ])
    .expect("2x2")
}

/// Inverse of [`hat`] on traceless Hermitian 2x2 matrices.
pub fn unhat<T: Real>(m: &ComplexMatrix<T>) -> Vec3<T> {
    let two = T::c(2.0);
    [two * m[(0, 0)].re, two * m[(0, 1)].re, two * m[(0, 1)].im]
}

/// Closed polygon of vectors in real 3-space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EuclideanPolygon<T> {
    pub edges: Vec<Vec3<T>>,
}

impl<T: Real> EuclideanPolygon<T> {
    pub fn n(&self) -> usize {
        self.edges.len()
    }

    pub fn lengths(&self) -> Vec<T> {
        self.edges.iter().map(norm3).collect()
    }

    pub fn closure_defect(&self) -> T {
        let s = self.edges.iter().fold([T::zero(); 3], |a, e| add3(&a, e));
        norm3(&s)
    }

    /// `e_1 + ... + e_d`.
    pub fn partial_sum(&self, d: usize) -> Vec3<T> {
        self.edges.iter().take(d).fold([T::zero(); 3], |a, e| add3(&a, e))
    }
}

/// Traceless parts of the edges of an `m = 1` polygon.
pub fn to_euclidean<T: Real>(p: &Polygon<T>) -> Result<EuclideanPolygon<T>> {
    if p.m() != 1 {
        return Err(Error::InvalidInput(format!("Euclidean model needs m = 1, got m = {}", p.m())));
    }
    let edges = p
        .edges()
        .iter()
        .map(|e| unhat(e.matrix().shift(e.r * T::c(0.5)).matrix()))
        .collect();
    Ok(EuclideanPolygon { edges })
}

/// `e_i = (r_i / 2) I + x_i^` with `r_i = |x_i|`.
pub fn from_euclidean<T: Real>(ep: &EuclideanPolygon<T>) -> Result<Polygon<T>> {
    let edges = ep
        .edges
        .iter()
        .map(|x| {
            let r = norm3(x);
            let s = eig_hermitian(&HermitianMatrix::from_matrix(hat(x))?)?;
            Edge::new(r, s.vector(0))
        })
        .collect::<Result<Vec<_>>>()?;
    Polygon::new(1, edges)
}

/// Spectral points `alpha_1..alpha_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HitchinSpec<T> {
    pub alphas: Vec<T>,
}

/// `H_j = sum_{i != j} e_i . e_j / (alpha_i - alpha_j)`; `None` where some
/// `alpha_i` equals `alpha_j`.
pub fn hitchin_hamiltonians<T: Real>(ep: &EuclideanPolygon<T>, spec: &HitchinSpec<T>) -> Result<Vec<Option<T>>> {
    check_alphas(ep, spec)?;
    Ok((0..ep.n())
        .map(|j| pair_sum(ep.n(), j, spec, |i| dot(&ep.edges[i], &ep.edges[j])))
        .collect())
}

fn check_alphas<T: Real>(ep: &EuclideanPolygon<T>, spec: &HitchinSpec<T>) -> Result<()> {
    if spec.alphas.len() != ep.n() {
        return Err(Error::InvalidInput(format!("{} alphas for {} edges", spec.alphas.len(), ep.n())));
    }
    Ok(())
}

fn pair_sum<T: Real>(n: usize, j: usize, spec: &HitchinSpec<T>, term: impl Fn(usize) -> T) -> Option<T> {
    let mut acc = T::zero();
    for i in (0..n).filter(|&i| i != j) {
        let d = spec.alphas[i] - spec.alphas[j];
        if d.is_zero() {
            return None;
        }
        acc = acc + term(i) / d;
    }
    Some(acc)
}

/// `A(z) = p(z) sum_i e_i^ / (z - alpha_i) = sum_i e_i^ prod_{k != i} (z - alpha_k)`.
pub fn hitchin_matrix<T: Real>(ep: &EuclideanPolygon<T>, spec: &HitchinSpec<T>, z: C<T>) -> Result<ComplexMatrix<T>> {
    check_alphas(ep, spec)?;
    let mut acc = ComplexMatrix::zeros(2, 2);
    for (i, e) in ep.edges.iter().enumerate() {
        let coef = spec
            .alphas
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .fold(C::new(T::one(), T::zero()), |a, (_, &al)| a * (z - C::new(al, T::zero())));
        acc = &acc + &hat(e).scale(coef);
    }
    Ok(acc)
}

/// Velocity of the bending flow of the top eigenvalue of `A_{d-1}`:
/// `de_k/dt = (D / |D|) x e_k` for `k <= d`, zero otherwise, where
/// `D = e_1 + ... + e_d`.
pub fn bending_derivative_r3<T: Real>(ep: &EuclideanPolygon<T>, d: usize) -> Result<Vec<Vec3<T>>> {
    if d < 1 || d > ep.n() {
        return Err(Error::IndexOutOfRange { detail: format!("diagonal length {d} for {} edges", ep.n()) });
    }
    let big_d = ep.partial_sum(d);
    let len = norm3(&big_d);
    if len.is_zero() {
        return Err(Error::DegenerateEigenvalue { index: d - 1, gap: 0.0, tol: 0.0 });
    }
    let axis = [big_d[0] / len, big_d[1] / len, big_d[2] / len];
    Ok(ep
        .edges
        .iter()
        .enumerate()
        .map(|(k, e)| if k < d { cross(&axis, e) } else { [T::zero(); 3] })
        .collect())
}

/// Exact `dH_j/dt` along the flow about the first `d` edges.
pub fn hitchin_derivatives<T: Real>(ep: &EuclideanPolygon<T>, spec: &HitchinSpec<T>, d: usize) -> Result<Vec<Option<T>>> {
    check_alphas(ep, spec)?;
    let de = bending_derivative_r3(ep, d)?;
    Ok((0..ep.n())
        .map(|j| pair_sum(ep.n(), j, spec, |i| dot(&de[i], &ep.edges[j]) + dot(&ep.edges[i], &de[j])))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceRow {
    /// Number of edges in the bent diagonal.
    pub diagonal: usize,
    pub dh_dt: Vec<Option<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HitchinReport {
    pub alphas: Vec<f64>,
    pub hamiltonians: Vec<Option<f64>>,
    pub rows: Vec<InvarianceRow>,
}

/// `dH_j/dt` along every bending flow `d = 2..=n-2`.
pub fn hitchin_invariance_report<T: Real>(ep: &EuclideanPolygon<T>, spec: &HitchinSpec<T>) -> Result<HitchinReport> {
    let to64 = |v: Vec<Option<T>>| v.into_iter().map(|x| x.map(|y| y.to_f64_lossy())).collect();
    let rows = (2..=ep.n().saturating_sub(2))
        .map(|d| Ok(InvarianceRow { diagonal: d, dh_dt: to64(hitchin_derivatives(ep, spec, d)?) }))
        .collect::<Result<Vec<_>>>()?;
    Ok(HitchinReport {
        alphas: spec.alphas.iter().map(|a| a.to_f64_lossy()).collect(),
        hamiltonians: to64(hitchin_hamiltonians(ep, spec)?),
        rows,
    })
}

/// Seeded random closed Euclidean `n`-gon with side lengths in `[0.5, 1.5]`.
pub fn sample_euclidean_polygon<T: Real>(n: usize, seed: u64) -> Result<EuclideanPolygon<T>> {
    use rand::Rng;
    let mut rng = crate::random::rng_from_seed(seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..1000 {
        let r: Vec<T> = (0..n).map(|_| T::c(rng.random_range(0.5..1.5))).collect();
        let s = SideLengths::new(1, r)?;
        if crate::polygon::is_strictly_admissible(&s) {
            return to_euclidean(&sample_polygon(&s, rng.random())?);
        }
    }
    Err(Error::EmptyInterior { tries: 1000 })
}

/// Pentagon re-drawn until `|(e_2 x e_1) . e_5| >= min_triple`.
pub fn generic_pentagon<T: Real>(seed: u64, min_triple: T) -> Result<EuclideanPolygon<T>> {
    for attempt in 0..1000u64 {
        let ep = sample_euclidean_polygon::<T>(5, seed.wrapping_mul(1000).wrapping_add(attempt))?;
        if dot(&cross(&ep.edges[1], &ep.edges[0]), &ep.edges[4]).abs() >= min_triple {
            return Ok(ep);
        }
    }
    Err(Error::EmptyInterior { tries: 1000 })
}
