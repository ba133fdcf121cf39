//! Bending flows, angle variables and finite-difference Poisson brackets.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, hermitian_basis, inner, spectral_projection, unitary_exp_projection, vec_norm, HermitianMatrix, Spectrum, C,
};
use crate::polygon::Polygon;
use crate::scalar::{wrap_angle, Real};
use crate::spectral::{action_index_set, diagonal, GTsPattern};

/// Bending flow of `lambda_ij` for time `t`; `i` is the diagonal index
/// (`1..=n-3`), `j` the 1-based eigenvalue index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowSpec<T> {
    pub i: usize,
    pub j: usize,
    pub t: T,
}

/// Conjugates edges `1..=i+1` by `exp(i t E_j(A_i))`; later edges are
/// untouched.
pub fn bend<T: Real>(p: &Polygon<T>, f: FlowSpec<T>) -> Result<Polygon<T>> {
    let (n, m) = (p.n(), p.m());
    if f.i < 1 || f.i + 3 > n {
        return Err(Error::IndexOutOfRange { detail: format!("diagonal index i = {} outside 1..={}", f.i, n.saturating_sub(3)) });
    }
    if f.j < 1 || f.j > m + 1 {
        return Err(Error::IndexOutOfRange { detail: format!("eigenvalue index j = {} outside 1..={}", f.j, m + 1) });
    }
    let a = diagonal(&p.edge_matrices(), f.i, m + 1);
    let s = eig_hermitian(&a)?;
    let e = spectral_projection(&s, f.j - 1)?;
    let u = unitary_exp_projection(&e, f.t)?;
    Ok(p.conjugate_prefix(&u, f.i + 1))
}

/// `(a,b)(b,c)(c,d)(d,a) / (|a|^2 |b|^2 |c|^2 |d|^2)`.
pub fn four_point<T: Real>(a: &[C<T>], b: &[C<T>], c: &[C<T>], d: &[C<T>]) -> Result<C<T>> {
    let norms = [vec_norm(a), vec_norm(b), vec_norm(c), vec_norm(d)];
    if norms.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let denom: T = norms.iter().fold(T::one(), |acc, x| acc * *x * *x);
    Ok((inner(a, b) * inner(b, c) * inner(c, d) * inner(d, a)).unscale(denom))
}

/// Angle variables `theta_ij = arg beta_ij` over the action index set.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = "T: Real"))]
pub struct AngleSet<T> {
    #[serde(serialize_with = "crate::io::serialize_index_map")]
    pub theta: BTreeMap<(usize, usize), T>,
    #[serde(serialize_with = "crate::io::serialize_index_map_complex")]
    pub beta: BTreeMap<(usize, usize), C<T>>,
}

impl<T: Real> AngleSet<T> {
    /// Largest wrapped difference between matching angles.
    pub fn max_angle_distance(&self, other: &Self) -> T {
        self.theta
            .iter()
            .filter_map(|(k, a)| other.theta.get(k).map(|b| wrap_angle(*a - *b).abs()))
            .fold(T::zero(), T::max)
    }
}

/// `beta_ij = F4(w_{i+1}, u_ij, w_{i+2}, u_{i,j+1})` from the edge vectors
/// and the spectrum of `A_i`.
fn beta_from<T: Real>(w_a: &[C<T>], w_b: &[C<T>], s: &Spectrum<T>, i: usize, j: usize) -> Result<C<T>> {
    for idx in [j - 1, j] {
        if !s.is_simple(idx) {
            return Err(Error::StrictInterlacingViolation { i, j: idx + 1 });
        }
    }
    four_point(w_a, &s.vector(j - 1), w_b, &s.vector(j))
}

pub fn angle_values<T: Real>(p: &Polygon<T>) -> Result<AngleSet<T>> {
    let (n, m) = (p.n(), p.m());
    let es = p.edge_matrices();
    let mut theta = BTreeMap::new();
    let mut beta = BTreeMap::new();
    let mut cache: BTreeMap<usize, Spectrum<T>> = BTreeMap::new();
    for (i, j) in action_index_set(n, m) {
        if let std::collections::btree_map::Entry::Vacant(v) = cache.entry(i) {
            v.insert(eig_hermitian(&diagonal(&es, i, m + 1))?);
        }
        let s = &cache[&i];
        let b = beta_from(&p.edge(i).w, &p.edge(i + 1).w, s, i, j)?;
        if b.norm() <= T::c(1e-14) {
            return Err(Error::StrictInterlacingViolation { i, j });
        }
        theta.insert((i, j), b.arg());
        beta.insert((i, j), b);
    }
    Ok(AngleSet { theta, beta })
}

/// `mu_ij = lambda_i1 + ... + lambda_ij` for every row and `j = 1..=m+1`.
pub fn mu_values<T: Real>(pattern: &GTsPattern<T>) -> BTreeMap<(usize, usize), T> {
    let mut out = BTreeMap::new();
    for (i, row) in pattern.rows().iter().enumerate() {
        let mut acc = T::zero();
        for (j, &v) in row.iter().enumerate() {
            acc = acc + v;
            out.insert((i, j + 1), acc);
        }
    }
    out
}

/// Functions on tuples of Hermitian matrices `(X_1, ..., X_n)`.
pub trait Observable<T: Real> {
    fn eval(&self, xs: &[HermitianMatrix<T>]) -> Result<T>;

    /// Angles are compared modulo `2 pi` when differencing.
    fn is_angle(&self) -> bool {
        false
    }
}

impl<T: Real, F> Observable<T> for F
where
    F: Fn(&[HermitianMatrix<T>]) -> Result<T>,
{
    fn eval(&self, xs: &[HermitianMatrix<T>]) -> Result<T> {
        self(xs)
    }
}

/// The action and angle functions, extended off the orbit: `w_k` is taken
/// as the top eigenvector of `X_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ActionAngle {
    Lambda { i: usize, j: usize },
    Mu { i: usize, j: usize },
    Theta { i: usize, j: usize },
}

impl<T: Real> Observable<T> for ActionAngle {
    fn eval(&self, xs: &[HermitianMatrix<T>]) -> Result<T> {
        let dim = xs[0].dim();
        match *self {
            ActionAngle::Lambda { i, j } => {
                let s = eig_hermitian(&diagonal(xs, i, dim))?;
                Ok(s.values[j - 1])
            }
            ActionAngle::Mu { i, j } => {
                let s = eig_hermitian(&diagonal(xs, i, dim))?;
                Ok(s.values[..j].iter().copied().sum())
            }
            ActionAngle::Theta { i, j } => {
                let s = eig_hermitian(&diagonal(xs, i, dim))?;
                let wa = eig_hermitian(&xs[i])?.vector(0);
                let wb = eig_hermitian(&xs[i + 1])?.vector(0);
                Ok(beta_from(&wa, &wb, &s, i, j)?.arg())
            }
        }
    }

    fn is_angle(&self) -> bool {
        matches!(self, ActionAngle::Theta { .. })
    }
}

/// Finite-difference step `1e-5 max(1, Lambda)`.
pub fn default_fd_step<T: Real>(lambda: T) -> T {
    T::c(1e-5) * T::one().max(lambda)
}

/// Hermitian gradient of `f` in each edge slot: `G_k` with
/// `Re Tr(G_k Y) = d/ds f(.., X_k + s Y, ..)`, by central differences.
pub fn gradient<T: Real, O: Observable<T> + ?Sized>(f: &O, p: &Polygon<T>, h: T) -> Result<Vec<HermitianMatrix<T>>> {
    let xs = p.edge_matrices();
    let dim = p.m() + 1;
    let basis = hermitian_basis::<T>(dim);
    let mut probe = xs.clone();
    let mut out = Vec::with_capacity(xs.len());
    for k in 0..xs.len() {
        let mut g = HermitianMatrix::zeros(dim);
        for b in &basis {
            probe[k] = xs[k].add(&b.scale(h));
            let plus = f.eval(&probe)?;
            probe[k] = xs[k].sub(&b.scale(h));
            let minus = f.eval(&probe)?;
            let mut diff = plus - minus;
            if f.is_angle() {
                diff = wrap_angle(diff);
            }
            g = g.add(&b.scale(diff / (h + h)));
        }
        probe[k] = xs[k].clone();
        out.push(g);
    }
    Ok(out)
}

/// `sum_k Im Tr(e_k [G_k^f, G_k^g])` for Hermitian gradients; this is the
/// derivative of `g` along the Hamiltonian flow of `f`.
pub fn bracket_from_gradients<T: Real>(p: &Polygon<T>, gf: &[HermitianMatrix<T>], gg: &[HermitianMatrix<T>]) -> T {
    p.edge_matrices()
        .iter()
        .zip(gf.iter().zip(gg))
        .map(|(e, (a, b))| (e.matrix() * &a.matrix().commutator(b.matrix())).trace().im)
        .sum()
}

pub fn poisson_bracket_fd<T: Real, F, G>(f: &F, g: &G, p: &Polygon<T>, h: T) -> Result<T>
where
    F: Observable<T> + ?Sized,
    G: Observable<T> + ?Sized,
{
    let gf = gradient(f, p, h)?;
    let gg = gradient(g, p, h)?;
    Ok(bracket_from_gradients(p, &gf, &gg))
}
