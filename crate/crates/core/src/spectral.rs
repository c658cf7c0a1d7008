//! Dense real-symmetric eigendecomposition and canonical-ensemble weights.
//!
//! The eigensolver is the classic two-stage scheme: Householder reduction to
//! tridiagonal form followed by the implicit QL algorithm with Wilkinson-style
//! shifts. It is deterministic for identical input and returns eigenvalues in
//! ascending order with an orthonormal set of eigenvectors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square real symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Real> SymMatrix<T> {
    /// Validates shape and symmetry (absolute tolerance `1e-12`).
    pub fn new(dim: usize, data: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionZero);
        }
        if data.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                dim,
                expected: dim * dim,
                got: data.len(),
            });
        }
        let m = Self { dim, data };
        m.check_symmetric()?;
        Ok(m)
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionZero);
        }
        Ok(Self {
            dim,
            data: vec![T::zero(); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.data[i * dim + i] = T::one();
        }
        Ok(m)
    }

    pub fn diagonal(values: &[T]) -> Result<Self> {
        let mut m = Self::zeros(values.len())?;
        for (i, &v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = v;
        }
        Ok(m)
    }

    /// Builds `a[i][j] = f(i, j)` for `i <= j` and mirrors the upper triangle.
    pub fn from_upper(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        Ok(m)
    }

    /// Symmetrizes `(A + A^T) / 2`; for assembled operators carrying round-off asymmetry.
    pub fn symmetrized(dim: usize, mut data: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionZero);
        }
        if data.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                dim,
                expected: dim * dim,
                got: data.len(),
            });
        }
        let half = T::of(0.5);
        for i in 0..dim {
            for j in (i + 1)..dim {
                let v = (data[i * dim + j] + data[j * dim + i]) * half;
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        Ok(Self { dim, data })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.dim + j]
    }

    /// Sets both `a[i][j]` and `a[j][i]`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    fn check_symmetric(&self) -> Result<()> {
        let tol = T::tol(1e-12);
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let dev = (self.get(i, j) - self.get(j, i)).abs();
                if dev.is_nan() || dev > tol {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        deviation: dev.as_f64(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenSystem<T> {
    values: Vec<T>,
    /// Column-major: eigenvector `j` occupies `vectors[j * n..(j + 1) * n]`.
    vectors: Vec<T>,
}

impl<T: Real> EigenSystem<T> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn vector(&self, j: usize) -> &[T] {
        let n = self.dim();
        &self.vectors[j * n..(j + 1) * n]
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// `V diag(values) V^T`, entry `(i, j)`.
    pub fn reconstruct(&self, i: usize, j: usize) -> T {
        (0..self.dim())
            .map(|k| self.vector(k)[i] * self.values[k] * self.vector(k)[j])
            .sum()
    }
}

/// Full eigendecomposition of a real symmetric matrix.
pub fn eigh<T: Real>(a: &SymMatrix<T>) -> Result<EigenSystem<T>> {
    if a.dim == 0 {
        return Err(Error::DimensionZero);
    }
    a.check_symmetric()?;
    let n = a.dim;
    if n == 1 {
        return Ok(EigenSystem {
            values: vec![a.data[0]],
            vectors: vec![T::one()],
        });
    }
    let mut v = a.data.clone();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tridiagonalize(n, &mut v, &mut d, &mut e);
    // QL rotations act on columns; switch to column-major so they stream.
    let mut z = transpose(n, &v);
    ql_implicit(n, &mut d, &mut e, &mut z)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| d[i]).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &i in &order {
        vectors.extend_from_slice(&z[i * n..(i + 1) * n]);
    }
    Ok(EigenSystem { values, vectors })
}

fn transpose<T: Real>(n: usize, m: &[T]) -> Vec<T> {
    let mut t = vec![T::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = m[i * n + j];
        }
    }
    t
}

/// Householder reduction; on exit `v` (row-major) holds the orthogonal
/// transformation, `d` the diagonal and `e[1..]` the subdiagonal.
fn tridiagonalize<T: Real>(n: usize, v: &mut [T], d: &mut [T], e: &mut [T]) {
    let idx = |i: usize, j: usize| i * n + j;
    for j in 0..n {
        d[j] = v[idx(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for dk in d.iter().take(i) {
            scale = scale + dk.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[idx(i - 1, j)];
                v[idx(i, j)] = T::zero();
                v[idx(j, i)] = T::zero();
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk = *dk / scale;
                h = h + *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h = h - f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = T::zero();
            }
            for j in 0..i {
                f = d[j];
                v[idx(j, i)] = f;
                g = e[j] + v[idx(j, j)] * f;
                for k in (j + 1)..i {
                    g = g + v[idx(k, j)] * d[k];
                    e[k] = e[k] + v[idx(k, j)] * f;
                }
                e[j] = g;
            }
            f = T::zero();
            for j in 0..i {
                e[j] = e[j] / h;
                f = f + e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] = e[j] - hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[idx(k, j)] = v[idx(k, j)] - (f * e[k] + g * d[k]);
                }
                d[j] = v[idx(i - 1, j)];
                v[idx(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }
    // Accumulate transformations.
    for i in 0..(n - 1) {
        v[idx(n - 1, i)] = v[idx(i, i)];
        v[idx(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[idx(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g = g + v[idx(k, i + 1)] * v[idx(k, j)];
                }
                for k in 0..=i {
                    v[idx(k, j)] = v[idx(k, j)] - g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[idx(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[idx(n - 1, j)];
        v[idx(n - 1, j)] = T::zero();
    }
    v[idx(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
}

/// Implicit QL on the tridiagonal matrix; `z` is column-major.
fn ql_implicit<T: Real>(n: usize, d: &mut [T], e: &mut [T], z: &mut [T]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let eps = T::epsilon();
    let two = T::of(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
    let max_iter = 60 * n.max(8);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > max_iter {
                    return Err(Error::NoConvergence);
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di = *di - h;
                }
                f = f + h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = z.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for k in 0..n {
                        let t = zi1[k];
                        zi1[k] = s * zi[k] + c * t;
                        zi[k] = c * zi[k] - s * t;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] = d[l] + f;
        e[l] = T::zero();
    }
    Ok(())
}

/// Boltzmann weights of a spectrum and `ln Z`.
///
/// Factors are taken relative to the minimum level, so `beta` in the
/// thousands does not overflow; `ln Z` has the shift restored.
pub fn thermal_weights<T: Real>(values: &[T], beta: T) -> Result<(Vec<T>, T)> {
    if !(beta > T::zero()) {
        return Err(Error::NonPositiveBeta(beta.as_f64()));
    }
    if values.is_empty() {
        return Err(Error::DimensionZero);
    }
    let min = values.iter().copied().fold(T::infinity(), T::min);
    let mut weights: Vec<T> = values.iter().map(|&v| (-beta * (v - min)).exp()).collect();
    let sum: T = weights.iter().copied().sum();
    for w in &mut weights {
        *w = *w / sum;
    }
    Ok((weights, sum.ln() - beta * min))
}
