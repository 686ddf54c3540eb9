//! Coordinate model of the Hilbert space generated by the moment data.
//!
//! The block Toeplitz matrix is a Gram matrix; its rank-revealing Hermitian
//! eigendecomposition yields concrete coordinate vectors `x_0..x_{(d+1)N-1}`
//! whose pairwise products reproduce the Gram entries. Eigendecomposition is
//! used instead of pivoted Cholesky because degenerate problems make the
//! Gram matrix singular and the eigenvalues give the rank directly.

use crate::error::Error;
use crate::linalg::{
    hermitian_deviation, hermitian_eigen, hermitize, orthonormal_basis, orthonormal_complement,
    CMatrix, CVector, C64,
};
use crate::moments::{rank_threshold, BlockToeplitz};

/// Relative residual below which a candidate column adds no new direction.
pub(crate) const SPAN_DROP_TOL: f64 = 1e-8;

/// Rank-revealed coordinate realization of the space spanned by the moment
/// vectors.
///
/// Column `n` of `coords` holds the coordinates of `x_n` in `C^dim`, and the
/// crate-wide inner product (conjugate-linear in the second argument)
/// satisfies `inner(x_n, x_m) = gamma[n, m]` within `gram_tol`.
#[derive(Debug, Clone)]
pub struct CoordinateSpace {
    /// Dimension of the realized space (numerical rank of the Gram matrix).
    pub dim: usize,
    /// `dim x (d+1)N` matrix of coordinate columns.
    pub coords: CMatrix,
    pub mat_dim: usize,
    pub order: usize,
    /// Bound on the Gram reproduction error.
    pub gram_tol: f64,
    /// Relative rank tolerance the factorization was computed with.
    pub rank_tol: f64,
    /// Largest Gram eigenvalue, the scale of the problem.
    pub gram_scale: f64,
}

impl CoordinateSpace {
    /// Coordinate vector of `x_n`.
    pub fn coord(&self, n: usize) -> CVector {
        self.coords.column(n).into_owned()
    }

    /// Number of generator vectors, `(d+1)N`.
    pub fn generators(&self) -> usize {
        self.coords.ncols()
    }

    /// Orthonormal basis of the span of the selected coordinate vectors.
    pub fn span(&self, indices: &[usize]) -> Subspace {
        let cols = indices.iter().map(|&i| self.coord(i));
        Subspace {
            basis: orthonormal_basis(self.dim, cols, SPAN_DROP_TOL),
        }
    }

    /// Combination `sum_k alpha_k x_k` as a coordinate vector.
    pub fn combine(&self, alpha: &[C64]) -> CVector {
        let mut v = CVector::zeros(self.dim);
        for (k, &a) in alpha.iter().enumerate() {
            v += self.coords.column(k) * a;
        }
        v
    }
}

/// Factors the Gram matrix into coordinates.
///
/// Eigenvalues below `rank_tol * max(1, lambda_max)` are discarded, which is
/// where degenerate problems shrink the space; slightly negative eigenvalues
/// within the threshold are clamped to zero.
pub fn factor_gram(t: &BlockToeplitz, rank_tol: f64) -> Result<CoordinateSpace, Error> {
    let size = t.gamma.nrows();
    // the transpose is factored so that inner(x_n, x_m) = gamma[n, m] with a
    // product that conjugates the second argument
    let target = t.gamma.transpose();
    let herm_dev = hermitian_deviation(&target);
    let eig = hermitian_eigen(&hermitize(&target));
    let lambda_max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let lambda_min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let threshold = rank_threshold(rank_tol, lambda_max);
    if herm_dev > threshold {
        return Err(Error::NotHermitian { deviation: herm_dev });
    }
    if lambda_min < -threshold {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: lambda_min,
            tolerance: threshold,
        });
    }
    let kept: Vec<usize> = (0..size)
        .filter(|&i| eig.eigenvalues[i] > threshold)
        .collect();
    let dim = kept.len();
    let mut coords = CMatrix::zeros(dim, size);
    for (row, &i) in kept.iter().enumerate() {
        let scale = eig.eigenvalues[i].sqrt();
        for col in 0..size {
            coords[(row, col)] = eig.eigenvectors[(col, i)].conj() * scale;
        }
    }
    let gram_tol = size as f64 * (threshold + 1e-14 * lambda_max.max(1.0));
    Ok(CoordinateSpace {
        dim,
        coords,
        mat_dim: t.mat_dim,
        order: t.order,
        gram_tol,
        rank_tol,
        gram_scale: lambda_max,
    })
}

/// A subspace of the coordinate model, stored as an orthonormal basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    /// `ambient x k` matrix with orthonormal columns.
    pub basis: CMatrix,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &CVector) -> CVector {
        &self.basis * (self.basis.adjoint() * v)
    }

    /// Projector matrix `B B^H`.
    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    /// Distance from `v` to the subspace.
    pub fn residual(&self, v: &CVector) -> f64 {
        (v - self.project(v)).norm()
    }

    /// Deterministic orthonormal complement within the ambient space.
    pub fn orthogonal_complement(&self) -> Subspace {
        Subspace {
            basis: orthonormal_complement(self.ambient(), &self.basis),
        }
    }
}
