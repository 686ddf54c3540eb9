//! Dense complex linear-algebra helpers shared across the crate.
//!
//! Everything here works on `DMatrix<Complex<f64>>`. The inner product
//! convention throughout the crate is linear in the first argument and
//! conjugate-linear in the second: `inner(a, b) = b^H a`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::Error;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Inner product, conjugate-linear in the second argument.
pub fn inner(a: &CVector, b: &CVector) -> C64 {
    b.dotc(a)
}

/// Largest entry modulus; 0 for empty matrices.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest deviation from Hermitian symmetry, `max |m - m^H|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

/// Hermitian part `(m + m^H) / 2`.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Largest singular value; 0 for empty matrices.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
/// descending order and eigenvector phases fixed so that the largest-modulus
/// entry of each column is real positive. The phase convention makes the
/// factorization reproducible across runs.
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

pub fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    let n = m.nrows();
    if n == 0 {
        return HermitianEigen {
            eigenvalues: Vec::new(),
            eigenvectors: CMatrix::zeros(0, 0),
        };
    }
    let se = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &se.eigenvectors.column(src));
    }
    canonicalize_phases(&mut eigenvectors);
    HermitianEigen {
        eigenvalues,
        eigenvectors,
    }
}

/// Rotate each column by a unit phase so its largest-modulus entry becomes
/// real positive (first index wins ties).
pub fn canonicalize_phases(m: &mut CMatrix) {
    for mut col in m.column_iter_mut() {
        let mut best = 0usize;
        let mut best_norm = 0.0f64;
        for (i, z) in col.iter().enumerate() {
            let nz = z.norm();
            if nz > best_norm {
                best_norm = nz;
                best = i;
            }
        }
        if best_norm > 0.0 {
            let phase = col[best] / best_norm;
            let rot = phase.conj();
            for z in col.iter_mut() {
                *z *= rot;
            }
        }
    }
}

/// Orthonormal basis of the span of `candidates` inside C^ambient, built by
/// modified Gram-Schmidt with one reorthogonalization pass. A candidate is
/// dropped when its residual falls below `drop_tol` times its original norm.
pub fn orthonormal_basis<I>(ambient: usize, candidates: I, drop_tol: f64) -> CMatrix
where
    I: IntoIterator<Item = CVector>,
{
    let mut basis: Vec<CVector> = Vec::new();
    gram_schmidt_extend(&mut basis, candidates, drop_tol);
    from_columns(ambient, &basis)
}

/// Extend `basis` (assumed orthonormal) by the surviving candidates.
fn gram_schmidt_extend<I>(basis: &mut Vec<CVector>, candidates: I, drop_tol: f64)
where
    I: IntoIterator<Item = CVector>,
{
    for cand in candidates {
        let orig_norm = cand.norm();
        if orig_norm == 0.0 {
            continue;
        }
        let mut v = cand;
        // two projection passes keep orthogonality near machine precision
        for _ in 0..2 {
            for b in basis.iter() {
                let coeff = inner(&v, b);
                v -= b * coeff;
            }
        }
        let res_norm = v.norm();
        if res_norm > drop_tol * orig_norm {
            basis.push(v.unscale(res_norm));
        }
    }
}

/// Deterministic orthonormal complement of an orthonormal `basis` in
/// C^ambient, obtained by Gram-Schmidt over the standard basis vectors in
/// index order.
pub fn orthonormal_complement(ambient: usize, basis: &CMatrix) -> CMatrix {
    let mut cols: Vec<CVector> = basis.column_iter().map(|c| c.into_owned()).collect();
    let k = cols.len();
    let std_vectors = (0..ambient).map(|i| {
        let mut e = CVector::zeros(ambient);
        e[i] = C64::new(1.0, 0.0);
        e
    });
    // any surviving direction would contradict completeness, so the drop
    // tolerance only needs to be well below 1/sqrt(ambient)
    gram_schmidt_extend(&mut cols, std_vectors, 1e-8);
    from_columns(ambient, &cols[k..])
}

fn from_columns(ambient: usize, cols: &[CVector]) -> CMatrix {
    let mut m = CMatrix::zeros(ambient, cols.len());
    for (i, c) in cols.iter().enumerate() {
        m.set_column(i, c);
    }
    m
}

/// Spectral decomposition of a unitary matrix.
///
/// `u` is split into its two commuting Hermitian parts; the real part is
/// diagonalized first and the imaginary part is diagonalized inside each
/// eigenvalue cluster, which separates conjugate eigenvalue pairs without
/// needing a general complex eigensolver. Returns unit-modulus eigenvalues
/// with an orthonormal eigenvector matrix.
pub fn unitary_eigen(u: &CMatrix, tol: f64) -> Result<(Vec<C64>, CMatrix), Error> {
    let n = u.nrows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }
    let h_re = hermitize(u);
    let h_im = (u - u.adjoint()).scale(0.5) * C64::new(0.0, -1.0);

    let first = hermitian_eigen(&h_re);
    let mut vectors = CMatrix::zeros(n, n);
    let mut filled = 0usize;

    // cluster the cos spectrum; chained clusters are harmless because the
    // second stage separates anything the sin spectrum can distinguish
    let cluster_gap = 1e-7;
    let mut start = 0usize;
    while start < n {
        let mut end = start + 1;
        while end < n && (first.eigenvalues[end - 1] - first.eigenvalues[end]).abs() < cluster_gap {
            end += 1;
        }
        let block = first.eigenvectors.columns(start, end - start).into_owned();
        let reduced = block.adjoint() * &h_im * &block;
        let second = hermitian_eigen(&hermitize(&reduced));
        let refined = &block * &second.eigenvectors;
        for col in refined.column_iter() {
            vectors.set_column(filled, &col);
            filled += 1;
        }
        start = end;
    }
    canonicalize_phases(&mut vectors);

    let mut values = Vec::with_capacity(n);
    let mut max_residual = 0.0f64;
    for col in vectors.column_iter() {
        let image = u * col;
        let lambda = col.dotc(&image);
        max_residual = max_residual.max((&image - col * lambda).norm());
        max_residual = max_residual.max((lambda.norm() - 1.0).abs());
        values.push(lambda);
    }
    if max_residual > tol {
        return Err(Error::Eigen {
            residual: max_residual,
            tolerance: tol,
        });
    }
    Ok((values, vectors))
}
