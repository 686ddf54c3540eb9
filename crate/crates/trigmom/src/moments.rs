//! Moment data, block Toeplitz assembly, and the solvability gate.
//!
//! A moment sequence holds the prescribed matrices `S_0..S_d`; the moment
//! problem is solvable exactly when the block Toeplitz matrix built from
//! them is positive semidefinite. Negative-index moments are derived as
//! adjoints and never stored.

use crate::error::{Error, ValidationIssue};
use crate::linalg::{
    all_finite, hermitian_deviation, hermitian_eigen, hermitize, max_abs, CMatrix,
};
use crate::solutions::{Atom, DiscreteSolution};

/// Default relative tolerance for all rank and positivity decisions.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Absolute threshold for a relative tolerance: `tol * max(1, scale)`.
pub fn rank_threshold(tol: f64, scale: f64) -> f64 {
    tol * scale.max(1.0)
}

/// Validated input data: `d + 1` complex `N x N` moment matrices.
#[derive(Debug, Clone)]
pub struct MomentSequence {
    /// Matrix size N.
    pub mat_dim: usize,
    /// Truncation order d.
    pub order: usize,
    /// The moments `S_0..S_d`.
    pub moments: Vec<CMatrix>,
}

impl MomentSequence {
    /// Moment for any index in `-d..=d`; negative indices are adjoints.
    pub fn moment(&self, n: i64) -> CMatrix {
        if n >= 0 {
            self.moments[n as usize].clone()
        } else {
            self.moments[(-n) as usize].adjoint()
        }
    }
}

/// Checks shapes and finiteness, reporting every violated rule at once.
pub fn validate_moments(
    mat_dim: usize,
    order: usize,
    raw: Vec<CMatrix>,
) -> Result<MomentSequence, Error> {
    let mut issues = Vec::new();
    if mat_dim == 0 {
        issues.push(ValidationIssue::ZeroMatrixSize);
    }
    if raw.len() != order + 1 {
        issues.push(ValidationIssue::WrongCount {
            expected: order + 1,
            got: raw.len(),
        });
    }
    for (index, m) in raw.iter().enumerate() {
        if m.nrows() != mat_dim || m.ncols() != mat_dim {
            issues.push(ValidationIssue::WrongShape {
                index,
                expected: mat_dim,
                rows: m.nrows(),
                cols: m.ncols(),
            });
            continue;
        }
        'entry: for row in 0..m.nrows() {
            for col in 0..m.ncols() {
                let z = m[(row, col)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    issues.push(ValidationIssue::NonFinite { index, row, col });
                    break 'entry;
                }
            }
        }
    }
    if !issues.is_empty() {
        return Err(Error::Validation(issues));
    }
    Ok(MomentSequence {
        mat_dim,
        order,
        moments: raw,
    })
}

/// The `(d+1)N` square matrix with block `(i, j) = S_{i-j}`.
#[derive(Debug, Clone)]
pub struct BlockToeplitz {
    pub mat_dim: usize,
    pub order: usize,
    pub gamma: CMatrix,
}

impl BlockToeplitz {
    pub fn size(&self) -> usize {
        (self.order + 1) * self.mat_dim
    }
}

/// Assembles the block Toeplitz matrix of a moment sequence.
///
/// Entry `(kN+s, rN+l)` is `S_{k-r}[s, l]`; sub-diagonal blocks carry the
/// stored moments, super-diagonal blocks their adjoints.
pub fn build_toeplitz(m: &MomentSequence) -> BlockToeplitz {
    let n = m.mat_dim;
    let size = (m.order + 1) * n;
    let mut gamma = CMatrix::zeros(size, size);
    for k in 0..=m.order {
        for r in 0..=m.order {
            let block = m.moment(k as i64 - r as i64);
            for s in 0..n {
                for l in 0..n {
                    gamma[(k * n + s, r * n + l)] = block[(s, l)];
                }
            }
        }
    }
    BlockToeplitz {
        mat_dim: n,
        order: m.order,
        gamma,
    }
}

/// Outcome of the positivity test on the block Toeplitz matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvabilityReport {
    pub solvable: bool,
    pub min_eigenvalue: f64,
    /// Numerical rank at the reported tolerance.
    pub rank: usize,
    /// Absolute threshold used for both the verdict and the rank.
    pub tolerance_used: f64,
}

/// Decides solvability: the problem has a solution exactly when the block
/// Toeplitz matrix is positive semidefinite within tolerance.
///
/// The verdict uses the absolute threshold `tol * max(1, lambda_max)`. A
/// Hermitian-symmetry violation beyond that threshold also makes the data
/// unsolvable; it is folded into the reported minimum eigenvalue so that
/// `solvable <=> min_eigenvalue >= -tolerance_used` always holds.
pub fn check_solvable(t: &BlockToeplitz, tol: f64) -> Result<SolvabilityReport, Error> {
    if tol <= 0.0 {
        return Err(Error::Knob {
            name: "tol",
            message: format!("must be positive, got {tol}"),
        });
    }
    if !all_finite(&t.gamma) {
        return Err(Error::Eigen {
            residual: f64::INFINITY,
            tolerance: tol,
        });
    }
    let herm_dev = hermitian_deviation(&t.gamma);
    let eig = hermitian_eigen(&hermitize(&t.gamma));
    let lambda_max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let lambda_min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let threshold = rank_threshold(tol, lambda_max);
    let rank = eig.eigenvalues.iter().filter(|&&x| x > threshold).count();
    let min_eigenvalue = if herm_dev <= threshold {
        lambda_min
    } else {
        lambda_min.min(-herm_dev)
    };
    Ok(SolvabilityReport {
        solvable: min_eigenvalue >= -threshold,
        min_eigenvalue,
        rank,
        tolerance_used: threshold,
    })
}

/// The canonical single-atom solution for order zero.
///
/// For `d = 0` any non-decreasing function with total mass `S_0` solves the
/// problem; this returns the representative with the whole jump at the start
/// of the circle (stored at angle `2*pi`, the wrapped position of `0+`). A
/// numerically zero `S_0` yields the zero measure.
pub fn order_zero_solution(s0: &CMatrix, tol: f64) -> Result<DiscreteSolution, Error> {
    let n = s0.nrows();
    if s0.ncols() != n {
        return Err(Error::Validation(vec![ValidationIssue::WrongShape {
            index: 0,
            expected: n,
            rows: s0.nrows(),
            cols: s0.ncols(),
        }]));
    }
    let herm_dev = hermitian_deviation(s0);
    let h = hermitize(s0);
    let eig = hermitian_eigen(&h);
    let lambda_max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let lambda_min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let threshold = rank_threshold(tol, lambda_max);
    if herm_dev > threshold {
        return Err(Error::NotHermitian { deviation: herm_dev });
    }
    if lambda_min < -threshold {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: lambda_min,
            tolerance: threshold,
        });
    }
    if max_abs(&h) <= threshold {
        return Ok(DiscreteSolution {
            mat_dim: n,
            atoms: Vec::new(),
        });
    }
    // clamp only when something is actually negative, so exact input passes
    // through unchanged
    let weight = if lambda_min < 0.0 {
        let clamped = CMatrix::from_diagonal(
            &nalgebra::DVector::from_vec(
                eig.eigenvalues
                    .iter()
                    .map(|&x| crate::linalg::C64::new(x.max(0.0), 0.0))
                    .collect(),
            ),
        );
        &eig.eigenvectors * clamped * eig.eigenvectors.adjoint()
    } else {
        h
    };
    Ok(DiscreteSolution {
        mat_dim: n,
        atoms: vec![Atom {
            theta: 2.0 * std::f64::consts::PI,
            weight,
        }],
    })
}
