//! The shift isometry of the coordinate model and its defect subspaces.
//!
//! The operator sends `x_k` to `x_{k+N}` on the span of the first `dN`
//! generators. Shift invariance of the Gram matrix makes this well defined
//! and norm preserving; the two defect subspaces (orthogonal complements of
//! domain and range) have equal dimension and parameterize the extensions.

use crate::error::Error;
use crate::gram::{CoordinateSpace, Subspace};
use crate::linalg::{CMatrix, CVector, C64};
use crate::moments::DEFAULT_TOL;

/// Matrix realization of the generator shift.
///
/// `mat` acts as the shift on the domain subspace and as zero on its
/// orthogonal complement; every consumer composes it with the domain
/// projector, so the zero extension is a storage convention only. The
/// defect bases are produced by a deterministic Gram-Schmidt pipeline,
/// which keeps parameter matrices reproducible across runs.
#[derive(Debug, Clone)]
pub struct ShiftIsometry {
    pub space: CoordinateSpace,
    /// Span of the first `dN` generators.
    pub domain: Subspace,
    /// Span of the last `dN` generators.
    pub range: Subspace,
    /// `dim x dim` matrix acting as the shift on `domain`.
    pub mat: CMatrix,
    /// Orthogonal complement of the domain.
    pub defect_domain: Subspace,
    /// Orthogonal complement of the range.
    pub defect_range: Subspace,
}

impl ShiftIsometry {
    /// Common dimension of the two defect subspaces.
    pub fn defect_dim(&self) -> usize {
        self.defect_domain.dim()
    }
}

/// Builds the shift isometry from a factored coordinate space.
///
/// The matrix is the least-squares solution of `A * [x_0..x_{dN-1}] =
/// [x_N..x_{(d+1)N-1}]`; the consistency of that system is exactly the
/// Gram shift invariance and is verified numerically.
pub fn build_isometry(space: CoordinateSpace) -> Result<ShiftIsometry, Error> {
    if space.order < 1 {
        return Err(Error::Knob {
            name: "order",
            message: "the operator pipeline requires d >= 1".to_string(),
        });
    }
    let r = space.dim;
    let n = space.mat_dim;
    let dn = space.order * n;

    let domain = space.span(&(0..dn).collect::<Vec<_>>());
    let range = space.span(&(n..dn + n).collect::<Vec<_>>());
    if domain.dim() != range.dim() {
        return Err(Error::InconsistentGram {
            residual: (domain.dim() as f64 - range.dim() as f64).abs(),
        });
    }

    let mat = if r == 0 {
        CMatrix::zeros(0, 0)
    } else {
        let x_dom = space.coords.columns(0, dn).into_owned();
        let x_ran = space.coords.columns(n, dn).into_owned();
        let svd = x_dom.clone().svd(true, true);
        let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let pinv = svd
            .pseudo_inverse(1e-12 * sigma_max.max(f64::MIN_POSITIVE))
            .map_err(|e| Error::Internal(format!("pseudo-inverse failed: {e}")))?;
        let mat = &x_ran * pinv;

        let col_scale = (0..space.generators())
            .map(|k| space.coords.column(k).norm())
            .fold(1.0, f64::max);
        let residual = (0..dn)
            .map(|k| (&mat * space.coords.column(k) - space.coords.column(k + n)).norm())
            .fold(0.0, f64::max)
            / col_scale;
        if residual > DEFAULT_TOL {
            return Err(Error::InconsistentGram { residual });
        }
        mat
    };

    let defect_domain = domain.orthogonal_complement();
    let defect_range = range.orthogonal_complement();
    Ok(ShiftIsometry {
        space,
        domain,
        range,
        mat,
        defect_domain,
        defect_range,
    })
}

impl ShiftIsometry {
    /// Max residual of the power relation `x_{rN+l} = A^r x_l`.
    pub fn power_consistency_residual(&self) -> f64 {
        let n = self.space.mat_dim;
        let mut worst = 0.0f64;
        for l in 0..n {
            let mut v = self.space.coord(l);
            for step in 0..=self.space.order {
                worst = worst.max((&v - self.space.coord(step * n + l)).norm());
                if step < self.space.order {
                    v = &self.mat * v;
                }
            }
        }
        worst
    }

    /// Splits `x = sum alpha_k x_k` as `x = v + y` with `v` in the image of
    /// `I - zeta A` and `y` in the span of the first `N` generators.
    ///
    /// The coefficients are produced by a backward recursion seeded at the
    /// top block; `v = (I - zeta A) u` with `u = sum c_k x_k`, and `y` is
    /// the remainder, which lands in the first-window span.
    pub fn zeta_split(&self, alpha: &[C64], zeta: C64) -> Result<ZetaDecomposition, Error> {
        let n = self.space.mat_dim;
        let dn = self.space.order * n;
        let total = dn + n;
        if alpha.len() != total {
            return Err(Error::Knob {
                name: "alpha",
                message: format!("expected {total} coefficients, got {}", alpha.len()),
            });
        }
        let modulus = zeta.norm();
        if modulus == 0.0 || (modulus - 1.0).abs() < 1e-12 {
            return Err(Error::ZetaOutOfRange {
                zeta,
                constraint: "need zeta != 0 and |zeta| != 1",
            });
        }

        let inv = C64::new(1.0, 0.0) / zeta;
        let mut coeffs = vec![C64::new(0.0, 0.0); dn];
        for r in (dn - n..dn).rev() {
            coeffs[r] = -inv * alpha[r + n];
        }
        for r in (0..dn - n).rev() {
            coeffs[r] = inv * (coeffs[r + n] - alpha[r + n]);
        }

        let u = self.space.combine(&coeffs);
        let v = &u - (&self.mat * &u) * zeta;
        let x = self.space.combine(alpha);
        let y = &x - &v;
        Ok(ZetaDecomposition {
            zeta,
            coeffs,
            v,
            y,
        })
    }
}

/// Result of the `x = v + y` splitting at a fixed `zeta`.
#[derive(Debug, Clone)]
pub struct ZetaDecomposition {
    pub zeta: C64,
    /// Coefficients `c_0..c_{dN-1}` of `u` in the generator basis.
    pub coeffs: Vec<C64>,
    /// Component in `(I - zeta A) D(A)`, as a coordinate vector.
    pub v: CVector,
    /// Component in the first-window span, as a coordinate vector.
    pub y: CVector,
}
