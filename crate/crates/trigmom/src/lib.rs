//! Solver for the truncated matrix trigonometric moment problem.
//!
//! Given complex `N x N` moment matrices `S_0..S_d`, the crate decides
//! whether a non-decreasing matrix function `M(t)` on `[0, 2*pi]` with
//! `int e^{int} dM(t) = S_n` exists, and produces such solutions
//! explicitly. Solvability is equivalent to positive semidefiniteness of
//! the block Toeplitz matrix of the moments; from its rank-revealing
//! factorization the crate builds a coordinate model of the underlying
//! Hilbert space, the shift isometry on it, and the bijective
//! parameterization of all solutions by contraction-valued analytic
//! functions between the defect subspaces:
//!
//! * constant unitary parameters produce canonical finite atomic solutions
//!   through the spectral decomposition of the extended operator;
//! * general contraction parameters produce generalized resolvents, from
//!   which extended moments (contour integration) and distribution
//!   functions (Poisson inversion) are recovered.
//!
//! Start with [`moments::validate_moments`] and follow the pipeline
//! `build_toeplitz -> check_solvable -> factor_gram -> build_isometry`;
//! the `examples/` directory walks through every capability.

pub mod cli;
pub mod error;
pub mod extension;
pub mod gram;
pub mod io;
pub mod isometry;
pub mod linalg;
pub mod moments;
pub mod solutions;

pub use error::Error;
pub use extension::{
    extension_operator, generalized_resolvent, make_constant_param, make_polynomial_param,
    make_sampler_param, resolvent, resolvent_outside_disk, taylor_moments, ExtensionParam,
    ResolventValue,
};
pub use gram::{factor_gram, CoordinateSpace, Subspace};
pub use isometry::{build_isometry, ShiftIsometry, ZetaDecomposition};
pub use linalg::{C64, CMatrix, CVector};
pub use moments::{
    build_toeplitz, check_solvable, order_zero_solution, validate_moments, BlockToeplitz,
    MomentSequence, SolvabilityReport, DEFAULT_TOL,
};
pub use solutions::{
    canonical_solution, compare_solutions, poisson_invert, verify_solution, Atom,
    DiscreteSolution, GridDistribution, SolutionData, VerificationReport,
};
