//! Explicit solutions: atomic measures from unitary parameters, gridded
//! distribution functions from Poisson inversion, and verification against
//! the moment data.

use std::f64::consts::TAU;

use crate::error::Error;
use crate::extension::{extension_operator, make_constant_param};
use crate::isometry::ShiftIsometry;
use crate::linalg::{
    hermitian_eigen, hermitize, identity, max_abs, spectral_norm, unitary_eigen, CMatrix, C64,
};
use crate::moments::MomentSequence;

/// Angle separation below which eigenvalues are treated as one atom.
const ANGLE_MERGE_TOL: f64 = 1e-8;

/// One jump of an atomic solution: position on the circle and its matrix
/// weight.
#[derive(Debug, Clone)]
pub struct Atom {
    /// Position in `(0, 2*pi]`; an eigenvalue at angle zero is stored at
    /// `2*pi`, the wrapped position of `0+`, so that the encoded function
    /// `M(t) = sum_{theta < t} W` is left-continuous with `M(0) = 0`.
    pub theta: f64,
    /// Hermitian positive semidefinite weight.
    pub weight: CMatrix,
}

/// Finite atomic solution of the moment problem.
#[derive(Debug, Clone)]
pub struct DiscreteSolution {
    pub mat_dim: usize,
    /// Atoms with strictly increasing angles.
    pub atoms: Vec<Atom>,
}

impl DiscreteSolution {
    /// Trigonometric moment `sum_p e^{i n theta_p} W_p`.
    pub fn moment(&self, n: i64) -> CMatrix {
        let mut acc = CMatrix::zeros(self.mat_dim, self.mat_dim);
        for atom in &self.atoms {
            acc += &atom.weight * C64::from_polar(1.0, n as f64 * atom.theta);
        }
        acc
    }

    /// Total mass `sum_p W_p`; equals `S_0` for a valid solution.
    pub fn total_mass(&self) -> CMatrix {
        self.moment(0)
    }

    /// Value of the left-continuous distribution function at `t`.
    pub fn cumulative(&self, t: f64) -> CMatrix {
        let mut acc = CMatrix::zeros(self.mat_dim, self.mat_dim);
        for atom in &self.atoms {
            if atom.theta < t {
                acc += &atom.weight;
            }
        }
        acc
    }
}

/// Builds the canonical atomic solution selected by a constant unitary
/// parameter.
///
/// The extension operator is then unitary on the coordinate space itself;
/// its spectral decomposition yields atoms at the eigenvalue angles with
/// weights `W[k, j] = inner(P x_k, x_j)` from the eigenprojectors.
/// Eigenvalues closer than the merge tolerance are clustered before the
/// weights are accumulated, and the weights are Hermitized with slightly
/// negative eigenvalues clamped to zero.
pub fn canonical_solution(iso: &ShiftIsometry, unitary: &CMatrix) -> Result<DiscreteSolution, Error> {
    let delta = iso.defect_dim();
    if unitary.nrows() != delta || unitary.ncols() != delta {
        return Err(Error::DefectMismatch {
            expected: delta,
            got: unitary.nrows().max(unitary.ncols()),
        });
    }
    let unitary_dev = max_abs(&(unitary.adjoint() * unitary - identity(delta)));
    if unitary_dev > 1e-10 {
        return Err(Error::NotUnitary {
            deviation: unitary_dev,
        });
    }
    let n = iso.space.mat_dim;
    let r = iso.space.dim;
    if r == 0 {
        return Ok(DiscreteSolution {
            mat_dim: n,
            atoms: Vec::new(),
        });
    }

    let param = make_constant_param(iso, unitary.clone())?;
    let op = extension_operator(iso, &param, C64::new(0.0, 0.0));
    let op_dev = max_abs(&(op.adjoint() * &op - identity(r)));
    if op_dev > 1e-8 {
        return Err(Error::Internal(format!(
            "extension operator is not unitary (deviation {op_dev:.3e}); defect bases inconsistent"
        )));
    }
    let (values, vectors) = unitary_eigen(&op, 1e-7)?;

    // sort eigenpairs by angle in (0, 2*pi]
    let mut order: Vec<usize> = (0..r).collect();
    let angle_of = |z: &C64| -> f64 {
        let a = z.arg();
        if a <= 0.0 {
            a + TAU
        } else {
            a
        }
    };
    order.sort_by(|&a, &b| angle_of(&values[a]).partial_cmp(&angle_of(&values[b])).unwrap());

    // single-linkage clustering on the sorted angles
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &idx in &order {
        let theta = angle_of(&values[idx]);
        let merged = match clusters.last_mut() {
            Some(cluster)
                if theta - angle_of(&values[*cluster.last().unwrap()]) < ANGLE_MERGE_TOL =>
            {
                cluster.push(idx);
                true
            }
            _ => false,
        };
        if !merged {
            clusters.push(vec![idx]);
        }
    }
    // wraparound: angles just above 0 and just below 2*pi are neighbours on
    // the circle
    if clusters.len() > 1 {
        let first_lo = angle_of(&values[clusters[0][0]]);
        let last_hi = angle_of(&values[*clusters.last().unwrap().last().unwrap()]);
        if first_lo + TAU - last_hi < ANGLE_MERGE_TOL {
            let first = clusters.remove(0);
            clusters.last_mut().unwrap().extend(first);
        }
    }

    let window = iso.space.coords.columns(0, n).into_owned();
    let mass_scale = spectral_norm(&crate::extension::gram_corner(iso)).max(1.0);
    let mut atoms = Vec::new();
    for cluster in clusters {
        // representative angle from the mean eigenvalue direction
        let mean: C64 = cluster.iter().map(|&i| values[i]).sum();
        let theta = angle_of(&mean);
        // weight = transpose of (Q_c^H X_N)^H (Q_c^H X_N)
        let mut block = CMatrix::zeros(r, cluster.len());
        for (pos, &i) in cluster.iter().enumerate() {
            block.set_column(pos, &vectors.column(i));
        }
        let b = block.adjoint() * &window;
        let weight = clamp_weight((b.adjoint() * b).transpose(), mass_scale)?;
        if spectral_norm(&weight) > 1e-12 * mass_scale {
            atoms.push(Atom { theta, weight });
        }
    }
    atoms.sort_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap());
    Ok(DiscreteSolution { mat_dim: n, atoms })
}

/// Hermitizes a weight and clamps eigenvalues in `(-tol, 0)`; anything more
/// negative is an internal failure.
fn clamp_weight(w: CMatrix, mass_scale: f64) -> Result<CMatrix, Error> {
    let h = hermitize(&w);
    let eig = hermitian_eigen(&h);
    let lambda_min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let tol = 1e-10 * mass_scale;
    if lambda_min < -tol {
        return Err(Error::Internal(format!(
            "solution weight has eigenvalue {lambda_min:.3e} below -{tol:.3e}"
        )));
    }
    if lambda_min >= 0.0 {
        return Ok(h);
    }
    let clamped = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(
        eig.eigenvalues
            .iter()
            .map(|&x| C64::new(x.max(0.0), 0.0))
            .collect(),
    ));
    Ok(&eig.eigenvectors * clamped * eig.eigenvectors.adjoint())
}

/// Gridded distribution function recovered by Poisson smoothing.
#[derive(Debug, Clone)]
pub struct GridDistribution {
    pub mat_dim: usize,
    /// Poisson radius the resolvent was sampled at.
    pub radius: f64,
    /// Uniform grid on `[0, 2*pi]`, including both endpoints.
    pub thetas: Vec<f64>,
    /// Cumulative matrices `M(theta_i)`, starting at zero.
    pub cumulative: Vec<CMatrix>,
}

impl GridDistribution {
    /// Trigonometric moment by trapezoid Stieltjes quadrature against the
    /// grid increments.
    pub fn moment(&self, n: i64) -> CMatrix {
        let mut acc = CMatrix::zeros(self.mat_dim, self.mat_dim);
        for i in 0..self.thetas.len().saturating_sub(1) {
            let inc = &self.cumulative[i + 1] - &self.cumulative[i];
            let kernel = (C64::from_polar(1.0, n as f64 * self.thetas[i])
                + C64::from_polar(1.0, n as f64 * self.thetas[i + 1]))
                .scale(0.5);
            acc += inc * kernel;
        }
        acc
    }
}

/// Recovers a distribution function from a resolvent sampler by integrating
/// the matrix Poisson average `F(r e^{-i theta}) + F^H - S_0` over the grid.
///
/// As the radius tends to one the cumulative converges weakly to the
/// solution selected by the sampler; atoms show up as steep steps of the
/// corresponding mass (an atom at the seam splits between the two grid
/// ends). Atom extraction from the grid is out of scope.
pub fn poisson_invert<F>(
    sampler: F,
    s0: &CMatrix,
    radius: f64,
    grid: usize,
) -> Result<GridDistribution, Error>
where
    F: Fn(C64) -> Result<CMatrix, Error>,
{
    if !(radius > 0.0 && radius < 1.0) {
        return Err(Error::Knob {
            name: "r",
            message: format!("need 0 < r < 1, got {radius}"),
        });
    }
    if grid < 256 {
        return Err(Error::Knob {
            name: "grid",
            message: format!("need at least 256 grid points, got {grid}"),
        });
    }
    let n = s0.nrows();
    let mut densities = Vec::with_capacity(grid + 1);
    for g in 0..grid {
        let theta = TAU * g as f64 / grid as f64;
        let f = sampler(C64::from_polar(radius, -theta))?;
        densities.push(&f + f.adjoint() - s0);
    }
    densities.push(densities[0].clone());

    let step = TAU / grid as f64;
    let mut thetas = Vec::with_capacity(grid + 1);
    let mut cumulative = Vec::with_capacity(grid + 1);
    let mut acc = CMatrix::zeros(n, n);
    thetas.push(0.0);
    cumulative.push(acc.clone());
    for i in 0..grid {
        let trapezoid = (&densities[i] + &densities[i + 1]).scale(0.5 * step / TAU);
        acc += trapezoid;
        thetas.push(step * (i + 1) as f64);
        cumulative.push(acc.clone());
    }
    Ok(GridDistribution {
        mat_dim: n,
        radius,
        thetas,
        cumulative,
    })
}

/// Residuals of a candidate solution against the moment data.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// Residual `||moment_n(solution) - S_n||` for each `n = 0..=d`.
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Either kind of produced solution.
#[derive(Debug, Clone)]
pub enum SolutionData {
    Atomic(DiscreteSolution),
    Grid(GridDistribution),
}

/// Checks a solution against the defining moment equations by direct
/// evaluation: exact sums for atomic solutions, trapezoid quadrature for
/// grids.
pub fn verify_solution(
    solution: &SolutionData,
    data: &MomentSequence,
    tolerance: f64,
) -> VerificationReport {
    let residuals: Vec<f64> = (0..=data.order as i64)
        .map(|n| {
            let got = match solution {
                SolutionData::Atomic(s) => s.moment(n),
                SolutionData::Grid(g) => g.moment(n),
            };
            spectral_norm(&(got - data.moment(n)))
        })
        .collect();
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    VerificationReport {
        residuals,
        max_residual,
        tolerance,
        pass: max_residual <= tolerance,
    }
}

/// Max deviation between two resolvent samplers over a fixed deterministic
/// low-discrepancy set of points in `|zeta| <= 0.9`.
pub fn compare_solutions<F1, F2>(f1: F1, f2: F2, samples: usize) -> Result<f64, Error>
where
    F1: Fn(C64) -> Result<CMatrix, Error>,
    F2: Fn(C64) -> Result<CMatrix, Error>,
{
    let mut worst = 0.0f64;
    for zeta in sample_points(samples) {
        let a = f1(zeta)?;
        let b = f2(zeta)?;
        worst = worst.max(spectral_norm(&(a - b)));
    }
    Ok(worst)
}

/// Golden-angle spiral filling the disk of radius 0.9.
pub fn sample_points(count: usize) -> Vec<C64> {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    (0..count)
        .map(|j| {
            let radius = 0.9 * ((j as f64 + 0.5) / count as f64).sqrt();
            C64::from_polar(radius, TAU * golden * j as f64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gram::factor_gram;
    use crate::isometry::build_isometry;
    use crate::moments::{build_toeplitz, validate_moments, DEFAULT_TOL};
    use std::f64::consts::PI;

    fn scalar_instance(s0: (f64, f64), s1: (f64, f64)) -> (MomentSequence, ShiftIsometry) {
        let to_mat = |v: (f64, f64)| CMatrix::from_element(1, 1, C64::new(v.0, v.1));
        let m = validate_moments(1, 1, vec![to_mat(s0), to_mat(s1)]).unwrap();
        let space = factor_gram(&build_toeplitz(&m), DEFAULT_TOL).unwrap();
        let iso = build_isometry(space).unwrap();
        (m, iso)
    }

    fn unit(v: (f64, f64)) -> CMatrix {
        CMatrix::from_element(1, 1, C64::new(v.0, v.1))
    }

    #[test]
    fn canonical_atoms_identity_parameter() {
        let (m, iso) = scalar_instance((1.0, 0.0), (0.0, 0.0));
        let sol = canonical_solution(&iso, &unit((1.0, 0.0))).unwrap();
        assert_eq!(sol.atoms.len(), 2);
        assert!((sol.atoms[0].theta - PI).abs() < 1e-9);
        assert!((sol.atoms[1].theta - TAU).abs() < 1e-9);
        for atom in &sol.atoms {
            assert!((atom.weight[(0, 0)] - C64::new(0.5, 0.0)).norm() < 1e-10);
        }
        let report = verify_solution(&SolutionData::Atomic(sol), &m, 1e-8);
        assert!(report.pass);
    }

    #[test]
    fn canonical_atoms_negated_parameter() {
        let (m, iso) = scalar_instance((1.0, 0.0), (0.0, 0.0));
        let sol = canonical_solution(&iso, &unit((-1.0, 0.0))).unwrap();
        assert_eq!(sol.atoms.len(), 2);
        assert!((sol.atoms[0].theta - PI / 2.0).abs() < 1e-9);
        assert!((sol.atoms[1].theta - 3.0 * PI / 2.0).abs() < 1e-9);
        let report = verify_solution(&SolutionData::Atomic(sol), &m, 1e-8);
        assert!(report.pass);
    }

    #[test]
    fn canonical_unique_solution_single_atom() {
        let (m, iso) = scalar_instance((1.0, 0.0), (0.0, 1.0));
        let sol = canonical_solution(&iso, &CMatrix::zeros(0, 0)).unwrap();
        assert_eq!(sol.atoms.len(), 1);
        assert!((sol.atoms[0].theta - PI / 2.0).abs() < 1e-9);
        assert!((sol.atoms[0].weight[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-10);
        let report = verify_solution(&SolutionData::Atomic(sol), &m, 1e-8);
        assert!(report.pass);
    }

    #[test]
    fn canonical_rejects_wrong_parameter() {
        let (_, iso) = scalar_instance((1.0, 0.0), (0.0, 0.0));
        assert!(matches!(
            canonical_solution(&iso, &CMatrix::identity(2, 2)),
            Err(Error::DefectMismatch {
                expected: 1,
                got: 2
            })
        ));
        assert!(matches!(
            canonical_solution(&iso, &unit((0.5, 0.0))),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn cumulative_is_left_continuous() {
        let (_, iso) = scalar_instance((1.0, 0.0), (0.0, 0.0));
        let sol = canonical_solution(&iso, &unit((1.0, 0.0))).unwrap();
        // atoms at pi and 2*pi: the jump at an atom is not yet included at
        // the atom itself
        assert!(sol.cumulative(0.0)[(0, 0)].norm() < 1e-12);
        assert!(sol.cumulative(PI)[(0, 0)].norm() < 1e-12);
        assert!((sol.cumulative(PI + 1e-9)[(0, 0)].re - 0.5).abs() < 1e-9);
        assert!((sol.cumulative(TAU)[(0, 0)].re - 0.5).abs() < 1e-9);
        // total mass lives in the measure, beyond the last function value
        assert!((sol.total_mass()[(0, 0)].re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn perturbed_weight_fails_verification() {
        let (m, iso) = scalar_instance((1.0, 0.0), (0.0, 0.0));
        let mut sol = canonical_solution(&iso, &unit((1.0, 0.0))).unwrap();
        sol.atoms[0].weight[(0, 0)] += C64::new(0.1, 0.0);
        let report = verify_solution(&SolutionData::Atomic(sol), &m, 1e-8);
        assert!(!report.pass);
        assert!((report.residuals[0] - 0.1).abs() < 1e-9);
    }

    #[test]
    fn trivial_order_zero_solution_verifies_exactly() {
        let s0 = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 0.0),
                C64::new(0.25, 0.5),
                C64::new(0.25, -0.5),
                C64::new(2.0, 0.0),
            ],
        );
        let m = validate_moments(2, 0, vec![s0.clone()]).unwrap();
        let sol = crate::moments::order_zero_solution(&s0, DEFAULT_TOL).unwrap();
        let report = verify_solution(&SolutionData::Atomic(sol), &m, 1e-15);
        assert!(report.pass);
        assert_eq!(report.max_residual, 0.0);
    }

    #[test]
    fn zero_measure_inversion_is_zero() {
        let s0 = CMatrix::zeros(1, 1);
        let grid = poisson_invert(|_| Ok(CMatrix::zeros(1, 1)), &s0, 0.9, 256).unwrap();
        for m in &grid.cumulative {
            assert!(max_abs(m) == 0.0);
        }
    }

    #[test]
    fn poisson_knob_validation() {
        let s0 = CMatrix::zeros(1, 1);
        assert!(poisson_invert(|_| Ok(CMatrix::zeros(1, 1)), &s0, 1.5, 256).is_err());
        assert!(poisson_invert(|_| Ok(CMatrix::zeros(1, 1)), &s0, 0.9, 100).is_err());
    }

    #[test]
    fn compare_identical_samplers() {
        let (_, iso) = scalar_instance((1.0, 0.0), (0.0, 0.0));
        let p = make_constant_param(&iso, unit((1.0, 0.0))).unwrap();
        let f1 = |z: C64| crate::extension::generalized_resolvent(&iso, &p, z).map(|r| r.mat);
        let dev = compare_solutions(f1, f1, 32).unwrap();
        assert!(dev < 1e-12);
    }

    #[test]
    fn compare_distinct_parameters() {
        let (_, iso) = scalar_instance((1.0, 0.0), (0.0, 0.0));
        let p1 = make_constant_param(&iso, unit((1.0, 0.0))).unwrap();
        let p2 = make_constant_param(&iso, unit((-1.0, 0.0))).unwrap();
        let f1 = |z: C64| crate::extension::generalized_resolvent(&iso, &p1, z).map(|r| r.mat);
        let f2 = |z: C64| crate::extension::generalized_resolvent(&iso, &p2, z).map(|r| r.mat);
        let dev = compare_solutions(f1, f2, 32).unwrap();
        assert!(dev > 0.5);
    }

    #[test]
    fn compare_forced_unique_solution() {
        let (_, iso) = scalar_instance((1.0, 0.0), (0.0, 1.0));
        let p1 = make_constant_param(&iso, CMatrix::zeros(0, 0)).unwrap();
        let p2 = make_constant_param(&iso, CMatrix::zeros(0, 0)).unwrap();
        let f1 = |z: C64| crate::extension::generalized_resolvent(&iso, &p1, z).map(|r| r.mat);
        let f2 = |z: C64| crate::extension::generalized_resolvent(&iso, &p2, z).map(|r| r.mat);
        let dev = compare_solutions(f1, f2, 32).unwrap();
        assert!(dev < 1e-12);
    }
}
