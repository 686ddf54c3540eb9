//! Shared test helpers: the brute-force oracle and random instance
//! generators. The oracle computes moments of a finite atomic measure
//! directly from the defining sums and stays independent of the solver
//! pipeline it is used to check.

// each integration test binary links this module and uses its own subset
#![allow(dead_code)]

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use trigmom::linalg::{spectral_norm, CMatrix, C64};
use trigmom::{
    build_isometry, build_toeplitz, factor_gram, validate_moments, MomentSequence, ShiftIsometry,
    DEFAULT_TOL,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Brute-force moment oracle: `S_n = sum_p e^{i n theta_p} W_p`.
pub fn oracle_moments(mat_dim: usize, order: usize, atoms: &[(f64, CMatrix)]) -> Vec<CMatrix> {
    (0..=order as i64)
        .map(|n| {
            let mut acc = CMatrix::zeros(mat_dim, mat_dim);
            for (theta, w) in atoms {
                acc += w * C64::from_polar(1.0, n as f64 * theta);
            }
            acc
        })
        .collect()
}

pub fn random_gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Random PSD matrix of rank at most `rank`.
pub fn random_psd(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> CMatrix {
    let g = random_gaussian(rng, dim, rank.max(1));
    &g * g.adjoint()
}

/// Random unitary matrix from the QR factorization of a Gaussian sample.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> CMatrix {
    if dim == 0 {
        return CMatrix::zeros(0, 0);
    }
    let g = random_gaussian(rng, dim, dim);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    // fix column phases so the sample does not favour any half-space
    for j in 0..dim {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Random strict contraction with the given spectral norm bound.
pub fn random_contraction(rng: &mut ChaCha8Rng, dim: usize, bound: f64) -> CMatrix {
    if dim == 0 {
        return CMatrix::zeros(0, 0);
    }
    let g = random_gaussian(rng, dim, dim);
    let sigma = spectral_norm(&g);
    if sigma == 0.0 {
        return g;
    }
    let target: f64 = rng.random_range(0.0..bound);
    g * C64::new(target / sigma, 0.0)
}

/// A random atomic measure together with its oracle moments.
pub struct OracleInstance {
    pub atoms: Vec<(f64, CMatrix)>,
    pub moments: MomentSequence,
}

/// Random measure with `atom_count` atoms at distinct angles in `(0, 2*pi]`
/// and PSD weights of random rank.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    mat_dim: usize,
    order: usize,
    atom_count: usize,
) -> OracleInstance {
    let mut thetas: Vec<f64> = (0..atom_count)
        .map(|_| {
            let t: f64 = rng.random_range(0.0..1.0);
            (1.0 - t) * TAU // lands in (0, 2*pi]
        })
        .collect();
    thetas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    thetas.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let count = atom_count.max(1) as f64;
    let atoms: Vec<(f64, CMatrix)> = thetas
        .into_iter()
        .map(|theta| {
            let rank = rng.random_range(1..=mat_dim);
            // normalized so the total mass stays O(1) regardless of atom count
            (theta, random_psd(rng, mat_dim, rank) / C64::new(count, 0.0))
        })
        .collect();
    let moments = validate_moments(mat_dim, order, oracle_moments(mat_dim, order, &atoms))
        .expect("oracle moments are well-formed");
    OracleInstance { atoms, moments }
}

/// Full pipeline shortcut used all over the integration tests.
pub fn isometry_of(m: &MomentSequence) -> ShiftIsometry {
    let space = factor_gram(&build_toeplitz(m), DEFAULT_TOL).expect("oracle data is PSD");
    build_isometry(space).expect("oracle data is shift consistent")
}

/// Scalar two-moment instance `(S_0, S_1)`, the workhorse model.
pub fn scalar_instance(s0: C64, s1: C64) -> MomentSequence {
    let to_mat = |v: C64| CMatrix::from_element(1, 1, v);
    validate_moments(1, 1, vec![to_mat(s0), to_mat(s1)]).unwrap()
}

pub fn max_mat_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    spectral_norm(&(a - b))
}
