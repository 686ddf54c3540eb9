//! Decide whether moment data admits a solution.
//!
//! The gate is positive semidefiniteness of the block Toeplitz matrix of
//! the moments. Run with `cargo run --example solvability_gate`.

use trigmom::linalg::{CMatrix, C64};
use trigmom::{build_toeplitz, check_solvable, validate_moments, DEFAULT_TOL};

fn main() -> Result<(), trigmom::Error> {
    // a genuine moment sequence: S_0 = I, S_1 = 0 for 2x2 matrices
    let solvable = validate_moments(2, 1, vec![CMatrix::identity(2, 2), CMatrix::zeros(2, 2)])?;
    // and data that no measure can produce: |S_1| exceeds the mass S_0
    let impossible = validate_moments(
        1,
        1,
        vec![
            CMatrix::from_element(1, 1, C64::new(1.0, 0.0)),
            CMatrix::from_element(1, 1, C64::new(2.0, 0.0)),
        ],
    )?;

    for (label, m) in [("identity data", &solvable), ("overweight S_1", &impossible)] {
        let t = build_toeplitz(m);
        let report = check_solvable(&t, DEFAULT_TOL)?;
        println!(
            "{label}: solvable = {}, rank = {}/{}, min eigenvalue = {:.3e}",
            report.solvable,
            report.rank,
            t.size(),
            report.min_eigenvalue
        );
    }
    Ok(())
}
