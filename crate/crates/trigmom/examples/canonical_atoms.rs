//! Canonical atomic solutions from constant unitary parameters.
//!
//! Every unitary matrix between the defect subspaces selects one finite
//! atomic solution; different unitaries give genuinely different measures
//! with the same truncated moments. Run with
//! `cargo run --example canonical_atoms`.

use trigmom::linalg::{CMatrix, C64};
use trigmom::{
    build_isometry, build_toeplitz, canonical_solution, factor_gram, validate_moments,
    verify_solution, SolutionData, DEFAULT_TOL,
};

fn main() -> Result<(), trigmom::Error> {
    // scalar data S_0 = 1, S_1 = 0: total mass one, first moment zero
    let m = validate_moments(
        1,
        1,
        vec![
            CMatrix::from_element(1, 1, C64::new(1.0, 0.0)),
            CMatrix::from_element(1, 1, C64::new(0.0, 0.0)),
        ],
    )?;
    let space = factor_gram(&build_toeplitz(&m), DEFAULT_TOL)?;
    let iso = build_isometry(space)?;
    println!("space dimension = {}, defect dimension = {}", iso.space.dim, iso.defect_dim());

    for (label, phase) in [
        ("identity parameter", C64::new(1.0, 0.0)),
        ("negated parameter", C64::new(-1.0, 0.0)),
        ("rotated parameter", C64::from_polar(1.0, 1.0)),
    ] {
        let sol = canonical_solution(&iso, &CMatrix::from_element(1, 1, phase))?;
        println!("\n{label}:");
        for atom in &sol.atoms {
            println!(
                "  atom at theta = {:.6} with weight {:.6}",
                atom.theta,
                atom.weight[(0, 0)].re
            );
        }
        let report = verify_solution(&SolutionData::Atomic(sol), &m, 1e-8);
        println!(
            "  verification: max residual {:.3e} (pass = {})",
            report.max_residual, report.pass
        );
    }
    Ok(())
}
