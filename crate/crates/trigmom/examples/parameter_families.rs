//! The parameter space of solutions: constants, polynomials, samplers.
//!
//! Any analytic contraction between the defect subspaces is admissible,
//! every choice reproduces the truncated moments, and distinct choices
//! give distinct solutions. Run with
//! `cargo run --example parameter_families`.

use std::sync::Arc;

use trigmom::linalg::{hermitian_eigen, hermitize, CMatrix, C64};
use trigmom::solutions::sample_points;
use trigmom::{
    build_isometry, build_toeplitz, compare_solutions, factor_gram, generalized_resolvent,
    make_constant_param, make_polynomial_param, make_sampler_param, taylor_moments,
    validate_moments, DEFAULT_TOL,
};

fn main() -> Result<(), trigmom::Error> {
    let m = validate_moments(
        1,
        1,
        vec![
            CMatrix::from_element(1, 1, C64::new(1.0, 0.0)),
            CMatrix::from_element(1, 1, C64::new(0.0, 0.0)),
        ],
    )?;
    let iso = build_isometry(factor_gram(&build_toeplitz(&m), DEFAULT_TOL)?)?;
    let scalar = |v: f64| CMatrix::from_element(1, 1, C64::new(v, 0.0));

    let constant = make_constant_param(&iso, scalar(0.4))?;
    let polynomial = make_polynomial_param(&iso, vec![scalar(0.0), scalar(1.0)])?;
    let sampler = make_sampler_param(
        &iso,
        Arc::new(|z: C64| CMatrix::from_element(1, 1, (z * z).scale(0.5))),
    )?;
    let params = [
        ("constant 0.4", &constant),
        ("polynomial zeta", &polynomial),
        ("sampler zeta^2/2", &sampler),
    ];

    println!("truncated moments are parameter independent:");
    for (label, p) in &params {
        let series = taylor_moments(&iso, p, 1, 0.5, 1024)?;
        println!(
            "  {label:<18} C_0 = {:.10}, C_1 = {:.3e}",
            series[0][(0, 0)].re,
            series[1][(0, 0)].norm()
        );
    }

    println!("\nHerglotz positivity of Re[2F - S_0] on 50 sample points:");
    for (label, p) in &params {
        let mut min_eig = f64::INFINITY;
        for zeta in sample_points(50) {
            let f = generalized_resolvent(&iso, p, zeta)?;
            let herglotz = &f.mat + f.mat.adjoint() - &m.moments[0];
            let eig = hermitian_eigen(&hermitize(&herglotz));
            min_eig = min_eig.min(eig.eigenvalues.last().copied().unwrap_or(0.0));
        }
        println!("  {label:<18} min eigenvalue {min_eig:.3e}");
    }

    println!("\npairwise resolvent distances (distinct parameters, distinct solutions):");
    for i in 0..params.len() {
        for j in i + 1..params.len() {
            let (la, pa) = params[i];
            let (lb, pb) = params[j];
            let fa = |z: C64| generalized_resolvent(&iso, pa, z).map(|r| r.mat);
            let fb = |z: C64| generalized_resolvent(&iso, pb, z).map(|r| r.mat);
            let dev = compare_solutions(fa, fb, 32)?;
            println!("  {la} vs {lb}: {dev:.3e}");
        }
    }
    Ok(())
}
