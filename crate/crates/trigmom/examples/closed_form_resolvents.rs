//! Resolvent values against their closed forms on the reference models.
//!
//! On the scalar model with parameter `c` the resolvent is
//! `1 / (1 - c zeta^2)`; on the rank-one model it is forced to
//! `1 / (1 - i zeta)`. The reflection `F(1/conj(zeta)) = S_0 - F(zeta)^H`
//! continues the function outside the disk. Run with
//! `cargo run --example closed_form_resolvents`.

use trigmom::linalg::{CMatrix, C64};
use trigmom::{
    build_isometry, build_toeplitz, factor_gram, generalized_resolvent, make_constant_param,
    resolvent_outside_disk, validate_moments, DEFAULT_TOL,
};

fn scalar_pipeline(s1: C64) -> Result<trigmom::ShiftIsometry, trigmom::Error> {
    let m = validate_moments(
        1,
        1,
        vec![
            CMatrix::from_element(1, 1, C64::new(1.0, 0.0)),
            CMatrix::from_element(1, 1, s1),
        ],
    )?;
    build_isometry(factor_gram(&build_toeplitz(&m), DEFAULT_TOL)?)
}

fn main() -> Result<(), trigmom::Error> {
    let one = C64::new(1.0, 0.0);

    let iso = scalar_pipeline(C64::new(0.0, 0.0))?;
    let c = C64::new(0.6, 0.3);
    let param = make_constant_param(&iso, CMatrix::from_element(1, 1, c))?;
    println!("scalar model, parameter c = {c}:");
    for zeta in [C64::new(0.5, 0.0), C64::new(-0.2, 0.7), C64::new(0.3, -0.4)] {
        let f = generalized_resolvent(&iso, &param, zeta)?;
        let closed = one / (one - c * zeta * zeta);
        println!(
            "  F({zeta}) = {:.12}  closed form {:.12}  |diff| = {:.3e}",
            f.mat[(0, 0)],
            closed,
            (f.mat[(0, 0)] - closed).norm()
        );
    }
    // outside the disk the reflection formula gives -conj(c)/(zeta^2 - conj(c));
    // it coincides with the naive continuation of 1/(1 - c zeta^2) only for
    // unimodular c
    let zeta = C64::new(2.0, 0.5);
    let outside = resolvent_outside_disk(&iso, &param, zeta)?;
    let closed = -c.conj() / (zeta * zeta - c.conj());
    println!(
        "  reflection F({zeta}) = {:.12}  closed form {:.12}  |diff| = {:.3e}",
        outside.mat[(0, 0)],
        closed,
        (outside.mat[(0, 0)] - closed).norm()
    );

    // the rank-one model has no parameter freedom at all
    let iso = scalar_pipeline(C64::new(0.0, 1.0))?;
    let empty = make_constant_param(&iso, CMatrix::zeros(0, 0))?;
    let i = C64::new(0.0, 1.0);
    println!("\nrank-one model (unique solution, defect dimension 0):");
    for zeta in [C64::new(0.4, 0.0), C64::new(0.1, 0.6)] {
        let f = generalized_resolvent(&iso, &empty, zeta)?;
        let closed = one / (one - i * zeta);
        println!(
            "  F({zeta}) = {:.12}  closed form {:.12}  |diff| = {:.3e}",
            f.mat[(0, 0)],
            closed,
            (f.mat[(0, 0)] - closed).norm()
        );
    }
    Ok(())
}
