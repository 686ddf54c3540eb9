//! The constructive decomposition behind the uniqueness argument.
//!
//! For any vector `x` of the model space and any admissible `zeta`, a
//! backward coefficient recursion splits `x = v + y` where `v` lies in
//! the image of `I - zeta A` and `y` in the span of the first `N`
//! generators. Run with `cargo run --example window_splitting`.

use trigmom::linalg::{CMatrix, C64};
use trigmom::{build_isometry, build_toeplitz, factor_gram, validate_moments, DEFAULT_TOL};

fn main() -> Result<(), trigmom::Error> {
    // N = 2, d = 2 with identity Gram data
    let m = validate_moments(
        2,
        2,
        vec![
            CMatrix::identity(2, 2),
            CMatrix::zeros(2, 2),
            CMatrix::zeros(2, 2),
        ],
    )?;
    let iso = build_isometry(factor_gram(&build_toeplitz(&m), DEFAULT_TOL)?)?;
    let window = iso.space.span(&[0, 1]);

    // x = x_5, the last generator
    let mut alpha = vec![C64::new(0.0, 0.0); 6];
    alpha[5] = C64::new(1.0, 0.0);

    for zeta in [C64::new(0.5, 0.0), C64::new(0.2, -0.6), C64::new(2.0, 1.0)] {
        let dec = iso.zeta_split(&alpha, zeta)?;
        let x = iso.space.combine(&alpha);
        println!("zeta = {zeta}:");
        println!("  recursion coefficients: {:?}", dec.coeffs);
        println!(
            "  |x - (v + y)| = {:.3e}, window residual of y = {:.3e}",
            (&x - (&dec.v + &dec.y)).norm(),
            window.residual(&dec.y)
        );
    }
    Ok(())
}
