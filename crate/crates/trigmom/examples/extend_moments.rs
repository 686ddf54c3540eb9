//! Extend a truncated moment sequence along a chosen solution.
//!
//! Contour integration of the resolvent recovers Taylor moments: indices
//! up to `d` echo the inputs for every admissible parameter, while later
//! indices depend on the selected solution. Run with
//! `cargo run --example extend_moments`.

use trigmom::linalg::{CMatrix, C64};
use trigmom::{
    build_isometry, build_toeplitz, factor_gram, make_constant_param, taylor_moments,
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

    println!("extended moments for three parameter choices (rho = 1/2, grid 1024):\n");
    println!("{:>4} {:>22} {:>22} {:>22}", "n", "c = 0", "c = 0.3", "c = -1");
    let params: Vec<_> = [0.0, 0.3, -1.0]
        .iter()
        .map(|&c| make_constant_param(&iso, CMatrix::from_element(1, 1, C64::new(c, 0.0))))
        .collect::<Result<_, _>>()?;
    let series: Vec<Vec<CMatrix>> = params
        .iter()
        .map(|p| taylor_moments(&iso, p, 6, 0.5, 1024))
        .collect::<Result<_, _>>()?;
    for n in 0..=6usize {
        print!("{n:>4}");
        for s in &series {
            let v = s[n][(0, 0)];
            print!(" {:>22}", format!("{:.4}{:+.4}i", v.re, v.im));
        }
        println!();
    }
    println!("\nrows 0..=1 echo S_0, S_1; the tails differ with the parameter");
    Ok(())
}
