//! Command implementations behind the `trigmom` binary.
//!
//! Exit-code contract: 0 on success, 2 when the mathematics says no
//! (unsolvable data, failed verification), 1 on operational errors
//! (I/O, malformed files, invalid knobs, internal failures). Identical
//! inputs and flags produce byte-identical output files.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Error;
use crate::extension::{
    generalized_resolvent, make_constant_param, resolvent, taylor_moments, ExtensionParam,
};
use crate::io;
use crate::isometry::{build_isometry, ShiftIsometry};
use crate::linalg::{spectral_norm, CMatrix, C64};
use crate::moments::{build_toeplitz, check_solvable, order_zero_solution, MomentSequence};
use crate::solutions::{canonical_solution, poisson_invert, verify_solution, SolutionData};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNSOLVABLE: i32 = 2;

/// Which pipeline stage to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Canonical,
    Resolvent,
    Extend,
    Invert,
    Verify,
}

/// Everything a command needs; the binary is a thin argument parser that
/// fills this in.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// Moment input file.
    pub input: PathBuf,
    /// Output path; stdout when absent.
    pub out: Option<PathBuf>,
    /// Parameter file.
    pub param: Option<PathBuf>,
    /// Use the identity matrix as the unitary parameter.
    pub param_identity: bool,
    /// Solution file for `verify`.
    pub solution: Option<PathBuf>,
    pub tol_psd: f64,
    pub rank_tol: f64,
    pub verify_tol: f64,
    /// Contour radius for moment extension.
    pub rho: f64,
    /// Grid size; must be a power of two.
    pub grid: Option<usize>,
    /// Poisson radius for inversion.
    pub r_poisson: f64,
    /// Highest extended moment index.
    pub nmax: usize,
    /// Evaluation point for `resolvent`.
    pub zeta: C64,
}

impl RunConfig {
    pub fn new(command: Command, input: PathBuf) -> Self {
        RunConfig {
            command,
            input,
            out: None,
            param: None,
            param_identity: false,
            solution: None,
            tol_psd: 1e-10,
            rank_tol: 1e-10,
            verify_tol: 1e-8,
            rho: 0.5,
            grid: None,
            r_poisson: 0.999,
            nmax: 8,
            zeta: C64::new(0.0, 0.0),
        }
    }

    fn grid_or(&self, default: usize) -> usize {
        self.grid.unwrap_or(default)
    }

    /// Knob-range and required-path checks.
    pub fn validate(&self) -> Result<(), Error> {
        let positive_unit = |name: &'static str, v: f64| -> Result<(), Error> {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(Error::Knob {
                    name,
                    message: format!("must lie strictly between 0 and 1, got {v}"),
                })
            }
        };
        positive_unit("rho", self.rho)?;
        positive_unit("r", self.r_poisson)?;
        if let Some(grid) = self.grid {
            if !grid.is_power_of_two() {
                return Err(Error::Knob {
                    name: "grid",
                    message: format!("must be a power of two, got {grid}"),
                });
            }
        }
        for (name, v) in [
            ("tol-psd", self.tol_psd),
            ("rank-tol", self.rank_tol),
            ("verify-tol", self.verify_tol),
        ] {
            if v <= 0.0 {
                return Err(Error::Knob {
                    name,
                    message: format!("must be positive, got {v}"),
                });
            }
        }
        match self.command {
            Command::Extend | Command::Invert if self.param.is_none() => Err(Error::Knob {
                name: "param",
                message: "this command needs --param <path>".to_string(),
            }),
            Command::Invert if self.out.is_none() => Err(Error::Knob {
                name: "out",
                message: "invert writes two files and needs --out <path>".to_string(),
            }),
            Command::Verify if self.solution.is_none() => Err(Error::Knob {
                name: "solution",
                message: "verify needs --solution <path>".to_string(),
            }),
            _ => Ok(()),
        }
    }
}

/// Runs a command, mapping every error onto the exit-code contract.
pub fn run(cfg: &RunConfig) -> i32 {
    match execute(cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(cfg: &RunConfig) -> Result<i32, Error> {
    cfg.validate()?;
    match cfg.command {
        Command::Check => cmd_check(cfg),
        Command::Canonical => cmd_canonical(cfg),
        Command::Resolvent => cmd_resolvent(cfg),
        Command::Extend => cmd_extend(cfg),
        Command::Invert => cmd_invert(cfg),
        Command::Verify => cmd_verify(cfg),
    }
}

fn load_moments(path: &Path) -> Result<MomentSequence, Error> {
    let text = fs::read_to_string(path)?;
    io::parse_moments(&text)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Runs the solvability gate; `Err` is operational, `Ok(None)` means the
/// data is unsolvable and the report was already produced.
fn solvable_or_report(cfg: &RunConfig, m: &MomentSequence) -> Result<bool, Error> {
    let rep = check_solvable(&build_toeplitz(m), cfg.tol_psd)?;
    if !rep.solvable {
        eprintln!(
            "moment problem is not solvable: min eigenvalue {:.6e} below -{:.6e}",
            rep.min_eigenvalue, rep.tolerance_used
        );
    }
    Ok(rep.solvable)
}

fn build_pipeline(cfg: &RunConfig, m: &MomentSequence) -> Result<ShiftIsometry, Error> {
    if m.order == 0 {
        return Err(Error::Knob {
            name: "d",
            message: "this command runs the operator pipeline and needs d >= 1".to_string(),
        });
    }
    let space = crate::gram::factor_gram(&build_toeplitz(m), cfg.rank_tol)?;
    build_isometry(space)
}

fn load_param(cfg: &RunConfig, iso: &ShiftIsometry) -> Result<ExtensionParam, Error> {
    match &cfg.param {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            io::parse_param(&text, iso)
        }
        None => {
            // central choice: the zero contraction
            let delta = iso.defect_dim();
            make_constant_param(iso, CMatrix::zeros(delta, delta))
        }
    }
}

fn cmd_check(cfg: &RunConfig) -> Result<i32, Error> {
    let m = load_moments(&cfg.input)?;
    let rep = check_solvable(&build_toeplitz(&m), cfg.tol_psd)?;
    emit(&cfg.out, &io::report_json(&rep))?;
    Ok(if rep.solvable { EXIT_OK } else { EXIT_UNSOLVABLE })
}

fn cmd_canonical(cfg: &RunConfig) -> Result<i32, Error> {
    let m = load_moments(&cfg.input)?;
    if !solvable_or_report(cfg, &m)? {
        return Ok(EXIT_UNSOLVABLE);
    }
    let sol = if m.order == 0 {
        order_zero_solution(&m.moments[0], cfg.tol_psd)?
    } else {
        let iso = build_pipeline(cfg, &m)?;
        let unitary = if cfg.param_identity {
            CMatrix::identity(iso.defect_dim(), iso.defect_dim())
        } else {
            let path = cfg.param.as_ref().ok_or(Error::Knob {
                name: "param",
                message: "canonical needs --param <path> or --param-identity".to_string(),
            })?;
            let text = fs::read_to_string(path)?;
            match io::parse_param(&text, &iso)?.values() {
                crate::extension::ParamValues::Constant(c) => c.clone(),
                _ => {
                    return Err(Error::Knob {
                        name: "param",
                        message: "canonical solutions need a constant unitary parameter"
                            .to_string(),
                    })
                }
            }
        };
        canonical_solution(&iso, &unitary)?
    };
    let report = verify_solution(&SolutionData::Atomic(sol.clone()), &m, cfg.verify_tol);
    emit(&cfg.out, &io::atomic_solution_json(&sol, Some(&report)))?;
    if report.pass {
        Ok(EXIT_OK)
    } else {
        Err(Error::Internal(format!(
            "produced solution failed verification: max residual {:.6e} above {:.6e}",
            report.max_residual, report.tolerance
        )))
    }
}

fn cmd_resolvent(cfg: &RunConfig) -> Result<i32, Error> {
    let m = load_moments(&cfg.input)?;
    if !solvable_or_report(cfg, &m)? {
        return Ok(EXIT_UNSOLVABLE);
    }
    let iso = build_pipeline(cfg, &m)?;
    let param = load_param(cfg, &iso)?;
    let rv = resolvent(&iso, &param, cfg.zeta)?;
    emit(&cfg.out, &io::resolvent_json(rv.zeta, &rv.mat))?;
    Ok(EXIT_OK)
}

fn cmd_extend(cfg: &RunConfig) -> Result<i32, Error> {
    let m = load_moments(&cfg.input)?;
    if !solvable_or_report(cfg, &m)? {
        return Ok(EXIT_UNSOLVABLE);
    }
    let iso = build_pipeline(cfg, &m)?;
    let param = load_param(cfg, &iso)?;
    let extended = taylor_moments(&iso, &param, cfg.nmax, cfg.rho, cfg.grid_or(1024))?;
    let consistent = extended
        .iter()
        .take(m.order + 1)
        .enumerate()
        .all(|(n, c)| spectral_norm(&(c - m.moment(n as i64))) <= 1e-6);
    emit(
        &cfg.out,
        &io::extended_moments_json(m.mat_dim, m.order, &extended, consistent),
    )?;
    Ok(EXIT_OK)
}

fn cmd_invert(cfg: &RunConfig) -> Result<i32, Error> {
    let m = load_moments(&cfg.input)?;
    if !solvable_or_report(cfg, &m)? {
        return Ok(EXIT_UNSOLVABLE);
    }
    let iso = build_pipeline(cfg, &m)?;
    let param = load_param(cfg, &iso)?;
    let sampler = |z: C64| generalized_resolvent(&iso, &param, z).map(|r| r.mat);
    let grid = poisson_invert(sampler, &m.moments[0], cfg.r_poisson, cfg.grid_or(16384))?;
    let out = cfg.out.as_ref().expect("validated");
    emit(&Some(out.clone()), &io::grid_solution_json(&grid))?;
    fs::write(out.with_extension("csv"), io::grid_csv(&grid))?;
    Ok(EXIT_OK)
}

fn cmd_verify(cfg: &RunConfig) -> Result<i32, Error> {
    let m = load_moments(&cfg.input)?;
    let path = cfg.solution.as_ref().expect("validated");
    let sol = io::parse_solution(&fs::read_to_string(path)?)?;
    let report = verify_solution(&sol, &m, cfg.verify_tol);
    emit(&cfg.out, &io::verification_json(&report))?;
    Ok(if report.pass { EXIT_OK } else { EXIT_UNSOLVABLE })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_rejects_bad_knobs() {
        let mut cfg = RunConfig::new(Command::Check, PathBuf::from("x.json"));
        cfg.rho = 1.5;
        assert!(cfg.validate().is_err());
        cfg.rho = 0.5;
        cfg.grid = Some(1000);
        assert!(cfg.validate().is_err());
        cfg.grid = Some(1024);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn validate_requires_paths() {
        let cfg = RunConfig::new(Command::Invert, PathBuf::from("x.json"));
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::new(Command::Verify, PathBuf::from("x.json"));
        assert!(cfg.validate().is_err());
        cfg.solution = Some(PathBuf::from("s.json"));
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn missing_file_exits_one() {
        let cfg = RunConfig::new(Command::Check, PathBuf::from("/nonexistent/moments.json"));
        assert_eq!(run(&cfg), EXIT_ERROR);
    }
}
