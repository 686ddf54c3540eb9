//! Thin command-line front end; all logic lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use trigmom::cli::{run, Command, RunConfig};
use trigmom::C64;

#[derive(Parser)]
#[command(
    name = "trigmom",
    version,
    about = "Truncated matrix trigonometric moment problem solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide solvability of a moment file (exit 0 solvable, 2 not).
    Check {
        /// Moment input JSON.
        input: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol_psd: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce the canonical atomic solution for a unitary parameter.
    Canonical {
        input: PathBuf,
        /// Constant unitary parameter file.
        #[arg(long)]
        param: Option<PathBuf>,
        /// Use the identity matrix as the parameter.
        #[arg(long)]
        param_identity: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol_psd: f64,
        #[arg(long, default_value_t = 1e-10)]
        rank_tol: f64,
        #[arg(long, default_value_t = 1e-8)]
        verify_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the generalized resolvent at one point off the unit circle.
    Resolvent {
        input: PathBuf,
        /// Parameter file; the zero contraction when omitted.
        #[arg(long)]
        param: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0)]
        zeta_re: f64,
        #[arg(long, default_value_t = 0.0)]
        zeta_im: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol_psd: f64,
        #[arg(long, default_value_t = 1e-10)]
        rank_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend the moment sequence through contour integration.
    Extend {
        input: PathBuf,
        #[arg(long)]
        param: PathBuf,
        /// Highest moment index to produce.
        #[arg(long)]
        nmax: usize,
        /// Contour radius.
        #[arg(long, default_value_t = 0.5)]
        rho: f64,
        /// Contour grid size (power of two, default 1024).
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tol_psd: f64,
        #[arg(long, default_value_t = 1e-10)]
        rank_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover a gridded distribution function by Poisson inversion.
    Invert {
        input: PathBuf,
        #[arg(long)]
        param: PathBuf,
        /// Poisson radius.
        #[arg(long, default_value_t = 0.999)]
        r: f64,
        /// Inversion grid size (power of two, default 16384).
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tol_psd: f64,
        #[arg(long, default_value_t = 1e-10)]
        rank_tol: f64,
        /// Output JSON path; the CSV lands next to it.
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a solution file against a moment file.
    Verify {
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        verify_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.command {
        Cmd::Check {
            input,
            tol_psd,
            out,
        } => {
            let mut cfg = RunConfig::new(Command::Check, input);
            cfg.tol_psd = tol_psd;
            cfg.out = out;
            cfg
        }
        Cmd::Canonical {
            input,
            param,
            param_identity,
            tol_psd,
            rank_tol,
            verify_tol,
            out,
        } => {
            let mut cfg = RunConfig::new(Command::Canonical, input);
            cfg.param = param;
            cfg.param_identity = param_identity;
            cfg.tol_psd = tol_psd;
            cfg.rank_tol = rank_tol;
            cfg.verify_tol = verify_tol;
            cfg.out = out;
            cfg
        }
        Cmd::Resolvent {
            input,
            param,
            zeta_re,
            zeta_im,
            tol_psd,
            rank_tol,
            out,
        } => {
            let mut cfg = RunConfig::new(Command::Resolvent, input);
            cfg.param = param;
            cfg.zeta = C64::new(zeta_re, zeta_im);
            cfg.tol_psd = tol_psd;
            cfg.rank_tol = rank_tol;
            cfg.out = out;
            cfg
        }
        Cmd::Extend {
            input,
            param,
            nmax,
            rho,
            grid,
            tol_psd,
            rank_tol,
            out,
        } => {
            let mut cfg = RunConfig::new(Command::Extend, input);
            cfg.param = Some(param);
            cfg.nmax = nmax;
            cfg.rho = rho;
            cfg.grid = grid;
            cfg.tol_psd = tol_psd;
            cfg.rank_tol = rank_tol;
            cfg.out = out;
            cfg
        }
        Cmd::Invert {
            input,
            param,
            r,
            grid,
            tol_psd,
            rank_tol,
            out,
        } => {
            let mut cfg = RunConfig::new(Command::Invert, input);
            cfg.param = Some(param);
            cfg.r_poisson = r;
            cfg.grid = grid;
            cfg.tol_psd = tol_psd;
            cfg.rank_tol = rank_tol;
            cfg.out = Some(out);
            cfg
        }
        Cmd::Verify {
            input,
            solution,
            verify_tol,
            out,
        } => {
            let mut cfg = RunConfig::new(Command::Verify, input);
            cfg.solution = Some(solution);
            cfg.verify_tol = verify_tol;
            cfg.out = out;
            cfg
        }
    };
    ExitCode::from(run(&cfg) as u8)
}
